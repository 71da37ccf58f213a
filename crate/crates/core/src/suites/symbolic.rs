//! The counterexample dcpo: quasi-continuous, not continuous, and a net that
//! converges in the generalized sense but not in the plain one.

use serde_json::json;

use crate::convergence::{
    Ideal, IdealKind, IndexDcpo, IndexSet, Net, NetConvergence, OmegaSet, Track,
};
use crate::dcpo::Dcpo;
use crate::error::Result;
use crate::example_one::{ExampleOne, OneElem, OneSet};
use crate::topology::symbolic::{self as topo, OneTopology};
use crate::waybelow::{Approximation, OneFamily, OneFinSet};

use super::{Ctx, Tally};

use OneElem::{Nat, Top, A};

pub(crate) fn example_net() -> Net<OneElem> {
    Net::omega(vec![Track::Ascend, Track::Const(A)]).expect("two tracks")
}

pub(crate) fn exampleone(_ctx: &Ctx) -> Result<(Tally, Vec<String>)> {
    let one = ExampleOne;
    let mut t = Tally::default();
    let fin = |e: &[OneElem]| OneFinSet::new(e);

    for n in 0..=100 {
        let ok = one.set_way_below(&fin(&[A, Nat(n)])?, &fin(&[A])?);
        t.check(format!("pair_way_below_a/{n}"), ok, || json!({ "n": n }));
    }
    let up_a = one.up_of(A);
    let meet = OneFamily::PAIRS_WITH_A.meet();
    t.check(
        "meet_of_pairs_is_up_a",
        meet == up_a,
        || json!({ "meet": meet.render() }),
    );
    let mut acc = OneSet::whole();
    let mut prefixes = true;
    for n in 0..=20 {
        acc = acc.intersection(&one.up_closure(&one.set_of(&[A, Nat(n)])));
        prefixes &= acc == one.up_closure(&one.set_of(&[A, Nat(n)]));
    }
    t.check(
        "finite_meets_shrink_to_pairs",
        prefixes,
        || json!({ "last": acc.render() }),
    );

    t.check(
        "leq_examples",
        one.leq(Nat(3), Nat(5)) && !one.leq(A, Nat(5)) && one.leq(A, Top),
        || json!({}),
    );
    t.check(
        "a_not_way_below_a",
        !one.point_way_below(A, A),
        || json!({}),
    );
    t.check(
        "three_way_below_top",
        one.point_way_below(Nat(3), Top),
        || json!({}),
    );
    t.check(
        "a_top_not_scott_open",
        !topo::is_scott_open(&one.set_of(&[A, Top])),
        || json!({}),
    );
    t.check(
        "pair_up_set_scott_open",
        topo::is_scott_open(&fin(&[A, Nat(3)])?.up()),
        || json!({}),
    );
    let int = OneTopology::Scott.interior(&up_a);
    t.check(
        "interior_of_up_a_is_empty",
        int.is_empty() && one.way_up(&fin(&[A])?).is_empty(),
        || json!({ "interior": int.render() }),
    );
    let h = fin(&[A, Nat(2)])?;
    let f = one.interpolate(&h, A)?;
    t.check(
        "interpolate_between_pair_and_a",
        one.set_way_below(&h, &f) && one.set_way_below(&f, &fin(&[A])?),
        || json!({ "f": one.render_fin(&f) }),
    );

    let r = one.classify();
    t.check(
        "quasi_continuous",
        r.is_quasi_continuous,
        || json!({ "report": r }),
    );
    t.check(
        "not_continuous",
        !r.is_continuous,
        || json!({ "report": r }),
    );
    t.check(
        "not_meet_continuous",
        !r.is_meet_continuous,
        || json!({ "report": r }),
    );
    t.check(
        "classify_consistent",
        r.is_consistent(),
        || json!({ "report": r }),
    );

    let net = example_net();
    let eventual = Ideal::new(IdealKind::Eventual, IndexDcpo::Omega)?;
    let level = one.level_set(&net, &one.up_of(Nat(5)))?;
    let expected = IndexSet::Omega(OmegaSet::from_parts(2, [1], [0, 2, 4, 6, 8], []));
    t.check(
        "level_set_up_five",
        level == expected,
        || json!({ "level": format!("{level:?}") }),
    );
    let level = one.level_set(&net, &fin(&[A, Nat(5)])?.up())?;
    let expected = IndexSet::Omega(OmegaSet::finite([0, 2, 4, 6, 8]));
    t.check(
        "level_set_up_pair",
        level == expected,
        || json!({ "level": format!("{level:?}") }),
    );

    for kind in [
        IdealKind::Eventual,
        IdealKind::FiniteSets,
        IdealKind::DensityZero,
    ] {
        let ideal = Ideal::new(kind, IndexDcpo::Omega)?;
        let gis = one.converges_gis(&net, A, &ideal)?;
        t.check(
            format!("gis_to_a/{}", kind.name()),
            gis.holds,
            || json!({ "verdict": gis }),
        );
        let is = one.converges_is(&net, A, &ideal)?;
        t.check(
            format!("not_is_to_a/{}", kind.name()),
            !is.holds,
            || json!({ "verdict": is }),
        );
    }
    let fam = one.gi_family(&net, &eventual)?;
    let ok =
        fam.contains(&fin(&[A, Nat(7)])?) && !fam.contains(&fin(&[Nat(7)])?) && fam.meet() == up_a;
    t.check(
        "gi_family_is_pairs",
        ok,
        || json!({ "family": fam.describe() }),
    );
    let gi = one.is_gi_liminf(&net, A, &eventual)?;
    t.check("gi_liminf_a", gi.holds, || json!({ "verdict": gi }));
    let lawson = one.converges_topological(&net, A, &eventual, &OneTopology::Lawson)?;
    let scott = one.converges_topological(&net, A, &eventual, &OneTopology::Scott)?;
    t.check(
        "scott_converges_to_a",
        scott.holds,
        || json!({ "verdict": scott }),
    );

    let notes = vec![format!(
        "the interleaved net GI-converges to a but does not converge to a in the Lawson topology ({})",
        if lawson.holds { "converges" } else { "the open set {a} is left on the even indices" }
    )];
    Ok((t, notes))
}
