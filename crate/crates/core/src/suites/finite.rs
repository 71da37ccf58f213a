//! Suites over finite posets: order, way-below, topologies and Rudin.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::json;

use crate::bits::ElemSet;
use crate::convergence::Mode;
use crate::corpus::generate_all_posets;
use crate::dcpo::Dcpo;
use crate::domain::FiniteDomain;
use crate::error::Result;
use crate::example_one::{ExampleOne, OneElem, OneSet};
use crate::oracle::{self, Shape};
use crate::poset::FinitePoset;
use crate::rudin::{
    extract_directed, is_directed_family, rudin_corollary_check, rudin_corollary_example_one,
};
use crate::topology::symbolic::{self as topo, OneTopology};
use crate::topology::{lawson_topology, lower_topology, scott_topology, FiniteTopology};
use crate::waybelow::{Antichain, Approximation, OneFamily, OneFinSet, REPRESENTATIVE_NATS};

use super::{poset_json, Ctx, Tally};

type Out = Result<(Tally, Vec<String>)>;

fn case(d: &FiniteDomain, what: &str) -> String {
    format!("{}/{what}", d.name())
}

fn ids(d: &FiniteDomain, s: ElemSet) -> Vec<String> {
    d.ids_of(s)
}

/// Random set of the counterexample with naturals below `reach`.
pub(crate) fn sample_one_set(rng: &mut impl Rng, reach: u64) -> OneSet {
    let nats: Vec<u64> = (0..reach).filter(|_| rng.gen_bool(0.3)).collect();
    let tail = rng.gen_bool(0.5).then(|| rng.gen_range(0..=reach));
    OneSet::new(nats, tail, rng.gen_bool(0.5), rng.gen_bool(0.5))
}

fn shape_set(s: &Shape) -> OneSet {
    match s {
        Shape::Finite(v) => OneSet::from_elems(v),
        Shape::Tail(t, extra) => OneSet::from_elems(extra).union(&OneSet::nats_from(*t)),
    }
}

pub(crate) fn order(ctx: &Ctx) -> Out {
    let mut t = ctx.per_poset(|_, d| {
        let mut t = Tally::default();
        let n = d.len();
        let mut pairwise = Vec::new();
        for s in ElemSet::full(n).subsets() {
            let def = oracle::is_directed_pairwise(d, s);
            if def {
                pairwise.push(s);
            }
            let fast = d.is_directed(&s);
            t.check(case(d, "directed_iff_greatest"), fast == def && def == d.greatest(s).is_some(), || {
                json!({ "poset": poset_json(d), "set": ids(d, s), "fast": fast, "pairwise": def })
            });
            if def {
                let ok = d.directed_sup(&s).is_ok_and(|m| {
                    s.iter().all(|x| d.leq(x, m))
                        && (0..n).filter(|&u| s.iter().all(|x| d.leq(x, u))).all(|u| d.leq(m, u))
                });
                t.check(case(d, "directed_sup_is_least_upper_bound"), ok, || {
                    json!({ "poset": poset_json(d), "set": ids(d, s) })
                });
            }
            let up = d.up_closure(&s);
            let down = d.down_closure(&s);
            let closure_ok = s.is_subset(up)
                && s.is_subset(down)
                && d.up_closure(&up) == up
                && d.down_closure(&down) == down
                && (0..n).all(|i| {
                    up.is_subset(d.up_closure(&s.with(i))) && down.is_subset(d.down_closure(&s.with(i)))
                });
            t.check(case(d, "closures"), closure_ok, || json!({ "poset": poset_json(d), "set": ids(d, s) }));
        }
        let mut listed = d.enumerate_directed_subsets().unwrap_or_default();
        listed.sort();
        pairwise.sort();
        t.check(case(d, "enumerate_directed_subsets"), listed == pairwise, || {
            json!({ "poset": poset_json(d), "enumerated": listed.len(), "pairwise": pairwise.len() })
        });
        let back = FinitePoset::from_json(&d.to_json());
        t.check(
            case(d, "json_round_trip"),
            back.as_ref().is_ok_and(|p| p.to_json() == d.to_json() && p.relation_pairs() == d.relation_pairs()),
            || json!({ "poset": poset_json(d) }),
        );
        t
    });

    for k in 1..=ctx.params.max_size.min(4) {
        let brute = oracle::posets_by_brute_force(k);
        let generated = generate_all_posets(k)?;
        let matched = generated.len() == brute.len()
            && generated
                .iter()
                .all(|g| brute.iter().filter(|b| b.is_isomorphic(g)).count() == 1);
        t.check(
            format!("generate_all_posets/{k}/brute_force"),
            matched,
            || json!({ "generated": generated.len(), "brute_force": brute.len() }),
        );
    }
    let expected = [1usize, 2, 5, 16, 63, 318];
    for k in 1..=ctx.params.max_size.min(6) {
        let got = generate_all_posets(k)?.len();
        t.check(
            format!("generate_all_posets/{k}/count"),
            got == expected[k - 1],
            || json!({ "n": k, "count": got, "expected": expected[k - 1] }),
        );
    }

    let one = ExampleOne;
    for m in 0..=20u64 {
        let p = FinitePoset::truncate_example_one(m);
        let elems: Vec<OneElem> = p
            .elements()
            .iter()
            .map(|s| OneElem::parse(s))
            .collect::<Result<_>>()?;
        let ok =
            (0..p.len()).all(|i| (0..p.len()).all(|j| p.le(i, j) == one.leq(elems[i], elems[j])));
        t.check(
            format!("truncate_example_one/{m}"),
            ok && p.len() as u64 == m + 3,
            || json!({ "n": m }),
        );
    }

    let mut rng = ctx.rng(0x0a);
    for i in 0..ctx.params.samples.min(500) {
        let s = sample_one_set(&mut rng, 8);
        let u = sample_one_set(&mut rng, 8);
        let ok = s.complement().complement() == s
            && s.union(&u).complement() == s.complement().intersection(&u.complement())
            && s.intersection(&u).complement() == s.complement().union(&u.complement())
            && s.up().up() == s.up()
            && s.down().down() == s.down()
            && s.is_subset(&s.up())
            && s.is_subset(&s.down())
            && s.union(&u).up() == s.up().union(&u.up());
        t.check(
            format!("exampleone/set_algebra/{i}"),
            ok,
            || json!({ "s": s.render(), "u": u.render() }),
        );
    }
    for (i, shape) in oracle::one_directed_shapes(4).iter().enumerate() {
        let s = shape_set(shape);
        let ok = s.is_directed() && s.directed_sup().is_ok_and(|m| m == shape.sup());
        t.check(
            format!("exampleone/directed_sup/{i}"),
            ok,
            || json!({ "set": s.render() }),
        );
    }
    let not_directed = OneSet::from_elems(&[OneElem::A, OneElem::Nat(0)]);
    t.check(
        "exampleone/directed_sup/mixed",
        !not_directed.is_directed() && not_directed.directed_sup().is_err(),
        || json!({ "set": not_directed.render() }),
    );
    Ok((t, vec![]))
}

/// Boolean matrix product.
fn compose(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let m = a.len();
    (0..m)
        .map(|i| (0..m).map(|k| (0..m).any(|j| a[i][j] && b[j][k])).collect())
        .collect()
}

fn relation_laws<A: Approximation>(dom: &A, sets: &[A::Fin], t: &mut Tally, prefix: &str) {
    let m = sets.len();
    let s: Vec<Vec<bool>> = sets
        .iter()
        .map(|g| sets.iter().map(|h| dom.smyth_leq(g, h)).collect())
        .collect();
    let w: Vec<Vec<bool>> = sets
        .iter()
        .map(|g| sets.iter().map(|h| dom.set_way_below(g, h)).collect())
        .collect();
    let render = |i: usize| dom.render_fin(&sets[i]);
    for i in 0..m {
        for l in 0..m {
            if w[i][l] {
                t.check(
                    format!("{prefix}/way_below_implies_smyth"),
                    s[i][l],
                    || json!({ "g": render(i), "h": render(l) }),
                );
                let pointwise = dom
                    .fin_elems(&sets[l])
                    .into_iter()
                    .all(|h| dom.set_way_below(&sets[i], &dom.singleton_fin(h)));
                t.check(
                    format!("{prefix}/way_below_each_point"),
                    pointwise,
                    || json!({ "g": render(i), "h": render(l) }),
                );
            }
        }
    }
    let sws = compose(&compose(&s, &w), &s);
    for i in 0..m {
        for l in 0..m {
            if sws[i][l] {
                t.check(
                    format!("{prefix}/smyth_way_below_smyth"),
                    w[i][l],
                    || json!({ "g": render(i), "h": render(l) }),
                );
            }
        }
    }
}

pub(crate) fn waybelow(ctx: &Ctx) -> Out {
    let mut t = ctx.per_poset(|_, d| {
        let mut t = Tally::default();
        let sets: Vec<Antichain> = d.all_antichains().collect();
        relation_laws(d, &sets, &mut t, d.name());
        for x in 0..d.len() {
            let fin = d.fin_of(x);
            let ups: Vec<ElemSet> = fin.iter().map(|f| d.fin_up(f)).collect();
            let meet = ups.iter().fold(d.full(), |acc, &u| acc & u);
            let ok = oracle::is_smyth_directed(&ups) && meet == d.up_set(x);
            t.check(
                case(d, "fin_of_directed_with_meet"),
                ok,
                || json!({ "poset": poset_json(d), "x": d.element(x), "meet": ids(d, meet) }),
            );
        }
        let r = d.classify();
        let ok = r.is_dcpo
            && r.is_continuous
            && r.is_quasi_continuous
            && r.is_meet_continuous
            && r.is_consistent();
        t.check(
            case(d, "classify"),
            ok,
            || json!({ "poset": poset_json(d), "report": r }),
        );
        t
    });

    let one = ExampleOne;
    let window = 7;
    let sets = OneFinSet::all_up_to(4);
    for g in &sets {
        for h in &sets {
            let rule = one.set_way_below(g, h);
            let def = oracle::one_set_way_below(g.elems(), h.elems(), window);
            t.check("exampleone/rule_table_vs_shapes", rule == def, || {
                json!({ "g": one.render_fin(g), "h": one.render_fin(h), "rule": rule, "definition": def })
            });
        }
    }
    relation_laws(&one, &OneFinSet::all_up_to(3), &mut t, "exampleone");
    let probes = OneFinSet::all_up_to(REPRESENTATIVE_NATS + 2);
    for x in one.representative_points() {
        let fam = one.fin_of(x);
        let target = one.singleton_fin(x);
        for f in &probes {
            t.check(
                "exampleone/fin_of_schema",
                fam.contains(f) == one.set_way_below(f, &target),
                || json!({ "x": x.to_string(), "f": one.render_fin(f), "schema": fam.describe() }),
            );
        }
    }
    let r = one.classify();
    t.check(
        "exampleone/classify",
        r.is_quasi_continuous && !r.is_continuous && !r.is_meet_continuous && r.is_consistent(),
        || json!({ "report": r }),
    );
    Ok((t, vec![]))
}

pub(crate) fn collapse(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|_, d| {
        let mut t = Tally::default();
        let n = d.len();
        for x in 0..n {
            for y in 0..n {
                let wb = d.point_way_below(x, y);
                t.check(case(d, "point_way_below_is_leq"), wb == d.leq(x, y), || {
                    json!({ "poset": poset_json(d), "x": d.element(x), "y": d.element(y), "way_below": wb })
                });
            }
        }
        let sets: Vec<Antichain> = d.all_antichains().collect();
        for g in &sets {
            for h in &sets {
                let wb = d.set_way_below(g, h);
                t.check(case(d, "set_way_below_is_smyth"), wb == d.smyth_leq(g, h), || {
                    json!({ "poset": poset_json(d), "g": ids(d, g.set()), "h": ids(d, h.set()), "way_below": wb })
                });
            }
        }
        t.check_result(
            case(d, "lawson_is_discrete"),
            lawson_topology(d).map(|l| l.same_opens(&FiniteTopology::discrete(n))),
            || json!({ "poset": poset_json(d) }),
        );
        let definitional: Vec<ElemSet> = ElemSet::full(n).subsets().filter(|&u| d.is_scott_open(u)).collect();
        t.check_result(
            case(d, "scott_is_definitional"),
            scott_topology(d).map(|s| {
                let mut opens = s.opens().to_vec();
                let mut def = definitional.clone();
                let mut upper = d.upper_sets();
                opens.sort();
                def.sort();
                upper.sort();
                opens == def && def == upper
            }),
            || json!({ "poset": poset_json(d) }),
        );
        t
    });
    Ok((t, vec![]))
}

pub(crate) fn prop1(ctx: &Ctx) -> Out {
    let mut t = ctx.per_poset(|_, d| {
        let mut t = Tally::default();
        let n = d.len();
        let sigma = match scott_topology(d) {
            Ok(s) => s,
            Err(e) => {
                t.check(case(d, "scott_topology"), false, || json!({ "error": e.to_string() }));
                return t;
            }
        };
        let sets: Vec<Antichain> = d.all_antichains().collect();
        for h in &sets {
            for x in 0..n {
                if !d.set_way_below(h, &d.singleton_fin(x)) {
                    continue;
                }
                let r = d.interpolate(h, x);
                let ok = r.as_ref().is_ok_and(|f| d.set_way_below(h, f) && d.set_way_below(f, &d.singleton_fin(x)));
                t.check(case(d, "interpolate"), ok, || {
                    json!({ "poset": poset_json(d), "h": ids(d, h.set()), "x": d.element(x), "result": format!("{r:?}") })
                });
            }
            let wu = d.way_up(h);
            let int = sigma.interior(d.fin_up(h));
            t.check(case(d, "way_up_is_interior"), wu == int, || {
                json!({ "poset": poset_json(d), "f": ids(d, h.set()), "way_up": ids(d, wu), "interior": ids(d, int) })
            });
        }
        for &u in sigma.opens() {
            let cover = sets.iter().map(|f| d.way_up(f)).filter(|w| w.is_subset(u)).fold(ElemSet::EMPTY, |a, w| a | w);
            t.check(case(d, "way_up_basis"), cover == u, || {
                json!({ "poset": poset_json(d), "open": ids(d, u), "cover": ids(d, cover) })
            });
        }
        for s in ElemSet::full(n).subsets() {
            let cl = sigma.closure(s);
            t.check(case(d, "scott_closure_is_down_closure"), cl == d.down(s), || {
                json!({ "poset": poset_json(d), "set": ids(d, s), "closure": ids(d, cl) })
            });
        }
        t
    });

    let one = ExampleOne;
    let scott = OneTopology::Scott;
    let points = one.representative_points();
    for h in OneFinSet::all_up_to(4) {
        for &x in &points {
            if !one.set_way_below(&h, &one.singleton_fin(x)) {
                continue;
            }
            let r = one.interpolate(&h, x);
            let ok = r.as_ref().is_ok_and(|f| {
                one.set_way_below(&h, f) && one.set_way_below(f, &one.singleton_fin(x))
            });
            t.check("exampleone/interpolate", ok, || {
                json!({ "h": one.render_fin(&h), "x": x.to_string(), "result": format!("{r:?}") })
            });
        }
        let wu = one.way_up(&h);
        let int = scott.interior(&h.up());
        t.check(
            "exampleone/way_up_is_interior",
            wu == int,
            || json!({ "f": one.render_fin(&h), "way_up": wu.render(), "interior": int.render() }),
        );
    }
    let basis = OneFinSet::all_up_to(REPRESENTATIVE_NATS + 2);
    for u in one.representative_scott_opens() {
        let cover = basis
            .iter()
            .map(|f| one.way_up(f))
            .filter(|w| w.is_subset(&u))
            .fold(OneSet::empty(), |a, w| a.union(&w));
        t.check(
            "exampleone/way_up_basis",
            cover == u,
            || json!({ "open": u.render(), "cover": cover.render() }),
        );
    }
    let mut rng = ctx.rng(0x1a);
    for i in 0..ctx.params.samples.min(300) {
        let u = sample_one_set(&mut rng, 5);
        let fast = topo::is_scott_open(&u);
        let def = oracle::one_is_scott_open(&u, 7);
        t.check(
            format!("exampleone/is_scott_open/{i}"),
            fast == def,
            || json!({ "set": u.render(), "closed_form": fast, "definition": def }),
        );
    }
    Ok((t, vec![]))
}

pub(crate) fn prop2(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|i, d| {
        let mut t = Tally::default();
        match (ctx.derived(i, Mode::Is), scott_topology(d)) {
            (Ok(is), Ok(sigma)) => {
                t.check(case(d, "scott_within_derived"), sigma.is_coarser_than(is), || {
                    json!({ "poset": poset_json(d), "missing": sigma.opens().iter().filter(|&&u| !is.is_open(u)).map(|&u| ids(d, u)).collect::<Vec<_>>() })
                });
                t.check(case(d, "derived_within_scott"), is.is_coarser_than(&sigma), || {
                    json!({ "poset": poset_json(d), "extra": is.opens().iter().filter(|&&u| !sigma.is_open(u)).map(|&u| ids(d, u)).collect::<Vec<_>>() })
                });
            }
            (a, b) => {
                let msg = format!("{:?} {:?}", a.err(), b.err());
                t.check(case(d, "derive"), false, || json!({ "error": msg }));
            }
        }
        t
    });
    Ok((t, vec!["derived topologies use finite directed indexes up to 4 points and periodic nets on ω up to period 3, eventual ideal".into()]))
}

pub(crate) fn axioms(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|i, d| {
        let mut t = Tally::default();
        let mut check = |what: &str, top: Result<&FiniteTopology>| {
            let r = top.map(|x| x.axiom_violation());
            let violation = match &r {
                Ok(v) => v.clone(),
                Err(e) => Some(e.to_string()),
            };
            t.check(
                case(d, what),
                violation.is_none(),
                || json!({ "poset": poset_json(d), "violation": violation }),
            );
        };
        check("scott", scott_topology(d).as_ref().map_err(Clone::clone));
        check("lower", Ok(&lower_topology(d)));
        check("lawson", lawson_topology(d).as_ref().map_err(Clone::clone));
        check("glim", ctx.glim(i).map(|g| &g.0));
        check("derived_is", ctx.derived(i, Mode::Is));
        check("derived_gis", ctx.derived(i, Mode::Gis));
        check("derived_gi", ctx.derived(i, Mode::Gi));
        t
    });
    Ok((t, vec![]))
}

pub(crate) fn prop9_10(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|i, d| {
        let mut t = Tally::default();
        t.check_result(
            case(d, "naive_equals_reduced"),
            ctx.glim(i)
                .map(|(naive, reduced)| naive.same_opens(reduced)),
            || json!({ "poset": poset_json(d) }),
        );
        let r = ctx
            .glim(i)
            .and_then(|(_, reduced)| Ok(ctx.derived(i, Mode::Gis)?.same_opens(reduced)));
        t.check_result(
            case(d, "derived_gis_equals_glim"),
            r,
            || json!({ "poset": poset_json(d) }),
        );
        t
    });
    Ok((t, vec![]))
}

pub(crate) fn thm1(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|i, d| {
        let mut t = Tally::default();
        let sigma = scott_topology(d);
        let w = || json!({ "poset": poset_json(d) });
        let against = |x: Result<&FiniteTopology>| -> Result<bool> {
            Ok(x?.same_opens(sigma.as_ref().map_err(Clone::clone)?))
        };
        t.check_result(
            case(d, "naive_glim_is_scott"),
            against(ctx.glim(i).map(|g| &g.0)),
            w,
        );
        t.check_result(
            case(d, "reduced_glim_is_scott"),
            against(ctx.glim(i).map(|g| &g.1)),
            w,
        );
        t.check_result(
            case(d, "derived_gis_is_scott"),
            against(ctx.derived(i, Mode::Gis)),
            w,
        );
        t
    });
    Ok((
        t,
        vec![format!(
            "family bound {} on the naive computation",
            crate::topology::DEFAULT_FAMILY_BOUND
        )],
    ))
}

/// Directed families of size `k`: a random least member plus members above it.
fn sample_family(rng: &mut impl Rng, d: &FiniteDomain, k: usize) -> Vec<ElemSet> {
    let all = d.antichains();
    let f0 = *all.choose(rng).expect("nonempty poset");
    let up0 = d.up(f0);
    let above: Vec<ElemSet> = all
        .iter()
        .copied()
        .filter(|&a| a != f0 && up0.is_subset(d.up(a)))
        .collect();
    let mut fam = vec![f0];
    fam.extend(above.choose_multiple(rng, k - 1));
    fam.shuffle(rng);
    fam
}

pub(crate) fn rudin(ctx: &Ctx) -> Out {
    let mut t = ctx.per_poset(|i, d| {
        let mut t = Tally::default();
        let ups: Vec<ElemSet> = d.antichains().iter().map(|&a| d.up(a)).collect();
        let opens = d.upper_sets();
        let mut families: Vec<Vec<ElemSet>> = Vec::new();
        for first in 0..ups.len() {
            oracle::for_each_directed_family_from(&ups, first, 3, &mut |m: &[usize]| {
                families.push(m.iter().map(|&j| d.antichains()[j]).collect());
            });
        }
        let mut rng = ctx.rng(0x2000 + i as u64);
        for _ in 0..20 {
            let k = rng.gen_range(4..=6);
            families.push(sample_family(&mut rng, d, k));
        }
        for fam in &families {
            let fam_ids = || fam.iter().map(|&f| ids(d, f)).collect::<Vec<_>>();
            t.check(case(d, "is_directed_family"), is_directed_family(d, fam), || json!({ "poset": poset_json(d), "family": fam_ids() }));
            let w = extract_directed(d, fam);
            t.check(case(d, "extract_directed"), w.as_ref().is_ok_and(|w| w.validate(d, fam)), || {
                json!({ "poset": poset_json(d), "family": fam_ids(), "result": format!("{w:?}") })
            });
            let meet = fam.iter().fold(d.full(), |acc, &f| acc & d.up(f));
            for &u in &opens {
                if !meet.is_subset(u) {
                    continue;
                }
                let r = rudin_corollary_check(d, fam, u);
                let ok = r.as_ref().is_ok_and(|&f| fam.contains(&f) && d.up(f).is_subset(u));
                t.check(case(d, "corollary"), ok, || {
                    json!({ "poset": poset_json(d), "family": fam_ids(), "open": ids(d, u), "result": format!("{r:?}") })
                });
            }
        }
        t
    });

    let one = ExampleOne;
    let mut schemas = vec![OneFamily::PAIRS_WITH_A];
    schemas.extend(
        one.representative_points()
            .into_iter()
            .map(|x| one.fin_of(x)),
    );
    for fam in &schemas {
        for u in one.representative_scott_opens() {
            if !fam.meet().is_subset(&u) {
                continue;
            }
            let r = rudin_corollary_example_one(fam, &u);
            let ok = r
                .as_ref()
                .is_ok_and(|f| fam.contains(f) && f.up().is_subset(&u));
            t.check("exampleone/corollary", ok, || {
                json!({ "family": fam.describe(), "open": u.render(), "result": format!("{r:?}") })
            });
        }
    }
    Ok((t, vec![]))
}
