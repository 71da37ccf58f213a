//! Suites about net convergence on finite posets, plus the periodic nets on
//! the counterexample for the Lawson characterisation.

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::bits::ElemSet;
use crate::convergence::{
    derive_convergence_topology, directed_index_posets, net_class, Ideal, IdealKind, IndexDcpo,
    Mode, Net, NetClassConfig, NetConvergence, Track,
};
use crate::domain::FiniteDomain;
use crate::error::Result;
use crate::example_one::{ExampleOne, OneElem};
use crate::par::Exec;
use crate::topology::symbolic::OneTopology;
use crate::topology::{lawson_topology, scott_topology, FiniteTopology};
use crate::waybelow::{Antichain, Approximation};

use super::{poset_json, Ctx, Tally};

type Out = Result<(Tally, Vec<String>)>;

fn case(d: &FiniteDomain, what: &str) -> String {
    format!("{}/{what}", d.name())
}

fn net_json<D: crate::dcpo::Dcpo<Elem = E>, E: Copy>(d: &D, net: &Net<E>) -> Value {
    serde_json::to_value(net.to_spec(d)).expect("net specs serialize")
}

pub(crate) struct Triple {
    pub net: Net<usize>,
    pub x: usize,
    pub ideal: Ideal,
}

impl Triple {
    fn json(&self, d: &FiniteDomain) -> Value {
        json!({
            "poset": poset_json(d),
            "net": net_json(d, &self.net),
            "point": d.element(self.x),
            "ideal": self.ideal.kind().name(),
        })
    }
}

fn index_pool() -> Vec<IndexDcpo> {
    directed_index_posets(4)
        .expect("small index posets")
        .into_iter()
        .map(|p| IndexDcpo::finite(p).expect("index posets have a top"))
        .collect()
}

/// Seeded `(net, x, ideal)` triples: finite directed indexes with up to four
/// points, or periodic nets on `ω` with period up to four.
pub(crate) fn sample_triples(
    ctx: &Ctx,
    stream: u64,
    d: &FiniteDomain,
    count: usize,
) -> Vec<Triple> {
    let pool = index_pool();
    let mut rng = ctx.rng(stream);
    let n = d.len();
    (0..count)
        .map(|_| {
            let (net, kinds): (Net<usize>, &[IdealKind]) = if rng.gen_bool(0.5) {
                let index = pool.choose(&mut rng).expect("pool is nonempty");
                let IndexDcpo::Finite(p) = index else {
                    unreachable!()
                };
                let values = (0..p.len()).map(|_| rng.gen_range(0..n)).collect();
                (
                    Net::finite(index, values).expect("sized to the index"),
                    &[IdealKind::Eventual, IdealKind::TrivialAll],
                )
            } else {
                let period = rng.gen_range(1..=4);
                let tracks = (0..period)
                    .map(|_| Track::Const(rng.gen_range(0..n)))
                    .collect();
                (
                    Net::omega(tracks).expect("positive period"),
                    &IdealKind::ALL,
                )
            };
            // The trivial ideal is drawn about one time in ten.
            let kind = if rng.gen_bool(0.1) {
                IdealKind::TrivialAll
            } else {
                **kinds
                    .iter()
                    .filter(|k| **k != IdealKind::TrivialAll)
                    .collect::<Vec<_>>()
                    .choose(&mut rng)
                    .unwrap()
            };
            let ideal = Ideal::for_net(kind, &net).expect("kind fits the index");
            Triple {
                net,
                x: rng.gen_range(0..n),
                ideal,
            }
        })
        .collect()
}

const PROP4: u64 = 0x4000;
const PROP6: u64 = 0x6000;
const THM2: u64 = 0x2_0000;

pub(crate) fn prop4(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|i, d| {
        let mut t = Tally::default();
        for tr in sample_triples(ctx, PROP4 + i as u64, d, ctx.params.samples) {
            let r = (|| -> Result<bool> {
                let is = d.converges_is(&tr.net, tr.x, &tr.ideal)?;
                Ok(!is.holds || d.converges_gis(&tr.net, tr.x, &tr.ideal)?.holds)
            })();
            t.check_result(case(d, "is_implies_gis"), r, || tr.json(d));
        }
        t
    });
    Ok((
        t,
        vec![format!("{} sampled triples per poset", ctx.params.samples)],
    ))
}

pub(crate) fn prop5(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|i, d| {
        let mut t = Tally::default();
        let sets: Vec<Antichain> = d.all_antichains().collect();
        let eventual = Ideal::new(IdealKind::Eventual, IndexDcpo::Omega).expect("omega");
        for x in 0..d.len() {
            let net = Net::constant(x);
            for g in &sets {
                if d.set_way_below(g, &d.singleton_fin(x)) {
                    continue;
                }
                let r = (|| -> Result<bool> {
                    Ok(d.converges_gis(&net, x, &eventual)?.holds
                        && !d.eventually_in(&net, &d.fin_up(g), &eventual)?)
                })();
                t.check_result(case(d, "constant_net_separates"), r, || {
                    json!({ "poset": poset_json(d), "point": d.element(x), "g": d.ids_of(g.set()) })
                });
            }
        }
        for tr in sample_triples(ctx, PROP4 + i as u64, d, ctx.params.samples / 4) {
            if tr.ideal.is_trivial() {
                continue;
            }
            let r = (|| -> Result<bool> {
                if !d.converges_gis(&tr.net, tr.x, &tr.ideal)?.holds {
                    return Ok(true);
                }
                for g in &sets {
                    if d.set_way_below(g, &d.singleton_fin(tr.x))
                        && !d.eventually_in(&tr.net, &d.fin_up(g), &tr.ideal)?
                    {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            t.check_result(case(d, "way_below_sets_are_eventual"), r, || tr.json(d));
        }
        t
    });
    Ok((t, vec![]))
}

pub(crate) fn prop6(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|i, d| {
        let mut t = Tally::default();
        let sets: Vec<Antichain> = d.all_antichains().collect();
        for tr in sample_triples(ctx, PROP6 + i as u64, d, ctx.params.samples / 2) {
            if tr.ideal.is_trivial() {
                continue;
            }
            let r = (|| -> Result<bool> {
                for g in &sets {
                    if d.set_way_below(g, &d.singleton_fin(tr.x))
                        && !d.eventually_in(&tr.net, &d.fin_up(g), &tr.ideal)?
                    {
                        return Ok(true);
                    }
                }
                Ok(d.converges_gis(&tr.net, tr.x, &tr.ideal)?.holds)
            })();
            t.check_result(case(d, "eventual_way_below_sets_give_gis"), r, || {
                tr.json(d)
            });
        }
        t
    });
    Ok((t, vec![]))
}

pub(crate) fn thm2_if(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|i, d| {
        let mut t = Tally::default();
        let sigma = match scott_topology(d) {
            Ok(s) => s,
            Err(e) => {
                t.check(case(d, "scott_topology"), false, || json!({ "error": e.to_string() }));
                return t;
            }
        };
        for tr in sample_triples(ctx, THM2 + i as u64, d, ctx.params.samples) {
            let r = (|| -> Result<bool> {
                let gis = d.converges_gis(&tr.net, tr.x, &tr.ideal)?.holds;
                if tr.ideal.is_trivial() {
                    return Ok(gis);
                }
                Ok(gis == d.converges_topological(&tr.net, tr.x, &tr.ideal, &sigma)?.holds)
            })();
            let what = if tr.ideal.is_trivial() { "trivial_ideal_gis" } else { "gis_iff_scott" };
            t.check_result(case(d, what), r, || tr.json(d));
        }
        // Every net and point with the trivial ideal.
        for tr in sample_triples(ctx, THM2 + 0x1_0000 + i as u64, d, ctx.params.samples / 10) {
            let trivial = Ideal::for_net(IdealKind::TrivialAll, &tr.net).expect("trivial fits every index");
            for x in 0..d.len() {
                let r = d.converges_gis(&tr.net, x, &trivial).map(|v| v.holds);
                t.check_result(case(d, "trivial_ideal_gis"), r, || {
                    json!({ "poset": poset_json(d), "net": net_json(d, &tr.net), "point": d.element(x) })
                });
            }
        }
        t
    });
    Ok((t, vec!["the converse direction needs a dcpo that is not quasi-continuous, and every finite one is".into()]))
}

/// Points each net converges to in `mode`, over the default class.
fn limits_over_class(
    d: &FiniteDomain,
    mode: Mode,
    cfg: &NetClassConfig,
) -> Result<Vec<(Net<usize>, Ideal, ElemSet)>> {
    let mut out = Vec::new();
    for net in net_class(d.len(), cfg)? {
        let ideal = Ideal::for_net(cfg.ideal, &net)?;
        let limits = match mode {
            Mode::Is => d.limits_by(&net, &ideal, |d, n, x, i| d.converges_is(n, x, i))?,
            Mode::Gis => d.limits_by(&net, &ideal, |d, n, x, i| d.converges_gis(n, x, i))?,
            Mode::Gi => d.gi_limits(&net, &ideal)?,
        };
        out.push((net, ideal, limits));
    }
    Ok(out)
}

pub(crate) fn prop8(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|i, d| {
        let mut t = Tally::default();
        let n = d.len();
        let r = (|| -> Result<()> {
            let derived = ctx.derived(i, Mode::Gis)?;
            let pool = [
                ("indiscrete", FiniteTopology::indiscrete(n)),
                ("scott", scott_topology(d)?),
                ("lawson", lawson_topology(d)?),
                ("discrete", FiniteTopology::discrete(n)),
            ];
            let class = limits_over_class(d, Mode::Gis, &NetClassConfig::default())?;
            for (name, top) in &pool {
                let mut premise = true;
                'nets: for (net, ideal, limits) in &class {
                    for x in limits.iter() {
                        if !d.converges_topological(net, x, ideal, top)?.holds {
                            premise = false;
                            break 'nets;
                        }
                    }
                }
                if premise {
                    t.check(
                        case(d, &format!("{name}_within_derived_gis")),
                        top.is_coarser_than(derived),
                        || json!({ "poset": poset_json(d), "topology": name }),
                    );
                }
            }
            let derived_ok = class.iter().all(|(net, ideal, limits)| {
                limits.iter().all(|x| {
                    d.converges_topological(net, x, ideal, derived)
                        .is_ok_and(|v| v.holds)
                })
            });
            t.check(
                case(d, "derived_gis_is_admissible"),
                derived_ok,
                || json!({ "poset": poset_json(d) }),
            );
            Ok(())
        })();
        if let Err(e) = r {
            t.check(
                case(d, "prop8"),
                false,
                || json!({ "error": e.to_string() }),
            );
        }
        t
    });
    Ok((t, vec![]))
}

/// A net in the default class that GI-converges to a point of `u` while
/// leaving `u` on a set outside the ideal.
fn gi_counterexample(d: &FiniteDomain, u: ElemSet) -> Result<Option<Value>> {
    for (net, ideal, limits) in limits_over_class(d, Mode::Gi, &NetClassConfig::default())? {
        if let Some(x) = (limits & u).first() {
            if !d.eventually_in(&net, &u, &ideal)? {
                return Ok(Some(json!({
                    "net": net_json(d, &net),
                    "gi_limit": d.element(x),
                    "level_set": d.render_level(&net, &u)?,
                })));
            }
        }
    }
    Ok(None)
}

pub(crate) fn prop12(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|i, d| {
        let mut t = Tally::default();
        let r = (|| -> Result<()> {
            let lambda = lawson_topology(d)?;
            let gi = ctx.derived(i, Mode::Gi)?;
            let missing: Vec<ElemSet> = lambda
                .opens()
                .iter()
                .copied()
                .filter(|&u| !gi.is_open(u))
                .collect();
            let witness = match missing.first() {
                Some(&u) => gi_counterexample(d, u)?,
                None => None,
            };
            t.check(
                case(d, "lawson_within_derived_gi"),
                missing.is_empty(),
                || {
                    json!({
                        "poset": poset_json(d),
                        "missing_opens": missing.len(),
                        "open": missing.first().map(|&u| d.ids_of(u)),
                        "net": witness,
                    })
                },
            );
            let finite_only = derive_convergence_topology(
                d,
                Mode::Gi,
                &NetClassConfig::finite_index_only(4),
                Exec::Sequential,
            )?;
            t.check(
                case(d, "finite_index/lawson_within_derived_gi"),
                lambda.is_coarser_than(&finite_only),
                || json!({ "poset": poset_json(d) }),
            );
            Ok(())
        })();
        if let Err(e) = r {
            t.check(
                case(d, "prop12"),
                false,
                || json!({ "error": e.to_string() }),
            );
        }
        t
    });
    Ok((
        t,
        vec![
            "periodic nets on ω can GI-converge to a point they leave infinitely often, so Lawson opens drop out of the derived topology".into(),
            "with nets on finite directed indexes only, the inclusion holds".into(),
        ],
    ))
}

fn finite_index_nets(d: &FiniteDomain, max: usize) -> Result<Vec<Net<usize>>> {
    net_class(d.len(), &NetClassConfig::finite_index_only(max))
}

fn omega_nets(n: usize, max_period: usize) -> Result<Vec<Net<usize>>> {
    let cfg = NetClassConfig {
        max_index_size: 0,
        omega_max_period: max_period,
        ideal: IdealKind::Eventual,
    };
    net_class(n, &cfg)
}

/// Every GI-limit `x` has the meet of the GI family equal to `↑x`.
fn gi_meet_check(d: &FiniteDomain, net: &Net<usize>, ideal: &Ideal) -> Result<bool> {
    let limits = d.gi_limits(net, ideal)?;
    let meet = d
        .gi_family(net, ideal)?
        .iter()
        .fold(d.full(), |acc, f| acc & d.fin_up(f));
    Ok(limits.len() <= 1 && limits.iter().all(|x| meet == d.up_set(x)))
}

/// `is_gi_liminf` against Lawson ideal convergence, over finite index
/// posets with at most three points.
pub(crate) fn thm3_finite_group(d: &FiniteDomain, t: &mut Tally) {
    let r = (|| -> Result<()> {
        let lambda = lawson_topology(d)?;
        for net in finite_index_nets(d, 3)? {
            let ideal = Ideal::for_net(IdealKind::Eventual, &net)?;
            for x in 0..d.len() {
                let gi = d.is_gi_liminf(&net, x, &ideal)?.holds;
                let top = d.converges_topological(&net, x, &ideal, &lambda)?.holds;
                t.check(case(d, "finite_index/gi_iff_lawson"), gi == top, || {
                    json!({ "poset": poset_json(d), "net": net_json(d, &net), "point": d.element(x), "gi": gi, "lawson": top })
                });
            }
            let u = gi_meet_check(d, &net, &ideal);
            t.check_result(
                case(d, "finite_index/gi_limit_meet"),
                u,
                || json!({ "poset": poset_json(d), "net": net_json(d, &net) }),
            );
        }
        Ok(())
    })();
    if let Err(e) = r {
        t.check(
            case(d, "finite_index"),
            false,
            || json!({ "error": e.to_string() }),
        );
    }
}

pub(crate) fn thm3(ctx: &Ctx) -> Out {
    let mut t = ctx.per_poset(|_, d| {
        let mut t = Tally::default();
        thm3_finite_group(d, &mut t);
        if d.len() <= 3 {
            let r = (|| -> Result<()> {
                let lambda = lawson_topology(d)?;
                for net in omega_nets(d.len(), 2)? {
                    let ideal = Ideal::for_net(IdealKind::Eventual, &net)?;
                    for x in 0..d.len() {
                        let gi = d.is_gi_liminf(&net, x, &ideal)?.holds;
                        let top = d.converges_topological(&net, x, &ideal, &lambda)?.holds;
                        t.check(case(d, "omega/gi_iff_lawson"), gi == top, || {
                            json!({ "poset": poset_json(d), "net": net_json(d, &net), "point": d.element(x), "gi": gi, "lawson": top })
                        });
                    }
                    let u = gi_meet_check(d, &net, &ideal);
                    t.check_result(case(d, "omega/gi_limit_meet"), u, || json!({ "poset": poset_json(d), "net": net_json(d, &net) }));
                }
                Ok(())
            })();
            if let Err(e) = r {
                t.check(case(d, "omega"), false, || json!({ "error": e.to_string() }));
            }
        }
        t
    });

    let one = ExampleOne;
    let lambda = OneTopology::Lawson;
    let choices = [
        Track::Ascend,
        Track::Const(OneElem::Nat(0)),
        Track::Const(OneElem::Nat(2)),
        Track::Const(OneElem::A),
        Track::Const(OneElem::Top),
    ];
    let mut nets: Vec<Net<OneElem>> = choices
        .iter()
        .map(|c| Net::omega(vec![c.clone()]))
        .collect::<Result<_>>()?;
    for a in &choices {
        for b in &choices {
            nets.push(Net::omega(vec![a.clone(), b.clone()])?);
        }
    }
    let ideal = Ideal::new(IdealKind::Eventual, IndexDcpo::Omega)?;
    for net in &nets {
        for x in one.points_for(net) {
            let gi = one.is_gi_liminf(net, x, &ideal)?.holds;
            let top = one.converges_topological(net, x, &ideal, &lambda)?.holds;
            t.check("exampleone/gi_iff_lawson", gi == top, || {
                json!({ "net": net_json(&one, net), "point": x.to_string(), "gi": gi, "lawson": top })
            });
        }
    }
    Ok((
        t,
        vec![
            "on finite directed indexes the eventual ideal only sees the value at the top index, and the equivalence holds".into(),
            "on ω a net alternating between a point and something above it GI-converges to the point while a Lawson-open singleton is left infinitely often".into(),
        ],
    ))
}

pub(crate) fn thm4(ctx: &Ctx) -> Out {
    let t = ctx.per_poset(|_, d| {
        let mut t = Tally::default();
        let report = d.classify();
        t.check(
            case(d, "meet_continuous"),
            report.is_meet_continuous,
            || json!({ "poset": poset_json(d), "report": report }),
        );
        let r = (|| -> Result<(bool, bool)> {
            let lambda = lawson_topology(d)?;
            let mut equivalence = true;
            let mut eventual = true;
            let mut nets = finite_index_nets(d, 3)?;
            nets.extend(omega_nets(d.len(), 2)?);
            for net in &nets {
                let ideal = Ideal::for_net(IdealKind::Eventual, net)?;
                if matches!(net, Net::Finite { .. }) {
                    for x in 0..d.len() {
                        equivalence &= d.is_gi_liminf(net, x, &ideal)?.holds
                            == d.converges_topological(net, x, &ideal, &lambda)?.holds;
                    }
                }
                for f in d.all_antichains() {
                    let up = d.fin_up(&f);
                    if d.eventually_in(net, &up, &ideal)? {
                        eventual &= d.is_eventually_in(net, &up)?;
                    }
                }
            }
            Ok((equivalence, eventual))
        })();
        match r {
            Ok((equivalence, eventual)) => {
                t.check(
                    case(d, "hypothesis_equivalence"),
                    equivalence,
                    || json!({ "poset": poset_json(d) }),
                );
                t.check(
                    case(d, "hypothesis_eventually_in"),
                    eventual,
                    || json!({ "poset": poset_json(d) }),
                );
                let premise = report.is_meet_continuous && equivalence && eventual;
                t.check(
                    case(d, "continuous"),
                    !premise || report.is_continuous,
                    || json!({ "poset": poset_json(d), "report": report }),
                );
            }
            Err(e) => t.check(case(d, "thm4"), false, || json!({ "error": e.to_string() })),
        }
        t
    });
    Ok((
        t,
        vec![
            "the two hypotheses are read as a conjunction; the equivalence is checked on finite directed indexes up to 3 points, the eventuality condition also on periodic nets up to period 2".into(),
        ],
    ))
}
