//! Verification suites. Each one runs the checks for one statement over the
//! corpus and reports every failing case with a witness.

mod finite;
mod nets;
mod report;
mod symbolic;

use std::sync::OnceLock;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::convergence::{derive_convergence_topology, Mode, NetClassConfig};
use crate::corpus::Corpus;
use crate::domain::FiniteDomain;
use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::topology::{
    glim_topology_naive, glim_topology_reduced, FiniteTopology, DEFAULT_FAMILY_BOUND,
};

pub use report::{emit_report, parse_report, Failure, Format, PartSummary, SuiteReport};

/// Suite names in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "order",
    "waybelow",
    "collapse",
    "prop1",
    "prop2",
    "prop4",
    "prop5",
    "prop6",
    "axioms",
    "prop8",
    "prop9-10",
    "thm1",
    "thm2-if",
    "prop12",
    "thm3",
    "thm4",
    "rudin",
    "exampleone",
];

/// Every library operation the suites are expected to exercise.
pub const OPERATIONS: &[&str] = &[
    "build_finite_poset",
    "leq",
    "up_closure",
    "down_closure",
    "is_directed",
    "directed_sup",
    "enumerate_directed_subsets",
    "truncate_example_one",
    "point_way_below",
    "smyth_leq",
    "set_way_below",
    "fin_of",
    "classify",
    "interpolate",
    "way_up",
    "scott_topology",
    "is_scott_open",
    "lower_topology",
    "lawson_topology",
    "interior",
    "closure",
    "derive_glim_topology",
    "ideal_member",
    "level_set",
    "converges_is",
    "converges_gis",
    "converges_topological",
    "gi_family",
    "is_gi_liminf",
    "derive_convergence_topology",
    "is_directed_family",
    "extract_directed",
    "rudin_corollary_check",
    "generate_all_posets",
    "run_suite",
    "emit_report",
];

fn operations_of(suite: &str) -> &'static [&'static str] {
    match suite {
        "order" => &[
            "build_finite_poset",
            "leq",
            "up_closure",
            "down_closure",
            "is_directed",
            "directed_sup",
            "enumerate_directed_subsets",
            "truncate_example_one",
            "generate_all_posets",
        ],
        "waybelow" => &[
            "point_way_below",
            "smyth_leq",
            "set_way_below",
            "fin_of",
            "classify",
        ],
        "collapse" => &[
            "point_way_below",
            "set_way_below",
            "smyth_leq",
            "scott_topology",
            "lawson_topology",
        ],
        "prop1" => &[
            "interpolate",
            "way_up",
            "interior",
            "closure",
            "scott_topology",
            "is_scott_open",
        ],
        "prop2" => &[
            "derive_convergence_topology",
            "converges_is",
            "scott_topology",
        ],
        "prop4" => &["converges_is", "converges_gis", "ideal_member", "level_set"],
        "prop5" => &[
            "set_way_below",
            "converges_gis",
            "level_set",
            "ideal_member",
        ],
        "prop6" => &["set_way_below", "converges_gis", "level_set"],
        "axioms" => &[
            "scott_topology",
            "lower_topology",
            "lawson_topology",
            "derive_glim_topology",
            "derive_convergence_topology",
        ],
        "prop8" => &[
            "converges_gis",
            "converges_topological",
            "derive_convergence_topology",
        ],
        "prop9-10" => &["derive_glim_topology", "derive_convergence_topology"],
        "thm1" => &[
            "derive_glim_topology",
            "scott_topology",
            "derive_convergence_topology",
        ],
        "thm2-if" => &["converges_gis", "converges_topological", "scott_topology"],
        "prop12" => &[
            "lawson_topology",
            "derive_convergence_topology",
            "is_gi_liminf",
        ],
        "thm3" => &[
            "is_gi_liminf",
            "gi_family",
            "converges_topological",
            "lawson_topology",
        ],
        "thm4" => &[
            "classify",
            "is_gi_liminf",
            "converges_topological",
            "level_set",
        ],
        "rudin" => &[
            "is_directed_family",
            "extract_directed",
            "rudin_corollary_check",
            "is_scott_open",
        ],
        "exampleone" => &[
            "set_way_below",
            "classify",
            "converges_is",
            "converges_gis",
            "level_set",
            "way_up",
            "interior",
        ],
        _ => &[],
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    /// Exhaustive generation covers posets with up to this many points.
    pub max_size: usize,
    pub seed: u64,
    pub exec: Exec,
    /// Sampled `(net, x, ideal)` triples per poset.
    pub samples: usize,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            max_size: 5,
            seed: 0,
            exec: Exec::default(),
            samples: 1000,
        }
    }
}

/// Case bookkeeping for one suite or one slice of it.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    cases: u64,
    passed: u64,
    failures: Vec<Failure>,
}

impl Tally {
    pub(crate) fn check(
        &mut self,
        case: impl Into<String>,
        ok: bool,
        witness: impl FnOnce() -> Value,
    ) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(Failure {
                suite: String::new(),
                case: case.into(),
                witness: witness(),
            });
        }
    }

    /// A checker error counts as a failed case.
    pub(crate) fn check_result(
        &mut self,
        case: impl Into<String>,
        r: Result<bool>,
        witness: impl FnOnce() -> Value,
    ) {
        match r {
            Ok(ok) => self.check(case, ok, witness),
            Err(e) => self.check(case, false, || json!({ "error": e.to_string() })),
        }
    }

    pub(crate) fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.passed += other.passed;
        self.failures.extend(other.failures);
    }
}

/// Shared inputs: the corpus as domains, plus derived topologies computed at
/// most once per run.
pub(crate) struct Ctx {
    pub params: Params,
    pub domains: Vec<FiniteDomain>,
    derived: Vec<[OnceLock<std::result::Result<FiniteTopology, Error>>; 3]>,
    glim: Vec<OnceLock<std::result::Result<(FiniteTopology, FiniteTopology), Error>>>,
}

impl Ctx {
    pub fn new(params: Params) -> Result<Self> {
        let corpus = Corpus::standard(params.max_size)?;
        let domains = par::map(
            params.exec,
            &corpus.all().cloned().collect::<Vec<_>>(),
            |p| FiniteDomain::new(p.clone()),
        )
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        let derived = domains.iter().map(|_| Default::default()).collect();
        let glim = domains.iter().map(|_| OnceLock::new()).collect();
        Ok(Ctx {
            params,
            domains,
            derived,
            glim,
        })
    }

    /// The topology induced by `mode` over the default net class.
    pub fn derived(&self, i: usize, mode: Mode) -> Result<&FiniteTopology> {
        let slot = match mode {
            Mode::Is => 0,
            Mode::Gis => 1,
            Mode::Gi => 2,
        };
        self.derived[i][slot]
            .get_or_init(|| {
                derive_convergence_topology(
                    &self.domains[i],
                    mode,
                    &NetClassConfig::default(),
                    Exec::Sequential,
                )
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The limit topology computed naively and by the reduction.
    pub fn glim(&self, i: usize) -> Result<&(FiniteTopology, FiniteTopology)> {
        self.glim[i]
            .get_or_init(|| {
                let d = &self.domains[i];
                let naive = glim_topology_naive(d, DEFAULT_FAMILY_BOUND, Exec::Sequential)?;
                Ok((naive, glim_topology_reduced(d)))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Runs `f` on every corpus domain, fanning out per poset, and merges the
    /// tallies in corpus order.
    pub fn per_poset<F>(&self, f: F) -> Tally
    where
        F: Fn(usize, &FiniteDomain) -> Tally + Sync + Send,
    {
        let idx: Vec<usize> = (0..self.domains.len()).collect();
        let mut out = Tally::default();
        for t in par::map(self.params.exec, &idx, |&i| f(i, &self.domains[i])) {
            out.merge(t);
        }
        out
    }

    /// Generator for the `stream`-th poset; independent of scheduling.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.params.seed);
        r.set_stream(stream);
        r
    }
}

type SuiteFn = fn(&Ctx) -> Result<(Tally, Vec<String>)>;

fn suite_fn(name: &str) -> Option<SuiteFn> {
    Some(match name {
        "order" => finite::order,
        "waybelow" => finite::waybelow,
        "collapse" => finite::collapse,
        "prop1" => finite::prop1,
        "prop2" => finite::prop2,
        "prop4" => nets::prop4,
        "prop5" => nets::prop5,
        "prop6" => nets::prop6,
        "axioms" => finite::axioms,
        "prop8" => nets::prop8,
        "prop9-10" => finite::prop9_10,
        "thm1" => finite::thm1,
        "thm2-if" => nets::thm2_if,
        "prop12" => nets::prop12,
        "thm3" => nets::thm3,
        "thm4" => nets::thm4,
        "rudin" => finite::rudin,
        "exampleone" => symbolic::exampleone,
        _ => return None,
    })
}

fn run_in(ctx: &Ctx, name: &str) -> Result<SuiteReport> {
    let f = suite_fn(name).ok_or_else(|| Error::UnknownSuite(name.to_owned()))?;
    let start = Instant::now();
    let (tally, notes) = f(ctx)?;
    let mut r = SuiteReport::new(name, ctx.params.seed);
    r.cases = tally.cases;
    r.passed = tally.passed;
    r.failures = tally.failures;
    for fail in &mut r.failures {
        fail.suite = name.to_owned();
    }
    r.notes = notes;
    r.wall_time = start.elapsed();
    Ok(r)
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(name: &str, params: Params) -> Result<SuiteReport> {
    if name != "all" && suite_fn(name).is_none() {
        return Err(Error::UnknownSuite(name.to_owned()));
    }
    let ctx = Ctx::new(params)?;
    if name != "all" {
        return run_in(&ctx, name);
    }
    let start = Instant::now();
    let mut all = SuiteReport::new("all", params.seed);
    let mut covered: Vec<&str> = vec!["run_suite", "emit_report"];
    for &s in SUITES {
        let r = run_in(&ctx, s)?;
        covered.extend(operations_of(s));
        all.cases += r.cases;
        all.passed += r.passed;
        all.parts.push(PartSummary {
            suite: s.to_owned(),
            cases: r.cases,
            passed: r.passed,
        });
        all.notes
            .extend(r.notes.iter().map(|n| format!("{s}: {n}")));
        all.failures.extend(r.failures);
    }
    let missing: Vec<&str> = OPERATIONS
        .iter()
        .copied()
        .filter(|op| !covered.contains(op))
        .collect();
    all.cases += 1;
    if missing.is_empty() {
        all.passed += 1;
    } else {
        all.failures.push(Failure {
            suite: "all".into(),
            case: "coverage".into(),
            witness: json!({ "missing": missing }),
        });
    }
    all.coverage = OPERATIONS
        .iter()
        .filter(|op| covered.contains(op))
        .map(|s| s.to_string())
        .collect();
    all.wall_time = start.elapsed();
    Ok(all)
}

/// JSON for a poset, used inside witnesses.
pub(crate) fn poset_json(d: &FiniteDomain) -> Value {
    serde_json::to_value(d.to_spec()).expect("poset specs serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_operation_is_claimed() {
        for op in OPERATIONS {
            let claimed = *op == "run_suite"
                || *op == "emit_report"
                || SUITES.iter().any(|s| operations_of(s).contains(op));
            assert!(claimed, "{op}");
        }
        for s in SUITES {
            assert!(suite_fn(s).is_some());
            for op in operations_of(s) {
                assert!(OPERATIONS.contains(op), "{op}");
            }
        }
    }

    #[test]
    fn unknown_suite() {
        assert_eq!(
            run_suite("prop3", Params::default()).unwrap_err(),
            Error::UnknownSuite("prop3".into())
        );
    }
}
