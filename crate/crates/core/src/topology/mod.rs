//! Scott, lower and Lawson topologies on finite posets as explicit families
//! of open sets, plus the symbolic versions on the counterexample.

pub mod symbolic;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bits::ElemSet;
use crate::domain::FiniteDomain;
use crate::error::{Error, Result};
use crate::oracle;
use crate::par::{self, Exec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    Scott,
    Lower,
    Lawson,
    Glim,
    Discrete,
    Indiscrete,
    Derived,
}

/// Finite topology: opens sorted by mask, containing `∅` and the carrier,
/// closed under union and intersection.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    n: usize,
    kind: TopologyKind,
    opens: Vec<ElemSet>,
}

impl FiniteTopology {
    /// Validates the axioms.
    pub fn new(
        n: usize,
        kind: TopologyKind,
        opens: impl IntoIterator<Item = ElemSet>,
    ) -> Result<Self> {
        let t = Self::from_family(n, kind, opens);
        if let Some(problem) = t.axiom_violation() {
            return Err(Error::NotATopology(problem));
        }
        Ok(t)
    }

    fn from_family(n: usize, kind: TopologyKind, opens: impl IntoIterator<Item = ElemSet>) -> Self {
        let opens: BTreeSet<ElemSet> = opens.into_iter().collect();
        FiniteTopology {
            n,
            kind,
            opens: opens.into_iter().collect(),
        }
    }

    /// The topology generated by a subbasis: finite intersections, then unions.
    pub fn generated(n: usize, kind: TopologyKind, subbasis: &[ElemSet]) -> Self {
        let full = ElemSet::full(n);
        let mut basis: BTreeSet<ElemSet> = BTreeSet::from([full]);
        for &s in subbasis {
            let next: Vec<ElemSet> = basis.iter().map(|&b| b & s).collect();
            basis.extend(next);
        }
        let mut opens: BTreeSet<ElemSet> = BTreeSet::from([ElemSet::EMPTY]);
        for &b in &basis {
            let next: Vec<ElemSet> = opens.iter().map(|&o| o | b).collect();
            opens.extend(next);
        }
        FiniteTopology {
            n,
            kind,
            opens: opens.into_iter().collect(),
        }
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_family(n, TopologyKind::Discrete, ElemSet::full(n).subsets())
    }

    pub fn indiscrete(n: usize) -> Self {
        Self::from_family(
            n,
            TopologyKind::Indiscrete,
            [ElemSet::EMPTY, ElemSet::full(n)],
        )
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn carrier_size(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &[ElemSet] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn is_open(&self, s: ElemSet) -> bool {
        self.opens.binary_search(&s).is_ok()
    }

    /// Same family of opens, regardless of how it was produced.
    pub fn same_opens(&self, other: &FiniteTopology) -> bool {
        self.n == other.n && self.opens == other.opens
    }

    pub fn is_coarser_than(&self, other: &FiniteTopology) -> bool {
        self.opens.iter().all(|&u| other.is_open(u))
    }

    /// First failed axiom, if any.
    pub fn axiom_violation(&self) -> Option<String> {
        let full = ElemSet::full(self.n);
        if !self.is_open(ElemSet::EMPTY) {
            return Some("missing the empty set".into());
        }
        if !self.is_open(full) {
            return Some("missing the carrier".into());
        }
        for (i, &u) in self.opens.iter().enumerate() {
            if !u.is_subset(full) {
                return Some(format!("{u:?} is not a subset of the carrier"));
            }
            for &v in &self.opens[i + 1..] {
                if !self.is_open(u | v) {
                    return Some(format!("union of {u:?} and {v:?} is missing"));
                }
                if !self.is_open(u & v) {
                    return Some(format!("intersection of {u:?} and {v:?} is missing"));
                }
            }
        }
        None
    }

    pub fn interior(&self, s: ElemSet) -> ElemSet {
        self.opens
            .iter()
            .filter(|u| u.is_subset(s))
            .fold(ElemSet::EMPTY, |acc, &u| acc | u)
    }

    pub fn closure(&self, s: ElemSet) -> ElemSet {
        self.interior(s.complement(self.n)).complement(self.n)
    }

    pub fn open_neighbourhoods(&self, x: usize) -> impl Iterator<Item = ElemSet> + '_ {
        self.opens.iter().copied().filter(move |u| u.contains(x))
    }
}

/// All Scott-open sets. Computed as the upper sets and, independently, by the
/// definition over directed subsets; the two must agree.
pub fn scott_topology(d: &FiniteDomain) -> Result<FiniteTopology> {
    let upper = d.upper_sets();
    let definitional: Vec<ElemSet> = d.all_subsets()?.filter(|&u| d.is_scott_open(u)).collect();
    if upper != definitional {
        return Err(Error::ConsistencyViolation(format!(
            "Scott opens of {} differ from its upper sets",
            d.name()
        )));
    }
    FiniteTopology::new(d.len(), TopologyKind::Scott, upper)
}

pub fn lower_topology(d: &FiniteDomain) -> FiniteTopology {
    let n = d.len();
    let sub: Vec<ElemSet> = (0..n).map(|x| d.up_set(x).complement(n)).collect();
    FiniteTopology::generated(n, TopologyKind::Lower, &sub)
}

/// Generated by the Scott opens together with the complements of principal
/// filters.
pub fn lawson_topology(d: &FiniteDomain) -> Result<FiniteTopology> {
    let n = d.len();
    let mut sub: Vec<ElemSet> = scott_topology(d)?.opens().to_vec();
    sub.extend((0..n).map(|x| d.up_set(x).complement(n)));
    Ok(FiniteTopology::generated(n, TopologyKind::Lawson, &sub))
}

/// Sets `U` such that whenever a directed family `𝓕` has `∩↑F ⊆ ↑x` with
/// `x ∈ U`, some member satisfies `↑F ⊆ U`. Brute force over Smyth-directed
/// antichain families with at most `family_bound` members.
pub fn glim_topology_naive(
    d: &FiniteDomain,
    family_bound: usize,
    exec: Exec,
) -> Result<FiniteTopology> {
    d.check_enumerable()?;
    let n = d.len();
    let ups: Vec<ElemSet> = d.antichains().iter().map(|&a| d.up(a)).collect();
    let subsets = 1usize << n;
    // For each first member, mark the sets U refuted by some family.
    let firsts: Vec<usize> = (0..ups.len()).collect();
    let refuted = par::map(exec, &firsts, |&first| {
        let mut bad = vec![false; subsets];
        oracle::for_each_directed_family_from(
            &ups,
            first,
            family_bound,
            &mut |members: &[usize]| {
                let meet = members
                    .iter()
                    .fold(ElemSet::full(n), |acc, &i| acc & ups[i]);
                let points: ElemSet = (0..n)
                    .filter(|&x| meet.is_subset(d.up_set(x)))
                    .fold(ElemSet::EMPTY, ElemSet::with);
                if points.is_empty() {
                    return;
                }
                for (mask, flag) in bad.iter_mut().enumerate() {
                    let u = ElemSet(mask as u64);
                    if !*flag && u.meets(points) && !members.iter().any(|&i| ups[i].is_subset(u)) {
                        *flag = true;
                    }
                }
            },
        );
        bad
    });
    let opens = (0..subsets)
        .filter(|&m| !refuted.iter().any(|bad| bad[m]))
        .map(|m| ElemSet(m as u64));
    Ok(FiniteTopology::from_family(n, TopologyKind::Glim, opens))
}

/// A finite Smyth-directed family has a least member, so the condition above
/// holds exactly for the upper sets.
pub fn glim_topology_reduced(d: &FiniteDomain) -> FiniteTopology {
    FiniteTopology::from_family(d.len(), TopologyKind::Glim, d.upper_sets())
}

/// Both computations, which must agree.
pub fn derive_glim_topology(
    d: &FiniteDomain,
    family_bound: usize,
    exec: Exec,
) -> Result<FiniteTopology> {
    let naive = glim_topology_naive(d, family_bound, exec)?;
    let reduced = glim_topology_reduced(d);
    if !naive.same_opens(&reduced) {
        return Err(Error::ConsistencyViolation(format!(
            "family-bounded and reduced limit topologies of {} differ",
            d.name()
        )));
    }
    FiniteTopology::new(d.len(), TopologyKind::Glim, reduced.opens)
}

pub const DEFAULT_FAMILY_BOUND: usize = 4;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::FinitePoset;

    fn dom(p: FinitePoset) -> FiniteDomain {
        FiniteDomain::new(p).unwrap()
    }

    fn diamond() -> FiniteDomain {
        dom(FinitePoset::build(
            "diamond",
            &["bot", "l", "r", "top"],
            &[("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
        )
        .unwrap())
    }

    fn chain2() -> FiniteDomain {
        dom(FinitePoset::build("c2", &["bot", "top"], &[("bot", "top")]).unwrap())
    }

    fn ids(d: &FiniteDomain, t: &FiniteTopology) -> Vec<Vec<String>> {
        t.opens().iter().map(|&u| d.ids_of(u)).collect()
    }

    #[test]
    fn scott_on_diamond() {
        let d = diamond();
        let t = scott_topology(&d).unwrap();
        assert_eq!(t.len(), 6);
        let opens = ids(&d, &t);
        for want in [
            vec![],
            vec!["top"],
            vec!["l", "top"],
            vec!["r", "top"],
            vec!["l", "r", "top"],
        ] {
            assert!(opens.contains(&want.iter().map(|s| s.to_string()).collect()));
        }
        assert!(t.is_open(d.full()));
    }

    #[test]
    fn scott_small_cases() {
        let one = dom(FinitePoset::build::<&str>("one", &["x"], &[]).unwrap());
        assert_eq!(scott_topology(&one).unwrap().len(), 2);
        let c = chain2();
        let t = scott_topology(&c).unwrap();
        assert_eq!(
            ids(&c, &t),
            vec![
                vec![],
                vec!["top".to_string()],
                vec!["bot".into(), "top".into()]
            ]
        );
    }

    #[test]
    fn lower_on_chain() {
        let c = chain2();
        let t = lower_topology(&c);
        assert_eq!(
            ids(&c, &t),
            vec![
                vec![],
                vec!["bot".to_string()],
                vec!["bot".into(), "top".into()]
            ]
        );
        assert!(t.axiom_violation().is_none());
    }

    #[test]
    fn lawson_is_discrete_on_finite() {
        for d in [diamond(), chain2()] {
            assert!(lawson_topology(&d)
                .unwrap()
                .same_opens(&FiniteTopology::discrete(d.len())));
        }
        let one = dom(FinitePoset::build::<&str>("one", &["x"], &[]).unwrap());
        assert_eq!(lawson_topology(&one).unwrap().len(), 2);
    }

    #[test]
    fn interior_and_closure() {
        let d = diamond();
        let t = scott_topology(&d).unwrap();
        assert_eq!(t.interior(d.full()), d.full());
        let lt = d.set_from_ids(&["l", "top"]).unwrap();
        assert_eq!(t.interior(lt), lt);
        let l = d.set_from_ids(&["l"]).unwrap();
        assert_eq!(t.interior(l), ElemSet::EMPTY);
        // Scott closure is the down-closure.
        assert_eq!(t.closure(l), d.down(l));
    }

    #[test]
    fn glim_matches_scott() {
        let d = diamond();
        let g = derive_glim_topology(&d, DEFAULT_FAMILY_BOUND, Exec::Sequential).unwrap();
        assert!(g.same_opens(&scott_topology(&d).unwrap()));
        let anti = dom(FinitePoset::build::<&str>("anti", &["x", "y"], &[]).unwrap());
        assert_eq!(
            derive_glim_topology(&anti, 4, Exec::Sequential)
                .unwrap()
                .len(),
            4
        );
        let one = dom(FinitePoset::build::<&str>("one", &["x"], &[]).unwrap());
        assert_eq!(
            derive_glim_topology(&one, 4, Exec::Sequential)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn invalid_family_is_rejected() {
        let bad = FiniteTopology::new(
            2,
            TopologyKind::Derived,
            [ElemSet::EMPTY, ElemSet(1), ElemSet(2), ElemSet(3)],
        );
        assert!(bad.is_ok());
        let bad = FiniteTopology::new(
            2,
            TopologyKind::Derived,
            [ElemSet::EMPTY, ElemSet(1), ElemSet(2)],
        );
        assert!(matches!(bad, Err(Error::NotATopology(_))));
    }
}
