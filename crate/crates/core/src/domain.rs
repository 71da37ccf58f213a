//! A finite poset packaged with its directed subsets and antichains, which the
//! brute-force checkers quantify over.

use std::ops::Deref;

use crate::bits::ElemSet;
use crate::dcpo::Dcpo;
use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// Limit on the number of directed subsets we are willing to materialize.
pub const MAX_DIRECTED: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct DirectedSubset {
    pub set: ElemSet,
    pub sup: usize,
}

/// Finite backend. Every finite poset is a dcpo: a finite directed set has a
/// greatest element, which is its supremum.
#[derive(Clone, Debug)]
pub struct FiniteDomain {
    poset: FinitePoset,
    directed: Vec<DirectedSubset>,
    antichains: Vec<ElemSet>,
}

impl Deref for FiniteDomain {
    type Target = FinitePoset;
    fn deref(&self) -> &FinitePoset {
        &self.poset
    }
}

impl FiniteDomain {
    pub fn new(poset: FinitePoset) -> Result<Self> {
        let sets = poset.enumerate_directed_subsets()?;
        if sets.len() > MAX_DIRECTED {
            return Err(Error::TooLarge {
                size: sets.len(),
                limit: MAX_DIRECTED,
            });
        }
        let directed = sets
            .into_iter()
            .map(|set| DirectedSubset {
                set,
                sup: poset.greatest(set).expect("has a maximum"),
            })
            .collect();
        let antichains = poset.antichains();
        Ok(FiniteDomain {
            poset,
            directed,
            antichains,
        })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn into_poset(self) -> FinitePoset {
        self.poset
    }

    pub fn directed(&self) -> &[DirectedSubset] {
        &self.directed
    }

    /// Nonempty antichains, i.e. the canonical finite sets `F`.
    pub fn antichains(&self) -> &[ElemSet] {
        &self.antichains
    }

    /// Definitional Scott-openness: an upper set that every directed set with
    /// supremum inside it already meets.
    pub fn is_scott_open(&self, u: ElemSet) -> bool {
        self.poset.up(u) == u
            && self
                .directed
                .iter()
                .all(|d| !u.contains(d.sup) || d.set.meets(u))
    }
}

impl Dcpo for FiniteDomain {
    type Elem = usize;
    type Set = ElemSet;

    fn leq(&self, x: usize, y: usize) -> bool {
        self.poset.leq(x, y)
    }
    fn empty_set(&self) -> ElemSet {
        ElemSet::EMPTY
    }
    fn whole(&self) -> ElemSet {
        self.poset.full()
    }
    fn set_of(&self, elems: &[usize]) -> ElemSet {
        self.poset.set_of(elems)
    }
    fn contains(&self, s: &ElemSet, x: usize) -> bool {
        s.contains(x)
    }
    fn union(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        *a | *b
    }
    fn intersection(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        *a & *b
    }
    fn complement(&self, a: &ElemSet) -> ElemSet {
        a.complement(self.poset.len())
    }
    fn is_subset(&self, a: &ElemSet, b: &ElemSet) -> bool {
        a.is_subset(*b)
    }
    fn up_closure(&self, s: &ElemSet) -> ElemSet {
        self.poset.up(*s)
    }
    fn down_closure(&self, s: &ElemSet) -> ElemSet {
        self.poset.down(*s)
    }
    fn is_directed(&self, s: &ElemSet) -> bool {
        self.poset.is_directed(s)
    }
    fn directed_sup(&self, s: &ElemSet) -> Result<usize> {
        self.poset.directed_sup(s)
    }
    fn element_name(&self, x: usize) -> String {
        self.poset.element_name(x)
    }
    fn parse_element(&self, name: &str) -> Result<usize> {
        self.poset.index_of(name)
    }
}
