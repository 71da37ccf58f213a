//! Scott and Lawson topologies on the counterexample, as predicates.
//!
//! Scott-open: an upper set whose natural part is cofinite once it contains
//! `top` (an unbounded chain in `N` has supremum `top`). Lawson-open: the
//! naturals and `a` are isolated (`{a} = (↑{a, t}) \ ↑t` for any `t`), and a
//! set containing `top` must contain a cofinite tail of `N`.

use serde::{Deserialize, Serialize};

use crate::example_one::{OneElem, OneSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OneTopology {
    Scott,
    Lawson,
}

pub fn is_scott_open(s: &OneSet) -> bool {
    s.up() == *s && (!s.has_top() || s.nats_cofinite())
}

pub fn is_lawson_open(s: &OneSet) -> bool {
    !s.has_top() || s.nats_cofinite()
}

impl OneTopology {
    pub fn is_open(self, s: &OneSet) -> bool {
        match self {
            OneTopology::Scott => is_scott_open(s),
            OneTopology::Lawson => is_lawson_open(s),
        }
    }

    /// Largest open subset.
    pub fn interior(self, s: &OneSet) -> OneSet {
        match self {
            OneTopology::Scott => {
                // Largest upper set inside `s`: {x : ↑x ⊆ s}.
                if !s.has_top() {
                    return OneSet::empty();
                }
                let tail = s.tail();
                let u = OneSet::new([], tail, s.has_a(), true);
                if tail.is_some() {
                    u
                } else {
                    OneSet::empty()
                }
            }
            OneTopology::Lawson => {
                if s.has_top() && !s.nats_cofinite() {
                    s.intersection(&OneSet::from_elems(&[OneElem::Top]).complement())
                } else {
                    s.clone()
                }
            }
        }
    }

    /// Smallest closed superset.
    pub fn closure(self, s: &OneSet) -> OneSet {
        self.interior(&s.complement()).complement()
    }

    /// A neighbourhood base at `x`, truncated to thresholds `t <= horizon`.
    /// Past the largest natural mentioned by a net, level sets of the
    /// tail-shaped neighbourhoods stop changing, so the truncation is exact
    /// for ideal convergence of such nets.
    pub fn neighbourhoods(self, x: OneElem, horizon: u64) -> Vec<OneSet> {
        match (self, x) {
            (OneTopology::Scott, OneElem::Nat(_)) => vec![OneSet::from_elems(&[x]).up()],
            (OneTopology::Lawson, OneElem::Nat(_) | OneElem::A) => vec![OneSet::from_elems(&[x])],
            (OneTopology::Scott, OneElem::A) => (0..=horizon)
                .map(|t| OneSet::new([], Some(t), true, true))
                .collect(),
            (_, OneElem::Top) => (0..=horizon)
                .map(|t| OneSet::new([], Some(t), false, true))
                .collect(),
        }
    }
}
