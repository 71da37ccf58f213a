//! Way-below at the level of points and finite sets, the Smyth preorder, and
//! the continuity classifiers.

mod finite;
mod symbolic;

use serde::{Deserialize, Serialize};

use crate::dcpo::Dcpo;
use crate::error::Result;

pub use finite::Antichain;
pub use symbolic::{Bound, OneFamily, OneFinSet, REPRESENTATIVE_NATS};

/// Finite-set approximation on top of a [`Dcpo`].
pub trait Approximation: Dcpo {
    /// Nonempty finite set, stored as its minimal elements.
    type Fin: Clone + Eq + std::fmt::Debug;

    fn fin_set(&self, elems: &[Self::Elem]) -> Result<Self::Fin>;
    fn fin_elems(&self, f: &Self::Fin) -> Vec<Self::Elem>;

    fn fin_up(&self, f: &Self::Fin) -> Self::Set {
        self.up_closure(&self.set_of(&self.fin_elems(f)))
    }

    fn singleton_fin(&self, x: Self::Elem) -> Self::Fin {
        self.fin_set(&[x]).expect("singletons are nonempty")
    }

    /// `G ≤ H` in the Smyth preorder: `↑H ⊆ ↑G`.
    fn smyth_leq(&self, g: &Self::Fin, h: &Self::Fin) -> bool {
        self.is_subset(&self.fin_up(h), &self.fin_up(g))
    }

    /// `G ≪ H`: every directed set with supremum in `↑H` meets `↑G`.
    fn set_way_below(&self, g: &Self::Fin, h: &Self::Fin) -> bool;

    fn point_way_below(&self, x: Self::Elem, y: Self::Elem) -> bool {
        self.set_way_below(&self.singleton_fin(x), &self.singleton_fin(y))
    }

    /// `⇑F = {x : F ≪ x}`.
    fn way_up(&self, f: &Self::Fin) -> Self::Set;

    /// Some finite `F` with `H ≪ F ≪ x`.
    fn interpolate(&self, h: &Self::Fin, x: Self::Elem) -> Result<Self::Fin>;

    fn classify(&self) -> ClassifyReport;

    fn render_fin(&self, f: &Self::Fin) -> Vec<String> {
        self.fin_elems(f)
            .into_iter()
            .map(|x| self.element_name(x))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyWitness {
    pub property: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub is_dcpo: bool,
    pub is_continuous: bool,
    pub is_quasi_continuous: bool,
    pub is_meet_continuous: bool,
    pub witnesses: Vec<ClassifyWitness>,
}

impl ClassifyReport {
    /// Continuous iff quasi-continuous and meet-continuous.
    pub fn is_consistent(&self) -> bool {
        self.is_continuous == (self.is_quasi_continuous && self.is_meet_continuous)
    }

    pub(crate) fn witness(&mut self, property: &str, detail: String) {
        self.witnesses.push(ClassifyWitness {
            property: property.to_owned(),
            detail,
        });
    }
}
