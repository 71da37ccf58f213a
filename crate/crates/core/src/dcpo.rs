//! The query interface shared by the finite and symbolic backends.

use std::fmt::Debug;

use crate::error::Result;

/// A directed-complete partial order together with a set algebra over its
/// carrier that is closed under the operations below.
pub trait Dcpo {
    type Elem: Copy + Eq + Ord + Debug;
    type Set: Clone + Eq + Debug;

    fn leq(&self, x: Self::Elem, y: Self::Elem) -> bool;

    fn empty_set(&self) -> Self::Set;
    fn whole(&self) -> Self::Set;
    fn set_of(&self, elems: &[Self::Elem]) -> Self::Set;
    fn contains(&self, s: &Self::Set, x: Self::Elem) -> bool;
    fn union(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn intersection(&self, a: &Self::Set, b: &Self::Set) -> Self::Set;
    fn complement(&self, a: &Self::Set) -> Self::Set;
    fn is_subset(&self, a: &Self::Set, b: &Self::Set) -> bool;

    fn up_closure(&self, s: &Self::Set) -> Self::Set;
    fn down_closure(&self, s: &Self::Set) -> Self::Set;

    /// Nonempty and every pair has an upper bound inside the set.
    fn is_directed(&self, s: &Self::Set) -> bool;
    fn directed_sup(&self, s: &Self::Set) -> Result<Self::Elem>;

    fn element_name(&self, x: Self::Elem) -> String;
    fn parse_element(&self, name: &str) -> Result<Self::Elem>;

    fn is_empty(&self, s: &Self::Set) -> bool {
        *s == self.empty_set()
    }

    fn is_upper(&self, s: &Self::Set) -> bool {
        self.up_closure(s) == *s
    }

    fn up_of(&self, x: Self::Elem) -> Self::Set {
        self.up_closure(&self.set_of(&[x]))
    }

    fn down_of(&self, x: Self::Elem) -> Self::Set {
        self.down_closure(&self.set_of(&[x]))
    }
}
