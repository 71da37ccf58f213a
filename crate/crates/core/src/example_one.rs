//! The infinite counterexample dcpo `N ∪ {a, top}`: the naturals as a chain,
//! an extra point `a` incomparable to every natural, and `top` above all.
//!
//! Subsets are represented exactly when their natural-number part is finite
//! or cofinite. Every up-set, open set and level set the checkers produce
//! lives in that algebra.

use std::collections::BTreeSet;
use std::fmt;

use crate::dcpo::Dcpo;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OneElem {
    Nat(u64),
    A,
    Top,
}

impl fmt::Display for OneElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneElem::Nat(k) => write!(f, "{k}"),
            OneElem::A => f.write_str("a"),
            OneElem::Top => f.write_str("top"),
        }
    }
}

impl OneElem {
    pub fn parse(s: &str) -> Result<OneElem> {
        match s {
            "a" => Ok(OneElem::A),
            "top" | "inf" | "∞" => Ok(OneElem::Top),
            _ => s
                .parse()
                .map(OneElem::Nat)
                .map_err(|_| Error::UnknownElement(s.to_owned())),
        }
    }

    pub fn nat(self) -> Option<u64> {
        match self {
            OneElem::Nat(k) => Some(k),
            _ => None,
        }
    }
}

/// Canonical finite-or-cofinite subset of `N ∪ {a, top}`.
///
/// Invariant: every element of `nats` is below `tail`, and `tail - 1` is not
/// in `nats` (the tail starts as early as possible).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct OneSet {
    nats: BTreeSet<u64>,
    tail: Option<u64>,
    a: bool,
    top: bool,
}

impl fmt::Debug for OneSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OneSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.nats.iter().map(u64::to_string).collect();
        if let Some(t) = self.tail {
            parts.push(format!("{t}.."));
        }
        if self.a {
            parts.push("a".into());
        }
        if self.top {
            parts.push("top".into());
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl OneSet {
    pub fn empty() -> Self {
        OneSet::default()
    }

    pub fn whole() -> Self {
        OneSet {
            nats: BTreeSet::new(),
            tail: Some(0),
            a: true,
            top: true,
        }
    }

    pub fn new(nats: impl IntoIterator<Item = u64>, tail: Option<u64>, a: bool, top: bool) -> Self {
        OneSet {
            nats: nats.into_iter().collect(),
            tail,
            a,
            top,
        }
        .canonical()
    }

    /// `{Nat k : k >= t}`.
    pub fn nats_from(t: u64) -> Self {
        OneSet::new([], Some(t), false, false)
    }

    pub fn from_elems(elems: &[OneElem]) -> Self {
        let mut s = OneSet::empty();
        for &e in elems {
            match e {
                OneElem::Nat(k) => {
                    s.nats.insert(k);
                }
                OneElem::A => s.a = true,
                OneElem::Top => s.top = true,
            }
        }
        s.canonical()
    }

    fn canonical(mut self) -> Self {
        if let Some(mut t) = self.tail {
            self.nats.retain(|&k| k < t);
            while t > 0 && self.nats.remove(&(t - 1)) {
                t -= 1;
            }
            self.tail = Some(t);
        }
        self
    }

    pub fn finite_nats(&self) -> &BTreeSet<u64> {
        &self.nats
    }

    pub fn tail(&self) -> Option<u64> {
        self.tail
    }

    pub fn has_a(&self) -> bool {
        self.a
    }

    pub fn has_top(&self) -> bool {
        self.top
    }

    pub fn has_nat(&self) -> bool {
        self.tail.is_some() || !self.nats.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        !self.has_nat() && !self.a && !self.top
    }

    /// The natural-number part is cofinite.
    pub fn nats_cofinite(&self) -> bool {
        self.tail.is_some()
    }

    pub fn min_nat(&self) -> Option<u64> {
        self.nats.iter().next().copied().or(self.tail)
    }

    /// Largest natural in a finite natural part.
    pub fn max_nat(&self) -> Option<u64> {
        match self.tail {
            Some(_) => None,
            None => self.nats.iter().next_back().copied(),
        }
    }

    pub fn contains(&self, x: OneElem) -> bool {
        match x {
            OneElem::Nat(k) => self.tail.is_some_and(|t| k >= t) || self.nats.contains(&k),
            OneElem::A => self.a,
            OneElem::Top => self.top,
        }
    }

    /// `{k : Nat k ∉ self}`, either finite or cofinite.
    pub fn missing_nats(&self) -> NatSet {
        match self.tail {
            Some(t) => NatSet::Finite((0..t).filter(|k| !self.nats.contains(k)).collect()),
            None => NatSet::Cofinite(self.nats.clone()),
        }
    }

    pub fn complement(&self) -> Self {
        let (nats, tail) = match self.tail {
            Some(t) => ((0..t).filter(|k| !self.nats.contains(k)).collect(), None),
            None => {
                let end = self.nats.iter().next_back().map_or(0, |m| m + 1);
                (
                    (0..end).filter(|k| !self.nats.contains(k)).collect(),
                    Some(end),
                )
            }
        };
        OneSet {
            nats,
            tail,
            a: !self.a,
            top: !self.top,
        }
        .canonical()
    }

    pub fn union(&self, o: &OneSet) -> Self {
        let tail = match (self.tail, o.tail) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        OneSet {
            nats: &self.nats | &o.nats,
            tail,
            a: self.a || o.a,
            top: self.top || o.top,
        }
        .canonical()
    }

    pub fn intersection(&self, o: &OneSet) -> Self {
        let nats_of = |s: &OneSet, other: &OneSet| -> BTreeSet<u64> {
            s.nats
                .iter()
                .copied()
                .filter(|&k| other.contains(OneElem::Nat(k)))
                .collect()
        };
        let mut nats = nats_of(self, o);
        nats.extend(nats_of(o, self));
        let tail = match (self.tail, o.tail) {
            (Some(x), Some(y)) => Some(x.max(y)),
            _ => None,
        };
        OneSet {
            nats,
            tail,
            a: self.a && o.a,
            top: self.top && o.top,
        }
        .canonical()
    }

    pub fn is_subset(&self, o: &OneSet) -> bool {
        self.intersection(o) == *self
    }

    /// `↑self`.
    pub fn up(&self) -> OneSet {
        if self.is_empty() {
            return OneSet::empty();
        }
        OneSet {
            nats: BTreeSet::new(),
            tail: self.min_nat(),
            a: self.a,
            top: true,
        }
        .canonical()
    }

    /// `↓self`.
    pub fn down(&self) -> OneSet {
        if self.top {
            return OneSet::whole();
        }
        let tail = if self.tail.is_some() { Some(0) } else { None };
        let nats = match (tail, self.nats.iter().next_back()) {
            (None, Some(&m)) => (0..=m).collect(),
            _ => BTreeSet::new(),
        };
        OneSet {
            nats,
            tail,
            a: self.a,
            top: false,
        }
        .canonical()
    }

    pub fn is_directed(&self) -> bool {
        !self.is_empty() && (self.top || !(self.a && self.has_nat()))
    }

    pub fn directed_sup(&self) -> Result<OneElem> {
        if !self.is_directed() {
            return Err(Error::NotDirected);
        }
        if self.top || self.tail.is_some() {
            return Ok(OneElem::Top);
        }
        match self.max_nat() {
            Some(m) => Ok(OneElem::Nat(m)),
            None => Ok(OneElem::A),
        }
    }

    /// Textual form accepted by [`OneSet::parse`].
    pub fn render(&self) -> Vec<String> {
        let mut out: Vec<String> = self.nats.iter().map(u64::to_string).collect();
        if let Some(t) = self.tail {
            out.push(format!("{t}.."));
        }
        if self.a {
            out.push("a".into());
        }
        if self.top {
            out.push("top".into());
        }
        out
    }

    /// Parses items like `"3"`, `"5.."` (cofinite tail), `"a"`, `"top"`.
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<OneSet> {
        let mut s = OneSet::empty();
        for item in items {
            let item = item.as_ref();
            if let Some(t) = item.strip_suffix("..") {
                let t: u64 = t
                    .parse()
                    .map_err(|_| Error::NonRepresentableSet(item.to_owned()))?;
                s.tail = Some(s.tail.map_or(t, |u| u.min(t)));
            } else {
                match OneElem::parse(item)? {
                    OneElem::Nat(k) => {
                        s.nats.insert(k);
                    }
                    OneElem::A => s.a = true,
                    OneElem::Top => s.top = true,
                }
            }
        }
        Ok(s.canonical())
    }
}

/// A finite or cofinite set of naturals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NatSet {
    Finite(BTreeSet<u64>),
    /// All naturals except the listed ones.
    Cofinite(BTreeSet<u64>),
}

/// Handle for the counterexample dcpo.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExampleOne;

impl Dcpo for ExampleOne {
    type Elem = OneElem;
    type Set = OneSet;

    fn leq(&self, x: OneElem, y: OneElem) -> bool {
        x == y
            || y == OneElem::Top
            || matches!((x, y), (OneElem::Nat(a), OneElem::Nat(b)) if a <= b)
    }
    fn empty_set(&self) -> OneSet {
        OneSet::empty()
    }
    fn whole(&self) -> OneSet {
        OneSet::whole()
    }
    fn set_of(&self, elems: &[OneElem]) -> OneSet {
        OneSet::from_elems(elems)
    }
    fn contains(&self, s: &OneSet, x: OneElem) -> bool {
        s.contains(x)
    }
    fn union(&self, a: &OneSet, b: &OneSet) -> OneSet {
        a.union(b)
    }
    fn intersection(&self, a: &OneSet, b: &OneSet) -> OneSet {
        a.intersection(b)
    }
    fn complement(&self, a: &OneSet) -> OneSet {
        a.complement()
    }
    fn is_subset(&self, a: &OneSet, b: &OneSet) -> bool {
        a.is_subset(b)
    }
    fn up_closure(&self, s: &OneSet) -> OneSet {
        s.up()
    }
    fn down_closure(&self, s: &OneSet) -> OneSet {
        s.down()
    }
    fn is_directed(&self, s: &OneSet) -> bool {
        s.is_directed()
    }
    fn directed_sup(&self, s: &OneSet) -> Result<OneElem> {
        s.directed_sup()
    }
    fn element_name(&self, x: OneElem) -> String {
        x.to_string()
    }
    fn parse_element(&self, name: &str) -> Result<OneElem> {
        OneElem::parse(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use OneElem::*;

    #[test]
    fn order_rule() {
        let e = ExampleOne;
        assert!(e.leq(Nat(3), Nat(5)));
        assert!(!e.leq(A, Nat(5)));
        assert!(e.leq(A, Top));
        assert!(e.leq(A, A));
        assert!(!e.leq(Top, A));
    }

    #[test]
    fn up_of_a_and_two() {
        let s = OneSet::from_elems(&[A, Nat(2)]).up();
        assert_eq!(s, OneSet::new([], Some(2), true, true));
        assert_eq!(OneSet::whole().up(), OneSet::whole());
    }

    #[test]
    fn canonical_tail_absorbs_prefix() {
        let s = OneSet::new([1, 3, 4], Some(5), false, false);
        assert_eq!(s.tail(), Some(3));
        assert_eq!(s.finite_nats().iter().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn directed_sets_and_sups() {
        assert!(OneSet::nats_from(0).is_directed());
        assert_eq!(OneSet::from_elems(&[A]).directed_sup().unwrap(), A);
        assert_eq!(OneSet::nats_from(0).directed_sup().unwrap(), Top);
        assert_eq!(
            OneSet::from_elems(&[Nat(1), Nat(4)])
                .directed_sup()
                .unwrap(),
            Nat(4)
        );
        assert!(!OneSet::from_elems(&[A, Nat(4)]).is_directed());
        assert_eq!(
            OneSet::from_elems(&[A, Nat(4), Top])
                .directed_sup()
                .unwrap(),
            Top
        );
        assert!(!OneSet::empty().is_directed());
    }

    #[test]
    fn parse_and_render() {
        let s = OneSet::parse(&["1", "4..", "a"]).unwrap();
        assert_eq!(s.render(), vec!["1", "4..", "a"]);
        assert!(OneSet::parse(&["x.."]).is_err());
    }

    pub(crate) fn arb_set() -> impl Strategy<Value = OneSet> {
        (
            proptest::collection::btree_set(0u64..12, 0..6),
            proptest::option::of(0u64..14),
            any::<bool>(),
            any::<bool>(),
        )
            .prop_map(|(n, t, a, top)| OneSet::new(n, t, a, top))
    }

    fn probe() -> Vec<OneElem> {
        (0..20).map(Nat).chain([A, Top]).collect()
    }

    proptest! {
        #[test]
        fn complement_is_involutive(s in arb_set()) {
            prop_assert_eq!(s.complement().complement(), s);
        }

        #[test]
        fn de_morgan(s in arb_set(), t in arb_set()) {
            prop_assert_eq!(s.union(&t).complement(), s.complement().intersection(&t.complement()));
            prop_assert_eq!(s.intersection(&t).complement(), s.complement().union(&t.complement()));
        }

        #[test]
        fn ops_agree_pointwise(s in arb_set(), t in arb_set()) {
            for x in probe() {
                prop_assert_eq!(s.union(&t).contains(x), s.contains(x) || t.contains(x));
                prop_assert_eq!(s.intersection(&t).contains(x), s.contains(x) && t.contains(x));
                prop_assert_eq!(s.complement().contains(x), !s.contains(x));
            }
        }

        #[test]
        fn closures_match_order(s in arb_set()) {
            let e = ExampleOne;
            let members: Vec<OneElem> = probe().into_iter().filter(|&x| s.contains(x)).collect();
            for y in probe() {
                // Every probed member is a witness; the tail is covered by
                // probing past the largest threshold used by the strategy.
                let up = members.iter().any(|&x| e.leq(x, y));
                let down = members.iter().any(|&x| e.leq(y, x));
                prop_assert_eq!(s.up().contains(y), up);
                prop_assert_eq!(s.down().contains(y), down);
            }
        }

        #[test]
        fn closures_are_idempotent_extensive_monotone(s in arb_set(), t in arb_set()) {
            prop_assert_eq!(s.up().up(), s.up());
            prop_assert_eq!(s.down().down(), s.down());
            prop_assert!(s.is_subset(&s.up()) && s.is_subset(&s.down()));
            let u = s.union(&t);
            prop_assert!(s.up().is_subset(&u.up()) && s.down().is_subset(&u.down()));
        }
    }
}
