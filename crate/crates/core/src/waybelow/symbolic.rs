//! Closed-form approximation on the counterexample dcpo.
//!
//! Rule table: `G ≪ H` iff `↑H ⊆ ↑G`, `G` contains a natural, and
//! `a ∈ ↑H` implies `a ∈ G`. Directed sets with a greatest element only
//! force `↑H ⊆ ↑G`; unbounded chains in `N` (supremum `top`) additionally
//! force `G` to contain a natural. The `a` clause follows from the first one
//! and is kept for readability. The shape-grammar oracle re-derives this.

use std::fmt;

use crate::dcpo::Dcpo;
use crate::error::{Error, Result};
use crate::example_one::{ExampleOne, OneElem, OneSet};
use crate::topology::symbolic as topo;

use super::{Approximation, ClassifyReport};

/// Naturals `0..=REPRESENTATIVE_NATS` stand in for all of `N` wherever a
/// check is uniform in the natural-number parameter.
pub const REPRESENTATIVE_NATS: u64 = 8;

/// Minimal-form finite subset: at most one natural (the naturals form a
/// chain), optionally `a`, and `top` only on its own.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneFinSet(Vec<OneElem>);

impl fmt::Debug for OneFinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.0.iter().map(|e| e.to_string()))
            .finish()
    }
}

impl OneFinSet {
    pub fn new(elems: &[OneElem]) -> Result<Self> {
        if elems.is_empty() {
            return Err(Error::EmptyFinSet);
        }
        let nat = elems.iter().filter_map(|e| e.nat()).min();
        let a = elems.contains(&OneElem::A);
        let mut out: Vec<OneElem> = nat.map(OneElem::Nat).into_iter().collect();
        if a {
            out.push(OneElem::A);
        }
        if out.is_empty() {
            out.push(OneElem::Top);
        }
        Ok(OneFinSet(out))
    }

    pub fn elems(&self) -> &[OneElem] {
        &self.0
    }

    pub fn nat(&self) -> Option<u64> {
        self.0.iter().find_map(|e| e.nat())
    }

    pub fn has_a(&self) -> bool {
        self.0.contains(&OneElem::A)
    }

    pub fn up(&self) -> OneSet {
        OneSet::from_elems(&self.0).up()
    }

    /// Every canonical finite set whose natural (if any) is at most `n`.
    pub fn all_up_to(n: u64) -> Vec<OneFinSet> {
        let mut out = Vec::new();
        for k in 0..=n {
            out.push(OneFinSet(vec![OneElem::Nat(k)]));
            out.push(OneFinSet(vec![OneElem::Nat(k), OneElem::A]));
        }
        out.push(OneFinSet(vec![OneElem::A]));
        out.push(OneFinSet(vec![OneElem::Top]));
        out
    }
}

/// How far along `N` a parametrised member kind reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Empty,
    UpTo(u64),
    All,
}

impl Bound {
    pub fn covers(self, n: u64) -> bool {
        match self {
            Bound::Empty => false,
            Bound::UpTo(k) => n <= k,
            Bound::All => true,
        }
    }

    fn finite_max(self) -> Option<u64> {
        match self {
            Bound::UpTo(k) => Some(k),
            _ => None,
        }
    }

    fn describe(self, what: &str) -> Option<String> {
        match self {
            Bound::Empty => None,
            Bound::UpTo(k) => Some(format!("{what} for n <= {k}")),
            Bound::All => Some(format!("{what} for all n")),
        }
    }
}

/// A family of canonical finite sets on the counterexample, given by which
/// singletons `{n}`, pairs `{a, n}`, `{a}` and `{top}` it contains. The
/// families `fin(x)` and the eventual-lower-bound families of nets all have
/// this shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OneFamily {
    pub nats: Bound,
    pub pairs: Bound,
    pub a: bool,
    pub top: bool,
}

impl OneFamily {
    pub const EMPTY: OneFamily = OneFamily {
        nats: Bound::Empty,
        pairs: Bound::Empty,
        a: false,
        top: false,
    };

    /// `{{a, n} : n ∈ N}`.
    pub const PAIRS_WITH_A: OneFamily = OneFamily {
        nats: Bound::Empty,
        pairs: Bound::All,
        a: false,
        top: false,
    };

    pub fn contains(&self, f: &OneFinSet) -> bool {
        match (f.nat(), f.has_a()) {
            (Some(n), false) => self.nats.covers(n),
            (Some(n), true) => self.pairs.covers(n),
            (None, true) => self.a,
            (None, false) => self.top,
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == OneFamily::EMPTY
    }

    /// Largest natural parameter past which membership is uniform.
    fn horizon(&self) -> u64 {
        self.nats
            .finite_max()
            .max(self.pairs.finite_max())
            .unwrap_or(0)
            + 1
    }

    /// Members whose natural parameter is at most `n`.
    pub fn members_up_to(&self, n: u64) -> Vec<OneFinSet> {
        OneFinSet::all_up_to(n)
            .into_iter()
            .filter(|f| self.contains(f))
            .collect()
    }

    /// `∩ {↑F : F in the family}`, in closed form.
    pub fn meet(&self) -> OneSet {
        let mut acc = OneSet::whole();
        let mut cut = |s: OneSet| acc = acc.intersection(&s);
        match self.nats {
            Bound::Empty => {}
            Bound::UpTo(k) => cut(OneSet::from_elems(&[OneElem::Nat(k)]).up()),
            Bound::All => cut(OneSet::from_elems(&[OneElem::Top])),
        }
        match self.pairs {
            Bound::Empty => {}
            Bound::UpTo(k) => cut(OneSet::from_elems(&[OneElem::A, OneElem::Nat(k)]).up()),
            Bound::All => cut(OneSet::from_elems(&[OneElem::A, OneElem::Top])),
        }
        if self.a {
            cut(OneSet::from_elems(&[OneElem::A, OneElem::Top]));
        }
        if self.top {
            cut(OneSet::from_elems(&[OneElem::Top]));
        }
        acc
    }

    /// Smyth-directed: nonempty, and any two members have a member below
    /// both. Membership is uniform past [`Self::horizon`], so members up to
    /// one step beyond it are representative.
    pub fn is_directed(&self) -> bool {
        let reps = self.members_up_to(self.horizon() + 1);
        !reps.is_empty()
            && reps.iter().all(|e| {
                reps.iter().all(|f| {
                    let both = e.up().intersection(&f.up());
                    reps.iter().any(|h| h.up().is_subset(&both))
                })
            })
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = [self.nats.describe("{n}"), self.pairs.describe("{a, n}")]
            .into_iter()
            .flatten()
            .collect();
        if self.a {
            parts.push("{a}".into());
        }
        if self.top {
            parts.push("{top}".into());
        }
        if parts.is_empty() {
            "empty family".into()
        } else {
            parts.join(" ∪ ")
        }
    }
}

impl ExampleOne {
    /// `fin(x)` as a family schema.
    pub fn fin_of(&self, x: OneElem) -> OneFamily {
        match x {
            OneElem::Nat(k) => OneFamily {
                nats: Bound::UpTo(k),
                pairs: Bound::UpTo(k),
                a: false,
                top: false,
            },
            OneElem::A => OneFamily::PAIRS_WITH_A,
            OneElem::Top => OneFamily {
                nats: Bound::All,
                pairs: Bound::All,
                a: false,
                top: false,
            },
        }
    }

    /// `{y : y ≪ x}`: the naturals below `x`.
    pub fn way_down(&self, x: OneElem) -> OneSet {
        OneSet::from_elems(&[x])
            .down()
            .intersection(&OneSet::nats_from(0))
    }

    pub fn representative_points(&self) -> Vec<OneElem> {
        (0..=REPRESENTATIVE_NATS)
            .map(OneElem::Nat)
            .chain([OneElem::A, OneElem::Top])
            .collect()
    }

    /// Scott-open sets up to the representative horizon: `∅` and
    /// `{top} ∪ [t, ∞)` with or without `a`; the whole carrier comes first.
    pub fn representative_scott_opens(&self) -> Vec<OneSet> {
        let mut out = Vec::new();
        for t in 0..=REPRESENTATIVE_NATS + 1 {
            out.push(OneSet::new([], Some(t), true, true));
            out.push(OneSet::new([], Some(t), false, true));
        }
        out.push(OneSet::empty());
        out
    }
}

impl Approximation for ExampleOne {
    type Fin = OneFinSet;

    fn fin_set(&self, elems: &[OneElem]) -> Result<OneFinSet> {
        OneFinSet::new(elems)
    }

    fn fin_elems(&self, f: &OneFinSet) -> Vec<OneElem> {
        f.0.clone()
    }

    fn fin_up(&self, f: &OneFinSet) -> OneSet {
        f.up()
    }

    fn set_way_below(&self, g: &OneFinSet, h: &OneFinSet) -> bool {
        let up_h = h.up();
        up_h.is_subset(&g.up()) && g.nat().is_some() && (!up_h.has_a() || g.has_a())
    }

    fn way_up(&self, f: &OneFinSet) -> OneSet {
        if f.nat().is_some() {
            f.up()
        } else {
            OneSet::empty()
        }
    }

    fn interpolate(&self, h: &OneFinSet, x: OneElem) -> Result<OneFinSet> {
        let target = self.singleton_fin(x);
        if !self.set_way_below(h, &target) {
            return Err(Error::PreconditionFailed(format!(
                "{h:?} is not way below {x}"
            )));
        }
        let base = h.nat().expect("way-below sets contain a natural");
        let refinements = (base + 1..=base + 1 + REPRESENTATIVE_NATS).flat_map(|m| {
            [
                OneFinSet(vec![OneElem::Nat(m)]),
                OneFinSet(vec![OneElem::Nat(m), OneElem::A]),
            ]
        });
        std::iter::once(target.clone())
            .chain(refinements)
            .find(|f| self.set_way_below(h, f) && self.set_way_below(f, &target))
            .ok_or_else(|| Error::NoWitness(format!("interpolation between {h:?} and {x}")))
    }

    fn classify(&self) -> ClassifyReport {
        let mut r = ClassifyReport {
            is_dcpo: true,
            is_continuous: true,
            is_quasi_continuous: true,
            is_meet_continuous: true,
            witnesses: Vec::new(),
        };
        let points = self.representative_points();
        for &x in &points {
            let wd = self.way_down(x);
            let ok = wd.is_directed() && wd.directed_sup().ok() == Some(x);
            if !ok {
                r.is_continuous = false;
                r.witness(
                    "continuous",
                    format!("way-down set of {x} is {wd}, which is not directed with supremum {x}"),
                );
                break;
            }
        }
        for &x in &points {
            let fam = self.fin_of(x);
            if !fam.is_directed() || fam.meet() != self.up_of(x) {
                r.is_quasi_continuous = false;
                r.witness(
                    "quasi_continuous",
                    format!("fin({x}) = {} fails", fam.describe()),
                );
                break;
            }
        }
        'outer: for &x in &points {
            for u in self.representative_scott_opens() {
                let v = u.intersection(&self.down_of(x)).up();
                if !topo::is_scott_open(&v) {
                    r.is_meet_continuous = false;
                    r.witness(
                        "meet_continuous",
                        format!("x = {x}, U = {u}: up(U ∩ down x) = {v} is not Scott-open"),
                    );
                    break 'outer;
                }
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use OneElem::*;

    fn fs(e: &[OneElem]) -> OneFinSet {
        OneFinSet::new(e).unwrap()
    }

    #[test]
    fn point_examples() {
        let e = ExampleOne;
        assert!(!e.point_way_below(A, A));
        assert!(e.point_way_below(Nat(3), Top));
        assert!(e.point_way_below(Nat(3), Nat(3)));
        assert!(!e.point_way_below(Nat(4), Nat(3)));
        assert!(!e.point_way_below(Top, Top));
    }

    #[test]
    fn pairs_with_a_approximate_a() {
        let e = ExampleOne;
        for n in 0..=100 {
            assert!(e.set_way_below(&fs(&[A, Nat(n)]), &fs(&[A])));
        }
        assert!(!e.set_way_below(&fs(&[A]), &fs(&[A])));
    }

    #[test]
    fn normalization() {
        assert_eq!(fs(&[Nat(4), Top, Nat(2)]).elems(), &[Nat(2)]);
        assert_eq!(fs(&[Top, A]).elems(), &[A]);
        assert_eq!(fs(&[Top]).elems(), &[Top]);
        assert_eq!(OneFinSet::new(&[]), Err(Error::EmptyFinSet));
    }

    #[test]
    fn fin_of_a_contains_every_pair() {
        let e = ExampleOne;
        let fam = e.fin_of(A);
        for n in 0..50 {
            assert!(fam.contains(&fs(&[A, Nat(n)])));
        }
        assert!(!fam.contains(&fs(&[A])));
        assert!(!fam.contains(&fs(&[Nat(0)])));
        assert_eq!(fam.meet(), OneSet::from_elems(&[A, Top]));
        assert!(fam.is_directed());
    }

    #[test]
    fn fin_schemas_match_rule() {
        let e = ExampleOne;
        for x in e.representative_points() {
            let fam = e.fin_of(x);
            for f in OneFinSet::all_up_to(20) {
                assert_eq!(
                    fam.contains(&f),
                    e.set_way_below(&f, &e.singleton_fin(x)),
                    "{x} {f:?}"
                );
            }
        }
    }

    #[test]
    fn meet_matches_truncated_intersections() {
        // ∩_{n <= K} ↑{a, n} = {a, top} ∪ [K, ∞): the tail moves off to infinity.
        for k in [0u64, 1, 7, 100] {
            let partial = (0..=k)
                .map(|n| fs(&[A, Nat(n)]).up())
                .fold(OneSet::whole(), |acc, s| acc.intersection(&s));
            assert_eq!(partial, OneSet::new([], Some(k), true, true));
        }
        assert_eq!(
            OneFamily::PAIRS_WITH_A.meet(),
            OneSet::from_elems(&[A, Top])
        );
    }

    #[test]
    fn interpolation_moves_one_step_up() {
        let e = ExampleOne;
        let f = e.interpolate(&fs(&[A, Nat(2)]), A).unwrap();
        assert_eq!(f, fs(&[A, Nat(3)]));
        assert!(e.set_way_below(&fs(&[A, Nat(2)]), &f));
        assert!(e.set_way_below(&f, &fs(&[A])));
        assert_eq!(
            e.interpolate(&fs(&[Nat(1)]), Nat(4)).unwrap(),
            fs(&[Nat(4)])
        );
        assert!(matches!(
            e.interpolate(&fs(&[A]), A),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn way_up_examples() {
        let e = ExampleOne;
        assert_eq!(
            e.way_up(&fs(&[A, Nat(2)])),
            OneSet::new([], Some(2), true, true)
        );
        assert!(e.way_up(&fs(&[A])).is_empty());
    }

    #[test]
    fn classification() {
        let r = ExampleOne.classify();
        assert!(r.is_dcpo);
        assert!(r.is_quasi_continuous);
        assert!(!r.is_continuous);
        assert!(!r.is_meet_continuous);
        assert!(r.is_consistent());
        let w = r
            .witnesses
            .iter()
            .find(|w| w.property == "meet_continuous")
            .unwrap();
        assert!(
            w.detail.starts_with("x = a, U = {0.., a, top}"),
            "{}",
            w.detail
        );
    }

    #[test]
    fn non_directed_family() {
        let fam = OneFamily {
            nats: Bound::UpTo(3),
            pairs: Bound::UpTo(5),
            a: false,
            top: false,
        };
        assert!(!fam.is_directed());
        assert!(!OneFamily::EMPTY.is_directed());
    }
}
