//! Subsets of `ω` that are a union of residue classes up to finitely many
//! exceptions. These are exactly the level sets of periodic nets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `n ∈ S` iff (`n mod modulus ∈ classes` and `n ∉ removed`) or `n ∈ added`.
///
/// Canonical: the modulus is the least period of the class pattern, `added`
/// avoids the classes and `removed` lies inside them.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OmegaSet {
    modulus: u64,
    classes: BTreeSet<u64>,
    added: BTreeSet<u64>,
    removed: BTreeSet<u64>,
}

impl fmt::Debug for OmegaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OmegaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        let mut parts = Vec::new();
        if self.classes.len() as u64 == self.modulus {
            parts.push("all".to_owned());
        } else if !self.classes.is_empty() {
            parts.push(format!("{{{}}} mod {}", list(&self.classes), self.modulus));
        }
        if !self.added.is_empty() || parts.is_empty() {
            parts.push(format!("{{{}}}", list(&self.added)));
        }
        let mut s = parts.join(" + ");
        if !self.removed.is_empty() {
            s = format!("{s} - {{{}}}", list(&self.removed));
        }
        f.write_str(&s)
    }
}

impl OmegaSet {
    pub fn empty() -> Self {
        OmegaSet {
            modulus: 1,
            classes: BTreeSet::new(),
            added: BTreeSet::new(),
            removed: BTreeSet::new(),
        }
    }

    pub fn all() -> Self {
        Self::residues(1, [0])
    }

    pub fn finite(points: impl IntoIterator<Item = u64>) -> Self {
        OmegaSet {
            added: points.into_iter().collect(),
            ..Self::empty()
        }
    }

    /// Union of the given classes mod `modulus`.
    pub fn residues(modulus: u64, classes: impl IntoIterator<Item = u64>) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        OmegaSet {
            modulus,
            classes: classes.into_iter().map(|r| r % modulus).collect(),
            added: BTreeSet::new(),
            removed: BTreeSet::new(),
        }
        .normalize()
    }

    pub fn from_parts(
        modulus: u64,
        classes: impl IntoIterator<Item = u64>,
        added: impl IntoIterator<Item = u64>,
        removed: impl IntoIterator<Item = u64>,
    ) -> Self {
        let mut s = Self::residues(modulus, classes);
        let raw = OmegaSet {
            modulus: s.modulus,
            classes: s.classes.clone(),
            added: added.into_iter().collect(),
            removed: removed.into_iter().collect(),
        };
        // Later entries win: removals override additions.
        let ex: BTreeSet<u64> = raw.added.union(&raw.removed).copied().collect();
        for n in ex {
            let inside = !raw.removed.contains(&n) && (raw.added.contains(&n) || s.in_class(n));
            if inside != s.in_class(n) {
                if inside {
                    s.added.insert(n);
                } else {
                    s.removed.insert(n);
                }
            }
        }
        s.normalize()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn classes(&self) -> &BTreeSet<u64> {
        &self.classes
    }

    pub fn added(&self) -> &BTreeSet<u64> {
        &self.added
    }

    pub fn removed(&self) -> &BTreeSet<u64> {
        &self.removed
    }

    fn in_class(&self, n: u64) -> bool {
        self.classes.contains(&(n % self.modulus))
    }

    pub fn contains(&self, n: u64) -> bool {
        self.added.contains(&n) || (self.in_class(n) && !self.removed.contains(&n))
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty() && self.added.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn is_cofinite(&self) -> bool {
        self.classes.len() as u64 == self.modulus
    }

    /// Elements of a finite set; `None` for infinite ones.
    pub fn finite_elements(&self) -> Option<&BTreeSet<u64>> {
        self.is_finite().then_some(&self.added)
    }

    fn normalize(mut self) -> Self {
        let m = self.modulus;
        let period = (1..=m)
            .filter(|&d| m.is_multiple_of(d))
            .find(|&d| (0..m).all(|r| self.classes.contains(&r) == self.classes.contains(&(r % d))))
            .unwrap_or(m);
        if period != m {
            self.classes.retain(|&r| r < period);
            self.modulus = period;
        }
        let added: BTreeSet<u64> = self
            .added
            .iter()
            .filter(|&&n| !self.in_class(n))
            .copied()
            .collect();
        let removed: BTreeSet<u64> = self
            .removed
            .iter()
            .filter(|&&n| self.in_class(n))
            .copied()
            .collect();
        self.added = added;
        self.removed = removed;
        self
    }

    fn combine(&self, other: &OmegaSet, op: impl Fn(bool, bool) -> bool) -> OmegaSet {
        let m = lcm(self.modulus, other.modulus);
        let classes: BTreeSet<u64> = (0..m)
            .filter(|&r| op(self.in_class(r), other.in_class(r)))
            .collect();
        let mut out = OmegaSet {
            modulus: m,
            classes,
            added: BTreeSet::new(),
            removed: BTreeSet::new(),
        };
        let exceptions = [&self.added, &self.removed, &other.added, &other.removed];
        for &n in exceptions.iter().flat_map(|s| s.iter()) {
            let actual = op(self.contains(n), other.contains(n));
            if actual != out.in_class(n) {
                if actual {
                    out.added.insert(n);
                } else {
                    out.removed.insert(n);
                }
            }
        }
        out.normalize()
    }

    pub fn union(&self, other: &OmegaSet) -> OmegaSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &OmegaSet) -> OmegaSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn complement(&self) -> OmegaSet {
        OmegaSet {
            modulus: self.modulus,
            classes: (0..self.modulus)
                .filter(|r| !self.classes.contains(r))
                .collect(),
            added: self.removed.clone(),
            removed: self.added.clone(),
        }
        .normalize()
    }

    pub fn is_subset(&self, other: &OmegaSet) -> bool {
        self.intersection(&other.complement()).is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(OmegaSet::residues(4, [0, 2]), OmegaSet::residues(2, [0]));
        assert_eq!(OmegaSet::residues(3, [0, 1, 2]), OmegaSet::all());
        let odds = OmegaSet::residues(2, [1]);
        assert_eq!(odds.to_string(), "{1} mod 2");
        let s = OmegaSet::from_parts(2, [1], [0, 2], [3]);
        assert!(
            s.contains(0) && s.contains(1) && !s.contains(3) && s.contains(5) && !s.contains(4)
        );
        assert_eq!(s.to_string(), "{1} mod 2 + {0, 2} - {3}");
        assert_eq!(OmegaSet::empty().to_string(), "{}");
    }

    #[test]
    fn evens_and_odds() {
        let evens = OmegaSet::residues(2, [0]);
        let odds = evens.complement();
        assert_eq!(odds, OmegaSet::residues(2, [1]));
        assert_eq!(evens.union(&odds), OmegaSet::all());
        assert!(evens.intersection(&odds).is_empty());
        let thirds = OmegaSet::residues(3, [0]);
        let both = evens.intersection(&thirds);
        assert_eq!(both, OmegaSet::residues(6, [0]));
    }

    fn arb() -> impl Strategy<Value = OmegaSet> {
        (
            1u64..5,
            prop::collection::btree_set(0u64..5, 0..5),
            prop::collection::btree_set(0u64..30, 0..5),
            prop::collection::btree_set(0u64..30, 0..5),
        )
            .prop_map(|(m, c, a, r)| OmegaSet::from_parts(m, c, a, r))
    }

    proptest! {
        #[test]
        fn ops_agree_pointwise(s in arb(), t in arb()) {
            let u = s.union(&t);
            let i = s.intersection(&t);
            let c = s.complement();
            for n in 0..80 {
                prop_assert_eq!(u.contains(n), s.contains(n) || t.contains(n));
                prop_assert_eq!(i.contains(n), s.contains(n) && t.contains(n));
                prop_assert_eq!(c.contains(n), !s.contains(n));
            }
        }

        #[test]
        fn equality_is_extensional(s in arb(), t in arb()) {
            let same = (0..200).all(|n| s.contains(n) == t.contains(n));
            prop_assert_eq!(same, s == t);
        }
    }
}
