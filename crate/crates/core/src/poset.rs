//! Explicit finite posets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::bits::ElemSet;
use crate::dcpo::Dcpo;
use crate::error::{Error, Result};

pub const MAX_ELEMENTS: usize = 64;

/// Largest carrier on which we will enumerate all subsets.
pub const MAX_ENUMERABLE: usize = 20;

/// A finite partial order. Element indices follow the lexicographic order of
/// the element ids; `up[i]` holds every `j` with `i <= j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePoset {
    name: String,
    elements: Vec<String>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

/// On-disk form: `le` pairs are generators, the closure is computed on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    pub name: String,
    pub elements: Vec<String>,
    pub le: Vec<(String, String)>,
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FinitePoset")
            .field("name", &self.name)
            .field("elements", &self.elements)
            .field("le", &self.relation_pairs())
            .finish()
    }
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of `pairs` over `elements`.
    pub fn build<S: AsRef<str>>(name: &str, elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let mut ids: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].clone()));
        }
        if ids.len() > MAX_ELEMENTS {
            return Err(Error::TooLarge {
                size: ids.len(),
                limit: MAX_ELEMENTS,
            });
        }
        let index = |s: &str| {
            ids.binary_search_by(|e| e.as_str().cmp(s))
                .map_err(|_| Error::UnknownElement(s.to_owned()))
        };
        let mut up: Vec<ElemSet> = (0..ids.len()).map(ElemSet::singleton).collect();
        for (a, b) in pairs {
            let (i, j) = (index(a.as_ref())?, index(b.as_ref())?);
            up[i] = up[i].with(j);
        }
        Self::close(name, ids, up)
    }

    /// Builds from a relation predicate over indices `0..n`, naming elements
    /// with `names`. The predicate is closed reflexively and transitively.
    pub fn from_relation(
        name: &str,
        names: Vec<String>,
        le: impl Fn(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = names.len();
        let pairs: Vec<(String, String)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| le(i, j))
            .map(|(i, j)| (names[i].clone(), names[j].clone()))
            .collect();
        Self::build(name, &names, &pairs)
    }

    fn close(name: &str, elements: Vec<String>, mut up: Vec<ElemSet>) -> Result<Self> {
        let n = elements.len();
        // Warshall on bit rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i] | up[k];
                }
            }
        }
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::Cycle(elements[i].clone(), elements[j].clone()));
                }
            }
        }
        let mut down = vec![ElemSet::EMPTY; n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j] = down[j].with(i);
            }
        }
        Ok(FinitePoset {
            name: name.to_owned(),
            elements,
            up,
            down,
        })
    }

    pub fn from_spec(spec: &PosetSpec) -> Result<Self> {
        let pairs: Vec<(&str, &str)> = spec
            .le
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        let elems: Vec<&str> = spec.elements.iter().map(String::as_str).collect();
        Self::build(&spec.name, &elems, &pairs)
    }

    /// Elements sorted, `le` as the full relation sorted lexicographically.
    pub fn to_spec(&self) -> PosetSpec {
        let mut le: Vec<(String, String)> = self
            .relation_pairs()
            .into_iter()
            .map(|(i, j)| (self.elements[i].clone(), self.elements[j].clone()))
            .collect();
        le.sort();
        PosetSpec {
            name: self.name.clone(),
            elements: self.elements.clone(),
            le,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: PosetSpec = serde_json::from_str(text)?;
        Self::from_spec(&spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_spec()).expect("poset spec serializes")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_owned();
        self
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.elements
            .binary_search_by(|e| e.as_str().cmp(id))
            .map_err(|_| Error::UnknownElement(id.to_owned()))
    }

    pub fn set_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<ElemSet> {
        ids.iter().try_fold(ElemSet::EMPTY, |acc, id| {
            Ok(acc.with(self.index_of(id.as_ref())?))
        })
    }

    pub fn ids_of(&self, s: ElemSet) -> Vec<String> {
        s.iter().map(|i| self.elements[i].clone()).collect()
    }

    pub fn full(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    #[inline]
    pub fn up_set(&self, i: usize) -> ElemSet {
        self.up[i]
    }

    #[inline]
    pub fn down_set(&self, i: usize) -> ElemSet {
        self.down[i]
    }

    pub fn up(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, i| acc | self.up[i])
    }

    pub fn down(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(ElemSet::EMPTY, |acc, i| acc | self.down[i])
    }

    /// Number of pairs in the order relation (reflexive pairs included).
    pub fn relation_size(&self) -> usize {
        self.up.iter().map(|r| r.len()).sum()
    }

    pub fn relation_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.up[i].iter().map(move |j| (i, j)))
            .collect()
    }

    pub fn greatest(&self, s: ElemSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(self.down[m]))
    }

    pub fn least(&self, s: ElemSet) -> Option<usize> {
        s.iter().find(|&m| s.is_subset(self.up[m]))
    }

    /// Minimal elements of `s`; leaves `up(s)` unchanged.
    pub fn minimal(&self, s: ElemSet) -> ElemSet {
        s.iter()
            .filter(|&x| (self.down[x] & s) == ElemSet::singleton(x))
            .fold(ElemSet::EMPTY, ElemSet::with)
    }

    pub fn is_antichain(&self, s: ElemSet) -> bool {
        s.iter().all(|x| (self.up[x] & s) == ElemSet::singleton(x))
    }

    /// Least upper bound of `s` in the whole poset, if any.
    pub fn supremum(&self, s: ElemSet) -> Option<usize> {
        let ubs = s.iter().fold(self.full(), |acc, i| acc & self.up[i]);
        self.least(ubs)
    }

    /// All nonempty antichains, in lexicographic order of their index lists.
    pub fn antichains(&self) -> Vec<ElemSet> {
        fn grow(p: &FinitePoset, from: usize, cur: ElemSet, out: &mut Vec<ElemSet>) {
            for x in from..p.len() {
                let comparable = p.up[x] | p.down[x];
                if !comparable.meets(cur) {
                    let next = cur.with(x);
                    out.push(next);
                    grow(p, x + 1, next, out);
                }
            }
        }
        let mut out = Vec::new();
        grow(self, 0, ElemSet::EMPTY, &mut out);
        out
    }

    /// All upper sets, including the empty set, in increasing mask order.
    pub fn upper_sets(&self) -> Vec<ElemSet> {
        let mut out: BTreeSet<ElemSet> =
            self.antichains().into_iter().map(|a| self.up(a)).collect();
        out.insert(ElemSet::EMPTY);
        out.into_iter().collect()
    }

    pub fn check_enumerable(&self) -> Result<()> {
        if self.len() > MAX_ENUMERABLE {
            return Err(Error::TooLarge {
                size: self.len(),
                limit: MAX_ENUMERABLE,
            });
        }
        Ok(())
    }

    /// Every subset of the carrier, in increasing mask order.
    pub fn all_subsets(&self) -> Result<impl Iterator<Item = ElemSet>> {
        self.check_enumerable()?;
        Ok(self.full().subsets())
    }

    /// Directed subsets via "finite directed = has a greatest element": each
    /// is `{m} ∪ S` for `S ⊆ ↓m \ {m}`. Grouped by `m`, in index order.
    pub fn enumerate_directed_subsets(&self) -> Result<Vec<ElemSet>> {
        let mut out = Vec::new();
        for m in 0..self.len() {
            let below = self.down[m].without(m);
            if below.len() > MAX_ENUMERABLE {
                return Err(Error::TooLarge {
                    size: below.len(),
                    limit: MAX_ENUMERABLE,
                });
            }
            out.extend(below.subsets().map(|s| s.with(m)));
        }
        Ok(out)
    }

    /// The element indices ordered so that `i <= j` implies `i` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].len(), i));
        order
    }

    /// Invariant under relabelling; equal forms iff isomorphic.
    pub fn canonical_form(&self) -> Vec<u64> {
        let n = self.len();
        let mut best: Option<Vec<u64>> = None;
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            // p[i] = new label of old element i
            let mut rows = vec![0u64; n];
            for i in 0..n {
                for j in self.up[i].iter() {
                    rows[p[i]] |= 1u64 << p[j];
                }
            }
            if best.as_ref().is_none_or(|b| rows < *b) {
                best = Some(rows);
            }
        });
        best.unwrap_or_default()
    }

    pub fn is_isomorphic(&self, other: &FinitePoset) -> bool {
        self.len() == other.len()
            && self.relation_size() == other.relation_size()
            && self.canonical_form() == other.canonical_form()
    }

    /// Restriction of the counterexample order to `{0..n, a, top}`.
    pub fn truncate_example_one(n: u64) -> FinitePoset {
        let mut names: Vec<String> = (0..=n).map(|k| k.to_string()).collect();
        names.push("a".into());
        names.push("top".into());
        let tags: Vec<Option<u64>> = (0..=n).map(Some).chain([None, None]).collect();
        let top = names.len() - 1;
        let le = |i: usize, j: usize| {
            i == j || j == top || matches!((tags[i], tags[j]), (Some(a), Some(b)) if a <= b)
        };
        FinitePoset::from_relation(&format!("exampleone_trunc_{n}"), names, le)
            .expect("truncation is a poset")
    }
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

impl Dcpo for FinitePoset {
    type Elem = usize;
    type Set = ElemSet;

    fn leq(&self, x: usize, y: usize) -> bool {
        self.le(x, y)
    }
    fn empty_set(&self) -> ElemSet {
        ElemSet::EMPTY
    }
    fn whole(&self) -> ElemSet {
        self.full()
    }
    fn set_of(&self, elems: &[usize]) -> ElemSet {
        ElemSet::from_indices(elems.iter().copied())
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
        a.complement(self.len())
    }
    fn is_subset(&self, a: &ElemSet, b: &ElemSet) -> bool {
        a.is_subset(*b)
    }
    fn up_closure(&self, s: &ElemSet) -> ElemSet {
        self.up(*s)
    }
    fn down_closure(&self, s: &ElemSet) -> ElemSet {
        self.down(*s)
    }
    fn is_directed(&self, s: &ElemSet) -> bool {
        self.greatest(*s).is_some()
    }
    fn directed_sup(&self, s: &ElemSet) -> Result<usize> {
        self.greatest(*s).ok_or(Error::NotDirected)
    }
    fn element_name(&self, x: usize) -> String {
        self.elements[x].clone()
    }
    fn parse_element(&self, name: &str) -> Result<usize> {
        self.index_of(name)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn diamond() -> FinitePoset {
        FinitePoset::build(
            "diamond",
            &["bot", "l", "r", "top"],
            &[("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
        )
        .unwrap()
    }

    #[test]
    fn singleton_poset() {
        let p = FinitePoset::build::<&str>("one", &["x"], &[]).unwrap();
        assert_eq!(p.relation_pairs(), vec![(0, 0)]);
    }

    #[test]
    fn diamond_closure_has_nine_pairs() {
        let d = diamond();
        assert_eq!(d.relation_size(), 9);
        assert!(d.le(0, 3));
        assert!(!d.le(1, 2));
    }

    #[test]
    fn cycle_is_rejected() {
        let err = FinitePoset::build("c", &["x", "y"], &[("x", "y"), ("y", "x")]).unwrap_err();
        assert!(matches!(err, Error::Cycle(..)));
    }

    #[test]
    fn longer_cycle_is_rejected() {
        let err = FinitePoset::build("c", &["x", "y", "z"], &[("x", "y"), ("y", "z"), ("z", "x")])
            .unwrap_err();
        assert!(matches!(err, Error::Cycle(..)));
    }

    #[test]
    fn duplicates_and_unknowns_are_rejected() {
        assert_eq!(
            FinitePoset::build::<&str>("d", &["x", "x"], &[]).unwrap_err(),
            Error::DuplicateElement("x".into())
        );
        assert_eq!(
            FinitePoset::build("d", &["x"], &[("x", "q")]).unwrap_err(),
            Error::UnknownElement("q".into())
        );
    }

    #[test]
    fn up_closure_of_l() {
        let d = diamond();
        let l = d.set_from_ids(&["l"]).unwrap();
        assert_eq!(d.ids_of(d.up_closure(&l)), vec!["l", "top"]);
        assert_eq!(d.up_closure(&d.full()), d.full());
    }

    #[test]
    fn directedness_on_diamond() {
        let d = diamond();
        assert!(!d.is_directed(&d.set_from_ids(&["l", "r"]).unwrap()));
        assert!(d.is_directed(&d.set_from_ids(&["bot", "l", "top"]).unwrap()));
        assert!(!d.is_directed(&ElemSet::EMPTY));
        assert_eq!(
            d.directed_sup(&d.set_from_ids(&["bot", "l"]).unwrap())
                .unwrap(),
            1
        );
        assert_eq!(
            d.directed_sup(&d.set_from_ids(&["l", "r"]).unwrap()),
            Err(Error::NotDirected)
        );
    }

    #[test]
    fn directed_subset_counts() {
        let one = FinitePoset::build::<&str>("one", &["x"], &[]).unwrap();
        assert_eq!(
            one.enumerate_directed_subsets().unwrap(),
            vec![ElemSet::singleton(0)]
        );
        let anti = FinitePoset::build::<&str>("anti", &["x", "y"], &[]).unwrap();
        assert_eq!(
            anti.enumerate_directed_subsets().unwrap(),
            vec![ElemSet::singleton(0), ElemSet::singleton(1)]
        );
        // Pairwise-definition count, see the oracle tests.
        assert_eq!(diamond().enumerate_directed_subsets().unwrap().len(), 13);
    }

    #[test]
    fn truncations() {
        let t0 = FinitePoset::truncate_example_one(0);
        assert_eq!(t0.len(), 3);
        let (z, a, top) = (
            t0.index_of("0").unwrap(),
            t0.index_of("a").unwrap(),
            t0.index_of("top").unwrap(),
        );
        assert!(!t0.le(z, a) && !t0.le(a, z));
        assert!(t0.le(z, top) && t0.le(a, top));

        let t2 = FinitePoset::truncate_example_one(2);
        let idx = |s: &str| t2.index_of(s).unwrap();
        assert!(t2.le(idx("0"), idx("1")) && t2.le(idx("1"), idx("2")));
        assert!(!t2.le(idx("2"), idx("a")));
        assert_eq!(t2.relation_size(), 6 + 1 + 5);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let d = diamond();
        let text = d.to_json();
        let back = FinitePoset::from_json(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn minimal_and_antichains() {
        let d = diamond();
        assert_eq!(d.minimal(d.full()), ElemSet::singleton(0));
        // {bot},{l},{r},{top},{l,r}
        assert_eq!(d.antichains().len(), 5);
        assert_eq!(d.upper_sets().len(), 6);
    }

    #[test]
    fn isomorphism_ignores_labels() {
        let a = FinitePoset::build("a", &["x", "y", "z"], &[("x", "y")]).unwrap();
        let b = FinitePoset::build("b", &["p", "q", "r"], &[("r", "p")]).unwrap();
        let c = FinitePoset::build("c", &["p", "q", "r"], &[("r", "p"), ("p", "q")]).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
    }
}
