//! Slow definitional checkers used to cross-check the fast paths.
//!
//! Nothing here calls back into the closed forms it is meant to validate.

use crate::bits::ElemSet;
use crate::example_one::{OneElem, OneSet};
use crate::poset::FinitePoset;

/// Nonempty, and every pair of members has an upper bound among the members.
pub fn is_directed_pairwise(p: &FinitePoset, s: ElemSet) -> bool {
    !s.is_empty()
        && s.iter()
            .all(|x| s.iter().all(|y| s.iter().any(|z| p.le(x, z) && p.le(y, z))))
}

/// All directed subsets by the pairwise definition.
pub fn directed_subsets_pairwise(p: &FinitePoset) -> Vec<ElemSet> {
    ElemSet::full(p.len())
        .subsets()
        .filter(|&s| is_directed_pairwise(p, s))
        .collect()
}

/// A family of up-sets is directed under reverse inclusion when it is nonempty
/// and any two members contain a common member.
pub fn is_smyth_directed(ups: &[ElemSet]) -> bool {
    !ups.is_empty()
        && ups
            .iter()
            .all(|&a| ups.iter().all(|&b| ups.iter().any(|&c| c.is_subset(a & b))))
}

/// Calls `f` on every directed family of at most `bound` members, drawn from
/// `ups` by index, whose smallest index is `first`.
pub fn for_each_directed_family_from(
    ups: &[ElemSet],
    first: usize,
    bound: usize,
    f: &mut dyn FnMut(&[usize]),
) {
    fn go(
        ups: &[ElemSet],
        chosen: &mut Vec<usize>,
        next: usize,
        bound: usize,
        f: &mut dyn FnMut(&[usize]),
    ) {
        let family: Vec<ElemSet> = chosen.iter().map(|&i| ups[i]).collect();
        if is_smyth_directed(&family) {
            f(chosen);
        }
        if chosen.len() == bound {
            return;
        }
        for i in next..ups.len() {
            chosen.push(i);
            go(ups, chosen, i + 1, bound, f);
            chosen.pop();
        }
    }
    if bound == 0 || first >= ups.len() {
        return;
    }
    go(ups, &mut vec![first], first + 1, bound, f);
}

/// All partial orders on `n` labelled points by brute force over relations,
/// then one per isomorphism class by trying every bijection.
pub fn posets_by_brute_force(n: usize) -> Vec<FinitePoset> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    let mut classes: Vec<Vec<Vec<bool>>> = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut rel = vec![vec![false; n]; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            rel[i][j] = mask >> k & 1 == 1;
        }
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| i == j || !(rel[i][j] && rel[j][i])));
        let transitive =
            (0..n).all(|i| (0..n).all(|j| !rel[i][j] || (0..n).all(|k| !rel[j][k] || rel[i][k])));
        if antisymmetric && transitive && !classes.iter().any(|c| relations_isomorphic(c, &rel)) {
            classes.push(rel);
        }
    }
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    classes
        .into_iter()
        .map(|rel| {
            FinitePoset::from_relation("brute", names.clone(), |i, j| rel[i][j])
                .expect("checked order")
        })
        .collect()
}

fn relations_isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    fn go(a: &[Vec<bool>], b: &[Vec<bool>], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = map.len();
        if k == a.len() {
            return true;
        }
        for t in 0..a.len() {
            if used[t] {
                continue;
            }
            let fits = (0..k).all(|i| a[i][k] == b[map[i]][t] && a[k][i] == b[t][map[i]]);
            if fits {
                map.push(t);
                used[t] = true;
                if go(a, b, map, used) {
                    return true;
                }
                used[t] = false;
                map.pop();
            }
        }
        false
    }
    a.len() == b.len() && go(a, b, &mut Vec::new(), &mut vec![false; a.len()])
}

/// Element-wise order on the counterexample, written out from the definition.
pub fn one_leq(x: OneElem, y: OneElem) -> bool {
    match (x, y) {
        (_, OneElem::Top) => true,
        (OneElem::Nat(j), OneElem::Nat(k)) => j <= k,
        (OneElem::A, OneElem::A) => true,
        _ => false,
    }
}

/// Probe points: naturals up to `window`, then `a` and `top`.
pub fn one_probe(window: u64) -> Vec<OneElem> {
    (0..=window)
        .map(OneElem::Nat)
        .chain([OneElem::A, OneElem::Top])
        .collect()
}

/// A directed subset of the counterexample described by its shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// A finite set of points, which must have a greatest element.
    Finite(Vec<OneElem>),
    /// `[t, ∞)` together with the listed extra points.
    Tail(u64, Vec<OneElem>),
}

impl Shape {
    pub fn contains(&self, x: OneElem) -> bool {
        match self {
            Shape::Finite(v) => v.contains(&x),
            Shape::Tail(t, extra) => matches!(x, OneElem::Nat(k) if k >= *t) || extra.contains(&x),
        }
    }

    pub fn sup(&self) -> OneElem {
        match self {
            Shape::Finite(v) => *v
                .iter()
                .find(|&&m| v.iter().all(|&y| one_leq(y, m)))
                .expect("finite shapes are directed"),
            Shape::Tail(..) => OneElem::Top,
        }
    }

    /// Members among the probe points (tails are uniform past the window).
    pub fn probe_members(&self, window: u64) -> Vec<OneElem> {
        let mut out: Vec<OneElem> = one_probe(window)
            .into_iter()
            .filter(|&x| self.contains(x))
            .collect();
        if let Shape::Tail(t, _) = self {
            if *t > window {
                out.push(OneElem::Nat(*t));
            }
        }
        out
    }
}

/// Every directed shape whose finite natural part lives in `0..=window`:
/// finite chains of naturals, optionally with `top`; `{a}`; anything with
/// `top` and `a`; tails from each `t ≤ window + 1`, optionally with `a` and
/// `top` or with `top` alone.
pub fn one_directed_shapes(window: u64) -> Vec<Shape> {
    let mut out = Vec::new();
    let nats: Vec<u64> = (0..=window).collect();
    for mask in 0u64..(1 << nats.len()) {
        let part: Vec<OneElem> = nats
            .iter()
            .filter(|&&k| mask >> k & 1 == 1)
            .map(|&k| OneElem::Nat(k))
            .collect();
        for (a, top) in [(false, false), (false, true), (true, true), (true, false)] {
            let mut v = part.clone();
            if a {
                v.push(OneElem::A);
            }
            if top {
                v.push(OneElem::Top);
            }
            let directed = !v.is_empty()
                && v.iter().all(|&x| {
                    v.iter()
                        .all(|&y| v.iter().any(|&z| one_leq(x, z) && one_leq(y, z)))
                });
            if directed {
                out.push(Shape::Finite(v));
            }
        }
    }
    for t in 0..=window + 1 {
        out.push(Shape::Tail(t, vec![]));
        out.push(Shape::Tail(t, vec![OneElem::Top]));
        out.push(Shape::Tail(t, vec![OneElem::A, OneElem::Top]));
    }
    out
}

fn meets_up(d: &Shape, g: &[OneElem], window: u64) -> bool {
    d.probe_members(window)
        .iter()
        .any(|&x| g.iter().any(|&y| one_leq(y, x)))
}

/// `G ≪ H` from the definition, over all shapes up to `window`. The window
/// should exceed every natural in `G` and `H`.
pub fn one_set_way_below(g: &[OneElem], h: &[OneElem], window: u64) -> bool {
    one_directed_shapes(window)
        .iter()
        .filter(|d| h.iter().any(|&y| one_leq(y, d.sup())))
        .all(|d| meets_up(d, g, window))
}

/// Scott-openness from the definition: an upper set (checked on probes) that
/// every directed shape with supremum inside it meets.
pub fn one_is_scott_open(u: &OneSet, window: u64) -> bool {
    let probe = one_probe(window);
    let upper = probe
        .iter()
        .all(|&x| !u.contains(x) || probe.iter().all(|&y| !one_leq(x, y) || u.contains(y)));
    upper
        && one_directed_shapes(window)
            .iter()
            .filter(|d| u.contains(d.sup()))
            .all(|d| d.probe_members(window).iter().any(|&x| u.contains(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::tests::diamond;

    #[test]
    fn pairwise_matches_enumeration() {
        let d = diamond();
        let mut a = directed_subsets_pairwise(&d);
        let mut b = d.enumerate_directed_subsets().unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(a.len(), 13);
    }

    #[test]
    fn brute_force_poset_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| posets_by_brute_force(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
    }

    #[test]
    fn smyth_directedness() {
        assert!(!is_smyth_directed(&[]));
        assert!(is_smyth_directed(&[ElemSet(0b111), ElemSet(0b011)]));
        assert!(!is_smyth_directed(&[ElemSet(0b110), ElemSet(0b011)]));
        assert!(is_smyth_directed(&[
            ElemSet(0b110),
            ElemSet(0b011),
            ElemSet(0b010)
        ]));
    }

    #[test]
    fn family_enumeration_counts() {
        let ups = [ElemSet(0b1), ElemSet(0b10), ElemSet(0b11)];
        let mut seen = Vec::new();
        for first in 0..ups.len() {
            for_each_directed_family_from(&ups, first, 3, &mut |m| seen.push(m.to_vec()));
        }
        // {0},{1},{2},{0,2},{1,2}; {0,1} and {0,1,2} have no common lower member.
        assert_eq!(seen.len(), 5);
    }

    #[test]
    fn shapes_are_directed_with_right_sup() {
        for d in one_directed_shapes(3) {
            let m = d.probe_members(5);
            for &x in &m {
                assert!(one_leq(x, d.sup()));
            }
        }
        assert!(!one_directed_shapes(3).contains(&Shape::Finite(vec![OneElem::Nat(0), OneElem::A])));
    }

    #[test]
    fn definitional_way_below() {
        use OneElem::*;
        assert!(one_set_way_below(&[Nat(2)], &[Nat(3)], 6));
        assert!(!one_set_way_below(&[A], &[A], 6));
        assert!(one_set_way_below(&[Nat(2), A], &[A], 6));
        assert!(!one_set_way_below(&[Top], &[Top], 6));
        assert!(!one_set_way_below(&[Nat(4)], &[Nat(3)], 6));
    }

    #[test]
    fn definitional_scott_open() {
        assert!(one_is_scott_open(&OneSet::whole(), 5));
        assert!(one_is_scott_open(&OneSet::new([], Some(2), true, true), 5));
        assert!(!one_is_scott_open(&OneSet::new([], None, true, true), 5));
        assert!(one_is_scott_open(&OneSet::new([], None, false, false), 5));
    }
}
