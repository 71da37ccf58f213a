//! The poset corpus: named examples plus every poset on up to a few points,
//! one per isomorphism class.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// Largest size for exhaustive generation.
pub const MAX_GENERATED: usize = 6;

/// Every poset on `n` unlabelled points, one per isomorphism class, ordered
/// by canonical form. Elements are named `0..n` along a linear extension.
pub fn generate_all_posets(n: usize) -> Result<Vec<FinitePoset>> {
    if n > MAX_GENERATED {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_GENERATED,
        });
    }
    // Naturally labelled posets: each new point gets a down-set of the
    // points before it. Every poset arises at least once this way.
    let mut labelled: Vec<Vec<u64>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for downs in &labelled {
            for below in 0u64..(1 << k) {
                let closed = (0..k)
                    .filter(|&i| below >> i & 1 == 1)
                    .all(|i| downs[i] & !below == 0);
                if closed {
                    let mut d = downs.clone();
                    d.push(below);
                    next.push(d);
                }
            }
        }
        labelled = next;
    }
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut classes: BTreeMap<Vec<u64>, FinitePoset> = BTreeMap::new();
    for downs in labelled {
        let p =
            FinitePoset::from_relation("", names.clone(), |i, j| i == j || downs[j] >> i & 1 == 1)
                .expect("down-closed labelling is a poset");
        classes.entry(p.canonical_form()).or_insert(p);
    }
    Ok(classes
        .into_values()
        .enumerate()
        .map(|(i, p)| p.with_name(&format!("p{n}_{i}")))
        .collect())
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn chain(n: usize) -> FinitePoset {
    FinitePoset::from_relation(&format!("chain_{n}"), numbered(n), |i, j| i <= j).expect("chain")
}

pub fn antichain(n: usize) -> FinitePoset {
    FinitePoset::from_relation(&format!("antichain_{n}"), numbered(n), |i, j| i == j)
        .expect("antichain")
}

pub fn diamond() -> FinitePoset {
    FinitePoset::build(
        "diamond",
        &["bot", "l", "r", "top"],
        &[("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
    )
    .expect("diamond")
}

/// The pentagon: `bot < a < b < top` and `bot < c < top`.
pub fn n5() -> FinitePoset {
    FinitePoset::build(
        "n5",
        &["a", "b", "bot", "c", "top"],
        &[
            ("bot", "a"),
            ("a", "b"),
            ("b", "top"),
            ("bot", "c"),
            ("c", "top"),
        ],
    )
    .expect("n5")
}

pub fn m3() -> FinitePoset {
    FinitePoset::build(
        "m3",
        &["a", "b", "bot", "c", "top"],
        &[
            ("bot", "a"),
            ("bot", "b"),
            ("bot", "c"),
            ("a", "top"),
            ("b", "top"),
            ("c", "top"),
        ],
    )
    .expect("m3")
}

/// Subsets of `{a, b, c}` under inclusion; the empty set is `0`.
pub fn cube() -> FinitePoset {
    let names: Vec<String> = (0u32..8)
        .map(|m| {
            if m == 0 {
                "0".into()
            } else {
                (0..3)
                    .filter(|b| m >> b & 1 == 1)
                    .map(|b| ["a", "b", "c"][b as usize])
                    .collect()
            }
        })
        .collect();
    FinitePoset::from_relation("cube", names, |i, j| i & !j == 0).expect("cube")
}

/// Zigzag `0 < 1 > 2 < 3`.
pub fn fence_4() -> FinitePoset {
    FinitePoset::build(
        "fence_4",
        &["0", "1", "2", "3"],
        &[("0", "1"), ("2", "1"), ("2", "3")],
    )
    .expect("fence")
}

pub fn named_posets() -> Vec<FinitePoset> {
    let mut out: Vec<FinitePoset> = (1..=6).map(chain).collect();
    out.extend((2..=6).map(antichain));
    out.extend([diamond(), n5(), m3(), cube(), fence_4()]);
    out.extend([0, 2, 5].map(FinitePoset::truncate_example_one));
    out
}

pub fn named(name: &str) -> Option<FinitePoset> {
    named_posets().into_iter().find(|p| p.name() == name)
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub generated: Vec<FinitePoset>,
    pub named: Vec<FinitePoset>,
}

impl Corpus {
    /// All posets on `1..=max_size` points plus the named ones.
    pub fn standard(max_size: usize) -> Result<Self> {
        let mut generated = Vec::new();
        for n in 1..=max_size {
            generated.extend(generate_all_posets(n)?);
        }
        Ok(Corpus {
            generated,
            named: named_posets(),
        })
    }

    pub fn all(&self) -> impl Iterator<Item = &FinitePoset> {
        self.generated.iter().chain(&self.named)
    }

    pub fn len(&self) -> usize {
        self.generated.len() + self.named.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_counts() {
        let counts: Vec<usize> = (0..=5)
            .map(|n| generate_all_posets(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
        assert!(matches!(
            generate_all_posets(7),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn named_shapes() {
        assert_eq!(cube().len(), 8);
        assert_eq!(cube().relation_size(), 27);
        assert_eq!(n5().relation_size(), 5 + 8);
        assert_eq!(m3().relation_size(), 5 + 7);
        assert!(!n5().is_isomorphic(&m3()));
        assert_eq!(fence_4().relation_size(), 7);
        let all = named_posets();
        assert!(all.iter().any(|p| p.name() == "exampleone_trunc_5"));
        assert_eq!(named("diamond").unwrap().len(), 4);
    }

    #[test]
    fn standard_corpus_size() {
        let c = Corpus::standard(5).unwrap();
        assert_eq!(c.generated.len(), 87);
        assert_eq!(c.len(), 87 + named_posets().len());
    }
}
