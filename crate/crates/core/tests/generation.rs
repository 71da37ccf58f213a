use domaincheck_core::corpus::{generate_all_posets, Corpus};
use domaincheck_core::oracle::posets_by_brute_force;

#[test]
fn generation_matches_brute_force() {
    for n in 1..=5 {
        let gen = generate_all_posets(n).unwrap();
        let brute = posets_by_brute_force(n);
        assert_eq!(gen.len(), brute.len(), "n={n}");
        for b in &brute {
            let hits = gen.iter().filter(|g| g.is_isomorphic(b)).count();
            assert_eq!(hits, 1, "n={n}: {}", b.to_json());
        }
    }
}

#[test]
fn canonical_forms_are_distinct() {
    let c = Corpus::standard(5).unwrap();
    let mut forms: Vec<_> = c
        .generated
        .iter()
        .map(|p| (p.len(), p.canonical_form()))
        .collect();
    forms.sort();
    forms.dedup();
    assert_eq!(forms.len(), 87);
}
