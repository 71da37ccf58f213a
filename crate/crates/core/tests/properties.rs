use proptest::prelude::*;

use domaincheck_core::topology::{lawson_topology, scott_topology};
use domaincheck_core::{Approximation, Dcpo, ElemSet, FiniteDomain, FinitePoset};

#[allow(clippy::needless_range_loop)]
fn arb_poset() -> impl Strategy<Value = FinitePoset> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |edges| {
            // edges only go from lower to higher index, so the closure is acyclic
            let mut le = vec![vec![false; n]; n];
            let mut k = 0;
            for i in 0..n {
                le[i][i] = true;
                for j in i + 1..n {
                    le[i][j] = edges[k];
                    k += 1;
                }
            }
            for m in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if le[i][m] && le[m][j] {
                            le[i][j] = true;
                        }
                    }
                }
            }
            let names = (0..n).map(|i| format!("e{i}")).collect();
            FinitePoset::from_relation("random", names, |i, j| le[i][j]).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn way_below_is_order(p in arb_poset()) {
        let d = FiniteDomain::new(p).unwrap();
        for x in 0..d.len() {
            for y in 0..d.len() {
                prop_assert_eq!(d.point_way_below(x, y), d.leq(x, y));
            }
        }
    }

    #[test]
    fn scott_opens_are_upper_sets(p in arb_poset()) {
        let d = FiniteDomain::new(p).unwrap();
        let mut ups = d.upper_sets();
        ups.sort();
        let mut opens = scott_topology(&d).unwrap().opens().to_vec();
        opens.sort();
        prop_assert_eq!(opens, ups);
    }

    #[test]
    fn lawson_is_discrete(p in arb_poset()) {
        let d = FiniteDomain::new(p).unwrap();
        let l = lawson_topology(&d).unwrap();
        for x in 0..d.len() {
            prop_assert!(l.is_open(ElemSet::singleton(x)));
        }
        prop_assert!(l.axiom_violation().is_none());
    }

    #[test]
    fn json_round_trip(p in arb_poset()) {
        let q = FinitePoset::from_json(&p.to_json()).unwrap();
        prop_assert_eq!(q.relation_pairs(), p.relation_pairs());
        prop_assert_eq!(q.elements(), p.elements());
    }

    #[test]
    fn set_way_below_is_smyth(p in arb_poset()) {
        let d = FiniteDomain::new(p).unwrap();
        let fins: Vec<_> = d.all_antichains().collect();
        for g in &fins {
            for h in &fins {
                prop_assert_eq!(d.set_way_below(g, h), d.smyth_leq(g, h));
            }
        }
    }
}
