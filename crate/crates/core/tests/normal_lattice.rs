use std::collections::BTreeSet;

use lamplighter::counting::enumerate_subgroups;
use lamplighter::normal_lattice::{classify, includes_normal, normal_subgroups, pro_p_lattice, NormalTriple};
use num_bigint::BigUint;

#[test]
fn classification_lists_every_normal_subgroup() {
    for (p, max_m, s_max) in [(2u32, 16u64, 16u64), (3, 9, 9), (5, 5, 5)] {
        let mut enumerated = BTreeSet::new();
        for m in 1..=max_m {
            for t in enumerate_subgroups(p, 1, m, 1 << 20).unwrap().into_iter().filter(|t| t.is_normal()) {
                let c = classify(&t).unwrap();
                assert_eq!(c.to_triple(), t);
                enumerated.insert(c.to_text());
            }
        }
        let listed: BTreeSet<String> = normal_subgroups(p, s_max)
            .unwrap()
            .into_iter()
            .filter(|x| x.index().is_some_and(|i| i <= BigUint::from(max_m)))
            .map(|x| x.to_text())
            .collect();
        assert_eq!(listed, enumerated, "p={p}");
    }
}

#[test]
fn inclusion_rules_for_odd_primes() {
    for (p, s_max) in [(3u32, 4u64), (5, 2)] {
        let all = normal_subgroups(p, s_max).unwrap();
        let triples: Vec<_> = all.iter().map(NormalTriple::to_triple).collect();
        for (a, ta) in all.iter().zip(&triples) {
            for (b, tb) in all.iter().zip(&triples) {
                assert_eq!(includes_normal(a, b), ta.includes_in(tb).unwrap(), "{a} in {b}");
            }
        }
    }
}

#[test]
fn pro_p_lattices_agree() {
    for (p, e) in [(2u32, 3u32), (3, 2), (5, 1)] {
        assert!(pro_p_lattice(p, e).agrees(), "p={p} e={e}");
    }
}

#[test]
fn text_round_trip() {
    for p in [2u32, 3] {
        for x in normal_subgroups(p, 6).unwrap() {
            assert_eq!(NormalTriple::parse(p, &x.to_text()).unwrap(), x);
        }
    }
}
