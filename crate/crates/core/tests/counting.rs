use lamplighter::counting::{a_m, count_normal, enumerate_subgroups, s_m, FiniteQuotient};
use lamplighter::group::SubgroupTriple;
use lamplighter::ring::FpPoly;
use lamplighter::rmodule::{RVector, Submodule};
use num_bigint::BigUint;

/// `(r, (1 − x^r)Rⁿ, 0)`, the kernel of the cyclic quotient.
fn cyclic_kernel(p: u32, n: usize, r: u64) -> SubgroupTriple {
    let c = FpPoly::one_minus_x_pow(p, r as usize).to_laurent();
    let gens: Vec<RVector> = (0..n).map(|i| RVector::unit(p, n, i).mul_scalar(&c)).collect();
    SubgroupTriple::new(r, Submodule::generated(p, n, 1, &gens), RVector::zero(p, n)).unwrap()
}

#[test]
fn subgroups_over_a_kernel_match_the_finite_quotient() {
    for (p, n, r, max_m) in [(2u32, 1usize, 4u64, 8u64), (2, 1, 6, 12), (3, 1, 3, 9), (2, 2, 2, 8), (5, 1, 2, 10)] {
        let q = FiniteQuotient::by_cyclic(p, n, r, 1 << 16).unwrap();
        let all = q.all_subgroups(1 << 16).unwrap();
        let ker = cyclic_kernel(p, n, r);
        for m in 1..=max_m {
            let by_triples: Vec<SubgroupTriple> = enumerate_subgroups(p, n, m, 1 << 20)
                .unwrap()
                .into_iter()
                .filter(|t| ker.includes_in(t).unwrap())
                .collect();
            let in_quotient: Vec<_> = all.iter().filter(|h| h.len() * m as usize == q.order()).collect();
            assert_eq!(by_triples.len(), in_quotient.len(), "p={p} n={n} r={r} m={m}");
            let normal = by_triples.iter().filter(|t| t.is_normal()).count();
            assert_eq!(normal, in_quotient.iter().filter(|h| q.is_normal(h)).count(), "normal, m={m}");
            for t in &by_triples {
                assert!(all.contains(&q.image(t)), "{t} has no image");
            }
        }
    }
}

#[test]
fn normal_counts_match_enumeration() {
    for (p, n, max_m) in [(2u32, 1usize, 16u64), (3, 1, 9), (2, 2, 8)] {
        for m in 1..=max_m {
            let list = enumerate_subgroups(p, n, m, 1 << 22).unwrap();
            let normal = list.iter().filter(|t| t.is_normal()).count();
            assert_eq!(count_normal(p, n, m, 1 << 22).unwrap(), BigUint::from(normal), "p={p} n={n} m={m}");
        }
    }
}

#[test]
fn cumulative_counts() {
    for (p, n) in [(2u32, 1usize), (3, 1), (2, 2)] {
        let mut acc = BigUint::from(0u8);
        for m in 1..=12 {
            acc += a_m(p, n, m);
            assert_eq!(s_m(p, n, m), acc);
        }
    }
}

#[test]
fn two_lamp_counts_match_enumeration() {
    for m in 1..=8 {
        assert_eq!(BigUint::from(enumerate_subgroups(2, 2, m, 1 << 22).unwrap().len()), a_m(2, 2, m), "m={m}");
    }
    for m in 1..=3 {
        assert_eq!(BigUint::from(enumerate_subgroups(3, 2, m, 1 << 22).unwrap().len()), a_m(3, 2, m), "m={m}");
    }
}

#[test]
fn the_r1_quotient_is_cyclic_of_order_p() {
    // lamps modulo 1 - x and shifts modulo 1 leave F_p
    for p in [2u32, 3, 5] {
        let q = FiniteQuotient::by_cyclic(p, 1, 1, 1 << 10).unwrap();
        assert_eq!(q.order(), p as usize);
        assert_eq!(q.all_subgroups(1 << 10).unwrap().len(), 2);
    }
}
