mod common;

use common::{random_laurent, random_submodule, rng};
use lamplighter::completion::{
    chain_member, embed, is_normal_in, is_power_of, is_pro_p_closed, need1_intersect, need2_decompose, p_chain_witness,
    unit_power, verify_p_chain, PAdicDigits,
};
use lamplighter::counting::enumerate_subgroups;
use lamplighter::group::{GroupElement, SubgroupTriple};
use lamplighter::ring::LaurentPoly;
use lamplighter::rmodule::Submodule;
use num_traits::ToPrimitive;
use rand::Rng;

fn conjugation_oracle(sub: &SubgroupTriple, sup: &SubgroupTriple) -> bool {
    let hs = sub.generators().unwrap();
    let gs = sup.generators().unwrap();
    gs.iter()
        .chain(gs.iter().map(GroupElement::inv).collect::<Vec<_>>().iter())
        .all(|g| hs.iter().all(|h| sub.member(&g.conjugate(h))))
}

fn subgroups_up_to(p: u32, n: usize, m: u64) -> Vec<SubgroupTriple> {
    (1..=m).flat_map(|k| enumerate_subgroups(p, n, k, 1 << 20).unwrap()).collect()
}

#[test]
fn relative_normality_against_conjugation() {
    for (p, n, m) in [(2u32, 1usize, 8u64), (3, 1, 9), (2, 2, 4)] {
        let all = subgroups_up_to(p, n, m);
        let mut pairs = 0;
        for sup in &all {
            for sub in &all {
                if sub.includes_in(sup).unwrap() {
                    pairs += 1;
                    assert_eq!(is_normal_in(sub, sup), conjugation_oracle(sub, sup), "{sub} in {sup}");
                }
            }
        }
        assert!(pairs > all.len());
    }
}

/// The normal core, by closing under conjugation with the generators.
fn core(t: &SubgroupTriple) -> SubgroupTriple {
    let mut conj = GroupElement::standard_generators(t.p(), t.n());
    conj.extend(conj.clone().iter().map(GroupElement::inv));
    let mut k = t.clone();
    loop {
        let next = conj.iter().fold(k.clone(), |acc, g| acc.intersect(&k.conjugate_by(g)).unwrap());
        if next == k {
            return k;
        }
        k = next;
    }
}

#[test]
fn pro_p_closure_against_normal_core() {
    // a finite-index subgroup is pro-p closed iff its core has p-power index
    for (p, n, m) in [(2u32, 1usize, 16u64), (3, 1, 9), (2, 2, 8)] {
        for t in subgroups_up_to(p, n, m) {
            let c = core(&t);
            assert!(c.is_normal());
            let idx = c.index().unwrap().to_u64().unwrap();
            assert_eq!(is_pro_p_closed(&t), is_power_of(p as u64, idx), "{t}, core {c}");
        }
    }
}

#[test]
fn chain_witnesses_for_two_lamps() {
    for t in subgroups_up_to(2, 2, 8) {
        if !is_pro_p_closed(&t) {
            assert!(p_chain_witness(&t).is_err());
            continue;
        }
        let chain = p_chain_witness(&t).unwrap();
        let depth = verify_p_chain(&chain).unwrap();
        assert_eq!(chain.last(), Some(&t));
        for g in lamplighter::group::word_ball(2, 2, 3) {
            assert_eq!(chain_member(&chain, depth, &g), t.member(&g));
        }
    }
}

#[test]
fn embedding_is_a_ring_map() {
    let mut r = rng(501);
    for i in 0..300 {
        let p = [2, 3, 5][i % 3];
        let n = r.gen_range(1..=12);
        let (f, g) = (random_laurent(&mut r, p, 5), random_laurent(&mut r, p, 5));
        assert_eq!(embed(&(&f * &g), n), embed(&f, n).mul(&embed(&g, n)));
        assert_eq!(embed(&(&f + &g), n), embed(&f, n).add(&embed(&g, n)));
    }
}

#[test]
fn unit_powers_are_additive_and_extend_integer_powers() {
    let mut r = rng(502);
    for i in 0..300 {
        let p = [2, 3, 5][i % 3];
        let n = r.gen_range(1..=20);
        let digits = 5;
        let (a, b) = (r.gen_range(-200..=200i64), r.gen_range(-200..=200i64));
        let pa = |k: i64| PAdicDigits::from_i64(p, k, digits);
        assert_eq!(unit_power(&pa(a + b), n), unit_power(&pa(a), n).mul(&unit_power(&pa(b), n)));
        if (p as usize).pow(digits as u32) >= n {
            assert_eq!(unit_power(&pa(a), n), embed(&LaurentPoly::x_pow(p, a), n));
        }
    }
}

#[test]
fn need1_is_the_one_minus_x_part() {
    let mut r = rng(503);
    for i in 0..300 {
        let p = [2, 3][i % 2];
        let g = random_laurent(&mut r, p, 6);
        if g.is_zero() {
            continue;
        }
        let c = need1_intersect(&g).unwrap();
        assert_eq!(c.degree(), embed(&g, 16).valuation());
        assert!(c.to_laurent().divides(&g));
    }
}

#[test]
fn need2_rebuilds_the_submodule() {
    let mut r = rng(504);
    let mut checked = 0;
    for i in 0..300 {
        let p = [2, 3][i % 2];
        let n = 1 + i % 2;
        let u = random_submodule(&mut r, p, n).minimized();
        let Ok(dec) = need2_decompose(&u) else {
            assert!(!is_power_of(p as u64, u.declared_exponent() as u64));
            continue;
        };
        let e = dec.exponent;
        let gens: Vec<_> = dec.h.iter().zip(&dec.d).map(|(h, d)| h.mul_scalar(&d.to_laurent().subs_pow(e))).collect();
        assert!(Submodule::generated(p, n, e, &gens).same_set(&u).unwrap());
        assert!(Submodule::generated(p, n, e, &dec.h).is_full());
        checked += 1;
    }
    assert!(checked > 100);
}

/// `(s, V₀, v)` with `V₀` the lamps off one residue class mod `s` in one
/// coordinate: `V₀` has rank `ns − 1` at exponent `s` and torsion-free
/// quotient.
fn weakly_maximal(r: &mut rand_chacha::ChaCha8Rng, p: u32, n: usize, s: u64) -> SubgroupTriple {
    let k = n * s as usize;
    let skip = r.gen_range(0..k);
    let rows = (0..k)
        .filter(|&j| j != skip)
        .map(|j| (0..k).map(|i| if i == j { LaurentPoly::one(p) } else { LaurentPoly::zero(p) }).collect())
        .collect();
    let v0 = Submodule::from_rebased(p, n, s as usize, rows);
    SubgroupTriple::new(s, v0, common::random_vector(r, p, n, 4)).unwrap()
}

#[test]
fn weakly_maximal_closure_is_decided_by_the_projection() {
    let mut r = rng(505);
    for p in [2u32, 3, 5] {
        for n in 1..=2 {
            for s in 1..=12u64 {
                let t = weakly_maximal(&mut r, p, n, s);
                assert!(t.is_weakly_maximal(), "{t}");
                assert_eq!(is_pro_p_closed(&t), is_power_of(p as u64, s), "{t}");
            }
            assert!(is_pro_p_closed(
                &SubgroupTriple::new(0, Submodule::full(p, n), lamplighter::rmodule::RVector::zero(p, n)).unwrap()
            ));
        }
    }
}
