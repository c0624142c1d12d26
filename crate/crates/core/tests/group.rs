mod common;

use common::{random_element, random_triple, rng};
use lamplighter::group::{relative_index, triple_from_generators, GroupElement, SubgroupTriple};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const CONFIGS: [(u32, usize); 4] = [(2, 1), (2, 2), (3, 1), (3, 2)];

/// A random product of the given elements and their inverses.
fn random_word(r: &mut ChaCha8Rng, gens: &[GroupElement], len: usize) -> GroupElement {
    let mut g = GroupElement::identity(gens[0].p(), gens[0].n());
    for _ in 0..len {
        let h = gens.choose(r).unwrap();
        g = g.mul(&if r.gen_bool(0.5) { h.clone() } else { h.inv() });
    }
    g
}

fn finite_triple(r: &mut ChaCha8Rng, p: u32, n: usize) -> SubgroupTriple {
    loop {
        let t = random_triple(r, p, n);
        if t.s() > 0 {
            return t;
        }
    }
}

#[test]
fn group_axioms() {
    let mut r = rng(301);
    for i in 0..500 {
        let (p, n) = CONFIGS[i % 4];
        let (a, b, c) = (random_element(&mut r, p, n), random_element(&mut r, p, n), random_element(&mut r, p, n));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert!(a.mul(&a.inv()).is_identity() && a.inv().mul(&a).is_identity());
        assert_eq!(a.mul(&GroupElement::identity(p, n)), a);
        let (k, l) = (r.gen_range(-4..=4), r.gen_range(-4..=4));
        assert_eq!(a.pow(k).mul(&a.pow(l)), a.pow(k + l));
        assert_eq!(GroupElement::parse(p, n, &a.to_string()).unwrap(), a);
    }
}

#[test]
fn subgroups_are_closed_under_products() {
    let mut r = rng(302);
    for i in 0..200 {
        let (p, n) = CONFIGS[i % 4];
        let t = finite_triple(&mut r, p, n);
        let gens = t.generators().unwrap();
        assert_eq!(Some(gens.len()), t.min_generators());
        for _ in 0..10 {
            let w = random_word(&mut r, &gens, 6);
            assert!(t.member(&w), "{w} should lie in {t}");
        }
    }
}

#[test]
fn generators_round_trip() {
    let mut r = rng(303);
    for i in 0..200 {
        let (p, n) = CONFIGS[i % 4];
        let t = finite_triple(&mut r, p, n);
        let mut gens = t.generators().unwrap();
        // a redundant generator and a scrambled order change nothing
        gens.push(random_word(&mut r, &gens, 4));
        gens.shuffle(&mut r);
        assert_eq!(triple_from_generators(&gens).unwrap(), t);
    }
}

#[test]
fn generated_subgroup_contains_its_generators() {
    let mut r = rng(304);
    for i in 0..200 {
        let (p, n) = CONFIGS[i % 4];
        let mut gens: Vec<GroupElement> = (0..r.gen_range(1..=3)).map(|_| random_element(&mut r, p, n)).collect();
        if gens.iter().all(|g| g.s == 0) {
            gens.push(GroupElement::shift_gen(p, n));
        }
        let t = triple_from_generators(&gens).unwrap();
        assert!(gens.iter().all(|g| t.member(g)));
        // minimal: regenerating from the triple gives the same subgroup
        let again = triple_from_generators(&t.generators().unwrap()).unwrap();
        assert_eq!(again, t);
    }
}

#[test]
fn inclusion_matches_generator_membership() {
    let mut r = rng(305);
    let mut positives = 0;
    for i in 0..300 {
        let (p, n) = CONFIGS[i % 4];
        let big = finite_triple(&mut r, p, n);
        let small =
            if i % 2 == 0 { big.intersect(&finite_triple(&mut r, p, n)).unwrap() } else { finite_triple(&mut r, p, n) };
        if small.s() == 0 {
            continue;
        }
        let by_gens = small.generators().unwrap().iter().all(|g| big.member(g));
        assert_eq!(small.includes_in(&big).unwrap(), by_gens);
        if by_gens {
            positives += 1;
            if let (Some(a), Some(b)) = (small.index(), big.index()) {
                assert_eq!(relative_index(&small, &big).unwrap() * b, a);
            }
        }
    }
    assert!(positives > 50, "only {positives} inclusions sampled");
}

#[test]
fn intersection_is_a_meet() {
    let mut r = rng(306);
    for i in 0..300 {
        let (p, n) = CONFIGS[i % 4];
        let (a, b) = (random_triple(&mut r, p, n), random_triple(&mut r, p, n));
        let ab = a.intersect(&b).unwrap();
        assert_eq!(ab, b.intersect(&a).unwrap());
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(ab.includes_in(&a).unwrap() && ab.includes_in(&b).unwrap());
        for _ in 0..20 {
            let g = random_element(&mut r, p, n);
            let g = if r.gen_bool(0.5) {
                g
            } else {
                a.witness().pow(r.gen_range(-3..=3)).mul(&GroupElement::new(g.v.clone(), 0))
            };
            assert_eq!(ab.member(&g), a.member(&g) && b.member(&g));
        }
    }
}

#[test]
fn conjugation_transports_membership() {
    let mut r = rng(307);
    for i in 0..300 {
        let (p, n) = CONFIGS[i % 4];
        let t = random_triple(&mut r, p, n);
        let g = random_element(&mut r, p, n);
        let tg = t.conjugate_by(&g);
        assert_eq!(tg.index(), t.index());
        for _ in 0..10 {
            let h = if r.gen_bool(0.5) { random_element(&mut r, p, n) } else { t.witness().pow(r.gen_range(-2..=2)) };
            assert_eq!(tg.member(&g.conjugate(&h)), t.member(&h));
        }
    }
}

#[test]
fn text_round_trip() {
    let mut r = rng(308);
    for i in 0..300 {
        let (p, n) = CONFIGS[i % 4];
        let t = random_triple(&mut r, p, n);
        assert_eq!(SubgroupTriple::parse(p, n, &t.to_text()).unwrap(), t);
    }
}
