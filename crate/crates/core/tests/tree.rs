mod common;

use common::{random_element, random_laurent, rng};
use lamplighter::group::{word_ball, GroupElement};
use lamplighter::ring::{FpPoly, LaurentPoly};
use lamplighter::tree::{self, act, coset_to_word, word_to_coset, RaySpec, TreeWord};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_word(r: &mut ChaCha8Rng, p: u32, lens: std::ops::RangeInclusive<usize>) -> TreeWord {
    let len = r.gen_range(lens);
    TreeWord::new(p, (0..len).map(|_| r.gen_range(0..p)).collect()).unwrap()
}

#[test]
fn words_and_cosets_correspond() {
    for p in [2u32, 3, 5] {
        for m in 0..=4 {
            for w in TreeWord::all(p, m) {
                assert_eq!(coset_to_word(&word_to_coset(&w).v.coords()[0], m), w);
            }
        }
    }
    let mut r = rng(401);
    for i in 0..300 {
        let p = [2, 3, 5][i % 3];
        let m = r.gen_range(0..=6);
        let v = random_laurent(&mut r, p, 6);
        let back = &word_to_coset(&coset_to_word(&v, m)).v.coords()[0] - &v;
        assert!(FpPoly::one_minus_x(p).pow(m as u64).to_laurent().divides(&back));
    }
}

#[test]
fn action_is_a_homomorphism_by_tree_automorphisms() {
    let mut r = rng(402);
    for i in 0..400 {
        let p = [2, 3, 5][i % 3];
        let (g, h) = (random_element(&mut r, p, 1), random_element(&mut r, p, 1));
        let w = random_word(&mut r, p, 0..=8);
        let gw = act(&g, &w).unwrap();
        assert_eq!(act(&g.mul(&h), &w).unwrap(), act(&g, &act(&h, &w).unwrap()).unwrap());
        assert_eq!(act(&g.inv(), &gw).unwrap(), w);
        for k in 0..=w.len() {
            assert_eq!(act(&g, &w.prefix(k)).unwrap(), gw.prefix(k));
        }
    }
}

#[test]
fn coset_automaton_states_are_b_powers_times_a() {
    let mut r = rng(403);
    for p in [2u32, 3, 5] {
        let aut = tree::coset_automaton(p);
        let (a, b) = (GroupElement::shift_gen(p, 1), GroupElement::lamp(p, 1, 0));
        for _ in 0..100 {
            let w = random_word(&mut r, p, 0..=8);
            for i in 0..p as usize {
                assert_eq!(aut.run(i, &w), act(&b.pow(i as i64).mul(&a), &w).unwrap());
            }
        }
    }
}

#[test]
fn recursion_automaton_computes_running_sums() {
    let mut r = rng(406);
    for p in [2u32, 3, 5] {
        let aut = tree::wreath_recursion(p);
        let (a, b) = (GroupElement::shift_gen(p, 1), GroupElement::lamp(p, 1, 0));
        for _ in 0..100 {
            let w = random_word(&mut r, p, 0..=8);
            for i in 0..p as usize {
                let shifted = act(&b.pow(i as i64), &w).unwrap();
                assert_eq!(aut.run(i, &w), tree::running_sums(&shifted));
                if p == 2 {
                    assert_eq!(aut.run(i, &w), act(&a.inv().mul(&b.pow(i as i64)), &w).unwrap());
                }
            }
        }
    }
}

#[test]
fn running_sums_are_not_a_group_element_for_odd_p() {
    // on level 3 this would need (1+y)^s = 1+y+y² mod y³ over 𝔽₃
    let words = TreeWord::all(3, 3);
    for g in word_ball(3, 1, 8) {
        assert!(words.iter().any(|w| act(&g, w).unwrap() != tree::running_sums(w)), "{g}");
    }
}

#[test]
fn stabilizers_match_fixed_points() {
    for (p, radius, depth) in [(2u32, 6, 3), (3, 4, 2)] {
        let ball = word_ball(p, 1, radius);
        for m in 0..=depth {
            let level = tree::level_stabilizer(p, m);
            let words = TreeWord::all(p, m);
            for g in &ball {
                let mut fixes_all = true;
                for w in &words {
                    let fixed = act(g, w).unwrap() == *w;
                    assert_eq!(tree::vertex_stabilizer(w).member(g), fixed, "{g} at {w}");
                    fixes_all &= fixed;
                }
                assert_eq!(level.member(g), fixes_all, "{g} at level {m}");
            }
        }
    }
}

fn random_ray(r: &mut ChaCha8Rng, p: u32) -> RaySpec {
    let pre = random_word(r, p, 0..=3);
    let per = random_word(r, p, 1..=3);
    RaySpec::new(pre, per).unwrap()
}

#[test]
fn ray_stabilizers_fix_the_ray_and_are_least() {
    let mut r = rng(404);
    for i in 0..200 {
        let p = [2, 3][i % 2];
        let ray = random_ray(&mut r, p);
        let g = tree::ray_stabilizer(&ray).unwrap();
        assert!(g.s > 0);
        for m in 0..=16 {
            let w = ray.prefix(m);
            assert_eq!(act(&g, &w).unwrap(), w, "{g} moves {w} on {ray}");
        }
        // (1 − x^t)·N/D lies in R exactly for the multiples of s
        let (num, den) = ray.bar_fraction();
        for t in 1..=g.s {
            let c = &LaurentPoly::one(p) - &LaurentPoly::x_pow(p, t);
            let integral = den.to_laurent().divides(&(&c * &num.to_laurent()));
            assert_eq!(integral, t == g.s, "{ray}: t={t}, s={}", g.s);
        }
    }
}

#[test]
fn ray_canonical_form_is_stable() {
    let mut r = rng(405);
    for i in 0..200 {
        let p = [2, 3][i % 2];
        let ray = random_ray(&mut r, p);
        assert_eq!(RaySpec::parse(p, &ray.to_string()).unwrap(), ray);
        // unrolling one period does not change the ray
        let mut pre = ray.preperiod().letters().to_vec();
        pre.extend_from_slice(ray.period().letters());
        let unrolled = RaySpec::new(TreeWord::new(p, pre).unwrap(), ray.period().clone()).unwrap();
        assert_eq!(unrolled, ray);
        assert_eq!(unrolled.prefix(20), ray.prefix(20));
    }
}
