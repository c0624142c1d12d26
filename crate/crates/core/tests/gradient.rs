mod common;

use common::rng;
use lamplighter::gradient::{
    core_is_trivial, core_witness, predicted_d, rg, rg_limit_periodic, synthesize_chain, ChainSpec, RgLimit, Step,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_steps(r: &mut ChaCha8Rng, lens: std::ops::RangeInclusive<usize>) -> Vec<Step> {
    let len = r.gen_range(lens);
    (0..len).map(|_| if r.gen_bool(0.5) { Step::Same } else { Step::Expand }).collect()
}

#[test]
fn synthesized_chains_follow_the_generator_rule() {
    let mut r = rng(601);
    for i in 0..60 {
        let p = [2, 3, 5][i % 3];
        let n = 1 + i % 2;
        let steps = random_steps(&mut r, 1..=if p == 5 { 6 } else { 10 });
        let chain = synthesize_chain(&ChainSpec::new(p, n, steps.clone()).unwrap()).unwrap();
        assert_eq!(chain.d_sequence(), predicted_d(p, n + 1, &steps));
        // rg only drops at Same steps, by a factor p
        let values = rg(&chain).unwrap();
        let p_q = BigRational::from_integer(BigInt::from(p));
        for (w, st) in values.windows(2).zip(&steps) {
            match st {
                Step::Same => assert_eq!(&w[0] / &p_q, w[1]),
                Step::Expand => assert_eq!(w[0], w[1]),
            }
        }
    }
}

#[test]
fn periodic_limits_match_long_truncations() {
    let mut r = rng(602);
    for i in 0..40 {
        let p = [2, 3][i % 2];
        let n = 1 + i % 2;
        let prefix = random_steps(&mut r, 0..=3);
        let tail = random_steps(&mut r, 1..=2);
        let limit = rg_limit_periodic(p, n, &prefix, &tail).unwrap();
        let mut steps = prefix.clone();
        let mut values = Vec::new();
        for _ in 0..4 {
            steps.extend(&tail);
            let chain = synthesize_chain(&ChainSpec::new(p, n, steps.clone()).unwrap()).unwrap();
            values.push(rg(&chain).unwrap().pop().unwrap());
        }
        match limit {
            RgLimit::Exact(q) => assert!(values.iter().all(|v| *v == q)),
            RgLimit::Zero => assert!(values.windows(2).all(|w| w[1] < w[0])),
            RgLimit::Estimate(_) => panic!("periodic limits are exact"),
        }
    }
}

#[test]
fn cores_of_expanding_tails() {
    let mut r = rng(603);
    for i in 0..30 {
        let p = [2, 3][i % 2];
        let n = 1 + i % 2;
        let prefix = ChainSpec::new(p, n, random_steps(&mut r, 1..=4)).unwrap();
        assert!(!core_is_trivial(&prefix, &[Step::Expand]).unwrap());
        assert!(core_is_trivial(&prefix, &[Step::Expand, Step::Same]).unwrap());
        let core = core_witness(&prefix).unwrap();
        assert!(!core.is_zero());
        assert!(core.shifted(1).same_set(&core).unwrap());
        let mut steps = prefix.steps.clone();
        steps.extend([Step::Expand; 3]);
        for t in
            synthesize_chain(&ChainSpec::new(p, n, steps).unwrap()).unwrap().triples().iter().skip(prefix.steps.len())
        {
            assert!(t.v0().contains(&core).unwrap());
        }
    }
}

#[test]
fn same_steps_shrink_every_base() {
    // with a Same in the tail the codimension of the base grows without bound
    for (p, n) in [(2u32, 1usize), (3, 2)] {
        let chain = synthesize_chain(&ChainSpec::parse(p, n, &"SE".repeat(4)).unwrap()).unwrap();
        let codims: Vec<usize> = chain.triples().iter().map(|t| t.v0().codim().unwrap()).collect();
        assert!(codims.windows(3).step_by(2).all(|w| w[2] > w[0]));
    }
}
