#![allow(dead_code)]

use lamplighter::group::{GroupElement, SubgroupTriple};
use lamplighter::ring::LaurentPoly;
use lamplighter::rmodule::{RVector, Submodule};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_laurent(r: &mut ChaCha8Rng, p: u32, max_len: usize) -> LaurentPoly {
    let len = r.gen_range(0..=max_len);
    let coeffs = (0..len).map(|_| r.gen_range(0..p)).collect();
    LaurentPoly::new(p, r.gen_range(-2..=1), coeffs)
}

pub fn random_vector(r: &mut ChaCha8Rng, p: u32, n: usize, max_len: usize) -> RVector {
    RVector::new(p, (0..n).map(|_| random_laurent(r, p, max_len)).collect())
}

/// A submodule invariant under `x^e`, `e ∈ {1, 2, 3}`, from a few generators.
pub fn random_submodule(r: &mut ChaCha8Rng, p: u32, n: usize) -> Submodule {
    let e = r.gen_range(1..=3);
    let k = r.gen_range(0..=n * e + 1);
    let gens: Vec<RVector> = (0..k).map(|_| random_vector(r, p, n, 4)).collect();
    Submodule::generated(p, n, e, &gens)
}

pub fn random_triple(r: &mut ChaCha8Rng, p: u32, n: usize) -> SubgroupTriple {
    let v0 = random_submodule(r, p, n);
    let e = v0.minimized().declared_exponent() as u64;
    let s = if r.gen_ratio(1, 8) { 0 } else { e * r.gen_range(1..=3) };
    let v = random_vector(r, p, n, 4);
    SubgroupTriple::new(s, v0, v).expect("s is a multiple of the exponent")
}

pub fn random_element(r: &mut ChaCha8Rng, p: u32, n: usize) -> GroupElement {
    GroupElement::new(random_vector(r, p, n, 4), r.gen_range(-4..=4))
}
