//! Rank gradients of descending finite-index chains in `𝓛_n`.
//!
//! `rg(m) = (d(H_m) − 1)/[𝓛_n : H_m]`, with `d` read off the isomorphism
//! type (`d(𝓛_k) = k + 1`).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::completion::is_normal_in;
use crate::error::{Error, Result};
use crate::group::SubgroupTriple;
use crate::ring::FpPoly;
use crate::rmodule::{RVector, Submodule};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Step {
    /// Keep the projection, cut the base by one `(1 − x)` factor.
    Same,
    /// Pass to projection `pSℤ`, same base.
    Expand,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::Same => 'S',
            Step::Expand => 'E',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChainSpec {
    pub p: u32,
    pub n: usize,
    pub steps: Vec<Step>,
}

impl ChainSpec {
    pub fn new(p: u32, n: usize, steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Invalid("a chain spec needs at least one step".into()));
        }
        if n == 0 || !crate::ring::is_prime(p as u64) {
            return Err(Error::Invalid(format!("need p prime and n > 0, got p={p} n={n}")));
        }
        Ok(ChainSpec { p, n, steps })
    }

    /// Steps from a pattern such as `"SSE"`.
    pub fn parse(p: u32, n: usize, pattern: &str) -> Result<Self> {
        Self::new(p, n, parse_steps(pattern)?)
    }

    pub fn pattern(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }
}

pub fn parse_steps(pattern: &str) -> Result<Vec<Step>> {
    pattern
        .trim()
        .chars()
        .map(|c| match c.to_ascii_uppercase() {
            'S' => Ok(Step::Same),
            'E' => Ok(Step::Expand),
            _ => Err(Error::Parse(format!("step `{c}` is not S or E"))),
        })
        .collect()
}

/// A descending subnormal chain with prime-index steps.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    triples: Vec<SubgroupTriple>,
}

impl Chain {
    /// Checks inclusion, index `p` and normality of each step.
    pub fn new(triples: Vec<SubgroupTriple>) -> Result<Self> {
        let first = triples.first().ok_or_else(|| Error::Invalid("empty chain".into()))?;
        let p = first.p();
        for (i, w) in triples.windows(2).enumerate() {
            let (big, small) = (&w[0], &w[1]);
            if !small.includes_in(big)? {
                return Err(Error::Invalid(format!("step {i}: not descending")));
            }
            let (a, b) = (big.index().ok_or(Error::InfiniteDimension)?, small.index().ok_or(Error::InfiniteDimension)?);
            if b != a * p {
                return Err(Error::Invalid(format!("step {i}: index is not p")));
            }
            if !is_normal_in(small, big) {
                return Err(Error::Invalid(format!("step {i}: not normal")));
            }
        }
        Ok(Chain { triples })
    }

    pub fn triples(&self) -> &[SubgroupTriple] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn d_sequence(&self) -> Vec<usize> {
        self.triples.iter().map(|t| t.min_generators().expect("finite index")).collect()
    }
}

/// The chain described by `spec`, starting from `H_0 = 𝓛_n`.
///
/// Members are `(S, W, 0)` with `W = ⊕ (1−x)^{c_i} R e_i`. `Same` raises
/// one `c_i` (round-robin), an index-`p` cut containing `(1 − x^S)W`;
/// `Expand` multiplies `S` by `p`. Every base stays `x`-invariant.
pub fn synthesize_chain(spec: &ChainSpec) -> Result<Chain> {
    let (p, n) = (spec.p, spec.n);
    let mut s = 1u64;
    let mut c = vec![0u64; n];
    let mut next = 0usize;
    let mut triples = vec![SubgroupTriple::whole(p, n)];
    for step in &spec.steps {
        match step {
            Step::Same => {
                c[next % n] += 1;
                next += 1;
            }
            Step::Expand => s *= p as u64,
        }
        let gens: Vec<RVector> =
            (0..n).map(|i| RVector::unit(p, n, i).mul_scalar(&FpPoly::one_minus_x(p).pow(c[i]).to_laurent())).collect();
        let v0 = Submodule::generated(p, n, 1, &gens);
        triples.push(SubgroupTriple::new(s, v0, RVector::zero(p, n))?);
    }
    Chain::new(triples)
}

/// `d(H_i)` from the two-case rule, starting at `g0`.
pub fn predicted_d(p: u32, g0: usize, steps: &[Step]) -> Vec<usize> {
    let mut out = vec![g0];
    for st in steps {
        let g = *out.last().unwrap();
        out.push(match st {
            Step::Same => g,
            Step::Expand => p as usize * g - p as usize + 1,
        });
    }
    out
}

/// `rg(m)` for every member of the chain.
pub fn rg(chain: &Chain) -> Result<Vec<BigRational>> {
    chain
        .triples
        .iter()
        .map(|t| {
            let idx = t.index().ok_or(Error::InfiniteDimension)?;
            let d = t.min_generators().ok_or(Error::InfiniteDimension)?;
            Ok(BigRational::new(BigInt::from(d) - 1, BigInt::from(idx)))
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RgLimit {
    Exact(BigRational),
    Zero,
    /// No pattern recognised; the last computed value.
    Estimate(BigRational),
}

impl fmt::Display for RgLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RgLimit::Exact(q) => write!(f, "{q}"),
            RgLimit::Zero => f.write_str("0"),
            RgLimit::Estimate(q) => write!(f, "~{q}"),
        }
    }
}

/// Limit guessed from the tail of a finite `rg` sequence: constant over the
/// last three terms, or shrinking by a factor `≤ 1/2` at each of them.
pub fn rg_limit(chain: &Chain) -> Result<RgLimit> {
    let r = rg(chain)?;
    let last = r.last().cloned().unwrap_or_else(BigRational::zero);
    if last.is_zero() {
        return Ok(RgLimit::Zero);
    }
    if r.len() >= 3 {
        let t = &r[r.len() - 3..];
        if t[0] == t[1] && t[1] == t[2] {
            return Ok(RgLimit::Exact(last));
        }
        let half = BigRational::new(One::one(), BigInt::from(2));
        if t.windows(2).all(|w| &w[1] / &w[0] <= half) {
            return Ok(RgLimit::Zero);
        }
    }
    Ok(RgLimit::Estimate(last))
}

/// Exact limit for the infinite pattern `prefix · tail · tail · …`.
pub fn rg_limit_periodic(p: u32, n: usize, prefix: &[Step], tail: &[Step]) -> Result<RgLimit> {
    if tail.is_empty() {
        return Err(Error::Invalid("the periodic tail is nonempty".into()));
    }
    if tail.contains(&Step::Same) {
        return Ok(RgLimit::Zero);
    }
    let same = prefix.iter().filter(|&&s| s == Step::Same).count();
    let den = num_traits::pow(BigInt::from(p), same);
    Ok(RgLimit::Exact(BigRational::new(BigInt::from(n), den)))
}

/// Whether the chain `prefix · tail · tail · …` has trivial core.
///
/// The codimension of the base grows without bound exactly when the tail
/// contains a `Same` step. Otherwise the base after the prefix lies in
/// every later member; see [`core_witness`].
pub fn core_is_trivial(_prefix: &ChainSpec, tail: &[Step]) -> Result<bool> {
    if tail.is_empty() {
        return Err(Error::Invalid("the periodic tail is nonempty".into()));
    }
    Ok(tail.contains(&Step::Same))
}

/// For a prefix followed only by `Expand` steps: `∩_{i<e} x^i W` for the
/// last member `(S, W, w)`, `e` the exponent of `W`. It is normal in `𝓛_n`,
/// nonzero, and lies in every later member.
pub fn core_witness(prefix: &ChainSpec) -> Result<Submodule> {
    let chain = synthesize_chain(prefix)?;
    let last = chain.triples.last().unwrap();
    let mut core = last.v0().clone();
    for i in 1..core.declared_exponent() as i64 {
        core = core.intersect(&last.v0().shifted(i))?;
    }
    Ok(core)
}
