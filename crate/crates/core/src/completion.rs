//! Pro-`p` completion data and closure tests.
//!
//! `𝔽_p[[ℤ_p]]` is modelled by truncated power series in `t = x − 1`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{GroupElement, SubgroupTriple};
use crate::ring::{FpPoly, LaurentPoly};
use crate::rmodule::{smith_form, RMatrix, RVector, Submodule};

/// `Σ cᵢtⁱ + O(t^N)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    p: u32,
    c: Vec<u32>,
}

impl TruncatedSeries {
    pub fn new(p: u32, mut c: Vec<u32>, n: usize) -> Self {
        c.resize(n, 0);
        for a in c.iter_mut() {
            *a %= p;
        }
        TruncatedSeries { p, c }
    }

    pub fn one(p: u32, n: usize) -> Self {
        Self::new(p, vec![1], n)
    }

    pub fn precision(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        let c = (0..n).map(|i| (self.c[i] + o.c[i]) % self.p).collect();
        TruncatedSeries { p: self.p, c }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        let p = self.p as u64;
        let mut c = vec![0u64; n];
        for (i, &a) in self.c.iter().enumerate().take(n) {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate().take(n - i) {
                c[i + j] = (c[i + j] + a as u64 * b as u64) % p;
            }
        }
        TruncatedSeries { p: self.p, c: c.into_iter().map(|a| a as u32).collect() }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Self::one(self.p, self.precision());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        acc
    }

    /// `t`-adic valuation, `None` if zero to this precision.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|&a| a != 0)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (a, i) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "t^{i}")?,
                (_, 1) => write!(f, "{a}*t")?,
                _ => write!(f, "{a}*t^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, "+O(t^{})", self.precision())
    }
}

/// A finite prefix `a₀ + a₁p + …` of a `p`-adic integer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PAdicDigits {
    p: u32,
    digits: Vec<u32>,
}

impl PAdicDigits {
    pub fn new(p: u32, digits: Vec<u32>) -> Result<Self> {
        if digits.iter().any(|&d| d >= p) {
            return Err(Error::Invalid(format!("digits must lie in [0,{p})")));
        }
        Ok(PAdicDigits { p, digits })
    }

    /// First `m` digits of an integer (negative values included).
    pub fn from_i64(p: u32, a: i64, m: usize) -> Self {
        let modulus = (p as i128).pow(m as u32);
        let mut r = (a as i128).rem_euclid(modulus);
        let mut digits = Vec::with_capacity(m);
        for _ in 0..m {
            digits.push((r % p as i128) as u32);
            r /= p as i128;
        }
        PAdicDigits { p, digits }
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }
}

/// Image of `f` under `x ↦ 1 + t`.
pub fn embed(f: &LaurentPoly, n: usize) -> TruncatedSeries {
    let p = f.p();
    if f.is_zero() {
        return TruncatedSeries::new(p, vec![], n);
    }
    let one_plus_t = TruncatedSeries::new(p, vec![1, 1], n);
    // Horner on the polynomial body
    let mut acc = TruncatedSeries::new(p, vec![], n);
    for &a in f.body().coeffs().iter().rev() {
        acc = acc.mul(&one_plus_t).add(&TruncatedSeries::new(p, vec![a], n));
    }
    let val = f.valuation().unwrap();
    let shift = if val >= 0 {
        one_plus_t.pow(val as u64)
    } else {
        // (1+t)^{-1} = Σ (−t)^i
        let inv: Vec<u32> = (0..n).map(|i| if i % 2 == 0 { 1 } else { p - 1 }).collect();
        TruncatedSeries::new(p, inv, n).pow((-val) as u64)
    };
    acc.mul(&shift)
}

/// `(1+t)^a = Π (1+t^{pⁱ})^{aᵢ}` to precision `n`.
pub fn unit_power(a: &PAdicDigits, n: usize) -> TruncatedSeries {
    let p = a.p;
    let mut acc = TruncatedSeries::one(p, n);
    let mut pi = 1usize;
    for &d in &a.digits {
        if pi >= n {
            break;
        }
        if d > 0 {
            let mut c = vec![0u32; pi + 1];
            c[0] = 1;
            c[pi] = 1;
            acc = acc.mul(&TruncatedSeries::new(p, c, n).pow(d as u64));
        }
        pi = pi.saturating_mul(p as usize);
    }
    acc
}

/// `g·𝔽_p[[ℤ_p]] ∩ R = (1−x)^c R`, returned as `(1−x)^c`.
pub fn need1_intersect(g: &LaurentPoly) -> Result<FpPoly> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let p = g.p();
    let lin = FpPoly::one_minus_x(p);
    let mut body = g.body().clone();
    let mut c = 0u64;
    while let Some(q) = body.div_exact(&lin) {
        body = q;
        c += 1;
    }
    Ok(lin.pow(c))
}

/// `Rⁿ = ⊕ R^{p^e}h_j`, `U = ⊕ (R d_j)^{p^e} h_j`.
#[derive(Clone, Debug)]
pub struct Need2Decomposition {
    pub exponent: usize,
    /// The `h_j`, as elements of `Rⁿ`.
    pub h: Vec<RVector>,
    /// The `d_j` in the rebased variable; zero for the free part.
    pub d: Vec<FpPoly>,
    /// `det* U` is a power of `1 − x`.
    pub closed: bool,
}

pub fn need2_decompose(u: &Submodule) -> Result<Need2Decomposition> {
    let u = u.minimized();
    let p = u.p();
    let e = u.declared_exponent();
    if !is_power_of(p as u64, e as u64) {
        return Err(Error::Invalid(format!("exponent {e} is not a power of {p}")));
    }
    let k = u.ambient_rank();
    let (d, h) = if u.is_zero() {
        (vec![FpPoly::zero(p); k], RMatrix::identity(p, k))
    } else {
        let g = RMatrix::new(p, k, u.rows().to_vec());
        let sd = smith_form(&g);
        let mut d = sd.diagonal();
        d.resize(k, FpPoly::zero(p));
        (d, sd.b)
    };
    let hv = h.rows().iter().map(|r| RVector::unrebase(p, r, e)).collect();
    let det: FpPoly = d.iter().filter(|x| !x.is_zero()).fold(FpPoly::one(p), |a, b| &a * b);
    Ok(Need2Decomposition { exponent: e, h: hv, d, closed: is_power_of_one_minus_x(&det) })
}

pub fn is_power_of(p: u64, mut e: u64) -> bool {
    if e == 0 {
        return false;
    }
    while e.is_multiple_of(p) {
        e /= p;
    }
    e == 1
}

fn is_power_of_one_minus_x(f: &FpPoly) -> bool {
    let lin = FpPoly::one_minus_x(f.p());
    let mut g = f.const_normalized();
    while g.degree().is_some_and(|d| d > 0) {
        match g.div_exact(&lin) {
            Some(q) => g = q,
            None => return false,
        }
    }
    g.is_one()
}

/// Exponent of `p` in `s`.
pub fn p_valuation(p: u32, mut s: u64) -> u32 {
    assert!(s > 0);
    let mut k = 0;
    while s.is_multiple_of(p as u64) {
        s /= p as u64;
        k += 1;
    }
    k
}

/// Closure in the profinite topology. Every triple the data model can
/// express is closed: `s > 0` always is, and a submodule of finite
/// exponent is an intersection of finite-index submodules.
pub fn is_profinitely_closed(_t: &SubgroupTriple) -> bool {
    true
}

/// Closure in the pro-`p` topology.
pub fn is_pro_p_closed(t: &SubgroupTriple) -> bool {
    let p = t.p();
    let v0 = t.v0();
    let e = v0.declared_exponent() as u64;
    let det_ok = is_power_of_one_minus_x(&v0.det_star_at_declared());
    if t.s() == 0 {
        // the closure is x^{p^a}-invariant, so a closed V₀ has p-power exponent
        return is_power_of(p as u64, e) && det_ok;
    }
    let s = t.s();
    let a = p_valuation(p, s);
    let pa = (p as u64).pow(a);
    if !pa.is_multiple_of(e) || !det_ok {
        return false;
    }
    if s == pa {
        return true;
    }
    let (n, v) = (t.n(), t.v());
    let xs1 = LaurentPoly::x_pow(p, s as i64) - LaurentPoly::one(p);
    let lin = (LaurentPoly::x_pow(p, 1) - LaurentPoly::one(p)).body().pow(pa).to_laurent();
    let first =
        Submodule::generated(p, n, 1, &(0..n).map(|i| RVector::unit(p, n, i).mul_scalar(&xs1)).collect::<Vec<_>>());
    let w = first.sum(&v0.scaled(&lin)).expect("same ambient");
    (1..s / pa).all(|j| {
        let q = (j * pa) as i64;
        let xq1 = LaurentPoly::x_pow(p, q) - LaurentPoly::one(p);
        !w.contains_vector(&v.mul_scalar(&xq1))
    })
}

/// Finite-index criterion for `𝓛_1`: `s = p^t` and
/// `V₀ ⊇ (1 − x^{p^N})𝒜_1` for some `N ≥ t`.
pub fn n1_pro_p_criterion(t: &SubgroupTriple) -> Result<bool> {
    if t.n() != 1 {
        return Err(Error::Invalid("criterion is for n = 1".into()));
    }
    let codim = match (t.s(), t.v0().codim()) {
        (s, Some(c)) if s > 0 => c as u32,
        _ => return Err(Error::Invalid("finite index required".into())),
    };
    let p = t.p();
    if !is_power_of(p as u64, t.s()) {
        return Ok(false);
    }
    let tt = p_valuation(p, t.s());
    for big_n in tt..=tt + codim {
        let f = FpPoly::one_minus_x_pow(p, (p as usize).pow(big_n)).to_laurent();
        let e = t.v0().declared_exponent() as i64;
        if (0..e).all(|i| t.v0().contains_vector(&RVector::new(p, vec![f.shift(i)]))) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `sub ◁ sup` for `sub ⊆ sup`, with `sub = (s′, V′, v′)`, `sup = (s, W, w)`.
///
/// Conjugating by lamps of `W` needs `(1 − x^{s′})W ⊆ V′`; conjugating by
/// `(w, s)` needs `x^s V′ = V′` and `(1 − x^{s′})w + (x^s − 1)v′ ∈ V′`.
pub fn is_normal_in(sub: &SubgroupTriple, sup: &SubgroupTriple) -> bool {
    let p = sub.p();
    let (s1, v1) = (sub.s() as i64, sub.v0());
    let s = sup.s() as i64;
    let one = LaurentPoly::one(p);
    let c1 = &one - &LaurentPoly::x_pow(p, s1);
    let l = v1.declared_exponent().lcm(&sup.v0().declared_exponent());
    if !sup.v0().generators_at(l).iter().all(|g| v1.contains_vector(&g.mul_scalar(&c1))) {
        return false;
    }
    if s > 0 && s % v1.declared_exponent() as i64 != 0 {
        return false;
    }
    if s1 == 0 && s == 0 {
        return true;
    }
    let c = &LaurentPoly::x_pow(p, s) - &one;
    v1.contains_vector(&sup.v().mul_scalar(&c1).add(&sub.v().mul_scalar(&c)))
}

/// A subnormal chain `𝓛_n = H_1 ⊃ … ⊃ H_k = t` with index-`p` steps,
/// for a finite-index pro-`p` closed `t`.
pub fn p_chain_witness(t: &SubgroupTriple) -> Result<Vec<SubgroupTriple>> {
    let (p, n) = (t.p(), t.n());
    if t.index().is_none() {
        return Err(Error::Invalid("finite index required".into()));
    }
    if !is_pro_p_closed(t) {
        return Err(Error::Invalid(format!("{t} is not pro-p closed")));
    }
    let s = t.s();
    let mut chain = Vec::new();
    let mut q = 1;
    while q <= s {
        chain.push(SubgroupTriple::base_times(p, n, q));
        q *= p as u64;
    }
    // Inside 𝒜 ⋊ sℤ, with T the rebased target and e_c the unit vectors:
    // L_c = T + ⟨e_0..e_{c−1}⟩ drops to L_{c−1} through L_{c−1} + (1−y)^i e_c.
    // The pivot of column c is (1−y)^{d_c}, since det* is a power of 1 − x.
    let se = s as usize;
    let k = n * se;
    let target = t.v0().at_exponent(se);
    let unit = |c: usize, a: LaurentPoly| {
        let mut r = vec![LaurentPoly::zero(p); k];
        r[c] = a;
        r
    };
    for c in (0..k).rev() {
        let d = target.rows()[c][c].deg_star()?;
        for i in 1..=d {
            let mut rows = target.rows().to_vec();
            rows.extend((0..c).map(|j| unit(j, LaurentPoly::one(p))));
            rows.push(unit(c, FpPoly::one_minus_x(p).pow(i as u64).to_laurent()));
            let w = Submodule::from_rebased(p, n, se, rows);
            chain.push(SubgroupTriple::new(s, w, t.v().clone())?);
        }
    }
    Ok(chain)
}

/// Checks the chain properties; returns the depth on success.
pub fn verify_p_chain(chain: &[SubgroupTriple]) -> Result<usize> {
    let first = chain.first().ok_or(Error::ZeroInput)?;
    if *first != SubgroupTriple::whole(first.p(), first.n()) {
        return Err(Error::Invalid("chain must start at the whole group".into()));
    }
    let p = num_bigint::BigUint::from(first.p());
    for w in chain.windows(2) {
        let (big, small) = (&w[0], &w[1]);
        if !small.includes_in(big)? {
            return Err(Error::Invalid(format!("{small} is not inside {big}")));
        }
        if crate::group::relative_index(small, big) != Some(p.clone()) {
            return Err(Error::Invalid(format!("[{big} : {small}] is not p")));
        }
        if !is_normal_in(small, big) {
            return Err(Error::Invalid(format!("{small} is not normal in {big}")));
        }
    }
    Ok(chain.len() - 1)
}

/// Membership of `g` in `H_0 ∩ … ∩ H_depth`.
pub fn chain_member(chain: &[SubgroupTriple], depth: usize, g: &GroupElement) -> bool {
    chain.iter().take(depth + 1).all(|h| h.member(g))
}
