//! Polynomials over 𝔽_p and Laurent polynomials `R = 𝔽_p[x, x⁻¹]`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::error::Error;

pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p as u64 - 2, p)
}

pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Residue of a (possibly negative) integer.
pub(crate) fn residue(a: i64, p: u32) -> u32 {
    a.rem_euclid(p as i64) as u32
}

/// A polynomial over 𝔽_p, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpPoly {
    p: u32,
    c: Vec<u32>,
}

impl FpPoly {
    pub fn new(p: u32, mut coeffs: Vec<u32>) -> Self {
        for a in coeffs.iter_mut() {
            *a %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, c: coeffs }
    }

    pub fn from_i64(p: u32, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&a| residue(a, p)).collect())
    }

    pub fn zero(p: u32) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u32, a: u32) -> Self {
        Self::new(p, vec![a])
    }

    pub fn x(p: u32) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn monomial(p: u32, a: u32, d: usize) -> Self {
        let mut c = vec![0; d + 1];
        c[d] = a;
        Self::new(p, c)
    }

    /// `1 - x`.
    pub fn one_minus_x(p: u32) -> Self {
        Self::new(p, vec![1, p - 1])
    }

    /// `1 - x^s`.
    pub fn one_minus_x_pow(p: u32, s: usize) -> Self {
        if s == 0 {
            return Self::zero(p);
        }
        let mut c = vec![0; s + 1];
        c[0] = 1;
        c[s] = p - 1;
        Self::new(p, c)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, a: u32) -> u32 {
        let mut r = 0u32;
        for &ci in self.c.iter().rev() {
            r = ((r as u64 * a as u64 + ci as u64) % self.p as u64) as u32;
        }
        r
    }

    fn check(&self, o: &FpPoly) -> Result<(), Error> {
        if self.p != o.p {
            return Err(Error::ModulusMismatch(self.p, o.p));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &FpPoly) -> Result<FpPoly, Error> {
        self.check(o)?;
        Ok(self.add_unchecked(o))
    }

    pub fn try_mul(&self, o: &FpPoly) -> Result<FpPoly, Error> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    fn add_unchecked(&self, o: &FpPoly) -> FpPoly {
        let p = self.p;
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let s = self.coeff(i) + o.coeff(i);
            c.push(if s >= p { s - p } else { s });
        }
        FpPoly::new(p, c)
    }

    fn mul_unchecked(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        FpPoly::new(self.p, acc.into_iter().map(|v| v as u32).collect())
    }

    pub fn scale(&self, a: u32) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&ci| mul_mod(ci, a, self.p)).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.c);
        FpPoly { p: self.p, c }
    }

    /// `(q, r)` with `self = q·d + r` and `deg r < deg d`.
    pub fn div_rem(&self, d: &FpPoly) -> Result<(FpPoly, FpPoly), Error> {
        self.check(d)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        let dd = d.c.len() - 1;
        if self.c.len() <= dd {
            return Ok((FpPoly::zero(p), self.clone()));
        }
        let inv = inv_mod(d.lead(), p);
        let mut r = self.c.clone();
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let a = r[i];
            if a == 0 {
                continue;
            }
            let f = mul_mod(a, inv, p);
            q[i - dd] = f;
            let nf = neg_mod(f, p) as u64;
            for (j, &dj) in d.c.iter().enumerate() {
                let k = i - dd + j;
                r[k] = ((r[k] as u64 + nf * dj as u64) % p as u64) as u32;
            }
        }
        r.truncate(dd);
        Ok((FpPoly::new(p, q), FpPoly::new(p, r)))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).expect("nonzero divisor").1
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &FpPoly) -> Option<FpPoly> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, f: &FpPoly) -> bool {
        if self.is_zero() {
            return f.is_zero();
        }
        f.rem(self).is_zero()
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lead(), self.p))
    }

    /// Scale so that the constant term is 1; unchanged if it is 0.
    pub fn const_normalized(&self) -> FpPoly {
        match self.c.first() {
            Some(&a) if a != 0 => self.scale(inv_mod(a, self.p)),
            _ => self.clone(),
        }
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let ns = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, ns);
            let nt = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, nt);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let u = inv_mod(r0.lead(), p);
        (r0.scale(u), s0.scale(u), t0.scale(u))
    }

    pub fn pow(&self, mut e: u64) -> FpPoly {
        let mut base = self.clone();
        let mut r = FpPoly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        r
    }

    /// `x^e mod m`.
    fn x_pow_mod(e: u64, m: &FpPoly) -> FpPoly {
        let p = m.p;
        let mut base = FpPoly::x(p).rem(m);
        let mut r = FpPoly::one(p).rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = (&r * &base).rem(m);
            }
            base = (&base * &base).rem(m);
            e >>= 1;
        }
        r
    }

    /// `f(x^s)`.
    pub fn subs_pow(&self, s: usize) -> FpPoly {
        if self.is_zero() || s == 1 {
            return self.clone();
        }
        let mut c = vec![0; (self.c.len() - 1) * s + 1];
        for (i, &a) in self.c.iter().enumerate() {
            c[i * s] = a;
        }
        FpPoly::new(self.p, c)
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(_) => {
                let f = self.factor().expect("nonzero");
                f.len() == 1 && f[0].1 == 1
            }
        }
    }

    /// Factorization into irreducibles with multiplicities. Factors other
    /// than `x` have constant term 1; the unit is dropped.
    pub fn factor(&self) -> Result<Vec<(FpPoly, u32)>, Error> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let p = self.p;
        let mut out = Vec::new();
        let xk = self.c.iter().take_while(|&&a| a == 0).count();
        if xk > 0 {
            out.push((FpPoly::x(p), xk as u32));
        }
        let mut g = FpPoly::new(p, self.c[xk..].to_vec()).const_normalized();
        let mut d = 1usize;
        while g.c.len() > 2 * d {
            let mut cand = NormalizedPolys::new(p, d);
            while let Some(q) = cand.next_poly() {
                let mut mult = 0;
                while let Some(h) = g.div_exact(&q) {
                    g = h;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((q, mult));
                }
                if g.c.len() <= 2 * d {
                    break;
                }
            }
            d += 1;
        }
        if g.c.len() > 1 {
            let g = g.const_normalized();
            match out.iter_mut().find(|(q, _)| *q == g) {
                Some(e) => e.1 += 1,
                None => out.push((g, 1)),
            }
        }
        out.sort_by(|a, b| a.0.cmp_deg_lex(&b.0));
        Ok(out)
    }

    /// Degree first, then coefficients from the top.
    pub fn cmp_deg_lex(&self, o: &FpPoly) -> Ordering {
        self.c.len().cmp(&o.c.len()).then_with(|| self.c.iter().rev().cmp(o.c.iter().rev()))
    }

    /// Least `s > 0` with `self | 1 - x^s`.
    pub fn ord_x_mod(&self) -> Result<u64, Error> {
        if self.is_zero() || self.c[0] == 0 {
            return Err(Error::ConstantTermZero);
        }
        let p = self.p as u64;
        let mut ord = 1u64;
        for (q, a) in self.factor()? {
            let d = q.degree().unwrap() as u32;
            let mut m = p.pow(d) - 1;
            for r in prime_factors(m) {
                while m.is_multiple_of(r) && Self::x_pow_mod(m / r, &q).is_one() {
                    m /= r;
                }
            }
            let mut pc = 1u64;
            while pc < a as u64 {
                pc *= p;
            }
            ord = ord.lcm(&(m * pc));
        }
        Ok(ord)
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_poly(self)
    }

    pub fn parse(p: u32, s: &str) -> Result<FpPoly, Error> {
        let l = LaurentPoly::parse(p, s)?;
        l.to_poly().ok_or_else(|| Error::Parse(format!("negative exponent in polynomial `{s}`")))
    }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Iterates the polynomials of a fixed degree with constant term 1
/// (degree 1 over 𝔽₂ gives just `1+x`).
pub struct NormalizedPolys {
    p: u32,
    cur: Vec<u32>,
    done: bool,
}

impl NormalizedPolys {
    pub fn new(p: u32, d: usize) -> Self {
        let mut cur = vec![0; d + 1];
        cur[0] = 1;
        cur[d] = 1;
        NormalizedPolys { p, cur, done: false }
    }

    pub fn next_poly(&mut self) -> Option<FpPoly> {
        if self.done {
            return None;
        }
        let out = FpPoly::new(self.p, self.cur.clone());
        let d = self.cur.len() - 1;
        // odometer over positions 1..d-1 then leading coefficient 1..p-1
        let mut i = 1;
        loop {
            if i >= d {
                if d == 0 || self.cur[d] + 1 >= self.p {
                    self.done = true;
                } else {
                    self.cur[d] += 1;
                    for c in &mut self.cur[1..d] {
                        *c = 0;
                    }
                }
                break;
            }
            self.cur[i] += 1;
            if self.cur[i] < self.p {
                break;
            }
            self.cur[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

impl Iterator for NormalizedPolys {
    type Item = FpPoly;
    fn next(&mut self) -> Option<FpPoly> {
        self.next_poly()
    }
}

/// All polynomials of degree `< d` (including zero), by coefficient odometer.
pub fn polys_below_degree(p: u32, d: usize) -> impl Iterator<Item = FpPoly> {
    let total = (p as u64).pow(d as u32);
    (0..total).map(move |mut k| {
        let mut c = Vec::with_capacity(d);
        for _ in 0..d {
            c.push((k % p as u64) as u32);
            k /= p as u64;
        }
        FpPoly::new(p, c)
    })
}

macro_rules! forward_binop {
    ($ty:ident, $tr:ident, $m:ident, $body:expr) => {
        impl $tr<&$ty> for &$ty {
            type Output = $ty;
            fn $m(self, o: &$ty) -> $ty {
                assert_eq!(self.p(), o.p(), "modulus mismatch");
                let f: fn(&$ty, &$ty) -> $ty = $body;
                f(self, o)
            }
        }
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, o: $ty) -> $ty {
                (&self).$m(&o)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, o: &$ty) -> $ty {
                (&self).$m(o)
            }
        }
    };
}

forward_binop!(FpPoly, Add, add, |a, b| a.add_unchecked(b));
forward_binop!(FpPoly, Sub, sub, |a, b| a.add_unchecked(&-b));
forward_binop!(FpPoly, Mul, mul, |a, b| a.mul_unchecked(b));

impl Neg for &FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&a| neg_mod(a, self.p)).collect())
    }
}

impl Neg for FpPoly {
    type Output = FpPoly;
    fn neg(self) -> FpPoly {
        -&self
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, 0, &self.c)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, val: i64, c: &[u32]) -> fmt::Result {
    let mut first = true;
    for (i, &a) in c.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !first {
            f.write_str("+")?;
        }
        first = false;
        let e = val + i as i64;
        match (a, e) {
            (_, 0) => write!(f, "{a}")?,
            (1, 1) => f.write_str("x")?,
            (1, _) => write!(f, "x^{e}")?,
            (_, 1) => write!(f, "{a}*x")?,
            _ => write!(f, "{a}*x^{e}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// `x^val · body(x)` with `body(0) ≠ 0`, or zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    val: i64,
    body: FpPoly,
}

impl LaurentPoly {
    pub fn new(p: u32, val: i64, coeffs: Vec<u32>) -> Self {
        Self::normalize(val, FpPoly::new(p, coeffs))
    }

    fn normalize(val: i64, body: FpPoly) -> Self {
        if body.is_zero() {
            return LaurentPoly { val: 0, body };
        }
        let z = body.c.iter().take_while(|&&a| a == 0).count();
        if z == 0 {
            return LaurentPoly { val, body };
        }
        LaurentPoly { val: val + z as i64, body: FpPoly { p: body.p, c: body.c[z..].to_vec() } }
    }

    pub fn from_poly(f: &FpPoly) -> Self {
        Self::normalize(0, f.clone())
    }

    pub fn zero(p: u32) -> Self {
        LaurentPoly { val: 0, body: FpPoly::zero(p) }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u32, a: u32) -> Self {
        Self::normalize(0, FpPoly::constant(p, a))
    }

    pub fn monomial(p: u32, a: u32, k: i64) -> Self {
        Self::normalize(k, FpPoly::constant(p, a))
    }

    pub fn x_pow(p: u32, k: i64) -> Self {
        Self::monomial(p, 1, k)
    }

    pub fn p(&self) -> u32 {
        self.body.p
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.val == 0 && self.body.is_one()
    }

    /// Units of `R` are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.body.c.len() == 1
    }

    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    pub fn top_degree(&self) -> Option<i64> {
        self.body.degree().map(|d| self.val + d as i64)
    }

    pub fn body(&self) -> &FpPoly {
        &self.body
    }

    /// Coefficient of `x^k`.
    pub fn coeff(&self, k: i64) -> u32 {
        if k < self.val {
            return 0;
        }
        self.body.coeff((k - self.val) as usize)
    }

    /// Nonzero terms `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.body.c.iter().enumerate().filter(|(_, &a)| a != 0).map(move |(i, &a)| (self.val + i as i64, a))
    }

    /// `dim_𝔽p R/fR`: top exponent minus bottom exponent.
    pub fn deg_star(&self) -> Result<usize, Error> {
        self.body.degree().ok_or(Error::InfiniteDimension)
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { val: self.val + k, body: self.body.clone() }
    }

    /// `f(x^s)` for `s ≥ 1`.
    pub fn subs_pow(&self, s: usize) -> Self {
        LaurentPoly { val: self.val * s as i64, body: self.body.subs_pow(s) }
    }

    pub fn scale(&self, a: u32) -> Self {
        Self::normalize(self.val, self.body.scale(a))
    }

    pub fn eval_at_one(&self) -> u32 {
        self.body.eval(1)
    }

    /// The generator of `R·self` lying in 𝔽_p[x] with constant term 1.
    pub fn normalize_generator(&self) -> Result<FpPoly, Error> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(self.body.const_normalized())
    }

    /// `(c, k, g)` with `self = c·x^k·g`, `g(0) = 1`.
    pub fn split_unit(&self) -> Option<(u32, i64, FpPoly)> {
        if self.is_zero() {
            return None;
        }
        let c = self.body.c[0];
        Some((c, self.val, self.body.scale(inv_mod(c, self.p()))))
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit().then(|| Self::monomial(self.p(), inv_mod(self.body.c[0], self.p()), -self.val))
    }

    pub fn to_poly(&self) -> Option<FpPoly> {
        if self.is_zero() {
            return Some(self.body.clone());
        }
        (self.val >= 0).then(|| self.body.shift(self.val as usize))
    }

    pub fn div_exact(&self, d: &LaurentPoly) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let q = self.body.div_exact(&d.body)?;
        Some(Self::normalize(self.val - d.val, q))
    }

    pub fn divides(&self, a: &LaurentPoly) -> bool {
        if self.is_zero() {
            return a.is_zero();
        }
        a.is_zero() || self.body.divides(&a.body)
    }

    /// Canonical residue modulo `f` (`f(0) = 1`): the unique representative
    /// in 𝔽_p[x] of degree `< deg f`, together with the exact quotient.
    pub fn div_rem_canonical(&self, f: &FpPoly) -> (LaurentPoly, FpPoly) {
        let p = self.p();
        let d = f.degree().expect("nonzero modulus");
        if d == 0 {
            let q = self.scale(inv_mod(f.c[0], p));
            return (q, FpPoly::zero(p));
        }
        if self.is_zero() {
            return (self.clone(), FpPoly::zero(p));
        }
        if self.val >= 0 {
            let a = self.body.shift(self.val as usize);
            let (q, r) = a.div_rem(f).expect("nonzero");
            return (LaurentPoly::from_poly(&q), r);
        }
        // x^{-k}·b mod f via x^{-1} mod f.
        let k = (-self.val) as u64;
        let (_, s, _) = FpPoly::x(p).ext_gcd(f);
        let xinv = s.rem(f);
        let r = (&self.body.rem(f) * &pow_poly_mod(&xinv, k, f)).rem(f);
        let num = &self.body - &r.shift(k as usize);
        let q = num.div_exact(f).expect("residue is exact");
        (LaurentPoly::normalize(self.val, q), r)
    }

    pub fn parse(p: u32, s: &str) -> Result<LaurentPoly, Error> {
        parse_laurent(p, s)
    }
}

fn pow_poly_mod(a: &FpPoly, mut e: u64, m: &FpPoly) -> FpPoly {
    let mut base = a.rem(m);
    let mut r = FpPoly::one(a.p).rem(m);
    while e > 0 {
        if e & 1 == 1 {
            r = (&r * &base).rem(m);
        }
        base = (&base * &base).rem(m);
        e >>= 1;
    }
    r
}

impl LaurentPoly {
    fn add_unchecked(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let p = self.p();
        let lo = self.val.min(o.val);
        let hi = self.top_degree().unwrap().max(o.top_degree().unwrap());
        let mut c = vec![0u32; (hi - lo + 1) as usize];
        for (e, a) in self.terms().chain(o.terms()) {
            let slot = &mut c[(e - lo) as usize];
            *slot += a;
            if *slot >= p {
                *slot -= p;
            }
        }
        let mut body = FpPoly { p, c };
        while body.c.last() == Some(&0) {
            body.c.pop();
        }
        Self::normalize(lo, body)
    }

    fn mul_unchecked(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero(self.p());
        }
        // bodies have nonzero constant terms, so the product does too
        LaurentPoly { val: self.val + o.val, body: self.body.mul_unchecked(&o.body) }
    }
}

forward_binop!(LaurentPoly, Add, add, |a, b| a.add_unchecked(b));
forward_binop!(LaurentPoly, Sub, sub, |a, b| a.add_unchecked(&-b));
forward_binop!(LaurentPoly, Mul, mul, |a, b| a.mul_unchecked(b));

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { val: self.val, body: -&self.body }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.val, &self.body.c)
    }
}

/// `φ_t(x^s)`, with `φ_t(x^s)(1 - x^s) = 1 - x^{ts}` for every integer `t`.
pub fn phi(p: u32, t: i64, s: i64) -> LaurentPoly {
    assert!(s >= 1, "phi needs a positive exponent");
    if t == 0 {
        return LaurentPoly::zero(p);
    }
    if t > 0 {
        let mut c = vec![0u32; ((t - 1) * s + 1) as usize];
        for i in 0..t {
            c[(i * s) as usize] = 1;
        }
        return LaurentPoly::new(p, 0, c);
    }
    -(phi(p, -t, s).shift(t * s))
}

/// Bezout data in `R`: `(g, s, t)` with `s·a + t·b = g`, `g ∈ 𝔽_p[x]`,
/// `g(0) = 1` (or `g = 0` when both inputs vanish).
pub fn bezout(a: &LaurentPoly, b: &LaurentPoly) -> (FpPoly, LaurentPoly, LaurentPoly) {
    let p = a.p();
    let z = LaurentPoly::zero(p);
    match (a.split_unit(), b.split_unit()) {
        (None, None) => (FpPoly::zero(p), z.clone(), z),
        (Some((c, k, g)), None) => (g, LaurentPoly::monomial(p, inv_mod(c, p), -k), z),
        (None, Some((c, k, g))) => (g, z, LaurentPoly::monomial(p, inv_mod(c, p), -k)),
        (Some((ca, ka, ga)), Some((cb, kb, gb))) => {
            let (g, s0, t0) = ga.ext_gcd(&gb);
            // monic gcd of polys with constant term 1 has nonzero constant term
            let u = inv_mod(g.coeff(0), p);
            let g = g.scale(u);
            let s = LaurentPoly::normalize(-ka, s0.scale(mul_mod(u, inv_mod(ca, p), p)));
            let t = LaurentPoly::normalize(-kb, t0.scale(mul_mod(u, inv_mod(cb, p), p)));
            (g, s, t)
        }
    }
}

fn parse_laurent(p: u32, src: &str) -> Result<LaurentPoly, Error> {
    let err = |m: &str| Error::Parse(format!("{m} in polynomial `{src}`"));
    let s: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    let mut i = 0;
    let mut acc = LaurentPoly::zero(p);
    let read_int = |i: &mut usize| -> Option<i64> {
        let start = *i;
        while *i < s.len() && s[*i].is_ascii_digit() {
            *i += 1;
        }
        if start == *i {
            return None;
        }
        s[start..*i].iter().collect::<String>().parse().ok()
    };
    while i < s.len() {
        let mut sign = 1i64;
        if i > 0 || s[0] == '-' || s[0] == '+' {
            match s[i] {
                '+' => i += 1,
                '-' => {
                    sign = -1;
                    i += 1
                }
                _ if i == 0 => {}
                _ => return Err(err("expected `+` or `-`")),
            }
        }
        let coef = read_int(&mut i);
        let mut exp = 0i64;
        let mut has_x = false;
        if i < s.len() && s[i] == '*' {
            if coef.is_none() {
                return Err(err("dangling `*`"));
            }
            i += 1;
            if i >= s.len() || s[i] != 'x' {
                return Err(err("expected `x` after `*`"));
            }
        }
        if i < s.len() && s[i] == 'x' {
            has_x = true;
            i += 1;
            exp = 1;
            if i < s.len() && s[i] == '^' {
                i += 1;
                let mut es = 1;
                if i < s.len() && s[i] == '-' {
                    es = -1;
                    i += 1;
                }
                exp = es * read_int(&mut i).ok_or_else(|| err("missing exponent"))?;
            }
        }
        if coef.is_none() && !has_x {
            return Err(err("empty term"));
        }
        let c = residue(sign * coef.unwrap_or(1) % p as i64, p);
        acc = &acc + &LaurentPoly::monomial(p, c, exp);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32, c: &[u32]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&fp(2, &[1, 1]) * &fp(2, &[1, 1]), fp(2, &[1, 0, 1]));
        assert!((&fp(3, &[1, 1]) + &fp(3, &[2, 2])).is_zero());
        let (q, r) = fp(2, &[1, 0, 0, 1]).div_rem(&fp(2, &[1, 1])).unwrap();
        assert_eq!(q, fp(2, &[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(fp(2, &[1]).try_add(&fp(3, &[1])), Err(Error::ModulusMismatch(2, 3)));
        assert_eq!(fp(2, &[1]).div_rem(&FpPoly::zero(2)), Err(Error::DivisionByZero));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(fp(2, &[1, 0, 0, 1]).factor().unwrap(), vec![(fp(2, &[1, 1]), 1), (fp(2, &[1, 1, 1]), 1)]);
        assert!(fp(2, &[1, 1, 1]).is_irreducible());
        assert_eq!(fp(3, &[0, 0, 1]).factor().unwrap(), vec![(fp(3, &[0, 1]), 2)]);
        assert_eq!(FpPoly::zero(2).factor(), Err(Error::ZeroInput));
        // x^8 - x over F_2 is the product of irreducibles of degree 1 and 3
        let f = fp(2, &[0, 1, 0, 0, 0, 0, 0, 0, 1]).factor().unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.iter().all(|(q, m)| *m == 1 && q.is_irreducible()));
    }

    #[test]
    fn normalize_and_deg() {
        let l = LaurentPoly::new(2, 2, vec![1, 1]);
        assert_eq!(l.normalize_generator().unwrap(), fp(2, &[1, 1]));
        let l = LaurentPoly::new(3, -1, vec![2, 2]);
        assert_eq!(l.normalize_generator().unwrap(), fp(3, &[1, 1]));
        assert_eq!(LaurentPoly::one(2).normalize_generator().unwrap(), fp(2, &[1]));
        assert_eq!(LaurentPoly::x_pow(2, 3).deg_star().unwrap(), 0);
        assert_eq!(LaurentPoly::new(2, -1, vec![1, 1, 1]).deg_star().unwrap(), 2);
        assert_eq!(LaurentPoly::zero(2).deg_star(), Err(Error::InfiniteDimension));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(2, 3, 1), LaurentPoly::new(2, 0, vec![1, 1, 1]));
        assert_eq!(phi(2, 1, 5), LaurentPoly::one(2));
        assert_eq!(phi(2, -1, 1), LaurentPoly::x_pow(2, -1));
    }

    #[test]
    fn ord_examples() {
        assert_eq!(fp(2, &[1, 1, 1]).ord_x_mod().unwrap(), 3);
        assert_eq!(fp(2, &[1, 1]).ord_x_mod().unwrap(), 1);
        assert_eq!(fp(2, &[1, 0, 1]).ord_x_mod().unwrap(), 2);
        assert_eq!(fp(2, &[0, 1]).ord_x_mod(), Err(Error::ConstantTermZero));
        // (1+x)^3 over F_2: needs p-part 4
        assert_eq!(fp(2, &[1, 1]).pow(3).ord_x_mod().unwrap(), 4);
    }

    #[test]
    fn parse_and_print() {
        let l = LaurentPoly::parse(2, "1+x^2+x^-1").unwrap();
        assert_eq!(l, LaurentPoly::new(2, -1, vec![1, 1, 0, 1]));
        assert_eq!(l.to_string(), "x^-1+1+x^2");
        let l = LaurentPoly::parse(5, "2*x^3 - x").unwrap();
        assert_eq!(l.to_string(), "4*x+2*x^3");
        assert_eq!(LaurentPoly::parse(5, &l.to_string()).unwrap(), l);
        assert_eq!(LaurentPoly::parse(3, "0").unwrap().to_string(), "0");
        assert!(LaurentPoly::parse(3, "1+").is_err());
        assert!(LaurentPoly::parse(3, "y").is_err());
        assert!(FpPoly::parse(3, "x^-1").is_err());
    }

    #[test]
    fn canonical_residue() {
        let f = fp(3, &[1, 1, 1]);
        let a = LaurentPoly::parse(3, "x^-3+2*x^5").unwrap();
        let (q, r) = a.div_rem_canonical(&f);
        assert!(r.degree().is_none_or(|d| d < 2));
        assert_eq!(&(&q * &f.to_laurent()) + &r.to_laurent(), a);
    }

    #[test]
    fn bezout_identity() {
        let a = LaurentPoly::parse(3, "2*x^-2+x").unwrap();
        let b = LaurentPoly::parse(3, "x^4+x^5").unwrap();
        let (g, s, t) = bezout(&a, &b);
        assert_eq!(&(&s * &a) + &(&t * &b), g.to_laurent());
        assert_eq!(g.coeff(0), 1);
    }

    #[test]
    fn normalized_poly_counts() {
        for p in [2u32, 3, 5] {
            for d in 0..4usize {
                let n = NormalizedPolys::new(p, d).count() as u64;
                let want = if d == 0 { 1 } else { (p as u64 - 1) * (p as u64).pow(d as u32 - 1) };
                assert_eq!(n, want, "p={p} d={d}");
            }
        }
    }
}
