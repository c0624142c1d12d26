//! Elements of `𝓛_n = (ℤ/p)ⁿ ≀ ℤ` and subgroups given as triples.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{is_prime, FpPoly, LaurentPoly};
use crate::rmodule::{RVector, Submodule};

/// `φ_k(x^s)` for any integers `k`, `s`.
pub fn phi_any(p: u32, k: i64, s: i64) -> LaurentPoly {
    match s.cmp(&0) {
        std::cmp::Ordering::Greater => crate::ring::phi(p, k, s),
        std::cmp::Ordering::Equal => LaurentPoly::constant(p, crate::ring::residue(k, p)),
        std::cmp::Ordering::Less => crate::ring::phi(p, k, -s).shift(-s * (1 - k)),
    }
}

/// `(v, s)`: the lamp configuration `v` and the cursor position `s`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    pub v: RVector,
    pub s: i64,
}

impl GroupElement {
    pub fn new(v: RVector, s: i64) -> Self {
        GroupElement { v, s }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        GroupElement { v: RVector::zero(p, n), s: 0 }
    }

    /// `a_i = (e_i, 0)`.
    pub fn lamp(p: u32, n: usize, i: usize) -> Self {
        GroupElement { v: RVector::unit(p, n, i), s: 0 }
    }

    /// `t = (0, 1)`.
    pub fn shift_gen(p: u32, n: usize) -> Self {
        GroupElement { v: RVector::zero(p, n), s: 1 }
    }

    /// `a_1, …, a_n, t`.
    pub fn standard_generators(p: u32, n: usize) -> Vec<GroupElement> {
        let mut g: Vec<_> = (0..n).map(|i| Self::lamp(p, n, i)).collect();
        g.push(Self::shift_gen(p, n));
        g
    }

    pub fn p(&self) -> u32 {
        self.v.p()
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn is_identity(&self) -> bool {
        self.s == 0 && self.v.is_zero()
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        GroupElement { v: self.v.add(&o.v.shift(self.s)), s: self.s + o.s }
    }

    pub fn inv(&self) -> GroupElement {
        GroupElement { v: self.v.shift(-self.s).neg(), s: -self.s }
    }

    pub fn pow(&self, k: i64) -> GroupElement {
        let f = phi_any(self.p(), k, self.s);
        GroupElement { v: self.v.mul_scalar(&f), s: k * self.s }
    }

    /// Parses `(v, s)`, where `v` is `f` or `(f1,…,fn)`.
    pub fn parse(p: u32, n: usize, text: &str) -> Result<GroupElement> {
        let t = text.trim();
        let bad = || Error::Parse(format!("`{t}` is not an element (v, s)"));
        let body = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (v, s) = body.rsplit_once(',').ok_or_else(bad)?;
        let s = s.trim().parse::<i64>().map_err(|_| bad())?;
        Ok(GroupElement::new(RVector::parse(p, n, v)?, s))
    }

    /// `g·h·g⁻¹` with `g = self`.
    pub fn conjugate(&self, h: &GroupElement) -> GroupElement {
        self.mul(h).mul(&self.inv())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.v, self.s)
    }
}

/// Isomorphism type of a subgroup.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IsoType {
    /// A subgroup of the base; `None` means infinite dimension over 𝔽_p.
    ElementaryAbelian { dim: Option<usize> },
    /// `𝓛_k`; `k = 0` is the infinite cyclic group.
    Lamplighter(usize),
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoType::ElementaryAbelian { dim: Some(d) } => write!(f, "(Z/p)^{d}"),
            IsoType::ElementaryAbelian { dim: None } => f.write_str("(Z/p)^inf"),
            IsoType::Lamplighter(0) => f.write_str("Z"),
            IsoType::Lamplighter(k) => write!(f, "L_{k}"),
        }
    }
}

/// The subgroup `{(w + φ_k(x^s)v, ks) : w ∈ V₀, k ∈ ℤ}`.
///
/// `V₀` is stored at its minimal exponent and `v` is reduced modulo it,
/// so derived equality is subgroup equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubgroupTriple {
    s: u64,
    v0: Submodule,
    v: RVector,
}

impl SubgroupTriple {
    pub fn new(s: u64, v0: Submodule, v: RVector) -> Result<Self> {
        if v.len() != v0.n() || v.p() != v0.p() {
            return Err(Error::AmbientMismatch("witness and base live in different modules".into()));
        }
        let v0 = v0.minimized();
        if s > 0 && !s.is_multiple_of(v0.declared_exponent() as u64) {
            return Err(Error::Invalid(format!(
                "x^{s} does not preserve V0 (its exponent is {})",
                v0.declared_exponent()
            )));
        }
        let v = if s == 0 { RVector::zero(v0.p(), v0.n()) } else { v0.reduce(&v) };
        Ok(SubgroupTriple { s, v0, v })
    }

    /// `new` for a `V₀` already at its minimal exponent, dividing `s`.
    pub(crate) fn from_minimized(s: u64, v0: Submodule, v: RVector) -> Self {
        let v = if s == 0 { RVector::zero(v0.p(), v0.n()) } else { v0.reduce(&v) };
        SubgroupTriple { s, v0, v }
    }

    /// The whole group `𝓛_n`.
    pub fn whole(p: u32, n: usize) -> Self {
        Self::new(1, Submodule::full(p, n), RVector::zero(p, n)).unwrap()
    }

    /// `𝒜_n ⋊ sℤ`.
    pub fn base_times(p: u32, n: usize, s: u64) -> Self {
        Self::new(s, Submodule::full(p, n), RVector::zero(p, n)).unwrap()
    }

    pub fn trivial(p: u32, n: usize) -> Self {
        Self::new(0, Submodule::zero(p, n), RVector::zero(p, n)).unwrap()
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn v0(&self) -> &Submodule {
        &self.v0
    }

    pub fn v(&self) -> &RVector {
        &self.v
    }

    pub fn p(&self) -> u32 {
        self.v0.p()
    }

    pub fn n(&self) -> usize {
        self.v0.n()
    }

    fn check(&self, o: &SubgroupTriple) -> Result<()> {
        if self.p() != o.p() || self.n() != o.n() {
            return Err(Error::AmbientMismatch(format!(
                "L_{} over F_{} vs L_{} over F_{}",
                self.n(),
                self.p(),
                o.n(),
                o.p()
            )));
        }
        Ok(())
    }

    /// The element `(v, s)` of the triple.
    pub fn witness(&self) -> GroupElement {
        GroupElement::new(self.v.clone(), self.s as i64)
    }

    pub fn member(&self, g: &GroupElement) -> bool {
        if self.s == 0 {
            return g.s == 0 && self.v0.contains_vector(&g.v);
        }
        let s = self.s as i64;
        if g.s % s != 0 {
            return false;
        }
        let f = crate::ring::phi(self.p(), g.s / s, s);
        self.v0.contains_vector(&g.v.sub(&self.v.mul_scalar(&f)))
    }

    /// `self ⊆ o`.
    pub fn includes_in(&self, o: &SubgroupTriple) -> Result<bool> {
        self.check(o)?;
        if o.s == 0 {
            return Ok(self.s == 0 && o.v0.contains(&self.v0)?);
        }
        if !self.s.is_multiple_of(o.s) || !o.v0.contains(&self.v0)? {
            return Ok(false);
        }
        if self.s == 0 {
            return Ok(true);
        }
        let f = crate::ring::phi(self.p(), (self.s / o.s) as i64, o.s as i64);
        Ok(o.v0.contains_vector(&self.v.sub(&o.v.mul_scalar(&f))))
    }

    pub fn intersect(&self, o: &SubgroupTriple) -> Result<SubgroupTriple> {
        self.check(o)?;
        let base = self.v0.intersect(&o.v0)?;
        let (p, n) = (self.p(), self.n());
        if self.s == 0 || o.s == 0 {
            return Self::new(0, base, RVector::zero(p, n));
        }
        let (s, t) = (self.s as i64, o.s as i64);
        let l = s.lcm(&t);
        let sum = self.v0.sum(&o.v0)?;
        let delta =
            self.v.mul_scalar(&crate::ring::phi(p, l / s, s)).sub(&o.v.mul_scalar(&crate::ring::phi(p, l / t, t)));
        let q = sum.at_exponent(l as usize).annihilator(&delta);
        if q.is_zero() {
            return Self::new(0, base, RVector::zero(p, n));
        }
        // least j with q | φ_j, i.e. q·(1-y) | 1-y^j
        let j = (&q * &FpPoly::one_minus_x(p)).ord_x_mod()? as i64;
        let r = l * j;
        let a = self.v.mul_scalar(&crate::ring::phi(p, r / s, s));
        let b = o.v.mul_scalar(&crate::ring::phi(p, r / t, t));
        let (u0, _) = self.v0.decompose(&o.v0, &a.sub(&b)).expect("annihilator guarantees membership in the sum");
        Self::new(r as u64, base, a.sub(&u0))
    }

    /// `[𝓛_n : self]`, `None` if infinite.
    pub fn index(&self) -> Option<BigUint> {
        if self.s == 0 {
            return None;
        }
        let c = self.v0.codim()?;
        Some(BigUint::from(self.s) * BigUint::from(self.p()).pow(c as u32))
    }

    pub fn iso_type(&self) -> IsoType {
        if self.s == 0 {
            let dim = self.v0.is_zero().then_some(0);
            return IsoType::ElementaryAbelian { dim };
        }
        let e = self.v0.declared_exponent() as u64;
        IsoType::Lamplighter(self.v0.rank() * (self.s / e) as usize)
    }

    /// `d(self)`, `None` when not finitely generated.
    pub fn min_generators(&self) -> Option<usize> {
        match self.iso_type() {
            IsoType::Lamplighter(k) => Some(k + 1),
            IsoType::ElementaryAbelian { dim } => dim,
        }
    }

    pub fn is_normal(&self) -> bool {
        if self.v0.declared_exponent() != 1 {
            return false;
        }
        let (p, n) = (self.p(), self.n());
        if self.s > 0 {
            let c = FpPoly::one_minus_x_pow(p, self.s as usize).to_laurent();
            if !(0..n).all(|i| self.v0.contains_vector(&RVector::unit(p, n, i).mul_scalar(&c))) {
                return false;
            }
        }
        self.v0.contains_vector(&self.v.mul_scalar(&FpPoly::one_minus_x(p).to_laurent()))
    }

    pub fn is_maximal(&self) -> bool {
        if self.v0.is_full() {
            return is_prime(self.s);
        }
        self.s == 1 && self.v0.codim().is_some() && {
            let d = self.v0.det_star();
            d.is_irreducible()
        }
    }

    pub fn is_weakly_maximal(&self) -> bool {
        if self.s == 0 {
            return self.v0.is_full();
        }
        let k = self.n() * self.s as usize;
        let at = self.v0.at_exponent(self.s as usize);
        if at.rank() + 1 != k {
            return false;
        }
        let inv = at.invariants_at_declared();
        inv.invariant_factors.is_empty()
    }

    /// Group generators: a basis of `V₀` as an `x^s`-module and `(v, s)`.
    /// Subgroups inside the base are not finitely generated unless trivial.
    pub fn generators(&self) -> Option<Vec<GroupElement>> {
        if self.s == 0 {
            return self.v0.is_zero().then(Vec::new);
        }
        let mut g: Vec<GroupElement> =
            self.v0.generators_at(self.s as usize).into_iter().map(|w| GroupElement::new(w, 0)).collect();
        g.push(self.witness());
        Some(g)
    }

    /// `g·self·g⁻¹`.
    pub fn conjugate_by(&self, g: &GroupElement) -> SubgroupTriple {
        let (p, n) = (self.p(), self.n());
        let base = self.v0.shifted(g.s);
        if self.s == 0 {
            return Self::new(0, base, RVector::zero(p, n)).unwrap();
        }
        let c = FpPoly::one_minus_x_pow(p, self.s as usize).to_laurent();
        let v = self.v.shift(g.s).add(&g.v.mul_scalar(&c));
        Self::new(self.s, base, v).unwrap()
    }

    /// Text form `s=<s>; V0=<block>; v=<vector>`.
    pub fn to_text(&self) -> String {
        format!("s={};V0={};v={}", self.s, submodule_inline(&self.v0), self.v)
    }

    pub fn parse(p: u32, n: usize, text: &str) -> Result<SubgroupTriple> {
        let mut s = None;
        let mut v0 = None;
        let mut v = None;
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (k, val) =
                part.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value in `{part}`")))?;
            match k.trim() {
                "s" => s = Some(val.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad s `{val}`")))?),
                "V0" => v0 = Some(parse_submodule_inline(p, n, val)?),
                "v" => v = Some(RVector::parse(p, n, val)?),
                other => return Err(Error::Parse(format!("unknown key `{other}`"))),
            }
        }
        let s = s.ok_or_else(|| Error::Parse("missing s".into()))?;
        let v0 = v0.ok_or_else(|| Error::Parse("missing V0".into()))?;
        let v = v.unwrap_or_else(|| RVector::zero(p, n));
        Self::new(s, v0, v)
    }
}

impl fmt::Display for SubgroupTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `R`, `0`, or `[e=<e>: row | row]` with comma-separated rebased entries.
pub fn submodule_inline(u: &Submodule) -> String {
    if u.is_zero() {
        return "0".into();
    }
    if u.is_full() {
        return "R".into();
    }
    let rows: Vec<String> =
        u.rows().iter().map(|r| r.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")).collect();
    format!("[e={}: {}]", u.declared_exponent(), rows.join(" | "))
}

pub fn parse_submodule_inline(p: u32, n: usize, text: &str) -> Result<Submodule> {
    let t = text.trim();
    match t {
        "R" => return Ok(Submodule::full(p, n)),
        "0" => return Ok(Submodule::zero(p, n)),
        _ => {}
    }
    let inner = t
        .strip_prefix('[')
        .and_then(|u| u.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("submodule `{t}` is not R, 0 or [e=..: ..]")))?;
    let (head, body) = inner.split_once(':').ok_or_else(|| Error::Parse(format!("missing `:` in `{t}`")))?;
    let e: usize = head
        .trim()
        .strip_prefix("e=")
        .and_then(|x| x.trim().parse().ok())
        .filter(|&e| e >= 1)
        .ok_or_else(|| Error::Parse(format!("bad exponent in `{t}`")))?;
    let mut rows = Vec::new();
    for r in body.split('|') {
        if r.trim().is_empty() {
            continue;
        }
        let row = r.split(',').map(|c| LaurentPoly::parse(p, c)).collect::<Result<Vec<_>>>()?;
        if row.len() != n * e {
            return Err(Error::Parse(format!("row `{}` needs {} entries", r.trim(), n * e)));
        }
        rows.push(row);
    }
    Ok(Submodule::from_rebased(p, n, e, rows))
}

/// The subgroup generated by finitely many elements.
///
/// With `(v, s)` of least positive projection in the group, the subgroup
/// equals `{(w + φ_k(x^s)v, ks)}` where `w` ranges over the `x^s`-module
/// spanned by the defects `vᵢ − φ_{sᵢ/s}(x^s)v`.
pub fn triple_from_generators(gens: &[GroupElement]) -> Result<SubgroupTriple> {
    let first = gens.first().ok_or(Error::ZeroInput)?;
    let (p, n) = (first.p(), first.n());
    if gens.iter().any(|g| g.p() != p || g.n() != n) {
        return Err(Error::AmbientMismatch("generators from different groups".into()));
    }
    // Euclid on projections, carried out on group elements
    let mut acc: Option<GroupElement> = None;
    for g in gens.iter().filter(|g| g.s != 0) {
        let mut a = g.clone();
        let Some(mut b) = acc.take() else {
            acc = Some(g.clone());
            continue;
        };
        while b.s != 0 {
            let q = Integer::div_floor(&a.s, &b.s);
            let next = a.mul(&b.pow(-q));
            a = b;
            b = next;
        }
        acc = Some(a);
    }
    let Some(mut w) = acc else {
        if gens.iter().all(GroupElement::is_identity) {
            return Ok(SubgroupTriple::trivial(p, n));
        }
        return Err(Error::NotRepresentable("a nonzero finite subgroup of the base has no triple".into()));
    };
    if w.s < 0 {
        w = w.inv();
    }
    let s = w.s;
    let defects: Vec<RVector> = gens.iter().map(|g| g.v.sub(&w.v.mul_scalar(&phi_any(p, g.s / s, s)))).collect();
    let base = Submodule::generated(p, n, s as usize, &defects);
    SubgroupTriple::new(s as u64, base, w.v)
}

/// All elements of word length at most `len` in the standard generators.
pub fn word_ball(p: u32, n: usize, len: usize) -> Vec<GroupElement> {
    let mut gens = GroupElement::standard_generators(p, n);
    let inv: Vec<_> = gens.iter().map(GroupElement::inv).collect();
    gens.extend(inv);
    gens.sort_by_key(|g| g.to_string());
    gens.dedup();
    let mut seen = std::collections::HashSet::new();
    let id = GroupElement::identity(p, n);
    seen.insert(id.clone());
    let mut frontier = vec![id];
    for _ in 0..len {
        let mut next = Vec::new();
        for g in &frontier {
            for h in &gens {
                let x = g.mul(h);
                if seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by_key(|a| (a.s, a.v.to_string()));
    out
}

/// `[big : small]` for finite-index `small ⊆ big`.
pub fn relative_index(small: &SubgroupTriple, big: &SubgroupTriple) -> Option<BigUint> {
    let (q, r) = small.index()?.div_rem(&big.index()?);
    r.is_zero().then_some(q)
}
