//! Normal subgroups of `𝓛_1`: the families `B_{f,s}` and `C_{f,s}`.
//!
//! A normal finite-index subgroup of `𝓛_1` is `(s, fR, v)` with
//! `f | 1 − x^s` and `(1 − x)v ∈ fR`. Either `v = 0` (kind B) or
//! `f = (1 − x)h` and `v = c·h` for a twist `c ∈ {1, …, p−1}` (kind C).
//! Over 𝔽₂ the only twist is 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::SubgroupTriple;
use crate::ring::FpPoly;
use crate::rmodule::{RVector, Submodule};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum NormalKind {
    B,
    C,
    /// `s = 0`: an `x`-invariant ideal of the base.
    BaseIdeal,
}

/// Classification data `(s, f, c)`; `c = 0` means kind B.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalTriple {
    s: u64,
    f: FpPoly,
    twist: u32,
}

impl NormalTriple {
    pub fn b(f: &FpPoly, s: u64) -> Result<Self> {
        Self::build(f, s, 0)
    }

    pub fn c(f: &FpPoly, s: u64) -> Result<Self> {
        Self::build(f, s, 1)
    }

    /// General constructor; `twist = 0` gives kind B.
    pub fn build(f: &FpPoly, s: u64, twist: u32) -> Result<Self> {
        let p = f.p();
        let f = if f.is_zero() { f.clone() } else { f.const_normalized() };
        if !f.is_zero() && f.coeff(0) == 0 {
            return Err(Error::ConstantTermZero);
        }
        if twist >= p {
            return Err(Error::Invalid(format!("twist {twist} is not in 0..{p}")));
        }
        if s == 0 {
            if twist != 0 {
                return Err(Error::Invalid("subgroups of the base have no twist".into()));
            }
            return Ok(NormalTriple { s, f, twist });
        }
        if f.is_zero() || !f.divides(&FpPoly::one_minus_x_pow(p, s as usize)) {
            return Err(Error::Invalid(format!("{f} does not divide 1-x^{s}")));
        }
        if twist > 0 && !FpPoly::one_minus_x(p).divides(&f) {
            return Err(Error::Invalid(format!("kind C needs (1-x) | {f}")));
        }
        Ok(NormalTriple { s, f, twist })
    }

    pub fn kind(&self) -> NormalKind {
        match (self.s, self.twist) {
            (0, _) => NormalKind::BaseIdeal,
            (_, 0) => NormalKind::B,
            _ => NormalKind::C,
        }
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn f(&self) -> &FpPoly {
        &self.f
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn p(&self) -> u32 {
        self.f.p()
    }

    /// `f/(1−x)` for kind C, zero otherwise.
    pub fn h(&self) -> FpPoly {
        if self.twist == 0 {
            return FpPoly::zero(self.p());
        }
        self.f.div_exact(&FpPoly::one_minus_x(self.p())).unwrap()
    }

    pub fn index(&self) -> Option<num_bigint::BigUint> {
        (self.s > 0).then(|| {
            num_bigint::BigUint::from(self.s) * num_bigint::BigUint::from(self.p()).pow(self.f.degree().unwrap() as u32)
        })
    }

    pub fn to_triple(&self) -> SubgroupTriple {
        let p = self.p();
        let v0 = Submodule::ideal(&self.f.to_laurent());
        let v = RVector::new(p, vec![self.h().scale(self.twist).to_laurent()]);
        SubgroupTriple::new(self.s, v0, v).expect("valid by construction")
    }

    /// Text form `B[f=…;s=…]`, `C[f=…;s=…]` or `C[f=…;s=…;c=…]`.
    pub fn to_text(&self) -> String {
        match self.twist {
            0 => format!("B[f={};s={}]", self.f, self.s),
            1 => format!("C[f={};s={}]", self.f, self.s),
            c => format!("C[f={};s={};c={}]", self.f, self.s, c),
        }
    }

    pub fn parse(p: u32, text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || Error::Parse(format!("`{t}` is not B[f=..;s=..] or C[f=..;s=..]"));
        let (kind, rest) = t.split_at(t.find('[').ok_or_else(bad)?);
        let body = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let (mut f, mut s, mut c) = (None, None, None);
        for part in body.split(';') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "f" => f = Some(FpPoly::parse(p, v)?),
                "s" => s = Some(v.trim().parse::<u64>().map_err(|_| bad())?),
                "c" => c = Some(v.trim().parse::<u32>().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        let (f, s) = (f.ok_or_else(bad)?, s.ok_or_else(bad)?);
        match kind.trim() {
            "B" if c.is_none() => Self::b(&f, s),
            "C" => Self::build(&f, s, c.unwrap_or(1)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for NormalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Reads off `(s, f, c)` from a normal subgroup of `𝓛_1`.
pub fn classify(t: &SubgroupTriple) -> Result<NormalTriple> {
    if t.n() != 1 {
        return Err(Error::Invalid("classification is for n = 1".into()));
    }
    if !t.is_normal() {
        return Err(Error::Invalid(format!("{t} is not normal")));
    }
    let p = t.p();
    let v0 = t.v0();
    let f = match v0.rows().first() {
        Some(r) => r[0].to_poly().expect("normalized pivot"),
        None => FpPoly::zero(p),
    };
    if t.s() == 0 {
        return NormalTriple::b(&f, 0);
    }
    let v = t.v().coords()[0].to_poly().expect("canonical residue");
    if v.is_zero() {
        return NormalTriple::b(&f, t.s());
    }
    let h = f.div_exact(&FpPoly::one_minus_x(p)).expect("normality forces (1-x) | f");
    let c = v.div_exact(&h).filter(|c| c.degree() == Some(0)).expect("v is a multiple of h");
    NormalTriple::build(&f, t.s(), c.coeff(0))
}

/// Inclusion `a ⊆ b` from the classification rules.
pub fn includes_normal(a: &NormalTriple, b: &NormalTriple) -> bool {
    use NormalKind::*;
    let p = a.p();
    if b.s == 0 {
        return a.s == 0 && b.f.divides(&a.f);
    }
    if !a.s.is_multiple_of(b.s) || !b.f.divides(&a.f) {
        return false;
    }
    let k = a.s / b.s;
    match (a.kind(), b.kind()) {
        (BaseIdeal, _) | (B, B) => true,
        (C, B) => b.f.divides(&a.h()),
        // −φ_k(x^{s′})·c′h′ ∈ f′R iff p | k
        (B, C) => k.is_multiple_of(p as u64),
        (C, C) => {
            // c·h − c′·φ_k·h′ ∈ (1−x)h′R, read off at x = 1
            let ratio = a.h().div_exact(&b.h()).expect("h′ | h when f′ | f");
            let lhs = (a.twist as u64 * ratio.eval(1) as u64) % p as u64;
            let rhs = (b.twist as u64 * (k % p as u64)) % p as u64;
            lhs == rhs
        }
        (_, BaseIdeal) => unreachable!("handled above"),
    }
}

/// The index-`p`-power normal subgroups `B′_{i,e}`, `C′_{i,e}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct ProPNode {
    pub kind: NormalKind,
    pub i: usize,
    pub e: u32,
}

impl ProPNode {
    pub fn to_normal(&self, p: u32) -> NormalTriple {
        let f = FpPoly::one_minus_x(p).pow(self.i as u64);
        let s = (p as u64).pow(self.e);
        match self.kind {
            NormalKind::C => NormalTriple::c(&f, s).unwrap(),
            _ => NormalTriple::b(&f, s).unwrap(),
        }
    }

    pub fn label(&self) -> String {
        let k = if self.kind == NormalKind::C { "C'" } else { "B'" };
        format!("{k}[{},{}]", self.i, self.e)
    }
}

/// Inclusion among `B′/C′` by the sublattice rules.
pub fn pro_p_includes(a: &ProPNode, b: &ProPNode) -> bool {
    use NormalKind::*;
    let (i, n, j, m) = (a.i, a.e, b.i, b.e);
    match (a.kind, b.kind) {
        (C, C) => (m < n && j < i) || (m == n && j == i),
        (C, _) => m <= n && j < i,
        (_, C) => m < n && j <= i,
        _ => m <= n && j <= i,
    }
}

/// The pro-`p` sublattice up to `e_max`, with both inclusion matrices.
#[derive(Clone, Debug)]
pub struct ProPLattice {
    pub nodes: Vec<ProPNode>,
    pub by_rules: Vec<Vec<bool>>,
    pub by_triples: Vec<Vec<bool>>,
}

impl ProPLattice {
    pub fn agrees(&self) -> bool {
        self.by_rules == self.by_triples
    }
}

pub fn pro_p_lattice(p: u32, e_max: u32) -> ProPLattice {
    let mut nodes = Vec::new();
    for e in 0..=e_max {
        let top = (p as usize).pow(e);
        for i in 0..=top {
            nodes.push(ProPNode { kind: NormalKind::B, i, e });
        }
        for i in 1..=top {
            nodes.push(ProPNode { kind: NormalKind::C, i, e });
        }
    }
    let triples: Vec<SubgroupTriple> = nodes.iter().map(|x| x.to_normal(p).to_triple()).collect();
    let by_rules = nodes.iter().map(|a| nodes.iter().map(|b| pro_p_includes(a, b)).collect()).collect();
    let by_triples = triples.iter().map(|a| triples.iter().map(|b| a.includes_in(b).unwrap()).collect()).collect();
    ProPLattice { nodes, by_rules, by_triples }
}

/// Least `s ≤ s_max` with `B_{1−x^s,s} ⊆ t`.
pub fn profinite_basis_check(t: &SubgroupTriple, s_max: u64) -> Option<u64> {
    let p = t.p();
    (1..=s_max).find(|&s| {
        let b = NormalTriple::b(&FpPoly::one_minus_x_pow(p, s as usize), s).unwrap();
        b.to_triple().includes_in(t).unwrap_or(false)
    })
}

/// Number of extensions of `R/fR` by `ℤ/s` as quoted: 2 when `f(1) = 0`
/// and `f | φ_s`, otherwise 1.
pub fn extension_count(f: &FpPoly, s: u64) -> u8 {
    let p = f.p();
    let phi = crate::ring::phi(p, s as i64, 1).to_poly().unwrap();
    if f.eval(1) == 0 && f.divides(&phi) {
        2
    } else {
        1
    }
}

/// Monic-at-zero divisors of `f`, sorted by degree then coefficients.
pub fn poly_divisors(f: &FpPoly) -> Result<Vec<FpPoly>> {
    let p = f.p();
    let mut out = vec![FpPoly::one(p)];
    for (q, a) in f.factor()? {
        let q = q.const_normalized();
        let mut next = Vec::new();
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..a {
                cur = &cur * &q;
                next.push(cur.clone());
            }
        }
        out = next;
    }
    out.sort_by(|a, b| a.cmp_deg_lex(b));
    Ok(out)
}

/// All finite-index normal subgroups of `𝓛_1` with `s ≤ s_max`.
pub fn normal_subgroups(p: u32, s_max: u64) -> Result<Vec<NormalTriple>> {
    let mut out = Vec::new();
    for s in 1..=s_max {
        for f in poly_divisors(&FpPoly::one_minus_x_pow(p, s as usize))? {
            out.push(NormalTriple::b(&f, s)?);
            if f.eval(1) == 0 {
                for c in 1..p {
                    out.push(NormalTriple::build(&f, s, c)?);
                }
            }
        }
    }
    Ok(out)
}

/// Hasse diagram of inclusion as DOT, smaller subgroups below.
pub fn hasse_dot(nodes: &[NormalTriple]) -> String {
    let k = nodes.len();
    let inc: Vec<Vec<bool>> = nodes.iter().map(|a| nodes.iter().map(|b| includes_normal(a, b)).collect()).collect();
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n");
    for (i, n) in nodes.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", n.to_text()));
    }
    for a in 0..k {
        for b in 0..k {
            if a == b || !inc[a][b] || inc[b][a] {
                continue;
            }
            let covered = (0..k).any(|c| c != a && c != b && inc[a][c] && inc[c][b] && !inc[c][a] && !inc[b][c]);
            if !covered {
                out.push_str(&format!("  n{a} -> n{b};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of the pro-`p` sublattice.
pub fn pro_p_dot(lat: &ProPLattice) -> String {
    let k = lat.nodes.len();
    let inc = &lat.by_rules;
    let mut out = String::from("digraph prop {\n  rankdir=BT;\n");
    for (i, n) in lat.nodes.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", n.label()));
    }
    for a in 0..k {
        for b in 0..k {
            if a == b || !inc[a][b] {
                continue;
            }
            if !(0..k).any(|c| c != a && c != b && inc[a][c] && inc[c][b]) {
                out.push_str(&format!("  n{a} -> n{b};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}
