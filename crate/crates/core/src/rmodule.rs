//! Vectors, matrices and submodules over `R`.
//!
//! A submodule of `𝒜_n = Rⁿ` that is invariant under `x^e` is stored in
//! the rebased free module `R^{ne}`, where the ring variable acts as `x^e`.
//! Coordinate `i·e + j` of the rebased vector collects the terms of
//! coordinate `i` whose exponent is `≡ j (mod e)`.
//!
//! Bases are kept in a lower-triangular Hermite form: each row has a pivot
//! at its rightmost nonzero column, pivots lie in 𝔽_p[x] with constant term
//! 1, and entries sitting in a pivot column (of another row) are reduced to
//! polynomials of degree below that pivot.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ring::{bezout, FpPoly, LaurentPoly};

/// An element of `Rⁿ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RVector {
    p: u32,
    coords: Vec<LaurentPoly>,
}

impl RVector {
    pub fn new(p: u32, coords: Vec<LaurentPoly>) -> Self {
        debug_assert!(coords.iter().all(|c| c.p() == p));
        RVector { p, coords }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        RVector { p, coords: vec![LaurentPoly::zero(p); n] }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(p: u32, n: usize, i: usize) -> Self {
        let mut v = Self::zero(p, n);
        v.coords[i] = LaurentPoly::one(p);
        v
    }

    pub fn from_polys(p: u32, polys: &[FpPoly]) -> Self {
        RVector { p, coords: polys.iter().map(LaurentPoly::from_poly).collect() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[LaurentPoly] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(LaurentPoly::is_zero)
    }

    pub fn add(&self, o: &RVector) -> RVector {
        assert_eq!(self.len(), o.len(), "length mismatch");
        RVector { p: self.p, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &RVector) -> RVector {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RVector {
        RVector { p: self.p, coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn mul_scalar(&self, r: &LaurentPoly) -> RVector {
        RVector { p: self.p, coords: self.coords.iter().map(|a| a * r).collect() }
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: i64) -> RVector {
        RVector { p: self.p, coords: self.coords.iter().map(|a| a.shift(k)).collect() }
    }

    /// Coordinates in `R^{ns}` with the ring variable acting as `x^s`.
    pub fn rebase(&self, s: usize) -> Vec<LaurentPoly> {
        assert!(s >= 1);
        if s == 1 {
            return self.coords.clone();
        }
        let p = self.p;
        let mut out = Vec::with_capacity(self.len() * s);
        for c in &self.coords {
            let mut parts: Vec<Vec<(i64, u32)>> = vec![Vec::new(); s];
            for (k, a) in c.terms() {
                let (q, j) = k.div_mod_floor(&(s as i64));
                parts[j as usize].push((q, a));
            }
            for part in parts {
                out.push(from_terms(p, &part));
            }
        }
        out
    }

    /// Inverse of [`RVector::rebase`].
    pub fn unrebase(p: u32, w: &[LaurentPoly], s: usize) -> RVector {
        assert!(s >= 1 && w.len().is_multiple_of(s));
        let n = w.len() / s;
        let mut coords = Vec::with_capacity(n);
        for i in 0..n {
            let mut terms = Vec::new();
            for j in 0..s {
                for (q, a) in w[i * s + j].terms() {
                    terms.push((q * s as i64 + j as i64, a));
                }
            }
            coords.push(from_terms(p, &terms));
        }
        RVector { p, coords }
    }

    /// Parses `f` or `(f1,f2,…)`.
    pub fn parse(p: u32, n: usize, s: &str) -> Result<RVector> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t);
        let coords = if t.trim().is_empty() {
            Vec::new()
        } else {
            t.split(',').map(|c| LaurentPoly::parse(p, c)).collect::<Result<Vec<_>>>()?
        };
        if coords.len() == 1 && n > 1 && coords[0].is_zero() {
            return Ok(RVector::zero(p, n));
        }
        if coords.len() != n {
            return Err(Error::Parse(format!("expected {n} coordinates in `{s}`")));
        }
        Ok(RVector { p, coords })
    }
}

fn from_terms(p: u32, terms: &[(i64, u32)]) -> LaurentPoly {
    if terms.is_empty() {
        return LaurentPoly::zero(p);
    }
    let lo = terms.iter().map(|t| t.0).min().unwrap();
    let hi = terms.iter().map(|t| t.0).max().unwrap();
    let mut c = vec![0u32; (hi - lo + 1) as usize];
    for &(k, a) in terms {
        c[(k - lo) as usize] = (c[(k - lo) as usize] + a) % p;
    }
    LaurentPoly::new(p, lo, c)
}

impl fmt::Display for RVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A dense matrix over `R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RMatrix {
    p: u32,
    cols: usize,
    rows: Vec<Vec<LaurentPoly>>,
}

impl RMatrix {
    pub fn new(p: u32, cols: usize, rows: Vec<Vec<LaurentPoly>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        RMatrix { p, cols, rows }
    }

    pub fn zero(p: u32, r: usize, c: usize) -> Self {
        RMatrix { p, cols: c, rows: vec![vec![LaurentPoly::zero(p); c]; r] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.rows[i][i] = LaurentPoly::one(p);
        }
        m
    }

    pub fn from_polys(p: u32, rows: &[Vec<FpPoly>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::new(p, cols, rows.iter().map(|r| r.iter().map(LaurentPoly::from_poly).collect()).collect())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.rows[i][j]
    }

    pub fn mul(&self, o: &RMatrix) -> RMatrix {
        assert_eq!(self.cols, o.nrows());
        let mut out = Self::zero(self.p, self.nrows(), o.cols);
        for i in 0..self.nrows() {
            for k in 0..self.cols {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] = &out.rows[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> LaurentPoly {
        assert_eq!(self.nrows(), self.cols, "square matrix required");
        let n = self.cols;
        let p = self.p;
        let mut m = self.rows.clone();
        let mut sign = false;
        let mut prev = LaurentPoly::one(p);
        for k in 0..n {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(i, k);
                        sign = !sign;
                    }
                    None => return LaurentPoly::zero(p),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
                }
            }
            prev = m[k][k].clone();
        }
        let d = if n == 0 { LaurentPoly::one(p) } else { m[n - 1][n - 1].clone() };
        if sign {
            -d
        } else {
            d
        }
    }
}

/// `row += c·src`.
fn axpy(row: &mut [LaurentPoly], c: &LaurentPoly, src: &[LaurentPoly]) {
    if c.is_zero() {
        return;
    }
    for (r, s) in row.iter_mut().zip(src) {
        if !s.is_zero() {
            *r = &*r + &(c * s);
        }
    }
}

fn lin2(a: &LaurentPoly, x: &[LaurentPoly], b: &LaurentPoly, y: &[LaurentPoly]) -> Vec<LaurentPoly> {
    x.iter()
        .zip(y)
        .map(|(u, v)| {
            let l = if u.is_zero() || a.is_zero() { None } else { Some(a * u) };
            let r = if v.is_zero() || b.is_zero() { None } else { Some(b * v) };
            match (l, r) {
                (Some(l), Some(r)) => &l + &r,
                (Some(l), None) => l,
                (None, Some(r)) => r,
                (None, None) => LaurentPoly::zero(u.p()),
            }
        })
        .collect()
}

/// Echelon basis with rightmost pivots, rows sorted by pivot column.
pub(crate) fn hermite_rows(p: u32, rows: Vec<Vec<LaurentPoly>>, ncols: usize) -> (Vec<Vec<LaurentPoly>>, Vec<usize>) {
    let mut active: Vec<Vec<LaurentPoly>> = rows.into_iter().filter(|r| r.iter().any(|a| !a.is_zero())).collect();
    let mut piv: Vec<(usize, Vec<LaurentPoly>)> = Vec::new();
    for c in (0..ncols).rev() {
        let mut idx: Vec<usize> = (0..active.len()).filter(|&i| !active[i][c].is_zero()).collect();
        if idx.is_empty() {
            continue;
        }
        idx.sort_by_key(|&i| active[i][c].deg_star().unwrap());
        let pi = idx[0];
        for &qi in &idx[1..] {
            let a = active[pi][c].clone();
            let b = active[qi][c].clone();
            if let Some(q) = b.div_exact(&a) {
                let src = active[pi].clone();
                axpy(&mut active[qi], &-q, &src);
            } else {
                let (g, s, t) = bezout(&a, &b);
                let g = g.to_laurent();
                let a1 = a.div_exact(&g).unwrap();
                let b1 = b.div_exact(&g).unwrap();
                let np = lin2(&s, &active[pi], &t, &active[qi]);
                let nq = lin2(&-b1, &active[pi], &a1, &active[qi]);
                active[pi] = np;
                active[qi] = nq;
            }
        }
        let mut row = active.swap_remove(pi);
        let (cu, k, _) = row[c].split_unit().unwrap();
        let u = LaurentPoly::monomial(p, crate::ring::inv_mod(cu, p), -k);
        if !u.is_one() {
            for a in row.iter_mut() {
                *a = &*a * &u;
            }
        }
        piv.push((c, row));
        active.retain(|r| r.iter().any(|a| !a.is_zero()));
    }
    // piv is in descending column order; reduce entries above each pivot
    for i in 0..piv.len() {
        let c = piv[i].0;
        let f = piv[i].1[c].to_poly().unwrap();
        if f.degree() == Some(0) {
            for j in 0..i {
                if !piv[j].1[c].is_zero() {
                    let q = piv[j].1[c].clone();
                    let src = piv[i].1.clone();
                    axpy(&mut piv[j].1, &-q, &src);
                }
            }
            continue;
        }
        for j in 0..i {
            let entry = &piv[j].1[c];
            if entry.is_zero() {
                continue;
            }
            let (q, r) = entry.div_rem_canonical(&f);
            if !q.is_zero() {
                let src = piv[i].1.clone();
                axpy(&mut piv[j].1, &-q, &src);
            }
            piv[j].1[c] = r.to_laurent();
        }
    }
    piv.reverse();
    let cols = piv.iter().map(|x| x.0).collect();
    (piv.into_iter().map(|x| x.1).collect(), cols)
}

/// Reduce `v` modulo a Hermite basis; the result is the canonical coset
/// representative.
pub(crate) fn reduce_rows(v: &mut [LaurentPoly], rows: &[Vec<LaurentPoly>], piv: &[usize]) {
    for (row, &c) in rows.iter().zip(piv).rev() {
        if v[c].is_zero() {
            continue;
        }
        let f = row[c].body();
        if f.degree() == Some(0) {
            let q = v[c].clone();
            axpy(&mut v[..=c], &-q, &row[..=c]);
            continue;
        }
        let (q, r) = v[c].div_rem_canonical(f);
        if !q.is_zero() {
            axpy(&mut v[..c], &-q, &row[..c]);
        }
        v[c] = r.to_laurent();
    }
}

/// `a·d·b = g` with `d` diagonal.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub a: RMatrix,
    pub d: RMatrix,
    pub b: RMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries as polynomials (zero entries included).
    pub fn diagonal(&self) -> Vec<FpPoly> {
        let k = self.d.nrows().min(self.d.ncols());
        (0..k).map(|i| self.d.rows[i][i].to_poly().expect("normalized diagonal")).collect()
    }
}

struct SmithState {
    g: Vec<Vec<LaurentPoly>>,
    a: Option<Vec<Vec<LaurentPoly>>>,
    b: Option<Vec<Vec<LaurentPoly>>>,
}

impl SmithState {
    fn col_lin2(m: &mut [Vec<LaurentPoly>], i: usize, j: usize, c: [&LaurentPoly; 4]) {
        // new col_i = c0 col_i + c1 col_j; new col_j = c2 col_i + c3 col_j
        for row in m.iter_mut() {
            let (x, y) = (row[i].clone(), row[j].clone());
            row[i] = &(c[0] * &x) + &(c[1] * &y);
            row[j] = &(c[2] * &x) + &(c[3] * &y);
        }
    }

    fn row_bezout(&mut self, t: usize, i: usize, col: usize) {
        let a = self.g[t][col].clone();
        let b = self.g[i][col].clone();
        if let Some(q) = b.div_exact(&a) {
            let src = self.g[t].clone();
            axpy(&mut self.g[i], &-&q, &src);
            if let Some(am) = self.a.as_mut() {
                for row in am.iter_mut() {
                    let add = &q * &row[i];
                    row[t] = &row[t] + &add;
                }
            }
            return;
        }
        let (g, s, tt) = bezout(&a, &b);
        let g = g.to_laurent();
        let a1 = a.div_exact(&g).unwrap();
        let b1 = b.div_exact(&g).unwrap();
        let nt = lin2(&s, &self.g[t], &tt, &self.g[i]);
        let ni = lin2(&-&b1, &self.g[t], &a1, &self.g[i]);
        self.g[t] = nt;
        self.g[i] = ni;
        if let Some(am) = self.a.as_mut() {
            Self::col_lin2(am, t, i, [&a1, &b1, &-&tt, &s]);
        }
    }

    fn col_bezout(&mut self, t: usize, j: usize, row: usize) {
        let a = self.g[row][t].clone();
        let b = self.g[row][j].clone();
        if let Some(q) = b.div_exact(&a) {
            let nq = -&q;
            for r in self.g.iter_mut() {
                if !r[t].is_zero() {
                    r[j] = &r[j] + &(&nq * &r[t]);
                }
            }
            if let Some(bm) = self.b.as_mut() {
                let src = bm[j].clone();
                axpy(&mut bm[t], &q, &src);
            }
            return;
        }
        let (g, s, tt) = bezout(&a, &b);
        let g = g.to_laurent();
        let a1 = a.div_exact(&g).unwrap();
        let b1 = b.div_exact(&g).unwrap();
        Self::col_lin2(&mut self.g, t, j, [&s, &tt, &-&b1, &a1]);
        if let Some(bm) = self.b.as_mut() {
            let nt = lin2(&a1, &bm[t], &b1, &bm[j]);
            let nj = lin2(&-&tt, &bm[t], &s, &bm[j]);
            bm[t] = nt;
            bm[j] = nj;
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.g.swap(i, j);
        if let Some(am) = self.a.as_mut() {
            for row in am.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.g.iter_mut() {
            row.swap(i, j);
        }
        if let Some(bm) = self.b.as_mut() {
            bm.swap(i, j);
        }
    }
}

fn smith_impl(p: u32, g: Vec<Vec<LaurentPoly>>, ncols: usize, track: bool) -> SmithState {
    let m = g.len();
    let n = ncols;
    let ident = |k: usize| RMatrix::identity(p, k).rows;
    let mut st = SmithState { g, a: track.then(|| ident(m)), b: track.then(|| ident(n)) };
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if let Ok(d) = st.g[i][j].deg_star() {
                        if best.is_none_or(|b| d < b.2) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((bi, bj, _)) = best else {
                return st;
            };
            if bi != t {
                st.swap_rows(t, bi);
            }
            if bj != t {
                st.swap_cols(t, bj);
            }
            for i in t + 1..m {
                if !st.g[i][t].is_zero() {
                    st.row_bezout(t, i, t);
                }
            }
            for j in t + 1..n {
                if !st.g[t][j].is_zero() {
                    st.col_bezout(t, j, t);
                }
            }
            let clear = (t + 1..m).all(|i| st.g[i][t].is_zero()) && (t + 1..n).all(|j| st.g[t][j].is_zero());
            if !clear {
                continue;
            }
            let piv = st.g[t][t].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !piv.divides(&st.g[i][j])));
            match bad {
                Some(i) => {
                    let src = st.g[i].clone();
                    axpy(&mut st.g[t], &LaurentPoly::one(p), &src);
                    if let Some(am) = st.a.as_mut() {
                        for row in am.iter_mut() {
                            row[i] = &row[i] - &row[t];
                        }
                    }
                }
                None => break,
            }
        }
        // normalize the pivot to constant term 1
        let (c, k, _) = st.g[t][t].split_unit().unwrap();
        let u = LaurentPoly::monomial(p, c, k);
        let uinv = u.unit_inverse().unwrap();
        for a in st.g[t].iter_mut() {
            *a = &*a * &uinv;
        }
        if let Some(am) = st.a.as_mut() {
            for row in am.iter_mut() {
                row[t] = &row[t] * &u;
            }
        }
    }
    st
}

/// Smith normal form with transforms, for any rectangular matrix.
pub fn smith_form(g: &RMatrix) -> SmithDecomposition {
    let p = g.p;
    let st = smith_impl(p, g.rows.clone(), g.cols, true);
    SmithDecomposition {
        a: RMatrix::new(p, g.nrows(), st.a.unwrap()),
        d: RMatrix::new(p, g.cols, st.g),
        b: RMatrix::new(p, g.cols, st.b.unwrap()),
    }
}

/// Nonzero invariant factors (constant term 1), in divisibility order.
pub fn invariant_factors(p: u32, rows: &[Vec<LaurentPoly>], ncols: usize) -> Vec<FpPoly> {
    let st = smith_impl(p, rows.to_vec(), ncols, false);
    let k = st.g.len().min(ncols);
    (0..k).filter(|&i| !st.g[i][i].is_zero()).map(|i| st.g[i][i].to_poly().unwrap()).collect()
}

/// Invariant-factor data of a quotient `R^k / U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInvariants {
    /// Nonzero invariant factors, dropping units.
    pub invariant_factors: Vec<FpPoly>,
    /// Primary parts `(q, r)`: the quotient has a summand `R/q^r`.
    pub primary: Vec<(FpPoly, u32)>,
    pub free_rank: usize,
    pub det_star: FpPoly,
    /// `None` when the quotient has a free part.
    pub codim: Option<usize>,
}

/// A submodule of `𝒜_n` invariant under `x^e`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Submodule {
    p: u32,
    n: usize,
    e: usize,
    rows: Vec<Vec<LaurentPoly>>,
    piv: Vec<usize>,
}

impl Submodule {
    /// The submodule generated by rows of `R^{ne}` (rebased coordinates).
    pub fn from_rebased(p: u32, n: usize, e: usize, rows: Vec<Vec<LaurentPoly>>) -> Self {
        assert!(e >= 1);
        let (rows, piv) = hermite_rows(p, rows, n * e);
        Submodule { p, n, e, rows, piv }
    }

    /// The `x^e`-invariant submodule generated by vectors of `𝒜_n`.
    pub fn generated(p: u32, n: usize, e: usize, gens: &[RVector]) -> Self {
        Self::from_rebased(p, n, e, gens.iter().map(|g| g.rebase(e)).collect())
    }

    pub fn full(p: u32, n: usize) -> Self {
        Self::generated(p, n, 1, &(0..n).map(|i| RVector::unit(p, n, i)).collect::<Vec<_>>())
    }

    pub fn zero(p: u32, n: usize) -> Self {
        Submodule { p, n, e: 1, rows: Vec::new(), piv: Vec::new() }
    }

    /// `f·R` inside `R`.
    pub fn ideal(f: &LaurentPoly) -> Self {
        let p = f.p();
        Self::generated(p, 1, 1, &[RVector::new(p, vec![f.clone()])])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The declared exponent (not necessarily minimal).
    pub fn declared_exponent(&self) -> usize {
        self.e
    }

    pub fn ambient_rank(&self) -> usize {
        self.n * self.e
    }

    pub fn rows(&self) -> &[Vec<LaurentPoly>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.piv
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.ambient_rank() && self.rows.iter().zip(&self.piv).all(|(r, &c)| r[c].is_one())
    }

    /// Basis rows as elements of `𝒜_n`; they generate the module under `x^e`.
    pub fn generators(&self) -> Vec<RVector> {
        self.rows.iter().map(|r| RVector::unrebase(self.p, r, self.e)).collect()
    }

    /// Generators under `x^s` for a multiple `s` of the declared exponent.
    pub fn generators_at(&self, s: usize) -> Vec<RVector> {
        assert!(s.is_multiple_of(self.e), "exponent {s} is not a multiple of {}", self.e);
        let mut out = Vec::new();
        for g in self.generators() {
            for j in 0..s / self.e {
                out.push(g.shift((j * self.e) as i64));
            }
        }
        out
    }

    /// The same submodule stored at exponent `s` (a multiple of `e`).
    pub fn at_exponent(&self, s: usize) -> Submodule {
        if s == self.e {
            return self.clone();
        }
        Self::generated(self.p, self.n, s, &self.generators_at(s))
    }

    fn check_ambient(&self, v: &RVector) -> Result<()> {
        if v.len() != self.n || v.p() != self.p {
            return Err(Error::AmbientMismatch(format!(
                "vector of length {} for a submodule of R^{}",
                v.len(),
                self.n
            )));
        }
        Ok(())
    }

    pub fn contains_vector(&self, v: &RVector) -> bool {
        self.check_ambient(v).expect("ambient");
        let mut w = v.rebase(self.e);
        reduce_rows(&mut w, &self.rows, &self.piv);
        w.iter().all(LaurentPoly::is_zero)
    }

    /// Canonical representative of `v + U`.
    pub fn reduce(&self, v: &RVector) -> RVector {
        self.check_ambient(v).expect("ambient");
        let mut w = v.rebase(self.e);
        reduce_rows(&mut w, &self.rows, &self.piv);
        RVector::unrebase(self.p, &w, self.e)
    }

    /// `e(U)`: the least divisor `d` of the declared exponent with `x^d·U = U`.
    pub fn exponent(&self) -> usize {
        let gens = self.generators();
        for d in divisors(self.e) {
            if d == self.e {
                break;
            }
            if gens.iter().all(|g| self.contains_vector(&g.shift(d as i64))) {
                return d;
            }
        }
        self.e
    }

    /// The same submodule stored at its minimal exponent.
    pub fn minimized(&self) -> Submodule {
        let d = self.exponent();
        if d == self.e {
            return self.clone();
        }
        Self::generated(self.p, self.n, d, &self.generators())
    }

    /// `x^k·U`.
    pub fn shifted(&self, k: i64) -> Submodule {
        let gens: Vec<RVector> = self.generators().iter().map(|g| g.shift(k)).collect();
        Self::generated(self.p, self.n, self.e, &gens)
    }

    /// `r(x)·U` for a Laurent polynomial `r` in the original variable.
    pub fn scaled(&self, r: &LaurentPoly) -> Submodule {
        let gens: Vec<RVector> = self.generators().iter().map(|g| g.mul_scalar(r)).collect();
        Self::generated(self.p, self.n, self.e, &gens)
    }

    fn check_same(&self, o: &Submodule) -> Result<()> {
        if self.p != o.p || self.n != o.n {
            return Err(Error::AmbientMismatch(format!("R^{} over F_{} vs R^{} over F_{}", self.n, self.p, o.n, o.p)));
        }
        Ok(())
    }

    /// `o ⊆ self`.
    pub fn contains(&self, o: &Submodule) -> Result<bool> {
        self.check_same(o)?;
        let l = self.e.lcm(&o.e);
        Ok(o.generators_at(l).iter().all(|g| self.contains_vector(g)))
    }

    /// Set equality, regardless of declared exponents.
    pub fn same_set(&self, o: &Submodule) -> Result<bool> {
        Ok(self.contains(o)? && o.contains(self)?)
    }

    pub fn sum(&self, o: &Submodule) -> Result<Submodule> {
        self.check_same(o)?;
        let l = self.e.lcm(&o.e);
        let mut gens = self.generators_at(l);
        gens.extend(o.generators_at(l));
        Ok(Self::generated(self.p, self.n, l, &gens).minimized())
    }

    pub fn intersect(&self, o: &Submodule) -> Result<Submodule> {
        self.check_same(o)?;
        let l = self.e.lcm(&o.e);
        let a = self.at_exponent(l);
        let b = o.at_exponent(l);
        let k = self.n * l;
        let z = LaurentPoly::zero(self.p);
        let mut rows = Vec::new();
        for r in &a.rows {
            let mut row = r.clone();
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        for r in &b.rows {
            let mut row = vec![z.clone(); k];
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        let (h, piv) = hermite_rows(self.p, rows, 2 * k);
        let left: Vec<Vec<LaurentPoly>> =
            h.into_iter().zip(piv).filter(|(_, c)| *c < k).map(|(r, _)| r[..k].to_vec()).collect();
        Ok(Self::from_rebased(self.p, self.n, l, left).minimized())
    }

    /// Writes `z ∈ self + o` as `u + w` with `u ∈ self`, `w ∈ o`.
    pub fn decompose(&self, o: &Submodule, z: &RVector) -> Option<(RVector, RVector)> {
        let l = self.e.lcm(&o.e);
        let a = self.at_exponent(l);
        let b = o.at_exponent(l);
        let k = self.n * l;
        let zero = LaurentPoly::zero(self.p);
        let mut rows = Vec::new();
        for r in &a.rows {
            let mut row = r.clone();
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        for r in &b.rows {
            let mut row = vec![zero.clone(); k];
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        let (h, piv) = hermite_rows(self.p, rows, 2 * k);
        let mut w = vec![zero; k];
        w.extend(z.rebase(l));
        reduce_rows(&mut w, &h, &piv);
        if w[k..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        // (0, z) - Σ c_i (x_i A, x_i A + y_i B) = (-XA, 0)
        let u = RVector::unrebase(self.p, &w[..k], l).neg();
        let wv = z.sub(&u);
        Some((u, wv))
    }

    /// Generator of `{r : r·v ∈ U}` in the rebased variable; zero if the
    /// image of `v` is torsion-free.
    pub fn annihilator(&self, v: &RVector) -> FpPoly {
        let k = self.ambient_rank();
        let p = self.p;
        let zero = LaurentPoly::zero(p);
        let mut rows = Vec::with_capacity(self.rank() + 1);
        let mut first = vec![LaurentPoly::one(p)];
        first.extend(v.rebase(self.e));
        rows.push(first);
        for r in &self.rows {
            let mut row = vec![zero.clone()];
            row.extend(r.iter().cloned());
            rows.push(row);
        }
        let (h, piv) = hermite_rows(p, rows, k + 1);
        match piv.first() {
            Some(0) => h[0][0].to_poly().unwrap(),
            _ => FpPoly::zero(p),
        }
    }

    /// Codimension over 𝔽_p, `None` if infinite.
    pub fn codim(&self) -> Option<usize> {
        if self.rank() < self.ambient_rank() {
            return None;
        }
        Some(self.rows.iter().zip(&self.piv).map(|(r, &c)| r[c].deg_star().unwrap()).sum())
    }

    /// Invariant data of `R^{ne}/U` at the declared exponent.
    pub fn invariants_at_declared(&self) -> QuotientInvariants {
        let k = self.ambient_rank();
        let free_rank = k - self.rank();
        let factors: Vec<FpPoly> =
            invariant_factors(self.p, &self.rows, k).into_iter().filter(|f| f.degree() != Some(0)).collect();
        let mut det = FpPoly::one(self.p);
        let mut primary = Vec::new();
        for f in &factors {
            det = &det * f;
            primary.extend(f.factor().expect("nonzero"));
        }
        let codim = (free_rank == 0).then(|| factors.iter().map(|f| f.degree().unwrap()).sum());
        QuotientInvariants { invariant_factors: factors, primary, free_rank, det_star: det, codim }
    }

    /// Invariant data computed at the minimal exponent.
    pub fn quotient_invariants(&self) -> QuotientInvariants {
        self.minimized().invariants_at_declared()
    }

    /// `det*` at the declared exponent.
    pub fn det_star_at_declared(&self) -> FpPoly {
        if self.rank() == self.ambient_rank() {
            let mut d = FpPoly::one(self.p);
            for (r, &c) in self.rows.iter().zip(&self.piv) {
                d = &d * r[c].body();
            }
            return d;
        }
        self.invariants_at_declared().det_star
    }

    pub fn det_star(&self) -> FpPoly {
        self.minimized().det_star_at_declared()
    }

    /// Block text: header `p=<p> n=<n> e=<e>` then one row per line.
    pub fn to_block(&self) -> String {
        let mut s = format!("p={} n={} e={}\n", self.p, self.n, self.e);
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|a| a.to_string()).collect();
            s.push_str(&cells.join(";"));
            s.push('\n');
        }
        s
    }

    pub fn from_block(text: &str) -> Result<Submodule> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty submodule block".into()))?;
        let (mut p, mut n, mut e) = (None, None, None);
        for tok in header.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| Error::Parse(format!("bad header token `{tok}`")))?;
            let v: usize = v.parse().map_err(|_| Error::Parse(format!("bad number in `{tok}`")))?;
            match k {
                "p" => p = Some(v),
                "n" => n = Some(v),
                "e" => e = Some(v),
                _ => return Err(Error::Parse(format!("unknown header key `{k}`"))),
            }
        }
        let (p, n, e) = match (p, n, e) {
            (Some(p), Some(n), Some(e)) if e >= 1 => (p as u32, n, e),
            _ => return Err(Error::Parse("header needs p, n and e >= 1".into())),
        };
        if !crate::ring::is_prime(p as u64) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let mut rows = Vec::new();
        for line in lines {
            let row = line.split(';').map(|c| LaurentPoly::parse(p, c)).collect::<Result<Vec<_>>>()?;
            if row.len() != n * e {
                return Err(Error::Parse(format!("row `{line}` needs {} entries", n * e)));
            }
            rows.push(row);
        }
        Ok(Submodule::from_rebased(p, n, e, rows))
    }
}

pub(crate) fn divisors(m: usize) -> Vec<usize> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(p: u32, s: &str) -> LaurentPoly {
        LaurentPoly::parse(p, s).unwrap()
    }

    fn vecn(p: u32, s: &[&str]) -> RVector {
        RVector::new(p, s.iter().map(|c| lp(p, c)).collect())
    }

    #[test]
    fn rebase_examples() {
        assert_eq!(vecn(2, &["1+x"]).rebase(2), vec![lp(2, "1"), lp(2, "1")]);
        assert_eq!(vecn(2, &["1+x^3"]).rebase(1), vec![lp(2, "1+x^3")]);
        assert_eq!(vecn(2, &["x^2"]).rebase(2), vec![lp(2, "x"), lp(2, "0")]);
        let v = vecn(3, &["x^-5+2*x^4", "1+x+x^7"]);
        for s in 1..5 {
            assert_eq!(RVector::unrebase(3, &v.rebase(s), s), v);
        }
    }

    #[test]
    fn hermite_examples() {
        let u = Submodule::ideal(&lp(2, "x^2+x^3"));
        assert_eq!(u.rows(), &[vec![lp(2, "1+x")]]);
        let u = Submodule::from_rebased(2, 2, 1, vec![vec![lp(2, "1+x"), lp(2, "0")], vec![lp(2, "0"), lp(2, "1")]]);
        assert_eq!(u.rows(), &[vec![lp(2, "1+x"), lp(2, "0")], vec![lp(2, "0"), lp(2, "1")]]);
        let u = Submodule::from_rebased(2, 2, 1, vec![vec![lp(2, "1"), lp(2, "1")], vec![lp(2, "0"), lp(2, "1")]]);
        assert_eq!(u.rows(), &[vec![lp(2, "1"), lp(2, "0")], vec![lp(2, "0"), lp(2, "1")]]);
        assert!(u.is_full());
    }

    #[test]
    fn smith_examples() {
        let g = RMatrix::new(2, 2, vec![vec![lp(2, "x"), lp(2, "1")], vec![lp(2, "1"), lp(2, "x")]]);
        let sd = smith_form(&g);
        assert_eq!(sd.diagonal(), vec![FpPoly::one(2), FpPoly::parse(2, "1+x^2").unwrap()]);
        assert_eq!(sd.a.mul(&sd.d).mul(&sd.b), g);
        let id = RMatrix::identity(3, 3);
        assert_eq!(smith_form(&id).d, id);
        let g = RMatrix::new(2, 2, vec![vec![lp(2, "1+x"), lp(2, "0")], vec![lp(2, "0"), lp(2, "1+x")]]);
        assert_eq!(smith_form(&g).diagonal(), vec![FpPoly::parse(2, "1+x").unwrap(); 2]);
    }

    #[test]
    fn invariants_examples() {
        let u = Submodule::ideal(&lp(2, "1+x"));
        let qi = u.quotient_invariants();
        assert_eq!(qi.det_star, FpPoly::parse(2, "1+x").unwrap());
        assert_eq!(qi.codim, Some(1));
        let qi = Submodule::full(2, 2).quotient_invariants();
        assert_eq!((qi.det_star.clone(), qi.codim), (FpPoly::one(2), Some(0)));
        let qi = Submodule::ideal(&lp(2, "1+x+x^2")).quotient_invariants();
        assert_eq!((qi.det_star.to_string(), qi.codim), ("1+x+x^2".to_string(), Some(2)));
    }

    #[test]
    fn exponent_examples() {
        let u = Submodule::ideal(&lp(2, "1+x")).at_exponent(2);
        assert_eq!(u.declared_exponent(), 2);
        assert_eq!(u.exponent(), 1);
        let u = Submodule::generated(2, 1, 2, &[vecn(2, &["1"])]);
        assert_eq!(u.exponent(), 2);
        assert_eq!(Submodule::zero(2, 1).exponent(), 1);
    }

    #[test]
    fn ops_examples() {
        let a = Submodule::ideal(&lp(2, "1+x"));
        let b = Submodule::ideal(&lp(2, "1+x+x^2"));
        assert_eq!(a.intersect(&b).unwrap(), Submodule::ideal(&lp(2, "1+x^3")));
        assert!(a.contains_vector(&vecn(2, &["1+x"])));
        assert!(!a.contains_vector(&vecn(2, &["1"])));
        assert_eq!(a.sum(&b).unwrap(), Submodule::full(2, 1));
    }

    #[test]
    fn annihilator_examples() {
        let u = Submodule::ideal(&lp(2, "1+x"));
        assert_eq!(u.annihilator(&vecn(2, &["1"])).to_string(), "1+x");
        assert_eq!(u.annihilator(&vecn(2, &["x+x^2"])).to_string(), "1");
        let u = Submodule::from_rebased(2, 2, 1, vec![vec![lp(2, "0"), lp(2, "1+x")]]);
        assert!(u.annihilator(&vecn(2, &["1", "0"])).is_zero());
    }

    #[test]
    fn decompose_splits() {
        let a = Submodule::ideal(&lp(3, "1+x"));
        let b = Submodule::ideal(&lp(3, "1+x^2"));
        let z = vecn(3, &["x^-2+x^3"]);
        let (u, w) = a.decompose(&b, &z).unwrap();
        assert!(a.contains_vector(&u) && b.contains_vector(&w));
        assert_eq!(u.add(&w), z);
    }

    #[test]
    fn block_roundtrip() {
        let u = Submodule::generated(3, 2, 2, &[vecn(3, &["1+x", "x^-1"]), vecn(3, &["0", "1+x^2"])]);
        let t = u.to_block();
        assert_eq!(Submodule::from_block(&t).unwrap(), u);
        assert!(Submodule::from_block("p=4 n=1 e=1").is_err());
    }

    #[test]
    fn det_bareiss() {
        let g = RMatrix::new(2, 2, vec![vec![lp(2, "x"), lp(2, "1")], vec![lp(2, "1"), lp(2, "x")]]);
        assert_eq!(g.det(), lp(2, "1+x^2"));
    }
}
