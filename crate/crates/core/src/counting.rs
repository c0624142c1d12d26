//! Subgroup counts by closed form and by exhaustive enumeration, plus a
//! finite-quotient brute-force oracle.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{GroupElement, SubgroupTriple};
use crate::ring::{polys_below_degree, FpPoly, LaurentPoly, NormalizedPolys};
use crate::rmodule::{RVector, Submodule};

/// Default cap on `p^{tk}` for submodule enumeration.
pub const DEFAULT_SUBMODULE_BUDGET: u128 = 1 << 16;
/// Default cap on the order of an explicit finite quotient.
pub const DEFAULT_QUOTIENT_BUDGET: u128 = 1 << 14;

fn big_pow(p: u32, e: usize) -> BigUint {
    BigUint::from(p).pow(e as u32)
}

/// Number of codimension-`t` submodules of `R^k`.
pub fn b_t(p: u32, k: usize, t: usize) -> BigUint {
    if t == 0 {
        return BigUint::one();
    }
    big_pow(p, t * k) - big_pow(p, (t - 1) * k)
}

/// `(s, t)` with `s·p^t = m`.
fn strata(p: u32, m: u64) -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    let mut s = m;
    let mut t = 0;
    loop {
        out.push((s, t));
        if !s.is_multiple_of(p as u64) {
            break;
        }
        s /= p as u64;
        t += 1;
    }
    out
}

/// Number of subgroups of index `m` in `𝓛_n`.
pub fn a_m(p: u32, n: usize, m: u64) -> BigUint {
    assert!(m >= 1);
    strata(p, m).into_iter().map(|(s, t)| b_t(p, n * s as usize, t) * big_pow(p, t)).sum()
}

/// Number of subgroups of index at most `m`.
pub fn s_m(p: u32, n: usize, m: u64) -> BigUint {
    (1..=m).map(|d| a_m(p, n, d)).sum()
}

/// `p·(p^{n⌊m/p⌋+1} − 1)`.
pub fn s_m_lower_bound(p: u32, n: usize, m: u64) -> BigUint {
    let e = n * (m / p as u64) as usize + 1;
    BigUint::from(p) * (big_pow(p, e) - BigUint::one())
}

fn check_budget(p: u32, exp: usize, budget: u128) -> Result<()> {
    let needed = (p as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    Ok(())
}

/// Compositions of `t` into `k` nonnegative parts.
fn compositions(t: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if t == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=t {
        for mut rest in compositions(t - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Hermite bases of all codimension-`t` submodules of `R^k`, as rows.
fn hermite_bases(p: u32, k: usize, t: usize) -> Vec<Vec<Vec<LaurentPoly>>> {
    let mut out = Vec::new();
    for_each_hermite_basis(p, k, t, &mut |rows| out.push(rows));
    out
}

fn for_each_hermite_basis(p: u32, k: usize, t: usize, f: &mut dyn FnMut(Vec<Vec<LaurentPoly>>)) {
    for degs in compositions(t, k) {
        // every column j contributes a pivot of degree d_j and one free
        // residue of degree < d_j in each later row
        let mut slots: Vec<Vec<FpPoly>> = Vec::new();
        let mut layout: Vec<(usize, usize)> = Vec::new();
        for (j, &d) in degs.iter().enumerate() {
            slots.push(NormalizedPolys::new(p, d).collect());
            layout.push((j, j));
            for i in j + 1..k {
                slots.push(polys_below_degree(p, d).collect());
                layout.push((i, j));
            }
        }
        let mut idx = vec![0usize; slots.len()];
        'outer: loop {
            let mut rows = vec![vec![LaurentPoly::zero(p); k]; k];
            for (sl, (&(i, j), &c)) in slots.iter().zip(layout.iter().zip(&idx)) {
                rows[i][j] = sl[c].to_laurent();
            }
            f(rows);
            for pos in (0..idx.len()).rev() {
                idx[pos] += 1;
                if idx[pos] < slots[pos].len() {
                    continue 'outer;
                }
                idx[pos] = 0;
            }
            break;
        }
    }
}

/// All codimension-`t` submodules of `R^k` (at exponent 1 with `n = k`).
pub fn enumerate_submodules(p: u32, k: usize, t: usize, budget: u128) -> Result<Vec<Submodule>> {
    check_budget(p, t * k, budget)?;
    Ok(hermite_bases(p, k, t).into_iter().map(|rows| Submodule::from_rebased(p, k, 1, rows)).collect())
}

/// Canonical coset representatives of `R^k/U` for full-rank Hermite `U`.
pub fn coset_representatives(u: &Submodule) -> Vec<Vec<LaurentPoly>> {
    let p = u.p();
    let k = u.ambient_rank();
    let mut choices: Vec<Vec<FpPoly>> = vec![vec![FpPoly::zero(p)]; k];
    for (row, &c) in u.rows().iter().zip(u.pivots()) {
        choices[c] = polys_below_degree(p, row[c].body().degree().unwrap()).collect();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    'outer: loop {
        out.push((0..k).map(|j| choices[j][idx[j]].to_laurent()).collect());
        for pos in (0..k).rev() {
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        break;
    }
    out
}

/// All subgroups of index `m` in `𝓛_n`, sorted by text form.
pub fn enumerate_subgroups(p: u32, n: usize, m: u64, budget: u128) -> Result<Vec<SubgroupTriple>> {
    let mut out = Vec::new();
    for_each_subgroup(p, n, m, budget, |t| out.push(t))?;
    out.sort_by_cached_key(SubgroupTriple::to_text);
    Ok(out)
}

/// Streams the subgroups of index `m` without collecting them.
pub fn for_each_subgroup(p: u32, n: usize, m: u64, budget: u128, mut f: impl FnMut(SubgroupTriple)) -> Result<()> {
    for (s, t) in strata(p, m) {
        let k = n * s as usize;
        check_budget(p, t * k + t, budget)?;
        for_each_hermite_basis(p, k, t, &mut |rows| {
            let u = Submodule::from_rebased(p, n, s as usize, rows);
            let u_min = u.minimized();
            for w in coset_representatives(&u) {
                let v = RVector::unrebase(p, &w, s as usize);
                f(SubgroupTriple::from_minimized(s, u_min.clone(), v));
            }
        });
    }
    Ok(())
}

/// `|ker(1−x)|` on `Rⁿ/M` for an `x`-invariant `M`.
pub fn tau(m: &Submodule) -> Result<BigUint> {
    let m = m.minimized();
    if m.declared_exponent() != 1 {
        return Err(Error::Invalid("tau needs an x-invariant submodule".into()));
    }
    let one_minus_x = FpPoly::one_minus_x(m.p());
    let inv = m.invariants_at_declared();
    let k = inv.invariant_factors.iter().filter(|f| one_minus_x.divides(f)).count();
    Ok(big_pow(m.p(), k))
}

/// Number of normal subgroups of index `m` in `𝓛_n`.
pub fn count_normal(p: u32, n: usize, m: u64, budget: u128) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for (s, t) in strata(p, m) {
        let c = FpPoly::one_minus_x_pow(p, s as usize).to_laurent();
        let kernel: Vec<RVector> = (0..n).map(|i| RVector::unit(p, n, i).mul_scalar(&c)).collect();
        for u in enumerate_submodules(p, n, t, budget)? {
            if kernel.iter().all(|w| u.contains_vector(w)) {
                total += tau(&u)?;
            }
        }
    }
    Ok(total)
}

/// One row of a count table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountRow {
    pub m: u64,
    pub a_m: BigUint,
    pub normal_m: BigUint,
    pub s_m: BigUint,
    pub normal_s_m: BigUint,
    pub lower_bound: BigUint,
}

/// Counts for `m = 1..=max_m`.
pub fn count_table(p: u32, n: usize, max_m: u64, budget: u128) -> Result<Vec<CountRow>> {
    let mut rows = Vec::new();
    let mut s = BigUint::zero();
    let mut sn = BigUint::zero();
    for m in 1..=max_m {
        let a = a_m(p, n, m);
        let nm = count_normal(p, n, m, budget)?;
        s += &a;
        sn += &nm;
        rows.push(CountRow {
            m,
            a_m: a,
            normal_m: nm,
            s_m: s.clone(),
            normal_s_m: sn.clone(),
            lower_bound: s_m_lower_bound(p, n, m),
        });
    }
    Ok(rows)
}

/// CSV with header `m,a_m,normal_m,s_m,lower_bound`.
pub fn count_table_csv(rows: &[CountRow]) -> String {
    let mut out = String::from("m,a_m,normal_m,s_m,lower_bound\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{},{}\n", r.m, r.a_m, r.normal_m, r.s_m, r.lower_bound));
    }
    out
}

/// A subset of a finite group, as a bitset over element codes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementSet(Vec<u64>);

impl ElementSet {
    fn new(order: usize) -> Self {
        ElementSet(vec![0; order.div_ceil(64)])
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        self.0[i / 64] |= 1 << (i % 64);
        !had
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }

    pub fn is_subset(&self, o: &ElementSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
}

/// `((𝔽_p[x]/g)ⁿ) ⋊ ℤ/r`, the quotient of `𝓛_n` by `(r, g·Rⁿ, 0)`.
///
/// Elements are coded as `s·p^{n·deg g} + digits(v)`.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    p: u32,
    n: usize,
    g: FpPoly,
    r: u64,
    dim: usize,
    base_size: usize,
    /// `shift[s][w]` is the code of `x^s·w`.
    shift: Vec<Vec<u32>>,
}

impl FiniteQuotient {
    pub fn new(p: u32, n: usize, g: &FpPoly, r: u64, budget: u128) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("the cyclic factor needs r >= 1".into()));
        }
        let g = g.const_normalized();
        if g.is_zero() || g.coeff(0) == 0 {
            return Err(Error::ConstantTermZero);
        }
        if !g.divides(&FpPoly::one_minus_x_pow(p, r as usize)) {
            return Err(Error::Invalid(format!("{g} does not divide 1-x^{r}")));
        }
        let d = g.degree().unwrap();
        let dim = n * d;
        let order = (r as u128).saturating_mul((p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX));
        if order > budget {
            return Err(Error::Budget { needed: order, budget });
        }
        let base_size = (p as usize).pow(dim as u32);
        let mut q = FiniteQuotient { p, n, g, r, dim, base_size, shift: Vec::new() };
        let x = FpPoly::x(p);
        let mut shift = Vec::with_capacity(r as usize);
        let mut xs = FpPoly::one(p);
        for _ in 0..r {
            let row: Vec<u32> = (0..base_size)
                .map(|w| {
                    let polys = q.decode_base(w);
                    let moved: Vec<FpPoly> = polys.iter().map(|f| (f * &xs).rem(&q.g)).collect();
                    q.encode_base(&moved) as u32
                })
                .collect();
            shift.push(row);
            xs = (&xs * &x).rem(&q.g);
        }
        q.shift = shift;
        Ok(q)
    }

    /// The quotient by `B_{1−x^r, r}`.
    pub fn by_cyclic(p: u32, n: usize, r: u64, budget: u128) -> Result<Self> {
        Self::new(p, n, &FpPoly::one_minus_x_pow(p, r as usize), r, budget)
    }

    pub fn order(&self) -> usize {
        self.base_size * self.r as usize
    }

    pub fn modulus(&self) -> &FpPoly {
        &self.g
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    fn decode_base(&self, mut w: usize) -> Vec<FpPoly> {
        let d = self.g.degree().unwrap();
        let mut out = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let mut c = Vec::with_capacity(d);
            for _ in 0..d {
                c.push((w % self.p as usize) as u32);
                w /= self.p as usize;
            }
            out.push(FpPoly::new(self.p, c));
        }
        out
    }

    fn encode_base(&self, polys: &[FpPoly]) -> usize {
        let d = self.g.degree().unwrap();
        let mut code = 0usize;
        for f in polys.iter().rev() {
            for i in (0..d).rev() {
                code = code * self.p as usize + f.coeff(i) as usize;
            }
        }
        code
    }

    fn add_base(&self, a: usize, b: usize) -> usize {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p as usize;
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.dim {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    fn neg_base(&self, a: usize) -> usize {
        if self.p == 2 {
            return a;
        }
        let p = self.p as usize;
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.dim {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (sa, va) = (a / self.base_size, a % self.base_size);
        let (sb, vb) = (b / self.base_size, b % self.base_size);
        let v = self.add_base(va, self.shift[sa][vb] as usize);
        ((sa + sb) % self.r as usize) * self.base_size + v
    }

    pub fn inv(&self, a: usize) -> usize {
        let (sa, va) = (a / self.base_size, a % self.base_size);
        let si = (self.r as usize - sa) % self.r as usize;
        // (v,s)⁻¹ = (−x^{−s}v, −s)
        si * self.base_size + self.neg_base(self.shift[si][va] as usize)
    }

    /// Image of a group element.
    pub fn project(&self, g: &GroupElement) -> usize {
        let polys: Vec<FpPoly> =
            g.v.coords()
                .iter()
                .map(|c| if self.g.degree() == Some(0) { FpPoly::zero(self.p) } else { c.div_rem_canonical(&self.g).1 })
                .collect();
        let s = g.s.rem_euclid(self.r as i64) as usize;
        s * self.base_size + self.encode_base(&polys)
    }

    /// The subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> ElementSet {
        self.extend(&ElementSet::singleton(self.order(), 0), gens)
    }

    /// `⟨h, gens⟩`, where `gens` must include generators of `h`.
    pub fn extend(&self, h: &ElementSet, gens: &[usize]) -> ElementSet {
        let mut set = h.clone();
        let mut queue: VecDeque<usize> = h.iter().collect();
        while let Some(a) = queue.pop_front() {
            for &g in gens {
                let b = self.mul(a, g);
                if set.insert(b) {
                    queue.push_back(b);
                }
            }
        }
        set
    }

    /// Images of generators of a subgroup triple.
    pub fn image_generators(&self, t: &SubgroupTriple) -> Vec<usize> {
        if t.s() == 0 {
            // x^r acts trivially here, so finitely many shifts suffice
            let e = t.v0().declared_exponent() as i64;
            let mut gens = Vec::new();
            for g in t.v0().generators() {
                for j in 0..self.r as i64 {
                    gens.push(self.project(&GroupElement::new(g.shift(j * e), 0)));
                }
            }
            return gens;
        }
        t.generators().expect("positive projection").iter().map(|g| self.project(g)).collect()
    }

    /// Image of a subgroup triple.
    pub fn image(&self, t: &SubgroupTriple) -> ElementSet {
        self.closure(&self.image_generators(t))
    }

    pub fn is_normal(&self, h: &ElementSet) -> bool {
        let gens = self.generator_codes();
        h.iter().all(|a| gens.iter().all(|&g| h.contains(self.mul(self.mul(g, a), self.inv(g)))))
    }

    /// Images of the standard generators.
    pub fn generator_codes(&self) -> Vec<usize> {
        GroupElement::standard_generators(self.p, self.n).iter().map(|g| self.project(g)).collect()
    }

    /// Maximality of `h = ⟨h_gens⟩` among subgroups of this finite group.
    pub fn is_maximal(&self, h: &ElementSet, h_gens: &[usize]) -> bool {
        let order = self.order();
        if h.len() == order {
            return false;
        }
        let mut done = ElementSet::new(order);
        let mut gens = h_gens.to_vec();
        gens.push(0);
        for g in 0..order {
            if h.contains(g) || done.contains(g) {
                continue;
            }
            *gens.last_mut().unwrap() = g;
            if self.extend(h, &gens).len() != order {
                return false;
            }
            // every element of h·g·h gives the same subgroup
            for a in h.iter() {
                let ag = self.mul(a, g);
                for b in h.iter() {
                    done.insert(self.mul(ag, b));
                }
            }
        }
        true
    }

    /// Every subgroup, built by cyclic extension from the trivial group.
    pub fn all_subgroups(&self, max_count: usize) -> Result<Vec<ElementSet>> {
        let order = self.order();
        let trivial = ElementSet::singleton(order, 0);
        let mut seen: HashSet<ElementSet> = HashSet::new();
        seen.insert(trivial.clone());
        let mut layer = vec![(trivial, Vec::<usize>::new())];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for (h, h_gens) in &layer {
                let mut covered = h.clone();
                let mut gens = h_gens.clone();
                gens.push(0);
                for g in 0..order {
                    if covered.contains(g) {
                        continue;
                    }
                    *gens.last_mut().unwrap() = g;
                    let k = self.extend(h, &gens);
                    // ⟨h, a·g⟩ = ⟨h, g·a⟩ = ⟨h, g⟩ for a in h
                    for a in h.iter() {
                        covered.insert(self.mul(a, g));
                        covered.insert(self.mul(g, a));
                    }
                    if seen.insert(k.clone()) {
                        if seen.len() > max_count {
                            return Err(Error::Budget { needed: seen.len() as u128, budget: max_count as u128 });
                        }
                        next.push((k, gens.clone()));
                    }
                }
            }
            layer = next;
        }
        let mut all: Vec<ElementSet> = seen.into_iter().collect();
        all.sort_by_key(|h| (h.len(), h.0.clone()));
        Ok(all)
    }

    /// Number of subgroups of index `m`, by exhaustive enumeration.
    pub fn count_index(&self, m: usize, max_count: usize) -> Result<usize> {
        let order = self.order();
        Ok(self.all_subgroups(max_count)?.iter().filter(|h| h.len() * m == order).count())
    }
}

impl ElementSet {
    fn singleton(order: usize, i: usize) -> Self {
        let mut s = Self::new(order);
        s.insert(i);
        s
    }
}

/// A finite quotient `𝓛_n/N` with `N ⊆ t` normal, for finite-index `t`.
pub fn quotient_for(t: &SubgroupTriple, budget: u128) -> Result<FiniteQuotient> {
    let (p, n) = (t.p(), t.n());
    if t.index().is_none() {
        return Err(Error::Invalid("finite index required".into()));
    }
    // largest x-invariant submodule of V₀, then its annihilator
    let v0 = t.v0();
    let e = v0.declared_exponent();
    let mut core = v0.clone();
    for j in 1..e {
        core = core.intersect(&v0.shifted(j as i64))?;
    }
    let core = core.minimized();
    let g = core.invariants_at_declared().invariant_factors.last().cloned().unwrap_or_else(|| FpPoly::one(p));
    let base = g.ord_x_mod()?;
    let step = num_integer::lcm(base, t.s());
    let mut r = step;
    while !t.member(&GroupElement::new(RVector::zero(p, n), r as i64)) {
        r += step;
    }
    FiniteQuotient::new(p, n, &g, r, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(b_t(2, 1, 1), BigUint::from(1u8));
        assert_eq!(b_t(2, 2, 2), BigUint::from(12u8));
        assert_eq!(b_t(5, 3, 0), BigUint::from(1u8));
        assert_eq!(a_m(2, 1, 1), BigUint::from(1u8));
        assert_eq!(a_m(2, 1, 2), BigUint::from(3u8));
        assert_eq!(a_m(3, 1, 3), BigUint::from(7u8));
        assert_eq!(s_m_lower_bound(2, 1, 16), BigUint::from(1022u32));
    }

    #[test]
    fn submodule_enumeration() {
        let one = enumerate_submodules(2, 1, 1, DEFAULT_SUBMODULE_BUDGET).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].rows()[0][0].to_string(), "1+x");
        assert_eq!(enumerate_submodules(2, 1, 2, DEFAULT_SUBMODULE_BUDGET).unwrap().len(), 2);
        let full = enumerate_submodules(2, 2, 0, DEFAULT_SUBMODULE_BUDGET).unwrap();
        assert_eq!(full.len(), 1);
        assert!(full[0].is_full());
        assert!(enumerate_submodules(2, 4, 5, DEFAULT_SUBMODULE_BUDGET).is_err());
    }

    #[test]
    fn subgroup_enumeration() {
        let subs = enumerate_subgroups(2, 1, 2, DEFAULT_SUBMODULE_BUDGET).unwrap();
        let texts: Vec<String> = subs.iter().map(|t| t.to_text()).collect();
        assert_eq!(texts, vec!["s=1;V0=[e=1: 1+x];v=0", "s=1;V0=[e=1: 1+x];v=1", "s=2;V0=R;v=0"]);
        assert_eq!(enumerate_subgroups(2, 1, 1, DEFAULT_SUBMODULE_BUDGET).unwrap(), vec![SubgroupTriple::whole(2, 1)]);
        assert_eq!(enumerate_subgroups(3, 1, 3, DEFAULT_SUBMODULE_BUDGET).unwrap().len(), 7);
    }

    #[test]
    fn normal_counts() {
        assert_eq!(count_normal(2, 1, 2, DEFAULT_SUBMODULE_BUDGET).unwrap(), BigUint::from(3u8));
        assert_eq!(tau(&Submodule::full(2, 3)).unwrap(), BigUint::one());
        let m = Submodule::ideal(&LaurentPoly::parse(2, "1+x^2").unwrap());
        assert_eq!(tau(&m).unwrap(), BigUint::from(2u8));
    }

    #[test]
    fn finite_quotients() {
        let q = FiniteQuotient::by_cyclic(2, 1, 2, DEFAULT_QUOTIENT_BUDGET).unwrap();
        assert_eq!(q.order(), 8);
        assert_eq!(q.count_index(2, 1 << 12).unwrap(), 3);
        let t = SubgroupTriple::parse(2, 1, "s=1; V0=[e=1: 1+x]; v=0").unwrap();
        assert_eq!(q.image(&t).len(), 4);
        let k = FiniteQuotient::by_cyclic(2, 1, 1, DEFAULT_QUOTIENT_BUDGET).unwrap();
        assert_eq!(k.order(), 2);
        assert!(FiniteQuotient::by_cyclic(2, 1, 40, DEFAULT_QUOTIENT_BUDGET).is_err());
    }

    #[test]
    fn group_laws_in_quotient() {
        let q = FiniteQuotient::by_cyclic(3, 1, 3, DEFAULT_QUOTIENT_BUDGET).unwrap();
        for a in 0..q.order() {
            assert_eq!(q.mul(a, q.inv(a)), 0);
            for b in (0..q.order()).step_by(7) {
                for c in (0..q.order()).step_by(11) {
                    assert_eq!(q.mul(q.mul(a, b), c), q.mul(a, q.mul(b, c)));
                }
            }
        }
    }
}
