//! The `p`-regular rooted tree of cosets of `H_m = (1−x)^m R ⋊ ℤ` in `𝓛_1`.
//!
//! A word `ω = ω_0…ω_{m−1}` names the coset `(ω̄, 0)H_m` with
//! `ω̄ = Σ ω_i (x−1)^i`. Group elements act on the left: `g` sends the
//! coset `C` to `gC`.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{GroupElement, SubgroupTriple};
use crate::ring::{FpPoly, LaurentPoly};
use crate::rmodule::{RVector, Submodule};

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct TreeWord {
    p: u32,
    letters: Vec<u32>,
}

impl TreeWord {
    pub fn new(p: u32, letters: Vec<u32>) -> Result<Self> {
        if let Some(&l) = letters.iter().find(|&&l| l >= p) {
            return Err(Error::Invalid(format!("letter {l} is outside 0..{p}")));
        }
        Ok(TreeWord { p, letters })
    }

    pub fn empty(p: u32) -> Self {
        TreeWord { p, letters: Vec::new() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn prefix(&self, m: usize) -> TreeWord {
        TreeWord { p: self.p, letters: self.letters[..m.min(self.len())].to_vec() }
    }

    /// Digits only, e.g. `"0110"`; letters above 9 need `p ≤ 10` to stay
    /// unambiguous, so larger primes use `.`-separated numbers.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        let s = s.trim();
        let letters: Option<Vec<u32>> = if s.contains('.') {
            s.split('.').map(|t| t.trim().parse::<u32>().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10)).collect()
        };
        let letters = letters.ok_or_else(|| Error::Parse(format!("`{s}` is not a word")))?;
        Self::new(p, letters)
    }

    /// All words of length `m`, in lexicographic order.
    pub fn all(p: u32, m: usize) -> Vec<TreeWord> {
        let mut out = vec![TreeWord::empty(p)];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..p).map(move |l| {
                        let mut letters = w.letters.clone();
                        letters.push(l);
                        TreeWord { p, letters }
                    })
                })
                .collect();
        }
        out
    }

    /// `ω̄ = Σ ω_i (x−1)^i`.
    pub fn bar(&self) -> FpPoly {
        let y = FpPoly::from_i64(self.p, &[-1, 1]);
        let mut acc = FpPoly::zero(self.p);
        for &l in self.letters.iter().rev() {
            acc = &(&acc * &y) + &FpPoly::constant(self.p, l);
        }
        acc
    }
}

impl fmt::Display for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.p > 10 { "." } else { "" };
        let parts: Vec<String> = self.letters.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(sep))
    }
}

/// Representative `(ω̄, 0)` of the coset named by `ω`.
pub fn word_to_coset(w: &TreeWord) -> GroupElement {
    GroupElement::new(RVector::new(w.p, vec![w.bar().to_laurent()]), 0)
}

/// `(x−1)`-adic digits of `v` modulo `(1−x)^m`.
pub fn coset_to_word(v: &LaurentPoly, m: usize) -> TreeWord {
    let p = v.p();
    let (_, mut r) = v.div_rem_canonical(&FpPoly::one_minus_x_pow(p, 1).pow(m as u64));
    let y = FpPoly::from_i64(p, &[-1, 1]);
    let mut letters = Vec::with_capacity(m);
    for _ in 0..m {
        let d = r.eval(1);
        letters.push(d);
        r = (&r - &FpPoly::constant(p, d)).div_exact(&y).expect("root at 1");
    }
    TreeWord { p, letters }
}

/// Image of the vertex `ω` under `g`, computed on cosets.
pub fn act(g: &GroupElement, w: &TreeWord) -> Result<TreeWord> {
    if g.n() != 1 || g.p() != w.p {
        return Err(Error::AmbientMismatch("the tree action needs n = 1 and matching p".into()));
    }
    let img = &g.v.coords()[0] + &w.bar().to_laurent().shift(g.s);
    Ok(coset_to_word(&img, w.len()))
}

/// `b = (e, 0)` by the letter rule: bump the first letter.
pub fn act_b(w: &TreeWord) -> TreeWord {
    let mut letters = w.letters.clone();
    if let Some(l) = letters.first_mut() {
        *l = (*l + 1) % w.p;
    }
    TreeWord { p: w.p, letters }
}

/// `a = (0, 1)` by the letter rule: add the previous letter.
pub fn act_a(w: &TreeWord) -> TreeWord {
    let l = &w.letters;
    let letters = (0..l.len()).map(|i| if i == 0 { l[0] } else { (l[i] + l[i - 1]) % w.p }).collect();
    TreeWord { p: w.p, letters }
}

/// `Stab(ω) = (1, (1−x)^{|ω|}R, (1−x)ω̄)`.
pub fn vertex_stabilizer(w: &TreeWord) -> SubgroupTriple {
    let p = w.p;
    let f = FpPoly::one_minus_x(p);
    let v0 = Submodule::ideal(&f.pow(w.len() as u64).to_laurent());
    let v = RVector::new(p, vec![(&f * &w.bar()).to_laurent()]);
    SubgroupTriple::new(1, v0, v).expect("exponent 1")
}

/// `(p^e, (1−x)^m R, 0)` with `p^e ≥ m` least.
pub fn level_stabilizer(p: u32, m: usize) -> SubgroupTriple {
    let mut pe = 1u64;
    while (pe as usize) < m {
        pe *= p as u64;
    }
    let v0 = Submodule::ideal(&FpPoly::one_minus_x(p).pow(m as u64).to_laurent());
    SubgroupTriple::new(pe, v0, RVector::zero(p, 1)).expect("(1-x)^m divides 1-x^pe")
}

/// An eventually periodic ray `u q q q …`, kept in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RaySpec {
    preperiod: TreeWord,
    period: TreeWord,
}

impl RaySpec {
    pub fn new(preperiod: TreeWord, period: TreeWord) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Invalid("the period of a ray is nonempty".into()));
        }
        if preperiod.p != period.p {
            return Err(Error::ModulusMismatch(preperiod.p, period.p));
        }
        let p = period.p;
        let mut q = period.letters;
        let k = q.len();
        if let Some(d) = (1..=k).find(|&d| k.is_multiple_of(d) && (d..k).all(|i| q[i] == q[i - d])) {
            q.truncate(d);
        }
        let mut u = preperiod.letters;
        while u.last() == q.last() && !u.is_empty() {
            u.pop();
            q.rotate_right(1);
        }
        Ok(RaySpec { preperiod: TreeWord { p, letters: u }, period: TreeWord { p, letters: q } })
    }

    /// `"u(q)"`, e.g. `"1(0)"` for `1000…` and `"(1)"` for `111…`.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not of the form u(q)"));
        let (u, rest) = s.split_once('(').ok_or_else(bad)?;
        let q = rest.strip_suffix(')').ok_or_else(bad)?;
        Self::new(TreeWord::parse(p, u)?, TreeWord::parse(p, q)?)
    }

    pub fn p(&self) -> u32 {
        self.period.p
    }

    pub fn preperiod(&self) -> &TreeWord {
        &self.preperiod
    }

    pub fn period(&self) -> &TreeWord {
        &self.period
    }

    pub fn prefix(&self, m: usize) -> TreeWord {
        let (u, q) = (&self.preperiod.letters, &self.period.letters);
        let letters = (0..m).map(|i| if i < u.len() { u[i] } else { q[(i - u.len()) % q.len()] }).collect();
        TreeWord { p: self.p(), letters }
    }

    /// `ω̄` as a reduced fraction `(num, den)` of polynomials in `x`.
    pub fn bar_fraction(&self) -> (FpPoly, FpPoly) {
        let p = self.p();
        let (k, l) = (self.preperiod.len(), self.period.len());
        let y = FpPoly::from_i64(p, &[-1, 1]);
        let den = &FpPoly::one(p) - &y.pow(l as u64);
        let num = &(&self.preperiod.bar() * &den) + &(&y.pow(k as u64) * &self.period.bar());
        let g = num.gcd(&den);
        (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
    }
}

impl fmt::Display for RaySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.preperiod, self.period)
    }
}

/// Generator `(w, s)` of the ray stabilizer.
///
/// Writing `ω̄ = N/D` with `D = x^a·D′`, `D′(0) ≠ 0`, the least `s` with
/// `ω̄ ∈ (1−x^s)^{−1}R` is the order of `x` modulo `D′`, and `x^a` is a
/// unit of `R`. Every eventually periodic ray therefore has a nontrivial
/// stabilizer.
pub fn ray_stabilizer(ray: &RaySpec) -> Result<GroupElement> {
    let p = ray.p();
    let (num, den) = ray.bar_fraction();
    let (c, a, d) = den.to_laurent().split_unit().expect("nonzero denominator");
    let s = d.ord_x_mod()?;
    let cofactor = FpPoly::one_minus_x_pow(p, s as usize).div_exact(&d).expect("d | 1-x^s");
    let w = (&num * &cofactor).to_laurent().shift(-a).scale(crate::ring::inv_mod(c, p));
    Ok(GroupElement::new(RVector::new(p, vec![w]), s as i64))
}

/// Finite-state presentation: state `i` on input `ℓ` emits `out[i][ℓ]` and
/// moves to `next[i][ℓ]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MooreAutomaton {
    pub p: u32,
    pub out: Vec<Vec<u32>>,
    pub next: Vec<Vec<usize>>,
}

impl MooreAutomaton {
    pub fn run(&self, state: usize, w: &TreeWord) -> TreeWord {
        let mut q = state;
        let mut letters = Vec::with_capacity(w.len());
        for &l in &w.letters {
            letters.push(self.out[q][l as usize]);
            q = self.next[q][l as usize];
        }
        TreeWord { p: self.p, letters }
    }

    /// States `a0…`, edges by source then input letter, labelled `(in,out)`.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph moore {\n");
        for i in 0..self.out.len() {
            s.push_str(&format!("  a{i};\n"));
        }
        for i in 0..self.out.len() {
            for l in 0..self.p as usize {
                s.push_str(&format!("  a{i} -> a{} [label=\"({l},{})\"];\n", self.next[i][l], self.out[i][l]));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// The automaton of the recursion `a = (a, ba, …, b^{p−1}a)` with sections
/// composed left to right: state `i` is "`b^i`, then `a`". On input `ℓ` it
/// emits `ℓ+i` and moves to state `ℓ+i`.
///
/// State `0` computes [`running_sums`]. That map is not `act(a, ·)`: it is
/// `act(a⁻¹, ·)` for `p = 2` and lies outside the image of the group for odd
/// `p`. [`coset_automaton`] is the table that agrees with [`act`].
pub fn wreath_recursion(p: u32) -> MooreAutomaton {
    let pu = p as usize;
    let out = (0..p).map(|i| (0..p).map(|l| (l + i) % p).collect()).collect();
    let next = (0..pu).map(|i| (0..pu).map(|l| (l + i) % pu).collect()).collect();
    MooreAutomaton { p, out, next }
}

/// States `i ↦ bⁱ·a` for the coset action: on input `ℓ`, emit `ℓ+i` and
/// move to state `ℓ`, since `a(ℓω) = ℓ·(bˡa)(ω)`.
pub fn coset_automaton(p: u32) -> MooreAutomaton {
    let pu = p as usize;
    let out = (0..p).map(|i| (0..p).map(|l| (l + i) % p).collect()).collect();
    let next = (0..pu).map(|_| (0..pu).collect()).collect();
    MooreAutomaton { p, out, next }
}

/// `ω ↦ (ω₀, ω₀+ω₁, ω₀+ω₁+ω₂, …)`.
pub fn running_sums(w: &TreeWord) -> TreeWord {
    let mut acc = 0;
    let letters = w.letters.iter().map(|&l| {
        acc = (acc + l) % w.p;
        acc
    });
    TreeWord { p: w.p, letters: letters.collect() }
}

pub fn moore_dot(p: u32) -> String {
    wreath_recursion(p).to_dot()
}

/// Coset tree to depth `m` as DOT; vertices named by their words.
pub fn tree_dot(p: u32, m: usize) -> String {
    let mut s = String::from("digraph tree {\n  \"\" [label=\"root\"];\n");
    for d in 1..=m {
        for w in TreeWord::all(p, d) {
            s.push_str(&format!("  \"{}\" -> \"{w}\";\n", w.prefix(d - 1)));
        }
    }
    s.push_str("}\n");
    s
}
