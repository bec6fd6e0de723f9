//! Sparse multivariate Laurent polynomials and the two products they carry:
//!
//! ```text
//! F_n(x; a)    = ∏_{i<j} (1 - x_i/x_j)^{a_j} (1 - x_j/x_i)^{a_i}
//! 𝓕_n(x; a; q) = ∏_{i<j} (x_i q/x_j; q)_{a_j} (x_j/x_i; q)_{a_i}
//! ```
//!
//! Every factor touches two variables and is a polynomial in one ratio
//! `x_p/x_m`, so it is stored as a single coefficient row ([`RatioFactor`])
//! instead of being expanded through the general multiplication.

use std::borrow::Borrow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::{binomial, gauss_binomial, CoeffRing, QPoly};

/// Default cap on the number of live terms during an expansion.
pub const DEFAULT_TERM_CAP: usize = 50_000_000;

/// Exponent vector of a monomial `x_1^{e_1} ... x_n^{e_n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec(SmallVec<[i32; 8]>);

impl ExpVec {
    pub fn zeros(n: usize) -> Self {
        ExpVec(SmallVec::from_elem(0, n))
    }

    pub fn new(exps: &[i32]) -> Self {
        ExpVec(SmallVec::from_slice(exps))
    }

    /// `e_k` with a 0-based position.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut e = ExpVec::zeros(n);
        e.0[k] = 1;
        e
    }

    pub fn total(&self) -> i64 {
        self.0.iter().map(|&e| i64::from(e)).sum()
    }

    pub fn as_mut_slice(&mut self) -> &mut [i32] {
        &mut self.0
    }

    /// Copy with position `k` (0-based) deleted.
    pub fn without(&self, k: usize) -> ExpVec {
        let mut v = self.0.clone();
        v.remove(k);
        ExpVec(v)
    }
}

impl Deref for ExpVec {
    type Target = [i32];
    fn deref(&self) -> &[i32] {
        &self.0
    }
}

impl Borrow<[i32]> for ExpVec {
    fn borrow(&self) -> &[i32] {
        &self.0
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.0[..])
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("]")
    }
}

impl From<Vec<i32>> for ExpVec {
    fn from(v: Vec<i32>) -> Self {
        ExpVec(SmallVec::from_vec(v))
    }
}

/// Dyson parameters `a = <a_1, ..., a_n>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AVec(Vec<u32>);

impl AVec {
    pub fn new(a: Vec<u32>) -> Self {
        AVec(a)
    }

    /// `σ_n(a)`.
    pub fn sigma(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn without(&self, k: usize) -> AVec {
        let mut v = self.0.clone();
        v.remove(k);
        AVec(v)
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl Deref for AVec {
    type Target = [u32];
    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for AVec {
    fn from(v: Vec<u32>) -> Self {
        AVec(v)
    }
}

impl From<&[u32]> for AVec {
    fn from(v: &[u32]) -> Self {
        AVec(v.to_vec())
    }
}

/// Sparse Laurent polynomial in `n` variables. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPoly<R> {
    n: usize,
    terms: HashMap<ExpVec, R>,
}

impl<R: CoeffRing> LaurentPoly<R> {
    pub fn zero(n: usize) -> Self {
        LaurentPoly {
            n,
            terms: HashMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(ExpVec::zeros(n), R::one())
    }

    pub fn monomial(e: ExpVec, c: R) -> Self {
        let mut p = Self::zero(e.len());
        p.add_term(e, &c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (ExpVec, R)>>(n: usize, terms: I) -> Result<Self> {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    got: e.len(),
                });
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &R)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: ExpVec, c: &R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::hash_map::Entry::Occupied(mut slot) => {
                slot.get_mut().add_assign_ref(c);
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
        }
    }

    /// `[x^b] self`, or ring zero when absent.
    pub fn coeff(&self, b: &[i32]) -> Result<R> {
        if b.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: b.len(),
            });
        }
        Ok(self.terms.get(b).cloned().unwrap_or_else(R::zero))
    }

    pub fn mul(&self, rhs: &LaurentPoly<R>) -> Result<LaurentPoly<R>> {
        if self.n != rhs.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: rhs.n,
            });
        }
        let mut out = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let mut e = e1.clone();
                for (x, y) in e.as_mut_slice().iter_mut().zip(e2.iter()) {
                    *x += y;
                }
                out.add_term(e, &c1.mul_ref(c2));
            }
        }
        Ok(out)
    }

    pub fn map_coeffs<S: CoeffRing>(&self, f: impl Fn(&R) -> S) -> LaurentPoly<S> {
        let mut out = LaurentPoly::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &f(c));
        }
        out
    }

    /// Terms in lexicographic exponent order.
    pub fn sorted_terms(&self) -> BTreeMap<&ExpVec, &R> {
        self.terms.iter().collect()
    }

    /// One term per line, `[e_1,...,e_n] coefficient`, sorted by exponent.
    pub fn to_canonical_text(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.sorted_terms() {
            out.push_str(&format!("{e} {c}\n"));
        }
        out
    }
}

/// `Σ_m row[m] (x_pos / x_neg)^m`.
#[derive(Clone, Debug)]
pub struct RatioFactor<R> {
    pub pos: usize,
    pub neg: usize,
    pub row: Vec<R>,
}

/// Coefficient rings that know how to write one factor of the (q-)Dyson
/// product as a row.
pub trait DysonRing: CoeffRing {
    /// Row of `(x_i q / x_j; q)_a` when `shifted`, of `(x_j / x_i; q)_a`
    /// otherwise, as a polynomial in the ratio. Classically both are
    /// `(1 - t)^a`.
    fn factor_row(a: u32, shifted: bool) -> Vec<Self>;
}

impl DysonRing for BigInt {
    fn factor_row(a: u32, _shifted: bool) -> Vec<Self> {
        let a = i64::from(a);
        (0..=a)
            .map(|m| {
                let c = binomial(a, m);
                if m % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect()
    }
}

impl DysonRing for QPoly {
    // Rothe: (z; q)_a = Σ_m [a, m]_q (-z)^m q^{m(m-1)/2}, and the shifted
    // factor substitutes z = q t.
    fn factor_row(a: u32, shifted: bool) -> Vec<Self> {
        let a = i64::from(a);
        (0..=a)
            .map(|m| {
                let e = if shifted { m * (m + 1) / 2 } else { m * (m - 1) / 2 };
                let g = gauss_binomial(a, m).shift(e as usize);
                if m % 2 == 1 {
                    -g
                } else {
                    g
                }
            })
            .collect()
    }
}

/// Factor list of the product for `a`, pairs `(i, j)` in lexicographic
/// order, the `x_i/x_j` factor first.
pub fn dyson_factors<R: DysonRing>(a: &[u32]) -> Vec<RatioFactor<R>> {
    let n = a.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1));
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(RatioFactor {
                pos: i,
                neg: j,
                row: R::factor_row(a[j], true),
            });
            out.push(RatioFactor {
                pos: j,
                neg: i,
                row: R::factor_row(a[i], false),
            });
        }
    }
    out
}

fn apply_factor<R: CoeffRing>(
    current: &HashMap<ExpVec, R>,
    factor: &RatioFactor<R>,
    keep: impl Fn(&ExpVec) -> bool,
    cap: usize,
) -> Result<HashMap<ExpVec, R>> {
    let mut next: HashMap<ExpVec, R> = HashMap::with_capacity(current.len() * 2);
    for (e, c) in current {
        for (m, r) in factor.row.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let mut e2 = e.clone();
            let s = e2.as_mut_slice();
            s[factor.pos] += m as i32;
            s[factor.neg] -= m as i32;
            if !keep(&e2) {
                continue;
            }
            let prod = c.mul_ref(r);
            match next.entry(e2) {
                std::collections::hash_map::Entry::Occupied(mut slot) => {
                    slot.get_mut().add_assign_ref(&prod);
                }
                std::collections::hash_map::Entry::Vacant(slot) => {
                    slot.insert(prod);
                }
            }
        }
        if next.len() > cap {
            return Err(Error::TermCapExceeded { cap });
        }
    }
    next.retain(|_, c| !c.is_zero());
    Ok(next)
}

/// Full expansion of the product of `factors` in `n` variables.
pub fn expand_factors<R: CoeffRing>(
    n: usize,
    factors: &[RatioFactor<R>],
    cap: usize,
) -> Result<LaurentPoly<R>> {
    let mut terms = HashMap::new();
    terms.insert(ExpVec::zeros(n), R::one());
    for f in factors {
        terms = apply_factor(&terms, f, |_| true, cap)?;
    }
    Ok(LaurentPoly { n, terms })
}

/// Single coefficient `[x^b]` of the product of `factors`, discarding any
/// partial monomial that the remaining factors can no longer move to `b`.
pub fn extract_pruned<R: CoeffRing>(
    n: usize,
    factors: &[RatioFactor<R>],
    b: &[i32],
    cap: usize,
) -> Result<R> {
    extract_pruned_counted(n, factors, b, cap).map(|(c, _)| c)
}

/// [`extract_pruned`] together with the largest number of live partial
/// monomials seen along the way.
pub fn extract_pruned_counted<R: CoeffRing>(
    n: usize,
    factors: &[RatioFactor<R>],
    b: &[i32],
    cap: usize,
) -> Result<(R, usize)> {
    if b.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            got: b.len(),
        });
    }
    if b.iter().map(|&x| i64::from(x)).sum::<i64>() != 0 {
        return Ok((R::zero(), 0));
    }
    // lo[f][v], hi[f][v]: reachable exponent shift of x_v from factors f..
    let nf = factors.len();
    let mut lo = vec![vec![0i64; n]; nf + 1];
    let mut hi = vec![vec![0i64; n]; nf + 1];
    for f in (0..nf).rev() {
        lo[f] = lo[f + 1].clone();
        hi[f] = hi[f + 1].clone();
        let deg = factors[f].row.len().saturating_sub(1) as i64;
        hi[f][factors[f].pos] += deg;
        lo[f][factors[f].neg] -= deg;
    }
    let reachable = |e: &ExpVec, f: usize| {
        (0..n).all(|v| {
            let gap = i64::from(b[v]) - i64::from(e[v]);
            lo[f][v] <= gap && gap <= hi[f][v]
        })
    };
    let start = ExpVec::zeros(n);
    if !reachable(&start, 0) {
        return Ok((R::zero(), 0));
    }
    let mut terms = HashMap::new();
    terms.insert(start, R::one());
    let mut peak = 1;
    for (f, factor) in factors.iter().enumerate() {
        terms = apply_factor(&terms, factor, |e| reachable(e, f + 1), cap)?;
        peak = peak.max(terms.len());
        if terms.is_empty() {
            return Ok((R::zero(), peak));
        }
    }
    Ok((terms.get(b).cloned().unwrap_or_else(R::zero), peak))
}

/// Full expansion of `F_n(x; a)` (`R = BigInt`) or `𝓕_n(x; a; q)`
/// (`R = QPoly`).
pub fn build_product<R: DysonRing>(a: &[u32], cap: usize) -> Result<LaurentPoly<R>> {
    expand_factors(a.len(), &dyson_factors::<R>(a), cap)
}

pub fn build_dyson(a: &[u32]) -> Result<LaurentPoly<BigInt>> {
    build_product(a, DEFAULT_TERM_CAP)
}

pub fn build_qdyson(a: &[u32]) -> Result<LaurentPoly<QPoly>> {
    build_product(a, DEFAULT_TERM_CAP)
}

/// `[x^b]` of the (q-)Dyson product through the pruned path.
pub fn coeff_pruned<R: DysonRing>(a: &[u32], b: &[i32], cap: usize) -> Result<R> {
    extract_pruned(a.len(), &dyson_factors::<R>(a), b, cap)
}

/// Value of either coefficient kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    Integer(BigInt),
    Poly(QPoly),
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Integer(c) => write!(f, "{c}"),
            Coefficient::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// Runtime-selected variant of [`coeff_pruned`].
pub fn coeff_pruned_mode(a: &[u32], b: &[i32], q_mode: bool, cap: usize) -> Result<Coefficient> {
    if q_mode {
        coeff_pruned::<QPoly>(a, b, cap).map(Coefficient::Poly)
    } else {
        coeff_pruned::<BigInt>(a, b, cap).map(Coefficient::Integer)
    }
}
