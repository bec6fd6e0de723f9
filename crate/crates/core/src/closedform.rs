//! Closed-form right-hand sides for single coefficients of the Dyson and
//! q-Dyson products.
//!
//! Indices are 1-based throughout, matching the usual `x_1, ..., x_n`
//! labelling. The three coefficient shapes handled are
//!
//! * `x_r / x_s`
//! * `x_r^2 / (x_s x_t)`
//! * `x_r x_s / (x_t x_u)`
//!
//! together with the constant term. Classical values are computed as
//! rationals and must reduce to integers; q-values are reduced to a
//! [`QPoly`] by one exact division, so a [`Error::NotDivisible`] from this
//! module means the formula does not produce a polynomial at that point.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::ExpVec;
use crate::ring::{multinomial, q_multinomial, rational_to_integer, BigRational, QPoly, QProductForm};

/// Which coefficient a closed form describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Constant,
    /// `x_r / x_s`
    Thm1,
    /// `x_r^2 / (x_s x_t)`
    Thm2,
    /// `x_r x_s / (x_t x_u)`
    Thm3,
}

impl Family {
    pub fn index_count(self) -> usize {
        match self {
            Family::Constant => 0,
            Family::Thm1 => 2,
            Family::Thm2 => 3,
            Family::Thm3 => 4,
        }
    }

    /// Smallest arity the formula is stated for.
    pub fn min_arity(self) -> usize {
        match self {
            Family::Constant => 1,
            Family::Thm1 => 2,
            Family::Thm2 => 3,
            Family::Thm3 => 4,
        }
    }
}

/// A coefficient shape together with its fixed distinct indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffSpec {
    pub family: Family,
    pub indices: Vec<usize>,
    pub n: usize,
}

impl CoeffSpec {
    pub fn new(family: Family, indices: Vec<usize>, n: usize) -> Result<Self> {
        let spec = CoeffSpec { family, indices, n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let want = self.family.index_count();
        if self.indices.len() != want {
            return Err(Error::InvalidIndices(format!(
                "{:?} needs {want} indices, got {}",
                self.family,
                self.indices.len()
            )));
        }
        if self.n < self.family.min_arity() {
            return Err(Error::InvalidIndices(format!(
                "{:?} needs n >= {}, got n = {}",
                self.family,
                self.family.min_arity(),
                self.n
            )));
        }
        for (pos, &i) in self.indices.iter().enumerate() {
            if i < 1 || i > self.n {
                return Err(Error::InvalidIndices(format!(
                    "index {i} outside 1..={}",
                    self.n
                )));
            }
            if self.indices[..pos].contains(&i) {
                return Err(Error::InvalidIndices(format!("index {i} repeated")));
            }
        }
        Ok(())
    }

    /// The exponent vector `b` of the target monomial.
    pub fn target(&self) -> ExpVec {
        let mut b = vec![0i32; self.n];
        let ix = &self.indices;
        match self.family {
            Family::Constant => {}
            Family::Thm1 => {
                b[ix[0] - 1] += 1;
                b[ix[1] - 1] -= 1;
            }
            Family::Thm2 => {
                b[ix[0] - 1] += 2;
                b[ix[1] - 1] -= 1;
                b[ix[2] - 1] -= 1;
            }
            Family::Thm3 => {
                b[ix[0] - 1] += 1;
                b[ix[1] - 1] += 1;
                b[ix[2] - 1] -= 1;
                b[ix[3] - 1] -= 1;
            }
        }
        ExpVec::from(b)
    }

    /// Classical closed form at `a`.
    pub fn classical_value(&self, a: &[u32]) -> Result<BigInt> {
        self.check_arity(a)?;
        let ix = &self.indices;
        match self.family {
            Family::Constant => Ok(dyson_constant(a)),
            Family::Thm1 => thm1_value(a, ix[0], ix[1]),
            Family::Thm2 => thm2_value(a, ix[0], ix[1], ix[2]),
            Family::Thm3 => thm3_value(a, ix[0], ix[1], ix[2], ix[3]),
        }
    }

    /// q-analogue closed form at `a`.
    pub fn q_value(&self, a: &[u32]) -> Result<QPoly> {
        self.check_arity(a)?;
        let ix = &self.indices;
        match self.family {
            Family::Constant => Ok(qdyson_constant(a)),
            Family::Thm1 => conj1_value(a, ix[0], ix[1]),
            Family::Thm2 => conj2_value(a, ix[0], ix[1], ix[2]),
            Family::Thm3 => conj3_value(a, ix[0], ix[1], ix[2], ix[3]),
        }
    }

    /// The `q^L` (and `q^M`) exponents the q-form uses, `None` for the
    /// constant term.
    pub fn exponents(&self, a: &[u32]) -> Result<Option<LMValue>> {
        self.check_arity(a)?;
        let ix = &self.indices;
        Ok(match self.family {
            Family::Constant => None,
            Family::Thm1 => Some(LMValue {
                l: l_rs(a, ix[0], ix[1])?,
                m: None,
            }),
            Family::Thm2 => Some(lm_rst(a, ix[0], ix[1], ix[2])?),
            Family::Thm3 => Some(lm_rstu(a, ix[0], ix[1], ix[2], ix[3])?),
        })
    }

    /// The q-form evaluated with explicit exponents instead of the case
    /// tables. Used to inject faults into verification runs.
    pub fn q_value_with(&self, a: &[u32], lm: LMValue) -> Result<QPoly> {
        self.check_arity(a)?;
        let ix = &self.indices;
        match self.family {
            Family::Constant => Ok(qdyson_constant(a)),
            Family::Thm1 => conj1_with_exponent(a, ix[1], lm.l),
            Family::Thm2 => {
                let (s, t) = sorted_pair(ix[1], ix[2]);
                two_pole_form(a, s, t, lm.l, lm.m.unwrap_or(0))
            }
            Family::Thm3 => {
                let (t, u) = sorted_pair(ix[2], ix[3]);
                two_pole_form(a, t, u, lm.l, lm.m.unwrap_or(0))
            }
        }
    }

    fn check_arity(&self, a: &[u32]) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                got: a.len(),
            });
        }
        Ok(())
    }
}

/// Exponents of `q^L` and `q^M` in a q-form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LMValue {
    pub l: u64,
    pub m: Option<u64>,
}

fn sigma(a: &[u32]) -> i64 {
    a.iter().map(|&x| i64::from(x)).sum()
}

/// `Σ_{k=i}^{j} a_k` with 1-based `k`; empty (zero) when `i > j`.
fn range_sum(a: &[u32], i: usize, j: usize) -> i64 {
    if i > j {
        return 0;
    }
    a[i - 1..j].iter().map(|&x| i64::from(x)).sum()
}

fn nonneg(name: &'static str, value: i64) -> Result<u64> {
    u64::try_from(value).map_err(|_| Error::NegativeExponent { name, value })
}

fn sorted_pair(x: usize, y: usize) -> (usize, usize) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

fn check_indices(n: usize, ix: &[usize]) -> Result<()> {
    let family = match ix.len() {
        2 => Family::Thm1,
        3 => Family::Thm2,
        _ => Family::Thm3,
    };
    CoeffSpec {
        family,
        indices: ix.to_vec(),
        n,
    }
    .validate()
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// `σ! / ∏ a_i!`, the constant term of `F_n`.
pub fn dyson_constant(a: &[u32]) -> BigInt {
    multinomial(a)
}

/// `(q;q)_σ / ∏ (q;q)_{a_i}`, the constant term of `𝓕_n`.
pub fn qdyson_constant(a: &[u32]) -> QPoly {
    q_multinomial(a)
}

pub fn thm1_rational(a: &[u32], r: usize, s: usize) -> Result<BigRational> {
    check_indices(a.len(), &[r, s])?;
    let sg = sigma(a);
    let a_s = i64::from(a[s - 1]);
    let frac = BigRational::new(big(-a_s), big(1 + sg - a_s));
    Ok(frac * BigRational::from_integer(multinomial(a)))
}

/// `[x_r/x_s] F_n = -(a_s / (1 + σ - a_s)) · σ!/∏a_i!`.
pub fn thm1_value(a: &[u32], r: usize, s: usize) -> Result<BigInt> {
    rational_to_integer(&thm1_rational(a, r, s)?)
}

/// Shared rational shape of the two quadratic coefficient families; `p`
/// and `m` are the two indices with exponent `-1`.
fn two_pole_rational(a: &[u32], p: usize, m: usize) -> BigRational {
    let sg = sigma(a);
    let (ap, am) = (i64::from(a[p - 1]), i64::from(a[m - 1]));
    let num = big(ap * am * ((1 + sg) + (1 + sg - ap - am)));
    let den = big((1 + sg - ap - am) * (1 + sg - ap) * (1 + sg - am));
    BigRational::new(num, den) * BigRational::from_integer(multinomial(a))
}

pub fn thm2_rational(a: &[u32], r: usize, s: usize, t: usize) -> Result<BigRational> {
    check_indices(a.len(), &[r, s, t])?;
    Ok(two_pole_rational(a, s, t))
}

/// `[x_r^2/(x_s x_t)] F_n`.
pub fn thm2_value(a: &[u32], r: usize, s: usize, t: usize) -> Result<BigInt> {
    rational_to_integer(&thm2_rational(a, r, s, t)?)
}

pub fn thm3_rational(a: &[u32], r: usize, s: usize, t: usize, u: usize) -> Result<BigRational> {
    check_indices(a.len(), &[r, s, t, u])?;
    Ok(two_pole_rational(a, t, u))
}

/// `[x_r x_s/(x_t x_u)] F_n`.
pub fn thm3_value(a: &[u32], r: usize, s: usize, t: usize, u: usize) -> Result<BigInt> {
    rational_to_integer(&thm3_rational(a, r, s, t, u)?)
}

/// Exponent `L(r,s)` of the `x_r/x_s` q-form.
pub fn l_rs(a: &[u32], r: usize, s: usize) -> Result<u64> {
    check_indices(a.len(), &[r, s])?;
    let v = if r < s {
        1 + sigma(a) - range_sum(a, r, s)
    } else {
        range_sum(a, s + 1, r - 1)
    };
    nonneg("L", v)
}

/// `L(r,s,t)` and `M(r,s,t)`; `s` and `t` may come in either order.
pub fn lm_rst(a: &[u32], r: usize, s: usize, t: usize) -> Result<LMValue> {
    check_indices(a.len(), &[r, s, t])?;
    let (s, t) = sorted_pair(s, t);
    let sg = sigma(a);
    let rs = |i, j| range_sum(a, i, j);
    let (l, m) = if r < s {
        (2 + 2 * sg - 2 * rs(r, t) + rs(s + 1, t - 1), a[t - 1])
    } else if r < t {
        (1 + sg - rs(s, t) + 2 * rs(s + 1, r - 1), a[s - 1])
    } else {
        (2 * rs(t + 1, r - 1) + rs(s + 1, t - 1), a[t - 1])
    };
    Ok(LMValue {
        l: nonneg("L", l)?,
        m: Some(u64::from(m)),
    })
}

/// `L(r,s,t,u)` and `M(r,s,t,u)`; the pairs `(r,s)` and `(t,u)` may each
/// come in either order.
pub fn lm_rstu(a: &[u32], r: usize, s: usize, t: usize, u: usize) -> Result<LMValue> {
    check_indices(a.len(), &[r, s, t, u])?;
    let (r, s) = sorted_pair(r, s);
    let (t, u) = sorted_pair(t, u);
    let sg = sigma(a);
    let rs = |i, j| range_sum(a, i, j);
    let (at, au) = (i64::from(a[t - 1]), i64::from(a[u - 1]));
    let (l, m) = if s < t {
        // r < s < t < u
        (2 + 2 * sg - 2 * rs(r, u) + rs(r, s - 1) + rs(t + 1, u - 1), au)
    } else if r < t && s < u {
        // r < t < s < u
        (1 + sg - rs(r, u) + rs(t + 1, s - 1), 1 + sg)
    } else if r < t {
        // r < t < u < s
        (
            1 + sg - rs(r, s - 1) + 2 * rs(t + 1, r - 1) + rs(t + 1, u - 1) + 2 * rs(u + 1, s - 1),
            au,
        )
    } else if s < u {
        // t < r < s < u
        (1 + sg - rs(t, u) + rs(r, s - 1) + 2 * rs(t + 1, r - 1), at)
    } else if r < u {
        // t < r < u < s
        (rs(t + 1, r - 1) + rs(u + 1, s - 1), 1 + sg)
    } else {
        // t < u < r < s
        (rs(r, s - 1) + rs(t + 1, u - 1) + 2 * rs(u + 1, r - 1), au)
    };
    Ok(LMValue {
        l: nonneg("L", l)?,
        m: Some(nonneg("M", m)?),
    })
}

/// `-q^L (1 - q^{a_s}) / (1 - q^{1+σ-a_s}) · [σ; a]_q` for a given `L`.
pub fn conj1_with_exponent(a: &[u32], s: usize, l: u64) -> Result<QPoly> {
    let sg = sigma(a);
    let a_s = i64::from(a[s - 1]);
    QProductForm::new(true, l, vec![a_s as u64], vec![(1 + sg - a_s) as u64])
        .to_qpoly_times(&q_multinomial(a))
}

/// q-form of the `x_r/x_s` coefficient of `𝓕_n`.
pub fn conj1_value(a: &[u32], r: usize, s: usize) -> Result<QPoly> {
    let l = l_rs(a, r, s)?;
    conj1_with_exponent(a, s, l)
}

/// ```text
/// q^L (1-q^{a_p})(1-q^{a_m}) ((1-q^{1+σ}) + q^M (1-q^{1+σ-a_p-a_m}))
///   / ((1-q^{1+σ-a_p-a_m})(1-q^{1+σ-a_p})(1-q^{1+σ-a_m})) · [σ; a]_q
/// ```
fn two_pole_form(a: &[u32], p: usize, m: usize, l: u64, mexp: u64) -> Result<QPoly> {
    let sg = sigma(a) as u64;
    let (ap, am) = (u64::from(a[p - 1]), u64::from(a[m - 1]));
    let inner = 1 + sg - ap - am;
    let bracket = &QPoly::one_minus_q_pow((1 + sg) as usize)
        + &QPoly::one_minus_q_pow(inner as usize).shift(mexp as usize);
    let extra = &bracket * &q_multinomial(a);
    QProductForm::new(false, l, vec![ap, am], vec![inner, 1 + sg - ap, 1 + sg - am])
        .to_qpoly_times(&extra)
}

/// q-form of the `x_r^2/(x_s x_t)` coefficient of `𝓕_n`.
pub fn conj2_value(a: &[u32], r: usize, s: usize, t: usize) -> Result<QPoly> {
    let lm = lm_rst(a, r, s, t)?;
    let (s, t) = sorted_pair(s, t);
    two_pole_form(a, s, t, lm.l, lm.m.expect("M is defined"))
}

/// q-form of the `x_r x_s/(x_t x_u)` coefficient of `𝓕_n`.
pub fn conj3_value(a: &[u32], r: usize, s: usize, t: usize, u: usize) -> Result<QPoly> {
    let lm = lm_rstu(a, r, s, t, u)?;
    let (t, u) = sorted_pair(t, u);
    two_pole_form(a, t, u, lm.l, lm.m.expect("M is defined"))
}

/// Every admissible ordered index tuple for `family` at arity `n`.
pub fn index_tuples(family: Family, n: usize) -> Vec<Vec<usize>> {
    let k = family.index_count();
    if n < family.min_arity() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 1..=n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, k, &mut cur, &mut out);
    out
}

/// True when `r` is an integer-valued rational.
pub fn is_integral(r: &BigRational) -> bool {
    r.denom().is_one() || r.numer().is_zero()
}
