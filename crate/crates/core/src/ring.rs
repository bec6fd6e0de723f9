//! Exact coefficient arithmetic: dense polynomials in `q` over the big
//! integers, Gaussian binomials, q-multinomials and product-form
//! q-expressions `± q^e ∏(1 - q^m) / ∏(1 - q^d)`.
//!
//! Nothing here touches floating point. The only numeric specialisation
//! is `q = 1`, which stays in the integers.

use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// Coefficient ring of a Laurent expansion.
///
/// Implemented for [`BigInt`] (the classical Dyson product) and [`QPoly`]
/// (the q-Dyson product).
pub trait CoeffRing:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + Zero + One
{
    fn add_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn scale(&self, k: &BigInt) -> Self;
    /// Value at `q = 1`; the identity on integers.
    fn at_one(&self) -> BigInt;
}

impl CoeffRing for BigInt {
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, k: &BigInt) -> Self {
        self * k
    }
    fn at_one(&self) -> BigInt {
        self.clone()
    }
}

/// Dense univariate polynomial in `q` with big-integer coefficients.
///
/// `coeffs[i]` is the coefficient of `q^i`. Trailing zeros are always
/// trimmed, so the zero polynomial has an empty coefficient vector and
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        QPoly::monomial(BigInt::one(), k)
    }

    /// `1 - q^m`. For `m = 0` this is the zero polynomial.
    pub fn one_minus_q_pow(m: usize) -> Self {
        if m == 0 {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); m + 1];
        coeffs[0] = BigInt::one();
        coeffs[m] = -BigInt::one();
        QPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = QPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Fails with [`Error::NotDivisible`] when long division leaves a
    /// remainder, including the case where a leading coefficient does not
    /// divide evenly over the integers.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly> {
        let (quot, rem) = self.div_rem(divisor)?;
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NotDivisible {
                remainder: rem.to_string(),
            })
        }
    }

    /// Long division over the integers. The quotient step stops at the
    /// first leading coefficient that is not divisible, leaving the rest in
    /// the remainder.
    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly)> {
        let dlen = divisor.coeffs.len();
        if dlen == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() < dlen {
            return Ok((QPoly::zero(), self.clone()));
        }
        let lead = &divisor.coeffs[dlen - 1];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dlen + 1];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Ok((QPoly::from_coeffs(quot), QPoly::from_coeffs(rem)));
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &qc * d;
            }
            quot[shift] = qc;
        }
        Ok((QPoly::from_coeffs(quot), QPoly::from_coeffs(rem)))
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut acc = QPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Canonical text: ascending powers, `q` for the linear term, `*q^k` above
/// that, unit coefficients elided, e.g. `1 + 2*q - q^3`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("q")?,
                1 => write!(f, "{mag}*q")?,
                _ if unit => write!(f, "q^{k}")?,
                _ => write!(f, "{mag}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl From<BigInt> for QPoly {
    fn from(c: BigInt) -> Self {
        QPoly::constant(c)
    }
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        QPoly::constant(BigInt::from(c))
    }
}

impl<'a> AddAssign<&'a QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &'a QPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl<'a> SubAssign<&'a QPoly> for QPoly {
    fn sub_assign(&mut self, rhs: &'a QPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.trim();
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, rhs: &'a QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &'a QPoly) -> QPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &'a QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(mut self, rhs: QPoly) -> QPoly {
        self += &rhs;
        self
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(mut self, rhs: QPoly) -> QPoly {
        self -= &rhs;
        self
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -self.clone()
    }
}

impl Zero for QPoly {
    fn zero() -> Self {
        QPoly::zero()
    }
    fn is_zero(&self) -> bool {
        QPoly::is_zero(self)
    }
}

impl One for QPoly {
    fn one() -> Self {
        QPoly::one()
    }
}

impl CoeffRing for QPoly {
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }
    fn at_one(&self) -> BigInt {
        self.eval_at_one()
    }
}

/// `(q;q)_n = (1-q)(1-q^2)...(1-q^n)`.
pub fn q_pochhammer(n: usize) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, i| &acc * &QPoly::one_minus_q_pow(i))
}

thread_local! {
    // Row A of the q-Pascal triangle, rows[A][B] = [A choose B]_q.
    static GAUSS_ROWS: RefCell<Vec<Vec<QPoly>>> = RefCell::new(vec![vec![QPoly::one()]]);
}

/// Gaussian binomial `[A choose B]_q`, zero outside `0 <= B <= A`.
///
/// Built from the q-Pascal rule `[A,B] = [A-1,B-1] + q^B [A-1,B]` and
/// memoised per thread.
pub fn gauss_binomial(a: i64, b: i64) -> QPoly {
    if a < 0 || b < 0 || b > a {
        return QPoly::zero();
    }
    let (a, b) = (a as usize, b as usize);
    GAUSS_ROWS.with(|rows| {
        let mut rows = rows.borrow_mut();
        while rows.len() <= a {
            let prev = rows.last().expect("row 0 is seeded");
            let m = prev.len();
            let mut next = Vec::with_capacity(m + 1);
            for k in 0..=m {
                let mut entry = if k >= 1 { prev[k - 1].clone() } else { QPoly::zero() };
                if k < m {
                    entry += &prev[k].shift(k);
                }
                next.push(entry);
            }
            rows.push(next);
        }
        rows[a][b].clone()
    })
}

/// `(q;q)_{σ} / ∏ (q;q)_{a_i}`, computed as a product of Gaussian
/// binomials `∏_i [a_1+...+a_i, a_i]_q` so no division is needed.
pub fn q_multinomial(a: &[u32]) -> QPoly {
    let mut partial = 0i64;
    let mut acc = QPoly::one();
    for &ai in a {
        partial += i64::from(ai);
        acc = &acc * &gauss_binomial(partial, i64::from(ai));
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Ordinary binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `σ! / ∏ a_i!`.
pub fn multinomial(a: &[u32]) -> BigInt {
    let sigma: u64 = a.iter().map(|&x| u64::from(x)).sum();
    a.iter()
        .fold(factorial(sigma), |acc, &ai| acc / factorial(u64::from(ai)))
}

/// Exact value `sign · q^qexp · ∏_{m∈num}(1 - q^m) / ∏_{d∈den}(1 - q^d)`.
///
/// A zero entry in `num` makes the whole value zero. Zero entries in `den`
/// are rejected on reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QProductForm {
    pub negative: bool,
    pub qexp: u64,
    pub num: Vec<u64>,
    pub den: Vec<u64>,
}

impl QProductForm {
    pub fn new(negative: bool, qexp: u64, num: Vec<u64>, den: Vec<u64>) -> Self {
        QProductForm {
            negative,
            qexp,
            num,
            den,
        }
    }

    pub fn one() -> Self {
        QProductForm::new(false, 0, Vec::new(), Vec::new())
    }

    /// Removes factors common to numerator and denominator.
    pub fn cancelled(&self) -> QProductForm {
        let mut num = self.num.clone();
        let mut den = Vec::with_capacity(self.den.len());
        for &d in &self.den {
            if let Some(pos) = num.iter().position(|&m| m == d) {
                num.swap_remove(pos);
            } else {
                den.push(d);
            }
        }
        num.sort_unstable();
        den.sort_unstable();
        QProductForm::new(self.negative, self.qexp, num, den)
    }

    fn product(factors: &[u64]) -> QPoly {
        factors.iter().fold(QPoly::one(), |acc, &m| {
            &acc * &QPoly::one_minus_q_pow(m as usize)
        })
    }

    pub fn numerator_poly(&self) -> QPoly {
        let p = Self::product(&self.num).shift(self.qexp as usize);
        if self.negative {
            -p
        } else {
            p
        }
    }

    pub fn denominator_poly(&self) -> QPoly {
        Self::product(&self.den)
    }

    /// Reduces to a polynomial, multiplying by `extra` before the single
    /// exact division.
    pub fn to_qpoly_times(&self, extra: &QPoly) -> Result<QPoly> {
        if self.den.contains(&0) {
            return Err(Error::DivisionByZero);
        }
        let reduced = self.cancelled();
        let num = &reduced.numerator_poly() * extra;
        num.div_exact(&reduced.denominator_poly())
    }

    pub fn to_qpoly(&self) -> Result<QPoly> {
        self.to_qpoly_times(&QPoly::one())
    }

    /// Equality of values by cross-multiplication, without dividing.
    pub fn same_value(&self, other: &QProductForm) -> bool {
        &self.numerator_poly() * &other.denominator_poly()
            == &other.numerator_poly() * &self.denominator_poly()
    }
}

/// Converts a rational that must be an integer.
pub fn rational_to_integer(r: &BigRational) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegral(r.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_i64s(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(&p(&[3, 0, 2]) + &QPoly::zero(), p(&[3, 0, 2]));
        assert_eq!(&p(&[1, -1]) * &p(&[1, 1, 1]), p(&[1, 0, 0, -1]));
        assert_eq!(&p(&[1, 2]) - &p(&[1, 2]), QPoly::zero());
        assert!(QPoly::zero().coeffs().is_empty());
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(p(&[1, 0, -1]).div_exact(&p(&[1, -1])).unwrap(), p(&[1, 1]));
        assert_eq!(
            p(&[1, 0, 0, -1]).div_exact(&p(&[1, -1])).unwrap(),
            p(&[1, 1, 1])
        );
        assert!(matches!(
            p(&[1, 1]).div_exact(&p(&[1, -1])),
            Err(Error::NotDivisible { .. })
        ));
        assert_eq!(p(&[1]).div_exact(&QPoly::zero()), Err(Error::DivisionByZero));
        // integer leading coefficient that does not divide
        assert!(p(&[0, 1]).div_exact(&p(&[0, 2])).is_err());
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(q_pochhammer(0), QPoly::one());
        assert_eq!(q_pochhammer(2), p(&[1, -1, -1, 1]));
        let p3 = q_pochhammer(3);
        assert_eq!(p3.degree(), Some(6));
        assert!(p3.eval_at_one().is_zero());
    }

    #[test]
    fn gauss_binomial_examples() {
        assert_eq!(gauss_binomial(2, 1), p(&[1, 1]));
        assert_eq!(gauss_binomial(4, 2), p(&[1, 1, 2, 1, 1]));
        assert!(gauss_binomial(3, -1).is_zero());
        assert!(gauss_binomial(3, 4).is_zero());
        assert!(gauss_binomial(-1, 0).is_zero());
        assert_eq!(gauss_binomial(0, 0), QPoly::one());
    }

    #[test]
    fn gauss_binomial_matches_pochhammer_quotient() {
        for a in 0..12usize {
            for b in 0..=a {
                let direct = q_pochhammer(a)
                    .div_exact(&(&q_pochhammer(b) * &q_pochhammer(a - b)))
                    .unwrap();
                assert_eq!(gauss_binomial(a as i64, b as i64), direct, "[{a},{b}]");
            }
        }
    }

    #[test]
    fn gauss_binomial_shape() {
        for a in 0..=20i64 {
            for b in 0..=a {
                let g = gauss_binomial(a, b);
                assert_eq!(g.eval_at_one(), binomial(a, b));
                assert_eq!(g.degree(), Some((b * (a - b)) as usize));
                assert!(g.is_palindromic());
            }
        }
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(&[1, 1]), BigInt::from(2));
        assert_eq!(multinomial(&[2, 1, 3]), BigInt::from(60));
        assert_eq!(multinomial(&[0]), BigInt::from(1));
        assert_eq!(q_multinomial(&[1, 1]), p(&[1, 1]));
        assert_eq!(q_multinomial(&[0, 0, 0, 0]), QPoly::one());
        assert_eq!(q_multinomial(&[1, 1, 1]), p(&[1, 2, 2, 1]));
    }

    #[test]
    fn q_multinomial_matches_pochhammer_quotient() {
        for a in [[0u32, 2, 3], [1, 1, 4], [2, 2, 2], [3, 0, 1]] {
            let sigma: u32 = a.iter().sum();
            let den = a
                .iter()
                .fold(QPoly::one(), |acc, &x| &acc * &q_pochhammer(x as usize));
            let direct = q_pochhammer(sigma as usize).div_exact(&den).unwrap();
            assert_eq!(q_multinomial(&a), direct);
            assert_eq!(direct.eval_at_one(), multinomial(&a));
        }
    }

    #[test]
    fn product_form_examples() {
        assert_eq!(QProductForm::one().to_qpoly().unwrap(), QPoly::one());
        let v = QProductForm::new(true, 1, vec![1, 2, 3], vec![1, 1, 3]);
        assert_eq!(v.to_qpoly().unwrap(), p(&[0, -1, -1]));
        assert!(v.same_value(&v.cancelled()));
        let bad = QProductForm::new(false, 0, vec![1], vec![2]);
        assert!(bad.to_qpoly().is_err());
        assert_eq!(
            bad.to_qpoly_times(&p(&[1, 1])).unwrap(),
            QPoly::one()
        );
        let zero = QProductForm::new(false, 3, vec![0, 2], vec![1]);
        assert!(zero.to_qpoly().unwrap().is_zero());
        assert_eq!(
            QProductForm::new(false, 0, vec![], vec![0]).to_qpoly(),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p(&[1, 2, 2, 1]).to_string(), "1 + 2*q + 2*q^2 + q^3");
        assert_eq!(p(&[0, -1]).to_string(), "-q");
        assert_eq!(p(&[0, -1, -1]).to_string(), "-q - q^2");
        assert_eq!(p(&[-3, 0, 0, 5]).to_string(), "-3 + 5*q^3");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, 0, -2]).to_string(), "-2*q^2");
    }

    #[test]
    fn rational_integrality() {
        let r = BigRational::new(BigInt::from(6), BigInt::from(3));
        assert_eq!(rational_to_integer(&r).unwrap(), BigInt::from(2));
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(matches!(rational_to_integer(&r), Err(Error::NonIntegral(_))));
    }
}
