//! Three-variable case: single-sum formula for the coefficients of
//! `𝓕_3(<x,y,z>; <a,b,c>; q)` and the nine perturbed q-Dixon identities.
//!
//! Writing `𝓕_3` as three Rothe expansions, one per variable pair, and
//! solving for the exponents of `x^α y^β z^{-α-β}` leaves a single free
//! index `k`:
//!
//! ```text
//! [x^α y^β / z^{α+β}] 𝓕_3 =
//!   Σ_k [a+b, k+b+β] [b+c, k+c] [c+a, k+a+α+β] (-1)^{k+α}
//!       q^{C(k,2) + C(k+β,2) + C(k+α+β+1,2)}
//! ```
//!
//! with `C(m,2) = m(m-1)/2` for every integer `m`. At `α = β = 0` this is
//! the q-Dixon sum, equal to the q-multinomial `[a+b+c; a,b,c]_q`.
//!
//! Each identity in [`IDENTITIES`] specialises the sum to one perturbation
//! `(α, β)` and equates it with a product form. Identities 1-6 are the
//! `x_r/x_s` q-form at `n = 3` and identities 7-9 the `x_r^2/(x_s x_t)`
//! q-form; the `link` field of each entry records which one.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{gauss_binomial, q_multinomial, QPoly, QProductForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DixonParams {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub alpha: i64,
    pub beta: i64,
}

/// `m(m-1)/2`, the polynomial extension of `C(m, 2)`.
fn choose2(m: i64) -> i64 {
    m * (m - 1) / 2
}

/// Range of `k` for which `[a+b, k+b+s1] [b+c, k+c] [c+a, k+a+s2]` is
/// nonzero, as `(lo, hi)`; empty when `lo > hi`.
fn support(a: i64, b: i64, c: i64, s1: i64, s2: i64) -> (i64, i64) {
    let lo = (-b - s1).max(-c).max(-a - s2);
    let hi = (a - s1).min(b).min(c - s2);
    (lo, hi)
}

fn binomial_triple(a: i64, b: i64, c: i64, k: i64, s1: i64, s2: i64) -> QPoly {
    let g1 = gauss_binomial(a + b, k + b + s1);
    let g2 = gauss_binomial(b + c, k + c);
    let g3 = gauss_binomial(c + a, k + a + s2);
    &(&g1 * &g2) * &g3
}

/// `[x^α y^β z^{-α-β}] 𝓕_3(<x,y,z>; <a,b,c>; q)` as a single sum.
pub fn dixon_sum(p: DixonParams) -> QPoly {
    let (a, b, c) = (i64::from(p.a), i64::from(p.b), i64::from(p.c));
    let (al, be) = (p.alpha, p.beta);
    let (lo, hi) = support(a, b, c, be, al + be);
    let mut acc = QPoly::zero();
    for k in lo..=hi {
        let e = choose2(k) + choose2(k + be) + choose2(k + al + be + 1);
        let term = binomial_triple(a, b, c, k, be, al + be).shift(e as usize);
        if (k + al).rem_euclid(2) == 1 {
            acc -= &term;
        } else {
            acc += &term;
        }
    }
    acc
}

/// `ka·a + kb·b + kc·c + k0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lin {
    pub ka: i64,
    pub kb: i64,
    pub kc: i64,
    pub k0: i64,
}

const fn lin(ka: i64, kb: i64, kc: i64, k0: i64) -> Lin {
    Lin { ka, kb, kc, k0 }
}

impl Lin {
    pub fn eval(&self, a: u32, b: u32, c: u32) -> i64 {
        self.ka * i64::from(a) + self.kb * i64::from(b) + self.kc * i64::from(c) + self.k0
    }
}

/// Which closed form an identity instantiates at `n = 3`, with variables
/// `x = x_1`, `y = x_2`, `z = x_3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjLink {
    /// `(r, s)` for the `x_r/x_s` form, `(r, s, t)` for `x_r^2/(x_s x_t)`.
    pub indices: &'static [usize],
    /// The sum side equals minus the closed form.
    pub negated: bool,
}

/// One perturbed q-Dixon identity
///
/// ```text
/// Σ_k [a+b, k+b+β] [b+c, k+c] [c+a, k+a+α+β] (-1)^{k+ε} q^{(e2 k² + e1 k + e0)/2}
///   = [a+b+c; a,b,c]_q · q^E ∏(1-q^{num}) / ∏(1-q^{den}) · bracket
/// ```
///
/// where `bracket`, when present, is `(1 - q^{1+a+b+c}) + q^M (1 - q^N)`.
#[derive(Clone, Copy, Debug)]
pub struct DixonIdentity {
    pub id: u8,
    pub alpha: i64,
    pub beta: i64,
    pub sign: i64,
    pub twice_exponent: [i64; 3],
    pub rhs_qexp: Lin,
    pub rhs_num: &'static [Lin],
    pub rhs_den: &'static [Lin],
    pub bracket: Option<(Lin, Lin)>,
    pub link: ConjLink,
}

const A: Lin = lin(1, 0, 0, 0);
const B: Lin = lin(0, 1, 0, 0);
const C: Lin = lin(0, 0, 1, 0);
const ZERO: Lin = lin(0, 0, 0, 0);

pub const IDENTITIES: [DixonIdentity; 9] = [
    // [x/y]
    DixonIdentity {
        id: 1,
        alpha: 1,
        beta: -1,
        sign: 0,
        twice_exponent: [3, -3, 2],
        rhs_qexp: lin(0, 0, 1, 1),
        rhs_num: &[B],
        rhs_den: &[lin(1, 0, 1, 1)],
        bracket: None,
        link: ConjLink {
            indices: &[1, 2],
            negated: true,
        },
    },
    // [x/z]
    DixonIdentity {
        id: 2,
        alpha: 1,
        beta: 0,
        sign: 0,
        twice_exponent: [3, 1, 2],
        rhs_qexp: lin(0, 0, 0, 1),
        rhs_num: &[C],
        rhs_den: &[lin(1, 1, 0, 1)],
        bracket: None,
        link: ConjLink {
            indices: &[1, 3],
            negated: true,
        },
    },
    // [y/x]
    DixonIdentity {
        id: 3,
        alpha: -1,
        beta: 1,
        sign: 0,
        twice_exponent: [3, 1, 0],
        rhs_qexp: ZERO,
        rhs_num: &[A],
        rhs_den: &[lin(0, 1, 1, 1)],
        bracket: None,
        link: ConjLink {
            indices: &[2, 1],
            negated: true,
        },
    },
    // [z/x]
    DixonIdentity {
        id: 4,
        alpha: -1,
        beta: 0,
        sign: 0,
        twice_exponent: [3, -3, 0],
        rhs_qexp: B,
        rhs_num: &[A],
        rhs_den: &[lin(0, 1, 1, 1)],
        bracket: None,
        link: ConjLink {
            indices: &[3, 1],
            negated: true,
        },
    },
    // [y/z]
    DixonIdentity {
        id: 5,
        alpha: 0,
        beta: 1,
        sign: 1,
        twice_exponent: [3, 3, 2],
        rhs_qexp: lin(1, 0, 0, 1),
        rhs_num: &[C],
        rhs_den: &[lin(1, 1, 0, 1)],
        bracket: None,
        link: ConjLink {
            indices: &[2, 3],
            negated: true,
        },
    },
    // [z/y]
    DixonIdentity {
        id: 6,
        alpha: 0,
        beta: -1,
        sign: 1,
        twice_exponent: [3, -5, 2],
        rhs_qexp: ZERO,
        rhs_num: &[B],
        rhs_den: &[lin(1, 0, 1, 1)],
        bracket: None,
        link: ConjLink {
            indices: &[3, 2],
            negated: true,
        },
    },
    // [x^2/(yz)]
    DixonIdentity {
        id: 7,
        alpha: 2,
        beta: -1,
        sign: 0,
        twice_exponent: [3, -1, 4],
        rhs_qexp: lin(0, 0, 0, 2),
        rhs_num: &[B, C],
        rhs_den: &[lin(1, 0, 0, 1), lin(1, 1, 0, 1), lin(1, 0, 1, 1)],
        bracket: Some((C, lin(1, 0, 0, 1))),
        link: ConjLink {
            indices: &[1, 2, 3],
            negated: false,
        },
    },
    // [y^2/(xz)]
    DixonIdentity {
        id: 8,
        alpha: -1,
        beta: 2,
        sign: 1,
        twice_exponent: [3, 5, 4],
        rhs_qexp: lin(0, 0, 0, 1),
        rhs_num: &[A, C],
        rhs_den: &[lin(0, 1, 0, 1), lin(1, 1, 0, 1), lin(0, 1, 1, 1)],
        bracket: Some((A, lin(0, 1, 0, 1))),
        link: ConjLink {
            indices: &[2, 1, 3],
            negated: false,
        },
    },
    // [z^2/(xy)]
    DixonIdentity {
        id: 9,
        alpha: -1,
        beta: -1,
        sign: 1,
        twice_exponent: [3, -7, 4],
        rhs_qexp: ZERO,
        rhs_num: &[A, B],
        rhs_den: &[lin(0, 0, 1, 1), lin(1, 0, 1, 1), lin(0, 1, 1, 1)],
        bracket: Some((B, lin(0, 0, 1, 1))),
        link: ConjLink {
            indices: &[3, 1, 2],
            negated: false,
        },
    },
];

pub fn identity(id: u8) -> Result<&'static DixonIdentity> {
    IDENTITIES
        .iter()
        .find(|d| d.id == id)
        .ok_or(Error::UnknownIdentity(id))
}

impl DixonIdentity {
    /// Sum side, evaluated from this identity's own summand.
    pub fn lhs(&self, a: u32, b: u32, c: u32) -> QPoly {
        let (ai, bi, ci) = (i64::from(a), i64::from(b), i64::from(c));
        let s1 = self.beta;
        let s2 = self.alpha + self.beta;
        let (lo, hi) = support(ai, bi, ci, s1, s2);
        let [e2, e1, e0] = self.twice_exponent;
        let mut acc = QPoly::zero();
        for k in lo..=hi {
            let twice = e2 * k * k + e1 * k + e0;
            debug_assert!(twice >= 0 && twice % 2 == 0);
            let term = binomial_triple(ai, bi, ci, k, s1, s2).shift((twice / 2) as usize);
            if (k + self.sign).rem_euclid(2) == 1 {
                acc -= &term;
            } else {
                acc += &term;
            }
        }
        acc
    }

    /// Product side.
    pub fn rhs(&self, a: u32, b: u32, c: u32) -> Result<QPoly> {
        let ev = |l: &Lin| l.eval(a, b, c);
        let mut extra = q_multinomial(&[a, b, c]);
        if let Some((m, n)) = self.bracket {
            let sigma1 = (1 + a + b + c) as usize;
            let br = &QPoly::one_minus_q_pow(sigma1)
                + &QPoly::one_minus_q_pow(ev(&n) as usize).shift(ev(&m) as usize);
            extra = &extra * &br;
        }
        QProductForm::new(
            false,
            ev(&self.rhs_qexp) as u64,
            self.rhs_num.iter().map(|l| ev(l) as u64).collect(),
            self.rhs_den.iter().map(|l| ev(l) as u64).collect(),
        )
        .to_qpoly_times(&extra)
    }

    /// The coefficient the sum side evaluates, up to the sign `(-1)^{ε-α}`.
    pub fn params(&self, a: u32, b: u32, c: u32) -> DixonParams {
        DixonParams {
            a,
            b,
            c,
            alpha: self.alpha,
            beta: self.beta,
        }
    }

    /// Whether the sum side is `+` or `-` the corresponding coefficient.
    pub fn coefficient_sign_flipped(&self) -> bool {
        (self.sign - self.alpha).rem_euclid(2) == 1
    }
}

pub fn dixon_lhs(id: u8, a: u32, b: u32, c: u32) -> Result<QPoly> {
    Ok(identity(id)?.lhs(a, b, c))
}

pub fn dixon_rhs(id: u8, a: u32, b: u32, c: u32) -> Result<QPoly> {
    identity(id)?.rhs(a, b, c)
}

/// Outcome for one `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleResult {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub lhs: QPoly,
    /// `Err` carries the reduction failure of the product side.
    pub rhs: std::result::Result<QPoly, String>,
    /// First power of `q` where the sides differ, with both coefficients.
    pub first_difference: Option<(usize, BigInt, BigInt)>,
}

impl TripleResult {
    pub fn passed(&self) -> bool {
        matches!(&self.rhs, Ok(r) if *r == self.lhs)
    }
}

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub id: u8,
    pub max: u32,
    pub results: Vec<TripleResult>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(TripleResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &TripleResult> {
        self.results.iter().filter(|r| !r.passed())
    }
}

fn first_difference(x: &QPoly, y: &QPoly) -> Option<(usize, BigInt, BigInt)> {
    let len = x.coeffs().len().max(y.coeffs().len());
    (0..len).find_map(|k| {
        let (cx, cy) = (x.coeff(k), y.coeff(k));
        (cx != cy).then_some((k, cx, cy))
    })
}

/// Checks `lhs = rhs` for every `0 <= a, b, c <= max`.
pub fn verify_identity(id: u8, max: u32) -> Result<IdentityReport> {
    let ident = identity(id)?;
    let mut results = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                let lhs = ident.lhs(a, b, c);
                let rhs = ident.rhs(a, b, c).map_err(|e| e.to_string());
                let first_difference = match &rhs {
                    Ok(r) => first_difference(&lhs, r),
                    Err(_) => None,
                };
                results.push(TripleResult {
                    a,
                    b,
                    c,
                    lhs,
                    rhs,
                    first_difference,
                });
            }
        }
    }
    Ok(IdentityReport { id, max, results })
}
