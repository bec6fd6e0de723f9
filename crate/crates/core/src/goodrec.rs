//! Coefficients `c_n^b(a) = [x^b] F_n(x; a)` by Good's recurrence.
//!
//! This path never expands a product. It uses three facts:
//!
//! * when every `a_k > 0`, Lagrange interpolation gives
//!   `F_n(x; a) = Σ_k F_n(x; a - e_k)`, so `c(a) = Σ_k c(a - e_k)`;
//! * `F_1 = 1`;
//! * when `a_k = 0`, `x_k` only appears in `∏_{i≠k} (1 - x_k/x_i)^{a_i}`,
//!   so the coefficient of `x_k^{b_k}` in that factor times `F_{n-1}`
//!   reduces the arity by one ([`boundary_expand`]).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::laurent::{AVec, ExpVec};
use crate::ring::binomial;

/// `(n, b, a)` with `n` implied by the vector lengths.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffKey {
    pub b: ExpVec,
    pub a: AVec,
}

impl CoeffKey {
    pub fn new(b: ExpVec, a: AVec) -> Self {
        assert_eq!(b.len(), a.len(), "b and a must have the same length");
        CoeffKey { b, a }
    }

    pub fn arity(&self) -> usize {
        self.a.len()
    }
}

/// One term `coeff · c_{n-1}^{b_child}(a without k)` of a boundary
/// reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTerm {
    pub coeff: BigInt,
    pub b_child: ExpVec,
}

/// Expands `[x_k^{b_k}] ∏_{i≠k} (1 - x_k/x_i)^{a_i}` against the remaining
/// variables. `k` is 0-based and must have `a_k = 0`.
///
/// Each composition `m` of `b_k` over `i ≠ k` (with `m_i ≤ a_i`) yields
/// `(-1)^{b_k} ∏ C(a_i, m_i)` on the child exponent `b_i + m_i`.
pub fn boundary_expand(k: usize, b: &[i32], a: &[u32]) -> Vec<BoundaryTerm> {
    assert_eq!(a[k], 0, "boundary index must have a_k = 0");
    let bk = b[k];
    if bk < 0 {
        return Vec::new();
    }
    let others: Vec<usize> = (0..a.len()).filter(|&i| i != k).collect();
    let child_base: Vec<i32> = others.iter().map(|&i| b[i]).collect();
    let caps: Vec<i32> = others.iter().map(|&i| (a[i] as i32).min(bk)).collect();
    // suffix capacity, to stop compositions that can no longer reach b_k
    let mut room = vec![0i32; others.len() + 1];
    for p in (0..others.len()).rev() {
        room[p] = room[p + 1] + caps[p];
    }
    let sign = if bk % 2 == 1 { -BigInt::one() } else { BigInt::one() };
    let mut out = Vec::new();
    let mut parts = vec![0i32; others.len()];

    fn rec(
        pos: usize,
        left: i32,
        parts: &mut Vec<i32>,
        caps: &[i32],
        room: &[i32],
        emit: &mut dyn FnMut(&[i32]),
    ) {
        if pos == parts.len() {
            if left == 0 {
                emit(parts);
            }
            return;
        }
        if left > room[pos] {
            return;
        }
        for m in 0..=caps[pos].min(left) {
            parts[pos] = m;
            rec(pos + 1, left - m, parts, caps, room, emit);
        }
        parts[pos] = 0;
    }

    let mut emit = |parts: &[i32]| {
        let mut coeff = sign.clone();
        let mut child = child_base.clone();
        for (p, &m) in parts.iter().enumerate() {
            coeff *= binomial(i64::from(a[others[p]]), i64::from(m));
            child[p] += m;
        }
        if !coeff.is_zero() {
            out.push(BoundaryTerm {
                coeff,
                b_child: ExpVec::from(child),
            });
        }
    };
    rec(0, bk, &mut parts, &caps, &room, &mut emit);
    out
}

/// Memoising evaluator. One instance per thread or per sweep.
#[derive(Default)]
pub struct GoodEvaluator {
    memo: HashMap<CoeffKey, BigInt>,
    memoize: bool,
}

impl GoodEvaluator {
    pub fn new() -> Self {
        GoodEvaluator {
            memo: HashMap::new(),
            memoize: true,
        }
    }

    /// Evaluator that recomputes every subproblem.
    pub fn unmemoized() -> Self {
        GoodEvaluator {
            memo: HashMap::new(),
            memoize: false,
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn coeff(&mut self, b: &[i32], a: &[u32]) -> BigInt {
        assert_eq!(b.len(), a.len(), "b and a must have the same length");
        if b.iter().map(|&x| i64::from(x)).sum::<i64>() != 0 {
            return BigInt::zero();
        }
        if a.len() == 1 {
            return if b[0] == 0 { BigInt::one() } else { BigInt::zero() };
        }
        let key = CoeffKey {
            b: ExpVec::new(b),
            a: AVec::from(a),
        };
        if self.memoize {
            if let Some(v) = self.memo.get(&key) {
                return v.clone();
            }
        }
        let value = match a.iter().position(|&x| x == 0) {
            None => {
                let mut lowered = a.to_vec();
                let mut acc = BigInt::zero();
                for k in 0..a.len() {
                    lowered[k] -= 1;
                    acc += self.coeff(b, &lowered);
                    lowered[k] += 1;
                }
                acc
            }
            Some(k) => {
                let child_a = key.a.without(k);
                let mut acc = BigInt::zero();
                for term in boundary_expand(k, b, a) {
                    acc += term.coeff * self.coeff(&term.b_child, &child_a);
                }
                acc
            }
        };
        if self.memoize {
            self.memo.insert(key, value.clone());
        }
        value
    }
}

/// `c_n^b(a)` with a fresh memo table.
pub fn good_coeff(b: &[i32], a: &[u32]) -> BigInt {
    GoodEvaluator::new().coeff(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn examples() {
        assert_eq!(good_coeff(&[0, 0], &[1, 1]), big(2));
        for n in 1..6 {
            assert_eq!(good_coeff(&vec![0; n], &vec![0; n]), big(1));
        }
        assert_eq!(good_coeff(&[1, 0, -1], &[1, 1, 1]), big(-2));
        assert_eq!(good_coeff(&[1, 0], &[1, 1]), big(0));
        assert_eq!(good_coeff(&[0, 0, 0], &[2, 1, 3]), big(60));
    }

    #[test]
    fn boundary_unit_row() {
        let terms = boundary_expand(1, &[1, 0, -1], &[2, 0, 3]);
        assert_eq!(
            terms,
            vec![BoundaryTerm {
                coeff: big(1),
                b_child: ExpVec::new(&[1, -1])
            }]
        );
        assert!(boundary_expand(0, &[-1, 0, 1], &[0, 2, 2]).is_empty());
    }

    #[test]
    fn boundary_linear_row() {
        // b = e_1 - e_3, k = 1: -a_i on e_i - e_s for i != k
        let terms = boundary_expand(0, &[1, 0, -1], &[0, 2, 3]);
        assert_eq!(
            terms,
            vec![
                BoundaryTerm {
                    coeff: big(-3),
                    b_child: ExpVec::new(&[0, 0])
                },
                BoundaryTerm {
                    coeff: big(-2),
                    b_child: ExpVec::new(&[1, -1])
                },
            ]
        );
    }

    #[test]
    fn boundary_quadratic_row() {
        // b = 2e_1 - e_2 - e_3, k = 1, a = (0, 2, 3, 4)
        let mut terms = boundary_expand(0, &[2, -1, -1, 0], &[0, 2, 3, 4]);
        terms.sort_by(|x, y| x.b_child.cmp(&y.b_child));
        let mut expected = vec![
            // a_i(a_i-1)/2 on 2e_i - e_s - e_t
            (big(1), vec![1, -1, 0]),
            (big(3), vec![-1, 1, 0]),
            (big(6), vec![-1, -1, 2]),
            // a_i a_j on e_i + e_j - e_s - e_t
            (big(6), vec![0, 0, 0]),
            (big(8), vec![0, -1, 1]),
            (big(12), vec![-1, 0, 1]),
        ]
        .into_iter()
        .map(|(c, v)| BoundaryTerm {
            coeff: c,
            b_child: ExpVec::from(v),
        })
        .collect::<Vec<_>>();
        expected.sort_by(|x, y| x.b_child.cmp(&y.b_child));
        assert_eq!(terms, expected);
    }

    #[test]
    fn vanishes_when_negative_exponent_variable_is_boundary() {
        for a in [[2u32, 0, 1], [3, 0, 3], [1, 0, 0]] {
            assert_eq!(good_coeff(&[1, -1, 0], &a), big(0));
        }
    }

    #[test]
    fn memoized_and_plain_agree() {
        let mut plain = GoodEvaluator::unmemoized();
        let mut memo = GoodEvaluator::new();
        for b in [[0, 0, 0], [1, -1, 0], [2, -1, -1], [-1, 2, -1]] {
            for a in [[1u32, 2, 1], [2, 2, 2], [0, 3, 1]] {
                assert_eq!(plain.coeff(&b, &a), memo.coeff(&b, &a));
            }
        }
        assert_eq!(plain.memo_len(), 0);
        assert!(memo.memo_len() > 0);
    }
}
