//! Cross-checks between the expansion engines, the closed forms and Good's
//! recurrence on small grids.
//!
//! `naive_product` below builds the products one linear factor at a time
//! through plain Laurent multiplication, independent of the row-based
//! expansion it checks.

use dyson_core::closedform::{self, index_tuples, CoeffSpec, Family};
use dyson_core::goodrec::{good_coeff, GoodEvaluator};
use dyson_core::laurent::{build_dyson, build_product, build_qdyson, coeff_pruned, DEFAULT_TERM_CAP};
use dyson_core::qdixon::{dixon_sum, DixonParams, IDENTITIES};
use dyson_core::ring::{q_multinomial, CoeffRing, QPoly};
use dyson_core::{ExpVec, LaurentPoly};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};

fn grid(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// `1 - c · x_i / x_j` as a Laurent polynomial.
fn linear<R: CoeffRing>(n: usize, i: usize, j: usize, c: R) -> LaurentPoly<R> {
    let mut e = vec![0; n];
    e[i] += 1;
    e[j] -= 1;
    let mut neg = R::zero();
    neg.add_assign_ref(&c.scale(&BigInt::from(-1)));
    LaurentPoly::from_terms(n, [(ExpVec::zeros(n), R::one()), (ExpVec::from(e), neg)]).unwrap()
}

fn naive_classical(a: &[u32]) -> LaurentPoly<BigInt> {
    let n = a.len();
    let mut acc = LaurentPoly::one(n);
    for i in 0..n {
        for j in (i + 1)..n {
            for _ in 0..a[j] {
                acc = acc.mul(&linear(n, i, j, BigInt::from(1))).unwrap();
            }
            for _ in 0..a[i] {
                acc = acc.mul(&linear(n, j, i, BigInt::from(1))).unwrap();
            }
        }
    }
    acc
}

fn naive_q(a: &[u32]) -> LaurentPoly<QPoly> {
    let n = a.len();
    let mut acc = LaurentPoly::one(n);
    for i in 0..n {
        for j in (i + 1)..n {
            for l in 0..a[j] {
                acc = acc.mul(&linear(n, i, j, QPoly::q_pow(l as usize + 1))).unwrap();
            }
            for l in 0..a[i] {
                acc = acc.mul(&linear(n, j, i, QPoly::q_pow(l as usize))).unwrap();
            }
        }
    }
    acc
}

#[test]
fn row_expansion_matches_naive_product() {
    for n in 1..=3 {
        for a in grid(n, 2) {
            assert_eq!(build_dyson(&a).unwrap(), naive_classical(&a), "a = {a:?}");
            assert_eq!(build_qdyson(&a).unwrap(), naive_q(&a), "a = {a:?}");
        }
    }
    let a = [1, 2, 0, 1];
    assert_eq!(build_qdyson(&a).unwrap(), naive_q(&a));
}

#[test]
fn q_dyson_of_one_one_one() {
    let f = build_qdyson(&[1, 1, 1]).unwrap();
    assert_eq!(f.coeff(&[0, 0, 0]).unwrap(), QPoly::from_i64s(&[1, 2, 2, 1]));
    assert_eq!(f.coeff(&[1, 0, -1]).unwrap(), QPoly::from_i64s(&[0, -1, -1]));
}

#[test]
fn homogeneity_and_exponent_window() {
    for n in 2..=4 {
        for a in grid(n, if n == 4 { 2 } else { 3 }) {
            let sigma: i64 = a.iter().map(|&x| i64::from(x)).sum();
            let f = build_dyson(&a).unwrap();
            for (e, _) in f.terms() {
                assert_eq!(e.total(), 0);
                for (i, &ei) in e.iter().enumerate() {
                    let ai = i64::from(a[i]);
                    assert!(-(n as i64 - 1) * ai <= i64::from(ei));
                    assert!(i64::from(ei) <= sigma - ai);
                }
            }
            let qf = build_qdyson(&a).unwrap();
            assert!(qf.terms().all(|(e, _)| e.total() == 0));
        }
    }
}

#[test]
fn nonzero_total_exponent_gives_zero() {
    for n in 2..=4 {
        for a in grid(n, if n == 4 { 1 } else { 3 }) {
            for b in grid(n, 4) {
                let b: Vec<i32> = b.iter().map(|&x| x as i32 - 2).collect();
                if b.iter().sum::<i32>() == 0 {
                    continue;
                }
                let c: BigInt = coeff_pruned(&a, &b, DEFAULT_TERM_CAP).unwrap();
                assert_eq!(c, BigInt::from(0));
                let c: QPoly = coeff_pruned(&a, &b, DEFAULT_TERM_CAP).unwrap();
                assert!(c.is_zero());
            }
        }
    }
}

#[test]
fn q_specialises_to_classical() {
    for n in 2..=4 {
        for a in grid(n, 2) {
            let f = build_dyson(&a).unwrap();
            let qf = build_qdyson(&a).unwrap();
            assert_eq!(qf.map_coeffs(|c| c.eval_at_one()), f, "a = {a:?}");
        }
    }
}

#[test]
fn pruned_matches_full() {
    for n in 2..=4 {
        for a in grid(n, 2) {
            let f = build_dyson(&a).unwrap();
            let qf = build_qdyson(&a).unwrap();
            for (e, c) in f.terms() {
                assert_eq!(&coeff_pruned::<BigInt>(&a, e, DEFAULT_TERM_CAP).unwrap(), c);
            }
            for (e, c) in qf.terms() {
                assert_eq!(&coeff_pruned::<QPoly>(&a, e, DEFAULT_TERM_CAP).unwrap(), c);
            }
        }
    }
}

#[test]
fn relabelling_permutes_coefficients() {
    // only the classical product is symmetric; the q-product depends on the order
    let a = [2u32, 0, 1, 3];
    let perm = [2usize, 0, 3, 1];
    let pa: Vec<u32> = perm.iter().map(|&p| a[p]).collect();
    let f = build_dyson(&a).unwrap();
    let g = build_dyson(&pa).unwrap();
    assert_eq!(f.len(), g.len());
    for (e, c) in g.terms() {
        let mut back = vec![0; 4];
        for (k, &p) in perm.iter().enumerate() {
            back[p] = e[k];
        }
        assert_eq!(&f.coeff(&back).unwrap(), c);
    }
}

#[test]
fn closed_forms_match_expansion_small_grid() {
    for n in 2..=4usize {
        for a in grid(n, 2) {
            let f = build_dyson(&a).unwrap();
            let qf = build_qdyson(&a).unwrap();
            for family in [Family::Constant, Family::Thm1, Family::Thm2, Family::Thm3] {
                for ix in index_tuples(family, n) {
                    let spec = CoeffSpec::new(family, ix, n).unwrap();
                    let b = spec.target();
                    assert_eq!(
                        spec.classical_value(&a).unwrap(),
                        f.coeff(&b).unwrap(),
                        "{spec:?} a={a:?}"
                    );
                    assert_eq!(spec.q_value(&a).unwrap(), qf.coeff(&b).unwrap(), "{spec:?} a={a:?}");
                }
            }
        }
    }
}

#[test]
fn closed_form_examples_against_expansion() {
    let f = build_dyson(&[2, 1, 1]).unwrap();
    assert_eq!(
        closedform::thm2_value(&[2, 1, 1], 1, 2, 3).unwrap(),
        f.coeff(&[2, -1, -1]).unwrap()
    );
    let qf = build_qdyson(&[1, 1, 1, 1]).unwrap();
    assert_eq!(
        closedform::conj3_value(&[1, 1, 1, 1], 1, 2, 3, 4).unwrap(),
        qf.coeff(&[1, 1, -1, -1]).unwrap()
    );
    assert_eq!(
        closedform::thm3_value(&[1, 1, 1, 1], 1, 2, 3, 4).unwrap(),
        BigInt::from(4)
    );
}

#[test]
fn r_independence_in_expansion() {
    for a in grid(4, 2) {
        let f = build_dyson(&a).unwrap();
        for s in 0..4 {
            let vals: Vec<BigInt> = (0..4)
                .filter(|&k| k != s)
                .map(|k| {
                    let mut b = vec![0; 4];
                    b[k] += 1;
                    b[s] -= 1;
                    f.coeff(&b).unwrap()
                })
                .collect();
            assert!(vals.windows(2).all(|w| w[0] == w[1]), "a={a:?} s={s}");
        }
    }
}

fn shape_vectors(n: usize) -> Vec<Vec<i32>> {
    let mut out = vec![vec![0; n]];
    for family in [Family::Thm1, Family::Thm2, Family::Thm3] {
        for ix in index_tuples(family, n) {
            out.push(CoeffSpec::new(family, ix, n).unwrap().target().to_vec());
        }
    }
    out
}

#[test]
fn good_recurrence_matches_expansion() {
    let mut ev = GoodEvaluator::new();
    for n in 2..=4usize {
        let max = if n == 4 { 2 } else { 3 };
        for a in grid(n, max) {
            let f = build_dyson(&a).unwrap();
            for b in shape_vectors(n) {
                assert_eq!(ev.coeff(&b, &a), f.coeff(&b).unwrap(), "a={a:?} b={b:?}");
            }
        }
    }
}

#[test]
fn good_recurrence_random_exponents() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    let mut ev = GoodEvaluator::new();
    for _ in 0..50 {
        let n = rng.gen_range(2..=4usize);
        let a: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let mut b: Vec<i32> = (0..n - 1).map(|_| rng.gen_range(-2..=2)).collect();
        let last = -b.iter().sum::<i32>();
        if last.abs() > 2 {
            continue;
        }
        b.push(last);
        let oracle: BigInt = coeff_pruned(&a, &b, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(ev.coeff(&b, &a), oracle, "a={a:?} b={b:?}");
    }
}

#[test]
fn interpolation_recurrence_holds_termwise() {
    for a in grid(3, 3) {
        if a.contains(&0) {
            continue;
        }
        let f = build_dyson(&a).unwrap();
        let mut sum: LaurentPoly<BigInt> = LaurentPoly::zero(3);
        for k in 0..3 {
            let mut lower = a.clone();
            lower[k] -= 1;
            let g = build_product::<BigInt>(&lower, DEFAULT_TERM_CAP).unwrap();
            let mut terms: Vec<(ExpVec, BigInt)> = sum.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
            terms.extend(g.terms().map(|(e, c)| (e.clone(), c.clone())));
            sum = LaurentPoly::from_terms(3, terms).unwrap();
        }
        assert_eq!(sum, f, "a={a:?}");
    }
}

#[test]
fn single_sum_matches_expansion() {
    for a in 0..=2 {
        for b in 0..=2 {
            for c in 0..=2 {
                let qf = build_qdyson(&[a, b, c]).unwrap();
                for alpha in -2..=2i64 {
                    for beta in -2..=2i64 {
                        let p = DixonParams { a, b, c, alpha, beta };
                        let e = [alpha as i32, beta as i32, -(alpha + beta) as i32];
                        assert_eq!(dixon_sum(p), qf.coeff(&e).unwrap(), "{p:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn identities_follow_from_closed_forms() {
    for ident in &IDENTITIES {
        for a in grid(3, 3) {
            let rhs = ident.rhs(a[0], a[1], a[2]).unwrap();
            let ix = ident.link.indices;
            let value = match ix.len() {
                2 => closedform::conj1_value(&a, ix[0], ix[1]).unwrap(),
                _ => closedform::conj2_value(&a, ix[0], ix[1], ix[2]).unwrap(),
            };
            let expected = if ident.link.negated { -value } else { value };
            assert_eq!(rhs, expected, "identity {} at {a:?}", ident.id);
        }
    }
}

#[test]
fn q_dixon_centre_is_q_multinomial() {
    for a in 0..=4 {
        for b in 0..=4 {
            for c in 0..=4 {
                let p = DixonParams { a, b, c, alpha: 0, beta: 0 };
                assert_eq!(dixon_sum(p), q_multinomial(&[a, b, c]));
            }
        }
    }
}

#[test]
fn canonical_text_golden() {
    let text = build_dyson(&[1, 1, 1]).unwrap().to_canonical_text();
    let expected = "\
[-2,0,2] -1
[-2,1,1] 2
[-2,2,0] -1
[-1,-1,2] 2
[-1,0,1] -2
[-1,1,0] -2
[-1,2,-1] 2
[0,-2,2] -1
[0,-1,1] -2
[0,0,0] 6
[0,1,-1] -2
[0,2,-2] -1
[1,-2,1] 2
[1,-1,0] -2
[1,0,-1] -2
[1,1,-2] 2
[2,-2,0] -1
[2,-1,-1] 2
[2,0,-2] -1
";
    assert_eq!(text, expected);
    assert_eq!(good_coeff(&[2, -1, -1], &[1, 1, 1]), BigInt::from(2));
}
