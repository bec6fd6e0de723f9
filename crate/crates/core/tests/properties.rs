use dyson_core::goodrec::GoodEvaluator;
use dyson_core::laurent::{coeff_pruned, DEFAULT_TERM_CAP};
use dyson_core::ring::{gauss_binomial, multinomial, q_multinomial, QPoly};
use num_bigint::BigInt;
use proptest::prelude::*;

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-20i64..20, 0..8).prop_map(|c| QPoly::from_i64s(&c))
}

proptest! {
    #[test]
    fn exact_division_round_trips(p in qpoly(), d in qpoly()) {
        prop_assume!(!d.is_zero());
        let prod = &p * &d;
        prop_assert_eq!(prod.div_exact(&d).unwrap(), p);
    }

    #[test]
    fn ring_laws(p in qpoly(), r in qpoly(), s in qpoly()) {
        prop_assert_eq!(&p * &(&r + &s), &(&p * &r) + &(&p * &s));
        prop_assert_eq!(&(&p + &r) - &r, p.clone());
        prop_assert_eq!(&p * &r, &r * &p);
    }

    #[test]
    fn q_multinomial_is_symmetric(mut a in prop::collection::vec(0u32..5, 1..5), seed in any::<u64>()) {
        let base = q_multinomial(&a);
        prop_assert_eq!(base.eval_at_one(), multinomial(&a));
        let len = a.len();
        a.rotate_left((seed as usize) % len);
        a.swap(0, (seed as usize / 7) % len);
        prop_assert_eq!(q_multinomial(&a), base);
    }

    #[test]
    fn q_pascal_both_ways(a in 1i64..16, b in 1i64..16) {
        prop_assume!(b <= a);
        // [a,b] = q^{a-b}[a-1,b-1] + [a-1,b]
        let other = &gauss_binomial(a - 1, b - 1).shift((a - b) as usize) + &gauss_binomial(a - 1, b);
        prop_assert_eq!(gauss_binomial(a, b), other);
    }

    #[test]
    fn good_matches_pruned_expansion(
        a in prop::collection::vec(0u32..3, 2..5),
        raw in prop::collection::vec(-2i32..=2, 4),
    ) {
        let n = a.len();
        let mut b: Vec<i32> = raw[..n - 1].to_vec();
        let last = -b.iter().sum::<i32>();
        b.push(last);
        let oracle: BigInt = coeff_pruned(&a, &b, DEFAULT_TERM_CAP).unwrap();
        prop_assert_eq!(GoodEvaluator::new().coeff(&b, &a), oracle);
    }
}
