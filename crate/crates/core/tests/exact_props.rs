use std::collections::HashMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use umap_core::exact::rational::{int, rat, Rational};
use umap_core::exact::{interval_eval, isolate_real_roots, refine_root, Expr, IntPolynomial, RationalInterval};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=20).prop_map(|(p, q)| rat(p, q))
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::var("x")),
        Just(Expr::var("y")),
        small_rational().prop_map(Expr::constant),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Div(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner, -2i32..=3).prop_map(|(a, e)| Expr::Pow(Box::new(a), e)),
        ]
    })
}

fn env(x: &Rational, y: &Rational) -> HashMap<String, Rational> {
    HashMap::from([("x".to_string(), x.clone()), ("y".to_string(), y.clone())])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn point_evaluation_is_exact(e in expr(), x in small_rational(), y in small_rational()) {
        let pts = HashMap::from([
            ("x".to_string(), RationalInterval::point(x.clone())),
            ("y".to_string(), RationalInterval::point(y.clone())),
        ]);
        match (e.eval_exact(&env(&x, &y)), interval_eval(&e, &pts)) {
            (Ok(v), Ok(iv)) => prop_assert_eq!(iv, RationalInterval::point(v)),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "exact {:?} vs interval {:?}", a, b),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn inclusion_monotone(e in expr(), x in small_rational(), y in small_rational(), wx in 0i64..8, wy in 0i64..8, s in 1i64..4) {
        let big = |c: &Rational, w: i64| RationalInterval::new(c - rat(w, 8), c + rat(w, 8)).unwrap();
        let j = HashMap::from([("x".to_string(), big(&x, wx)), ("y".to_string(), big(&y, wy))]);
        let i = HashMap::from([("x".to_string(), big(&x, wx).shrink_towards_mid(s)), ("y".to_string(), big(&y, wy).shrink_towards_mid(s))]);
        if let (Ok(a), Ok(b)) = (interval_eval(&e, &i), interval_eval(&e, &j)) {
            prop_assert!(a.is_subset_of(&b), "{} not in {}", a, b);
        }
    }

    #[test]
    fn finds_all_rational_roots(roots in proptest::collection::btree_set((-50i64..=50, 1i64..=5), 1..=6)) {
        // Distinct values p/q, deduplicated after reduction.
        let mut vals: Vec<Rational> = roots.iter().map(|&(p, q)| rat(p, q)).collect();
        vals.sort();
        vals.dedup();
        let mut p = IntPolynomial::from_i64s(&[1]);
        for v in &vals {
            let lin = IntPolynomial::new(vec![-v.numer().clone(), v.denom().clone()]);
            let mut c = vec![BigInt::from(0); p.coeffs().len() + 1];
            for (i, a) in p.coeffs().iter().enumerate() {
                for (j, b) in lin.coeffs().iter().enumerate() {
                    c[i + j] += a * b;
                }
            }
            p = IntPolynomial::new(c);
        }
        let ivs = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(ivs.len(), vals.len());
        for (iv, v) in ivs.iter().zip(&vals) {
            prop_assert!(iv.contains(v));
        }
    }

    #[test]
    fn refine_shrinks_inside(n in 2i64..50, k in 1u32..4, bits in 1i64..80) {
        // x^k - n on [0, n]: one sign change.
        let mut c = vec![0i64; k as usize + 1];
        c[0] = -n;
        c[k as usize] = 1;
        let p = IntPolynomial::from_i64s(&c);
        let iso = RationalInterval::new(int(0), int(n)).unwrap();
        let w = umap_core::exact::rational::mul_pow2(&int(1), -bits);
        let r = refine_root(&p, &iso, &w).unwrap();
        prop_assert!(r.width() <= w);
        prop_assert!(r.is_subset_of(&iso));
        prop_assert!(p.sign_at(r.lo()) <= 0 && p.sign_at(r.hi()) >= 0);
    }
}
