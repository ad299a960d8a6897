use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use umap_core::algebraic::number::{charpoly, minimal_relation};
use umap_core::algebraic::random::{quotient_instance, random_element};
use umap_core::algebraic::{
    enumerate_algebraics, height_bound_product, height_bound_sum, icen_check, minimal_polynomial, BoundSpec, Field,
    FieldElement, NumberField,
};
use umap_core::exact::rational::{rat, Rational};
use umap_core::exact::upoly;

fn fields() -> Vec<Field> {
    vec![NumberField::parse("[-2,0,1]@[1,2]").unwrap(), NumberField::pure_root(3, 2).unwrap()]
}

fn coords(m: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-100i64..=100, 1i64..=100).prop_map(|(p, q)| rat(p, q)), m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn minimal_polynomial_vanishes_and_divides_charpoly(which in 0usize..2, c in coords(3)) {
        let k = &fields()[which];
        let e = FieldElement::from_poly(k, c[..k.degree()].to_vec());
        let rel = minimal_relation(&e);
        let as_k: Vec<FieldElement> = rel.iter().map(|r| FieldElement::from_rational(k, r.clone())).collect();
        prop_assert!(upoly::eval(&as_k, &e).is_zero());
        prop_assert!(upoly::rem(&charpoly(&e.mul_matrix()), &rel).is_empty());
        // No proper divisor of the degree works: m = 2 or 3 is prime, so a
        // lower degree can only be 1, i.e. e rational.
        if rel.len() == 2 {
            prop_assert!(e.as_rational().is_some());
        }
        let n = minimal_polynomial(&e);
        prop_assert_eq!(n.degree(), rel.len() - 1);
        let enc = n.real_enclosure(&rat(1, 1 << 20)).unwrap();
        let approx = e.enclosure(&rat(1, 1 << 30)).unwrap();
        prop_assert!(enc.intersect(&approx).is_some());
    }

    #[test]
    fn sum_and_product_bounds(seed in any::<u64>(), which in 0usize..2, count in 2usize..4) {
        let k = &fields()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<FieldElement> = (0..count).map(|_| random_element(&mut rng, k, 100)).collect();
        prop_assert!(height_bound_sum(&xs).unwrap().ok);
        prop_assert!(height_bound_product(&xs).unwrap().ok);
    }

    #[test]
    fn quotient_relations_satisfy_bounds(seed in any::<u64>(), r in 0usize..=3, l in 2usize..=3) {
        let k = &fields()[0];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rel, values, eta) = quotient_instance(&mut rng, k, r, l, 30);
        let c = icen_check(&rel, &values, &eta).unwrap();
        prop_assert!(c.degree_ok && c.height_ok);
    }
}

#[test]
fn reciprocal_preserves_height() {
    for a in enumerate_algebraics(&BoundSpec::new(3, 3).unwrap()) {
        if a.as_rational().is_some_and(|r| r.is_zero()) {
            continue;
        }
        let inv = a.reciprocal().unwrap();
        assert_eq!(inv.height(), a.height(), "{a}");
        assert_eq!(inv.degree(), a.degree());
        let back = inv.reciprocal().unwrap();
        assert!(back.same_number(&a));
    }
    assert!(BoundSpec::new(0, 3).is_err());
    assert_eq!(BigInt::from(1), enumerate_algebraics(&BoundSpec::new(1, 1).unwrap())[0].height());
}
