mod common;

use boroczky::field::{element_arithmetic, ArithOp, FieldSpec};
use common::{element_from, fields, raw_element};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn inverse_round_trip(field_ix in 0usize..4, (nums, den) in raw_element()) {
        let f = &fields()[field_ix];
        let a = element_from(f, &nums, den);
        prop_assume!(!a.is_zero());
        let q = element_arithmetic(&f.one(), &a, ArithOp::Div).unwrap();
        prop_assert!(element_arithmetic(&q, &a, ArithOp::Mul).unwrap().is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(field_ix in 0usize..4, x in raw_element(), y in raw_element(), z in raw_element()) {
        let f = &fields()[field_ix];
        let (a, b, c) = (element_from(f, &x.0, x.1), element_from(f, &y.0, y.1), element_from(f, &z.0, z.1));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&(&a - &b) + &b) == a);
    }

    #[test]
    fn display_parse_round_trip(field_ix in 0usize..4, (nums, den) in raw_element()) {
        let f = &fields()[field_ix];
        let a = element_from(f, &nums, den);
        let back = f.parse(&a.to_string()).unwrap();
        prop_assert_eq!(&back, &a);
        // Reducing an already reduced element changes nothing.
        prop_assert_eq!(back.coefficients(), a.coefficients());
    }

    #[test]
    fn embedding_is_a_ring_map(field_ix in 0usize..4, x in raw_element(), y in raw_element()) {
        let f = &fields()[field_ix];
        let (a, b) = (element_from(f, &x.0, x.1), element_from(f, &y.0, y.1));
        let lhs = (&a * &b).embed_numeric();
        let rhs = a.embed_numeric() * b.embed_numeric();
        prop_assert!((lhs - rhs).norm() <= 1e-6 * (1.0 + rhs.norm()));
    }
}

#[test]
fn cyclotomic_sanity() {
    for m in [5u64, 8, 9, 20, 24, 30, 48] {
        let f = FieldSpec::cyclotomic(m).unwrap();
        let z = f.generator(0);
        assert!(z.pow(m).is_one());
        assert!((1..m).all(|k| !z.pow(k).is_one()));
    }
}

#[test]
fn numeric_embedding_examples() {
    let f = FieldSpec::cyclotomic(12).unwrap();
    let i = f.root_of_unity(4).unwrap().embed_numeric();
    assert!((i.re).abs() < 1e-12 && (i.im - 1.0).abs() < 1e-12);
    let z = f.generator(0);
    let r3 = (&z + &z.pow(11)).embed_numeric();
    assert!((r3.re - 3f64.sqrt()).abs() < 1e-9 && r3.im.abs() < 1e-9);
    let q = f.from_frac(3, 4).embed_numeric();
    assert_eq!((q.re, q.im), (0.75, 0.0));
}
