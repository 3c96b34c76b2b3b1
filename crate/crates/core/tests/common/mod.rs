#![allow(dead_code)]

use boroczky::field::{FieldElement, FieldSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn fields() -> Vec<FieldSpec> {
    vec![
        FieldSpec::cyclotomic(12).unwrap(),
        FieldSpec::cyclotomic(24).unwrap(),
        FieldSpec::cyclotomic(36).unwrap(),
        FieldSpec::fermat_tower(),
    ]
}

pub fn element_from(field: &FieldSpec, nums: &[i64], den: i64) -> FieldElement {
    let coeffs: Vec<BigRational> = (0..field.degree())
        .map(|k| BigRational::new(BigInt::from(nums[k % nums.len()]), BigInt::from(den)))
        .collect();
    field.from_coefficients(&coeffs).unwrap()
}

/// Coefficients and a positive denominator for a random element.
pub fn raw_element() -> impl Strategy<Value = (Vec<i64>, i64)> {
    (prop::collection::vec(-50i64..=50, 12), 1i64..=20)
}
