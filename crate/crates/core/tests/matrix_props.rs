mod common;

use boroczky::field::{FieldElement, FieldSpec};
use boroczky::matrix::{in_span, ExactMatrix};
use common::{element_from, fields, raw_element};
use proptest::prelude::*;

fn matrix_strategy() -> impl Strategy<Value = (usize, usize, usize, Vec<(Vec<i64>, i64)>)> {
    (1usize..6, 1usize..7, 0usize..4).prop_flat_map(|(r, c, fi)| {
        (
            Just(r),
            Just(c),
            Just(fi),
            prop::collection::vec(raw_element(), r * c),
        )
    })
}

/// Mixes zero entries and repeated rows in so that rank deficiency actually occurs.
fn build(f: &FieldSpec, r: usize, c: usize, entries: &[(Vec<i64>, i64)]) -> ExactMatrix {
    let mut rows: Vec<Vec<FieldElement>> = (0..r)
        .map(|i| {
            (0..c)
                .map(|j| {
                    let (nums, den) = &entries[i * c + j];
                    if nums[0] % 3 == 0 {
                        f.zero()
                    } else {
                        element_from(f, nums, *den)
                    }
                })
                .collect()
        })
        .collect();
    if r >= 3 {
        let combo: Vec<FieldElement> = rows[0].iter().zip(&rows[1]).map(|(a, b)| a + b).collect();
        rows[r - 1] = combo;
    }
    ExactMatrix::from_rows(f, c, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nullspace_multiply_back((r, c, fi, entries) in matrix_strategy()) {
        let f = &fields()[fi];
        let m = build(f, r, c, &entries);
        let ns = m.nullspace();
        prop_assert_eq!(m.rank() + ns.len(), c);
        for v in &ns {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        // Basis vectors are independent.
        let k = ExactMatrix::from_rows(f, c, ns.clone()).unwrap();
        prop_assert_eq!(k.rank(), ns.len());
    }

    #[test]
    fn rows_lie_in_their_span((r, c, fi, entries) in matrix_strategy()) {
        let f = &fields()[fi];
        let m = build(f, r, c, &entries);
        let rows: Vec<Vec<FieldElement>> = (0..r).map(|i| m.row(i).to_vec()).collect();
        for row in &rows {
            prop_assert!(in_span(f, &rows, row));
        }
    }
}

#[test]
fn small_examples() {
    let f = FieldSpec::cyclotomic(1).unwrap();
    assert!(ExactMatrix::identity(&f, 3).nullspace().is_empty());
    let m = ExactMatrix::from_rows(&f, 2, vec![vec![f.one(), f.one()]]).unwrap();
    let ns = m.nullspace();
    assert_eq!(ns, vec![vec![-f.one(), f.one()]]);
}
