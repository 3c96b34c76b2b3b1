mod common;

use boroczky::field::FieldSpec;
use boroczky::projective::{canonicalize, line_through, meet, ProjPoint};
use common::{element_from, raw_element};
use proptest::prelude::*;

fn point(f: &FieldSpec, c: &[(Vec<i64>, i64); 3]) -> Option<ProjPoint> {
    ProjPoint::new(std::array::from_fn(|k| element_from(f, &c[k].0, c[k].1))).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn incidence_closure(a in [raw_element(), raw_element(), raw_element()], b in [raw_element(), raw_element(), raw_element()], c in [raw_element(), raw_element(), raw_element()]) {
        let f = FieldSpec::cyclotomic(12).unwrap();
        let (Some(p), Some(q), Some(r)) = (point(&f, &a), point(&f, &b), point(&f, &c)) else { return Ok(()); };
        prop_assume!(p != q && p != r && q != r);
        let l = line_through(&p, &q).unwrap();
        prop_assert!(p.lies_on(&l) && q.lies_on(&l));
        let l2 = line_through(&p, &r).unwrap();
        prop_assume!(l != l2);
        let x = meet(&l, &l2).unwrap();
        prop_assert!(x.lies_on(&l) && x.lies_on(&l2));
        // Duality round trip for non-collinear triples.
        prop_assert_eq!(x, p);
    }

    #[test]
    fn canonical_form_is_scale_invariant(a in [raw_element(), raw_element(), raw_element()], s in raw_element()) {
        let f = FieldSpec::fermat_tower();
        let v: [_; 3] = std::array::from_fn(|k| element_from(&f, &a[k].0, a[k].1));
        let lambda = element_from(&f, &s.0, s.1);
        prop_assume!(!lambda.is_zero());
        let Some(c1) = canonicalize(v.clone()) else { return Ok(()); };
        let scaled = v.map(|x| &x * &lambda);
        let c2 = canonicalize(scaled).unwrap();
        prop_assert_eq!(&c1, &c2);
        prop_assert_eq!(canonicalize(c1.clone()).unwrap(), c1);
    }
}
