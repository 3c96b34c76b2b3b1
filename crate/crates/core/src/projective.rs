//! Points and lines of the projective plane over an exact field.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Divides by the first nonzero coordinate. `None` for the zero vector.
pub fn canonicalize(v: [FieldElement; 3]) -> Option<[FieldElement; 3]> {
    let k = v.iter().position(|c| !c.is_zero())?;
    if v[k].is_one() {
        return Some(v);
    }
    let inv = v[k].inv().ok()?;
    let [a, b, c] = v;
    Some([&a * &inv, &b * &inv, &c * &inv])
}

pub fn cross(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> [FieldElement; 3] {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn dot3(a: &[FieldElement; 3], b: &[FieldElement; 3]) -> FieldElement {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn det3(a: &[FieldElement; 3], b: &[FieldElement; 3], c: &[FieldElement; 3]) -> FieldElement {
    dot3(a, &cross(b, c))
}

/// A point of P², stored with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: [FieldElement; 3],
}

/// A line `a x + b y + c z = 0`, stored with the same canonical scaling.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjLine {
    coeffs: [FieldElement; 3],
}

/// Shared canonical-form behaviour of points and lines.
pub trait Projective: Clone + Eq + std::hash::Hash {
    fn vector(&self) -> &[FieldElement; 3];
}

impl Projective for ProjPoint {
    fn vector(&self) -> &[FieldElement; 3] {
        &self.coords
    }
}

impl Projective for ProjLine {
    fn vector(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }
}

impl ProjPoint {
    pub fn new(coords: [FieldElement; 3]) -> Result<Self> {
        coords[0].check_same_field(&coords[1])?;
        coords[0].check_same_field(&coords[2])?;
        canonicalize(coords)
            .map(|coords| ProjPoint { coords })
            .ok_or_else(|| Error::InvalidInput("the zero vector is not a projective point".into()))
    }

    /// Point from integer coordinates.
    pub fn from_ints(field: &FieldSpec, c: [i64; 3]) -> Result<Self> {
        Self::new(c.map(|k| field.from_int(k)))
    }

    /// Parses each coordinate with the field's string grammar.
    pub fn parse(field: &FieldSpec, c: [&str; 3]) -> Result<Self> {
        Self::new([field.parse(c[0])?, field.parse(c[1])?, field.parse(c[2])?])
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        &self.coords
    }

    pub fn field(&self) -> &FieldSpec {
        self.coords[0].field()
    }

    pub fn is_affine(&self) -> bool {
        !self.coords[2].is_zero()
    }

    pub fn lies_on(&self, line: &ProjLine) -> bool {
        dot3(&self.coords, &line.coeffs).is_zero()
    }

    /// Canonical coordinate strings, used as a deterministic sort key.
    pub fn key(&self) -> [String; 3] {
        self.coords.clone().map(|c| c.to_string())
    }
}

impl ProjLine {
    pub fn new(coeffs: [FieldElement; 3]) -> Result<Self> {
        coeffs[0].check_same_field(&coeffs[1])?;
        coeffs[0].check_same_field(&coeffs[2])?;
        canonicalize(coeffs)
            .map(|coeffs| ProjLine { coeffs })
            .ok_or_else(|| Error::InvalidInput("the zero vector is not a line".into()))
    }

    pub fn from_ints(field: &FieldSpec, c: [i64; 3]) -> Result<Self> {
        Self::new(c.map(|k| field.from_int(k)))
    }

    pub fn parse(field: &FieldSpec, c: [&str; 3]) -> Result<Self> {
        Self::new([field.parse(c[0])?, field.parse(c[1])?, field.parse(c[2])?])
    }

    pub fn coeffs(&self) -> &[FieldElement; 3] {
        &self.coeffs
    }

    pub fn field(&self) -> &FieldSpec {
        self.coeffs[0].field()
    }

    pub fn key(&self) -> [String; 3] {
        self.coeffs.clone().map(|c| c.to_string())
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} : {} : {}]",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Debug for ProjLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})x + ({})y + ({})z",
            self.coeffs[0], self.coeffs[1], self.coeffs[2]
        )
    }
}

pub fn line_through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
    p.coords[0].check_same_field(&q.coords[0])?;
    let v = cross(&p.coords, &q.coords);
    canonicalize(v)
        .map(|coeffs| ProjLine { coeffs })
        .ok_or(Error::IdenticalPoints)
}

pub fn meet(l1: &ProjLine, l2: &ProjLine) -> Result<ProjPoint> {
    l1.coeffs[0].check_same_field(&l2.coeffs[0])?;
    let v = cross(&l1.coeffs, &l2.coeffs);
    canonicalize(v)
        .map(|coords| ProjPoint { coords })
        .ok_or(Error::IdenticalLines)
}

/// True when the three (pairwise distinct) lines pass through one point.
pub fn concurrent(l1: &ProjLine, l2: &ProjLine, l3: &ProjLine) -> Result<bool> {
    if l1 == l2 || l1 == l3 || l2 == l3 {
        return Err(Error::RepeatedLine);
    }
    Ok(det3(&l1.coeffs, &l2.coeffs, &l3.coeffs).is_zero())
}

/// Drops projective duplicates, keeping first occurrences in order.
pub fn dedupe_projective<T: Projective>(items: &[T]) -> Vec<T> {
    let mut seen = HashSet::new();
    items
        .iter()
        .filter(|x| seen.insert((*x).clone()))
        .cloned()
        .collect()
}

/// Applies a 3x3 matrix to a point and renormalizes.
pub fn transform_point(m: &[[FieldElement; 3]; 3], p: &ProjPoint) -> ProjPoint {
    let v = m.clone().map(|row| dot3(&row, &p.coords));
    ProjPoint::new(v).expect("invertible transformation")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::cyclotomic(1).unwrap()
    }

    #[test]
    fn line_through_examples() {
        let f = q();
        let l = line_through(
            &ProjPoint::from_ints(&f, [1, 0, 0]).unwrap(),
            &ProjPoint::from_ints(&f, [0, 1, 0]).unwrap(),
        )
        .unwrap();
        assert_eq!(l, ProjLine::from_ints(&f, [0, 0, 1]).unwrap());
        let l = line_through(
            &ProjPoint::from_ints(&f, [1, 0, 1]).unwrap(),
            &ProjPoint::from_ints(&f, [0, 1, 1]).unwrap(),
        )
        .unwrap();
        assert_eq!(l, ProjLine::from_ints(&f, [1, 1, -1]).unwrap());
        let p = ProjPoint::from_ints(&f, [1, 2, 3]).unwrap();
        assert_eq!(line_through(&p, &p), Err(Error::IdenticalPoints));
    }

    #[test]
    fn meet_examples() {
        let f = q();
        let x = ProjLine::from_ints(&f, [1, 0, 0]).unwrap();
        let y = ProjLine::from_ints(&f, [0, 1, 0]).unwrap();
        assert_eq!(
            meet(&x, &y).unwrap(),
            ProjPoint::from_ints(&f, [0, 0, 1]).unwrap()
        );
        let a = ProjLine::from_ints(&f, [1, 0, -1]).unwrap();
        let b = ProjLine::from_ints(&f, [0, 1, -1]).unwrap();
        assert_eq!(
            meet(&a, &b).unwrap(),
            ProjPoint::from_ints(&f, [1, 1, 1]).unwrap()
        );
        let c = ProjLine::from_ints(&f, [0, 1, -1]).unwrap();
        let d = ProjLine::from_ints(&f, [0, 1, -2]).unwrap();
        assert_eq!(
            meet(&c, &d).unwrap(),
            ProjPoint::from_ints(&f, [1, 0, 0]).unwrap()
        );
        assert_eq!(meet(&c, &c), Err(Error::IdenticalLines));
    }

    #[test]
    fn concurrency_examples() {
        let f = q();
        let x = ProjLine::from_ints(&f, [1, 0, 0]).unwrap();
        let y = ProjLine::from_ints(&f, [0, 1, 0]).unwrap();
        let z = ProjLine::from_ints(&f, [0, 0, 1]).unwrap();
        let xy = ProjLine::from_ints(&f, [1, 1, 0]).unwrap();
        assert!(concurrent(&x, &y, &xy).unwrap());
        assert!(!concurrent(&x, &y, &z).unwrap());
        assert_eq!(concurrent(&x, &x, &y), Err(Error::RepeatedLine));
        // Pencil through [1:2:1].
        let p = ProjPoint::from_ints(&f, [1, 2, 1]).unwrap();
        let ls: Vec<ProjLine> = [[3, 1, 7], [0, 5, -2], [-4, 4, 1]]
            .iter()
            .map(|&d| line_through(&p, &ProjPoint::from_ints(&f, d).unwrap()).unwrap())
            .collect();
        assert!(concurrent(&ls[0], &ls[1], &ls[2]).unwrap());
    }

    #[test]
    fn dedupe_examples() {
        let f = q();
        let a = ProjPoint::from_ints(&f, [1, 2, 3]).unwrap();
        let b = ProjPoint::from_ints(&f, [2, 4, 6]).unwrap();
        assert_eq!(dedupe_projective(&[a.clone(), b]), vec![a]);
        assert!(dedupe_projective::<ProjPoint>(&[]).is_empty());
    }
}
