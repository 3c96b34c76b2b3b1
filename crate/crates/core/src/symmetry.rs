//! The dihedral group of order 6 acting on P², its invariants `z, u, v`, the
//! skew-invariant `p`, and orbit bookkeeping for triple-point sets.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::forms::Form;
use crate::projective::{transform_point, ProjLine, ProjPoint};

pub type Matrix3 = [[FieldElement; 3]; 3];

/// `sqrt(3) = zeta_12 + zeta_12^{-1}`; needs a cyclotomic field of order divisible by 12.
pub fn sqrt3(field: &FieldSpec) -> Result<FieldElement> {
    let z = field.root_of_unity(12)?;
    Ok(&z + &z.pow(11))
}

fn mat_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            &(&(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j])) + &(&a[i][2] * &b[2][j])
        })
    })
}

fn transpose(a: &Matrix3) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// One of the six symmetries of the equilateral triangle, as a 3x3 matrix fixing `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: Matrix3,
    pub is_reflection: bool,
}

impl GroupElement {
    pub fn identity(field: &FieldSpec) -> Self {
        let m = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { field.one() } else { field.zero() })
        });
        GroupElement {
            matrix: m,
            is_reflection: false,
        }
    }

    /// Counterclockwise rotation by `2 pi / 3`.
    pub fn rotation(field: &FieldSpec) -> Result<Self> {
        let h = field.from_frac(1, 2);
        let s = &sqrt3(field)? * &h;
        let (o, z) = (field.one(), field.zero());
        Ok(GroupElement {
            matrix: [
                [-&h, -&s, z.clone()],
                [s, -&h, z.clone()],
                [z.clone(), z, o],
            ],
            is_reflection: false,
        })
    }

    /// Reflection in the x-axis.
    pub fn reflection(field: &FieldSpec) -> Self {
        let (o, z) = (field.one(), field.zero());
        GroupElement {
            matrix: [
                [o.clone(), z.clone(), z.clone()],
                [z.clone(), -&o, z.clone()],
                [z.clone(), z, o],
            ],
            is_reflection: true,
        }
    }

    /// Counterclockwise rotation by `pi / 3`; not an element of the group.
    pub fn sixth_turn(field: &FieldSpec) -> Result<Self> {
        let h = field.from_frac(1, 2);
        let s = &sqrt3(field)? * &h;
        let (o, z) = (field.one(), field.zero());
        Ok(GroupElement {
            matrix: [
                [h.clone(), -&s, z.clone()],
                [s, h, z.clone()],
                [z.clone(), z, o],
            ],
            is_reflection: false,
        })
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            matrix: mat_mul(&self.matrix, &other.matrix),
            is_reflection: self.is_reflection != other.is_reflection,
        }
    }

    /// The matrices are orthogonal, so the inverse is the transpose.
    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            matrix: transpose(&self.matrix),
            is_reflection: self.is_reflection,
        }
    }

    /// Order of the element (1, 2 or 3 for group members).
    pub fn order(&self) -> usize {
        let id = GroupElement::identity(self.matrix[0][0].field());
        let mut acc = self.clone();
        let mut k = 1;
        while acc.matrix != id.matrix {
            acc = acc.compose(self);
            k += 1;
            assert!(k <= 12, "element of unexpected order");
        }
        k
    }
}

/// `[I, r, r^2, s, r s, r^2 s]` with `r` the 2π/3 rotation and `s` the x-axis reflection.
pub fn group_elements(field: &FieldSpec) -> Result<Vec<GroupElement>> {
    let id = GroupElement::identity(field);
    let r = GroupElement::rotation(field)?;
    let r2 = r.compose(&r);
    let s = GroupElement::reflection(field);
    let rs = r.compose(&s);
    let r2s = r2.compose(&s);
    Ok(vec![id, r, r2, s, rs, r2s])
}

pub fn act(g: &GroupElement, p: &ProjPoint) -> ProjPoint {
    transform_point(&g.matrix, p)
}

/// Image of a line: coefficients `g^{-T} l`, which is `g l` since the group is orthogonal.
pub fn act_line(g: &GroupElement, l: &ProjLine) -> ProjLine {
    let c = l.coeffs();
    let m = &g.matrix;
    let v =
        std::array::from_fn(|i| &(&(&m[i][0] * &c[0]) + &(&m[i][1] * &c[1])) + &(&m[i][2] * &c[2]));
    ProjLine::new(v).expect("invertible matrix")
}

/// `(g . f)(X) = f(g^{-1} X)`.
pub fn act_form(g: &GroupElement, f: &Form) -> Form {
    f.substitute(&g.inverse().matrix)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Orbit points in the order they were produced by the group elements.
    pub points: Vec<ProjPoint>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn representative(&self) -> &ProjPoint {
        &self.points[0]
    }
}

/// Splits `points` into orbits under `group`. Orbits appear in order of their
/// first member in the input.
pub fn orbit_decompose_under(group: &[GroupElement], points: &[ProjPoint]) -> Result<Vec<Orbit>> {
    let index: HashMap<&ProjPoint, usize> =
        points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut assigned = vec![false; points.len()];
    let mut orbits = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut members = Vec::new();
        for g in group {
            let q = act(g, p);
            let Some(&k) = index.get(&q) else {
                return Err(Error::NotClosed {
                    point: q.to_string(),
                });
            };
            if !assigned[k] {
                assigned[k] = true;
                members.push(q);
            }
        }
        orbits.push(Orbit { points: members });
    }
    Ok(orbits)
}

/// Orbits under the dihedral group of order 6.
pub fn orbit_decompose(points: &[ProjPoint]) -> Result<Vec<Orbit>> {
    let Some(first) = points.first() else {
        return Ok(Vec::new());
    };
    orbit_decompose_under(&group_elements(first.field())?, points)
}

/// Orbit size -> number of orbits.
pub fn orbit_profile(orbits: &[Orbit]) -> std::collections::BTreeMap<usize, usize> {
    let mut m = std::collections::BTreeMap::new();
    for o in orbits {
        *m.entry(o.size()).or_insert(0) += 1;
    }
    m
}

/// Closed-form orbit counts `(O3, O6)` for `3 | n`:
/// `O3 = floor((n-1)/2) - 1`, `O6 = n(n-3)/36 - floor((n-1)/2)/2 + 1/2`.
pub fn orbit_count_formulas(n: usize) -> Result<(i64, i64)> {
    if n < 3 || !n.is_multiple_of(3) {
        return Err(Error::InvalidInput(format!(
            "orbit formulas need 3 | n and n >= 3, got {n}"
        )));
    }
    let n = n as i64;
    let h = (n - 1) / 2;
    let num = n * (n - 3) - 18 * h + 18;
    if num % 36 != 0 {
        return Err(Error::Consistency(format!(
            "O6 formula is not integral for n = {n}"
        )));
    }
    Ok((h - 1, num / 36))
}

/// The simplified counts for `6 | n`: `(n/2 - 2, (n-6)^2/36)`.
pub fn orbit_count_formulas_even(n: usize) -> Result<(i64, i64)> {
    if n < 6 || !n.is_multiple_of(6) {
        return Err(Error::InvalidInput(format!(
            "simplified orbit formulas need 6 | n, got {n}"
        )));
    }
    let n = n as i64;
    Ok((n / 2 - 2, (n - 6) * (n - 6) / 36))
}

/// Generators of the invariant ring `k[z, u, v]` and the skew-invariant `p`.
#[derive(Clone, Debug)]
pub struct InvariantForms {
    pub z: Form,
    pub u: Form,
    pub v: Form,
    pub p: Form,
}

impl InvariantForms {
    /// `u = x^2 + y^2`, `v = x^3 - 3 x y^2`, `p = y^3 - 3 x^2 y`.
    pub fn new(field: &FieldSpec) -> Self {
        InvariantForms {
            z: Form::from_terms(field, 1, &[(1, [0, 0, 1])]),
            u: Form::from_terms(field, 2, &[(1, [2, 0, 0]), (1, [0, 2, 0])]),
            v: Form::from_terms(field, 3, &[(1, [3, 0, 0]), (-3, [1, 2, 0])]),
            p: Form::from_terms(field, 3, &[(1, [0, 3, 0]), (-3, [2, 1, 0])]),
        }
    }

    /// The three mirror lines `y`, `y - sqrt3 x`, `y + sqrt3 x`.
    pub fn mirror_lines(field: &FieldSpec) -> Result<[Form; 3]> {
        let r = sqrt3(field)?;
        let (o, z) = (field.one(), field.zero());
        Ok([
            Form::linear(&[z.clone(), o.clone(), z.clone()]),
            Form::linear(&[-&r, o.clone(), z.clone()]),
            Form::linear(&[r, o, z]),
        ])
    }
}

/// Per-element signs `e_g` with `g . f = e_g f`, or `None` when some element maps
/// `f` to something other than `+-f`.
pub fn skew_signs(f: &Form) -> Result<Option<Vec<i8>>> {
    let group = group_elements(f.field())?;
    let neg = f.neg();
    let mut signs = Vec::with_capacity(group.len());
    for g in &group {
        let h = act_form(g, f);
        if h == *f {
            signs.push(1);
        } else if h == neg {
            signs.push(-1);
        } else {
            return Ok(None);
        }
    }
    Ok(Some(signs))
}

pub fn skew_invariant_check(f: &Form) -> Result<bool> {
    Ok(skew_signs(f)?.is_some())
}

/// True when `g . f = -f` exactly on the reflections and `f` on the rotations.
pub fn has_alternating_sign(f: &Form) -> Result<bool> {
    let group = group_elements(f.field())?;
    Ok(skew_signs(f)?.is_some_and(|s| {
        s.iter()
            .zip(&group)
            .all(|(&e, g)| (e == -1) == g.is_reflection)
    }))
}

/// A point of the weighted plane P(1,2,3), stored with first coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedPoint {
    pub coords: [FieldElement; 3],
}

/// `[a:b:c] -> [z : u : v]`, normalized by `[l a : l^2 b : l^3 c]` with `l = 1/c`.
pub fn phi_map(p: &ProjPoint) -> Result<WeightedPoint> {
    let c = p.coords();
    if c[2].is_zero() {
        return Err(Error::Unsupported(format!(
            "phi_map needs an affine point, got {p}"
        )));
    }
    let l = c[2].inv()?;
    let x = &c[0] * &l;
    let y = &c[1] * &l;
    let x2 = x.square();
    let y2 = y.square();
    let u = &x2 + &y2;
    let v = &x * &(&x2 - &y2.scale_int(&3.into()));
    Ok(WeightedPoint {
        coords: [p.field().one(), u, v],
    })
}

/// `(r^2, gamma)` such that `u - r^2 z^2` and `v - gamma z^3` vanish on a size-6 orbit.
pub fn orbit6_ideal(o: &Orbit) -> Result<(FieldElement, FieldElement)> {
    if o.size() != 6 {
        return Err(Error::InvalidInput(format!(
            "expected an orbit of size 6, got {}",
            o.size()
        )));
    }
    let [_, r2, gamma] = phi_map(o.representative())?.coords;
    let field = r2.field().clone();
    let inv = InvariantForms::new(&field);
    let circle = inv.u.add(&inv.z.mul(&inv.z).scale(&r2).neg());
    let cubic = inv.v.add(
        &Form::from_terms(&field, 3, &[(1, [0, 0, 3])])
            .scale(&gamma)
            .neg(),
    );
    for q in &o.points {
        if !circle.eval(q.coords()).is_zero() || !cubic.eval(q.coords()).is_zero() {
            return Err(Error::Consistency(format!(
                "orbit generators do not vanish at {q}"
            )));
        }
    }
    Ok((r2, gamma))
}

/// `floor(d^2/12 + d/2 + 1)`.
pub fn weighted_hilbert_formula(d: u64) -> u64 {
    (d * d + 6 * d + 12) / 12
}

/// Number of monomials `z^a u^b v^c` with `a + 2b + 3c = d`.
pub fn weighted_monomial_count(d: u64) -> u64 {
    (0..=d / 3).map(|c| (d - 3 * c) / 2 + 1).sum()
}

/// Hilbert function of `k[z,u,v]` with weights (1,2,3), cross-checked by enumeration.
pub fn weighted_hilbert(d: u64) -> Result<u64> {
    let f = weighted_hilbert_formula(d);
    let b = weighted_monomial_count(d);
    if f != b {
        return Err(Error::Consistency(format!(
            "s_{d}: formula {f} but {b} monomials"
        )));
    }
    Ok(f)
}

/// Degree `d + 3` of a skew-invariant form in `I_n`, where `d` is least with
/// `floor(d^2/12 + d/2) >= (n-6)^2/36`.
pub fn degree_bound(n: usize) -> Result<usize> {
    if n < 12 || !n.is_multiple_of(6) {
        return Err(Error::InvalidInput(format!(
            "degree bound needs 6 | n and n >= 12, got {n}"
        )));
    }
    let target = ((n - 6) * (n - 6) / 36) as u64;
    let d = (0u64..)
        .find(|&d| (d * d + 6 * d) / 12 >= target)
        .expect("s_d is unbounded");
    Ok(d as usize + 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k12() -> FieldSpec {
        FieldSpec::cyclotomic(12).unwrap()
    }

    #[test]
    fn group_table() {
        let f = k12();
        let g = group_elements(&f).unwrap();
        let orders: Vec<usize> = g.iter().map(|e| e.order()).collect();
        assert_eq!(orders, vec![1, 3, 3, 2, 2, 2]);
        for a in &g {
            for b in &g {
                let c = a.compose(b);
                assert!(g
                    .iter()
                    .any(|e| e.matrix == c.matrix && e.is_reflection == c.is_reflection));
            }
            assert_eq!(
                a.compose(&a.inverse()).matrix,
                GroupElement::identity(&f).matrix
            );
        }
        assert_eq!(GroupElement::sixth_turn(&f).unwrap().order(), 6);
    }

    #[test]
    fn reflection_example() {
        let f = k12();
        let s = GroupElement::reflection(&f);
        let p = ProjPoint::from_ints(&f, [1, 1, 1]).unwrap();
        assert_eq!(act(&s, &p), ProjPoint::from_ints(&f, [1, -1, 1]).unwrap());
    }

    #[test]
    fn invariants_and_skew() {
        let f = k12();
        let inv = InvariantForms::new(&f);
        for g in group_elements(&f).unwrap() {
            assert_eq!(act_form(&g, &inv.u), inv.u);
            assert_eq!(act_form(&g, &inv.v), inv.v);
        }
        assert!(has_alternating_sign(&inv.p).unwrap());
        assert!(skew_invariant_check(&inv.u).unwrap());
        let x = Form::from_terms(&f, 1, &[(1, [1, 0, 0])]);
        assert!(!skew_invariant_check(&x).unwrap());
        let lines = InvariantForms::mirror_lines(&f).unwrap();
        assert_eq!(Form::product(&lines), inv.p);
    }

    #[test]
    fn weighted_counts() {
        assert_eq!(weighted_hilbert(0).unwrap(), 1);
        assert_eq!(weighted_hilbert(5).unwrap(), 5);
        assert_eq!(weighted_hilbert(6).unwrap(), 7);
    }

    #[test]
    fn bounds() {
        assert_eq!(degree_bound(12).unwrap(), 5);
        assert_eq!(degree_bound(18).unwrap(), 8);
        assert!(degree_bound(15).is_err());
    }

    #[test]
    fn formulas() {
        assert_eq!(orbit_count_formulas(12).unwrap(), (4, 1));
        assert_eq!(orbit_count_formulas(15).unwrap(), (6, 2));
        assert_eq!(orbit_count_formulas(6).unwrap(), (1, 0));
        assert_eq!(orbit_count_formulas_even(18).unwrap(), (7, 4));
        assert!(orbit_count_formulas(10).is_err());
    }

    #[test]
    fn phi_examples() {
        let f = k12();
        let o = phi_map(&ProjPoint::from_ints(&f, [0, 0, 1]).unwrap()).unwrap();
        assert_eq!(o.coords, [f.one(), f.zero(), f.zero()]);
        let q = phi_map(&ProjPoint::from_ints(&f, [1, 0, 1]).unwrap()).unwrap();
        assert_eq!(q.coords, [f.one(), f.one(), f.one()]);
        assert!(phi_map(&ProjPoint::from_ints(&f, [1, 0, 0]).unwrap()).is_err());
    }

    #[test]
    fn synthetic_orbit() {
        let f = k12();
        let g = group_elements(&f).unwrap();
        let p = ProjPoint::from_ints(&f, [2, 1, 1]).unwrap();
        let pts: Vec<ProjPoint> = g.iter().map(|e| act(e, &p)).collect();
        let orbits = orbit_decompose(&pts).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].size(), 6);
        let (r2, _) = orbit6_ideal(&orbits[0]).unwrap();
        assert_eq!(r2, f.from_int(5));
        let lonely = [ProjPoint::from_ints(&f, [1, 1, 1]).unwrap()];
        assert!(matches!(
            orbit_decompose(&lonely),
            Err(Error::NotClosed { .. })
        ));
    }
}
