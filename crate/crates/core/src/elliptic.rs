//! The Fermat cubic `x^3 + y^3 + z^3 = 0` over `Q(s, t)`, its chord-tangent group
//! law with identity at the flex `[1:-1:0]`, the 6-torsion `E[6]`, and the
//! configuration of lines built from it.

use crate::arrangement::{incidence_report, IncidenceReport};
use crate::error::{Error, Result};
use crate::fatpoints::{
    alpha, containment_witness, minimal_generators, symbolic_dim, FatPointScheme, WitnessReport,
};
use crate::field::{FieldElement, FieldSpec};
use crate::projective::{
    canonicalize, cross, dedupe_projective, line_through, ProjLine, ProjPoint,
};
use crate::symmetry::{orbit_decompose_under, GroupElement, Orbit};

/// Reference values of `grid(i, j) = i alpha + j beta`, indexed `[j][i]`.
pub const TORSION_TABLE: [[[&str; 3]; 6]; 6] = [
    [
        ["1", "-1", "0"],
        ["1", "s", "1"],
        ["0", "1", "-1"],
        ["1", "1", "s"],
        ["1", "0", "-1"],
        ["s", "1", "1"],
    ],
    [
        ["s", "1", "t"],
        ["t^2", "1", "s"],
        ["t", "s", "1"],
        ["s", "t^2", "1"],
        ["1", "t", "s"],
        ["1", "s", "t^2"],
    ],
    [
        ["-1", "0", "t"],
        ["s", "t^2", "t"],
        ["-t", "1", "0"],
        ["t", "s", "t^2"],
        ["0", "1", "-t^2"],
        ["t^2", "t", "s"],
    ],
    [
        ["t^2", "t^2", "s"],
        ["t", "s", "t"],
        ["s", "t^2", "t^2"],
        ["t", "t", "s"],
        ["t^2", "s", "t^2"],
        ["s", "t", "t"],
    ],
    [
        ["0", "1", "-t"],
        ["t", "t^2", "s"],
        ["-1", "0", "t^2"],
        ["s", "t", "t^2"],
        ["-t^2", "1", "0"],
        ["t^2", "s", "t"],
    ],
    [
        ["1", "s", "t"],
        ["s", "1", "t^2"],
        ["t", "1", "s"],
        ["t^2", "s", "1"],
        ["s", "t", "1"],
        ["1", "t^2", "s"],
    ],
];

/// Orbit representatives of the triple points under coordinate permutations,
/// grouped by orbit size.
pub const S3_REPRESENTATIVES: [(usize, [&str; 3]); 13] = [
    (1, ["1", "1", "1"]),
    (2, ["1", "t", "t^2"]),
    (3, ["1", "0", "0"]),
    (3, ["1", "1", "t"]),
    (3, ["1", "t", "t"]),
    (3, ["1", "1", "-s^2 - t"]),
    (3, ["1", "1", "-s^2*t - 1"]),
    (3, ["1", "1", "-s^2*t^2 - t^2"]),
    (3, ["1", "s^2*t", "s^2*t"]),
    (6, ["1", "t", "-s^2 + t + 1"]),
    (6, ["1", "t", "-s^2*t - t"]),
    (6, ["1", "t", "s^2*t + s^2 - 1"]),
    (6, ["2", "2*t", "-s*t"]),
];

fn cube_sum(v: &[FieldElement; 3]) -> FieldElement {
    v.iter()
        .fold(v[0].field().zero(), |acc, c| &acc + &c.pow(3))
}

/// A point of the Fermat cubic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurvePoint {
    pub point: ProjPoint,
}

impl CurvePoint {
    pub fn new(point: ProjPoint) -> Result<Self> {
        if !cube_sum(point.coords()).is_zero() {
            return Err(Error::InvalidInput(format!(
                "{point} is not on x^3 + y^3 + z^3 = 0"
            )));
        }
        Ok(CurvePoint { point })
    }

    pub fn parse(field: &FieldSpec, c: [&str; 3]) -> Result<Self> {
        Self::new(ProjPoint::parse(field, c)?)
    }

    pub fn coords(&self) -> &[FieldElement; 3] {
        self.point.coords()
    }

    /// The flex `[1:-1:0]`, identity of the group law.
    pub fn identity(field: &FieldSpec) -> Self {
        CurvePoint {
            point: ProjPoint::from_ints(field, [1, -1, 0]).expect("nonzero"),
        }
    }
}

/// Tangent line `p0^2 x + p1^2 y + p2^2 z` at a curve point.
pub fn tangent_line(p: &CurvePoint) -> ProjLine {
    ProjLine::new(p.coords().clone().map(|c| c.square())).expect("smooth curve")
}

fn sum3(
    a: &[FieldElement; 3],
    b: &[FieldElement; 3],
    f: impl Fn(&FieldElement, &FieldElement) -> FieldElement,
) -> FieldElement {
    a.iter()
        .zip(b)
        .fold(a[0].field().zero(), |acc, (x, y)| &acc + &f(x, y))
}

fn combine(
    u: &FieldElement,
    p: &[FieldElement; 3],
    w: &FieldElement,
    q: &[FieldElement; 3],
) -> Result<CurvePoint> {
    let v: [FieldElement; 3] = std::array::from_fn(|k| &(u * &p[k]) + &(w * &q[k]));
    let v = canonicalize(v).ok_or_else(|| Error::Consistency("degenerate chord".into()))?;
    CurvePoint::new(ProjPoint::new(v)?)
}

/// Third intersection of the chord (or tangent, when `p = q`) with the cubic.
///
/// On `u p + w q` the cubic restricts to `3uw(u A + w B)` with `A = sum p_i^2 q_i`
/// and `B = sum p_i q_i^2`; the remaining root is `(u, w) = (B, -A)`.
pub fn third_intersection(p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
    let (a, b) = (p.coords(), q.coords());
    if p != q {
        let big_a = sum3(a, b, |x, y| &x.square() * y);
        let big_b = sum3(a, b, |x, y| x * &y.square());
        if big_a.is_zero() && big_b.is_zero() {
            return Err(Error::Consistency("chord lies on the curve".into()));
        }
        return combine(&big_b, a, &-big_a, b);
    }
    // Second point on the tangent: meet it with a coordinate line avoiding p.
    let t = tangent_line(p);
    let r = (0..3)
        .map(|k| {
            let mut e = [
                a[0].field().zero(),
                a[0].field().zero(),
                a[0].field().zero(),
            ];
            e[k] = a[0].field().one();
            cross(t.coeffs(), &e)
        })
        .find(|r| {
            r.iter().any(|c| !c.is_zero())
                && ProjPoint::new(r.clone())
                    .map(|rp| rp != p.point)
                    .unwrap_or(false)
        })
        .expect("a tangent line has at least two points");
    // On u p + w r: w^2 (3u C + w F(r)) with C = sum p_i r_i^2.
    let c = sum3(a, &r, |x, y| x * &y.square());
    if c.is_zero() {
        return Ok(p.clone());
    }
    combine(&cube_sum(&r), a, &-(c.scale_int(&3.into())), &r)
}

/// Group law with identity `O = [1:-1:0]`: `p + q = third(O, third(p, q))`.
pub fn add(p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
    let o = CurvePoint::identity(p.point.field());
    third_intersection(&o, &third_intersection(p, q)?)
}

pub fn negate(p: &CurvePoint) -> Result<CurvePoint> {
    third_intersection(&CurvePoint::identity(p.point.field()), p)
}

/// `E[6]` laid out as `grid[i][j] = i alpha + j beta`.
#[derive(Clone, Debug)]
pub struct TorsionTable {
    pub field: FieldSpec,
    pub grid: Vec<Vec<CurvePoint>>,
}

impl TorsionTable {
    pub fn get(&self, i: usize, j: usize) -> &CurvePoint {
        &self.grid[i % 6][j % 6]
    }

    pub fn points(&self) -> Vec<CurvePoint> {
        self.grid.iter().flatten().cloned().collect()
    }

    /// `(i, j)` with `grid(i, j) = p`.
    pub fn index_of(&self, p: &CurvePoint) -> Option<(usize, usize)> {
        (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .find(|&(i, j)| self.grid[i][j] == *p)
    }
}

pub fn alpha_point(field: &FieldSpec) -> Result<CurvePoint> {
    CurvePoint::parse(field, ["1", "s", "1"])
}

pub fn beta_point(field: &FieldSpec) -> Result<CurvePoint> {
    CurvePoint::parse(field, ["s", "1", "t"])
}

/// The reference table as curve points, `[i][j]`.
pub fn reference_table(field: &FieldSpec) -> Result<Vec<Vec<CurvePoint>>> {
    (0..6)
        .map(|i| {
            (0..6)
                .map(|j| CurvePoint::parse(field, TORSION_TABLE[j][i]))
                .collect()
        })
        .collect()
}

/// Computes `E[6]` from `alpha` and `beta` by repeated addition, without comparing to the table.
pub fn compute_e6(field: &FieldSpec) -> Result<TorsionTable> {
    let a = alpha_point(field)?;
    let b = beta_point(field)?;
    let mut column = vec![CurvePoint::identity(field)];
    for j in 1..6 {
        column.push(add(&column[j - 1], &b)?);
    }
    let mut grid: Vec<Vec<CurvePoint>> = vec![column];
    for i in 1..6 {
        let row = grid[i - 1]
            .iter()
            .map(|p| add(p, &a))
            .collect::<Result<Vec<_>>>()?;
        grid.push(row);
    }
    let o = CurvePoint::identity(field);
    if add(&grid[5][0], &a)? != o || add(&grid[0][5], &b)? != o {
        return Err(Error::Consistency(
            "alpha or beta does not have order 6".into(),
        ));
    }
    Ok(TorsionTable {
        field: field.clone(),
        grid,
    })
}

/// Computes `E[6]` and checks every cell against the reference table.
pub fn generate_e6() -> Result<TorsionTable> {
    let field = FieldSpec::fermat_tower();
    let table = compute_e6(&field)?;
    let reference = reference_table(&field)?;
    let bad: Vec<String> = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .filter(|&(i, j)| table.grid[i][j] != reference[i][j])
        .map(|(i, j)| {
            format!(
                "({i},{j}): computed {} expected {}",
                table.grid[i][j].point, reference[i][j].point
            )
        })
        .collect();
    if !bad.is_empty() {
        return Err(Error::ReferenceMismatch(format!(
            "torsion table cells differ: {}",
            bad.join("; ")
        )));
    }
    Ok(table)
}

/// The line `L(i, j)` through `grid(i, j)` and `grid(3 - 2i, 3 - 2j)`, or the tangent when they agree.
pub fn config_line(table: &TorsionTable, i: usize, j: usize) -> (ProjLine, (usize, usize)) {
    let i2 = (3 + 12 - 2 * i) % 6;
    let j2 = (3 + 12 - 2 * j) % 6;
    let p = table.get(i, j);
    let q = table.get(i2, j2);
    let line = if p == q {
        tangent_line(p)
    } else {
        line_through(&p.point, &q.point).expect("distinct")
    };
    (line, (i2, j2))
}

#[derive(Clone, Debug)]
pub struct EllipticConfig {
    pub table: TorsionTable,
    /// `L(i, j)` at position `6 i + j`.
    pub raw_lines: Vec<ProjLine>,
    /// Second torsion index of each raw line.
    pub partners: Vec<(usize, usize)>,
    pub lines: Vec<ProjLine>,
    pub incidence: IncidenceReport,
}

impl EllipticConfig {
    pub fn tangent_indices(&self) -> Vec<(usize, usize)> {
        (0..36)
            .map(|k| (k / 6, k % 6))
            .filter(|&(i, j)| self.partners[6 * i + j] == (i, j))
            .collect()
    }

    pub fn triple_points(&self) -> Vec<ProjPoint> {
        self.incidence.triple_points()
    }

    /// `(multiplicity >= 2, multiplicity = 3, multiplicity >= 4)`.
    pub fn statistics(&self) -> (usize, usize, usize) {
        let h = self.incidence.histogram();
        (
            h.values().sum(),
            self.incidence.count(3),
            self.incidence.anomalies().len(),
        )
    }

    pub fn triple_points_on_curve(&self) -> Vec<ProjPoint> {
        self.triple_points()
            .into_iter()
            .filter(|p| cube_sum(p.coords()).is_zero())
            .collect()
    }

    /// Checks 18 lines, 57 multiple points, 48 triple points, no higher points,
    /// and no triple point on the curve.
    pub fn check_statistics(&self) -> Result<()> {
        let (double_or_more, triple, higher) = self.statistics();
        let on_curve = self.triple_points_on_curve().len();
        let got = (self.lines.len(), double_or_more, triple, higher, on_curve);
        if got != (18, 57, 48, 0, 0) {
            return Err(Error::ReferenceMismatch(format!(
                "elliptic configuration: (lines, >=2, =3, >=4, on curve) = {got:?}, expected (18, 57, 48, 0, 0)"
            )));
        }
        Ok(())
    }
}

/// Builds the configuration from a computed torsion table, without checking its statistics.
pub fn elliptic_config_from(table: TorsionTable) -> Result<EllipticConfig> {
    let (raw_lines, partners): (Vec<ProjLine>, Vec<(usize, usize)>) = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .map(|(i, j)| config_line(&table, i, j))
        .unzip();
    let lines = dedupe_projective(&raw_lines);
    let incidence = incidence_report(&lines)?;
    Ok(EllipticConfig {
        table,
        raw_lines,
        partners,
        lines,
        incidence,
    })
}

pub fn build_elliptic_config() -> Result<EllipticConfig> {
    let c = elliptic_config_from(generate_e6()?)?;
    c.check_statistics()?;
    Ok(c)
}

/// The six coordinate permutations as matrices; odd permutations are flagged as reflections.
pub fn s3_elements(field: &FieldSpec) -> Vec<GroupElement> {
    let perms: [([usize; 3], bool); 6] = [
        ([0, 1, 2], false),
        ([1, 2, 0], false),
        ([2, 0, 1], false),
        ([1, 0, 2], true),
        ([0, 2, 1], true),
        ([2, 1, 0], true),
    ];
    perms
        .iter()
        .map(|&(s, odd)| GroupElement {
            matrix: std::array::from_fn(|r| {
                std::array::from_fn(|c| if s[r] == c { field.one() } else { field.zero() })
            }),
            is_reflection: odd,
        })
        .collect()
}

/// Orbits under permutation of coordinates.
pub fn s3_orbit_profile(points: &[ProjPoint]) -> Result<Vec<Orbit>> {
    let Some(first) = points.first() else {
        return Ok(Vec::new());
    };
    orbit_decompose_under(&s3_elements(first.field()), points)
}

/// Checks that the reference representatives lie in `points`, have the expected
/// orbit sizes, and sit in pairwise distinct orbits that together cover `points`.
pub fn check_s3_representatives(points: &[ProjPoint], orbits: &[Orbit]) -> Result<()> {
    let field = &points[0].field().clone();
    let mut used = vec![false; orbits.len()];
    for (size, rep) in S3_REPRESENTATIVES {
        let p = ProjPoint::parse(field, rep)?;
        let Some(k) = orbits.iter().position(|o| o.points.contains(&p)) else {
            return Err(Error::ReferenceMismatch(format!(
                "representative {p} is not a triple point"
            )));
        };
        if used[k] || orbits[k].size() != size {
            return Err(Error::ReferenceMismatch(format!(
                "representative {p}: orbit size {} (expected {size}) or orbit repeated",
                orbits[k].size()
            )));
        }
        used[k] = true;
    }
    if used.iter().any(|u| !u) {
        return Err(Error::ReferenceMismatch(
            "some orbit has no reference representative".into(),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct EllipticContainment {
    pub alpha: usize,
    pub generator_degrees: Vec<usize>,
    pub witness: WitnessReport,
    /// `dim (I^(3))_18`, when requested.
    pub symbolic3_dim: Option<usize>,
}

/// Tests the product of the 18 lines against `I^(3)` and `I^2` of the triple points.
pub fn elliptic_containment(
    c: &EllipticConfig,
    with_dimension: bool,
) -> Result<EllipticContainment> {
    let field = c.table.field.clone();
    let s = FatPointScheme::new(&field, &c.triple_points())?;
    let a = alpha(&s, 1);
    let degree = c.lines.len();
    let gens = minimal_generators(&s, degree.saturating_sub(a));
    let witness = containment_witness(&s, &c.lines, &gens)?;
    let symbolic3_dim = with_dimension.then(|| symbolic_dim(&s, 3, degree));
    Ok(EllipticContainment {
        alpha: a,
        generator_degrees: gens.generator_degrees,
        witness,
        symbolic3_dim,
    })
}

/// Values of `n` in `range` with `n (n - 3) / 6 + 1 = target` exactly.
pub fn planar_solutions(target: usize, range: std::ops::RangeInclusive<usize>) -> Vec<usize> {
    range
        .filter(|&n| n * (n - 3) % 6 == 0 && n * (n - 3) / 6 + 1 == target)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flex_tangent() {
        let f = FieldSpec::fermat_tower();
        let o = CurvePoint::identity(&f);
        assert_eq!(third_intersection(&o, &o).unwrap(), o);
    }

    #[test]
    fn small_sums() {
        let f = FieldSpec::fermat_tower();
        let a = alpha_point(&f).unwrap();
        let b = beta_point(&f).unwrap();
        let o = CurvePoint::identity(&f);
        assert_eq!(add(&o, &a).unwrap(), a);
        assert_eq!(
            add(&a, &b).unwrap(),
            CurvePoint::parse(&f, ["t^2", "1", "s"]).unwrap()
        );
        assert_eq!(
            add(&b, &b).unwrap(),
            CurvePoint::parse(&f, ["-1", "0", "t"]).unwrap()
        );
    }

    #[test]
    fn chord_third_point_collinear() {
        let f = FieldSpec::fermat_tower();
        let a = alpha_point(&f).unwrap();
        let b = beta_point(&f).unwrap();
        let r = third_intersection(&a, &b).unwrap();
        let l = line_through(&a.point, &b.point).unwrap();
        assert!(r.point.lies_on(&l));
        assert!(cube_sum(r.coords()).is_zero());
    }

    #[test]
    fn tangent_line_shape() {
        let f = FieldSpec::fermat_tower();
        let p = CurvePoint::parse(&f, ["t^2", "1", "s"]).unwrap();
        let t = tangent_line(&p);
        let expected = ProjLine::parse(&f, ["t^4", "1", "s^2"]).unwrap();
        assert_eq!(t, expected);
        assert!(p.point.lies_on(&t));
    }

    #[test]
    fn rejects_off_curve_points() {
        let f = FieldSpec::fermat_tower();
        assert!(CurvePoint::parse(&f, ["1", "1", "1"]).is_err());
    }

    #[test]
    fn no_planar_match_for_48() {
        assert!(planar_solutions(48, 3..=100).is_empty());
        assert_eq!(planar_solutions(19, 3..=100), vec![12]);
    }

    #[test]
    fn permutation_orbits_small() {
        let f = FieldSpec::fermat_tower();
        let one = [ProjPoint::from_ints(&f, [1, 1, 1]).unwrap()];
        assert_eq!(s3_orbit_profile(&one).unwrap()[0].size(), 1);
        let axes: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
            .iter()
            .map(|&c| ProjPoint::from_ints(&f, c).unwrap())
            .collect();
        let o = s3_orbit_profile(&axes).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].size(), 3);
    }
}
