//! The planar Böröczky arrangement `L_n` and its triple points `B_n`.
//!
//! Circle points are the 2n-th roots of unity `P_r = (cos(pi r/n), sin(pi r/n))`.
//! Line `L_j` joins `P_{2j}` and `P_{n-4j}` (indices mod 2n); when the two
//! indices agree it is the tangent to `x^2 + y^2 = z^2` at `P_{2j}`.

use num_integer::Integer;

use crate::arrangement::{incidence_report as arrangement_report, IncidenceReport};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::projective::{cross, dot3, line_through, ProjLine, ProjPoint};

/// Cyclotomic order of the working field: `lcm(12, 2n)`.
pub fn field_order(n: usize) -> u64 {
    (12u64).lcm(&(2 * n as u64))
}

#[derive(Clone, Debug)]
pub struct Configuration {
    pub n: usize,
    pub field: FieldSpec,
    pub lines: Vec<ProjLine>,
    /// The 2n circle points `P_0 .. P_{2n-1}`.
    pub circle_points: Vec<ProjPoint>,
    /// Circle-point indices joined by each line (equal for tangents).
    pub endpoints: Vec<(usize, usize)>,
}

impl Configuration {
    pub fn tangent_indices(&self) -> Vec<usize> {
        self.endpoints
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| a == b)
            .map(|(j, _)| j)
            .collect()
    }

    /// Indices of `y = 0`, `y = sqrt3 x`, `y = -sqrt3 x` among the lines, when present.
    pub fn mirror_line_indices(&self) -> Vec<usize> {
        let f = &self.field;
        let zero = f.zero();
        self.lines
            .iter()
            .enumerate()
            .filter(|(_, l)| {
                let c = l.coeffs();
                // Through the origin with slope 0 or +-sqrt3: c2 = 0 and (c0 = 0 or c0^2 = 3 c1^2).
                c[2] == zero
                    && (c[0].is_zero() || c[0].square() == c[1].square().scale_int(&3.into()))
            })
            .map(|(j, _)| j)
            .collect()
    }

    /// Real cartesian coordinates of circle point `P_r` as exact field elements.
    pub fn circle_xy(&self, r: usize) -> (FieldElement, FieldElement) {
        let c = self.circle_points[r % (2 * self.n)].coords();
        let zinv = c[2].inv().expect("circle points are affine");
        (&c[0] * &zinv, &c[1] * &zinv)
    }
}

pub fn build_config(n: usize) -> Result<Configuration> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "n must be at least 3, got {n}"
        )));
    }
    let field = FieldSpec::cyclotomic(field_order(n))?;
    let two_n = 2 * n;
    let w = field.root_of_unity(two_n as u64)?;
    let i = field.root_of_unity(4)?;
    let half = field.from_frac(1, 2);
    let minus_half_i = -(&i * &half);
    let powers: Vec<FieldElement> = {
        let mut v = vec![field.one()];
        for k in 1..two_n {
            let next = &v[k - 1] * &w;
            v.push(next);
        }
        v
    };
    let circle_points: Vec<ProjPoint> = (0..two_n)
        .map(|r| {
            let a = &powers[r];
            let b = &powers[(two_n - r) % two_n];
            let x = &(a + b) * &half;
            let y = &(a - b) * &minus_half_i;
            ProjPoint::new([x, y, field.one()])
        })
        .collect::<Result<_>>()?;

    let mut lines = Vec::with_capacity(n);
    let mut endpoints = Vec::with_capacity(n);
    for j in 0..n {
        let a = (2 * j) % two_n;
        let b = ((n as i64 - 4 * j as i64).rem_euclid(two_n as i64)) as usize;
        let line = if a == b {
            // Gradient of x^2 + y^2 - z^2.
            let c = circle_points[a].coords();
            ProjLine::new([c[0].clone(), c[1].clone(), -&c[2]])?
        } else {
            line_through(&circle_points[a], &circle_points[b])?
        };
        lines.push(line);
        endpoints.push((a, b));
    }
    Ok(Configuration {
        n,
        field,
        lines,
        circle_points,
        endpoints,
    })
}

/// Incidence report for a planar configuration. Points on four or more lines are
/// kept in the report; callers inspect [`IncidenceReport::anomalies`].
pub fn incidence_report(c: &Configuration) -> Result<IncidenceReport> {
    arrangement_report(&c.lines)
}

/// `floor(n (n-3) / 6) + 1`.
pub fn triple_count_formula(n: usize) -> usize {
    n * (n.saturating_sub(3)) / 6 + 1
}

/// Outcome of testing "L_i, L_j, L_k concurrent iff n | i+j+k" on every triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionSweep {
    pub triples_checked: usize,
    /// Triples where geometry and the divisibility rule disagree.
    pub mismatches: Vec<[usize; 3]>,
}

impl CriterionSweep {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Exhaustive sweep over all triples, for any n.
pub fn concurrency_sweep(c: &Configuration) -> CriterionSweep {
    let n = c.n;
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for i in 0..n {
        for j in i + 1..n {
            let v = cross(c.lines[i].coeffs(), c.lines[j].coeffs());
            for k in j + 1..n {
                checked += 1;
                let geometric = dot3(c.lines[k].coeffs(), &v).is_zero();
                let rule = (i + j + k) % n == 0;
                if geometric != rule {
                    mismatches.push([i, j, k]);
                }
            }
        }
    }
    CriterionSweep {
        triples_checked: checked,
        mismatches,
    }
}

/// The divisibility criterion, stated for even n.
pub fn verify_concurrency_criterion(c: &Configuration) -> Result<bool> {
    if c.n % 2 == 1 {
        return Err(Error::Unsupported(format!(
            "the concurrency criterion is checked for even n only (n = {})",
            c.n
        )));
    }
    Ok(concurrency_sweep(c).holds())
}

/// Number of triple points on line `i`.
pub fn points_on_line(c: &Configuration, report: &IncidenceReport, i: usize) -> Result<usize> {
    if i >= c.n {
        return Err(Error::InvalidInput(format!(
            "line index {i} out of range for n = {}",
            c.n
        )));
    }
    Ok(report
        .with_multiplicity(3)
        .iter()
        .filter(|p| p.lines.contains(&i))
        .count())
}

/// Per-line triple-point count predicted for even n: `n/2 - 1` on lines
/// `0`, `1`, odd lines and `n/3`, `2n/3`; `n/2 - 2` on the other even lines.
pub fn expected_points_on_line(n: usize, i: usize) -> Option<usize> {
    if n % 2 == 1 || n < 8 || i >= n {
        return None;
    }
    let special = i <= 1 || i % 2 == 1 || (n.is_multiple_of(3) && (i == n / 3 || i == 2 * n / 3));
    Some(if special { n / 2 - 1 } else { n / 2 - 2 })
}
