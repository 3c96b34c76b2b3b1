//! Incidence structure of a finite line arrangement.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::projective::{canonicalize, cross, dot3, ProjLine, ProjPoint};

/// An intersection point together with every arrangement line through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidentPoint {
    pub point: ProjPoint,
    /// Sorted indices into the arrangement's line list.
    pub lines: Vec<usize>,
}

impl IncidentPoint {
    pub fn multiplicity(&self) -> usize {
        self.lines.len()
    }
}

/// All points where at least two lines meet, classified by multiplicity.
#[derive(Clone, Debug)]
pub struct IncidenceReport {
    /// Sorted by canonical coordinate strings.
    pub points: Vec<IncidentPoint>,
}

impl IncidenceReport {
    pub fn points_by_multiplicity(&self) -> BTreeMap<usize, Vec<&IncidentPoint>> {
        let mut out: BTreeMap<usize, Vec<&IncidentPoint>> = BTreeMap::new();
        for p in &self.points {
            out.entry(p.multiplicity()).or_default().push(p);
        }
        out
    }

    /// Multiplicity -> number of points.
    pub fn histogram(&self) -> BTreeMap<usize, usize> {
        self.points_by_multiplicity()
            .into_iter()
            .map(|(k, v)| (k, v.len()))
            .collect()
    }

    pub fn with_multiplicity(&self, m: usize) -> Vec<&IncidentPoint> {
        self.points
            .iter()
            .filter(|p| p.multiplicity() == m)
            .collect()
    }

    pub fn triple_points(&self) -> Vec<ProjPoint> {
        self.with_multiplicity(3)
            .into_iter()
            .map(|p| p.point.clone())
            .collect()
    }

    /// Points lying on four or more lines.
    pub fn anomalies(&self) -> Vec<&IncidentPoint> {
        self.points
            .iter()
            .filter(|p| p.multiplicity() >= 4)
            .collect()
    }

    pub fn count(&self, m: usize) -> usize {
        self.with_multiplicity(m).len()
    }
}

/// Computes every pairwise meet and the full set of lines through it.
///
/// Each point is found once, from its first pair of lines; the remaining pairs
/// through it are marked as covered.
pub fn incidence_report(lines: &[ProjLine]) -> Result<IncidenceReport> {
    let n = lines.len();
    let mut covered = vec![false; n * n];
    let mut points = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if covered[i * n + j] {
                continue;
            }
            let v = cross(lines[i].coeffs(), lines[j].coeffs());
            if v.iter().all(|c| c.is_zero()) {
                return Err(Error::IdenticalLines);
            }
            let mut through: Vec<usize> = vec![i, j];
            for (k, line) in lines.iter().enumerate().skip(i + 1) {
                if k != j && dot3(line.coeffs(), &v).is_zero() {
                    through.push(k);
                }
            }
            through.sort_unstable();
            for (a, &la) in through.iter().enumerate() {
                for &lb in &through[a + 1..] {
                    covered[la * n + lb] = true;
                }
            }
            let coords = canonicalize(v).expect("nonzero");
            let point = ProjPoint::new(coords)?;
            points.push(IncidentPoint {
                point,
                lines: through,
            });
        }
    }
    let mut keyed: Vec<([String; 3], IncidentPoint)> =
        points.into_iter().map(|p| (p.point.key(), p)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(IncidenceReport {
        points: keyed.into_iter().map(|(_, p)| p).collect(),
    })
}
