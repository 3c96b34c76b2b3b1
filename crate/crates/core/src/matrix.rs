//! Dense matrices over a [`FieldSpec`] with fraction-free elimination.

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Row-major dense matrix whose entries all live in one field.
#[derive(Clone, Debug)]
pub struct ExactMatrix {
    field: FieldSpec,
    nrows: usize,
    ncols: usize,
    entries: Vec<FieldElement>,
}

/// Upper echelon form produced by fraction-free elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows only, one per pivot.
    pub rows: Vec<Vec<FieldElement>>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
    pub ncols: usize,
    pub field: FieldSpec,
}

impl ExactMatrix {
    pub fn zeros(field: &FieldSpec, nrows: usize, ncols: usize) -> Self {
        ExactMatrix {
            field: field.clone(),
            nrows,
            ncols,
            entries: vec![field.zero(); nrows * ncols],
        }
    }

    pub fn from_rows(
        field: &FieldSpec,
        ncols: usize,
        rows: Vec<Vec<FieldElement>>,
    ) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::InvalidInput(format!(
                    "row of length {} in a matrix with {ncols} columns",
                    row.len()
                )));
            }
            for e in &row {
                e.check_same_field(&field.zero())?;
            }
            entries.extend(row);
        }
        Ok(ExactMatrix {
            field: field.clone(),
            nrows,
            ncols,
            entries,
        })
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.ncols);
        (0..self.nrows)
            .map(|i| dot(&self.field, self.row(i), v))
            .collect()
    }

    pub fn echelon(&self) -> Echelon {
        let rows: Vec<Vec<FieldElement>> = (0..self.nrows).map(|i| self.row(i).to_vec()).collect();
        echelon_rows(&self.field, rows, self.ncols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{x : Mx = 0}`: one vector per free column (ascending), with a 1 in
    /// that column, 0 in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        self.echelon().nullspace()
    }
}

pub fn dot(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = &acc + &(x * y);
        }
    }
    acc
}

/// Forward Gaussian elimination with unit pivots. Pivot = first nonzero entry
/// in the current column, scanning rows top to bottom.
pub fn echelon_rows(field: &FieldSpec, mut rows: Vec<Vec<FieldElement>>, ncols: usize) -> Echelon {
    let nrows = rows.len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows)
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].bit_size())
        else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in rows[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let lead = std::mem::replace(&mut row[c], field.zero());
            for j in c + 1..ncols {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].sub_mul(&lead, &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon {
        rows,
        pivots,
        ncols,
        field: field.clone(),
    }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let field = &self.field;
        let inv_pivots: Vec<FieldElement> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &c)| row[c].inv().expect("pivot is nonzero"))
            .collect();
        let mut is_pivot = vec![false; self.ncols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.ncols];
            v[f] = field.one();
            for (k, row) in self.rows.iter().enumerate().rev() {
                let c = self.pivots[k];
                if c > f {
                    continue;
                }
                let mut s = field.zero();
                for j in c + 1..self.ncols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        s = &s + &(&row[j] * &v[j]);
                    }
                }
                if !s.is_zero() {
                    v[c] = -(&s * &inv_pivots[k]);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon basis of the row space (pivots scaled to 1).
    pub fn reduced_rows(&self) -> Vec<Vec<FieldElement>> {
        let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(self.rows.len());
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let inv = row[c].inv().expect("pivot is nonzero");
            rows.push(
                row.iter()
                    .map(|x| if x.is_zero() { x.clone() } else { x * &inv })
                    .collect(),
            );
        }
        for k in (0..rows.len()).rev() {
            let c = self.pivots[k];
            let (above, rest) = rows.split_at_mut(k);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for j in c..self.ncols {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &(&f * &pivot_row[j]);
                    }
                }
            }
        }
        rows
    }
}

/// Rank of the span of `vectors` (all of length `ncols`).
pub fn span_rank(field: &FieldSpec, vectors: &[Vec<FieldElement>], ncols: usize) -> usize {
    echelon_rows(field, vectors.to_vec(), ncols).rank()
}

/// `v ∈ span(vectors)`, decided by comparing ranks with and without `v`.
pub fn in_span(field: &FieldSpec, vectors: &[Vec<FieldElement>], v: &[FieldElement]) -> bool {
    let ncols = v.len();
    let base = echelon_rows(field, vectors.to_vec(), ncols);
    let mut rows = base.rows.clone();
    rows.push(v.to_vec());
    echelon_rows(field, rows, ncols).rank() == base.rank()
}
