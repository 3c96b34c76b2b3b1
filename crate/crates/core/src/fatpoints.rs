//! Graded pieces of ideals of points, their symbolic and ordinary powers, and
//! the containment tests built on them.
//!
//! A form vanishes to order `m` at a point when every Hasse derivative of order
//! `< m` vanishes there, computed in an affine chart containing the point.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::boroczky::{incidence_report, Configuration};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::forms::{binomial, monomial_count, monomials, powers_of, Form};
use crate::matrix::{echelon_rows, Echelon};
use crate::projective::{dedupe_projective, ProjLine, ProjPoint};
use crate::symmetry::has_alternating_sign;

/// A finite set of reduced points; multiplicities are supplied per query.
#[derive(Clone, Debug)]
pub struct FatPointScheme {
    pub field: FieldSpec,
    pub points: Vec<ProjPoint>,
}

impl FatPointScheme {
    pub fn new(field: &FieldSpec, points: &[ProjPoint]) -> Result<Self> {
        for p in points {
            p.coords()[0].check_same_field(&field.zero())?;
        }
        Ok(FatPointScheme {
            field: field.clone(),
            points: dedupe_projective(points),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The triple points of a planar configuration.
pub fn triple_point_scheme(c: &Configuration) -> Result<FatPointScheme> {
    FatPointScheme::new(&c.field, &incidence_report(c)?.triple_points())
}

/// Basis of the degree-`d` forms vanishing to order `m` at every scheme point.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: usize,
    pub multiplicity: usize,
    pub basis: Vec<Form>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The chart coordinate for `p`: `z` when nonzero, else the first nonzero coordinate.
fn chart_of(p: &ProjPoint) -> usize {
    let c = p.coords();
    if !c[2].is_zero() {
        2
    } else {
        (0..3).find(|&k| !c[k].is_zero()).expect("nonzero point")
    }
}

/// Rows `D^{(i,j)} f (a, b)` for `i + j < m`, over the degree-`d` monomials.
pub fn condition_rows(p: &ProjPoint, m: usize, d: usize) -> Vec<Vec<FieldElement>> {
    let field = p.field();
    let c = chart_of(p);
    let others: Vec<usize> = (0..3).filter(|&k| k != c).collect();
    let inv = p.coords()[c].inv().expect("chart coordinate is nonzero");
    let a = &p.coords()[others[0]] * &inv;
    let b = &p.coords()[others[1]] * &inv;
    let pa = powers_of(&a, d);
    let pb = powers_of(&b, d);
    let mons = monomials(d);
    let mut rows = Vec::with_capacity(m * (m + 1) / 2);
    for i in 0..m {
        for j in 0..m - i {
            let row = mons
                .iter()
                .map(|e| {
                    let (ep, eq) = (e[others[0]], e[others[1]]);
                    if i > ep || j > eq {
                        return field.zero();
                    }
                    let v = &pa[ep - i] * &pb[eq - j];
                    let k = binomial(ep, i) * binomial(eq, j);
                    if k == BigInt::from(1) {
                        v
                    } else {
                        v.scale_int(&k)
                    }
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

fn condition_echelon(s: &FatPointScheme, m: usize, d: usize) -> Echelon {
    let rows: Vec<Vec<FieldElement>> = s
        .points
        .iter()
        .flat_map(|p| condition_rows(p, m, d))
        .collect();
    echelon_rows(&s.field, rows, monomial_count(d))
}

/// `dim (I^(m))_d`.
pub fn symbolic_dim(s: &FatPointScheme, m: usize, d: usize) -> usize {
    monomial_count(d) - condition_echelon(s, m, d).rank()
}

pub fn symbolic_piece(s: &FatPointScheme, m: usize, d: usize) -> GradedPiece {
    assert!(m >= 1, "multiplicity must be positive");
    let basis = condition_echelon(s, m, d)
        .nullspace()
        .into_iter()
        .map(|v| Form::from_coeffs(d, v))
        .collect();
    GradedPiece {
        degree: d,
        multiplicity: m,
        basis,
    }
}

/// Least degree of a nonzero form vanishing to order `m` on the scheme.
pub fn alpha(s: &FatPointScheme, m: usize) -> usize {
    assert!(m >= 1, "multiplicity must be positive");
    (m..)
        .find(|&d| symbolic_dim(s, m, d) > 0)
        .expect("a product of lines always works")
}

/// `min_{1 <= m <= m_max} alpha(I^(m)) / m`, an upper bound for the Waldschmidt constant.
pub fn waldschmidt_estimate(s: &FatPointScheme, m_max: usize) -> BigRational {
    assert!(m_max >= 1, "m_max must be positive");
    (1..=m_max)
        .map(|m| BigRational::new(BigInt::from(alpha(s, m)), BigInt::from(m)))
        .min()
        .expect("nonempty range")
}

/// Degree-by-degree data for the ideal of the scheme (multiplicity 1).
#[derive(Clone, Debug)]
pub struct IdealSummary {
    /// `d -> dim I_d` for `0 <= d <= computed_up_to`.
    pub hilbert_function: BTreeMap<usize, usize>,
    pub alpha: Option<usize>,
    /// One entry per minimal generator, ascending.
    pub generator_degrees: Vec<usize>,
    pub generators: Vec<Form>,
    /// Bases of `I_d`.
    pub bases: BTreeMap<usize, Vec<Form>>,
    pub computed_up_to: usize,
    /// First degree where `dim I_d = C(d+2,2) - |points|`, if reached.
    pub saturation_degree: Option<usize>,
    pub complete: bool,
}

/// Keeps an echelon basis with unit pivots and reports whether new vectors enlarge it.
#[derive(Clone, Debug, Default)]
pub struct SpanBuilder {
    rows: Vec<(usize, Vec<FieldElement>)>,
}

impl SpanBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` modulo the current span (zero iff `v` is in the span).
    pub fn reduce(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        let mut v = v.to_vec();
        for (c, row) in &self.rows {
            if v[*c].is_zero() {
                continue;
            }
            let f = v[*c].clone();
            for (x, r) in v.iter_mut().zip(row).skip(*c) {
                if !r.is_zero() {
                    *x = x.sub_mul(&f, r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v`; returns true when the rank grew.
    pub fn insert(&mut self, v: &[FieldElement]) -> bool {
        let mut r = self.reduce(v);
        let Some(c) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[c].inv().expect("nonzero pivot");
        for x in r.iter_mut().skip(c) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        self.rows.push((c, r));
        true
    }
}

fn times_variables(f: &Form) -> [Form; 3] {
    let field = f.field();
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]].map(|e| f.mul(&Form::monomial(field, e)))
}

/// Minimal generator degrees of the ideal of the points, up to `d_max`.
///
/// New generators in degree `d` complement `x I_{d-1} + y I_{d-1} + z I_{d-1}`
/// inside `I_d`. The list is flagged complete once the Hilbert function has
/// reached `C(d+2,2) - |points|` at some `d0` and the last two computed degrees,
/// both above `d0`, contribute nothing; past `d0 + 1` no generators can occur.
pub fn minimal_generators(s: &FatPointScheme, d_max: usize) -> IdealSummary {
    let npts = s.len();
    let mut hilbert_function = BTreeMap::new();
    let mut bases = BTreeMap::new();
    let mut generator_degrees = Vec::new();
    let mut generators = Vec::new();
    let mut new_per_degree = BTreeMap::new();
    let mut saturation_degree = None;
    let mut prev: Vec<Form> = Vec::new();
    for d in 0..=d_max {
        let piece = symbolic_piece(s, 1, d);
        hilbert_function.insert(d, piece.dim());
        if saturation_degree.is_none()
            && monomial_count(d) >= npts
            && piece.dim() == monomial_count(d) - npts
        {
            saturation_degree = Some(d);
        }
        let mut span = SpanBuilder::new();
        for f in &prev {
            for g in times_variables(f) {
                span.insert(&g.coeffs);
            }
        }
        let mut fresh = 0;
        for f in &piece.basis {
            if span.insert(&f.coeffs) {
                generator_degrees.push(d);
                generators.push(f.clone());
                fresh += 1;
            }
        }
        new_per_degree.insert(d, fresh);
        prev = piece.basis.clone();
        bases.insert(d, piece.basis);
    }
    let complete = saturation_degree.is_some_and(|d0| {
        d_max >= d0 + 2 && new_per_degree[&d_max] == 0 && new_per_degree[&(d_max - 1)] == 0
    });
    IdealSummary {
        alpha: hilbert_function
            .iter()
            .find(|(_, &v)| v > 0)
            .map(|(&d, _)| d),
        hilbert_function,
        generator_degrees,
        generators,
        bases,
        computed_up_to: d_max,
        saturation_degree,
        complete,
    }
}

/// Multisets of size `k` from `0..n`, as nondecreasing index vectors.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(n, k - 1) {
        let start = rest.last().copied().unwrap_or(0);
        for i in start..n {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

/// Echelon span of `(I^k)_d`: monomials times `k`-fold products of generators.
pub fn power_span(
    s: &FatPointScheme,
    k: usize,
    d: usize,
    gens: &IdealSummary,
) -> Result<SpanBuilder> {
    assert!(k >= 1, "power must be positive");
    let a = gens.alpha.unwrap_or(d + 1);
    let needed = d.saturating_sub((k - 1) * a);
    if gens.computed_up_to < needed {
        return Err(Error::IncompleteGenerators {
            computed: gens.computed_up_to,
            required: needed,
        });
    }
    let mut span = SpanBuilder::new();
    let full = monomial_count(d);
    for idx in multisets(gens.generators.len(), k) {
        let deg: usize = idx.iter().map(|&i| gens.generators[i].degree).sum();
        if deg > d {
            continue;
        }
        let prod = Form::product(idx.iter().map(|&i| &gens.generators[i]));
        for e in monomials(d - deg) {
            if span.rank() == full {
                return Ok(span);
            }
            span.insert(&prod.mul(&Form::monomial(&s.field, e)).coeffs);
        }
    }
    Ok(span)
}

/// Basis of `(I^k)_d`, as forms.
pub fn power_piece(
    s: &FatPointScheme,
    k: usize,
    d: usize,
    gens: &IdealSummary,
) -> Result<Vec<Form>> {
    let span = power_span(s, k, d, gens)?;
    Ok(span
        .rows
        .into_iter()
        .map(|(_, v)| Form::from_coeffs(d, v))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `F` lies in the symbolic cube but not in the square: containment fails.
    NotContained,
    /// This witness does not refute containment.
    Undecided,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NotContained => "NOT_CONTAINED",
            Verdict::Undecided => "WITNESS_IN_SQUARE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub degree: usize,
    pub in_symbolic3: bool,
    pub in_square: bool,
    pub verdict: Verdict,
}

/// Product of the given lines as a form.
pub fn product_of_lines(lines: &[ProjLine]) -> Form {
    Form::product(
        lines
            .iter()
            .map(|l| Form::linear(l.coeffs()))
            .collect::<Vec<_>>()
            .iter(),
    )
}

/// Tests the product of `lines` against `I^(3)` and `I^2` of the scheme.
pub fn containment_witness(
    s: &FatPointScheme,
    lines: &[ProjLine],
    gens: &IdealSummary,
) -> Result<WitnessReport> {
    let f = product_of_lines(lines);
    let in_symbolic3 = s.points.iter().all(|p| f.vanishes_to_order(p.coords(), 3));
    let in_square = power_span(s, 2, f.degree, gens)?.contains(&f.coeffs);
    let verdict = if in_symbolic3 && !in_square {
        Verdict::NotContained
    } else {
        Verdict::Undecided
    };
    Ok(WitnessReport {
        degree: f.degree,
        in_symbolic3,
        in_square,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeContainment {
    pub upto: usize,
    /// Least degree where `(I^(3))_d` is not inside `(I^2)_d`.
    pub first_failure: Option<usize>,
    /// `d -> (dim (I^(3))_d, dim (I^2)_d)`.
    pub dims: BTreeMap<usize, (usize, usize)>,
}

impl DegreeContainment {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Compares `(I^(3))_d` with `(I^2)_d` for every `d <= upto`; stops at the first failure.
pub fn containment_up_to_degree(
    s: &FatPointScheme,
    upto: usize,
    gens: &IdealSummary,
) -> Result<DegreeContainment> {
    let mut dims = BTreeMap::new();
    for d in 0..=upto {
        let sym = symbolic_piece(s, 3, d);
        if sym.dim() == 0 {
            dims.insert(d, (0, 0));
            continue;
        }
        let square = power_span(s, 2, d, gens)?;
        dims.insert(d, (sym.dim(), square.rank()));
        if sym.basis.iter().any(|f| !square.contains(&f.coeffs)) {
            return Ok(DegreeContainment {
                upto,
                first_failure: Some(d),
                dims,
            });
        }
    }
    Ok(DegreeContainment {
        upto,
        first_failure: None,
        dims,
    })
}

/// Outcome of [`unique_form_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniqueFormReport {
    pub dim: usize,
    pub proportional_to_product: bool,
    pub alternating_sign: bool,
}

impl UniqueFormReport {
    pub fn holds(&self) -> bool {
        self.dim == 1 && self.proportional_to_product && self.alternating_sign
    }
}

/// `(I^(3))_n` is spanned by the product of the `n` lines, which is skew-invariant
/// with sign `-1` exactly on reflections.
pub fn unique_form_check(c: &Configuration) -> Result<UniqueFormReport> {
    if c.n < 12 || !c.n.is_multiple_of(6) {
        return Err(Error::InvalidInput(format!(
            "unique form check needs 6 | n and n >= 12, got {}",
            c.n
        )));
    }
    let s = triple_point_scheme(c)?;
    let piece = symbolic_piece(&s, 3, c.n);
    let f = product_of_lines(&c.lines);
    let proportional_to_product = piece.dim() == 1 && f.ratio_to(&piece.basis[0]).is_some();
    Ok(UniqueFormReport {
        dim: piece.dim(),
        proportional_to_product,
        alternating_sign: has_alternating_sign(&f)?,
    })
}
