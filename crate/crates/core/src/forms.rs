//! Homogeneous forms in `x, y, z` over a field, stored densely on the degree-d
//! monomial basis.
//!
//! Monomial order: `x^a y^b z^c` sorted by `a` descending, then `b` descending.

use num_bigint::BigInt;

use crate::field::{FieldElement, FieldSpec};

pub type Exponent = [usize; 3];

/// Number of monomials of degree `d` in three variables.
pub fn monomial_count(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

/// Degree-`d` monomials in basis order.
pub fn monomials(d: usize) -> Vec<Exponent> {
    let mut out = Vec::with_capacity(monomial_count(d));
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Position of `e` in [`monomials`] of its degree.
pub fn monomial_index(e: Exponent) -> usize {
    let d = e[0] + e[1] + e[2];
    let k = d - e[0];
    k * (k + 1) / 2 + (k - e[1])
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// A homogeneous polynomial of fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub degree: usize,
    pub coeffs: Vec<FieldElement>,
}

impl Form {
    pub fn zero(field: &FieldSpec, degree: usize) -> Self {
        Form {
            degree,
            coeffs: vec![field.zero(); monomial_count(degree)],
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        Form {
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<FieldElement>) -> Self {
        assert_eq!(coeffs.len(), monomial_count(degree));
        Form { degree, coeffs }
    }

    /// `a x + b y + c z`.
    pub fn linear(coeffs: &[FieldElement; 3]) -> Self {
        Form {
            degree: 1,
            coeffs: coeffs.to_vec(),
        }
    }

    pub fn monomial(field: &FieldSpec, e: Exponent) -> Self {
        let d = e.iter().sum();
        let mut f = Self::zero(field, d);
        f.coeffs[monomial_index(e)] = field.one();
        f
    }

    /// Builds a form from (coefficient, exponent) pairs of equal degree.
    pub fn from_terms(field: &FieldSpec, degree: usize, terms: &[(i64, Exponent)]) -> Self {
        let mut f = Self::zero(field, degree);
        for &(c, e) in terms {
            assert_eq!(e.iter().sum::<usize>(), degree);
            let i = monomial_index(e);
            f.coeffs[i] = &f.coeffs[i] + &field.from_int(c);
        }
        f
    }

    pub fn field(&self) -> &FieldSpec {
        self.coeffs[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.degree, other.degree);
        Form {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Form {
        Form {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Form {
        Form {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Form) -> Form {
        let field = self.field().clone();
        let degree = self.degree + other.degree;
        let mut out = vec![field.zero(); monomial_count(degree)];
        let ma = monomials(self.degree);
        let mb = monomials(other.degree);
        for (ea, ca) in ma.iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (eb, cb) in mb.iter().zip(&other.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                let i = monomial_index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
                out[i] = &out[i] + &(ca * cb);
            }
        }
        Form {
            degree,
            coeffs: out,
        }
    }

    /// Product of a nonempty list of forms.
    pub fn product<'a>(forms: impl IntoIterator<Item = &'a Form>) -> Form {
        let mut it = forms.into_iter();
        let first = it.next().expect("product of at least one form").clone();
        it.fold(first, |acc, f| acc.mul(f))
    }

    pub fn eval(&self, p: &[FieldElement; 3]) -> FieldElement {
        let field = self.field();
        let powers: Vec<Vec<FieldElement>> = p.iter().map(|c| powers_of(c, self.degree)).collect();
        let mut acc = field.zero();
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let term = &(&powers[0][e[0]] * &powers[1][e[1]]) * &powers[2][e[2]];
            acc = &acc + &(c * &term);
        }
        acc
    }

    /// Linear substitution `x_i -> sum_j a[i][j] x_j`, i.e. `f(A X)`.
    pub fn substitute(&self, a: &[[FieldElement; 3]; 3]) -> Form {
        let field = self.field().clone();
        let images: Vec<Form> = a.iter().map(Form::linear).collect();
        let pow_tables: Vec<Vec<Form>> = images
            .iter()
            .map(|l| {
                let mut v = vec![Form::constant(field.one())];
                for k in 1..=self.degree {
                    v.push(v[k - 1].mul(l));
                }
                v
            })
            .collect();
        let mut out = Form::zero(&field, self.degree);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let term = pow_tables[0][e[0]]
                .mul(&pow_tables[1][e[1]])
                .mul(&pow_tables[2][e[2]]);
            out = out.add(&term.scale(c));
        }
        out
    }

    /// Formal partial derivative with respect to variable `var` (0 = x, 1 = y, 2 = z).
    pub fn derivative(&self, var: usize) -> Form {
        let field = self.field().clone();
        if self.degree == 0 {
            return Form::zero(&field, 0);
        }
        let mut out = Form::zero(&field, self.degree - 1);
        for (e, c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() || e[var] == 0 {
                continue;
            }
            let mut f = *e;
            f[var] -= 1;
            out.coeffs[monomial_index(f)] = c.scale_int(&BigInt::from(e[var]));
        }
        out
    }

    /// True when every partial derivative of order `< m` vanishes at `p`.
    pub fn vanishes_to_order(&self, p: &[FieldElement; 3], m: usize) -> bool {
        // Each entry is a partial derivative together with the largest variable
        // used so far, so every multiset of variables is visited once.
        let mut layer = vec![(self.clone(), 0usize)];
        for order in 0..m {
            if layer.iter().any(|(g, _)| !g.eval(p).is_zero()) {
                return false;
            }
            if order + 1 == m || self.degree <= order {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|(g, last)| (*last..3).map(move |v| (g.derivative(v), v)))
                .collect();
        }
        true
    }

    /// `Some(c)` with `self = c * other`, when the two are proportional and `other != 0`.
    pub fn ratio_to(&self, other: &Form) -> Option<FieldElement> {
        if self.degree != other.degree {
            return None;
        }
        let k = other.coeffs.iter().position(|c| !c.is_zero())?;
        let c = &self.coeffs[k] * &other.coeffs[k].inv().ok()?;
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| *a == &c * b)
            .then_some(c)
    }
}

pub(crate) fn powers_of(c: &FieldElement, d: usize) -> Vec<FieldElement> {
    let mut v = Vec::with_capacity(d + 1);
    v.push(c.field().one());
    for k in 1..=d {
        let next = &v[k - 1] * c;
        v.push(next);
    }
    v
}
