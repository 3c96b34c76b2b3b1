//! Exact arithmetic in presented number fields.
//!
//! A field is a tower `Q[g_0, ..., g_k] / (r_0, ..., r_k)` where relation `r_i` is
//! monic in `g_i` with coefficients in the subfield generated by `g_0..g_{i-1}`.
//! Elements are stored as integer coefficient vectors over the reduced monomial
//! basis together with one positive common denominator.

mod poly;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use poly::{parse_poly, SparsePoly};

use crate::error::{Error, Result};

struct FieldData {
    label: String,
    generators: Vec<String>,
    degrees: Vec<usize>,
    relations: Vec<SparsePoly>,
    embedding: Vec<Complex64>,
    cyclotomic_order: Option<u64>,
    dim: usize,
    /// Mixed-radix exponent digits of each basis element.
    basis_exps: Vec<Vec<usize>>,
    /// Index of each basis element in the extended radix (digits < 2 d_i - 1).
    basis_ext: Vec<usize>,
    /// For every extended index: either a basis index or a reduction row.
    ext_slots: Vec<ExtSlot>,
    /// Common denominator of all reduction rows.
    red_den: BigInt,
}

enum ExtSlot {
    Basis(usize),
    Reduced(Vec<(usize, BigInt)>),
}

/// A presented algebraic number field. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldData>);

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({})", self.0.label)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.generators == other.0.generators && self.0.relations == other.0.relations)
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// Builds a tower field from relation strings such as `["s^3 + 2", "t^2 + t + 1"]`.
    ///
    /// `embedding` assigns each generator a complex value; it is used only for rendering.
    /// Irreducibility of the relations is the caller's responsibility.
    pub fn new(generators: &[&str], relations: &[&str], embedding: &[Complex64]) -> Result<Self> {
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .map(|r| parse_poly(r, &gens))
            .collect::<Result<Vec<_>>>()?;
        Self::from_relations(gens, rels, embedding.to_vec(), None)
    }

    /// `Q(zeta_m)` presented by the m-th cyclotomic polynomial, embedded at `exp(2 pi i / m)`.
    pub fn cyclotomic(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput(
                "cyclotomic order must be positive".into(),
            ));
        }
        let phi = poly::upoly::cyclotomic(m);
        let gens = vec!["zeta".to_string()];
        let mut rel = SparsePoly::zero(1);
        for (k, c) in phi.iter().enumerate() {
            rel.add_term(vec![k], BigRational::from_integer(c.clone()));
        }
        let angle = 2.0 * std::f64::consts::PI / m as f64;
        let spec = Self::from_relations(
            gens,
            vec![rel],
            vec![Complex64::from_polar(1.0, angle)],
            Some(m),
        )?;
        Ok(spec)
    }

    /// `Q(s, t)` with `s^3 + 2 = 0` (real root `-cbrt 2`) and `t^2 + t + 1 = 0` (`t = exp(2 pi i/3)`).
    pub fn fermat_tower() -> Self {
        let s = Complex64::new(-(2f64.cbrt()), 0.0);
        let t = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        Self::new(&["s", "t"], &["s^3 + 2", "t^2 + t + 1"], &[s, t]).expect("static presentation")
    }

    fn from_relations(
        generators: Vec<String>,
        relations: Vec<SparsePoly>,
        embedding: Vec<Complex64>,
        cyclotomic_order: Option<u64>,
    ) -> Result<Self> {
        let k = generators.len();
        if relations.len() != k || embedding.len() != k {
            return Err(Error::InvalidInput(
                "need one relation and one embedding value per generator".into(),
            ));
        }
        let mut degrees = Vec::with_capacity(k);
        for (i, rel) in relations.iter().enumerate() {
            let d = rel.terms.keys().map(|e| e[i]).max().unwrap_or(0);
            if d == 0 {
                return Err(Error::InvalidInput(format!(
                    "relation {i} has degree 0 in its generator"
                )));
            }
            let mut monic = false;
            for (e, c) in &rel.terms {
                if e.iter().skip(i + 1).any(|&x| x > 0) {
                    return Err(Error::InvalidInput(format!(
                        "relation {i} involves a later generator"
                    )));
                }
                for j in 0..i {
                    if e[j] >= degrees[j] {
                        return Err(Error::InvalidInput(format!(
                            "relation {i} is not reduced in generator {j}"
                        )));
                    }
                }
                if e[i] == d {
                    let lead_is_pure = e.iter().enumerate().all(|(j, &x)| j == i || x == 0);
                    if !lead_is_pure || !c.is_one() {
                        return Err(Error::InvalidInput(format!("relation {i} is not monic")));
                    }
                    monic = true;
                }
            }
            if !monic {
                return Err(Error::InvalidInput(format!("relation {i} is not monic")));
            }
            degrees.push(d);
        }

        let dim: usize = degrees.iter().product();
        let ext_radix: Vec<usize> = degrees.iter().map(|d| 2 * d - 1).collect();
        let ext_len: usize = ext_radix.iter().product();
        let digits = |mut idx: usize, radix: &[usize]| -> Vec<usize> {
            let mut out = vec![0; radix.len()];
            for i in (0..radix.len()).rev() {
                out[i] = idx % radix[i];
                idx /= radix[i];
            }
            out
        };
        let index_of = |e: &[usize], radix: &[usize]| -> usize {
            e.iter().zip(radix).fold(0, |acc, (x, r)| acc * r + x)
        };
        let basis_exps: Vec<Vec<usize>> = (0..dim).map(|i| digits(i, &degrees)).collect();
        let basis_ext: Vec<usize> = basis_exps.iter().map(|e| index_of(e, &ext_radix)).collect();

        let mut memo: HashMap<Vec<usize>, Vec<BigRational>> = HashMap::new();
        let mut rational_rows: Vec<Option<Vec<BigRational>>> = Vec::with_capacity(ext_len);
        for idx in 0..ext_len {
            let e = digits(idx, &ext_radix);
            if e.iter().zip(&degrees).all(|(x, d)| x < d) {
                rational_rows.push(None);
            } else {
                let row = reduce_monomial(&e, &degrees, &relations, &mut memo, &index_of);
                rational_rows.push(Some(row));
            }
        }
        let mut red_den = BigInt::one();
        for row in rational_rows.iter().flatten() {
            for c in row {
                red_den = red_den.lcm(c.denom());
            }
        }
        let ext_slots = rational_rows
            .into_iter()
            .enumerate()
            .map(|(idx, row)| match row {
                None => ExtSlot::Basis(index_of(&digits(idx, &ext_radix), &degrees)),
                Some(row) => ExtSlot::Reduced(
                    row.into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(j, c)| (j, c.numer() * (&red_den / c.denom())))
                        .collect(),
                ),
            })
            .collect();

        let label = match cyclotomic_order {
            Some(m) => format!("Q(zeta_{m})"),
            None => format!("Q({})", generators.join(",")),
        };
        Ok(FieldSpec(Arc::new(FieldData {
            label,
            generators,
            degrees,
            relations,
            embedding,
            cyclotomic_order,
            dim,
            basis_exps,
            basis_ext,
            ext_slots,
            red_den,
        })))
    }

    pub fn degree(&self) -> usize {
        self.0.dim
    }

    pub fn generators(&self) -> &[String] {
        &self.0.generators
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    /// `Some(m)` for fields built by [`FieldSpec::cyclotomic`].
    pub fn cyclotomic_order(&self) -> Option<u64> {
        self.0.cyclotomic_order
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            num: vec![BigInt::zero(); self.0.dim],
            den: BigInt::one(),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> FieldElement {
        self.from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_frac(&self, p: i64, q: i64) -> FieldElement {
        self.from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(&self, r: BigRational) -> FieldElement {
        let mut num = vec![BigInt::zero(); self.0.dim];
        num[0] = r.numer().clone();
        FieldElement::normalized(self.clone(), num, r.denom().clone())
    }

    /// The i-th generator as an element.
    pub fn generator(&self, i: usize) -> FieldElement {
        let mut e = vec![0; self.0.generators.len()];
        e[i] = 1;
        self.monomial(&e)
    }

    /// A reduced monomial in the generators with arbitrary exponents.
    pub fn monomial(&self, exps: &[usize]) -> FieldElement {
        let mut acc = self.one();
        for (i, &k) in exps.iter().enumerate() {
            if k > 0 {
                let g = self.basis_element_for(i);
                acc = &acc * &g.pow(k as u64);
            }
        }
        acc
    }

    fn basis_element_for(&self, gen: usize) -> FieldElement {
        let mut e = vec![0; self.0.degrees.len()];
        e[gen] = 1;
        let row = reduce_monomial(
            &e,
            &self.0.degrees,
            &self.0.relations,
            &mut HashMap::new(),
            &|e, r| e.iter().zip(r).fold(0, |acc, (x, r)| acc * r + x),
        );
        FieldElement::from_rationals(self.clone(), &row)
    }

    /// Element with the given rational coefficients on the reduced basis.
    pub fn from_coefficients(&self, coeffs: &[BigRational]) -> Result<FieldElement> {
        if coeffs.len() != self.0.dim {
            return Err(Error::InvalidInput(format!(
                "expected {} coefficients, got {}",
                self.0.dim,
                coeffs.len()
            )));
        }
        Ok(FieldElement::from_rationals(self.clone(), coeffs))
    }

    /// Parses the canonical string form (any polynomial expression in the generators).
    pub fn parse(&self, src: &str) -> Result<FieldElement> {
        let p = parse_poly(src, &self.0.generators)?;
        let mut acc = self.zero();
        for (e, c) in &p.terms {
            let m = self.monomial(e);
            acc = &acc + &m.scale(c);
        }
        Ok(acc)
    }

    /// Reduces a polynomial in the generators to a field element.
    pub fn reduce(&self, p: &SparsePoly) -> FieldElement {
        let mut acc = self.zero();
        for (e, c) in &p.terms {
            acc = &acc + &self.monomial(e).scale(c);
        }
        acc
    }

    /// Primitive k-th root of unity `zeta_m^(m/k)` in a cyclotomic field, when k | m.
    pub fn root_of_unity(&self, k: u64) -> Result<FieldElement> {
        let m = self
            .0
            .cyclotomic_order
            .ok_or_else(|| Error::Unsupported("root_of_unity needs a cyclotomic field".into()))?;
        if k == 0 || m % k != 0 {
            return Err(Error::Unsupported(format!(
                "Q(zeta_{m}) has no primitive {k}-th root"
            )));
        }
        Ok(self.generator(0).pow(m / k))
    }

    fn mul_raw(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let data = &*self.0;
        let mut acc: Vec<BigInt> = vec![BigInt::zero(); data.ext_slots.len()];
        let nz_b: Vec<usize> = (0..b.len()).filter(|&j| !b[j].is_zero()).collect();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let ei = data.basis_ext[i];
            for &j in &nz_b {
                acc[ei + data.basis_ext[j]] += ai * &b[j];
            }
        }
        let mut out = vec![BigInt::zero(); data.dim];
        let scale = !data.red_den.is_one();
        for (k, v) in acc.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            match &data.ext_slots[k] {
                ExtSlot::Basis(idx) => {
                    if scale {
                        out[*idx] += v * &data.red_den;
                    } else {
                        out[*idx] += v;
                    }
                }
                ExtSlot::Reduced(row) => {
                    for (idx, c) in row {
                        out[*idx] += &v * c;
                    }
                }
            }
        }
        out
    }
}

fn reduce_monomial(
    e: &[usize],
    degrees: &[usize],
    relations: &[SparsePoly],
    memo: &mut HashMap<Vec<usize>, Vec<BigRational>>,
    index_of: &dyn Fn(&[usize], &[usize]) -> usize,
) -> Vec<BigRational> {
    let dim: usize = degrees.iter().product();
    if let Some(row) = memo.get(e) {
        return row.clone();
    }
    let top = (0..degrees.len()).rev().find(|&i| e[i] >= degrees[i]);
    let row = match top {
        None => {
            let mut row = vec![BigRational::zero(); dim];
            row[index_of(e, degrees)] = BigRational::one();
            row
        }
        Some(i) => {
            let d = degrees[i];
            let mut row = vec![BigRational::zero(); dim];
            for (t, c) in &relations[i].terms {
                if t[i] == d {
                    continue;
                }
                let mut e2 = e.to_vec();
                e2[i] -= d;
                for (x, y) in e2.iter_mut().zip(t) {
                    *x += y;
                }
                let sub = reduce_monomial(&e2, degrees, relations, memo, index_of);
                for (r, s) in row.iter_mut().zip(sub) {
                    if !s.is_zero() {
                        *r -= c * s;
                    }
                }
            }
            row
        }
    };
    memo.insert(e.to_vec(), row.clone());
    row
}

/// An element of a [`FieldSpec`], always fully reduced.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldSpec,
    num: Vec<BigInt>,
    den: BigInt,
}

/// Binary operation selector for [`element_arithmetic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked arithmetic entry point: rejects mixed fields and division by zero.
pub fn element_arithmetic(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    a.check_same_field(b)?;
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl FieldElement {
    fn normalized(field: FieldSpec, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if num.iter().all(|c| c.is_zero()) {
            return FieldElement {
                field,
                num,
                den: BigInt::one(),
            };
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den /= &g;
            }
        }
        FieldElement { field, num, den }
    }

    fn from_rationals(field: FieldSpec, coeffs: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::normalized(field, num, den)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Rational coefficients on the reduced monomial basis.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// `self - f * r`, normalized once.
    pub fn sub_mul(&self, f: &FieldElement, r: &FieldElement) -> FieldElement {
        self.assert_same(f);
        self.assert_same(r);
        if f.is_zero() || r.is_zero() {
            return self.clone();
        }
        let prod = self.field.mul_raw(&f.num, &r.num);
        let pden = &f.den * &r.den * &self.field.0.red_den;
        if self.is_zero() {
            let num = prod.into_iter().map(|c| -c).collect();
            return FieldElement::normalized(self.field.clone(), num, pden);
        }
        let g = self.den.gcd(&pden);
        let sa = &pden / &g;
        let sb = &self.den / &g;
        let num = self
            .num
            .iter()
            .zip(prod)
            .map(|(a, b)| a * &sa - b * &sb)
            .collect();
        FieldElement::normalized(self.field.clone(), num, sa * &self.den)
    }

    /// Total bit length of the stored integers; a cost measure for pivot choice.
    pub fn bit_size(&self) -> u64 {
        self.den.bits() + self.num.iter().map(|c| c.bits()).sum::<u64>()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// `Some(q)` when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.label().to_string(),
                right: other.field.label().to_string(),
            })
        }
    }

    fn assert_same(&self, other: &Self) {
        if !Arc::ptr_eq(&self.field.0, &other.field.0) {
            assert!(self.field == other.field, "mixed-field arithmetic");
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let num = self.num.iter().map(|x| x * c.numer()).collect();
        Self::normalized(self.field.clone(), num, &self.den * c.denom())
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        let num = self.num.iter().map(|x| x * c).collect();
        Self::normalized(self.field.clone(), num, self.den.clone())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiplicative inverse, solving `(multiplication-by-self) x = 1` over Q.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = &self.field;
        let dim = field.0.dim;
        if let Some(q) = self.as_rational() {
            return Ok(field.from_rational(q.recip()));
        }
        // Column j of the integer matrix is num * e_j, scaled by red_den.
        let mut cols = Vec::with_capacity(dim);
        for j in 0..dim {
            let mut unit = vec![BigInt::zero(); dim];
            unit[j] = BigInt::one();
            cols.push(field.mul_raw(&self.num, &unit));
        }
        let mut mat: Vec<Vec<BigInt>> = (0..dim)
            .map(|i| {
                let mut row: Vec<BigInt> = (0..dim).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 {
                    field.0.red_den.clone()
                } else {
                    BigInt::zero()
                });
                row
            })
            .collect();
        let x = solve_integer_system(&mut mat).ok_or_else(|| {
            Error::Consistency(
                "multiplication matrix is singular; relation not irreducible?".into(),
            )
        })?;
        let inv_num = FieldElement::from_rationals(field.clone(), &x);
        Ok(inv_num.scale_int(&self.den))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        Ok(self * &other.inv()?)
    }

    /// Complex image under the field's designated embedding.
    pub fn embed_numeric(&self) -> Complex64 {
        let data = &*self.field.0;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, e) in self.num.iter().zip(&data.basis_exps) {
            if c.is_zero() {
                continue;
            }
            let mut term = Complex64::new(ratio_to_f64(c, &self.den, den), 0.0);
            for (g, &k) in data.embedding.iter().zip(e) {
                term *= g.powu(k as u32);
            }
            acc += term;
        }
        acc
    }
}

fn ratio_to_f64(n: &BigInt, d: &BigInt, d_f: f64) -> f64 {
    match (n.to_f64(), d_f.is_finite()) {
        (Some(nf), true) if nf.is_finite() => nf / d_f,
        _ => BigRational::new(n.clone(), d.clone())
            .to_f64()
            .unwrap_or(f64::NAN),
    }
}

/// Solves the square system given as an augmented integer matrix; `None` if singular.
fn solve_integer_system(mat: &mut [Vec<BigInt>]) -> Option<Vec<BigRational>> {
    let n = mat.len();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !mat[i][k].is_zero())?;
        mat.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = &mat[k][k] * &mat[i][j] - &mat[i][k] * &mat[k][j];
                mat[i][j] = v / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut s = BigRational::from_integer(mat[i][n].clone());
        for j in i + 1..n {
            if !mat[i][j].is_zero() {
                s -= &x[j] * BigRational::from_integer(mat[i][j].clone());
            }
        }
        x[i] = s / BigRational::from_integer(mat[i][i].clone());
    }
    Some(x)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same(rhs);
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let num = self.num.iter().zip(&rhs.num).map(|(a, b)| a + b).collect();
            return FieldElement::normalized(self.field.clone(), num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        FieldElement::normalized(self.field.clone(), num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        for c in self.num.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.assert_same(rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.field.zero();
        }
        let num = self.field.mul_raw(&self.num, &rhs.num);
        let den = &self.den * &rhs.den * &self.field.0.red_den;
        FieldElement::normalized(self.field.clone(), num, den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

impl fmt::Display for FieldElement {
    /// Canonical string: terms by descending total degree, then by exponents in
    /// generator order, joined with `" + "`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let data = &*self.field.0;
        let mut terms: Vec<(usize, &Vec<usize>, BigRational)> = self
            .num
            .iter()
            .zip(&data.basis_exps)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, e)| {
                (
                    e.iter().sum(),
                    e,
                    BigRational::new(c.clone(), self.den.clone()),
                )
            })
            .collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| b.1.cmp(a.1)));
        let rendered: Vec<String> = terms
            .iter()
            .map(|(deg, e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(&data.generators)
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, g)| {
                        if *k == 1 {
                            g.clone()
                        } else {
                            format!("{g}^{k}")
                        }
                    })
                    .collect();
                let mono = mono.join("*");
                if *deg == 0 {
                    format_rational(c)
                } else if c.is_one() {
                    mono
                } else if (-c).is_one() {
                    format!("-{mono}")
                } else {
                    format!("{}*{mono}", format_rational(c))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Euler's totient, used to size cyclotomic fields.
pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}
