//! Sparse multivariate polynomials with rational coefficients, used to parse
//! field presentations and element strings before reduction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exponent vector (one entry per generator) mapped to its coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparsePoly {
    pub terms: BTreeMap<Vec<usize>, BigRational>,
    pub nvars: usize,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            terms: BTreeMap::new(),
            nvars,
        }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn add_term(&mut self, exps: Vec<usize>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::constant(self.nvars, BigRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' | '−' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::LParen);
                i += 1
            }
            ')' => {
                out.push(Token::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token::Int(s.parse().expect("digits")));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Token::Minus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.unary()?;
        while let Some(t) = self.peek() {
            match t {
                Token::Star => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Token::Slash => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    let c = rhs
                        .as_constant()
                        .ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                    if c.is_zero() {
                        return Err(Error::Parse("division by zero".into()));
                    }
                    let inv = c.recip();
                    for v in acc.terms.values_mut() {
                        *v *= &inv;
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SparsePoly> {
        let base = self.primary()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Token::Int(k)) if !k.is_negative() => {
                    let k = k
                        .to_usize()
                        .ok_or_else(|| Error::Parse("exponent too large".into()))?;
                    return Ok(base.pow(k));
                }
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<SparsePoly> {
        let n = self.vars.len();
        match self.next() {
            Some(Token::Int(k)) => Ok(SparsePoly::constant(n, BigRational::from_integer(k))),
            Some(Token::Ident(name)) => {
                let idx = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown symbol {name}")))?;
                Ok(SparsePoly::variable(n, idx))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses a polynomial expression in the given variables.
pub fn parse_poly(src: &str, vars: &[String]) -> Result<SparsePoly> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(out)
}

/// Dense univariate integer polynomial helpers (coefficients low to high).
pub(crate) mod upoly {
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    pub fn trim(p: &mut Vec<BigInt>) {
        while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    /// Exact division by a monic divisor; returns `None` if a remainder is left.
    pub fn div_exact(num: &[BigInt], den: &[BigInt]) -> Option<Vec<BigInt>> {
        let dn = den.len() - 1;
        debug_assert!(den[dn].is_one());
        if num.len() < den.len() {
            return num
                .iter()
                .all(|c| c.is_zero())
                .then(|| vec![BigInt::zero()]);
        }
        let mut rem = num.to_vec();
        let mut quot = vec![BigInt::zero(); num.len() - dn];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dn].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.iter().all(|c| c.is_zero()).then(|| {
            let mut q = quot;
            trim(&mut q);
            q
        })
    }

    /// The m-th cyclotomic polynomial, by dividing x^m - 1 by every Φ_d with d | m, d < m.
    pub fn cyclotomic(m: u64) -> Vec<BigInt> {
        assert!(m >= 1);
        let mut p = vec![BigInt::zero(); m as usize + 1];
        p[0] = -BigInt::one();
        p[m as usize] = BigInt::one();
        for d in 1..m {
            if m.is_multiple_of(d) {
                p = div_exact(&p, &cyclotomic(d)).expect("cyclotomic factor divides x^m - 1");
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::upoly::cyclotomic;
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), ints(&[1, 1]));
        assert_eq!(cyclotomic(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn parse_roundtrip_terms() {
        let vars = vec!["s".to_string(), "t".to_string()];
        let p = parse_poly("(-1/2)*s^2 + 3 - t*(s - 1)", &vars).unwrap();
        assert_eq!(p.terms.len(), 4);
        assert!(parse_poly("s +", &vars).is_err());
        assert!(parse_poly("q", &vars).is_err());
        assert!(parse_poly("s / t", &vars).is_err());
    }
}
