//! Sparse multivariate polynomials over a [`Field`].
//!
//! Terms are stored strictly descending in grevlex, which makes equality
//! structural. Other orders are applied on demand by the engine.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, FieldElem};
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    nvars: usize,
    field: Field,
    terms: Vec<(Monomial, FieldElem)>,
}

impl Poly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        Poly {
            nvars,
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: Field, nvars: usize, c: FieldElem) -> Self {
        Self::monomial(field, nvars, Monomial::one(), c)
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn from_i64(field: Field, nvars: usize, v: i64) -> Self {
        Self::constant(field, nvars, field.from_i64(v))
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::monomial(field, nvars, Monomial::var(i), field.one())
    }

    pub fn monomial(field: Field, nvars: usize, m: Monomial, c: FieldElem) -> Self {
        let mut p = Poly::zero(field, nvars);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(field: Field, nvars: usize, terms: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = e.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let ord = MonomialOrder::grevlex(nvars);
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Poly { nvars, field, terms }
    }

    /// Assumes `terms` is strictly descending in grevlex with nonzero coefficients.
    pub(crate) fn from_sorted_terms(field: Field, nvars: usize, terms: Vec<(Monomial, FieldElem)>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { nvars, field, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, FieldElem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.deg()).max()
    }

    /// Lowest total degree among the terms.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.deg()).min()
    }

    pub fn constant_term(&self) -> FieldElem {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.field.zero(),
        }
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    /// Leading term under `ord`.
    pub fn lead_term(&self, ord: &MonomialOrder) -> Option<&(Monomial, FieldElem)> {
        self.terms.iter().max_by(|a, b| ord.cmp(&a.0, &b.0))
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Poly, negate: bool) -> Poly {
        let ord = MonomialOrder::grevlex(self.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let o = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => ord.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match o {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((*m, if negate { c.neg() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        self.terms[i].1.sub(&other.terms[j].1)
                    } else {
                        self.terms[i].1.add(&other.terms[j].1)
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly::from_sorted_terms(self.field, self.nvars, out)
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        // bucketed accumulation keyed by monomial
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = e.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let ord = MonomialOrder::grevlex(self.nvars);
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Poly::from_sorted_terms(self.field, self.nvars, terms)
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(t, d)| (t.mul(m), d.mul(c))).collect();
        Poly::from_sorted_terms(self.field, self.nvars, terms)
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn neg(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.neg())).collect();
        Poly::from_sorted_terms(self.field, self.nvars, terms)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.field, self.nvars);
        for _ in 0..e {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Evaluates at `point`.
    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    t = t.mul(&x.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Invertible in the local ring at the origin.
    pub fn is_local_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Substitutes `x_i -> x_i + c_i`.
    pub fn translate(&self, point: &[FieldElem]) -> Result<Poly> {
        if point.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let shifted: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                Poly::var(self.field, self.nvars, i).add_unchecked(&Poly::constant(self.field, self.nvars, point[i].clone()), false)
            })
            .collect();
        let mut powers: Vec<Vec<Poly>> = shifted.iter().map(|p| vec![Poly::one(self.field, self.nvars), p.clone()]).collect();
        let mut acc = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(self.field, self.nvars, c.clone());
            for i in 0..self.nvars {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap().mul_unchecked(&shifted[i]);
                    powers[i].push(next);
                }
                t = t.mul_unchecked(&powers[i][e]);
            }
            acc = acc.add_unchecked(&t, false);
        }
        Ok(acc)
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.deg() == d).cloned().collect();
        Poly::from_sorted_terms(self.field, self.nvars, terms)
    }

    pub fn linear_part(&self) -> Poly {
        self.homogeneous_part(1)
    }

    /// Coefficients of the linear part, one per variable.
    pub fn linear_coefficients(&self) -> Vec<FieldElem> {
        (0..self.nvars).map(|i| self.coeff(&Monomial::var(i))).collect()
    }

    /// Drops all terms of total degree `>= d`.
    pub fn truncate_below(&self, d: u32) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.deg() < d).cloned().collect();
        Poly::from_sorted_terms(self.field, self.nvars, terms)
    }

    /// Same polynomial viewed in a ring with `nvars` variables, `map[i]` giving
    /// the new index of variable `i`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        Poly::from_terms(self.field, nvars, self.terms.iter().map(|(m, c)| (m.remap(map), c.clone())))
    }

    /// Every term has the same weighted degree under `weights`.
    /// Largest weighted degree of a term; `None` for zero.
    pub fn weighted_degree(&self, weights: &[u32]) -> Option<u32> {
        self.terms
            .iter()
            .map(|(m, _)| (0..self.nvars).map(|i| m.exp(i) * weights[i]).sum())
            .max()
    }

    pub fn is_weighted_homogeneous(&self, weights: &[u32]) -> bool {
        let wdeg = |m: &Monomial| -> u32 { (0..self.nvars).map(|i| m.exp(i) * weights[i]).sum() };
        let mut it = self.terms.iter().map(|(m, _)| wdeg(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn make_monic(&self, ord: &MonomialOrder) -> Poly {
        match self.lead_term(ord) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero lead")),
        }
    }

    /// Renders with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, names }
    }

    /// Parses the textual polynomial syntax: integer or rational coefficients,
    /// `^` powers, optional `*`, parentheses.
    pub fn parse(text: &str, names: &[String], field: Field) -> Result<Poly> {
        if names.len() >= MAX_VARS {
            return Err(AlgebraError::TooManyVariables(names.len()));
        }
        let mut p = Parser {
            chars: text.char_indices().collect(),
            pos: 0,
            names,
            field,
            len: text.len(),
        };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(poly)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.poly, |i| self.names.get(i).cloned().unwrap_or_else(|| format!("x{i}")))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, |i| format!("x{i}"))
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly, name: impl Fn(usize) -> String) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (k, (m, c)) in p.terms.iter().enumerate() {
        let neg = c.is_negative_repr();
        let abs = if neg { c.neg() } else { c.clone() };
        if k == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        let mut factors = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(abs.to_string());
        }
        for i in 0..p.nvars {
            match m.exp(i) {
                0 => {}
                1 => factors.push(name(i)),
                e => factors.push(format!("{}^{}", name(i), e)),
            }
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    names: &'a [String],
    field: Field,
    len: usize,
}

impl Parser<'_> {
    fn column(&self) -> usize {
        self.chars.get(self.pos).map(|(b, _)| *b).unwrap_or(self.len) + 1
    }

    fn error(&self, message: &str) -> AlgebraError {
        AlgebraError::Parse {
            column: self.column(),
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Poly> {
        self.skip_ws();
        let mut acc = Poly::zero(self.field, self.nvars());
        let mut negate = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            negate = c == '-';
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            self.skip_ws();
            match self.peek() {
                Some('+') => negate = false,
                Some('-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some('/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let col = self.column();
                    let d = self.integer()?;
                    let c = self
                        .field
                        .from_ratio(&BigInt::from(1), &d)
                        .map_err(|_| AlgebraError::Parse {
                            column: col,
                            message: "division by zero".into(),
                        })?;
                    acc = acc.scale(&c);
                }
                Some(c) if c.is_alphanumeric() || c == '(' || c == '_' => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = u32::try_from(&e).map_err(|_| self.error("exponent out of range"))?;
            if e > 1000 {
                return Err(self.error("exponent out of range"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<Poly> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(Poly::constant(self.field, self.nvars(), self.field.from_bigint(&v)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let col = self.column();
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let ident: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
                match self.names.iter().position(|n| *n == ident) {
                    Some(i) => Ok(Poly::var(self.field, self.nvars(), i)),
                    None => Err(AlgebraError::Parse {
                        column: col,
                        message: format!("unknown variable '{ident}'"),
                    }),
                }
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn q(s: &str) -> Poly {
        Poly::parse(s, &names(), Field::Rational).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&q("x + y") + &q("x - y"), q("2x"));
        assert_eq!(&q("x^2 - y") + &Poly::zero(Field::Rational, 2), q("x^2 - y"));
        let f2 = Field::prime(2).unwrap();
        let x = Poly::parse("x", &names(), f2).unwrap();
        assert!((&x + &x).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&q("x") * &q("y"), q("x*y"));
        assert_eq!(&q("x+y") * &q("x-y"), q("x^2 - y^2"));
        assert_eq!(&q("3x^2 - y + 1") * &Poly::one(Field::Rational, 2), q("3x^2 - y + 1"));
    }

    #[test]
    fn translate_examples() {
        let qq = Field::Rational;
        let pt = |a: i64, b: i64| vec![qq.from_i64(a), qq.from_i64(b)];
        assert_eq!(q("x*y").translate(&pt(0, 1)).unwrap(), q("x*y + x"));
        assert_eq!(q("x^3 - 2y").translate(&pt(0, 0)).unwrap(), q("x^3 - 2y"));
        let one = vec!["x".to_string()];
        let p = Poly::parse("1 - x", &one, qq).unwrap();
        assert_eq!(p.translate(&[qq.from_i64(1)]).unwrap(), Poly::parse("-x", &one, qq).unwrap());
        assert!(matches!(q("x").translate(&[qq.one()]), Err(AlgebraError::ArityMismatch { .. })));
    }

    #[test]
    fn linear_part_examples() {
        assert_eq!(q("x - y^2").linear_part(), q("x"));
        assert!(q("x*y").linear_part().is_zero());
        assert_eq!(q("3 + x + x^2").linear_part(), q("x"));
    }

    #[test]
    fn eval_and_units() {
        let qq = Field::Rational;
        let origin = vec![qq.zero(), qq.zero()];
        assert!(q("x*y + 1").eval(&origin).unwrap().is_one());
        assert!(q("x*y + 1").is_local_unit());
        assert!(!q("x").is_local_unit());
        assert!(q("x^2 - y").eval(&[qq.from_i64(2), qq.from_i64(4)]).unwrap().is_zero());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(q("x*y - 1/2 x").to_string(), "x0*x1 - 1/2*x0");
        assert_eq!(q("(x+y)^2").display_with(&names()).to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(q("2x^2y").display_with(&names()).to_string(), "2*x^2*y");
        let err = Poly::parse("x + z", &names(), Field::Rational).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::Parse {
                column: 5,
                message: "unknown variable 'z'".into()
            }
        );
        assert!(Poly::parse("x +", &names(), Field::Rational).is_err());
        assert!(Poly::parse("x/0", &names(), Field::Rational).is_err());
    }

    #[test]
    fn mismatch_errors() {
        let a = q("x");
        let b = Poly::parse("x", &names(), Field::prime(7).unwrap()).unwrap();
        assert!(matches!(a.try_add(&b), Err(AlgebraError::FieldMismatch(..))));
        let c = Poly::parse("x", &["x".to_string()], Field::Rational).unwrap();
        assert!(matches!(a.try_mul(&c), Err(AlgebraError::ArityMismatch { .. })));
    }
}
