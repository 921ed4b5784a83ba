//! Laurent polynomials in `t` over a number field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{same_field, NfElem, NumberField};
use super::rational::Rational;
use crate::error::{Error, Result};

/// A finitely supported map from exponents to nonzero coefficients.
#[derive(Debug, Clone)]
pub struct LaurentPoly {
    field: Arc<NumberField>,
    terms: BTreeMap<i64, NfElem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaurentOp {
    Add,
    Sub,
    Mul,
}

pub fn laurent_arith(p: &LaurentPoly, q: &LaurentPoly, op: LaurentOp) -> Result<LaurentPoly> {
    if !same_field(&p.field, &q.field) {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        LaurentOp::Add => p.add_impl(q, false),
        LaurentOp::Sub => p.add_impl(q, true),
        LaurentOp::Mul => p.mul_impl(q),
    })
}

impl LaurentPoly {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::constant(NfElem::one(field))
    }

    pub fn constant(c: NfElem) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·t^k`.
    pub fn monomial(c: NfElem, k: i64) -> Self {
        let mut out = Self::zero(c.field());
        if !c.is_zero() {
            out.terms.insert(k, c);
        }
        out
    }

    /// The variable `t`.
    pub fn t(field: &Arc<NumberField>) -> Self {
        Self::monomial(NfElem::one(field), 1)
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        field: &Arc<NumberField>,
        terms: impl IntoIterator<Item = (i64, NfElem)>,
    ) -> Result<Self> {
        let mut out = Self::zero(field);
        for (k, c) in terms {
            if !same_field(field, c.field()) {
                return Err(Error::FieldMismatch);
            }
            out.add_term(k, c);
        }
        Ok(out)
    }

    /// Builds from rational coefficients, index = exponent offset from `low`.
    pub fn from_rationals(field: &Arc<NumberField>, low: i64, coeffs: &[Rational]) -> Self {
        let mut out = Self::zero(field);
        for (i, c) in coeffs.iter().enumerate() {
            out.add_term(low + i as i64, NfElem::from_rational(field, c.clone()));
        }
        out
    }

    fn add_term(&mut self, k: i64, c: NfElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&k) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(k, s);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &NfElem)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> NfElem {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| NfElem::zero(&self.field))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, or `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn scale(&self, c: &NfElem) -> Self {
        let mut out = Self::zero(&self.field);
        for (k, a) in &self.terms {
            out.add_term(*k, a * c);
        }
        out
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Evaluates at a nonzero field element (or any element when no negative powers occur).
    pub fn eval(&self, x: &NfElem) -> Result<NfElem> {
        let mut acc = NfElem::zero(&self.field);
        for (k, c) in &self.terms {
            let xp = if *k >= 0 {
                x.pow(*k as u32)
            } else {
                x.inv()?.pow(k.unsigned_abs() as u32)
            };
            acc = &acc + &(c * &xp);
        }
        Ok(acc)
    }

    /// Applies `f` to every coefficient (for field automorphisms and the like).
    pub fn map_coeffs(&self, f: impl Fn(&NfElem) -> NfElem) -> Self {
        let mut out = Self::zero(&self.field);
        for (k, c) in &self.terms {
            out.add_term(*k, f(c));
        }
        out
    }

    fn add_impl(&self, q: &Self, negate: bool) -> Self {
        let mut out = self.clone();
        for (k, c) in &q.terms {
            out.add_term(*k, if negate { -c } else { c.clone() });
        }
        out
    }

    fn mul_impl(&self, q: &Self) -> Self {
        let mut out = Self::zero(&self.field);
        for (i, a) in &self.terms {
            for (j, b) in &q.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }

    /// Canonical representative of `{±t^k·p}`: lowest exponent 0 and the
    /// constant coefficient's first nonzero rational coordinate positive.
    pub fn normalize_loop(&self) -> Result<Self> {
        let low = self.min_exp().ok_or(Error::ZeroPolynomial)?;
        let shifted = self.shift(-low);
        if shifted.coeff(0).leading_sign() < 0 {
            Ok(-shifted)
        } else {
            Ok(shifted)
        }
    }

    /// Equality up to multiplication by `±t^k`.
    pub fn loop_equal(&self, other: &Self) -> bool {
        match (self.normalize_loop(), other.normalize_loop()) {
            (Ok(a), Ok(b)) => a == b,
            (Err(_), Err(_)) => true,
            _ => false,
        }
    }

    /// Parses an arithmetic expression in `t` and the field generator, such
    /// as `-1 - (2*a^2 + 4*a + 2)*t + t^9`. Division is only by monomials.
    pub fn parse_expr(field: &Arc<NumberField>, text: &str) -> Result<Self> {
        let mut p = ExprParser {
            field,
            src: text.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }

    /// Parses the output format of [`fmt::Display`]: `(c0)*t^k0 + (c1)*t^k1 + ...`.
    ///
    /// Also accepts a bare `0`.
    pub fn parse(field: &Arc<NumberField>, text: &str) -> Result<Self> {
        let text = text.trim();
        let mut out = Self::zero(field);
        if text == "0" {
            return Ok(out);
        }
        let bad = |why: &str| Error::Parse(format!("{why} in Laurent polynomial `{text}`"));
        let mut rest = text;
        loop {
            rest = rest.trim_start();
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected `(`"))?;
            let mut depth = 1usize;
            let close = body
                .char_indices()
                .find(|&(_, ch)| {
                    match ch {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    depth == 0
                })
                .map(|(i, _)| i)
                .ok_or_else(|| bad("unbalanced parentheses"))?;
            let coeff = NfElem::parse(field, &body[..close])?;
            let after = body[close + 1..]
                .trim_start()
                .strip_prefix("*t^")
                .ok_or_else(|| bad("expected `*t^`"))?;
            let end = after
                .char_indices()
                .find(|&(i, ch)| !(ch.is_ascii_digit() || (i == 0 && ch == '-')))
                .map_or(after.len(), |(i, _)| i);
            let k: i64 = after[..end].parse().map_err(|_| bad("bad exponent"))?;
            out.add_term(k, coeff);
            rest = after[end..].trim_start();
            if rest.is_empty() {
                break;
            }
            rest = rest.strip_prefix('+').ok_or_else(|| bad("expected `+`"))?;
        }
        Ok(out)
    }
}

/// Recursive-descent parser for expressions in `t` and the field generator.
struct ExprParser<'a> {
    field: &'a Arc<NumberField>,
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn peek(&mut self) -> Option<u8> {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == b'*' {
                acc = &acc * &rhs;
            } else {
                let (k, d) = match (rhs.min_exp(), rhs.terms.len()) {
                    (Some(k), 1) => (k, rhs.coeff(k)),
                    _ => return Err(self.err("can only divide by a monomial")),
                };
                acc = acc.scale(&d.inv()?).shift(-k);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.peek();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let e: i64 = std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected exponent"))?;
        if e < 0 {
            return match (base.min_exp(), base.terms.len()) {
                (Some(k), 1) => {
                    let c = base.coeff(k).inv()?.pow(e.unsigned_abs() as u32);
                    Ok(LaurentPoly::monomial(c, k * e))
                }
                _ => Err(self.err("negative power of a non-monomial")),
            };
        }
        let mut out = LaurentPoly::one(self.field);
        for _ in 0..e {
            out = &out * &base;
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                let n: num_bigint::BigInt = s.parse().map_err(|_| self.err("bad number"))?;
                Ok(LaurentPoly::constant(NfElem::from_rational(
                    self.field,
                    Rational::from_integer(n),
                )))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .src
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                if name == "t" {
                    Ok(LaurentPoly::t(self.field))
                } else if name == self.field.generator_name() {
                    Ok(LaurentPoly::constant(NfElem::generator(self.field)))
                } else {
                    self.pos = start;
                    Err(self.err(&format!("unknown symbol `{name}`")))
                }
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.terms == other.terms
    }
}
impl Eq for LaurentPoly {}

impl fmt::Display for LaurentPoly {
    /// Terms in increasing exponent, e.g. `(1)*t^0 + (2*a^2 + 4*a + 2)*t^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("({c})*t^{k}"))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

macro_rules! lbinop {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                laurent_arith(self, rhs, $op).expect("operands in different number fields")
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

lbinop!(Add, add, LaurentOp::Add);
lbinop!(Sub, sub, LaurentOp::Sub);
lbinop!(Mul, mul, LaurentOp::Mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
