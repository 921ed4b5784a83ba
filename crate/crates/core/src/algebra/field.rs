//! Number fields ℚ[x]/(f) with dense rational coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{rat, Rational};
use super::upoly::{self, Poly};
use crate::error::{Error, Result};

/// The field ℚ[x]/(f) for a monic minimal polynomial `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    name: String,
    generator: String,
    /// Coefficients of `f`, constant term first; the last entry is 1.
    minpoly: Vec<Rational>,
}

impl NumberField {
    pub fn new(name: &str, generator: &str, minpoly: Vec<Rational>) -> Result<Arc<Self>> {
        let mut f = minpoly;
        upoly::trim(&mut f);
        let d = upoly::degree(&f).unwrap_or(0);
        if d == 0 {
            return Err(Error::InvalidField(
                "minimal polynomial must have degree >= 1".into(),
            ));
        }
        if !f[d].is_one() {
            return Err(Error::InvalidField(
                "minimal polynomial must be monic".into(),
            ));
        }
        if generator.is_empty()
            || !generator
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(Error::InvalidField(format!(
                "bad generator name `{generator}`"
            )));
        }
        Ok(Arc::new(Self {
            name: name.to_string(),
            generator: generator.to_string(),
            minpoly: f,
        }))
    }

    /// ℚ itself, presented as ℚ[x]/(x).
    pub fn rationals() -> Arc<Self> {
        Self::new("QQ", "x", vec![rat(0), rat(1)]).expect("x is monic")
    }

    /// Parses `field: <name>; minpoly: <poly in x>[; generator: <sym>]`.
    ///
    /// The generator symbol used for elements defaults to `a`.
    pub fn parse(header: &str) -> Result<Arc<Self>> {
        let mut name = None;
        let mut minpoly = None;
        let mut generator = "a".to_string();
        for part in header.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `key: value` in `{part}`")))?;
            match key.trim() {
                "field" => name = Some(value.trim().to_string()),
                "minpoly" => minpoly = Some(upoly::parse(value, "x")?),
                "generator" => generator = value.trim().to_string(),
                other => return Err(Error::Parse(format!("unknown field header key `{other}`"))),
            }
        }
        let name = name.ok_or_else(|| Error::Parse("missing `field:`".into()))?;
        let minpoly = minpoly.ok_or_else(|| Error::Parse("missing `minpoly:`".into()))?;
        Self::new(&name, &generator, minpoly)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator_name(&self) -> &str {
        &self.generator
    }

    pub fn minimal_polynomial(&self) -> &[Rational] {
        &self.minpoly
    }

    /// Header line in the text format accepted by [`NumberField::parse`].
    pub fn header(&self) -> String {
        format!(
            "field: {}; minpoly: {}; generator: {}",
            self.name,
            upoly::format(&self.minpoly, "x"),
            self.generator
        )
    }

    /// Reduces an arbitrary polynomial modulo the minimal polynomial.
    fn reduce(&self, mut p: Poly) -> Vec<Rational> {
        let d = self.degree();
        while p.len() > d {
            let c = p.pop().expect("nonempty");
            if c.is_zero() {
                continue;
            }
            let base = p.len() - d;
            for (i, m) in self.minpoly[..d].iter().enumerate() {
                p[base + i] -= &c * m;
            }
        }
        p.resize(d, Rational::zero());
        p
    }
}

/// An element of a [`NumberField`], stored as coordinates in the power basis.
#[derive(Debug, Clone)]
pub struct NfElem {
    field: Arc<NumberField>,
    coords: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field arithmetic; `Div` returns the unique `c` with `b·c = a`.
pub fn nf_arith(a: &NfElem, b: &NfElem, op: ArithOp) -> Result<NfElem> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

pub(crate) fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a.minpoly == b.minpoly
}

impl NfElem {
    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self {
            field: field.clone(),
            coords: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<NumberField>, q: Rational) -> Self {
        let mut out = Self::zero(field);
        out.coords[0] = q;
        out
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, rat(n))
    }

    /// The class of `x`. In ℚ = ℚ[x]/(x) this is zero.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        Ok(Self {
            field: field.clone(),
            coords,
        })
    }

    /// Reduces any rational polynomial in the generator into the field.
    pub fn from_poly(field: &Arc<NumberField>, poly: Vec<Rational>) -> Self {
        Self {
            field: field.clone(),
            coords: field.reduce(poly),
        }
    }

    /// Parses a polynomial in the field's generator, e.g. `-a - a^2`.
    pub fn parse(field: &Arc<NumberField>, text: &str) -> Result<Self> {
        let p = upoly::parse(text, field.generator_name())?;
        Ok(Self::from_poly(field, p))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coords[0])
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.field.degree();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self {
            field: self.field.clone(),
            coords: self.field.reduce(prod),
        })
    }

    /// Inverse via the extended Euclidean algorithm against the minimal polynomial.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut a = self.coords.clone();
        upoly::trim(&mut a);
        let (g, s) = upoly::gcd_cofactor(&a, &self.field.minpoly);
        if g.len() != 1 {
            // The modulus is reducible and shares a factor with this element.
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_poly(&self.field, s))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(&self.field);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Applies the field homomorphism sending the generator to `image`.
    ///
    /// `image` must be a root of the minimal polynomial for this to be a
    /// homomorphism; see [`NumberField::is_root`].
    pub fn substitute_generator(&self, image: &Self) -> Result<Self> {
        let mut acc = Self::zero(image.field());
        for c in self.coords.iter().rev() {
            acc = acc.try_mul(image)?;
            acc.coords[0] += c;
        }
        Ok(acc)
    }

    /// Sign of the first nonzero coordinate: 1, -1, or 0 for zero.
    pub fn leading_sign(&self) -> i32 {
        use num_traits::Signed;
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .map_or(0, |c| if c.is_positive() { 1 } else { -1 })
    }

    pub fn to_poly_string(&self) -> String {
        let mut p = self.coords.clone();
        upoly::trim(&mut p);
        upoly::format(&p, self.field.generator_name())
    }
}

impl NumberField {
    /// True when `x` satisfies the minimal polynomial of this field.
    pub fn is_root(self: &Arc<Self>, x: &NfElem) -> bool {
        let mut acc = NfElem::zero(x.field());
        for c in self.minpoly.iter().rev() {
            acc = &acc * x;
            acc.coords[0] += c;
        }
        acc.is_zero()
    }
}

impl PartialEq for NfElem {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.coords == other.coords
    }
}
impl Eq for NfElem {}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly_string())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&NfElem> for &NfElem {
            type Output = NfElem;
            fn $method(self, rhs: &NfElem) -> NfElem {
                self.$checked(rhs)
                    .expect("operands in different number fields")
            }
        }
        impl $trait<NfElem> for NfElem {
            type Output = NfElem;
            fn $method(self, rhs: NfElem) -> NfElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&NfElem> for NfElem {
            type Output = NfElem;
            fn $method(self, rhs: &NfElem) -> NfElem {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        NfElem {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for NfElem {
    type Output = NfElem;
    fn neg(self) -> NfElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    fn beta_field() -> Arc<NumberField> {
        NumberField::parse("field: K; minpoly: x^2 - 2*x - 1; generator: b").unwrap()
    }

    #[test]
    fn beta_squared() {
        let k = beta_field();
        let b = NfElem::generator(&k);
        assert_eq!(&b * &b, NfElem::parse(&k, "2*b + 1").unwrap());
    }

    #[test]
    fn product_matches_schoolbook_reduction() {
        let k = beta_field();
        let x = NfElem::parse(&k, "b - 2").unwrap();
        let b = NfElem::generator(&k);
        // (b - 2)·b = b^2 - 2b, reduced by hand through b^2 = 2b + 1.
        let schoolbook = upoly::mul(
            &upoly::parse("x - 2", "x").unwrap(),
            &upoly::parse("x", "x").unwrap(),
        );
        let (_, rem) = upoly::divrem(&schoolbook, &k.minimal_polynomial().to_vec());
        assert_eq!(NfElem::from_poly(&k, rem), NfElem::one(&k));
        assert_eq!(nf_arith(&x, &b, ArithOp::Mul).unwrap(), NfElem::one(&k));
    }

    #[test]
    fn division_and_errors() {
        let k = beta_field();
        let a = NfElem::parse(&k, "3*b - 1/2").unwrap();
        let b = NfElem::parse(&k, "b + 7").unwrap();
        let q = nf_arith(&a, &b, ArithOp::Div).unwrap();
        assert_eq!(&q * &b, a);
        assert_eq!(
            nf_arith(&a, &NfElem::zero(&k), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        let other = NumberField::parse("field: L; minpoly: x^3 + x^2 + x - 1").unwrap();
        assert_eq!(
            nf_arith(&a, &NfElem::one(&other), ArithOp::Add),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn reducible_modulus_reports_noninvertible() {
        let k = NumberField::parse("field: R; minpoly: x^2 - 1").unwrap();
        let x = NfElem::parse(&k, "a - 1").unwrap();
        assert_eq!(x.inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(NumberField::parse("field: K; minpoly: 2*x^2 + 1").is_err());
        assert!(NumberField::parse("field: K; minpoly: 3").is_err());
        assert!(NumberField::parse("minpoly: x^2 + 1").is_err());
    }

    #[test]
    fn display_round_trip() {
        let k = NumberField::parse("field: K; minpoly: x^3 + x^2 + x - 1").unwrap();
        let e = NfElem::parse(&k, "-a - a^2 + 1/3").unwrap();
        assert_eq!(e.to_string(), "-a^2 - a + 1/3");
        assert_eq!(NfElem::parse(&k, &e.to_string()).unwrap(), e);
        assert_eq!(e.coords()[0], ratio(1, 3));
        let k2 = NumberField::parse(&k.header()).unwrap();
        assert_eq!(*k2, *k);
    }

    #[test]
    fn galois_conjugation_is_a_homomorphism() {
        let k = beta_field();
        let conj = NfElem::parse(&k, "2 - b").unwrap();
        assert!(k.is_root(&conj));
        let x = NfElem::parse(&k, "3*b - 5").unwrap();
        let y = NfElem::parse(&k, "b/2 + 1").unwrap();
        let s = |e: &NfElem| e.substitute_generator(&conj).unwrap();
        assert_eq!(s(&(&x * &y)), &s(&x) * &s(&y));
        assert_eq!(s(&(&x + &y)), &s(&x) + &s(&y));
    }
}
