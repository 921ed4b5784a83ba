//! Forward-mode exact differentiation over a number field.

use std::sync::Arc;

use super::field::{NfElem, NumberField};
use crate::error::{Error, Result};

/// Field-like values that propagation code can run on: plain field elements
/// or dual numbers carrying a gradient.
pub trait Scalar: Clone {
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    /// The underlying field value.
    fn value(&self) -> &NfElem;

    fn signed(&self, sign: i32) -> Self {
        if sign < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl Scalar for NfElem {
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        self.try_div(rhs)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn value(&self) -> &NfElem {
        self
    }
}

/// A value together with its partial derivatives in a fixed set of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dual {
    pub value: NfElem,
    pub partials: Vec<NfElem>,
}

impl Dual {
    pub fn constant(value: NfElem, width: usize) -> Self {
        let zero = NfElem::zero(value.field());
        Self {
            value,
            partials: vec![zero; width],
        }
    }

    /// The `slot`-th of `width` independent variables, sitting at `value`.
    pub fn variable(value: NfElem, slot: usize, width: usize) -> Self {
        let mut out = Self::constant(value, width);
        out.partials[slot] = NfElem::one(out.value.field());
        out
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.value.field()
    }
}

impl Scalar for Dual {
    fn add(&self, rhs: &Self) -> Self {
        Self {
            value: &self.value + &rhs.value,
            partials: self
                .partials
                .iter()
                .zip(&rhs.partials)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self {
            value: &self.value - &rhs.value,
            partials: self
                .partials
                .iter()
                .zip(&rhs.partials)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Self {
            value: &self.value * &rhs.value,
            partials: self
                .partials
                .iter()
                .zip(&rhs.partials)
                .map(|(a, b)| &(a * &rhs.value) + &(&self.value * b))
                .collect(),
        }
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.value.inv()?;
        let q = &self.value * &inv;
        Ok(Self {
            partials: self
                .partials
                .iter()
                .zip(&rhs.partials)
                .map(|(a, b)| &(a - &(&q * b)) * &inv)
                .collect(),
            value: q,
        })
    }

    fn neg(&self) -> Self {
        Self {
            value: -&self.value,
            partials: self.partials.iter().map(|a| -a).collect(),
        }
    }

    fn value(&self) -> &NfElem {
        &self.value
    }
}

/// A rational expression in indexed variables.
#[derive(Debug, Clone)]
pub enum Circuit {
    Var(usize),
    Const(NfElem),
    Add(Box<Circuit>, Box<Circuit>),
    Sub(Box<Circuit>, Box<Circuit>),
    Mul(Box<Circuit>, Box<Circuit>),
    Div(Box<Circuit>, Box<Circuit>),
    Neg(Box<Circuit>),
}

#[allow(clippy::should_implement_trait)]
impl Circuit {
    pub fn var(i: usize) -> Self {
        Circuit::Var(i)
    }

    pub fn add(self, rhs: Self) -> Self {
        Circuit::Add(Box::new(self), Box::new(rhs))
    }

    pub fn sub(self, rhs: Self) -> Self {
        Circuit::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn mul(self, rhs: Self) -> Self {
        Circuit::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn div(self, rhs: Self) -> Self {
        Circuit::Div(Box::new(self), Box::new(rhs))
    }

    pub fn neg(self) -> Self {
        Circuit::Neg(Box::new(self))
    }

    fn eval<S: Scalar>(&self, vars: &[S], constant: &impl Fn(&NfElem) -> S) -> Result<S> {
        Ok(match self {
            Circuit::Var(i) => vars
                .get(*i)
                .cloned()
                .ok_or_else(|| Error::DimensionMismatch(format!("variable {i} out of range")))?,
            Circuit::Const(c) => constant(c),
            Circuit::Add(a, b) => a.eval(vars, constant)?.add(&b.eval(vars, constant)?),
            Circuit::Sub(a, b) => a.eval(vars, constant)?.sub(&b.eval(vars, constant)?),
            Circuit::Mul(a, b) => a.eval(vars, constant)?.mul(&b.eval(vars, constant)?),
            Circuit::Div(a, b) => a.eval(vars, constant)?.div(&b.eval(vars, constant)?)?,
            Circuit::Neg(a) => a.eval(vars, constant)?.neg(),
        })
    }
}

/// Evaluates `f` at `point` along with its gradient in the `active` variables.
pub fn dual_eval(f: &Circuit, point: &[NfElem], active: &[usize]) -> Result<Dual> {
    let width = active.len();
    let vars: Vec<Dual> = point
        .iter()
        .enumerate()
        .map(|(i, v)| match active.iter().position(|&a| a == i) {
            Some(slot) => Dual::variable(v.clone(), slot, width),
            None => Dual::constant(v.clone(), width),
        })
        .collect();
    f.eval(&vars, &|c| Dual::constant(c.clone(), width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::ratio;

    fn ints(k: &Arc<NumberField>, xs: &[i64]) -> Vec<NfElem> {
        xs.iter().map(|&x| NfElem::from_int(k, x)).collect()
    }

    #[test]
    fn product_rule() {
        let k = NumberField::rationals();
        let f = Circuit::var(0).mul(Circuit::var(1));
        let d = dual_eval(&f, &ints(&k, &[2, 3]), &[0, 1]).unwrap();
        assert_eq!(d.value, NfElem::from_int(&k, 6));
        assert_eq!(d.partials, ints(&k, &[3, 2]));
    }

    #[test]
    fn quotient_rule() {
        let k = NumberField::rationals();
        let f = Circuit::var(0).div(Circuit::var(1));
        let d = dual_eval(&f, &ints(&k, &[1, 2]), &[0, 1]).unwrap();
        let r = |n, m| NfElem::from_rational(&k, ratio(n, m));
        assert_eq!(d.value, r(1, 2));
        assert_eq!(d.partials, vec![r(1, 2), r(-1, 4)]);
    }

    #[test]
    fn inactive_variables_and_division_by_zero() {
        let k = NumberField::rationals();
        let f = Circuit::var(0).sub(Circuit::var(1)).neg();
        let d = dual_eval(&f, &ints(&k, &[4, 9]), &[1]).unwrap();
        assert_eq!(d.value, NfElem::from_int(&k, 5));
        assert_eq!(d.partials, ints(&k, &[1]));
        let g = Circuit::var(0).div(Circuit::var(1).sub(Circuit::var(1)));
        assert_eq!(
            dual_eval(&g, &ints(&k, &[1, 1]), &[0]),
            Err(Error::DivisionByZero)
        );
    }
}
