//! Propagation of Ptolemy and face variables through the layers.

use std::sync::Arc;

use crate::algebra::{NfElem, NumberField, Scalar};
use crate::bundle::{LayeredTriangulation, ObstructionData, SignedVar};
use crate::error::{Error, Result};
use crate::surface::SurfaceTriangulation;

/// Values of all `3n + N` edge variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtolemyState {
    pub values: Vec<NfElem>,
}

/// Values of all `2n + 2N` face variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaState {
    pub values: Vec<NfElem>,
}

fn signed<S: Scalar>(values: &[S], v: SignedVar) -> S {
    values[v.var].signed(v.sign)
}

/// Solves every layer's Ptolemy equation for its top variable.
///
/// Generic so that the same code runs on plain values and on dual numbers.
pub fn propagate<S: Scalar>(
    initial: Vec<S>,
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<Vec<S>> {
    let base = 3 * l.n();
    if initial.len() != base {
        return Err(Error::DimensionMismatch(format!(
            "{} initial values for {base} edges",
            initial.len()
        )));
    }
    obstruction.check_shape(l)?;
    let mut c = initial;
    for (layer, eps) in l.layers.iter().zip(&obstruction.ptolemy) {
        let ac = signed(&c, layer.a()).mul(&signed(&c, layer.c()));
        let bd = signed(&c, layer.b()).mul(&signed(&c, layer.d()));
        let num = ac.signed(eps[1]).sub(&bd.signed(eps[2]));
        let top = num.div(&c[layer.bottom].signed(eps[0]))?;
        if top.value().is_zero() {
            return Err(Error::DegenerateAssignment(format!(
                "c{} vanishes",
                layer.top
            )));
        }
        c.push(top);
    }
    Ok(c)
}

pub fn propagate_c(
    initial: &[NfElem],
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<PtolemyState> {
    if let Some(i) = initial.iter().position(NfElem::is_zero) {
        return Err(Error::DegenerateAssignment(format!("initial c{i} is zero")));
    }
    Ok(PtolemyState {
        values: propagate(initial.to_vec(), l, obstruction)?,
    })
}

/// Solves the two face equations of each layer for its new faces.
pub fn propagate_theta(
    state: &PtolemyState,
    initial_theta: &[NfElem],
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<ThetaState> {
    if initial_theta.len() != 2 * l.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} initial face values for {} faces",
            initial_theta.len(),
            2 * l.n()
        )));
    }
    if state.values.len() != l.num_edge_vars() {
        return Err(Error::DimensionMismatch(
            "Ptolemy state has the wrong length".into(),
        ));
    }
    obstruction.check_shape(l)?;
    let c = &state.values;
    let mut theta = initial_theta.to_vec();
    for (layer, s) in l.layers.iter().zip(&obstruction.faces) {
        let [fa, fb] = layer.bottom_faces;
        let inv_top = c[layer.top].inv()?;
        let first = &(&signed(c, layer.b()).signed(s[0][0]) * &theta[fa])
            + &(&signed(c, layer.c()).signed(s[0][1]) * &theta[fb]);
        let second = &(&signed(c, layer.a()).signed(s[1][0]) * &theta[fa])
            + &(&signed(c, layer.d()).signed(s[1][1]) * &theta[fb]);
        theta.push(&second * &inv_top);
        theta.push(-(&first * &inv_top));
    }
    Ok(ThetaState { values: theta })
}

/// The signed top-layer variables identified with the bottom edges.
pub fn closure_image<S: Scalar>(values: &[S], l: &LayeredTriangulation) -> Vec<S> {
    l.closure
        .edge_map
        .iter()
        .map(|&v| signed(values, v))
        .collect()
}

/// The signed top-layer face variables identified with the bottom faces.
pub fn closure_image_theta<S: Scalar>(
    values: &[S],
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Vec<S> {
    l.closure
        .face_map
        .iter()
        .zip(&obstruction.closure_faces)
        .map(|(&v, &s)| signed(values, v).signed(s))
        .collect()
}

/// `c'_i − c_i` for every bottom edge.
pub fn closure_residual_c(state: &PtolemyState, l: &LayeredTriangulation) -> Vec<NfElem> {
    closure_image(&state.values, l)
        .iter()
        .zip(&state.values)
        .map(|(a, b)| a - b)
        .collect()
}

/// `θ'_j − θ_j` for every bottom face.
pub fn closure_residual_theta(
    theta: &ThetaState,
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Vec<NfElem> {
    closure_image_theta(&theta.values, l, obstruction)
        .iter()
        .zip(&theta.values)
        .map(|(a, b)| a - b)
        .collect()
}

/// Propagates and checks that the assignment closes up.
pub fn verified_state(
    initial: &[NfElem],
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<PtolemyState> {
    let state = propagate_c(initial, l, obstruction)?;
    if let Some(i) = closure_residual_c(&state, l)
        .iter()
        .position(|r| !r.is_zero())
    {
        return Err(Error::ResidualNonzero(i));
    }
    Ok(state)
}

/// `(k^{d_1} c_1, …, k^{d_m} c_m)`.
pub fn scaling_act(initial: &[NfElem], k: &NfElem, d: &[u32]) -> Result<Vec<NfElem>> {
    if k.is_zero() {
        return Err(Error::ZeroScalar);
    }
    if d.len() != initial.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} exponents for {} values",
            d.len(),
            initial.len()
        )));
    }
    Ok(initial.iter().zip(d).map(|(c, &e)| c * &k.pow(e)).collect())
}

/// Number of endpoints of each edge lying at `puncture`.
pub fn puncture_exponents(surface: &SurfaceTriangulation, puncture: usize) -> Vec<u32> {
    surface
        .edge_endpoints()
        .iter()
        .map(|&(u, v)| u32::from(u == puncture) + u32::from(v == puncture))
        .collect()
}

/// A number field with initial Ptolemy values and optional face values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub field: Arc<NumberField>,
    pub c: Vec<NfElem>,
    pub theta: Option<Vec<NfElem>>,
}

impl Solution {
    /// Parses a field header line followed by `c = [...]` and optionally
    /// `theta = [...]`, entries written as polynomials in the generator.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty solution file".into()))?;
        let field = NumberField::parse(header)?;
        let mut c = None;
        let mut theta = None;
        for line in lines {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `name = [...]`, got `{line}`")))?;
            let body = value
                .trim()
                .strip_prefix('[')
                .and_then(|v| v.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("expected a bracketed list in `{line}`")))?;
            let list = body
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| NfElem::parse(&field, p))
                .collect::<Result<Vec<_>>>()?;
            match key.trim() {
                "c" => c = Some(list),
                "theta" => theta = Some(list),
                other => return Err(Error::Parse(format!("unknown solution key `{other}`"))),
            }
        }
        let c = c.ok_or_else(|| Error::Parse("missing `c = [...]`".into()))?;
        Ok(Self { field, c, theta })
    }

    pub fn to_text(&self) -> String {
        let list = |v: &[NfElem]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut out = format!("{}\nc = [{}]\n", self.field.header(), list(&self.c));
        if let Some(t) = &self.theta {
            out.push_str(&format!("theta = [{}]\n", list(t)));
        }
        out
    }

    /// Applies `f` to every value, e.g. a field automorphism.
    pub fn map(&self, f: impl Fn(&NfElem) -> NfElem) -> Self {
        Self {
            field: self.field.clone(),
            c: self.c.iter().map(&f).collect(),
            theta: self.theta.as_ref().map(|t| t.iter().map(&f).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_eval, rat, Circuit};
    use crate::bundle::ObstructionData;
    use crate::fixtures;

    #[test]
    fn first_top_value_matches_hand_formula() {
        let l = fixtures::m036_layered();
        let triv = ObstructionData::trivial(&l);
        let k = NumberField::rationals();
        let c: Vec<NfElem> = [2, 3, 5, 7, 11, 13, 17, 19, 23]
            .iter()
            .map(|&x| NfElem::from_int(&k, x))
            .collect();
        let s = propagate_c(&c, &l, &triv).unwrap();
        // c9 = (c2·c6 + c4·c7)/c8
        let expect = (&(&c[2] * &c[6]) + &(&c[4] * &c[7]))
            .try_div(&c[8])
            .unwrap();
        assert_eq!(s.values[9], expect);
        assert_eq!(s.values.len(), 13);
    }

    #[test]
    fn gradient_of_first_top_value() {
        // d/dc_j of (c2·c6 + c4·c7)/c8 by the quotient rule, written out.
        let k = NumberField::rationals();
        let f = Circuit::var(2)
            .mul(Circuit::var(6))
            .add(Circuit::var(4).mul(Circuit::var(7)))
            .div(Circuit::var(8));
        let pt: Vec<NfElem> = (1..=9).map(|x| NfElem::from_int(&k, x)).collect();
        let d = dual_eval(&f, &pt, &[2, 4, 6, 7, 8]).unwrap();
        let v = |i: usize| pt[i].coords()[0].clone();
        let num = v(2) * v(6) + v(4) * v(7);
        let expect = [
            v(6) / v(8),
            v(7) / v(8),
            v(2) / v(8),
            v(4) / v(8),
            -num / (v(8) * v(8)),
        ];
        for (got, want) in d.partials.iter().zip(expect) {
            assert_eq!(got.coords()[0], want);
        }
    }

    #[test]
    fn fixtures_close_up() {
        let l = fixtures::m036_layered();
        let triv = ObstructionData::trivial(&l);
        let signed = fixtures::m036_signed_obstruction(&l);
        let ts = fixtures::m036_trivial_solution();
        let ss = fixtures::m036_signed_solution();
        let st = propagate_c(&ts.c, &l, &triv).unwrap();
        assert!(closure_residual_c(&st, &l).iter().all(NfElem::is_zero));
        let sg = propagate_c(&ss.c, &l, &signed).unwrap();
        assert!(closure_residual_c(&sg, &l).iter().all(NfElem::is_zero));
        // The trivial-class values do not solve the signed equations.
        let cross = propagate_c(&ts.c, &l, &signed).unwrap();
        assert!(closure_residual_c(&cross, &l).iter().any(|r| !r.is_zero()));
    }

    #[test]
    fn first_face_value_matches_hand_formula() {
        let l = fixtures::m036_layered();
        let triv = ObstructionData::trivial(&l);
        let s = fixtures::m036_trivial_solution();
        let st = propagate_c(&s.c, &l, &triv).unwrap();
        let k = &s.field;
        let th: Vec<NfElem> = (0..6).map(|i| NfElem::from_int(k, 3 * i + 1)).collect();
        let out = propagate_theta(&st, &th, &l, &triv).unwrap();
        let c = &st.values;
        // θ6 = (c6·θ5 − c4·θ0)/c9
        let expect = (&(&c[6] * &th[5]) - &(&c[4] * &th[0]))
            .try_div(&c[9])
            .unwrap();
        assert_eq!(out.values[6], expect);
        let zero = vec![NfElem::zero(k); 6];
        let z = propagate_theta(&st, &zero, &l, &triv).unwrap();
        assert!(z.values.iter().all(NfElem::is_zero));
    }

    #[test]
    fn uniform_scaling_keeps_the_fixture_a_solution() {
        let l = fixtures::m036_layered();
        let triv = ObstructionData::trivial(&l);
        let s = fixtures::m036_trivial_solution();
        let d = puncture_exponents(&l.base, 0);
        assert_eq!(d, vec![2; 9]);
        let k = NfElem::parse(&s.field, "b + 3").unwrap();
        let scaled = scaling_act(&s.c, &k, &d).unwrap();
        let st = propagate_c(&scaled, &l, &triv).unwrap();
        assert!(closure_residual_c(&st, &l).iter().all(NfElem::is_zero));
        let mut bumped = s.c.clone();
        bumped[4] = &bumped[4] * &k;
        let sb = propagate_c(&bumped, &l, &triv).unwrap();
        assert!(closure_residual_c(&sb, &l).iter().any(|r| !r.is_zero()));
    }

    #[test]
    fn scaling_errors_and_identity() {
        let k = NumberField::rationals();
        let c = vec![NfElem::from_int(&k, 5); 3];
        assert_eq!(scaling_act(&c, &NfElem::one(&k), &[0, 1, 2]).unwrap(), c);
        assert_eq!(
            scaling_act(&c, &NfElem::zero(&k), &[0, 1, 2]),
            Err(Error::ZeroScalar)
        );
        let two = NfElem::from_rational(&k, rat(2));
        let out = scaling_act(&c, &two, &[0, 1, 2]).unwrap();
        assert_eq!(out[2], NfElem::from_int(&k, 20));
    }

    #[test]
    fn degenerate_assignments_are_reported() {
        let l = fixtures::m036_layered();
        let triv = ObstructionData::trivial(&l);
        let k = NumberField::rationals();
        let mut c = vec![NfElem::one(&k); 9];
        assert!(propagate_c(&c, &l, &triv).is_ok());
        c[3] = NfElem::zero(&k);
        assert!(matches!(
            propagate_c(&c, &l, &triv),
            Err(Error::DegenerateAssignment(_))
        ));
        // c2·c6 + c4·c7 = 0 forces c9 = 0.
        let mut c = vec![NfElem::one(&k); 9];
        c[7] = NfElem::from_int(&k, -1);
        assert!(matches!(
            propagate_c(&c, &l, &triv),
            Err(Error::DegenerateAssignment(_))
        ));
    }

    #[test]
    fn solution_text_round_trip() {
        let s = fixtures::m036_signed_solution();
        assert_eq!(Solution::parse(&s.to_text()).unwrap(), s);
        assert!(Solution::parse("field: K; minpoly: x^2 - 2\nd = [1]").is_err());
    }
}
