//! Twisted Jacobians and their determinants: the 1-loop polynomials `δ₂, δ₃`
//! and the torsion polynomials `τ₂, τ₃`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{det_laurent, Dual, LaurentPoly, Matrix, NfElem, Rational, Scalar};
use crate::bundle::{FaceEquation, LayeredTriangulation, ObstructionData, PtolemyEquation};
use crate::error::{Error, Result};
use crate::ptolemy::{closure_image, closure_image_theta, propagate, verified_state, PtolemyState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    FullMatrix,
    ReducedJacobian,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::FullMatrix => "full_matrix",
            Method::ReducedJacobian => "reduced_jacobian",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionResult {
    pub n: u32,
    /// Canonical representative up to `±t^k`.
    pub polynomial: LaurentPoly,
    /// The determinant before normalization.
    pub raw: LaurentPoly,
    pub method: Method,
    pub obstruction: String,
}

/// Machine-readable form of a [`TorsionResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub n: u32,
    pub method: Method,
    pub obstruction: String,
    pub field: String,
    pub min_exp: i64,
    pub max_exp: i64,
    /// Coefficients of `t^min_exp ..= t^max_exp` as polynomials in the generator.
    pub coefficients: Vec<String>,
    pub polynomial: String,
}

impl TorsionResult {
    fn new(
        n: u32,
        raw: LaurentPoly,
        method: Method,
        obstruction: &ObstructionData,
    ) -> Result<Self> {
        Ok(Self {
            n,
            polynomial: raw.normalize_loop()?,
            raw,
            method,
            obstruction: if obstruction.is_trivial() {
                "trivial".into()
            } else {
                "signed".into()
            },
        })
    }

    pub fn report(&self) -> TorsionReport {
        let p = &self.polynomial;
        let (lo, hi) = (p.min_exp().unwrap_or(0), p.max_exp().unwrap_or(0));
        TorsionReport {
            n: self.n,
            method: self.method,
            obstruction: self.obstruction.clone(),
            field: p.field().header(),
            min_exp: lo,
            max_exp: hi,
            coefficients: (lo..=hi).map(|k| p.coeff(k).to_string()).collect(),
            polynomial: p.to_string(),
        }
    }

    /// The polynomial's value at `t = 1`.
    pub fn value_at_one(&self) -> NfElem {
        let one = NfElem::one(self.polynomial.field());
        self.polynomial.eval(&one).expect("1 is invertible")
    }
}

fn char_poly(m: &[Vec<NfElem>]) -> Result<LaurentPoly> {
    let size = m.len();
    let field = m[0][0].field().clone();
    let tm = Matrix::from_fn(size, size, |i, j| {
        let entry = LaurentPoly::constant(-&m[i][j]);
        if i == j {
            &entry + &LaurentPoly::t(&field)
        } else {
            entry
        }
    });
    det_laurent(&tm)
}

/// The Jacobian `∂c'_i/∂c_j` of propagation followed by the closure map.
pub fn monodromy_jacobian(
    state: &PtolemyState,
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<Vec<Vec<NfElem>>> {
    let m = 3 * l.n();
    let initial = state.values[..m]
        .iter()
        .enumerate()
        .map(|(i, v)| Dual::variable(v.clone(), i, m))
        .collect();
    let values = propagate(initial, l, obstruction)?;
    Ok(closure_image(&values, l)
        .into_iter()
        .map(|d| d.partials)
        .collect())
}

/// The matrix of the linear map `θ ↦ θ'` on the bottom faces.
pub fn theta_monodromy(
    state: &PtolemyState,
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<Vec<Vec<NfElem>>> {
    let m = 2 * l.n();
    let field = state.values[0].field();
    let mut cols = Vec::with_capacity(m);
    for j in 0..m {
        let basis: Vec<NfElem> = (0..m)
            .map(|i| {
                if i == j {
                    NfElem::one(field)
                } else {
                    NfElem::zero(field)
                }
            })
            .collect();
        let theta = crate::ptolemy::propagate_theta(state, &basis, l, obstruction)?;
        cols.push(closure_image_theta(&theta.values, l, obstruction));
    }
    Ok((0..m)
        .map(|i| (0..m).map(|j| cols[j][i].clone()).collect())
        .collect())
}

/// `τ₃` as `det(tI − J)` of the monodromy Jacobian.
pub fn torsion3_reduced(
    initial_c: &[NfElem],
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<TorsionResult> {
    let state = verified_state(initial_c, l, obstruction)?;
    let j = monodromy_jacobian(&state, l, obstruction)?;
    TorsionResult::new(3, char_poly(&j)?, Method::ReducedJacobian, obstruction)
}

/// `τ₂` as `det(tI − L)` of the face-variable monodromy.
pub fn torsion2_reduced(
    initial_c: &[NfElem],
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<TorsionResult> {
    let state = verified_state(initial_c, l, obstruction)?;
    let m = theta_monodromy(&state, l, obstruction)?;
    TorsionResult::new(2, char_poly(&m)?, Method::ReducedJacobian, obstruction)
}

/// Adds `t·x_i − sign·x_target` identification rows.
fn identification_rows(
    rows: &mut Vec<Vec<LaurentPoly>>,
    width: usize,
    targets: impl Iterator<Item = (usize, i32)>,
    field: &std::sync::Arc<crate::algebra::NumberField>,
) {
    for (i, (target, sign)) in targets.enumerate() {
        let mut row = vec![LaurentPoly::zero(field); width];
        row[i] = LaurentPoly::t(field);
        let entry = LaurentPoly::constant(NfElem::from_int(field, -i64::from(sign)));
        row[target] = &row[target] + &entry;
        rows.push(row);
    }
}

/// The full `(3n+N)`-square block matrix: identification rows followed by
/// the gradients of `P_i / c_{B(i)}`, all variables independent.
pub fn oneloop3_matrix(
    state: &PtolemyState,
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<Matrix<LaurentPoly>> {
    let width = l.num_edge_vars();
    let c = &state.values;
    let field = c[0].field().clone();
    let mut rows = Vec::with_capacity(width);
    identification_rows(
        &mut rows,
        width,
        l.closure.edge_map.iter().map(|v| (v.var, v.sign)),
        &field,
    );
    for eq in l.ptolemy_equations(obstruction) {
        let PtolemyEquation { monomials } = eq;
        let inv_b = c[monomials[0].2].inv()?;
        let mut grad = vec![NfElem::zero(&field); width];
        for (s, x, y) in monomials {
            let coef = NfElem::from_int(&field, i64::from(s));
            grad[x] = &grad[x] + &(&coef * &c[y]);
            grad[y] = &grad[y] + &(&coef * &c[x]);
        }
        rows.push(
            grad.iter()
                .map(|g| LaurentPoly::constant(g * &inv_b))
                .collect(),
        );
    }
    Matrix::new(width, width, rows.into_iter().flatten().collect())
}

/// The full `(2n+2N)`-square block matrix: identification rows followed by
/// the gradients of `E / c_{T(i)}` in the face variables.
pub fn oneloop2_matrix(
    state: &PtolemyState,
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<Matrix<LaurentPoly>> {
    let width = l.num_face_vars();
    let c = &state.values;
    let field = c[0].field().clone();
    let mut rows = Vec::with_capacity(width);
    identification_rows(
        &mut rows,
        width,
        l.closure
            .face_map
            .iter()
            .zip(&obstruction.closure_faces)
            .map(|(v, s)| (v.var, v.sign * s)),
        &field,
    );
    for eq in l.face_equations(obstruction) {
        let FaceEquation { terms } = eq;
        let inv_top = c[terms[0].1].inv()?;
        let mut grad = vec![NfElem::zero(&field); width];
        for (s, e, f) in terms {
            grad[f] = &grad[f] + &c[e].signed(s);
        }
        rows.push(
            grad.iter()
                .map(|g| LaurentPoly::constant(g * &inv_top))
                .collect(),
        );
    }
    Matrix::new(width, width, rows.into_iter().flatten().collect())
}

/// `δ₃` from the full block matrix.
pub fn oneloop3_full(
    initial_c: &[NfElem],
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<TorsionResult> {
    let state = verified_state(initial_c, l, obstruction)?;
    let m = oneloop3_matrix(&state, l, obstruction)?;
    TorsionResult::new(3, det_laurent(&m)?, Method::FullMatrix, obstruction)
}

/// `δ₂` from the full block matrix.
pub fn oneloop2_full(
    initial_c: &[NfElem],
    l: &LayeredTriangulation,
    obstruction: &ObstructionData,
) -> Result<TorsionResult> {
    let state = verified_state(initial_c, l, obstruction)?;
    let m = oneloop2_matrix(&state, l, obstruction)?;
    TorsionResult::new(2, det_laurent(&m)?, Method::FullMatrix, obstruction)
}

/// `span(p) / n`, the lower bound on the Thurston norm of the fibered class.
pub fn norm_lower_bound(p: &LaurentPoly, n: u32) -> Result<Rational> {
    let span = p.span().ok_or(Error::ZeroPolynomial)?;
    Ok(Rational::new(span.into(), i64::from(n).into()))
}
