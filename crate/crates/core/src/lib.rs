//! Exact 1-loop and torsion polynomials of layered triangulations of fibered
//! 3-manifolds.
//!
//! A monodromy is given as a flip sequence on an ideal triangulation of a
//! punctured surface ([`surface`]). Stacking one tetrahedron per flip gives a
//! layered triangulation of the mapping torus ([`bundle`]). Ptolemy and face
//! variables are propagated through the layers ([`ptolemy`]) and the twisted
//! Jacobians are assembled and evaluated exactly ([`oneloop`]).

pub mod algebra;
pub mod bundle;
pub mod error;
pub mod fixtures;
pub mod oneloop;
pub mod ptolemy;
pub mod surface;

pub use algebra::{
    det_laurent, det_nf, dual_eval, laurent_arith, nf_arith, rat, ratio, ArithOp, Circuit, Dual,
    LaurentOp, LaurentPoly, Matrix, NfElem, NumberField, Rational, Scalar,
};
pub use bundle::{
    build_layered, cocycle_to_equation_signs, parse_dump, realize_obstruction,
    validate_obstruction, ClosureMap, FaceEquation, LayeredTriangulation, ObstructionData,
    ObstructionMode, PtolemyEquation, ShortEdgeCocycle, SignedVar, TetrahedronLayer,
};
pub use error::{Error, Result};
pub use oneloop::{
    norm_lower_bound, oneloop2_full, oneloop3_full, torsion2_reduced, torsion3_reduced, Method,
    TorsionReport, TorsionResult,
};
pub use ptolemy::{
    closure_residual_c, closure_residual_theta, propagate_c, propagate_theta, puncture_exponents,
    scaling_act, PtolemyState, Solution, ThetaState,
};
pub use surface::{
    parse_surface, Isometry, MappingClass, OrientedEdge, SurfaceTriangulation, Triangle,
};
