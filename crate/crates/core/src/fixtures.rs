//! Embedded data for the census manifold m036, fibered with a genus-two,
//! once-punctured fiber.

use std::sync::Arc;

use crate::algebra::{NfElem, NumberField};
use crate::bundle::{LayeredTriangulation, ObstructionData};
use crate::error::Result;
use crate::ptolemy::Solution;
use crate::surface::MappingClass;

pub const M036_MONODROMY: &str = "\
triangulation: [(~8, ~1, ~4), (~7, ~3, 2), (~6, ~2, 1), (~5, 0, 3), (~0, 7, 8), (4, 5, 6)]
isometry: [1, 2, 3, 4, 5, 6, 7, 8, ~0]
flips: [8, 5, 7, 4]
";

/// Trivial obstruction class, over ℚ(b) with b² = 2b + 1.
pub const M036_TRIVIAL_SOLUTION: &str = "\
field: K; minpoly: x^2 - 2*x - 1; generator: b
c = [1, 1, 1, 1, b, 1 - b, 1 - b, b - 2, -1]
";

/// Nontrivial obstruction class, over ℚ(a) with a³ + a² + a = 1.
pub const M036_SIGNED_SOLUTION: &str = "\
field: K; minpoly: x^3 + x^2 + x - 1; generator: a
c = [1, 1, 1, 1, a, -a - a^2, -a - a^2, -a, -1]
";

/// Equation-level signs of the nontrivial class.
pub const M036_SIGNED_OBSTRUCTION: &str = "\
ptolemy: [(1,-1,1), (1,1,-1), (1,-1,1), (1,1,1)]
faces: [((-1,-1),(1,-1)), ((-1,1),(1,1)), ((-1,-1),(1,-1)), ((1,1),(1,1))]
closure_faces: [1, 1, 1, 1, 1, 1]
";

pub const M036_TRIVIAL_TAU3: &str = "-1 + 4*t + 2*t^3 + t^4 + t^5 + 2*t^6 + 4*t^8 + t^9";
pub const M036_SIGNED_TAU3: &str = "-1 - (2*a^2 + 4*a + 2)*t - (4*a^2 + 6*a + 6)*t^2 - (6*a^2 + 4*a + 8)*t^3 + (2*a^2 - 4*a - 3)*t^4 + (-2*a^2 + 4*a + 3)*t^5 + (6*a^2 + 4*a + 8)*t^6 + (4*a^2 + 6*a + 6)*t^7 + (2*a^2 + 4*a + 2)*t^8 + t^9";
pub const M036_TRIVIAL_TAU2: &str = "1 - 2*t + t^2 + t^4 - 2*t^5 + t^6";
pub const M036_SIGNED_TAU2: &str = "1 + (2*a^2 + 2*a + 2)*t + (a^2 + 2*a + 4)*t^2 + (2*a^2 + 4*a + 2)*t^3 + (a^2 + 2*a + 4)*t^4 + (2*a^2 + 2*a + 2)*t^5 + t^6";

pub fn m036() -> MappingClass {
    MappingClass::parse(M036_MONODROMY).expect("embedded monodromy parses")
}

pub fn m036_layered() -> LayeredTriangulation {
    crate::bundle::build_layered(&m036()).expect("embedded monodromy closes up")
}

pub fn m036_trivial_solution() -> Solution {
    Solution::parse(M036_TRIVIAL_SOLUTION).expect("embedded solution parses")
}

pub fn m036_signed_solution() -> Solution {
    Solution::parse(M036_SIGNED_SOLUTION).expect("embedded solution parses")
}

pub fn m036_signed_obstruction(l: &LayeredTriangulation) -> ObstructionData {
    ObstructionData::parse(M036_SIGNED_OBSTRUCTION, l).expect("embedded signs parse")
}

/// Parses a polynomial in `t` with coefficients in the field, as written in
/// the constants above.
pub fn parse_t_poly(field: &Arc<NumberField>, text: &str) -> Result<crate::algebra::LaurentPoly> {
    crate::algebra::LaurentPoly::parse_expr(field, text)
}

pub fn elem(field: &Arc<NumberField>, text: &str) -> NfElem {
    NfElem::parse(field, text).expect("embedded element parses")
}
