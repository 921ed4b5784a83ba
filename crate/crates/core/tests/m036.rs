//! End-to-end checks on the m036 fixtures.

use std::collections::BTreeSet;

use fibertorsion::fixtures::{self, *};
use fibertorsion::*;

/// Parses `c9 c8 - c2 c6 - c4 c7` or `c2 θ0 + c9 θ7` into a set of signed
/// index pairs, normalized so the set is independent of an overall sign.
fn terms(text: &str, second: char) -> BTreeSet<(i32, usize, usize)> {
    let mut out = BTreeSet::new();
    let spaced = text.replace('-', " - ").replace('+', " + ");
    let mut sign = 1;
    let mut pending = Vec::new();
    for tok in spaced.split_whitespace() {
        match tok {
            "-" => sign = -1,
            "+" => sign = 1,
            _ => {
                let idx: usize = tok.trim_start_matches(['c', second]).parse().unwrap();
                pending.push(idx);
                if pending.len() == 2 {
                    out.insert((sign, pending[0], pending[1]));
                    pending.clear();
                    sign = 1;
                }
            }
        }
    }
    out
}

fn normalized(
    set: BTreeSet<(i32, usize, usize)>,
    symmetric: bool,
) -> BTreeSet<(i32, usize, usize)> {
    let fix = |(s, x, y): (i32, usize, usize)| {
        if symmetric && x > y {
            (s, y, x)
        } else {
            (s, x, y)
        }
    };
    let set: BTreeSet<_> = set.into_iter().map(fix).collect();
    let first = *set.iter().next().unwrap();
    if first.0 < 0 {
        set.into_iter().map(|(s, x, y)| (-s, x, y)).collect()
    } else {
        set
    }
}

fn ptolemy_sets(
    l: &LayeredTriangulation,
    o: &ObstructionData,
) -> Vec<BTreeSet<(i32, usize, usize)>> {
    l.ptolemy_equations(o)
        .iter()
        .map(|e| normalized(e.monomials.iter().copied().collect(), true))
        .collect()
}

fn face_sets(l: &LayeredTriangulation, o: &ObstructionData) -> Vec<BTreeSet<(i32, usize, usize)>> {
    l.face_equations(o)
        .iter()
        .map(|e| normalized(e.terms.iter().copied().collect(), false))
        .collect()
}

#[test]
fn flip_path_matches_listed_triangulations() {
    let phi = fixtures::m036();
    let path = phi.path().unwrap();
    let listed = [
        "[(~8, 2, ~4), (~7, ~0, ~3), (~6, ~2, 1), (~5, ~1, 0), (3, 4, 5), (6, 7, 8)]",
        "[(~8, ~4, 6), (~7, ~0, ~3), (~6, ~2, 1), (~5, ~1, 0), (2, 8, 7), (3, 4, 5)]",
        "[(~8, ~4, 6), (~7, ~0, ~3), (~6, ~2, 1), (~5, 0, 3), (~1, 5, 4), (2, 8, 7)]",
        "[(~8, ~4, 6), (~7, ~3, 2), (~6, ~2, 1), (~5, 0, 3), (~1, 5, 4), (~0, 7, 8)]",
    ];
    for (t, want) in path.iter().zip(listed) {
        assert_eq!(t.canonical().to_string(), want);
    }
    assert!(path[4].same_triangles(&phi.source));
    assert_eq!(path.len(), 5);
}

#[test]
fn initial_triangulation_is_the_isometry_preimage() {
    let phi = fixtures::m036();
    let start = phi.initial_triangulation().unwrap();
    assert!(start
        .apply_isometry(&phi.isometry)
        .unwrap()
        .same_triangles(&phi.source));
}

#[test]
fn ptolemy_equations_trivial_class() {
    let l = m036_layered();
    let want = [
        "c9 c8 - c2 c6 - c4 c7",
        "c10 c5 + c1 c3 + c0 c4",
        "c11 c7 + c2 c0 - c3 c9",
        "c12 c4 + c1 c6 - c9 c10",
    ];
    let want: Vec<_> = want
        .iter()
        .map(|w| normalized(terms(w, 'c'), true))
        .collect();
    assert_eq!(ptolemy_sets(&l, &ObstructionData::trivial(&l)), want);
}

#[test]
fn ptolemy_equations_signed_class() {
    let l = m036_layered();
    let want = [
        "c9 c8 + c2 c6 - c4 c7",
        "c10 c5 + c1 c3 - c0 c4",
        "c11 c7 - c2 c0 - c3 c9",
        "c12 c4 + c1 c6 - c9 c10",
    ];
    let want: Vec<_> = want
        .iter()
        .map(|w| normalized(terms(w, 'c'), true))
        .collect();
    assert_eq!(ptolemy_sets(&l, &m036_signed_obstruction(&l)), want);
}

#[test]
fn face_equations_trivial_class() {
    let l = m036_layered();
    let want = [
        "c9 θ7 + c2 θ0 + c7 θ5",
        "- c9 θ6 - c4 θ0 + c6 θ5",
        "c10 θ9 - c1 θ3 + c4 θ4",
        "- c10 θ8 + c0 θ3 + c3 θ4",
        "c11 θ11 + c9 θ6 - c0 θ1",
        "- c11 θ10 + c2 θ6 - c3 θ1",
        "c12 θ13 + c10 θ8 + c6 θ7",
        "- c12 θ12 - c1 θ8 - c9 θ7",
    ];
    let want: Vec<_> = want
        .iter()
        .map(|w| normalized(terms(w, 'θ'), false))
        .collect();
    assert_eq!(face_sets(&l, &ObstructionData::trivial(&l)), want);
}

#[test]
fn face_equations_signed_class() {
    let l = m036_layered();
    let want = [
        "c9 θ7 - c2 θ0 - c7 θ5",
        "- c9 θ6 + c4 θ0 + c6 θ5",
        "c10 θ9 - c1 θ3 - c4 θ4",
        "- c10 θ8 + c0 θ3 + c3 θ4",
        "c11 θ11 - c9 θ6 + c0 θ1",
        "- c11 θ10 + c2 θ6 + c3 θ1",
        "c12 θ13 + c10 θ8 + c6 θ7",
        "- c12 θ12 - c1 θ8 - c9 θ7",
    ];
    let want: Vec<_> = want
        .iter()
        .map(|w| normalized(terms(w, 'θ'), false))
        .collect();
    assert_eq!(face_sets(&l, &m036_signed_obstruction(&l)), want);
}

#[test]
fn top_values_match_closed_forms() {
    // Closed forms of c9..c12 in the initial variables, trivial class.
    let l = m036_layered();
    let triv = ObstructionData::trivial(&l);
    let k = NumberField::rationals();
    let c: Vec<NfElem> = [3, -2, 5, 7, 11, -13, 17, 19, 23]
        .iter()
        .map(|&x| NfElem::from_int(&k, x))
        .collect();
    let s = propagate_c(&c, &l, &triv).unwrap().values;
    let q = |i: usize| c[i].coords()[0].clone();
    let c9 = (q(2) * q(6) + q(4) * q(7)) / q(8);
    let c10 = -(q(1) * q(3) + q(0) * q(4)) / q(5);
    let c11 = (q(2) * q(3) * q(6) + q(3) * q(4) * q(7) - q(0) * q(2) * q(8)) / (q(7) * q(8));
    let c12 = -(q(0) * q(4) * (q(2) * q(6) + q(4) * q(7))
        + q(1) * (q(2) * q(3) * q(6) + q(3) * q(4) * q(7) + q(5) * q(6) * q(8)))
        / (q(4) * q(5) * q(8));
    let got: Vec<_> = s[9..].iter().map(|v| v.coords()[0].clone()).collect();
    assert_eq!(got, vec![c9, c10, c11, c12]);
}

#[test]
fn torsion_polynomials() {
    let l = m036_layered();
    let triv = ObstructionData::trivial(&l);
    let signed = m036_signed_obstruction(&l);
    let ts = m036_trivial_solution();
    let ss = m036_signed_solution();

    let t2 = torsion2_reduced(&ts.c, &l, &triv).unwrap();
    assert!(t2
        .polynomial
        .loop_equal(&parse_t_poly(&ts.field, M036_TRIVIAL_TAU2).unwrap()));
    let s2 = torsion2_reduced(&ss.c, &l, &signed).unwrap();
    assert!(s2
        .polynomial
        .loop_equal(&parse_t_poly(&ss.field, M036_SIGNED_TAU2).unwrap()));
    let s3 = torsion3_reduced(&ss.c, &l, &signed).unwrap();
    assert!(s3
        .polynomial
        .loop_equal(&parse_t_poly(&ss.field, M036_SIGNED_TAU3).unwrap()));

    // The trivial-class τ3 as computed here; it vanishes at t = 1.
    let t3 = torsion3_reduced(&ts.c, &l, &triv).unwrap();
    let computed = "-1 - 4*t + 2*t^3 - t^4 + t^5 - 2*t^6 + 4*t^8 + t^9";
    assert!(t3
        .polynomial
        .loop_equal(&parse_t_poly(&ts.field, computed).unwrap()));
    assert!(t3.value_at_one().is_zero());
}

#[test]
fn torsion_rejects_non_solutions() {
    let l = m036_layered();
    let signed = m036_signed_obstruction(&l);
    let ts = m036_trivial_solution();
    assert!(matches!(
        torsion3_reduced(&ts.c, &l, &signed),
        Err(Error::ResidualNonzero(_))
    ));
}

#[test]
fn block_matrix_shapes() {
    let l = m036_layered();
    let triv = ObstructionData::trivial(&l);
    let ts = m036_trivial_solution();
    let state = propagate_c(&ts.c, &l, &triv).unwrap();
    let m3 = oneloop::oneloop3_matrix(&state, &l, &triv).unwrap();
    let m2 = oneloop::oneloop2_matrix(&state, &l, &triv).unwrap();
    assert_eq!((m3.rows(), m2.rows()), (13, 14));
    for i in 0..9 {
        let nonzero = m3.row(i).iter().filter(|p| !p.is_zero()).count();
        assert_eq!(nonzero, 2);
        assert_eq!(*m3.get(i, i), LaurentPoly::t(&ts.field));
    }
}

#[test]
fn norm_bounds() {
    let l = m036_layered();
    let triv = ObstructionData::trivial(&l);
    let ts = m036_trivial_solution();
    let t2 = torsion2_reduced(&ts.c, &l, &triv).unwrap();
    let t3 = torsion3_reduced(&ts.c, &l, &triv).unwrap();
    assert_eq!(norm_lower_bound(&t2.polynomial, 2).unwrap(), rat(3));
    assert_eq!(norm_lower_bound(&t3.polynomial, 3).unwrap(), rat(3));
    assert_eq!(
        norm_lower_bound(&LaurentPoly::one(&ts.field), 2).unwrap(),
        rat(0)
    );
    assert_eq!(
        norm_lower_bound(&LaurentPoly::zero(&ts.field), 2),
        Err(Error::ZeroPolynomial)
    );
    assert_eq!(l.base.genus(), 2);
}

#[test]
fn report_matches_polynomial() {
    let l = m036_layered();
    let signed = m036_signed_obstruction(&l);
    let ss = m036_signed_solution();
    let r = torsion2_reduced(&ss.c, &l, &signed).unwrap();
    let rep = r.report();
    assert_eq!((rep.min_exp, rep.max_exp), (0, 6));
    assert_eq!(rep.coefficients[1], "2*a^2 + 2*a + 2");
    assert_eq!(
        LaurentPoly::parse(&ss.field, &rep.polynomial).unwrap(),
        r.polynomial
    );
    assert_eq!(rep.obstruction, "signed");
}
