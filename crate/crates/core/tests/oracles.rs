//! Fixed values computed by hand or from independent formulas.

use cpstokes_core::exact::{frac, int, Matrix};
use cpstokes_core::group::Variant;
use cpstokes_core::invariant::group_invariant;
use cpstokes_core::levelt::{cp_h1_charpoly, cp_levelt};
use cpstokes_core::mellin::mellin_exponents;
use cpstokes_core::mutation::chi_matrix;
use cpstokes_core::numeric::{companion_system, loop_monodromy, zeta_loop_zero, Plane};
use cpstokes_core::series::{evaluate_i0, series_coefficients};
use cpstokes_core::stokes::stokes_matrix;
use num_bigint::BigInt;

#[test]
fn stokes_k4_by_hand() {
    let s = stokes_matrix(4).unwrap();
    assert_eq!(
        s.s,
        Matrix::from_i64_rows(&[
            &[1, 0, 0, 0],
            &[-4, 1, 0, 0],
            &[6, -4, 1, 0],
            &[-4, 6, -4, 1]
        ])
    );
}

#[test]
fn stokes_k3_by_hand() {
    let s = stokes_matrix(3).unwrap();
    assert_eq!(
        s.s,
        Matrix::from_i64_rows(&[&[1, 0, 0], &[-3, 1, 0], &[3, -3, 1]])
    );
    // S + S^T is the Gram matrix with diagonal 2
    let g = &s.s + &s.s.transpose();
    assert_eq!(
        g,
        Matrix::from_i64_rows(&[&[2, -3, 3], &[-3, 2, -3], &[3, -3, 2]])
    );
}

#[test]
fn euler_matrix_k4_by_hand() {
    // chi(O(-j), O(-i)) = h^0(O(i - j)) on P^3
    let chi = chi_matrix(4).unwrap();
    assert_eq!(
        chi,
        Matrix::from_i64_rows(&[
            &[1, 0, 0, 0],
            &[4, 1, 0, 0],
            &[10, 4, 1, 0],
            &[20, 10, 4, 1]
        ])
    );
    assert!((&chi * &stokes_matrix(4).unwrap().s).is_identity());
}

#[test]
fn h1_k3_by_hand() {
    let t = cp_levelt(3).unwrap();
    assert_eq!(t.h1.column(0), vec![int(1), int(-3), int(3)]);
    assert_eq!(
        t.h1.charpoly().unwrap(),
        vec![int(1), int(-3), int(3), int(-1)]
    );
    // (t - 1)^3 (t + 1)
    assert_eq!(
        cp_h1_charpoly(4),
        vec![int(1), int(-2), int(0), int(2), int(-1)]
    );
}

#[test]
fn invariant_k2_twisted() {
    let x = group_invariant(2, Variant::Twisted).unwrap();
    assert_eq!(
        x.single().unwrap(),
        &Matrix::from_i64_rows(&[&[0, 1], &[-1, 0]])
    );
}

#[test]
fn multinomial_coefficients() {
    // (3m)! / (m!)^3
    let want: Vec<BigInt> = [1u64, 6, 90, 1680, 34650, 756756]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    assert_eq!(series_coefficients(3, 5).unwrap().coeffs, want);
    // central binomials
    let want: Vec<BigInt> = [1u64, 2, 6, 20, 70, 252]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    assert_eq!(series_coefficients(2, 5).unwrap().coeffs, want);
}

#[test]
fn central_binomial_generating_function() {
    // sum C(2m, m) s^m = (1 - 4 s)^{-1/2}; at s = 1/8 this is sqrt 2
    let e = evaluate_i0(2, &frac(1, 8), 40).unwrap();
    assert!(!e.radius_warning);
    assert!((e.value - core::f64::consts::SQRT_2).abs() <= e.tail_bound);
    assert!(e.tail_bound < 1e-10);
}

#[test]
fn mellin_forms_k2() {
    let f: Vec<String> = mellin_exponents(2)
        .unwrap()
        .iter()
        .map(|f| f.to_string())
        .collect();
    assert_eq!(
        f,
        [
            "z + i_0 - v_2 + 1",
            "z + i_1 - v_2 + 1",
            "-2*z - i_0 - i_1 + v_1 + 2*v_2 - 2",
            "-z + v_2",
            "z"
        ]
    );
}

#[test]
fn numeric_loop_around_zero_k3() {
    let sys = companion_system(3, Plane::Zeta).unwrap();
    let m = loop_monodromy(&sys, &zeta_loop_zero(), 1e-10).unwrap();
    let cp = m.charpoly();
    let want = [1.0, 0.0, 0.0, -1.0];
    for (a, b) in cp.iter().zip(want) {
        assert!((a - b).norm() < 1e-6);
    }
}
