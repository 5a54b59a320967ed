//! 2x2 complex matrices and the split gate.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Mat2 = [[Complex64; 2]; 2];

/// Slack on `|alpha| <= beta` and on the clamped radicand.
pub const SPL_SLACK: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The split gate `(1/beta) [[-r, alpha], [conj(alpha), r]]` with
/// `r = sqrt(beta^2 - |alpha|^2)`.
///
/// Applied to `|1>` it yields `(alpha |0> + r |1>) / beta`, which is how each
/// synthesizer peels one amplitude off the flag branch.
pub fn spl_matrix(alpha: Complex64, beta: f64) -> Result<Mat2> {
    let r = spl_radical(alpha, beta)?;
    let inv = 1.0 / beta;
    Ok([
        [Complex64::new(-r * inv, 0.0), alpha * inv],
        [alpha.conj() * inv, Complex64::new(r * inv, 0.0)],
    ])
}

/// `sqrt(beta^2 - |alpha|^2)`, clamped to zero inside the slack.
pub fn spl_radical(alpha: Complex64, beta: f64) -> Result<f64> {
    if beta.is_nan() || beta <= 0.0 || !beta.is_finite() || !alpha.is_finite() {
        return Err(Error::SplDomain {
            alpha_abs: alpha.norm(),
            beta,
        });
    }
    let a = alpha.norm();
    if a > beta + SPL_SLACK {
        return Err(Error::SplDomain { alpha_abs: a, beta });
    }
    // factored so that beta == |alpha| gives exactly zero
    let radicand = (beta - a) * (beta + a);
    Ok(if radicand <= 0.0 {
        0.0
    } else {
        radicand.sqrt()
    })
}

pub fn identity() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn pauli_x() -> Mat2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn dagger(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub fn scale(a: &Mat2, k: Complex64) -> Mat2 {
    [[a[0][0] * k, a[0][1] * k], [a[1][0] * k, a[1][1] * k]]
}

pub fn det(a: &Mat2) -> Complex64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn max_abs_diff(a: &Mat2, b: &Mat2) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

pub fn rz(phi: f64) -> Mat2 {
    [
        [Complex64::from_polar(1.0, -phi / 2.0), ZERO],
        [ZERO, Complex64::from_polar(1.0, phi / 2.0)],
    ]
}

pub fn ry(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
        [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
    ]
}

pub fn phase(delta: f64) -> Mat2 {
    [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, delta)]]
}

pub fn hadamard() -> Mat2 {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

/// A square root of a 2x2 unitary, itself unitary.
pub fn sqrt_unitary(u: &Mat2) -> Mat2 {
    // sqrt(M) = (M + sI) / sqrt(tr M + 2s) with s = ±sqrt(det M)
    let tr = u[0][0] + u[1][1];
    let mut s = det(u).sqrt();
    let mut t = tr + s * 2.0;
    if t.norm() < 1e-9 {
        s = -s;
        t = tr + s * 2.0;
    }
    let t = t.sqrt();
    let mut v = *u;
    v[0][0] += s;
    v[1][1] += s;
    scale(&v, t.inv())
}

/// Unitary `W` with `W X W^dagger = m` for a Hermitian reflection `m`
/// (trace zero, eigenvalues ±1).
pub fn reflection_frame(m: &Mat2) -> Mat2 {
    // columns of (I + m)/2 span the +1 eigenspace
    let p = [
        [(ONE + m[0][0]) * 0.5, m[0][1] * 0.5],
        [m[1][0] * 0.5, (ONE + m[1][1]) * 0.5],
    ];
    let c0 = p[0][0].norm_sqr() + p[1][0].norm_sqr();
    let c1 = p[0][1].norm_sqr() + p[1][1].norm_sqr();
    let (col, norm) = if c0 >= c1 {
        (0, c0.sqrt())
    } else {
        (1, c1.sqrt())
    };
    let vp = [p[0][col] / norm, p[1][col] / norm];
    let vm = [-vp[1].conj(), vp[0].conj()];
    // W = vp <+| + vm <-|
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [
        [(vp[0] + vm[0]) * h, (vp[0] - vm[0]) * h],
        [(vp[1] + vm[1]) * h, (vp[1] - vm[1]) * h],
    ]
}

/// Splits a unitary as `e^{i delta} Rz(alpha) Ry(theta) Rz(beta)`; returns
/// `(delta, alpha, theta, beta)`.
pub fn zyz(u: &Mat2) -> (f64, f64, f64, f64) {
    let delta = det(u).arg() / 2.0;
    let w = scale(u, Complex64::from_polar(1.0, -delta));
    let (a, b) = (w[0][0], w[1][0]);
    let theta = 2.0 * b.norm().atan2(a.norm());
    let sum = if a.norm() > 1e-14 {
        -2.0 * a.arg()
    } else {
        0.0
    };
    let diff = if b.norm() > 1e-14 { 2.0 * b.arg() } else { 0.0 };
    (delta, (sum + diff) / 2.0, theta, (sum - diff) / 2.0)
}

pub fn is_unitary(u: &Mat2, tol: f64) -> bool {
    max_abs_diff(&mul(&dagger(u), u), &identity()) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn assert_close(a: &Mat2, b: &Mat2, tol: f64) {
        assert!(max_abs_diff(a, b) <= tol, "{a:?} vs {b:?}");
    }

    #[test]
    fn spl_examples() {
        assert_close(
            &spl_matrix(c(0.0), 1.0).unwrap(),
            &[[c(-1.0), c(0.0)], [c(0.0), c(1.0)]],
            1e-15,
        );
        assert_close(&spl_matrix(c(1.0), 1.0).unwrap(), &pauli_x(), 1e-15);
        // (1/1)[[-sqrt(1-0.36), 0.6], [0.6, 0.8]]
        assert_close(
            &spl_matrix(c(0.6), 1.0).unwrap(),
            &[[c(-0.8), c(0.6)], [c(0.6), c(0.8)]],
            1e-15,
        );
    }

    #[test]
    fn spl_domain() {
        assert!(matches!(
            spl_matrix(c(1.1), 1.0),
            Err(Error::SplDomain { .. })
        ));
        assert!(spl_matrix(c(0.5), 0.0).is_err());
        // inside the slack the radical clamps to zero
        let m = spl_matrix(c(1.0 + 5e-13), 1.0).unwrap();
        assert_eq!(m[1][1], c(0.0));
    }

    #[test]
    fn sqrt_of_x_squares_back() {
        let v = sqrt_unitary(&pauli_x());
        assert!(is_unitary(&v, 1e-12));
        assert_close(&mul(&v, &v), &pauli_x(), 1e-12);
    }

    proptest! {
        #[test]
        fn spl_is_unitary_and_loads(re in -1.0f64..1.0, im in -1.0f64..1.0, extra in 0.0f64..2.0) {
            let alpha = Complex64::new(re, im);
            let beta = alpha.norm() + extra + 1e-3;
            let m = spl_matrix(alpha, beta).unwrap();
            prop_assert!(is_unitary(&m, 1e-12));
            let r = (beta * beta - alpha.norm_sqr()).sqrt();
            prop_assert!((m[0][1] - alpha / beta).norm() < 1e-12);
            prop_assert!((m[1][1] - c(r / beta)).norm() < 1e-12);
        }

        #[test]
        fn reflection_frame_conjugates_x(re in -1.0f64..1.0, im in -1.0f64..1.0, extra in 0.0f64..2.0) {
            let alpha = Complex64::new(re, im);
            let m = spl_matrix(alpha, alpha.norm() + extra + 1e-3).unwrap();
            let w = reflection_frame(&m);
            prop_assert!(is_unitary(&w, 1e-12));
            assert_close(&mul(&mul(&w, &pauli_x()), &dagger(&w)), &m, 1e-12);
        }

        #[test]
        fn zyz_reconstructs(a in -3.0f64..3.0, t in 0.0f64..3.1, b in -3.0f64..3.0, d in -3.0f64..3.0) {
            let u = scale(&mul(&mul(&rz(a), &ry(t)), &rz(b)), Complex64::from_polar(1.0, d));
            let (d2, a2, t2, b2) = zyz(&u);
            let v = scale(&mul(&mul(&rz(a2), &ry(t2)), &rz(b2)), Complex64::from_polar(1.0, d2));
            assert_close(&u, &v, 1e-9);
        }

        #[test]
        fn sqrt_unitary_squares_back(a in -3.0f64..3.0, t in 0.0f64..3.1, b in -3.0f64..3.0, d in -3.0f64..3.0) {
            let u = scale(&mul(&mul(&rz(a), &ry(t)), &rz(b)), Complex64::from_polar(1.0, d));
            let v = sqrt_unitary(&u);
            prop_assert!(is_unitary(&v, 1e-9));
            assert_close(&mul(&v, &v), &u, 1e-9);
        }
    }
}
