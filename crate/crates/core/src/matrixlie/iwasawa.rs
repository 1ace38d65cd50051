//! Factorization `M = b u1` with `b` upper triangular (positive diagonal) and
//! `u1` unitary, and the induced right action of `SL(n,C)` on `SU(n)`.

use nalgebra::Cholesky;

use super::linalg::{c, determinant, CMat};
use super::MatrixLieError;

/// Largest accepted condition number of the input.
pub const MAX_CONDITION: f64 = 1e12;

/// `M = b u1`. `M` must have determinant 1.
pub fn iwasawa(m: &CMat) -> Result<(CMat, CMat), MatrixLieError> {
    let n = m.nrows();
    let sv = m.singular_values();
    let cond = sv.max() / sv.min();
    if !cond.is_finite() || cond > MAX_CONDITION {
        return Err(MatrixLieError::IllConditioned { condition: cond });
    }
    let det = determinant(m);
    if (det - c(1.0)).norm() > 1e-8 {
        return Err(MatrixLieError::NotSpecialLinear { det });
    }
    // M M^dagger = b b^dagger with b upper triangular: Cholesky of the
    // index-reversed matrix, then reverse back.
    let h = m * m.adjoint();
    let flip = |x: &CMat| CMat::from_fn(n, n, |i, j| x[(n - 1 - i, n - 1 - j)]);
    let hermitian = {
        let f = flip(&h);
        (&f + f.adjoint()) * c(0.5)
    };
    let chol = Cholesky::new(hermitian).ok_or(MatrixLieError::IllConditioned { condition: cond })?;
    let b = flip(&chol.l());
    let u1 = b
        .solve_upper_triangular(m)
        .ok_or(MatrixLieError::IllConditioned { condition: cond })?;
    Ok((b, u1))
}

/// `u^g`: the unitary factor of `u g`.
pub fn g_act(u: &CMat, g: &CMat) -> Result<CMat, MatrixLieError> {
    Ok(iwasawa(&(u * g))?.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixlie::linalg::{haar_su, random_sl, sample_rng, unitarity_residual};

    #[test]
    fn unitary_input_gives_trivial_b() {
        let u = haar_su(3, &mut sample_rng(5, 0));
        let (b, u1) = iwasawa(&u).unwrap();
        assert!((b - CMat::identity(3, 3)).norm() < 1e-12);
        assert!((u1 - u).norm() < 1e-12);
    }

    #[test]
    fn triangular_input_gives_identity_unitary() {
        let mut m = CMat::identity(3, 3);
        m[(0, 0)] = c(2.0);
        m[(1, 1)] = c(0.25);
        m[(2, 2)] = c(2.0);
        m[(0, 2)] = num_complex::Complex64::new(0.3, -1.0);
        let (b, u1) = iwasawa(&m).unwrap();
        assert!((u1 - CMat::identity(3, 3)).norm() < 1e-12);
        assert!((b - m).norm() < 1e-12);
    }

    #[test]
    fn random_roundtrip() {
        for k in 0..50 {
            let mut rng = sample_rng(9, k);
            let m = random_sl(4, &mut rng);
            let (b, u1) = iwasawa(&m).unwrap();
            assert!((&b * &u1 - &m).camax() < 1e-12);
            assert!(unitarity_residual(&u1) < 1e-12);
            for i in 0..4 {
                assert!(b[(i, i)].re > 0.0 && b[(i, i)].im.abs() < 1e-14);
                for j in 0..i {
                    assert_eq!(b[(i, j)], c(0.0));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let mut m = CMat::identity(2, 2);
        m[(0, 0)] = c(1e7);
        m[(1, 1)] = c(1e-7);
        assert!(matches!(iwasawa(&m), Err(MatrixLieError::IllConditioned { .. })));
        let m = CMat::identity(2, 2) * c(2.0);
        assert!(matches!(iwasawa(&m), Err(MatrixLieError::NotSpecialLinear { .. })));
    }
}
