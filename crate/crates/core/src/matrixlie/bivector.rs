//! The standard Poisson structure on `SU(n)` and its projection to `U/K0`.
//!
//! Bivectors are antisymmetric real coefficient matrices over the `su(n)`
//! basis (or over the `i p0` basis after projection).

use super::linalg::{c, elem, trace, unitarity_residual, CMat, RMat, I};
use super::realform::{MatrixRealForm, SuBasis};
use super::MatrixLieError;
use num_complex::Complex64;

/// Unitarity tolerance for base points.
pub const UNITARY_TOL: f64 = 1e-10;

/// `<<X, Y>> = 2n tr(XY)`, the Killing form of `sl(n,C)`.
pub fn killing(n: usize, x: &CMat, y: &CMat) -> Complex64 {
    trace(&(x * y)) * (2.0 * n as f64)
}

/// Root vectors for one positive root `e_i - e_j`.
#[derive(Debug, Clone)]
pub struct RootVectors {
    pub i: usize,
    pub j: usize,
    pub e_pos: CMat,
    pub e_neg: CMat,
    pub x: CMat,
    pub y: CMat,
}

/// `E_alpha = E_ij / sqrt(2n)` so that `<<E_alpha, theta(E_alpha)>> = -1`;
/// `E_-alpha = -theta(E_alpha)`, `X = E_alpha - E_-alpha`, `Y = i(E_alpha + E_-alpha)`.
pub fn root_vectors(n: usize) -> Vec<RootVectors> {
    let scale = 1.0 / ((2 * n) as f64).sqrt();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let e_pos = elem(n, i, j) * c(scale);
            let e_neg = e_pos.adjoint();
            let x = &e_pos - &e_neg;
            let y = (&e_pos + &e_neg) * I;
            out.push(RootVectors { i, j, e_pos, e_neg, x, y });
        }
    }
    out
}

fn wedge(a: &[f64], b: &[f64]) -> RMat {
    let d = a.len();
    RMat::from_fn(d, d, |r, s| a[r] * b[s] - b[r] * a[s])
}

/// `Lambda = 1/4 sum X_alpha ^ Y_alpha` in the `su(n)` basis.
pub fn lambda(basis: &SuBasis) -> RMat {
    let d = basis.dim();
    let mut out = RMat::zeros(d, d);
    for rv in root_vectors(basis.n) {
        out += wedge(&basis.coords(&rv.x), &basis.coords(&rv.y)) * 0.25;
    }
    out
}

fn check_unitary(u: &CMat) -> Result<(), MatrixLieError> {
    let r = unitarity_residual(u);
    if r > UNITARY_TOL {
        Err(MatrixLieError::NotUnitary { residual: r })
    } else {
        Ok(())
    }
}

/// Evaluates `pi_U` and `pi_0` for one realization.
#[derive(Debug, Clone)]
pub struct PoissonStructure {
    pub rf: MatrixRealForm,
    pub lambda: RMat,
}

impl PoissonStructure {
    pub fn new(rf: MatrixRealForm) -> Self {
        let lambda = lambda(&rf.basis);
        PoissonStructure { rf, lambda }
    }

    /// Right-trivialized `pi_U(u) = Lambda - Ad_u Lambda`.
    pub fn pi_u_right(&self, u: &CMat) -> Result<RMat, MatrixLieError> {
        check_unitary(u)?;
        let ad = self.rf.basis.adjoint_matrix(u);
        Ok(&self.lambda - &ad * &self.lambda * ad.transpose())
    }

    /// Left-trivialized `pi_U(u) = Ad_{u^-1} Lambda - Lambda`.
    pub fn pi_u_left(&self, u: &CMat) -> Result<RMat, MatrixLieError> {
        check_unitary(u)?;
        let ad = self.rf.basis.adjoint_matrix(&u.adjoint());
        Ok(&ad * &self.lambda * ad.transpose() - &self.lambda)
    }

    /// `pi_0` at `u K0` in the `i p0` basis: left-translate to the identity and
    /// drop the `k0` components.
    pub fn pi_0(&self, u: &CMat) -> Result<RMat, MatrixLieError> {
        let left = self.pi_u_left(u)?;
        Ok(self.rf.ip0.transpose() * left * &self.rf.ip0)
    }

    /// `|| pi(uv) - (l_u pi(v) + r_v pi(u)) ||` in right trivialization.
    pub fn multiplicativity_residual(&self, u: &CMat, v: &CMat) -> Result<f64, MatrixLieError> {
        let uv = u * v;
        let lhs = self.pi_u_right(&uv)?;
        let ad_u = self.rf.basis.adjoint_matrix(u);
        let rhs = &ad_u * self.pi_u_right(v)? * ad_u.transpose() + self.pi_u_right(u)?;
        Ok((lhs - rhs).amax())
    }

    /// Left and right invariance under a torus element `t`.
    pub fn torus_invariance_residual(&self, u: &CMat, t: &CMat) -> Result<f64, MatrixLieError> {
        // Left trivialization is unchanged by left translation by t; right
        // translation conjugates the coefficients by Ad_{t^-1}.
        let base = self.pi_u_left(u)?;
        let left = self.pi_u_left(&(t * u))?;
        let ad = self.rf.basis.adjoint_matrix(&t.adjoint());
        let right = self.pi_u_left(&(u * t))?;
        let expect_right = &ad * &base * ad.transpose();
        Ok((left - &base).amax().max((right - expect_right).amax()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixlie::linalg::{haar_su, sample_rng};

    #[test]
    fn killing_values() {
        let h = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0), c(-1.0)]));
        assert!((killing(2, &h, &h) - c(8.0)).norm() < 1e-15);
        let e = elem(3, 0, 1);
        assert!(killing(3, &e, &e).norm() < 1e-15);
    }

    #[test]
    fn root_vector_normalization() {
        for n in 2..=4 {
            for rv in root_vectors(n) {
                let th = -rv.e_pos.adjoint();
                assert!((killing(n, &rv.e_pos, &th) + c(1.0)).norm() < 1e-14);
                assert!((&rv.x + rv.x.adjoint()).norm() < 1e-14);
                assert!((&rv.y + rv.y.adjoint()).norm() < 1e-14);
            }
        }
        assert!((root_vectors(2)[0].e_pos[(0, 1)] - c(0.5)).norm() < 1e-15);
    }

    #[test]
    fn lambda_su2_single_term() {
        let b = SuBasis::new(2);
        let l = lambda(&b);
        // X_alpha = X_12/2, Y_alpha = Y_12/2, so Lambda = (1/16) X_12 ^ Y_12.
        assert!((l[(0, 1)] - 1.0 / 16.0).abs() < 1e-15);
        assert!((l[(1, 0)] + 1.0 / 16.0).abs() < 1e-15);
        for k in 0..3 {
            assert_eq!(l[(2, k)], 0.0);
        }
    }

    #[test]
    fn identity_and_unitarity() {
        let ps = PoissonStructure::new(MatrixRealForm::split(3).unwrap());
        let e = CMat::identity(3, 3);
        assert!(ps.pi_u_right(&e).unwrap().amax() < 1e-15);
        assert!(ps.pi_0(&e).unwrap().amax() < 1e-15);
        let bad = CMat::identity(3, 3) * c(2.0);
        assert!(matches!(ps.pi_u_left(&bad), Err(MatrixLieError::NotUnitary { .. })));
    }

    #[test]
    fn multiplicative_and_torus_invariant() {
        let ps = PoissonStructure::new(MatrixRealForm::split(3).unwrap());
        for k in 0..5 {
            let mut rng = sample_rng(3, k);
            let u = haar_su(3, &mut rng);
            let v = haar_su(3, &mut rng);
            assert!(ps.multiplicativity_residual(&u, &v).unwrap() < 1e-12);
            let t = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![
                Complex64::from_polar(1.0, 0.3),
                Complex64::from_polar(1.0, -0.1),
                Complex64::from_polar(1.0, -0.2),
            ]));
            assert!(ps.torus_invariance_residual(&u, &t).unwrap() < 1e-12);
        }
    }
}
