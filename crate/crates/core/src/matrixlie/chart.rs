//! Local coordinates on `U/K0` and the finite-difference Jacobi check.
//!
//! On `SU(2)/SO(2)` the chart is `w = conj(alpha / (1 - s))` where
//! `u u^T = [[alpha, i s], [i s, conj(alpha)]]`. It depends only on the coset
//! `u SO(2)`, sends the identity coset to `w = 1`, and the equator `|w| = 1` is
//! the torus orbit of the identity coset. In this chart
//! `pi_0 = (1/8) i (1 - |w|^4) dw ^ dw-bar`.

use num_complex::Complex64;

use super::bivector::PoissonStructure;
use super::linalg::{c, dexp_left, expm_skew, CMat, RMat, I};
use super::realform::Kind;
use super::MatrixLieError;

/// Constant in `pi_0 = SU2_CHART_CONSTANT * i (1 - |w|^4) dw ^ dw-bar`.
pub const SU2_CHART_CONSTANT: f64 = 0.125;

const SINGULAR: f64 = 1e-12;

fn su2_parts(u: &CMat) -> (Complex64, f64) {
    let s = u * u.transpose();
    (s[(0, 0)], (s[(0, 1)] / I).re)
}

/// Chart value at `u SO(2)`.
pub fn chart_su2(u: &CMat) -> Result<Complex64, MatrixLieError> {
    let (alpha, s) = su2_parts(u);
    let den = 1.0 - s;
    if den.abs() < SINGULAR {
        return Err(MatrixLieError::ChartSingular);
    }
    Ok((alpha / den).conj())
}

/// A point of `SU(2)` over the chart value `w`.
pub fn su2_point(w: Complex64) -> CMat {
    let r2 = w.norm_sqr();
    let s = (r2 - 1.0) / (r2 + 1.0);
    let alpha = w.conj() * (1.0 - s);
    // u u^T = a + i(b sigma_z + s sigma_x) with a^2 + b^2 + s^2 = 1; take the
    // symmetric square root exp(i phi/2 n.sigma).
    let (a, b) = (alpha.re, alpha.im);
    let sin_phi = (b * b + s * s).sqrt();
    let phi = sin_phi.atan2(a);
    let (nx, nz) = if sin_phi > 1e-15 { (s / sin_phi, b / sin_phi) } else { (0.0, 1.0) };
    let (ch, sh) = ((phi / 2.0).cos(), (phi / 2.0).sin());
    let mut u = CMat::identity(2, 2) * c(ch);
    u[(0, 0)] += I * (sh * nz);
    u[(1, 1)] -= I * (sh * nz);
    u[(0, 1)] += I * (sh * nx);
    u[(1, 0)] += I * (sh * nx);
    u
}

/// Real 2x2 Jacobian of the chart at `u`, columns indexed by the `i p0` basis.
pub fn chart_su2_jacobian(ps: &PoissonStructure, u: &CMat) -> Result<RMat, MatrixLieError> {
    let (alpha, s) = su2_parts(u);
    let den = 1.0 - s;
    if den.abs() < SINGULAR {
        return Err(MatrixLieError::ChartSingular);
    }
    let ip0 = ps.rf.ip0_elems();
    let mut jac = RMat::zeros(2, ip0.len());
    for (k, y) in ip0.iter().enumerate() {
        let ds = u * y * u.transpose() * c(2.0);
        let dalpha = ds[(0, 0)];
        let dsv = (ds[(0, 1)] / I).re;
        let dw = (dalpha / den + alpha * dsv / (den * den)).conj();
        jac[(0, k)] = dw.re;
        jac[(1, k)] = dw.im;
    }
    Ok(jac)
}

/// Comparison of the transported `pi_0` with the closed form at one point.
#[derive(Debug, Clone, Copy)]
pub struct Su2Comparison {
    pub w: Complex64,
    /// `pi^{xy}` in the chart, `w = x + i y`.
    pub numeric: f64,
    /// `-(SU2_CHART_CONSTANT / 2)(1 - |w|^4)`.
    pub expected: f64,
}

impl Su2Comparison {
    pub fn relative_error(&self) -> f64 {
        (self.numeric - self.expected).abs() / self.expected.abs()
    }

    pub fn absolute_error(&self) -> f64 {
        (self.numeric - self.expected).abs()
    }
}

/// Transports `pi_0(u SO(2))` to the chart and evaluates the closed form.
pub fn compare_su2(ps: &PoissonStructure, u: &CMat) -> Result<Su2Comparison, MatrixLieError> {
    if ps.rf.n != 2 || ps.rf.kind != Kind::Split {
        return Err(MatrixLieError::NoRealization(format!(
            "the SU(2)/SO(2) chart needs sl(2,R), got {}",
            ps.rf.label
        )));
    }
    let w = chart_su2(u)?;
    let jac = chart_su2_jacobian(ps, u)?;
    let p = ps.pi_0(u)?;
    let chart = &jac * p * jac.transpose();
    let r4 = w.norm_sqr() * w.norm_sqr();
    Ok(Su2Comparison {
        w,
        numeric: chart[(0, 1)],
        expected: -(SU2_CHART_CONSTANT / 2.0) * (1.0 - r4),
    })
}

/// Exponential chart `y -> u0 exp(sum y_a Y_a) K0` around `u0 K0`, with
/// `Y_a` the `i p0` basis.
#[derive(Debug, Clone)]
pub struct ExpChart<'a> {
    pub ps: &'a PoissonStructure,
    pub u0: CMat,
}

impl<'a> ExpChart<'a> {
    pub fn new(ps: &'a PoissonStructure, u0: CMat) -> Self {
        ExpChart { ps, u0 }
    }

    pub fn dim(&self) -> usize {
        self.ps.rf.dim_x()
    }

    fn generator(&self, y: &[f64]) -> CMat {
        let ip0 = &self.ps.rf.ip0;
        let v = ip0 * nalgebra::DVector::from_column_slice(y);
        self.ps.rf.basis.from_coords(v.as_slice())
    }

    pub fn point(&self, y: &[f64]) -> CMat {
        &self.u0 * expm_skew(&self.generator(y))
    }

    /// `pi_0` in chart coordinates at `y`.
    pub fn bivector(&self, y: &[f64]) -> Result<RMat, MatrixLieError> {
        let gen = self.generator(y);
        let u = &self.u0 * expm_skew(&gen);
        let p = self.ps.pi_0(&u)?;
        let d = self.dim();
        let mut jac = RMat::zeros(d, d);
        for (b, yb) in self.ps.rf.ip0_elems().iter().enumerate() {
            let t = dexp_left(&gen, yb);
            let coords = self.ps.rf.basis.coords_vec(&t);
            let col = self.ps.rf.ip0.transpose() * coords;
            jac.set_column(b, &col);
        }
        let inv = jac.try_inverse().ok_or(MatrixLieError::ChartSingular)?;
        Ok(&inv * p * inv.transpose())
    }
}

/// Max over `(i, j, k)` of `sum_l pi^{il} d_l pi^{jk} + cyclic`, with central
/// differences of step `h`.
pub fn jacobiator<F>(field: F, point: &[f64], h: f64) -> Result<f64, MatrixLieError>
where
    F: Fn(&[f64]) -> Result<RMat, MatrixLieError>,
{
    let d = point.len();
    let p = field(point)?;
    let mut grads = Vec::with_capacity(d);
    for l in 0..d {
        let mut plus = point.to_vec();
        let mut minus = point.to_vec();
        plus[l] += h;
        minus[l] -= h;
        grads.push((field(&plus)? - field(&minus)?) / (2.0 * h));
    }
    let term = |i: usize, j: usize, k: usize| -> f64 {
        (0..d).map(|l| p[(i, l)] * grads[l][(j, k)]).sum()
    };
    let mut worst: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let v = term(i, j, k) + term(j, k, i) + term(k, i, j);
                worst = worst.max(v.abs());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixlie::linalg::{haar_su, sample_rng, unitarity_residual};
    use crate::matrixlie::realform::MatrixRealForm;

    fn sl2() -> PoissonStructure {
        PoissonStructure::new(MatrixRealForm::split(2).unwrap())
    }

    #[test]
    fn identity_coset_is_on_the_equator() {
        let w = chart_su2(&CMat::identity(2, 2)).unwrap();
        assert!((w - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn chart_is_k0_invariant() {
        let ps = sl2();
        let k = expm_skew(&(&ps.rf.k0_elems()[0] * c(0.7)));
        for s in 0..10 {
            let u = haar_su(2, &mut sample_rng(2, s));
            let a = chart_su2(&u).unwrap();
            let b = chart_su2(&(&u * &k)).unwrap();
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn inverse_chart_roundtrip() {
        for w in [Complex64::new(0.3, -0.2), Complex64::new(-1.5, 2.0), Complex64::from_polar(1.0, 0.9)] {
            let u = su2_point(w);
            assert!(unitarity_residual(&u) < 1e-12);
            assert!((u.determinant() - c(1.0)).norm() < 1e-12);
            assert!((chart_su2(&u).unwrap() - w).norm() < 1e-12, "{w}");
        }
    }

    #[test]
    fn closed_form_matches() {
        let ps = sl2();
        for s in 0..10 {
            let u = haar_su(2, &mut sample_rng(4, s));
            let cmp = compare_su2(&ps, &u).unwrap();
            assert!(cmp.relative_error() < 1e-10, "{cmp:?}");
        }
    }

    #[test]
    fn constant_field_has_zero_jacobiator() {
        let m = RMat::from_row_slice(3, 3, &[0.0, 1.0, 2.0, -1.0, 0.0, 3.0, -2.0, -3.0, 0.0]);
        let r = jacobiator(|_| Ok(m.clone()), &[0.1, 0.2, 0.3], 1e-4).unwrap();
        assert!(r < 1e-12);
    }

    #[test]
    fn lie_poisson_so3_satisfies_jacobi_and_a_bad_field_does_not() {
        let lp = |x: &[f64]| {
            Ok(RMat::from_row_slice(
                3,
                3,
                &[0.0, x[2], -x[1], -x[2], 0.0, x[0], x[1], -x[0], 0.0],
            ))
        };
        assert!(jacobiator(lp, &[0.3, -0.4, 1.1], 1e-4).unwrap() < 1e-10);
        let bad = |x: &[f64]| {
            Ok(RMat::from_row_slice(
                3,
                3,
                &[0.0, 1.0, 0.0, -1.0, 0.0, x[1], 0.0, -x[1], 0.0],
            ))
        };
        assert!(jacobiator(bad, &[0.3, -0.4, 1.1], 1e-4).unwrap() > 0.1);
    }
}
