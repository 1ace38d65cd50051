//! Dense complex and real helpers on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub type CMat = DMatrix<Complex64>;
pub type RMat = DMatrix<f64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Elementary matrix `E_ij`.
pub fn elem(n: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i, j)] = c(1.0);
    m
}

pub fn trace(m: &CMat) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Frobenius norm of `u u^dagger - 1`.
pub fn unitarity_residual(u: &CMat) -> f64 {
    (u * u.adjoint() - CMat::identity(u.nrows(), u.ncols())).norm()
}

pub fn determinant(m: &CMat) -> Complex64 {
    m.clone().determinant()
}

/// Numerical rank of a real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RankInfo {
    pub rank: usize,
    /// Some singular value lies within a factor 10 of the cutoff on either side.
    pub near_threshold: bool,
    pub singular_values: Vec<f64>,
}

/// Singular values below `rel_tol * max(sigma_max, 1)` count as zero.
pub fn numerical_rank(m: &RMat, rel_tol: f64) -> RankInfo {
    if m.nrows() == 0 || m.ncols() == 0 {
        return RankInfo {
            rank: 0,
            near_threshold: false,
            singular_values: Vec::new(),
        };
    }
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let cutoff = rel_tol * sv[0].max(1.0);
    let rank = sv.iter().filter(|&&s| s >= cutoff).count();
    let near_threshold = sv.iter().any(|&s| s > cutoff / 10.0 && s < cutoff * 10.0);
    RankInfo {
        rank,
        near_threshold,
        singular_values: sv,
    }
}

/// Orthonormal basis (columns) of the kernel of `m`, same threshold rule as
/// [`numerical_rank`].
pub fn null_space(m: &RMat, rel_tol: f64) -> RMat {
    let ncols = m.ncols();
    if m.nrows() == 0 {
        return RMat::identity(ncols, ncols);
    }
    // Pad to a square so the SVD returns a full set of right singular vectors.
    let rows = m.nrows().max(ncols);
    let mut padded = RMat::zeros(rows, ncols);
    padded.view_mut((0, 0), (m.nrows(), ncols)).copy_from(m);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.max();
    let cutoff = rel_tol * smax.max(1.0);
    let cols: Vec<_> = (0..ncols)
        .filter(|&k| svd.singular_values[k] < cutoff)
        .map(|k| vt.row(k).transpose())
        .collect();
    if cols.is_empty() {
        RMat::zeros(ncols, 0)
    } else {
        RMat::from_columns(&cols)
    }
}

/// Orthonormal basis of the column space of `m`.
pub fn column_space(m: &RMat, rel_tol: f64) -> RMat {
    let nrows = m.nrows();
    if m.ncols() == 0 {
        return RMat::zeros(nrows, 0);
    }
    let cols = m.ncols().max(nrows);
    let mut padded = RMat::zeros(nrows, cols);
    padded.view_mut((0, 0), (nrows, m.ncols())).copy_from(m);
    let svd = padded.svd(true, false);
    let u = svd.u.expect("requested U");
    let smax = svd.singular_values.max();
    let cutoff = rel_tol * smax.max(1.0);
    let keep: Vec<_> = (0..svd.singular_values.len())
        .filter(|&k| svd.singular_values[k] >= cutoff)
        .map(|k| u.column(k).into_owned())
        .collect();
    if keep.is_empty() {
        RMat::zeros(nrows, 0)
    } else {
        RMat::from_columns(&keep)
    }
}

/// Spectral norm of the difference of the orthogonal projectors onto the
/// spans of two orthonormal column sets.
pub fn subspace_distance(a: &RMat, b: &RMat) -> f64 {
    let pa = a * a.transpose();
    let pb = b * b.transpose();
    let d = pa - pb;
    if d.is_empty() {
        return 0.0;
    }
    d.singular_values().max()
}

/// Eigenvalues (ascending) and eigenvectors of a real symmetric matrix. Each
/// eigenvector is signed so that its largest-magnitude entry (first one on
/// ties) is positive.
pub fn symmetric_eigen_sorted(m: &RMat) -> (Vec<f64>, RMat) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let cols: Vec<_> = order
        .iter()
        .map(|&k| {
            let mut v = eig.eigenvectors.column(k).into_owned();
            let mut best = 0;
            for i in 0..v.len() {
                if v[i].abs() > v[best].abs() + 1e-12 {
                    best = i;
                }
            }
            if v[best] < 0.0 {
                v.neg_mut();
            }
            v
        })
        .collect();
    (vals, RMat::from_columns(&cols))
}

/// `exp(Y)` for anti-Hermitian `Y`, via the Hermitian matrix `iY`.
pub fn expm_skew(y: &CMat) -> CMat {
    let h = y * I;
    let eig = h.symmetric_eigen();
    let v = &eig.eigenvectors;
    // Y = -i H, so exp(Y) = V diag(exp(-i lambda)) V^dagger.
    let d = CMat::from_diagonal(&eig.eigenvalues.map(|l| Complex64::from_polar(1.0, -l)));
    v * d * v.adjoint()
}

/// Left-trivialized differential of `exp` at anti-Hermitian `Y` applied to
/// `Z`: `exp(-Y) d/ds exp(Y + sZ)|_{s=0}`.
pub fn dexp_left(y: &CMat, z: &CMat) -> CMat {
    let h = y * I;
    let eig = h.symmetric_eigen();
    let v = &eig.eigenvectors;
    let lam = &eig.eigenvalues;
    let zp = v.adjoint() * z * v;
    let n = y.nrows();
    // Eigenvalues of Y are -i lambda; x = ad eigenvalue (mu_j - mu_k) with a sign flip for exp(-Y).
    let f = |x: Complex64| {
        if x.norm() < 1e-8 {
            c(1.0) - x / 2.0 + x * x / 6.0
        } else {
            (c(1.0) - (-x).exp()) / x
        }
    };
    let w = CMat::from_fn(n, n, |j, k| {
        let x = I * (lam[k] - lam[j]);
        f(x) * zp[(j, k)]
    });
    v * w * v.adjoint()
}

/// Deterministic generator for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn ginibre(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    CMat::from_fn(n, n, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im) / std::f64::consts::SQRT_2
    })
}

/// Haar-distributed element of SU(n).
pub fn haar_su(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    let qr = ginibre(n, rng).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0) };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    let det = determinant(&q);
    let root = Complex64::from_polar(1.0, -det.arg() / n as f64);
    q * root
}

/// Random element of `SL(n, C)` with moderate condition number.
pub fn random_sl(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    let m = ginibre(n, rng) + CMat::identity(n, n) * c(1.5);
    let det = determinant(&m);
    let root = Complex64::from_polar(det.norm().powf(-1.0 / n as f64), -det.arg() / n as f64);
    m * root
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn haar_samples_are_special_unitary() {
        for k in 0..20 {
            let mut rng = sample_rng(7, k);
            let u = haar_su(3, &mut rng);
            assert!(unitarity_residual(&u) < 1e-12);
            assert!((determinant(&u) - c(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a = haar_su(2, &mut sample_rng(1, 3));
        let b = haar_su(2, &mut sample_rng(1, 3));
        let d = haar_su(2, &mut sample_rng(1, 4));
        assert_eq!(a, b);
        assert!((a - d).norm() > 1e-3);
    }

    #[test]
    fn expm_and_dexp_agree_with_finite_differences() {
        let mut rng = sample_rng(11, 0);
        let g = ginibre(3, &mut rng);
        let y = (&g - g.adjoint()) * c(0.5);
        let g2 = ginibre(3, &mut rng);
        let z = (&g2 - g2.adjoint()) * c(0.5);
        let e = expm_skew(&y);
        assert!(unitarity_residual(&e) < 1e-12);
        let h = 1e-6;
        let fd = (expm_skew(&(&y + &z * c(h))) - expm_skew(&(&y - &z * c(h)))) / c(2.0 * h);
        let an = &e * dexp_left(&y, &z);
        assert!((fd - an).norm() < 1e-8);
    }

    #[test]
    fn rank_and_null_space() {
        let m = RMat::from_row_slice(2, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0]);
        assert_eq!(numerical_rank(&m, 1e-8).rank, 1);
        let ns = null_space(&m, 1e-8);
        assert_eq!(ns.ncols(), 2);
        assert!((&m * &ns).norm() < 1e-12);
        let cs = column_space(&m, 1e-8);
        assert_eq!(cs.ncols(), 1);
        assert!(subspace_distance(&cs, &cs) < 1e-14);
    }

    #[test]
    fn near_threshold_flagged() {
        let m = RMat::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 3e-9]));
        let info = numerical_rank(&m, 1e-8);
        assert_eq!(info.rank, 1);
        assert!(info.near_threshold);
    }
}
