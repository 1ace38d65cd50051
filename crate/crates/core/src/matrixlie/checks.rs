//! Numerical checks tying the matrix realization to the exact atlas: orbit
//! tangents and stabilizers, representatives of twisted involutions, the
//! annihilator identity, rank sampling and the Hermitian decomposition.

use nalgebra::DVector;
use num_complex::Complex64;

use super::bivector::PoissonStructure;
use super::linalg::{
    c, column_space, expm_skew, haar_su, null_space, numerical_rank, sample_rng,
    subspace_distance, symmetric_eigen_sorted, CMat, RMat, I,
};
use super::realform::{Kind, MatrixRealForm};
use super::MatrixLieError;
use crate::intmat::IntMatrix;
use crate::rootsys::{RootSystem, WeylElement};

/// Component in `u` of `xi` under `sl(n,C) = (a + n) + u`, with `a + n` the
/// real-diagonal plus strictly-upper matrices.
pub fn u_part(xi: &CMat) -> CMat {
    let n = xi.nrows();
    CMat::from_fn(n, n, |i, j| {
        if i > j {
            xi[(i, j)]
        } else if i < j {
            -xi[(j, i)].conj()
        } else {
            I * xi[(i, i)].im
        }
    })
}

/// Projection to `T_{uK0}(U/K0)` (in `i p0` coordinates) of the tangent of
/// `t -> u^{exp(tX)}` at `t = 0`.
pub fn orbit_tangent(rf: &MatrixRealForm, u: &CMat, x: &CMat) -> DVector<f64> {
    let ad = u * x * u.adjoint();
    let z = u.adjoint() * u_part(&ad) * u;
    rf.ip0.transpose() * rf.basis.coords_vec(&z)
}

fn real_columns(cols: Vec<Vec<f64>>, rows: usize) -> RMat {
    let mut m = RMat::zeros(rows, cols.len());
    for (k, col) in cols.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m[(r, k)] = *v;
        }
    }
    m
}

/// `dim { X in g0 : Ad_u X in a + n }`.
pub fn an_stabilizer_dim(rf: &MatrixRealForm, u: &CMat, tol: f64) -> usize {
    let cols: Vec<Vec<f64>> = rf
        .g0_basis()
        .iter()
        .map(|x| rf.basis.coords(&u_part(&(u * x * u.adjoint()))))
        .collect();
    null_space(&real_columns(cols, rf.dim_u()), tol).ncols()
}

/// `dim { X in g0 : Ad_u X in t + a + n }`, i.e. `Ad_u X` upper triangular.
pub fn tan_stabilizer_dim(rf: &MatrixRealForm, u: &CMat, tol: f64) -> usize {
    let n = rf.n;
    let cols: Vec<Vec<f64>> = rf
        .g0_basis()
        .iter()
        .map(|x| {
            let ad = u * x * u.adjoint();
            let mut v = Vec::new();
            for i in 0..n {
                for j in 0..i {
                    v.push(ad[(i, j)].re);
                    v.push(ad[(i, j)].im);
                }
            }
            v
        })
        .collect();
    null_space(&real_columns(cols, n * (n - 1)), tol).ncols()
}

/// Comparison of the image of `pi_0` with the projected orbit tangent space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tangency {
    pub pi_rank: usize,
    pub orbit_dim: usize,
    pub residual: f64,
}

pub fn leaf_tangency(ps: &PoissonStructure, u: &CMat, tol: f64) -> Result<Tangency, MatrixLieError> {
    let p = ps.pi_0(u)?;
    let image = column_space(&p, tol);
    let rf = &ps.rf;
    let cols: Vec<Vec<f64>> = rf
        .g0_basis()
        .iter()
        .map(|x| orbit_tangent(rf, u, x).iter().copied().collect())
        .collect();
    let orbit = column_space(&real_columns(cols, rf.dim_x()), tol);
    Ok(Tangency {
        pi_rank: image.ncols(),
        orbit_dim: orbit.ncols(),
        residual: subspace_distance(&image, &orbit),
    })
}

/// The annihilator of `k0` in `a + n` under `Im <<.,.>>` against `a0 + n0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Annihilator {
    pub distance: f64,
    pub dim_annihilator: usize,
    pub dim_an0: usize,
}

pub fn annihilator_check(rf: &MatrixRealForm, tol: f64) -> Annihilator {
    let n = rf.n;
    // Real basis of a + n: traceless real diagonal, then E_ij and i E_ij for i < j.
    let mut an: Vec<CMat> = Vec::new();
    for k in 0..n - 1 {
        let mut d = CMat::zeros(n, n);
        d[(k, k)] = c(1.0);
        d[(k + 1, k + 1)] = c(-1.0);
        an.push(d);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut e = CMat::zeros(n, n);
            e[(i, j)] = c(1.0);
            an.push(e.clone());
            an.push(e * I);
        }
    }
    let k0 = rf.k0_elems();
    let pairing = RMat::from_fn(k0.len(), an.len(), |a, b| {
        super::bivector::killing(n, &k0[a], &an[b]).im
    });
    let annihilator = null_space(&pairing, tol);
    // a0 + n0 = fixed points of tau inside a + n.
    let dim = an.len();
    let mut fix = RMat::zeros(2 * n * n, dim);
    for (b, x) in an.iter().enumerate() {
        let d = rf.tau(x) - x;
        for (k, z) in d.iter().enumerate() {
            fix[(2 * k, b)] = z.re;
            fix[(2 * k + 1, b)] = z.im;
        }
    }
    let an0 = null_space(&fix, tol);
    Annihilator {
        distance: subspace_distance(&annihilator, &an0),
        dim_annihilator: annihilator.ncols(),
        dim_an0: an0.ncols(),
    }
}

/// Rank of `k0` (dimension of the centralizer in `k0` of a generic element)
/// and of `g0`. A compact Cartan subalgebra exists iff they agree.
pub fn cartan_ranks(rf: &MatrixRealForm, seed: u64, tol: f64) -> (usize, usize) {
    let mut rng = sample_rng(seed, u64::MAX);
    let k0 = rf.k0_elems();
    let weights = super::linalg::ginibre(k0.len().max(1), &mut rng);
    let mut x = CMat::zeros(rf.n, rf.n);
    for (k, b) in k0.iter().enumerate() {
        x += b * c(weights[(k, 0)].re);
    }
    let cols: Vec<Vec<f64>> = k0
        .iter()
        .map(|b| {
            let br = &x * b - b * &x;
            (rf.k0.transpose() * rf.basis.coords_vec(&br)).iter().copied().collect()
        })
        .collect();
    let ad = real_columns(cols, k0.len());
    (null_space(&ad, tol).ncols(), rf.n - 1)
}

/// Summary of `rank(pi_0)` over Haar-random points.
#[derive(Debug, Clone, PartialEq)]
pub struct RankSampling {
    pub samples: usize,
    pub max_rank: usize,
    pub all_even: bool,
    pub near_threshold: usize,
    /// `counts[r]` = number of samples of rank `r`.
    pub counts: Vec<usize>,
}

pub fn sample_ranks(ps: &PoissonStructure, seed: u64, samples: usize, tol: f64) -> Result<RankSampling, MatrixLieError> {
    let mut counts = vec![0; ps.rf.dim_x() + 1];
    let mut near = 0;
    for k in 0..samples {
        let u = haar_su(ps.rf.n, &mut sample_rng(seed, k as u64));
        let info = numerical_rank(&ps.pi_0(&u)?, tol);
        counts[info.rank] += 1;
        if info.near_threshold {
            near += 1;
        }
    }
    let max_rank = counts.iter().rposition(|&k| k > 0).unwrap_or(0);
    let all_even = counts.iter().enumerate().all(|(r, &k)| k == 0 || r % 2 == 0);
    Ok(RankSampling {
        samples,
        max_rank,
        all_even,
        near_threshold: near,
        counts,
    })
}

/// Permutation `w` of `{0..n-1}` with `w(e_i - e_j) = e_{w(i)} - e_{w(j)}`
/// for an element of the Weyl group of type `A_{n-1}`.
pub fn weyl_to_permutation(w: &WeylElement) -> Vec<usize> {
    let m = w.matrix();
    let r = m.dim();
    let n = r + 1;
    let mut perm = vec![0; n];
    for k in 0..r {
        let v = m.column(k);
        let e: Vec<i64> = (0..n)
            .map(|i| v.get(i).copied().unwrap_or(0) - if i > 0 { v[i - 1] } else { 0 })
            .collect();
        perm[k] = e.iter().position(|&x| x == 1).expect("image of a simple root");
        if k == r - 1 {
            perm[k + 1] = e.iter().position(|&x| x == -1).expect("image of a simple root");
        }
    }
    perm
}

/// Inverse of [`weyl_to_permutation`].
pub fn permutation_to_weyl(rs: &RootSystem, perm: &[usize]) -> Option<WeylElement> {
    let n = perm.len();
    let r = n - 1;
    let mut m = IntMatrix::zeros(r);
    for k in 0..r {
        let mut e = vec![0i64; n];
        e[perm[k]] += 1;
        e[perm[k + 1]] -= 1;
        // e_a - e_b in simple coordinates: partial sums.
        let mut acc = 0;
        for i in 0..r {
            acc += e[i];
            m[(i, k)] = acc;
        }
    }
    rs.element_from_matrix(&m)
}

/// `tau*` on simple roots as induced by the realization on the diagonal Cartan.
pub fn realized_tau_star(rf: &MatrixRealForm) -> IntMatrix {
    let n = rf.n;
    let perm: Vec<usize> = (0..n)
        .map(|i| (0..n).find(|&k| rf.j[(k, i)].norm() > 0.5).expect("J is a permutation"))
        .collect();
    let r = n - 1;
    let mut m = IntMatrix::zeros(r);
    let sign = match rf.kind {
        Kind::Split => 1,
        Kind::Unitary { .. } => -1,
    };
    for k in 0..r {
        let mut e = vec![0i64; n];
        e[perm[k]] += sign;
        e[perm[k + 1]] -= sign;
        let mut acc = 0;
        for i in 0..r {
            acc += e[i];
            m[(i, k)] = acc;
        }
    }
    m
}

/// Off-monomial mass of `m` and the permutation it induces (`m e_k` lies
/// along `e_{perm[k]}`).
pub fn monomial_part(m: &CMat) -> (f64, Vec<usize>) {
    let n = m.nrows();
    let mut off = 0.0;
    let mut perm = Vec::with_capacity(n);
    for k in 0..n {
        let col = m.column(k);
        let best = (0..n)
            .max_by(|&a, &b| col[a].norm().total_cmp(&col[b].norm()))
            .expect("n > 0");
        off += (0..n).filter(|&i| i != best).map(|i| col[i].norm_sqr()).sum::<f64>();
        perm.push(best);
    }
    (off.sqrt(), perm)
}

/// A unitary `u` with `u tau(u)^{-1}` in the normalizer of the diagonal torus
/// inducing `psi`. The result is checked before it is returned.
pub fn representative_for(rf: &MatrixRealForm, psi: &WeylElement) -> Result<CMat, MatrixLieError> {
    let n = rf.n;
    if psi.matrix().dim() + 1 != n {
        return Err(MatrixLieError::NoRepresentative("rank mismatch".into()));
    }
    let target = weyl_to_permutation(psi);
    let u = match rf.kind {
        Kind::Split => {
            if (0..n).any(|i| target[target[i]] != i) {
                return Err(MatrixLieError::NoRepresentative(format!("{psi} is not a twisted involution")));
            }
            let (cs, sn) = (std::f64::consts::FRAC_PI_4.cos(), std::f64::consts::FRAC_PI_4.sin());
            let mut u = CMat::identity(n, n);
            for i in 0..n {
                let j = target[i];
                if i < j {
                    u[(i, i)] = c(cs);
                    u[(j, j)] = c(cs);
                    u[(i, j)] = I * sn;
                    u[(j, i)] = I * sn;
                }
            }
            u
        }
        Kind::Unitary { p, q } => {
            let pj: Vec<usize> = (0..n)
                .map(|i| (0..n).find(|&k| rf.j[(k, i)].norm() > 0.5).expect("J is a permutation"))
                .collect();
            let sigma: Vec<usize> = (0..n).map(|k| target[pj[k]]).collect();
            if (0..n).any(|i| sigma[sigma[i]] != i) {
                return Err(MatrixLieError::NoRepresentative(format!("{psi} is not a twisted involution")));
            }
            let cycles = (0..n).filter(|&i| sigma[i] > i).count();
            if cycles > q {
                return Err(MatrixLieError::NoRepresentative(format!(
                    "{psi} needs {cycles} Cayley pairs but su({p},{q}) has only {q}"
                )));
            }
            let mut mm = RMat::zeros(n, n);
            let mut plus_left = p - cycles;
            for i in 0..n {
                if sigma[i] == i {
                    mm[(i, i)] = if plus_left > 0 { 1.0 } else { -1.0 };
                    plus_left = plus_left.saturating_sub(1);
                } else {
                    mm[(i, sigma[i])] = 1.0;
                }
            }
            let jr = rf.j.map(|z| z.re);
            let (_, vm) = symmetric_eigen_sorted(&mm);
            let (_, vj) = symmetric_eigen_sorted(&jr);
            let mut u = (vm * vj.transpose()).map(c);
            let det = u.determinant();
            u *= Complex64::from_polar(1.0, -det.arg() / n as f64);
            u
        }
    };
    let m = &u * rf.tau_group(&u).adjoint();
    let (off, perm) = monomial_part(&m);
    if off > 1e-10 || perm != target {
        return Err(MatrixLieError::NoRepresentative(format!(
            "postcondition failed for {psi} (off-normalizer part {off:e})"
        )));
    }
    Ok(u)
}

/// Result of fitting `pi_0 = pi_inf + b pi_inv` on one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianFit {
    pub b: f64,
    pub residual: f64,
    pub samples: usize,
    /// Smallest rank of `pi_inv` seen (it is constant, so this is 2).
    pub min_inv_rank: usize,
}

/// Fits `b` by least squares for `su(1,1)` over `samples` Haar points drawn
/// from streams `first..first + samples`.
///
/// `pi_inf` is `pi_U` pushed to `U/T` and pulled back along
/// `u K0 -> u u0^{-1} T`, where `u0 = exp(-pi/4 (E_12 - E_21))` conjugates
/// `K0` onto the diagonal torus. `pi_inv = e_1 ^ e_2` in the `i p0` basis.
pub fn hermitian_fit(ps: &PoissonStructure, seed: u64, first: u64, samples: usize) -> Result<HermitianFit, MatrixLieError> {
    let rf = &ps.rf;
    if rf.kind != (Kind::Unitary { p: 1, q: 1 }) {
        return Err(MatrixLieError::NotHermitian(rf.label.clone()));
    }
    let mut gen = CMat::zeros(2, 2);
    gen[(0, 1)] = c(-std::f64::consts::FRAC_PI_4);
    gen[(1, 0)] = c(std::f64::consts::FRAC_PI_4);
    let u0 = expm_skew(&gen);
    let ad0 = rf.basis.adjoint_matrix(&u0);
    let images = &ad0 * &rf.ip0;
    let off: Vec<usize> = (0..rf.basis.torus_indices().start).collect();
    let mc = images.select_rows(&off);
    let mc_inv = mc
        .try_inverse()
        .ok_or_else(|| MatrixLieError::NotHermitian("Ad_u0 i p0 meets the torus".into()))?;
    let pi_inv = RMat::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]);
    let mut diffs = Vec::with_capacity(samples);
    for k in 0..samples {
        let u = haar_su(2, &mut sample_rng(seed, first + k as u64));
        let p0 = ps.pi_0(&u)?;
        let v = &u * u0.adjoint();
        let full = ps.pi_u_left(&v)?;
        let pc = full.select_rows(&off).select_columns(&off);
        let pinf = &mc_inv * pc * mc_inv.transpose();
        diffs.push(p0 - pinf);
    }
    let b = diffs.iter().map(|d| d[(0, 1)]).sum::<f64>() / samples as f64;
    let residual = diffs
        .iter()
        .map(|d| (d - &pi_inv * b).amax())
        .fold(0.0, f64::max);
    Ok(HermitianFit {
        b,
        residual,
        samples,
        min_inv_rank: numerical_rank(&pi_inv, 1e-8).rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{orbit_class, twisted_involutions};
    use crate::satake::RealForm;

    const TOL: f64 = 1e-8;

    #[test]
    fn u_part_splits_correctly() {
        let mut rng = sample_rng(1, 0);
        let xi = super::super::linalg::ginibre(3, &mut rng);
        let z = u_part(&xi);
        assert!((&z + z.adjoint()).norm() < 1e-14);
        let rest = &xi - &z;
        for i in 0..3 {
            assert!(rest[(i, i)].im.abs() < 1e-14);
            for j in 0..i {
                assert!(rest[(i, j)].norm() < 1e-14);
            }
        }
    }

    #[test]
    fn permutations_roundtrip() {
        let rs = RootSystem::from_type("A3".parse().unwrap()).unwrap();
        for w in rs.enumerate_weyl(100).unwrap() {
            let p = weyl_to_permutation(&w);
            assert_eq!(permutation_to_weyl(&rs, &p).unwrap(), w);
        }
        let s1 = rs.reflect(0).unwrap();
        assert_eq!(weyl_to_permutation(&s1), vec![1, 0, 2, 3]);
    }

    #[test]
    fn realized_tau_matches_satake_data() {
        for label in ["sl(2,R)", "sl(3,R)", "su(1,1)", "su(2,1)", "su(3,1)", "su(2,2)", "su(3,2)"] {
            let mrf = MatrixRealForm::from_label(label).unwrap();
            let rf = RealForm::new(mrf.satake_diagram()).unwrap();
            assert_eq!(&realized_tau_star(&mrf), rf.tau_star(), "{label}");
        }
    }

    #[test]
    fn stabilizers_match_atlas_for_every_representative() {
        for label in ["sl(2,R)", "sl(3,R)", "su(2,1)", "su(1,1)", "sl(4,R)", "su(2,2)", "su(3,1)"] {
            let mrf = MatrixRealForm::from_label(label).unwrap();
            let rf = RealForm::new(mrf.satake_diagram()).unwrap();
            let mut found = 0;
            for psi in twisted_involutions(&rf, 10_000).unwrap() {
                let class = orbit_class(&rf, &psi).unwrap();
                match representative_for(&mrf, &psi) {
                    Ok(u) => {
                        found += 1;
                        assert_eq!(an_stabilizer_dim(&mrf, &u, TOL), class.a + class.codim_y, "{label} {psi}");
                        assert_eq!(
                            tan_stabilizer_dim(&mrf, &u, TOL),
                            class.t + class.a + class.codim_y,
                            "{label} {psi}"
                        );
                    }
                    Err(MatrixLieError::NoRepresentative(_)) => assert!(!class.admissible() || label.starts_with("su"), "{label} {psi}"),
                    Err(e) => panic!("{e}"),
                }
            }
            assert!(found > 0);
        }
    }

    #[test]
    fn identity_representative_is_identity() {
        for label in ["sl(3,R)", "su(2,1)", "su(3,1)"] {
            let mrf = MatrixRealForm::from_label(label).unwrap();
            let rs = RootSystem::from_type(mrf.satake_diagram().cartan_type).unwrap();
            let u = representative_for(&mrf, &rs.identity()).unwrap();
            assert!((u - CMat::identity(mrf.n, mrf.n)).norm() < 1e-12, "{label}");
        }
    }

    #[test]
    fn annihilator_identity() {
        for (label, dim) in [("sl(2,R)", 2), ("sl(3,R)", 5), ("su(2,1)", 4)] {
            let rf = MatrixRealForm::from_label(label).unwrap();
            let a = annihilator_check(&rf, TOL);
            assert!(a.distance < 1e-12, "{label} {a:?}");
            assert_eq!((a.dim_annihilator, a.dim_an0), (dim, dim), "{label}");
        }
    }

    #[test]
    fn compact_cartan_oracle() {
        for (label, expect) in [("sl(2,R)", true), ("su(1,1)", true), ("su(2,1)", true), ("sl(3,R)", false), ("su(2,2)", true)] {
            let rf = MatrixRealForm::from_label(label).unwrap();
            let (rk, rg) = cartan_ranks(&rf, 5, TOL);
            assert_eq!(rk == rg, expect, "{label}: {rk} vs {rg}");
        }
    }

    #[test]
    fn hermitian_fit_is_constant() {
        let ps = PoissonStructure::new(MatrixRealForm::from_label("su(1,1)").unwrap());
        let a = hermitian_fit(&ps, 1, 0, 20).unwrap();
        let b = hermitian_fit(&ps, 1, 1000, 20).unwrap();
        assert!(a.residual < 1e-12);
        assert!((a.b - b.b).abs() < 1e-12);
        assert!(hermitian_fit(&PoissonStructure::new(MatrixRealForm::split(2).unwrap()), 1, 0, 3).is_err());
    }

    #[test]
    fn tangency_generic_and_equator() {
        let ps = PoissonStructure::new(MatrixRealForm::split(2).unwrap());
        let u = haar_su(2, &mut sample_rng(8, 0));
        let t = leaf_tangency(&ps, &u, TOL).unwrap();
        assert_eq!((t.pi_rank, t.orbit_dim), (2, 2));
        assert!(t.residual < 1e-8);
        let eq = super::super::chart::su2_point(Complex64::from_polar(1.0, 0.4));
        let t = leaf_tangency(&ps, &eq, TOL).unwrap();
        assert_eq!((t.pi_rank, t.orbit_dim), (0, 0));
    }
}
