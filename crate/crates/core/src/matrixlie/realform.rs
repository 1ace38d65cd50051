//! Concrete realizations of `sl(n,R)` and `su(p,q)` inside `sl(n,C)`, with
//! `U = SU(n)`.
//!
//! `su(n)` carries the real basis
//! `X_ij = E_ij - E_ji`, `Y_ij = i(E_ij + E_ji)` (for `i < j`) followed by the
//! diagonal elements `i diag(1,..,1,-k,0,..) sqrt(2/(k(k+1)))`. It is
//! orthonormal for `<X, Y> = -tr(XY)/2`, so coordinates are
//! `x_a = Re(-tr(B_a X)/2)`.

use num_complex::Complex64;

use super::linalg::{c, elem, symmetric_eigen_sorted, trace, CMat, RMat, I};
use super::MatrixLieError;
use crate::satake::SatakeDiagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// `sl(n,R)`; `tau` is entrywise conjugation.
    Split,
    /// `su(p,q)` with `p >= q >= 1`, realized with the anti-diagonal form `J`.
    Unitary { p: usize, q: usize },
}

/// Ordered real basis of `su(n)` and the maps between matrices and coordinates.
#[derive(Debug, Clone)]
pub struct SuBasis {
    pub n: usize,
    pub elems: Vec<CMat>,
    /// `(i, j, index of X_ij)` for `i < j`; `Y_ij` sits at index + 1.
    pub pairs: Vec<(usize, usize, usize)>,
}

impl SuBasis {
    pub fn new(n: usize) -> Self {
        let mut elems = Vec::new();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j, elems.len()));
                elems.push(elem(n, i, j) - elem(n, j, i));
                elems.push((elem(n, i, j) + elem(n, j, i)) * I);
            }
        }
        for k in 1..n {
            let s = (2.0 / (k * (k + 1)) as f64).sqrt();
            let mut d = CMat::zeros(n, n);
            for m in 0..k {
                d[(m, m)] = I * s;
            }
            d[(k, k)] = I * (-(k as f64) * s);
            elems.push(d);
        }
        SuBasis { n, elems, pairs }
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    /// Indices of the diagonal (torus) basis elements.
    pub fn torus_indices(&self) -> std::ops::Range<usize> {
        self.n * (self.n - 1)..self.dim()
    }

    pub fn coords(&self, x: &CMat) -> Vec<f64> {
        self.elems
            .iter()
            .map(|b| (trace(&(b * x)) * -0.5).re)
            .collect()
    }

    pub fn coords_vec(&self, x: &CMat) -> nalgebra::DVector<f64> {
        nalgebra::DVector::from_vec(self.coords(x))
    }

    pub fn from_coords(&self, v: &[f64]) -> CMat {
        let mut out = CMat::zeros(self.n, self.n);
        for (b, &x) in self.elems.iter().zip(v) {
            if x != 0.0 {
                out += b * c(x);
            }
        }
        out
    }

    /// Matrix of `Ad_u` in this basis.
    pub fn adjoint_matrix(&self, u: &CMat) -> RMat {
        let ud = u.adjoint();
        let d = self.dim();
        let mut m = RMat::zeros(d, d);
        for b in 0..d {
            let img = u * &self.elems[b] * &ud;
            let col = self.coords(&img);
            for a in 0..d {
                m[(a, b)] = col[a];
            }
        }
        m
    }
}

/// A real form of `sl(n,C)` realized so that the upper-triangular Borel is an
/// Iwasawa-Borel subalgebra.
#[derive(Debug, Clone)]
pub struct MatrixRealForm {
    pub label: String,
    pub n: usize,
    pub kind: Kind,
    pub basis: SuBasis,
    /// Orthonormal basis of `k0` (columns, in `su(n)` coordinates).
    pub k0: RMat,
    /// Orthonormal basis of `i p0`.
    pub ip0: RMat,
    /// The signature matrix for `su(p,q)`, identity for `sl(n,R)`.
    pub j: CMat,
}

/// Anti-diagonal signature matrix: swaps `i <-> n-1-i` for the outer `q`
/// pairs, identity in the middle.
pub fn signature_matrix(n: usize, q: usize) -> CMat {
    let mut j = CMat::zeros(n, n);
    for i in 0..n {
        let partner = if i < q || i >= n - q { n - 1 - i } else { i };
        j[(i, partner)] = c(1.0);
    }
    j
}

impl MatrixRealForm {
    pub fn split(n: usize) -> Result<Self, MatrixLieError> {
        if n < 2 {
            return Err(MatrixLieError::NoRealization(format!("sl({n},R)")));
        }
        Ok(Self::build(format!("sl({n},R)"), n, Kind::Split))
    }

    pub fn unitary(p: usize, q: usize) -> Result<Self, MatrixLieError> {
        if q == 0 || p < q {
            return Err(MatrixLieError::NoRealization(format!("su({p},{q})")));
        }
        Ok(Self::build(format!("su({p},{q})"), p + q, Kind::Unitary { p, q }))
    }

    /// Resolves a catalog label such as `sl(3,R)` or `su(2,1)`.
    pub fn from_label(label: &str) -> Result<Self, MatrixLieError> {
        let none = || MatrixLieError::NoRealization(label.to_string());
        let inner = |prefix: &str| {
            label
                .strip_prefix(prefix)
                .and_then(|s| s.strip_suffix(')'))
                .map(|s| s.split(',').map(str::trim).collect::<Vec<_>>())
        };
        if let Some(parts) = inner("sl(") {
            if parts.len() == 2 && parts[1] == "R" {
                let n: usize = parts[0].parse().map_err(|_| none())?;
                return Self::split(n);
            }
        }
        if let Some(parts) = inner("su(") {
            if parts.len() == 2 {
                let p: usize = parts[0].parse().map_err(|_| none())?;
                let q: usize = parts[1].parse().map_err(|_| none())?;
                return Self::unitary(p, q);
            }
        }
        Err(none())
    }

    fn build(label: String, n: usize, kind: Kind) -> Self {
        let basis = SuBasis::new(n);
        let j = match kind {
            Kind::Split => CMat::identity(n, n),
            Kind::Unitary { q, .. } => signature_matrix(n, q),
        };
        let mut rf = MatrixRealForm {
            label,
            n,
            kind,
            basis,
            k0: RMat::zeros(0, 0),
            ip0: RMat::zeros(0, 0),
            j,
        };
        let t = rf.tau_matrix();
        let sym = (&t + t.transpose()) * 0.5;
        let (vals, vecs) = symmetric_eigen_sorted(&sym);
        let plus: Vec<_> = (0..vals.len())
            .filter(|&k| vals[k] > 0.0)
            .map(|k| vecs.column(k).into_owned())
            .collect();
        let minus: Vec<_> = (0..vals.len())
            .filter(|&k| vals[k] <= 0.0)
            .map(|k| vecs.column(k).into_owned())
            .collect();
        rf.k0 = RMat::from_columns(&plus);
        rf.ip0 = RMat::from_columns(&minus);
        rf
    }

    /// Satake diagram of this real form (type `A_{n-1}`).
    pub fn satake_diagram(&self) -> SatakeDiagram {
        let ty = crate::rootsys::CartanType::new(crate::rootsys::Family::A, self.n - 1)
            .expect("n >= 2");
        match self.kind {
            Kind::Split => SatakeDiagram::new(self.label.clone(), ty, [], []),
            Kind::Unitary { q, .. } => {
                let n = self.n;
                let arrows = (1..=q).filter(|&i| i < n - i).map(|i| (i - 1, n - i - 1));
                SatakeDiagram::new(self.label.clone(), ty, q..(n - q - 1), arrows)
            }
        }
    }

    pub fn dim_u(&self) -> usize {
        self.basis.dim()
    }

    pub fn dim_k0(&self) -> usize {
        self.k0.ncols()
    }

    pub fn dim_x(&self) -> usize {
        self.ip0.ncols()
    }

    /// Conjugation of `sl(n,C)` with fixed points `g0`.
    pub fn tau(&self, x: &CMat) -> CMat {
        match self.kind {
            Kind::Split => x.map(|z| z.conj()),
            Kind::Unitary { .. } => -(&self.j * x.adjoint() * &self.j),
        }
    }

    /// Compact conjugation `X -> -X^dagger`.
    pub fn theta(&self, x: &CMat) -> CMat {
        -x.adjoint()
    }

    /// Group-level `tau` on `SU(n)`.
    pub fn tau_group(&self, u: &CMat) -> CMat {
        match self.kind {
            Kind::Split => u.map(|z| z.conj()),
            Kind::Unitary { .. } => &self.j * u * &self.j,
        }
    }

    /// Matrix of `tau` restricted to `su(n)`.
    pub fn tau_matrix(&self) -> RMat {
        let d = self.basis.dim();
        let mut m = RMat::zeros(d, d);
        for b in 0..d {
            let col = self.basis.coords(&self.tau(&self.basis.elems[b]));
            for a in 0..d {
                m[(a, b)] = col[a];
            }
        }
        m
    }

    pub fn k0_elems(&self) -> Vec<CMat> {
        self.columns_as_matrices(&self.k0)
    }

    pub fn ip0_elems(&self) -> Vec<CMat> {
        self.columns_as_matrices(&self.ip0)
    }

    /// A real basis of `g0 = k0 + p0`, with `p0 = -i (i p0)`.
    pub fn g0_basis(&self) -> Vec<CMat> {
        let mut out = self.k0_elems();
        out.extend(self.ip0_elems().into_iter().map(|y| y * (-I)));
        out
    }

    fn columns_as_matrices(&self, cols: &RMat) -> Vec<CMat> {
        (0..cols.ncols())
            .map(|k| {
                let v: Vec<f64> = cols.column(k).iter().copied().collect();
                self.basis.from_coords(&v)
            })
            .collect()
    }

    /// Residuals of the realization's defining identities: `tau^2 = 1`,
    /// `theta^2 = 1`, `tau theta = theta tau` on the basis, `tau` preserving
    /// the diagonal Cartan, and `J^2 = 1`.
    pub fn structure_residual(&self) -> f64 {
        let n = self.n;
        let mut probes: Vec<CMat> = self.basis.elems.clone();
        for i in 0..n {
            for j in 0..n {
                probes.push(elem(n, i, j) * Complex64::new(0.3 + i as f64, 0.7 - j as f64));
            }
        }
        let mut r: f64 = 0.0;
        for x in &probes {
            r = r.max((self.tau(&self.tau(x)) - x).norm());
            r = r.max((self.theta(&self.theta(x)) - x).norm());
            r = r.max((self.tau(&self.theta(x)) - self.theta(&self.tau(x))).norm());
        }
        for k in 0..n {
            let h = self.tau(&elem(n, k, k));
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|(i, j)| i != j)
                .map(|(i, j)| h[(i, j)].norm())
                .sum();
            r = r.max(off);
        }
        r.max((&self.j * &self.j - CMat::identity(n, n)).norm())
    }
}
