//! Small dense square integer matrices with exact arithmetic.
//!
//! Everything in the combinatorial engine (Weyl group actions, the involution
//! induced by a Satake diagram, eigenspace dimensions) lives here. Entries are
//! `i64`; elimination is fraction-free and runs in `i128`.

use std::fmt;
use std::ops::Mul;

/// Row-major square integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix {
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows do not form a square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "IntMatrix::from_rows: ragged input");
            data.extend_from_slice(row);
        }
        IntMatrix { dim, data }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.dim.max(1)).map(|r| r.to_vec()).take(self.dim).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// `self + c * I`.
    pub fn add_scalar_identity(&self, c: i64) -> Self {
        let mut m = self.clone();
        for i in 0..self.dim {
            m[(i, i)] += c;
        }
        m
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Exact rank by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.dim, self.dim, &self.data)
    }

    /// Dimension of the kernel over the rationals.
    pub fn nullity(&self) -> usize {
        self.dim - self.rank()
    }

    /// Exact determinant (Bareiss).
    pub fn determinant(&self) -> i128 {
        let n = self.dim;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                    return 0;
                };
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        sign * a[n * n - 1]
    }
}

/// Rank of a `rows x cols` integer matrix given in row-major order.
pub fn rank_of_rows(rows: usize, cols: usize, data: &[i64]) -> usize {
    let mut a: Vec<i128> = data.iter().map(|&x| x as i128).collect();
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if p != rank {
            for k in 0..cols {
                a.swap(p * cols + k, rank * cols + k);
            }
        }
        let pivot = a[rank * cols + c];
        for r in rank + 1..rows {
            for k in c + 1..cols {
                a[r * cols + k] = (a[r * cols + k] * pivot - a[r * cols + c] * a[rank * cols + k]) / prev;
            }
            a[r * cols + c] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}
