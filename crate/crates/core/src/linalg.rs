//! Small dense square matrices and a cyclic Jacobi symmetric eigensolver.

use crate::error::{Error, Result};
use crate::geometry::Vector;

/// Row-major square matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds an `n x n` matrix from `n * n` row-major entries.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOperator(
                "matrix order must be positive".into(),
            ));
        }
        if data.len() != n * n {
            return Err(Error::InvalidOperator(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        if data.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidOperator(
                "matrix entries must be finite".into(),
            ));
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidOperator("matrix must be square".into()));
        }
        Self::from_row_major(n, rows.concat())
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut data = vec![0.0; n * n];
        for (i, d) in diag.iter().enumerate() {
            data[i * n + i] = *d;
        }
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row_major(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { n, data }
    }

    pub fn mul_vec(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.n)?;
        let xs = x.as_slice();
        Ok(Vector::from_raw(
            self.data
                .chunks_exact(self.n)
                .map(|row| row.iter().zip(xs).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Matrix { n, data }
    }

    /// `(M + M^T) / 2`.
    pub fn symmetric_part(&self) -> Matrix {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = 0.5 * (self.get(i, j) + self.get(j, i));
            }
        }
        Matrix { n, data }
    }

    /// `M^T M`, symmetric by construction.
    pub fn gram(&self) -> Matrix {
        let mut g = self.transpose().mul(self);
        let n = self.n;
        for i in 0..n {
            for j in 0..i {
                let avg = 0.5 * (g.data[i * n + j] + g.data[j * n + i]);
                g.data[i * n + j] = avg;
                g.data[j * n + i] = avg;
            }
        }
        g
    }

    fn off_diagonal_norm(&self) -> f64 {
        let n = self.n;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += self.data[i * n + j].powi(2);
                }
            }
        }
        s.sqrt()
    }

    fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

/// Eigenpairs of a symmetric matrix, sorted by ascending eigenvalue.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// Unit eigenvectors, `vectors[k]` pairs with `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

impl SymmetricEigen {
    pub fn min(&self) -> (f64, &[f64]) {
        (self.values[0], &self.vectors[0])
    }

    pub fn max(&self) -> (f64, &[f64]) {
        let k = self.values.len() - 1;
        (self.values[k], &self.vectors[k])
    }
}

const JACOBI_TOLERANCE: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations on a symmetric matrix.
///
/// Sweeps until the off-diagonal Frobenius norm falls below
/// `1e-12 * ||A||_F`. The input is assumed symmetric; only the symmetric
/// part takes effect.
pub fn symmetric_eigen(matrix: &Matrix) -> SymmetricEigen {
    let n = matrix.n;
    let mut a = matrix.symmetric_part();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius_norm();

    for _ in 0..JACOBI_MAX_SWEEPS {
        if a.off_diagonal_norm() <= JACOBI_TOLERANCE * scale || scale == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut v, p, q, c, s);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    SymmetricEigen {
        values: order.iter().map(|&k| a.get(k, k)).collect(),
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|i| v.get(i, k)).collect())
            .collect(),
    }
}

// A <- J^T A J, V <- V J with J the (p, q) plane rotation.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.n;
    for k in 0..n {
        let akp = a.data[k * n + p];
        let akq = a.data[k * n + q];
        a.data[k * n + p] = c * akp - s * akq;
        a.data[k * n + q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a.data[p * n + k];
        let aqk = a.data[q * n + k];
        a.data[p * n + k] = c * apk - s * aqk;
        a.data[q * n + k] = s * apk + c * aqk;
    }
    for k in 0..n {
        let vkp = v.data[k * n + p];
        let vkq = v.data[k * n + q];
        v.data[k * n + p] = c * vkp - s * vkq;
        v.data[k * n + q] = s * vkp + c * vkq;
    }
}

/// Singular values of `M`, ascending, with the right singular vectors.
pub fn singular_values(matrix: &Matrix) -> SymmetricEigen {
    let mut eig = symmetric_eigen(&matrix.gram());
    for x in &mut eig.values {
        *x = x.max(0.0).sqrt();
    }
    eig
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_eigenvalues() {
        let eig = symmetric_eigen(&Matrix::diagonal(&[3.0, 2.0]));
        assert_eq!(eig.values, vec![2.0, 3.0]);
        assert_eq!(eig.vectors[0], vec![0.0, 1.0]);
    }

    #[test]
    fn two_by_two_rotation_of_known_spectrum() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3
        let m = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let eig = symmetric_eigen(&m);
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 3.0).abs() < 1e-14);
        let (_, v) = eig.min();
        assert!((v[0] + v[1]).abs() < 1e-14);
    }

    #[test]
    fn rotation_scale_singular_values() {
        let m = Matrix::from_rows(&[vec![1.0, -1.0], vec![1.0, 1.0]]).unwrap();
        let sv = singular_values(&m);
        for s in sv.values {
            assert!((s - 2f64.sqrt()).abs() < 1e-14);
        }
        let eig = symmetric_eigen(&m.symmetric_part());
        assert_eq!(eig.values, vec![1.0, 1.0]);
    }

    #[test]
    fn eigen_decomposition_reconstructs() {
        // tridiagonal [-1, 2, -1] of order 6: eigenvalues 2 - 2cos(k pi / 7)
        let n = 6;
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            rows[i][i] = 2.0;
            if i + 1 < n {
                rows[i][i + 1] = -1.0;
                rows[i + 1][i] = -1.0;
            }
        }
        let m = Matrix::from_rows(&rows).unwrap();
        let eig = symmetric_eigen(&m);
        for (k, value) in eig.values.iter().enumerate() {
            let expected =
                2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((value - expected).abs() < 1e-12, "{value} vs {expected}");
            let vk = Vector::new(eig.vectors[k].clone()).unwrap();
            let mv = m.mul_vec(&vk).unwrap();
            for i in 0..n {
                assert!((mv[i] - value * vk[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Matrix::from_row_major(2, vec![1.0; 3]).is_err());
        assert!(Matrix::from_rows(&[vec![1.0, 2.0]]).is_err());
        assert!(Matrix::from_row_major(1, vec![f64::NAN]).is_err());
    }
}
