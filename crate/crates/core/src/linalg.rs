//! Small dense complex matrices: gate unitaries, Pauli word matrices and a
//! Jacobi eigensolver for Hermitian operators. Sized for the dense engine's
//! qubit limit, not for general numerics.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString};

/// Square complex matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        let mut m = CMatrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dagger(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        let mut out = vec![Complex64::ZERO; self.dim];
        for i in 0..self.dim {
            let mut acc = Complex64::ZERO;
            for j in 0..self.dim {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let n = self.dim * other.dim;
        let mut out = CMatrix::zeros(n);
        for i1 in 0..self.dim {
            for j1 in 0..self.dim {
                for i2 in 0..other.dim {
                    for j2 in 0..other.dim {
                        out[(i1 * other.dim + i2, j1 * other.dim + j2)] =
                            self[(i1, j1)] * other[(i2, j2)];
                    }
                }
            }
        }
        out
    }

    /// Max |(U U† - I)_{ij}|.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.matmul(&self.dagger());
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let want = if i == j { Complex64::ONE } else { Complex64::ZERO };
                worst = worst.max((prod[(i, j)] - want).norm());
            }
        }
        worst
    }

    pub fn check_unitary(&self, tol: f64) -> Result<()> {
        if self.unitarity_defect() > tol {
            return Err(Error::NotUnitary { dim: self.dim, tol });
        }
        Ok(())
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn scaled(&self, c: Complex64) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|&v| v * c).collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, other.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[Complex64]) {
        for i in 0..self.dim {
            self[(i, j)] = col[i];
        }
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

pub fn letter_matrix(l: PauliLetter) -> CMatrix {
    let o = Complex64::ZERO;
    let one = Complex64::ONE;
    let i = Complex64::I;
    let rows = match l {
        PauliLetter::I => [[one, o], [o, one]],
        PauliLetter::X => [[o, one], [one, o]],
        PauliLetter::Y => [[o, -i], [i, o]],
        PauliLetter::Z => [[one, o], [o, -one]],
    };
    CMatrix::from_rows(&rows.map(|r| r.to_vec()))
}

/// Dense matrix of a signed Pauli word, site 1 as the most significant factor.
pub fn pauli_matrix(p: &PauliString) -> CMatrix {
    let mut m = CMatrix::identity(1);
    for &l in p.letters() {
        m = m.kron(&letter_matrix(l));
    }
    m.scaled(p.phase().to_complex())
}

/// Eigenvalues and eigenvectors of a Hermitian matrix via cyclic complex
/// Jacobi rotations. Returns (eigenvalues, column eigenvectors), unordered.
pub fn hermitian_eigen(m: &CMatrix, sweeps: usize) -> (Vec<f64>, CMatrix) {
    let n = m.dim();
    let mut a = m.clone();
    let mut v = CMatrix::identity(n);
    for _ in 0..sweeps {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = f64::max(off, a[(p, q)].norm());
            }
        }
        if off < 1e-14 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.norm() < 1e-15 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let phi = apq / apq.norm(); // e^{i arg}
                let tau = (aqq - app) / (2.0 * apq.norm());
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Columns p and q of the rotation: G_pp = c, G_pq = s*phi,
                // G_qp = -s*conj(phi), G_qq = c.
                for i in 0..n {
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    a[(i, p)] = aip * c - aiq * s * phi.conj();
                    a[(i, q)] = aip * s * phi + aiq * c;
                }
                for j in 0..n {
                    let apj = a[(p, j)];
                    let aqj = a[(q, j)];
                    a[(p, j)] = apj * c - aqj * s * phi;
                    a[(q, j)] = apj * s * phi.conj() + aqj * c;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip * c - viq * s * phi.conj();
                    v[(i, q)] = vip * s * phi + viq * c;
                }
            }
        }
    }
    let values = (0..n).map(|i| a[(i, i)].re).collect();
    (values, v)
}

/// Trace distance (1/2)||a - b||_1 between two Hermitian matrices.
pub fn trace_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let diff = a.sub(b);
    let (values, _) = hermitian_eigen(&diff, 64);
    0.5 * values.iter().map(|v| v.abs()).sum::<f64>()
}
