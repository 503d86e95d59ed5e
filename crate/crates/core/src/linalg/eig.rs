//! Cyclic Jacobi eigendecomposition for small Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the
//! accumulated transform stays unitary and the diagonal stays real.

use num_complex::Complex64;

use super::matrix::Matrix;
use crate::error::{Error, Result};

/// Relative asymmetry accepted by [`herm_eig_default`].
pub const DEFAULT_SYMMETRY_TOL: f64 = 1e-10;

const MAX_SWEEPS: usize = 64;

/// Eigenvalues in descending order with matching orthonormal eigenvector
/// columns.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl HermEig {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// Largest |λ|.
    pub fn spectral_scale(&self) -> f64 {
        self.max().abs().max(self.min().abs())
    }

    /// `V diag(values) V*`.
    pub fn compose(&self, values: &[f64]) -> Matrix {
        let n = self.n();
        let v = &self.eigenvectors;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &d) in values.iter().enumerate() {
                    if d != 0.0 {
                        acc += v[(i, k)] * v[(j, k)].conj() * d;
                    }
                }
                out[(i, j)] = acc;
                out[(j, i)] = acc.conj();
            }
            out[(i, i)] = Complex64::new(out[(i, i)].re, 0.0);
        }
        out
    }

    pub fn reconstruct(&self) -> Matrix {
        self.compose(&self.eigenvalues)
    }

    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.n()).map(|i| self.eigenvectors[(i, k)]).collect()
    }
}

pub fn herm_eig_default(a: &Matrix) -> Result<HermEig> {
    herm_eig(a, DEFAULT_SYMMETRY_TOL)
}

/// Eigendecomposition of a numerically Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when `‖A − A*‖_F > symmetry_tol · ‖A‖_F`.
pub fn herm_eig(a: &Matrix, symmetry_tol: f64) -> Result<HermEig> {
    let asymmetry = a.hermitian_defect();
    if asymmetry > symmetry_tol {
        return Err(Error::NotHermitian { asymmetry });
    }
    let n = a.n();
    let mut w = a.hermitian_part();
    let mut v = Matrix::identity(n);
    let fro = w.frobenius();

    let mut converged = n == 1 || fro == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut w, &mut v, p, q);
            }
        }
        converged = off_diagonal(&w) <= f64::EPSILON * fro;
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| w[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let mut vectors = Matrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(HermEig { eigenvalues: order.iter().map(|&i| diag[i]).collect(), eigenvectors: vectors })
}

fn off_diagonal(w: &Matrix) -> f64 {
    let n = w.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += w[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(w: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = w[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let phase_conj = (apq / b).conj();
    let app = w[(p, p)].re;
    let aqq = w[(q, q)].re;

    let zeta = (aqq - app) / (2.0 * b);
    let t = if zeta.abs() > 1e150 {
        0.5 / zeta
    } else {
        let sign = if zeta >= 0.0 { 1.0 } else { -1.0 };
        sign / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // U = diag(1, e^{-iφ}) · [[c, s], [-s, c]] acting on coordinates (p, q).
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = phase_conj * -s;
    let u_qq = phase_conj * c;

    let n = w.n();
    for k in 0..n {
        let akp = w[(k, p)];
        let akq = w[(k, q)];
        w[(k, p)] = akp * u_pp + akq * u_qp;
        w[(k, q)] = akp * u_pq + akq * u_qq;
    }
    for k in 0..n {
        let apk = w[(p, k)];
        let aqk = w[(q, k)];
        w[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
        w[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }
    w[(p, q)] = Complex64::new(0.0, 0.0);
    w[(q, p)] = Complex64::new(0.0, 0.0);
    w[(p, p)] = Complex64::new(app - t * b, 0.0);
    w[(q, q)] = Complex64::new(aqq + t * b, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unitary_defect(v: &Matrix) -> f64 {
        (&(&v.adjoint() * v) - &Matrix::identity(v.n())).frobenius()
    }

    #[test]
    fn identity_and_diagonal() {
        let e = herm_eig_default(&Matrix::identity(3)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0, 1.0]);
        assert!(unitary_defect(&e.eigenvectors) < 1e-14);

        let e = herm_eig_default(&Matrix::diag_real(&[2.0, 5.0, -1.0]).unwrap()).unwrap();
        assert_eq!(e.eigenvalues, vec![5.0, 2.0, -1.0]);
    }

    #[test]
    fn two_by_two_matches_characteristic_polynomial() {
        // λ² − tr·λ + det = 0 for [[2,1],[1,2]]: tr = 4, det = 3.
        let a = Matrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let (tr, det) = (4.0_f64, 3.0_f64);
        let disc = (tr * tr - 4.0 * det).sqrt();
        let e = herm_eig_default(&a).unwrap();
        assert!((e.eigenvalues[0] - (tr + disc) / 2.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - (tr - disc) / 2.0).abs() < 1e-14);
        assert!((e.eigenvalues[0] - 3.0).abs() < 1e-14 && (e.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let mut a = Matrix::diag_real(&[1.0, -2.0, 0.5]).unwrap();
        a[(0, 1)] = Complex64::new(0.3, 0.7);
        a[(1, 0)] = Complex64::new(0.3, -0.7);
        a[(1, 2)] = Complex64::new(-1.1, 0.2);
        a[(2, 1)] = Complex64::new(-1.1, -0.2);
        a[(0, 2)] = Complex64::new(0.0, 1.0);
        a[(2, 0)] = Complex64::new(0.0, -1.0);
        let e = herm_eig_default(&a).unwrap();
        assert!((&e.reconstruct() - &a).frobenius() < 1e-13);
        assert!(unitary_defect(&e.eigenvectors) < 1e-13);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = Matrix::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(herm_eig_default(&a), Err(Error::NotHermitian { .. })));
    }
}
