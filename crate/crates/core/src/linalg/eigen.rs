//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each rotation first rotates the phase of the pivot `a_pq` onto the real
//! axis and then applies the real symmetric Jacobi rotation that annihilates
//! it. Sizes here stay below ~100 so the O(n³) per sweep cost is irrelevant.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, C64, ZERO};

pub const MAX_SWEEPS: usize = 100;
/// Off-diagonal Frobenius threshold, relative to `max(1, ‖M‖_F)`.
pub const OFF_DIAGONAL_THRESHOLD: f64 = 1e-12;
/// Hermiticity check used before solving, relative to `max(1, max|m_ij|)`.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianSpectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as columns, ordered like `eigenvalues`.
    pub eigenvectors: Option<ComplexMatrix>,
}

/// Eigen-decomposition of a Hermitian matrix.
pub fn eig_hermitian(m: &ComplexMatrix, want_vectors: bool) -> Result<HermitianSpectrum> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    let residual = m.hermiticity_residual();
    if residual > HERMITIAN_TOLERANCE * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    let n = m.rows();
    let mut a: Vec<C64> = m.as_slice().to_vec();
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n).into_vec());
    jacobi_in_place(&mut a, n, v.as_deref_mut())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let eigenvalues = order.iter().map(|&i| a[i * n + i].re).collect();
    let eigenvectors = v.map(|v| {
        let mut out = ComplexMatrix::zeros(n, n);
        for (col, &src) in order.iter().enumerate() {
            for row in 0..n {
                out[(row, col)] = v[row * n + src];
            }
        }
        out
    });
    Ok(HermitianSpectrum { eigenvalues, eigenvectors })
}

/// Eigenvalues only, ascending, skipping the Hermiticity check.
///
/// Used on hot paths whose inputs are Hermitian by construction; the strictly
/// lower triangle is ignored and taken as the conjugate of the upper one.
pub fn eigenvalues_unchecked(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = m.rows();
    let mut a: Vec<C64> = m.as_slice().to_vec();
    for i in 0..n {
        a[i * n + i].im = 0.0;
        for j in 0..i {
            a[i * n + j] = a[j * n + i].conj();
        }
    }
    jacobi_in_place(&mut a, n, None)?;
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn off_diagonal_norm(a: &[C64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi_in_place(a: &mut [C64], n: usize, mut v: Option<&mut [C64]>) -> Result<()> {
    for i in 0..n {
        a[i * n + i].im = 0.0;
    }
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let threshold = OFF_DIAGONAL_THRESHOLD * scale;
    let mut off = off_diagonal_norm(a, n);
    for _ in 0..MAX_SWEEPS {
        if off <= threshold {
            return Ok(());
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[p * n + q];
                let abs_g = g.norm();
                if abs_g < 1e-300 {
                    continue;
                }
                let phase = g / abs_g;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * abs_g);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = D·R with D = diag(1, conj(phase)) on (p, q) and R the real rotation.
                let j_pp = C64::new(c, 0.0);
                let j_pq = C64::new(s, 0.0);
                let j_qp = -phase.conj() * s;
                let j_qq = phase.conj() * c;
                rotate(a, n, p, q, j_pp, j_pq, j_qp, j_qq);
                a[p * n + q] = ZERO;
                a[q * n + p] = ZERO;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                if let Some(v) = v.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * j_pp + vkq * j_qp;
                        v[k * n + q] = vkp * j_pq + vkq * j_qq;
                    }
                }
            }
        }
        off = off_diagonal_norm(a, n);
    }
    if off <= threshold {
        return Ok(());
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS, off_diagonal: off })
}

/// `A ← J† A J` for a rotation acting on indices `p`, `q`.
#[allow(clippy::too_many_arguments)]
#[inline]
fn rotate(a: &mut [C64], n: usize, p: usize, q: usize, j_pp: C64, j_pq: C64, j_qp: C64, j_qq: C64) {
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * j_pp + akq * j_qp;
        a[k * n + q] = akp * j_pq + akq * j_qq;
    }
    let (c_pp, c_pq, c_qp, c_qq) = (j_pp.conj(), j_pq.conj(), j_qp.conj(), j_qq.conj());
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = c_pp * apk + c_qp * aqk;
        a[q * n + k] = c_pq * apk + c_qq * aqk;
    }
}
