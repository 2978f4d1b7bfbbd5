use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::blocks::blockwise_eigenvalues;
use crate::matrix::{ComplexMatrix, ZERO};
use crate::Subsystem;

pub const DEFAULT_PSD_TOLERANCE: f64 = 1e-9;
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
pub const TRACE_TOLERANCE: f64 = 1e-10;

/// What validation observed about a density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub hermiticity_residual: f64,
    pub trace_error: f64,
    pub min_eigenvalue: f64,
    /// Number of eigenvalues in `[-tol, 0)` that were set to zero.
    pub clamped_eigenvalues: usize,
}

/// A Hermitian, unit-trace, positive semidefinite matrix on `C^{d_A} ⊗ C^{d_B}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteDensity {
    matrix: ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
    psd_tolerance: f64,
    spectrum: Vec<f64>,
    report: ValidationReport,
}

impl BipartiteDensity {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn dim(&self, side: Subsystem) -> usize {
        match side {
            Subsystem::A => self.dim_a,
            Subsystem::B => self.dim_b,
        }
    }

    pub fn psd_tolerance(&self) -> f64 {
        self.psd_tolerance
    }

    /// Ascending eigenvalues with roundoff negatives clamped to zero.
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    pub fn report(&self) -> &ValidationReport {
        &self.report
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// The same state with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> BipartiteDensity {
        let (da, db) = (self.dim_a, self.dim_b);
        let n = da * db;
        let mut m = ComplexMatrix::zeros(n, n);
        for a in 0..da {
            for b in 0..db {
                for a2 in 0..da {
                    for b2 in 0..db {
                        m[(b * da + a, b2 * da + a2)] = self.matrix[(a * db + b, a2 * db + b2)];
                    }
                }
            }
        }
        BipartiteDensity {
            matrix: m,
            dim_a: db,
            dim_b: da,
            psd_tolerance: self.psd_tolerance,
            spectrum: self.spectrum.clone(),
            report: self.report.clone(),
        }
    }
}

/// Clamps eigenvalues in `[-tol, 0)` to zero; returns how many were clamped.
pub(crate) fn clamp_spectrum(values: &mut [f64], tol: f64) -> Result<usize> {
    let mut clamped = 0;
    for v in values.iter_mut() {
        if *v < -tol {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: *v, tolerance: tol });
        }
        if *v < 0.0 {
            *v = 0.0;
            clamped += 1;
        }
    }
    Ok(clamped)
}

/// Checks shape, Hermiticity, unit trace and positivity of `m` as a `d_A·d_B` density.
pub fn validate_density(m: ComplexMatrix, dim_a: usize, dim_b: usize, tol: f64) -> Result<BipartiteDensity> {
    let n = dim_a * dim_b;
    if dim_a == 0 || dim_b == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    if m.rows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.rows() });
    }
    if m.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.cols() });
    }
    if !(tol >= 0.0) {
        return Err(Error::DomainError { what: "psd tolerance", value: tol });
    }
    if m.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::DomainError { what: "matrix entry", value: f64::NAN });
    }
    let hermiticity_residual = m.hermiticity_residual();
    if hermiticity_residual > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { residual: hermiticity_residual });
    }
    let trace = m.trace();
    let trace_error = (trace - 1.0).norm();
    if trace_error > TRACE_TOLERANCE {
        return Err(Error::TraceNotOne { trace: trace.re });
    }
    let mut spectrum = blockwise_eigenvalues(&m, 0.0)?;
    let min_eigenvalue = spectrum.first().copied().unwrap_or(0.0);
    let clamped_eigenvalues = clamp_spectrum(&mut spectrum, tol)?;
    Ok(BipartiteDensity {
        matrix: m,
        dim_a,
        dim_b,
        psd_tolerance: tol,
        spectrum,
        report: ValidationReport { hermiticity_residual, trace_error, min_eigenvalue, clamped_eigenvalues },
    })
}

/// Partial trace of a `d_A·d_B` square matrix over one subsystem (no validation).
pub fn partial_trace_raw(m: &ComplexMatrix, dim_a: usize, dim_b: usize, over: Subsystem) -> Result<ComplexMatrix> {
    let n = dim_a * dim_b;
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: m.rows() });
    }
    let data = m.as_slice();
    Ok(match over {
        Subsystem::A => {
            let mut out = ComplexMatrix::zeros(dim_b, dim_b);
            for a in 0..dim_a {
                for b in 0..dim_b {
                    for b2 in 0..dim_b {
                        out[(b, b2)] += data[(a * dim_b + b) * n + a * dim_b + b2];
                    }
                }
            }
            out
        }
        Subsystem::B => {
            let mut out = ComplexMatrix::zeros(dim_a, dim_a);
            for a in 0..dim_a {
                for a2 in 0..dim_a {
                    let mut acc = ZERO;
                    for b in 0..dim_b {
                        acc += data[(a * dim_b + b) * n + a2 * dim_b + b];
                    }
                    out[(a, a2)] = acc;
                }
            }
            out
        }
    })
}

/// Reduced state after tracing out `over`.
pub fn partial_trace(rho: &BipartiteDensity, over: Subsystem) -> ComplexMatrix {
    partial_trace_raw(&rho.matrix, rho.dim_a, rho.dim_b, over).expect("validated density has consistent dimensions")
}

/// Kronecker product `a ⊗ b`.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kron(b)
}
