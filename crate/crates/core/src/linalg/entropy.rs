#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::blocks::blockwise_eigenvalues;
use crate::linalg::density::{clamp_spectrum, DEFAULT_PSD_TOLERANCE};
use crate::matrix::ComplexMatrix;

/// Logarithm base for entropies; always `> 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBase(f64);

impl LogBase {
    pub const TWO: LogBase = LogBase(2.0);

    pub fn new(base: f64) -> Result<Self> {
        if base.is_finite() && base > 1.0 {
            Ok(LogBase(base))
        } else {
            Err(Error::DomainError { what: "logarithm base", value: base })
        }
    }

    /// Base equal to a subsystem dimension (`d ≥ 2`).
    pub fn dimension(d: usize) -> Result<Self> {
        Self::new(d as f64)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn log(self, x: f64) -> f64 {
        x.ln() / self.0.ln()
    }
}

/// `-Σ λ log λ` with `0·log 0 := 0`. Eigenvalues must already be clamped.
pub fn entropy_of_spectrum(eigenvalues: &[f64], base: LogBase) -> f64 {
    let ln_base = base.0.ln();
    let mut s = 0.0;
    for &lambda in eigenvalues {
        if lambda > 0.0 {
            s -= lambda * lambda.ln();
        }
    }
    (s / ln_base).max(0.0)
}

/// Von Neumann entropy `-tr(ρ log ρ)` of a density matrix.
///
/// Eigenvalues in `[-1e-9, 0)` are treated as zero, more negative ones are an error.
pub fn von_neumann_entropy(m: &ComplexMatrix, base: LogBase) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    let residual = m.hermiticity_residual();
    if residual > crate::linalg::eigen::HERMITIAN_TOLERANCE * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    let mut values = blockwise_eigenvalues(m, 0.0)?;
    clamp_spectrum(&mut values, DEFAULT_PSD_TOLERANCE)?;
    Ok(entropy_of_spectrum(&values, base))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximally_mixed_qutrit_base3() {
        let m = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        let s = von_neumann_entropy(&m, LogBase::dimension(3).unwrap()).unwrap();
        assert!((s - 1.0).abs() < 1e-14);
    }

    #[test]
    fn pure_state_has_zero_entropy() {
        let ket = [crate::C64::new(0.6, 0.0), crate::C64::new(0.0, 0.8)];
        let s = von_neumann_entropy(&ComplexMatrix::outer(&ket), LogBase::TWO).unwrap();
        assert!(s.abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_base() {
        assert!(LogBase::new(1.0).is_err());
        assert!(LogBase::new(f64::NAN).is_err());
    }

    #[test]
    fn negative_eigenvalue_is_error() {
        let m = ComplexMatrix::from_diagonal(&[0.6, 0.6, -0.2, 0.0]);
        assert!(matches!(
            von_neumann_entropy(&m, LogBase::TWO),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }
}
