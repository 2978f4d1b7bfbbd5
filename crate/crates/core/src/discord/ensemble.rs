//! Post-measurement ensembles of the unmeasured party.
//!
//! For a measurement on `A` the weighted conditional state is
//! `p_i ρ_i = Σ_{j,k} (A_i)_{kj} · Block_{jk}(ρ)`, i.e. every `d_B × d_B` block
//! of `ρ` is scaled by the transposed entry of the projector and the blocks
//! are added. For a measurement on `B` the same contraction runs inside each
//! block. Both equal the partial trace of `(A_i ⊗ I) ρ (A_i ⊗ I)` (resp.
//! `(I ⊗ A_i) ρ (I ⊗ A_i)`) because `A_i² = A_i`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::eigen::eigenvalues_unchecked;
use crate::linalg::{BipartiteDensity, LogBase};
use crate::matrix::{ComplexMatrix, C64, ZERO};
use crate::measurements::MeasurementFamily;
use crate::Subsystem;

/// Outcomes with probability at or below this contribute no entropy.
pub const ZERO_PROBABILITY: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub probability: f64,
    /// `p_i ρ_i` before normalization.
    pub weighted: ComplexMatrix,
    /// `ρ_i`, absent for zero-probability outcomes.
    pub state: Option<ComplexMatrix>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalEnsemble {
    pub outcomes: Vec<Outcome>,
}

impl ConditionalEnsemble {
    pub fn zero_probability_outcomes(&self) -> usize {
        self.outcomes.iter().filter(|o| o.state.is_none()).count()
    }
}

/// `p_i ρ_i` for the row-major projector `op` acting on `side`.
pub(crate) fn weighted_conditional(rho: &ComplexMatrix, dim_a: usize, dim_b: usize, side: Subsystem, op: &[C64]) -> ComplexMatrix {
    let n = dim_a * dim_b;
    let data = rho.as_slice();
    match side {
        Subsystem::A => {
            let mut out = ComplexMatrix::zeros(dim_b, dim_b);
            let dst = out.as_mut_slice();
            for j in 0..dim_a {
                for k in 0..dim_a {
                    let w = op[k * dim_a + j];
                    if w == ZERO {
                        continue;
                    }
                    for b in 0..dim_b {
                        let row = (j * dim_b + b) * n + k * dim_b;
                        for b2 in 0..dim_b {
                            dst[b * dim_b + b2] += w * data[row + b2];
                        }
                    }
                }
            }
            out
        }
        Subsystem::B => {
            let mut out = ComplexMatrix::zeros(dim_a, dim_a);
            let dst = out.as_mut_slice();
            for a in 0..dim_a {
                for a2 in 0..dim_a {
                    let mut acc = ZERO;
                    for j in 0..dim_b {
                        let row = (a * dim_b + j) * n + a2 * dim_b;
                        for k in 0..dim_b {
                            acc += op[k * dim_b + j] * data[row + k];
                        }
                    }
                    dst[a * dim_a + a2] = acc;
                }
            }
            out
        }
    }
}

fn check_dims(rho: &BipartiteDensity, family: &MeasurementFamily, side: Subsystem) -> Result<()> {
    let d = rho.dim(side);
    if family.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, found: family.dim() });
    }
    Ok(())
}

pub fn conditional_ensemble(rho: &BipartiteDensity, family: &MeasurementFamily, side: Subsystem) -> Result<ConditionalEnsemble> {
    check_dims(rho, family, side)?;
    let outcomes = family
        .operators()
        .iter()
        .map(|op| {
            let weighted = weighted_conditional(rho.matrix(), rho.dim_a(), rho.dim_b(), side, op.as_slice());
            let probability = weighted.trace().re;
            let state = (probability > ZERO_PROBABILITY).then(|| weighted.scale_real(1.0 / probability));
            Outcome { probability, weighted, state }
        })
        .collect();
    Ok(ConditionalEnsemble { outcomes })
}

/// `p·S(ρ_i)` from the eigenvalues of `p_i ρ_i`, in natural log units.
///
/// Negative roundoff in the weighted state is dropped: the input density is
/// already validated, so only rounding can produce it.
pub(crate) fn weighted_entropy_nats(weighted: &ComplexMatrix) -> Result<(f64, f64)> {
    let p = weighted.trace().re;
    if p <= ZERO_PROBABILITY {
        return Ok((p.max(0.0), 0.0));
    }
    let values = eigenvalues_unchecked(weighted)?;
    let mut s = 0.0;
    for lambda in values {
        let x = lambda / p;
        if x > 0.0 {
            s -= x * x.ln();
        }
    }
    Ok((p, p * s.max(0.0)))
}

/// `S(ρ|{A_i}) = Σ p_i S(ρ_i)`.
pub fn conditional_entropy(rho: &BipartiteDensity, family: &MeasurementFamily, side: Subsystem, base: LogBase) -> Result<f64> {
    check_dims(rho, family, side)?;
    let mut total = 0.0;
    for op in family.operators() {
        let weighted = weighted_conditional(rho.matrix(), rho.dim_a(), rho.dim_b(), side, op.as_slice());
        total += weighted_entropy_nats(&weighted)?.1;
    }
    Ok(total / base.value().ln())
}
