//! Mutual information, classical correlation and discord.
//!
//! `I = S(ρ_A) + S(ρ_B) - S(ρ_AB)`, `C = sup_{A} [S(ρ_other) - Σ p_i S(ρ_i)]`
//! and `Q = I - C`. The supremum runs over projective (von Neumann)
//! measurements only; for a qutrit side a POVM could in principle do better,
//! so results are the projective-measurement discord.

mod closed_form;
mod ensemble;
mod optimizer;

pub use closed_form::{isotropic_closed_form, isotropic_large_d_check, IsotropicCorrelations};
pub use ensemble::{conditional_ensemble, conditional_entropy, ConditionalEnsemble, Outcome, ZERO_PROBABILITY};
pub use optimizer::{
    classical_correlation, information_for_params, CorrelationSearch, Objective, OptimizerConfig,
    OptimizerDiagnostics,
};

use crate::error::Result;
use crate::linalg::{entropy_of_spectrum, partial_trace, von_neumann_entropy, BipartiteDensity, LogBase};
use crate::measurements::MeasurementParams;
use crate::Subsystem;

/// Entropies entering the mutual information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MutualInformation {
    pub s_a: f64,
    pub s_b: f64,
    pub s_ab: f64,
    /// `s_a + s_b - s_ab`.
    pub value: f64,
}

pub fn mutual_information(rho: &BipartiteDensity, base: LogBase) -> Result<MutualInformation> {
    let s_a = von_neumann_entropy(&partial_trace(rho, Subsystem::B), base)?;
    let s_b = von_neumann_entropy(&partial_trace(rho, Subsystem::A), base)?;
    // The cached spectrum was computed block by block during validation.
    let s_ab = entropy_of_spectrum(rho.spectrum(), base);
    Ok(MutualInformation { s_a, s_b, s_ab, value: s_a + s_b - s_ab })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscordReport {
    pub s_a: f64,
    pub s_b: f64,
    pub s_ab: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub discord: f64,
    pub argmax_params: MeasurementParams,
    pub measured_side: Subsystem,
    pub base: LogBase,
    pub optimizer_evals: usize,
    pub converged: bool,
    pub diagnostics: OptimizerDiagnostics,
}

/// Full pipeline: entropies, classical-correlation search, discord.
pub fn discord(rho: &BipartiteDensity, side: Subsystem, base: LogBase, cfg: &OptimizerConfig) -> Result<DiscordReport> {
    let mi = mutual_information(rho, base)?;
    let search = classical_correlation(rho, side, base, cfg)?;
    Ok(DiscordReport {
        s_a: mi.s_a,
        s_b: mi.s_b,
        s_ab: mi.s_ab,
        mutual_information: mi.value,
        classical_correlation: search.value,
        discord: mi.value - search.value,
        argmax_params: search.argmax,
        measured_side: side,
        base,
        optimizer_evals: search.diagnostics.evaluations,
        converged: search.diagnostics.converged,
        diagnostics: search.diagnostics,
    })
}
