//! Supremum of the measurement-induced information over measurement angles.
//!
//! The search evaluates a deterministic grid over the canonical parameter box
//! (polar angles on `[0, π]` including both ends, phases on `[0, 2π)`), keeps
//! the best `restarts` grid points and refines each with a Nelder–Mead
//! simplex. The objective is smooth but may have several local maxima, so the
//! grid seeds matter. The reported value is the best point visited; it is
//! never below the best grid value.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[allow(unused_imports)]
use num_traits::Float;

use crate::discord::ensemble::{weighted_conditional, weighted_entropy_nats, ZERO_PROBABILITY};
use crate::error::{Error, Result};
use crate::linalg::{entropy_of_spectrum, partial_trace, von_neumann_entropy, BipartiteDensity, LogBase};
use crate::matrix::C64;
use crate::measurements::{
    qubit_family, qutrit_family, qutrit_operator_entries, MeasurementParams, QubitMeasurementParams,
    QutritMeasurementParams, A2_CROSS_CHECK_TOLERANCE,
};
use crate::Subsystem;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    pub grid_points_per_angle: usize,
    pub restarts: usize,
    /// Simplex stops when best and worst vertex values differ by at most this.
    pub simplex_tolerance: f64,
    /// Iteration cap per simplex run.
    pub max_iterations: usize,
    /// Fix every phase (`φ`, and `ε₁, ε₂` for a qutrit) at zero.
    pub freeze_phases: bool,
    pub rng_seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_points_per_angle: 7,
            restarts: 5,
            simplex_tolerance: 1e-7,
            max_iterations: 2000,
            freeze_phases: false,
            rng_seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points_per_angle < 2 {
            return Err(Error::InvalidConfig { what: "grid_points_per_angle must be at least 2" });
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig { what: "restarts must be at least 1" });
        }
        if !(self.simplex_tolerance > 0.0) {
            return Err(Error::InvalidConfig { what: "simplex_tolerance must be positive" });
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig { what: "max_iterations must be positive" });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerDiagnostics {
    /// Objective evaluations, grid included.
    pub evaluations: usize,
    pub grid_evaluations: usize,
    /// Best objective value on the grid (same units as the result).
    pub grid_best: f64,
    /// False if the simplex run that produced the result hit the iteration cap.
    pub converged: bool,
    pub restarts_run: usize,
    /// Outcomes with `p_i ≤ 1e-12` at the optimum.
    pub zero_probability_outcomes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationSearch {
    pub value: f64,
    pub argmax: MeasurementParams,
    pub diagnostics: OptimizerDiagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum AngleKind {
    Polar,
    Phase,
}

/// Measurement-induced information `S(ρ_other) - S(ρ|{A})` as a function of raw angles.
pub struct Objective<'a> {
    rho: &'a BipartiteDensity,
    side: Subsystem,
    base: LogBase,
    /// `S(ρ_other)` in nats.
    other_entropy: f64,
    freeze_phases: bool,
}

impl<'a> Objective<'a> {
    pub fn new(rho: &'a BipartiteDensity, side: Subsystem, base: LogBase, freeze_phases: bool) -> Result<Self> {
        let d = rho.dim(side);
        if d != 2 && d != 3 {
            return Err(Error::UnsupportedDimension { dim: d });
        }
        let reduced = partial_trace(rho, side);
        let other_entropy = von_neumann_entropy(&reduced, LogBase::new(core::f64::consts::E)?)?;
        Ok(Self { rho, side, base, other_entropy, freeze_phases })
    }

    /// Dimension of the measured party.
    pub fn measured_dim(&self) -> usize {
        self.rho.dim(self.side)
    }

    /// Number of free angles searched.
    pub fn arity(&self) -> usize {
        self.kinds().len()
    }

    fn kinds(&self) -> &'static [AngleKind] {
        use AngleKind::*;
        match (self.measured_dim(), self.freeze_phases) {
            (2, false) => &[Polar, Phase],
            (2, true) => &[Polar],
            (_, false) => &[Polar, Polar, Phase, Phase, Polar, Phase],
            (_, true) => &[Polar, Polar, Polar],
        }
    }

    /// Canonical measurement parameters for a point of the search space.
    pub fn params(&self, x: &[f64]) -> MeasurementParams {
        match (self.measured_dim(), self.freeze_phases) {
            (2, false) => MeasurementParams::Qubit(QubitMeasurementParams::new(x[0], x[1])),
            (2, true) => MeasurementParams::Qubit(QubitMeasurementParams::new(x[0], 0.0)),
            (_, false) => MeasurementParams::Qutrit(QutritMeasurementParams::new(x[0], x[1], x[2], x[3], x[4], x[5])),
            (_, true) => MeasurementParams::Qutrit(QutritMeasurementParams::new(x[0], x[1], 0.0, 0.0, x[2], 0.0)),
        }
    }

    fn raw_qutrit(&self, x: &[f64]) -> QutritMeasurementParams {
        if self.freeze_phases {
            QutritMeasurementParams { theta1: x[0], theta2: x[1], epsilon1: 0.0, epsilon2: 0.0, theta: x[2], phi: 0.0 }
        } else {
            QutritMeasurementParams { theta1: x[0], theta2: x[1], epsilon1: x[2], epsilon2: x[3], theta: x[4], phi: x[5] }
        }
    }

    /// Conditional entropy `Σ p_i S(ρ_i)` in nats and the number of zero-probability outcomes.
    fn conditional_nats(&self, x: &[f64]) -> Result<(f64, usize)> {
        let (da, db) = (self.rho.dim_a(), self.rho.dim_b());
        let m = self.rho.matrix();
        let mut total = 0.0;
        let mut zeros = 0;
        let mut add = |op: &[C64]| -> Result<()> {
            let w = weighted_conditional(m, da, db, self.side, op);
            let (p, s) = weighted_entropy_nats(&w)?;
            if p <= ZERO_PROBABILITY {
                zeros += 1;
            }
            total += s;
            Ok(())
        };
        if self.measured_dim() == 2 {
            let phi = if self.freeze_phases { 0.0 } else { x[1] };
            let family = qubit_family(QubitMeasurementParams { theta: x[0], phi });
            for op in family.operators() {
                add(op.as_slice())?;
            }
        } else {
            let (ops, residual) = qutrit_operator_entries(&self.raw_qutrit(x));
            if !(residual <= A2_CROSS_CHECK_TOLERANCE) {
                return Err(Error::FamilyInvariantViolation { invariant: "A2 = I - A1 - A3", residual });
            }
            for op in &ops {
                add(op)?;
            }
        }
        Ok((total, zeros))
    }

    /// Objective value in the configured base.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let (cond, _) = self.conditional_nats(x)?;
        Ok((self.other_entropy - cond) / self.base.value().ln())
    }
}

/// Keeps the `cap` best `(value, point)` pairs, best first.
struct TopK {
    cap: usize,
    items: Vec<(f64, Vec<f64>)>,
}

impl TopK {
    fn push(&mut self, value: f64, point: &[f64]) {
        if self.items.len() == self.cap && value <= self.items[self.cap - 1].0 {
            return;
        }
        let pos = self.items.iter().position(|(v, _)| value > *v).unwrap_or(self.items.len());
        self.items.insert(pos, (value, point.to_vec()));
        self.items.truncate(self.cap);
    }
}

fn grid_axis(kind: AngleKind, n: usize, k: usize) -> f64 {
    match kind {
        AngleKind::Polar => PI * k as f64 / (n - 1) as f64,
        AngleKind::Phase => TAU * k as f64 / n as f64,
    }
}

fn grid_spacing(kind: AngleKind, n: usize) -> f64 {
    match kind {
        AngleKind::Polar => PI / (n - 1) as f64,
        AngleKind::Phase => TAU / n as f64,
    }
}

struct SimplexOutcome {
    value: f64,
    point: Vec<f64>,
    evaluations: usize,
    converged: bool,
}

/// Nelder–Mead maximization from `start` with per-axis initial steps.
fn nelder_mead<F>(f: &mut F, start: &[f64], start_value: f64, steps: &[f64], tol: f64, max_iterations: usize) -> Result<SimplexOutcome>
where
    F: FnMut(&[f64]) -> Result<f64>,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let n = start.len();
    let mut evaluations = 0;
    let mut simplex: Vec<(f64, Vec<f64>)> = Vec::with_capacity(n + 1);
    simplex.push((start_value, start.to_vec()));
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += steps[i];
        let v = f(&p)?;
        evaluations += 1;
        simplex.push((v, p));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        // Best first.
        simplex.sort_by(|a, b| b.0.total_cmp(&a.0));
        if simplex[0].0 - simplex[n].0 <= tol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (_, p) in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(p) {
                *c += x / n as f64;
            }
        }
        let worst = simplex[n].1.clone();
        let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&worst).map(|(c, w)| c + t * (c - w)).collect() };

        let reflected = along(REFLECT);
        let fr = f(&reflected)?;
        evaluations += 1;
        if fr > simplex[0].0 {
            let expanded = along(EXPAND);
            let fe = f(&expanded)?;
            evaluations += 1;
            simplex[n] = if fe > fr { (fe, expanded) } else { (fr, reflected) };
            continue;
        }
        if fr > simplex[n - 1].0 {
            simplex[n] = (fr, reflected);
            continue;
        }
        let (contracted, fc) = if fr > simplex[n].0 {
            let p = along(CONTRACT * REFLECT);
            let v = f(&p)?;
            (p, v)
        } else {
            let p = along(-CONTRACT);
            let v = f(&p)?;
            (p, v)
        };
        evaluations += 1;
        if fc > simplex[n].0.max(fr) {
            simplex[n] = (fc, contracted);
            continue;
        }
        let best = simplex[0].1.clone();
        for vertex in simplex.iter_mut().skip(1) {
            for (x, b) in vertex.1.iter_mut().zip(&best) {
                *x = b + SHRINK * (*x - b);
            }
            vertex.0 = f(&vertex.1)?;
            evaluations += 1;
        }
    }
    simplex.sort_by(|a, b| b.0.total_cmp(&a.0));
    let (value, point) = simplex.swap_remove(0);
    Ok(SimplexOutcome { value, point, evaluations, converged })
}

/// `C = sup_{A} [S(ρ_other) - S(ρ|{A})]` over projective measurements on `side`.
pub fn classical_correlation(rho: &BipartiteDensity, side: Subsystem, base: LogBase, cfg: &OptimizerConfig) -> Result<CorrelationSearch> {
    cfg.validate()?;
    let objective = Objective::new(rho, side, base, cfg.freeze_phases)?;
    let kinds = objective.kinds();
    let arity = kinds.len();
    let n = cfg.grid_points_per_angle;
    let mut f = |x: &[f64]| objective.evaluate(x);

    let mut top = TopK { cap: cfg.restarts, items: Vec::with_capacity(cfg.restarts + 1) };
    let mut counter = vec![0usize; arity];
    let mut point = vec![0.0; arity];
    let mut grid_evaluations = 0;
    loop {
        for ((x, &k), &kind) in point.iter_mut().zip(&counter).zip(kinds) {
            *x = grid_axis(kind, n, k);
        }
        let v = f(&point)?;
        grid_evaluations += 1;
        top.push(v, &point);

        let mut axis = 0;
        while axis < arity {
            counter[axis] += 1;
            if counter[axis] < n {
                break;
            }
            counter[axis] = 0;
            axis += 1;
        }
        if axis == arity {
            break;
        }
    }
    let grid_best = top.items[0].0;

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut evaluations = grid_evaluations;
    let mut best_value = grid_best;
    let mut best_point = top.items[0].1.clone();
    let mut converged = true;
    let seeds = core::mem::take(&mut top.items);
    let restarts_run = seeds.len();
    for (seed_value, seed_point) in seeds {
        let steps: Vec<f64> = kinds
            .iter()
            .map(|&k| 0.5 * grid_spacing(k, n) * (1.0 + 0.2 * (rng.random::<f64>() - 0.5)))
            .collect();
        let first = nelder_mead(&mut f, &seed_point, seed_value, &steps, cfg.simplex_tolerance, cfg.max_iterations)?;
        evaluations += first.evaluations;
        // One polish restart around the result catches a collapsed simplex.
        let small: Vec<f64> = steps.iter().map(|s| 0.1 * s).collect();
        let second = nelder_mead(&mut f, &first.point, first.value, &small, cfg.simplex_tolerance, cfg.max_iterations)?;
        evaluations += second.evaluations;
        let run = if second.value >= first.value { second } else { first };
        if run.value >= best_value {
            best_value = run.value;
            best_point = run.point;
            converged = run.converged;
        }
    }

    let zero_probability_outcomes = objective.conditional_nats(&best_point)?.1;
    Ok(CorrelationSearch {
        value: best_value,
        argmax: objective.params(&best_point),
        diagnostics: OptimizerDiagnostics {
            evaluations,
            grid_evaluations,
            grid_best,
            converged,
            restarts_run,
            zero_probability_outcomes,
        },
    })
}

/// Measurement-induced information for one fixed measurement family on `side`.
pub fn information_for_params(rho: &BipartiteDensity, side: Subsystem, base: LogBase, params: MeasurementParams) -> Result<f64> {
    let family = match params {
        MeasurementParams::Qubit(p) => qubit_family(p),
        MeasurementParams::Qutrit(p) => qutrit_family(p)?,
        MeasurementParams::Explicit => return Err(Error::InvalidConfig { what: "explicit families carry no parameters" }),
    };
    let cond = crate::discord::conditional_entropy(rho, &family, side, base)?;
    let reduced = partial_trace(rho, side);
    let values = crate::linalg::eig_hermitian(&reduced, false)?.eigenvalues;
    let clamped: Vec<f64> = values.into_iter().map(|v| v.max(0.0)).collect();
    Ok(entropy_of_spectrum(&clamped, base) - cond)
}
