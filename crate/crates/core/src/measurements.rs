//! Projective measurement families for a qubit or qutrit.
//!
//! A measurement on a `d`-level system is a set of `d` rank-one orthogonal
//! projectors `A_i = U Π_i U†`. Only the part of `U` that does not commute
//! with the diagonal projectors matters, which leaves two angles for a qubit
//! (a point on the Bloch sphere) and six for a qutrit: polar angles
//! `θ₁, θ₂` with phases `ε₁, ε₂` fixing `A₃`, and an SU(2) pair `θ, φ` that
//! splits the remaining two-dimensional subspace into `A₁` and `A₂`.
//!
//! Measured sides of dimension four and above are not constructed.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::eigen::eig_hermitian;
use crate::matrix::{ComplexMatrix, C64};

/// Residual allowed between the two independent constructions of `A₂`.
pub const A2_CROSS_CHECK_TOLERANCE: f64 = 1e-9;

fn wrap_phase(x: f64) -> f64 {
    let r = x % TAU;
    let r = if r < 0.0 { r + TAU } else { r };
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Folds a polar angle into `[0, π]`. Returns the folded angle and whether a
/// reflection `θ → 2π - θ` was applied (the caller compensates with a phase shift).
fn fold_polar(x: f64) -> (f64, bool) {
    let r = wrap_phase(x);
    if r > PI {
        (TAU - r, true)
    } else {
        (r, false)
    }
}

/// Bloch angles of a qubit measurement direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitMeasurementParams {
    pub theta: f64,
    pub phi: f64,
}

impl QubitMeasurementParams {
    /// Canonicalizes to `θ ∈ [0, π]`, `φ ∈ [0, 2π)` without changing the measurement.
    pub fn new(theta: f64, phi: f64) -> Self {
        let (theta, reflected) = fold_polar(theta);
        let phi = if reflected { phi + PI } else { phi };
        Self { theta, phi: wrap_phase(phi) }
    }

    /// Unit vector `(sin θ cos φ, sin θ sin φ, cos θ)` of the `A₊` direction.
    pub fn direction(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// Quaternion parameters of `U = t I + i y·σ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Params {
    pub t: f64,
    pub y: [f64; 3],
}

impl Su2Params {
    pub fn new(t: f64, y1: f64, y2: f64, y3: f64) -> Result<Self> {
        let norm_squared = t * t + y1 * y1 + y2 * y2 + y3 * y3;
        if !((norm_squared - 1.0).abs() <= 1e-12) {
            return Err(Error::NotNormalized { norm_squared });
        }
        Ok(Self { t, y: [y1, y2, y3] })
    }
}

/// Direction `ẑ` such that `U σ_z U† = ẑ·σ` for `U = t I + i y·σ`.
pub fn su2_z_vector(p: &Su2Params) -> Result<[f64; 3]> {
    let Su2Params { t, y: [y1, y2, y3] } = *p;
    let norm_squared = t * t + y1 * y1 + y2 * y2 + y3 * y3;
    if !((norm_squared - 1.0).abs() <= 1e-12) {
        return Err(Error::NotNormalized { norm_squared });
    }
    Ok([
        2.0 * (-t * y2 + y1 * y3),
        2.0 * (t * y1 + y2 * y3),
        t * t + y3 * y3 - y1 * y1 - y2 * y2,
    ])
}

/// The six angles of a qutrit projective measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritMeasurementParams {
    pub theta1: f64,
    pub theta2: f64,
    pub epsilon1: f64,
    pub epsilon2: f64,
    /// Polar angle of the SU(2) pair; enters as `c = cos θ`, `s = sin θ`.
    pub theta: f64,
    pub phi: f64,
}

impl QutritMeasurementParams {
    /// Canonicalizes polar angles to `[0, π]` and phases to `[0, 2π)`.
    ///
    /// Each reflection `θ_k → 2π - θ_k` is paired with the phase shift that
    /// leaves all three projectors unchanged: `θ₁` shifts `ε₁, ε₂` by π, `θ₂`
    /// shifts `ε₂`, and `θ` shifts `φ`.
    pub fn new(theta1: f64, theta2: f64, epsilon1: f64, epsilon2: f64, theta: f64, phi: f64) -> Self {
        let (mut e1, mut e2, mut ph) = (epsilon1, epsilon2, phi);
        let (t1, r1) = fold_polar(theta1);
        if r1 {
            e1 += PI;
            e2 += PI;
        }
        let (t2, r2) = fold_polar(theta2);
        if r2 {
            e2 += PI;
        }
        let (t, r) = fold_polar(theta);
        if r {
            ph += PI;
        }
        Self {
            theta1: t1,
            theta2: t2,
            epsilon1: wrap_phase(e1),
            epsilon2: wrap_phase(e2),
            theta: t,
            phi: wrap_phase(ph),
        }
    }

    /// `[θ₁, θ₂, ε₁, ε₂, θ, φ]`.
    pub fn to_array(&self) -> [f64; 6] {
        [self.theta1, self.theta2, self.epsilon1, self.epsilon2, self.theta, self.phi]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        Self::new(a[0], a[1], a[2], a[3], a[4], a[5])
    }
}

/// Parameters that generated a [`MeasurementFamily`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasurementParams {
    Qubit(QubitMeasurementParams),
    Qutrit(QutritMeasurementParams),
    /// Operators supplied directly.
    Explicit,
}

/// `dim` projectors meant to be Hermitian, idempotent, unit-trace, mutually
/// annihilating and summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementFamily {
    dim: usize,
    operators: Vec<ComplexMatrix>,
    params: MeasurementParams,
}

impl MeasurementFamily {
    /// Wraps arbitrary square operators without checking them; see [`validate_family`].
    pub fn from_operators(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = operators.len();
        for op in &operators {
            if op.rows() != dim || op.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: op.rows() });
            }
        }
        Ok(Self { dim, operators, params: MeasurementParams::Explicit })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn params(&self) -> MeasurementParams {
        self.params
    }
}

/// `A₊ = (I + ẑ·σ)/2` in Bloch angles and `A₋` obtained from it by swapping
/// the diagonal and negating the off-diagonal.
pub fn qubit_family(p: QubitMeasurementParams) -> MeasurementFamily {
    let (half_s, half_c) = (0.5 * p.theta).sin_cos();
    let off = C64::from_polar(0.5 * p.theta.sin(), -p.phi);
    let cos2 = C64::new(half_c * half_c, 0.0);
    let sin2 = C64::new(half_s * half_s, 0.0);
    let plus = ComplexMatrix::from_vec(2, 2, vec![cos2, off, off.conj(), sin2]).expect("2x2");
    let minus = ComplexMatrix::from_vec(2, 2, vec![sin2, -off, -off.conj(), cos2]).expect("2x2");
    MeasurementFamily { dim: 2, operators: vec![plus, minus], params: MeasurementParams::Qubit(p) }
}

/// Row-major 3×3 entries.
pub(crate) type Mat3 = [C64; 9];

/// `A₃ = |ψ⟩⟨ψ|` from the base-manifold angles alone.
pub(crate) fn qutrit_a3_entries(p: &QutritMeasurementParams) -> Mat3 {
    let (s1, c1) = p.theta1.sin_cos();
    let (s2, c2) = p.theta2.sin_cos();
    let e1 = C64::from_polar(1.0, p.epsilon1);
    let e2 = C64::from_polar(1.0, p.epsilon2);
    let e12 = C64::from_polar(1.0, p.epsilon1 - p.epsilon2);
    let re = |x: f64| C64::new(x, 0.0);
    let m01 = e12 * (s1 * s1 * s2 * c2);
    let m02 = e1 * (-s1 * c1 * c2);
    let m12 = e2 * (-s1 * c1 * s2);
    [
        re(s1 * s1 * c2 * c2),
        m01,
        m02,
        m01.conj(),
        re(s1 * s1 * s2 * s2),
        m12,
        m02.conj(),
        m12.conj(),
        re(c1 * c1),
    ]
}

/// Closed-form `A₁` entries for SU(2) cosine/sine `(c, s)`.
///
/// Passing `(s, -c)` interchanges `c²` and `s²` and flips the sign of `cs`,
/// which yields `A₂`.
fn qutrit_a1_entries(c: f64, s: f64, p: &QutritMeasurementParams) -> Mat3 {
    let (s1, c1) = p.theta1.sin_cos();
    let (s2, c2) = p.theta2.sin_cos();
    let (e1, e2, phi) = (p.epsilon1, p.epsilon2, p.phi);
    let cc = c * c;
    let ss = s * s;
    let cs = c * s;
    let one_m_c1 = 1.0 - c1;
    // Recurring combinations.
    let u = s2 * s2 + c2 * c2 * c1;
    let w = c2 * c2 + s2 * s2 * c1;
    let cos_mix = (e1 - e2 + phi).cos();
    let f = (cc * u + ss * w) * c2 * s2 * one_m_c1;
    let g = (cc * c2 * c2 * one_m_c1 - ss * w) * s1 * s2;
    let ph = |angle: f64| C64::from_polar(1.0, angle);

    let a11 = cc * u * u + ss * c2 * c2 * s2 * s2 * one_m_c1 * one_m_c1
        - 2.0 * cs * c2 * s2 * one_m_c1 * u * cos_mix;
    let a12 = (ph(-phi) * (u * w) + ph(2.0 * e1 - 2.0 * e2 + phi) * (s2 * s2 * c2 * c2 * one_m_c1 * one_m_c1)) * cs
        - ph(e1 - e2) * f;
    let a13 = (ph(e2 - phi) * u - ph(2.0 * e1 - e2 + phi) * (c2 * c2 * one_m_c1)) * (cs * s1 * s2)
        + ph(e1) * ((cc * u - ss * s2 * s2 * one_m_c1) * s1 * c2);
    let a22 = cc * s2 * s2 * c2 * c2 * one_m_c1 * one_m_c1 + ss * w * w
        - 2.0 * cs * s2 * c2 * w * one_m_c1 * cos_mix;
    let a23 = (ph(e1 + phi) * w - ph(-(e1 - 2.0 * e2 + phi)) * (s2 * s2 * one_m_c1)) * (cs * s1 * c2)
        - ph(e2) * g;
    let a33 = cc * s1 * s1 * c2 * c2 + ss * s1 * s1 * s2 * s2 + 2.0 * cs * s1 * s1 * s2 * c2 * cos_mix;
    let re = |x: f64| C64::new(x, 0.0);
    [re(a11), a12, a13, a12.conj(), re(a22), a23, a13.conj(), a23.conj(), re(a33)]
}

/// The three qutrit projectors `[A₁, A₂, A₃]` and the worst entry of
/// `A₂ - (I - A₁ - A₃)`.
pub(crate) fn qutrit_operator_entries(p: &QutritMeasurementParams) -> ([Mat3; 3], f64) {
    let (s, c) = p.theta.sin_cos();
    let a1 = qutrit_a1_entries(c, s, p);
    let a2 = qutrit_a1_entries(s, -c, p);
    let a3 = qutrit_a3_entries(p);
    let mut worst = 0.0f64;
    for k in 0..9 {
        let id = if k % 4 == 0 { 1.0 } else { 0.0 };
        worst = worst.max((a2[k] - (C64::new(id, 0.0) - a1[k] - a3[k])).norm());
    }
    ([a1, a2, a3], worst)
}

fn mat3(entries: Mat3) -> ComplexMatrix {
    ComplexMatrix::from_vec(3, 3, entries.to_vec()).expect("3x3")
}

/// `A₃ = U₁ Π₃ U₁†`; independent of the SU(2) pair `(θ, φ)`.
pub fn qutrit_a3(p: &QutritMeasurementParams) -> ComplexMatrix {
    mat3(qutrit_a3_entries(p))
}

/// Qutrit measurement family `{A₁, A₂, A₃}`.
///
/// `A₂` comes from the `c² ↔ s²`, `cs → -cs` rule applied to the closed form
/// of `A₁`; it is also compared with `I - A₁ - A₃` and a disagreement above
/// [`A2_CROSS_CHECK_TOLERANCE`] is reported as an error.
pub fn qutrit_family(p: QutritMeasurementParams) -> Result<MeasurementFamily> {
    let ([a1, a2, a3], residual) = qutrit_operator_entries(&p);
    if !(residual <= A2_CROSS_CHECK_TOLERANCE) {
        return Err(Error::FamilyInvariantViolation { invariant: "A2 = I - A1 - A3", residual });
    }
    Ok(MeasurementFamily {
        dim: 3,
        operators: vec![mat3(a1), mat3(a2), mat3(a3)],
        params: MeasurementParams::Qutrit(p),
    })
}

/// Worst residual of each projector identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyReport {
    pub hermiticity: f64,
    pub idempotence: f64,
    pub unit_trace: f64,
    pub completeness: f64,
    pub annihilation: f64,
    /// Distance of each operator's spectrum from `{0, …, 0, 1}`.
    pub spectrum: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl FamilyReport {
    pub fn worst(&self) -> f64 {
        [self.hermiticity, self.idempotence, self.unit_trace, self.completeness, self.annihilation, self.spectrum]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

pub fn validate_family(f: &MeasurementFamily, tol: f64) -> FamilyReport {
    let d = f.dim;
    let ops = &f.operators;
    let mut r = FamilyReport {
        hermiticity: 0.0,
        idempotence: 0.0,
        unit_trace: 0.0,
        completeness: 0.0,
        annihilation: 0.0,
        spectrum: 0.0,
        tolerance: tol,
        passed: false,
    };
    let mut sum = ComplexMatrix::zeros(d, d);
    for (i, a) in ops.iter().enumerate() {
        r.hermiticity = r.hermiticity.max(a.hermiticity_residual());
        r.idempotence = r.idempotence.max((a * a).max_abs_diff(a));
        r.unit_trace = r.unit_trace.max((a.trace() - 1.0).norm());
        sum = &sum + a;
        for (j, b) in ops.iter().enumerate() {
            if i != j {
                r.annihilation = r.annihilation.max((a * b).max_abs());
            }
        }
        // Spectrum of the Hermitian part, so non-Hermitian input still yields a number.
        let herm = (a + &a.adjoint()).scale_real(0.5);
        r.spectrum = r.spectrum.max(match eig_hermitian(&herm, false) {
            Ok(spec) => spec
                .eigenvalues
                .iter()
                .enumerate()
                .map(|(k, &l)| if k + 1 == d { (l - 1.0).abs() } else { l.abs() })
                .fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        });
    }
    r.completeness = sum.max_abs_diff(&ComplexMatrix::identity(d));
    r.passed = r.worst() <= tol;
    r
}
