//! Builders and recognizers for canonical state classes.
//!
//! "Isotropic" is used for the white-noise/Bell mixture that is also widely
//! called a Werner state.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{validate_density, BipartiteDensity, DEFAULT_PSD_TOLERANCE};
use crate::matrix::{ComplexMatrix, C64, ZERO};

/// Declarative description of a canonical state.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Bell { d: usize },
    Isotropic { d: usize, p: f64 },
    XState { dim_a: usize, dim_b: usize, pattern: XPattern },
    /// Upper-triangular `d_B × d_B` blocks `(j, k)`, `j ≤ k`, in row-major order.
    ExtendedX { dim_a: usize, dim_b: usize, upper_blocks: Vec<ComplexMatrix> },
    QuantumClassical { probs: Vec<f64>, kets: Vec<Vec<C64>>, partners: Vec<ComplexMatrix> },
    MaximallyMixed { dim_a: usize, dim_b: usize },
}

impl StateSpec {
    pub fn build(&self) -> Result<BipartiteDensity> {
        match self {
            StateSpec::Bell { d } => bell(*d),
            StateSpec::Isotropic { d, p } => isotropic(*d, *p),
            StateSpec::XState { dim_a, dim_b, pattern } => x_state(pattern, *dim_a, *dim_b),
            StateSpec::ExtendedX { dim_a, dim_b, upper_blocks } => extended_x(*dim_a, *dim_b, upper_blocks),
            StateSpec::QuantumClassical { probs, kets, partners } => quantum_classical(probs, kets, partners),
            StateSpec::MaximallyMixed { dim_a, dim_b } => maximally_mixed(*dim_a, *dim_b),
        }
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::DomainError { what: "local dimension", value: d as f64 });
    }
    Ok(())
}

fn bell_matrix(d: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    let w = C64::new(1.0 / d as f64, 0.0);
    for i in 0..d {
        for j in 0..d {
            m[(i * (d + 1), j * (d + 1))] = w;
        }
    }
    m
}

/// `|Ψ⟩⟨Ψ|` for `|Ψ⟩ = Σ_i |ii⟩ / √d`.
pub fn bell(d: usize) -> Result<BipartiteDensity> {
    check_dim(d)?;
    validate_density(bell_matrix(d), d, d, DEFAULT_PSD_TOLERANCE)
}

/// `[(1-p)/d²] I + p |Ψ⟩⟨Ψ|`.
pub fn isotropic(d: usize, p: f64) -> Result<BipartiteDensity> {
    check_dim(d)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::DomainError { what: "mixing parameter p", value: p });
    }
    let n = d * d;
    let noise = (1.0 - p) / n as f64;
    let mut m = bell_matrix(d).scale_real(p);
    for i in 0..n {
        m[(i, i)] += noise;
    }
    validate_density(m, d, d, DEFAULT_PSD_TOLERANCE)
}

pub fn maximally_mixed(dim_a: usize, dim_b: usize) -> Result<BipartiteDensity> {
    let n = dim_a * dim_b;
    validate_density(ComplexMatrix::identity(n).scale_real(1.0 / n as f64), dim_a, dim_b, DEFAULT_PSD_TOLERANCE)
}

/// Entries of an X-shaped Hermitian matrix: the real diagonal and the upper
/// half of the anti-diagonal, `ρ_{i, n-1-i}` for `i < n-1-i`.
///
/// For odd `n` the centre element belongs to the diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct XPattern {
    pub dim: usize,
    pub diagonal: Vec<f64>,
    pub antidiagonal: Vec<C64>,
}

impl XPattern {
    pub fn new(diagonal: Vec<f64>, antidiagonal: Vec<C64>) -> Result<Self> {
        let dim = diagonal.len();
        if antidiagonal.len() != dim / 2 {
            return Err(Error::DimensionMismatch { expected: dim / 2, found: antidiagonal.len() });
        }
        let trace: f64 = diagonal.iter().sum();
        if !((trace - 1.0).abs() <= crate::linalg::density::TRACE_TOLERANCE) {
            return Err(Error::TraceNotOne { trace });
        }
        Ok(Self { dim, diagonal, antidiagonal })
    }

    /// Real degrees of freedom: `n - 1` diagonal plus two per anti-diagonal pair.
    pub fn free_parameters(&self) -> usize {
        self.dim - 1 + 2 * self.antidiagonal.len()
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let n = self.dim;
        let mut m = ComplexMatrix::from_diagonal(&self.diagonal);
        for (i, &z) in self.antidiagonal.iter().enumerate() {
            m[(i, n - 1 - i)] = z;
            m[(n - 1 - i, i)] = z.conj();
        }
        m
    }

    /// Reads the pattern back from a matrix, failing if anything off the X exceeds `zero_tol`.
    pub fn from_matrix(m: &ComplexMatrix, zero_tol: f64) -> Result<Self> {
        let magnitude = off_x_magnitude(m);
        if magnitude > zero_tol {
            return Err(Error::NotXPatterned { magnitude });
        }
        let n = m.rows();
        Ok(Self {
            dim: n,
            diagonal: (0..n).map(|i| m[(i, i)].re).collect(),
            antidiagonal: (0..n / 2).map(|i| m[(i, n - 1 - i)]).collect(),
        })
    }
}

fn on_x(n: usize, i: usize, j: usize) -> bool {
    i == j || i + j == n - 1
}

/// Largest modulus among entries off the diagonal and anti-diagonal.
pub fn off_x_magnitude(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..m.cols() {
            if !on_x(n, i, j) {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

pub fn is_x_structure(m: &ComplexMatrix, zero_tol: f64) -> bool {
    m.is_square() && off_x_magnitude(m) <= zero_tol
}

pub fn x_state(pattern: &XPattern, dim_a: usize, dim_b: usize) -> Result<BipartiteDensity> {
    if pattern.dim != dim_a * dim_b {
        return Err(Error::DimensionMismatch { expected: dim_a * dim_b, found: pattern.dim });
    }
    validate_density(pattern.to_matrix(), dim_a, dim_b, DEFAULT_PSD_TOLERANCE)
}

/// Assembles a block matrix whose every `d_B × d_B` block is X-shaped.
///
/// `upper_blocks` lists blocks `(j, k)` with `j ≤ k` row by row; the lower
/// blocks are their conjugate transposes.
pub fn extended_x(dim_a: usize, dim_b: usize, upper_blocks: &[ComplexMatrix]) -> Result<BipartiteDensity> {
    let expected = dim_a * (dim_a + 1) / 2;
    if upper_blocks.len() != expected {
        return Err(Error::DimensionMismatch { expected, found: upper_blocks.len() });
    }
    let n = dim_a * dim_b;
    let mut m = ComplexMatrix::zeros(n, n);
    let mut blocks = upper_blocks.iter();
    for j in 0..dim_a {
        for k in j..dim_a {
            let block = blocks.next().expect("length checked");
            if block.rows() != dim_b || block.cols() != dim_b {
                return Err(Error::DimensionMismatch { expected: dim_b, found: block.rows() });
            }
            let magnitude = off_x_magnitude(block);
            if magnitude > 0.0 {
                return Err(Error::NotXPatterned { magnitude });
            }
            for r in 0..dim_b {
                for c in 0..dim_b {
                    m[(j * dim_b + r, k * dim_b + c)] = block[(r, c)];
                    if j != k {
                        m[(k * dim_b + c, j * dim_b + r)] = block[(r, c)].conj();
                    }
                }
            }
        }
    }
    validate_density(m, dim_a, dim_b, DEFAULT_PSD_TOLERANCE)
}

/// Real degrees of freedom of the [`extended_x`] input after fixing the trace.
///
/// A Hermitian X block has `2 d_B` of them for even `d_B` (`2 d_B - 1` for odd),
/// a general X block twice that.
pub fn extended_x_free_parameters(dim_a: usize, dim_b: usize) -> usize {
    let hermitian_block = if dim_b % 2 == 0 { 2 * dim_b } else { 2 * dim_b - 1 };
    dim_a * hermitian_block + dim_a * (dim_a - 1) / 2 * 2 * hermitian_block - 1
}

/// `Σ_i p_i |ψ_i⟩⟨ψ_i| ⊗ ρ_i^B`.
pub fn quantum_classical(probs: &[f64], kets: &[Vec<C64>], partners: &[ComplexMatrix]) -> Result<BipartiteDensity> {
    let terms = probs.len();
    if kets.len() != terms || partners.len() != terms || terms == 0 {
        return Err(Error::DimensionMismatch { expected: terms, found: kets.len().min(partners.len()) });
    }
    if let Some(&bad) = probs.iter().find(|&&p| !(0.0..=1.0).contains(&p)) {
        return Err(Error::DomainError { what: "probability", value: bad });
    }
    let total: f64 = probs.iter().sum();
    if !((total - 1.0).abs() <= crate::linalg::density::TRACE_TOLERANCE) {
        return Err(Error::TraceNotOne { trace: total });
    }
    let dim_a = kets[0].len();
    let dim_b = partners[0].rows();
    let mut residual = 0.0f64;
    for (i, ki) in kets.iter().enumerate() {
        if ki.len() != dim_a {
            return Err(Error::DimensionMismatch { expected: dim_a, found: ki.len() });
        }
        for kj in &kets[i..] {
            let overlap: C64 = ki.iter().zip(kj).map(|(a, b)| a.conj() * b).sum();
            let target = if core::ptr::eq(ki, kj) { 1.0 } else { 0.0 };
            residual = residual.max((overlap - target).norm());
        }
    }
    if residual > 1e-10 {
        return Err(Error::KetsNotOrthonormal { residual });
    }
    let mut m = ComplexMatrix::zeros(dim_a * dim_b, dim_a * dim_b);
    for ((&p, ket), partner) in probs.iter().zip(kets).zip(partners) {
        // Each partner must itself be a density.
        let partner = validate_density(partner.clone(), partner.rows(), 1, DEFAULT_PSD_TOLERANCE)?.into_matrix();
        if partner.rows() != dim_b {
            return Err(Error::DimensionMismatch { expected: dim_b, found: partner.rows() });
        }
        let term = ComplexMatrix::outer(ket).kron(&partner).scale_real(p);
        m = &m + &term;
    }
    validate_density(m, dim_a, dim_b, DEFAULT_PSD_TOLERANCE)
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box–Muller; 1 - u keeps the logarithm finite.
    let u: f64 = 1.0 - rng.random::<f64>();
    let v: f64 = rng.random::<f64>();
    (-2.0 * u.ln()).sqrt() * (TAU * v).cos()
}

fn gaussian_ket(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| C64::new(gaussian(rng), gaussian(rng))).collect()
}

fn normalize_trace(m: &ComplexMatrix) -> ComplexMatrix {
    let t = m.trace().re;
    m.scale_real(1.0 / t)
}

/// Seeded density `Σ_k |v_k⟩⟨v_k| / tr` from `rank` Gaussian kets.
pub fn random_density(dim_a: usize, dim_b: usize, rank: usize, seed: u64) -> Result<BipartiteDensity> {
    let n = dim_a * dim_b;
    if rank == 0 || rank > n {
        return Err(Error::DomainError { what: "rank", value: rank as f64 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = ComplexMatrix::zeros(n, n);
    for _ in 0..rank {
        m = &m + &ComplexMatrix::outer(&gaussian_ket(&mut rng, n));
    }
    validate_density(normalize_trace(&m), dim_a, dim_b, DEFAULT_PSD_TOLERANCE)
}

/// Seeded full-rank X-state: a random positive 2×2 block on every
/// anti-diagonal pair `(i, n-1-i)` and a random weight at the centre.
pub fn random_x_state(dim_a: usize, dim_b: usize, seed: u64) -> Result<BipartiteDensity> {
    let n = dim_a * dim_b;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n / 2 {
        let j = n - 1 - i;
        for _ in 0..2 {
            let v = gaussian_ket(&mut rng, 2);
            m[(i, i)] += v[0].norm_sqr();
            m[(j, j)] += v[1].norm_sqr();
            m[(i, j)] += v[0] * v[1].conj();
            m[(j, i)] += v[1] * v[0].conj();
        }
    }
    if n % 2 == 1 {
        m[(n / 2, n / 2)] = C64::new(0.1 + rng.random::<f64>(), 0.0);
    }
    validate_density(normalize_trace(&m), dim_a, dim_b, DEFAULT_PSD_TOLERANCE)
}

/// Product state `ρ_A ⊗ ρ_B`.
pub fn product(rho_a: &ComplexMatrix, rho_b: &ComplexMatrix) -> Result<BipartiteDensity> {
    validate_density(rho_a.kron(rho_b), rho_a.rows(), rho_b.rows(), DEFAULT_PSD_TOLERANCE)
}

/// Computational basis ket `|i⟩` of dimension `d`.
pub fn basis_ket(d: usize, i: usize) -> Vec<C64> {
    let mut v = vec![ZERO; d];
    v[i] = C64::new(1.0, 0.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{block_decompose, entropy_of_spectrum, partial_trace, LogBase};
    use crate::Subsystem;

    #[test]
    fn bell3_nonzero_entries() {
        let rho = bell(3).unwrap();
        let m = rho.matrix();
        let mut count = 0;
        for i in 0..9 {
            for j in 0..9 {
                let z = m[(i, j)];
                if z.norm() > 0.0 {
                    count += 1;
                    assert!([0, 4, 8].contains(&i) && [0, 4, 8].contains(&j));
                    assert_eq!(z, C64::new(1.0 / 3.0, 0.0));
                }
            }
        }
        assert_eq!(count, 9);
    }

    #[test]
    fn bell_is_pure_and_maximally_entangled() {
        for d in 2..=4 {
            let rho = bell(d).unwrap();
            assert!(entropy_of_spectrum(rho.spectrum(), LogBase::TWO).abs() < 1e-9);
            let id = ComplexMatrix::identity(d).scale_real(1.0 / d as f64);
            assert!(partial_trace(&rho, Subsystem::A).max_abs_diff(&id) < 1e-15);
            assert!(partial_trace(&rho, Subsystem::B).max_abs_diff(&id) < 1e-15);
        }
    }

    #[test]
    fn isotropic_endpoints_and_spectrum() {
        let d = 3;
        let mixed = isotropic(d, 0.0).unwrap();
        assert!(mixed.matrix().max_abs_diff(&ComplexMatrix::identity(9).scale_real(1.0 / 9.0)) < 1e-16);
        let pure = isotropic(d, 1.0).unwrap();
        assert!(pure.matrix().max_abs_diff(bell(3).unwrap().matrix()) < 1e-16);
        let p = 0.37;
        let rho = isotropic(d, p).unwrap();
        let s = rho.spectrum();
        assert!((s[8] - (p + (1.0 - p) / 9.0)).abs() < 1e-10);
        assert!(s[..8].iter().all(|&l| (l - (1.0 - p) / 9.0).abs() < 1e-10));
        assert_eq!(block_decompose(rho.matrix(), 0.0).iter().filter(|b| b.len() == 3).count(), 1);
        assert!(isotropic(3, 1.2).is_err());
    }

    #[test]
    fn diagonal_x_state() {
        let pattern = XPattern::new(vec![1.0 / 9.0; 9], vec![ZERO; 4]).unwrap();
        assert_eq!(pattern.free_parameters(), 16);
        let rho = x_state(&pattern, 3, 3).unwrap();
        assert_eq!(block_decompose(rho.matrix(), 0.0).len(), 9);
    }

    #[test]
    fn x_pattern_round_trip() {
        let rho = random_x_state(3, 3, 11).unwrap();
        let pattern = XPattern::from_matrix(rho.matrix(), 0.0).unwrap();
        assert_eq!(&pattern.to_matrix(), rho.matrix());
    }

    #[test]
    fn x_state_trace_must_be_one() {
        assert!(matches!(XPattern::new(vec![0.5; 4], vec![ZERO; 2]), Err(Error::TraceNotOne { .. })));
    }

    #[test]
    fn extended_x_blocks() {
        let dim_b = 4;
        let mut blocks = Vec::new();
        let x_positions = [(0, 0), (0, 3), (1, 1), (1, 2), (2, 1), (2, 2), (3, 0), (3, 3)];
        for (j, k) in [(0, 0), (0, 1), (1, 1)] {
            let mut b = ComplexMatrix::zeros(dim_b, dim_b);
            for &(r, c) in &x_positions {
                b[(r, c)] = if j == k {
                    if r == c { C64::new(0.125, 0.0) } else { C64::new(0.01, 0.0) }
                } else {
                    C64::new(0.005 * (1 + r) as f64, 0.002 * c as f64)
                };
            }
            blocks.push(b);
        }
        let rho = extended_x(2, dim_b, &blocks).unwrap();
        assert_eq!(block_decompose(rho.matrix(), 0.0), vec![vec![0, 3, 4, 7], vec![1, 2, 5, 6]]);
        assert_eq!(extended_x_free_parameters(2, 4), 31);
        assert_eq!(extended_x_free_parameters(2, 3), 8 * 3 - 5);
    }

    #[test]
    fn quantum_classical_product() {
        let partner = ComplexMatrix::from_diagonal(&[0.2, 0.3, 0.5]);
        let kets = vec![basis_ket(2, 0), basis_ket(2, 1)];
        let rho = quantum_classical(&[0.5, 0.5], &kets, &[partner.clone(), partner.clone()]).unwrap();
        let expected = ComplexMatrix::identity(2).scale_real(0.5).kron(&partner);
        assert!(rho.matrix().max_abs_diff(&expected) < 1e-16);

        let single = quantum_classical(&[1.0], &[basis_ket(3, 0)], &[partner.clone()]).unwrap();
        assert!(single.matrix().max_abs_diff(&ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0]).kron(&partner)) < 1e-16);

        let bad = vec![basis_ket(2, 0), basis_ket(2, 0)];
        assert!(matches!(
            quantum_classical(&[0.5, 0.5], &bad, &[partner.clone(), partner]),
            Err(Error::KetsNotOrthonormal { .. })
        ));
    }

    #[test]
    fn random_density_properties() {
        let pure = random_density(3, 3, 1, 5).unwrap();
        assert!(entropy_of_spectrum(pure.spectrum(), LogBase::TWO).abs() < 1e-9);
        let a = random_density(3, 2, 6, 42).unwrap();
        let b = random_density(3, 2, 6, 42).unwrap();
        assert_eq!(a, b);
        assert!(random_density(2, 2, 0, 1).is_err());
        assert!(random_density(2, 2, 5, 1).is_err());
    }
}
