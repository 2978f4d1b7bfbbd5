use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use qudiscord::linalg::{
    block_decompose, blockwise_eigenvalues, eig_hermitian, entropy_of_spectrum, partial_trace, partial_trace_raw,
    validate_density, von_neumann_entropy, LogBase, DEFAULT_PSD_TOLERANCE,
};
use qudiscord::states::random_density;
use qudiscord::{ComplexMatrix, Error, Subsystem, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = C64::new(rng.random::<f64>() * 2.0 - 1.0, 0.0);
        for j in i + 1..n {
            let z = C64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Eigenvalues through the real symmetric embedding `[[Re, -Im], [Im, Re]]`,
/// where each eigenvalue appears twice.
fn embedded_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.rows();
    let big = DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let z = m[(r % n, c % n)];
        match (r < n, c < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let mut values: Vec<f64> = SymmetricEigen::new(big).eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values.into_iter().step_by(2).collect()
}

#[test]
fn eigenvalues_match_real_embedding() {
    for seed in 0..100 {
        let n = 2 + (seed as usize % 8);
        let m = random_hermitian(n, seed);
        let ours = eig_hermitian(&m, false).unwrap().eigenvalues;
        let oracle = embedded_eigenvalues(&m);
        for (a, b) in ours.iter().zip(&oracle) {
            assert!((a - b).abs() < 1e-8, "seed {seed}: {a} vs {b}");
        }
    }
}

#[test]
fn eigenvectors_reconstruct_matrix() {
    for seed in 0..20 {
        let m = random_hermitian(6, 500 + seed);
        let spec = eig_hermitian(&m, true).unwrap();
        let v = spec.eigenvectors.unwrap();
        let d = ComplexMatrix::from_diagonal(&spec.eigenvalues);
        let rebuilt = &(&v * &d) * &v.adjoint();
        assert!(rebuilt.max_abs_diff(&m) < 1e-10);
        assert!((&v.adjoint() * &v).max_abs_diff(&ComplexMatrix::identity(6)) < 1e-10);
    }
}

#[test]
fn blockwise_spectrum_equals_dense_spectrum() {
    let mut m = random_hermitian(8, 77);
    // Keep only the extended-X pattern of a 2×4 system.
    let keep = [0, 3, 4, 7];
    for i in 0..8 {
        for j in 0..8 {
            if keep.contains(&i) != keep.contains(&j) {
                m[(i, j)] = C64::new(0.0, 0.0);
            }
        }
    }
    assert_eq!(block_decompose(&m, 0.0).len(), 2);
    let blockwise = blockwise_eigenvalues(&m, 0.0).unwrap();
    let dense = eig_hermitian(&m, false).unwrap().eigenvalues;
    for (a, b) in blockwise.iter().zip(&dense) {
        assert!((a - b).abs() < 1e-12);
    }
}

/// `Σ_k (⟨k| ⊗ I) M (|k⟩ ⊗ I)` and the mirror image, built from explicit matrix products.
fn partial_trace_oracle(m: &ComplexMatrix, da: usize, db: usize, over: Subsystem) -> ComplexMatrix {
    let (traced, kept) = match over {
        Subsystem::A => (da, db),
        Subsystem::B => (db, da),
    };
    let mut out = ComplexMatrix::zeros(kept, kept);
    for k in 0..traced {
        let mut bra = ComplexMatrix::zeros(1, traced);
        bra[(0, k)] = C64::new(1.0, 0.0);
        let id = ComplexMatrix::identity(kept);
        let left = match over {
            Subsystem::A => bra.kron(&id),
            Subsystem::B => id.kron(&bra),
        };
        let term = &(&left * m) * &left.adjoint();
        out = &out + &term;
    }
    out
}

#[test]
fn partial_trace_matches_oracle() {
    for (da, db, seed) in [(2, 2, 1), (2, 5, 2), (3, 3, 3), (3, 4, 4), (4, 2, 5)] {
        let rho = random_density(da, db, da * db, seed).unwrap();
        for over in [Subsystem::A, Subsystem::B] {
            let oracle = partial_trace_oracle(rho.matrix(), da, db, over);
            assert!(partial_trace(&rho, over).max_abs_diff(&oracle) < 1e-15);
        }
    }
}

#[test]
fn partial_trace_of_product_recovers_factors() {
    let a = random_density(3, 1, 3, 8).unwrap().into_matrix();
    let b = random_density(2, 1, 2, 9).unwrap().into_matrix();
    let ab = a.kron(&b);
    assert!(partial_trace_raw(&ab, 3, 2, Subsystem::B).unwrap().max_abs_diff(&a) < 1e-15);
    assert!(partial_trace_raw(&ab, 3, 2, Subsystem::A).unwrap().max_abs_diff(&b) < 1e-15);
}

#[test]
fn validation_errors() {
    let mut m = ComplexMatrix::identity(4).scale_real(0.25);
    m[(0, 1)] = C64::new(0.1, 0.0);
    assert!(matches!(validate_density(m, 2, 2, DEFAULT_PSD_TOLERANCE), Err(Error::NotHermitian { .. })));

    let m = ComplexMatrix::identity(4).scale_real(0.3);
    assert!(matches!(validate_density(m, 2, 2, DEFAULT_PSD_TOLERANCE), Err(Error::TraceNotOne { .. })));

    let m = ComplexMatrix::from_diagonal(&[0.6, 0.5, -0.1, 0.0]);
    assert!(matches!(
        validate_density(m, 2, 2, DEFAULT_PSD_TOLERANCE),
        Err(Error::NotPositiveSemidefinite { .. })
    ));

    let m = ComplexMatrix::identity(6).scale_real(1.0 / 6.0);
    assert!(matches!(validate_density(m, 2, 2, DEFAULT_PSD_TOLERANCE), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn tiny_negative_eigenvalues_are_clamped() {
    let m = ComplexMatrix::from_diagonal(&[0.5 + 5e-10, 0.5, -5e-10, 0.0]);
    let rho = validate_density(m, 2, 2, DEFAULT_PSD_TOLERANCE).unwrap();
    assert_eq!(rho.report().clamped_eigenvalues, 1);
    assert!(rho.spectrum().iter().all(|&l| l >= 0.0));
}

#[test]
fn entropy_of_maximally_mixed() {
    for n in 2..=9 {
        let m = ComplexMatrix::identity(n).scale_real(1.0 / n as f64);
        let s = von_neumann_entropy(&m, LogBase::dimension(n).unwrap()).unwrap();
        assert!((s - 1.0).abs() < 1e-14);
        let bits = von_neumann_entropy(&m, LogBase::TWO).unwrap();
        assert!((bits - (n as f64).log2()).abs() < 1e-13);
    }
}

fn density_strategy() -> impl Strategy<Value = (usize, usize, usize, u64)> {
    (2usize..=3, 2usize..=4, any::<u64>()).prop_flat_map(|(da, db, seed)| (Just(da), Just(db), 1..=da * db, Just(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn entropy_bounded_by_log_dimension((da, db, rank, seed) in density_strategy()) {
        let rho = random_density(da, db, rank, seed).unwrap();
        let n = da * db;
        let s = entropy_of_spectrum(rho.spectrum(), LogBase::dimension(n).unwrap());
        prop_assert!(s >= 0.0 && s <= 1.0 + 1e-12);
        // Rank caps the entropy at log(rank).
        let cap = (rank as f64).ln() / (n as f64).ln();
        prop_assert!(s <= cap + 1e-9);
    }

    #[test]
    fn partial_trace_preserves_trace_and_positivity((da, db, rank, seed) in density_strategy()) {
        let rho = random_density(da, db, rank, seed).unwrap();
        for over in [Subsystem::A, Subsystem::B] {
            let reduced = partial_trace(&rho, over);
            prop_assert!((reduced.trace() - 1.0).norm() < 1e-12);
            prop_assert!(reduced.hermiticity_residual() < 1e-15);
            let low = eig_hermitian(&reduced, false).unwrap().eigenvalues[0];
            prop_assert!(low > -1e-12);
        }
    }

    #[test]
    fn subadditivity_and_araki_lieb((da, db, rank, seed) in density_strategy()) {
        let rho = random_density(da, db, rank, seed).unwrap();
        let base = LogBase::TWO;
        let s_ab = entropy_of_spectrum(rho.spectrum(), base);
        let s_a = von_neumann_entropy(&partial_trace(&rho, Subsystem::B), base).unwrap();
        let s_b = von_neumann_entropy(&partial_trace(&rho, Subsystem::A), base).unwrap();
        prop_assert!(s_ab <= s_a + s_b + 1e-10);
        prop_assert!(s_ab >= (s_a - s_b).abs() - 1e-10);
    }

    #[test]
    fn unitary_conjugation_preserves_spectrum(seed in any::<u64>(), n in 2usize..=7) {
        let h = random_hermitian(n, seed);
        let g = random_hermitian(n, seed.wrapping_add(1));
        let u = eig_hermitian(&g, true).unwrap().eigenvectors.unwrap();
        let conj = &(&u * &h) * &u.adjoint();
        let a = eig_hermitian(&h, false).unwrap().eigenvalues;
        let b = eig_hermitian(&conj, false).unwrap().eigenvalues;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn swap_exchanges_marginals((da, db, rank, seed) in density_strategy()) {
        let rho = random_density(da, db, rank, seed).unwrap();
        let swapped = rho.swapped();
        prop_assert_eq!((swapped.dim_a(), swapped.dim_b()), (db, da));
        prop_assert!(partial_trace(&swapped, Subsystem::A).max_abs_diff(&partial_trace(&rho, Subsystem::B)) < 1e-15);
        prop_assert!(partial_trace(&swapped, Subsystem::B).max_abs_diff(&partial_trace(&rho, Subsystem::A)) < 1e-15);
    }
}
