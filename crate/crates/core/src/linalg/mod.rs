//! Complex-matrix foundation: validation, Hermitian eigensolving, partial
//! traces, entropies and sparsity blocks.

pub mod blocks;
pub mod density;
pub mod eigen;
pub mod entropy;

pub use blocks::{block_decompose, blockwise_eigenvalues};
pub use density::{
    partial_trace, partial_trace_raw, tensor_product, validate_density, BipartiteDensity, ValidationReport,
    DEFAULT_PSD_TOLERANCE,
};
pub use eigen::{eig_hermitian, HermitianSpectrum};
pub use entropy::{entropy_of_spectrum, von_neumann_entropy, LogBase};
