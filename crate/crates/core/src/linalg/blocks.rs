//! Sparsity-block decomposition.
//!
//! Two indices share a block when they are connected through entries whose
//! modulus exceeds the zero tolerance. Eigenproblems of decoupled blocks can be
//! solved independently, which for X-shaped matrices leaves 2×2 (and 1×1)
//! problems.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Result;
use crate::linalg::eigen::eigenvalues_unchecked;
use crate::matrix::ComplexMatrix;

/// Connected components of the graph with an edge `(i, j)` iff `|m[i][j]| > zero_tol`.
///
/// Components are sorted internally and ordered by their smallest index.
pub fn block_decompose(m: &ComplexMatrix, zero_tol: f64) -> Vec<Vec<usize>> {
    let n = m.rows().min(m.cols());
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for i in 0..n {
        for j in (i + 1)..n {
            if m[(i, j)].norm() > zero_tol || m[(j, i)].norm() > zero_tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }

    let mut slot = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        if slot[root] == usize::MAX {
            slot[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[root]].push(i);
    }
    blocks
}

/// Ascending eigenvalues of a Hermitian matrix, solving each sparsity block separately.
pub fn blockwise_eigenvalues(m: &ComplexMatrix, zero_tol: f64) -> Result<Vec<f64>> {
    let blocks = block_decompose(m, zero_tol);
    if blocks.len() == 1 {
        return eigenvalues_unchecked(m);
    }
    let mut values = Vec::with_capacity(m.rows());
    for block in &blocks {
        if block.len() == 1 {
            values.push(m[(block[0], block[0])].re);
        } else {
            values.extend(eigenvalues_unchecked(&m.principal_submatrix(block))?);
        }
    }
    values.sort_by(f64::total_cmp);
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::C64;

    #[test]
    fn dense_matrix_is_one_block() {
        let m = ComplexMatrix::from_real(3, &[1.0, 0.1, 0.2, 0.1, 1.0, 0.3, 0.2, 0.3, 1.0]).unwrap();
        assert_eq!(block_decompose(&m, 1e-14), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn extended_x_qubit_quartet() {
        // Sparsity of the 8×8 extended-X shape: each 4×4 block is X-patterned.
        let mut m = ComplexMatrix::zeros(8, 8);
        let x_positions = [(0, 0), (0, 3), (1, 1), (1, 2), (2, 1), (2, 2), (3, 0), (3, 3)];
        for bi in 0..2 {
            for bj in 0..2 {
                for &(k, l) in &x_positions {
                    m[(4 * bi + k, 4 * bj + l)] = C64::new(0.05 + 0.01 * (k + l) as f64, 0.0);
                }
            }
        }
        assert_eq!(block_decompose(&m, 1e-14), vec![vec![0, 3, 4, 7], vec![1, 2, 5, 6]]);
    }

    #[test]
    fn qutrit_x_state_pairs() {
        let mut m = ComplexMatrix::identity(9).scale_real(1.0 / 9.0);
        for i in 0..4 {
            m[(i, 8 - i)] = C64::new(0.01, 0.02);
            m[(8 - i, i)] = C64::new(0.01, -0.02);
        }
        assert_eq!(
            block_decompose(&m, 1e-14),
            vec![vec![0, 8], vec![1, 7], vec![2, 6], vec![3, 5], vec![4]]
        );
    }
}
