//! Exact spanning-tree counts via the Matrix-Tree theorem.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::Graph;
use crate::{caps, Error, Result};

/// Number of spanning trees, exact. Deletes the row and column of the last
/// vertex from the combinatorial Laplacian and takes the determinant with
/// fraction-free (Bareiss) elimination.
pub fn spanning_tree_count_exact(g: &Graph, cap: usize) -> Result<BigUint> {
    spanning_tree_count_with_cofactor(g, cap, g.n() - 1)
}

/// Same as [`spanning_tree_count_exact`] with an explicit deleted vertex.
pub fn spanning_tree_count_with_cofactor(g: &Graph, cap: usize, deleted: usize) -> Result<BigUint> {
    caps::check("matrix-tree", g.n(), cap)?;
    if deleted >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: deleted, n: g.n() });
    }
    // Low-degree vertices first keeps fill-in small on subdivided graphs.
    let mut order: Vec<usize> = (0..g.n()).filter(|&v| v != deleted).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }

    let size = order.len();
    let mut a: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); size]; size];
    for (i, &v) in order.iter().enumerate() {
        a[i][i] = BigInt::from(g.degree(v));
        for &w in g.neighbors(v) {
            if w != deleted {
                a[i][pos[w]] = BigInt::from(-1);
            }
        }
    }

    // The reduced Laplacian of a connected graph is positive definite, so
    // every leading minor is positive and no pivoting is needed.
    let mut prev = BigInt::from(1);
    for k in 0..size {
        let pivot = a[k][k].clone();
        if !pivot.is_positive() {
            return Err(Error::SingularSystem);
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let row_k = &upper[k];
        for row in lower.iter_mut() {
            let factor = row[k].clone();
            if factor.is_zero() {
                for x in row.iter_mut().skip(k + 1) {
                    if !x.is_zero() {
                        *x = &*x * &pivot / &prev;
                    }
                }
            } else {
                for j in k + 1..size {
                    let update = &row[j] * &pivot - &factor * &row_k[j];
                    row[j] = update / &prev;
                }
            }
            row[k] = BigInt::zero();
        }
        prev = pivot;
    }
    Ok(prev.to_biguint().unwrap_or_default())
}
