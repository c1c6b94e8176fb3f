//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::{Error, Result};

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 10_000;

/// Rank by Gaussian elimination with partial pivoting. A pivot counts when
/// it exceeds `rel_tol` times the largest absolute entry of `a`.
pub fn numeric_rank(a: &DMatrix<f64>, rel_tol: f64) -> usize {
    let mut work = a.clone();
    let (rows, cols) = work.shape();
    let scale = work.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    let threshold = rel_tol * scale;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let (best, best_val) = (rank..rows)
            .map(|r| (r, work[(r, col)].abs()))
            .fold((rank, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best_val <= threshold {
            continue;
        }
        work.swap_rows(rank, best);
        let pivot = work[(rank, col)];
        for r in rank + 1..rows {
            let f = work[(r, col)] / pivot;
            if f != 0.0 {
                for c in col..cols {
                    let v = work[(rank, c)];
                    work[(r, c)] -= f * v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Eigenpairs of a symmetric matrix sorted by ascending eigenvalue; column
/// `i` of the returned matrix belongs to eigenvalue `i`.
pub fn symmetric_eigen_ascending(a: DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    let eig = SymmetricEigen::try_new(a, EIGEN_EPS, EIGEN_MAX_ITER).ok_or(Error::ConvergenceFailure(n))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((values, vectors))
}

/// Orthonormal basis (as columns) of the null space of `a`.
pub fn null_space(a: &DMatrix<f64>, rel_tol: f64) -> Result<DMatrix<f64>> {
    let gram = a.transpose() * a;
    let (values, vectors) = symmetric_eigen_ascending(gram)?;
    let top = values.last().copied().unwrap_or(0.0).max(0.0);
    let dim = values.iter().take_while(|&&v| v <= rel_tol * top.max(1.0)).count();
    Ok(vectors.columns(0, dim).into_owned())
}

/// Solves `a x = b` by LU with partial pivoting.
pub fn solve(a: DMatrix<f64>, b: &DVector<f64>) -> Result<DVector<f64>> {
    a.lu().solve(b).ok_or(Error::SingularSystem)
}
