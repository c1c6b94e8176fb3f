//! Explicit orthonormal eigenbasis of `N(S_k(G))` assembled from an
//! eigendecomposition of `N(G)` and a kernel basis of the incidence matrix.
//!
//! Vertices follow the `S_k` layout: the `n` original vertices, then `k`
//! branch blocks of `m` subdivision vertices each. With `C = D^-1/2 B` and
//! `u_a = C^T v_a / sqrt(1 + sigma_a)` (a unit vector whenever
//! `sigma_a != -1`, since `C C^T = I + N(G)`), the basis is:
//!
//! * `(v_a, ±u_a/sqrt(k), ..., ±u_a/sqrt(k)) / sqrt(2)` with eigenvalue
//!   `±sqrt((1 + sigma_a)/2)`;
//! * `(v_n, 0, ..., 0)` with eigenvalue 0 when `G` is bipartite
//!   (`sigma_n = -1`, so `C^T v_n = 0`);
//! * `(0, h_j[0] u_a, ..., h_j[k-1] u_a)` with eigenvalue 0, for the `k - 1`
//!   Helmert contrasts `h_j` of length `k` (`h_{k-1}` carries weights
//!   `1/sqrt(k(k-1))` and `-sqrt((k-1)/k)`);
//! * `(0, ..., y_z, ..., 0)` with eigenvalue 0, one per kernel vector `y_z`
//!   of `B(G)` and per branch block.

use nalgebra::{DMatrix, DVector};

use super::EigenDecomposition;
use crate::{linalg, Error, Graph, Result};

const KERNEL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenFamily {
    /// Built from base eigenvector `a`; `positive` selects the sign of the
    /// subdivision blocks.
    Paired { a: usize, positive: bool },
    /// `(v_n, 0, ..., 0)` for bipartite `G`.
    BipartiteTail { a: usize },
    /// Helmert contrast `j` (1-based) across branches for base eigenvector `a`.
    BranchContrast { a: usize, j: usize },
    /// Kernel vector `z` of `B(G)` placed in branch block `branch`.
    Kernel { z: usize, branch: usize },
}

#[derive(Debug, Clone)]
pub struct SkEigenbasis {
    pub eigenvalues: Vec<f64>,
    /// Column `c` is the eigenvector of `eigenvalues[c]`.
    pub vectors: DMatrix<f64>,
    pub families: Vec<EigenFamily>,
    /// Orthonormal basis of the kernel of `B(G)`, one column per vector.
    pub kernel: DMatrix<f64>,
}

impl SkEigenbasis {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `max ||N x - mu x||_inf` over all constructed pairs.
    pub fn max_residual(&self, normalized_adjacency: &DMatrix<f64>) -> f64 {
        let nx = normalized_adjacency * &self.vectors;
        let mut worst = 0.0f64;
        for c in 0..self.len() {
            let r = nx.column(c) - self.vectors.column(c) * self.eigenvalues[c];
            worst = worst.max(r.amax());
        }
        worst
    }

    /// Largest entry of `X^T X - I`.
    pub fn orthonormality_error(&self) -> f64 {
        let c = self.len();
        (self.vectors.transpose() * &self.vectors - DMatrix::<f64>::identity(c, c)).amax()
    }

    pub fn count_eigenvalue(&self, value: f64, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|x| (*x - value).abs() <= tol).count()
    }
}

fn helmert(k: usize, j: usize) -> Vec<f64> {
    let scale = ((j * (j + 1)) as f64).sqrt();
    (0..k)
        .map(|l| match l.cmp(&j) {
            std::cmp::Ordering::Less => 1.0 / scale,
            std::cmp::Ordering::Equal => -(j as f64) / scale,
            std::cmp::Ordering::Greater => 0.0,
        })
        .collect()
}

/// Index of the base eigenvector with `sigma = -1`, present iff `G` is bipartite.
fn tail_index(g: &Graph, decomp: &EigenDecomposition) -> Option<usize> {
    g.is_bipartite().then(|| decomp.n() - 1)
}

pub fn sk_eigenbasis(g: &Graph, k: usize, decomp: &EigenDecomposition) -> Result<SkEigenbasis> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    let (n, m) = (g.n(), g.m());
    let size = n + k * m;
    let tail = tail_index(g, decomp);

    let incidence = g.incidence_matrix().into_matrix();
    let kernel = linalg::null_space(&incidence, KERNEL_TOL)?;
    let expected = m - g.incidence_rank();
    if kernel.ncols() != expected {
        return Err(Error::NumericalRankFailure {
            expected,
            found: kernel.ncols(),
        });
    }

    let inv_sqrt_deg: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut c_mat = incidence;
    for (i, s) in inv_sqrt_deg.iter().enumerate() {
        c_mat.row_mut(i).scale_mut(*s);
    }

    let mut eigenvalues = Vec::with_capacity(size);
    let mut columns: Vec<DVector<f64>> = Vec::with_capacity(size);
    let mut families = Vec::with_capacity(size);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let inv_sqrtk = 1.0 / (k as f64).sqrt();

    for a in 0..n {
        let v = decomp.vectors().column(a);
        if Some(a) == tail {
            let mut x = DVector::zeros(size);
            x.rows_mut(0, n).copy_from(&v);
            eigenvalues.push(0.0);
            columns.push(x);
            families.push(EigenFamily::BipartiteTail { a });
            continue;
        }
        let sigma = decomp.sigma()[a];
        let u = c_mat.transpose() * v / (1.0 + sigma).sqrt();
        let mu = ((1.0 + sigma) / 2.0).sqrt();
        for positive in [true, false] {
            let sign = if positive { 1.0 } else { -1.0 };
            let mut x = DVector::zeros(size);
            x.rows_mut(0, n).copy_from(&(v * inv_sqrt2));
            for l in 0..k {
                x.rows_mut(n + l * m, m).copy_from(&(&u * (sign * inv_sqrt2 * inv_sqrtk)));
            }
            eigenvalues.push(sign * mu);
            columns.push(x);
            families.push(EigenFamily::Paired { a, positive });
        }
        for j in 1..k {
            let h = helmert(k, j);
            let mut x = DVector::zeros(size);
            for (l, w) in h.iter().enumerate() {
                x.rows_mut(n + l * m, m).copy_from(&(&u * *w));
            }
            eigenvalues.push(0.0);
            columns.push(x);
            families.push(EigenFamily::BranchContrast { a, j });
        }
    }
    for branch in 0..k {
        for z in 0..kernel.ncols() {
            let mut x = DVector::zeros(size);
            x.rows_mut(n + branch * m, m).copy_from(&kernel.column(z));
            eigenvalues.push(0.0);
            columns.push(x);
            families.push(EigenFamily::Kernel { z, branch });
        }
    }
    debug_assert_eq!(columns.len(), size);

    Ok(SkEigenbasis {
        eigenvalues,
        vectors: DMatrix::from_columns(&columns),
        families,
        kernel,
    })
}

/// Kernel mass at one subdivision vertex: the measured sum of squared
/// kernel-vector entries against the value implied by completeness of the
/// other families, `1 - 1/m - sum_a (v_as/sqrt(d_s) + v_at/sqrt(d_t))^2 / (1 + sigma_a)`
/// over `a >= 2` with `sigma_a != -1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualMass {
    pub edge: usize,
    pub measured: f64,
    pub predicted: f64,
}

pub fn residual_mass(g: &Graph, decomp: &EigenDecomposition, basis: &SkEigenbasis) -> Vec<ResidualMass> {
    let tail = tail_index(g, decomp);
    let m = g.m() as f64;
    let deg: Vec<f64> = g.degrees().iter().map(|&d| d as f64).collect();
    g.edges()
        .iter()
        .enumerate()
        .map(|(e, &(s, t))| {
            let measured = basis.kernel.row(e).norm_squared();
            let spread: f64 = (1..decomp.n())
                .filter(|&a| Some(a) != tail)
                .map(|a| {
                    let w = decomp.component(a, s) / deg[s].sqrt() + decomp.component(a, t) / deg[t].sqrt();
                    w * w / (1.0 + decomp.sigma()[a])
                })
                .sum();
            ResidualMass {
                edge: e,
                measured,
                predicted: 1.0 - 1.0 / m - spread,
            }
        })
        .collect()
}
