//! Random-walk hitting times, commute times and resistance distances.
//!
//! Oracles work on any graph. The `sk_*` functions evaluate the closed forms
//! that express these quantities on `S_k(G)` through the same quantities on
//! `G`; [`SkVertexRef`] names a vertex of `S_k(G)` in base-graph terms.

mod sk;

pub use sk::{parse_sk_ref, sk_commute_published, sk_hitting_time, sk_resistance, SkVertexRef};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::spectra::EigenDecomposition;
use crate::{caps, linalg, Error, Graph, Result};

/// `entries[(i, j)]` is the expected number of steps for a simple random
/// walk started at `i` to first reach `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct HittingMatrix(DMatrix<f64>);

/// Effective resistances with unit resistors on every edge.
#[derive(Debug, Clone, PartialEq)]
pub struct ResistanceMatrix(DMatrix<f64>);

macro_rules! square_matrix_accessors {
    ($t:ty) => {
        impl $t {
            pub fn n(&self) -> usize {
                self.0.nrows()
            }

            pub fn get(&self, i: usize, j: usize) -> f64 {
                self.0[(i, j)]
            }

            pub fn as_matrix(&self) -> &DMatrix<f64> {
                &self.0
            }

            /// Dense row-major JSON array of arrays.
            pub fn to_json(&self) -> String {
                let rows: Vec<Vec<f64>> = self.0.row_iter().map(|r| r.iter().copied().collect()).collect();
                serde_json::to_string(&rows).expect("matrix serializes")
            }

            pub fn to_csv(&self) -> String {
                let mut out = String::new();
                for row in self.0.row_iter() {
                    let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
        }
    };
}

square_matrix_accessors!(HittingMatrix);
square_matrix_accessors!(ResistanceMatrix);

impl HittingMatrix {
    /// `C_ij = E_iT_j + E_jT_i`.
    pub fn commute(&self) -> DMatrix<f64> {
        &self.0 + self.0.transpose()
    }
}

/// First-step analysis: for every target `j`, solve
/// `d_i h_i - sum_{u ~ i, u != j} h_u = d_i` over `i != j`.
pub fn hitting_times_oracle(g: &Graph, cap: usize) -> Result<HittingMatrix> {
    caps::check("hitting-time oracle", g.n(), cap)?;
    let n = g.n();
    let columns: Vec<DVector<f64>> = (0..n)
        .into_par_iter()
        .map(|target| {
            let idx = |v: usize| if v < target { v } else { v - 1 };
            let mut a = DMatrix::zeros(n - 1, n - 1);
            let mut b = DVector::zeros(n - 1);
            for v in (0..n).filter(|&v| v != target) {
                let r = idx(v);
                a[(r, r)] = g.degree(v) as f64;
                b[r] = g.degree(v) as f64;
                for &w in g.neighbors(v) {
                    if w != target {
                        a[(r, idx(w))] -= 1.0;
                    }
                }
            }
            let h = linalg::solve(a, &b)?;
            Ok(DVector::from_fn(n, |v, _| if v == target { 0.0 } else { h[idx(v)] }))
        })
        .collect::<Result<_>>()?;
    Ok(HittingMatrix(DMatrix::from_columns(&columns)))
}

/// Sign of the cross term in the spectral hitting-time sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossTerm {
    /// `v_aj^2/d_j - v_ai v_aj / sqrt(d_i d_j)`, which agrees with first-step analysis.
    Minus,
    /// The `+` variant, kept to reproduce the printed formula.
    Plus,
}

/// `E_iT_j = 2m sum_{a >= 2} (v_aj^2/d_j -+ v_ai v_aj/sqrt(d_i d_j)) / (1 - sigma_a)`
/// with `sigma_a` the normalized-adjacency eigenvalues.
pub fn hitting_time_spectral(decomp: &EigenDecomposition, i: usize, j: usize, cross: CrossTerm) -> Result<f64> {
    let n = decomp.n();
    for v in [i, j] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if i == j {
        return Ok(0.0);
    }
    let di = decomp.degrees()[i] as f64;
    let dj = decomp.degrees()[j] as f64;
    let sign = match cross {
        CrossTerm::Minus => -1.0,
        CrossTerm::Plus => 1.0,
    };
    let mut sum = 0.0;
    for a in 1..n {
        let gap = 1.0 - decomp.sigma()[a];
        if gap.abs() <= 1e-12 {
            return Err(Error::DegenerateEigenvalue { index: a });
        }
        let (vai, vaj) = (decomp.component(a, i), decomp.component(a, j));
        sum += (vaj * vaj / dj + sign * vai * vaj / (di * dj).sqrt()) / gap;
    }
    Ok(2.0 * decomp.m() as f64 * sum)
}

/// `Omega_ij = L+_ii + L+_jj - 2 L+_ij` with `L+` the Moore–Penrose
/// pseudoinverse of the combinatorial Laplacian.
pub fn resistance_oracle(g: &Graph, cap: usize) -> Result<ResistanceMatrix> {
    caps::check("resistance oracle", g.n(), cap)?;
    let n = g.n();
    let (values, vectors) = linalg::symmetric_eigen_ascending(g.laplacian_matrix())?;
    // connected: exactly one zero eigenvalue, the smallest
    let mut pinv = DMatrix::zeros(n, n);
    for (a, &lambda) in values.iter().enumerate().skip(1) {
        let v = vectors.column(a);
        pinv += (v * v.transpose()) / lambda;
    }
    let omega = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else {
            let (lo, hi) = (i.min(j), i.max(j));
            pinv[(lo, lo)] + pinv[(hi, hi)] - 2.0 * pinv[(lo, hi)]
        }
    });
    Ok(ResistanceMatrix(omega))
}
