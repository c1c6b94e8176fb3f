//! Normalized Laplacian spectra of base and subdivided graphs.

mod eigenbasis;
mod maps;
mod predict;

pub use eigenbasis::{residual_mass, sk_eigenbasis, EigenFamily, ResidualMass, SkEigenbasis};
pub use maps::{cubic_roots, f_maps};
pub use predict::{predicted_spectrum, predicted_spectrum_iterated, predicted_spectrum_s2k, predicted_spectrum_sk};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::{caps, linalg, Graph, Result};

/// Default absolute tolerance for multiplicity grouping.
pub const GROUPING_TOL: f64 = 1e-7;

/// Multiset of real eigenvalues, kept sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    grouping_tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Group {
    pub value: f64,
    pub mult: usize,
}

impl Spectrum {
    pub fn new(mut values: Vec<f64>, grouping_tol: f64) -> Self {
        values.sort_by(f64::total_cmp);
        Spectrum { values, grouping_tol }
    }

    pub fn with_default_tol(values: Vec<f64>) -> Self {
        Spectrum::new(values, GROUPING_TOL)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn grouping_tol(&self) -> f64 {
        self.grouping_tol
    }

    /// Chains of consecutive values closer than the grouping tolerance, each
    /// reported by its mean.
    pub fn grouped(&self) -> Vec<Group> {
        let mut groups: Vec<(f64, usize, f64)> = Vec::new(); // (sum, count, last)
        for &x in &self.values {
            match groups.last_mut() {
                Some((sum, count, last)) if x - *last <= self.grouping_tol => {
                    *sum += x;
                    *count += 1;
                    *last = x;
                }
                _ => groups.push((x, 1, x)),
            }
        }
        groups
            .into_iter()
            .map(|(sum, count, _)| Group {
                value: sum / count as f64,
                mult: count,
            })
            .collect()
    }

    /// Number of values within the grouping tolerance of `x`.
    pub fn count_near(&self, x: f64) -> usize {
        self.values.iter().filter(|v| (*v - x).abs() <= self.grouping_tol).count()
    }

    /// `{"n":..,"values":[..],"grouped":[{"value":..,"mult":..}]}`
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Record<'a> {
            n: usize,
            values: &'a [f64],
            grouped: Vec<Group>,
        }
        serde_json::to_string(&Record {
            n: self.len(),
            values: &self.values,
            grouped: self.grouped(),
        })
        .expect("spectrum serializes")
    }
}

/// Eigenpairs of the normalized adjacency `N(G) = D^-1/2 A D^-1/2`, with
/// eigenvalues `sigma` in descending order. Column `a` of `vectors` is the
/// eigenvector of `sigma[a]`; the leading one is oriented to be positive.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    sigma: Vec<f64>,
    vectors: DMatrix<f64>,
    degrees: Vec<usize>,
    m: usize,
}

impl EigenDecomposition {
    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn vectors(&self) -> &DMatrix<f64> {
        &self.vectors
    }

    /// Component `i` of eigenvector `a`.
    pub fn component(&self, a: usize, i: usize) -> f64 {
        self.vectors[(i, a)]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `max_a ||N v_a - sigma_a v_a||_inf` against the given `N`.
    pub fn max_residual(&self, normalized_adjacency: &DMatrix<f64>) -> f64 {
        let nv = normalized_adjacency * &self.vectors;
        let mut worst = 0.0f64;
        for a in 0..self.n() {
            let r = nv.column(a) - self.vectors.column(a) * self.sigma[a];
            worst = worst.max(r.amax());
        }
        worst
    }

    /// Largest entry of `V^T V - I`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.n();
        (self.vectors.transpose() * &self.vectors - DMatrix::<f64>::identity(n, n)).amax()
    }
}

/// `L(G) = I - D^-1/2 A D^-1/2`.
pub fn normalized_laplacian(g: &Graph) -> DMatrix<f64> {
    let mut l = -normalized_adjacency(g);
    for i in 0..g.n() {
        l[(i, i)] = 1.0;
    }
    l
}

pub fn normalized_adjacency(g: &Graph) -> DMatrix<f64> {
    let inv_sqrt: Vec<f64> = g.degrees().iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut a = DMatrix::zeros(g.n(), g.n());
    for &(u, v) in g.edges() {
        let w = inv_sqrt[u] * inv_sqrt[v];
        a[(u, v)] = w;
        a[(v, u)] = w;
    }
    a
}

/// Dense eigensolve of `N(G)`; the Laplacian spectrum is `1 - sigma`.
pub fn eigen_decompose(g: &Graph, cap: usize) -> Result<(Spectrum, EigenDecomposition)> {
    caps::check("eigensolver", g.n(), cap)?;
    let n = g.n();
    let (ascending, vecs) = linalg::symmetric_eigen_ascending(normalized_adjacency(g))?;
    let sigma: Vec<f64> = ascending.iter().rev().copied().collect();
    let mut vectors = DMatrix::from_fn(n, n, |i, a| vecs[(i, n - 1 - a)]);
    if vectors.column(0).sum() < 0.0 {
        vectors.column_mut(0).neg_mut();
    }
    let spectrum = Spectrum::with_default_tol(sigma.iter().map(|s| 1.0 - s).collect());
    let decomp = EigenDecomposition {
        sigma,
        vectors,
        degrees: g.degrees(),
        m: g.m(),
    };
    Ok((spectrum, decomp))
}

/// Outcome of comparing two spectra pointwise after sorting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectraMatch {
    pub len_a: usize,
    pub len_b: usize,
    pub length_mismatch: bool,
    /// `None` when the lengths differ.
    pub max_abs_diff: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    pub grouped_a: Vec<Group>,
    pub grouped_b: Vec<Group>,
}

pub fn spectra_match(a: &Spectrum, b: &Spectrum, tol: f64) -> SpectraMatch {
    let length_mismatch = a.len() != b.len();
    let max_abs_diff = (!length_mismatch).then(|| {
        a.values()
            .iter()
            .zip(b.values())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    });
    SpectraMatch {
        len_a: a.len(),
        len_b: b.len(),
        length_mismatch,
        max_abs_diff,
        tol,
        pass: max_abs_diff.is_some_and(|d| d <= tol),
        grouped_a: a.grouped(),
        grouped_b: b.grouped(),
    }
}
