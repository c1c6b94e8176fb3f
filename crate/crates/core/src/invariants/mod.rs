//! Multiplicative degree-Kirchhoff index `Kf*`, Kemeny's constant `Ke` and
//! spanning-tree counts.
//!
//! The spectral definitions here are the reference values. Closed forms for
//! iterated subdivisions, evaluated exactly as published, live in
//! [`as_published`] and are only ever compared against these.

pub mod as_published;

use num_bigint::BigUint;
use num_traits::{FromPrimitive, ToPrimitive};

use crate::graph::spanning_tree_count_exact;
use crate::spectra::{eigen_decompose, Spectrum};
use crate::transforms::{predicted_sizes, Variant};
use crate::{Caps, Error, Graph, Result};

/// Spanning-tree estimates at or below this are rounded to an exact integer.
pub const TAU_ROUNDING_CAP: f64 = 2_147_483_648.0;

/// Largest allowed distance, relative to the value, between a rounded
/// spanning-tree estimate and the nearest integer.
pub const TAU_ROUNDING_SLACK: f64 = 1e-4;

/// Sum of `1/lambda` over the nonzero eigenvalues; the spectrum must have
/// exactly one eigenvalue at 0.
fn reciprocal_sum(spec: &Spectrum) -> Result<f64> {
    let tol = spec.grouping_tol();
    let zeros = spec.count_near(0.0);
    if zeros != 1 {
        return Err(Error::ZeroMultiplicity(zeros));
    }
    Ok(spec.values().iter().filter(|x| x.abs() > tol).map(|x| 1.0 / x).sum())
}

/// `Kf*(G) = 2m sum_{i>=2} 1/lambda_i`.
pub fn kf_star(spec: &Spectrum, m: usize) -> Result<f64> {
    Ok(2.0 * m as f64 * reciprocal_sum(spec)?)
}

/// `Ke(G) = sum_{i>=2} 1/lambda_i`.
pub fn kemeny(spec: &Spectrum) -> Result<f64> {
    reciprocal_sum(spec)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauSpectral {
    pub log_tau: f64,
    /// Present when the estimate is small enough to round reliably.
    pub rounded: Option<BigUint>,
}

/// `tau(G) = prod d_i * prod_{i>=2} lambda_i / 2m`, in log space.
pub fn tau_spectral(spec: &Spectrum, degrees: &[usize]) -> Result<TauSpectral> {
    if degrees.len() != spec.len() {
        return Err(Error::SpectrumInconsistent(format!(
            "{} degrees for {} eigenvalues",
            degrees.len(),
            spec.len()
        )));
    }
    let tol = spec.grouping_tol();
    let zeros = spec.count_near(0.0);
    if zeros != 1 {
        return Err(Error::ZeroMultiplicity(zeros));
    }
    let two_m: usize = degrees.iter().sum();
    let log_deg: f64 = degrees.iter().map(|&d| (d as f64).ln()).sum();
    let log_lambda: f64 = spec.values().iter().filter(|x| x.abs() > tol).map(|x| x.ln()).sum();
    let log_tau = log_deg + log_lambda - (two_m as f64).ln();
    let estimate = log_tau.exp();
    let rounded = if estimate <= TAU_ROUNDING_CAP {
        let nearest = estimate.round();
        if (estimate - nearest).abs() > TAU_ROUNDING_SLACK * nearest.max(1.0) {
            return Err(Error::RoundingAmbiguity(estimate));
        }
        BigUint::from_f64(nearest)
    } else {
        None
    };
    Ok(TauSpectral { log_tau, rounded })
}

/// One `S_k` step of `Kf*`: `8k Kf*(G) + 2km(1 + 2km - 2n)`.
pub fn kf_star_sk_step(kf: f64, n: usize, m: usize, k: usize) -> f64 {
    let km = (k * m) as f64;
    8.0 * k as f64 * kf + 2.0 * km * (1.0 + 2.0 * km - 2.0 * n as f64)
}

/// `Kf*(S_k^r(G))` by `r` steps of [`kf_star_sk_step`].
pub fn kf_star_sk_iterated(kf: f64, n: usize, m: usize, k: usize, r: usize) -> f64 {
    let (mut kf, mut n, mut m) = (kf, n, m);
    for _ in 0..r {
        kf = kf_star_sk_step(kf, n, m, k);
        n += k * m;
        m *= 2 * k;
    }
    kf
}

/// `Ke(S_k^r(G)) = Kf*(S_k^r(G)) / 2|E_r|`.
pub fn kemeny_sk_iterated(kf: f64, n: usize, m: usize, k: usize, r: usize) -> f64 {
    let edges = predicted_sizes(n, m, k, r, Variant::Sk).1;
    kf_star_sk_iterated(kf, n, m, k, r) / (2.0 * edges.to_f64().unwrap_or(f64::INFINITY))
}

/// Invariants of one graph from its own spectrum, with the exact
/// Matrix-Tree count when the graph is within the cap.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantBundle {
    pub kf_star: f64,
    pub kemeny: f64,
    pub log_tau: f64,
    pub tau_exact: Option<BigUint>,
}

impl InvariantBundle {
    pub fn compute(g: &Graph, caps: &Caps) -> Result<Self> {
        let (spec, _) = eigen_decompose(g, caps.eigen)?;
        let tau = tau_spectral(&spec, &g.degrees())?;
        let tau_exact = if g.n() <= caps.matrix_tree {
            Some(spanning_tree_count_exact(g, caps.matrix_tree)?)
        } else {
            None
        };
        Ok(InvariantBundle {
            kf_star: kf_star(&spec, g.m())?,
            kemeny: kemeny(&spec)?,
            log_tau: tau.log_tau,
            tau_exact,
        })
    }
}

/// Natural log of a big integer, accurate to double precision.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};
    use crate::transforms::sk_transform;

    fn spec(kind: GraphKind) -> (Graph, Spectrum) {
        let g = generate(&kind).unwrap();
        let s = eigen_decompose(&g, 1000).unwrap().0;
        (g, s)
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn kirchhoff_and_kemeny_examples() {
        let (g, s) = spec(GraphKind::Complete(3));
        assert!(rel(kf_star(&s, g.m()).unwrap(), 8.0) < 1e-12);
        assert!(rel(kemeny(&s).unwrap(), 4.0 / 3.0) < 1e-12);
        let (g, s) = spec(GraphKind::Cycle(6));
        assert!(rel(kf_star(&s, g.m()).unwrap(), 70.0) < 1e-12);
        assert!(rel(kemeny(&s).unwrap(), 35.0 / 6.0) < 1e-12);
        let (g, s) = spec(GraphKind::Path(2));
        assert!(rel(kf_star(&s, g.m()).unwrap(), 1.0) < 1e-12);
        assert!(rel(kemeny(&s).unwrap(), 0.5) < 1e-12);
    }

    #[test]
    fn zero_multiplicity_error() {
        let s = Spectrum::with_default_tol(vec![0.0, 0.0, 1.0]);
        assert_eq!(kf_star(&s, 2), Err(Error::ZeroMultiplicity(2)));
        let s = Spectrum::with_default_tol(vec![0.5, 1.0]);
        assert_eq!(kemeny(&s), Err(Error::ZeroMultiplicity(0)));
    }

    #[test]
    fn tau_examples() {
        for (kind, want) in [
            (GraphKind::Cycle(6), 6u32),
            (GraphKind::Complete(3), 3),
            (GraphKind::Path(3), 1),
            (GraphKind::Complete(5), 125),
        ] {
            let (g, s) = spec(kind);
            let t = tau_spectral(&s, &g.degrees()).unwrap();
            assert_eq!(t.rounded, Some(BigUint::from(want)));
            assert!((t.log_tau - (want as f64).ln()).abs() < 1e-9);
        }
    }

    #[test]
    fn tau_rounding_ambiguity() {
        // P2 degrees with a spectrum that implies tau = 1.25
        let s = Spectrum::with_default_tol(vec![0.0, 2.5]);
        assert!(matches!(tau_spectral(&s, &[1, 1]), Err(Error::RoundingAmbiguity(_))));
    }

    #[test]
    fn step_examples() {
        assert_eq!(kf_star_sk_step(8.0, 3, 3, 1), 70.0);
        assert_eq!(kf_star_sk_step(1.0, 2, 1, 1), 6.0);
        let (g, s) = spec(GraphKind::Path(3));
        assert!(rel(kf_star(&s, g.m()).unwrap(), 6.0) < 1e-12);
    }

    #[test]
    fn step_matches_spectrum_of_transformed_graph() {
        for kind in [GraphKind::Cycle(5), GraphKind::CompleteBipartite(2, 3), GraphKind::Complete(4)] {
            let (g, s) = spec(kind);
            let kf = kf_star(&s, g.m()).unwrap();
            for k in 1..=3 {
                let t = sk_transform(&g, k).unwrap().graph;
                let ts = eigen_decompose(&t, 1000).unwrap().0;
                assert!(rel(kf_star_sk_step(kf, g.n(), g.m(), k), kf_star(&ts, t.m()).unwrap()) < 1e-8);
                let ke = kemeny_sk_iterated(kf, g.n(), g.m(), k, 1);
                assert!(rel(ke, kemeny(&ts).unwrap()) < 1e-8);
            }
        }
    }

    #[test]
    fn bundle_identities() {
        let g = generate(&GraphKind::RandomConnected { n: 8, p: 0.4, seed: 7 }).unwrap();
        let b = InvariantBundle::compute(&g, &Caps::default()).unwrap();
        assert!(rel(b.kf_star, 2.0 * g.m() as f64 * b.kemeny) < 1e-10);
        let exact = b.tau_exact.unwrap();
        assert!((ln_biguint(&exact) - b.log_tau).abs() <= 1e-6);
    }

    #[test]
    fn big_log() {
        let x = BigUint::from(3u32).pow(2000);
        assert!(rel(ln_biguint(&x), 2000.0 * 3f64.ln()) < 1e-14);
        assert_eq!(ln_biguint(&BigUint::from(1u32)), 0.0);
    }
}
