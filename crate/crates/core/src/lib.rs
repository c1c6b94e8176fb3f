//! Parallel subdivision graphs `S_k(G)` (each edge replaced by `k` parallel
//! paths of length 2) and `S_2k(G)` (`k` parallel paths of length 3).
//!
//! The crate predicts normalized Laplacian spectra, random-walk hitting
//! times, resistance distances, the multiplicative degree-Kirchhoff index,
//! Kemeny's constant and spanning-tree counts of the transformed graphs from
//! data of the base graph, and checks each prediction against a brute-force
//! oracle computed on the transformed graph itself.
//!
//! Modules, bottom up:
//!
//! * [`graph`]: validated simple connected graphs, generators, edge-list IO,
//!   incidence rank and the exact Matrix-Tree count.
//! * [`transforms`]: `S_k` / `S_2k` construction with vertex provenance.
//! * [`spectra`]: eigendecomposition, spectral maps and predicted spectra.
//! * [`walk`]: hitting times, resistance distances, commute times.
//! * [`invariants`]: `Kf*`, Kemeny's constant, spanning-tree counts.
//! * [`verify`]: corpus-wide verification and report emission.

pub mod caps;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod linalg;
pub mod report;
pub mod spectra;
pub mod transforms;
pub mod verify;
pub mod walk;

pub use caps::Caps;
pub use error::{Error, Result};
pub use graph::Graph;
pub use transforms::{TransformedGraph, Variant, VertexLabel};
