use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::{Error, Result};

const RANDOM_MAX_DRAWS: usize = 100;

/// Graph families used to build verification corpora.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// Erdős–Rényi draws from a seeded ChaCha stream until one is connected.
    RandomConnected { n: usize, p: f64, seed: u64 },
}

pub fn generate(kind: &GraphKind) -> Result<Graph> {
    let invalid = |msg: &str| Err(Error::InvalidParams(format!("{kind:?}: {msg}")));
    match *kind {
        GraphKind::Path(n) => {
            if n < 2 {
                return invalid("path needs n >= 2");
            }
            let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
            Graph::new(n, &edges)
        }
        GraphKind::Cycle(n) => {
            if n < 3 {
                return invalid("cycle needs n >= 3");
            }
            let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
            Graph::new(n, &edges)
        }
        GraphKind::Complete(n) => {
            if n < 2 {
                return invalid("complete graph needs n >= 2");
            }
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            Graph::new(n, &edges)
        }
        GraphKind::CompleteBipartite(a, b) => {
            if a < 1 || b < 1 {
                return invalid("both parts need at least one vertex");
            }
            let edges: Vec<_> = (0..a)
                .flat_map(|u| (a..a + b).map(move |v| (u, v)))
                .collect();
            Graph::new(a + b, &edges)
        }
        GraphKind::RandomConnected { n, p, seed } => {
            if n < 2 || !(p > 0.0 && p <= 1.0) {
                return invalid("need n >= 2 and 0 < p <= 1");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..RANDOM_MAX_DRAWS {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen::<f64>() < p {
                            edges.push((u, v));
                        }
                    }
                }
                match Graph::new(n, &edges) {
                    Ok(g) => return Ok(g),
                    Err(Error::Disconnected | Error::TooSmall) => continue,
                    Err(e) => return Err(e),
                }
            }
            invalid("no connected draw within 100 attempts")
        }
    }
}
