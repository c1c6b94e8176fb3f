//! Simple connected undirected graphs.
//!
//! Vertices are dense indices `0..n`. Edges are kept as `(min, max)` pairs in
//! lexicographic order, so edge `e` has a stable index that the subdivision
//! transforms use to address new vertices.

mod edgelist;
mod generate;
mod matrix_tree;

pub use edgelist::{parse_edge_list, read_edge_list, write_edge_list};
pub use generate::{generate, GraphKind};
pub use matrix_tree::{spanning_tree_count_exact, spanning_tree_count_with_cofactor};

use std::collections::VecDeque;

use nalgebra::DMatrix;

use crate::{linalg, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates and builds a graph. Edge endpoints may be given in either
    /// order; the stored edge list is canonical.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        if n < 2 || canon.is_empty() {
            return Err(Error::TooSmall);
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let g = Graph {
            n,
            edges: canon,
            adjacency,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Index of edge `{u, v}` in the canonical edge list.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Hop distances from `source`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Proper 2-coloring (entries 0/1) if one exists. Vertex 0 gets color 0.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let mut color: Vec<Option<u8>> = vec![None; self.n];
        color[0] = Some(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u].unwrap();
            for &w in &self.adjacency[u] {
                match color[w] {
                    None => {
                        color[w] = Some(1 - cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return None,
                    Some(_) => {}
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    pub fn adjacency_matrix(&self) -> DMatrix<f64> {
        let mut a = DMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        a
    }

    /// Combinatorial Laplacian `D - A`.
    pub fn laplacian_matrix(&self) -> DMatrix<f64> {
        let mut l = -self.adjacency_matrix();
        for v in 0..self.n {
            l[(v, v)] = self.degree(v) as f64;
        }
        l
    }

    pub fn incidence_matrix(&self) -> IncidenceMatrix {
        let mut b = DMatrix::zeros(self.n, self.m());
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            b[(u, e)] = 1.0;
            b[(v, e)] = 1.0;
        }
        IncidenceMatrix(b)
    }

    /// Rank of the vertex-edge incidence matrix from the bipartite test:
    /// `n - 1` for bipartite graphs, `n` otherwise.
    pub fn incidence_rank(&self) -> usize {
        if self.is_bipartite() {
            self.n - 1
        } else {
            self.n
        }
    }
}

/// Unsigned vertex-edge incidence matrix, `n x m` with 0/1 entries.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceMatrix(DMatrix<f64>);

impl IncidenceMatrix {
    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    /// Rank by Gaussian elimination, pivot threshold `1e-9` times the largest
    /// entry.
    pub fn numeric_rank(&self) -> usize {
        linalg::numeric_rank(&self.0, 1e-9)
    }
}
