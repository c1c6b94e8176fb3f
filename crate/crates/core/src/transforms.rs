//! The `S_k` and `S_2k` subdivision operators.
//!
//! Original vertices keep their indices `0..n`. For base edge `e` (canonical
//! index) and branch `l`:
//!
//! * `S_k` adds one vertex at `n + l*m + e`, adjacent to both endpoints.
//! * `S_2k` adds two vertices at `n + 2*(l*m + e)` (position 1, attached to
//!   the smaller endpoint) and the next index (position 2, attached to the
//!   larger endpoint), joined to each other.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::{caps, Error, Graph, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Sk,
    S2k,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Sk => "sk",
            Variant::S2k => "s2k",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sk" => Ok(Variant::Sk),
            "s2k" => Ok(Variant::S2k),
            other => Err(format!("unknown variant {other:?} (expected sk or s2k)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexLabel {
    Original(usize),
    SkMid { edge: usize, branch: usize },
    S2kNode { edge: usize, branch: usize, pos: u8 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelRecord {
    pub vertex: usize,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edge: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub branch: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pos: Option<u8>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformedGraph {
    pub graph: Graph,
    pub labels: Vec<VertexLabel>,
    pub k: usize,
    pub variant: Variant,
    pub parent_n: usize,
    pub parent_m: usize,
    /// Canonical edge list of the base graph; `SkMid`/`S2kNode` labels index into it.
    pub parent_edges: Vec<(usize, usize)>,
}

impl TransformedGraph {
    /// Base-graph endpoints `(s, t)` of the edge a subdivision vertex sits on.
    pub fn parent_endpoints(&self, v: usize) -> Option<(usize, usize)> {
        match self.labels.get(v)? {
            VertexLabel::Original(_) => None,
            VertexLabel::SkMid { edge, .. } | VertexLabel::S2kNode { edge, .. } => {
                Some(self.parent_edges[*edge])
            }
        }
    }

    pub fn label_records(&self) -> Vec<LabelRecord> {
        self.labels
            .iter()
            .enumerate()
            .map(|(vertex, label)| match *label {
                VertexLabel::Original(_) => LabelRecord {
                    vertex,
                    kind: "original".into(),
                    edge: None,
                    branch: None,
                    pos: None,
                },
                VertexLabel::SkMid { edge, branch } => LabelRecord {
                    vertex,
                    kind: "sk_mid".into(),
                    edge: Some(edge),
                    branch: Some(branch),
                    pos: None,
                },
                VertexLabel::S2kNode { edge, branch, pos } => LabelRecord {
                    vertex,
                    kind: "s2k_node".into(),
                    edge: Some(edge),
                    branch: Some(branch),
                    pos: Some(pos),
                },
            })
            .collect()
    }

    pub fn labels_json(&self) -> String {
        serde_json::to_string(&self.label_records()).expect("label records serialize")
    }
}

/// Index of the `S_k` vertex on base edge `edge`, branch `branch`.
pub fn sk_mid_index(n: usize, m: usize, edge: usize, branch: usize) -> usize {
    n + branch * m + edge
}

/// Index of the `S_2k` vertex at `pos` (1 or 2) on base edge `edge`, branch `branch`.
pub fn s2k_node_index(n: usize, m: usize, edge: usize, branch: usize, pos: u8) -> usize {
    n + 2 * (branch * m + edge) + (pos as usize - 1)
}

pub fn sk_transform(g: &Graph, k: usize) -> Result<TransformedGraph> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    let (n, m) = (g.n(), g.m());
    let mut labels: Vec<VertexLabel> = (0..n).map(VertexLabel::Original).collect();
    let mut edges = Vec::with_capacity(2 * k * m);
    for branch in 0..k {
        for (edge, &(u, v)) in g.edges().iter().enumerate() {
            let mid = sk_mid_index(n, m, edge, branch);
            debug_assert_eq!(mid, labels.len());
            labels.push(VertexLabel::SkMid { edge, branch });
            edges.push((u, mid));
            edges.push((v, mid));
        }
    }
    Ok(TransformedGraph {
        graph: Graph::new(n + k * m, &edges)?,
        labels,
        k,
        variant: Variant::Sk,
        parent_n: n,
        parent_m: m,
        parent_edges: g.edges().to_vec(),
    })
}

pub fn s2k_transform(g: &Graph, k: usize) -> Result<TransformedGraph> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    let (n, m) = (g.n(), g.m());
    let mut labels: Vec<VertexLabel> = (0..n).map(VertexLabel::Original).collect();
    let mut edges = Vec::with_capacity(3 * k * m);
    for branch in 0..k {
        for (edge, &(u, v)) in g.edges().iter().enumerate() {
            // canonical edges have u < v
            let a = s2k_node_index(n, m, edge, branch, 1);
            let b = s2k_node_index(n, m, edge, branch, 2);
            labels.push(VertexLabel::S2kNode { edge, branch, pos: 1 });
            labels.push(VertexLabel::S2kNode { edge, branch, pos: 2 });
            edges.extend([(u, a), (a, b), (b, v)]);
        }
    }
    Ok(TransformedGraph {
        graph: Graph::new(n + 2 * k * m, &edges)?,
        labels,
        k,
        variant: Variant::S2k,
        parent_n: n,
        parent_m: m,
        parent_edges: g.edges().to_vec(),
    })
}

pub fn transform(g: &Graph, k: usize, variant: Variant) -> Result<TransformedGraph> {
    match variant {
        Variant::Sk => sk_transform(g, k),
        Variant::S2k => s2k_transform(g, k),
    }
}

/// `r`-fold application of the chosen operator; `r = 0` returns a copy of `g`.
pub fn iterate_transform(g: &Graph, k: usize, r: usize, variant: Variant, vertex_cap: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    let (v, _) = predicted_sizes(g.n(), g.m(), k, r, variant);
    let v = v.to_usize().unwrap_or(usize::MAX);
    caps::check("iterated transform", v, vertex_cap)?;
    let mut current = g.clone();
    for _ in 0..r {
        current = transform(&current, k, variant)?.graph;
    }
    Ok(current)
}

/// Exact vertex and edge counts of the `r`-th iterate.
pub fn predicted_sizes(n: usize, m: usize, k: usize, r: usize, variant: Variant) -> (BigUint, BigUint) {
    let (n, m, k) = (BigUint::from(n), BigUint::from(m), BigUint::from(k));
    let one = BigUint::one();
    // S_k: edges grow by 2k and vertices by k|E| per step;
    // S_2k: edges grow by 3k and vertices by 2k|E| per step.
    let (ratio, per_edge) = match variant {
        Variant::Sk => (BigUint::from(2u32) * &k, k.clone()),
        Variant::S2k => (BigUint::from(3u32) * &k, BigUint::from(2u32) * &k),
    };
    let power = ratio.pow(r as u32);
    let edges = &m * &power;
    let vertices = &n + &per_edge * &m * (&power - &one) / (&ratio - &one);
    (vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};

    fn k3() -> Graph {
        generate(&GraphKind::Complete(3)).unwrap()
    }

    fn p2() -> Graph {
        generate(&GraphKind::Path(2)).unwrap()
    }

    fn sizes(g: &Graph) -> (usize, usize) {
        (g.n(), g.m())
    }

    fn is_cycle(g: &Graph) -> bool {
        g.degrees().iter().all(|&d| d == 2)
    }

    #[test]
    fn sk_examples() {
        let s = sk_transform(&k3(), 1).unwrap();
        assert_eq!(sizes(&s.graph), (6, 6));
        assert!(is_cycle(&s.graph));

        let s = sk_transform(&k3(), 2).unwrap();
        assert_eq!(sizes(&s.graph), (9, 12));
        assert_eq!(&s.graph.degrees()[..3], &[4, 4, 4]);

        let s = sk_transform(&p2(), 3).unwrap();
        assert_eq!(sizes(&s.graph), (5, 6));
        assert_eq!(s.graph.degrees(), vec![3, 3, 2, 2, 2]);
    }

    #[test]
    fn s2k_examples() {
        let s = s2k_transform(&k3(), 1).unwrap();
        assert_eq!(sizes(&s.graph), (9, 9));
        assert!(is_cycle(&s.graph));

        let s = s2k_transform(&k3(), 2).unwrap();
        assert_eq!(sizes(&s.graph), (15, 18));
        assert_eq!(&s.graph.degrees()[..3], &[4, 4, 4]);

        // two internally disjoint 0-a-b-1 paths: a hexagon
        let s = s2k_transform(&p2(), 2).unwrap();
        assert_eq!(sizes(&s.graph), (6, 6));
        assert!(is_cycle(&s.graph));
        assert_eq!(s.graph.edges(), &[(0, 2), (0, 4), (1, 3), (1, 5), (2, 3), (4, 5)]);
    }

    #[test]
    fn labels_and_addressing() {
        let g = generate(&GraphKind::Cycle(4)).unwrap();
        let s = sk_transform(&g, 2).unwrap();
        assert_eq!(s.labels[sk_mid_index(4, 4, 3, 1)], VertexLabel::SkMid { edge: 3, branch: 1 });
        let (u, v) = g.edges()[3];
        assert_eq!(s.graph.neighbors(sk_mid_index(4, 4, 3, 1)), &[u, v]);

        let s = s2k_transform(&g, 2).unwrap();
        let a = s2k_node_index(4, 4, 2, 1, 1);
        let b = s2k_node_index(4, 4, 2, 1, 2);
        let (u, v) = g.edges()[2];
        assert_eq!(s.labels[a], VertexLabel::S2kNode { edge: 2, branch: 1, pos: 1 });
        assert!(s.graph.has_edge(a, u.min(v)) && s.graph.has_edge(a, b) && s.graph.has_edge(b, u.max(v)));
        assert_eq!(s.parent_endpoints(b), Some((u, v)));
        assert_eq!(s.parent_endpoints(0), None);
    }

    #[test]
    fn sidecar_json() {
        let s = s2k_transform(&p2(), 1).unwrap();
        assert_eq!(
            s.labels_json(),
            r#"[{"vertex":0,"kind":"original"},{"vertex":1,"kind":"original"},{"vertex":2,"kind":"s2k_node","edge":0,"branch":0,"pos":1},{"vertex":3,"kind":"s2k_node","edge":0,"branch":0,"pos":2}]"#
        );
    }

    #[test]
    fn invalid_k() {
        assert_eq!(sk_transform(&k3(), 0), Err(Error::InvalidK(0)));
        assert_eq!(s2k_transform(&k3(), 0), Err(Error::InvalidK(0)));
        assert_eq!(iterate_transform(&k3(), 0, 1, Variant::Sk, 100), Err(Error::InvalidK(0)));
    }

    #[test]
    fn iterates() {
        assert_eq!(iterate_transform(&k3(), 1, 0, Variant::Sk, 100).unwrap(), k3());
        let c12 = iterate_transform(&k3(), 1, 2, Variant::Sk, 100).unwrap();
        assert_eq!(sizes(&c12), (12, 12));
        assert!(is_cycle(&c12));
        let g = iterate_transform(&k3(), 2, 2, Variant::Sk, 100).unwrap();
        assert_eq!(sizes(&g), (33, 48));
        assert!(matches!(
            iterate_transform(&k3(), 2, 2, Variant::Sk, 32),
            Err(Error::SizeCapExceeded { size: 33, .. })
        ));
    }

    #[test]
    fn size_formulas() {
        let big = |v: usize| BigUint::from(v);
        assert_eq!(predicted_sizes(3, 3, 1, 1, Variant::Sk), (big(6), big(6)));
        assert_eq!(predicted_sizes(3, 3, 2, 2, Variant::Sk), (big(33), big(48)));
        assert_eq!(predicted_sizes(3, 3, 1, 1, Variant::S2k), (big(9), big(9)));
        assert_eq!(predicted_sizes(5, 7, 3, 0, Variant::S2k), (big(5), big(7)));
    }

    #[test]
    fn size_recursion_matches_closed_form() {
        // |E_r| = c|E_{r-1}|, |V_r| = |V_{r-1}| + a|E_{r-1}|
        for variant in [Variant::Sk, Variant::S2k] {
            for k in 1..5usize {
                let (grow, add) = match variant {
                    Variant::Sk => (2 * k, k),
                    Variant::S2k => (3 * k, 2 * k),
                };
                let (mut v, mut e) = (7usize, 11usize);
                for r in 0..6 {
                    assert_eq!(predicted_sizes(7, 11, k, r, variant), (big_of(v), big_of(e)));
                    v += add * e;
                    e *= grow;
                }
            }
        }
        fn big_of(x: usize) -> BigUint {
            BigUint::from(x)
        }
    }
}
