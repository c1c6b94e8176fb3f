//! Hitting times, resistances and commute times on `S_k(G)` from the base graph.

use super::{HittingMatrix, ResistanceMatrix};
use crate::transforms::{sk_mid_index, TransformedGraph, Variant, VertexLabel};
use crate::{Error, Result};

/// A vertex of `S_k(G)` in base-graph terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkVertexRef {
    Original(usize),
    /// Subdivision vertex on base edge `{s, t}`, branch `branch`.
    Mid { s: usize, t: usize, branch: usize },
}

impl SkVertexRef {
    pub fn resolve(tg: &TransformedGraph, vertex: usize) -> Result<Self> {
        if tg.variant != Variant::Sk {
            return Err(Error::RefMismatch("vertex references need an S_k graph".into()));
        }
        match tg.labels.get(vertex) {
            Some(VertexLabel::Original(v)) => Ok(SkVertexRef::Original(*v)),
            Some(VertexLabel::SkMid { edge, branch }) => {
                let (s, t) = tg.parent_edges[*edge];
                Ok(SkVertexRef::Mid { s, t, branch: *branch })
            }
            Some(VertexLabel::S2kNode { .. }) => Err(Error::RefMismatch("S_2k label in an S_k graph".into())),
            None => Err(Error::VertexOutOfRange {
                vertex,
                n: tg.labels.len(),
            }),
        }
    }

    /// Index of this vertex in `tg`.
    pub fn index(&self, tg: &TransformedGraph) -> Result<usize> {
        match *self {
            SkVertexRef::Original(v) if v < tg.parent_n => Ok(v),
            SkVertexRef::Mid { s, t, branch } if branch < tg.k => {
                let e = tg
                    .parent_edges
                    .binary_search(&(s.min(t), s.max(t)))
                    .map_err(|_| Error::RefMismatch(format!("{{{s}, {t}}} is not a base edge")))?;
                Ok(sk_mid_index(tg.parent_n, tg.parent_m, e, branch))
            }
            other => Err(Error::RefMismatch(format!("{other:?} not in this S_k graph"))),
        }
    }
}

/// Parses `v:3` (original vertex 3) or `e:2,b:0` (subdivision vertex on base
/// edge 2, branch 0) against a transformed graph.
pub fn parse_sk_ref(tg: &TransformedGraph, text: &str) -> Result<SkVertexRef> {
    let bad = || Error::RefMismatch(format!("cannot parse vertex reference {text:?}"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let text_t = text.trim();
    if let Some(v) = text_t.strip_prefix("v:") {
        let v = num(v)?;
        if v >= tg.parent_n {
            return Err(Error::RefMismatch(format!("base vertex {v} out of range")));
        }
        return Ok(SkVertexRef::Original(v));
    }
    let (e_part, b_part) = text_t.split_once(',').ok_or_else(bad)?;
    let e = num(e_part.trim().strip_prefix("e:").ok_or_else(bad)?)?;
    let b = num(b_part.trim().strip_prefix("b:").ok_or_else(bad)?)?;
    let &(s, t) = tg
        .parent_edges
        .get(e)
        .ok_or_else(|| Error::RefMismatch(format!("base edge {e} out of range")))?;
    if b >= tg.k {
        return Err(Error::RefMismatch(format!("branch {b} out of range for k = {}", tg.k)));
    }
    Ok(SkVertexRef::Mid { s, t, branch: b })
}

fn check_ref(r: SkVertexRef, n: usize, k: usize) -> Result<()> {
    let ok = match r {
        SkVertexRef::Original(v) => v < n,
        SkVertexRef::Mid { s, t, branch } => s < n && t < n && s != t && branch < k,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::RefMismatch(format!("{r:?} does not fit a base graph on {n} vertices with k = {k}")))
    }
}

fn same_vertex(i: SkVertexRef, j: SkVertexRef) -> bool {
    match (i, j) {
        (SkVertexRef::Original(a), SkVertexRef::Original(b)) => a == b,
        (SkVertexRef::Mid { s, t, branch }, SkVertexRef::Mid { s: p, t: q, branch: b }) => {
            branch == b && (s.min(t), s.max(t)) == (p.min(q), p.max(q))
        }
        _ => false,
    }
}

/// Expected hitting time from `i` to `j` in `S_k(G)`, where `base` holds the
/// hitting times of `G` and `m` is its edge count.
pub fn sk_hitting_time(base: &HittingMatrix, m: usize, k: usize, i: SkVertexRef, j: SkVertexRef) -> Result<f64> {
    check_ref(i, base.n(), k)?;
    check_ref(j, base.n(), k)?;
    if same_vertex(i, j) {
        return Ok(0.0);
    }
    let e = |a: usize, b: usize| base.get(a, b);
    let two_km = 2.0 * (k * m) as f64;
    Ok(match (i, j) {
        (SkVertexRef::Original(a), SkVertexRef::Original(b)) => 4.0 * e(a, b),
        (SkVertexRef::Mid { s, t, .. }, SkVertexRef::Original(b)) => 1.0 + 2.0 * e(s, b) + 2.0 * e(t, b),
        (SkVertexRef::Original(a), SkVertexRef::Mid { s, t, .. }) => {
            two_km - 1.0 + 2.0 * (e(a, s) + e(a, t)) - (e(t, s) + e(s, t))
        }
        (SkVertexRef::Mid { s, t, .. }, SkVertexRef::Mid { s: p, t: q, .. }) => {
            two_km + e(s, p) + e(s, q) + e(t, p) + e(t, q) - e(q, p) - e(p, q)
        }
    })
}

/// Effective resistance between `i` and `j` in `S_k(G)` from the base resistances.
pub fn sk_resistance(base: &ResistanceMatrix, k: usize, i: SkVertexRef, j: SkVertexRef) -> Result<f64> {
    check_ref(i, base.n(), k)?;
    check_ref(j, base.n(), k)?;
    if same_vertex(i, j) {
        return Ok(0.0);
    }
    let o = |a: usize, b: usize| base.get(a, b);
    let kf = k as f64;
    Ok(match (i, j) {
        (SkVertexRef::Original(a), SkVertexRef::Original(b)) => 2.0 / kf * o(a, b),
        (SkVertexRef::Mid { s, t, .. }, SkVertexRef::Original(b))
        | (SkVertexRef::Original(b), SkVertexRef::Mid { s, t, .. }) => {
            (kf + 2.0 * o(s, b) + 2.0 * o(t, b) - o(s, t)) / (2.0 * kf)
        }
        (SkVertexRef::Mid { s, t, .. }, SkVertexRef::Mid { s: p, t: q, .. }) => {
            (2.0 * kf + o(s, p) + o(s, q) + o(t, p) + o(t, q) - o(p, q) - o(s, t)) / (2.0 * kf)
        }
    })
}

/// Commute time on `S_k(G)` evaluated exactly as the published closed form
/// prints it, with base commute times `C = 2m Omega`. Makes no claim of
/// agreement with `2|E(S_k)| Omega(S_k)`.
pub fn sk_commute_published(base: &ResistanceMatrix, m: usize, k: usize, i: SkVertexRef, j: SkVertexRef) -> Result<f64> {
    check_ref(i, base.n(), k)?;
    check_ref(j, base.n(), k)?;
    if same_vertex(i, j) {
        return Ok(0.0);
    }
    let (mf, kf) = (m as f64, k as f64);
    let omega = |a: usize, b: usize| base.get(a, b);
    let c = |a: usize, b: usize| 2.0 * mf * base.get(a, b);
    Ok(match (i, j) {
        (SkVertexRef::Original(a), SkVertexRef::Original(b)) => 4.0 * mf / kf * omega(a, b),
        (SkVertexRef::Mid { s, t, .. }, SkVertexRef::Original(b))
        | (SkVertexRef::Original(b), SkVertexRef::Mid { s, t, .. }) => {
            mf * (kf + 2.0 * c(s, b) + 2.0 * c(t, b) - c(s, t)) / kf
        }
        (SkVertexRef::Mid { s, t, .. }, SkVertexRef::Mid { s: p, t: q, .. }) => {
            mf * (2.0 * kf + c(s, p) + c(s, q) + c(t, p) + c(t, q) - c(p, q) - c(s, t)) / kf
        }
    })
}
