//! Corpus-wide verification: every prediction is checked against an oracle
//! computed on the transformed graph itself, and every published closed form
//! is evaluated and compared against the spectral reference value.

use std::path::Path;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Deserialize;

use crate::graph::{generate, parse_edge_list, read_edge_list, spanning_tree_count_exact, GraphKind};
use crate::invariants::{as_published, kemeny, kf_star, ln_biguint, tau_spectral};
use crate::report::{classify, rel_diff, ReportRow, Status, VerificationReport};
use crate::spectra::{
    eigen_decompose, normalized_adjacency, predicted_spectrum_iterated, residual_mass, sk_eigenbasis, spectra_match,
    EigenDecomposition, Spectrum,
};
use crate::transforms::{iterate_transform, predicted_sizes, transform, TransformedGraph, Variant};
use crate::walk::{
    hitting_time_spectral, hitting_times_oracle, resistance_oracle, sk_commute_published, sk_hitting_time,
    sk_resistance, CrossTerm, HittingMatrix, ResistanceMatrix, SkVertexRef,
};
use crate::{Caps, Error, Graph, Result};

pub const TOL_SPECTRUM: f64 = 1e-8;
pub const TOL_SPECTRUM_ITERATED: f64 = 1e-7;
pub const TOL_EIGENBASIS: f64 = 1e-8;
pub const TOL_HITTING: f64 = 1e-6;
pub const TOL_RESISTANCE: f64 = 1e-8;
pub const TOL_INVARIANT: f64 = 1e-8;
pub const TOL_LOG_TAU: f64 = 1e-6;

pub mod claims {
    pub const SIZES: &str = "sizes";
    pub const SPECTRUM_SK: &str = "spectrum_sk";
    pub const SPECTRUM_S2K: &str = "spectrum_s2k";
    pub const SPECTRUM_ITERATED: &str = "spectrum_iterated";
    pub const EIGENBASIS: &str = "eigenbasis_lemma41";
    pub const HITTING: &str = "hitting_thm_cases";
    pub const RESISTANCE: &str = "resistance_corollary";
    pub const COMMUTE: &str = "commute_corollary_published";
    pub const KF_SK: &str = "kf_sk";
    pub const KE_SK: &str = "ke_sk";
    pub const TAU_SK: &str = "tau_sk_published";
    pub const KF_S2K: &str = "kf_s2k_published";
    pub const KE_S2K: &str = "ke_s2k_published";
    pub const TAU_S2K: &str = "tau_s2k_published";
    pub const TAU_GROUND_TRUTH: &str = "tau_ground_truth";
    pub const LEMMA25: &str = "lemma25_sign";
    pub const BASE_GRAPH: &str = "base_graph";
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

/// Base graphs plus the `k` and `r` values to check them at.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    pub graphs: Vec<NamedGraph>,
    pub k_sk: Vec<usize>,
    pub k_s2k: Vec<usize>,
    pub r_values: Vec<usize>,
    pub caps: Caps,
}

impl Default for CorpusSpec {
    /// P2, P4, C4, C5, C6, K3, K4, K2,3 and a seeded random graph on 8
    /// vertices; `k` in {1,2,3} for `S_k`, {1,2} for `S_2k`; `r` in {1,2}.
    fn default() -> Self {
        let kinds = [
            ("P2", GraphKind::Path(2)),
            ("P4", GraphKind::Path(4)),
            ("C4", GraphKind::Cycle(4)),
            ("C5", GraphKind::Cycle(5)),
            ("C6", GraphKind::Cycle(6)),
            ("K3", GraphKind::Complete(3)),
            ("K4", GraphKind::Complete(4)),
            ("K2_3", GraphKind::CompleteBipartite(2, 3)),
            ("ER8_p0.4_s7", GraphKind::RandomConnected { n: 8, p: 0.4, seed: 7 }),
        ];
        CorpusSpec {
            graphs: kinds
                .into_iter()
                .map(|(name, kind)| NamedGraph {
                    name: name.into(),
                    graph: generate(&kind).expect("default corpus graphs are valid"),
                })
                .collect(),
            k_sk: vec![1, 2, 3],
            k_s2k: vec![1, 2],
            r_values: vec![1, 2],
            caps: Caps::from_env(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    graphs: Vec<CorpusFileGraph>,
    #[serde(default)]
    k_sk: Option<Vec<usize>>,
    #[serde(default)]
    k_s2k: Option<Vec<usize>>,
    #[serde(default)]
    r: Option<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFileGraph {
    name: String,
    #[serde(default)]
    kind: Option<GraphKind>,
    #[serde(default)]
    edge_list: Option<String>,
    #[serde(default)]
    path: Option<String>,
}

impl CorpusSpec {
    /// Parses a JSON corpus description. Each graph has a `name` and exactly
    /// one of `kind` (a generator), `edge_list` (inline edge-list text) or
    /// `path` (an edge-list file, relative to `base_dir`). Omitted `k_sk`,
    /// `k_s2k` and `r` take the default values.
    pub fn from_json(text: &str, base_dir: &Path) -> Result<Self> {
        let file: CorpusFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidParams(format!("corpus file: {e}")))?;
        let defaults = CorpusSpec {
            graphs: Vec::new(),
            ..CorpusSpec::default()
        };
        let graphs = file
            .graphs
            .into_iter()
            .map(|g| {
                let graph = match (g.kind, g.edge_list, g.path) {
                    (Some(kind), None, None) => generate(&kind)?,
                    (None, Some(text), None) => parse_edge_list(&text)?,
                    (None, None, Some(path)) => read_edge_list(base_dir.join(path))?,
                    _ => {
                        return Err(Error::InvalidParams(format!(
                            "corpus graph {:?} needs exactly one of kind, edge_list, path",
                            g.name
                        )))
                    }
                };
                Ok(NamedGraph { name: g.name, graph })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut names: Vec<&str> = graphs.iter().map(|g| g.name.as_str()).collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParams(format!("duplicate corpus graph name {:?}", w[0])));
        }
        let spec = CorpusSpec {
            graphs,
            k_sk: file.k_sk.unwrap_or(defaults.k_sk),
            k_s2k: file.k_s2k.unwrap_or(defaults.k_s2k),
            r_values: file.r.unwrap_or(defaults.r_values),
            caps: defaults.caps,
        };
        if spec.k_sk.iter().chain(&spec.k_s2k).any(|&k| k == 0) {
            return Err(Error::InvalidK(0));
        }
        Ok(spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParams(format!("cannot read {}: {e}", path.display())))?;
        CorpusSpec::from_json(&text, path.parent().unwrap_or(Path::new(".")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Replaces every claim's default tolerance when set.
    pub tol: Option<f64>,
    /// Cross-term sign for the spectral hitting-time rows.
    pub cross: CrossTerm,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            tol: None,
            cross: CrossTerm::Minus,
        }
    }
}

/// Everything computed once per base graph.
struct Base {
    name: String,
    graph: Graph,
    spec: Spectrum,
    decomp: EigenDecomposition,
    kf: f64,
    ke: f64,
    log_tau: f64,
    hitting: HittingMatrix,
    resistance: ResistanceMatrix,
}

impl Base {
    fn compute(named: &NamedGraph, caps: &Caps) -> Result<Base> {
        let g = &named.graph;
        let (spec, decomp) = eigen_decompose(g, caps.eigen)?;
        Ok(Base {
            name: named.name.clone(),
            kf: kf_star(&spec, g.m())?,
            ke: kemeny(&spec)?,
            log_tau: ln_biguint(&spanning_tree_count_exact(g, caps.matrix_tree)?),
            hitting: hitting_times_oracle(g, caps.walk)?,
            resistance: resistance_oracle(g, caps.walk)?,
            graph: g.clone(),
            spec,
            decomp,
        })
    }
}

struct Outcome {
    published: f64,
    oracle: f64,
    diff: f64,
    note: String,
}

impl Outcome {
    fn rel(published: f64, oracle: f64) -> Self {
        Outcome {
            published,
            oracle,
            diff: rel_diff(published, oracle),
            note: String::new(),
        }
    }
}

#[derive(Clone, Copy)]
struct Instance<'a> {
    graph: &'a str,
    variant: &'static str,
    k: usize,
    r: usize,
}

struct RowSink<'a> {
    inst: Instance<'a>,
    tol_override: Option<f64>,
    rows: Vec<ReportRow>,
}

impl RowSink<'_> {
    fn push(&mut self, claim: &'static str, default_tol: f64, outcome: Result<Outcome>) {
        self.push_with(claim, self.tol_override.unwrap_or(default_tol), outcome);
    }

    /// Exact-match claims ignore the tolerance override.
    fn push_exact(&mut self, claim: &'static str, outcome: Result<Outcome>) {
        self.push_with(claim, 0.0, outcome);
    }

    fn push_with(&mut self, claim: &'static str, tolerance: f64, outcome: Result<Outcome>) {
        let row = match outcome {
            Ok(o) => ReportRow {
                claim,
                graph: self.inst.graph.to_string(),
                variant: self.inst.variant,
                k: self.inst.k,
                r: self.inst.r,
                published: Some(o.published),
                oracle: Some(o.oracle),
                rel_diff: Some(o.diff),
                tolerance,
                status: classify(o.published, o.oracle, o.diff, tolerance),
                note: o.note,
            },
            Err(e) => ReportRow {
                claim,
                graph: self.inst.graph.to_string(),
                variant: self.inst.variant,
                k: self.inst.k,
                r: self.inst.r,
                published: None,
                oracle: None,
                rel_diff: None,
                tolerance,
                status: Status::Error,
                note: e.to_string(),
            },
        };
        self.rows.push(row);
    }
}

fn to_usize(x: num_bigint::BigUint) -> usize {
    x.to_usize().unwrap_or(usize::MAX)
}

fn ref_label(base: &Graph, r: SkVertexRef) -> String {
    match r {
        SkVertexRef::Original(v) => format!("v:{v}"),
        SkVertexRef::Mid { s, t, branch } => {
            format!("e:{},b:{branch}", base.edge_index(s, t).expect("parent edge exists"))
        }
    }
}

/// Largest `rel_diff` over all ordered vertex pairs of `S_k(G)`.
/// True when `d` should replace the current worst; NaN always does.
fn is_worse(d: f64, current: f64) -> bool {
    d.is_nan() || d > current
}

fn worst_pair(
    tg: &TransformedGraph,
    base: &Graph,
    mut eval: impl FnMut(SkVertexRef, SkVertexRef, usize, usize) -> Result<(f64, f64)>,
) -> Result<Outcome> {
    let n = tg.graph.n();
    let refs: Vec<SkVertexRef> = (0..n).map(|v| SkVertexRef::resolve(tg, v)).collect::<Result<_>>()?;
    let mut worst = Outcome::rel(0.0, 0.0);
    let mut at = (0, 0);
    for i in 0..n {
        for j in 0..n {
            let (p, o) = eval(refs[i], refs[j], i, j)?;
            let d = rel_diff(p, o);
            if is_worse(d, worst.diff) {
                worst = Outcome::rel(p, o);
                at = (i, j);
                if d.is_nan() {
                    break;
                }
            }
        }
    }
    worst.note = format!("worst pair {} -> {}", ref_label(base, refs[at.0]), ref_label(base, refs[at.1]));
    Ok(worst)
}

fn spectrum_outcome(predicted: &Spectrum, direct: &Spectrum) -> Outcome {
    let m = spectra_match(predicted, direct, 0.0);
    match m.max_abs_diff {
        None => Outcome {
            published: m.len_a as f64,
            oracle: m.len_b as f64,
            diff: (m.len_a as f64 - m.len_b as f64).abs(),
            note: "length mismatch".into(),
        },
        Some(diff) => {
            let i = predicted
                .values()
                .iter()
                .zip(direct.values())
                .position(|(a, b)| (a - b).abs() == diff)
                .unwrap_or(0);
            Outcome {
                published: predicted.values().get(i).copied().unwrap_or(0.0),
                oracle: direct.values().get(i).copied().unwrap_or(0.0),
                diff,
                note: format!("max abs diff at sorted index {i} of {}", m.len_a),
            }
        }
    }
}

fn tau_outcome(published_log: f64, oracle_log: f64, oracle_exact: bool) -> Outcome {
    let diff = (published_log - oracle_log).abs();
    let (p, o) = (published_log.exp(), oracle_log.exp());
    let source = if oracle_exact { "Matrix-Tree" } else { "spectral" };
    if p.is_finite() && o.is_finite() {
        Outcome {
            published: p,
            oracle: o,
            diff,
            note: format!("{source} oracle; rel_diff is |ln published - ln oracle|"),
        }
    } else {
        Outcome {
            published: published_log,
            oracle: oracle_log,
            diff,
            note: format!("{source} oracle; values are natural logs"),
        }
    }
}

/// Rows for one `(graph, variant, k, r)` tuple.
fn verify_instance(base: &Base, variant: Variant, k: usize, r: usize, caps: &Caps, opts: &VerifyOptions) -> Vec<ReportRow> {
    let g = &base.graph;
    let (n, m) = (g.n(), g.m());
    let (n_r, m_r) = predicted_sizes(n, m, k, r, variant);
    let (n_r, m_r) = (to_usize(n_r), to_usize(m_r));
    let mut sink = RowSink {
        inst: Instance {
            graph: &base.name,
            variant: variant.as_str(),
            k,
            r,
        },
        tol_override: opts.tol,
        rows: Vec::new(),
    };
    if n_r > caps.transform {
        return sink.rows;
    }
    let iterate = iterate_transform(g, k, r, variant, caps.transform);
    sink.push_exact(
        claims::SIZES,
        iterate.clone().map(|t| {
            let ok = t.n() == n_r && t.m() == m_r;
            Outcome {
                published: n_r as f64,
                oracle: t.n() as f64,
                diff: if ok { 0.0 } else { 1.0 },
                note: format!("predicted |V|={n_r} |E|={m_r}; built |V|={} |E|={}", t.n(), t.m()),
            }
        }),
    );
    if r == 0 {
        return sink.rows;
    }
    let t = match iterate {
        Ok(t) => t,
        Err(_) => return sink.rows,
    };
    let predicted = predicted_spectrum_iterated(&base.spec, n, m, k, r, variant, g.is_bipartite(), caps.transform);

    if t.n() <= caps.eigen {
        let (claim, tol) = match (variant, r) {
            (Variant::Sk, 1) => (claims::SPECTRUM_SK, TOL_SPECTRUM),
            (Variant::S2k, 1) => (claims::SPECTRUM_S2K, TOL_SPECTRUM),
            _ => (claims::SPECTRUM_ITERATED, TOL_SPECTRUM_ITERATED),
        };
        let outcome = predicted
            .clone()
            .and_then(|p| Ok(spectrum_outcome(&p, &eigen_decompose(&t, caps.eigen)?.0)));
        sink.push(claim, tol, outcome);
    }

    let exact_tau = (t.n() <= caps.matrix_tree).then(|| spanning_tree_count_exact(&t, caps.matrix_tree));
    let oracle_log_tau: Result<(f64, bool)> = match &exact_tau {
        Some(Ok(tau)) => Ok((ln_biguint(tau), true)),
        Some(Err(e)) => Err(e.clone()),
        None => predicted
            .clone()
            .and_then(|p| Ok((tau_spectral(&p, &t.degrees())?.log_tau, false))),
    };

    let (kf_claim, ke_claim, tau_claim) = match variant {
        Variant::Sk => (claims::KF_SK, claims::KE_SK, claims::TAU_SK),
        Variant::S2k => (claims::KF_S2K, claims::KE_S2K, claims::TAU_S2K),
    };
    let (kf_pub, ke_pub, log_tau_pub) = match variant {
        Variant::Sk => (
            as_published::kf_star_sk(base.kf, n, m, k, r),
            as_published::kemeny_sk(base.ke, n, m, k, r),
            as_published::log_tau_sk(base.log_tau, n, m, k, r),
        ),
        Variant::S2k => (
            as_published::kf_star_s2k(base.kf, n, m, k, r),
            as_published::kemeny_s2k(base.ke, n, m, k, r),
            as_published::log_tau_s2k(base.log_tau, n, m, k, r),
        ),
    };
    sink.push(
        kf_claim,
        TOL_INVARIANT,
        predicted.clone().and_then(|p| Ok(Outcome::rel(kf_pub, kf_star(&p, m_r)?))),
    );
    sink.push(
        ke_claim,
        TOL_INVARIANT,
        predicted.clone().and_then(|p| Ok(Outcome::rel(ke_pub, kemeny(&p)?))),
    );
    sink.push(
        tau_claim,
        TOL_LOG_TAU,
        oracle_log_tau.map(|(o, exact)| tau_outcome(log_tau_pub, o, exact)),
    );

    if let Some(exact) = exact_tau {
        let spectral = predicted.clone().and_then(|p| tau_spectral(&p, &t.degrees()));
        match (exact, spectral) {
            (Ok(exact), Ok(spectral)) => {
                let exact_f = exact.to_f64().unwrap_or(f64::INFINITY);
                match spectral.rounded {
                    Some(rounded) => {
                        let rounded_f = rounded.to_f64().unwrap_or(f64::INFINITY);
                        let outcome = Outcome {
                            published: rounded_f,
                            oracle: exact_f,
                            diff: if rounded == exact { 0.0 } else { rel_diff(rounded_f, exact_f).max(f64::MIN_POSITIVE) },
                            note: "rounded spectral count vs Matrix-Tree".into(),
                        };
                        sink.push_exact(claims::TAU_GROUND_TRUTH, Ok(outcome));
                    }
                    None => {
                        let mut outcome = tau_outcome(spectral.log_tau, ln_biguint(&exact), true);
                        outcome.note = "count above rounding cap; rel_diff is |ln spectral - ln exact|".into();
                        sink.push(claims::TAU_GROUND_TRUTH, TOL_LOG_TAU, Ok(outcome));
                    }
                }
            }
            (Err(e), _) | (_, Err(e)) => sink.push_exact(claims::TAU_GROUND_TRUTH, Err(e)),
        }
    }

    if variant == Variant::Sk && r == 1 && t.n() <= caps.walk {
        sink.rows.extend(walk_rows(base, k, caps, opts, sink.inst));
    }
    sink.rows
}

/// Eigenbasis, hitting-time, resistance and published commute-time rows on `S_k(G)`.
fn walk_rows(base: &Base, k: usize, caps: &Caps, opts: &VerifyOptions, inst: Instance<'_>) -> Vec<ReportRow> {
    let mut sink = RowSink {
        inst,
        tol_override: opts.tol,
        rows: Vec::new(),
    };
    let g = &base.graph;
    let tg = match transform(g, k, Variant::Sk) {
        Ok(tg) => tg,
        Err(e) => {
            for claim in [claims::EIGENBASIS, claims::HITTING, claims::RESISTANCE, claims::COMMUTE] {
                sink.push(claim, 0.0, Err(e.clone()));
            }
            return sink.rows;
        }
    };

    let eigenbasis = sk_eigenbasis(g, k, &base.decomp).and_then(|basis| {
        if basis.len() != tg.graph.n() {
            return Err(Error::SpectrumInconsistent(format!(
                "{} constructed eigenpairs for {} vertices",
                basis.len(),
                tg.graph.n()
            )));
        }
        let residual = basis.max_residual(&normalized_adjacency(&tg.graph));
        let ortho = basis.orthonormality_error();
        let mass = residual_mass(g, &base.decomp, &basis)
            .iter()
            .map(|rm| (rm.measured - rm.predicted).abs())
            .fold(0.0, f64::max);
        let worst = residual.max(ortho).max(mass);
        Ok(Outcome {
            published: worst,
            oracle: 0.0,
            diff: worst,
            note: format!("residual {residual:.3e}, orthonormality {ortho:.3e}, kernel mass {mass:.3e}"),
        })
    });
    sink.push(claims::EIGENBASIS, TOL_EIGENBASIS, eigenbasis);

    let hitting = hitting_times_oracle(&tg.graph, caps.walk)
        .and_then(|h| worst_pair(&tg, g, |a, b, i, j| Ok((sk_hitting_time(&base.hitting, g.m(), k, a, b)?, h.get(i, j)))));
    sink.push(claims::HITTING, TOL_HITTING, hitting);

    let omega = resistance_oracle(&tg.graph, caps.walk);
    let resistance = omega
        .clone()
        .and_then(|o| worst_pair(&tg, g, |a, b, i, j| Ok((sk_resistance(&base.resistance, k, a, b)?, o.get(i, j)))));
    sink.push(claims::RESISTANCE, TOL_RESISTANCE, resistance);

    let two_m = 2.0 * tg.graph.m() as f64;
    let commute = omega.and_then(|o| {
        worst_pair(&tg, g, |a, b, i, j| {
            Ok((sk_commute_published(&base.resistance, g.m(), k, a, b)?, two_m * o.get(i, j)))
        })
    });
    sink.push(claims::COMMUTE, TOL_RESISTANCE, commute);
    sink.rows
}

/// Spectral hitting times of the base graph against first-step analysis.
fn spectral_hitting_row(base: &Base, opts: &VerifyOptions) -> ReportRow {
    let mut sink = RowSink {
        inst: Instance {
            graph: &base.name,
            variant: "base",
            k: 0,
            r: 0,
        },
        tol_override: opts.tol,
        rows: Vec::new(),
    };
    let n = base.graph.n();
    let outcome = (|| {
        let mut worst = Outcome::rel(0.0, 0.0);
        let mut at = (0, 0);
        for i in 0..n {
            for j in 0..n {
                let p = hitting_time_spectral(&base.decomp, i, j, opts.cross)?;
                let o = base.hitting.get(i, j);
                if is_worse(rel_diff(p, o), worst.diff) {
                    worst = Outcome::rel(p, o);
                    at = (i, j);
                }
            }
        }
        let sign = match opts.cross {
            CrossTerm::Minus => "-",
            CrossTerm::Plus => "+",
        };
        worst.note = format!("cross term {sign}; worst pair {} -> {}", at.0, at.1);
        Ok(worst)
    })();
    sink.push(claims::LEMMA25, TOL_HITTING, outcome);
    sink.rows.pop().expect("one row pushed")
}

/// Runs every claim on every scheduled instance. Instances whose transformed
/// graph exceeds a cap are skipped; failures inside a claim become rows with
/// status `error`. Rows are sorted by `(claim, graph, variant, k, r)`.
pub fn run_verification(corpus: &CorpusSpec, opts: &VerifyOptions) -> VerificationReport {
    if corpus.k_sk.is_empty() && corpus.k_s2k.is_empty() {
        return VerificationReport::default();
    }
    let caps = &corpus.caps;
    let bases: Vec<std::result::Result<Base, Box<ReportRow>>> = corpus
        .graphs
        .par_iter()
        .map(|named| {
            Base::compute(named, caps).map_err(|e| Box::new(ReportRow {
                claim: claims::BASE_GRAPH,
                graph: named.name.clone(),
                variant: "base",
                k: 0,
                r: 0,
                published: None,
                oracle: None,
                rel_diff: None,
                tolerance: 0.0,
                status: Status::Error,
                note: e.to_string(),
            }))
        })
        .collect();

    let mut r_values: Vec<usize> = std::iter::once(0).chain(corpus.r_values.iter().copied()).collect();
    r_values.sort_unstable();
    r_values.dedup();
    let mut tasks = Vec::new();
    for base in bases.iter().filter_map(|b| b.as_ref().ok()) {
        for (variant, ks) in [(Variant::Sk, &corpus.k_sk), (Variant::S2k, &corpus.k_s2k)] {
            for &k in ks {
                for &r in &r_values {
                    tasks.push((base, variant, k, r));
                }
            }
        }
    }

    let mut rows: Vec<ReportRow> = tasks
        .par_iter()
        .flat_map_iter(|&(base, variant, k, r)| verify_instance(base, variant, k, r, caps, opts))
        .collect();
    for b in &bases {
        match b {
            Ok(base) => rows.push(spectral_hitting_row(base, opts)),
            Err(row) => rows.push((**row).clone()),
        }
    }
    VerificationReport::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_corpus() -> CorpusSpec {
        CorpusSpec {
            graphs: vec![
                NamedGraph {
                    name: "K3".into(),
                    graph: generate(&GraphKind::Complete(3)).unwrap(),
                },
                NamedGraph {
                    name: "P2".into(),
                    graph: generate(&GraphKind::Path(2)).unwrap(),
                },
            ],
            k_sk: vec![1],
            k_s2k: vec![1],
            r_values: vec![1],
            caps: Caps::default(),
        }
    }

    #[test]
    fn known_rows_on_triangle() {
        let report = run_verification(&small_corpus(), &VerifyOptions::default());
        let get = |claim, variant| report.find(claim, "K3", variant, 1, 1).unwrap();
        let tau = get(claims::TAU_SK, "sk");
        assert_eq!(tau.status, Status::Discrepancy);
        assert!((tau.published.unwrap() - 12.0).abs() < 1e-9 && (tau.oracle.unwrap() - 6.0).abs() < 1e-9);
        let kf = get(claims::KF_S2K, "s2k");
        assert_eq!(kf.status, Status::Discrepancy);
        assert!((kf.published.unwrap() - 249.0).abs() < 1e-9 && (kf.oracle.unwrap() - 240.0).abs() < 1e-9);
        for claim in [claims::SPECTRUM_SK, claims::HITTING, claims::RESISTANCE, claims::EIGENBASIS, claims::KF_SK] {
            assert_eq!(get(claim, "sk").status, Status::Pass, "{claim}");
        }
        assert_eq!(get(claims::COMMUTE, "sk").status, Status::Discrepancy);
        assert_eq!(report.find(claims::LEMMA25, "K3", "base", 0, 0).unwrap().status, Status::Pass);
        assert_eq!(report.find(claims::SIZES, "K3", "s2k", 1, 0).unwrap().status, Status::Pass);
        assert_eq!(report.summary().error, 0);
    }

    #[test]
    fn printed_sign_is_flagged() {
        let opts = VerifyOptions {
            cross: CrossTerm::Plus,
            ..VerifyOptions::default()
        };
        let report = run_verification(&small_corpus(), &opts);
        let row = report.find(claims::LEMMA25, "K3", "base", 0, 0).unwrap();
        assert_eq!(row.status, Status::Discrepancy);
        assert!((row.published.unwrap() - 2.0 / 3.0).abs() < 1e-9 && (row.oracle.unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn empty_k_set_gives_empty_report() {
        let corpus = CorpusSpec {
            k_sk: vec![],
            k_s2k: vec![],
            ..small_corpus()
        };
        let report = run_verification(&corpus, &VerifyOptions::default());
        assert!(report.rows.is_empty());
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn keys_are_unique() {
        let report = run_verification(&small_corpus(), &VerifyOptions::default());
        let mut keys: Vec<_> = report.rows.iter().map(|r| r.key()).collect();
        let len = keys.len();
        keys.dedup();
        assert_eq!(keys.len(), len);
    }

    #[test]
    fn corpus_file() {
        let text = r#"{"graphs": [
            {"name": "tri", "kind": {"complete": 3}},
            {"name": "edge", "edge_list": "2 1\n0 1\n"}
        ], "k_sk": [2], "r": [1]}"#;
        let c = CorpusSpec::from_json(text, Path::new(".")).unwrap();
        assert_eq!(c.graphs.len(), 2);
        assert_eq!(c.k_sk, vec![2]);
        assert_eq!(c.k_s2k, vec![1, 2]);
        assert_eq!(c.r_values, vec![1]);
        let dup = r#"{"graphs": [{"name": "a", "kind": {"path": 2}}, {"name": "a", "kind": {"path": 3}}]}"#;
        assert!(CorpusSpec::from_json(dup, Path::new(".")).is_err());
        let both = r#"{"graphs": [{"name": "a", "kind": {"path": 2}, "edge_list": "0 1"}]}"#;
        assert!(CorpusSpec::from_json(both, Path::new(".")).is_err());
        let zero = r#"{"graphs": [{"name": "a", "kind": {"path": 2}}], "k_sk": [0]}"#;
        assert_eq!(CorpusSpec::from_json(zero, Path::new(".")), Err(Error::InvalidK(0)));
    }
}
