//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use specsub::graph::spanning_tree_count_exact;
use specsub::invariants::{as_published, kemeny, kemeny_sk_iterated, kf_star, kf_star_sk_iterated, ln_biguint, tau_spectral};
use specsub::report::{Status, VerificationReport};
use specsub::spectra::{
    eigen_decompose, normalized_adjacency, predicted_spectrum, predicted_spectrum_iterated, residual_mass,
    sk_eigenbasis, spectra_match, EigenDecomposition, Spectrum,
};
use specsub::transforms::{iterate_transform, predicted_sizes, transform};
use specsub::verify::{claims, run_verification, CorpusSpec, NamedGraph, VerifyOptions};
use specsub::walk::{
    hitting_times_oracle, resistance_oracle, sk_commute_published, sk_hitting_time, sk_resistance, CrossTerm,
    SkVertexRef,
};
use specsub::{Caps, Graph, Variant};

const SPECTRUM_TOL: f64 = 1e-8;
const ITERATED_TOL: f64 = 1e-7;
const EIGENBASIS_TOL: f64 = 1e-8;
const HITTING_TOL: f64 = 1e-6;
const RESISTANCE_TOL: f64 = 1e-8;
const INVARIANT_TOL: f64 = 1e-8;
const LOG_TAU_TOL: f64 = 1e-6;
const RUNTIME_LIMIT: Duration = Duration::from_secs(60);

const K_SK: [usize; 3] = [1, 2, 3];
const K_S2K: [usize; 2] = [1, 2];

type Outcome = Result<String, String>;

struct Ctx {
    corpus: CorpusSpec,
    caps: Caps,
    bases: Vec<(NamedGraph, Spectrum, EigenDecomposition)>,
}

impl Ctx {
    fn new() -> Self {
        let corpus = CorpusSpec::default();
        let caps = corpus.caps;
        let bases = corpus
            .graphs
            .iter()
            .map(|ng| {
                let (s, d) = eigen_decompose(&ng.graph, caps.eigen).expect("base eigensolve");
                (ng.clone(), s, d)
            })
            .collect();
        Ctx { corpus, caps, bases }
    }

    fn instances(&self) -> Vec<(Variant, usize)> {
        K_SK.iter()
            .map(|&k| (Variant::Sk, k))
            .chain(K_S2K.iter().map(|&k| (Variant::S2k, k)))
            .collect()
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn k3() -> Graph {
    specsub::graph::generate(&specsub::graph::GraphKind::Complete(3)).unwrap()
}

fn spectrum_prediction(ctx: &Ctx) -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (ng, spec, _) in &ctx.bases {
        let g = &ng.graph;
        for (variant, k) in ctx.instances() {
            let predicted = predicted_spectrum(spec, g.n(), g.m(), k, variant, g.is_bipartite()).map_err(|e| e.to_string())?;
            let t = transform(g, k, variant).map_err(|e| e.to_string())?;
            let direct = eigen_decompose(&t.graph, ctx.caps.eigen).map_err(|e| e.to_string())?.0;
            let m = spectra_match(&predicted, &direct, SPECTRUM_TOL);
            ensure(m.pass, || format!("{} {} k={k}: {:?}", ng.name, variant.as_str(), m.max_abs_diff))?;
            worst = worst.max(m.max_abs_diff.unwrap_or(f64::INFINITY));
            count += 1;
        }
    }
    let (spec, _) = eigen_decompose(&k3(), 10).unwrap();
    let p = predicted_spectrum(&spec, 3, 3, 1, Variant::Sk, false).unwrap();
    let want = [0.0, 0.5, 0.5, 1.5, 1.5, 2.0];
    ensure(
        p.len() == 6 && p.values().iter().zip(want).all(|(a, b)| (a - b).abs() <= 1e-12),
        || format!("S_1(K3) predicted {:?}", p.values()),
    )?;
    Ok(format!("{count} instances, max abs diff {worst:.2e}; S_1(K3) = C6 spectrum"))
}

fn iterated_spectra(ctx: &Ctx) -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (ng, spec, _) in &ctx.bases {
        let g = &ng.graph;
        for (variant, k) in ctx.instances() {
            let n2 = predicted_sizes(g.n(), g.m(), k, 2, variant).0;
            if n2 > ctx.caps.eigen.into() {
                continue;
            }
            let p = predicted_spectrum_iterated(spec, g.n(), g.m(), k, 2, variant, g.is_bipartite(), ctx.caps.transform)
                .map_err(|e| e.to_string())?;
            let t = iterate_transform(g, k, 2, variant, ctx.caps.transform).map_err(|e| e.to_string())?;
            let direct = eigen_decompose(&t, ctx.caps.eigen).map_err(|e| e.to_string())?.0;
            let m = spectra_match(&p, &direct, ITERATED_TOL);
            ensure(m.pass, || format!("{} {} k={k} r=2: {:?}", ng.name, variant.as_str(), m.max_abs_diff))?;
            worst = worst.max(m.max_abs_diff.unwrap_or(f64::INFINITY));
            count += 1;
        }
    }
    ensure(count > 0, || "no r = 2 instance within caps".into())?;
    Ok(format!("{count} r = 2 instances, max abs diff {worst:.2e}"))
}

fn eigenbasis(ctx: &Ctx) -> Outcome {
    let (mut res, mut ortho, mut mass) = (0.0f64, 0.0f64, 0.0f64);
    for (ng, _, decomp) in &ctx.bases {
        for k in K_SK {
            let g = &ng.graph;
            let basis = sk_eigenbasis(g, k, decomp).map_err(|e| format!("{} k={k}: {e}", ng.name))?;
            let t = transform(g, k, Variant::Sk).unwrap();
            ensure(basis.len() == t.graph.n(), || format!("{} k={k}: {} vectors", ng.name, basis.len()))?;
            res = res.max(basis.max_residual(&normalized_adjacency(&t.graph)));
            ortho = ortho.max(basis.orthonormality_error());
            for rm in residual_mass(g, decomp, &basis) {
                mass = mass.max((rm.measured - rm.predicted).abs());
            }
        }
    }
    ensure(res <= EIGENBASIS_TOL && ortho <= EIGENBASIS_TOL && mass <= EIGENBASIS_TOL, || {
        format!("residual {res:.2e}, orthonormality {ortho:.2e}, kernel mass {mass:.2e}")
    })?;
    Ok(format!("residual {res:.2e}, orthonormality {ortho:.2e}, kernel mass {mass:.2e}"))
}

type PairFn = Box<dyn Fn(SkVertexRef, SkVertexRef) -> f64>;
type IndexFn = Box<dyn Fn(usize, usize) -> f64>;

/// Largest relative error of a closed form over all ordered pairs of `S_k(G)`.
/// `closed` prepares the closed form from the base graph and `k`; `oracle`
/// prepares the oracle on the transformed graph.
fn all_pairs(
    ctx: &Ctx,
    closed: impl Fn(&Graph, usize) -> PairFn,
    oracle: impl Fn(&Graph) -> IndexFn,
    tol: f64,
) -> Result<(f64, usize), String> {
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for (ng, _, _) in &ctx.bases {
        for k in K_SK {
            let tg = transform(&ng.graph, k, Variant::Sk).unwrap();
            let n = tg.graph.n();
            let refs: Vec<SkVertexRef> = (0..n).map(|v| SkVertexRef::resolve(&tg, v).unwrap()).collect();
            let (c, o) = (closed(&ng.graph, k), oracle(&tg.graph));
            for i in 0..n {
                for j in 0..n {
                    let (cv, ov) = (c(refs[i], refs[j]), o(i, j));
                    let d = rel(cv, ov);
                    ensure(d <= tol, || format!("{} k={k} {i}->{j}: closed {cv} oracle {ov}", ng.name))?;
                    worst = worst.max(d);
                    pairs += 1;
                }
            }
        }
    }
    Ok((worst, pairs))
}

fn hitting_times(ctx: &Ctx) -> Outcome {
    let cap = ctx.caps.walk;
    let (worst, pairs) = all_pairs(
        ctx,
        |g, k| {
            let (h, m) = (hitting_times_oracle(g, cap).unwrap(), g.m());
            Box::new(move |a, b| sk_hitting_time(&h, m, k, a, b).unwrap())
        },
        |t| {
            let h = hitting_times_oracle(t, cap).unwrap();
            Box::new(move |i, j| h.get(i, j))
        },
        HITTING_TOL,
    )?;
    let t = transform(&k3(), 1, Variant::Sk).unwrap();
    let e = hitting_times_oracle(&t.graph, 100).unwrap().get(0, 1);
    ensure((e - 8.0).abs() < 1e-9, || format!("S_1(K3) original->original {e}"))?;
    Ok(format!("{pairs} ordered pairs, max rel err {worst:.2e}; S_1(K3) original->original = 8"))
}

fn resistances(ctx: &Ctx) -> Outcome {
    let cap = ctx.caps.walk;
    let (worst, pairs) = all_pairs(
        ctx,
        |g, k| {
            let o = resistance_oracle(g, cap).unwrap();
            Box::new(move |a, b| sk_resistance(&o, k, a, b).unwrap())
        },
        |t| {
            let o = resistance_oracle(t, cap).unwrap();
            Box::new(move |i, j| o.get(i, j))
        },
        RESISTANCE_TOL,
    )?;
    let g = k3();
    let base = resistance_oracle(&g, 10).unwrap();
    let mid = SkVertexRef::Mid { s: 0, t: 1, branch: 0 };
    let closed = sk_resistance(&base, 1, mid, SkVertexRef::Original(0)).unwrap();
    ensure((closed - 5.0 / 6.0).abs() < 1e-12, || format!("S_1(K3) mid->endpoint {closed}"))?;
    Ok(format!("{pairs} ordered pairs, max rel err {worst:.2e}; S_1(K3) mid->endpoint = 5/6"))
}

fn kirchhoff_kemeny(ctx: &Ctx) -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for (ng, spec, _) in &ctx.bases {
        let g = &ng.graph;
        let (n, m) = (g.n(), g.m());
        let kf = kf_star(spec, m).unwrap();
        let ke = kemeny(spec).unwrap();
        for k in K_SK {
            for r in [1, 2] {
                let m_r = predicted_sizes(n, m, k, r, Variant::Sk).1.try_into().unwrap();
                let p = predicted_spectrum_iterated(spec, n, m, k, r, Variant::Sk, g.is_bipartite(), ctx.caps.transform)
                    .map_err(|e| e.to_string())?;
                let t = iterate_transform(g, k, r, Variant::Sk, ctx.caps.transform).unwrap();
                let direct = eigen_decompose(&t, ctx.caps.eigen).map_err(|e| e.to_string())?.0;
                let kfs = [
                    kf_star_sk_iterated(kf, n, m, k, r),
                    as_published::kf_star_sk(kf, n, m, k, r),
                    kf_star(&p, m_r).unwrap(),
                    kf_star(&direct, m_r).unwrap(),
                ];
                let kes = [
                    kemeny_sk_iterated(kf, n, m, k, r),
                    as_published::kemeny_sk(ke, n, m, k, r),
                    kemeny(&p).unwrap(),
                    kemeny(&direct).unwrap(),
                    kfs[0] / (2.0 * m_r as f64),
                ];
                for vals in [&kfs[..], &kes[..]] {
                    for a in vals {
                        let d = (a - vals[0]).abs() / vals[0].abs();
                        ensure(d <= INVARIANT_TOL, || format!("{} k={k} r={r}: {vals:?}", ng.name))?;
                        worst = worst.max(d);
                    }
                }
                count += 1;
            }
        }
    }
    let (spec, _) = eigen_decompose(&k3(), 10).unwrap();
    let kf = as_published::kf_star_sk(kf_star(&spec, 3).unwrap(), 3, 3, 1, 1);
    ensure((kf - 70.0).abs() < 1e-9, || format!("Kf*(S(K3)) = {kf}"))?;
    Ok(format!("{count} (graph, k, r) instances, step/closed/spectral/direct max rel diff {worst:.2e}; Kf*(S(K3)) = 70"))
}

fn expect_row(report: &VerificationReport, claim: &str, variant: &str, k: usize, r: usize, published: f64, oracle: f64) -> Result<String, String> {
    let row = report
        .find(claim, "K3", variant, k, r)
        .ok_or_else(|| format!("no {claim} row for K3"))?;
    let (p, o) = (row.published.unwrap_or(f64::NAN), row.oracle.unwrap_or(f64::NAN));
    ensure(
        row.status == Status::Discrepancy && (p - published).abs() < 1e-9 && (o - oracle).abs() < 1e-9,
        || format!("{claim}: status {:?}, published {p}, oracle {o}", row.status),
    )?;
    Ok(format!("{claim} {p:.6} vs {o:.6}"))
}

fn errata(report: &VerificationReport, printed_sign: &VerificationReport) -> Outcome {
    let mut parts = vec![
        expect_row(report, claims::TAU_SK, "sk", 1, 1, 12.0, 6.0)?,
        expect_row(report, claims::KF_S2K, "s2k", 1, 1, 249.0, 240.0)?,
        expect_row(report, claims::KE_S2K, "s2k", 1, 1, 83.0 / 6.0, 40.0 / 3.0)?,
        expect_row(printed_sign, claims::LEMMA25, "base", 0, 0, 2.0 / 3.0, 2.0)?,
    ];
    let g = k3();
    let base = resistance_oracle(&g, 10).unwrap();
    let mid = SkVertexRef::Mid { s: 0, t: 1, branch: 0 };
    let published = sk_commute_published(&base, 3, 1, mid, SkVertexRef::Original(0)).unwrap();
    let t = transform(&g, 1, Variant::Sk).unwrap();
    let i = mid.index(&t).unwrap();
    let oracle = 2.0 * t.graph.m() as f64 * resistance_oracle(&t.graph, 10).unwrap().get(i, 0);
    ensure((published - 15.0).abs() < 1e-9 && (oracle - 10.0).abs() < 1e-9, || {
        format!("commute mid->endpoint published {published} oracle {oracle}")
    })?;
    let row = report.find(claims::COMMUTE, "K3", "sk", 1, 1).ok_or("no commute row")?;
    ensure(row.status == Status::Discrepancy, || format!("commute row {:?}", row.status))?;
    parts.push(format!("commute mid->endpoint {published:.6} vs {oracle:.6}"));
    let default_sign = report.find(claims::LEMMA25, "K3", "base", 0, 0).ok_or("no spectral hitting row")?;
    ensure(default_sign.status == Status::Pass, || "minus-sign spectral hitting row does not pass".into())?;
    let errors = report.summary().error + printed_sign.summary().error;
    ensure(errors == 0, || format!("{errors} error rows"))?;
    Ok(parts.join("; "))
}

fn tau_ground_truth(ctx: &Ctx) -> Outcome {
    let (mut exact_matches, mut log_matches) = (0, 0);
    for (ng, spec, _) in &ctx.bases {
        let g = &ng.graph;
        for (variant, k) in ctx.instances() {
            for r in [1, 2] {
                let n_r = predicted_sizes(g.n(), g.m(), k, r, variant).0;
                if n_r > ctx.caps.matrix_tree.into() {
                    continue;
                }
                let t = iterate_transform(g, k, r, variant, ctx.caps.transform).unwrap();
                let p = predicted_spectrum_iterated(spec, g.n(), g.m(), k, r, variant, g.is_bipartite(), ctx.caps.transform)
                    .map_err(|e| e.to_string())?;
                let tau = tau_spectral(&p, &t.degrees()).map_err(|e| format!("{} {}: {e}", ng.name, variant.as_str()))?;
                let exact = spanning_tree_count_exact(&t, ctx.caps.matrix_tree).map_err(|e| e.to_string())?;
                let where_ = || format!("{} {} k={k} r={r}", ng.name, variant.as_str());
                match tau.rounded {
                    Some(rounded) => {
                        ensure(rounded == exact, || format!("{}: spectral {rounded} exact {exact}", where_()))?;
                        exact_matches += 1;
                    }
                    None => {
                        let d = (tau.log_tau - ln_biguint(&exact)).abs();
                        ensure(d <= LOG_TAU_TOL, || format!("{}: log diff {d:.2e}", where_()))?;
                        log_matches += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{exact_matches} exact integer matches, {log_matches} counts above 2^31 matched in log space to {LOG_TAU_TOL:e}"
    ))
}

fn sizes(ctx: &Ctx) -> Outcome {
    let mut count = 0;
    for (ng, _, _) in &ctx.bases {
        let g = &ng.graph;
        for (variant, k) in ctx.instances() {
            for r in [0, 1, 2] {
                let t = iterate_transform(g, k, r, variant, ctx.caps.transform).map_err(|e| e.to_string())?;
                let (n_r, m_r) = predicted_sizes(g.n(), g.m(), k, r, variant);
                ensure(n_r == t.n().into() && m_r == t.m().into(), || {
                    format!("{} {} k={k} r={r}: predicted ({n_r}, {m_r}) built ({}, {})", ng.name, variant.as_str(), t.n(), t.m())
                })?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (graph, variant, k, r) instances"))
}

fn runtime_and_reproducibility(first: &VerificationReport, first_elapsed: Duration, corpus: &CorpusSpec) -> Outcome {
    let start = Instant::now();
    let second = run_verification(corpus, &VerifyOptions::default());
    let second_elapsed = start.elapsed();
    ensure(first_elapsed < RUNTIME_LIMIT && second_elapsed < RUNTIME_LIMIT, || {
        format!("runs took {first_elapsed:?} and {second_elapsed:?}")
    })?;
    ensure(first.to_json_lines() == second.to_json_lines(), || "JSON reports differ".into())?;
    ensure(first.to_csv() == second.to_csv(), || "CSV reports differ".into())?;
    Ok(format!(
        "{} rows in {:.2}s and {:.2}s, JSON and CSV byte-identical",
        first.rows.len(),
        first_elapsed.as_secs_f64(),
        second_elapsed.as_secs_f64()
    ))
}

fn main() -> ExitCode {
    let ctx = Ctx::new();
    let start = Instant::now();
    let report = run_verification(&ctx.corpus, &VerifyOptions::default());
    let elapsed = start.elapsed();
    let printed_sign = run_verification(
        &ctx.corpus,
        &VerifyOptions {
            cross: CrossTerm::Plus,
            ..VerifyOptions::default()
        },
    );

    let results: Vec<(&str, Outcome)> = vec![
        ("spectrum prediction, one step", spectrum_prediction(&ctx)),
        ("spectrum prediction, r = 2", iterated_spectra(&ctx)),
        ("constructed eigenbasis of N(S_k(G))", eigenbasis(&ctx)),
        ("hitting-time closed forms", hitting_times(&ctx)),
        ("resistance closed forms", resistances(&ctx)),
        ("Kf* and Kemeny's constant on S_k^r", kirchhoff_kemeny(&ctx)),
        ("published-formula errata flagged", errata(&report, &printed_sign)),
        ("spectral spanning-tree count vs Matrix-Tree", tau_ground_truth(&ctx)),
        ("vertex and edge counts of iterates", sizes(&ctx)),
        ("default verification runtime and reproducibility", runtime_and_reproducibility(&report, elapsed, &ctx.corpus)),
    ];

    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
