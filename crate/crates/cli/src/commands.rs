use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};
use specsub::graph::{generate, read_edge_list, spanning_tree_count_exact, write_edge_list, GraphKind};
use specsub::invariants::{as_published, kemeny, kf_star, ln_biguint, tau_spectral, InvariantBundle};
use specsub::spectra::{eigen_decompose, predicted_spectrum_iterated, spectra_match, Spectrum};
use specsub::transforms::{iterate_transform, predicted_sizes, transform};
use specsub::verify::{run_verification, CorpusSpec, VerifyOptions, TOL_SPECTRUM, TOL_SPECTRUM_ITERATED};
use specsub::walk::{
    hitting_time_spectral, hitting_times_oracle, parse_sk_ref, resistance_oracle, sk_commute_published,
    sk_hitting_time, sk_resistance, CrossTerm,
};
use specsub::{Caps, Graph, Variant};

use crate::cli::{
    Family, GenArgs, InvariantsArgs, MetricKind, MetricsArgs, SpectrumArgs, TableFormat, TransformArgs,
    TransformSpec, VariantArg, VerifyArgs,
};

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Graph> {
    read_edge_list(path).with_context(|| format!("cannot load graph from {}", path.display()))
}

fn variant(v: VariantArg) -> Variant {
    match v {
        VariantArg::Sk => Variant::Sk,
        VariantArg::S2k => Variant::S2k,
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn spectrum_value(s: &Spectrum) -> Value {
    serde_json::from_str(&s.to_json()).expect("spectrum json parses")
}

pub fn gen(args: &GenArgs) -> Result<i32> {
    let kind = match args.family {
        Family::Path => GraphKind::Path(args.n),
        Family::Cycle => GraphKind::Cycle(args.n),
        Family::Complete => GraphKind::Complete(args.n),
        Family::CompleteBipartite => {
            let b = args.b.context("complete-bipartite needs --b")?;
            GraphKind::CompleteBipartite(args.n, b)
        }
        Family::Random => GraphKind::RandomConnected {
            n: args.n,
            p: args.p,
            seed: args.seed,
        },
    };
    let g = generate(&kind)?;
    emit(args.out.as_deref(), &write_edge_list(&g))?;
    Ok(0)
}

pub fn transform_cmd(args: &TransformArgs) -> Result<i32> {
    let g = load(&args.graph)?;
    let caps = Caps::from_env();
    let v = variant(args.variant);
    if args.r == 0 {
        emit(args.out.as_deref(), &write_edge_list(&g))?;
        if args.labels.is_some() {
            bail!("--labels needs --r >= 1");
        }
        return Ok(0);
    }
    let before_last = iterate_transform(&g, args.k, args.r - 1, v, caps.transform)?;
    let (final_n, _) = predicted_sizes(g.n(), g.m(), args.k, args.r, v);
    if final_n > caps.transform.into() {
        bail!("transformed graph would have {final_n} vertices, above the cap {}", caps.transform);
    }
    let tg = transform(&before_last, args.k, v)?;
    emit(args.out.as_deref(), &write_edge_list(&tg.graph))?;
    if let Some(path) = &args.labels {
        fs::write(path, tg.labels_json()).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(0)
}

pub fn spectrum(args: &SpectrumArgs) -> Result<i32> {
    let g = load(&args.graph)?;
    let caps = Caps::from_env();
    let (predict, compute) = if args.predict || args.compute {
        (args.predict, args.compute)
    } else {
        (false, true)
    };
    let TransformSpec { variant: v, k, r } = args.transform;
    let mut out = serde_json::Map::new();
    let Some(v) = v.map(variant) else {
        if predict {
            bail!("--predict needs --variant");
        }
        out.insert("computed".into(), spectrum_value(&eigen_decompose(&g, caps.eigen)?.0));
        emit(None, &pretty(&Value::Object(out)))?;
        return Ok(0);
    };
    let predicted = if predict {
        let base = eigen_decompose(&g, caps.eigen)?.0;
        Some(predicted_spectrum_iterated(&base, g.n(), g.m(), k, r, v, g.is_bipartite(), caps.transform)?)
    } else {
        None
    };
    let computed = if compute {
        let t = iterate_transform(&g, k, r, v, caps.transform)?;
        Some(eigen_decompose(&t, caps.eigen)?.0)
    } else {
        None
    };
    if let Some(p) = &predicted {
        out.insert("predicted".into(), spectrum_value(p));
    }
    if let Some(c) = &computed {
        out.insert("computed".into(), spectrum_value(c));
    }
    if let (Some(p), Some(c)) = (&predicted, &computed) {
        let tol = if r <= 1 { TOL_SPECTRUM } else { TOL_SPECTRUM_ITERATED };
        let m = spectra_match(p, c, tol);
        out.insert(
            "match".into(),
            json!({ "pass": m.pass, "max_abs_diff": m.max_abs_diff, "tol": tol, "len_predicted": m.len_a, "len_computed": m.len_b }),
        );
    }
    emit(None, &pretty(&Value::Object(out)))?;
    Ok(0)
}

fn table(rows: Vec<Vec<f64>>, format: TableFormat) -> String {
    match format {
        TableFormat::Json => {
            let mut s = serde_json::to_string(&rows).expect("table serializes");
            s.push('\n');
            s
        }
        TableFormat::Csv => rows
            .iter()
            .map(|row| row.iter().map(f64::to_string).collect::<Vec<_>>().join(",") + "\n")
            .collect(),
    }
}

fn parse_index(text: &str, n: usize) -> Result<usize> {
    let v: usize = text.trim().parse().with_context(|| format!("not a vertex index: {text:?}"))?;
    if v >= n {
        bail!("vertex {v} out of range for {n} vertices");
    }
    Ok(v)
}

pub fn metrics(args: &MetricsArgs) -> Result<i32> {
    let g = load(&args.graph)?;
    let caps = Caps::from_env();
    let cross = if args.as_published { CrossTerm::Plus } else { CrossTerm::Minus };
    let Some(k) = args.sk else {
        let n = g.n();
        let oracle = |kind: MetricKind| -> Result<Vec<Vec<f64>>> {
            Ok(match kind {
                MetricKind::Hitting => {
                    let h = hitting_times_oracle(&g, caps.walk)?;
                    (0..n).map(|i| (0..n).map(|j| h.get(i, j)).collect()).collect()
                }
                MetricKind::Resistance => {
                    let o = resistance_oracle(&g, caps.walk)?;
                    (0..n).map(|i| (0..n).map(|j| o.get(i, j)).collect()).collect()
                }
                MetricKind::Commute => {
                    let c = hitting_times_oracle(&g, caps.walk)?.commute();
                    (0..n).map(|i| (0..n).map(|j| c[(i, j)]).collect()).collect()
                }
            })
        };
        let spectral_hitting = || -> Result<Vec<Vec<f64>>> {
            let (_, d) = eigen_decompose(&g, caps.eigen)?;
            Ok((0..n)
                .map(|i| (0..n).map(|j| hitting_time_spectral(&d, i, j, cross)).collect())
                .collect::<specsub::Result<_>>()?)
        };
        match (&args.from, &args.to) {
            (Some(from), Some(to)) => {
                let (i, j) = (parse_index(from, n)?, parse_index(to, n)?);
                let mut value = json!({
                    "kind": format!("{:?}", args.kind).to_lowercase(),
                    "from": i, "to": j, "oracle": oracle(args.kind)?[i][j],
                });
                if args.kind == MetricKind::Hitting {
                    value["spectral"] = json!(spectral_hitting()?[i][j]);
                    value["cross_term"] = json!(if args.as_published { "+" } else { "-" });
                }
                emit(None, &pretty(&value))?;
            }
            _ if args.kind == MetricKind::Hitting && args.as_published => {
                emit(None, &table(spectral_hitting()?, args.format))?
            }
            _ => emit(None, &table(oracle(args.kind)?, args.format))?,
        }
        return Ok(0);
    };

    let tg = transform(&g, k, Variant::Sk)?;
    let t = &tg.graph;
    let n = t.n();
    let two_m = 2.0 * t.m() as f64;
    match (&args.from, &args.to) {
        (Some(from), Some(to)) => {
            let (a, b) = (parse_sk_ref(&tg, from)?, parse_sk_ref(&tg, to)?);
            let (i, j) = (a.index(&tg)?, b.index(&tg)?);
            let mut value = json!({
                "kind": format!("{:?}", args.kind).to_lowercase(),
                "from": from, "to": to, "from_index": i, "to_index": j, "k": k,
            });
            match args.kind {
                MetricKind::Hitting => {
                    let base = hitting_times_oracle(&g, caps.walk)?;
                    value["closed_form"] = json!(sk_hitting_time(&base, g.m(), k, a, b)?);
                    value["oracle"] = json!(hitting_times_oracle(t, caps.walk)?.get(i, j));
                }
                MetricKind::Resistance => {
                    let base = resistance_oracle(&g, caps.walk)?;
                    value["closed_form"] = json!(sk_resistance(&base, k, a, b)?);
                    value["oracle"] = json!(resistance_oracle(t, caps.walk)?.get(i, j));
                }
                MetricKind::Commute => {
                    let base = resistance_oracle(&g, caps.walk)?;
                    value["closed_form"] = json!(two_m * sk_resistance(&base, k, a, b)?);
                    value["published"] = json!(sk_commute_published(&base, g.m(), k, a, b)?);
                    value["oracle"] = json!(two_m * resistance_oracle(t, caps.walk)?.get(i, j));
                }
            }
            emit(None, &pretty(&value))?;
        }
        _ => {
            let rows: Vec<Vec<f64>> = match args.kind {
                MetricKind::Hitting => {
                    let h = hitting_times_oracle(t, caps.walk)?;
                    (0..n).map(|i| (0..n).map(|j| h.get(i, j)).collect()).collect()
                }
                MetricKind::Resistance | MetricKind::Commute => {
                    let scale = if args.kind == MetricKind::Commute { two_m } else { 1.0 };
                    let o = resistance_oracle(t, caps.walk)?;
                    (0..n).map(|i| (0..n).map(|j| scale * o.get(i, j)).collect()).collect()
                }
            };
            emit(None, &table(rows, args.format))?;
        }
    }
    Ok(0)
}

fn bundle_value(b: &InvariantBundle) -> Value {
    json!({
        "kf_star": b.kf_star,
        "kemeny": b.kemeny,
        "log_tau": b.log_tau,
        "tau_exact": b.tau_exact.as_ref().map(|t| t.to_string()),
    })
}

pub fn invariants(args: &InvariantsArgs) -> Result<i32> {
    let g = load(&args.graph)?;
    let caps = Caps::from_env();
    let base = InvariantBundle::compute(&g, &caps)?;
    let mut value = json!({ "base": bundle_value(&base) });
    let TransformSpec { variant: v, k, r } = args.transform;
    if let Some(v) = v.map(variant) {
        let (n, m) = (g.n(), g.m());
        let (spec, _) = eigen_decompose(&g, caps.eigen)?;
        let predicted = predicted_spectrum_iterated(&spec, n, m, k, r, v, g.is_bipartite(), caps.transform)?;
        let t = iterate_transform(&g, k, r, v, caps.transform)?;
        let base_log_tau = base
            .tau_exact
            .as_ref()
            .map(ln_biguint)
            .unwrap_or(base.log_tau);
        let (kf_pub, ke_pub, tau_pub) = match v {
            Variant::Sk => (
                as_published::kf_star_sk(base.kf_star, n, m, k, r),
                as_published::kemeny_sk(base.kemeny, n, m, k, r),
                as_published::log_tau_sk(base_log_tau, n, m, k, r),
            ),
            Variant::S2k => (
                as_published::kf_star_s2k(base.kf_star, n, m, k, r),
                as_published::kemeny_s2k(base.kemeny, n, m, k, r),
                as_published::log_tau_s2k(base_log_tau, n, m, k, r),
            ),
        };
        let tau = tau_spectral(&predicted, &t.degrees())?;
        let exact = (t.n() <= caps.matrix_tree)
            .then(|| spanning_tree_count_exact(&t, caps.matrix_tree))
            .transpose()?;
        value["transformed"] = json!({
            "variant": v.as_str(),
            "k": k,
            "r": r,
            "n": t.n(),
            "m": t.m(),
            "kf_star": { "published": kf_pub, "spectral": kf_star(&predicted, t.m())? },
            "kemeny": { "published": ke_pub, "spectral": kemeny(&predicted)? },
            "log_tau": { "published": tau_pub, "spectral": tau.log_tau },
            "tau": {
                "published": tau_pub.exp(),
                "spectral_rounded": tau.rounded.map(|x| x.to_string()),
                "exact": exact.map(|x| x.to_string()),
            },
        });
    }
    emit(None, &pretty(&value))?;
    Ok(0)
}

pub fn verify(args: &VerifyArgs) -> Result<i32> {
    let corpus = if args.corpus == "default" {
        CorpusSpec::default()
    } else {
        CorpusSpec::load(&args.corpus)?
    };
    if let Some(tol) = args.tol {
        if !(tol.is_finite() && tol >= 0.0) {
            bail!("--tol must be a finite non-negative number");
        }
    }
    let opts = VerifyOptions {
        tol: args.tol,
        cross: if args.as_published { CrossTerm::Plus } else { CrossTerm::Minus },
    };
    let report = run_verification(&corpus, &opts);
    let text = match args.format {
        TableFormat::Json => report.to_json_lines(),
        TableFormat::Csv => report.to_csv(),
    };
    emit(args.out.as_deref(), &text)?;
    let s = report.summary();
    eprintln!("pass {} discrepancy {} error {}", s.pass, s.discrepancy, s.error);
    Ok(report.exit_code())
}
