//! Verification report rows, summaries and their JSON-lines / CSV forms.

use serde::{Serialize, Serializer};

/// Significant digits kept for every float in a report.
pub const REPORT_SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Discrepancy,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Discrepancy => "discrepancy",
            Status::Error => "error",
        }
    }
}

/// Rounds to [`REPORT_SIG_DIGITS`] significant digits; non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{:.*e}", REPORT_SIG_DIGITS - 1, x).parse().expect("formatted float parses")
}

fn ser_rounded<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) if v.is_finite() => s.serialize_f64(round_sig(*v)),
        _ => s.serialize_none(),
    }
}

fn ser_rounded_plain<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    ser_rounded(&Some(*x), s)
}

/// One checked claim on one `(graph, variant, k, r)` instance.
///
/// `rel_diff` is the claim's error measure: relative difference
/// `|published - oracle| / max(|oracle|, 1)` for scalar claims, the largest
/// such difference over all vertex pairs or eigenvalues for aggregate claims,
/// and the absolute difference of natural logs for spanning-tree counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub claim: &'static str,
    pub graph: String,
    pub variant: &'static str,
    pub k: usize,
    pub r: usize,
    #[serde(serialize_with = "ser_rounded")]
    pub published: Option<f64>,
    #[serde(serialize_with = "ser_rounded")]
    pub oracle: Option<f64>,
    #[serde(serialize_with = "ser_rounded")]
    pub rel_diff: Option<f64>,
    #[serde(serialize_with = "ser_rounded_plain")]
    pub tolerance: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl ReportRow {
    pub fn key(&self) -> (&'static str, &str, &'static str, usize, usize) {
        (self.claim, &self.graph, self.variant, self.k, self.r)
    }
}

/// `|a - b| / max(|b|, 1)`.
pub fn rel_diff(published: f64, oracle: f64) -> f64 {
    (published - oracle).abs() / oracle.abs().max(1.0)
}

/// Pass when `diff <= tol`; discrepancy when it exceeds `tol` with every
/// input finite; error otherwise.
pub fn classify(published: f64, oracle: f64, diff: f64, tol: f64) -> Status {
    if !(published.is_finite() && oracle.is_finite() && diff.is_finite()) {
        Status::Error
    } else if diff <= tol {
        Status::Pass
    } else {
        Status::Discrepancy
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub discrepancy: usize,
    pub error: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerificationReport {
    pub rows: Vec<ReportRow>,
}

impl VerificationReport {
    /// Sorts rows by `(claim, graph, variant, k, r)`.
    pub fn from_rows(mut rows: Vec<ReportRow>) -> Self {
        rows.sort_by(|a, b| a.key().cmp(&b.key()));
        VerificationReport { rows }
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for row in &self.rows {
            match row.status {
                Status::Pass => s.pass += 1,
                Status::Discrepancy => s.discrepancy += 1,
                Status::Error => s.error += 1,
            }
        }
        s
    }

    /// 0 when every row passes, 2 when some row is a discrepancy and none
    /// errored, 1 when any row errored.
    pub fn exit_code(&self) -> i32 {
        let s = self.summary();
        if s.error > 0 {
            1
        } else if s.discrepancy > 0 {
            2
        } else {
            0
        }
    }

    pub fn find(&self, claim: &str, graph: &str, variant: &str, k: usize, r: usize) -> Option<&ReportRow> {
        self.rows
            .iter()
            .find(|row| row.claim == claim && row.graph == graph && row.variant == variant && row.k == k && row.r == r)
    }

    /// One JSON object per row, then one `{"summary": ...}` line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&serde_json::to_string(row).expect("row serializes"));
            out.push('\n');
        }
        #[derive(Serialize)]
        struct Tail {
            summary: Summary,
        }
        out.push_str(&serde_json::to_string(&Tail { summary: self.summary() }).expect("summary serializes"));
        out.push('\n');
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("claim,graph,variant,k,r,published,oracle,rel_diff,tolerance,status,note\n");
        let num = |x: Option<f64>| match x {
            Some(v) if v.is_finite() => round_sig(v).to_string(),
            _ => String::new(),
        };
        for row in &self.rows {
            let note = if row.note.contains([',', '"', '\n']) {
                format!("\"{}\"", row.note.replace('"', "\"\""))
            } else {
                row.note.clone()
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                row.claim,
                row.graph,
                row.variant,
                row.k,
                row.r,
                num(row.published),
                num(row.oracle),
                num(row.rel_diff),
                num(Some(row.tolerance)),
                row.status.as_str(),
                note
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(claim: &'static str, graph: &str, status: Status) -> ReportRow {
        ReportRow {
            claim,
            graph: graph.into(),
            variant: "sk",
            k: 1,
            r: 1,
            published: Some(12.000000000000004),
            oracle: Some(6.0),
            rel_diff: Some(1.0),
            tolerance: 1e-6,
            status,
            note: String::new(),
        }
    }

    #[test]
    fn rounding() {
        assert_eq!(round_sig(12.000000000000004), 12.0);
        assert_eq!(round_sig(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig(-2.0 / 3.0 * 1e-20), -6.66666666667e-21);
        assert!(round_sig(f64::NAN).is_nan());
    }

    #[test]
    fn classification() {
        assert_eq!(classify(1.0, 1.0, 0.0, 1e-8), Status::Pass);
        assert_eq!(classify(12.0, 6.0, 1.0, 1e-8), Status::Discrepancy);
        assert_eq!(classify(f64::NAN, 6.0, 0.0, 1e-8), Status::Error);
        assert_eq!(classify(1.0, f64::INFINITY, 0.0, 1e-8), Status::Error);
        assert_eq!(rel_diff(15.0, 10.0), 0.5);
        assert_eq!(rel_diff(0.5, 0.0), 0.5);
    }

    #[test]
    fn json_lines_are_sorted_and_summarized() {
        let report = VerificationReport::from_rows(vec![
            row("tau_sk_published", "K3", Status::Discrepancy),
            row("kf_sk", "P2", Status::Pass),
            row("kf_sk", "C4", Status::Pass),
        ]);
        let text = report.to_json_lines();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(
            lines[0],
            r#"{"claim":"kf_sk","graph":"C4","variant":"sk","k":1,"r":1,"published":12.0,"oracle":6.0,"rel_diff":1.0,"tolerance":1e-6,"status":"pass"}"#
        );
        assert_eq!(lines[3], r#"{"summary":{"pass":2,"discrepancy":1,"error":0}}"#);
        assert_eq!(report.exit_code(), 2);
        assert!(report.find("kf_sk", "P2", "sk", 1, 1).is_some());
    }

    #[test]
    fn non_finite_is_null_and_exit_codes() {
        let mut r = row("x", "G", Status::Error);
        r.published = Some(f64::NAN);
        r.note = "bad, \"quoted\"".into();
        let report = VerificationReport::from_rows(vec![r]);
        assert!(report.to_json_lines().contains(r#""published":null"#));
        assert!(report.to_csv().lines().nth(1).unwrap().ends_with(r#",error,"bad, ""quoted""""#));
        assert_eq!(report.exit_code(), 1);
        assert_eq!(VerificationReport::default().exit_code(), 0);
        assert_eq!(VerificationReport::default().summary(), Summary::default());
    }
}
