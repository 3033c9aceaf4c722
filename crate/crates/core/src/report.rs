//! Run manifests and JSON / CSV / text emitters for the CLI.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::balance::{BalanceReport, EllVerdict, ScanResult};
use crate::formulas::verify::SweepReport;
use crate::formulas::MANIFEST_VERSION;
use crate::petersen::GpParams;

pub const CSV_HEADER: [&str; 9] =
    ["n", "k", "diameter", "balanced_ells", "witness_ell", "witness_x", "witness_y", "wx", "wy"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub tool_version: String,
    pub formula_table_version: u32,
    /// Seconds since the Unix epoch at start.
    pub started_at: u64,
    pub wall_clock: Duration,
    pub params: BTreeMap<String, serde_json::Value>,
}

impl RunManifest {
    pub fn new(command_line: Vec<String>, params: BTreeMap<String, serde_json::Value>) -> Self {
        let started_at = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        RunManifest {
            command_line,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            formula_table_version: MANIFEST_VERSION,
            started_at,
            wall_clock: Duration::ZERO,
            params,
        }
    }

    fn comment_lines(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# command: {}", self.command_line.join(" "));
        let _ = writeln!(s, "# version: {}", self.tool_version);
        let _ = writeln!(s, "# formula_table_version: {}", self.formula_table_version);
        let _ = writeln!(s, "# started_at: {}", self.started_at);
        let _ = writeln!(s, "# wall_clock_s: {:.6}", self.wall_clock.as_secs_f64());
        for (k, v) in &self.params {
            let _ = writeln!(s, "# param {k}: {v}");
        }
        s
    }
}

/// One ℓ of one graph, for `check --ell`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleEll {
    pub params: GpParams,
    pub diameter: u32,
    pub verdict: EllVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "body", rename_all = "snake_case")]
pub enum Payload {
    Check(BalanceReport),
    CheckEll(SingleEll),
    Scan(ScanResult),
    Verify(SweepReport),
}

/// Everything an invocation emits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Output {
    pub manifest: RunManifest,
    pub payload: Payload,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CsvRow {
    pub n: usize,
    pub k: usize,
    pub diameter: u32,
    pub balanced_ells: String,
    pub witness_ell: Option<u32>,
    pub witness_x: Option<String>,
    pub witness_y: Option<String>,
    pub wx: Option<usize>,
    pub wy: Option<usize>,
}

fn join_ells<'a>(it: impl Iterator<Item = &'a EllVerdict>) -> String {
    it.filter(|v| v.is_balanced()).map(|v| v.ell.to_string()).collect::<Vec<_>>().join(";")
}

impl CsvRow {
    /// Summary row: balanced set and the witness at the smallest unbalanced ℓ.
    pub fn from_report(r: &BalanceReport) -> Self {
        Self::from_verdicts(r.params, r.diameter, &r.per_ell)
    }

    fn from_verdicts(params: GpParams, diameter: u32, per_ell: &[EllVerdict]) -> Self {
        let first = per_ell.iter().find_map(|v| v.witness.map(|w| (v.ell, w)));
        CsvRow {
            n: params.n(),
            k: params.k(),
            diameter,
            balanced_ells: join_ells(per_ell.iter()),
            witness_ell: first.map(|(e, _)| e),
            witness_x: first.map(|(_, w)| w.x.to_string()),
            witness_y: first.map(|(_, w)| w.y.to_string()),
            wx: first.map(|(_, w)| w.count.closer_to_x),
            wy: first.map(|(_, w)| w.count.closer_to_y),
        }
    }
}

fn csv_rows(payload: &Payload) -> Vec<CsvRow> {
    match payload {
        Payload::Check(r) => vec![CsvRow::from_report(r)],
        Payload::CheckEll(s) => vec![CsvRow::from_verdicts(s.params, s.diameter, std::slice::from_ref(&s.verdict))],
        Payload::Scan(s) => s.reports.iter().map(CsvRow::from_report).collect(),
        Payload::Verify(_) => Vec::new(),
    }
}

fn csv_error(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

fn write_csv(out: &Output) -> io::Result<String> {
    let mut text = out.manifest.comment_lines();
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    match &out.payload {
        Payload::Verify(sweep) => {
            w.write_record(["kind", "family", "line", "n", "params", "subject", "predicted", "oracle"])
                .map_err(csv_error)?;
            for f in &sweep.findings {
                let params = f.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
                w.write_record([
                    f.kind.as_str(),
                    f.family.as_str(),
                    &f.line.to_string(),
                    &f.n.to_string(),
                    &params,
                    &f.subject,
                    &f.predicted,
                    &f.oracle,
                ])
                .map_err(csv_error)?;
            }
        }
        payload => {
            w.write_record(CSV_HEADER).map_err(csv_error)?;
            for row in csv_rows(payload) {
                w.serialize(row).map_err(csv_error)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    text.push_str(&String::from_utf8(bytes).map_err(io::Error::other)?);
    Ok(text)
}

fn fmt_set(set: impl IntoIterator<Item = u32>) -> String {
    let v: Vec<String> = set.into_iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

fn text_verdict(s: &mut String, v: &EllVerdict) {
    match v.witness {
        None => {
            let _ = writeln!(s, "  ell={:<3} balanced", v.ell);
        }
        Some(w) => {
            let _ = writeln!(
                s,
                "  ell={:<3} witness ({}, {})  |W_xy|={} |W_yx|={} equidistant={}",
                v.ell, w.x, w.y, w.count.closer_to_x, w.count.closer_to_y, w.count.equidistant
            );
        }
    }
}

fn write_text(out: &Output) -> String {
    let mut s = String::new();
    match &out.payload {
        Payload::Check(r) => {
            let _ = writeln!(s, "{}  diameter {}  balanced ells {}", r.params, r.diameter, fmt_set(r.balanced_ells()));
            for v in &r.per_ell {
                text_verdict(&mut s, v);
            }
        }
        Payload::CheckEll(e) => {
            let _ = write!(s, "{}  diameter {}", e.params, e.diameter);
            match e.verdict.witness {
                None => {
                    let _ = writeln!(s, "  ell={} balanced", e.verdict.ell);
                }
                Some(_) => {
                    let _ = writeln!(s);
                    text_verdict(&mut s, &e.verdict);
                }
            }
        }
        Payload::Scan(scan) => {
            let t = &scan.threshold;
            let _ = writeln!(s, "k={} n in [{}, {}]", t.k, t.n_range.0, t.n_range.1);
            for r in &scan.reports {
                let below = r.balanced_below_diameter();
                let _ = writeln!(
                    s,
                    "  n={:<4} diameter {:<3} balanced {}{}",
                    r.params.n(),
                    r.diameter,
                    fmt_set(r.balanced_ells()),
                    if below.is_empty() { "" } else { "  *" }
                );
            }
            match t.candidate_threshold {
                Some(n) => {
                    let _ = writeln!(s, "candidate threshold: {n}");
                }
                None => {
                    let _ = writeln!(s, "candidate threshold: none in range");
                }
            }
        }
        Payload::Verify(sw) => {
            let _ = writeln!(
                s,
                "k={} n in [{}, {}]: {} checks, {} skipped, {} findings",
                sw.k,
                sw.n_min,
                sw.n_max,
                sw.checks,
                sw.skipped,
                sw.findings.len()
            );
            let mut by_kind = BTreeMap::new();
            for f in &sw.findings {
                *by_kind.entry(f.kind.as_str()).or_insert(0usize) += 1;
            }
            for (kind, count) in &by_kind {
                let _ = writeln!(s, "  {kind}: {count}");
            }
            for f in &sw.findings {
                let params = f.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
                let _ = writeln!(
                    s,
                    "  [{}] {} (line {}) n={} {}: {} predicted {} oracle {}",
                    f.kind.as_str(),
                    f.family,
                    f.line,
                    f.n,
                    params,
                    f.subject,
                    f.predicted,
                    f.oracle
                );
            }
        }
    }
    let _ = writeln!(
        s,
        "[{} {} | formula table v{} | {:.3}s]",
        out.manifest.command_line.first().map_or("gpbalance", String::as_str),
        out.manifest.tool_version,
        out.manifest.formula_table_version,
        out.manifest.wall_clock.as_secs_f64()
    );
    s
}

/// Renders `out` in the requested format.
pub fn render(out: &Output, format: Format) -> io::Result<String> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(out).map_err(io::Error::other)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => write_csv(out),
        Format::Text => Ok(write_text(out)),
    }
}

/// Parses CSV text produced by [`render`] back into rows, skipping the
/// manifest comment lines.
pub fn parse_csv_rows(text: &str) -> Result<Vec<CsvRow>, csv::Error> {
    let body: String = text.lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    csv::Reader::from_reader(body.as_bytes()).deserialize().collect()
}
