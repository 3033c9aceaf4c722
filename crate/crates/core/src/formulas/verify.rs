//! Oracle sweep: every record in a table is evaluated against BFS distances.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::affine::{Env, Var};
use super::manifest::{Claim, FormulaRecord, FormulaTable};
use super::{combine_w1, ladder_targets, min_order, predicted_w1_in};
use crate::error::{Error, Result};
use crate::graph::WCount;
use crate::petersen::{distance_profile, DistanceProfile, GpParams, GpVertex};

/// What sort of claim a finding contradicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingKind {
    Distance,
    Comparison,
    Cardinality,
    Imbalance,
    Diameter,
    HalfCount,
    Combine,
    Realize,
}

impl FindingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FindingKind::Distance => "distance",
            FindingKind::Comparison => "comparison",
            FindingKind::Cardinality => "cardinality",
            FindingKind::Imbalance => "imbalance",
            FindingKind::Diameter => "diameter",
            FindingKind::HalfCount => "half_count",
            FindingKind::Combine => "combine",
            FindingKind::Realize => "realize",
        }
    }
}

/// One disagreement between a record and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub family: String,
    /// Manifest line, `0` for checks that combine several records.
    pub line: usize,
    pub n: usize,
    pub params: BTreeMap<String, i64>,
    pub subject: String,
    pub predicted: String,
    pub oracle: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub k: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub manifest_version: u32,
    /// Individual comparisons performed.
    pub checks: usize,
    /// Combine checks skipped because a table cell is missing.
    pub skipped: usize,
    pub findings: Vec<Finding>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn count(&self, kind: FindingKind) -> usize {
        self.findings.iter().filter(|f| f.kind == kind).count()
    }
}

#[derive(Default)]
struct Tally {
    checks: usize,
    skipped: usize,
    findings: Vec<Finding>,
}

fn env_params(env: &Env) -> BTreeMap<String, i64> {
    [Var::M, Var::T, Var::S].into_iter().filter_map(|v| env.get(v).map(|x| (v.symbol().to_string(), x))).collect()
}

fn pair_str(w: WCount) -> String {
    format!("({}, {})", w.closer_to_x, w.closer_to_y)
}

impl Tally {
    #[allow(clippy::too_many_arguments)]
    fn record(
        &mut self,
        kind: FindingKind,
        rec: &FormulaRecord,
        n: usize,
        env: &Env,
        subject: String,
        predicted: String,
        oracle: String,
    ) {
        self.findings.push(Finding {
            kind,
            family: rec.family.clone(),
            line: rec.line,
            n,
            params: env_params(env),
            subject,
            predicted,
            oracle,
        });
    }

    fn check_record(&mut self, rec: &FormulaRecord, prof: &DistanceProfile) {
        let n = prof.n();
        for env in rec.instances(n) {
            self.checks += 1;
            let v = |e: &super::VertexExpr| e.eval(&env, n).expect("vertex index binds with record range");
            match &rec.claim {
                Claim::Distance { from, to, value, .. } => {
                    let (a, b) = (v(from), v(to));
                    let got = prof.distance(a, b);
                    if value.eval(&env) != Some(got as i64) {
                        let want = value.eval(&env).map_or("?".into(), |x| x.to_string());
                        self.record(FindingKind::Distance, rec, n, &env, format!("d({a},{b})"), want, got.to_string());
                    }
                }
                Claim::Comparison { left, right, target, rel } => {
                    let (a, b, w) = (v(left), v(right), v(target));
                    let (da, db) = (prof.distance(a, w), prof.distance(b, w));
                    if !rel.holds(da, db) {
                        self.record(
                            FindingKind::Comparison,
                            rec,
                            n,
                            &env,
                            format!("d({a},{w}) vs d({b},{w})"),
                            format!("{rel:?}"),
                            format!("{da} vs {db}"),
                        );
                    }
                }
                Claim::Cardinality { class, x, y, wx, wy } => {
                    let (a, b) = (v(x), v(y));
                    let w = prof.w_count(a, b);
                    let want = (wx.eval(&env), wy.eval(&env));
                    if want != (Some(w.closer_to_x as i64), Some(w.closer_to_y as i64)) {
                        let p = format!("({}, {})", want.0.unwrap_or(-1), want.1.unwrap_or(-1));
                        self.record(
                            FindingKind::Cardinality,
                            rec,
                            n,
                            &env,
                            format!("|W({a},{b})|, |W({b},{a})|"),
                            p,
                            pair_str(w),
                        );
                    }
                    let d = prof.distance(a, b);
                    if d != class.distance() {
                        self.record(
                            FindingKind::Distance,
                            rec,
                            n,
                            &env,
                            format!("d({a},{b})"),
                            class.distance().to_string(),
                            d.to_string(),
                        );
                    }
                }
                Claim::Imbalance { x, y, rel } => {
                    let (a, b) = (v(x), v(y));
                    let w = prof.w_count(a, b);
                    if !rel.holds(w.closer_to_x as u32, w.closer_to_y as u32) {
                        self.record(
                            FindingKind::Imbalance,
                            rec,
                            n,
                            &env,
                            format!("|W({a},{b})| vs |W({b},{a})|"),
                            format!("{rel:?}"),
                            pair_str(w),
                        );
                    }
                }
                Claim::DiameterAt { j, diameter } => {
                    let (jv, dv) = (j.eval(&env), diameter.eval(&env));
                    let diam = prof.diameter();
                    let at = jv.map(|j| prof.duu[j.rem_euclid(n as i64) as usize]);
                    if dv != Some(diam as i64) || at.map(i64::from) != dv {
                        self.record(
                            FindingKind::Diameter,
                            rec,
                            n,
                            &env,
                            format!("d(u0,u{}) and diameter", jv.unwrap_or(-1)),
                            dv.map_or("?".into(), |d| d.to_string()),
                            format!("{} and {diam}", at.map_or("?".into(), |d| d.to_string())),
                        );
                    }
                }
            }
        }
    }
}

/// Half counts over the arc `u_i, v_i` for `0 <= i <= j`.
pub fn oracle_w1(prof: &DistanceProfile, j: usize) -> WCount {
    let (x, y) = (GpVertex::outer(0), GpVertex::inner(j));
    let mut count = WCount { closer_to_x: 0, closer_to_y: 0, equidistant: 0 };
    for i in 0..=j {
        for w in [GpVertex::outer(i), GpVertex::inner(i)] {
            count.tally(prof.distance(w, x), prof.distance(w, y));
        }
    }
    count
}

fn synthetic(
    kind: FindingKind,
    family: &str,
    n: usize,
    j: usize,
    subject: String,
    predicted: String,
    oracle: String,
) -> Finding {
    Finding {
        kind,
        family: family.to_string(),
        line: 0,
        n,
        params: BTreeMap::from([("j".to_string(), j as i64)]),
        subject,
        predicted,
        oracle,
    }
}

fn sweep_order(table: &FormulaTable, k: usize, n: usize) -> Tally {
    let mut tally = Tally::default();
    let p = GpParams::new(n, k).expect("sweep orders satisfy n > 2k");
    let prof = distance_profile(p);

    for rec in table.records.iter().filter(|r| r.domain.k == k) {
        tally.check_record(rec, &prof);
    }

    // Half counts against the arc oracle.
    for j in 2 * k..=n - 2 * k {
        let Some(rec) = table.half_counts.iter().find(|r| r.covers(k, j)) else {
            continue;
        };
        tally.checks += 1;
        let env = Env::default().with(Var::S, (j / k) as i64);
        let want = (rec.wx.eval(&env), rec.wy.eval(&env));
        let got = oracle_w1(&prof, j);
        if want != (Some(got.closer_to_x as i64), Some(got.closer_to_y as i64)) {
            tally.findings.push(Finding {
                kind: FindingKind::HalfCount,
                family: rec.family.clone(),
                line: rec.line,
                n,
                params: BTreeMap::from([("j".to_string(), j as i64), ("s".to_string(), (j / k) as i64)]),
                subject: format!("|W1(u0,v{j})|, |W1(v{j},u0)|"),
                predicted: format!("({}, {})", want.0.unwrap_or(-1), want.1.unwrap_or(-1)),
                oracle: pair_str(got),
            });
        }
    }

    // Combined halves against the full count, at distance >= 3.
    for j in 2 * k..=n / 2 {
        if prof.duv[j] < 3 {
            continue;
        }
        let halves = predicted_w1_in(table, k, n, j).and_then(|a| Ok((a, predicted_w1_in(table, k, n, n - j)?)));
        let Ok((a, b)) = halves else {
            tally.skipped += 1;
            continue;
        };
        tally.checks += 1;
        let combined = combine_w1(a, b).expect("halves pair up by construction");
        let full = prof.w_count(GpVertex::outer(0), GpVertex::inner(j));
        if combined != (full.closer_to_x, full.closer_to_y) {
            tally.findings.push(synthetic(
                FindingKind::Combine,
                "combine",
                n,
                j,
                format!("|W(u0,v{j})|, |W(v{j},u0)|"),
                format!("{combined:?}"),
                pair_str(full),
            ));
        }
    }

    // Every 3 <= l < D must be realized by an unbalanced pair (u0, vj).
    let mut targets: Vec<usize> =
        ladder_targets(table, k, n).into_iter().filter(|&(j, _)| 2 * k <= j && 2 * j <= n).map(|(j, _)| j).collect();
    for rec in table.records.iter().filter(|r| r.domain.k == k) {
        if let Claim::Imbalance { y, .. } = &rec.claim {
            for env in rec.instances(n) {
                if let Some(t) = y.eval(&env, n) {
                    targets.push(t.index);
                }
            }
        }
    }
    let diam = prof.diameter();
    for ell in 3..diam {
        tally.checks += 1;
        let ok = targets.iter().any(|&j| {
            prof.duv[j] == ell && {
                let w = prof.w_count(GpVertex::outer(0), GpVertex::inner(j));
                w.closer_to_x < w.closer_to_y
            }
        });
        if !ok {
            tally.findings.push(Finding {
                kind: FindingKind::Realize,
                family: "realize".into(),
                line: 0,
                n,
                params: BTreeMap::from([("ell".to_string(), ell as i64)]),
                subject: format!("unbalanced (u0, vj) with d = {ell} among named targets"),
                predicted: "present".into(),
                oracle: "absent".into(),
            });
        }
    }
    tally
}

/// Checks all applicable records of `table` for every order from the
/// table's lower bound up to `n_max`.
pub fn verify_table(table: &FormulaTable, k: usize, n_max: usize) -> Result<SweepReport> {
    let n_min = min_order(k)?;
    if n_max < n_min {
        return Err(Error::OutOfRange { what: "n_max", value: n_max as i64, lo: n_min as i64, hi: i64::MAX });
    }
    let per_n: Vec<Tally> = (n_min..=n_max).into_par_iter().map(|n| sweep_order(table, k, n)).collect();
    let mut report = SweepReport { k, n_min, n_max, manifest_version: table.version, ..Default::default() };
    for t in per_n {
        report.checks += t.checks;
        report.skipped += t.skipped;
        report.findings.extend(t.findings);
    }
    Ok(report)
}

/// Sweep of the built-in table.
pub fn verify_formulas(k: usize, n_max: usize) -> Result<SweepReport> {
    verify_table(super::builtin(), k, n_max)
}
