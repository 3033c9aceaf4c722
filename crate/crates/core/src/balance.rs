//! Whole-graph verdicts for GP(n,k): per-ℓ balance, range sweeps and
//! threshold scans.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Verdict, WCount};
use crate::petersen::{build_gp, distance_profile, DistanceProfile, GpParams, GpVertex};

/// An unbalanced pair at the verdict's distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub x: GpVertex,
    pub y: GpVertex,
    pub count: WCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllVerdict {
    pub ell: u32,
    /// `None` when every pair at distance `ell` is balanced.
    pub witness: Option<Witness>,
}

impl EllVerdict {
    pub fn is_balanced(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub params: GpParams,
    pub diameter: u32,
    /// Entry `i` is the verdict for `ell = i + 1`.
    pub per_ell: Vec<EllVerdict>,
    pub elapsed: Duration,
}

impl BalanceReport {
    pub fn verdict(&self, ell: u32) -> Result<&EllVerdict> {
        if ell == 0 || ell > self.diameter {
            return Err(Error::OutOfRange { what: "ell", value: ell as i64, lo: 1, hi: self.diameter as i64 });
        }
        Ok(&self.per_ell[ell as usize - 1])
    }

    pub fn balanced_ells(&self) -> BTreeSet<u32> {
        self.per_ell.iter().filter(|v| v.is_balanced()).map(|v| v.ell).collect()
    }

    /// Balanced `ell` strictly below the diameter.
    pub fn balanced_below_diameter(&self) -> BTreeSet<u32> {
        self.per_ell.iter().filter(|v| v.is_balanced() && v.ell < self.diameter).map(|v| v.ell).collect()
    }

    pub fn is_highly_balanced(&self) -> bool {
        self.per_ell.iter().all(EllVerdict::is_balanced)
    }

    /// Equality ignoring timing.
    pub fn same_verdicts(&self, other: &BalanceReport) -> bool {
        self.params == other.params && self.diameter == other.diameter && self.per_ell == other.per_ell
    }
}

/// Representatives of every rotation orbit of vertex pairs, each with the
/// lexicographically smallest encoded pair in its orbit.
fn class_representatives(p: GpParams) -> impl Iterator<Item = (GpVertex, GpVertex)> {
    let n = p.n();
    let half = n / 2;
    let uu = (1..=half).map(|d| (GpVertex::outer(0), GpVertex::outer(d)));
    let uv = (0..n).map(|d| (GpVertex::outer(0), GpVertex::inner(d)));
    let vv = (1..=half).map(|d| (GpVertex::inner(0), GpVertex::inner(d)));
    uu.chain(uv).chain(vv)
}

fn verdicts_from_profile(prof: &DistanceProfile) -> Vec<EllVerdict> {
    let p = prof.params;
    let diam = prof.diameter();
    let mut best: Vec<Option<(usize, usize, Witness)>> = vec![None; diam as usize];
    for (x, y) in class_representatives(p) {
        let ell = prof.distance(x, y);
        let count = prof.w_count(x, y);
        if count.is_balanced() {
            continue;
        }
        let key = (p.encode(x), p.encode(y));
        let slot = &mut best[ell as usize - 1];
        if slot.is_none_or(|(a, b, _)| key < (a, b)) {
            *slot = Some((key.0, key.1, Witness { x, y, count }));
        }
    }
    best.into_iter().enumerate().map(|(i, w)| EllVerdict { ell: i as u32 + 1, witness: w.map(|(_, _, w)| w) }).collect()
}

/// Per-ℓ verdicts from the rotation-reduced profile.
pub fn full_report(p: GpParams) -> BalanceReport {
    let start = Instant::now();
    let prof = distance_profile(p);
    let per_ell = verdicts_from_profile(&prof);
    BalanceReport { params: p, diameter: prof.diameter(), per_ell, elapsed: start.elapsed() }
}

/// Same verdicts computed by all-pairs BFS over the explicit graph.
pub fn explicit_report(p: GpParams) -> BalanceReport {
    let start = Instant::now();
    let g = build_gp(p);
    let ap = g.all_pairs();
    let diam = ap.diameter();
    let per_ell = (1..=diam)
        .map(|ell| {
            let witness = match ap.verdict(ell).expect("ell within [1, diam]") {
                Verdict::Balanced => None,
                Verdict::Witness { x, y, count } => Some(Witness { x: p.decode(x), y: p.decode(y), count }),
            };
            EllVerdict { ell, witness }
        })
        .collect();
    BalanceReport { params: p, diameter: diam, per_ell, elapsed: start.elapsed() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub n: usize,
    pub k: usize,
    pub ell: u32,
    pub diameter: u32,
    pub reason: String,
}

/// Outcome of a range sweep; `boundary` holds the report for the order just
/// below the stated range, where the claim is expected to fail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeCheck {
    pub k: usize,
    pub n_range: (usize, usize),
    pub violations: Vec<Violation>,
    pub boundary: Option<BoundaryProbe>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryProbe {
    pub n: usize,
    pub diameter: u32,
    pub balanced_below_diameter: BTreeSet<u32>,
}

fn reports(k: usize, n_lo: usize, n_hi: usize) -> Vec<BalanceReport> {
    (n_lo..=n_hi).into_par_iter().filter_map(|n| GpParams::new(n, k).ok()).map(full_report).collect()
}

fn no_balanced_below_diameter(k: usize, n_lo: usize, n_max: usize) -> RangeCheck {
    let mut violations = Vec::new();
    for r in reports(k, n_lo, n_max) {
        for ell in r.balanced_below_diameter() {
            violations.push(Violation {
                n: r.params.n(),
                k,
                ell,
                diameter: r.diameter,
                reason: "balanced below the diameter".into(),
            });
        }
    }
    let boundary = GpParams::new(n_lo - 1, k).ok().map(|p| {
        let r = full_report(p);
        BoundaryProbe { n: p.n(), diameter: r.diameter, balanced_below_diameter: r.balanced_below_diameter() }
    });
    RangeCheck { k, n_range: (n_lo, n_max), violations, boundary }
}

/// GP(n,3) for `17 <= n <= n_max` has no balanced ℓ below the diameter.
pub fn verify_k3_range(n_max: usize) -> RangeCheck {
    no_balanced_below_diameter(3, 17, n_max)
}

/// GP(n,4) for `25 <= n <= n_max` has no balanced ℓ below the diameter.
pub fn verify_k4_range(n_max: usize) -> RangeCheck {
    no_balanced_below_diameter(4, 25, n_max)
}

/// Order from which GP(n,k) is claimed diameter-balanced.
pub fn diameter_balance_bound(k: usize) -> Result<usize> {
    match k {
        0..=2 => Err(Error::InvalidParams(format!("diameter-balance bound needs k >= 3, got {k}"))),
        3 => Ok(8),
        4 => Ok(10),
        k if k % 2 == 1 => Ok(k * (k + 1) / 2),
        k => Ok(k * k / 2),
    }
}

/// Every GP(n,k) from the bound up to `n_max` is balanced at ℓ = diameter.
pub fn verify_diameter_balance(k: usize, n_max: usize) -> Result<Vec<Violation>> {
    let lo = diameter_balance_bound(k)?.max(2 * k + 1);
    let mut out = Vec::new();
    for r in reports(k, lo, n_max) {
        let top = r.per_ell.last().expect("diameter >= 1");
        if !top.is_balanced() {
            out.push(Violation {
                n: r.params.n(),
                k,
                ell: r.diameter,
                diameter: r.diameter,
                reason: "unbalanced at the diameter".into(),
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub k: usize,
    pub n_range: (usize, usize),
    /// Largest checked `n` with some balanced ℓ below the diameter.
    pub candidate_threshold: Option<usize>,
    pub per_n: BTreeMap<usize, BTreeSet<u32>>,
}

impl ThresholdResult {
    pub fn from_reports(k: usize, n_range: (usize, usize), reports: &[BalanceReport]) -> Self {
        let per_n: BTreeMap<usize, BTreeSet<u32>> =
            reports.iter().map(|r| (r.params.n(), r.balanced_below_diameter())).collect();
        let candidate_threshold = per_n.iter().rev().find(|(_, s)| !s.is_empty()).map(|(&n, _)| n);
        ThresholdResult { k, n_range, candidate_threshold, per_n }
    }

    /// Orders in range with a nonempty set.
    pub fn exceptional_orders(&self) -> Vec<usize> {
        self.per_n.iter().filter(|(_, s)| !s.is_empty()).map(|(&n, _)| n).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanResult {
    pub threshold: ThresholdResult,
    /// Sorted by `n`.
    pub reports: Vec<BalanceReport>,
}

pub fn scan_range(k: usize, n_min: usize, n_max: usize) -> Result<ScanResult> {
    if k == 0 || n_min <= 2 * k {
        return Err(Error::InvalidParams(format!("scan needs k >= 1 and n_min > 2k, got k = {k}, n_min = {n_min}")));
    }
    if n_max < n_min {
        return Err(Error::OutOfRange { what: "n_max", value: n_max as i64, lo: n_min as i64, hi: i64::MAX });
    }
    let mut reports = reports(k, n_min, n_max);
    reports.sort_by_key(|r| r.params.n());
    let threshold = ThresholdResult::from_reports(k, (n_min, n_max), &reports);
    Ok(ScanResult { threshold, reports })
}

pub fn find_threshold(k: usize, n_min: usize, n_max: usize) -> Result<ThresholdResult> {
    scan_range(k, n_min, n_max).map(|s| s.threshold)
}

/// Order window left open for `k >= 5`.
pub fn open_window(k: usize) -> Result<(usize, usize)> {
    match k {
        0..=4 => Err(Error::InvalidParams(format!("window defined for k >= 5, got {k}"))),
        k if k % 2 == 1 => Ok((k * (k + 1) / 2, (k + 1) * (k + 1))),
        k => Ok((k * k / 2, k * (k + 2))),
    }
}

pub fn scan_open_window(k: usize) -> Result<ScanResult> {
    let (lo, hi) = open_window(k)?;
    scan_range(k, lo.max(2 * k + 1), hi)
}
