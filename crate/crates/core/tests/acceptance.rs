//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gpbalance::balance::{
    explicit_report, find_threshold, full_report, scan_open_window, verify_diameter_balance, verify_k3_range,
    verify_k4_range,
};
use gpbalance::formulas::verify::{oracle_w1, verify_formulas, FindingKind, SweepReport};
use gpbalance::formulas::{predicted_w1, predicted_w_ell2, predicted_w_spoke};
use gpbalance::report::CsvRow;
use gpbalance::{build_gp, distance_profile, GpParams, GpVertex};

type Outcome = Result<String, String>;

fn gp(n: usize, k: usize) -> GpParams {
    GpParams::new(n, k).expect("valid parameters")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, elapsed: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn small_case(n: usize, k: usize, diameter: u32, balanced: &[u32]) -> Outcome {
    let start = Instant::now();
    let r = full_report(gp(n, k));
    let elapsed = start.elapsed();
    let want: BTreeSet<u32> = balanced.iter().copied().collect();
    ensure(r.diameter == diameter, || format!("diameter {} != {diameter}", r.diameter))?;
    ensure(r.balanced_ells() == want, || format!("balanced {:?} != {want:?}", r.balanced_ells()))?;
    within(Duration::from_secs(1), elapsed)?;
    Ok(format!("GP({n},{k}) D={} balanced {:?} in {elapsed:?}", r.diameter, r.balanced_ells()))
}

fn criterion_1() -> Outcome {
    small_case(16, 3, 6, &[5, 6])
}

fn criterion_2() -> Outcome {
    small_case(24, 4, 6, &[1, 6])
}

fn range_criterion(k: usize, n_lo: usize) -> Outcome {
    let start = Instant::now();
    let check = if k == 3 { verify_k3_range(200) } else { verify_k4_range(200) };
    ensure(check.violations.is_empty(), || {
        format!("{} violations, first {:?}", check.violations.len(), check.violations[0])
    })?;
    let top = verify_diameter_balance(k, 200).map_err(|e| e.to_string())?;
    let top: Vec<_> = top.into_iter().filter(|v| v.n >= n_lo).collect();
    ensure(top.is_empty(), || format!("unbalanced at the diameter: {:?}", top[0]))?;
    let elapsed = start.elapsed();
    within(Duration::from_secs(30), elapsed)?;
    Ok(format!("k={k}, n in [{n_lo}, 200]: zero violations in {elapsed:?}"))
}

fn criterion_3() -> Outcome {
    range_criterion(3, 17)
}

fn criterion_4() -> Outcome {
    range_criterion(4, 25)
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    for (k, lo, want) in [(2, 5, 11), (3, 8, 16), (4, 10, 24)] {
        let t = find_threshold(k, lo, 60).map_err(|e| e.to_string())?;
        ensure(t.candidate_threshold == Some(want), || format!("k={k}: {:?} != {want}", t.candidate_threshold))?;
        parts.push(format!("n{k}={want}"));
    }
    Ok(parts.join(" "))
}

fn cli_exit(k: usize) -> Result<i32, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gpbalance"))
        .args(["--format", "json", "verify-formulas", "--k", &k.to_string(), "--n-max", "200"])
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("terminated by signal")?;
    ensure(code == 0 || code == 1, || format!("exit {code}: {}", String::from_utf8_lossy(&out.stderr)))?;
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    ensure(v["payload"]["kind"] == "verify", || "json payload is not a sweep".into())?;
    Ok(code)
}

fn structured(sweep: &SweepReport) -> Result<(), String> {
    for f in &sweep.findings {
        ensure(!f.family.is_empty() && (sweep.n_min..=sweep.n_max).contains(&f.n), || {
            format!("malformed finding {f:?}")
        })?;
    }
    ensure(sweep.count(FindingKind::Cardinality) == 0, || {
        let f = sweep.findings.iter().find(|f| f.kind == FindingKind::Cardinality).unwrap();
        format!("cardinality pair mismatch {f:?}")
    })
}

fn criterion_6() -> Outcome {
    let sweep = verify_formulas(3, 200).map_err(|e| e.to_string())?;
    structured(&sweep)?;

    let n18 = distance_profile(gp(18, 3));
    let spoke = n18.w_count(GpVertex::outer(0), GpVertex::inner(0));
    let want = predicted_w_spoke(3, 18).map_err(|e| e.to_string())?;
    ensure(want == (17, 19), || format!("table spoke pair {want:?}"))?;
    ensure((spoke.closer_to_x, spoke.closer_to_y) == want, || format!("oracle spoke pair {spoke:?}"))?;

    let two = predicted_w_ell2(3, 18).map_err(|e| e.to_string())?;
    let got = n18.w_count(GpVertex::outer(0), GpVertex::inner(15));
    ensure((got.closer_to_x, got.closer_to_y) == two, || format!("2-distance pair {two:?} vs {got:?}"))?;

    for n in [30, 31, 40] {
        let w = predicted_w1(3, n, 9).map_err(|e| e.to_string())?;
        let o = oracle_w1(&distance_profile(gp(n, 3)), 9);
        ensure((w.w1_x, w.w1_y) == (7, 8) && (o.closer_to_x, o.closer_to_y) == (7, 8), || {
            format!("n={n} j=9: table ({}, {}) oracle {o:?}", w.w1_x, w.w1_y)
        })?;
    }
    let code = cli_exit(3)?;
    Ok(format!(
        "{} checks, {} findings logged, cli exit {code}; (17,19) and (7,8) exact",
        sweep.checks,
        sweep.findings.len()
    ))
}

fn criterion_7() -> Outcome {
    let sweep = verify_formulas(4, 200).map_err(|e| e.to_string())?;
    structured(&sweep)?;
    ensure(sweep.count(FindingKind::Imbalance) == 0, || "closing imbalance record failed".into())?;
    let prof = distance_profile(gp(25, 4));
    for j in [8, 11, 12] {
        let w = prof.w_count(GpVertex::outer(0), GpVertex::inner(j));
        ensure(w.closer_to_x < w.closer_to_y, || format!("GP(25,4) j={j}: {w:?}"))?;
    }
    let code = cli_exit(4)?;
    Ok(format!(
        "{} checks, {} findings logged, {} skipped, cli exit {code}; GP(25,4) j=8,11,12 unbalanced",
        sweep.checks,
        sweep.findings.len(),
        sweep.skipped
    ))
}

fn criterion_8() -> Outcome {
    let mut graphs = 0;
    for n in 5..=40 {
        for k in (1..).take_while(|&k| 2 * k < n) {
            let p = gp(n, k);
            let prof = distance_profile(p);
            let ap = build_gp(p).all_pairs();
            for a in 0..2 * n {
                for b in 0..2 * n {
                    let d = prof.pair_distance(p.decode(a), p.decode(b)).map_err(|e| e.to_string())?;
                    ensure(d == ap.get(a, b), || format!("GP({n},{k}) d({a},{b}): {d} vs {}", ap.get(a, b)))?;
                }
            }
            let (fast, slow) = (full_report(p), explicit_report(p));
            ensure(fast.same_verdicts(&slow), || format!("GP({n},{k}) verdicts differ"))?;
            graphs += 1;
        }
    }
    Ok(format!("{graphs} graphs, zero disagreements"))
}

fn criterion_9() -> Outcome {
    let mut graphs = 0;
    for n in 5..=200 {
        for k in (1..=6).take_while(|&k| 2 * k < n) {
            let p = gp(n, k);
            let prof = distance_profile(p);
            prof.check_invariants().map_err(|e| format!("GP({n},{k}): {e}"))?;
            for x in [GpVertex::outer(0), GpVertex::inner(0)] {
                for y in 0..2 * n {
                    let w = prof.w_count(x, p.decode(y));
                    ensure(w.total() == 2 * n, || format!("GP({n},{k}) {x}-{y}: {w:?}"))?;
                }
            }
            let g = build_gp(p);
            let mostar: usize = g.edges().map(|(a, b)| prof.w_count(p.decode(a), p.decode(b)).imbalance()).sum();
            let one_balanced = full_report(p).verdict(1).map_err(|e| e.to_string())?.is_balanced();
            ensure((mostar == 0) == one_balanced, || {
                format!("GP({n},{k}) mostar {mostar}, 1-balanced {one_balanced}")
            })?;
            graphs += 1;
        }
    }
    Ok(format!("{graphs} graphs: conservation, palindromes, mostar"))
}

fn criterion_10() -> Outcome {
    let mut parts = Vec::new();
    for (k, window) in [(5, (15, 36)), (6, (18, 48))] {
        let scan = scan_open_window(k).map_err(|e| e.to_string())?;
        let ns: Vec<usize> = scan.reports.iter().map(|r| r.params.n()).collect();
        let want: Vec<usize> = (window.0.max(2 * k + 1)..=window.1).collect();
        ensure(ns == want, || format!("k={k} covered orders {ns:?}"))?;
        for r in &scan.reports {
            ensure(r.per_ell.len() == r.diameter as usize, || format!("k={k} n={} incomplete table", r.params.n()))?;
            let again = full_report(r.params);
            ensure(again.same_verdicts(r) && CsvRow::from_report(&again) == CsvRow::from_report(r), || {
                format!("k={k} n={} not reproducible", r.params.n())
            })?;
        }
        let exceptional = scan.threshold.exceptional_orders();
        parts.push(format!("k={k} {} orders, exceptional {exceptional:?}", ns.len()));
    }
    Ok(parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {id:>2}: PASS  {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2}: FAIL  {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
