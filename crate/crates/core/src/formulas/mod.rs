//! Closed-form distance and W-set formulas for GP(n,3) and GP(n,4), held as
//! data in a versioned manifest and queried per order `n`.

pub mod affine;
pub mod manifest;
pub mod verify;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::petersen::{GpVertex, VertexKind};
use affine::{Env, Var};
pub use manifest::{
    Claim, FormulaRecord, FormulaTable, HalfCountRecord, OrderDomain, PairClass, Parity, Relation, VertexExpr,
    MANIFEST_VERSION,
};

/// Source text of the built-in manifest.
pub const BUILTIN_MANIFEST: &str = include_str!("gp_formulas.txt");

/// The built-in table, parsed once.
pub fn builtin() -> &'static FormulaTable {
    static TABLE: OnceLock<FormulaTable> = OnceLock::new();
    TABLE.get_or_init(|| FormulaTable::parse(BUILTIN_MANIFEST).expect("built-in manifest is well formed"))
}

/// Half counts `(|W^1_{u0 vj}|, |W^1_{vj u0}|)` for one `j` in GP(n,k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WSplit {
    pub w1_x: usize,
    pub w1_y: usize,
    pub j: usize,
    pub n: usize,
}

/// Smallest order each table is stated for.
pub fn min_order(k: usize) -> Result<usize> {
    match k {
        3 => Ok(17),
        4 => Ok(25),
        _ => Err(Error::OutOfDomain(format!("no formulas for k = {k}"))),
    }
}

fn check_order(k: usize, n: usize) -> Result<()> {
    let lo = min_order(k)?;
    if n < lo {
        return Err(Error::OutOfDomain(format!("k = {k} formulas need n >= {lo}, got {n}")));
    }
    Ok(())
}

fn bound_records(table: &FormulaTable, k: usize, n: usize) -> impl Iterator<Item = (&FormulaRecord, Env)> {
    table.records.iter().filter_map(move |r| r.domain.bind(k, n).map(|env| (r, env)))
}

fn eval_count(expr: &affine::Affine, env: &Env, line: usize) -> Result<usize> {
    let v = expr.eval(env).ok_or_else(|| Error::Manifest { line, msg: "unbound variable in count".into() })?;
    usize::try_from(v).map_err(|_| Error::Manifest { line, msg: format!("negative count {v}") })
}

fn predicted_pair(table: &FormulaTable, class: PairClass, k: usize, n: usize) -> Result<(usize, usize)> {
    check_order(k, n)?;
    let mut hits = bound_records(table, k, n).filter_map(|(r, env)| match &r.claim {
        Claim::Cardinality { class: c, wx, wy, .. } if *c == class => Some((r.line, *wx, *wy, env)),
        _ => None,
    });
    let (line, wx, wy, env) =
        hits.next().ok_or_else(|| Error::OutOfDomain(format!("no {class:?} record for k = {k}, n = {n}")))?;
    Ok((eval_count(&wx, &env, line)?, eval_count(&wy, &env, line)?))
}

/// `(|W_{u0 v0}|, |W_{v0 u0}|)` from the residue tables.
pub fn predicted_w_spoke(k: usize, n: usize) -> Result<(usize, usize)> {
    predicted_pair(builtin(), PairClass::Spoke, k, n)
}

/// `(|W_{u0 v_{n-k}}|, |W_{v_{n-k} u0}|)` from the residue tables.
pub fn predicted_w_ell2(k: usize, n: usize) -> Result<(usize, usize)> {
    predicted_pair(builtin(), PairClass::Ell2, k, n)
}

pub fn predicted_w1_in(table: &FormulaTable, k: usize, n: usize, j: usize) -> Result<WSplit> {
    min_order(k)?;
    if j < 2 * k || j + 2 * k > n {
        return Err(Error::OutOfDomain(format!("j = {j} outside [{}, n - {}] for n = {n}", 2 * k, 2 * k)));
    }
    let rec = table
        .half_counts
        .iter()
        .find(|r| r.covers(k, j))
        .ok_or_else(|| Error::OutOfDomain(format!("half-count table has no entry for k = {k}, j = {j}")))?;
    let env = Env::default().with(Var::S, (j / k) as i64);
    Ok(WSplit { w1_x: eval_count(&rec.wx, &env, rec.line)?, w1_y: eval_count(&rec.wy, &env, rec.line)?, j, n })
}

/// Table half counts for `v_j`.
pub fn predicted_w1(k: usize, n: usize, j: usize) -> Result<WSplit> {
    predicted_w1_in(builtin(), k, n, j)
}

/// Full `(|W_{u0 vj}|, |W_{vj u0}|)` from the halves for `j` and `n - j`.
pub fn combine_w1(a: WSplit, b: WSplit) -> Result<(usize, usize)> {
    if a.n != b.n || a.j + b.j != a.n {
        return Err(Error::Consistency(format!(
            "halves for j = {} (n = {}) and j = {} (n = {}) do not pair up",
            a.j, a.n, b.j, b.n
        )));
    }
    let x = (a.w1_x + b.w1_x)
        .checked_sub(2)
        .ok_or_else(|| Error::Consistency("half counts too small to combine".into()))?;
    let y = (a.w1_y + b.w1_y)
        .checked_sub(2)
        .ok_or_else(|| Error::Consistency("half counts too small to combine".into()))?;
    Ok((x, y))
}

pub fn predicted_distance_in(table: &FormulaTable, k: usize, n: usize, from: GpVertex, to: GpVertex) -> Result<u32> {
    check_order(k, n)?;
    let mut found: Option<(u32, &str)> = None;
    for (rec, _) in bound_records(table, k, n) {
        let Claim::Distance { from: fx, to: tx, value, .. } = &rec.claim else {
            continue;
        };
        for env in rec.instances(n) {
            let (Some(a), Some(b)) = (fx.eval(&env, n), tx.eval(&env, n)) else {
                continue;
            };
            if !((a == from && b == to) || (a == to && b == from)) {
                continue;
            }
            let v = value
                .eval(&env)
                .and_then(|v| u32::try_from(v).ok())
                .ok_or_else(|| Error::Manifest { line: rec.line, msg: "distance does not evaluate".into() })?;
            match found {
                None => found = Some((v, &rec.family)),
                Some((w, fam)) if w != v => {
                    return Err(Error::Consistency(format!(
                        "d({from},{to}) in GP({n},{k}): {fam} gives {w}, {} gives {v}",
                        rec.family
                    )))
                }
                Some(_) => {}
            }
        }
    }
    found.map(|(v, _)| v).ok_or_else(|| Error::NotCovered(format!("d({from},{to}) in GP({n},{k})")))
}

/// Distance from the transcribed clauses; either argument order works.
pub fn predicted_distance(k: usize, n: usize, from: GpVertex, to: GpVertex) -> Result<u32> {
    predicted_distance_in(builtin(), k, n, from, to)
}

/// `(j*, D)` with `d(u0, u_{j*}) = D` the diameter.
pub fn diameter_attaining_vertex(k: usize, n: usize) -> Result<(usize, u32)> {
    check_order(k, n)?;
    for (rec, env) in bound_records(builtin(), k, n) {
        if let Claim::DiameterAt { j, diameter } = &rec.claim {
            let j = eval_count(j, &env, rec.line)?;
            let d = eval_count(diameter, &env, rec.line)?;
            return Ok((j, d as u32));
        }
    }
    Err(Error::OutOfDomain(format!("no diameter record for k = {k}, n = {n}")))
}

/// Inner targets `(j, d(u0, vj))` named by the ladder records at order `n`.
pub fn ladder_targets(table: &FormulaTable, k: usize, n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for (rec, _) in bound_records(table, k, n) {
        let Claim::Distance { from, to, value, ladder: true } = &rec.claim else {
            continue;
        };
        for env in rec.instances(n) {
            let (Some(a), Some(b), Some(v)) = (from.eval(&env, n), to.eval(&env, n), value.eval(&env)) else {
                continue;
            };
            if a == GpVertex::outer(0) && b.kind == VertexKind::Inner && v >= 0 {
                out.push((b.index, v as u32));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Smallest ladder index `j` with `d(u0, vj) = ell` and `2k <= j <= n/2`.
pub fn ell_realizing_inner_vertex(k: usize, n: usize, ell: u32) -> Result<usize> {
    let (_, diam) = diameter_attaining_vertex(k, n)?;
    if ell < 3 || ell >= diam {
        return Err(Error::OutOfRange { what: "ell", value: ell as i64, lo: 3, hi: diam as i64 - 1 });
    }
    ladder_targets(builtin(), k, n)
        .into_iter()
        .filter(|&(j, d)| d == ell && 2 * k <= j && 2 * j <= n)
        .map(|(j, _)| j)
        .min()
        .ok_or_else(|| Error::NotCovered(format!("ladder vertex at distance {ell} in GP({n},{k})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let t = builtin();
        assert_eq!(t.version, MANIFEST_VERSION);
        assert!(t.records.len() > 500);
        assert_eq!(t.half_counts.len(), 25);
    }

    #[test]
    fn spoke_and_ell2_values() {
        assert_eq!(predicted_w_spoke(3, 18).unwrap(), (17, 19));
        assert_eq!(predicted_w_spoke(3, 17).unwrap(), (13, 19));
        assert_eq!(predicted_w_spoke(4, 32).unwrap(), (29, 33));
        assert_eq!(predicted_w_ell2(3, 18).unwrap(), (10, 11));
        assert_eq!(predicted_w_ell2(3, 23).unwrap(), (11, 17));
        assert_eq!(predicted_w_ell2(4, 32).unwrap(), (19, 20));
        assert!(matches!(predicted_w_spoke(3, 16), Err(Error::OutOfDomain(_))));
        assert!(matches!(predicted_w_spoke(4, 24), Err(Error::OutOfDomain(_))));
        assert!(matches!(predicted_w_spoke(5, 40), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn half_counts() {
        let w = predicted_w1(3, 18, 9).unwrap();
        assert_eq!((w.w1_x, w.w1_y), (7, 8));
        let w = predicted_w1(3, 40, 15).unwrap();
        assert_eq!((w.w1_x, w.w1_y), (12, 14));
        let w = predicted_w1(4, 40, 10).unwrap();
        assert_eq!((w.w1_x, w.w1_y), (11, 10));
        assert!(matches!(predicted_w1(4, 40, 9), Err(Error::OutOfDomain(_))));
        assert!(predicted_w1(3, 18, 5).is_err());
        assert!(predicted_w1(3, 18, 13).is_err());
    }

    #[test]
    fn combine() {
        let a = predicted_w1(3, 18, 9).unwrap();
        assert_eq!(combine_w1(a, a).unwrap(), (12, 14));
        let c = combine_w1(predicted_w1(3, 15, 7).unwrap(), predicted_w1(3, 15, 8).unwrap()).unwrap();
        assert_eq!(c, (13, 13));
        let c = combine_w1(predicted_w1(3, 20, 8).unwrap(), predicted_w1(3, 20, 12).unwrap()).unwrap();
        assert_eq!(c, (19, 21));
        let bad = predicted_w1(3, 20, 9).unwrap();
        assert!(matches!(combine_w1(a, bad), Err(Error::Consistency(_))));
    }

    #[test]
    fn distances() {
        let (u, v) = (GpVertex::outer, GpVertex::inner);
        assert_eq!(predicted_distance(3, 18, u(0), v(4)).unwrap(), 3);
        assert_eq!(predicted_distance(3, 23, v(0), v(11)).unwrap(), 4);
        assert_eq!(predicted_distance(3, 23, v(0), v(20)).unwrap(), 1);
        assert_eq!(predicted_distance(4, 32, u(0), u(3)).unwrap(), 3);
        assert_eq!(predicted_distance(4, 32, v(0), u(3)).unwrap(), 3);
        assert_eq!(predicted_distance(4, 32, u(3), v(0)).unwrap(), 3);
        assert!(matches!(predicted_distance(3, 18, u(5), v(7)), Err(Error::NotCovered(_))));
    }

    #[test]
    fn diameter_vertex() {
        assert_eq!(diameter_attaining_vertex(3, 18).unwrap(), (8, 6));
        assert_eq!(diameter_attaining_vertex(3, 22).unwrap(), (11, 7));
        assert_eq!(diameter_attaining_vertex(4, 33).unwrap(), (14, 7));
    }

    #[test]
    fn ell_vertex() {
        assert_eq!(ell_realizing_inner_vertex(3, 18, 3).unwrap(), 6);
        assert_eq!(ell_realizing_inner_vertex(3, 18, 5).unwrap(), 8);
        assert_eq!(ell_realizing_inner_vertex(4, 25, 4).unwrap(), 12);
        assert!(matches!(ell_realizing_inner_vertex(3, 18, 6), Err(Error::OutOfRange { .. })));
        assert!(matches!(ell_realizing_inner_vertex(3, 18, 2), Err(Error::OutOfRange { .. })));
    }
}
