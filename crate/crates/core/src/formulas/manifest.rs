//! Line-oriented formula manifest.
//!
//! ```text
//! version 1
//! <kind> <family> key=value ...
//! ```
//!
//! Kinds and their keys:
//!
//! | kind     | meaning                         | keys                                   |
//! |----------|---------------------------------|----------------------------------------|
//! | `dist`   | `d(x, w) = val`                 | `x w val` + optional range             |
//! | `ladder` | as `dist`, used to realize ℓ    | `x w val` + range over `s`             |
//! | `cmp`    | `d(x, w) <rel> d(y, w)`          | `x y w rel` (`lt`/`gt`/`eq`) + range   |
//! | `wpair`  | `(\|W_xy\|, \|W_yx\|) = (wx, wy)`    | `class x y wx wy`                      |
//! | `wrel`   | `\|W_xy\| <rel> \|W_yx\|`         | `x y rel`                              |
//! | `jstar`  | `d(u_0, u_j) = D = diameter`    | `j D`                                  |
//! | `w1`     | half-count table entry          | `jr par s wx wy` (no `r`/`mmin`)       |
//!
//! Order-dependent kinds carry `k`, the residue `r` of `n` modulo `2k` (or `*`),
//! `mmin` (lower bound on `m = (n - r) / 2k`) and optionally `nmin`/`nmax`. A range
//! is written `t=lo..hi` or `s=lo..hi` with affine bounds in `m`; `s=5..`
//! leaves the upper bound open. Vertices are `u@expr` / `v@expr`, reduced
//! modulo `n` when evaluated.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::affine::{Affine, Env, Var};
use crate::error::{Error, Result};
use crate::petersen::{GpVertex, VertexKind};

pub const MANIFEST_VERSION: u32 = 1;

/// Symbolic vertex whose index is an affine form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexExpr {
    pub kind: VertexKind,
    pub index: Affine,
}

impl VertexExpr {
    pub fn eval(&self, env: &Env, n: usize) -> Option<GpVertex> {
        let i = self.index.eval(env)?.rem_euclid(n as i64) as usize;
        Some(GpVertex { kind: self.kind, index: i })
    }

    fn parse(src: &str) -> std::result::Result<Self, String> {
        let (tag, expr) = src.split_once('@').ok_or_else(|| format!("vertex `{src}` needs `@`"))?;
        let kind = match tag {
            "u" => VertexKind::Outer,
            "v" => VertexKind::Inner,
            _ => return Err(format!("vertex kind `{tag}` must be u or v")),
        };
        Ok(VertexExpr { kind, index: Affine::parse(expr)? })
    }
}

impl fmt::Display for VertexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.kind == VertexKind::Outer { 'u' } else { 'v' };
        write!(f, "{tag}@{}", self.index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Less,
    Greater,
    Equal,
}

impl Relation {
    pub fn holds(self, a: u32, b: u32) -> bool {
        match self {
            Relation::Less => a < b,
            Relation::Greater => a > b,
            Relation::Equal => a == b,
        }
    }

    fn token(self) -> &'static str {
        match self {
            Relation::Less => "lt",
            Relation::Greater => "gt",
            Relation::Equal => "eq",
        }
    }
}

/// Which vertex pair a cardinality record describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairClass {
    /// `(u_0, v_0)`, distance 1.
    Spoke,
    /// `(u_0, v_{n-k})`, distance 2.
    Ell2,
}

impl PairClass {
    pub fn distance(self) -> u32 {
        match self {
            PairClass::Spoke => 1,
            PairClass::Ell2 => 2,
        }
    }

    fn token(self) -> &'static str {
        match self {
            PairClass::Spoke => "spoke",
            PairClass::Ell2 => "ell2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VarRange {
    pub var: Var,
    pub lo: Affine,
    pub hi: Option<Affine>,
}

/// When an order-dependent record applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderDomain {
    pub k: usize,
    /// `None` means every residue; `m` is then unbound.
    pub residue: Option<usize>,
    pub m_min: i64,
    pub n_min: usize,
    pub n_max: Option<usize>,
}

impl OrderDomain {
    pub fn modulus(&self) -> usize {
        2 * self.k
    }

    /// Environment binding `m` if the record applies to order `n`.
    pub fn bind(&self, k: usize, n: usize) -> Option<Env> {
        if k != self.k || n < self.n_min || self.n_max.is_some_and(|hi| n > hi) || 2 * k >= n {
            return None;
        }
        match self.residue {
            None => Some(Env::default()),
            Some(r) => {
                let q = self.modulus();
                if n % q != r {
                    return None;
                }
                let m = ((n - r) / q) as i64;
                (m >= self.m_min).then(|| Env::default().with(Var::M, m))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    Distance {
        from: VertexExpr,
        to: VertexExpr,
        value: Affine,
        ladder: bool,
    },
    Comparison {
        left: VertexExpr,
        right: VertexExpr,
        target: VertexExpr,
        rel: Relation,
    },
    Cardinality {
        class: PairClass,
        x: VertexExpr,
        y: VertexExpr,
        wx: Affine,
        wy: Affine,
    },
    /// `|W_xy| rel |W_yx|` without exact counts.
    Imbalance {
        x: VertexExpr,
        y: VertexExpr,
        rel: Relation,
    },
    DiameterAt {
        j: Affine,
        diameter: Affine,
    },
}

/// One transcribed order-dependent formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaRecord {
    pub family: String,
    /// 1-based manifest line, the provenance anchor for findings.
    pub line: usize,
    pub domain: OrderDomain,
    pub range: Option<VarRange>,
    pub claim: Claim,
}

impl FormulaRecord {
    /// All variable assignments the record covers for order `n`.
    pub fn instances(&self, n: usize) -> Vec<Env> {
        let Some(env) = self.domain.bind(self.domain.k, n) else {
            return Vec::new();
        };
        match &self.range {
            None => vec![env],
            Some(range) => {
                let (Some(lo), Some(hi)) = (range.lo.eval(&env), range.hi.and_then(|h| h.eval(&env))) else {
                    return Vec::new();
                };
                (lo..=hi).map(|v| env.with(range.var, v)).collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
    Any,
}

impl Parity {
    fn admits(self, s: i64) -> bool {
        match self {
            Parity::Odd => s % 2 != 0,
            Parity::Even => s % 2 == 0,
            Parity::Any => true,
        }
    }

    fn token(self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
            Parity::Any => "any",
        }
    }
}

/// Half-count entry for `j = k*s + jr`, independent of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfCountRecord {
    pub family: String,
    pub line: usize,
    pub k: usize,
    pub j_residue: usize,
    pub parity: Parity,
    pub s_min: i64,
    pub s_max: Option<i64>,
    pub wx: Affine,
    pub wy: Affine,
}

impl HalfCountRecord {
    pub fn covers(&self, k: usize, j: usize) -> bool {
        if k != self.k || j % k != self.j_residue {
            return false;
        }
        let s = (j / k) as i64;
        s >= self.s_min && self.s_max.is_none_or(|hi| s <= hi) && self.parity.admits(s)
    }
}

/// Parsed manifest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaTable {
    pub version: u32,
    pub records: Vec<FormulaRecord>,
    pub half_counts: Vec<HalfCountRecord>,
}

fn manifest_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Manifest { line, msg: msg.into() }
}

struct Fields<'a> {
    line: usize,
    map: BTreeMap<&'a str, &'a str>,
}

impl<'a> Fields<'a> {
    fn take(&mut self, key: &str) -> Result<&'a str> {
        self.map.remove(key).ok_or_else(|| manifest_err(self.line, format!("missing `{key}`")))
    }

    fn take_opt(&mut self, key: &str) -> Option<&'a str> {
        self.map.remove(key)
    }

    fn affine(&mut self, key: &str) -> Result<Affine> {
        let src = self.take(key)?;
        Affine::parse(src).map_err(|e| manifest_err(self.line, format!("`{key}`: {e}")))
    }

    fn vertex(&mut self, key: &str) -> Result<VertexExpr> {
        let src = self.take(key)?;
        VertexExpr::parse(src).map_err(|e| manifest_err(self.line, format!("`{key}`: {e}")))
    }

    fn int<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        let src = self.take(key)?;
        src.parse().map_err(|_| manifest_err(self.line, format!("`{key}` must be an integer")))
    }

    fn relation(&mut self) -> Result<Relation> {
        match self.take("rel")? {
            "lt" => Ok(Relation::Less),
            "gt" => Ok(Relation::Greater),
            "eq" => Ok(Relation::Equal),
            other => Err(manifest_err(self.line, format!("bad relation `{other}`"))),
        }
    }

    fn range(&mut self) -> Result<Option<VarRange>> {
        let mut found = None;
        for (key, var) in [("t", Var::T), ("s", Var::S)] {
            if let Some(src) = self.take_opt(key) {
                if found.is_some() {
                    return Err(manifest_err(self.line, "at most one range per record"));
                }
                let (lo, hi) =
                    src.split_once("..").ok_or_else(|| manifest_err(self.line, format!("range `{src}` needs `..`")))?;
                let parse = |s: &str| Affine::parse(s).map_err(|e| manifest_err(self.line, e));
                let hi = if hi.is_empty() { None } else { Some(parse(hi)?) };
                found = Some(VarRange { var, lo: parse(lo)?, hi });
            }
        }
        Ok(found)
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().next() {
            Some(extra) => Err(manifest_err(self.line, format!("unknown key `{extra}`"))),
            None => Ok(()),
        }
    }
}

impl FormulaTable {
    pub fn parse(text: &str) -> Result<FormulaTable> {
        let mut version = None;
        let mut records = Vec::new();
        let mut half_counts = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut words = body.split_whitespace();
            let kind = words.next().unwrap_or_default();
            if kind == "version" {
                let v =
                    words.next().and_then(|v| v.parse().ok()).ok_or_else(|| manifest_err(line, "bad version line"))?;
                if v != MANIFEST_VERSION {
                    return Err(manifest_err(line, format!("unsupported manifest version {v}")));
                }
                version = Some(v);
                continue;
            }
            if version.is_none() {
                return Err(manifest_err(line, "record before version line"));
            }
            let family = words.next().ok_or_else(|| manifest_err(line, "missing family id"))?.to_string();
            let mut map = BTreeMap::new();
            for w in words {
                let (k, v) = w.split_once('=').ok_or_else(|| manifest_err(line, format!("`{w}` is not key=value")))?;
                if map.insert(k, v).is_some() {
                    return Err(manifest_err(line, format!("duplicate key `{k}`")));
                }
            }
            let mut f = Fields { line, map };

            if kind == "w1" {
                let k = f.int("k")?;
                let j_residue: usize = f.int("jr")?;
                let parity = match f.take("par")? {
                    "odd" => Parity::Odd,
                    "even" => Parity::Even,
                    "any" => Parity::Any,
                    other => return Err(manifest_err(line, format!("bad parity `{other}`"))),
                };
                let range = f
                    .range()?
                    .filter(|r| r.var == Var::S)
                    .ok_or_else(|| manifest_err(line, "w1 needs an `s=lo..hi` range"))?;
                let s_min = range
                    .lo
                    .eval(&Env::default())
                    .ok_or_else(|| manifest_err(line, "w1 range bounds must be constants"))?;
                let s_max = match range.hi {
                    Some(h) => Some(
                        h.eval(&Env::default())
                            .ok_or_else(|| manifest_err(line, "w1 range bounds must be constants"))?,
                    ),
                    None => None,
                };
                let (wx, wy) = (f.affine("wx")?, f.affine("wy")?);
                f.finish()?;
                if j_residue >= k {
                    return Err(manifest_err(line, "jr must be below k"));
                }
                half_counts.push(HalfCountRecord { family, line, k, j_residue, parity, s_min, s_max, wx, wy });
                continue;
            }

            let k: usize = f.int("k")?;
            let residue = match f.take("r")? {
                "*" => None,
                r => Some(r.parse::<usize>().map_err(|_| manifest_err(line, "bad residue"))?),
            };
            let m_min = match f.take_opt("mmin") {
                Some(v) => v.parse().map_err(|_| manifest_err(line, "bad mmin"))?,
                None => 0,
            };
            let n_min = match f.take_opt("nmin") {
                Some(v) => v.parse().map_err(|_| manifest_err(line, "bad nmin"))?,
                None => 0,
            };
            let n_max = match f.take_opt("nmax") {
                Some(v) => Some(v.parse().map_err(|_| manifest_err(line, "bad nmax"))?),
                None => None,
            };
            if residue.is_some_and(|r| r >= 2 * k) {
                return Err(manifest_err(line, "residue must be below 2k"));
            }
            let domain = OrderDomain { k, residue, m_min, n_min, n_max };
            let range = f.range()?;
            if range.is_some_and(|r| r.hi.is_none()) {
                return Err(manifest_err(line, "open ranges only allowed for w1"));
            }
            let claim = match kind {
                "dist" | "ladder" => Claim::Distance {
                    from: f.vertex("x")?,
                    to: f.vertex("w")?,
                    value: f.affine("val")?,
                    ladder: kind == "ladder",
                },
                "cmp" => Claim::Comparison {
                    left: f.vertex("x")?,
                    right: f.vertex("y")?,
                    target: f.vertex("w")?,
                    rel: f.relation()?,
                },
                "wrel" => Claim::Imbalance { x: f.vertex("x")?, y: f.vertex("y")?, rel: f.relation()? },
                "wpair" => Claim::Cardinality {
                    class: match f.take("class")? {
                        "spoke" => PairClass::Spoke,
                        "ell2" => PairClass::Ell2,
                        other => return Err(manifest_err(line, format!("bad class `{other}`"))),
                    },
                    x: f.vertex("x")?,
                    y: f.vertex("y")?,
                    wx: f.affine("wx")?,
                    wy: f.affine("wy")?,
                },
                "jstar" => Claim::DiameterAt { j: f.affine("j")?, diameter: f.affine("D")? },
                other => return Err(manifest_err(line, format!("unknown record kind `{other}`"))),
            };
            f.finish()?;
            records.push(FormulaRecord { family, line, domain, range, claim });
        }
        let version = version.ok_or_else(|| manifest_err(0, "missing version line"))?;
        Ok(FormulaTable { version, records, half_counts })
    }
}

impl fmt::Display for FormulaRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.claim {
            Claim::Distance { ladder: true, .. } => "ladder",
            Claim::Distance { .. } => "dist",
            Claim::Comparison { .. } => "cmp",
            Claim::Cardinality { .. } => "wpair",
            Claim::Imbalance { .. } => "wrel",
            Claim::DiameterAt { .. } => "jstar",
        };
        write!(f, "{kind} {} k={}", self.family, self.domain.k)?;
        match self.domain.residue {
            Some(r) => write!(f, " r={r}")?,
            None => f.write_str(" r=*")?,
        }
        if self.domain.m_min != 0 {
            write!(f, " mmin={}", self.domain.m_min)?;
        }
        if self.domain.n_min != 0 {
            write!(f, " nmin={}", self.domain.n_min)?;
        }
        if let Some(hi) = self.domain.n_max {
            write!(f, " nmax={hi}")?;
        }
        match &self.claim {
            Claim::Distance { from, to, value, .. } => write!(f, " x={from} w={to} val={value}")?,
            Claim::Comparison { left, right, target, rel } => {
                write!(f, " x={left} y={right} w={target} rel={}", rel.token())?
            }
            Claim::Cardinality { class, x, y, wx, wy } => {
                write!(f, " class={} x={x} y={y} wx={wx} wy={wy}", class.token())?
            }
            Claim::Imbalance { x, y, rel } => write!(f, " x={x} y={y} rel={}", rel.token())?,
            Claim::DiameterAt { j, diameter } => write!(f, " j={j} D={diameter}")?,
        }
        if let Some(r) = &self.range {
            write!(f, " {}={}..", r.var.symbol(), r.lo)?;
            if let Some(hi) = r.hi {
                write!(f, "{hi}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for HalfCountRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w1 {} k={} jr={} par={} wx={} wy={} s={}..",
            self.family,
            self.k,
            self.j_residue,
            self.parity.token(),
            self.wx,
            self.wy,
            self.s_min
        )?;
        if let Some(hi) = self.s_max {
            write!(f, "{hi}")?;
        }
        Ok(())
    }
}

impl fmt::Display for FormulaTable {
    /// Canonical manifest text; line numbers are not preserved.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "version {}", self.version)?;
        for r in &self.records {
            writeln!(f, "{r}")?;
        }
        for r in &self.half_counts {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let text = "version 1\n\
            dist F1 k=3 r=0 mmin=3 x=u@0 w=v@3t t=1..m val=t+1\n\
            cmp F2 k=3 r=0 mmin=3 x=u@0 y=v@6m-3 w=v@3t t=m..2m-2 rel=gt # trailing\n\
            wpair F3 k=3 r=0 mmin=3 class=spoke x=u@0 y=v@0 wx=4m+5 wy=8m-5\n\
            jstar F4 k=3 r=0 mmin=3 j=3(m-1)+2 D=m+3\n\
            dist F5 k=3 r=* nmin=17 x=u@0 w=v@-1 val=2\n\
            wrel F7 k=4 r=* nmin=25 nmax=25 x=u@0 y=v@8 rel=lt\n\
            w1 F6 k=3 jr=0 par=odd s=5.. wx=3s-3 wy=3s-1\n";
        let table = FormulaTable::parse(text).unwrap();
        assert_eq!(table.records.len(), 6);
        assert_eq!(table.records[5].instances(25).len(), 1);
        assert!(table.records[5].instances(26).is_empty());
        assert_eq!(table.half_counts.len(), 1);
        let rec = &table.records[0];
        assert_eq!(rec.instances(18).len(), 3);
        assert!(rec.instances(19).is_empty());
        assert!(rec.instances(12).is_empty());
        assert_eq!(table.records[4].instances(20).len(), 1);
        assert!(table.records[4].instances(16).is_empty());
        assert!(table.half_counts[0].covers(3, 15));
        assert!(!table.half_counts[0].covers(3, 18));
        assert!(!table.half_counts[0].covers(3, 9));

        let again = FormulaTable::parse(&table.to_string()).unwrap();
        let strip = |t: &FormulaTable| t.records.iter().map(|r| r.to_string()).collect::<Vec<_>>();
        assert_eq!(strip(&again), strip(&table));
        assert_eq!(again.half_counts[0].to_string(), table.half_counts[0].to_string());
    }

    #[test]
    fn reports_line_numbers() {
        let err = FormulaTable::parse("version 1\n\ndist F k=3 r=0 x=u@0 w=q@1 val=1\n").unwrap_err();
        assert!(matches!(err, Error::Manifest { line: 3, .. }));
        let err = FormulaTable::parse("dist F k=3 r=0 x=u@0 w=u@1 val=1\n").unwrap_err();
        assert!(matches!(err, Error::Manifest { line: 1, .. }));
        let err = FormulaTable::parse("version 2\n").unwrap_err();
        assert!(matches!(err, Error::Manifest { line: 1, .. }));
        let err = FormulaTable::parse("version 1\ndist F k=3 r=0 x=u@0 w=u@1 val=1 extra=2\n").unwrap_err();
        assert!(matches!(err, Error::Manifest { line: 2, .. }));
        let err = FormulaTable::parse("version 1\ndist F k=3 r=9 x=u@0 w=u@1 val=1\n").unwrap_err();
        assert!(matches!(err, Error::Manifest { line: 2, .. }));
    }
}
