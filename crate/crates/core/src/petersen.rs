//! Generalized Petersen graphs `GP(n, k)` and their rotation-reduced distance
//! profiles.
//!
//! The rotation `u_i -> u_{i+1}, v_i -> v_{i+1}` is an automorphism, so every
//! distance is a function of the two endpoint kinds and the index offset. Two
//! BFS runs (from `u_0` and `v_0`) therefore determine all `(2n)^2` distances.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, WCount};

/// Validated `(n, k)` with `n >= 3` and `1 <= k < n/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct GpParams {
    n: usize,
    k: usize,
}

#[derive(Deserialize)]
struct RawParams {
    n: usize,
    k: usize,
}

impl TryFrom<RawParams> for GpParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        GpParams::new(raw.n, raw.k)
    }
}

impl GpParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParams(format!("GP({n},{k}): n must be at least 3")));
        }
        if k < 1 || 2 * k >= n {
            return Err(Error::InvalidParams(format!("GP({n},{k}): need 1 <= k < n/2")));
        }
        Ok(GpParams { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    /// Reduces any integer index into `Z_n`.
    pub fn wrap(&self, index: i64) -> usize {
        index.rem_euclid(self.n as i64) as usize
    }

    pub fn outer(&self, index: i64) -> GpVertex {
        GpVertex::outer(self.wrap(index))
    }

    pub fn inner(&self, index: i64) -> GpVertex {
        GpVertex::inner(self.wrap(index))
    }

    /// Dense id of a vertex: `u_i -> i`, `v_i -> n + i`.
    pub fn encode(&self, v: GpVertex) -> usize {
        match v.kind {
            VertexKind::Outer => v.index,
            VertexKind::Inner => self.n + v.index,
        }
    }

    pub fn decode(&self, id: usize) -> GpVertex {
        if id < self.n {
            GpVertex::outer(id)
        } else {
            GpVertex::inner(id - self.n)
        }
    }

    fn check(&self, v: GpVertex) -> Result<()> {
        if v.index < self.n {
            Ok(())
        } else {
            Err(Error::OutOfRange { what: "vertex index", value: v.index as i64, lo: 0, hi: self.n as i64 - 1 })
        }
    }

    /// Neighbors of dense id `id` without materializing the graph.
    #[inline]
    fn neighbor_ids(&self, id: usize) -> [usize; 3] {
        let n = self.n;
        if id < n {
            [(id + 1) % n, (id + n - 1) % n, id + n]
        } else {
            let i = id - n;
            [n + (i + self.k) % n, n + (i + n - self.k) % n, i]
        }
    }
}

impl fmt::Display for GpParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GP({},{})", self.n, self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum VertexKind {
    /// Rim vertex `u_i`.
    Outer,
    /// Spoke-end vertex `v_i`.
    Inner,
}

/// A vertex `u_i` or `v_i`; serialized as `u<i>` / `v<i>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GpVertex {
    pub kind: VertexKind,
    pub index: usize,
}

impl GpVertex {
    pub const fn outer(index: usize) -> Self {
        GpVertex { kind: VertexKind::Outer, index }
    }

    pub const fn inner(index: usize) -> Self {
        GpVertex { kind: VertexKind::Inner, index }
    }
}

impl fmt::Display for GpVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            VertexKind::Outer => 'u',
            VertexKind::Inner => 'v',
        };
        write!(f, "{tag}{}", self.index)
    }
}

impl FromStr for GpVertex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParams(format!("`{s}` is not a vertex (expected u<i> or v<i>)"));
        let kind = match s.as_bytes().first() {
            Some(b'u') => VertexKind::Outer,
            Some(b'v') => VertexKind::Inner,
            _ => return Err(bad()),
        };
        let index = s[1..].parse().map_err(|_| bad())?;
        Ok(GpVertex { kind, index })
    }
}

impl From<GpVertex> for String {
    fn from(v: GpVertex) -> String {
        v.to_string()
    }
}

impl TryFrom<String> for GpVertex {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Explicit `GP(n, k)`: rim cycle, inner `k`-step edges and spokes.
pub fn build_gp(p: GpParams) -> Graph {
    let n = p.n;
    let edges = (0..n).flat_map(|i| [(i, (i + 1) % n), (n + i, n + (i + p.k) % n), (i, n + i)]);
    Graph::from_edges(2 * n, edges).expect("GP(n,k) with valid parameters is simple and connected")
}

/// Distances from `u_0` and `v_0` to every `u_d` and `v_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProfile {
    pub params: GpParams,
    /// `d(u_0, u_d)`
    pub duu: Vec<u32>,
    /// `d(u_0, v_d)`
    pub duv: Vec<u32>,
    /// `d(v_0, v_d)`
    pub dvv: Vec<u32>,
    /// `d(v_0, u_d)`
    pub dvu: Vec<u32>,
}

fn implicit_bfs(p: GpParams, source: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; 2 * p.n];
    let mut queue = VecDeque::with_capacity(2 * p.n);
    dist[source] = 0;
    queue.push_back(source);
    while let Some(id) = queue.pop_front() {
        let next = dist[id] + 1;
        for w in p.neighbor_ids(id) {
            if dist[w] == u32::MAX {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

pub fn distance_profile(p: GpParams) -> DistanceProfile {
    let n = p.n;
    let mut from_u = implicit_bfs(p, 0);
    let mut from_v = implicit_bfs(p, n);
    let duv = from_u.split_off(n);
    let dvv = from_v.split_off(n);
    DistanceProfile { params: p, duu: from_u, duv, dvv, dvu: from_v }
}

impl DistanceProfile {
    pub fn n(&self) -> usize {
        self.params.n
    }

    /// Distance between two in-range vertices.
    #[inline]
    pub fn distance(&self, a: GpVertex, b: GpVertex) -> u32 {
        let n = self.params.n;
        let fwd = (b.index + n - a.index) % n;
        match (a.kind, b.kind) {
            (VertexKind::Outer, VertexKind::Outer) => self.duu[fwd],
            (VertexKind::Outer, VertexKind::Inner) => self.duv[fwd],
            (VertexKind::Inner, VertexKind::Inner) => self.dvv[fwd],
            (VertexKind::Inner, VertexKind::Outer) => self.duv[(n - fwd) % n],
        }
    }

    pub fn pair_distance(&self, a: GpVertex, b: GpVertex) -> Result<u32> {
        self.params.check(a)?;
        self.params.check(b)?;
        Ok(self.distance(a, b))
    }

    pub fn diameter(&self) -> u32 {
        [&self.duu, &self.duv, &self.dvv, &self.dvu].into_iter().flat_map(|v| v.iter().copied()).max().unwrap_or(0)
    }

    /// W-set counts for an arbitrary pair, over all `2n` vertices.
    pub fn w_count(&self, x: GpVertex, y: GpVertex) -> WCount {
        let mut count = WCount { closer_to_x: 0, closer_to_y: 0, equidistant: 0 };
        for i in 0..self.params.n {
            for w in [GpVertex::outer(i), GpVertex::inner(i)] {
                count.tally(self.distance(w, x), self.distance(w, y));
            }
        }
        count
    }

    /// Checks the structural identities every profile must satisfy; returns
    /// the first violated one.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let n = self.params.n;
        if self.duu[0] != 0 || self.dvv[0] != 0 || self.duv[0] != 1 || self.dvu[0] != 1 {
            return Err("base entries must be duu[0]=dvv[0]=0, duv[0]=dvu[0]=1".into());
        }
        for (name, v) in [("duu", &self.duu), ("duv", &self.duv), ("dvv", &self.dvv), ("dvu", &self.dvu)] {
            if let Some(d) = (1..n).find(|&d| v[d] != v[n - d]) {
                return Err(format!("{name} not palindromic at offset {d}"));
            }
        }
        if let Some(d) = (0..n).find(|&d| self.dvu[d] != self.duv[(n - d) % n]) {
            return Err(format!("dvu[{d}] != duv[n-{d}]"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(n: usize, k: usize) -> GpParams {
        GpParams::new(n, k).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(GpParams::new(7, 4).is_err());
        assert!(GpParams::new(8, 4).is_err());
        assert!(GpParams::new(2, 1).is_err());
        assert!(GpParams::new(5, 0).is_err());
        assert!(GpParams::new(5, 2).is_ok());
        assert!(serde_json::from_str::<GpParams>(r#"{"n":7,"k":4}"#).is_err());
        assert_eq!(serde_json::from_str::<GpParams>(r#"{"n":7,"k":3}"#).unwrap(), gp(7, 3));
    }

    #[test]
    fn construction_counts() {
        let g = build_gp(gp(5, 2));
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 15));
        assert!((0..10).all(|v| g.degree(v) == 3));
        let g = build_gp(gp(7, 3));
        assert!((0..14).all(|v| g.degree(v) == 3));
        assert_eq!(build_gp(gp(16, 3)).vertex_count(), 32);
        assert_eq!(build_gp(gp(16, 3)).diameter(), 6);
    }

    #[test]
    fn profile_values() {
        let prof = distance_profile(gp(18, 3));
        assert_eq!(prof.duv[3], 2);
        assert_eq!(prof.dvv[3], 1);
        assert_eq!(prof.duv[0], 1);
        assert_eq!(prof.pair_distance(GpVertex::outer(0), GpVertex::outer(1)).unwrap(), 1);
        let prof16 = distance_profile(gp(16, 3));
        assert_eq!(prof16.pair_distance(GpVertex::outer(2), GpVertex::outer(2)).unwrap(), 0);
        let p20 = gp(20, 3);
        let prof20 = distance_profile(p20);
        assert_eq!(prof20.pair_distance(GpVertex::outer(0), p20.inner(-3)).unwrap(), 2);
        assert_eq!(p20.inner(-3), GpVertex::inner(17));
        assert!(matches!(prof20.pair_distance(GpVertex::outer(0), GpVertex::inner(20)), Err(Error::OutOfRange { .. })));
        prof20.check_invariants().unwrap();
    }

    #[test]
    fn vertex_text_form() {
        assert_eq!(GpVertex::inner(17).to_string(), "v17");
        assert_eq!("u3".parse::<GpVertex>().unwrap(), GpVertex::outer(3));
        assert!("w3".parse::<GpVertex>().is_err());
        assert!("u".parse::<GpVertex>().is_err());
        let p = gp(9, 2);
        for id in 0..18 {
            assert_eq!(p.encode(p.decode(id)), id);
        }
    }
}
