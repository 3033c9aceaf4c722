//! Undirected graph kernel: compressed adjacency, BFS distances, W-set counts
//! and the distance-balance predicates built on them.
//!
//! Vertex ids are dense `usize` values in `0..vertex_count`. A [`Graph`] is
//! validated once when it is built (symmetric, simple, connected), and every
//! distance operation relies on that.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cardinalities of `W_xy`, `W_yx` and the set of vertices equidistant from
/// `x` and `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WCount {
    pub closer_to_x: usize,
    pub closer_to_y: usize,
    pub equidistant: usize,
}

impl WCount {
    /// Tallies two distance vectors indexed by the same vertex set.
    pub fn from_distances(from_x: &[u32], from_y: &[u32]) -> Self {
        debug_assert_eq!(from_x.len(), from_y.len());
        let mut count = WCount { closer_to_x: 0, closer_to_y: 0, equidistant: 0 };
        for (&a, &b) in from_x.iter().zip(from_y) {
            count.tally(a, b);
        }
        count
    }

    #[inline]
    pub(crate) fn tally(&mut self, dist_to_x: u32, dist_to_y: u32) {
        match dist_to_x.cmp(&dist_to_y) {
            std::cmp::Ordering::Less => self.closer_to_x += 1,
            std::cmp::Ordering::Greater => self.closer_to_y += 1,
            std::cmp::Ordering::Equal => self.equidistant += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.closer_to_x + self.closer_to_y + self.equidistant
    }

    pub fn is_balanced(&self) -> bool {
        self.closer_to_x == self.closer_to_y
    }

    /// Same count seen from the swapped pair `(y, x)`.
    pub fn swapped(self) -> Self {
        WCount { closer_to_x: self.closer_to_y, closer_to_y: self.closer_to_x, equidistant: self.equidistant }
    }

    pub fn imbalance(&self) -> usize {
        self.closer_to_x.abs_diff(self.closer_to_y)
    }
}

/// Outcome of an ℓ-distance-balance check on a generic graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Balanced,
    /// Lexicographically smallest pair `x < y` at distance ℓ that is not balanced.
    Witness {
        x: usize,
        y: usize,
        count: WCount,
    },
}

impl Verdict {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Verdict::Balanced)
    }
}

/// Simple connected undirected graph in compressed sparse row form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl Graph {
    /// Builds a graph from an undirected edge list. Every edge must appear once
    /// (in either orientation); self-loops and repeated edges are rejected.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::MalformedGraph(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::MalformedGraph(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Self::from_adjacency(adjacency)
    }

    /// Builds a graph from per-vertex neighbor lists. Lists may be unsorted but
    /// must be symmetric and free of duplicates and self-loops.
    pub fn from_adjacency(mut adjacency: Vec<Vec<usize>>) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 {
            return Err(Error::MalformedGraph("graph has no vertices".into()));
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::MalformedGraph(format!("duplicate edge {{{u}, {}}}", w[0])));
            }
            if list.binary_search(&u).is_ok() {
                return Err(Error::MalformedGraph(format!("self-loop at vertex {u}")));
            }
            if let Some(&v) = list.iter().find(|&&v| v >= n) {
                return Err(Error::MalformedGraph(format!("neighbor {v} of {u} out of range")));
            }
        }
        for (u, list) in adjacency.iter().enumerate() {
            for &v in list {
                if adjacency[v].binary_search(&u).is_err() {
                    return Err(Error::MalformedGraph(format!(
                        "adjacency not symmetric: {u} -> {v} without {v} -> {u}"
                    )));
                }
            }
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::new();
        offsets.push(0);
        for list in &adjacency {
            neighbors.extend_from_slice(list);
            offsets.push(neighbors.len());
        }
        let graph = Graph { offsets, neighbors };

        let reach = graph.bfs_unchecked(0);
        if let Some(v) = reach.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Disconnected(v));
        }
        Ok(graph)
    }

    /// Parses whitespace-separated `u v` pairs, one edge per line, 0-based.
    /// Blank lines and lines starting with `#` are skipped. The vertex count is
    /// one more than the largest id seen.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut max_id = None::<usize>;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let mut next = || -> Result<usize> {
                let field = fields
                    .next()
                    .ok_or_else(|| Error::EdgeList { line: idx + 1, msg: "expected two vertex ids".into() })?;
                field
                    .parse()
                    .map_err(|_| Error::EdgeList { line: idx + 1, msg: format!("`{field}` is not a vertex id") })
            };
            let (u, v) = (next()?, next()?);
            if fields.next().is_some() {
                return Err(Error::EdgeList { line: idx + 1, msg: "trailing fields".into() });
            }
            max_id = Some(max_id.unwrap_or(0).max(u).max(v));
            edges.push((u, v));
        }
        let count = max_id.map_or(0, |m| m + 1);
        Self::from_edges(count, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.neighbors(u).iter().map(move |&v| (u, v)))
            .filter(|&(u, v)| u < v)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::OutOfRange { what: "vertex", value: v as i64, lo: 0, hi: self.vertex_count() as i64 - 1 })
        }
    }

    fn bfs_unchecked(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        let mut queue = VecDeque::with_capacity(self.vertex_count());
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u] + 1;
            for &w in self.neighbors(u) {
                if dist[w] == u32::MAX {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path edge counts from `source` to every vertex.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<u32>> {
        self.check_vertex(source)?;
        let dist = self.bfs_unchecked(source);
        match dist.iter().position(|&d| d == u32::MAX) {
            Some(v) => Err(Error::Disconnected(v)),
            None => Ok(dist),
        }
    }

    /// Full distance matrix, one BFS per vertex.
    pub fn all_pairs(&self) -> AllPairs {
        let n = self.vertex_count();
        let mut dist = Vec::with_capacity(n * n);
        for s in 0..n {
            dist.extend(self.bfs_unchecked(s));
        }
        AllPairs { n, dist }
    }

    pub fn w_count(&self, x: usize, y: usize) -> Result<WCount> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::InvalidPair(x, y));
        }
        let dx = self.bfs_distances(x)?;
        let dy = self.bfs_distances(y)?;
        Ok(WCount::from_distances(&dx, &dy))
    }

    pub fn is_balanced_pair(&self, x: usize, y: usize) -> Result<bool> {
        Ok(self.w_count(x, y)?.is_balanced())
    }

    pub fn diameter(&self) -> u32 {
        self.all_pairs().diameter()
    }

    /// ℓ-distance-balance check over all pairs; `ell` must lie in `[1, diam]`.
    pub fn is_l_distance_balanced(&self, ell: u32) -> Result<Verdict> {
        self.all_pairs().verdict(ell)
    }

    /// Sum over edges `uv` of `| |W_uv| - |W_vu| |`.
    pub fn mostar_index(&self) -> u64 {
        self.all_pairs().mostar_index(self)
    }
}

/// Dense all-pairs distance table (row-major).
#[derive(Debug, Clone)]
pub struct AllPairs {
    n: usize,
    dist: Vec<u32>,
}

impl AllPairs {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.dist[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[u32] {
        &self.dist[x * self.n..(x + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    pub fn w_count(&self, x: usize, y: usize) -> WCount {
        WCount::from_distances(self.row(x), self.row(y))
    }

    pub fn verdict(&self, ell: u32) -> Result<Verdict> {
        let diam = self.diameter();
        if ell < 1 || ell > diam {
            return Err(Error::OutOfRange { what: "ell", value: ell as i64, lo: 1, hi: diam as i64 });
        }
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.get(x, y) != ell {
                    continue;
                }
                let count = self.w_count(x, y);
                if !count.is_balanced() {
                    return Ok(Verdict::Witness { x, y, count });
                }
            }
        }
        Ok(Verdict::Balanced)
    }

    pub fn mostar_index(&self, graph: &Graph) -> u64 {
        graph.edges().map(|(u, v)| self.w_count(u, v).imbalance() as u64).sum()
    }
}
