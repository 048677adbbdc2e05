//! Graph representation, random bipartite regular generation via matching
//! union, and the vertex-blowup transform.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(u32, usize),
    #[error("edge ({0}, {1}) does not cross the declared bipartition")]
    EdgeInsideSide(u32, u32),
    #[error("malformed graph file: {0}")]
    Malformed(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Deterministic seed for graph generation. Identical seed and parameters
/// produce identical graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RngSeed(pub u64);

/// A simple undirected graph with an optional bipartition.
///
/// Vertices are `0..n`. Edges are stored as ordered pairs `(u, v)` with
/// `u < v`; multi-edges are collapsed on construction. When a bipartition is
/// present every edge crosses it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(u32, u32)>,
    /// side[v] ∈ {0, 1} when bipartite.
    side: Option<Vec<u8>>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self, GraphError> {
        Self::build(n, edges, None)
    }

    /// Bipartite constructor: `side[v]` assigns each vertex to side 0 or 1.
    pub fn new_bipartite(
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
        side: Vec<u8>,
    ) -> Result<Self, GraphError> {
        assert_eq!(side.len(), n, "side assignment length must equal n");
        Self::build(n, edges, Some(side))
    }

    fn build(
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
        side: Option<Vec<u8>>,
    ) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for v in [a, b] {
                if v as usize >= n {
                    return Err(GraphError::VertexOutOfRange(v, n));
                }
            }
            if let Some(s) = &side {
                if s[a as usize] == s[b as usize] {
                    return Err(GraphError::EdgeInsideSide(a, b));
                }
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { n, edges: set, side })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_bipartite(&self) -> bool {
        self.side.is_some()
    }

    /// Side assignment (0/1 per vertex) when bipartite.
    pub fn sides(&self) -> Option<&[u8]> {
        self.side.as_deref()
    }

    /// Vertices on the given side (0 or 1) of the bipartition.
    pub fn side_vertices(&self, which: u8) -> Vec<u32> {
        match &self.side {
            Some(s) => (0..self.n as u32).filter(|&v| s[v as usize] == which).collect(),
            None => Vec::new(),
        }
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n as u32).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        adj
    }

    /// Neighbor bitmasks; only valid for graphs with at most 64 vertices.
    pub fn neighbor_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64);
        let mut masks = vec![0u64; self.n];
        for &(a, b) in &self.edges {
            masks[a as usize] |= 1 << b;
            masks[b as usize] |= 1 << a;
        }
        masks
    }

    pub fn is_independent(&self, occupied: &[bool]) -> bool {
        self.edges
            .iter()
            .all(|&(a, b)| !(occupied[a as usize] && occupied[b as usize]))
    }

    /// Canonical form for small-graph isomorphism tests: lexicographically
    /// smallest edge set over all vertex relabelings. Exponential; callers
    /// keep `n` at 9 or below.
    pub fn canonical_edges(&self) -> Vec<(u32, u32)> {
        assert!(self.n <= 9, "canonical form is for small graphs only");
        let mut perm: Vec<u32> = (0..self.n as u32).collect();
        let mut best: Option<Vec<(u32, u32)>> = None;
        permute(&mut perm, 0, &mut |p| {
            let mut relabeled: Vec<(u32, u32)> = self
                .edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (p[a as usize], p[b as usize]);
                    (x.min(y), x.max(y))
                })
                .collect();
            relabeled.sort_unstable();
            if best.as_ref().map_or(true, |b| relabeled < *b) {
                best = Some(relabeled);
            }
        });
        best.unwrap_or_default()
    }
}

fn permute(perm: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

/// Union of `delta` independent uniformly random perfect matchings between two
/// sides of size `n`. Side 0 is `0..n`, side 1 is `n..2n`. Multi-edges are
/// collapsed silently.
pub fn generate_bipartite_regular(n: usize, delta: usize, seed: RngSeed) -> Graph {
    assert!(n >= 1 && delta >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    let mut edges = Vec::new();
    for _ in 0..delta {
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.shuffle(&mut rng);
        for i in 0..n {
            edges.push((i as u32, n as u32 + perm[i]));
        }
    }
    let mut side = vec![0u8; 2 * n];
    for s in side.iter_mut().skip(n) {
        *s = 1;
    }
    Graph::new_bipartite(2 * n, edges, side).expect("matching union is always valid")
}

/// Replace every vertex by `k` copies and every edge by the complete bipartite
/// graph between the copies. Copy `j` of vertex `v` is numbered `v*k + j`.
pub fn blowup(g: &Graph, k: usize) -> Graph {
    assert!(k >= 2);
    let n = g.n_vertices() * k;
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        for i in 0..k as u32 {
            for j in 0..k as u32 {
                edges.push((u * k as u32 + i, v * k as u32 + j));
            }
        }
    }
    let side = g.sides().map(|s| {
        let mut out = vec![0u8; n];
        for v in 0..g.n_vertices() {
            for j in 0..k {
                out[v * k + j] = s[v];
            }
        }
        out
    });
    match side {
        Some(s) => Graph::new_bipartite(n, edges, s),
        None => Graph::new(n, edges),
    }
    .expect("blowup of a valid graph is valid")
}

/// Serialize to the edge-list text format: header `n <count> [bipartite <n1>]`
/// then one `u v` line per edge. When bipartite, vertices are renumbered so
/// side-0 vertices come first.
pub fn save_graph(g: &Graph, path: &Path) -> Result<(), GraphError> {
    std::fs::write(path, graph_to_string(g))?;
    Ok(())
}

pub fn graph_to_string(g: &Graph) -> String {
    let mut out = String::new();
    match g.sides() {
        Some(sides) => {
            // relabel: side-0 vertices first, preserving order within a side
            let mut relabel = vec![0u32; g.n_vertices()];
            let mut next = 0u32;
            for v in 0..g.n_vertices() {
                if sides[v] == 0 {
                    relabel[v] = next;
                    next += 1;
                }
            }
            let n1 = next;
            for v in 0..g.n_vertices() {
                if sides[v] == 1 {
                    relabel[v] = next;
                    next += 1;
                }
            }
            let _ = writeln!(out, "n {} bipartite {}", g.n_vertices(), n1);
            let mut edges: Vec<(u32, u32)> = g
                .edges()
                .map(|(a, b)| {
                    let (x, y) = (relabel[a as usize], relabel[b as usize]);
                    (x.min(y), x.max(y))
                })
                .collect();
            edges.sort_unstable();
            for (a, b) in edges {
                let _ = writeln!(out, "{} {}", a, b);
            }
        }
        None => {
            let _ = writeln!(out, "n {}", g.n_vertices());
            for (a, b) in g.edges() {
                let _ = writeln!(out, "{} {}", a, b);
            }
        }
    }
    out
}

pub fn load_graph(path: &Path) -> Result<Graph, GraphError> {
    graph_from_str(&std::fs::read_to_string(path)?)
}

pub fn graph_from_str(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| GraphError::Malformed("empty file".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let (n, n1) = match tokens.as_slice() {
        ["n", n] => (parse_count(n)?, None),
        ["n", n, "bipartite", n1] => (parse_count(n)?, Some(parse_count(n1)?)),
        _ => return Err(GraphError::Malformed(format!("bad header: {header:?}"))),
    };
    if let Some(n1) = n1 {
        if n1 > n {
            return Err(GraphError::Malformed(format!(
                "side size {n1} exceeds vertex count {n}"
            )));
        }
    }
    let mut edges = Vec::new();
    for line in lines {
        let mut it = line.split_whitespace();
        let (a, b) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (parse_count(a)? as u32, parse_count(b)? as u32),
            _ => return Err(GraphError::Malformed(format!("bad edge line: {line:?}"))),
        };
        edges.push((a, b));
    }
    match n1 {
        Some(n1) => {
            let side: Vec<u8> = (0..n).map(|v| u8::from(v >= n1)).collect();
            Graph::new_bipartite(n, edges, side)
        }
        None => Graph::new(n, edges),
    }
}

fn parse_count(s: &str) -> Result<usize, GraphError> {
    s.parse()
        .map_err(|_| GraphError::Malformed(format!("bad integer: {s:?}")))
}
