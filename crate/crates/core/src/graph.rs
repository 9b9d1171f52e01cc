//! Bitmask-backed simple undirected graphs.
//!
//! Each vertex stores its neighborhood as a `u64`, so graphs are limited to
//! [`MAX_VERTICES`] vertices. The solvers impose the tighter
//! [`crate::solver::MAX_SOLVER_VERTICES`] bound.

use std::fmt;

use thiserror::Error;

/// Largest vertex count any [`Graph`] may have.
pub const MAX_VERTICES: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },
    #[error("adjacency is not symmetric on edge {u}-{v}")]
    Asymmetric { u: usize, v: usize },
    #[error("vertex set must be nonempty")]
    EmptySet,
}

/// A set of vertices, one bit per vertex index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, 1, ..., n-1}`.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub const fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Lowest member, if any.
    pub const fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is symmetric and loop-free by construction; there is no way to
/// mutate a `Graph` in place. Equality compares adjacency only, not names.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<VertexSet>,
    name: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.adj.hash(state);
    }
}

impl Graph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            adj: vec![VertexSet::EMPTY; n],
            name: None,
        })
    }

    /// Builds a graph from vertex pairs. Duplicate edges (in either
    /// orientation) collapse to one.
    ///
    /// ```
    /// use comstruct::Graph;
    /// let c4 = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    /// assert_eq!(c4.edge_count(), 4);
    /// assert!(Graph::from_edge_list(3, &[(1, 1)]).is_err());
    /// ```
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    /// Builds a graph from raw neighbor masks, checking symmetry and loops.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        let full = VertexSet::full(n);
        for (u, &mask) in adj.iter().enumerate() {
            let row = VertexSet::from_bits(mask);
            if row.contains(u) {
                return Err(GraphError::SelfLoop(u));
            }
            if let Some(v) = row.difference(full).first() {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            for v in row {
                if adj[v] >> u & 1 == 0 {
                    return Err(GraphError::Asymmetric { u, v });
                }
            }
        }
        Ok(Graph {
            adj: adj.into_iter().map(VertexSet::from_bits).collect(),
            name: None,
        })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let full = VertexSet::full(n);
        for u in 0..n {
            g.adj[u] = full.difference(VertexSet::singleton(u));
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges)
    }

    /// `K_{1,leaves}` with the center at vertex 0.
    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edge_list(leaves + 1, &edges)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn neighbors(&self, u: usize) -> VertexSet {
        self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            for v in self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.n()).map(|u| self.degree(u)).collect();
        d.sort_unstable();
        d
    }

    /// Number of neighbors of `u` inside `set`.
    pub fn degree_in(&self, u: usize, set: VertexSet) -> usize {
        self.adj[u].intersection(set).len()
    }

    /// Whether `set` induces a connected subgraph. Singletons are connected.
    pub fn is_connected_set(&self, set: VertexSet) -> Result<bool, GraphError> {
        let start = set.first().ok_or(GraphError::EmptySet)?;
        Ok(self.reach(start, set) == set)
    }

    /// Whether the whole graph is connected. The one-vertex graph is.
    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.reach(0, self.vertices()) == self.vertices()
    }

    /// Vertices reachable from `start` using only vertices of `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for u in frontier {
                next = next.union(self.adj[u]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Connected components, each listed once, ordered by lowest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.reach(v, rest);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    pub fn is_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|u| {
            set.difference(VertexSet::singleton(u))
                .is_subset(self.adj[u])
        })
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count() == self.n() - 1 && self.is_connected()
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> VertexSet {
        let n = self.n();
        (0..n).filter(|&u| self.degree(u) == n - 1).collect()
    }

    /// Number of triangles through each vertex.
    pub fn triangle_counts(&self) -> Vec<usize> {
        (0..self.n())
            .map(|u| {
                self.adj[u]
                    .iter()
                    .map(|v| self.adj[u].intersection(self.adj[v]).len())
                    .sum::<usize>()
                    / 2
            })
            .collect()
    }

    /// Graph with `u` relabeled to `perm[u]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(
            perm.len(),
            self.n(),
            "permutation length must match vertex count"
        );
        let mut adj = vec![VertexSet::EMPTY; self.n()];
        for u in 0..self.n() {
            adj[perm[u]] = self.adj[u].iter().map(|v| perm[v]).collect();
        }
        Graph {
            adj,
            name: self.name.clone(),
        }
    }

    /// Copy with the edge `{u, v}` added (or removed when `present` is false).
    pub fn with_edge(&self, u: usize, v: usize, present: bool) -> Result<Graph, GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut g = self.clone();
        if present {
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        } else {
            g.adj[u].remove(v);
            g.adj[v].remove(u);
        }
        Ok(g)
    }

    /// Parses the edge-list text format: one `u v` pair per line, 0-indexed,
    /// `#` starts a comment. A line holding a single integer fixes the vertex
    /// count; otherwise it is one more than the largest index seen.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut declared = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
            let nums = nums.map_err(|e| GraphError::EdgeList {
                line: line_no,
                reason: e.to_string(),
            })?;
            match nums.as_slice() {
                [n] if declared.is_none() && edges.is_empty() => declared = Some(*n),
                [u, v] => edges.push((*u, *v)),
                _ => {
                    return Err(GraphError::EdgeList {
                        line: line_no,
                        reason: format!("expected `u v`, got {:?}", line),
                    })
                }
            }
        }
        let n =
            declared.unwrap_or_else(|| edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        Graph::from_edge_list(n, &edges)
    }

    /// Inverse of [`Graph::parse_edge_list`]; always writes the vertex count.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}
