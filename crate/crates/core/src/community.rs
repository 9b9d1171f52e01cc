//! Satisfaction predicates for community structures.
//!
//! A vertex `u` in part `C_i` is satisfied against another part `C_j` when
//!
//! ```text
//! |C_j| * d_{C_i}(u)  >=  (|C_i| - 1) * d_{C_j}(u)
//! ```
//!
//! which is the cross-multiplied form of "the fraction of `C_i` (excluding
//! `u`) that `u` sees is at least the fraction of `C_j` it sees". Everything
//! here is evaluated in exact integer arithmetic. [`Mode::Strict`]
//! additionally forbids singleton parts, for which the fraction form is
//! undefined; [`Mode::Relaxed`] admits them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every part has at least two vertices.
    Strict,
    /// Singleton parts are allowed.
    Relaxed,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Relaxed => "relaxed",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(Mode::Strict),
            "relaxed" => Ok(Mode::Relaxed),
            other => Err(format!(
                "unknown mode {other:?}, expected strict or relaxed"
            )),
        }
    }
}

/// A partition supplied to a checker was not a partition of the graph.
/// This is distinct from a well-formed partition that fails the inequality.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("a partition needs at least 2 parts, got {0}")]
    TooFewParts(usize),
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("vertex {0} appears in more than one part")]
    Overlap(usize),
    #[error("vertex {0} is not covered by any part")]
    Missing(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("partition covers {partition} vertices but the graph has {graph}")]
    SizeMismatch { partition: usize, graph: usize },
    #[error("cannot parse partition: {0}")]
    Parse(String),
}

/// An ordered list of pairwise disjoint, nonempty parts covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    parts: Vec<VertexSet>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Self, PartitionError> {
        if parts.len() < 2 {
            return Err(PartitionError::TooFewParts(parts.len()));
        }
        let full = VertexSet::full(n);
        let mut seen = VertexSet::EMPTY;
        for (i, &part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(PartitionError::EmptyPart(i));
            }
            if let Some(v) = part.difference(full).first() {
                return Err(PartitionError::VertexOutOfRange { vertex: v, n });
            }
            if let Some(v) = part.intersection(seen).first() {
                return Err(PartitionError::Overlap(v));
            }
            seen = seen.union(part);
        }
        if let Some(v) = full.difference(seen).first() {
            return Err(PartitionError::Missing(v));
        }
        Ok(Partition { n, parts })
    }

    /// Parses `"0,1,2|3,4"`: parts separated by `|`, vertices by `,`.
    pub fn parse(text: &str, n: usize) -> Result<Self, PartitionError> {
        let mut parts = Vec::new();
        for chunk in text.trim().split('|') {
            let mut part = VertexSet::EMPTY;
            for tok in chunk.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let v: usize = tok
                    .parse()
                    .map_err(|_| PartitionError::Parse(format!("bad vertex {tok:?}")))?;
                if v >= n {
                    return Err(PartitionError::VertexOutOfRange { vertex: v, n });
                }
                if part.contains(v) {
                    return Err(PartitionError::Overlap(v));
                }
                part.insert(v);
            }
            parts.push(part);
        }
        Partition::new(n, parts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    /// Index of the part holding `u`.
    pub fn part_of(&self, u: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(u))
    }

    /// Same parts in a different order; `order[i]` is the old index of new part `i`.
    pub fn reordered(&self, order: &[usize]) -> Partition {
        Partition {
            n: self.n,
            parts: order.iter().map(|&i| self.parts[i]).collect(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, v) in part.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// A split of `0..n` into a part `a` and its complement, both nonempty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    n: usize,
    a: VertexSet,
}

impl Bipartition {
    pub fn new(n: usize, a: VertexSet) -> Result<Self, PartitionError> {
        let full = VertexSet::full(n);
        if let Some(v) = a.difference(full).first() {
            return Err(PartitionError::VertexOutOfRange { vertex: v, n });
        }
        if a.is_empty() {
            return Err(PartitionError::EmptyPart(0));
        }
        if a == full {
            return Err(PartitionError::EmptyPart(1));
        }
        Ok(Bipartition { n, a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> VertexSet {
        self.a
    }

    pub fn b(&self) -> VertexSet {
        VertexSet::full(self.n).difference(self.a)
    }

    /// The same split with vertex 0 on the `a` side.
    pub fn canonical(self) -> Bipartition {
        if self.a.contains(0) {
            self
        } else {
            Bipartition {
                n: self.n,
                a: self.b(),
            }
        }
    }

    pub fn to_partition(self) -> Partition {
        Partition {
            n: self.n,
            parts: vec![self.a, self.b()],
        }
    }
}

impl TryFrom<&Partition> for Bipartition {
    type Error = PartitionError;

    fn try_from(p: &Partition) -> Result<Self, PartitionError> {
        match p.parts() {
            [a, _] => Bipartition::new(p.n(), *a),
            other => Err(PartitionError::Parse(format!(
                "expected 2 parts, got {}",
                other.len()
            ))),
        }
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_partition().fmt(f)
    }
}

/// An unsatisfied vertex and the two sides of its violated inequality:
/// `lhs = |C_other| * d_home(u)` and `rhs = (|C_home| - 1) * d_other(u)`,
/// with `lhs < rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vertex: usize,
    pub home: usize,
    pub other: usize,
    pub lhs: u64,
    pub rhs: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Failure {
    /// Strict mode and this part has a single vertex.
    SingletonPart {
        part: usize,
    },
    /// Connectivity was required and this part does not induce a connected subgraph.
    DisconnectedPart {
        part: usize,
    },
    Unsatisfied(Witness),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Failure),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Invalid(Failure::Unsatisfied(w)) => Some(w),
            _ => None,
        }
    }
}

fn ensure_fits(g: &Graph, p: &Partition) -> Result<(), PartitionError> {
    if p.n() != g.n() {
        return Err(PartitionError::SizeMismatch {
            partition: p.n(),
            graph: g.n(),
        });
    }
    Ok(())
}

/// Both sides of the inequality for `u` with home part `home` against `other`.
#[inline]
pub fn inequality_sides(g: &Graph, u: usize, home: VertexSet, other: VertexSet) -> (u64, u64) {
    let lhs = other.len() as u64 * g.degree_in(u, home) as u64;
    let rhs = (home.len() as u64 - 1) * g.degree_in(u, other) as u64;
    (lhs, rhs)
}

/// First violated inequality for `u`, against the lowest-index other part.
fn violation(g: &Graph, p: &Partition, u: usize, home: usize) -> Option<Witness> {
    let home_set = p.parts[home];
    p.parts
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != home)
        .find_map(|(j, &other)| {
            let (lhs, rhs) = inequality_sides(g, u, home_set, other);
            (lhs < rhs).then_some(Witness {
                vertex: u,
                home,
                other: j,
                lhs,
                rhs,
            })
        })
}

/// Whether `u` satisfies its inequality against every other part. In strict
/// mode a vertex alone in its part is never satisfied.
pub fn vertex_satisfied(
    g: &Graph,
    p: &Partition,
    u: usize,
    mode: Mode,
) -> Result<bool, PartitionError> {
    ensure_fits(g, p)?;
    let home = p.part_of(u).ok_or(PartitionError::VertexOutOfRange {
        vertex: u,
        n: p.n(),
    })?;
    if mode == Mode::Strict && p.parts[home].len() < 2 {
        return Ok(false);
    }
    Ok(violation(g, p, u, home).is_none())
}

/// Full verdict for a partition. Failures are reported in a fixed order:
/// singleton parts (strict mode), then disconnected parts when
/// `require_connected`, then the lowest-index unsatisfied vertex.
///
/// ```
/// use comstruct::{check_partition, Graph, Mode, Partition};
/// let c4 = Graph::cycle(4).unwrap();
/// let p = Partition::parse("0,1|2,3", 4).unwrap();
/// assert!(check_partition(&c4, &p, Mode::Strict, true).unwrap().is_valid());
/// ```
pub fn check_partition(
    g: &Graph,
    p: &Partition,
    mode: Mode,
    require_connected: bool,
) -> Result<Verdict, PartitionError> {
    ensure_fits(g, p)?;
    if mode == Mode::Strict {
        if let Some(part) = p.parts.iter().position(|s| s.len() < 2) {
            return Ok(Verdict::Invalid(Failure::SingletonPart { part }));
        }
    }
    if require_connected {
        for (part, &s) in p.parts.iter().enumerate() {
            if !g.is_connected_set(s).expect("parts are nonempty") {
                return Ok(Verdict::Invalid(Failure::DisconnectedPart { part }));
            }
        }
    }
    for u in 0..g.n() {
        let home = p.part_of(u).expect("partition covers every vertex");
        if let Some(w) = violation(g, p, u, home) {
            return Ok(Verdict::Invalid(Failure::Unsatisfied(w)));
        }
    }
    Ok(Verdict::Valid)
}

/// All vertices failing their inequality (strict mode also counts vertices
/// of singleton parts).
pub fn unsatisfied_set(g: &Graph, p: &Partition, mode: Mode) -> Result<VertexSet, PartitionError> {
    ensure_fits(g, p)?;
    let mut out = VertexSet::EMPTY;
    for u in 0..g.n() {
        if !vertex_satisfied(g, p, u, mode)? {
            out.insert(u);
        }
    }
    Ok(out)
}

/// Number of vertices of a bipartition `a | rest` that fail their inequality.
pub fn unsatisfied_count(g: &Graph, a: VertexSet, mode: Mode) -> usize {
    let b = g.vertices().difference(a);
    let strict_single = |s: VertexSet| mode == Mode::Strict && s.len() < 2;
    let mut count = 0;
    for (home, other) in [(a, b), (b, a)] {
        if strict_single(home) {
            count += home.len();
            continue;
        }
        count += home
            .iter()
            .filter(|&u| {
                let (lhs, rhs) = inequality_sides(g, u, home, other);
                lhs < rhs
            })
            .count();
    }
    count
}

/// Hot-path check of the split `a | V \ a`, assuming both sides are nonempty.
#[inline]
pub fn bipartition_satisfied(g: &Graph, a: VertexSet, mode: Mode) -> bool {
    let b = g.vertices().difference(a);
    let (size_a, size_b) = (a.len() as u64, b.len() as u64);
    if mode == Mode::Strict && (size_a < 2 || size_b < 2) {
        return false;
    }
    let side_ok = |home: VertexSet, other: VertexSet, home_len: u64, other_len: u64| {
        home.iter().all(|u| {
            let adj = g.neighbors(u);
            other_len * adj.intersection(home).len() as u64
                >= (home_len - 1) * adj.intersection(other).len() as u64
        })
    };
    side_ok(a, b, size_a, size_b) && side_ok(b, a, size_b, size_a)
}
