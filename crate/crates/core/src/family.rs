//! An infinite family of graphs with no 2-community structure.
//!
//! A member consists of two disjoint `k`-cliques `W1`, `W2` (`k >= 3`) with
//! no edges between them, a hub `w` adjacent to all of `W1 ∪ W2`, a
//! triangle `{x, y, w}`, and a pendant `z` hanging off `y`. The vertices `x`
//! and `y` see the same number of vertices in each clique, subject to the
//! bounds checked by [`FamilyParams::violations`].
//!
//! Members are parameterized by `(k, d_x, d_y, o_1, o_2)` where `d_x`, `d_y`
//! are the degrees of `x`, `y` into each clique and `o_i = |W_i ∩ N(x) ∩
//! N(y)|`. Vertices inside a clique are interchangeable, so these five numbers
//! (with `{o_1, o_2}` unordered) determine the graph up to isomorphism.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::community::{check_partition, Mode, Partition, Verdict};
use crate::graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
use crate::iso::are_isomorphic;
use crate::solver::{find_2cs, Outcome, SolveError, SolveOptions, MAX_SOLVER_VERTICES};

/// One requirement of family membership.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Cliques,
    Triangle,
    Hub,
    Pendant,
    XDegree,
    YDegree,
    /// Parameter-only: an overlap size no neighbor placement can realize.
    OverlapRange,
    Coverage,
    Alpha,
    Beta,
    CrossEdges,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Cliques => "W1 and W2 must be cliques of the same size k >= 3",
            Condition::Triangle => "{x, y, w} must be a clique",
            Condition::Hub => "w must be adjacent to every vertex of W1 and W2",
            Condition::Pendant => "z must be a pendant vertex adjacent to y",
            Condition::XDegree => "need 1 <= d_W1(x) = d_W2(x) <= k-1",
            Condition::YDegree => "need 2 <= d_W1(y) = d_W2(y) <= k-1",
            Condition::OverlapRange => "need max(0, d_x + d_y - k) <= o_i <= min(d_x, d_y)",
            Condition::Coverage => "need |W_i ∩ (N(x) ∪ N(y))| > 3k/(k+3) for each i",
            Condition::Alpha => "need some alpha in W1 ∪ W2 with alpha in N(y) \\ N(x)",
            Condition::Beta => "need some beta in W1 ∪ W2 with beta in N(x) ∩ N(y)",
            Condition::CrossEdges => "no edge may join W1 and W2",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {}", join(.0))]
    InvalidParams(Vec<Condition>),
    #[error("malformed role map: {0}")]
    MalformedRoles(String),
    #[error("clique size {k} is too small (need k >= 3)")]
    CliqueTooSmall { k: usize },
    #[error("clique size {k} exceeds the supported maximum of {max}")]
    CliqueTooLarge { k: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

fn join(conds: &[Condition]) -> String {
    conds
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    W1,
    W2,
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    #[serde(rename = "w")]
    W,
    #[serde(rename = "z")]
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    pub k: usize,
    pub d_x: usize,
    pub d_y: usize,
    pub o1: usize,
    pub o2: usize,
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} dx={} dy={} o1={} o2={}",
            self.k, self.d_x, self.d_y, self.o1, self.o2
        )
    }
}

impl FamilyParams {
    pub fn new(k: usize, d_x: usize, d_y: usize, o1: usize, o2: usize) -> Self {
        FamilyParams {
            k,
            d_x,
            d_y,
            o1,
            o2,
        }
    }

    /// Every membership condition these parameters break, in a fixed order.
    pub fn violations(&self) -> Vec<Condition> {
        let FamilyParams {
            k,
            d_x,
            d_y,
            o1,
            o2,
        } = *self;
        let mut out = Vec::new();
        if k < 3 {
            out.push(Condition::Cliques);
        }
        if !(1 <= d_x && d_x < k) {
            out.push(Condition::XDegree);
        }
        if !(2 <= d_y && d_y < k) {
            out.push(Condition::YDegree);
        }
        let lo = (d_x + d_y).saturating_sub(k);
        let hi = d_x.min(d_y);
        if [o1, o2].iter().any(|&o| o < lo || o > hi) {
            out.push(Condition::OverlapRange);
        }
        // (k+3) |W_i ∩ (N(x) ∪ N(y))| > 3k, with the union size d_x + d_y - o_i
        if [o1, o2]
            .iter()
            .any(|&o| (k + 3) * (d_x + d_y).saturating_sub(o) <= 3 * k)
        {
            out.push(Condition::Coverage);
        }
        if d_y <= o1 && d_y <= o2 {
            out.push(Condition::Alpha);
        }
        if o1 + o2 == 0 {
            out.push(Condition::Beta);
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// `(k, d_x, d_y, min(o), max(o))`: equal keys give isomorphic members.
    pub fn iso_key(&self) -> FamilyParams {
        FamilyParams {
            o1: self.o1.min(self.o2),
            o2: self.o1.max(self.o2),
            ..*self
        }
    }

    pub fn order(&self) -> usize {
        2 * self.k + 4
    }
}

/// Vertex layout of a constructed member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub k: usize,
}

impl Layout {
    pub fn w1(&self) -> VertexSet {
        VertexSet::full(self.k)
    }
    pub fn w2(&self) -> VertexSet {
        VertexSet::full(2 * self.k).difference(self.w1())
    }
    pub fn x(&self) -> usize {
        2 * self.k
    }
    pub fn w(&self) -> usize {
        2 * self.k + 1
    }
    pub fn y(&self) -> usize {
        2 * self.k + 2
    }
    pub fn z(&self) -> usize {
        2 * self.k + 3
    }
}

#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub params: FamilyParams,
    pub graph: Graph,
    /// `roles[v]` is vertex `v`'s role.
    pub roles: Vec<Role>,
}

impl FamilyMember {
    pub fn layout(&self) -> Layout {
        Layout { k: self.params.k }
    }

    /// `{vertex: role}` with numeric keys in ascending order.
    pub fn role_map(&self) -> BTreeMap<usize, Role> {
        self.roles.iter().copied().enumerate().collect()
    }
}

/// Constructs the member with parameters `params`.
///
/// Layout: `W1 = 0..k`, `W2 = k..2k`, then `x, w, y, z`. In each clique `x`
/// sees the first `d_x` vertices; `y` sees the first `o_i` of those and the
/// next `d_y - o_i` vertices after `x`'s block.
///
/// ```
/// use comstruct::family::{build_member, FamilyParams};
/// let m = build_member(FamilyParams::new(3, 1, 2, 1, 1)).unwrap();
/// assert_eq!(m.graph.n(), 10);
/// assert_eq!(m.graph.edge_count(), 22);
/// assert!(build_member(FamilyParams::new(3, 1, 1, 1, 1)).is_err());
/// ```
pub fn build_member(params: FamilyParams) -> Result<FamilyMember, FamilyError> {
    let violations = params.violations();
    if !violations.is_empty() {
        return Err(FamilyError::InvalidParams(violations));
    }
    let k = params.k;
    let max_k = (MAX_VERTICES - 4) / 2;
    if k > max_k {
        return Err(FamilyError::CliqueTooLarge { k, max: max_k });
    }
    let lay = Layout { k };
    let mut edges = Vec::new();
    for (base, o) in [(0, params.o1), (k, params.o2)] {
        for i in 0..k {
            for j in i + 1..k {
                edges.push((base + i, base + j));
            }
            edges.push((lay.w(), base + i));
        }
        for i in 0..params.d_x {
            edges.push((lay.x(), base + i));
        }
        let y_block = (0..o).chain(params.d_x..params.d_x + params.d_y - o);
        for i in y_block {
            edges.push((lay.y(), base + i));
        }
    }
    edges.extend([
        (lay.x(), lay.y()),
        (lay.x(), lay.w()),
        (lay.y(), lay.w()),
        (lay.y(), lay.z()),
    ]);
    let graph = Graph::from_edge_list(params.order(), &edges)?.with_name(params.to_string());
    let mut roles = vec![Role::W1; k];
    roles.extend(vec![Role::W2; k]);
    roles.extend([Role::X, Role::W, Role::Y, Role::Z]);
    debug_assert_eq!(validate_member(&graph, &roles), Ok(vec![]));
    Ok(FamilyMember {
        params,
        graph,
        roles,
    })
}

/// Checks each membership condition independently for `g` labeled by
/// `roles`; returns the violated ones (empty iff `g` is a member).
pub fn validate_member(g: &Graph, roles: &[Role]) -> Result<Vec<Condition>, FamilyError> {
    if roles.len() != g.n() {
        return Err(FamilyError::MalformedRoles(format!(
            "{} roles for {} vertices",
            roles.len(),
            g.n()
        )));
    }
    let with_role = |r: Role| -> VertexSet { (0..g.n()).filter(|&v| roles[v] == r).collect() };
    let single = |r: Role| -> Result<usize, FamilyError> {
        let s = with_role(r);
        if s.len() != 1 {
            return Err(FamilyError::MalformedRoles(format!(
                "expected exactly one {r:?}, found {}",
                s.len()
            )));
        }
        Ok(s.first().expect("nonempty"))
    };
    let (x, y, w, z) = (
        single(Role::X)?,
        single(Role::Y)?,
        single(Role::W)?,
        single(Role::Z)?,
    );
    let (w1, w2) = (with_role(Role::W1), with_role(Role::W2));
    let cliques = [w1, w2];

    let mut out = Vec::new();
    if w1.len() != w2.len() || w1.len() < 3 || !g.is_clique(w1) || !g.is_clique(w2) {
        out.push(Condition::Cliques);
    }
    if !(g.has_edge(x, y) && g.has_edge(x, w) && g.has_edge(y, w)) {
        out.push(Condition::Triangle);
    }
    if !w1.union(w2).is_subset(g.neighbors(w)) {
        out.push(Condition::Hub);
    }
    if g.neighbors(z) != VertexSet::singleton(y) {
        out.push(Condition::Pendant);
    }
    let degree_ok = |v: usize, min: usize| {
        let d: Vec<usize> = cliques.iter().map(|&c| g.degree_in(v, c)).collect();
        d[0] == d[1]
            && cliques
                .iter()
                .zip(&d)
                .all(|(c, &di)| min <= di && di < c.len())
    };
    if !degree_ok(x, 1) {
        out.push(Condition::XDegree);
    }
    if !degree_ok(y, 2) {
        out.push(Condition::YDegree);
    }
    let (nx, ny) = (g.neighbors(x), g.neighbors(y));
    let covered = nx.union(ny);
    if cliques
        .iter()
        .any(|c| (c.len() + 3) * c.intersection(covered).len() <= 3 * c.len())
    {
        out.push(Condition::Coverage);
    }
    let pool = w1.union(w2);
    if pool.intersection(ny).difference(nx).is_empty() {
        out.push(Condition::Alpha);
    }
    if pool.intersection(nx).intersection(ny).is_empty() {
        out.push(Condition::Beta);
    }
    if w1.iter().any(|v| !g.neighbors(v).is_disjoint(w2)) {
        out.push(Condition::CrossEdges);
    }
    Ok(out)
}

/// All valid parameter sets for clique size `k`, one per isomorphism class
/// (`o_1 <= o_2`), ordered by `(d_x, d_y, o_1, o_2)`.
pub fn enumerate_params(k: usize) -> Result<Vec<FamilyParams>, FamilyError> {
    if k < 3 {
        return Err(FamilyError::CliqueTooSmall { k });
    }
    let mut out = Vec::new();
    for d_x in 1..k {
        for d_y in 2..k {
            for o1 in 0..=d_x.min(d_y) {
                for o2 in o1..=d_x.min(d_y) {
                    let p = FamilyParams {
                        k,
                        d_x,
                        d_y,
                        o1,
                        o2,
                    };
                    if p.is_valid() {
                        out.push(p);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every member for clique size `k`, deduplicated at the parameter level.
pub fn enumerate_members(k: usize) -> Result<Vec<FamilyMember>, FamilyError> {
    enumerate_params(k)?.into_iter().map(build_member).collect()
}

/// First pair of indices whose graphs are isomorphic, if any.
pub fn find_isomorphic_pair(
    members: &[FamilyMember],
) -> Result<Option<(usize, usize)>, GraphError> {
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if are_isomorphic(&members[i].graph, &members[j].graph)? {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// One of the named splits used in the non-existence argument.
#[derive(Debug, Clone)]
pub struct NamedSplit {
    pub label: &'static str,
    /// The side holding `y` and `z`.
    pub b: VertexSet,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct FamilyReport {
    pub params: FamilyParams,
    pub outcome: Outcome,
    pub partitions_examined: u64,
    pub cases: Vec<NamedSplit>,
}

impl FamilyReport {
    /// True when the exhaustive search found no 2-community structure.
    pub fn holds(&self) -> bool {
        self.outcome == Outcome::NotFound
    }
}

/// Runs the relaxed exhaustive search (singleton sides included) on a
/// member, and evaluates the four named splits.
pub fn verify_family_no_2cs(member: &FamilyMember) -> Result<FamilyReport, FamilyError> {
    let g = &member.graph;
    if g.n() > MAX_SOLVER_VERTICES {
        return Err(FamilyError::Solve(SolveError::TooManyVertices {
            n: g.n(),
            max: MAX_SOLVER_VERTICES,
        }));
    }
    let res = find_2cs(g, &SolveOptions::relaxed())?;
    let lay = member.layout();
    let yz: VertexSet = [lay.y(), lay.z()].into_iter().collect();
    let xyz = yz.union(VertexSet::singleton(lay.x()));
    let named = [
        ("B = {x,y,z}", xyz),
        ("B = {y,z}", yz),
        ("B = {y,z} + W2", yz.union(lay.w2())),
        ("B = {x,y,z} + W2", xyz.union(lay.w2())),
    ];
    let mut cases = Vec::with_capacity(named.len());
    for (label, b) in named {
        let p = Partition::new(g.n(), vec![g.vertices().difference(b), b])
            .expect("named split is proper");
        let verdict = check_partition(g, &p, Mode::Strict, false).expect("partition fits graph");
        cases.push(NamedSplit { label, b, verdict });
    }
    Ok(FamilyReport {
        params: member.params,
        outcome: res.outcome,
        partitions_examined: res.partitions_examined,
        cases,
    })
}
