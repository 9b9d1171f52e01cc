//! Searching for 2-community structures.
//!
//! The exhaustive search pins vertex 0 to side `A` and walks the remaining
//! `2^(n-1) - 1` proper splits in ascending order of `A`'s bitmask, so the
//! first hit and the enumeration order are both deterministic.

use serde::Serialize;
use thiserror::Error;

use crate::community::{
    bipartition_satisfied, check_partition, unsatisfied_count, Bipartition, Mode, PartitionError,
};
use crate::graph::{Graph, VertexSet};

/// Largest order the solvers accept.
pub const MAX_SOLVER_VERTICES: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{n} vertices exceeds the solver limit of {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("a 2-community structure needs at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },
    #[error("balanced split requested on an odd number of vertices ({0})")]
    OddBalanced(usize),
    #[error("input is not a tree")]
    NotATree,
    #[error("seed split leaves one side empty")]
    DegenerateSeed,
    #[error("balanced constraint is not supported by single-vertex moves")]
    BalancedHeuristic,
    #[error("search budget of {0} partitions exhausted")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// Which variant of 2-community structure to look for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SolveOptions {
    pub mode: Mode,
    pub require_connected: bool,
    /// `|A| = |B|`; requires an even number of vertices.
    pub require_balanced: bool,
    pub enumerate_all: bool,
    /// Maximum number of candidate partitions to examine.
    pub budget: Option<u64>,
}

impl SolveOptions {
    pub fn new(mode: Mode) -> Self {
        SolveOptions {
            mode,
            require_connected: false,
            require_balanced: false,
            enumerate_all: false,
            budget: None,
        }
    }

    pub fn strict() -> Self {
        Self::new(Mode::Strict)
    }

    pub fn relaxed() -> Self {
        Self::new(Mode::Relaxed)
    }

    pub fn connected(mut self) -> Self {
        self.require_connected = true;
        self
    }

    pub fn balanced(mut self) -> Self {
        self.require_balanced = true;
        self
    }

    pub fn all(mut self) -> Self {
        self.enumerate_all = true;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self::strict()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(Bipartition),
    /// The whole search space was examined without a hit.
    NotFound,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub partitions_examined: u64,
    /// Every solution, in search order, when enumeration was requested.
    pub all_solutions: Option<Vec<Bipartition>>,
}

impl SolveResult {
    pub fn found(&self) -> Option<&Bipartition> {
        match &self.outcome {
            Outcome::Found(bp) => Some(bp),
            _ => None,
        }
    }
}

fn check_size(g: &Graph) -> Result<(), SolveError> {
    let n = g.n();
    if n > MAX_SOLVER_VERTICES {
        return Err(SolveError::TooManyVertices {
            n,
            max: MAX_SOLVER_VERTICES,
        });
    }
    if n < 2 {
        return Err(SolveError::TooFewVertices { n, min: 2 });
    }
    Ok(())
}

/// Whether the split `a | V \ a` meets every requirement in `opts`.
pub fn split_is_valid(g: &Graph, a: VertexSet, opts: &SolveOptions) -> bool {
    let b = g.vertices().difference(a);
    if opts.require_balanced && a.len() != b.len() {
        return false;
    }
    if !bipartition_satisfied(g, a, opts.mode) {
        return false;
    }
    !opts.require_connected
        || (g.reach(a.first().unwrap_or(0), a) == a && g.reach(b.first().unwrap_or(0), b) == b)
}

/// Exhaustive search for a 2-community structure.
///
/// ```
/// use comstruct::{find_2cs, Graph, Outcome, SolveOptions};
/// let c5 = Graph::cycle(5).unwrap();
/// let res = find_2cs(&c5, &SolveOptions::strict()).unwrap();
/// assert_eq!(res.found().unwrap().to_string(), "0,1|2,3,4");
///
/// let star = Graph::star(3).unwrap();
/// assert_eq!(find_2cs(&star, &SolveOptions::strict()).unwrap().outcome, Outcome::NotFound);
/// ```
pub fn find_2cs(g: &Graph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    check_size(g)?;
    let n = g.n();
    if opts.require_balanced && n % 2 == 1 {
        return Err(SolveError::OddBalanced(n));
    }
    let half = n as u32 / 2;
    let candidates: u64 = (1u64 << (n - 1)) - 1;
    let mut examined = 0u64;
    let mut solutions = opts.enumerate_all.then(Vec::new);
    let mut first = None;
    for s in 0..candidates {
        if opts.budget.is_some_and(|b| examined >= b) {
            return Ok(SolveResult {
                outcome: Outcome::BudgetExceeded,
                partitions_examined: examined,
                all_solutions: solutions,
            });
        }
        examined += 1;
        let bits = s << 1 | 1;
        if opts.require_balanced && bits.count_ones() != half {
            continue;
        }
        let a = VertexSet::from_bits(bits);
        if !split_is_valid(g, a, opts) {
            continue;
        }
        let bp = Bipartition::new(n, a).expect("canonical split is proper");
        debug_assert!(
            check_partition(g, &bp.to_partition(), opts.mode, opts.require_connected)
                .expect("well-formed")
                .is_valid()
        );
        first.get_or_insert(bp);
        match solutions.as_mut() {
            Some(list) => list.push(bp),
            None => break,
        }
    }
    let outcome = first.map_or(Outcome::NotFound, Outcome::Found);
    Ok(SolveResult {
        outcome,
        partitions_examined: examined,
        all_solutions: solutions,
    })
}

/// Every valid split with vertex 0 in `A`, sorted by `A`'s bitmask.
pub fn enumerate_2cs(g: &Graph, opts: &SolveOptions) -> Result<Vec<Bipartition>, SolveError> {
    let res = find_2cs(
        g,
        &SolveOptions {
            enumerate_all: true,
            ..*opts
        },
    )?;
    if res.outcome == Outcome::BudgetExceeded {
        return Err(SolveError::BudgetExceeded(res.partitions_examined));
    }
    Ok(res.all_solutions.unwrap_or_default())
}

/// Connected strict 2-community structure of a tree, by trying each edge
/// removal in edge order.
pub fn tree_connected_2cs(g: &Graph) -> Result<SolveResult, SolveError> {
    check_size(g)?;
    if !g.is_tree() {
        return Err(SolveError::NotATree);
    }
    let mut examined = 0;
    for (u, v) in g.edges() {
        examined += 1;
        let cut = g
            .with_edge(u, v, false)
            .expect("edge endpoints are in range");
        let a = cut.reach(0, g.vertices());
        if bipartition_satisfied(g, a, Mode::Strict) {
            let bp = Bipartition::new(g.n(), a).expect("removing a tree edge splits the tree");
            return Ok(SolveResult {
                outcome: Outcome::Found(bp),
                partitions_examined: examined,
                all_solutions: None,
            });
        }
    }
    Ok(SolveResult {
        outcome: Outcome::NotFound,
        partitions_examined: examined,
        all_solutions: None,
    })
}

fn cut_size(g: &Graph, a: VertexSet) -> usize {
    let b = g.vertices().difference(a);
    a.iter().map(|u| g.degree_in(u, b)).sum()
}

/// `(size deficit, cut edges, unsatisfied vertices)`; lower is better.
fn heuristic_score(g: &Graph, a: VertexSet, mode: Mode) -> (usize, usize, usize) {
    let deficit = match mode {
        Mode::Strict => {
            let b = g.n() - a.len();
            2usize.saturating_sub(a.len()) + 2usize.saturating_sub(b)
        }
        Mode::Relaxed => 0,
    };
    (deficit, cut_size(g, a), unsatisfied_count(g, a, mode))
}

/// Single-vertex local search from `seed` (side `A`).
///
/// Each step applies the move with the lowest resulting score, ties going to
/// the lowest vertex, and only if it strictly improves the current score.
/// A `NotFound` outcome means the local minimum is not a community
/// structure, not that none exists.
pub fn greedy_cut_heuristic(
    g: &Graph,
    seed: VertexSet,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    check_size(g)?;
    if g.n() < 4 {
        return Err(SolveError::TooFewVertices { n: g.n(), min: 4 });
    }
    if opts.require_balanced {
        return Err(SolveError::BalancedHeuristic);
    }
    let full = g.vertices();
    if seed.is_empty() || !seed.is_subset(full) || seed == full {
        return Err(SolveError::DegenerateSeed);
    }
    let mut a = seed;
    let mut score = heuristic_score(g, a, opts.mode);
    let mut examined = 1u64;
    loop {
        let mut best: Option<(VertexSet, (usize, usize, usize))> = None;
        for v in 0..g.n() {
            let mut next = a;
            if next.contains(v) {
                next.remove(v);
            } else {
                next.insert(v);
            }
            if next.is_empty() || next == full {
                continue;
            }
            if opts.budget.is_some_and(|b| examined >= b) {
                return Ok(SolveResult {
                    outcome: Outcome::BudgetExceeded,
                    partitions_examined: examined,
                    all_solutions: None,
                });
            }
            examined += 1;
            let s = heuristic_score(g, next, opts.mode);
            if s < score && best.is_none_or(|(_, bs)| s < bs) {
                best = Some((next, s));
            }
        }
        match best {
            Some((next, s)) => {
                a = next;
                score = s;
            }
            None => break,
        }
    }
    let bp = Bipartition::new(g.n(), a)
        .expect("moves keep both sides nonempty")
        .canonical();
    let valid =
        check_partition(g, &bp.to_partition(), opts.mode, opts.require_connected)?.is_valid();
    let outcome = if valid {
        Outcome::Found(bp)
    } else {
        Outcome::NotFound
    };
    Ok(SolveResult {
        outcome,
        partitions_examined: examined,
        all_solutions: None,
    })
}
