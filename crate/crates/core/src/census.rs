//! Classifying many graphs by which 2-community variants they admit.
//!
//! Records are produced in input order regardless of the worker count, so
//! a census run is reproducible byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, BufRead};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::community::{bipartition_satisfied, Mode};
use crate::graph::{Graph, VertexSet};
use crate::graph6::{emit_graph6, parse_graph6};
use crate::iso::canonical_form;
use crate::solver::{SolveOptions, MAX_SOLVER_VERTICES};

/// Largest order [`generate_small_graphs`] will produce.
pub const MAX_GENERATED_ORDER: usize = 7;

const BATCH: usize = 4096;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("generator supports orders 1..={max}, got {n}; use a graph6 file for larger orders")]
    UnsupportedOrder { n: usize, max: usize },
    #[error("order {0} listed twice")]
    DuplicateOrder(usize),
    #[error("worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Ok,
    ParseError,
    Unsupported,
    BudgetExceeded,
}

/// Classification of one graph. The `has_*` flags are only meaningful when
/// `status` is `ok`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    /// Input line number (1-based) or generator index (0-based).
    pub id: u64,
    pub status: RecordStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub graph6: Option<String>,
    pub n: usize,
    pub edges: usize,
    pub has_strict_2cs: bool,
    pub has_relaxed_2cs: bool,
    pub has_connected_strict_2cs: bool,
    pub has_connected_relaxed_2cs: bool,
    pub has_balanced_2cs: bool,
    /// Side `A` (containing vertex 0) of the first relaxed solution.
    pub sample: Option<u64>,
    pub partitions_examined: u64,
}

impl CensusRecord {
    fn blank(id: u64, status: RecordStatus) -> Self {
        CensusRecord {
            id,
            status,
            error: None,
            graph6: None,
            n: 0,
            edges: 0,
            has_strict_2cs: false,
            has_relaxed_2cs: false,
            has_connected_strict_2cs: false,
            has_connected_relaxed_2cs: false,
            has_balanced_2cs: false,
            sample: None,
            partitions_examined: 0,
        }
    }

    /// The flag matching the variant selected by `opts`.
    pub fn has_variant(&self, opts: &SolveOptions) -> bool {
        match (opts.require_balanced, opts.require_connected, opts.mode) {
            (true, _, _) => self.has_balanced_2cs,
            (false, true, Mode::Strict) => self.has_connected_strict_2cs,
            (false, true, Mode::Relaxed) => self.has_connected_relaxed_2cs,
            (false, false, Mode::Strict) => self.has_strict_2cs,
            (false, false, Mode::Relaxed) => self.has_relaxed_2cs,
        }
    }

    pub const CSV_HEADER: &'static str = "id,status,graph6,n,edges,has_strict_2cs,has_relaxed_2cs,\
has_connected_strict_2cs,has_connected_relaxed_2cs,has_balanced_2cs,sample,partitions_examined";

    pub fn to_csv_row(&self) -> String {
        let status = serde_json::to_value(self.status).expect("status serializes");
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.id,
            status.as_str().unwrap_or_default(),
            self.graph6.as_deref().unwrap_or(""),
            self.n,
            self.edges,
            self.has_strict_2cs,
            self.has_relaxed_2cs,
            self.has_connected_strict_2cs,
            self.has_connected_relaxed_2cs,
            self.has_balanced_2cs,
            self.sample.map(|s| s.to_string()).unwrap_or_default(),
            self.partitions_examined
        )
    }
}

/// Classifies `g` under every variant in a single pass over the canonical
/// splits. `budget` caps the number of splits examined.
pub fn classify_with_budget(g: &Graph, budget: Option<u64>) -> CensusRecord {
    let mut rec = CensusRecord::blank(0, RecordStatus::Ok);
    let n = g.n();
    rec.n = n;
    rec.edges = g.edge_count();
    rec.graph6 = emit_graph6(g).ok();
    if n > MAX_SOLVER_VERTICES {
        rec.status = RecordStatus::Unsupported;
        rec.error = Some(format!(
            "{n} vertices exceeds the solver limit of {MAX_SOLVER_VERTICES}"
        ));
        return rec;
    }
    if n < 2 {
        return rec;
    }
    let full = g.vertices();
    if !g.is_connected() {
        // component of vertex 0 against the rest: every cross term vanishes
        rec.has_relaxed_2cs = true;
        rec.sample = Some(g.reach(0, full).bits());
    }
    let balanced_possible = n.is_multiple_of(2);
    let done = |r: &CensusRecord| {
        r.has_relaxed_2cs
            && r.has_strict_2cs
            && r.has_connected_relaxed_2cs
            && r.has_connected_strict_2cs
            && (r.has_balanced_2cs || !balanced_possible)
    };
    let candidates: u64 = (1u64 << (n - 1)) - 1;
    for s in 0..candidates {
        if done(&rec) {
            break;
        }
        if budget.is_some_and(|b| rec.partitions_examined >= b) {
            rec.status = RecordStatus::BudgetExceeded;
            break;
        }
        rec.partitions_examined += 1;
        let a = VertexSet::from_bits(s << 1 | 1);
        if !bipartition_satisfied(g, a, Mode::Relaxed) {
            continue;
        }
        let b = full.difference(a);
        let strict = a.len() >= 2 && b.len() >= 2;
        rec.has_relaxed_2cs = true;
        rec.sample.get_or_insert(a.bits());
        if strict {
            rec.has_strict_2cs = true;
            if a.len() == b.len() {
                rec.has_balanced_2cs = true;
            }
        }
        let need_conn = !rec.has_connected_relaxed_2cs || (strict && !rec.has_connected_strict_2cs);
        if need_conn && g.reach(0, a) == a && g.reach(b.first().expect("b nonempty"), b) == b {
            rec.has_connected_relaxed_2cs = true;
            rec.has_connected_strict_2cs |= strict;
        }
    }
    rec
}

/// [`classify_with_budget`] without a budget.
pub fn classify_graph(g: &Graph) -> CensusRecord {
    classify_with_budget(g, None)
}

/// All connected graphs of order `n` up to isomorphism, each relabeled to
/// its canonical form and listed by ascending canonical code.
pub fn generate_small_graphs(n: usize) -> Result<Vec<Graph>, CensusError> {
    if n == 0 || n > MAX_GENERATED_ORDER {
        return Err(CensusError::UnsupportedOrder {
            n,
            max: MAX_GENERATED_ORDER,
        });
    }
    let mut level = vec![Graph::empty(1).expect("one vertex")];
    for m in 2..=n {
        level = grow(&level, m);
    }
    Ok(level)
}

/// Connected graphs of order `m` from those of order `m - 1`: every
/// connected graph has a vertex whose removal leaves it connected.
fn grow(prev: &[Graph], m: usize) -> Vec<Graph> {
    let seen: BTreeMap<u64, Graph> = prev
        .par_iter()
        .flat_map_iter(|base| {
            (1u64..1 << (m - 1)).map(move |nbrs| {
                let mut adj: Vec<u64> = (0..m - 1)
                    .map(|u| base.neighbors(u).bits() | (nbrs >> u & 1) << (m - 1))
                    .collect();
                adj.push(nbrs);
                let g = Graph::from_adjacency(adj).expect("augmentation keeps adjacency symmetric");
                let c = canonical_form(&g).expect("generator orders fit a canonical code");
                (c.code, c.labeling, g)
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .map(|(code, labeling, g)| {
            let mut perm = vec![0; m];
            for (pos, &v) in labeling.iter().enumerate() {
                perm[v] = pos;
            }
            (code, g.relabel(&perm))
        })
        .collect::<BTreeMap<_, _>>();
    seen.into_values().collect()
}

/// Where a census gets its graphs.
pub enum CensusSource<'a> {
    /// One graph6 string per line; `name` is echoed in the summary.
    Graph6 {
        name: String,
        reader: Box<dyn BufRead + 'a>,
    },
    /// The internal generator, for each listed order in turn.
    Generate { orders: Vec<usize> },
}

impl CensusSource<'_> {
    fn describe(&self) -> String {
        match self {
            CensusSource::Graph6 { name, .. } => format!("graph6:{name}"),
            CensusSource::Generate { orders } => {
                let list: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
                format!("generate:{}", list.join(","))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderCounts {
    pub total: u64,
    pub lacking_strict: u64,
    pub lacking_relaxed: u64,
    pub lacking_connected_strict: u64,
    pub lacking_connected_relaxed: u64,
    pub lacking_balanced: u64,
    /// Lacking the variant selected by the run's options.
    pub exceptions: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub source: String,
    pub mode: Mode,
    pub require_connected: bool,
    pub require_balanced: bool,
    pub budget: Option<u64>,
}

/// Aggregate of a census run. Its JSON form is independent of the worker
/// count; the wall time is kept out of it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub config: CensusConfig,
    pub graphs: u64,
    pub parse_errors: u64,
    pub unsupported: u64,
    pub budget_exceeded: u64,
    pub per_order: BTreeMap<usize, OrderCounts>,
    /// Ids lacking the variant selected by the run's options.
    pub exceptions: Vec<u64>,
    pub lacking_relaxed: Vec<u64>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CensusSummary {
    fn new(config: CensusConfig) -> Self {
        CensusSummary {
            config,
            graphs: 0,
            parse_errors: 0,
            unsupported: 0,
            budget_exceeded: 0,
            per_order: BTreeMap::new(),
            exceptions: Vec::new(),
            lacking_relaxed: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    fn add(&mut self, rec: &CensusRecord, opts: &SolveOptions) {
        match rec.status {
            RecordStatus::ParseError => {
                self.parse_errors += 1;
                return;
            }
            RecordStatus::Unsupported => {
                self.unsupported += 1;
                return;
            }
            RecordStatus::BudgetExceeded => {
                self.budget_exceeded += 1;
                return;
            }
            RecordStatus::Ok => {}
        }
        self.graphs += 1;
        let c = self.per_order.entry(rec.n).or_default();
        c.total += 1;
        c.lacking_strict += !rec.has_strict_2cs as u64;
        c.lacking_relaxed += !rec.has_relaxed_2cs as u64;
        c.lacking_connected_strict += !rec.has_connected_strict_2cs as u64;
        c.lacking_connected_relaxed += !rec.has_connected_relaxed_2cs as u64;
        c.lacking_balanced += !rec.has_balanced_2cs as u64;
        if !rec.has_variant(opts) {
            c.exceptions += 1;
            self.exceptions.push(rec.id);
        }
        if !rec.has_relaxed_2cs {
            self.lacking_relaxed.push(rec.id);
        }
    }
}

enum Item {
    Line(String),
    Graph(Graph),
}

fn classify_item(id: u64, item: &Item, budget: Option<u64>) -> CensusRecord {
    let parsed;
    let g = match item {
        Item::Graph(g) => g,
        Item::Line(line) => match parse_graph6(line) {
            Ok(g) => {
                parsed = g;
                &parsed
            }
            Err(e) => {
                let mut rec = CensusRecord::blank(id, RecordStatus::ParseError);
                rec.error = Some(e.to_string());
                return rec;
            }
        },
    };
    let mut rec = classify_with_budget(g, budget);
    rec.id = id;
    rec
}

/// Classifies every graph from `source` on `workers` threads, handing each
/// record to `sink` in input order. Unparseable lines become `parse_error`
/// records; only I/O failures abort the run.
pub fn run_census<F>(
    source: CensusSource<'_>,
    opts: &SolveOptions,
    workers: usize,
    mut sink: F,
) -> Result<CensusSummary, CensusError>
where
    F: FnMut(&CensusRecord) -> io::Result<()>,
{
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CensusError::Pool(e.to_string()))?;
    let mut summary = CensusSummary::new(CensusConfig {
        source: source.describe(),
        mode: opts.mode,
        require_connected: opts.require_connected,
        require_balanced: opts.require_balanced,
        budget: opts.budget,
    });
    let mut flush =
        |batch: &mut Vec<(u64, Item)>, summary: &mut CensusSummary| -> Result<(), CensusError> {
            let records: Vec<CensusRecord> = pool.install(|| {
                batch
                    .par_iter()
                    .map(|(id, item)| classify_item(*id, item, opts.budget))
                    .collect()
            });
            for rec in &records {
                summary.add(rec, opts);
                sink(rec)?;
            }
            batch.clear();
            Ok(())
        };

    let mut batch = Vec::with_capacity(BATCH);
    match source {
        CensusSource::Graph6 { reader, .. } => {
            for (idx, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                batch.push((idx as u64 + 1, Item::Line(line)));
                if batch.len() == BATCH {
                    flush(&mut batch, &mut summary)?;
                }
            }
        }
        CensusSource::Generate { orders } => {
            let mut unique = BTreeSet::new();
            if let Some(&dup) = orders.iter().find(|&&o| !unique.insert(o)) {
                return Err(CensusError::DuplicateOrder(dup));
            }
            let mut id = 0u64;
            for n in orders {
                for g in pool.install(|| generate_small_graphs(n))? {
                    batch.push((id, Item::Graph(g)));
                    id += 1;
                    if batch.len() == BATCH {
                        flush(&mut batch, &mut summary)?;
                    }
                }
            }
        }
    }
    flush(&mut batch, &mut summary)?;
    summary.wall_time = start.elapsed();
    Ok(summary)
}
