//! Isomorphism testing and canonical labeling for small graphs.
//!
//! Both routines partition vertices by the invariant `(degree, triangles)`
//! and only consider bijections that respect that partition.

use crate::graph::{Graph, GraphError, VertexSet};

/// Largest order accepted by [`are_isomorphic`].
pub const MAX_ISO_VERTICES: usize = 32;

/// Largest order accepted by [`canonical_form`]; the code must fit a `u64`.
pub const MAX_CANON_VERTICES: usize = 11;

fn invariants(g: &Graph) -> Vec<(usize, usize)> {
    let tri = g.triangle_counts();
    (0..g.n()).map(|u| (g.degree(u), tri[u])).collect()
}

/// Whether some bijection of vertices maps the edges of `a` exactly onto
/// the edges of `b`. Graphs of different order are simply not isomorphic.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool, GraphError> {
    for g in [a, b] {
        if g.n() > MAX_ISO_VERTICES {
            return Err(GraphError::TooManyVertices {
                n: g.n(),
                max: MAX_ISO_VERTICES,
            });
        }
    }
    if a.n() != b.n()
        || a.edge_count() != b.edge_count()
        || a.degree_sequence() != b.degree_sequence()
    {
        return Ok(false);
    }
    let inv_a = invariants(a);
    let inv_b = invariants(b);
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Ok(false);
    }

    let n = a.n();
    // Visit order: repeatedly take the vertex with the most already-ordered
    // neighbors, breaking ties by rarest invariant class then index.
    let class_size = |key: (usize, usize)| inv_a.iter().filter(|&&k| k == key).count();
    let mut order = Vec::with_capacity(n);
    let mut placed = VertexSet::EMPTY;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed.contains(v))
            .min_by_key(|&v| {
                (
                    std::cmp::Reverse(a.degree_in(v, placed)),
                    class_size(inv_a[v]),
                    v,
                )
            })
            .expect("unplaced vertex exists");
        order.push(next);
        placed.insert(next);
    }

    let mut map = vec![usize::MAX; n];
    Ok(extend(
        a,
        b,
        &inv_a,
        &inv_b,
        &order,
        0,
        &mut map,
        VertexSet::EMPTY,
    ))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Graph,
    b: &Graph,
    inv_a: &[(usize, usize)],
    inv_b: &[(usize, usize)],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: VertexSet,
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    let mapped_before: VertexSet = order[..depth].iter().copied().collect();
    let want: VertexSet = a
        .neighbors(v)
        .intersection(mapped_before)
        .iter()
        .map(|w| map[w])
        .collect();
    for c in b.vertices().difference(used) {
        if inv_b[c] != inv_a[v] || b.neighbors(c).intersection(used) != want {
            continue;
        }
        map[v] = c;
        let mut used_next = used;
        used_next.insert(c);
        if extend(a, b, inv_a, inv_b, order, depth + 1, map, used_next) {
            return true;
        }
    }
    map[v] = usize::MAX;
    false
}

/// A canonical labeling: `code` is equal for two graphs iff they are
/// isomorphic, and `labeling[i]` is the original vertex placed at position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub code: u64,
    pub labeling: Vec<usize>,
}

/// Computes the lexicographically largest upper-triangle code over all
/// invariant-respecting labelings, by branch and bound.
pub fn canonical_form(g: &Graph) -> Result<Canonical, GraphError> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(GraphError::TooManyVertices {
            n,
            max: MAX_CANON_VERTICES,
        });
    }
    let inv = invariants(g);
    let mut keys: Vec<(usize, usize)> = inv.clone();
    keys.sort_unstable_by(|x, y| y.cmp(x));
    let total_bits = n * n.saturating_sub(1) / 2;
    let mut search = CanonSearch {
        g,
        inv: &inv,
        keys: &keys,
        total_bits,
        best: None,
        labeling: Vec::with_capacity(n),
    };
    search.run(0, 0, VertexSet::EMPTY);
    let (code, labeling) = search.best.expect("at least one labeling");
    Ok(Canonical { code, labeling })
}

/// Relabels `g` into its canonical form.
pub fn canonical_graph(g: &Graph) -> Result<Graph, GraphError> {
    let c = canonical_form(g)?;
    let mut perm = vec![0; g.n()];
    for (pos, &v) in c.labeling.iter().enumerate() {
        perm[v] = pos;
    }
    Ok(g.relabel(&perm))
}

struct CanonSearch<'a> {
    g: &'a Graph,
    inv: &'a [(usize, usize)],
    keys: &'a [(usize, usize)],
    total_bits: usize,
    best: Option<(u64, Vec<usize>)>,
    labeling: Vec<usize>,
}

impl CanonSearch<'_> {
    fn run(&mut self, pos: usize, code: u64, used: VertexSet) {
        let n = self.g.n();
        if pos == n {
            if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                self.best = Some((code, self.labeling.clone()));
            }
            return;
        }
        for v in self.g.vertices().difference(used) {
            if self.inv[v] != self.keys[pos] {
                continue;
            }
            // column `pos`: bits (0,pos), (1,pos), ..., (pos-1,pos)
            let mut next = code;
            for &u in &self.labeling {
                next = next << 1 | self.g.has_edge(u, v) as u64;
            }
            let bits = (pos + 1) * pos / 2;
            if let Some((best, _)) = &self.best {
                if next < best >> (self.total_bits - bits) {
                    continue;
                }
            }
            self.labeling.push(v);
            let mut used_next = used;
            used_next.insert(v);
            self.run(pos + 1, next, used_next);
            self.labeling.pop();
        }
    }
}
