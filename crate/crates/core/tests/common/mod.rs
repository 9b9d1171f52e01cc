//! Test-only oracles. Nothing here calls the crate's checking or search
//! code: adjacency is read through `has_edge` and everything else is
//! recomputed from scratch.

#![allow(dead_code)]

use comstruct::{Graph, Mode};
use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Parts as plain vectors of vertices.
pub fn parts_of_mask(n: usize, mask: u64) -> [Vec<usize>; 2] {
    let a = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
    let b = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
    [a, b]
}

fn deg_into(g: &Graph, u: usize, part: &[usize]) -> i64 {
    part.iter().filter(|&&v| v != u && g.has_edge(u, v)).count() as i64
}

/// Definition in fraction form: `d_home / (|home| - 1) >= d_other / |other|`,
/// compared as exact rationals. Requires every part to have 2+ vertices.
pub fn fraction_valid(g: &Graph, parts: &[Vec<usize>]) -> bool {
    if parts.iter().any(|p| p.len() < 2) {
        return false;
    }
    parts.iter().enumerate().all(|(i, home)| {
        home.iter().all(|&u| {
            let own = Ratio::new(deg_into(g, u, home), home.len() as i64 - 1);
            parts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .all(|(_, other)| own >= Ratio::new(deg_into(g, u, other), other.len() as i64))
        })
    })
}

/// Cross-multiplied form, singleton parts allowed.
pub fn cross_valid(g: &Graph, parts: &[Vec<usize>]) -> bool {
    parts.iter().enumerate().all(|(i, home)| {
        home.iter().all(|&u| {
            parts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .all(|(_, other)| {
                    other.len() as i64 * deg_into(g, u, home)
                        >= (home.len() as i64 - 1) * deg_into(g, u, other)
                })
        })
    })
}

pub fn naive_connected(g: &Graph, part: &[usize]) -> bool {
    let mut seen = vec![part[0]];
    let mut stack = vec![part[0]];
    while let Some(u) = stack.pop() {
        for &v in part {
            if g.has_edge(u, v) && !seen.contains(&v) {
                seen.push(v);
                stack.push(v);
            }
        }
    }
    seen.len() == part.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NaiveFlags {
    pub strict: bool,
    pub relaxed: bool,
    pub connected_strict: bool,
    pub connected_relaxed: bool,
    pub balanced: bool,
}

/// Unpruned scan over every proper subset `A` (both orientations).
pub fn naive_flags(g: &Graph) -> NaiveFlags {
    let n = g.n();
    let mut f = NaiveFlags::default();
    for mask in 1..(1u64 << n) - 1 {
        let parts = parts_of_mask(n, mask);
        let strict = fraction_valid(g, &parts);
        let relaxed = cross_valid(g, &parts);
        let conn = parts.iter().all(|p| naive_connected(g, p));
        f.strict |= strict;
        f.relaxed |= relaxed;
        f.connected_strict |= strict && conn;
        f.connected_relaxed |= relaxed && conn;
        f.balanced |= strict && parts[0].len() == parts[1].len();
    }
    f
}

pub fn naive_has(g: &Graph, mode: Mode, connected: bool) -> bool {
    let f = naive_flags(g);
    match (mode, connected) {
        (Mode::Strict, false) => f.strict,
        (Mode::Relaxed, false) => f.relaxed,
        (Mode::Strict, true) => f.connected_strict,
        (Mode::Relaxed, true) => f.connected_relaxed,
    }
}

pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

pub fn random_connected_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

/// Tree from a Prüfer sequence of length `n - 2`.
pub fn prufer_tree(n: usize, seq: &[usize]) -> Graph {
    assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edge_list(n, &edges).unwrap()
}

pub fn random_tree(rng: &mut StdRng, n: usize) -> Graph {
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_tree(n, &seq)
}

pub fn random_permutation(rng: &mut StdRng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}
