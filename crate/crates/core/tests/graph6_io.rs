use std::collections::BTreeSet;

use comstruct::census::generate_small_graphs;
use comstruct::iso::canonical_form;
use comstruct::{emit_graph6, parse_graph6, Graph};

const CONNECTED6: &str = include_str!("data/connected6.g6");
const CONNECTED8: &str = include_str!("data/connected8.g6");

fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().filter(|l| !l.trim().is_empty())
}

#[test]
fn fixture_lines_round_trip() {
    for text in [CONNECTED6, CONNECTED8] {
        for line in lines(text) {
            let g = parse_graph6(line).unwrap();
            assert!(g.is_connected(), "{line}");
            assert_eq!(emit_graph6(&g).unwrap(), line);
        }
    }
}

#[test]
fn fixture_sizes() {
    assert_eq!(lines(CONNECTED6).count(), 112);
    assert_eq!(lines(CONNECTED8).count(), 11117);
}

#[test]
fn generated_orders_have_known_counts() {
    let counts: Vec<usize> = (1..=7)
        .map(|n| generate_small_graphs(n).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
}

fn codes<'a>(graphs: impl Iterator<Item = &'a Graph>) -> BTreeSet<u64> {
    graphs.map(|g| canonical_form(g).unwrap().code).collect()
}

#[test]
fn generator_agrees_with_external_fixture() {
    let external: Vec<Graph> = lines(CONNECTED6)
        .map(|l| parse_graph6(l).unwrap())
        .collect();
    let generated = generate_small_graphs(6).unwrap();
    let ext = codes(external.iter());
    assert_eq!(ext.len(), 112, "fixture has duplicates up to isomorphism");
    assert_eq!(ext, codes(generated.iter()));
}

#[test]
fn generated_graphs_are_canonical_and_distinct() {
    for n in 1..=6 {
        let gs = generate_small_graphs(n).unwrap();
        let mut prev = None;
        for g in &gs {
            assert!(g.is_connected());
            let c = canonical_form(g).unwrap();
            // already relabeled to canonical order, up to automorphism
            let mut perm = vec![0; n];
            for (pos, &v) in c.labeling.iter().enumerate() {
                perm[v] = pos;
            }
            assert_eq!(&g.relabel(&perm), g);
            assert!(prev < Some(c.code));
            prev = Some(c.code);
        }
    }
}
