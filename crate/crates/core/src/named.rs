//! A few named graphs used throughout tests and documentation.

use crate::graph::Graph;

/// Edges of the 10-vertex planar graph with no 2-community structure.
///
/// Labels follow the family layout: cliques `{0,1,2}` and `{3,4,5}`, then
/// `x = 6`, `w = 7`, `y = 8`, and the pendant `z = 9`.
pub const PLANAR_COUNTEREXAMPLE_EDGES: [(usize, usize); 22] = [
    (0, 1),
    (0, 2),
    (1, 2),
    (3, 4),
    (3, 5),
    (4, 5),
    (7, 0),
    (7, 1),
    (7, 2),
    (7, 3),
    (7, 4),
    (7, 5),
    (6, 7),
    (6, 8),
    (7, 8),
    (8, 9),
    (6, 0),
    (6, 3),
    (8, 0),
    (8, 1),
    (8, 3),
    (8, 4),
];

pub fn planar_counterexample() -> Graph {
    Graph::from_edge_list(10, &PLANAR_COUNTEREXAMPLE_EDGES)
        .expect("static edge list is valid")
        .with_name("planar-10")
}

/// Center `0` with leaves `1`, `2` and a two-edge arm `0-3-4`.
pub fn spider() -> Graph {
    Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).expect("static edge list is valid")
}
