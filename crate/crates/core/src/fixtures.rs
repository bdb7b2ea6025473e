//! Small named colored graphs used throughout the docs and tests.

use crate::graph::ColoredGraph;

/// Two vertices joined by one edge of every color (`n ≥ 2` colors).
///
/// With three colors this is the standard gem of the 2-sphere; with `d + 1`
/// colors it encodes the `d`-sphere.
pub fn theta(n: usize) -> ColoredGraph {
    ColoredGraph::from_pairs(2, &vec![vec![(0, 1)]; n]).expect("theta graph is valid")
}

/// The 3-cube with color `c` joining vertices that differ in bit `c`.
pub fn cube() -> ColoredGraph {
    let colors: Vec<Vec<(usize, usize)>> = (0..3)
        .map(|c| {
            (0..8usize)
                .filter(|v| v & (1 << c) == 0)
                .map(|v| (v, v | (1 << c)))
                .collect()
        })
        .collect();
    ColoredGraph::from_pairs(8, &colors).expect("cube is valid")
}

/// `K_4` with its three perfect matchings as colors.
pub fn k4() -> ColoredGraph {
    ColoredGraph::from_pairs(
        4,
        &[
            vec![(0, 1), (2, 3)],
            vec![(0, 2), (1, 3)],
            vec![(0, 3), (1, 2)],
        ],
    )
    .expect("K4 coloring is valid")
}
