use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ColorSet, ColoredGraph, GraphError};

/// Connected components of the residue `Γ_B` as sorted vertex lists, ordered
/// by least vertex. The empty color set gives `p` singletons.
pub fn residue_components(
    g: &ColoredGraph,
    colors: ColorSet,
) -> Result<Vec<Vec<usize>>, GraphError> {
    g.check_colors(colors)?;
    let (label, count) = g.residue_labels(colors);
    let mut out = vec![Vec::new(); count];
    for (v, &l) in label.iter().enumerate() {
        out[l].push(v);
    }
    Ok(out)
}

/// Component counts `g_B` of color-subset residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueStats {
    pub color_count: usize,
    pub vertex_count: usize,
    pub counts: BTreeMap<ColorSet, usize>,
}

impl ResidueStats {
    /// `g_B` for the colors listed, if that subset was computed.
    pub fn get(&self, colors: &[usize]) -> Option<usize> {
        self.counts.get(&colors.iter().copied().collect()).copied()
    }

    pub fn count(&self, set: ColorSet) -> Option<usize> {
        self.counts.get(&set).copied()
    }

    /// Entries with exactly `k` colors.
    pub fn of_size(&self, k: usize) -> impl Iterator<Item = (ColorSet, usize)> + '_ {
        self.counts
            .iter()
            .filter(move |(s, _)| s.len() == k)
            .map(|(&s, &n)| (s, n))
    }
}

/// Residue counts for every subset of two and three colors.
pub fn residue_stats(g: &ColoredGraph) -> ResidueStats {
    residue_stats_up_to(g, 3)
}

/// Residue counts for every subset with `2 ≤ |B| ≤ max_size` colors.
pub fn residue_stats_up_to(g: &ColoredGraph, max_size: usize) -> ResidueStats {
    let n = g.color_count();
    let mut counts = BTreeMap::new();
    for k in 2..=max_size.min(n) {
        for set in ColorSet::subsets_of_size(n, k) {
            counts.insert(set, g.residue_count(set));
        }
    }
    ResidueStats {
        color_count: n,
        vertex_count: g.vertex_count(),
        counts,
    }
}
