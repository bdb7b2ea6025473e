//! Regular edge-colored graphs.
//!
//! A [`ColoredGraph`] on `p` vertices with `d + 1` colors is stored as one
//! fixed-point-free involution per color: `partner(c, v)` is the vertex joined
//! to `v` by the unique edge of color `c`. Regularity and properness of the
//! coloring are then automatic. Parallel edges of different colors are
//! allowed.

mod canon;
mod residue;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use canon::{canonical_code, canonical_code_with, CanonMode, CanonicalCode};
pub use residue::{residue_components, residue_stats, residue_stats_up_to, ResidueStats};

/// Largest supported color count; color subsets are packed into a `u32`.
pub const MAX_COLORS: usize = 32;

/// A subset of the color set `{0, .., d}` packed as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ColorSet(u32);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    /// All colors `0..n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_COLORS, "at most {MAX_COLORS} colors are supported");
        if n == MAX_COLORS {
            ColorSet(u32::MAX)
        } else {
            ColorSet((1u32 << n) - 1)
        }
    }

    pub fn from_bits(bits: u32) -> Self {
        ColorSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, c: usize) -> bool {
        c < MAX_COLORS && self.0 & (1 << c) != 0
    }

    pub fn with(self, c: usize) -> Self {
        ColorSet(self.0 | (1 << c))
    }

    pub fn without(self, c: usize) -> Self {
        ColorSet(self.0 & !(1 << c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Colors in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_COLORS).filter(move |&c| self.0 & (1 << c) != 0)
    }

    /// Complement inside `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        ColorSet(Self::full(n).0 & !self.0)
    }

    /// Position of `c` among the members of the set, counting from zero.
    pub fn position(self, c: usize) -> Option<usize> {
        self.contains(c)
            .then(|| (self.0 & ((1u32 << c) - 1)).count_ones() as usize)
    }

    /// Every subset of `{0, .., n-1}` with exactly `k` elements, in increasing
    /// bit-mask order.
    pub fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = ColorSet> {
        let top = if n == MAX_COLORS {
            u64::from(u32::MAX) + 1
        } else {
            1u64 << n
        };
        (0..top)
            .map(|b| ColorSet(b as u32))
            .filter(move |s| s.len() == k)
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(ColorSet::EMPTY, ColorSet::with)
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.iter() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Unvalidated graph data as it comes from a file or a caller.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub color_count: usize,
    pub vertex_count: usize,
    /// Pair list per color. Colors are keys so that gaps can be reported.
    pub pairings: BTreeMap<usize, Vec<(usize, usize)>>,
}

impl RawGraph {
    pub fn new(color_count: usize, vertex_count: usize) -> Self {
        RawGraph {
            color_count,
            vertex_count,
            pairings: BTreeMap::new(),
        }
    }

    pub fn with_color(mut self, color: usize, pairs: Vec<(usize, usize)>) -> Self {
        self.pairings.insert(color, pairs);
        self
    }
}

/// A single reason why raw data does not describe a valid colored graph.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Violation {
    #[error("vertex count {0} is odd")]
    OddVertexCount(usize),
    #[error("a colored graph needs at least two vertices")]
    TooFewVertices,
    #[error("a colored graph needs at least two colors, got {0}")]
    TooFewColors(usize),
    #[error("at most {MAX_COLORS} colors are supported, got {0}")]
    TooManyColors(usize),
    #[error("color {0} has no pairing")]
    ColorGap(usize),
    #[error("color {0} is outside the declared color range")]
    ColorOutOfRange(usize),
    #[error("color {color}: loop at vertex {vertex}")]
    LoopEdge { color: usize, vertex: usize },
    #[error("color {color}: vertex {vertex} is outside the vertex range")]
    VertexOutOfRange { color: usize, vertex: usize },
    #[error("color {color}: vertex {vertex} is not covered exactly once")]
    NotAMatching { color: usize, vertex: usize },
}

/// The complete list of violations found by [`validate`].
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("invalid colored graph: {}", display_list(.violations))]
pub struct InvalidGraph {
    pub violations: Vec<Violation>,
}

fn display_list(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("color {color} is outside 0..{count}")]
    ColorOutOfRange { color: usize, count: usize },
    #[error("expected a {expected}-colored graph, got {actual} colors")]
    WrongColorCount { expected: usize, actual: usize },
    #[error("the graph is not connected")]
    Disconnected,
    #[error("vertex set is not a union of residue components")]
    NotAResidue,
}

/// A `(d+1)`-regular properly edge-colored graph.
///
/// Immutable once built; every constructor goes through [`validate`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredGraph {
    vertices: usize,
    partner: Vec<Vec<usize>>,
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("ColoredGraph");
        s.field("vertices", &self.vertices);
        for (c, row) in self.partner.iter().enumerate() {
            let pairs: Vec<_> = (0..self.vertices)
                .filter(|&v| v < row[v])
                .map(|v| (v, row[v]))
                .collect();
            s.field(&format!("color{c}"), &pairs);
        }
        s.finish()
    }
}

/// Checks raw pairing data and builds a [`ColoredGraph`].
///
/// All violations are collected; the caller gets the complete list rather
/// than the first failure.
pub fn validate(raw: &RawGraph) -> Result<ColoredGraph, InvalidGraph> {
    let mut violations = Vec::new();
    let p = raw.vertex_count;
    let n = raw.color_count;

    if p < 2 {
        violations.push(Violation::TooFewVertices);
    }
    if p % 2 == 1 {
        violations.push(Violation::OddVertexCount(p));
    }
    if n < 2 {
        violations.push(Violation::TooFewColors(n));
    }
    if n > MAX_COLORS {
        violations.push(Violation::TooManyColors(n));
    }
    for &c in raw.pairings.keys() {
        if c >= n {
            violations.push(Violation::ColorOutOfRange(c));
        }
    }

    let mut partner = Vec::with_capacity(n.min(MAX_COLORS));
    for c in 0..n.min(MAX_COLORS) {
        let Some(pairs) = raw.pairings.get(&c) else {
            violations.push(Violation::ColorGap(c));
            continue;
        };
        let mut row = vec![usize::MAX; p];
        let mut seen = vec![0usize; p];
        for &(a, b) in pairs {
            let mut ok = true;
            for v in [a, b] {
                if v >= p {
                    violations.push(Violation::VertexOutOfRange {
                        color: c,
                        vertex: v,
                    });
                    ok = false;
                }
            }
            if a == b {
                violations.push(Violation::LoopEdge {
                    color: c,
                    vertex: a,
                });
                ok = false;
            }
            if !ok {
                continue;
            }
            seen[a] += 1;
            seen[b] += 1;
            row[a] = b;
            row[b] = a;
        }
        for (v, &k) in seen.iter().enumerate() {
            let looped = pairs.iter().any(|&(a, b)| a == b && a == v);
            if k != 1 && !(k == 0 && looped) {
                violations.push(Violation::NotAMatching {
                    color: c,
                    vertex: v,
                });
            }
        }
        partner.push(row);
    }

    if violations.is_empty() {
        Ok(ColoredGraph {
            vertices: p,
            partner,
        })
    } else {
        Err(InvalidGraph { violations })
    }
}

impl ColoredGraph {
    /// Builds a graph from per-color pair lists on `vertices` vertices.
    pub fn from_pairs(
        vertices: usize,
        colors: &[Vec<(usize, usize)>],
    ) -> Result<Self, InvalidGraph> {
        let mut raw = RawGraph::new(colors.len(), vertices);
        for (c, pairs) in colors.iter().enumerate() {
            raw.pairings.insert(c, pairs.clone());
        }
        validate(&raw)
    }

    /// Builds a graph from one involution array per color.
    pub fn from_involutions(partner: Vec<Vec<usize>>) -> Result<Self, InvalidGraph> {
        let p = partner.first().map_or(0, Vec::len);
        let colors: Vec<Vec<(usize, usize)>> = partner
            .iter()
            .map(|row| {
                let mut pairs = Vec::with_capacity(p / 2);
                let mut used = vec![false; row.len()];
                for (v, &w) in row.iter().enumerate() {
                    if used[v] {
                        continue;
                    }
                    // a non-involutive row shows up as a double cover below
                    pairs.push((v, w));
                    used[v] = true;
                    if w < used.len() && row[w] == v {
                        used[w] = true;
                    }
                }
                pairs
            })
            .collect();
        Self::from_pairs(p, &colors)
    }

    /// Number of colors, `d + 1`.
    pub fn color_count(&self) -> usize {
        self.partner.len()
    }

    /// The dimension `d` of the encoded complex.
    pub fn dimension(&self) -> usize {
        self.partner.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.vertices * self.color_count() / 2
    }

    pub fn all_colors(&self) -> ColorSet {
        ColorSet::full(self.color_count())
    }

    #[inline]
    pub fn partner(&self, color: usize, vertex: usize) -> usize {
        self.partner[color][vertex]
    }

    /// Involution array of one color.
    pub fn involution(&self, color: usize) -> &[usize] {
        &self.partner[color]
    }

    /// Pairs of one color, each as `(a, b)` with `a < b`, sorted ascending.
    pub fn pairs(&self, color: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let row = &self.partner[color];
        (0..self.vertices)
            .filter(move |&v| v < row[v])
            .map(move |v| (v, row[v]))
    }

    pub(crate) fn check_colors(&self, colors: ColorSet) -> Result<(), GraphError> {
        match colors.iter().find(|&c| c >= self.color_count()) {
            Some(color) => Err(GraphError::ColorOutOfRange {
                color,
                count: self.color_count(),
            }),
            None => Ok(()),
        }
    }

    /// Component label of every vertex in the residue using only `colors`,
    /// plus the number of components. Labels are assigned in order of the
    /// least vertex of each component.
    pub fn residue_labels(&self, colors: ColorSet) -> (Vec<usize>, usize) {
        let p = self.vertices;
        let mut label = vec![usize::MAX; p];
        let mut stack = Vec::new();
        let mut count = 0;
        for start in 0..p {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(x) = stack.pop() {
                for c in colors.iter().filter(|&c| c < self.color_count()) {
                    let y = self.partner[c][x];
                    if label[y] == usize::MAX {
                        label[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Number of connected components of the residue on `colors`.
    pub fn residue_count(&self, colors: ColorSet) -> usize {
        self.residue_labels(colors).1
    }

    pub fn is_connected(&self) -> bool {
        self.residue_count(self.all_colors()) == 1
    }

    /// Vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (label, count) = self.residue_labels(self.all_colors());
        let mut out = vec![Vec::new(); count];
        for (v, &l) in label.iter().enumerate() {
            out[l].push(v);
        }
        out
    }

    /// True iff the vertices admit a 2-coloring with no monochromatic edge.
    pub fn is_bipartite(&self) -> bool {
        let p = self.vertices;
        let mut side = vec![u8::MAX; p];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..p {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            queue.push_back(start);
            while let Some(x) = queue.pop_front() {
                for row in &self.partner {
                    let y = row[x];
                    if side[y] == u8::MAX {
                        side[y] = 1 - side[x];
                        queue.push_back(y);
                    } else if side[y] == side[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Renames vertex `v` to `perm[v]`.
    ///
    /// Panics if `perm` is not a permutation of `0..p`.
    pub fn relabel(&self, perm: &[usize]) -> ColoredGraph {
        assert_eq!(perm.len(), self.vertices, "permutation length");
        let mut check = vec![false; self.vertices];
        for &v in perm {
            assert!(!std::mem::replace(&mut check[v], true), "not a permutation");
        }
        let partner = self
            .partner
            .iter()
            .map(|row| {
                let mut out = vec![0; self.vertices];
                for (v, &w) in row.iter().enumerate() {
                    out[perm[v]] = perm[w];
                }
                out
            })
            .collect();
        ColoredGraph {
            vertices: self.vertices,
            partner,
        }
    }

    /// Renames color `c` to `perm[c]`.
    pub fn permute_colors(&self, perm: &[usize]) -> ColoredGraph {
        assert_eq!(perm.len(), self.color_count(), "permutation length");
        let mut partner = vec![Vec::new(); self.color_count()];
        for (c, row) in self.partner.iter().enumerate() {
            partner[perm[c]] = row.clone();
        }
        assert!(partner.iter().all(|r| !r.is_empty()), "not a permutation");
        ColoredGraph {
            vertices: self.vertices,
            partner,
        }
    }

    /// The subgraph induced on `vertices` using only `colors`, with vertices
    /// renumbered in increasing order and colors renumbered `0..|colors|`
    /// in increasing order.
    ///
    /// `vertices` must be closed under every color in `colors` (a union of
    /// residue components).
    pub fn residue_subgraph(
        &self,
        colors: ColorSet,
        vertices: &[usize],
    ) -> Result<ColoredGraph, GraphError> {
        self.check_colors(colors)?;
        let mut index = vec![usize::MAX; self.vertices];
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for (i, &v) in sorted.iter().enumerate() {
            index[v] = i;
        }
        let mut partner = Vec::with_capacity(colors.len());
        for c in colors.iter() {
            let row: Result<Vec<usize>, GraphError> = sorted
                .iter()
                .map(|&v| match index[self.partner[c][v]] {
                    usize::MAX => Err(GraphError::NotAResidue),
                    i => Ok(i),
                })
                .collect();
            partner.push(row?);
        }
        Ok(ColoredGraph {
            vertices: sorted.len(),
            partner,
        })
    }

    /// Same graph on the same vertices with an extra color whose pairing is
    /// `pairing` (an involution array).
    pub fn with_extra_color(&self, pairing: Vec<usize>) -> Result<ColoredGraph, InvalidGraph> {
        let mut partner = self.partner.clone();
        partner.push(pairing);
        ColoredGraph::from_involutions(partner)
    }
}
