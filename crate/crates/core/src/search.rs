//! Exhaustive backtracking search for colored graphs of a prescribed
//! semi-equivelar type.
//!
//! Colors are assigned in order. Colors 0 and 1 are fixed up front: every
//! `{0,1}`-cycle has the same length `q_0`, so after relabelling the cycles
//! occupy consecutive blocks of `q_0` vertices, color 0 pairs `(b, b+1),
//! (b+2, b+3), …` and color 1 pairs `(b+1, b+2), …, (b+q_0-1, b)` inside each
//! block. For every later color `c` the least unpaired vertex is matched to
//! each admissible partner in increasing order, and the alternating chains of
//! colors `{c-1, c}` (and `{d, 0}` for the last color) are tracked so that a
//! cycle closing at the wrong length, or a chain outgrowing its target,
//! prunes immediately.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::complex::{check_3manifold, check_residues_sphere};
use crate::graph::ColoredGraph;
use crate::graph::{canonical_code_with, CanonMode};

const UNPAIRED: usize = usize::MAX;
const CLOCK_INTERVAL: u64 = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Filters {
    pub require_connected: bool,
    pub require_bipartite: bool,
    /// Only meaningful with four colors.
    pub require_3manifold: bool,
    /// Only meaningful with five colors.
    pub require_residues_sphere: bool,
}

impl Default for Filters {
    fn default() -> Self {
        Filters {
            require_connected: true,
            require_bipartite: false,
            require_3manifold: false,
            require_residues_sphere: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Limits {
    pub max_solutions: Option<usize>,
    pub budget: Option<Duration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    /// `seq[i]` is the length of every `{i, i+1 mod n}`-cycle.
    pub seq: Vec<usize>,
    pub vertex_count: usize,
    pub filters: Filters,
    pub limits: Limits,
    pub dedup: bool,
    /// Isomorphism notion used for dedup.
    pub canon_mode: CanonMode,
}

impl SearchSpec {
    pub fn new(seq: &[usize], vertex_count: usize) -> Self {
        SearchSpec {
            seq: seq.to_vec(),
            vertex_count,
            filters: Filters::default(),
            limits: Limits::default(),
            dedup: true,
            canon_mode: CanonMode::ColorPreserving,
        }
    }

    pub fn color_count(&self) -> usize {
        self.seq.len()
    }

    pub fn bipartite(mut self) -> Self {
        self.filters.require_bipartite = true;
        self
    }

    pub fn three_manifold(mut self) -> Self {
        self.filters.require_3manifold = true;
        self
    }

    pub fn residues_sphere(mut self) -> Self {
        self.filters.require_residues_sphere = true;
        self
    }

    pub fn allow_disconnected(mut self) -> Self {
        self.filters.require_connected = false;
        self
    }

    pub fn max_solutions(mut self, max: usize) -> Self {
        self.limits.max_solutions = Some(max);
        self
    }

    pub fn budget(mut self, budget: Duration) -> Self {
        self.limits.budget = Some(budget);
        self
    }

    fn check(&self) -> Result<(), SearchError> {
        let n = self.color_count();
        let p = self.vertex_count;
        if n < 3 {
            return Err(SearchError::TooFewColors(n));
        }
        if p == 0 || p % 2 == 1 {
            return Err(SearchError::OddVertexCount(p));
        }
        for &q in &self.seq {
            if q < 4 {
                return Err(SearchError::FaceTooSmall(q));
            }
            if q % 2 == 1 {
                return Err(SearchError::OddFace(q));
            }
            if q > p {
                return Err(SearchError::FaceExceedsVertices {
                    face: q,
                    vertices: p,
                });
            }
        }
        if self.filters.require_3manifold && n != 4 {
            return Err(SearchError::FilterNeedsColors {
                filter: "3-manifold",
                colors: 4,
                actual: n,
            });
        }
        if self.filters.require_residues_sphere && n != 5 {
            return Err(SearchError::FilterNeedsColors {
                filter: "residues-sphere",
                colors: 5,
                actual: n,
            });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("a type needs at least three colors, got {0}")]
    TooFewColors(usize),
    #[error("vertex count {0} must be even and positive")]
    OddVertexCount(usize),
    #[error("face size {0} is below 4")]
    FaceTooSmall(usize),
    #[error("face size {0} is odd")]
    OddFace(usize),
    #[error("face size {face} exceeds the vertex count {vertices}")]
    FaceExceedsVertices { face: usize, vertices: usize },
    #[error("the {filter} filter needs {colors} colors, got {actual}")]
    FilterNeedsColors {
        filter: &'static str,
        colors: usize,
        actual: usize,
    },
    #[error("budget exceeded before the search space was exhausted")]
    BudgetExceeded,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PruneCounts {
    /// A face size does not divide the vertex count.
    pub divisibility: u64,
    pub cycle_wrong_length: u64,
    pub chain_too_long: u64,
    pub disconnected: u64,
    pub not_bipartite: u64,
    pub not_3manifold: u64,
    pub residue_not_sphere: u64,
    pub duplicate: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub complete_graphs: u64,
    pub prunes: PruneCounts,
    #[serde(serialize_with = "serialize_secs")]
    pub elapsed: Duration,
}

fn serialize_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub solutions: Vec<ColoredGraph>,
    pub stats: SearchStats,
    /// True iff the whole space was explored.
    pub exhausted: bool,
}

pub fn search_gems(spec: &SearchSpec) -> Result<SearchOutcome, SearchError> {
    spec.check()?;
    let start = Instant::now();
    let p = spec.vertex_count;
    let mut stats = SearchStats::default();
    if spec.seq.iter().any(|&q| !p.is_multiple_of(q)) {
        stats.prunes.divisibility = 1;
        return Ok(SearchOutcome {
            solutions: Vec::new(),
            stats,
            exhausted: true,
        });
    }

    let mut s = Searcher::new(spec, start);
    s.stats = stats;
    let stopped = s.start_color(2);
    s.stats.elapsed = start.elapsed();
    Ok(SearchOutcome {
        solutions: s.solutions,
        stats: s.stats,
        exhausted: !stopped,
    })
}

/// Number of isomorphism classes of solutions; the search must run to
/// exhaustion.
pub fn count_nonisomorphic(spec: &SearchSpec) -> Result<usize, SearchError> {
    let mut spec = spec.clone();
    spec.dedup = true;
    spec.limits.max_solutions = None;
    let out = search_gems(&spec)?;
    if out.exhausted {
        Ok(out.solutions.len())
    } else {
        Err(SearchError::BudgetExceeded)
    }
}

/// Endpoints and lengths of the alternating chains of two colors.
struct Chains {
    target: usize,
    /// For a chain endpoint, the other endpoint.
    end: Vec<usize>,
    /// For a chain endpoint, the number of vertices on its chain.
    len: Vec<usize>,
}

enum Link {
    Closed,
    Merged {
        a: usize,
        b: usize,
        old_a: (usize, usize),
        old_b: (usize, usize),
    },
}

#[derive(Clone, Copy)]
enum Prune {
    WrongCycle,
    TooLong,
}

impl Chains {
    fn from_matching(matching: &[usize], target: usize) -> Self {
        Chains {
            target,
            end: matching.to_vec(),
            len: vec![2; matching.len()],
        }
    }

    fn link(&mut self, u: usize, v: usize) -> Result<Link, Prune> {
        if self.end[u] == v {
            return if self.len[u] == self.target {
                Ok(Link::Closed)
            } else {
                Err(Prune::WrongCycle)
            };
        }
        let merged = self.len[u] + self.len[v];
        if merged > self.target {
            return Err(Prune::TooLong);
        }
        let (a, b) = (self.end[u], self.end[v]);
        let old_a = (self.end[a], self.len[a]);
        let old_b = (self.end[b], self.len[b]);
        self.end[a] = b;
        self.end[b] = a;
        self.len[a] = merged;
        self.len[b] = merged;
        Ok(Link::Merged { a, b, old_a, old_b })
    }

    fn undo(&mut self, link: Link) {
        if let Link::Merged { a, b, old_a, old_b } = link {
            (self.end[b], self.len[b]) = old_b;
            (self.end[a], self.len[a]) = old_a;
        }
    }
}

/// Parity union-find over the `{0,1}`-blocks. In a bipartite solution
/// each block is 2-colored by vertex parity, possibly flipped; `flip[b]`
/// is tracked relative to the root of `b`. Unions are undone in LIFO order.
struct Sides {
    block: usize,
    parent: Vec<usize>,
    /// Flip of a block relative to its parent.
    rel: Vec<bool>,
    size: Vec<usize>,
}

impl Sides {
    fn new(p: usize, block: usize) -> Self {
        let blocks = p / block;
        Sides {
            block,
            parent: (0..blocks).collect(),
            rel: vec![false; blocks],
            size: vec![1; blocks],
        }
    }

    fn find(&self, mut b: usize) -> (usize, bool) {
        let mut flip = false;
        while self.parent[b] != b {
            flip ^= self.rel[b];
            b = self.parent[b];
        }
        (b, flip)
    }

    /// Requires `u` and `v` on opposite sides. `Ok(Some(child))` when two
    /// classes merged, `Ok(None)` when already consistent.
    fn join(&mut self, u: usize, v: usize) -> Result<Option<usize>, ()> {
        let (ru, fu) = self.find(u / self.block);
        let (rv, fv) = self.find(v / self.block);
        // side(x) = parity(x) ^ flip(block(x)); side(u) != side(v) needs
        // the two roots' flips to differ by `need`
        let need = (u % 2 == v % 2) ^ fu ^ fv;
        if ru == rv {
            return if need { Err(()) } else { Ok(None) };
        }
        let (child, root) = if self.size[ru] < self.size[rv] {
            (ru, rv)
        } else {
            (rv, ru)
        };
        self.parent[child] = root;
        self.rel[child] = need;
        self.size[root] += self.size[child];
        Ok(Some(child))
    }

    fn undo(&mut self, child: usize) {
        let root = self.parent[child];
        self.size[root] -= self.size[child];
        self.parent[child] = child;
        self.rel[child] = false;
    }
}

struct Searcher<'a> {
    spec: &'a SearchSpec,
    n: usize,
    p: usize,
    partner: Vec<Vec<usize>>,
    /// Chains of `{c-1, c}` for the color being placed.
    prev: Chains,
    /// Chains of `{d, 0}`, used while placing the last color.
    wrap: Chains,
    /// Present when bipartiteness is required.
    sides: Option<Sides>,
    seen: HashSet<String>,
    solutions: Vec<ColoredGraph>,
    stats: SearchStats,
    start: Instant,
    stop: bool,
}

impl<'a> Searcher<'a> {
    fn new(spec: &'a SearchSpec, start: Instant) -> Self {
        let n = spec.color_count();
        let p = spec.vertex_count;
        let block = spec.seq[0];
        let mut partner = vec![vec![UNPAIRED; p]; n];
        for v in (0..p).step_by(2) {
            partner[0][v] = v + 1;
            partner[0][v + 1] = v;
        }
        for b in (0..p).step_by(block) {
            for i in (1..block).step_by(2) {
                let (x, y) = (b + i, b + (i + 1) % block);
                partner[1][x] = y;
                partner[1][y] = x;
            }
        }
        let wrap = Chains::from_matching(&partner[0], spec.seq[n - 1]);
        Searcher {
            spec,
            n,
            p,
            prev: Chains::from_matching(&partner[1], spec.seq[1]),
            wrap,
            sides: spec.filters.require_bipartite.then(|| Sides::new(p, block)),
            partner,
            seen: HashSet::new(),
            solutions: Vec::new(),
            stats: SearchStats::default(),
            start,
            stop: false,
        }
    }

    /// Returns true if the search stopped early.
    fn start_color(&mut self, c: usize) -> bool {
        if c == self.n {
            self.complete();
            return self.stop;
        }
        let saved = std::mem::replace(
            &mut self.prev,
            Chains::from_matching(&self.partner[c - 1], self.spec.seq[c - 1]),
        );
        self.place(c, 0);
        self.prev = saved;
        self.stop
    }

    fn place(&mut self, c: usize, from: usize) {
        self.stats.nodes += 1;
        if (self.stats.nodes - 1).is_multiple_of(CLOCK_INTERVAL) {
            if let Some(budget) = self.spec.limits.budget {
                if self.start.elapsed() >= budget {
                    self.stop = true;
                }
            }
        }
        if self.stop {
            return;
        }
        let Some(u) = (from..self.p).find(|&v| self.partner[c][v] == UNPAIRED) else {
            self.start_color(c + 1);
            return;
        };
        let last = c + 1 == self.n;
        for v in u + 1..self.p {
            if self.partner[c][v] != UNPAIRED {
                continue;
            }
            let side = match self.sides.as_mut().map(|s| s.join(u, v)) {
                Some(Err(())) => {
                    self.stats.prunes.not_bipartite += 1;
                    continue;
                }
                Some(Ok(j)) => j,
                None => None,
            };
            let l1 = match self.prev.link(u, v) {
                Ok(l) => l,
                Err(r) => {
                    self.count_prune(r);
                    self.undo_side(side);
                    continue;
                }
            };
            let l2 = if last {
                match self.wrap.link(u, v) {
                    Ok(l) => Some(l),
                    Err(r) => {
                        self.count_prune(r);
                        self.prev.undo(l1);
                        self.undo_side(side);
                        continue;
                    }
                }
            } else {
                None
            };
            self.partner[c][u] = v;
            self.partner[c][v] = u;
            self.place(c, u + 1);
            self.partner[c][u] = UNPAIRED;
            self.partner[c][v] = UNPAIRED;
            if let Some(l2) = l2 {
                self.wrap.undo(l2);
            }
            self.prev.undo(l1);
            self.undo_side(side);
            if self.stop {
                return;
            }
        }
    }

    fn undo_side(&mut self, joined: Option<usize>) {
        if let (Some(child), Some(s)) = (joined, self.sides.as_mut()) {
            s.undo(child);
        }
    }

    fn count_prune(&mut self, r: Prune) {
        match r {
            Prune::WrongCycle => self.stats.prunes.cycle_wrong_length += 1,
            Prune::TooLong => self.stats.prunes.chain_too_long += 1,
        }
    }

    fn complete(&mut self) {
        self.stats.complete_graphs += 1;
        let g = ColoredGraph::from_involutions(self.partner.clone())
            .expect("search builds perfect matchings");
        let f = &self.spec.filters;
        let prunes = &mut self.stats.prunes;
        if f.require_connected && !g.is_connected() {
            prunes.disconnected += 1;
            return;
        }
        if f.require_bipartite && !g.is_bipartite() {
            prunes.not_bipartite += 1;
            return;
        }
        if f.require_3manifold && !check_3manifold(&g).is_ok_and(|r| r.holds) {
            prunes.not_3manifold += 1;
            return;
        }
        if f.require_residues_sphere && !check_residues_sphere(&g).is_ok_and(|r| r.holds) {
            prunes.residue_not_sphere += 1;
            return;
        }
        if self.spec.dedup {
            let code = canonical_code_with(&g, self.spec.canon_mode);
            if !self.seen.insert(code.as_str().to_owned()) {
                prunes.duplicate += 1;
                return;
            }
        }
        self.solutions.push(g);
        if self
            .spec
            .limits
            .max_solutions
            .is_some_and(|m| self.solutions.len() >= m)
        {
            self.stop = true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{semi_equivelar_type, CyclicOrder};
    use crate::graph::residue_stats;

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(
            search_gems(&SearchSpec::new(&[2, 2, 2], 2)).unwrap_err(),
            SearchError::FaceTooSmall(2)
        );
        assert!(matches!(
            search_gems(&SearchSpec::new(&[4, 4, 12], 8)),
            Err(SearchError::FaceExceedsVertices {
                face: 12,
                vertices: 8
            })
        ));
        assert_eq!(
            search_gems(&SearchSpec::new(&[4, 5, 4], 8)).unwrap_err(),
            SearchError::OddFace(5)
        );
        assert_eq!(
            search_gems(&SearchSpec::new(&[4, 4, 4], 7)).unwrap_err(),
            SearchError::OddVertexCount(7)
        );
        assert!(matches!(
            search_gems(&SearchSpec::new(&[4, 4, 4], 8).three_manifold()),
            Err(SearchError::FilterNeedsColors { .. })
        ));
    }

    #[test]
    fn indivisible_sizes_are_empty_and_exhausted() {
        let out = search_gems(&SearchSpec::new(&[4, 6, 4], 8)).unwrap();
        assert!(out.solutions.is_empty());
        assert!(out.exhausted);
    }

    #[test]
    fn cube_is_unique() {
        let spec = SearchSpec::new(&[4, 4, 4], 8).bipartite();
        assert_eq!(count_nonisomorphic(&spec).unwrap(), 1);
        let out = search_gems(&spec).unwrap();
        assert_eq!(out.solutions[0].residue_count(crate::ColorSet::full(3)), 1);
    }

    #[test]
    fn six_four_parameters() {
        let spec = SearchSpec::new(&[6, 6, 6, 6], 6)
            .three_manifold()
            .bipartite();
        let out = search_gems(&spec).unwrap();
        assert!(!out.solutions.is_empty());
        for g in &out.solutions {
            let s = residue_stats(g);
            for (pair, want) in [
                ([0, 1], 1),
                ([1, 2], 1),
                ([2, 3], 1),
                ([0, 3], 1),
                ([1, 3], 3),
                ([0, 2], 3),
            ] {
                assert_eq!(s.get(&pair), Some(want));
            }
        }
    }

    #[test]
    fn solutions_have_the_requested_type() {
        let spec = SearchSpec::new(&[4, 8, 4, 8], 8).three_manifold();
        let out = search_gems(&spec).unwrap();
        assert!(out.exhausted);
        assert!(!out.solutions.is_empty());
        for g in &out.solutions {
            let ty = semi_equivelar_type(g, &CyclicOrder::identity(4))
                .unwrap()
                .unwrap();
            assert_eq!(ty.raw, vec![4, 8, 4, 8]);
        }
    }

    #[test]
    fn max_and_budget_stop_early() {
        let out = search_gems(&SearchSpec::new(&[10, 10, 10], 10).max_solutions(1)).unwrap();
        assert_eq!(out.solutions.len(), 1);
        let spec = SearchSpec::new(&[4, 8, 24], 24).budget(Duration::ZERO);
        let out = search_gems(&spec).unwrap();
        assert!(!out.exhausted);
        assert_eq!(count_nonisomorphic(&spec), Err(SearchError::BudgetExceeded));
    }

    #[test]
    fn deterministic() {
        let spec = SearchSpec::new(&[8, 8, 8], 16);
        let a = search_gems(&spec).unwrap();
        let b = search_gems(&spec).unwrap();
        assert_eq!(a.solutions, b.solutions);
        assert_eq!(a.stats.nodes, b.stats.nodes);
        assert_eq!(a.stats.prunes, b.stats.prunes);
    }
}
