//! Regular embeddings.
//!
//! For a cyclic order `ε = (ε_0, .., ε_d)` of the colors, the faces of the
//! regular embedding are the bi-colored cycles on consecutive pairs
//! `{ε_i, ε_{i+1}}`. Tracing them gives the face count and so the Euler
//! characteristic of the surface; orientability follows from bipartiteness.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::ColoredGraph;
use crate::types::TypeSequence;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("{0:?} is not a permutation of 0..{1}")]
    NotAPermutation(Vec<usize>, usize),
    #[error("cyclic order has {order} colors but the graph has {graph}")]
    ColorMismatch { order: usize, graph: usize },
    #[error("a disconnected graph does not embed on a single surface")]
    Disconnected,
}

/// A cyclic order of the colors, stored as the representative of its
/// rotation/reflection class that starts with 0 and has `ε_1 < ε_d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CyclicOrder(Vec<usize>);

impl CyclicOrder {
    pub fn new(order: &[usize]) -> Result<Self, EmbeddingError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &c in order {
            if c >= n || std::mem::replace(&mut seen[c], true) {
                return Err(EmbeddingError::NotAPermutation(order.to_vec(), n));
            }
        }
        if n == 0 {
            return Err(EmbeddingError::NotAPermutation(Vec::new(), 0));
        }
        let start = order.iter().position(|&c| c == 0).unwrap_or(0);
        let mut rotated: Vec<usize> = (0..n).map(|i| order[(start + i) % n]).collect();
        if n >= 3 && rotated[1] > rotated[n - 1] {
            rotated[1..].reverse();
        }
        Ok(CyclicOrder(rotated))
    }

    /// `(0, 1, .., n-1)`.
    pub fn identity(n: usize) -> Self {
        CyclicOrder((0..n).collect())
    }

    /// One representative per rotation/reflection class: `(n-1)!/2` orders
    /// for `n ≥ 3`.
    pub fn all(n: usize) -> Vec<CyclicOrder> {
        if n < 3 {
            return vec![CyclicOrder::identity(n)];
        }
        let mut rest: Vec<usize> = (1..n).collect();
        let mut out = Vec::new();
        permute(&mut rest, 0, &mut |perm| {
            if perm[0] < perm[perm.len() - 1] {
                let mut order = vec![0];
                order.extend_from_slice(perm);
                out.push(CyclicOrder(order));
            }
        });
        out.sort();
        out
    }

    pub fn colors(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The color pair bounding faces of index `i`: `(ε_i, ε_{i+1})`.
    pub fn pair(&self, i: usize) -> (usize, usize) {
        (self.0[i], self.0[(i + 1) % self.0.len()])
    }
}

fn permute(v: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

impl fmt::Debug for CyclicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for CyclicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// The bi-colored cycles of one consecutive color pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFaces {
    pub colors: (usize, usize),
    /// Each cycle starts at its least vertex and follows the smaller color
    /// first.
    pub cycles: Vec<Vec<usize>>,
}

impl PairFaces {
    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.cycles.iter().map(Vec::len)
    }

    /// The common cycle length, if all cycles agree.
    pub fn uniform_length(&self) -> Option<usize> {
        let first = self.cycles.first()?.len();
        self.cycles
            .iter()
            .all(|c| c.len() == first)
            .then_some(first)
    }
}

/// Face cycles of the regular embedding for one cyclic order, indexed by
/// pair position `i` (pair `{ε_i, ε_{i+1}}`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceTrace {
    pub order: CyclicOrder,
    pub pairs: Vec<PairFaces>,
}

impl FaceTrace {
    pub fn face_count(&self) -> usize {
        self.pairs.iter().map(|p| p.cycles.len()).sum()
    }
}

/// Bi-colored cycles on colors `a` and `b`, partitioning the vertex set.
pub fn bicolored_cycles(g: &ColoredGraph, a: usize, b: usize) -> Vec<Vec<usize>> {
    let (a, b) = (a.min(b), a.max(b));
    let p = g.vertex_count();
    let mut seen = vec![false; p];
    let mut cycles = Vec::new();
    for start in 0..p {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        let mut use_a = true;
        loop {
            seen[x] = true;
            cycle.push(x);
            x = g.partner(if use_a { a } else { b }, x);
            use_a = !use_a;
            if x == start && use_a {
                break;
            }
        }
        cycles.push(cycle);
    }
    cycles
}

pub fn trace_faces(g: &ColoredGraph, order: &CyclicOrder) -> Result<FaceTrace, EmbeddingError> {
    check_order(g, order)?;
    let pairs = (0..order.len())
        .map(|i| {
            let (a, b) = order.pair(i);
            PairFaces {
                colors: (a, b),
                cycles: bicolored_cycles(g, a, b),
            }
        })
        .collect();
    Ok(FaceTrace {
        order: order.clone(),
        pairs,
    })
}

fn check_order(g: &ColoredGraph, order: &CyclicOrder) -> Result<(), EmbeddingError> {
    if order.len() != g.color_count() {
        return Err(EmbeddingError::ColorMismatch {
            order: order.len(),
            graph: g.color_count(),
        });
    }
    Ok(())
}

/// Face sizes of a semi-equivelar embedding, both aligned with `ε` and in
/// canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiEquivelarType {
    /// `p_i` is the length of every `{ε_i, ε_{i+1}}`-cycle.
    pub raw: Vec<usize>,
    pub canonical: TypeSequence,
}

fn type_from_trace(trace: &FaceTrace) -> Option<SemiEquivelarType> {
    let raw: Option<Vec<usize>> = trace.pairs.iter().map(PairFaces::uniform_length).collect();
    let raw = raw?;
    // bigons are not faces of a type; TypeSequence also needs >= 3 entries
    let canonical = TypeSequence::normalize(&raw).ok()?;
    Some(SemiEquivelarType { raw, canonical })
}

/// The semi-equivelar type of the embedding for `order`, if every pair class
/// consists of cycles of one common length `≥ 4`.
pub fn semi_equivelar_type(
    g: &ColoredGraph,
    order: &CyclicOrder,
) -> Result<Option<SemiEquivelarType>, EmbeddingError> {
    Ok(type_from_trace(&trace_faces(g, order)?))
}

/// Surface invariants of a regular embedding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub order: CyclicOrder,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
    pub orientable: bool,
    /// Genus when orientable, crosscap number otherwise.
    pub genus: i64,
    pub has_bigons: bool,
    pub face_sizes: Vec<Vec<usize>>,
    pub se_type: Option<SemiEquivelarType>,
}

impl EmbeddingReport {
    /// Short surface name: `S^2`, `#2 T^2`, `#3 RP^2`, ...
    pub fn surface_name(&self) -> String {
        surface_name(self.orientable, self.genus)
    }
}

pub fn surface_name(orientable: bool, genus: i64) -> String {
    match (orientable, genus) {
        (true, 0) => "S^2".into(),
        (true, 1) => "T^2".into(),
        (true, g) => format!("#{g} T^2"),
        (false, 1) => "RP^2".into(),
        (false, g) => format!("#{g} RP^2"),
    }
}

pub fn embedding_report(
    g: &ColoredGraph,
    order: &CyclicOrder,
) -> Result<EmbeddingReport, EmbeddingError> {
    if !g.is_connected() {
        return Err(EmbeddingError::Disconnected);
    }
    Ok(report_from_trace(
        g,
        &trace_faces(g, order)?,
        g.is_bipartite(),
    ))
}

fn report_from_trace(g: &ColoredGraph, trace: &FaceTrace, orientable: bool) -> EmbeddingReport {
    let v = g.vertex_count() as i64;
    let e = g.edge_count() as i64;
    let f = trace.face_count() as i64;
    let chi = v - e + f;
    let genus = if orientable { (2 - chi) / 2 } else { 2 - chi };
    let face_sizes: Vec<Vec<usize>> = trace.pairs.iter().map(|p| p.lengths().collect()).collect();
    let has_bigons = face_sizes.iter().flatten().any(|&l| l == 2);
    EmbeddingReport {
        order: trace.order.clone(),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        faces: trace.face_count(),
        chi,
        orientable,
        genus,
        has_bigons,
        face_sizes,
        se_type: type_from_trace(trace),
    }
}

/// One report per rotation/reflection class of cyclic orders.
pub fn all_embeddings(
    g: &ColoredGraph,
) -> Result<BTreeMap<CyclicOrder, EmbeddingReport>, EmbeddingError> {
    if !g.is_connected() {
        return Err(EmbeddingError::Disconnected);
    }
    let orientable = g.is_bipartite();
    CyclicOrder::all(g.color_count())
        .into_iter()
        .map(|order| {
            let trace = trace_faces(g, &order)?;
            Ok((order, report_from_trace(g, &trace, orientable)))
        })
        .collect()
}
