//! The simplicial cell complex `K(Γ)` of a colored graph, its integer
//! homology, and the manifold criteria for surfaces, 3-manifolds and the
//! 3-residues of 5-colored graphs.
//!
//! Every vertex of `Γ` is a `d`-simplex with vertices labelled `0..=d`; an
//! edge of color `j` glues the two facets opposite label `j`. After gluing,
//! the cells with label set `B` are the connected components of the
//! residue on the complementary colors `Δ_d \ B`. The face of such a cell
//! that drops label `b` is the component of `Γ_{(Δ_d \ B) ∪ {b}}` that
//! contains it, with sign `(-1)^k` where `k` is the position of `b` in `B`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::embedding::{embedding_report, surface_name, CyclicOrder, EmbeddingError};
use crate::graph::{residue_stats, ColorSet, ColoredGraph, GraphError};
use crate::snf::{smith_normal_form, IntMatrix};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// A cell of `K(Γ)`: the component `component` of the residue on the
/// colors complementary to `labels`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cell {
    pub labels: ColorSet,
    pub component: usize,
}

impl Cell {
    pub fn dimension(&self) -> usize {
        self.labels.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct CellComplex {
    dimension: usize,
    /// `cells[k]` lists the `k`-cells.
    cells: Vec<Vec<Cell>>,
    /// `boundary[k]` is `∂_k : C_k → C_{k-1}` for `k ≥ 1` (rows are
    /// `(k-1)`-cells); `boundary[0]` is the empty map.
    boundary: Vec<IntMatrix>,
}

impl CellComplex {
    pub fn build(g: &ColoredGraph) -> CellComplex {
        let n = g.color_count();
        let d = n - 1;
        let masks = 1usize << n;

        // per label set B: residue labels of Γ_{Δ\B}, offset of its cells
        // in cells[|B|-1] and one vertex per component
        let mut labelling: Vec<Option<(Vec<usize>, usize)>> = vec![None; masks];
        let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); n];
        let mut offset = vec![0usize; masks];
        let mut representative: Vec<Vec<usize>> = vec![Vec::new(); masks];

        for size in 1..=n {
            for labels in ColorSet::subsets_of_size(n, size) {
                let (label, count) = g.residue_labels(labels.complement(n));
                let k = size - 1;
                offset[labels.bits() as usize] = cells[k].len();
                let mut reps = vec![usize::MAX; count];
                for (v, &l) in label.iter().enumerate() {
                    if reps[l] == usize::MAX {
                        reps[l] = v;
                    }
                }
                for component in 0..count {
                    cells[k].push(Cell { labels, component });
                }
                representative[labels.bits() as usize] = reps;
                labelling[labels.bits() as usize] = Some((label, count));
            }
        }

        let mut boundary = vec![IntMatrix::zeros(0, cells[0].len())];
        for k in 1..=d {
            let mut m = IntMatrix::zeros(cells[k - 1].len(), cells[k].len());
            for (col, cell) in cells[k].iter().enumerate() {
                let v = representative[cell.labels.bits() as usize][cell.component];
                for (pos, b) in cell.labels.iter().enumerate() {
                    let face = cell.labels.without(b);
                    let (label, _) = labelling[face.bits() as usize]
                        .as_ref()
                        .expect("face labelled");
                    let row = offset[face.bits() as usize] + label[v];
                    m.add(row, col, if pos % 2 == 0 { 1 } else { -1 });
                }
            }
            boundary.push(m);
        }
        debug_assert_eq!(cells[d].len(), g.vertex_count());
        CellComplex {
            dimension: d,
            cells,
            boundary,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn cells(&self, k: usize) -> &[Cell] {
        &self.cells[k]
    }

    /// Number of cells per dimension, `f_0 .. f_d`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k % 2 == 0 {
                    c.len() as i64
                } else {
                    -(c.len() as i64)
                }
            })
            .sum()
    }

    /// `∂_k` for `1 ≤ k ≤ d`.
    pub fn boundary(&self, k: usize) -> &IntMatrix {
        &self.boundary[k]
    }

    /// True iff `∂_{k-1} ∘ ∂_k = 0` for every `k`, checked as exact integer
    /// matrix products.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..=self.dimension).all(|k| {
            self.boundary[k - 1]
                .checked_mul(&self.boundary[k])
                .is_some_and(|m| m.is_zero())
        })
    }
}

pub fn build_complex(g: &ColoredGraph) -> CellComplex {
    CellComplex::build(g)
}

/// One homology group `Z^betti ⊕ Z/t_1 ⊕ … ⊕ Z/t_m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Torsion coefficients, each dividing the next.
    #[serde(serialize_with = "serialize_biguints")]
    pub torsion: Vec<BigUint>,
}

fn serialize_biguints<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match u64::try_from(x) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .filter_map(|t| u64::try_from(t).ok())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// Integer homology `H_0 .. H_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub groups: Vec<HomologyGroup>,
}

impl HomologyProfile {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| {
                if k % 2 == 0 {
                    g.betti as i64
                } else {
                    -(g.betti as i64)
                }
            })
            .sum()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.iter().any(|g| !g.torsion.is_empty())
    }

    /// `(Z, 0, …, 0, Z)` in dimension `d`.
    pub fn is_homology_sphere(&self) -> bool {
        let d = self.groups.len().saturating_sub(1);
        d >= 1
            && self.groups.iter().enumerate().all(|(k, g)| {
                if k == 0 || k == d {
                    g.betti == 1 && g.torsion.is_empty()
                } else {
                    g.is_trivial()
                }
            })
    }

    /// The homology of the sphere `S^d`.
    pub fn sphere(d: usize) -> Self {
        let mut groups = vec![HomologyGroup::default(); d + 1];
        groups[0] = HomologyGroup::free(1);
        groups[d] = HomologyGroup::free(1);
        HomologyProfile { groups }
    }
}

impl fmt::Display for HomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

pub fn homology(k: &CellComplex) -> HomologyProfile {
    let d = k.dimension;
    // forms[k] is the Smith form of ∂_k; ∂_0 and ∂_{d+1} are zero
    let forms: Vec<_> = (1..=d).map(|i| smith_normal_form(&k.boundary[i])).collect();
    let rank = |i: usize| {
        if (1..=d).contains(&i) {
            forms[i - 1].rank()
        } else {
            0
        }
    };
    let groups = (0..=d)
        .map(|i| {
            let betti = k.cells[i].len() - rank(i) - rank(i + 1);
            let torsion = if i < d {
                forms[i].torsion().cloned().collect()
            } else {
                Vec::new()
            };
            HomologyGroup { betti, torsion }
        })
        .collect();
    HomologyProfile { groups }
}

/// Homology of `K(Γ)` for each connected component of `Γ`, keyed by the
/// component's vertex list.
pub fn homology_by_component(g: &ColoredGraph) -> Vec<(Vec<usize>, HomologyProfile)> {
    let full = g.all_colors();
    g.components()
        .into_iter()
        .map(|comp| {
            let sub = g
                .residue_subgraph(full, &comp)
                .expect("components are closed");
            let h = homology(&CellComplex::build(&sub));
            (comp, h)
        })
        .collect()
}

fn require_colors(g: &ColoredGraph, n: usize) -> Result<(), GraphError> {
    if g.color_count() == n {
        Ok(())
    } else {
        Err(GraphError::WrongColorCount {
            expected: n,
            actual: g.color_count(),
        })
    }
}

/// The closed surface a 3-colored graph represents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceDescriptor {
    pub chi: i64,
    pub orientable: bool,
    /// Genus when orientable, crosscap number otherwise.
    pub genus: i64,
}

impl fmt::Display for SurfaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&surface_name(self.orientable, self.genus))
    }
}

/// Every connected 3-colored graph represents the surface it embeds on
/// regularly, so this reads the surface off the unique embedding.
pub fn check_surface(g: &ColoredGraph) -> Result<SurfaceDescriptor, ComplexError> {
    require_colors(g, 3)?;
    let r = embedding_report(g, &CyclicOrder::identity(3))?;
    Ok(SurfaceDescriptor {
        chi: r.chi,
        orientable: r.orientable,
        genus: r.genus,
    })
}

/// `g_ij + g_ik + g_jk` against `2 g_ijk + p/2` for one color triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleCheck {
    pub colors: [usize; 3],
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCheck {
    pub vertex_count: usize,
    pub triples: Vec<TripleCheck>,
    pub holds: bool,
}

/// The 3-manifold criterion for a 4-colored graph. A disconnected input is
/// checked component by component, each with its own vertex count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeManifoldReport {
    pub connected: bool,
    pub components: Vec<ComponentCheck>,
    pub holds: bool,
}

impl ThreeManifoldReport {
    /// Triples of the first (for connected input, the only) component.
    pub fn triples(&self) -> &[TripleCheck] {
        self.components.first().map_or(&[], |c| &c.triples)
    }
}

pub fn check_3manifold(g: &ColoredGraph) -> Result<ThreeManifoldReport, ComplexError> {
    require_colors(g, 4)?;
    let comps = g.components();
    let connected = comps.len() == 1;
    let components: Vec<ComponentCheck> = if connected {
        vec![check_connected_3manifold(g)]
    } else {
        comps
            .iter()
            .map(|c| {
                check_connected_3manifold(&g.residue_subgraph(g.all_colors(), c).expect("closed"))
            })
            .collect()
    };
    let holds = components.iter().all(|c| c.holds);
    Ok(ThreeManifoldReport {
        connected,
        components,
        holds,
    })
}

fn check_connected_3manifold(g: &ColoredGraph) -> ComponentCheck {
    let stats = residue_stats(g);
    let p = g.vertex_count();
    let triples: Vec<TripleCheck> = ColorSet::subsets_of_size(4, 3)
        .map(|set| {
            let c: Vec<usize> = set.iter().collect();
            let pair = |a: usize, b: usize| stats.get(&[a, b]).expect("pair counted");
            let lhs = pair(c[0], c[1]) + pair(c[0], c[2]) + pair(c[1], c[2]);
            let rhs = 2 * stats.count(set).expect("triple counted") + p / 2;
            TripleCheck {
                colors: [c[0], c[1], c[2]],
                lhs,
                rhs,
                holds: lhs == rhs,
            }
        })
        .collect();
    let holds = triples.iter().all(|t| t.holds);
    ComponentCheck {
        vertex_count: p,
        triples,
        holds,
    }
}

/// One 4-colored residue component of a 5-colored graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueCheck {
    /// The color left out.
    pub missing_color: usize,
    pub vertices: Vec<usize>,
    pub three_manifold: bool,
    pub homology: HomologyProfile,
    pub passes: bool,
}

/// Each 4-colored residue component passes the 3-manifold criterion and has
/// the homology of `S^3`. Homology is necessary, not sufficient, for the
/// sphere, so passing reports are "homology-S³".
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueSphereReport {
    pub residues: Vec<ResidueCheck>,
    pub holds: bool,
}

impl ResidueSphereReport {
    pub fn failures(&self) -> impl Iterator<Item = &ResidueCheck> {
        self.residues.iter().filter(|r| !r.passes)
    }
}

pub fn check_residues_sphere(g: &ColoredGraph) -> Result<ResidueSphereReport, ComplexError> {
    require_colors(g, 5)?;
    let mut residues = Vec::new();
    for missing in 0..5 {
        let colors = g.all_colors().without(missing);
        let (label, count) = g.residue_labels(colors);
        for comp_id in 0..count {
            let vertices: Vec<usize> = (0..g.vertex_count())
                .filter(|&v| label[v] == comp_id)
                .collect();
            let sub = g.residue_subgraph(colors, &vertices)?;
            let three_manifold = check_3manifold(&sub)?.holds;
            let homology = homology(&CellComplex::build(&sub));
            let passes = three_manifold && homology.is_homology_sphere();
            residues.push(ResidueCheck {
                missing_color: missing,
                vertices,
                three_manifold,
                homology,
                passes,
            });
        }
    }
    let holds = residues.iter().all(|r| r.passes);
    Ok(ResidueSphereReport { residues, holds })
}
