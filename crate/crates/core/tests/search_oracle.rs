//! The backtracking search against naive enumeration of every combination of
//! perfect matchings.

mod common;

use std::collections::BTreeSet;

use common::*;
use gemcore::complex::{check_3manifold, check_residues_sphere, homology, CellComplex};
use gemcore::embedding::{semi_equivelar_type, CyclicOrder};
use gemcore::graph::{canonical_code, residue_stats};
use gemcore::search::{count_nonisomorphic, search_gems, SearchSpec};
use gemcore::ColoredGraph;

/// One typed graph from the naive enumeration.
struct Record {
    seq: Vec<usize>,
    connected: bool,
    bipartite: bool,
    three_manifold: bool,
    residues_sphere: bool,
    code: String,
}

/// Every combination of perfect matchings on `p` vertices, one per color,
/// with no symmetry breaking at all; only graphs with a type are kept.
fn naive_catalogue(n: usize, p: usize) -> Vec<Record> {
    let ms = all_matchings(p);
    let order = CyclicOrder::identity(n);
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let g =
            ColoredGraph::from_involutions(idx.iter().map(|&i| ms[i].clone()).collect()).unwrap();
        if let Some(seq) = raw_type(&g, &order) {
            out.push(Record {
                seq,
                connected: g.is_connected(),
                bipartite: g.is_bipartite(),
                three_manifold: n == 4 && check_3manifold(&g).unwrap().holds,
                residues_sphere: n == 5 && check_residues_sphere(&g).unwrap().holds,
                code: canonical_code(&g).to_string(),
            });
        }
        // odometer
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < ms.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            return out;
        }
    }
}

fn naive(catalogue: &[Record], spec: &SearchSpec) -> BTreeSet<String> {
    let f = &spec.filters;
    catalogue
        .iter()
        .filter(|r| {
            r.seq == spec.seq
                && (!f.require_connected || r.connected)
                && (!f.require_bipartite || r.bipartite)
                && (!f.require_3manifold || r.three_manifold)
                && (!f.require_residues_sphere || r.residues_sphere)
        })
        .map(|r| r.code.clone())
        .collect()
}

/// Cycle lengths per consecutive pair, computed directly, without the
/// embedding module's connectivity requirement.
fn raw_type(g: &ColoredGraph, order: &CyclicOrder) -> Option<Vec<usize>> {
    let n = order.len();
    (0..n)
        .map(|i| {
            let (a, b) = order.pair(i);
            let mut lens = BTreeSet::new();
            let mut seen = vec![false; g.vertex_count()];
            for s in 0..g.vertex_count() {
                if seen[s] {
                    continue;
                }
                let (mut v, mut len, mut col) = (s, 0, a);
                loop {
                    seen[v] = true;
                    len += 1;
                    v = g.partner(col, v);
                    col = if col == a { b } else { a };
                    if v == s && col == a {
                        break;
                    }
                }
                lens.insert(len);
            }
            (lens.len() == 1).then(|| *lens.first().unwrap())
        })
        .collect()
}

fn searched(spec: &SearchSpec) -> BTreeSet<String> {
    let out = search_gems(spec).unwrap();
    assert!(out.exhausted);
    let codes: BTreeSet<String> = out
        .solutions
        .iter()
        .map(|g| canonical_code(g).to_string())
        .collect();
    assert_eq!(codes.len(), out.solutions.len(), "dedup left duplicates");
    codes
}

fn variants(seq: &[usize], p: usize) -> Vec<SearchSpec> {
    let base = SearchSpec::new(seq, p);
    vec![
        base.clone(),
        base.clone().bipartite(),
        base.clone().allow_disconnected(),
        base.allow_disconnected().bipartite(),
    ]
}

#[test]
fn three_colors_up_to_eight_vertices() {
    let sizes = [4, 6, 8];
    let mut nonempty = 0;
    for p in [4, 6, 8] {
        let catalogue = naive_catalogue(3, p);
        for &a in &sizes {
            for &b in &sizes {
                for &c in &sizes {
                    if a.max(b).max(c) > p {
                        continue;
                    }
                    for spec in variants(&[a, b, c], p) {
                        let want = naive(&catalogue, &spec);
                        nonempty += usize::from(!want.is_empty());
                        assert_eq!(
                            searched(&spec),
                            want,
                            "{:?} p={p} {:?}",
                            spec.seq,
                            spec.filters
                        );
                    }
                }
            }
        }
    }
    assert!(nonempty > 10);
}

#[test]
fn four_colors_up_to_six_vertices() {
    let sizes = [4, 6];
    for p in [4, 6] {
        let catalogue = naive_catalogue(4, p);
        for a in sizes {
            for b in sizes {
                for c in sizes {
                    for d in sizes {
                        if [a, b, c, d].iter().any(|&q| q > p) {
                            continue;
                        }
                        let mut specs = variants(&[a, b, c, d], p);
                        specs.push(SearchSpec::new(&[a, b, c, d], p).three_manifold());
                        for spec in specs {
                            assert_eq!(
                                searched(&spec),
                                naive(&catalogue, &spec),
                                "{:?} p={p}",
                                spec.seq
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn five_colors_on_four_vertices() {
    let catalogue = naive_catalogue(5, 4);
    for spec in variants(&[4; 5], 4) {
        assert_eq!(searched(&spec), naive(&catalogue, &spec));
    }
    let spec = SearchSpec::new(&[4; 5], 4).residues_sphere();
    assert_eq!(searched(&spec), naive(&catalogue, &spec));
}

#[test]
fn cube_is_the_only_bipartite_4_4_4() {
    let spec = SearchSpec::new(&[4, 4, 4], 8).bipartite();
    assert_eq!(count_nonisomorphic(&spec).unwrap(), 1);
    let cube = gemcore::fixtures::cube();
    assert_eq!(
        searched(&spec),
        BTreeSet::from([canonical_code(&cube).to_string()])
    );
}

#[test]
fn ten_vertex_decagons_exhaust() {
    let spec = SearchSpec::new(&[10, 10, 10], 10);
    let n = count_nonisomorphic(&spec).unwrap();
    assert!(n >= 1);
    let orientable = count_nonisomorphic(&spec.clone().bipartite()).unwrap();
    assert!(orientable >= 1 && orientable <= n);
}

/// Solutions re-verify through the independent checks.
#[test]
fn solutions_are_sound() {
    let specs = [
        SearchSpec::new(&[6, 6, 6, 6], 6)
            .three_manifold()
            .bipartite(),
        SearchSpec::new(&[4, 6, 4, 6], 12).three_manifold(),
        SearchSpec::new(&[4, 4, 6, 6], 12).three_manifold(),
        SearchSpec::new(&[4, 4, 4, 4, 4], 8).residues_sphere(),
        SearchSpec::new(&[12, 12, 6], 12).bipartite(),
    ];
    for spec in specs {
        let out = search_gems(&spec).unwrap();
        assert!(out.exhausted && !out.solutions.is_empty());
        let order = CyclicOrder::identity(spec.color_count());
        for g in &out.solutions {
            assert!(g.is_connected());
            let ty = semi_equivelar_type(g, &order).unwrap().expect("typed");
            assert_eq!(ty.raw, spec.seq);
            if spec.filters.require_bipartite {
                assert!(g.is_bipartite());
            }
            if spec.filters.require_3manifold {
                assert!(check_3manifold(g).unwrap().holds);
            }
            if spec.filters.require_residues_sphere {
                assert!(check_residues_sphere(g).unwrap().holds);
            }
            assert!(CellComplex::build(g).boundary_squares_to_zero());
        }
    }
}

#[test]
fn six_four_residue_parameters_are_forced() {
    let out = search_gems(&SearchSpec::new(&[6, 6, 6, 6], 6).three_manifold()).unwrap();
    assert_eq!(out.solutions.len(), 1);
    let g = &out.solutions[0];
    let s = residue_stats(g);
    for (pair, want) in [
        ([0, 1], 1),
        ([1, 2], 1),
        ([2, 3], 1),
        ([0, 3], 1),
        ([1, 3], 3),
        ([0, 2], 3),
    ] {
        assert_eq!(s.get(&pair), Some(want), "g{pair:?}");
    }
    assert!(s.of_size(3).all(|(_, k)| k == 1));
    assert!(homology(&CellComplex::build(g)).is_homology_sphere());
}
