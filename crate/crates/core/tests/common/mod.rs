#![allow(dead_code)]

use gemcore::ColoredGraph;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A uniformly shuffled perfect matching as an involution array.
pub fn random_matching(p: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p).collect();
    order.shuffle(rng);
    let mut inv = vec![0; p];
    for pair in order.chunks(2) {
        inv[pair[0]] = pair[1];
        inv[pair[1]] = pair[0];
    }
    inv
}

pub fn random_graph(colors: usize, p: usize, rng: &mut impl Rng) -> ColoredGraph {
    let partner = (0..colors).map(|_| random_matching(p, rng)).collect();
    ColoredGraph::from_involutions(partner).unwrap()
}

/// Retries until the graph is connected.
pub fn random_connected(colors: usize, p: usize, rng: &mut impl Rng) -> ColoredGraph {
    loop {
        let g = random_graph(colors, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}

/// Every perfect matching of `0..p`, as involution arrays.
pub fn all_matchings(p: usize) -> Vec<Vec<usize>> {
    fn go(inv: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(u) = inv.iter().position(|&x| x == usize::MAX) else {
            out.push(inv.clone());
            return;
        };
        for v in u + 1..inv.len() {
            if inv[v] == usize::MAX {
                inv[u] = v;
                inv[v] = u;
                go(inv, out);
                inv[u] = usize::MAX;
                inv[v] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; p], &mut out);
    out
}

/// Calls `f` with every permutation of `0..n`.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    fn go(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            go(v, k + 1, f);
            v.swap(k, i);
        }
    }
    go(&mut (0..n).collect(), 0, &mut f);
}

/// Isomorphism by trying every vertex bijection.
pub fn brute_force_isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> bool {
    if a.color_count() != b.color_count() || a.vertex_count() != b.vertex_count() {
        return false;
    }
    let mut found = false;
    for_each_permutation(a.vertex_count(), |perm| {
        if !found {
            found = (0..a.color_count()).all(|c| {
                (0..a.vertex_count()).all(|v| perm[a.partner(c, v)] == b.partner(c, perm[v]))
            });
        }
    });
    found
}
