//! Canonical codes for isomorph rejection.
//!
//! For a connected colored graph the breadth-first walk that scans colors in
//! increasing order labels every vertex once a base vertex is fixed, because
//! each vertex has exactly one neighbour per color. Serialising the
//! relabelled involution arrays for every base vertex and keeping the least
//! one gives an exact invariant. Disconnected graphs are coded component by
//! component.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ColoredGraph;

/// Text token identifying a colored graph up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Which isomorphisms the code quotients by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CanonMode {
    /// Vertex relabelings that keep every color.
    #[default]
    ColorPreserving,
    /// Additionally the rotations and reflections of the cyclic color order
    /// `(0, 1, .., d)`.
    CyclicColorSymmetry,
}

pub fn canonical_code(g: &ColoredGraph) -> CanonicalCode {
    canonical_code_with(g, CanonMode::ColorPreserving)
}

pub fn canonical_code_with(g: &ColoredGraph, mode: CanonMode) -> CanonicalCode {
    match mode {
        CanonMode::ColorPreserving => CanonicalCode(render(g, &component_codes(g))),
        CanonMode::CyclicColorSymmetry => {
            let n = g.color_count();
            let mut best: Option<Vec<Vec<u32>>> = None;
            for shift in 0..n {
                for reflect in [false, true] {
                    let perm: Vec<usize> = (0..n)
                        .map(|c| {
                            let r = if reflect { (n - c) % n } else { c };
                            (r + shift) % n
                        })
                        .collect();
                    let codes = component_codes(&g.permute_colors(&perm));
                    if best.as_ref().is_none_or(|b| codes < *b) {
                        best = Some(codes);
                    }
                }
            }
            CanonicalCode(render(g, &best.unwrap_or_default()))
        }
    }
}

fn render(g: &ColoredGraph, comps: &[Vec<u32>]) -> String {
    let body: Vec<String> = comps
        .iter()
        .map(|c| c.iter().map(u32::to_string).collect::<Vec<_>>().join("."))
        .collect();
    format!(
        "{}c{}v:{}",
        g.color_count(),
        g.vertex_count(),
        body.join("|")
    )
}

/// Least serialisation of each connected component, sorted.
fn component_codes(g: &ColoredGraph) -> Vec<Vec<u32>> {
    let mut codes: Vec<Vec<u32>> = g
        .components()
        .iter()
        .map(|comp| component_code(g, comp))
        .collect();
    codes.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    codes
}

fn component_code(g: &ColoredGraph, comp: &[usize]) -> Vec<u32> {
    let n = g.color_count();
    let p = g.vertex_count();
    let k = comp.len();
    let mut label = vec![u32::MAX; p];
    let mut order = Vec::with_capacity(k);
    let mut queue = VecDeque::with_capacity(k);
    let mut best: Option<Vec<u32>> = None;
    let mut current = Vec::with_capacity(n * k);

    for &base in comp {
        for &v in comp {
            label[v] = u32::MAX;
        }
        order.clear();
        queue.clear();
        label[base] = 0;
        order.push(base);
        queue.push_back(base);
        while let Some(x) = queue.pop_front() {
            for c in 0..n {
                let y = g.partner(c, x);
                if label[y] == u32::MAX {
                    label[y] = order.len() as u32;
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }

        // Compare while serialising so losing candidates stop early.
        current.clear();
        let mut better = best.is_none();
        let mut worse = false;
        'outer: for c in 0..n {
            for &v in &order {
                let val = label[g.partner(c, v)];
                if !better {
                    let b = best.as_ref().map(|b| b[current.len()]).unwrap_or(u32::MAX);
                    if val > b {
                        worse = true;
                        break 'outer;
                    }
                    if val < b {
                        better = true;
                    }
                }
                current.push(val);
            }
        }
        if !worse && better {
            best = Some(current.clone());
        }
    }
    best.unwrap_or_default()
}
