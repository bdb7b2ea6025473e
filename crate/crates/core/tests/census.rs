//! Type enumeration against a direct search over vertex counts.

use std::collections::BTreeSet;

use gemcore::embedding::{embedding_report, semi_equivelar_type, CyclicOrder};
use gemcore::types::{enumerate_types, EnumerateOptions, TypeSequence};
use gemcore::ColoredGraph;

/// For each even `p` up to `max_p`, every multiset of even divisors `≥ 4`
/// of `p` whose sizes satisfy `p(1 - n/2) + Σ p/q = χ`, an identity in
/// integers. Arrangements are expanded by brute force over permutations.
fn oracle(chi: i64, max_p: usize, max_colors: usize) -> BTreeSet<(Vec<usize>, usize)> {
    let mut out = BTreeSet::new();
    for p in (2..=max_p).step_by(2) {
        let divisors: Vec<usize> = (4..=p).step_by(2).filter(|q| p % q == 0).collect();
        for n in 3..=max_colors {
            if p < n - 1 {
                continue;
            }
            // Σ p/q_i must equal χ + p(n/2 - 1)
            let target = chi + (p * n / 2) as i64 - p as i64;
            if p * n % 2 != 0 || target <= 0 {
                continue;
            }
            let mut picked = Vec::new();
            multisets(&divisors, 0, n, p, target, &mut picked, &mut |m| {
                let mut m = m.to_vec();
                permutations(&mut m, 0, &mut |perm| {
                    out.insert((TypeSequence::normalize(perm).unwrap().faces().to_vec(), p));
                });
            });
        }
    }
    out
}

fn multisets(
    divisors: &[usize],
    from: usize,
    left: usize,
    p: usize,
    target: i64,
    picked: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if left == 0 {
        if target == 0 {
            f(picked);
        }
        return;
    }
    for (i, &q) in divisors.iter().enumerate().skip(from) {
        let term = (p / q) as i64;
        // later terms are no larger than this one and at least 1
        if term * left as i64 >= target && (left as i64) <= target {
            picked.push(q);
            multisets(divisors, i, left - 1, p, target - term, picked, f);
            picked.pop();
        }
    }
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn census(chi: i64) -> BTreeSet<(Vec<usize>, usize)> {
    enumerate_types(chi, &EnumerateOptions::default())
        .unwrap()
        .into_iter()
        .map(|t| (t.seq.faces().to_vec(), t.vertex_count))
        .collect()
}

#[test]
fn census_matches_oracle() {
    // 84|χ| bounds the vertex count of a semi-equivelar map with three
    // colors; more colors only lower it.
    for chi in [-1i64, -2, -3, -4] {
        let max_p = 84 * chi.unsigned_abs() as usize;
        assert_eq!(census(chi), oracle(chi, max_p, 8), "chi = {chi}");
    }
}

#[test]
fn census_sizes() {
    let minus_two = enumerate_types(-2, &EnumerateOptions::default()).unwrap();
    assert_eq!(minus_two.len(), 31);
    let minus_one = enumerate_types(-1, &EnumerateOptions::default()).unwrap();
    let by_colors = |n| minus_one.iter().filter(|t| t.color_count == n).count();
    assert_eq!((by_colors(5), by_colors(4), by_colors(3)), (1, 2, 12));
    let names: Vec<String> = minus_two.iter().map(ToString::to_string).collect();
    for want in ["[(4^5);8]", "[(6^4);6]", "[(4,6,14);168]", "[(4,10,20);20]"] {
        assert!(
            names.iter().any(|n| n == want),
            "{want} missing from {names:?}"
        );
    }
}

#[test]
fn six_colors_excluded_at_minus_two() {
    let opts = EnumerateOptions {
        color_count: Some(6),
        ..EnumerateOptions::default()
    };
    assert!(enumerate_types(-2, &opts).unwrap().is_empty());
}

/// The only six-colored solution is `(4^6)` on 4 vertices, and it is
/// realized: alternate two matchings of four vertices. Requiring `p ≥ d`
/// is what removes it.
#[test]
fn six_colors_on_four_vertices_is_realizable() {
    let opts = EnumerateOptions {
        color_count: Some(6),
        require_vertices_at_least_dimension: false,
        ..EnumerateOptions::default()
    };
    let found = enumerate_types(-2, &opts).unwrap();
    assert_eq!(found.len(), 1);
    assert_eq!(found[0].to_string(), "[(4^6);4]");

    let a = vec![(0, 1), (2, 3)];
    let b = vec![(0, 2), (1, 3)];
    let colors: Vec<_> = (0..6)
        .map(|c| if c % 2 == 0 { a.clone() } else { b.clone() })
        .collect();
    let g = ColoredGraph::from_pairs(4, &colors).unwrap();
    let order = CyclicOrder::identity(6);
    assert_eq!(
        semi_equivelar_type(&g, &order).unwrap().unwrap().raw,
        vec![4; 6]
    );
    assert_eq!(embedding_report(&g, &order).unwrap().chi, -2);
}
