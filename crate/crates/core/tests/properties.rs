mod common;

use common::*;
use gemcore::complex::{homology, CellComplex};
use gemcore::embedding::{embedding_report, CyclicOrder};
use gemcore::gemfile::{parse_gem, write_gem};
use gemcore::graph::canonical_code;
use gemcore::snf::{smith_normal_form, IntMatrix};
use num_integer::Integer;
use proptest::prelude::*;
use rand::Rng;

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0;
    for (j, &x) in m[0].iter().enumerate() {
        if x == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &y)| y)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * x * det(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k × k` minors and the factors are `d_k / d_{k-1}`.
fn minor_gcd_factors(m: &[Vec<i64>]) -> Vec<u64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| (w[1] / w[0]) as u64).collect()
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_matches_minor_gcds(m in matrix()) {
        let got = smith_normal_form(&IntMatrix::from_rows(&m)).as_u64().unwrap();
        prop_assert_eq!(got, minor_gcd_factors(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn boundary_squares_to_zero(seed: u64, colors in 3usize..=6, half in 1usize..=6) {
        let g = random_graph(colors, 2 * half, &mut rng(seed));
        let k = CellComplex::build(&g);
        prop_assert!(k.boundary_squares_to_zero());
        prop_assert_eq!(homology(&k).euler_characteristic(), k.euler_characteristic());
        prop_assert_eq!(k.f_vector()[colors - 1], 2 * half);
    }

    #[test]
    fn embedding_and_complex_agree_on_surfaces(seed: u64, half in 1usize..=6) {
        let g = random_connected(3, 2 * half, &mut rng(seed));
        let report = embedding_report(&g, &CyclicOrder::identity(3)).unwrap();
        let k = CellComplex::build(&g);
        prop_assert_eq!(report.chi, k.euler_characteristic());
        prop_assert_eq!(report.orientable, g.is_bipartite());
        let h = homology(&k);
        if report.orientable {
            prop_assert_eq!(h.betti(), vec![1, (2 * report.genus) as usize, 1]);
            prop_assert!(!h.has_torsion());
        } else {
            prop_assert_eq!(h.betti(), vec![1, (report.genus - 1) as usize, 0]);
            prop_assert_eq!(h.groups[1].torsion_u64(), vec![2]);
        }
    }

    #[test]
    fn canonical_code_ignores_vertex_labels(seed: u64, colors in 3usize..=5, half in 1usize..=8) {
        let mut r = rng(seed);
        let g = random_graph(colors, 2 * half, &mut r);
        let mut perm: Vec<usize> = (0..2 * half).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut r);
        prop_assert_eq!(canonical_code(&g), canonical_code(&g.relabel(&perm)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gem_text_round_trips(seed: u64, colors in 2usize..=6, half in 1usize..=10) {
        let g = random_graph(colors, 2 * half, &mut rng(seed));
        let text = write_gem(&g);
        let back = parse_gem(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(write_gem(&back), text);
    }
}

#[test]
fn canonical_code_is_exact_on_six_vertices() {
    // every 3-colored graph on 6 vertices with color 0 fixed
    let p = 6;
    let fixed: Vec<usize> = (0..p).map(|v| v ^ 1).collect();
    let ms = all_matchings(p);
    let mut classes: Vec<(String, Vec<gemcore::ColoredGraph>)> = Vec::new();
    for a in &ms {
        for b in &ms {
            let g =
                gemcore::ColoredGraph::from_involutions(vec![fixed.clone(), a.clone(), b.clone()])
                    .unwrap();
            let code = canonical_code(&g).to_string();
            match classes.iter_mut().find(|(c, _)| *c == code) {
                Some((_, members)) => members.push(g),
                None => classes.push((code, vec![g])),
            }
        }
    }
    for (_, members) in &classes {
        for g in &members[1..] {
            assert!(brute_force_isomorphic(&members[0], g));
        }
    }
    for (i, (_, a)) in classes.iter().enumerate() {
        for (_, b) in &classes[i + 1..] {
            assert!(!brute_force_isomorphic(&a[0], &b[0]));
        }
    }
}

#[test]
fn canonical_code_separates_random_eight_vertex_pairs() {
    let mut r = rng(7);
    for _ in 0..30 {
        let a = random_graph(3, 8, &mut r);
        let b = if r.gen_bool(0.5) {
            let mut perm: Vec<usize> = (0..8).collect();
            rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut r);
            a.relabel(&perm)
        } else {
            random_graph(3, 8, &mut r)
        };
        assert_eq!(
            canonical_code(&a) == canonical_code(&b),
            brute_force_isomorphic(&a, &b)
        );
    }
}
