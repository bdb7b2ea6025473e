use gemcore::complex::{check_residues_sphere, homology, CellComplex};
use gemcore::search::{search_gems, SearchSpec};
use gemcore::ColoredGraph;

fn all(spec: SearchSpec) -> Vec<ColoredGraph> {
    let out = search_gems(&spec.max_solutions(usize::MAX)).unwrap();
    assert!(out.exhausted);
    out.solutions
}

fn h1_torsion(g: &ColoredGraph) -> Vec<u64> {
    homology(&CellComplex::build(g)).groups[1].torsion_u64()
}

#[test]
fn lens_space_among_4_6_4_6() {
    let found = all(SearchSpec::new(&[4, 6, 4, 6], 12).three_manifold());
    assert!(found.iter().any(|g| h1_torsion(g) == vec![3]));
}

#[test]
fn projective_space_among_4_4_6_6() {
    let found = all(SearchSpec::new(&[4, 4, 6, 6], 12).three_manifold());
    assert!(found.iter().any(|g| h1_torsion(g) == vec![2]));
}

/// Doubling color 0 of a projective-space gem gives a 5-colored graph whose
/// residue without the new color is that gem.
#[test]
fn torsion_residue_is_reported() {
    let rp3 = all(SearchSpec::new(&[4, 4, 6, 6], 12).three_manifold())
        .into_iter()
        .find(|g| h1_torsion(g) == vec![2] && homology(&CellComplex::build(g)).groups[3].betti == 1)
        .unwrap();
    let g = rp3.with_extra_color(rp3.involution(0).to_vec()).unwrap();
    let report = check_residues_sphere(&g).unwrap();
    assert!(!report.holds);
    let bad: Vec<_> = report.failures().collect();
    assert!(bad
        .iter()
        .any(|r| r.missing_color == 4 && r.vertices.len() == 12));
    let culprit = bad.iter().find(|r| r.missing_color == 4).unwrap();
    assert!(culprit.three_manifold);
    assert_eq!(culprit.homology.groups[1].torsion_u64(), vec![2]);
}
