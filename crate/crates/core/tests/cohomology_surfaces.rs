mod common;

use z2norm::cohomology::{enumerate_rank2_subgroups, h1_z2};
use z2norm::normal::{canonical_dual_surface, canonical_quad_surface};
use z2norm::tri::compute_skeleton;

#[test]
fn corpus_is_varied() {
    let corpus = common::rank2_corpus();
    let sizes: std::collections::BTreeSet<usize> = corpus.iter().map(|(_, t)| t.tet_count()).collect();
    assert!(sizes.len() >= 6, "{sizes:?}");
    assert!(corpus.iter().any(|(n, _)| n.starts_with("walk")), "no walk kept rank two");
}

#[test]
fn h1_rank_matches_boundary_matrices() {
    for (name, t) in common::closed_corpus() {
        let s = compute_skeleton(&t).unwrap();
        assert_eq!(h1_z2(&s).rank(), common::boundary_matrix_h1_rank(&t), "{name}");
    }
    for (name, t) in common::fixtures() {
        let s = compute_skeleton(&t).unwrap();
        assert_eq!(h1_z2(&s).rank(), common::boundary_matrix_h1_rank(&t), "{name}");
    }
}

#[test]
fn dual_surface_euler_formula_matches_cell_count() {
    for (name, t) in common::closed_corpus() {
        let s = compute_skeleton(&t).unwrap();
        if s.vertex_count() != 1 {
            continue;
        }
        let h = h1_z2(&s);
        for mask in 1..1u64 << h.rank() {
            let phi = h.combination(mask);
            let d = canonical_dual_surface(&s, &t, &phi).unwrap();
            assert_eq!(d.formula_euler, d.complex.euler(), "{name} mask {mask}");
            // the surface meets exactly the odd edges, once each
            assert_eq!(d.complex.vertex_count(), phi.values.count_ones(), "{name} mask {mask}");
            assert!(d.complex.components.iter().all(|c| c.is_closed()), "{name}");
        }
    }
}

#[test]
fn three_embedded_quad_components_satisfy_euler_sum() {
    for (name, t) in common::closed_corpus() {
        let s = compute_skeleton(&t).unwrap();
        let q = canonical_quad_surface(&s, &t).unwrap();
        let three = q.components.len() == 3 && q.all_embedded();
        if s.vertex_count() == 1 && three {
            assert_eq!(t.tet_count() as i64 + q.euler_sum(), 2, "{name}");
            assert_eq!(q.euler_sum_check, Some(true), "{name}");
        }
        // one quad of each type in every tetrahedron
        let quads: u32 = q.components.iter().flat_map(|c| &c.coordinates.tets).map(|x| x[4..].iter().sum::<u32>()).sum();
        assert_eq!(quads as usize, 3 * t.tet_count(), "{name}");
    }
}

#[test]
fn embedded_quad_duals_form_the_subgroup() {
    for (name, t) in common::twisted_loops((2..=16).step_by(2)) {
        let s = compute_skeleton(&t).unwrap();
        let q = canonical_quad_surface(&s, &t).unwrap();
        let h = enumerate_rank2_subgroups(&h1_z2(&s)).unwrap().remove(0);
        let duals: Vec<_> = q.components.iter().map(|c| c.dual.clone().expect("embedded")).collect();
        for phi in &h.classes {
            assert!(duals.contains(phi), "{name}");
        }
    }
}
