mod common;

use z2norm::generators::{layered_solid_torus, twisted_layered_loop};
use z2norm::lst::find_maximal_lsts;
use z2norm::tri::compute_skeleton;

#[test]
fn generated_tori_are_recognised_whole() {
    let builds = common::lst_builds(7);
    assert_eq!(builds.len(), (3usize.pow(8) - 1) / 2);
    for (seq, t) in builds {
        let s = compute_skeleton(&t).unwrap();
        let found = find_maximal_lsts(&t, &s);
        assert_eq!(found.len(), 1, "{seq:?}");
        let d = &found[0];
        assert_eq!(d.tets.len(), t.tet_count(), "{seq:?}");
        let build = layered_solid_torus(&seq).unwrap();
        let (tet, e) = build.univalent;
        assert_eq!(d.univalent_edge, s.edge_of(tet, e), "{seq:?}");
        assert_eq!(d.boundary_edges.len(), 3, "{seq:?}");
        let mut lst_degrees: Vec<usize> = d.boundary_edges.iter().map(|e| e.lst_degree).collect();
        lst_degrees.sort_unstable();
        assert_eq!(lst_degrees[0], 1, "{seq:?}");
        let slots: usize = d.boundary_edges.iter().chain(&d.interior_edges).map(|e| e.lst_degree).sum();
        assert_eq!(slots, 6 * t.tet_count(), "{seq:?}");
    }
}

#[test]
fn even_loops_contain_no_layered_tori() {
    for k in (2..=20).step_by(2) {
        let t = twisted_layered_loop(k).unwrap();
        let s = compute_skeleton(&t).unwrap();
        assert!(find_maximal_lsts(&t, &s).is_empty(), "k={k}");
    }
}

#[test]
fn fixtures_contain_their_seeded_torus() {
    for (name, t) in common::fixtures() {
        let Some(rest) = name.strip_prefix("lst-closure-") else { continue };
        let seq_len = rest.split('-').nth(1).unwrap().len();
        let s = compute_skeleton(&t).unwrap();
        let found = find_maximal_lsts(&t, &s);
        assert!(found.iter().any(|d| d.tets.len() > seq_len), "{name}");
        // maximal tori are disjoint
        for (i, a) in found.iter().enumerate() {
            for b in &found[i + 1..] {
                assert!(a.tet_set().is_disjoint(&b.tet_set()), "{name}");
            }
        }
    }
}
