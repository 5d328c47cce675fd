mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use z2norm::tri::{are_isomorphic, compute_skeleton, parse_triangulation, serialize, Perm, Triangulation};

fn relabel(t: &Triangulation, seed: u64) -> Triangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..t.tet_count()).collect();
    order.shuffle(&mut rng);
    let perms: Vec<Perm> = Perm::all().collect();
    let maps: Vec<Perm> = (0..t.tet_count()).map(|_| *perms.choose(&mut rng).unwrap()).collect();
    t.relabelled(&order, &maps)
}

#[test]
fn closed_corpus_has_zero_euler_characteristic() {
    for (name, t) in common::closed_corpus() {
        let s = compute_skeleton(&t).unwrap();
        let chi = s.vertex_count() as i64 - s.edge_count() as i64 + s.face_count() as i64 - t.tet_count() as i64;
        assert_eq!(chi, 0, "{name}");
        assert_eq!(s.face_count(), 2 * t.tet_count(), "{name}");
    }
}

#[test]
fn fixtures_are_canonical_documents() {
    for (name, t) in common::fixtures() {
        let text = std::fs::read_to_string(common::fixture_dir().join(&name)).unwrap();
        assert_eq!(serialize(&t), text, "{name}");
    }
}

#[test]
fn skeleton_numbering_is_deterministic() {
    for (name, t) in common::closed_corpus() {
        let a = compute_skeleton(&t).unwrap();
        let b = compute_skeleton(&t).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_then_parse_is_identity(idx in 0usize..64, seed in any::<u64>()) {
        let corpus = common::closed_corpus();
        let (_, t) = &corpus[idx % corpus.len()];
        let t = relabel(t, seed);
        let text = serialize(&t);
        let back = parse_triangulation(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(idx in 0usize..64, seed in any::<u64>()) {
        let corpus = common::closed_corpus();
        let (_, t) = &corpus[idx % corpus.len()];
        let u = relabel(t, seed);
        prop_assert!(are_isomorphic(t, t).is_some());
        let there = are_isomorphic(t, &u).expect("relabelling is an isomorphism");
        prop_assert!(there.verify(t, &u));
        let back = are_isomorphic(&u, t).expect("symmetric");
        prop_assert!(back.verify(&u, t));
    }

    #[test]
    fn boundary_partial_gluings_round_trip(len in 0usize..6, seed in any::<u64>()) {
        let seq: Vec<u8> = (0..len).map(|i| ((seed >> (2 * i)) % 3) as u8).collect();
        let t = z2norm::generators::layered_solid_torus(&seq).unwrap().triangulation;
        let t = relabel(&t, seed);
        prop_assert_eq!(parse_triangulation(&serialize(&t)).unwrap(), t);
    }
}

#[test]
fn different_sizes_are_not_isomorphic() {
    let a = z2norm::generators::twisted_layered_loop(2).unwrap();
    let b = z2norm::generators::twisted_layered_loop(4).unwrap();
    assert!(are_isomorphic(&a, &b).is_none());
}
