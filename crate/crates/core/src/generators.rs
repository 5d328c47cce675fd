//! Constructions of the twisted layered loop family and of standalone
//! layered solid tori.

use thiserror::Error;

use crate::cohomology::CocycleClass;
use crate::tri::{compute_skeleton, edge_index, face_vertices, Perm, Skeleton, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

fn perm(images: [u8; 4]) -> Perm {
    Perm::new(images).expect("table entries are permutations")
}

/// The twisted layered loop triangulation with `k` tetrahedra.
///
/// Tetrahedron `h - 1` is layered along `e_h`. In its local labels the edge
/// `01` is `e_h`, edges `02` and `13` are `e_{h+1}`, edge `23` is
/// `e_{h+2}`, and edges `12` and `03` carry `t`. Faces 0 and 1 face the next
/// tetrahedron, faces 3 and 2 the previous one; the last tetrahedron closes
/// up onto the first with the twist `e_1 = -e_{k+1}`, `e_2 = -e_{k+2}`,
/// `t = -b`.
pub fn twisted_layered_loop(k: usize) -> Result<Triangulation, GeneratorError> {
    if k < 1 {
        return Err(GeneratorError::BadParameter(format!("k must be at least 1, got {k}")));
    }
    let mut t = Triangulation::with_tets(k);
    for h in 1..k {
        t.glue(h, 3, h - 1, perm([3, 1, 2, 0])).expect("fresh faces");
        t.glue(h, 2, h - 1, perm([0, 2, 1, 3])).expect("fresh faces");
    }
    t.glue(0, 3, k - 1, perm([2, 0, 3, 1])).expect("fresh faces");
    t.glue(0, 2, k - 1, perm([1, 3, 0, 2])).expect("fresh faces");
    Ok(t)
}

/// Edge classes `e_1..e_k` and `t` of a twisted layered loop, looked up
/// through the local labelling documented on [`twisted_layered_loop`].
pub fn twisted_loop_edges(s: &Skeleton) -> (Vec<usize>, usize) {
    let es = (0..s.tet_count()).map(|h| s.edge_between(h, 0, 1)).collect();
    (es, s.edge_between(0, 1, 2))
}

/// The three nonzero classes of H^1 for even `k`: `φ1` is odd exactly on
/// the `e_i`; `φ2` is odd on `t` and the odd-indexed `e_i`; `φ3` on `t` and
/// the even-indexed `e_i`.
pub fn explicit_duals(t: &Triangulation) -> Result<[CocycleClass; 3], GeneratorError> {
    let k = t.tet_count();
    if k == 0 || k % 2 == 1 {
        return Err(GeneratorError::BadParameter(format!("need an even number of tetrahedra, got {k}")));
    }
    let s = compute_skeleton(t).map_err(|e| GeneratorError::BadParameter(e.to_string()))?;
    let (es, tee) = twisted_loop_edges(&s);
    let class = |on_t: bool, on_e: &dyn Fn(usize) -> bool| {
        let mut bits = vec![false; s.edge_count()];
        bits[tee] = on_t;
        for (i, &e) in es.iter().enumerate() {
            bits[e] = on_e(i + 1);
        }
        CocycleClass::from_bits(bits)
    };
    let duals = [
        class(false, &|_| true),
        class(true, &|i| i % 2 == 1),
        class(true, &|i| i % 2 == 0),
    ];
    if let Some(bad) = duals.iter().find_map(|d| d.violated_face(&s)) {
        return Err(GeneratorError::BadParameter(format!(
            "input is not a twisted layered loop: face {bad} violates a dual class"
        )));
    }
    Ok(duals)
}

/// A generated layered solid torus with the bookkeeping used by tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredSolidTorusBuild {
    pub triangulation: Triangulation,
    /// For each layering step, the `(tet, local edge)` layered on, taken in
    /// the tetrahedron below the new one.
    pub layered_on: Vec<(usize, u8)>,
    /// `(tet, local edge)` of the univalent edge: edge `03` of the core, or
    /// the free edge `23` of the last layered tetrahedron.
    pub univalent: (usize, u8),
}

/// The one-tetrahedron core: face 3 glued to face 0 by `0->1, 1->2, 2->3`.
/// Edge degrees are 3 (`01`), 2 (`02`) and 1 (`03`); faces 1 and 2 form the
/// boundary torus.
pub fn lst_core() -> Triangulation {
    let mut t = Triangulation::with_tets(1);
    t.glue(0, 3, 0, perm([1, 2, 3, 0])).expect("fresh faces");
    t
}

/// Layers a new tetrahedron onto boundary edge `{x, y}` of boundary face
/// `face_a` of `top`, whose other boundary face is `face_b`. The new
/// tetrahedron's faces 3 and 2 cover the two boundary faces with its edge
/// `01` on the layered edge.
pub(crate) fn layer_on(t: &mut Triangulation, top: usize, face_a: u8, face_b: u8, x: u8, y: u8) -> usize {
    let s = compute_skeleton(t).expect("layered solid tori are valid");
    let target = s.edge_between(top, x, y);
    let dir_a = s.edge_reversed(top, edge_index(x, y)) ^ (x > y);
    let fb = face_vertices(face_b);
    let (xb, yb) = fb
        .iter()
        .flat_map(|&a| fb.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| {
            a != b
                && s.edge_between(top, a, b) == target
                && (s.edge_reversed(top, edge_index(a, b)) ^ (a > b)) == dir_a
        })
        .expect("each boundary edge appears in both boundary faces");
    let z = 6 - face_a - x - y;
    let zb = 6 - face_b - xb - yb;
    let new = t.add_tet();
    t.glue(new, 3, top, perm([x, y, z, face_a])).expect("boundary face");
    t.glue(new, 2, top, perm([xb, yb, face_b, zb])).expect("boundary face");
    new
}

/// Builds a layered solid torus from the core by layering along the given
/// boundary edges. Choice `i` names edge `i` of the lower-numbered boundary
/// face of the top tetrahedron, with the face's vertices `a < b < c` giving
/// edges `ab`, `ac`, `bc`.
pub fn layered_solid_torus(sequence: &[u8]) -> Result<LayeredSolidTorusBuild, GeneratorError> {
    let mut t = lst_core();
    let mut top = 0;
    let mut layered_on = Vec::new();
    for &choice in sequence {
        if choice > 2 {
            return Err(GeneratorError::BadParameter(format!("layering choice {choice} is not in 0..=2")));
        }
        let free: Vec<u8> = (0..4u8).filter(|&f| t.gluing(top, f).is_none()).collect();
        let (face_a, face_b) = (free[0], free[1]);
        let [a, b, c] = face_vertices(face_a);
        let (x, y) = [(a, b), (a, c), (b, c)][choice as usize];
        layered_on.push((top, edge_index(x, y)));
        top = layer_on(&mut t, top, face_a, face_b, x, y);
    }
    let univalent = if top == 0 { (0, edge_index(0, 3)) } else { (top, edge_index(2, 3)) };
    Ok(LayeredSolidTorusBuild { triangulation: t, layered_on, univalent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::h1_z2;
    use crate::tri::{check_closed_orientable, orientation};

    #[test]
    fn loops_are_closed_orientable_one_vertex() {
        for k in 1..=40 {
            let t = twisted_layered_loop(k).unwrap();
            assert_eq!(t.tet_count(), k);
            check_closed_orientable(&t).unwrap();
            let s = compute_skeleton(&t).unwrap();
            assert_eq!(s.vertex_count(), 1, "k={k}");
            assert_eq!(s.euler_characteristic(), 0);
            assert!(s.links_are_manifold());
        }
        assert!(twisted_layered_loop(0).is_err());
    }

    #[test]
    fn loop_edges_and_degrees() {
        for k in 2..=12 {
            let s = compute_skeleton(&twisted_layered_loop(k).unwrap()).unwrap();
            let (es, tee) = twisted_loop_edges(&s);
            assert_eq!(s.edge_count(), k + 1);
            assert_eq!(s.degree(tee), 2 * k);
            for &e in &es {
                assert_eq!(s.degree(e), 4, "k={k}");
            }
        }
    }

    #[test]
    fn duals_only_for_even_k() {
        for k in (2..=20).step_by(2) {
            let t = twisted_layered_loop(k).unwrap();
            let [a, b, c] = explicit_duals(&t).unwrap();
            assert_eq!(a.sum(&b), c);
            let h = h1_z2(&compute_skeleton(&t).unwrap());
            assert_eq!(h.rank(), 2);
        }
        for k in [1, 3, 5] {
            assert!(explicit_duals(&twisted_layered_loop(k).unwrap()).is_err());
        }
    }

    #[test]
    fn lst_boundary_is_a_one_vertex_torus() {
        for seq in [vec![], vec![0], vec![1], vec![2], vec![0, 1, 2, 0], vec![2, 2, 1, 0, 1, 2, 0]] {
            let b = layered_solid_torus(&seq).unwrap();
            let t = &b.triangulation;
            assert_eq!(t.tet_count(), seq.len() + 1);
            orientation(t).unwrap();
            let s = compute_skeleton(t).unwrap();
            assert_eq!(s.vertex_count(), 1);
            assert_eq!(s.vertices[0].link_euler, 1);
            assert_eq!(t.boundary_faces().len(), 2);
            assert_eq!(s.edges.iter().filter(|e| e.boundary).count(), 3);
            assert_eq!(s.degree(s.edge_of(b.univalent.0, b.univalent.1)), 1);
            assert_eq!(h1_z2(&s).rank(), 1);
        }
        assert!(layered_solid_torus(&[3]).is_err());
    }

    #[test]
    fn layering_on_the_degree_two_edge_gives_an_interior_degree_three_edge() {
        let core = compute_skeleton(&lst_core()).unwrap();
        // face 1 of the core has vertices 0, 2, 3; choice 0 is edge 02
        assert_eq!(core.degree(core.edge_between(0, 0, 2)), 2);
        let b = layered_solid_torus(&[0]).unwrap();
        let s = compute_skeleton(&b.triangulation).unwrap();
        let e = s.edge_between(0, 0, 2);
        assert_eq!(s.degree(e), 3);
        assert!(!s.edges[e].boundary);
        let mut boundary: Vec<_> = s.edges.iter().filter(|e| e.boundary).map(|e| e.degree()).collect();
        boundary.sort();
        assert_eq!(boundary, vec![1, 3, 5]);
    }
}
