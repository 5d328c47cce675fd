use std::collections::BTreeMap;

use super::{edge_index, face_vertices, TriError, Triangulation, EDGE_VERTICES};
use crate::uf::ParityUnionFind;

/// An edge of the triangulation: the set of tetrahedron edges identified to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClass {
    /// `(tet, local edge)` pre-images, ascending.
    pub slots: Vec<(usize, u8)>,
    /// Whether each slot runs against the class orientation (the
    /// orientation of `slots[0]`, low vertex to high vertex).
    pub reversed: Vec<bool>,
    pub tail: usize,
    pub head: usize,
    pub boundary: bool,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.slots.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClass {
    pub slots: Vec<(usize, u8)>,
    pub boundary: bool,
    /// Euler characteristic of the vertex link.
    pub link_euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceClass {
    /// One slot for a boundary face, two for an interior one.
    pub slots: Vec<(usize, u8)>,
    /// Edge classes of the face as seen from `slots[0]`, with multiplicity.
    pub edges: [usize; 3],
}

impl FaceClass {
    pub fn is_boundary(&self) -> bool {
        self.slots.len() == 1
    }
}

/// Vertex, edge and face classes of a triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    tet_count: usize,
    pub edges: Vec<EdgeClass>,
    pub vertices: Vec<VertexClass>,
    pub faces: Vec<FaceClass>,
    edge_of: Vec<[usize; 6]>,
    edge_rev: Vec<[bool; 6]>,
    vertex_of: Vec<[usize; 4]>,
    face_of: Vec<[usize; 4]>,
}

impl Skeleton {
    pub fn tet_count(&self) -> usize {
        self.tet_count
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// V - E + F - T.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
            - self.tet_count as i64
    }

    /// Edge class of local edge `e` of tetrahedron `tet`.
    pub fn edge_of(&self, tet: usize, e: u8) -> usize {
        self.edge_of[tet][e as usize]
    }

    pub fn edge_reversed(&self, tet: usize, e: u8) -> bool {
        self.edge_rev[tet][e as usize]
    }

    pub fn edge_between(&self, tet: usize, a: u8, b: u8) -> usize {
        self.edge_of(tet, edge_index(a, b))
    }

    pub fn vertex_of(&self, tet: usize, v: u8) -> usize {
        self.vertex_of[tet][v as usize]
    }

    pub fn face_of(&self, tet: usize, f: u8) -> usize {
        self.face_of[tet][f as usize]
    }

    pub fn degree(&self, edge: usize) -> usize {
        self.edges[edge].degree()
    }

    /// Number of edge classes of each degree.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for e in &self.edges {
            *h.entry(e.degree()).or_insert(0) += 1;
        }
        h
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.edges.iter().map(EdgeClass::degree).min()
    }

    /// True when every vertex link is a sphere (closed) or a disc (boundary).
    pub fn links_are_manifold(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| if v.boundary { v.link_euler == 1 } else { v.link_euler == 2 })
    }
}

fn number_classes(roots: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut ids = BTreeMap::new();
    let mut out = Vec::new();
    for r in roots {
        let next = ids.len();
        out.push(*ids.entry(r).or_insert(next));
    }
    (out, ids.len())
}

/// Builds the skeleton by union-find over tetrahedron edge and vertex slots.
/// Classes are numbered in order of their lowest `(tet, slot)` member.
pub fn compute_skeleton(t: &Triangulation) -> Result<Skeleton, TriError> {
    let n = t.tet_count();
    let mut edge_uf = ParityUnionFind::new(6 * n);
    let mut vert_uf = ParityUnionFind::new(4 * n);

    for tet in 0..n {
        for f in 0..4u8 {
            let Some(g) = t.gluing(tet, f) else { continue };
            // each pair is visited from both sides; once suffices
            if (g.tet, g.perm.apply(f)) < (tet, f) {
                continue;
            }
            let fv = face_vertices(f);
            for &v in &fv {
                vert_uf.union(4 * tet + v as usize, 4 * g.tet + g.perm.apply(v) as usize, false);
            }
            for (i, &a) in fv.iter().enumerate() {
                for &b in &fv[i + 1..] {
                    let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                    let here = 6 * tet + edge_index(a, b) as usize;
                    let there = 6 * g.tet + edge_index(pa, pb) as usize;
                    if !edge_uf.union(here, there, pa > pb) {
                        return Err(TriError::InvalidEdge { tet, edge: edge_index(a, b) });
                    }
                }
            }
        }
    }

    let edge_roots: Vec<(usize, bool)> = (0..6 * n).map(|s| edge_uf.find(s)).collect();
    let (edge_ids, edge_count) = number_classes(edge_roots.iter().map(|r| r.0));
    let (vert_ids, vert_count) = number_classes((0..4 * n).map(|s| vert_uf.find(s).0));

    let mut edge_of = vec![[0usize; 6]; n];
    let mut edge_rev = vec![[false; 6]; n];
    let mut vertex_of = vec![[0usize; 4]; n];
    let mut edges: Vec<EdgeClass> = (0..edge_count)
        .map(|_| EdgeClass { slots: Vec::new(), reversed: Vec::new(), tail: 0, head: 0, boundary: false })
        .collect();
    let mut rep_parity = vec![None; edge_count];
    for s in 0..6 * n {
        let (tet, e) = (s / 6, (s % 6) as u8);
        let id = edge_ids[s];
        let par = edge_roots[s].1;
        let rep = *rep_parity[id].get_or_insert(par);
        let rev = par ^ rep;
        edge_of[tet][e as usize] = id;
        edge_rev[tet][e as usize] = rev;
        edges[id].slots.push((tet, e));
        edges[id].reversed.push(rev);
    }
    for s in 0..4 * n {
        vertex_of[s / 4][s % 4] = vert_ids[s];
    }
    for e in edges.iter_mut() {
        let (tet, le) = e.slots[0];
        let (a, b) = EDGE_VERTICES[le as usize];
        e.tail = vertex_of[tet][a as usize];
        e.head = vertex_of[tet][b as usize];
    }

    let mut face_of = vec![[usize::MAX; 4]; n];
    let mut faces = Vec::new();
    for tet in 0..n {
        for f in 0..4u8 {
            if face_of[tet][f as usize] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut slots = vec![(tet, f)];
            face_of[tet][f as usize] = id;
            if let Some(g) = t.gluing(tet, f) {
                let other = (g.tet, g.perm.apply(f));
                face_of[other.0][other.1 as usize] = id;
                slots.push(other);
            }
            let [a, b, c] = face_vertices(f);
            let e = |x, y| edge_of[tet][edge_index(x, y) as usize];
            faces.push(FaceClass { slots, edges: [e(a, b), e(a, c), e(b, c)] });
        }
    }

    let mut vertices: Vec<VertexClass> = (0..vert_count)
        .map(|_| VertexClass { slots: Vec::new(), boundary: false, link_euler: 0 })
        .collect();
    for tet in 0..n {
        for v in 0..4u8 {
            let id = vertex_of[tet][v as usize];
            vertices[id].slots.push((tet, v));
            vertices[id].link_euler += 1;
        }
    }
    for face in &faces {
        let (tet, f) = face.slots[0];
        for v in face_vertices(f) {
            let vid = vertex_of[tet][v as usize];
            vertices[vid].link_euler -= 1;
            if face.is_boundary() {
                vertices[vid].boundary = true;
            }
        }
        if face.is_boundary() {
            for &e in &face.edges {
                edges[e].boundary = true;
            }
        }
    }
    for e in &edges {
        vertices[e.tail].link_euler += 1;
        vertices[e.head].link_euler += 1;
    }

    Ok(Skeleton { tet_count: n, edges, vertices, faces, edge_of, edge_rev, vertex_of, face_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tri::{parse_triangulation, Perm};

    #[test]
    fn lone_tetrahedron() {
        let t = Triangulation::with_tets(1);
        let s = compute_skeleton(&t).unwrap();
        assert_eq!(s.edge_count(), 6);
        assert!(s.edges.iter().all(|e| e.degree() == 1 && e.boundary));
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.face_count(), 4);
        assert_eq!(s.euler_characteristic(), 1);
        assert!(s.links_are_manifold());
    }

    #[test]
    fn one_tetrahedron_solid_torus() {
        // face 3 -> face 0 via 0->1, 1->2, 2->3: edge degrees 3, 2, 1
        let t = parse_triangulation("tri v1 1\nt0: 0/3012 - - 0/1230\n").unwrap();
        let s = compute_skeleton(&t).unwrap();
        assert_eq!(s.vertex_count(), 1);
        let mut degrees: Vec<_> = s.edges.iter().map(EdgeClass::degree).collect();
        degrees.sort();
        assert_eq!(degrees, vec![1, 2, 3]);
        assert_eq!(s.euler_characteristic(), 0);
        assert!(s.vertices[0].boundary);
        assert_eq!(s.vertices[0].link_euler, 1);
    }

    #[test]
    fn reversed_edge_is_invalid() {
        // face 3 (0,1,2) onto face 2 (0,1,3) swapping 0 and 1 reverses edge 01
        let mut t = Triangulation::with_tets(1);
        t.glue(0, 3, 0, Perm::new([1, 0, 3, 2]).unwrap()).unwrap();
        assert!(matches!(compute_skeleton(&t), Err(TriError::InvalidEdge { .. })));
    }

    #[test]
    fn numbering_follows_lowest_slot() {
        let t = parse_triangulation("tri v1 1\nt0: 0/3012 - - 0/1230\n").unwrap();
        let s = compute_skeleton(&t).unwrap();
        assert_eq!(s.edge_of(0, 0), 0);
        for (id, e) in s.edges.iter().enumerate() {
            assert_eq!(s.edge_of(e.slots[0].0, e.slots[0].1), id);
            assert!(!e.reversed[0]);
        }
        let firsts: Vec<_> = s.edges.iter().map(|e| e.slots[0]).collect();
        let mut sorted = firsts.clone();
        sorted.sort();
        assert_eq!(firsts, sorted);
    }
}
