//! Triangulation kernel: face-pairing data model, TRI-v1 text format,
//! skeleton, orientation and isomorphism testing.
//!
//! Conventions: each tetrahedron has vertices `0..4`; face `i` is the face
//! opposite vertex `i`. A gluing of face `f` of tetrahedron `t` records the
//! target tetrahedron and the full permutation `p` of vertex labels, with
//! `p(f)` the target face. The six edges of a tetrahedron are indexed as in
//! [`EDGE_VERTICES`], so edges `e` and `5 - e` are opposite.

mod format;
mod iso;
mod orient;
mod perm;
mod skeleton;

pub use format::{parse_triangulation, serialize};
pub use iso::{are_isomorphic, Isomorphism};
pub use orient::{check_closed_orientable, orientation, OrientationAssignment};
pub use perm::{ParsePermError, Perm};
pub use skeleton::{compute_skeleton, EdgeClass, FaceClass, Skeleton, VertexClass};

use thiserror::Error;

/// Vertex pairs of the six local edges.
pub const EDGE_VERTICES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Local edge index of the unordered vertex pair `{a, b}`.
pub fn edge_index(a: u8, b: u8) -> u8 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    match (lo, hi) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {a}{b}"),
    }
}

/// The three vertices of face `f`, ascending.
pub fn face_vertices(f: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut n = 0;
    for v in 0..4u8 {
        if v != f {
            out[n] = v;
            n += 1;
        }
    }
    out
}

/// The face containing the three given vertices.
pub fn face_opposite_complement(a: u8, b: u8, c: u8) -> u8 {
    6 - a - b - c
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("gluing of tetrahedron {tet} face {face} is not matched by its inverse")]
    NonInvolutiveGluing { tet: usize, face: u8 },
    #[error("tetrahedron {tet} face {face} is glued to itself")]
    FaceGluedToItself { tet: usize, face: u8 },
    #[error("tetrahedron {tet} face {face} refers to tetrahedron {target}, out of range")]
    IndexOutOfRange { tet: usize, face: u8, target: usize },
    #[error("face {face} of tetrahedron {tet} is already glued")]
    AlreadyGlued { tet: usize, face: u8 },
    #[error("edge {edge} of tetrahedron {tet} is identified with itself in reverse")]
    InvalidEdge { tet: usize, edge: u8 },
    #[error("tetrahedron {tet} face {face} is a boundary face")]
    NotClosed { tet: usize, face: u8 },
    #[error("triangulation is non-orientable (witness cycle through {} gluings)", witness.len())]
    NonOrientable { witness: Vec<(usize, u8)> },
}

/// Destination of a face gluing: target tetrahedron and vertex map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm,
}

/// A pseudo-simplicial triangulation given by face pairings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
}

impl Triangulation {
    /// `n` tetrahedra with every face on the boundary.
    pub fn with_tets(n: usize) -> Triangulation {
        Triangulation {
            gluings: vec![[None; 4]; n],
        }
    }

    /// Builds a triangulation from a raw gluing table and validates it.
    pub fn from_gluings(gluings: Vec<[Option<Gluing>; 4]>) -> Result<Triangulation, TriError> {
        let t = Triangulation { gluings };
        t.validate()?;
        Ok(t)
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gluings.is_empty()
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Option<Gluing> {
        self.gluings[tet][face as usize]
    }

    pub(crate) fn gluings(&self) -> &[[Option<Gluing>; 4]] {
        &self.gluings
    }

    pub fn add_tet(&mut self) -> usize {
        self.gluings.push([None; 4]);
        self.gluings.len() - 1
    }

    /// Glues face `face` of `tet` to tetrahedron `target` via `perm`, and
    /// records the inverse gluing.
    pub fn glue(&mut self, tet: usize, face: u8, target: usize, perm: Perm) -> Result<(), TriError> {
        let n = self.gluings.len();
        if tet >= n {
            return Err(TriError::IndexOutOfRange { tet, face, target: tet });
        }
        if target >= n {
            return Err(TriError::IndexOutOfRange { tet, face, target });
        }
        let target_face = perm.apply(face);
        if target == tet && target_face == face {
            return Err(TriError::FaceGluedToItself { tet, face });
        }
        if self.gluings[tet][face as usize].is_some() {
            return Err(TriError::AlreadyGlued { tet, face });
        }
        if self.gluings[target][target_face as usize].is_some() {
            return Err(TriError::AlreadyGlued { tet: target, face: target_face });
        }
        self.gluings[tet][face as usize] = Some(Gluing { tet: target, perm });
        self.gluings[target][target_face as usize] = Some(Gluing { tet, perm: perm.inverse() });
        Ok(())
    }

    /// Removes the gluing on `face` of `tet` (and its inverse), if any.
    pub fn unglue(&mut self, tet: usize, face: u8) {
        if let Some(g) = self.gluings[tet][face as usize].take() {
            self.gluings[g.tet][g.perm.apply(face) as usize] = None;
        }
    }

    pub fn is_closed(&self) -> bool {
        self.gluings.iter().all(|g| g.iter().all(Option::is_some))
    }

    pub fn boundary_faces(&self) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        for (t, g) in self.gluings.iter().enumerate() {
            for f in 0..4u8 {
                if g[f as usize].is_none() {
                    out.push((t, f));
                }
            }
        }
        out
    }

    /// Checks the involution and no-self-face invariants.
    pub fn validate(&self) -> Result<(), TriError> {
        let n = self.gluings.len();
        for (t, g) in self.gluings.iter().enumerate() {
            for f in 0..4u8 {
                let Some(glu) = g[f as usize] else { continue };
                if glu.tet >= n {
                    return Err(TriError::IndexOutOfRange { tet: t, face: f, target: glu.tet });
                }
                let tf = glu.perm.apply(f);
                if glu.tet == t && tf == f {
                    return Err(TriError::FaceGluedToItself { tet: t, face: f });
                }
                match self.gluings[glu.tet][tf as usize] {
                    Some(back) if back.tet == t && back.perm == glu.perm.inverse() => {}
                    _ => return Err(TriError::NonInvolutiveGluing { tet: t, face: f }),
                }
            }
        }
        Ok(())
    }

    /// Relabels tetrahedra: old tetrahedron `i` becomes `order[i]`, with its
    /// vertices renamed by `vertex_maps[i]`.
    pub fn relabelled(&self, order: &[usize], vertex_maps: &[Perm]) -> Triangulation {
        let n = self.gluings.len();
        let mut out = vec![[None; 4]; n];
        for t in 0..n {
            let sigma = vertex_maps[t];
            for f in 0..4u8 {
                if let Some(g) = self.gluings[t][f as usize] {
                    let tau = vertex_maps[g.tet];
                    let perm = tau.compose(g.perm).compose(sigma.inverse());
                    out[order[t]][sigma.apply(f) as usize] = Some(Gluing { tet: order[g.tet], perm });
                }
            }
        }
        Triangulation { gluings: out }
    }

    /// The sub-triangulation on the listed tetrahedra, keeping only gluings
    /// between them. Tetrahedron `tets[i]` becomes `i`.
    pub fn restricted_to(&self, tets: &[usize]) -> Triangulation {
        let mut index = vec![usize::MAX; self.gluings.len()];
        for (i, &t) in tets.iter().enumerate() {
            index[t] = i;
        }
        let mut out = vec![[None; 4]; tets.len()];
        for (i, &t) in tets.iter().enumerate() {
            for f in 0..4 {
                if let Some(g) = self.gluings[t][f] {
                    if index[g.tet] != usize::MAX {
                        out[i][f] = Some(Gluing { tet: index[g.tet], perm: g.perm });
                    }
                }
            }
        }
        Triangulation { gluings: out }
    }

    /// Tetrahedra grouped by face-adjacency.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.gluings.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let t = comp[i];
                i += 1;
                for g in self.gluings[t].iter().flatten() {
                    if !seen[g.tet] {
                        seen[g.tet] = true;
                        comp.push(g.tet);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}
