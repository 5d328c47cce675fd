//! Layered solid torus detection, maximal growth and colour typing.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::colouring::{RankTwoColouring, TetType};
use crate::tri::{compute_skeleton, orientation, Perm, Skeleton, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LstError {
    #[error("layered solid torus on tetrahedra {tets:?} mixes tetrahedron types")]
    MixedTypes { tets: Vec<usize> },
    #[error("layered solid torus on tetrahedra {tets:?} has tetrahedra of type {kind:?}, expected II or IV")]
    UnexpectedType { tets: Vec<usize>, kind: TetType },
}

/// Self-gluings `face a -> face b` (with `a < b`) of a single tetrahedron
/// whose quotient is a solid torus bounded by a one-vertex two-triangle
/// torus. Found by exhaustive search over all two-face self-gluings; the
/// unit tests re-derive it.
pub const CORE_GLUINGS: [(u8, u8, [u8; 4]); 12] = [
    (0, 1, [1, 2, 3, 0]),
    (0, 1, [1, 3, 0, 2]),
    (0, 2, [2, 0, 3, 1]),
    (0, 2, [2, 3, 1, 0]),
    (0, 3, [3, 0, 1, 2]),
    (0, 3, [3, 2, 0, 1]),
    (1, 2, [1, 2, 3, 0]),
    (1, 2, [3, 2, 0, 1]),
    (1, 3, [1, 3, 0, 2]),
    (1, 3, [2, 3, 1, 0]),
    (2, 3, [1, 2, 3, 0]),
    (2, 3, [2, 0, 3, 1]),
];

fn is_core_gluing(a: u8, p: Perm) -> bool {
    let b = p.apply(a);
    let (lo, perm) = if a < b { (a, p) } else { (b, p.inverse()) };
    CORE_GLUINGS
        .iter()
        .any(|&(x, _, q)| x == lo && Perm::new(q) == Some(perm))
}

/// A one-tetrahedron core found inside a triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LstCore {
    pub tet: usize,
    /// The self-glued pair, lower face first.
    pub glued_faces: (u8, u8),
}

/// Tetrahedra with two faces glued to each other in a core pattern and the
/// other two faces not glued to each other.
pub fn find_lst_cores(t: &Triangulation) -> Vec<LstCore> {
    let mut out = Vec::new();
    for tet in 0..t.tet_count() {
        for a in 0..4u8 {
            let Some(g) = t.gluing(tet, a) else { continue };
            let b = g.perm.apply(a);
            if g.tet != tet || b < a || !is_core_gluing(a, g.perm) {
                continue;
            }
            let [x, y] = free_pair(a, b);
            if t.gluing(tet, x).is_some_and(|h| h.tet == tet && h.perm.apply(x) == y) {
                continue;
            }
            out.push(LstCore { tet, glued_faces: (a, b) });
        }
    }
    out
}

fn free_pair(a: u8, b: u8) -> [u8; 2] {
    let mut it = (0..4u8).filter(|&f| f != a && f != b);
    [it.next().unwrap(), it.next().unwrap()]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LstEdge {
    /// Edge class in the ambient triangulation.
    pub edge: usize,
    /// Degree within the layered solid torus.
    pub lst_degree: usize,
    /// Degree in the ambient triangulation.
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LstDescriptor {
    /// Core first, then each layered tetrahedron in order.
    pub tets: Vec<usize>,
    /// Ambient edge class layered on at each step.
    pub layering_edges: Vec<usize>,
    pub boundary_edges: Vec<LstEdge>,
    /// Ambient edge class of the boundary edge of degree 1 in the torus.
    pub univalent_edge: usize,
    pub interior_edges: Vec<LstEdge>,
}

impl LstDescriptor {
    pub fn tet_set(&self) -> BTreeSet<usize> {
        self.tets.iter().copied().collect()
    }
}

/// Whether a bounded triangulation looks like a layered solid torus: valid,
/// orientable, one vertex whose link is a disc, two boundary faces and
/// three boundary edges.
pub fn is_lst_like(sub: &Triangulation) -> bool {
    let Ok(s) = compute_skeleton(sub) else { return false };
    s.vertex_count() == 1
        && s.vertices[0].link_euler == 1
        && sub.boundary_faces().len() == 2
        && s.edges.iter().filter(|e| e.boundary).count() == 3
        && orientation(sub).is_ok()
}

/// Boundary faces of the sub-complex on `tets`: faces glued outside it or
/// not glued at all.
fn open_faces(t: &Triangulation, members: &BTreeSet<usize>, tets: &[usize]) -> Vec<(usize, u8)> {
    tets.iter()
        .flat_map(|&tet| (0..4u8).map(move |f| (tet, f)))
        .filter(|&(tet, f)| t.gluing(tet, f).is_none_or(|g| !members.contains(&g.tet)))
        .collect()
}

/// Grows `core` by layering while possible. A tetrahedron layers on when two
/// of its faces are glued to the two open faces of the current torus, its
/// common edge lands on the same boundary edge with the same direction from
/// both sides, and the enlarged complex is still a layered solid torus.
pub fn grow_to_maximal(t: &Triangulation, s: &Skeleton, core: LstCore) -> LstDescriptor {
    let mut tets = vec![core.tet];
    let mut members: BTreeSet<usize> = tets.iter().copied().collect();
    let mut layering_edges = Vec::new();
    loop {
        let open = open_faces(t, &members, &tets);
        let [(ta, fa), (tb, fb)] = open[..] else { break };
        let (Some(ga), Some(gb)) = (t.gluing(ta, fa), t.gluing(tb, fb)) else { break };
        let sigma = ga.tet;
        let (sa, sb) = (ga.perm.apply(fa), gb.perm.apply(fb));
        if gb.tet != sigma || members.contains(&sigma) || sa == sb {
            break;
        }
        // common edge of the two faces of sigma, pulled back to each side
        let [u, v] = free_pair(sa, sb);
        let sub = t.restricted_to(&tets);
        let Ok(sub_s) = compute_skeleton(&sub) else { break };
        let local = |tet: usize| tets.iter().position(|&x| x == tet).unwrap();
        let pull = |tet: usize, g: crate::tri::Gluing| {
            let inv = g.perm.inverse();
            let (a, b) = (inv.apply(u), inv.apply(v));
            let li = local(tet);
            let e = crate::tri::edge_index(a, b);
            (sub_s.edge_of(li, e), sub_s.edge_reversed(li, e) ^ (a > b))
        };
        if pull(ta, ga) != pull(tb, gb) {
            break;
        }
        let layered_edge = s.edge_between(ta, ga.perm.inverse().apply(u), ga.perm.inverse().apply(v));
        let mut grown = tets.clone();
        grown.push(sigma);
        if !is_lst_like(&t.restricted_to(&grown)) {
            break;
        }
        tets = grown;
        members.insert(sigma);
        layering_edges.push(layered_edge);
    }
    describe(t, s, tets, layering_edges)
}

fn describe(t: &Triangulation, s: &Skeleton, tets: Vec<usize>, layering_edges: Vec<usize>) -> LstDescriptor {
    let sub = t.restricted_to(&tets);
    let sub_s = compute_skeleton(&sub).expect("grown complexes are valid");
    let mut boundary_edges = Vec::new();
    let mut interior_edges = Vec::new();
    for class in &sub_s.edges {
        let (li, e) = class.slots[0];
        let edge = s.edge_of(tets[li], e);
        let rec = LstEdge { edge, lst_degree: class.degree(), degree: s.degree(edge) };
        if class.boundary {
            boundary_edges.push(rec);
        } else {
            interior_edges.push(rec);
        }
    }
    let univalent_edge = boundary_edges
        .iter()
        .find(|e| e.lst_degree == 1)
        .map(|e| e.edge)
        .expect("a layered solid torus has a univalent edge");
    LstDescriptor { tets, layering_edges, boundary_edges, univalent_edge, interior_edges }
}

/// Maximal layered solid tori, one per distinct tetrahedron set, ordered by
/// their sorted tetrahedron sets.
pub fn find_maximal_lsts(t: &Triangulation, s: &Skeleton) -> Vec<LstDescriptor> {
    let mut seen = BTreeSet::new();
    let mut out: Vec<LstDescriptor> = find_lst_cores(t)
        .into_iter()
        .map(|core| grow_to_maximal(t, s, core))
        .filter(|d| seen.insert(d.tet_set().into_iter().collect::<Vec<_>>()))
        .collect();
    out.sort_by_key(|d| d.tet_set().into_iter().collect::<Vec<_>>());
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LstClass {
    pub kind: TetType,
    /// Type II with a 0-even boundary edge of ambient degree 4.
    pub ii4: bool,
}

pub fn classify_lst(c: &RankTwoColouring, d: &LstDescriptor) -> Result<LstClass, LstError> {
    let kind = c.tets[d.tets[0]].kind;
    if d.tets.iter().any(|&tet| c.tets[tet].kind != kind) {
        return Err(LstError::MixedTypes { tets: d.tets.clone() });
    }
    if kind != TetType::II && kind != TetType::IV {
        return Err(LstError::UnexpectedType { tets: d.tets.clone(), kind });
    }
    let ii4 = kind == TetType::II
        && d.boundary_edges.iter().any(|e| c.edge_colours[e.edge] == 0 && e.degree == 4);
    Ok(LstClass { kind, ii4 })
}

/// Degree-3 edges lying in a detected maximal layered solid torus, paired
/// with the index of that torus in `lsts`.
pub fn find_degree3_bases(s: &Skeleton, lsts: &[LstDescriptor]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (e, class) in s.edges.iter().enumerate() {
        if class.degree() != 3 {
            continue;
        }
        if let Some(i) = lsts
            .iter()
            .position(|d| class.slots.iter().any(|(tet, _)| d.tets.contains(tet)))
        {
            out.push((e, i));
        }
    }
    out
}
