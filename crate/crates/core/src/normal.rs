//! Canonical dual surfaces and the canonical quadrilateral surface, built as
//! explicit cell complexes from normal discs.
//!
//! Disc types per tetrahedron: triangles `0..4` (the triangle at vertex `v`
//! is type `v`) and quads `4..7`, where quad type `q_i` (stored at
//! `3 + i`) separates the vertex pair `{0, i}` from the other two. An arc on
//! face `f` is named by the face vertex it cuts off.

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::CocycleClass;
use crate::colouring::{colour_rank1, ColouringError, Rank1Type};
use crate::tri::{edge_index, face_opposite_complement, face_vertices, Skeleton, Triangulation};
use crate::uf::ParityUnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalError {
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error("tetrahedron {tet} has more than one disc meeting face {face} in the arc cutting off vertex {vertex}")]
    StackedArcs { tet: usize, face: u8, vertex: u8 },
}

/// Quad type (1..=3) separating vertices `a` and `b` from the other two.
pub fn quad_separating(a: u8, b: u8) -> u8 {
    if a.min(b) == 0 {
        a.max(b)
    } else {
        6 - a - b
    }
}

/// Per-tetrahedron disc counts: four triangle counts then three quad counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NormalCoordinates {
    pub tets: Vec<[u32; 7]>,
}

impl NormalCoordinates {
    pub fn zeros(tets: usize) -> NormalCoordinates {
        NormalCoordinates { tets: vec![[0; 7]; tets] }
    }

    pub fn triangle(&self, tet: usize, v: u8) -> u32 {
        self.tets[tet][v as usize]
    }

    pub fn quad(&self, tet: usize, i: u8) -> u32 {
        self.tets[tet][3 + i as usize]
    }

    /// Number of arcs on face `f` of `tet` cutting off vertex `x`.
    pub fn arc_count(&self, tet: usize, f: u8, x: u8) -> u32 {
        self.triangle(tet, x) + self.quad(tet, quad_separating(x, f))
    }

    /// At most one nonzero quad type in every tetrahedron.
    pub fn quads_compatible(&self) -> bool {
        self.tets.iter().all(|c| c[4..].iter().filter(|&&q| q > 0).count() <= 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArcMismatch {
    pub face: usize,
    pub tet: usize,
    pub tet_face: u8,
    pub vertex: u8,
    pub here: u32,
    pub there: u32,
}

/// Checks that on every interior face the arc counts induced from the two
/// sides agree, type by type.
pub fn check_arc_matching(s: &Skeleton, t: &Triangulation, nc: &NormalCoordinates) -> Result<(), ArcMismatch> {
    for (id, face) in s.faces.iter().enumerate() {
        let &[(tet, f), ..] = face.slots.as_slice() else { continue };
        let Some(g) = t.gluing(tet, f) else { continue };
        let f2 = g.perm.apply(f);
        for x in face_vertices(f) {
            let here = nc.arc_count(tet, f, x);
            let there = nc.arc_count(g.tet, f2, g.perm.apply(x));
            if here != there {
                return Err(ArcMismatch { face: id, tet, tet_face: f, vertex: x, here, there });
            }
        }
    }
    Ok(())
}

/// Corners of a disc in cyclic order, as vertex pairs `(shared, other)` of
/// the tetrahedron edge each corner lies on.
fn disc_corners(kind: u8) -> Vec<(u8, u8)> {
    if kind < 4 {
        let v = kind;
        (0..4u8).filter(|&w| w != v).map(|w| (v, w)).collect()
    } else {
        let i = kind - 3;
        let mut rest = (1..4u8).filter(|&w| w != i);
        let (j, k) = (rest.next().unwrap(), rest.next().unwrap());
        vec![(0, j), (0, k), (i, k), (i, j)]
    }
}

/// The vertex shared by two consecutive corners and the arc's face.
fn arc_between(a: (u8, u8), b: (u8, u8)) -> (u8, u8) {
    let shared = if a.0 == b.0 || a.0 == b.1 { a.0 } else { a.1 };
    let other_a = if a.0 == shared { a.1 } else { a.0 };
    let other_b = if b.0 == shared { b.1 } else { b.0 };
    (face_opposite_complement(shared, other_a, other_b), shared)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Disc {
    pub tet: usize,
    pub kind: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceClassification {
    pub orientable: bool,
    /// Orientable genus, or the number of crosscaps if non-orientable.
    pub genus: i64,
    pub is_sphere: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceComponent {
    pub discs: Vec<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub orientable: bool,
    pub boundary_arcs: usize,
}

impl SurfaceComponent {
    pub fn is_closed(&self) -> bool {
        self.boundary_arcs == 0
    }
}

/// Vertices, edges and faces of a normal surface glued from its discs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceComplex {
    pub discs: Vec<Disc>,
    /// Edge class of the triangulation containing each surface vertex.
    pub vertex_edge: Vec<usize>,
    pub vertex_component: Vec<usize>,
    pub edge_count: usize,
    pub disc_component: Vec<usize>,
    pub components: Vec<SurfaceComponent>,
}

impl SurfaceComplex {
    pub fn euler(&self) -> i64 {
        self.components.iter().map(|c| c.euler).sum()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_edge.len()
    }

    /// Surface vertices of component `c` on each edge class.
    pub fn edge_intersections(&self, c: usize, edge_count: usize) -> Vec<usize> {
        let mut out = vec![0; edge_count];
        for (v, &e) in self.vertex_edge.iter().enumerate() {
            if self.vertex_component[v] == c {
                out[e] += 1;
            }
        }
        out
    }
}

/// Glues the discs along matching arcs. Each arc type on each side of each
/// face may carry at most one disc; this holds for the canonical surfaces
/// built here.
pub fn build_complex(s: &Skeleton, t: &Triangulation, discs: Vec<Disc>) -> Result<SurfaceComplex, NormalError> {
    let corners: Vec<Vec<(u8, u8)>> = discs.iter().map(|d| disc_corners(d.kind)).collect();
    let mut corner_base = Vec::with_capacity(discs.len());
    let mut total = 0;
    for c in &corners {
        corner_base.push(total);
        total += c.len();
    }

    // arc slot (tet, face, vertex) -> (disc, arc index)
    let mut arc_at = vec![[[None::<(usize, usize)>; 4]; 4]; t.tet_count()];
    for (d, disc) in discs.iter().enumerate() {
        let cs = &corners[d];
        for m in 0..cs.len() {
            let (f, x) = arc_between(cs[m], cs[(m + 1) % cs.len()]);
            let slot = &mut arc_at[disc.tet][f as usize][x as usize];
            if slot.is_some() {
                return Err(NormalError::StackedArcs { tet: disc.tet, face: f, vertex: x });
            }
            *slot = Some((d, m));
        }
    }

    let mut corner_uf = ParityUnionFind::new(total);
    let mut disc_uf = ParityUnionFind::new(discs.len());
    let mut twisted = vec![false; discs.len()];
    let mut matched_pairs = 0;
    let mut boundary = vec![0usize; discs.len()];
    for (d, disc) in discs.iter().enumerate() {
        let cs = &corners[d];
        let len = cs.len();
        for m in 0..len {
            let (f, x) = arc_between(cs[m], cs[(m + 1) % len]);
            let partner = t.gluing(disc.tet, f).and_then(|g| {
                arc_at[g.tet][g.perm.apply(f) as usize][g.perm.apply(x) as usize].map(|p| (g, p))
            });
            let Some((g, (d2, m2))) = partner else {
                boundary[d] += 1;
                continue;
            };
            if (d2, m2) < (d, m) {
                continue;
            }
            matched_pairs += 1;
            let cs2 = &corners[d2];
            let len2 = cs2.len();
            let image = |(a, b): (u8, u8)| {
                let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                (0..len2)
                    .find(|&n| {
                        let (c0, c1) = cs2[n];
                        edge_index(c0, c1) == edge_index(pa, pb)
                    })
                    .expect("arc endpoints lie on matching edges")
            };
            let start = image(cs[m]);
            let end = image(cs[(m + 1) % len]);
            corner_uf.union(corner_base[d] + m, corner_base[d2] + start, false);
            corner_uf.union(corner_base[d] + (m + 1) % len, corner_base[d2] + end, false);
            // same traversal direction on both sides means the cyclic
            // orders induce the same orientation on the arc: one disc flips
            let same_direction = start == m2;
            if !disc_uf.union(d, d2, same_direction) {
                twisted[d] = true;
            }
        }
    }

    let disc_root: Vec<usize> = (0..discs.len()).map(|d| disc_uf.find(d).0).collect();
    let mut comp_id = std::collections::BTreeMap::new();
    let disc_component: Vec<usize> = disc_root
        .iter()
        .map(|&r| {
            let next = comp_id.len();
            *comp_id.entry(r).or_insert(next)
        })
        .collect();
    let mut components: Vec<SurfaceComponent> = (0..comp_id.len())
        .map(|_| SurfaceComponent {
            discs: Vec::new(),
            vertices: 0,
            edges: 0,
            faces: 0,
            euler: 0,
            orientable: true,
            boundary_arcs: 0,
        })
        .collect();
    for (d, &c) in disc_component.iter().enumerate() {
        let comp = &mut components[c];
        comp.discs.push(d);
        comp.faces += 1;
        comp.boundary_arcs += boundary[d];
        // every arc is half of an interior edge or a whole boundary edge
        comp.edges += corners[d].len();
        if twisted[d] {
            comp.orientable = false;
        }
    }
    for comp in components.iter_mut() {
        comp.edges = (comp.edges + comp.boundary_arcs) / 2;
    }

    let mut vertex_of_root = std::collections::BTreeMap::new();
    let mut vertex_edge = Vec::new();
    let mut vertex_component = Vec::new();
    for (d, disc) in discs.iter().enumerate() {
        for (m, &(a, b)) in corners[d].iter().enumerate() {
            let root = corner_uf.find(corner_base[d] + m).0;
            if let std::collections::btree_map::Entry::Vacant(v) = vertex_of_root.entry(root) {
                v.insert(vertex_edge.len());
                vertex_edge.push(s.edge_between(disc.tet, a, b));
                vertex_component.push(disc_component[d]);
                components[disc_component[d]].vertices += 1;
            }
        }
    }
    for comp in components.iter_mut() {
        comp.euler = comp.vertices as i64 - comp.edges as i64 + comp.faces as i64;
    }
    Ok(SurfaceComplex {
        discs,
        vertex_edge,
        vertex_component,
        edge_count: matched_pairs + boundary.iter().sum::<usize>(),
        disc_component,
        components,
    })
}

pub fn classify_component(c: &SurfaceComponent) -> SurfaceClassification {
    let genus = if c.orientable { (2 - c.euler) / 2 } else { 2 - c.euler };
    SurfaceClassification {
        orientable: c.orientable,
        genus,
        is_sphere: c.orientable && c.euler == 2 && c.is_closed(),
    }
}

fn discs_of(nc: &NormalCoordinates) -> Vec<Disc> {
    let mut out = Vec::new();
    for (tet, counts) in nc.tets.iter().enumerate() {
        for (kind, &n) in counts.iter().enumerate() {
            for _ in 0..n {
                out.push(Disc { tet, kind: kind as u8 });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSurface {
    pub coordinates: NormalCoordinates,
    pub complex: SurfaceComplex,
    /// χ from the closed form: odd edges, minus faces with two odd edges,
    /// plus tetrahedra carrying a disc.
    pub formula_euler: i64,
}

/// The canonical surface dual to `phi`: a quad in every tetrahedron with an
/// even opposite pair, a triangle in every tetrahedron with three odd edges
/// at a vertex.
pub fn canonical_dual_surface(s: &Skeleton, t: &Triangulation, phi: &CocycleClass) -> Result<DualSurface, NormalError> {
    let r1 = colour_rank1(s, phi)?;
    let mut nc = NormalCoordinates::zeros(s.tet_count());
    for (tet, ty) in r1.tets.iter().enumerate() {
        match *ty {
            Rank1Type::One { even_pair } => nc.tets[tet][4 + even_pair as usize] = 1,
            Rank1Type::Two { apex } => nc.tets[tet][apex as usize] = 1,
            Rank1Type::Three => {}
        }
    }
    let v = r1.odd.iter().filter(|&&o| o).count() as i64;
    let e = s
        .faces
        .iter()
        .filter(|f| f.edges.iter().filter(|&&e| r1.odd[e]).count() == 2)
        .count() as i64;
    let f = r1.tets.iter().filter(|t| **t != Rank1Type::Three).count() as i64;
    let complex = build_complex(s, t, discs_of(&nc))?;
    Ok(DualSurface { coordinates: nc, complex, formula_euler: v - e + f })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadComponent {
    pub coordinates: NormalCoordinates,
    pub euler: i64,
    pub classification: SurfaceClassification,
    /// Meets every tetrahedron in at most one quad.
    pub embedded: bool,
    /// Meets every tetrahedron in exactly one quad.
    pub one_quad_per_tet: bool,
    /// Intersection parity with each edge class, for embedded components.
    #[serde(skip)]
    pub dual: Option<CocycleClass>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadSurfaceAnalysis {
    pub complex: SurfaceComplex,
    pub components: Vec<QuadComponent>,
    /// `T + Σχ = 2`, checked when there are three components and one
    /// vertex; `None` otherwise.
    pub euler_sum_check: Option<bool>,
}

impl QuadSurfaceAnalysis {
    pub fn all_embedded(&self) -> bool {
        self.components.iter().all(|c| c.embedded)
    }

    pub fn euler_sum(&self) -> i64 {
        self.components.iter().map(|c| c.euler).sum()
    }
}

/// All three quads in every tetrahedron, glued abstractly along arcs.
pub fn canonical_quad_surface(s: &Skeleton, t: &Triangulation) -> Result<QuadSurfaceAnalysis, NormalError> {
    let n = s.tet_count();
    let discs: Vec<Disc> = (0..n).flat_map(|tet| (4..7).map(move |kind| Disc { tet, kind })).collect();
    let complex = build_complex(s, t, discs)?;
    let components: Vec<QuadComponent> = complex
        .components
        .iter()
        .enumerate()
        .map(|(c, comp)| {
            let mut nc = NormalCoordinates::zeros(n);
            for &d in &comp.discs {
                let disc = complex.discs[d];
                nc.tets[disc.tet][disc.kind as usize] += 1;
            }
            let per_tet = |tet: usize| nc.tets[tet][4..].iter().sum::<u32>();
            let embedded = (0..n).all(|tet| per_tet(tet) <= 1);
            let one_quad_per_tet = (0..n).all(|tet| per_tet(tet) == 1);
            let dual = embedded.then(|| {
                CocycleClass::from_bits(complex.edge_intersections(c, s.edge_count()).iter().map(|k| k % 2 == 1))
            });
            QuadComponent {
                coordinates: nc,
                euler: comp.euler,
                classification: classify_component(comp),
                embedded,
                one_quad_per_tet,
                dual,
            }
        })
        .collect();
    let euler_sum_check = (components.len() == 3 && s.vertex_count() == 1)
        .then(|| n as i64 + components.iter().map(|c| c.euler).sum::<i64>() == 2);
    Ok(QuadSurfaceAnalysis { complex, components, euler_sum_check })
}
