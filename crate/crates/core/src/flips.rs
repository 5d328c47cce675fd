//! Local retriangulations: the 4-4 edge flip, the 2-3 and 3-2 moves, and
//! the promotion loop that flips away (II,4) layered solid tori.
//!
//! A move is described by symbols: every vertex of the region being
//! replaced gets a distinct symbol, old and new tetrahedra list the symbols
//! at their local vertices, and faces are matched by symbol sets.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{CocycleClass, Rank2Subgroup};
use crate::colouring::{colour_rank2, ColouringError, RankTwoColouring, TetType};
use crate::lst::{classify_lst, find_maximal_lsts, LstError};
use crate::tri::{
    compute_skeleton, edge_index, face_vertices, Gluing, Perm, Skeleton, TriError, Triangulation, EDGE_VERTICES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlipError {
    #[error("edge {edge} is not a flip site: {reason}")]
    InvalidSite { edge: usize, reason: String },
    #[error("axis must be 0 or 1, got {0}")]
    BadAxis(u8),
    #[error(transparent)]
    Tri(#[from] TriError),
    #[error(transparent)]
    Colouring(#[from] ColouringError),
    #[error(transparent)]
    Lst(#[from] LstError),
    #[error("promotion did not finish within {max_steps} flips")]
    StepLimitExceeded { max_steps: usize, trace: Vec<TraceStep> },
    #[error("promotion stuck: {reason}")]
    PromotionStuck { reason: String, trace: Vec<TraceStep> },
}

/// Symbols for the walk around an edge: the two ends, then the link
/// vertices in cyclic order.
const NORTH: u8 = 0;
const SOUTH: u8 = 1;
const fn link(i: u8) -> u8 {
    2 + i
}

/// The tetrahedra around an interior edge with the symbols of their local
/// vertices. Tetrahedron `i` contains `N`, `S`, `V_i` and `V_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeWalk {
    pub edge: usize,
    pub tets: Vec<usize>,
    pub symbols: Vec<[u8; 4]>,
}

impl EdgeWalk {
    pub fn degree(&self) -> usize {
        self.tets.len()
    }

    pub fn tets_distinct(&self) -> bool {
        let mut seen = self.tets.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == self.tets.len()
    }
}

/// Walks around edge class `edge` starting from its first slot. Returns
/// `None` for boundary edges.
pub fn walk_around(t: &Triangulation, s: &Skeleton, edge: usize) -> Option<EdgeWalk> {
    let (t0, e0) = s.edges[edge].slots[0];
    let (n0, s0) = EDGE_VERTICES[e0 as usize];
    let (a0, b0) = EDGE_VERTICES[5 - e0 as usize];
    let d = s.degree(edge);
    let (mut tet, mut n, mut so, mut a, mut b) = (t0, n0, s0, a0, b0);
    let mut tets = Vec::with_capacity(d);
    let mut symbols = Vec::with_capacity(d);
    for i in 0..d {
        let mut sym = [0u8; 4];
        sym[n as usize] = NORTH;
        sym[so as usize] = SOUTH;
        sym[a as usize] = link(i as u8);
        sym[b as usize] = link(((i + 1) % d) as u8);
        tets.push(tet);
        symbols.push(sym);
        let g = t.gluing(tet, a)?;
        (tet, n, so, a, b) = (g.tet, g.perm.apply(n), g.perm.apply(so), g.perm.apply(b), g.perm.apply(a));
    }
    ((tet, n, so, a) == (t0, n0, s0, a0)).then_some(EdgeWalk { edge, tets, symbols })
}

/// A degree-4 edge around which four distinct tetrahedra sit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipSite {
    pub walk: EdgeWalk,
}

impl FlipSite {
    pub fn edge(&self) -> usize {
        self.walk.edge
    }

    /// The two diagonals of the surrounding octahedron, as symbol pairs:
    /// axis 0 joins `V0` and `V2`, axis 1 joins `V1` and `V3`.
    pub fn axes() -> [(u8, u8); 2] {
        [(link(0), link(2)), (link(1), link(3))]
    }
}

pub fn flip_site(t: &Triangulation, s: &Skeleton, edge: usize) -> Result<FlipSite, FlipError> {
    let invalid = |reason: &str| FlipError::InvalidSite { edge, reason: reason.to_string() };
    if edge >= s.edge_count() {
        return Err(invalid("no such edge"));
    }
    if s.degree(edge) != 4 {
        return Err(invalid(&format!("degree is {}, not 4", s.degree(edge))));
    }
    let walk = walk_around(t, s, edge).ok_or_else(|| invalid("edge is on the boundary"))?;
    if !walk.tets_distinct() {
        return Err(invalid("the four tetrahedra around it are not distinct"));
    }
    Ok(FlipSite { walk })
}

pub fn flippable_edges(t: &Triangulation, s: &Skeleton) -> Vec<FlipSite> {
    (0..s.edge_count()).filter_map(|e| flip_site(t, s, e).ok()).collect()
}

/// Result of replacing some tetrahedra by others.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Retriangulation {
    pub triangulation: Triangulation,
    /// New index of each old tetrahedron, `None` for removed ones.
    pub tet_map: Vec<Option<usize>>,
    /// New indices of the replacement tetrahedra, in the order given.
    pub new_tets: Vec<usize>,
    /// Symbols of the replacement tetrahedra.
    pub new_symbols: Vec<[u8; 4]>,
    /// Old tetrahedra replaced, with their symbols.
    pub old_tets: Vec<usize>,
    pub old_symbols: Vec<[u8; 4]>,
}

fn face_key(sym: &[u8; 4], f: u8) -> [u8; 3] {
    let mut k = face_vertices(f).map(|v| sym[v as usize]);
    k.sort_unstable();
    k
}

fn local_of(sym: &[u8; 4], symbol: u8) -> u8 {
    sym.iter().position(|&x| x == symbol).expect("symbol present") as u8
}

/// Replaces `old` (distinct tetrahedra with distinct symbols per region
/// vertex) by tetrahedra spanned by `new` symbol quadruples. Replacement
/// tetrahedra reuse the old indices first; extras are appended; surplus old
/// indices are removed and later tetrahedra shift down.
pub fn retriangulate(
    t: &Triangulation,
    old: &[usize],
    old_symbols: &[[u8; 4]],
    new: &[[u8; 4]],
) -> Result<Retriangulation, TriError> {
    let n = t.tet_count();
    let is_old = |x: usize| old.contains(&x);

    // new index of each old tetrahedron
    let mut tet_map: Vec<Option<usize>> = vec![None; n];
    let removed: Vec<usize> = old.iter().skip(new.len()).copied().collect();
    let mut next = 0;
    for (x, slot) in tet_map.iter_mut().enumerate() {
        if !removed.contains(&x) {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut new_tets: Vec<usize> = old.iter().take(new.len()).map(|&x| tet_map[x].unwrap()).collect();
    while new_tets.len() < new.len() {
        new_tets.push(next);
        next += 1;
    }
    let total = next;

    // faces of the region boundary, keyed by symbol set
    let mut outer: BTreeMap<[u8; 3], (usize, u8)> = BTreeMap::new();
    for (i, &x) in old.iter().enumerate() {
        for f in 0..4u8 {
            let internal = t.gluing(x, f).is_some_and(|g| {
                old.iter()
                    .position(|&y| y == g.tet)
                    .is_some_and(|j| face_key(&old_symbols[j], g.perm.apply(f)) == face_key(&old_symbols[i], f))
            });
            if !internal {
                outer.insert(face_key(&old_symbols[i], f), (i, f));
            }
        }
    }
    // where each outer face of the region lands among the new tetrahedra,
    // and the relabelling old local -> new local on it
    let mut landing: BTreeMap<(usize, u8), (usize, u8, Perm)> = BTreeMap::new();
    let mut new_faces: BTreeMap<[u8; 3], Vec<(usize, u8)>> = BTreeMap::new();
    for (j, sym) in new.iter().enumerate() {
        for f in 0..4u8 {
            new_faces.entry(face_key(sym, f)).or_default().push((j, f));
        }
    }
    for (key, &(i, f)) in &outer {
        let &[(j, f2)] = new_faces.get(key).map(Vec::as_slice).unwrap_or(&[]) else {
            return Err(TriError::NotClosed { tet: old[i], face: f });
        };
        let images = std::array::from_fn(|v| {
            if v as u8 == f {
                f2
            } else {
                local_of(&new[j], old_symbols[i][v])
            }
        });
        landing.insert((i, f), (j, f2, Perm::new(images).expect("bijection on symbols")));
    }

    let mut gluings: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; total];
    for x in 0..n {
        let Some(nx) = tet_map[x] else { continue };
        if is_old(x) {
            continue;
        }
        for f in 0..4u8 {
            gluings[nx][f as usize] = t.gluing(x, f).map(|g| {
                if let Some(i) = old.iter().position(|&y| y == g.tet) {
                    let (j, _, r) = landing[&(i, g.perm.apply(f))];
                    Gluing { tet: new_tets[j], perm: r.compose(g.perm) }
                } else {
                    Gluing { tet: tet_map[g.tet].unwrap(), perm: g.perm }
                }
            });
        }
    }
    for (&(i, f), &(j, f2, r)) in &landing {
        let target = t.gluing(old[i], f).map(|g| match old.iter().position(|&y| y == g.tet) {
            Some(i2) => {
                let (j2, _, r2) = landing[&(i2, g.perm.apply(f))];
                Gluing { tet: new_tets[j2], perm: r2.compose(g.perm).compose(r.inverse()) }
            }
            None => Gluing { tet: tet_map[g.tet].unwrap(), perm: g.perm.compose(r.inverse()) },
        });
        gluings[new_tets[j]][f2 as usize] = target;
    }
    for (key, faces) in &new_faces {
        if outer.contains_key(key) {
            continue;
        }
        let &[(j, f), (j2, f2)] = faces.as_slice() else {
            return Err(TriError::NotClosed { tet: new_tets[faces[0].0], face: faces[0].1 });
        };
        let images = std::array::from_fn(|v| if v as u8 == f { f2 } else { local_of(&new[j2], new[j][v]) });
        let p = Perm::new(images).expect("bijection on symbols");
        gluings[new_tets[j]][f as usize] = Some(Gluing { tet: new_tets[j2], perm: p });
        gluings[new_tets[j2]][f2 as usize] = Some(Gluing { tet: new_tets[j], perm: p.inverse() });
    }
    let triangulation = Triangulation::from_gluings(gluings)?;
    Ok(Retriangulation {
        triangulation,
        tet_map,
        new_tets,
        new_symbols: new.to_vec(),
        old_tets: old.to_vec(),
        old_symbols: old_symbols.to_vec(),
    })
}

impl Retriangulation {
    /// For each new edge slot, an old edge slot with the same endpoints, if
    /// the edge existed before the move.
    pub fn slot_origin(&self, tet: usize, e: u8) -> Option<(usize, u8)> {
        if let Some(j) = self.new_tets.iter().position(|&x| x == tet) {
            let (a, b) = EDGE_VERTICES[e as usize];
            let (sa, sb) = (self.new_symbols[j][a as usize], self.new_symbols[j][b as usize]);
            self.old_symbols.iter().enumerate().find_map(|(i, sym)| {
                let (pa, pb) = (sym.iter().position(|&x| x == sa)?, sym.iter().position(|&x| x == sb)?);
                Some((self.old_tets[i], edge_index(pa as u8, pb as u8)))
            })
        } else {
            let old = self.tet_map.iter().position(|&m| m == Some(tet)).expect("kept tetrahedron");
            Some((old, e))
        }
    }

    /// Old edge class of each new edge class, `None` for edges created by
    /// the move.
    pub fn edge_origin(&self, old_s: &Skeleton, new_s: &Skeleton) -> Vec<Option<usize>> {
        new_s
            .edges
            .iter()
            .map(|class| {
                class
                    .slots
                    .iter()
                    .find_map(|&(tet, e)| self.slot_origin(tet, e))
                    .map(|(ot, oe)| old_s.edge_of(ot, oe))
            })
            .collect()
    }

    /// Carries a cocycle across the move. Edges created by the move get the
    /// value forced by a face relation.
    pub fn transport(&self, old_s: &Skeleton, new_s: &Skeleton, phi: &CocycleClass) -> CocycleClass {
        let origin = self.edge_origin(old_s, new_s);
        let mut values: Vec<Option<bool>> = origin.iter().map(|o| o.map(|e| phi.value(e))).collect();
        while values.iter().any(Option::is_none) {
            let mut progress = false;
            for f in &new_s.faces {
                let unknown: Vec<usize> = f.edges.iter().copied().filter(|&e| values[e].is_none()).collect();
                if let [e] = unknown[..] {
                    if f.edges.iter().filter(|&&x| x == e).count() == 1 {
                        let sum = f.edges.iter().filter(|&&x| x != e).fold(false, |acc, &x| acc ^ values[x].unwrap());
                        values[e] = Some(sum);
                        progress = true;
                    }
                }
            }
            assert!(progress, "new edges are determined by face relations");
        }
        CocycleClass::from_bits(values.into_iter().map(Option::unwrap))
    }
}

/// Symbol quadruples of the four tetrahedra around the chosen diagonal.
fn octahedron(axis: u8) -> [[u8; 4]; 4] {
    let (p, q) = FlipSite::axes()[axis as usize];
    let ring = if axis == 0 {
        [NORTH, link(1), SOUTH, link(3)]
    } else {
        [NORTH, link(2), SOUTH, link(0)]
    };
    std::array::from_fn(|i| [p, q, ring[i], ring[(i + 1) % 4]])
}

/// Replaces the degree-4 edge of `site` by the chosen diagonal.
pub fn edge_flip(t: &Triangulation, site: &FlipSite, axis: u8) -> Result<Retriangulation, FlipError> {
    if axis > 1 {
        return Err(FlipError::BadAxis(axis));
    }
    Ok(retriangulate(t, &site.walk.tets, &site.walk.symbols, &octahedron(axis))?)
}

/// Flips and reports the edge class and axis that undo the flip.
pub fn edge_flip_with_inverse(
    t: &Triangulation,
    site: &FlipSite,
    axis: u8,
) -> Result<(Retriangulation, usize, u8), FlipError> {
    let r = edge_flip(t, site, axis)?;
    let new_s = compute_skeleton(&r.triangulation)?;
    let (p, q) = FlipSite::axes()[axis as usize];
    // the new diagonal sits in the first replacement tetrahedron as local edge 01
    debug_assert_eq!((r.new_symbols[0][0], r.new_symbols[0][1]), (p, q));
    let edge = new_s.edge_of(r.new_tets[0], 0);
    let back = flip_site(&r.triangulation, &new_s, edge)?;
    let to_old = |sym: u8| {
        let i = (0..4).find(|&i| back.walk.symbols[i].contains(&sym)).expect("every link vertex is in a tetrahedron");
        let j = r.new_tets.iter().position(|&x| x == back.walk.tets[i]).expect("walk stays in the octahedron");
        r.new_symbols[j][local_of(&back.walk.symbols[i], sym) as usize]
    };
    let inverse_axis = (0..2u8)
        .find(|&a| {
            let (x, y) = FlipSite::axes()[a as usize];
            let mut pair = [to_old(x), to_old(y)];
            pair.sort_unstable();
            pair == [NORTH, SOUTH]
        })
        .expect("one diagonal is the old edge");
    Ok((r, edge, inverse_axis))
}

/// The 2-3 move on the interior face `face` of `tet`, whose two sides lie
/// in distinct tetrahedra.
pub fn two_three(t: &Triangulation, tet: usize, face: u8) -> Result<Retriangulation, TriError> {
    let g = t.gluing(tet, face).ok_or(TriError::NotClosed { tet, face })?;
    if g.tet == tet {
        return Err(TriError::FaceGluedToItself { tet, face });
    }
    // symbols: face vertices 0..3 by position, apex of tet = 3, apex of other = 4
    let fv = face_vertices(face);
    let mut a = [0u8; 4];
    let mut b = [0u8; 4];
    a[face as usize] = 3;
    b[g.perm.apply(face) as usize] = 4;
    for (k, &v) in fv.iter().enumerate() {
        a[v as usize] = k as u8;
        b[g.perm.apply(v) as usize] = k as u8;
    }
    let new = [[3, 4, 0, 1], [3, 4, 1, 2], [3, 4, 2, 0]];
    retriangulate(t, &[tet, g.tet], &[a, b], &new)
}

/// The 3-2 move on a degree-3 edge with three distinct tetrahedra.
pub fn three_two(t: &Triangulation, s: &Skeleton, edge: usize) -> Option<Result<Retriangulation, TriError>> {
    if s.degree(edge) != 3 {
        return None;
    }
    let walk = walk_around(t, s, edge)?;
    if !walk.tets_distinct() {
        return None;
    }
    let new = [[link(0), link(1), link(2), NORTH], [link(0), link(1), link(2), SOUTH]];
    Some(retriangulate(t, &walk.tets, &walk.symbols, &new))
}

/// Per-step state of promotion: number of (II,4) layered solid tori and of
/// type IV tetrahedra after the flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub ii4_lsts: usize,
    pub type_iv_tets: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Promotion {
    pub triangulation: Triangulation,
    /// The subgroup carried through the flips.
    pub subgroup: Rank2Subgroup,
    pub trace: Vec<TraceStep>,
}

fn ii4_edges(t: &Triangulation, s: &Skeleton, c: &RankTwoColouring) -> Result<Vec<usize>, FlipError> {
    let mut out = Vec::new();
    for d in find_maximal_lsts(t, s) {
        if classify_lst(c, &d)?.ii4 {
            let e = d
                .boundary_edges
                .iter()
                .find(|e| c.edge_colours[e.edge] == 0 && e.degree == 4)
                .expect("(II,4) torus has a 0-even boundary edge of degree 4");
            out.push(e.edge);
        }
    }
    Ok(out)
}

/// The axis rule: when the types around the edge read (II, III, III, ·) or
/// (II, ·, III, III) cyclically from a type II tetrahedron, prefer the axis
/// keeping the degrees of the 0-even edges (other than the flipped one) in
/// the faces of the type II tetrahedra; otherwise take axis 0.
fn choose_axis(t: &Triangulation, s: &Skeleton, c: &RankTwoColouring, site: &FlipSite) -> Result<u8, FlipError> {
    let kinds: Vec<TetType> = site.walk.tets.iter().map(|&x| c.tets[x].kind).collect();
    let patterned = (0..4).any(|r| {
        let k = |i: usize| kinds[(r + i) % 4];
        k(0) == TetType::II
            && ((k(1) == TetType::III && k(2) == TetType::III) || (k(2) == TetType::III && k(3) == TetType::III))
    });
    if !patterned {
        return Ok(0);
    }
    let watched: Vec<usize> = site
        .walk
        .tets
        .iter()
        .filter(|&&x| c.tets[x].kind == TetType::II)
        .flat_map(|&x| (0..6u8).map(move |e| s.edge_of(x, e)))
        .filter(|&e| e != site.edge() && c.edge_colours[e] == 0)
        .collect();
    for axis in 0..2u8 {
        let r = edge_flip(t, site, axis)?;
        let new_s = compute_skeleton(&r.triangulation)?;
        let origin = r.edge_origin(s, &new_s);
        let kept = watched.iter().all(|&e| {
            origin
                .iter()
                .position(|&o| o == Some(e))
                .is_some_and(|ne| new_s.degree(ne) == s.degree(e))
        });
        if kept {
            return Ok(axis);
        }
    }
    Ok(0)
}

/// Flips (II,4) layered solid tori away until none is left.
pub fn promote_to_ii4_free(t: &Triangulation, h: &Rank2Subgroup, max_steps: usize) -> Result<Promotion, FlipError> {
    let mut t = t.clone();
    let mut s = compute_skeleton(&t)?;
    let mut h = h.clone();
    let mut trace = Vec::new();
    let mut c = colour_rank2(&s, &h, None)?;
    loop {
        let edges = ii4_edges(&t, &s, &c)?;
        let Some(&edge) = edges.first() else {
            return Ok(Promotion { triangulation: t, subgroup: h, trace });
        };
        if trace.len() >= max_steps {
            return Err(FlipError::StepLimitExceeded { max_steps, trace });
        }
        // Every (II,4) edge of a minimal triangulation is a flip site; take
        // the first one that is.
        let Some(site) = edges.iter().find_map(|&e| flip_site(&t, &s, e).ok()) else {
            let reason = flip_site(&t, &s, edge).expect_err("no site found").to_string();
            return Err(FlipError::PromotionStuck { reason, trace });
        };
        let axis = choose_axis(&t, &s, &c, &site)?;
        let r = edge_flip(&t, &site, axis)?;
        let new_s = compute_skeleton(&r.triangulation)?;
        let classes = h.classes.clone().map(|phi| r.transport(&s, &new_s, &phi));
        h = Rank2Subgroup { classes, coords: h.coords };
        t = r.triangulation;
        s = new_s;
        c = colour_rank2(&s, &h, None)?;
        trace.push(TraceStep {
            ii4_lsts: ii4_edges(&t, &s, &c)?.len(),
            type_iv_tets: c.tets_of_type(TetType::IV).count(),
        });
    }
}

/// Default step limit: ten times the square of the tetrahedron count.
pub fn default_max_steps(t: &Triangulation) -> usize {
    10 * t.tet_count() * t.tet_count()
}
