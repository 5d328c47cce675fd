//! Rank-1 and rank-2 edge colourings, tetrahedron types, the type counts and
//! the counting identities they satisfy.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{CocycleClass, Rank2Subgroup};
use crate::tri::{OrientationAssignment, Skeleton, EDGE_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColouringError {
    #[error("triangulation has {vertices} vertices; colourings need exactly one")]
    NotOneVertex { vertices: usize },
    #[error("the class is zero")]
    ZeroClass,
    #[error("the two classes do not span a rank-2 subgroup")]
    RankTooLow,
    #[error("tetrahedron {tet} matches no colour pattern (labelling is not a cocycle)")]
    Unclassifiable { tet: usize },
}

fn require_one_vertex(s: &Skeleton) -> Result<(), ColouringError> {
    match s.vertex_count() {
        1 => Ok(()),
        vertices => Err(ColouringError::NotOneVertex { vertices }),
    }
}

/// Local edges containing vertex `v`.
fn edges_at(v: u8) -> [u8; 3] {
    let mut out = [0; 3];
    let mut n = 0;
    for (e, &(a, b)) in EDGE_VERTICES.iter().enumerate() {
        if a == v || b == v {
            out[n] = e as u8;
            n += 1;
        }
    }
    out
}

/// Type of a tetrahedron with respect to a single nonzero class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Rank1Type {
    /// One opposite pair even, the other four edges odd; the surface has a
    /// single quad here, of the type disjoint from the even pair.
    One { even_pair: u8 },
    /// The three edges at `apex` odd; the surface has a single triangle.
    Two { apex: u8 },
    /// All edges even; no disc.
    Three,
}

impl Rank1Type {
    /// Quad type (1..=3) placed by the canonical dual surface, if any.
    pub fn quad(self) -> Option<u8> {
        match self {
            Rank1Type::One { even_pair } => Some(even_pair + 1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank1Colouring {
    pub odd: Vec<bool>,
    pub tets: Vec<Rank1Type>,
}

/// Rank-1 type from the six local parities.
pub fn rank1_type(odd: [bool; 6]) -> Option<Rank1Type> {
    match odd.iter().filter(|&&o| o).count() {
        0 => Some(Rank1Type::Three),
        4 => (0..3u8)
            .find(|&p| !odd[p as usize] && !odd[5 - p as usize])
            .map(|even_pair| Rank1Type::One { even_pair }),
        3 => (0..4u8)
            .find(|&v| edges_at(v).iter().all(|&e| odd[e as usize]))
            .map(|apex| Rank1Type::Two { apex }),
        _ => None,
    }
}

pub fn colour_rank1(s: &Skeleton, phi: &CocycleClass) -> Result<Rank1Colouring, ColouringError> {
    require_one_vertex(s)?;
    if phi.is_zero() {
        return Err(ColouringError::ZeroClass);
    }
    let odd: Vec<bool> = (0..s.edge_count()).map(|e| phi.value(e)).collect();
    let tets = (0..s.tet_count())
        .map(|tet| {
            let local = std::array::from_fn(|e| odd[s.edge_of(tet, e as u8)]);
            rank1_type(local).ok_or(ColouringError::Unclassifiable { tet })
        })
        .collect::<Result<_, _>>()?;
    Ok(Rank1Colouring { odd, tets })
}

/// Edge colour under a rank-2 subgroup: 0 when all three classes vanish,
/// otherwise the index of the unique vanishing class.
pub type EdgeColour = u8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TetType {
    I,
    II,
    III,
    IV,
    V,
}

/// Type of a tetrahedron under a rank-2 colouring, with the data that
/// locates the pattern in the tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TetClass {
    pub kind: TetType,
    /// Distinguished colour for types I (colour of the edge opposite the
    /// 0-even edge), II and III; 0 otherwise.
    pub colour: u8,
    /// Type I: the local 0-even edge. Type II: the opposite pair (0..3) of
    /// 0-even edges. Type III: the apex vertex whose three edges carry the
    /// distinguished colour. Otherwise 0.
    pub position: u8,
    /// Type V only, and only when an orientation was supplied: +1 or -1
    /// according to whether the colours 1, 2, 3 sit on the opposite pairs
    /// 0, 1, 2 by an even or odd bijection, relative to the orientation.
    pub chirality: Option<i8>,
}

/// Rank-2 type from the six local colours.
pub fn classify_tet(colours: [u8; 6], orientation_sign: Option<i8>) -> Option<TetClass> {
    let zero: Vec<u8> = (0..6u8).filter(|&e| colours[e as usize] == 0).collect();
    let class = |kind, colour, position| TetClass { kind, colour, position, chirality: None };
    let c = |e: u8| colours[e as usize];
    match zero.len() {
        6 => Some(class(TetType::IV, 0, 0)),
        0 => {
            if (0..3).any(|p| c(p) != c(5 - p)) {
                return None;
            }
            let images = [c(0), c(1), c(2)];
            let mut sorted = images;
            sorted.sort();
            if sorted != [1, 2, 3] {
                return None;
            }
            let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                .filter(|&(i, j)| images[i] > images[j])
                .count();
            let sign: i8 = if inversions % 2 == 0 { 1 } else { -1 };
            Some(TetClass { chirality: orientation_sign.map(|o| o * sign), ..class(TetType::V, 0, 0) })
        }
        1 => {
            let e0 = zero[0];
            let i = c(5 - e0);
            let (a, b) = EDGE_VERTICES[e0 as usize];
            let (cc, d) = EDGE_VERTICES[5 - e0 as usize];
            let at = |x: u8, y: u8| c(crate::tri::edge_index(x, y));
            let (j, k) = (at(a, cc), at(a, d));
            let ok = i != 0
                && j != 0
                && k != 0
                && i != j
                && j != k
                && i != k
                && at(b, cc) == j
                && at(b, d) == k;
            ok.then(|| class(TetType::I, i, e0))
        }
        2 => {
            let (p, q) = (zero[0], zero[1]);
            if p + q != 5 {
                return None;
            }
            let i = c((0..6).find(|&e| e != p && e != q).unwrap());
            let all = (0..6).filter(|&e| e != p && e != q).all(|e| c(e) == i);
            all.then(|| class(TetType::II, i, p))
        }
        3 => {
            let apex = (0..4u8).find(|&v| edges_at(v).iter().all(|&e| c(e) != 0))?;
            let [e1, e2, e3] = edges_at(apex);
            let i = c(e1);
            (c(e2) == i && c(e3) == i).then(|| class(TetType::III, i, apex))
        }
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTwoColouring {
    pub subgroup: [CocycleClass; 3],
    pub edge_colours: Vec<EdgeColour>,
    pub tets: Vec<TetClass>,
}

impl RankTwoColouring {
    pub fn tets_of_type(&self, kind: TetType) -> impl Iterator<Item = usize> + '_ {
        self.tets.iter().enumerate().filter(move |(_, c)| c.kind == kind).map(|(i, _)| i)
    }

    /// Whether class `i` (1..=3) places a quad in tetrahedron `tet`, read off
    /// the rank-2 type.
    pub fn has_quad_of(&self, tet: usize, i: u8) -> bool {
        let c = self.tets[tet];
        match c.kind {
            TetType::I => c.colour == i,
            TetType::II => c.colour != i,
            TetType::V => true,
            TetType::III | TetType::IV => false,
        }
    }
}

/// Colours edges by the subgroup `{φ1, φ2, φ1 + φ2}` and types every
/// tetrahedron. Type V chirality is recorded only when `orientation` is
/// given.
pub fn colour_rank2(
    s: &Skeleton,
    h: &Rank2Subgroup,
    orientation: Option<&OrientationAssignment>,
) -> Result<RankTwoColouring, ColouringError> {
    require_one_vertex(s)?;
    let [p1, p2, _] = &h.classes;
    if p1.is_zero() || p2.is_zero() || p1 == p2 {
        return Err(ColouringError::RankTooLow);
    }
    let subgroup = [p1.clone(), p2.clone(), p1.sum(p2)];
    let edge_colours: Vec<u8> = (0..s.edge_count())
        .map(|e| match (p1.value(e), p2.value(e)) {
            (false, false) => 0,
            (false, true) => 1,
            (true, false) => 2,
            (true, true) => 3,
        })
        .collect();
    let tets = (0..s.tet_count())
        .map(|tet| {
            let local = std::array::from_fn(|e| edge_colours[s.edge_of(tet, e as u8)]);
            classify_tet(local, orientation.map(|o| o.signs[tet]))
                .ok_or(ColouringError::Unclassifiable { tet })
        })
        .collect::<Result<_, _>>()?;
    Ok(RankTwoColouring { subgroup, edge_colours, tets })
}

/// Tetrahedron type counts and 0-even edge statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TetTypeCounts {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    pub tets: usize,
    /// Number of 0-even edges.
    pub zero_even_edges: usize,
    /// Sum of the degrees of the 0-even edges.
    pub zero_even_degree_sum: usize,
    /// Number of 0-even edges of each degree.
    pub zero_even_by_degree: BTreeMap<usize, usize>,
}

pub fn counts(c: &RankTwoColouring, s: &Skeleton) -> TetTypeCounts {
    let n = |k| c.tets.iter().filter(|t| t.kind == k).count();
    let mut by_degree = BTreeMap::new();
    for (e, &col) in c.edge_colours.iter().enumerate() {
        if col == 0 {
            *by_degree.entry(s.degree(e)).or_insert(0) += 1;
        }
    }
    TetTypeCounts {
        a: n(TetType::I),
        b: n(TetType::II),
        c: n(TetType::III),
        d: n(TetType::IV),
        e: n(TetType::V),
        tets: c.tets.len(),
        zero_even_edges: by_degree.values().sum(),
        zero_even_degree_sum: by_degree.iter().map(|(d, n)| d * n).sum(),
        zero_even_by_degree: by_degree,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

impl Verdict {
    fn of(ok: bool) -> Verdict {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

/// One checked equation with both sides evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub verdict: Verdict,
    pub lhs: i64,
    pub rhs: i64,
}

impl IdentityCheck {
    fn new(lhs: i64, rhs: i64) -> IdentityCheck {
        IdentityCheck { verdict: Verdict::of(lhs == rhs), lhs, rhs }
    }

    fn not_applicable() -> IdentityCheck {
        IdentityCheck { verdict: Verdict::NotApplicable, lhs: 0, rhs: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// `C + 2D - E = 2e - 2 + Σχ`.
    pub euler_balance: IdentityCheck,
    /// `ẽ = A + 2B + 3C + 6D`.
    pub degree_sum_by_types: IdentityCheck,
    /// `ẽ = 2T - A - C + 4e - 4 + 2Σχ`.
    pub degree_sum_by_euler: IdentityCheck,
    /// `e_3 = 4 + A + C - 2(T + Σχ) + Σ_{d≥5} (d - 4) e_d`, only when every
    /// edge has degree at least 3.
    pub degree_three_count: IdentityCheck,
    pub c_even: Verdict,
    pub e_even: Verdict,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        [
            self.euler_balance.verdict,
            self.degree_sum_by_types.verdict,
            self.degree_sum_by_euler.verdict,
            self.degree_three_count.verdict,
            self.c_even,
            self.e_even,
        ]
        .iter()
        .all(|&v| v != Verdict::Fails)
    }
}

pub fn verify_identities(tc: &TetTypeCounts, chis: [i64; 3], min_degree_ok: bool) -> IdentityReport {
    let (a, b, c, d, e) = (tc.a as i64, tc.b as i64, tc.c as i64, tc.d as i64, tc.e as i64);
    let t = tc.tets as i64;
    let ze = tc.zero_even_edges as i64;
    let zsum = tc.zero_even_degree_sum as i64;
    let chi: i64 = chis.iter().sum();
    let ed = |deg: usize| *tc.zero_even_by_degree.get(&deg).unwrap_or(&0) as i64;
    let tail: i64 = tc
        .zero_even_by_degree
        .iter()
        .filter(|(&deg, _)| deg >= 5)
        .map(|(&deg, &n)| (deg as i64 - 4) * n as i64)
        .sum();
    IdentityReport {
        euler_balance: IdentityCheck::new(c + 2 * d - e, 2 * ze - 2 + chi),
        degree_sum_by_types: IdentityCheck::new(zsum, a + 2 * b + 3 * c + 6 * d),
        degree_sum_by_euler: IdentityCheck::new(zsum, 2 * t - a - c + 4 * ze - 4 + 2 * chi),
        degree_three_count: if min_degree_ok {
            IdentityCheck::new(ed(3), 4 + a + c - 2 * (t + chi) + tail)
        } else {
            IdentityCheck::not_applicable()
        },
        c_even: Verdict::of(c % 2 == 0),
        e_even: Verdict::of(e % 2 == 0),
    }
}
