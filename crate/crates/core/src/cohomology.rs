//! Z2 cochains on edges: cocycles, coboundaries, H^1 and its rank-2
//! subgroups.

use thiserror::Error;

use crate::gf2::{EchelonBasis, Gf2Matrix, Gf2Vector};
use crate::tri::Skeleton;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("H^1(M;Z2) has rank {rank}, need at least 2")]
    RankTooLow { rank: usize },
    #[error("labelling has {got} entries but the triangulation has {expected} edges")]
    WrongLength { expected: usize, got: usize },
    #[error("labelling violates the relation of face {face}")]
    NotACocycle { face: usize },
}

/// An edge labelling with values in Z2, one bit per edge class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CocycleClass {
    pub values: Gf2Vector,
}

impl CocycleClass {
    pub fn zero(edge_count: usize) -> CocycleClass {
        CocycleClass { values: Gf2Vector::zeros(edge_count) }
    }

    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> CocycleClass {
        CocycleClass { values: Gf2Vector::from_bits(bits) }
    }

    /// Validates a labelling against the face relations of `s`.
    pub fn checked(s: &Skeleton, values: Gf2Vector) -> Result<CocycleClass, CohomologyError> {
        if values.len() != s.edge_count() {
            return Err(CohomologyError::WrongLength { expected: s.edge_count(), got: values.len() });
        }
        let c = CocycleClass { values };
        match c.violated_face(s) {
            Some(face) => Err(CohomologyError::NotACocycle { face }),
            None => Ok(c),
        }
    }

    pub fn value(&self, edge: usize) -> bool {
        self.values.get(edge)
    }

    pub fn is_odd(&self, edge: usize) -> bool {
        self.value(edge)
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    pub fn edge_count(&self) -> usize {
        self.values.len()
    }

    pub fn sum(&self, other: &CocycleClass) -> CocycleClass {
        CocycleClass { values: &self.values + &other.values }
    }

    /// First face class whose three edge values do not sum to zero.
    pub fn violated_face(&self, s: &Skeleton) -> Option<usize> {
        s.faces
            .iter()
            .position(|f| f.edges.iter().fold(false, |acc, &e| acc ^ self.value(e)))
    }
}

/// Rows are face classes, columns edge classes, entries the number of times
/// the face boundary runs over the edge, mod 2.
pub fn face_relation_matrix(s: &Skeleton) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(s.face_count(), s.edge_count());
    for (i, f) in s.faces.iter().enumerate() {
        for &e in &f.edges {
            m.flip(i, e);
        }
    }
    m
}

pub fn cocycle_space(s: &Skeleton) -> Vec<CocycleClass> {
    face_relation_matrix(s)
        .nullspace()
        .into_iter()
        .map(|values| CocycleClass { values })
        .collect()
}

/// Coboundary of the indicator of vertex class `v`.
pub fn vertex_coboundary(s: &Skeleton, v: usize) -> CocycleClass {
    CocycleClass::from_bits(s.edges.iter().map(|e| (e.tail == v) ^ (e.head == v)))
}

/// A basis of the image of the vertex coboundary map.
pub fn coboundary_space(s: &Skeleton) -> Vec<CocycleClass> {
    let mut span = EchelonBasis::new();
    (0..s.vertex_count())
        .map(|v| vertex_coboundary(s, v))
        .filter(|c| span.insert(&c.values))
        .collect()
}

/// Cocycle representatives of a basis of H^1(M;Z2).
#[derive(Debug, Clone)]
pub struct CohomologyBasis {
    pub classes: Vec<CocycleClass>,
    coboundaries: EchelonBasis,
    edge_count: usize,
}

impl CohomologyBasis {
    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Whether two cocycles represent the same class.
    pub fn same_class(&self, a: &CocycleClass, b: &CocycleClass) -> bool {
        self.coboundaries.contains(&(&a.values + &b.values))
    }

    pub fn is_trivial(&self, a: &CocycleClass) -> bool {
        self.coboundaries.contains(&a.values)
    }

    /// The class with coordinates given by the low bits of `mask`.
    pub fn combination(&self, mask: u64) -> CocycleClass {
        let mut out = CocycleClass::zero(self.edge_count);
        for (i, c) in self.classes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out = out.sum(c);
            }
        }
        out
    }
}

pub fn h1_z2(s: &Skeleton) -> CohomologyBasis {
    let mut span = EchelonBasis::new();
    for b in coboundary_space(s) {
        span.insert(&b.values);
    }
    let coboundaries = span.clone();
    let classes = cocycle_space(s).into_iter().filter(|c| span.insert(&c.values)).collect();
    CohomologyBasis { classes, coboundaries, edge_count: s.edge_count() }
}

/// A rank-2 subgroup, listed by its three nonzero elements with
/// `classes[2] = classes[0] + classes[1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank2Subgroup {
    pub classes: [CocycleClass; 3],
    /// Coordinates of the three elements in the basis they came from.
    pub coords: [u64; 3],
}

impl Rank2Subgroup {
    pub fn from_pair(phi1: CocycleClass, phi2: CocycleClass) -> Rank2Subgroup {
        let phi3 = phi1.sum(&phi2);
        Rank2Subgroup { classes: [phi1, phi2, phi3], coords: [0; 3] }
    }
}

/// Every rank-2 subgroup exactly once, ordered by the coordinate triple
/// `a < b < c` with `c = a ^ b`.
pub fn enumerate_rank2_subgroups(b: &CohomologyBasis) -> Result<Vec<Rank2Subgroup>, CohomologyError> {
    let r = b.rank();
    if r < 2 {
        return Err(CohomologyError::RankTooLow { rank: r });
    }
    assert!(r < 64, "rank {r} is too large to enumerate");
    let top = 1u64 << r;
    let mut out = Vec::new();
    for x in 1..top {
        for y in x + 1..top {
            let z = x ^ y;
            if z > y {
                out.push(Rank2Subgroup {
                    classes: [b.combination(x), b.combination(y), b.combination(z)],
                    coords: [x, y, z],
                });
            }
        }
    }
    Ok(out)
}
