//! Full per-subgroup analysis and the complexity-bound certificate.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{enumerate_rank2_subgroups, h1_z2, Rank2Subgroup};
use crate::colouring::{colour_rank2, counts, verify_identities, ColouringError, IdentityReport, TetType, TetTypeCounts};
use crate::generators::twisted_layered_loop;
use crate::lst::{classify_lst, find_degree3_bases, find_maximal_lsts, LstDescriptor, LstError};
use crate::normal::{canonical_dual_surface, canonical_quad_surface, NormalError, QuadSurfaceAnalysis};
use crate::tri::{are_isomorphic, check_closed_orientable, compute_skeleton, Skeleton, TriError, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error(transparent)]
    Tri(#[from] TriError),
    #[error(transparent)]
    Normal(#[from] NormalError),
    #[error(transparent)]
    Colouring(#[from] ColouringError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangulationSummary {
    pub tetrahedra: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub min_degree: usize,
    pub orientable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadComponentRecord {
    pub euler: i64,
    pub orientable: bool,
    pub genus: i64,
    pub is_sphere: bool,
    pub embedded: bool,
    pub one_quad_per_tet: bool,
    pub quads: u32,
    /// Intersection parities with the edge classes, for embedded components.
    pub dual_class: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadSurfaceRecord {
    pub components: Vec<QuadComponentRecord>,
    pub euler_sum: i64,
    /// `T + Σχ = 2` for three components on a one-vertex triangulation.
    pub euler_sum_check: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LstRecord {
    pub tets: Vec<usize>,
    pub layering_edges: Vec<usize>,
    pub boundary_edges: Vec<usize>,
    pub boundary_degrees: Vec<usize>,
    pub univalent_edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LstTyping {
    /// `II`, `IV`, `mixed`, or the single unexpected type found.
    pub kind: String,
    pub ii4: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EqualityCondition {
    pub one_vertex: bool,
    pub three_embedded_components: bool,
    pub no_sphere_component: bool,
    pub all_type_v: bool,
    pub all_edges_even: bool,
}

impl EqualityCondition {
    pub fn all_true(&self) -> bool {
        self.one_vertex
            && self.three_embedded_components
            && self.no_sphere_component
            && self.all_type_v
            && self.all_edges_even
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tautness {
    /// The input is a twisted layered loop with an even number of
    /// tetrahedra, whose canonical surfaces are known to be taut.
    CertifiedFamily,
    Unverified,
}

pub const BOUND_NOTE: &str = "bound valid iff canonical surfaces taut";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupRecord {
    /// The three nonzero classes as edge bit strings, `φ3 = φ1 + φ2`.
    pub classes: [String; 3],
    pub counts: TetTypeCounts,
    /// χ of the canonical dual surface of each class.
    pub surface_euler: [i64; 3],
    /// Whether the closed-form χ agreed with the cell count for all three.
    pub surface_euler_formula_agrees: bool,
    pub identities: IdentityReport,
    pub lst_types: Vec<LstTyping>,
    pub ii4_lsts: usize,
    /// `2 + Σ max(0, -χ(S_φ))`; a lower bound for the tetrahedron count
    /// exactly when the three canonical surfaces are taut.
    pub candidate_lower_bound: i64,
    pub bound_note: String,
    pub equality_condition: EqualityCondition,
    /// The three quad components' dual classes are the nonzero classes.
    pub quad_duals_match: bool,
    pub tautness: Tautness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub summary: TriangulationSummary,
    pub h1_rank: usize,
    /// `applicable` for one-vertex triangulations, `not-applicable` otherwise.
    pub colouring: String,
    pub quad_surface: QuadSurfaceRecord,
    pub lsts: Vec<LstRecord>,
    /// `(edge, index into lsts)` for degree-3 edges inside a detected torus.
    pub degree3_bases: Vec<(usize, usize)>,
    pub subgroups: Vec<SubgroupRecord>,
    pub notes: Vec<String>,
}

pub fn summarize(t: &Triangulation, s: &Skeleton, orientable: bool) -> TriangulationSummary {
    TriangulationSummary {
        tetrahedra: t.tet_count(),
        vertices: s.vertex_count(),
        edges: s.edge_count(),
        faces: s.face_count(),
        degree_histogram: s.degree_histogram(),
        min_degree: s.min_degree().unwrap_or(0),
        orientable,
    }
}

fn quad_record(q: &QuadSurfaceAnalysis) -> QuadSurfaceRecord {
    QuadSurfaceRecord {
        components: q
            .components
            .iter()
            .map(|c| QuadComponentRecord {
                euler: c.euler,
                orientable: c.classification.orientable,
                genus: c.classification.genus,
                is_sphere: c.classification.is_sphere,
                embedded: c.embedded,
                one_quad_per_tet: c.one_quad_per_tet,
                quads: c.coordinates.tets.iter().map(|x| x[4..].iter().sum::<u32>()).sum(),
                dual_class: c.dual.as_ref().map(|d| d.values.to_string()),
            })
            .collect(),
        euler_sum: q.euler_sum(),
        euler_sum_check: q.euler_sum_check,
    }
}

fn lst_record(d: &LstDescriptor) -> LstRecord {
    LstRecord {
        tets: d.tets.clone(),
        layering_edges: d.layering_edges.clone(),
        boundary_edges: d.boundary_edges.iter().map(|e| e.edge).collect(),
        boundary_degrees: d.boundary_edges.iter().map(|e| e.degree).collect(),
        univalent_edge: d.univalent_edge,
    }
}

/// Evaluates the five flags of the equality condition.
pub fn check_equality_condition(
    s: &Skeleton,
    q: &QuadSurfaceAnalysis,
    tet_types: Option<&[TetType]>,
) -> EqualityCondition {
    let flags = EqualityCondition {
        one_vertex: s.vertex_count() == 1,
        three_embedded_components: q.components.len() == 3
            && q.components.iter().all(|c| c.embedded && c.one_quad_per_tet),
        no_sphere_component: q.components.iter().all(|c| !c.classification.is_sphere),
        all_type_v: tet_types.is_some_and(|ts| ts.iter().all(|&k| k == TetType::V)),
        all_edges_even: s.edges.iter().all(|e| e.degree() % 2 == 0),
    };
    if flags.one_vertex && flags.three_embedded_components {
        assert!(flags.all_edges_even, "three embedded quad components force even degrees");
    }
    flags
}

/// Whether `t` is the twisted layered loop with an even number of
/// tetrahedra, up to relabelling.
pub fn is_even_twisted_loop(t: &Triangulation) -> bool {
    let k = t.tet_count();
    k >= 2 && k % 2 == 0 && twisted_layered_loop(k).is_ok_and(|c| are_isomorphic(t, &c).is_some())
}

fn subgroup_record(
    t: &Triangulation,
    s: &Skeleton,
    q: &QuadSurfaceAnalysis,
    lsts: &[LstDescriptor],
    h: &Rank2Subgroup,
    certified: bool,
) -> Result<SubgroupRecord, ReportError> {
    let c = colour_rank2(s, h, None)?;
    let tc = counts(&c, s);
    let mut surface_euler = [0i64; 3];
    let mut agrees = true;
    for (i, phi) in h.classes.iter().enumerate() {
        let d = canonical_dual_surface(s, t, phi)?;
        surface_euler[i] = d.complex.euler();
        agrees &= d.formula_euler == surface_euler[i];
    }
    let min_degree_ok = s.min_degree().is_some_and(|d| d >= 3);
    let identities = verify_identities(&tc, surface_euler, min_degree_ok);
    let lst_types: Vec<LstTyping> = lsts
        .iter()
        .map(|d| match classify_lst(&c, d) {
            Ok(class) => LstTyping { kind: format!("{:?}", class.kind), ii4: class.ii4 },
            Err(LstError::MixedTypes { .. }) => LstTyping { kind: "mixed".into(), ii4: false },
            Err(LstError::UnexpectedType { kind, .. }) => LstTyping { kind: format!("{kind:?}"), ii4: false },
        })
        .collect();
    let kinds: Vec<TetType> = c.tets.iter().map(|x| x.kind).collect();
    let flags = check_equality_condition(s, q, Some(&kinds));
    let duals: Vec<_> = q.components.iter().filter_map(|x| x.dual.clone()).collect();
    let quad_duals_match = duals.len() == 3 && h.classes.iter().all(|phi| duals.contains(phi));
    Ok(SubgroupRecord {
        classes: h.classes.clone().map(|phi| phi.values.to_string()),
        counts: tc,
        surface_euler,
        surface_euler_formula_agrees: agrees,
        identities,
        ii4_lsts: lst_types.iter().filter(|l| l.ii4).count(),
        lst_types,
        candidate_lower_bound: 2 + surface_euler.iter().map(|&x| (-x).max(0)).sum::<i64>(),
        bound_note: BOUND_NOTE.to_string(),
        equality_condition: flags,
        quad_duals_match,
        tautness: if certified { Tautness::CertifiedFamily } else { Tautness::Unverified },
    })
}

/// Analyses a closed orientable triangulation. Multi-vertex inputs get the
/// cohomology and quad-surface sections only.
pub fn analyze(t: &Triangulation) -> Result<AnalysisReport, ReportError> {
    check_closed_orientable(t)?;
    let s = compute_skeleton(t)?;
    let h = h1_z2(&s);
    let q = canonical_quad_surface(&s, t)?;
    let lsts = find_maximal_lsts(t, &s);
    let mut notes = Vec::new();
    let mut subgroups = Vec::new();
    let one_vertex = s.vertex_count() == 1;
    if !one_vertex {
        notes.push(format!("{} vertices: colouring sections not applicable", s.vertex_count()));
    } else if h.rank() < 2 {
        notes.push(format!("H^1(M;Z2) has rank {}: no rank-2 subgroup", h.rank()));
    } else {
        let certified = is_even_twisted_loop(t);
        for sub in enumerate_rank2_subgroups(&h).expect("rank checked") {
            subgroups.push(subgroup_record(t, &s, &q, &lsts, &sub, certified)?);
        }
    }
    Ok(AnalysisReport {
        summary: summarize(t, &s, true),
        h1_rank: h.rank(),
        colouring: if one_vertex { "applicable" } else { "not-applicable" }.to_string(),
        quad_surface: quad_record(&q),
        degree3_bases: find_degree3_bases(&s, &lsts),
        lsts: lsts.iter().map(lst_record).collect(),
        subgroups,
        notes,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_json(report: &AnalysisReport) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serialises");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twisted_loop_four() {
        let r = analyze(&twisted_layered_loop(4).unwrap()).unwrap();
        assert_eq!(r.h1_rank, 2);
        assert_eq!(r.subgroups.len(), 1);
        let sub = &r.subgroups[0];
        assert_eq!(sub.candidate_lower_bound, 4);
        assert!(sub.equality_condition.all_true());
        assert!(sub.quad_duals_match);
        assert_eq!(sub.tautness, Tautness::CertifiedFamily);
        assert!(sub.identities.all_hold());
        assert!(r.lsts.is_empty());
    }

    #[test]
    fn odd_loop_has_rank_one() {
        let r = analyze(&twisted_layered_loop(3).unwrap()).unwrap();
        assert_eq!(r.h1_rank, 1);
        assert!(r.subgroups.is_empty());
        assert_eq!(r.notes.len(), 1);
    }

    #[test]
    fn reports_are_reproducible() {
        let t = twisted_layered_loop(6).unwrap();
        assert_eq!(to_json(&analyze(&t).unwrap()), to_json(&analyze(&t).unwrap()));
    }

    #[test]
    fn multi_vertex_gets_a_partial_report() {
        let mut t = Triangulation::with_tets(2);
        for f in 0..4 {
            t.glue(0, f, 1, crate::tri::Perm::IDENTITY).unwrap();
        }
        let r = analyze(&t).unwrap();
        assert_eq!(r.colouring, "not-applicable");
        assert!(r.subgroups.is_empty());
        let s = compute_skeleton(&t).unwrap();
        let q = canonical_quad_surface(&s, &t).unwrap();
        assert!(!check_equality_condition(&s, &q, None).one_vertex);
    }
}
