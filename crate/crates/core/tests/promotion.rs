mod common;

use z2norm::cohomology::{enumerate_rank2_subgroups, h1_z2};
use z2norm::colouring::colour_rank2;
use z2norm::flips::{default_max_steps, promote_to_ii4_free, FlipError};
use z2norm::lst::{classify_lst, find_maximal_lsts};
use z2norm::tri::{check_closed_orientable, compute_skeleton};

#[test]
fn promotion_reaches_ii4_free_on_rank2_corpus() {
    let mut flipped = 0;
    let mut stuck = 0usize;
    for (name, t) in common::rank2_corpus() {
        let s = compute_skeleton(&t).unwrap();
        let rank = h1_z2(&s).rank();
        for h in enumerate_rank2_subgroups(&h1_z2(&s)).unwrap() {
            let p = match promote_to_ii4_free(&t, &h, default_max_steps(&t)) {
                Ok(p) => p,
                Err(FlipError::PromotionStuck { trace, .. }) if trace.is_empty() && common::breaks_minimality(&t, &h) => {
                    stuck += 1;
                    continue;
                }
                Err(e) => panic!("{name}: {e}"),
            };
            let u = &p.triangulation;
            assert_eq!(u.tet_count(), t.tet_count(), "{name}");
            check_closed_orientable(u).unwrap();
            let us = compute_skeleton(u).unwrap();
            assert_eq!(h1_z2(&us).rank(), rank, "{name}");
            let c = colour_rank2(&us, &p.subgroup, None).unwrap();
            for d in find_maximal_lsts(u, &us) {
                assert!(!classify_lst(&c, &d).unwrap().ii4, "{name}: (II,4) torus left");
            }
            if let Some(last) = p.trace.last() {
                assert_eq!(last.ii4_lsts, 0, "{name}");
            }
            flipped += p.trace.len();
        }
    }
    assert!(flipped > 0, "no input needed promotion");
    println!("{stuck} subgroup runs stopped on non-minimal inputs");
}

#[test]
fn loops_need_no_promotion() {
    for (name, t) in common::twisted_loops((2..=12).step_by(2)) {
        let s = compute_skeleton(&t).unwrap();
        let h = enumerate_rank2_subgroups(&h1_z2(&s)).unwrap().remove(0);
        let p = promote_to_ii4_free(&t, &h, 0).unwrap();
        assert!(p.trace.is_empty(), "{name}");
        assert_eq!(p.triangulation, t);
    }
}

#[test]
fn zero_step_budget_is_reported() {
    let (name, t) = common::fixtures().into_iter().find(|(n, _)| n.contains("-ii4-")).unwrap();
    let s = compute_skeleton(&t).unwrap();
    let mut limited = false;
    for h in enumerate_rank2_subgroups(&h1_z2(&s)).unwrap() {
        match promote_to_ii4_free(&t, &h, 0) {
            Err(FlipError::StepLimitExceeded { max_steps: 0, trace }) => {
                assert!(trace.is_empty());
                limited = true;
            }
            Ok(p) => assert!(p.trace.is_empty()),
            Err(e) => panic!("{name}: {e}"),
        }
    }
    assert!(limited, "{name}");
}
