//! Billiard codings: projections, Sturmian planar codings and WSE candidates.

use wse_core::analysis::{balance_order, complexity, wse_verdict};
use wse_core::billiard::{classify, BilliardClass};
use wse_core::{analyze_sturmian, billiard_word, erase, BilliardConfig, SturmianVerdict};

fn config(d: &str, rho: &str) -> BilliardConfig {
    BilliardConfig::parse(d, rho).unwrap()
}

fn wse_candidates() -> Vec<BilliardConfig> {
    vec![
        config("1,(sqrt(5)-1)/2,(3-sqrt(5))/2", "0,(sqrt(5)-1)/2,(3-sqrt(5))/2"),
        config("1,sqrt(2),sqrt(3)", "0,sqrt(2)/2,sqrt(3)/3"),
        config("1,sqrt(2),sqrt(3)", "1/3,1/5,1/7"),
        config("sqrt(5),1,sqrt(2)", "0,0,0"),
        config("2,sqrt(2)+1,sqrt(6)", "1/2,sqrt(2)-1,0"),
    ]
}

fn planar() -> Vec<BilliardConfig> {
    vec![
        config("0,1,(1+sqrt(5))/2", "0,0,0"),
        config("sqrt(2),0,1", "0,0,1/2"),
        config("1,sqrt(3),0", "sqrt(3)-1,1/4,0"),
    ]
}

#[test]
fn corpus_classes() {
    assert!(wse_candidates().iter().all(|c| classify(c) == BilliardClass::WseCandidate));
    assert!(planar().iter().all(|c| classify(c) == BilliardClass::SturmianProjection));
}

#[test]
fn erasure_equals_projected_trajectory() {
    for c in wse_candidates() {
        let w = billiard_word(&c).prefix(1000).unwrap();
        for i in 0..3 {
            let e = erase(&w, i);
            let p = billiard_word(&c.project_out(i).unwrap()).prefix(e.len()).unwrap();
            assert_eq!(e, p, "{c:?} face {i}");
        }
    }
}

#[test]
fn planar_codings_are_sturmian() {
    for c in planar() {
        let w = billiard_word(&c).prefix(10_000).unwrap();
        let moving: Vec<u8> = (0..3).filter(|&i| !c.direction()[i as usize].is_zero()).collect();
        let mut map = [0u8; 3];
        map[moving[0] as usize] = 0;
        map[moving[1] as usize] = 1;
        let binary = w.relabel(&map);
        let p = complexity(&binary, 30).unwrap();
        assert!((1..=30).all(|n| p.get(n) == n as u64 + 1), "{c:?}");
        assert!(matches!(analyze_sturmian(&binary, 30).unwrap(), SturmianVerdict::Consistent { .. }));
    }
}

#[test]
fn wse_candidates_are_consistent_and_two_balanced() {
    for c in wse_candidates() {
        let w = billiard_word(&c).prefix(10_000).unwrap();
        let v = wse_verdict(&w, 30).unwrap();
        assert!(!v.refuted, "{c:?}: {:?}", v.first_refutation());
        assert!(balance_order(&w, 100).unwrap().order <= 2, "{c:?}");
    }
}

#[test]
fn corner_events_fuse() {
    // the diagonal passes through every integer point
    let c = config("1,1,1", "0,0,0");
    assert_eq!(classify(&c), BilliardClass::Periodic);
    assert_eq!(billiard_word(&c).prefix(9).unwrap().to_string(), "012012012");
}
