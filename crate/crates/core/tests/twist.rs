use symknot::bracket::jones;
use symknot::diagram::same_diagram;
use symknot::refined::{refined_w, Resolution};
use symknot::spin::{potts_model, DEFAULT_TOL};
use symknot::twist::{resolve_axis_crossing, top_bottom, twist, twist_partial, twist_spec, TwistError, TwistSpec};
use symknot::Diagram;

mod common;
use common::*;

fn symmetric_fixtures() -> Vec<Diagram> {
    vec![d4(), d4_prime(), axis_kink(), fixture("u1_kinks"), Diagram::unlink(2, true)]
}

#[test]
fn twist_one_is_identity() {
    for d in symmetric_fixtures() {
        assert!(same_diagram(&twist(&d, 1).unwrap(), &d));
        assert_eq!(jones(&twist(&d, 1).unwrap()).unwrap(), jones(&d).unwrap());
    }
}

#[test]
fn axis_counts_scale() {
    for d in symmetric_fixtures() {
        let k = d.axis_crossings().len();
        for h in -4..=4i64 {
            let t = twist(&d, h).unwrap();
            assert_eq!(t.axis_crossings().len(), h.unsigned_abs() as usize * k);
            assert_eq!(t.len(), d.len() - k + h.unsigned_abs() as usize * k);
            t.validate().unwrap();
            let r = t.validate_symmetric_union();
            assert!(r.passed(), "h={h}: {:?}", r.failures);
        }
    }
}

#[test]
fn negative_twist_flips_axis_signs() {
    let d = d4();
    let pos: Vec<i32> = d.axis_crossings().iter().map(|&c| d.crossing(c).sign()).collect();
    let t = twist(&d, -1).unwrap();
    let neg: Vec<i32> = t.axis_crossings().iter().map(|&c| t.crossing(c).sign()).collect();
    let mut a: Vec<i32> = pos.iter().map(|s| -s).collect();
    let mut b = neg;
    a.sort();
    b.sort();
    assert_eq!(a, b);
}

#[test]
fn zero_twists_coincide() {
    assert!(same_diagram(&twist(&d4(), 0).unwrap(), &twist(&d4_prime(), 0).unwrap()));
}

#[test]
fn partial_twists() {
    let d = d4();
    assert!(same_diagram(&twist_partial(&d, 1, 1, 1).unwrap(), &d));
    assert!(same_diagram(&twist_partial(&d, 0, 1, 0).unwrap(), &d4_prime()));
    assert!(same_diagram(&twist_partial(&d, 0, 2, 0).unwrap(), &twist(&d4_prime(), 2).unwrap()));
    for h in 1..=3 {
        assert!(same_diagram(&twist_partial(&d, h, h, h).unwrap(), &twist(&d, h).unwrap()));
    }
    assert_eq!(jones(&twist_partial(&d, 0, 1, 0).unwrap()).unwrap(), jones(&d4_prime()).unwrap());
}

#[test]
fn designation_errors() {
    assert!(matches!(twist_partial(&axis_kink(), 0, 1, 0), Err(TwistError::InvalidDesignation)));
    let mut spec = TwistSpec::uniform(1);
    spec.overrides.insert(99, 2);
    assert!(matches!(twist_spec(&d4(), &spec), Err(TwistError::BadIndex(99))));
    assert!(matches!(resolve_axis_crossing(&d4(), 99, Resolution::Vertical), Err(TwistError::BadIndex(99))));
}

#[test]
fn resolutions() {
    let d = twist_partial(&d4(), 2, 1, 2).unwrap();
    let (top, bottom) = top_bottom(&d).unwrap();
    let x = resolve_axis_crossing(&d, top, Resolution::Horizontal).unwrap();
    let x = resolve_axis_crossing(&x, bottom, Resolution::Vertical).unwrap();
    x.validate().unwrap();
    assert_eq!(x.component_count(), 2);

    let d = d4();
    let (top, bottom) = top_bottom(&d).unwrap();
    let x = resolve_axis_crossing(&d, top, Resolution::Horizontal).unwrap();
    let x = resolve_axis_crossing(&x, bottom, Resolution::Horizontal).unwrap();
    assert_eq!(x.component_count(), 3);

    for (k, h) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        let d = twist_partial(&d4(), k, h, k).unwrap();
        let (top, bottom) = top_bottom(&d).unwrap();
        let x = resolve_axis_crossing(&d, top, Resolution::Vertical).unwrap();
        let x = resolve_axis_crossing(&x, bottom, Resolution::Vertical).unwrap();
        assert!(same_diagram(&x, &twist_partial(&d4(), k - 1, h, k - 1).unwrap()), "k={k} h={h}");
    }
}

#[test]
fn twisted_pairs_share_invariants() {
    for h in -2..=2 {
        let (a, b) = (twist(&d4(), h).unwrap(), twist(&d4_prime(), h).unwrap());
        assert_eq!(refined_w(&a).unwrap(), refined_w(&b).unwrap(), "h={h}");
        for n in [2, 3, 4] {
            let m = potts_model(n, -1, 0, None, DEFAULT_TOL).unwrap();
            assert!(m.normalized_i(&a).unwrap().close(m.normalized_i(&b).unwrap(), 1e-9), "h={h} n={n}");
        }
    }
}

#[test]
fn twisted_pairs_are_different_diagrams() {
    let (a, b) = (twist(&d4(), 2).unwrap(), twist(&d4_prime(), 2).unwrap());
    assert!(!same_diagram(&a, &b));
}
