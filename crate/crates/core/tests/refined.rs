use symknot::algebra::{s_loop, t_loop, BiLaurent, RatFunc};
use symknot::bracket::jones;
use symknot::config::Caps;
use symknot::refined::{
    check_skein_conditions, refined_w, refined_w_recursive, resolve_axis, resolve_axis_with, RefinedError, Resolution, SkeinCoefficients,
};
use symknot::twist::twist;
use symknot::Diagram;

mod common;
use common::*;

fn positive_kink() -> Diagram {
    let k = axis_kink();
    if k.writhe().p_axis == 1 {
        k
    } else {
        k.mirror_image()
    }
}

fn s_mono(c: i64, half_steps: i64) -> BiLaurent {
    BiLaurent::monomial(c, half_steps, 0)
}

#[test]
fn no_axis_crossings_single_state() {
    let st = resolve_axis(&positive_trefoil()).unwrap();
    assert_eq!(st.len(), 1);
    assert_eq!(st[0].coefficient, BiLaurent::one());
    assert!(st[0].choices.is_empty());
}

#[test]
fn kink_states() {
    let st = resolve_axis(&positive_kink()).unwrap();
    assert_eq!(st.len(), 2);
    let h = st.iter().find(|s| s.choices == [Resolution::Horizontal]).unwrap();
    let v = st.iter().find(|s| s.choices == [Resolution::Vertical]).unwrap();
    assert_eq!(h.coefficient, s_mono(-1, -1));
    assert_eq!(h.diagram.component_count(), 2);
    assert_eq!(v.coefficient, s_mono(-1, -2));
    assert_eq!(v.diagram.component_count(), 1);
    assert!(st.iter().all(|s| s.diagram.axis_crossings().is_empty()));
}

#[test]
fn negative_kink_coefficients() {
    let k = positive_kink().mirror_image();
    let st = resolve_axis(&k).unwrap();
    let mut coeffs: Vec<BiLaurent> = st.iter().map(|s| s.coefficient.clone()).collect();
    coeffs.sort();
    let mut want = vec![s_mono(-1, 1), s_mono(-1, 2)];
    want.sort();
    assert_eq!(coeffs, want);
}

#[test]
fn d4_has_sixteen_states() {
    let st = resolve_axis(&d4()).unwrap();
    assert_eq!(st.len(), 16);
    for s in &st {
        assert!(s.diagram.axis_crossings().is_empty());
        // each coefficient is a product of four allowed factors, so a signed monomial in s
        assert_eq!(s.coefficient.len(), 1);
        let ((a, b), c) = s.coefficient.terms().next().unwrap();
        assert_eq!(b, 0);
        assert_eq!(c.clone(), 1.into());
        assert!(a.abs() <= 8);
    }
}

#[test]
fn unlinks() {
    let base = -s_loop();
    for m in 1..=4u32 {
        let w = refined_w(&Diagram::unlink(m as usize, true)).unwrap();
        assert_eq!(w, RatFunc::from(base.pow(m - 1)));
    }
}

#[test]
fn kink_is_one() {
    assert_eq!(refined_w(&positive_kink()).unwrap(), RatFunc::one());
    assert_eq!(refined_w(&axis_kink()).unwrap(), RatFunc::one());
}

#[test]
fn off_axis_value_is_the_closed_formula() {
    let t = positive_trefoil();
    assert_eq!(refined_w(&t).unwrap(), RatFunc::from(jones(&t).unwrap()));
    // two circles away from the axis: (s_loop / t_loop) * V(unlink)
    let d = Diagram::unlink(2, false);
    let want = &RatFunc::new(s_loop(), t_loop()).unwrap() * &RatFunc::from(jones(&d).unwrap());
    assert_eq!(refined_w(&d).unwrap(), want);
}

#[test]
fn d4_equals_d4_prime() {
    let (a, b) = (refined_w(&d4()).unwrap(), refined_w(&d4_prime()).unwrap());
    assert_eq!(a, b);
    assert!(a.is_laurent());
}

#[test]
fn expansion_order_does_not_matter() {
    for d in [d4(), d4_prime(), positive_kink(), fixture("u1_kinks"), twist(&d4_prime(), -2).unwrap()] {
        assert_eq!(refined_w(&d).unwrap(), refined_w_recursive(&d).unwrap());
    }
}

#[test]
fn knot_fixtures_are_laurent() {
    for d in [d4(), d4_prime(), fixture("u1_kinks"), twist(&d4(), 2).unwrap(), twist(&d4_prime(), -1).unwrap()] {
        assert!(refined_w(&d).unwrap().is_laurent());
    }
}

#[test]
fn axis_cap() {
    let caps = Caps { axis_crossings: 3, ..Caps::default() };
    assert!(matches!(resolve_axis_with(&d4(), &caps), Err(RefinedError::StateSpaceTooLarge { axis: 4, cap: 3 })));
}

#[test]
fn skein_conditions() {
    let w = check_skein_conditions(&SkeinCoefficients::refined_jones());
    assert!(w.passed());
    assert!(w.residual_b.is_zero() && w.residual_u.is_zero());
    assert!(check_skein_conditions(&SkeinCoefficients::potts_symbolic()).passed());
    let one = RatFunc::one();
    let trivial = SkeinCoefficients {
        a_plus: one.clone(),
        a_minus: one.clone(),
        b_plus: one.clone(),
        b_minus: one.clone(),
        u2: one.clone(),
        u3: one,
    };
    let r = check_skein_conditions(&trivial);
    assert!(!r.passed());
    assert!(r.residual_b.is_zero());
    assert_eq!(r.residual_u, RatFunc::from(BiLaurent::constant(3)));
}
