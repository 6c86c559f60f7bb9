use num_bigint::BigInt;
use std::collections::BTreeMap;
use symknot::algebra::{BiLaurent, Laurent};
use symknot::bracket::{jones, jones_with, kauffman_bracket, kauffman_bracket_with, states, BracketEngine, BracketError};
use symknot::config::Caps;
use symknot::twist::twist;
use symknot::Diagram;

mod common;
use common::*;

fn as_map(p: &Laurent) -> BTreeMap<i64, i64> {
    p.terms().map(|(e, c)| (e, i64::try_from(c).unwrap())).collect()
}

fn t_poly(terms: &[(i64, i64)]) -> BiLaurent {
    // exponents given in whole powers of t
    BiLaurent::from_terms(terms.iter().map(|&(e, c)| ((0, 2 * e), c)))
}

/// Value at t = 1.
fn at_one(p: &BiLaurent) -> BigInt {
    p.terms().map(|(_, c)| c.clone()).sum()
}

/// t -> 1/t
fn invert_t(p: &BiLaurent) -> BiLaurent {
    BiLaurent::from_terms(p.terms().map(|((a, b), c)| ((a, -b), c.clone())))
}

fn with_extra_circle(d: &Diagram) -> Diagram {
    let mut f = d.to_sud();
    f.free_loops.push(symknot::diagram::SudFreeLoop { crosses_axis: false });
    Diagram::from_sud(&f).unwrap()
}

#[test]
fn unknot() {
    assert_eq!(kauffman_bracket(&Diagram::unlink(1, false)).unwrap(), Laurent::one());
    assert_eq!(jones(&axis_kink()).unwrap(), BiLaurent::one());
}

#[test]
fn trefoil_bracket() {
    let t = positive_trefoil();
    let want = Laurent::from_terms([(5, -1), (-3, -1), (-7, 1)]);
    assert_eq!(kauffman_bracket(&t).unwrap(), want);
    assert_eq!(as_map(&want), pd_bracket(&t));
    let st = states(&t);
    assert_eq!(st.len(), 8);
    let mut loops: Vec<usize> = st.iter().map(|s| s.loops).collect();
    loops.sort();
    assert_eq!(loops, vec![1, 1, 1, 2, 2, 2, 2, 3]);
}

#[test]
fn trefoil_jones() {
    assert_eq!(jones(&positive_trefoil()).unwrap(), t_poly(&[(4, -1), (3, 1), (1, 1)]));
}

#[test]
fn unlink_jones() {
    let loop_value = BiLaurent::from_terms([((0, 1), -1), ((0, -1), -1)]);
    for m in 1..=4u32 {
        assert_eq!(jones(&Diagram::unlink(m as usize, true)).unwrap(), loop_value.pow(m - 1));
    }
}

#[test]
fn split_circle_multiplies_by_delta() {
    let delta = Laurent::from_terms([(2, -1), (-2, -1)]);
    for d in [positive_trefoil(), axis_kink(), d4_prime()] {
        assert_eq!(kauffman_bracket(&with_extra_circle(&d)).unwrap(), &delta * &kauffman_bracket(&d).unwrap());
    }
}

#[test]
fn fixtures_match_the_pd_oracle() {
    for d in [d4(), d4_prime(), fixture("u1_kinks"), axis_kink()] {
        assert_eq!(as_map(&kauffman_bracket(&d).unwrap()), pd_bracket(&d));
    }
}

#[test]
fn engines_agree() {
    let caps = Caps::default();
    for d in [d4(), d4_prime(), twist(&d4_prime(), 2).unwrap(), fixture("u1_kinks")] {
        assert_eq!(
            kauffman_bracket_with(&d, BracketEngine::StateSum, &caps).unwrap(),
            kauffman_bracket_with(&d, BracketEngine::Contraction, &caps).unwrap()
        );
    }
}

#[test]
fn d4_and_d4_prime_share_jones() {
    assert_eq!(jones(&d4()).unwrap(), jones(&d4_prime()).unwrap());
}

#[test]
fn mirror_inverts_t() {
    for d in [positive_trefoil(), d4(), fixture("u1_kinks")] {
        assert_eq!(jones(&d.mirror_image()).unwrap(), invert_t(&jones(&d).unwrap()));
    }
}

#[test]
fn value_at_one() {
    for d in [positive_trefoil(), d4(), d4_prime(), Diagram::unlink(3, true), with_extra_circle(&d4())] {
        let n = d.component_count() as u32;
        assert_eq!(at_one(&jones(&d).unwrap()), BigInt::from(-2).pow(n - 1));
    }
}

#[test]
fn state_cap() {
    let caps = Caps { bracket_states: 1 << 10, ..Caps::default() };
    let err = jones_with(&d4(), BracketEngine::StateSum, &caps).unwrap_err();
    assert!(matches!(err, BracketError::StateSpaceTooLarge { crossings: 16, .. }));
}
