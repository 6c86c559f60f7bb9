use num_bigint::BigInt;
use proptest::prelude::*;
use symknot::algebra::{inverse_exact, smith_normal_form, smith_normal_form_with_transforms, AlgebraError, BiLaurent, IntMatrix, RatFunc};

mod common;

fn s_half() -> BiLaurent {
    BiLaurent::monomial(1, 1, 0)
}

fn poly(terms: &[((i64, i64), i64)]) -> BiLaurent {
    BiLaurent::from_terms(terms.iter().copied())
}

#[test]
fn difference_of_squares() {
    let a = poly(&[((1, 0), 1), ((-1, 0), 1)]);
    let b = poly(&[((1, 0), 1), ((-1, 0), -1)]);
    assert_eq!(&a * &b, poly(&[((2, 0), 1), ((-2, 0), -1)]));
}

#[test]
fn exact_division() {
    let num = poly(&[((2, 0), 1), ((-2, 0), -1)]);
    let den = poly(&[((1, 0), 1), ((-1, 0), 1)]);
    assert_eq!(num.divide_exact(&den).unwrap(), poly(&[((1, 0), 1), ((-1, 0), -1)]));
    assert_eq!(num.divide_exact(&BiLaurent::one()).unwrap(), num);
    let s1 = poly(&[((2, 0), 1), ((0, 0), 1)]);
    let t1 = poly(&[((0, 2), 1), ((0, 0), 1)]);
    assert_eq!(s1.divide_exact(&t1), Err(AlgebraError::NotDivisible));
    assert_eq!(s1.divide_exact(&BiLaurent::zero()), Err(AlgebraError::DivisionByZero));
}

#[test]
fn ratfunc_reduces_to_laurent() {
    let num = poly(&[((0, 2), 1), ((0, -2), -1)]);
    let den = poly(&[((0, 1), 1), ((0, -1), 1)]);
    let r = RatFunc::new(num, den).unwrap();
    assert!(r.is_laurent());
    assert_eq!(r.as_laurent().unwrap(), &poly(&[((0, 1), 1), ((0, -1), -1)]));
    assert_eq!(r.to_canonical_string(), "-1*t^-1/2 + 1*t^1/2");
}

#[test]
fn ratfunc_keeps_proper_fractions() {
    let r = RatFunc::new(BiLaurent::one(), poly(&[((0, 2), 1), ((0, 0), 1)])).unwrap();
    assert!(!r.is_laurent());
    assert!(RatFunc::new(BiLaurent::one(), BiLaurent::zero()).is_err());
    // sign convention lives in the denominator
    let neg = RatFunc::new(BiLaurent::one(), poly(&[((0, 2), -1), ((0, 0), -1)])).unwrap();
    assert_eq!(neg, -r);
}

#[test]
fn canonical_format() {
    let p = poly(&[((-1, 3), -1), ((0, 0), 2)]);
    assert_eq!(p.to_canonical_string(), "-1*s^-1/2*t^3/2 + 2");
    assert_eq!(BiLaurent::zero().to_canonical_string(), "0");
    assert_eq!(s_half().to_canonical_string(), "1*s^1/2");
}

#[test]
fn smith_examples() {
    let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
    assert_eq!(smith_normal_form(&m), vec![BigInt::from(2), BigInt::from(4)]);
    let oracle = common::smith_by_minors(&[vec![2, 4], vec![6, 8]]);
    assert_eq!(oracle, vec![2, 4]);
    assert_eq!(smith_normal_form(&IntMatrix::identity(3)), vec![BigInt::from(1); 3]);
    assert_eq!(smith_normal_form(&IntMatrix::zeros(2, 2)), vec![BigInt::from(0); 2]);
}

#[test]
fn inverse_examples() {
    let id = IntMatrix::identity(3);
    assert_eq!(inverse_exact(&id).unwrap().to_integral().unwrap(), id);
    let r = IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]);
    assert_eq!(inverse_exact(&r).unwrap().to_integral().unwrap(), IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]));
    assert_eq!(inverse_exact(&IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]])).unwrap_err(), AlgebraError::Singular);
}

#[test]
fn seifert_fixture_skew_part_is_unimodular() {
    let text = include_str!("../fixtures/d4_twist2.mat");
    let v = IntMatrix::parse(text).unwrap();
    let skew = v.transpose().sub(&v).unwrap();
    let det = skew.det().unwrap();
    assert_eq!(det.magnitude(), &1u32.into());
    let inv = inverse_exact(&skew).unwrap();
    assert!(inv.is_integral());
    assert_eq!(skew.mul(&inv.to_integral().unwrap()).unwrap(), IntMatrix::identity(10));
}

#[test]
fn matrix_parse_errors_name_the_line() {
    match IntMatrix::parse("2 2\n1 2\n3 x\n") {
        Err(AlgebraError::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("{other:?}"),
    }
}

fn arb_poly() -> impl Strategy<Value = BiLaurent> {
    prop::collection::vec(((-4i64..=4, -4i64..=4), -5i64..=5), 0..6).prop_map(BiLaurent::from_terms)
}

fn arb_nonzero() -> impl Strategy<Value = BiLaurent> {
    arb_poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Smaller inputs for the rational-function laws: every operation runs a bivariate gcd.
fn arb_small() -> impl Strategy<Value = BiLaurent> {
    prop::collection::vec(((-2i64..=2, -2i64..=2), -3i64..=3), 1..4)
        .prop_map(BiLaurent::from_terms)
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i128>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i128..=9, c), r))
}

fn to_int(m: &[Vec<i128>]) -> IntMatrix {
    IntMatrix::from_rows(&m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<Vec<i64>>>())
}

proptest! {
    #[test]
    fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert!((&a - &a).terms().next().is_none());
    }

    #[test]
    fn no_zero_terms(a in arb_poly(), b in arb_poly()) {
        prop_assert!((&a * &b).terms().all(|(_, c)| *c != BigInt::from(0)));
        prop_assert!((&a + &b).terms().all(|(_, c)| *c != BigInt::from(0)));
    }

    #[test]
    fn division_inverts_multiplication(a in arb_poly(), b in arb_nonzero()) {
        prop_assert_eq!((&a * &b).divide_exact(&b).unwrap(), a);
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_normalization(a in arb_small(), b in arb_small(), k in arb_small()) {
        let r = RatFunc::new(a.clone(), b.clone()).unwrap();
        let again = RatFunc::new(r.numerator().clone(), r.denominator().clone()).unwrap();
        prop_assert_eq!(&again, &r);
        let scaled = RatFunc::new(&a * &k, &b * &k).unwrap();
        prop_assert_eq!(&scaled, &r);
        prop_assert!(scaled.cross_eq(&r));
    }

    #[test]
    fn ratfunc_field_laws(a in arb_small(), b in arb_small(), c in arb_small(), d in arb_small()) {
        let x = RatFunc::new(a, b).unwrap();
        let y = RatFunc::new(c, d).unwrap();
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&(&x + &y) - &y).cross_eq(&x));
    }

}

proptest! {
    #[test]
    fn smith_matches_minors(m in arb_matrix()) {
        let got: Vec<BigInt> = smith_normal_form(&to_int(&m));
        let want: Vec<BigInt> = common::smith_by_minors(&m).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn smith_transforms(m in arb_matrix()) {
        let a = to_int(&m);
        let s = smith_normal_form_with_transforms(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.diag_matrix());
    }
}
