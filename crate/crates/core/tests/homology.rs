use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symknot::homology::{
    alexander_polynomial, branched_presentation, gamma, h1_branched_cover, random_seifert_form, random_unimodular,
    resultant, resultant_order, resultant_sylvester, HomologyError, SeifertMatrix,
};
use symknot::{IntMatrix, Laurent};

mod common;
use common::*;

fn trefoil_form() -> SeifertMatrix {
    SeifertMatrix::new(IntMatrix::from_rows(&[vec![-1, 1], vec![0, -1]])).unwrap()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_i128().unwrap()).collect()).collect()
}

/// |Π_{j=1}^{k-1} Δ(ω^j)| evaluated numerically.
fn root_product(delta: &Laurent, k: u32) -> f64 {
    let mut p = Complex64::new(1.0, 0.0);
    for j in 1..k {
        let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / k as f64);
        let v: Complex64 = delta.terms().map(|(e, c)| w.powi(e as i32) * c.to_f64().unwrap()).sum();
        p *= v;
    }
    p.norm()
}

/// Leading coefficient positive and lowest exponent zero.
fn normalize(p: &Laurent) -> Laurent {
    let q = p.shift(-p.min_exp().unwrap());
    if q.coeff(q.max_exp().unwrap()).is_negative() {
        &Laurent::zero() - &q
    } else {
        q
    }
}

#[test]
fn trefoil_gamma() {
    let v = trefoil_form();
    let g = gamma(&v).unwrap();
    // (V^t - V)^{-1} = [[0,1],[-1,0]], so Gamma = -V [[0,1],[-1,0]]
    assert_eq!(g, IntMatrix::from_rows(&[vec![1, 1], vec![-1, 0]]));
    let p = branched_presentation(&v, 3).unwrap();
    let h = h1_branched_cover(&v, 3).unwrap();
    assert_eq!(laplace_det(&to_i128(&p)).abs(), resultant_order(&v, 3).unwrap().to_i128().unwrap());
    assert_eq!(h.order().unwrap(), resultant_order(&v, 3).unwrap());
    assert_eq!(h1_branched_cover(&v, 2).unwrap().factors, big(&[3]));
}

#[test]
fn trefoil_alexander() {
    let d = alexander_polynomial(&trefoil_form()).unwrap();
    assert_eq!(normalize(&d), Laurent::from_terms([(0, 1), (1, -1), (2, 1)]));
}

#[test]
fn double_cover_is_determinant() {
    for name in ["D4_twist2", "D4prime_twist2"] {
        let v = SeifertMatrix::fixture(name).unwrap();
        let m = v.matrix();
        let sym = to_i128(&m.add(&m.transpose()).unwrap());
        let h = h1_branched_cover(&v, 2).unwrap();
        assert_eq!(h.order().unwrap().to_i128().unwrap(), laplace_det(&sym).abs());
        assert!(h.is_divisibility_chain());
    }
}

#[test]
fn seifert_fixtures() {
    let v = SeifertMatrix::fixture("D4_twist2").unwrap();
    let w = SeifertMatrix::fixture("D4prime_twist2").unwrap();
    assert_eq!((v.size(), w.size()), (10, 8));
    assert!(gamma(&v).is_ok() && gamma(&w).is_ok());
    let hv = h1_branched_cover(&v, 3).unwrap();
    let hw = h1_branched_cover(&w, 3).unwrap();
    assert_eq!(hv.factors, big(&[7, 7, 7, 7]));
    assert_eq!(hw.factors, big(&[49, 49]));
    assert_eq!((hv.free_rank, hw.free_rank), (0, 0));
    assert_eq!(hv.to_string(), "7 7 7 7");
    for s in [&v, &w] {
        assert_eq!(resultant_order(s, 3).unwrap(), BigInt::from(2401));
        assert!((root_product(&alexander_polynomial(s).unwrap(), 3) - 2401.0).abs() < 1e-6);
    }
}

#[test]
fn presentation_snf_matches_minors() {
    let v = trefoil_form();
    let p = to_i128(&branched_presentation(&v, 4).unwrap());
    let oracle: Vec<i128> = smith_by_minors(&p).into_iter().map(i128::abs).filter(|&d| d > 1).collect();
    let got: Vec<i128> = h1_branched_cover(&v, 4).unwrap().factors.iter().map(|x| x.to_i128().unwrap()).collect();
    assert_eq!(got, oracle);
}

#[test]
fn random_forms_match_resultant() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..20 {
        let v = random_seifert_form(&mut rng, 1 + i % 3, 2);
        let delta = alexander_polynomial(&v).unwrap();
        for k in [2, 3] {
            let h = h1_branched_cover(&v, k).unwrap();
            let r = resultant_order(&v, k).unwrap();
            let numeric = root_product(&delta, k);
            match h.order() {
                Some(o) => {
                    assert_eq!(o, r, "form {i} k={k}");
                    assert!((numeric - r.to_f64().unwrap()).abs() < 1e-6 * numeric.max(1.0));
                }
                None => assert_eq!(r, BigInt::from(0)),
            }
        }
    }
}

#[test]
fn congruence_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["D4_twist2", "D4prime_twist2"] {
        let v = SeifertMatrix::fixture(name).unwrap();
        let p = random_unimodular(&mut rng, v.size(), 12);
        let w = v.congruent(&p).unwrap();
        assert_eq!(h1_branched_cover(&v, 3).unwrap(), h1_branched_cover(&w, 3).unwrap());
    }
}

#[test]
fn resultant_variants_agree() {
    // Res(t - 2, t^2 + t + 1) = 4 + 2 + 1
    assert_eq!(resultant(&big(&[-2, 1]), &big(&[1, 1, 1])), BigInt::from(7));
    assert_eq!(resultant_sylvester(&big(&[-2, 1]), &big(&[1, 1, 1])), BigInt::from(7));
    assert_eq!(resultant(&big(&[1, 0, 1]), &big(&[-1, 0, 1])), BigInt::from(4));
}

#[test]
fn errors() {
    assert!(matches!(
        SeifertMatrix::new(IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]])),
        Err(HomologyError::NotUnimodular(_))
    ));
    assert!(matches!(SeifertMatrix::fixture("nope"), Err(HomologyError::UnknownFixture(_))));
    assert!(matches!(h1_branched_cover(&trefoil_form(), 1), Err(HomologyError::BadFold(1))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resultant_matches_sylvester(a in prop::collection::vec(-5i64..=5, 1..5), b in prop::collection::vec(-5i64..=5, 1..5)) {
        let (a, b) = (big(&a), big(&b));
        prop_assume!(a.last().map(|x| x != &BigInt::from(0)).unwrap_or(false));
        prop_assume!(b.last().map(|x| x != &BigInt::from(0)).unwrap_or(false));
        prop_assert_eq!(resultant(&a, &b), resultant_sylvester(&a, &b));
    }

    #[test]
    fn gamma_is_integral_on_random_forms(seed in any::<u64>(), genus in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_seifert_form(&mut rng, genus, 3);
        prop_assert!(gamma(&v).is_ok());
        let o = resultant_order(&v, 2).unwrap();
        let m = v.matrix();
        let det = laplace_det(&to_i128(&m.add(&m.transpose()).unwrap())).abs();
        prop_assert_eq!(o.to_i128().unwrap(), det);
    }
}
