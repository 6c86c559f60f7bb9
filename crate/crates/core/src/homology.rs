//! Branched-cover homology from Seifert forms, with an Alexander-polynomial resultant oracle.

use crate::algebra::{inverse_exact, smith_normal_form, AlgebraError, IntMatrix, Laurent};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("Seifert matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("|det(V^t - V)| = {0}, expected 1")]
    NotUnimodular(BigInt),
    #[error("Gamma is not integral")]
    NonIntegral,
    #[error("cover degree must be at least 2, got {0}")]
    BadFold(u32),
    #[error("unknown Seifert fixture {0:?}")]
    UnknownFixture(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A Seifert form of a knot: square with det(ᵗV - V) = ±1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertMatrix {
    v: IntMatrix,
}

pub const FIXTURE_NAMES: [&str; 2] = ["D4_twist2", "D4prime_twist2"];

impl SeifertMatrix {
    pub fn new(v: IntMatrix) -> Result<Self, HomologyError> {
        if !v.is_square() {
            return Err(HomologyError::NotSquare(v.rows(), v.cols()));
        }
        let det = v.transpose().sub(&v)?.det()?;
        if det.abs() != BigInt::one() {
            return Err(HomologyError::NotUnimodular(det));
        }
        Ok(Self { v })
    }

    pub fn parse(text: &str) -> Result<Self, HomologyError> {
        Self::new(IntMatrix::parse(text)?)
    }

    pub fn fixture(name: &str) -> Result<Self, HomologyError> {
        let text = match name {
            "D4_twist2" => include_str!("../fixtures/d4_twist2.mat"),
            "D4prime_twist2" => include_str!("../fixtures/d4prime_twist2.mat"),
            _ => return Err(HomologyError::UnknownFixture(name.into())),
        };
        Self::parse(text)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.v
    }

    pub fn size(&self) -> usize {
        self.v.rows()
    }

    /// ᵗP V P
    pub fn congruent(&self, p: &IntMatrix) -> Result<Self, HomologyError> {
        Self::new(p.transpose().mul(&self.v)?.mul(p)?)
    }
}

/// Finite abelian group plus free part: Z/d1 ⊕ ... ⊕ Z^r with d1 | d2 | ... and each d > 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroup {
    /// From a Smith diagonal: ones dropped, zeros counted as free rank.
    pub fn from_diagonal(diag: &[BigInt]) -> Self {
        let mut factors: Vec<BigInt> = diag.iter().map(|d| d.abs()).filter(|d| *d > BigInt::one()).collect();
        factors.sort();
        let free_rank = diag.iter().filter(|d| d.is_zero()).count();
        Self { factors, free_rank }
    }

    /// Order of the group, None when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.factors.iter().product())
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|d| d.to_string()).collect();
        parts.extend(std::iter::repeat_n("0".to_string(), self.free_rank));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// Γ = -V (ᵗV - V)^{-1}
pub fn gamma(v: &SeifertMatrix) -> Result<IntMatrix, HomologyError> {
    let m = v.matrix();
    let inv = inverse_exact(&m.transpose().sub(m)?)?;
    let inv = inv.to_integral().ok_or(HomologyError::NonIntegral)?;
    Ok(m.mul(&inv)?.scale(&BigInt::from(-1)))
}

/// Γ^k - (Γ - I)^k, a presentation matrix of H₁ of the k-fold cyclic branched cover.
pub fn branched_presentation(v: &SeifertMatrix, k: u32) -> Result<IntMatrix, HomologyError> {
    if k < 2 {
        return Err(HomologyError::BadFold(k));
    }
    let g = gamma(v)?;
    let id = IntMatrix::identity(g.rows());
    Ok(g.pow(k)?.sub(&g.sub(&id)?.pow(k)?)?)
}

pub fn h1_branched_cover(v: &SeifertMatrix, k: u32) -> Result<AbelianGroup, HomologyError> {
    Ok(AbelianGroup::from_diagonal(&smith_normal_form(&branched_presentation(v, k)?)))
}

fn eval_poly(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Δ(t) = det(tV - ᵗV), recovered by interpolation at t = 0..=n and
/// normalized to be symmetric in t ↔ t^{-1} with Δ(1) = 1.
pub fn alexander_polynomial(v: &SeifertMatrix) -> Result<Laurent, HomologyError> {
    let m = v.matrix();
    let n = m.rows();
    let vt = m.transpose();
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys = xs
        .iter()
        .map(|x| Ok(m.scale(x).sub(&vt)?.det()?))
        .collect::<Result<Vec<BigInt>, HomologyError>>()?;
    // Lagrange interpolation over Q, accumulated as dense coefficients
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (i, (xi, yi)) in xs.iter().zip(&ys).enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let xj = BigRational::from_integer(xj.clone());
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xj;
            }
            basis = next;
            denom *= BigRational::from_integer(xi.clone()) - xj;
        }
        let w = BigRational::from_integer(yi.clone()) / denom;
        for (c, b) in coeffs.iter_mut().zip(basis) {
            *c += b * &w;
        }
    }
    debug_assert!(xs.iter().zip(&ys).all(|(x, y)| eval_poly(&coeffs, &BigRational::from_integer(x.clone())) == BigRational::from_integer(y.clone())));
    let mut p = Laurent::zero();
    for (e, c) in coeffs.into_iter().enumerate() {
        debug_assert!(c.is_integer());
        p.add_term(e as i64, c.to_integer());
    }
    let (lo, hi) = (p.min_exp().unwrap_or(0), p.max_exp().unwrap_or(0));
    let p = p.shift(-(lo + hi) / 2);
    Ok(if p.eval_unit(1).is_negative() { -p } else { p })
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Resultant of two integer polynomials (dense, constant term first) by the
/// Euclidean remainder sequence over Q.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let to_q = |p: &[BigInt]| trim(p.iter().map(|c| BigRational::from_integer(c.clone())).collect());
    let (mut a, mut b) = (to_q(a), to_q(b));
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut acc = BigRational::one();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            acc *= b[0].pow(da as i32);
            break;
        }
        if da < db {
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // r = a mod b
        let mut r = a.clone();
        let lb = b[db].clone();
        while r.len() > db {
            let q = r.last().unwrap() / &lb;
            let shift = r.len() - 1 - db;
            for (k, c) in b.iter().enumerate() {
                r[shift + k] -= &q * c;
            }
            r.pop();
            r = trim(r);
            if r.len() <= db {
                break;
            }
        }
        let r = trim(r);
        if r.is_empty() {
            return BigInt::zero();
        }
        // Res(a, b) = (-1)^{da db} lc(b)^{da - dr} Res(b, r)
        let dr = r.len() - 1;
        if (da * db) % 2 == 1 {
            acc = -acc;
        }
        acc *= lb.pow((da - dr) as i32);
        a = b;
        b = r;
    }
    debug_assert!(acc.is_integer());
    acc.to_integer()
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn resultant_sylvester(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let trim_i = |p: &[BigInt]| {
        let mut v = p.to_vec();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    };
    let (a, b) = (trim_i(a), trim_i(b));
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut s = IntMatrix::zeros(size, size);
    for i in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            s[(i, i + k)] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            s[(n + i, i + k)] = c.clone();
        }
    }
    s.det().expect("square")
}

/// |Res(Δ(t), 1 + t + ... + t^{k-1})|, the order of H₁ of the k-fold branched cover (0 if infinite).
pub fn resultant_order(v: &SeifertMatrix, k: u32) -> Result<BigInt, HomologyError> {
    if k < 2 {
        return Err(HomologyError::BadFold(k));
    }
    let (_, delta) = alexander_polynomial(v)?.dense();
    let phi = vec![BigInt::one(); k as usize];
    Ok(resultant(&delta, &phi).abs())
}

/// A random Seifert form of genus `genus`: symmetric noise plus a hyperbolic
/// block sum, then a random unimodular change of basis.
pub fn random_seifert_form<R: Rng>(rng: &mut R, genus: usize, range: i64) -> SeifertMatrix {
    let n = 2 * genus;
    let mut v = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let x = BigInt::from(rng.gen_range(-range..=range));
            v[(i, j)] = x.clone();
            v[(j, i)] = x;
        }
    }
    for b in 0..genus {
        v[(2 * b, 2 * b + 1)] += 1;
    }
    let p = random_unimodular(rng, n, 2 * n);
    SeifertMatrix::new(v)
        .and_then(|s| s.congruent(&p))
        .expect("construction keeps det(V^t - V) = ±1")
}

/// Product of `steps` random elementary operations (row additions and sign flips).
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let k = BigInt::from(rng.gen_range(-2i64..=2));
        for c in 0..n {
            let add = &p[(j, c)] * &k;
            p[(i, c)] += add;
        }
        if rng.gen_bool(0.2) {
            for c in 0..n {
                p[(i, c)] = -&p[(i, c)];
            }
        }
    }
    p
}
