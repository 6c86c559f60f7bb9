//! Laurent polynomials in s^{1/2} and t^{1/2}. Exponents are stored in half-steps.

use super::laurent::{fmt_power, Laurent};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Keys are (a, b) meaning s^{a/2} t^{b/2}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiLaurent {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl BiLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// c * s^{a/2} t^{b/2}
    pub fn monomial<C: Into<BigInt>>(c: C, a: i64, b: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c.into());
        p
    }

    pub fn from_terms<C: Into<BigInt>, I: IntoIterator<Item = ((i64, i64), C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for ((a, b), c) in it {
            p.add_term(a, b, c.into());
        }
        p
    }

    /// Embeds a polynomial in t^{1/2} (exponents in half-steps).
    pub fn from_t_half(p: &Laurent) -> Self {
        Self::from_terms(p.terms().map(|(e, c)| ((0, e), c.clone())))
    }

    /// Embeds a polynomial in s^{1/2}.
    pub fn from_s_half(p: &Laurent) -> Self {
        Self::from_terms(p.terms().map(|(e, c)| ((e, 0), c.clone())))
    }

    pub fn add_term(&mut self, a: i64, b: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let key = (a, b);
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    /// True for ±(monomial), the units of the Laurent ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, a: i64, b: i64) -> BigInt {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<((i64, i64), &BigInt)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    /// Per-variable minimum exponents.
    pub fn min_exps(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            return None;
        }
        let a = self.terms.keys().map(|k| k.0).min().unwrap();
        let b = self.terms.keys().map(|k| k.1).min().unwrap();
        Some((a, b))
    }

    pub fn max_exps(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            return None;
        }
        let a = self.terms.keys().map(|k| k.0).max().unwrap();
        let b = self.terms.keys().map(|k| k.1).max().unwrap();
        Some((a, b))
    }

    pub fn shift(&self, da: i64, db: i64) -> Self {
        Self { terms: self.terms.iter().map(|((a, b), c)| ((a + da, b + db), c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(key, c)| (*key, c * k)))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Substitutes s = t^{-1}, giving a polynomial in t^{1/2} (half-step exponents).
    pub fn at_s_inverse_t(&self) -> Laurent {
        let mut p = Laurent::zero();
        for ((a, b), c) in &self.terms {
            p.add_term(b - a, c.clone());
        }
        p
    }

    /// Drops s: only valid when every term has s-exponent zero.
    pub fn as_t_half(&self) -> Option<Laurent> {
        if self.terms.keys().any(|k| k.0 != 0) {
            return None;
        }
        Some(Laurent::from_terms(self.terms.iter().map(|(k, c)| (k.1, c.clone()))))
    }

    /// Exact quotient q with q * b = self.
    pub fn divide_exact(&self, b: &BiLaurent) -> Result<BiLaurent, AlgebraError> {
        if b.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Newton polytope of a is the sum of those of q and b, so q's exponents are boxed.
        let (amin, bmin) = (self.min_exps().unwrap(), b.min_exps().unwrap());
        let (amax, bmax) = (self.max_exps().unwrap(), b.max_exps().unwrap());
        let lo = (amin.0 - bmin.0, amin.1 - bmin.1);
        let hi = (amax.0 - bmax.0, amax.1 - bmax.1);
        if lo.0 > hi.0 || lo.1 > hi.1 {
            return Err(AlgebraError::NotDivisible);
        }
        let (bk, bc) = b.leading().map(|(k, c)| (k, c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((rk, rc)) = r.leading().map(|(k, c)| (k, c.clone())) {
            let e = (rk.0 - bk.0, rk.1 - bk.1);
            if e.0 < lo.0 || e.0 > hi.0 || e.1 < lo.1 || e.1 > hi.1 {
                return Err(AlgebraError::NotDivisible);
            }
            let (qc, rem) = rc.div_rem(&bc);
            if !rem.is_zero() {
                return Err(AlgebraError::NotDivisible);
            }
            let m = Self::monomial(qc.clone(), e.0, e.1);
            r = &r - &(&m * b);
            q.add_term(e.0, e.1, qc);
        }
        Ok(q)
    }

    /// Canonical text form: terms sorted by (s, t) exponent ascending.
    pub fn to_canonical_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&c.abs().to_string());
            if let Some(m) = fmt_power("s", *a, 2) {
                out.push('*');
                out.push_str(&m);
            }
            if let Some(m) = fmt_power("t", *b, 2) {
                out.push('*');
                out.push_str(&m);
            }
        }
        out
    }
}

impl fmt::Display for BiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<'a> Add<&'a BiLaurent> for &'a BiLaurent {
    type Output = BiLaurent;
    fn add(self, o: &BiLaurent) -> BiLaurent {
        let mut r = self.clone();
        for ((a, b), c) in &o.terms {
            r.add_term(*a, *b, c.clone());
        }
        r
    }
}

impl<'a> Sub<&'a BiLaurent> for &'a BiLaurent {
    type Output = BiLaurent;
    fn sub(self, o: &BiLaurent) -> BiLaurent {
        let mut r = self.clone();
        for ((a, b), c) in &o.terms {
            r.add_term(*a, *b, -c.clone());
        }
        r
    }
}

impl<'a> Mul<&'a BiLaurent> for &'a BiLaurent {
    type Output = BiLaurent;
    fn mul(self, o: &BiLaurent) -> BiLaurent {
        let mut r = BiLaurent::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &o.terms {
                r.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        BiLaurent { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for BiLaurent {
    type Output = BiLaurent;
    fn neg(self) -> BiLaurent {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BiLaurent> for BiLaurent {
            type Output = BiLaurent;
            fn $m(self, o: BiLaurent) -> BiLaurent {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<i64> for BiLaurent {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

/// s^{1/2} + s^{-1/2}
pub fn s_loop() -> BiLaurent {
    BiLaurent::from_terms([((1, 0), 1), ((-1, 0), 1)])
}

/// t^{1/2} + t^{-1/2}
pub fn t_loop() -> BiLaurent {
    BiLaurent::from_terms([((0, 1), 1), ((0, -1), 1)])
}
