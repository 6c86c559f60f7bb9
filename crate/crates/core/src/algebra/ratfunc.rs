//! Reduced rational functions in s^{1/2}, t^{1/2}.

use super::bilaurent::{AlgebraError, BiLaurent};
use super::gcd::gcd;
use num_traits::Signed;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: BiLaurent,
    den: BiLaurent,
}

impl RatFunc {
    pub fn new(num: BiLaurent, den: BiLaurent) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_laurent(p: BiLaurent) -> Self {
        Self { num: p, den: BiLaurent::one() }
    }

    pub fn zero() -> Self {
        Self::from_laurent(BiLaurent::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(BiLaurent::one())
    }

    fn normalized(num: BiLaurent, den: BiLaurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = match den.is_unit() {
            true => (num, den),
            false => match num.divide_exact(&den) {
                Ok(q) => (q, BiLaurent::one()),
                Err(_) => {
                    let g = gcd(&num, &den);
                    (num.divide_exact(&g).unwrap(), den.divide_exact(&g).unwrap())
                }
            },
        };
        // unit convention: denominator exponents start at zero, leading coefficient positive
        let (da, db) = den.min_exps().unwrap();
        num = num.shift(-da, -db);
        den = den.shift(-da, -db);
        if den.leading().unwrap().1.is_negative() {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &BiLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &BiLaurent {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&BiLaurent> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i32) -> Result<Self, AlgebraError> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let k = k.unsigned_abs();
        Ok(Self::normalized(base.num.pow(k), base.den.pow(k)))
    }

    /// Cross-multiplication equality; agrees with structural equality after normalization.
    pub fn cross_eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    pub fn to_canonical_string(&self) -> String {
        if self.is_laurent() {
            self.num.to_canonical_string()
        } else {
            format!("({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl From<BiLaurent> for RatFunc {
    fn from(p: BiLaurent) -> Self {
        Self::from_laurent(p)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::normalized(&self.num + &o.num, self.den.clone());
        }
        RatFunc::normalized(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::normalized(&self.num * &o.num, &self.den * &o.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, o: RatFunc) -> RatFunc {
        &self + &o
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, o: RatFunc) -> RatFunc {
        &self - &o
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, o: RatFunc) -> RatFunc {
        &self * &o
    }
}
