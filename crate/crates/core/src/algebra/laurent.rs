//! Single-variable Laurent polynomials with integer coefficients.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial<C: Into<BigInt>>(c: C, e: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    pub fn from_terms<C: Into<BigInt>, I: IntoIterator<Item = (i64, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute x -> x^k (k may be negative).
    pub fn scale_exponents(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Evaluate at an integer point; only valid when the point is ±1 or exponents are non-negative.
    pub fn eval_unit(&self, x: i64) -> BigInt {
        assert!(x == 1 || x == -1);
        let mut s = BigInt::zero();
        for (e, c) in &self.terms {
            if x == -1 && e.rem_euclid(2) == 1 {
                s -= c;
            } else {
                s += c;
            }
        }
        s
    }

    /// Dense coefficient vector from the lowest exponent upward.
    pub fn dense(&self) -> (i64, Vec<BigInt>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    /// Formats with a named variable; exponents divided by `denom`.
    pub fn format_var(&self, var: &str, denom: i64) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = fmt_power(var, *e, denom);
            match mono {
                None => out.push_str(&mag.to_string()),
                Some(m) if mag.is_one() => out.push_str(&m),
                Some(m) => out.push_str(&format!("{}*{}", mag, m)),
            }
        }
        out
    }
}

pub(crate) fn fmt_power(var: &str, e: i64, denom: i64) -> Option<String> {
    if e == 0 {
        return None;
    }
    let g = num_integer::gcd(e.abs(), denom);
    let (n, d) = (e / g, denom / g);
    Some(match (n, d) {
        (1, 1) => var.to_string(),
        (n, 1) => format!("{}^{}", var, n),
        (n, d) => format!("{}^{}/{}", var, n, d),
    })
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_var("x", 1))
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut r = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Laurent, Add, add);
forward_owned!(Laurent, Sub, sub);
forward_owned!(Laurent, Mul, mul);

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}
