//! Exact rationals, modular inverses and Hirzebruch–Jung continued fractions.
//!
//! Everything downstream is built on [`Rational`], a normalized fraction of
//! big integers. Nothing in this crate ever touches floating point.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::domain("rational with zero denominator"));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// `n / d` for machine integers. Panics on a zero denominator.
    pub fn frac(n: i64, d: i64) -> Self {
        Rational::new(n, d).expect("nonzero denominator")
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::domain("reciprocal of zero"));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::integer(n)
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            None => Ok(Rational::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
            Some((n, d)) => {
                let n = n.trim().parse::<BigInt>().map_err(|_| bad())?;
                let d = d.trim().parse::<BigInt>().map_err(|_| bad())?;
                Rational::new(n, d)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // Accept "p/q" strings and bare JSON integers.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Str(String),
            Int(i64),
        }
        match Repr::deserialize(d)? {
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Rational::integer(n)),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<i64> for Rational {
            type Output = Rational;
            fn $method(self, rhs: i64) -> Rational {
                Rational(self.0.$method(BigRational::from_integer(rhs.into())))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div<i64> for Rational {
    type Output = Rational;
    fn div(self, rhs: i64) -> Rational {
        assert!(rhs != 0, "division by zero");
        Rational(self.0 / BigRational::from_integer(rhs.into()))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Inverse of `a` modulo `r`, in `[1, r-1]` (or `0` when `r = 1`).
pub fn mod_inverse(a: i64, r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    let m = r as i128;
    let a = (a as i128).rem_euclid(m);
    let egcd = a.extended_gcd(&m);
    if egcd.gcd != 1 {
        return Err(Error::domain(format!("{a} is not invertible modulo {r}")));
    }
    Ok(egcd.x.rem_euclid(m) as u64)
}

/// A Hirzebruch–Jung ("minus") continued fraction `b1 - 1/(b2 - 1/(...))`
/// with every entry at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HJExpansion(Vec<u64>);

impl HJExpansion {
    pub fn new(coefficients: Vec<u64>) -> Result<Self> {
        if let Some(b) = coefficients.iter().find(|&&b| b < 2) {
            return Err(Error::domain(format!(
                "continued fraction entry {b} is below 2"
            )));
        }
        Ok(HJExpansion(coefficients))
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `sum(b_i - 1)`.
    pub fn excess(&self) -> u64 {
        self.0.iter().map(|b| b - 1).sum()
    }
}

/// Expands `r/a` with the ceiling algorithm. `(1, 1)` gives the empty
/// expansion of a smooth point.
pub fn hj_expand(r: u64, a: u64) -> Result<HJExpansion> {
    if r == 1 && a == 1 {
        return Ok(HJExpansion(Vec::new()));
    }
    if a == 0 || a >= r {
        return Err(Error::domain(format!(
            "continued fraction of {r}/{a} needs 1 <= a < r"
        )));
    }
    if gcd(r, a) != 1 {
        return Err(Error::domain(format!("{r} and {a} are not coprime")));
    }
    let (mut num, mut den) = (r, a);
    let mut out = Vec::new();
    // r/a = b - num'/den' with b = ceil(r/a); continue on den/(b*den - num).
    while den != 0 {
        let b = num.div_ceil(den);
        out.push(b);
        let rem = b * den - num;
        num = den;
        den = rem;
    }
    Ok(HJExpansion(out))
}

/// Evaluates a continued fraction back to the coprime pair `(r, a)`.
pub fn hj_eval(coefficients: &[u64]) -> Result<(u64, u64)> {
    if coefficients.is_empty() {
        return Err(Error::domain("empty continued fraction"));
    }
    HJExpansion::new(coefficients.to_vec())?;
    // Fold from the tail: value = p/q, prepend b gives (b*p - q)/p.
    let (mut p, mut q) = (1u128, 0u128);
    for &b in coefficients.iter().rev() {
        let next = (b as u128)
            .checked_mul(p)
            .and_then(|bp| bp.checked_sub(q))
            .ok_or_else(|| Error::domain("continued fraction overflow"))?;
        q = p;
        p = next;
    }
    let r = u64::try_from(p).map_err(|_| Error::domain("continued fraction overflow"))?;
    Ok((r, q as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: evaluate the nested fraction with Rational
    // arithmetic from the innermost term outwards.
    fn nested(coeffs: &[u64]) -> Rational {
        let mut acc: Option<Rational> = None;
        for &b in coeffs.iter().rev() {
            let b = Rational::integer(b as i64);
            acc = Some(match acc {
                None => b,
                Some(x) => b - x.recip().unwrap(),
            });
        }
        acc.unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(hj_expand(2, 1).unwrap().coefficients(), &[2]);
        assert_eq!(hj_expand(4, 1).unwrap().coefficients(), &[4]);
        assert_eq!(hj_expand(25, 4).unwrap().coefficients(), &[7, 2, 2, 2]);
        assert!(hj_expand(1, 1).unwrap().is_empty());
        assert_eq!(nested(&[4]), Rational::integer(4));
        assert_eq!(nested(&[7, 2, 2, 2]), Rational::frac(25, 4));
    }

    #[test]
    fn expand_rejects_bad_input() {
        assert!(hj_expand(6, 4).is_err());
        assert!(hj_expand(5, 5).is_err());
        assert!(hj_expand(5, 0).is_err());
        assert!(hj_expand(3, 7).is_err());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(hj_eval(&[2]).unwrap(), (2, 1));
        assert_eq!(hj_eval(&[3, 2]).unwrap(), (5, 2));
        assert_eq!(hj_eval(&[7, 2, 2, 2]).unwrap(), (25, 4));
        assert_eq!(nested(&[3, 2]), Rational::frac(5, 2));
        assert!(hj_eval(&[3, 1]).is_err());
        assert!(hj_eval(&[]).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(1, 5).unwrap(), 1);
        assert_eq!(mod_inverse(4, 25).unwrap(), 19);
        assert_eq!(mod_inverse(2, 5).unwrap(), 3);
        assert_eq!(mod_inverse(-1, 5).unwrap(), 4);
        assert!(mod_inverse(5, 25).is_err());
    }

    #[test]
    fn round_trip_and_nested_oracle_up_to_200() {
        for r in 2..=200u64 {
            for a in 1..r {
                if gcd(r, a) != 1 {
                    continue;
                }
                let e = hj_expand(r, a).unwrap();
                assert!(e.coefficients().iter().all(|&b| b >= 2));
                assert_eq!(hj_eval(e.coefficients()).unwrap(), (r, a));
                assert_eq!(nested(e.coefficients()), Rational::frac(r as i64, a as i64));
            }
        }
    }

    #[test]
    fn rational_display_and_parse() {
        assert_eq!(Rational::frac(6, -4).to_string(), "-3/2");
        assert_eq!(Rational::frac(8, 4).to_string(), "2");
        assert_eq!("-3/2".parse::<Rational>().unwrap(), Rational::frac(-3, 2));
        assert_eq!("10/4".parse::<Rational>().unwrap().denom(), &BigInt::from(2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        let json = serde_json::to_string(&Rational::frac(1, 3)).unwrap();
        assert_eq!(json, "\"1/3\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Rational::frac(1, 3));
        let int: Rational = serde_json::from_str("7").unwrap();
        assert_eq!(int, Rational::integer(7));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rat() -> impl Strategy<Value = Rational> {
            (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Rational::frac(n, d))
        }

        proptest! {
            #[test]
            fn field_laws_hold_exactly(a in rat(), b in rat(), c in rat()) {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }

            #[test]
            fn stored_reduced(n in -10_000i64..10_000, d in 1i64..10_000) {
                let q = Rational::frac(n, d);
                prop_assert!(q.denom() > &BigInt::zero());
                prop_assert!(q.numer().gcd(q.denom()).is_one());
            }

            #[test]
            fn dual_fraction_identity(r in 2u64..400, seed in 0u64..400) {
                let a = (1..r).cycle().skip(seed as usize % (r as usize - 1))
                    .find(|&a| gcd(a, r) == 1).unwrap();
                let b = hj_expand(r, a).unwrap();
                let c = hj_expand(r, r - a).unwrap();
                let k = b.len() as u64;
                let l = c.len() as u64;
                prop_assert_eq!(b.excess(), k + l - 1);
                prop_assert_eq!(c.excess(), k + l - 1);
            }
        }
    }
}
