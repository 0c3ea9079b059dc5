//! Arbitrary-precision exact rationals.
//!
//! [`ExactRational`] wraps [`num_rational::BigRational`], which keeps every
//! value reduced with a positive denominator. The wire form is always
//! `"numerator/denominator"`, including integers (`"0/1"`, `"-2/1"`).

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// Builds `numer / denom` in lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "zero denominator");
        ExactRational(BigRational::new(numer.into(), denom))
    }

    pub fn zero() -> Self {
        ExactRational(BigRational::zero())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
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

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big_rational(self) -> BigRational {
        self.0
    }

    /// Divides by a nonzero integer.
    pub fn div_int(&self, n: i64) -> Self {
        assert!(n != 0, "division by zero");
        ExactRational(&self.0 / BigRational::from_integer(BigInt::from(n)))
    }

    pub fn mul_int(&self, n: i64) -> Self {
        ExactRational(&self.0 * BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

// Machine ratios are already reduced with a positive denominator.
impl From<Ratio<i64>> for ExactRational {
    fn from(r: Ratio<i64>) -> Self {
        let (n, d) = r.into_raw();
        ExactRational(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))
    }
}

impl From<Ratio<i128>> for ExactRational {
    fn from(r: Ratio<i128>) -> Self {
        let (n, d) = r.into_raw();
        ExactRational(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        ExactRational::from_integer(n)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `"n/d"` or a bare integer `"n"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(ExactRational::new(n, d))
            }
            None => Ok(ExactRational::from_integer(
                s.parse::<BigInt>().map_err(|_| bad())?,
            )),
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&ExactRational> for &ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &ExactRational) -> ExactRational {
                ExactRational(self.0.$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl<'a> Sum<&'a ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = &'a ExactRational>>(iter: I) -> Self {
        let mut acc = BigRational::zero();
        for x in iter {
            acc += &x.0;
        }
        ExactRational(acc)
    }
}

impl Sum<ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wire_form_is_lowest_terms() {
        assert_eq!(ExactRational::new(2, -8).to_string(), "-1/4");
        assert_eq!(ExactRational::zero().to_string(), "0/1");
        assert_eq!(ExactRational::from(-2).to_string(), "-2/1");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!("x".parse::<ExactRational>().is_err());
        assert!("1/2/3".parse::<ExactRational>().is_err());
        assert_eq!(
            "7".parse::<ExactRational>().unwrap(),
            ExactRational::from(7)
        );
        assert_eq!(
            " 6/-4 ".parse::<ExactRational>().unwrap(),
            ExactRational::new(-3, 2)
        );
    }

    #[test]
    fn from_small_ratio() {
        let r = Ratio::<i128>::new(6, -4);
        assert_eq!(ExactRational::from(r), ExactRational::new(-3, 2));
    }

    proptest! {
        #[test]
        fn string_round_trip(n in any::<i64>(), d in 1i64..=i64::MAX) {
            let r = ExactRational::new(n, d);
            let back: ExactRational = r.to_string().parse().unwrap();
            prop_assert_eq!(&back, &r);
            prop_assert!(back.denom() > &BigInt::zero());
        }
    }
}
