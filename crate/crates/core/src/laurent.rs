//! Integer Laurent polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// `Σ c_k t^k` with integer coefficients. Stored as the lowest exponent plus
/// a dense coefficient vector with no zeros at either end; the zero
/// polynomial has an empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(0, vec![c.into()])
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::new(exp, vec![c.into()])
    }

    /// Coefficients listed from `t^low` upward.
    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut poly = LaurentPolynomial { low, coeffs };
        poly.trim();
        poly
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|t| t.0).max().expect("non-empty");
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::new(low, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// `high - low`, or 0 for the zero polynomial.
    pub fn span(&self) -> u64 {
        self.coeffs.len().saturating_sub(1) as u64
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            return BigInt::zero();
        }
        self.coeffs[k as usize].clone()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `t ↦ t^p` for `p >= 1`.
    pub fn substitute_power(&self, p: u64) -> Self {
        assert!(p >= 1, "substitution exponent must be positive");
        if self.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms().map(|(e, c)| (e * p as i64, c.clone())))
    }

    /// `t ↦ t^{-1}`.
    pub fn mirror(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    /// Exact quotient `self / divisor`; fails if the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Work with both sides as ordinary polynomials with nonzero constant
        // term; the unit t^k is restored at the end.
        let d = &divisor.coeffs;
        let dlead = d.last().expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() < d.len() {
            return Err(Error::InexactDivision);
        }
        let qlen = rem.len() - d.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + d.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(dlead);
            if !r.is_zero() {
                return Err(Error::InexactDivision);
            }
            for (j, dj) in d.iter().enumerate() {
                rem[k + j] -= &c * dj;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision);
        }
        Ok(Self::new(self.low - divisor.low, quot))
    }

    /// Value at an integer point. Negative exponents make the value rational;
    /// evaluating those at 0 is an error.
    pub fn eval(&self, x: i64) -> Result<ExactRational> {
        if x == 0 && self.low < 0 {
            return Err(Error::InvalidParameter(
                "cannot evaluate negative powers at 0".into(),
            ));
        }
        // Horner on the dense vector, then multiply by x^low.
        let xb = BigInt::from(x);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &xb + c;
        }
        let acc = ExactRational::from_integer(acc);
        Ok(if self.low >= 0 {
            acc * ExactRational::from_integer(num_traits::pow(xb, self.low as usize))
        } else {
            acc / ExactRational::from_integer(num_traits::pow(xb, self.low.unsigned_abs() as usize))
        })
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Value at `t = -1`.
    pub fn eval_minus_one(&self) -> BigInt {
        self.terms()
            .map(|(e, c)| if e.is_even() { c.clone() } else { -c })
            .sum()
    }

    /// Coefficients of `t^k` and `t^{-k}` agree for every `k`.
    pub fn is_symmetric(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.low == -self.high_exp().expect("nonzero")
            && self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Symmetric with value 1 at `t = 1`.
    pub fn is_alexander_normalized(&self) -> bool {
        self.is_symmetric() && self.eval_one().is_one()
    }

    /// Removes the `±t^k` ambiguity: recenters so the exponents are symmetric
    /// about zero and fixes the sign so the value at `t = 1` is positive.
    /// Fails unless the result is symmetric with value 1 at `t = 1`.
    pub fn alexander_normalized(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotNormalized("zero polynomial".into()));
        }
        let span = self.span() as i64;
        if span % 2 != 0 {
            return Err(Error::NotSymmetric);
        }
        let mut out = self.shift(-self.low - span / 2);
        if out.eval_one().is_negative() {
            out = -out;
        }
        if !out.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if !out.eval_one().is_one() {
            return Err(Error::NotNormalized(format!(
                "value at t = 1 is ±{}",
                out.eval_one()
            )));
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPolynomial {
    /// `exp:coeff` pairs in ascending exponent order, nonzero terms only,
    /// separated by `", "`; the zero polynomial prints as `0:0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0:0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{e}:{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial({self})")
    }
}

impl FromStr for LaurentPolynomial {
    type Err = Error;

    /// Parses `exp:coeff,exp:coeff,...`; whitespace is ignored and each
    /// exponent may appear at most once.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse(format!("polynomial {s:?}: {msg}"));
        let mut terms: Vec<(i64, BigInt)> = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(bad("empty term".into()));
            }
            let (e, c) = part
                .split_once(':')
                .ok_or_else(|| bad(format!("term {part:?} is not exp:coeff")))?;
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad exponent in {part:?}")))?;
            let c: BigInt = c
                .trim()
                .parse()
                .map_err(|_| bad(format!("bad coefficient in {part:?}")))?;
            if terms.iter().any(|t| t.0 == e) {
                return Err(bad(format!("exponent {e} repeated")));
            }
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())))
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(mut self) -> LaurentPolynomial {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs.clone())
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPolynomial::new(self.low + rhs.low, coeffs)
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl std::iter::Product for LaurentPolynomial {
    fn product<I: Iterator<Item = LaurentPolynomial>>(iter: I) -> Self {
        iter.fold(LaurentPolynomial::one(), |acc, x| &acc * &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(low: i64, c: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::from_i64s(low, c)
    }

    #[test]
    fn trimming() {
        let p = poly(-2, &[0, 0, 1, 2, 0]);
        assert_eq!(p.low_exp(), Some(0));
        assert_eq!(p.high_exp(), Some(1));
        assert!(poly(3, &[0, 0]).is_zero());
        assert_eq!(poly(3, &[0, 0]), LaurentPolynomial::zero());
    }

    #[test]
    fn display_and_parse() {
        let trefoil = poly(-1, &[1, -1, 1]);
        assert_eq!(trefoil.to_string(), "-1:1, 0:-1, 1:1");
        assert_eq!(
            "-1:1,0:-1,1:1".parse::<LaurentPolynomial>().unwrap(),
            trefoil
        );
        assert_eq!(
            " 1 : 1 , -1:1, 0 : -1"
                .parse::<LaurentPolynomial>()
                .unwrap(),
            trefoil
        );
        assert_eq!(LaurentPolynomial::zero().to_string(), "0:0");
        assert!("0:0".parse::<LaurentPolynomial>().unwrap().is_zero());
        assert!("1:1,1:2".parse::<LaurentPolynomial>().is_err());
        assert!("".parse::<LaurentPolynomial>().is_err());
        assert!("1:".parse::<LaurentPolynomial>().is_err());
        assert!("x:1".parse::<LaurentPolynomial>().is_err());
        // Interior zeros are omitted from the wire form.
        assert_eq!(poly(0, &[1, 0, -1]).to_string(), "0:1, 2:-1");
    }

    #[test]
    fn division() {
        let a = poly(0, &[-1, 0, 0, 0, 0, 0, 1]); // t^6 - 1
        let b = poly(0, &[-1, 1]);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q, poly(0, &[1, 1, 1, 1, 1, 1]));
        assert_eq!(
            poly(0, &[1, 0, 1]).div_exact(&poly(0, &[1, 1])),
            Err(Error::InexactDivision)
        );
        assert_eq!(
            a.div_exact(&LaurentPolynomial::zero()),
            Err(Error::DivisionByZero)
        );
        // 2t + 2 is not divisible by 2t + 1 even though degrees match.
        assert_eq!(
            poly(0, &[2, 2]).div_exact(&poly(0, &[1, 2])),
            Err(Error::InexactDivision)
        );
        // Laurent shifts are units.
        assert_eq!(
            poly(-3, &[1, 1]).div_exact(&poly(2, &[1])).unwrap(),
            poly(-5, &[1, 1])
        );
    }

    #[test]
    fn evaluation() {
        let trefoil = poly(-1, &[1, -1, 1]);
        assert_eq!(trefoil.eval_one(), BigInt::from(1));
        assert_eq!(trefoil.eval_minus_one(), BigInt::from(-3));
        assert_eq!(trefoil.eval(-1).unwrap(), ExactRational::from(-3));
        assert_eq!(trefoil.eval(2).unwrap(), ExactRational::new(3, 2));
        assert!(trefoil.eval(0).is_err());
        assert_eq!(poly(2, &[3]).eval(0).unwrap(), ExactRational::zero());
    }

    #[test]
    fn substitution_and_mirror() {
        let trefoil = poly(-1, &[1, -1, 1]);
        assert_eq!(trefoil.substitute_power(2), poly(-2, &[1, 0, -1, 0, 1]));
        assert_eq!(poly(0, &[1, 2]).mirror(), poly(-1, &[2, 1]));
    }

    #[test]
    fn normalization() {
        // -t^5 (t^2 - t + 1) normalizes to the symmetric trefoil form.
        let raw = poly(5, &[-1, 1, -1]);
        assert_eq!(raw.alexander_normalized().unwrap(), poly(-1, &[1, -1, 1]));
        assert_eq!(
            poly(0, &[1, 1]).alexander_normalized(),
            Err(Error::NotSymmetric)
        );
        assert!(matches!(
            poly(-1, &[1, 1, 1]).alexander_normalized(),
            Err(Error::NotNormalized(_))
        ));
        assert_eq!(
            poly(0, &[1, 2, 3]).alexander_normalized(),
            Err(Error::NotSymmetric)
        );
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPolynomial> {
        (-5i64..5, prop::collection::vec(-20i64..20, 0..8))
            .prop_map(|(low, c)| LaurentPolynomial::from_i64s(low, &c))
    }

    proptest! {
        #[test]
        fn product_divides_back(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let ab = &a * &b;
            prop_assert_eq!(ab.div_exact(&b).unwrap(), a);
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb_poly(), b in arb_poly()) {
            let ab = &a * &b;
            prop_assert_eq!(ab.eval_minus_one(), a.eval_minus_one() * b.eval_minus_one());
            prop_assert_eq!(ab.eval(3).unwrap(), a.eval(3).unwrap() * b.eval(3).unwrap());
        }

        #[test]
        fn wire_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPolynomial>().unwrap(), a);
        }

        #[test]
        fn add_sub_inverse(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }
    }
}
