//! Correction terms of lens spaces.
//!
//! Values of `d(-L(p,q), i)` are computed by the Ozsváth–Szabó recursion
//!
//! ```text
//! d(-L(p,q), i) = (pq - (2i + 1 - p - q)^2) / (4pq) - d(-L(q,r), j)
//! ```
//!
//! with `r = p mod q`, `j = i mod q`, and `d(-L(1,0), 0) = 0`. The index `i`
//! ranges over `0..p+q`; the Spin^c structures of `L(p,q)` are the indices
//! `0..p`.
//!
//! Full vectors are built bottom-up along the Euclidean chain
//! `(p,q) -> (q,r) -> ... -> (x,1)`, so each level costs `p + q` evaluations
//! of the quadratic term and one subtraction each. The arithmetic first runs
//! in checked `Ratio<i64>`, then `Ratio<i128>`, and is redone in
//! `BigRational` if anything overflows, so results are exact regardless of
//! size.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedSub, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiset::CorrectionMultiset;
use crate::rational::ExactRational;

/// A lens space `L(p,q)` in canonical form: `0 <= q < p`, `gcd(p,q) = 1`,
/// and `q = 0` only for `L(1,0)`, the three-sphere.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LensSpace {
    p: u64,
    q: u64,
}

impl LensSpace {
    /// The three-sphere, `L(1,0)`.
    pub const SPHERE: LensSpace = LensSpace { p: 1, q: 0 };

    /// Canonicalizes `(p, q)`: reduces `q` mod `p` and checks coprimality.
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p <= 0 {
            return Err(Error::NonPositiveModulus(p));
        }
        if p == 1 {
            return Ok(Self::SPHERE);
        }
        let r = q.rem_euclid(p);
        if r.gcd(&p) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        Ok(LensSpace {
            p: p as u64,
            q: r as u64,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_sphere(&self) -> bool {
        self.p == 1
    }

    /// `L(p, p-q)`, which is `L(p,q)` with the opposite orientation.
    pub fn reversed(&self) -> LensSpace {
        if self.is_sphere() {
            return *self;
        }
        LensSpace {
            p: self.p,
            q: self.p - self.q,
        }
    }

    /// The lens space `L(q, p mod q)` the recursion descends to, or `None`
    /// for the three-sphere.
    pub fn child(&self) -> Option<LensSpace> {
        match self.q {
            0 => None,
            1 => Some(Self::SPHERE),
            q => Some(LensSpace {
                p: q,
                q: self.p % q,
            }),
        }
    }

    /// Euclidean chain from `self` down to (but excluding) `L(1,0)`.
    fn chain(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let (mut p, mut q) = (self.p, self.q);
        while q > 0 {
            out.push((p, q));
            (p, q) = (q, p % q);
        }
        out
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

impl fmt::Debug for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Free-function form of [`LensSpace::new`].
pub fn canonicalize(p: i64, q: i64) -> Result<LensSpace> {
    LensSpace::new(p, q)
}

/// Scalar type the recursion can run in.
trait DescentScalar: Clone + Ord {
    fn zero() -> Self;
    /// `(pq - (2i + 1 - p - q)^2) / (4pq)`, or `None` on overflow.
    fn quadratic_term(p: u64, q: u64, i: u64) -> Option<Self>;
    fn add(&self, rhs: &Self) -> Option<Self>;
    fn sub(&self, rhs: &Self) -> Option<Self>;
    fn into_exact(self) -> ExactRational;
}

macro_rules! machine_descent_scalar {
    ($int:ty) => {
        impl DescentScalar for Ratio<$int> {
            fn zero() -> Self {
                Ratio::from_integer(0)
            }

            fn quadratic_term(p: u64, q: u64, i: u64) -> Option<Self> {
                let (p, q, i) = (
                    <$int>::try_from(p).ok()?,
                    <$int>::try_from(q).ok()?,
                    <$int>::try_from(i).ok()?,
                );
                let pq = p.checked_mul(q)?;
                let s = i
                    .checked_mul(2)?
                    .checked_add(1)?
                    .checked_sub(p.checked_add(q)?)?;
                let num = pq.checked_sub(s.checked_mul(s)?)?;
                let den = pq.checked_mul(4)?;
                Some(Ratio::new(num, den))
            }

            fn add(&self, rhs: &Self) -> Option<Self> {
                self.checked_add(rhs)
            }

            fn sub(&self, rhs: &Self) -> Option<Self> {
                self.checked_sub(rhs)
            }

            fn into_exact(self) -> ExactRational {
                ExactRational::from(self)
            }
        }
    };
}

machine_descent_scalar!(i64);
machine_descent_scalar!(i128);

impl DescentScalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn quadratic_term(p: u64, q: u64, i: u64) -> Option<Self> {
        let (p, q, i) = (BigInt::from(p), BigInt::from(q), BigInt::from(i));
        let pq = &p * &q;
        let s = BigInt::from(2) * i + 1 - p - q;
        Some(BigRational::new(&pq - &s * &s, pq * 4))
    }

    fn add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }

    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }

    fn into_exact(self) -> ExactRational {
        ExactRational::from(self)
    }
}

/// One level of the recursion: all `p + q` values of `d(-L(p,q), ·)` given
/// the values of the child (which must have at least `q` entries).
fn level<T: DescentScalar>(p: u64, q: u64, inner: &[T]) -> Option<Vec<T>> {
    (0..p + q)
        .map(|i| T::quadratic_term(p, q, i)?.sub(&inner[(i % q) as usize]))
        .collect()
}

fn neg_vector_in<T: DescentScalar>(lens: &LensSpace) -> Option<Vec<T>> {
    let mut cur = vec![T::zero()];
    for &(p, q) in lens.chain().iter().rev() {
        cur = level(p, q, &cur)?;
    }
    Some(cur)
}

fn neg_value_in<T: DescentScalar>(lens: &LensSpace, i: u64) -> Option<T> {
    // Alternating sum t_0 - t_1 + t_2 - ... of quadratic terms down the chain.
    let mut acc = T::zero();
    let mut positive = true;
    let (mut p, mut q, mut i) = (lens.p, lens.q, i);
    while q > 0 {
        let term = T::quadratic_term(p, q, i)?;
        acc = if positive {
            acc.add(&term)?
        } else {
            acc.sub(&term)?
        };
        positive = !positive;
        (p, q, i) = (q, p % q, i % q);
    }
    Some(acc)
}

fn check_index(index: u64, bound: u64) -> Result<()> {
    if index >= bound {
        return Err(Error::IndexOutOfRange { index, bound });
    }
    Ok(())
}

/// `d(-L(p,q), i)` for `0 <= i < p + q`, by a single Euclidean descent.
pub fn d_neg_lens(lens: &LensSpace, i: u64) -> Result<ExactRational> {
    check_index(i, lens.p + lens.q)?;
    Ok(neg_value_in::<Ratio<i64>>(lens, i)
        .map(DescentScalar::into_exact)
        .or_else(|| neg_value_in::<Ratio<i128>>(lens, i).map(DescentScalar::into_exact))
        .unwrap_or_else(|| {
            neg_value_in::<BigRational>(lens, i)
                .expect("bignum descent cannot overflow")
                .into_exact()
        }))
}

/// `d(L(p,q), i) = -d(-L(p,q), i)` for a Spin^c index `0 <= i < p`.
pub fn d_lens(lens: &LensSpace, i: u64) -> Result<ExactRational> {
    check_index(i, lens.p)?;
    Ok(-d_neg_lens(lens, i)?)
}

/// `((2i - p)^2 - p) / (4p)`, the unrolled recursion for `L(p,1)`.
pub fn d_lens_p1_closed_form(p: u64, i: u64) -> Result<ExactRational> {
    if p == 0 {
        return Err(Error::NonPositiveModulus(0));
    }
    check_index(i, p)?;
    let s = BigInt::from(2 * i) - BigInt::from(p);
    Ok(ExactRational::new(
        &s * &s - BigInt::from(p),
        BigInt::from(4 * p),
    ))
}

/// All values `d(-L(p,q), i)` for `0 <= i < p + q`.
pub fn neg_correction_values(lens: &LensSpace) -> Vec<ExactRational> {
    fn exact<T: DescentScalar>(v: Vec<T>) -> Vec<ExactRational> {
        v.into_iter().map(DescentScalar::into_exact).collect()
    }
    neg_vector_in::<Ratio<i64>>(lens)
        .map(exact)
        .or_else(|| neg_vector_in::<Ratio<i128>>(lens).map(exact))
        .unwrap_or_else(|| {
            exact(neg_vector_in::<BigRational>(lens).expect("bignum descent cannot overflow"))
        })
}

/// `d(L(p,q), i)` for every Spin^c index `0 <= i < p`, in index order.
pub fn correction_values(lens: &LensSpace) -> Vec<ExactRational> {
    let mut values = neg_correction_values(lens);
    values.truncate(lens.p as usize);
    values.into_iter().map(|v| -v).collect()
}

/// The multiset `{ d(L(p,q), i) : 0 <= i < p }`.
pub fn correction_multiset(lens: &LensSpace) -> CorrectionMultiset {
    CorrectionMultiset::from_values(correction_values(lens))
}

fn neg_extremes_in<T: DescentScalar>(lens: &LensSpace) -> Option<(T, T)> {
    let values = neg_vector_in::<T>(lens)?;
    let spinc = &values[..lens.p as usize];
    let min = spinc.iter().min()?.clone();
    let max = spinc.iter().max()?.clone();
    Some((min, max))
}

/// `Δ(p,q) = max 𝒟(L(p,q)) - min 𝒟(L(p,q))`.
pub fn delta_range(lens: &LensSpace) -> ExactRational {
    // The range is invariant under negation, so the extremes of d(-L) suffice.
    fn machine<T: DescentScalar>(lens: &LensSpace) -> Option<ExactRational> {
        let (min, max) = neg_extremes_in::<T>(lens)?;
        Some(max.sub(&min)?.into_exact())
    }
    if let Some(delta) = machine::<Ratio<i64>>(lens).or_else(|| machine::<Ratio<i128>>(lens)) {
        return delta;
    }
    let (min, max) = neg_extremes_in::<BigRational>(lens).expect("bignum descent cannot overflow");
    (max - min).into_exact()
}

/// Memo table of full `d(-L(p,q), ·)` vectors keyed by lens space.
///
/// Safe to share across threads; concurrent computations of the same entry
/// insert identical values, so whichever write lands first wins.
#[derive(Default)]
pub struct LensCache {
    table: RwLock<HashMap<LensSpace, Arc<[ExactRational]>>>,
}

impl LensCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `d(-L(p,q), i)` for all `0 <= i < p + q`, memoized along the chain.
    pub fn neg_values(&self, lens: &LensSpace) -> Arc<[ExactRational]> {
        if let Some(hit) = self.table.read().expect("cache lock poisoned").get(lens) {
            return Arc::clone(hit);
        }
        let values: Arc<[ExactRational]> = match lens.child() {
            None => Arc::from(vec![ExactRational::zero()]),
            Some(child) => {
                // q = 1 descends straight to the base case.
                let inner = if child.is_sphere() {
                    Arc::from(vec![ExactRational::zero()])
                } else {
                    self.neg_values(&child)
                };
                let (p, q) = (lens.p, lens.q);
                (0..p + q)
                    .map(|i| {
                        let term = <Ratio<i128> as DescentScalar>::quadratic_term(p, q, i)
                            .map(ExactRational::from)
                            .unwrap_or_else(|| {
                                ExactRational::from(
                                    <BigRational as DescentScalar>::quadratic_term(p, q, i)
                                        .expect("bignum term"),
                                )
                            });
                        term - &inner[(i % q) as usize]
                    })
                    .collect()
            }
        };
        let mut table = self.table.write().expect("cache lock poisoned");
        Arc::clone(table.entry(*lens).or_insert(values))
    }

    pub fn d_neg_lens(&self, lens: &LensSpace, i: u64) -> Result<ExactRational> {
        check_index(i, lens.p + lens.q)?;
        Ok(self.neg_values(lens)[i as usize].clone())
    }

    pub fn d_lens(&self, lens: &LensSpace, i: u64) -> Result<ExactRational> {
        check_index(i, lens.p)?;
        Ok(-&self.neg_values(lens)[i as usize])
    }

    pub fn correction_multiset(&self, lens: &LensSpace) -> CorrectionMultiset {
        let values = self.neg_values(lens);
        CorrectionMultiset::from_values(values[..lens.p as usize].iter().map(|v| -v))
    }

    pub fn delta_range(&self, lens: &LensSpace) -> ExactRational {
        let values = self.neg_values(lens);
        let spinc = &values[..lens.p as usize];
        let max = spinc.iter().max().expect("p >= 1");
        let min = spinc.iter().min().expect("p >= 1");
        max - min
    }
}
