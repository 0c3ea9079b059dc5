//! Multisets of correction terms.

use serde::Serialize;

use crate::error::{Error, Result as CrateResult};
use crate::rational::ExactRational;

/// A multiset of exact rationals, stored as an ascending vector so that
/// derived equality is multiset equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct CorrectionMultiset {
    values: Vec<ExactRational>,
}

impl CorrectionMultiset {
    pub fn from_values(values: impl IntoIterator<Item = ExactRational>) -> Self {
        let mut values: Vec<ExactRational> = values.into_iter().collect();
        values.sort_unstable();
        CorrectionMultiset { values }
    }

    /// `{0}`, the multiset of the three-sphere.
    pub fn trivial() -> Self {
        CorrectionMultiset {
            values: vec![ExactRational::zero()],
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Elements in ascending order.
    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExactRational> {
        self.values.iter()
    }

    pub fn min(&self) -> Option<&ExactRational> {
        self.values.first()
    }

    pub fn max(&self) -> Option<&ExactRational> {
        self.values.last()
    }

    /// `max - min`.
    pub fn range(&self) -> CrateResult<ExactRational> {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => Ok(hi - lo),
            _ => Err(Error::EmptyMultiset),
        }
    }

    pub fn total(&self) -> ExactRational {
        self.values.iter().sum()
    }

    /// Adds `c` to every element. Order is preserved, so no re-sort.
    pub fn shifted(&self, c: &ExactRational) -> Self {
        CorrectionMultiset {
            values: self.values.iter().map(|v| v + c).collect(),
        }
    }

    pub fn negated(&self) -> Self {
        CorrectionMultiset {
            values: self.values.iter().rev().map(|v| -v).collect(),
        }
    }

    /// All pairwise sums, the multiset of a connected sum.
    pub fn connected_sum(&self, other: &Self) -> Self {
        let mut values = Vec::with_capacity(self.len() * other.len());
        for a in &self.values {
            values.extend(other.values.iter().map(|b| a + b));
        }
        values.sort_unstable();
        CorrectionMultiset { values }
    }
}

impl std::fmt::Debug for CorrectionMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(&self.values).finish()
    }
}

impl<'a> IntoIterator for &'a CorrectionMultiset {
    type Item = &'a ExactRational;
    type IntoIter = std::slice::Iter<'a, ExactRational>;

    fn into_iter(self) -> Self::IntoIter {
        self.values.iter()
    }
}

impl FromIterator<ExactRational> for CorrectionMultiset {
    fn from_iter<I: IntoIterator<Item = ExactRational>>(iter: I) -> Self {
        Self::from_values(iter)
    }
}

pub fn multiset_sum(a: &CorrectionMultiset, b: &CorrectionMultiset) -> CorrectionMultiset {
    a.connected_sum(b)
}

pub fn range_of(a: &CorrectionMultiset) -> CrateResult<ExactRational> {
    a.range()
}

/// Outcome of asking whether `A = B + c` for some constant `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShiftVerdict {
    Shift { constant: ExactRational },
    NoShift,
}

impl Serialize for ShiftVerdict {
    /// `{"exists": bool, "constant": "n/d" | null}`.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ShiftVerdict", 2)?;
        st.serialize_field("exists", &self.exists())?;
        st.serialize_field("constant", &self.constant())?;
        st.end()
    }
}

impl ShiftVerdict {
    pub fn exists(&self) -> bool {
        matches!(self, ShiftVerdict::Shift { .. })
    }

    pub fn constant(&self) -> Option<&ExactRational> {
        match self {
            ShiftVerdict::Shift { constant } => Some(constant),
            ShiftVerdict::NoShift => None,
        }
    }
}

/// Decides whether `A = B + c` as multisets.
///
/// Summing both sides forces `c = (ΣA - ΣB) / |A|`, so the only candidate is
/// computed directly and then checked element-wise against the sorted forms.
pub fn shift_constant(a: &CorrectionMultiset, b: &CorrectionMultiset) -> ShiftVerdict {
    if a.len() != b.len() || a.is_empty() {
        return ShiftVerdict::NoShift;
    }
    let c = (a.total() - b.total()).div_int(a.len() as i64);
    let matches = a.values.iter().zip(&b.values).all(|(x, y)| *x == y + &c);
    if matches {
        ShiftVerdict::Shift { constant: c }
    } else {
        ShiftVerdict::NoShift
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    fn ms(v: &[(i64, i64)]) -> CorrectionMultiset {
        v.iter().map(|&(n, d)| r(n, d)).collect()
    }

    #[test]
    fn sum_examples() {
        let x = ms(&[(1, 2), (-1, 6), (-1, 6)]);
        assert_eq!(multiset_sum(&CorrectionMultiset::trivial(), &x), x);

        let l21 = ms(&[(1, 4), (-1, 4)]);
        assert_eq!(
            multiset_sum(&l21, &x),
            ms(&[(3, 4), (1, 12), (1, 12), (1, 4), (-5, 12), (-5, 12)])
        );
        let l32 = ms(&[(-1, 2), (1, 6), (1, 6)]);
        assert_eq!(
            multiset_sum(&l21, &l32),
            ms(&[(-1, 4), (5, 12), (5, 12), (-3, 4), (-1, 12), (-1, 12)])
        );
    }

    #[test]
    fn shift_examples() {
        let x = ms(&[(1, 2), (-1, 6), (-1, 6)]);
        assert_eq!(
            shift_constant(&x, &x),
            ShiftVerdict::Shift { constant: r(0, 1) }
        );
        assert_eq!(
            shift_constant(&ms(&[(5, 4), (1, 4)]), &ms(&[(1, 4), (-3, 4)])),
            ShiftVerdict::Shift { constant: r(1, 1) }
        );
    }

    #[test]
    fn shift_rejects_size_mismatch_and_empty() {
        let x = ms(&[(1, 2)]);
        assert_eq!(
            shift_constant(&x, &ms(&[(1, 2), (1, 2)])),
            ShiftVerdict::NoShift
        );
        let empty = CorrectionMultiset::default();
        assert_eq!(shift_constant(&empty, &empty), ShiftVerdict::NoShift);
    }

    #[test]
    fn range_examples() {
        assert_eq!(range_of(&CorrectionMultiset::trivial()).unwrap(), r(0, 1));
        assert_eq!(
            range_of(&CorrectionMultiset::default()),
            Err(Error::EmptyMultiset)
        );
    }

    #[test]
    fn verdict_accessors() {
        let v = ShiftVerdict::Shift { constant: r(2, 9) };
        assert!(v.exists());
        assert_eq!(v.constant(), Some(&r(2, 9)));
        assert!(!ShiftVerdict::NoShift.exists());
    }

    fn multiset(max_len: usize) -> impl Strategy<Value = CorrectionMultiset> {
        prop::collection::vec((-50i64..50, 1i64..13), 1..max_len)
            .prop_map(|v| v.into_iter().map(|(n, d)| r(n, d)).collect())
    }

    proptest! {
        #[test]
        fn shift_recovers_planted_constant(a in multiset(20), n in -40i64..40, d in 1i64..9) {
            let c = r(n, d);
            let b = a.shifted(&c);
            prop_assert_eq!(shift_constant(&b, &a), ShiftVerdict::Shift { constant: c.clone() });
            prop_assert_eq!(shift_constant(&a, &b), ShiftVerdict::Shift { constant: -c });
        }

        #[test]
        fn shift_symmetry(a in multiset(6), b in multiset(6)) {
            let ab = shift_constant(&a, &b);
            let ba = shift_constant(&b, &a);
            prop_assert_eq!(ab.exists(), ba.exists());
            if let (Some(x), Some(y)) = (ab.constant(), ba.constant()) {
                prop_assert_eq!(x, &-y);
                prop_assert_eq!(&b.shifted(x), &a);
            }
        }

        #[test]
        fn shift_is_unique(a in multiset(12), n in -40i64..40, d in 1i64..9, m in 1i64..40) {
            // Any other constant fails the element-wise check.
            let b = a.shifted(&r(n, d));
            let other = &r(n, d) + &r(m, 7);
            prop_assert_ne!(a.shifted(&other), b);
        }

        #[test]
        fn sum_laws(a in multiset(6), b in multiset(6), c in multiset(5)) {
            prop_assert_eq!(a.connected_sum(&b), b.connected_sum(&a));
            prop_assert_eq!(
                a.connected_sum(&b).connected_sum(&c),
                a.connected_sum(&b.connected_sum(&c))
            );
            prop_assert_eq!(a.connected_sum(&CorrectionMultiset::trivial()), a.clone());
            prop_assert_eq!(
                a.connected_sum(&b).range().unwrap(),
                a.range().unwrap() + b.range().unwrap()
            );
        }
    }
}
