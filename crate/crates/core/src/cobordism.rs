//! Connected sums, homology-cobordism comparisons, and the exhaustive scans.
//!
//! Correction-term multisets are invariant under integer homology cobordism,
//! and surgery on a slice knot is homology cobordant to the same surgery on
//! the unknot. A reducible surgery `S³_{pq}(K) = L(p,a) # L(q,b) # Y` on a
//! slice knot would therefore need `𝒟(L(pq,1)) = 𝒟(L(p,a) # L(q,b)) + d(Y)`.
//! [`two_summand_scan`] checks that no such shift exists.

use std::time::{Duration, Instant};

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lens::{self, LensCache, LensSpace};
use crate::multiset::{shift_constant, CorrectionMultiset, ShiftVerdict};
use crate::par::{map_ordered, Jobs, Progress};
use crate::rational::ExactRational;

/// A connected sum of lens spaces, optionally with an integer homology
/// sphere summand whose single correction term shifts every value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectedSum {
    summands: Vec<LensSpace>,
    extra_constant: Option<ExactRational>,
}

impl ConnectedSum {
    pub fn new(summands: Vec<LensSpace>, extra_constant: Option<ExactRational>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::InvalidParameter(
                "connected sum needs at least one summand".into(),
            ));
        }
        Ok(ConnectedSum {
            summands,
            extra_constant,
        })
    }

    pub fn summands(&self) -> &[LensSpace] {
        &self.summands
    }

    pub fn extra_constant(&self) -> Option<&ExactRational> {
        self.extra_constant.as_ref()
    }

    /// `|H_1|`, the product of the summand orders.
    pub fn order(&self) -> u64 {
        self.summands.iter().map(LensSpace::p).product()
    }

    pub fn correction_multiset(&self, cache: &LensCache) -> CorrectionMultiset {
        let sum = self
            .summands
            .iter()
            .map(|l| cache.correction_multiset(l))
            .reduce(|acc, m| acc.connected_sum(&m))
            .expect("non-empty");
        match &self.extra_constant {
            Some(c) => sum.shifted(c),
            None => sum,
        }
    }
}

/// Whether `observed` equals `𝒟(L(p,q))`, as it must for `p/q` surgery on a
/// slice knot (or any knot with `V₀(K) = V₀(K̄) = 0`). `false` obstructs.
pub fn slice_surgery_obstruction(observed: &CorrectionMultiset, p: i64, q: i64) -> Result<bool> {
    let lens = LensSpace::new(p, q)?;
    if observed.len() as u64 != lens.p() {
        return Err(Error::SizeMismatch {
            expected: lens.p() as usize,
            found: observed.len(),
        });
    }
    Ok(*observed == lens::correction_multiset(&lens))
}

/// Knobs shared by the scans.
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub jobs: Jobs,
    /// Skip the full multiset test for tuples the range filters reject.
    pub prune: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            jobs: Jobs::all(),
            prune: true,
        }
    }
}

/// A tuple `(p, q, a, b)` with `𝒟(L(pq,1)) = 𝒟(L(p,a) # L(q,b)) + constant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub p: u64,
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub constant: ExactRational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SummandTuple {
    pub p: u64,
    pub q: u64,
    pub a: u64,
    pub b: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoSummandReport {
    pub pq_max: u64,
    pub pruned: bool,
    pub pairs_checked: usize,
    pub tuples_checked: usize,
    /// Tuples rejected by `Δ(pq,1) <= (p+q)/4` failing.
    pub rejected_by_inequality: usize,
    /// Tuples passing the inequality but with `Δ(pq,1) != Δ(p,a) + Δ(q,b)`.
    pub rejected_by_range: usize,
    /// Tuples that ran the full shift test.
    pub full_tests: usize,
    /// `(p, q)` pairs for which the inequality holds.
    pub pairs_passing_inequality: Vec<(u64, u64)>,
    /// Tuples a filter rejected although a shift exists. Only populated
    /// without pruning; nonempty means a filter is unsound.
    pub filter_unsound: Vec<SummandTuple>,
    pub counterexamples: Vec<Counterexample>,
    #[serde(skip)]
    pub duration: Duration,
}

struct PairContext {
    p: u64,
    q: u64,
    left: CorrectionMultiset,
    left_range: ExactRational,
    inequality_holds: bool,
}

#[derive(Default)]
struct TupleOutcome {
    inequality_rejects: bool,
    range_rejects: bool,
    verdict: Option<ShiftVerdict>,
}

fn coprime_residues(n: u64) -> impl Iterator<Item = u64> {
    (1..n).filter(move |a| a.gcd(&n) == 1)
}

/// Exhaustive search for a shift `𝒟(L(pq,1)) = 𝒟(L(p,a) # L(q,b)) + c` over
/// coprime `2 <= p < q`, `pq <= pq_max`, and all `a`, `b` coprime to `p`, `q`.
///
/// Enumeration order is `p`, then `q`, `a`, `b`, all ascending, and the report
/// lists are in that order whatever `opts.jobs` is.
pub fn two_summand_scan(
    pq_max: u64,
    opts: &ScanOptions,
    progress: &Progress<'_>,
) -> Result<TwoSummandReport> {
    if pq_max < 6 {
        return Err(Error::InvalidParameter(format!(
            "pq_max must be at least 6, got {pq_max}"
        )));
    }
    let start = Instant::now();
    let cache = LensCache::new();

    let mut pairs = Vec::new();
    for p in 2u64.. {
        if p * (p + 1) > pq_max {
            break;
        }
        for q in (p + 1)..=(pq_max / p) {
            if p.gcd(&q) == 1 {
                pairs.push((p, q));
            }
        }
    }

    let contexts: Vec<PairContext> = map_ordered(&pairs, opts.jobs, |&(p, q)| {
        let left = cache.correction_multiset(&LensSpace::new((p * q) as i64, 1).expect("valid"));
        let left_range = left.range().expect("non-empty");
        // Δ(pq,1) <= (p+q)/4, using Δ(p,a) <= p/4 and Δ(q,b) <= q/4.
        let inequality_holds = left_range.mul_int(4) <= ExactRational::from((p + q) as i64);
        PairContext {
            p,
            q,
            left,
            left_range,
            inequality_holds,
        }
    });

    let tuples: Vec<(usize, SummandTuple)> = contexts
        .iter()
        .enumerate()
        .flat_map(|(k, ctx)| {
            coprime_residues(ctx.p).flat_map(move |a| {
                coprime_residues(ctx.q).map(move |b| {
                    (
                        k,
                        SummandTuple {
                            p: ctx.p,
                            q: ctx.q,
                            a,
                            b,
                        },
                    )
                })
            })
        })
        .collect();

    let outcomes: Vec<TupleOutcome> = map_ordered(&tuples, opts.jobs, |&(k, t)| {
        let ctx = &contexts[k];
        let mut out = TupleOutcome {
            inequality_rejects: !ctx.inequality_holds,
            ..Default::default()
        };
        if opts.prune && out.inequality_rejects {
            progress.tick();
            return out;
        }
        let lp = LensSpace::new(t.p as i64, t.a as i64).expect("coprime");
        let lq = LensSpace::new(t.q as i64, t.b as i64).expect("coprime");
        out.range_rejects = cache.delta_range(&lp) + cache.delta_range(&lq) != ctx.left_range;
        if !(opts.prune && out.range_rejects) {
            let right = cache
                .correction_multiset(&lp)
                .connected_sum(&cache.correction_multiset(&lq));
            out.verdict = Some(shift_constant(&ctx.left, &right));
        }
        progress.tick();
        out
    });

    let mut report = TwoSummandReport {
        pq_max,
        pruned: opts.prune,
        pairs_checked: contexts.len(),
        tuples_checked: tuples.len(),
        rejected_by_inequality: 0,
        rejected_by_range: 0,
        full_tests: 0,
        pairs_passing_inequality: contexts
            .iter()
            .filter(|c| c.inequality_holds)
            .map(|c| (c.p, c.q))
            .collect(),
        filter_unsound: Vec::new(),
        counterexamples: Vec::new(),
        duration: Duration::ZERO,
    };
    for ((_, t), out) in tuples.iter().zip(&outcomes) {
        if out.inequality_rejects {
            report.rejected_by_inequality += 1;
        } else if out.range_rejects {
            report.rejected_by_range += 1;
        }
        if let Some(verdict) = &out.verdict {
            report.full_tests += 1;
            if let Some(c) = verdict.constant() {
                if out.inequality_rejects || out.range_rejects {
                    report.filter_unsound.push(*t);
                }
                report.counterexamples.push(Counterexample {
                    p: t.p,
                    q: t.q,
                    a: t.a,
                    b: t.b,
                    constant: c.clone(),
                });
            }
        }
    }
    report.duration = start.elapsed();
    Ok(report)
}

/// A lens space together with its correction-term range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RangeWitness {
    pub p: u64,
    pub q: u64,
    pub delta: ExactRational,
    /// `Δ(p,q) / (p/4)`; at most 1 when the bound holds.
    pub ratio: ExactRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct RangeBoundReport {
    pub p_max: u64,
    pub pairs_checked: usize,
    pub violations: Vec<RangeWitness>,
    /// Largest ratio seen over all pairs (first in scan order on ties).
    pub tightest: Option<RangeWitness>,
    /// Largest ratio seen among pairs with `1 < q < p - 1`, excluding `L(p,1)`
    /// and its reverse `L(p,p-1)`.
    pub tightest_nontrivial: Option<RangeWitness>,
    #[serde(skip)]
    pub duration: Duration,
}

/// Checks `Δ(p,q) <= p/4` for every coprime `0 < q < p <= p_max`.
pub fn range_bound_scan(
    p_max: u64,
    jobs: Jobs,
    progress: &Progress<'_>,
) -> Result<RangeBoundReport> {
    if p_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "p_max must be at least 2, got {p_max}"
        )));
    }
    let start = Instant::now();
    let pairs: Vec<(u64, u64)> = (2..=p_max)
        .flat_map(|p| coprime_residues(p).map(move |q| (p, q)))
        .collect();
    let witnesses: Vec<RangeWitness> = map_ordered(&pairs, jobs, |&(p, q)| {
        let lens = LensSpace::new(p as i64, q as i64).expect("coprime");
        let delta = lens::delta_range(&lens);
        let ratio = delta.mul_int(4).div_int(p as i64);
        progress.tick();
        RangeWitness { p, q, delta, ratio }
    });

    let one = ExactRational::from(1);
    let mut report = RangeBoundReport {
        p_max,
        pairs_checked: pairs.len(),
        violations: Vec::new(),
        tightest: None,
        tightest_nontrivial: None,
        duration: Duration::ZERO,
    };
    for w in witnesses {
        if w.ratio > one {
            report.violations.push(w.clone());
        }
        if report.tightest.as_ref().is_none_or(|t| w.ratio > t.ratio) {
            report.tightest = Some(w.clone());
        }
        if w.q > 1
            && w.q + 1 < w.p
            && report
                .tightest_nontrivial
                .as_ref()
                .is_none_or(|t| w.ratio > t.ratio)
        {
            report.tightest_nontrivial = Some(w);
        }
    }
    report.duration = start.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    fn lens(p: i64, q: i64) -> LensSpace {
        LensSpace::new(p, q).unwrap()
    }

    #[test]
    fn connected_sum_order_and_shift() {
        let cache = LensCache::new();
        let sum = ConnectedSum::new(vec![lens(2, 1), lens(3, 1)], Some(r(1, 3))).unwrap();
        assert_eq!(sum.order(), 6);
        let ms = sum.correction_multiset(&cache);
        assert_eq!(ms.len(), 6);
        let plain = ConnectedSum::new(vec![lens(2, 1), lens(3, 1)], None)
            .unwrap()
            .correction_multiset(&cache);
        assert_eq!(ms, plain.shifted(&r(1, 3)));
        assert!(ConnectedSum::new(vec![], None).is_err());
    }

    #[test]
    fn l61_is_not_a_shift_of_l21_l31() {
        let l61 = lens::correction_multiset(&lens(6, 1));
        let sum = lens::correction_multiset(&lens(2, 1))
            .connected_sum(&lens::correction_multiset(&lens(3, 1)));
        // The mean rule proposes 2/9, which fails element-wise.
        assert_eq!((l61.total() - sum.total()).div_int(6), r(2, 9));
        assert_eq!(shift_constant(&l61, &sum), ShiftVerdict::NoShift);
    }

    #[test]
    fn range_examples() {
        assert_eq!(
            lens::correction_multiset(&lens(6, 1)).range().unwrap(),
            r(3, 2)
        );
        assert_eq!(
            lens::correction_multiset(&lens(15, 1)).range().unwrap(),
            r(56, 15)
        );
    }

    #[test]
    fn slice_obstruction_examples() {
        let l51 = lens::correction_multiset(&lens(5, 1));
        assert!(slice_surgery_obstruction(&l51, 5, 1).unwrap());
        let trefoil_6: CorrectionMultiset =
            [(-3, 4), (5, 12), (-1, 12), (-1, 4), (-1, 12), (5, 12)]
                .into_iter()
                .map(|(n, d)| r(n, d))
                .collect();
        assert!(!slice_surgery_obstruction(&trefoil_6, 6, 1).unwrap());
        assert!(slice_surgery_obstruction(&CorrectionMultiset::trivial(), 1, 0).unwrap());
        assert_eq!(
            slice_surgery_obstruction(&l51, 6, 1),
            Err(Error::SizeMismatch {
                expected: 6,
                found: 5
            })
        );
        assert!(slice_surgery_obstruction(&l51, 4, 2).is_err());
    }

    #[test]
    fn smallest_scan() {
        let report = two_summand_scan(6, &ScanOptions::default(), &Progress::silent()).unwrap();
        assert_eq!(report.tuples_checked, 2);
        assert_eq!(report.pairs_checked, 1);
        assert!(report.counterexamples.is_empty());
        assert!(two_summand_scan(5, &ScanOptions::default(), &Progress::silent()).is_err());
    }

    #[test]
    fn unpruned_scan_runs_every_full_test() {
        let opts = ScanOptions {
            jobs: Jobs::sequential(),
            prune: false,
        };
        let report = two_summand_scan(30, &opts, &Progress::silent()).unwrap();
        assert_eq!(report.full_tests, report.tuples_checked);
        assert!(report.counterexamples.is_empty());
        assert!(report.filter_unsound.is_empty());
    }

    #[test]
    fn scan_is_independent_of_job_count() {
        let run = |jobs| {
            let opts = ScanOptions { jobs, prune: false };
            let r = two_summand_scan(60, &opts, &Progress::silent()).unwrap();
            (
                r.tuples_checked,
                r.rejected_by_inequality,
                r.rejected_by_range,
                r.pairs_passing_inequality,
            )
        };
        assert_eq!(run(Jobs::sequential()), run(Jobs::new(3)));
    }

    #[test]
    fn range_bound_small() {
        let report = range_bound_scan(20, Jobs::all(), &Progress::silent()).unwrap();
        assert!(report.violations.is_empty());
        // Even p with q = 1 attains the bound exactly.
        let tight = report.tightest.unwrap();
        assert_eq!(tight.ratio, r(1, 1));
        assert_eq!((tight.p, tight.q), (2, 1));
        assert!(report.tightest_nontrivial.unwrap().ratio < r(1, 1));
        assert!(range_bound_scan(1, Jobs::all(), &Progress::silent()).is_err());
    }
}
