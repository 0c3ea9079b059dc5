//! Library results checked against independent reference computations that
//! live only here.

use corrterm::lens::{self, neg_correction_values};
use corrterm::{
    cyclotomic, torus_alexander, two_summand_scan, LaurentPolynomial, LensSpace, Progress,
    ScanOptions,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

/// Top-down recursion, straight from the defining formula, in bignums.
fn naive_d_neg(p: i64, q: i64, i: i64) -> BigRational {
    if p == 1 {
        assert_eq!((q, i), (0, 0));
        return BigRational::from_integer(0.into());
    }
    let s = 2 * i + 1 - p - q;
    let term = BigRational::new(BigInt::from(p * q - s * s), BigInt::from(4 * p * q));
    let (r, j) = (p % q, i % q);
    // L(q, 0) only occurs for q = 1, the three-sphere.
    let inner = if q == 1 {
        naive_d_neg(1, 0, 0)
    } else {
        naive_d_neg(q, r, j)
    };
    term - inner
}

fn coprime_pairs(p_max: i64) -> impl Iterator<Item = (i64, i64)> {
    (2..=p_max).flat_map(|p| (1..p).filter(move |q| q.gcd(&p) == 1).map(move |q| (p, q)))
}

#[test]
fn recursion_matches_naive_evaluator() {
    for (p, q) in coprime_pairs(60) {
        let l = LensSpace::new(p, q).unwrap();
        let values = neg_correction_values(&l);
        for i in 0..p + q {
            assert_eq!(
                values[i as usize].as_big_rational(),
                &naive_d_neg(p, q, i),
                "L({p},{q}) index {i}"
            );
        }
    }
}

#[test]
fn delta_matches_naive_extremes() {
    for (p, q) in coprime_pairs(60) {
        let vals: Vec<BigRational> = (0..p).map(|i| naive_d_neg(p, q, i)).collect();
        let delta = vals.iter().max().unwrap() - vals.iter().min().unwrap();
        let l = LensSpace::new(p, q).unwrap();
        assert_eq!(
            lens::delta_range(&l).as_big_rational(),
            &delta,
            "L({p},{q})"
        );
    }
}

fn moebius(n: u64) -> i32 {
    let mut n = n;
    let mut mu = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn t_pow_minus_one(d: u64) -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(0, BigInt::from(-1)), (d as i64, BigInt::from(1))])
}

#[test]
fn cyclotomic_matches_moebius_product() {
    // Φ_n = Π_{d | n} (t^d - 1)^{μ(n/d)}.
    for n in 1..=120u64 {
        let mut num = LaurentPolynomial::one();
        let mut den = LaurentPolynomial::one();
        for d in (1..=n).filter(|d| n % d == 0) {
            match moebius(n / d) {
                1 => num = &num * &t_pow_minus_one(d),
                -1 => den = &den * &t_pow_minus_one(d),
                _ => {}
            }
        }
        assert_eq!(
            *cyclotomic(n).unwrap(),
            num.div_exact(&den).unwrap(),
            "n = {n}"
        );
    }
}

#[test]
fn torus_polynomial_matches_rational_function() {
    // (t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1)), recentered.
    for p in 2..=12u64 {
        for q in 2..=12u64 {
            if p.gcd(&q) != 1 || p * q > 120 {
                continue;
            }
            let num = &t_pow_minus_one(p * q) * &t_pow_minus_one(1);
            let den = &t_pow_minus_one(p) * &t_pow_minus_one(q);
            let expect = num
                .div_exact(&den)
                .unwrap()
                .shift(-(((p - 1) * (q - 1) / 2) as i64));
            assert_eq!(torus_alexander(p, q).unwrap(), expect, "T({p},{q})");
        }
    }
}

#[test]
fn smallest_two_summand_scan_by_enumeration() {
    let report = two_summand_scan(6, &ScanOptions::default(), &Progress::silent()).unwrap();
    // Only (p, q) = (2, 3), with a = 1 and b in {1, 2}.
    assert_eq!(report.tuples_checked, 2);
    assert!(report.counterexamples.is_empty());
}
