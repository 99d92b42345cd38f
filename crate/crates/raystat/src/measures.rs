//! Cohen-Lenstra weights on finite abelian S-groups and the eta products
//! they are built from.

use crate::abelian::{groups_with_order_bound, FinAbGroup};
use crate::bigfloat::BigFx;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

/// Factor cutoff for infinite products: stop once 1 - factor < 1e-30.
const PRODUCT_CUTOFF_EXP: u32 = 30;

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error("group {0} has order with prime factors outside S = {1:?}")]
    NotAnSGroup(FinAbGroup, Vec<u64>),
    #[error("S must consist of odd primes, got {0}")]
    BadPrimeSet(u64),
}

/// Sign of the quadratic family a measure refers to: `Minus` is imaginary,
/// `Plus` is real.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilySign {
    Plus,
    Minus,
}

/// Validated parameters for the weight computations: a finite set of odd
/// primes and a truncation depth for series.
#[derive(Clone, Debug)]
pub struct CLWeights {
    pub primes: Vec<u64>,
    pub depth: u32,
}

impl CLWeights {
    pub fn new(primes: &[u64], depth: u32) -> Result<Self, MeasureError> {
        if primes.is_empty() {
            return Err(MeasureError::BadPrimeSet(0));
        }
        for &p in primes {
            if p == 2 || !crate::arith::is_prime(p) {
                return Err(MeasureError::BadPrimeSet(p));
            }
        }
        assert!(depth >= 1);
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        Ok(CLWeights { primes, depth })
    }
}

/// eta_N(l) = prod_{i=1..N} (1 - l^-i) as an exact rational.
pub fn eta_rational(n: u32, ell: u64) -> BigRational {
    let mut acc = BigRational::one();
    let l = BigInt::from(ell);
    let mut power = BigInt::one();
    for _ in 1..=n {
        power *= &l;
        acc *= BigRational::new(&power - BigInt::one(), power.clone());
    }
    acc
}

/// eta_infinity(l): converged product, truncated once factors are within
/// 1e-30 of 1 (at least 40 terms either way).
pub fn eta_infinity(ell: u64) -> BigFx {
    let mut acc = BigFx::one();
    let l = BigInt::from(ell);
    let mut power = BigInt::one();
    let cutoff = BigInt::from(10u32).pow(PRODUCT_CUTOFF_EXP);
    let mut i = 0u32;
    loop {
        power *= &l;
        i += 1;
        acc = acc * BigFx::from_ratio(&(&power - BigInt::one()), &power);
        if i >= 40 && power > cutoff {
            return acc;
        }
    }
}

/// (c^-)^{-1} = prod_{p in S} prod_{k>=1} (1 - p^-k).
pub fn c_minus_inverse(w: &CLWeights) -> BigFx {
    w.primes
        .iter()
        .fold(BigFx::one(), |acc, &p| acc * eta_infinity(p))
}

/// (2 c^+)^{-1} = prod_{p in S} prod_{k>=2} (1 - p^-k).
pub fn two_c_plus_inverse(w: &CLWeights) -> BigFx {
    w.primes.iter().fold(BigFx::one(), |acc, &p| {
        let first = BigFx::from_ratio(&BigInt::from(p - 1), &BigInt::from(p));
        acc * (eta_infinity(p) / first)
    })
}

/// The Cohen-Lenstra weight of a finite abelian S-group:
/// (c^-)^{-1}/#Aut E for the imaginary family, (2c^+)^{-1}/(#Aut E * #E)
/// for the real family.
pub fn cl_measure(g: &FinAbGroup, sign: FamilySign, w: &CLWeights) -> Result<BigFx, MeasureError> {
    if g.s_part(&w.primes) != *g {
        return Err(MeasureError::NotAnSGroup(g.clone(), w.primes.clone()));
    }
    let aut = BigInt::from(g.aut_order());
    Ok(match sign {
        FamilySign::Minus => c_minus_inverse(w) * BigFx::from_int(1) / BigFx::from_bigint(&aut),
        FamilySign::Plus => {
            let denom = aut * BigInt::from(g.order());
            two_c_plus_inverse(w) / BigFx::from_bigint(&denom)
        }
    })
}

/// Partial sum of cl weights over all S-groups of order <= bound.
pub fn measure_partial_sum(sign: FamilySign, w: &CLWeights, bound: u128) -> BigFx {
    groups_with_order_bound(&w.primes, bound)
        .iter()
        .fold(BigFx::zero(), |acc, g| {
            acc + cl_measure(g, sign, w).expect("enumerated group is an S-group")
        })
}

/// Truncated moment sum over S-groups of order <= bound of weight * #E[ell].
pub fn torsion_moment(sign: FamilySign, w: &CLWeights, ell: u64, bound: u128) -> BigFx {
    groups_with_order_bound(&w.primes, bound)
        .iter()
        .fold(BigFx::zero(), |acc, g| {
            let weight = cl_measure(g, sign, w).expect("enumerated group is an S-group");
            acc + weight * BigFx::from_int(g.ell_torsion(ell) as i64)
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &BigFx, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() < tol
    }

    #[test]
    fn eta_small_rationals() {
        assert_eq!(
            eta_rational(1, 3),
            BigRational::new(BigInt::from(2), BigInt::from(3))
        );
        assert_eq!(
            eta_rational(2, 3),
            BigRational::new(BigInt::from(16), BigInt::from(27))
        );
        assert_eq!(eta_rational(0, 3), BigRational::one());
    }

    #[test]
    fn eta_infinity_reference() {
        // prod (1 - 3^-i) = 0.560126077927948533...
        let v = eta_infinity(3);
        assert!(close(&v, 0.560126077927948533, 1e-15));
        let s = v.to_decimal_string(15);
        assert_eq!(s, "0.560126077927948");
    }

    #[test]
    fn measures_match_hand_values() {
        let w = CLWeights::new(&[3], 40).unwrap();
        let trivial = FinAbGroup::trivial();
        let z3 = FinAbGroup::cyclic(3);
        // mu^-(1) = eta_inf(3), mu^-(Z/3) = eta_inf(3)/2
        assert!(close(
            &cl_measure(&trivial, FamilySign::Minus, &w).unwrap(),
            0.560126077927949,
            1e-12
        ));
        assert!(close(
            &cl_measure(&z3, FamilySign::Minus, &w).unwrap(),
            0.280063038963974,
            1e-12
        ));
        // mu^+(1) = prod_{k>=2}(1 - 3^-k) = eta_inf(3)/(2/3)
        assert!(close(
            &cl_measure(&trivial, FamilySign::Plus, &w).unwrap(),
            0.840189116891923,
            1e-12
        ));
        // even-order group rejected
        assert!(cl_measure(&FinAbGroup::cyclic(2), FamilySign::Plus, &w).is_err());
    }

    #[test]
    fn minus_measure_sums_to_one_monotonically() {
        let w = CLWeights::new(&[3], 40).unwrap();
        let mut last = BigFx::zero();
        for n in 1..=7u32 {
            let bound = 3u128.pow(n);
            let sum = measure_partial_sum(FamilySign::Minus, &w, bound);
            assert!(sum > last, "partial sums must increase");
            assert!(sum < BigFx::one());
            last = sum;
        }
        assert!(last.to_f64() > 0.999, "sum {last} too far from 1");
    }

    #[test]
    fn plus_measure_sums_toward_one() {
        let w = CLWeights::new(&[3], 40).unwrap();
        let sum = measure_partial_sum(FamilySign::Plus, &w, 3u128.pow(8));
        assert!(sum.to_f64() > 0.9999 && sum.to_f64() < 1.0);
    }

    #[test]
    fn moment_identities() {
        let w = CLWeights::new(&[3], 40).unwrap();
        // real family: sum mu^+(E) #E[3] = 1 + 1/3
        let m_plus = torsion_moment(FamilySign::Plus, &w, 3, 3u128.pow(8));
        assert!((m_plus.to_f64() - 4.0 / 3.0).abs() < 1e-3);
        // imaginary family: sum mu^-(E) #E[3] = 2
        let m_minus = torsion_moment(FamilySign::Minus, &w, 3, 3u128.pow(9));
        assert!((m_minus.to_f64() - 2.0).abs() < 2e-2);
    }

    #[test]
    fn rejects_even_primes() {
        assert!(CLWeights::new(&[2], 40).is_err());
        assert!(CLWeights::new(&[9], 40).is_err());
        assert!(CLWeights::new(&[], 40).is_err());
    }
}
