//! Fixed-point high-precision reals on top of `BigInt`.
//!
//! Values are stored as integer multiples of 10^-SCALE_DIGITS. This is enough
//! for the handful of places that need more than f64: infinite products with
//! a 1e-30 truncation cutoff, and logarithms of fundamental units whose
//! integer coordinates run to thousands of digits.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Euclid, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

/// Working precision in decimal digits. Published values are rounded well
/// below this, so the last few digits act as guard digits.
pub const SCALE_DIGITS: u32 = 60;

fn scale() -> &'static BigInt {
    static SCALE: OnceLock<BigInt> = OnceLock::new();
    SCALE.get_or_init(|| BigInt::from(10u32).pow(SCALE_DIGITS))
}

/// A fixed-point real with `SCALE_DIGITS` decimal digits after the point.
#[derive(Clone, PartialEq, Eq)]
pub struct BigFx(BigInt);

impl BigFx {
    pub fn zero() -> Self {
        BigFx(BigInt::zero())
    }

    pub fn one() -> Self {
        BigFx(scale().clone())
    }

    pub fn from_int(n: i64) -> Self {
        BigFx(BigInt::from(n) * scale())
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        BigFx(n * scale())
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        assert!(!den.is_zero());
        BigFx((num * scale()).div_euclid(den))
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_ratio(r.numer(), r.denom())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.0.is_zero());
        BigFx((scale() * scale()).div_euclid(&self.0))
    }

    pub fn abs(&self) -> Self {
        BigFx(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        // split into integer and fractional parts to stay in f64 range
        let (q, r) = (self.0.div_euclid(scale()), self.0.rem_euclid(scale()));
        q.to_f64().unwrap_or(f64::NAN) + r.to_f64().unwrap_or(0.0) / 10f64.powi(SCALE_DIGITS as i32)
    }

    /// Square root via integer Newton iteration; requires a nonnegative value.
    pub fn sqrt(&self) -> Self {
        assert!(self.0.sign() != Sign::Minus, "sqrt of negative value");
        if self.0.is_zero() {
            return Self::zero();
        }
        let target = &self.0 * scale();
        let mut x: BigInt = BigInt::one() << ((target.bits() / 2) + 1);
        loop {
            let next = (&x + &target / &x) >> 1;
            if next >= x {
                return BigFx(x);
            }
            x = next;
        }
    }

    /// Natural logarithm. Requires a positive value.
    ///
    /// The argument is scaled by powers of two into [2/3, 4/3], where
    /// atanh((x-1)/(x+1)) converges geometrically with ratio < 1/25.
    pub fn ln(&self) -> Self {
        assert!(self.0.sign() == Sign::Plus, "ln requires a positive value");
        let mut k: i64 = 0;
        let mut v = self.clone();
        let two_thirds = Self::from_ratio(&BigInt::from(2), &BigInt::from(3));
        let four_thirds = Self::from_ratio(&BigInt::from(4), &BigInt::from(3));
        while v > four_thirds {
            v = BigFx(v.0 >> 1);
            k += 1;
        }
        while v < two_thirds {
            v = BigFx(v.0 << 1);
            k -= 1;
        }
        // ln v = 2 atanh(t), t = (v-1)/(v+1), |t| <= 1/5
        let one = Self::one();
        let t = (v.clone() - one.clone()) / (v + one);
        let t2 = t.clone() * t.clone();
        let mut term = t.clone();
        let mut sum = t;
        let mut n = 1u32;
        loop {
            term = term * t2.clone();
            n += 2;
            let inc = BigFx(term.0.clone() / BigInt::from(n));
            if inc.0.is_zero() {
                break;
            }
            sum = sum + inc;
            if n > 4 * SCALE_DIGITS {
                break;
            }
        }
        let ln_v = BigFx(sum.0 << 1);
        ln_v + Self::from_int(k) * ln2()
    }

    /// Decimal rendering with the given number of fractional digits.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        let digits = digits.min(SCALE_DIGITS);
        let drop = BigInt::from(10u32).pow(SCALE_DIGITS - digits);
        let v = self.0.div_euclid(&drop);
        let base = BigInt::from(10u32).pow(digits);
        let (q, r) = (v.div_euclid(&base), v.rem_euclid(&base));
        format!("{}.{:0width$}", q, r, width = digits as usize)
    }
}

/// ln 2 at working precision (2 atanh(1/3)).
pub fn ln2() -> BigFx {
    static LN2: OnceLock<BigInt> = OnceLock::new();
    BigFx(
        LN2.get_or_init(|| {
            let third = BigFx::from_ratio(&BigInt::one(), &BigInt::from(3));
            let t2 = third.clone() * third.clone();
            let mut term = third.clone();
            let mut sum = third;
            let mut n = 1u32;
            loop {
                term = term * t2.clone();
                n += 2;
                let inc = BigFx(term.0.clone() / BigInt::from(n));
                if inc.0.is_zero() {
                    break;
                }
                sum = sum + inc;
            }
            sum.0 << 1
        })
        .clone(),
    )
}

impl Add for BigFx {
    type Output = BigFx;
    fn add(self, rhs: BigFx) -> BigFx {
        BigFx(self.0 + rhs.0)
    }
}

impl Sub for BigFx {
    type Output = BigFx;
    fn sub(self, rhs: BigFx) -> BigFx {
        BigFx(self.0 - rhs.0)
    }
}

impl Mul for BigFx {
    type Output = BigFx;
    fn mul(self, rhs: BigFx) -> BigFx {
        BigFx((self.0 * rhs.0).div_euclid(scale()))
    }
}

impl Div for BigFx {
    type Output = BigFx;
    fn div(self, rhs: BigFx) -> BigFx {
        assert!(!rhs.0.is_zero());
        BigFx((self.0 * scale()).div_euclid(&rhs.0))
    }
}

impl Neg for BigFx {
    type Output = BigFx;
    fn neg(self) -> BigFx {
        BigFx(-self.0)
    }
}

impl PartialOrd for BigFx {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BigFx {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Debug for BigFx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(30))
    }
}

impl fmt::Display for BigFx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string(30))
    }
}
