//! Exact rational helpers: factorials, conversions and small-rational recovery.

use alloc::vec::Vec;
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Product lo·(lo+1)·…·hi, or 1 when the range is empty.
pub fn range_product(lo: u64, hi: u64) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    if hi - lo < 16 {
        let mut acc = BigUint::one();
        for v in lo..=hi {
            acc *= v;
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    range_product(lo, mid) * range_product(mid + 1, hi)
}

pub fn factorial(n: u64) -> BigUint {
    range_product(1, n)
}

/// α! = ∏ α_j!.
pub fn multi_factorial(alpha: &[u32]) -> BigUint {
    alpha.iter().fold(BigUint::one(), |acc, &a| acc * factorial(a as u64))
}

fn shifted(x: &BigUint, bits: i64) -> (BigUint, i64) {
    let shift = x.bits() as i64 - bits;
    if shift >= 0 {
        (x >> (shift as u64), shift)
    } else {
        (x << ((-shift) as u64), shift)
    }
}

/// Correctly scaled p/q for arbitrarily large operands.
pub fn uint_ratio_to_f64(p: &BigUint, q: &BigUint) -> f64 {
    assert!(!q.is_zero(), "zero denominator");
    if p.is_zero() {
        return 0.0;
    }
    let (pt, ps) = shifted(p, 160);
    let (qt, qs) = shifted(q, 96);
    let m = (pt / qt).to_f64().unwrap_or(f64::INFINITY);
    let e = (ps - qs).clamp(i32::MIN as i64 / 2, i32::MAX as i64 / 2) as i32;
    // split the exponent so intermediate values never overflow prematurely
    let half = e / 2;
    libm::scalbn(libm::scalbn(m, half), e - half)
}

pub fn to_f64(r: &BigRational) -> f64 {
    let p = r.numer().magnitude();
    let q = r.denom().magnitude();
    let v = uint_ratio_to_f64(p, q);
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// The exact value of a finite float.
pub fn from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn from_uint(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from_biguint(Sign::Plus, x))
}

pub fn from_int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn from_small(r: Ratio<i64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// The fraction p/q with q ≤ `max_den` whose float value is exactly `x`.
pub fn small_rational(x: f64, max_den: i64) -> Option<Ratio<i64>> {
    if !x.is_finite() {
        return None;
    }
    for q in 1..=max_den {
        let p = libm::round(x * q as f64);
        if p.abs() > 1e15 {
            return None;
        }
        if p / q as f64 == x {
            return Some(Ratio::new(p as i64, q));
        }
    }
    None
}

/// Exact integer power with a signed exponent.
pub fn pow_signed(base: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    let mut b = if e < 0 { base.recip() } else { base.clone() };
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k.is_odd() {
            acc *= &b;
        }
        b = &b * &b;
        k >>= 1;
    }
    acc
}

/// Sum of a list of exact values.
pub fn sum(values: &[BigRational]) -> BigRational {
    values.iter().fold(BigRational::zero(), |acc, v| acc + v)
}

pub fn convolve(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut out = alloc::vec![BigRational::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}
