//! Small helpers around [`BigRational`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn qq(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn as_integer(x: &BigRational) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn as_i64(x: &BigRational) -> Option<i64> {
    as_integer(x)?.to_i64()
}

pub fn as_u64(x: &BigRational) -> Option<u64> {
    as_integer(x)?.to_u64()
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `x^e` for a signed exponent; `x` must be nonzero when `e < 0`.
pub fn pow_i64(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        Pow::pow(x, e.unsigned_abs())
    } else {
        assert!(!x.is_zero(), "zero to a negative power");
        Pow::pow(x.recip(), e.unsigned_abs())
    }
}

/// Rising factorial `(x)_k = x(x+1)⋯(x+k−1)`.
pub fn rising(x: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut cur = x.clone();
    for _ in 0..k {
        acc *= &cur;
        cur += BigRational::one();
    }
    acc
}
