use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::FromPrimitive;

use super::{AffineMap, Scalar, UniPoly};
use crate::error::{Error, Result};

/// Reduced quotient `num/den` of polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFun<T> {
    num: UniPoly<T>,
    den: UniPoly<T>,
}

impl<T: Scalar> RatFun<T> {
    pub fn new(num: UniPoly<T>, den: UniPoly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial("rational function with zero denominator"));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UniPoly<T>, den: UniPoly<T>) -> Self {
        if num.is_zero() {
            return RatFun { num, den: UniPoly::one() };
        }
        let g = num.gcd(&den).expect("nonzero operands");
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        RatFun {
            num: num.unscale(&lc),
            den: den.unscale(&lc),
        }
    }

    pub fn from_poly(p: UniPoly<T>) -> Self {
        RatFun { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn num(&self) -> &UniPoly<T> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == UniPoly::one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &T) -> Option<T> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn subst_affine(&self, map: &AffineMap<T>) -> Result<Self> {
        Self::new(self.num.subst_affine(map), self.den.subst_affine(map))
    }
}

impl<T: Scalar + FromPrimitive> RatFun<T> {
    /// `r(n + t)`.
    pub fn shift(&self, t: i64) -> Self {
        // shifting preserves coprimality and the denominator's leading coefficient
        RatFun { num: self.num.shift(t), den: self.den.shift(t) }
    }
}

impl<T: Scalar> Add for &RatFun<T> {
    type Output = RatFun<T>;

    fn add(self, rhs: &RatFun<T>) -> RatFun<T> {
        if self.den == rhs.den {
            return RatFun::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::reduce(num, &self.den * &rhs.den)
    }
}

impl<T: Scalar> Sub for &RatFun<T> {
    type Output = RatFun<T>;

    fn sub(self, rhs: &RatFun<T>) -> RatFun<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &RatFun<T> {
    type Output = RatFun<T>;

    fn mul(self, rhs: &RatFun<T>) -> RatFun<T> {
        RatFun::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Scalar> Div for &RatFun<T> {
    type Output = RatFun<T>;

    /// Panics on division by the zero function; use [`RatFun::inv`] for a fallible route.
    fn div(self, rhs: &RatFun<T>) -> RatFun<T> {
        assert!(!rhs.is_zero(), "rational function division by zero");
        RatFun::reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<T: Scalar> Neg for &RatFun<T> {
    type Output = RatFun<T>;

    fn neg(self) -> RatFun<T> {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}
