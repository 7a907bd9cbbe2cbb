use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, Zero};

use super::{AffineMap, Scalar};
use crate::error::{Error, Result};

/// Dense univariate polynomial; `coeffs[i]` multiplies `n^i`.
///
/// The highest stored coefficient is never zero, so the zero polynomial is
/// the empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `n`.
    pub fn var() -> Self {
        Self::from_coeffs(vec![T::zero(), T::one()])
    }

    /// `a·n + b`.
    pub fn linear(a: T, b: T) -> Self {
        Self::from_coeffs(vec![b, a])
    }

    /// `c·n^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Order of vanishing at `n = 0`; `None` for the zero polynomial.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Divides every coefficient by `c` (which must be nonzero).
    pub fn unscale(&self, c: &T) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a.clone() / c.clone()).collect(),
        }
    }

    /// Multiplies by `n^k`.
    pub fn mul_var_pow(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(a·n + b)`.
    pub fn compose_linear(&self, a: &T, b: &T) -> Self {
        let lin = Self::linear(a.clone(), b.clone());
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn subst_affine(&self, map: &AffineMap<T>) -> Self {
        self.compose_linear(&map.slope, &map.intercept)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.unscale(lc),
        }
    }

    /// Euclidean division; panics when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = rem[i + dd].clone() / lc.clone();
            if c.is_zero() {
                continue;
            }
            for (k, d) in divisor.coeffs.iter().enumerate() {
                rem[i + k] = rem[i + k].clone() - c.clone() * d.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("gcd of two zero polynomials"));
        }
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        Ok(a)
    }

    /// Monic least common multiple of two nonzero polynomials.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial("lcm with a zero polynomial"));
        }
        let g = self.gcd(other)?;
        Ok((&self.exact_div(&g) * other).monic())
    }
}

impl<T: Scalar + FromPrimitive> UniPoly<T> {
    /// `p(n + t)`.
    pub fn shift(&self, t: i64) -> Self {
        if t == 0 || self.is_constant() {
            return self.clone();
        }
        let t = T::from_i64(t).expect("shift amount representable in the scalar type");
        self.compose_linear(&T::one(), &t)
    }
}

impl<T: Scalar> Zero for UniPoly<T> {
    fn zero() -> Self {
        UniPoly::zero()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> Add for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn add(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl<T: Scalar> Sub for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn sub(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl<T: Scalar> Mul for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn mul(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl<T: Scalar> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for UniPoly<T> {
            type Output = UniPoly<T>;

            fn $method(self, rhs: UniPoly<T>) -> UniPoly<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: Scalar> Neg for UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        -&self
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for UniPoly<T> {
    /// Descending-degree rendering in the variable `n`, e.g. `3*n^2 - n + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "n")?,
                1 => write!(f, "{mag}*n")?,
                _ if unit => write!(f, "n^{i}")?,
                _ => write!(f, "{mag}*n^{i}")?,
            }
        }
        Ok(())
    }
}
