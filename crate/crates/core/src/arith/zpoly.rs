//! Integer polynomials for the hot loops of operator elimination.
//!
//! Working in ℤ[n] keeps every coefficient operation a plain big-integer
//! operation; gcds are computed modularly over word-size primes with a
//! primitive remainder sequence as fallback.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::QPoly;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
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

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Scales a rational polynomial to a primitive integer one (positive leading coefficient).
    pub fn from_qpoly(p: &QPoly) -> Self {
        let den = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
        Self::from_coeffs(ints).primitive()
    }

    /// `den · p` for a common denominator `den` of the coefficients of `p`.
    pub fn from_qpoly_scaled(p: &QPoly, den: &BigInt) -> Self {
        Self::from_coeffs(p.coeffs().iter().map(|c| (c * den).to_integer()).collect())
    }

    /// Least common multiple, primitive with positive leading coefficient.
    pub fn lcm(&self, other: &Self) -> Self {
        let g = self.gcd(other);
        (&self.exact_div(&g) * other).primitive()
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        let Some(lc) = self.leading_coeff() else {
            return Self::zero();
        };
        let mut g = self.content();
        if lc.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return self.clone();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divides every coefficient by `c`, which must divide them all.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        ZPoly { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `p(n + t)` by repeated synthetic division (Taylor shift).
    pub fn shift(&self, t: i64) -> Self {
        if t == 0 || self.is_constant() {
            return self.clone();
        }
        let t = BigInt::from(t);
        let mut c = self.coeffs.clone();
        let d = c.len();
        for i in 0..d {
            for k in (i..d - 1).rev() {
                let add = &c[k + 1] * &t;
                c[k] += add;
            }
        }
        Self::from_coeffs(c)
    }

    /// Exact quotient in ℤ[n], or `None` if `divisor` does not divide `self`.
    pub fn try_div(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let Some(sd) = self.degree() else {
            return Some(Self::zero());
        };
        if sd < dd {
            return None;
        }
        let lc = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (k, d) in divisor.coeffs.iter().enumerate() {
                let sub = &c * d;
                rem[i + k] -= sub;
            }
            quot[i] = c;
        }
        rem[..dd].iter().all(Zero::is_zero).then(|| Self::from_coeffs(quot))
    }

    /// Exact quotient; panics if the division is not exact.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        self.try_div(divisor).expect("inexact integer polynomial division")
    }

    /// Primitive gcd with positive leading coefficient; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        common_factor(&[self.clone(), other.clone()]).map_or_else(Self::one, |(g, _)| g)
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 || n.is_multiple_of(2) {
        return n == 2;
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for a in [2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Fixed list of large word-size primes, descending from 2^62.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut n = (1u64 << 62) - 1;
        while out.len() < 512 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce_mod(p: &ZPoly, m: u64) -> Vec<u64> {
    let big = BigInt::from(m);
    let mut v: Vec<u64> = p.coeffs.iter().map(|c| c.mod_floor(&big).try_into().expect("reduced")).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic gcd over 𝔽_p of two nonzero polynomials.
fn gcd_mod(mut x: Vec<u64>, mut y: Vec<u64>, p: u64) -> Vec<u64> {
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let inv = powmod(*y.last().expect("nonzero"), p - 2, p);
        while x.len() >= y.len() {
            let f = mulmod(*x.last().expect("nonzero"), inv, p);
            let off = x.len() - y.len();
            for (i, c) in y.iter().enumerate() {
                x[off + i] = (x[off + i] + p - mulmod(f, *c, p)) % p;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    let inv = powmod(*x.last().expect("nonzero"), p - 2, p);
    x.iter().map(|&c| mulmod(c, inv, p)).collect()
}

/// Symmetric residues of `acc` modulo `m` as a primitive polynomial.
fn symmetric(acc: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    let coeffs = acc.iter().map(|c| if *c > half { c - m } else { c.clone() }).collect();
    ZPoly::from_coeffs(coeffs).primitive()
}

/// Modular gcd of nonzero polynomials: images modulo word primes, combined
/// by the Chinese remainder theorem and accepted once the lifted candidate is
/// stable and divides every input. Returns the primitive gcd with the
/// cofactors, or `None` if the prime list runs out.
fn modular_gcd(polys: &[&ZPoly]) -> Option<(ZPoly, Vec<ZPoly>)> {
    let first = polys[0].leading_coeff().expect("nonzero");
    let gl = polys.iter().fold(BigInt::zero(), |g, p| g.gcd(p.leading_coeff().expect("nonzero")));
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::zero();
    let mut last: Option<ZPoly> = None;
    for &p in primes() {
        let pb = BigInt::from(p);
        if (first % &pb).is_zero() || (&gl % &pb).is_zero() {
            continue;
        }
        let mut g = reduce_mod(polys[0], p);
        for q in &polys[1..] {
            if g.len() == 1 {
                break;
            }
            let r = reduce_mod(q, p);
            if !r.is_empty() {
                g = gcd_mod(g, r, p);
            }
        }
        if g.len() == 1 {
            return Some((ZPoly::one(), polys.iter().map(|&q| q.clone()).collect()));
        }
        let lc_inv = powmod(*g.last().expect("nonzero"), p - 2, p);
        let scale = mulmod(gl.mod_floor(&pb).try_into().expect("reduced"), lc_inv, p);
        let g: Vec<u64> = g.iter().map(|&c| mulmod(c, scale, p)).collect();
        if acc.is_empty() || g.len() < acc.len() {
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            modulus = pb;
            last = None;
        } else if g.len() > acc.len() {
            continue;
        } else {
            // x ≡ acc (mod M), x ≡ g (mod p)
            let m_inv = powmod((&modulus % &pb).try_into().expect("reduced"), p - 2, p);
            for (x, &r) in acc.iter_mut().zip(&g) {
                let xr: u64 = (&*x % &pb).try_into().expect("reduced");
                let t = mulmod((r + p - xr) % p, m_inv, p);
                *x += &modulus * BigInt::from(t);
            }
            modulus *= &pb;
        }
        let candidate = symmetric(&acc, &modulus);
        if last.as_ref() == Some(&candidate) {
            let cofactors: Option<Vec<ZPoly>> = polys.iter().map(|q| q.try_div(&candidate)).collect();
            if let Some(cofactors) = cofactors {
                return Some((candidate, cofactors));
            }
        }
        last = Some(candidate);
    }
    None
}

/// Nonconstant primitive common divisor of all entries together with the
/// cofactors (zero entries stay zero); `None` when the entries are coprime
/// or all zero.
pub fn common_factor(entries: &[ZPoly]) -> Option<(ZPoly, Vec<ZPoly>)> {
    let nonzero: Vec<&ZPoly> = entries.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() || nonzero.iter().any(|p| p.is_constant()) {
        return None;
    }
    let (g, cofactors) = match modular_gcd(&nonzero) {
        Some(found) => found,
        None => {
            let g = nonzero.iter().fold(ZPoly::zero(), |g, p| prs_gcd_any(&g, p));
            let cofactors = nonzero.iter().map(|p| p.exact_div(&g)).collect();
            (g, cofactors)
        }
    };
    if g.is_constant() {
        return None;
    }
    let mut cofactors = cofactors.into_iter();
    let full = entries
        .iter()
        .map(|p| if p.is_zero() { ZPoly::zero() } else { cofactors.next().expect("one per entry") })
        .collect();
    Some((g, full))
}

fn prs_gcd_any(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.primitive();
    }
    prs_gcd(a.primitive(), b.primitive())
}

/// Primitive polynomial remainder sequence.
fn prs_gcd(mut a: ZPoly, mut b: ZPoly) -> ZPoly {
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = pseudo_rem(&a, &b).primitive();
        a = b;
        b = r;
    }
    a.primitive()
}

fn pseudo_rem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = b.degree().expect("nonzero divisor");
    let lc = &b.coeffs[db];
    let mut r = a.coeffs.clone();
    while r.len() > db {
        let top = r.last().expect("nonempty").clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (k, d) in b.coeffs.iter().enumerate() {
            let sub = &top * d;
            r[shift + k] -= sub;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    ZPoly::from_coeffs(r)
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut c = long.coeffs.clone();
        for (x, y) in c.iter_mut().zip(&short.coeffs) {
            *x += y;
        }
        ZPoly::from_coeffs(c)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let mut c = self.coeffs.clone();
        if c.len() < rhs.coeffs.len() {
            c.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (x, y) in c.iter_mut().zip(&rhs.coeffs) {
            *x -= y;
        }
        ZPoly::from_coeffs(c)
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        if self.coeffs.len().min(rhs.coeffs.len()) < KRONECKER_MIN {
            let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
            for (i, x) in self.coeffs.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in rhs.coeffs.iter().enumerate() {
                    c[i + j] += x * y;
                }
            }
            return ZPoly::from_coeffs(c);
        }
        kronecker_mul(self, rhs)
    }
}

/// Length from which products go through a single big-integer product.
const KRONECKER_MIN: usize = 8;

fn max_bits(p: &ZPoly) -> u64 {
    p.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
}

/// Packs `p` into `p(2^k)`.
fn pack(p: &ZPoly, k: u64) -> BigInt {
    p.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| (acc << k) + c)
}

/// Product by Kronecker substitution at `2^k`, with `k` large enough for the
/// product coefficients to be read back as symmetric digits.
fn kronecker_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let len = a.coeffs.len().min(b.coeffs.len()) as u64;
    let k = max_bits(a) + max_bits(b) + (64 - len.leading_zeros() as u64) + 2;
    let v = pack(a, k) * pack(b, k);
    let n = a.coeffs.len() + b.coeffs.len() - 1;
    let negative = v.is_negative();
    let words = v.magnitude().to_u64_digits();
    let base = BigInt::one() << k;
    let half = BigInt::one() << (k - 1);
    let mut carry = false;
    let mut coeffs = Vec::with_capacity(n);
    for i in 0..n as u64 {
        let mut d = BigInt::from(bit_slice(&words, i * k, k));
        if carry {
            d += 1;
        }
        carry = d >= half;
        if carry {
            d -= &base;
        }
        coeffs.push(if negative { -d } else { d });
    }
    ZPoly::from_coeffs(coeffs)
}

/// Bits `lo .. lo + len` of a little-endian word slice.
fn bit_slice(words: &[u64], lo: u64, len: u64) -> BigUint {
    let first = (lo / 64) as usize;
    let offset = lo % 64;
    let count = (len + offset).div_ceil(64) as usize;
    let mut out = Vec::with_capacity(count);
    for w in 0..count {
        let cur = words.get(first + w).copied().unwrap_or(0);
        let next = words.get(first + w + 1).copied().unwrap_or(0);
        out.push(if offset == 0 { cur } else { (cur >> offset) | (next << (64 - offset)) });
    }
    let x = BigUint::new(out.iter().flat_map(|&w| [w as u32, (w >> 32) as u32]).collect());
    x & ((BigUint::one() << len) - 1u32)
}
