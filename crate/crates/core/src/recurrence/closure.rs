//! Addition closure for P-recursive operators.
//!
//! The shifts `S^t(a + b)` are written as vectors over the basis
//! `a(n), …, a(n+d₁−1), b(n), …, b(n+d₂−1)` with entries in ℚ(n), reducing
//! with the input operators. The first linear dependency among these rows
//! gives a common left multiple `L` over ℚ(n). Right-dividing `L` by both
//! inputs and clearing the denominators of the quotients makes
//! `L = A·L₁ = B·L₂` with polynomial `A`, `B`, so `L` annihilates `a + b`
//! at every `n ≥ 0`, not only generically.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::RecOperator;
use crate::arith::{common_factor, split_nonneg_root_part_z, ZPoly};
use crate::error::{Error, Result};
use crate::QPoly;

/// Reduced representation of `S^t a` modulo an operator, as `num / den`.
struct ShiftReducer {
    coeffs: Vec<ZPoly>,
    num: Vec<ZPoly>,
    den: ZPoly,
}

impl ShiftReducer {
    fn new(op: &RecOperator) -> Self {
        let d = op.order();
        let mut num = vec![ZPoly::zero(); d];
        num[0] = ZPoly::one();
        ShiftReducer { coeffs: op.zcoeffs(), num, den: ZPoly::one() }
    }

    fn advance(&mut self) {
        let d = self.coeffs.len() - 1;
        let shifted: Vec<ZPoly> = self.num.iter().map(|p| p.shift(1)).collect();
        let mut den = self.den.shift(1);
        let top = &shifted[d - 1];
        let mut next = vec![ZPoly::zero(); d];
        if top.is_zero() {
            next[1..d].clone_from_slice(&shifted[..d - 1]);
        } else {
            let lead = &self.coeffs[d];
            next[0] = -&(top * &self.coeffs[0]);
            for i in 1..d {
                next[i] = &(&shifted[i - 1] * lead) - &(top * &self.coeffs[i]);
            }
            den = &den * lead;
        }
        let mut all = next;
        all.push(den);
        remove_content(&mut all);
        let mut den = all.pop().expect("denominator");
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            den = -&den;
            for p in all.iter_mut() {
                *p = -&*p;
            }
        }
        self.num = all;
        self.den = den;
    }
}

/// Divides every entry by the gcd (polynomial and integer) of all entries.
fn remove_content(entries: &mut [ZPoly]) {
    if let Some((_, cofactors)) = common_factor(entries) {
        entries.clone_from_slice(&cofactors);
    }
    let mut c = BigInt::zero();
    for p in entries.iter() {
        c = c.gcd(&p.content());
        if c.is_one() {
            return;
        }
    }
    if !c.is_zero() {
        for p in entries.iter_mut() {
            *p = p.div_scalar(&c);
        }
    }
}

struct EchelonRow {
    pivot: usize,
    row: Vec<ZPoly>,
    trans: Vec<ZPoly>,
}

/// Finds the first `t` such that rows `0..=t` are dependent over ℚ(n) and
/// returns polynomial weights `w` with `Σ w_t·row_t = 0`.
fn first_dependency(rows: &mut dyn FnMut(usize) -> (Vec<ZPoly>, ZPoly), max_t: usize) -> Result<Vec<ZPoly>> {
    let mut basis: Vec<EchelonRow> = Vec::new();
    let mut scales: Vec<ZPoly> = Vec::new();
    for t in 0..=max_t {
        let (mut r, scale) = rows(t);
        scales.push(scale);
        let mut trans = vec![ZPoly::zero(); t + 1];
        trans[t] = ZPoly::one();
        for b in &basis {
            let y = &r[b.pivot];
            if y.is_zero() {
                continue;
            }
            let x = &b.row[b.pivot];
            let (mut x, mut y) = match common_factor(&[x.clone(), y.clone()]) {
                Some((_, c)) => (c[0].clone(), c[1].clone()),
                None => (x.clone(), y.clone()),
            };
            let c = x.content().gcd(&y.content());
            if !c.is_one() {
                x = x.div_scalar(&c);
                y = y.div_scalar(&c);
            }
            for (ri, bi) in r.iter_mut().zip(&b.row) {
                *ri = &(&x * ri) - &(&y * bi);
            }
            for (i, ti) in trans.iter_mut().enumerate() {
                if let Some(bt) = b.trans.get(i) {
                    *ti = &(&x * ti) - &(&y * bt);
                } else {
                    *ti = &x * ti;
                }
            }
            let mut all: Vec<ZPoly> = r.iter().cloned().chain(trans.iter().cloned()).collect();
            remove_content(&mut all);
            let tt = all.split_off(r.len());
            r = all;
            trans = tt;
        }
        match r.iter().position(|p| !p.is_zero()) {
            None => {
                // Σ trans_t · R_t = 0 with row_t = R_t / scale_t
                return Ok(trans.iter().zip(&scales).map(|(w, s)| w * s).collect());
            }
            Some(pivot) => basis.push(EchelonRow { pivot, row: r, trans }),
        }
    }
    Err(Error::InvalidOperator("no dependency within the order bound"))
}

/// Right division `l = A·d` in ℚ(n)[S]. Returns the lcm of the
/// denominators of the coefficients of `A`, or `None` when the remainder is
/// nonzero. The remainder is kept as integer polynomials over one common
/// denominator.
fn quotient_denominator(l: &[ZPoly], d: &[ZPoly]) -> Option<ZPoly> {
    let dd = d.len() - 1;
    let top = l.len() - 1;
    if top < dd {
        return None;
    }
    let mut rem: Vec<ZPoly> = l.to_vec();
    let mut common = ZPoly::one();
    let mut h = ZPoly::one();
    for k in (dd..=top).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let i = k - dd;
        let lead = d[dd].shift(i as i64);
        let full = &common * &lead;
        // alpha = rem[k] / full in lowest terms
        let g = rem[k].gcd(&full);
        let alpha_den = full.exact_div(&g).primitive();
        if !alpha_den.is_constant() {
            h = h.lcm(&alpha_den);
        }
        let rk = rem[k].clone();
        for p in rem.iter_mut() {
            *p = &*p * &lead;
        }
        for (t, c) in d.iter().enumerate() {
            if !c.is_zero() {
                rem[t + i] = &rem[t + i] - &(&rk * &c.shift(i as i64));
            }
        }
        debug_assert!(rem[k].is_zero());
        rem.push(full);
        remove_content(&mut rem);
        common = rem.pop().expect("denominator");
    }
    rem.iter().all(ZPoly::is_zero).then_some(h)
}

/// Closure of the order-0 operator `c(n)` with `l`: `c·a = 0` forces
/// `a(n) = 0` except at roots of `c`, so `h·l` with `h = lcm_t c(n+t)` is a
/// common left multiple of both.
fn closure_with_multiplier(c: &QPoly, l: &RecOperator) -> Result<RecOperator> {
    let mut h = QPoly::one();
    for (t, q) in l.coeffs().iter().enumerate() {
        if !q.is_zero() {
            h = h.lcm(&c.shift(t as i64))?;
        }
    }
    RecOperator::new(l.coeffs().iter().map(|q| q * &h).collect())?.strip_safe_content()
}

/// An operator annihilating `a + b` for every pair with `L₁ a = 0` and
/// `L₂ b = 0` pointwise on ℕ, of order at most `ord L₁ + ord L₂`.
pub fn rec_add_closure(l1: &RecOperator, l2: &RecOperator) -> Result<RecOperator> {
    if l1.order() == 0 {
        return closure_with_multiplier(&l1.coeffs()[0], l2);
    }
    if l2.order() == 0 {
        return closure_with_multiplier(&l2.coeffs()[0], l1);
    }
    if l1 == l2 {
        return Ok(l1.clone());
    }
    let (d1, d2) = (l1.order(), l2.order());
    let mut ra = ShiftReducer::new(l1);
    let mut rb = ShiftReducer::new(l2);
    let mut rows = |t: usize| {
        if t > 0 {
            ra.advance();
            rb.advance();
        }
        let g = ra.den.gcd(&rb.den);
        let fa = rb.den.exact_div(&g);
        let fb = ra.den.exact_div(&g);
        let mut row: Vec<ZPoly> = ra.num.iter().map(|p| p * &fa).collect();
        row.extend(rb.num.iter().map(|p| p * &fb));
        let lcm = &fa * &ra.den;
        (row, lcm)
    };
    let mut weights = first_dependency(&mut rows, d1 + d2)?;
    while weights.last().is_some_and(ZPoly::is_zero) {
        weights.pop();
    }
    remove_content(&mut weights);

    let check = || Error::InvalidOperator("left multiple check failed");
    let ha = quotient_denominator(&weights, &l1.zcoeffs()).ok_or_else(check)?;
    let hb = quotient_denominator(&weights, &l2.zcoeffs()).ok_or_else(check)?;
    // The weights are primitive, so the content of h·L is h itself and
    // only its part vanishing on ℕ has to stay.
    let (rooted, _) = split_nonneg_root_part_z(&ha.lcm(&hb))?;
    let coeffs: Vec<ZPoly> = weights.iter().map(|c| c * &rooted).collect();
    RecOperator::from_zcoeffs(&coeffs)
}
