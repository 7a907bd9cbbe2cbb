use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{nonneg_integer_roots, split_nonneg_root_part, ZPoly};
use crate::error::{Error, Result};
use crate::hyperterm::{cancel_safe_common, HtsExpr, IndicatorClass};
use crate::{QAffine, QPoly, Rational};

/// Linear recurrence `Σ_t coeffs[t](n)·s(n+t) = 0`, meant to hold for every `n ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RecOperator {
    coeffs: Vec<QPoly>,
}

impl RecOperator {
    /// Trailing zero coefficients are dropped; at least one coefficient must be nonzero.
    pub fn new(mut coeffs: Vec<QPoly>) -> Result<Self> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidOperator("all coefficients are zero"));
        }
        Ok(RecOperator { coeffs })
    }

    /// `s(n+1) − s(n)`.
    pub fn difference() -> Self {
        RecOperator { coeffs: vec![QPoly::constant(-BigRational::one()), QPoly::one()] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[QPoly] {
        &self.coeffs
    }

    pub fn leading(&self) -> &QPoly {
        self.coeffs.last().expect("operators are nonempty")
    }

    /// `Σ_t coeffs[t](n)·values[t]`, where `values[t] = s(n+t)`.
    pub fn apply(&self, n: u64, values: &[Rational]) -> Rational {
        let nq = BigRational::from_integer(n.into());
        self.coeffs
            .iter()
            .zip(values)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, v)| c.eval(&nq) * v)
            .fold(BigRational::zero(), |acc, x| acc + x)
    }

    /// Monic gcd of all coefficients.
    pub fn content(&self) -> QPoly {
        let g = self.zcontent();
        if g.is_zero() {
            return QPoly::zero();
        }
        let q = g.to_qpoly();
        let lc = q.leading_coeff().expect("nonzero").clone();
        q.unscale(&lc)
    }

    /// Coefficients scaled by one common integer so that all are integral.
    pub(crate) fn zcoeffs(&self) -> Vec<ZPoly> {
        let den = self
            .coeffs
            .iter()
            .flat_map(|c| c.coeffs().iter())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        self.coeffs.iter().map(|c| ZPoly::from_qpoly_scaled(c, &den)).collect()
    }

    pub(crate) fn from_zcoeffs(coeffs: &[ZPoly]) -> Result<Self> {
        Ok(Self::new(coeffs.iter().map(ZPoly::to_qpoly).collect())?.integral())
    }

    /// Primitive polynomial gcd of the coefficients (zero only for no nonzero coefficient).
    fn zcontent(&self) -> ZPoly {
        let mut g = ZPoly::zero();
        for c in self.zcoeffs() {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(&c);
            if g.is_constant() {
                break;
            }
        }
        g
    }

    fn divide_content(self, g: &ZPoly) -> Result<Self> {
        let zs: Vec<ZPoly> = self.zcoeffs().iter().map(|c| c.exact_div(g)).collect();
        Self::from_zcoeffs(&zs)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_constant()
    }

    /// Scales to coprime integer coefficients with a positive leading term.
    pub(crate) fn integral(self) -> Self {
        let den = self
            .coeffs
            .iter()
            .flat_map(|c| c.coeffs().iter())
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled: Vec<QPoly> = self.coeffs.iter().map(|c| c.scale(&BigRational::from_integer(den.clone()))).collect();
        let mut g = BigInt::zero();
        for c in &scaled {
            for x in c.coeffs() {
                g = g.gcd(&x.to_integer());
            }
        }
        let lead_negative = scaled.last().and_then(|c| c.leading_coeff()).is_some_and(|x| x.is_negative());
        if lead_negative {
            g = -g;
        }
        let g = BigRational::from_integer(g);
        RecOperator { coeffs: scaled.iter().map(|c| c.unscale(&g)).collect() }
    }

    /// Divides out the part of the content that vanishes at no `n ∈ ℕ`;
    /// such a division keeps the recurrence valid at every `n ≥ 0`.
    pub(crate) fn strip_safe_content(self) -> Result<Self> {
        let g = self.zcontent();
        if g.is_constant() {
            return Ok(self.integral());
        }
        let (_, safe) = split_nonneg_root_part(&g.to_qpoly())?;
        if safe.is_constant() {
            return Ok(self.integral());
        }
        self.divide_content(&ZPoly::from_qpoly(&safe))
    }

    /// Divides out the full content; only valid at a stage where the
    /// operator is still considered over ℚ(n).
    pub(crate) fn strip_all_content(self) -> Self {
        let g = self.zcontent();
        if g.is_constant() {
            return self.integral();
        }
        self.divide_content(&g).expect("content divides a nonzero operator")
    }
}

/// First-order operator `q(k)·s(k+1) − p(k)·s(k)` for the quotient `p/q`.
pub fn first_order_from_ratio(p: &QPoly, q: &QPoly) -> Result<RecOperator> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial("denominator of a shift quotient"));
    }
    let (p, q) = cancel_safe_common(p, q)?;
    RecOperator::new(vec![-&p, q])?.strip_safe_content()
}

/// Turns an operator for `v(k)` into one for `u(n) = v((n−j)/m)·χ[j mod m](n)`:
/// coefficients `P_t((n−j)/m)` placed at shift `t·m`.
pub fn rec_dilate(op: &RecOperator, class: IndicatorClass) -> Result<RecOperator> {
    let m = class.modulus();
    if m == 0 {
        return Err(Error::InvalidClass { residue: 0, modulus: 0 });
    }
    let mq = BigRational::from_integer(m.into());
    let inverse = QAffine::new(mq.recip(), -BigRational::from_integer(class.residue().into()) / &mq);
    let mu = usize::try_from(m).map_err(|_| Error::Overflow("modulus"))?;
    let mut coeffs = vec![QPoly::zero(); op.order() * mu + 1];
    for (t, c) in op.coeffs().iter().enumerate() {
        coeffs[t * mu] = c.subst_affine(&inverse);
    }
    Ok(RecOperator::new(coeffs)?.integral())
}

/// Checks `Σ_t coeffs[t](n)·S(n+t) = 0` for `0 ≤ n ≤ n_max`.
pub fn rec_verify(op: &RecOperator, s: &HtsExpr, n_max: u64) -> Result<bool> {
    rec_verify_range(op, s, 0, n_max)
}

/// Checks the recurrence for `lo ≤ n ≤ hi`.
pub fn rec_verify_range(op: &RecOperator, s: &HtsExpr, lo: u64, hi: u64) -> Result<bool> {
    if hi < lo {
        return Ok(true);
    }
    let d = op.order() as u64;
    let values = (lo..=hi + d).map(|n| s.eval(n)).collect::<Result<Vec<_>>>()?;
    let coeffs = op.zcoeffs();
    for n in lo..=hi {
        let i = (n - lo) as usize;
        let window = &values[i..=i + d as usize];
        let den = window.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let x = BigInt::from(n);
        let total = coeffs.iter().zip(window).fold(BigInt::zero(), |acc, (c, v)| {
            if c.is_zero() || v.is_zero() {
                acc
            } else {
                acc + c.eval(&x) * v.numer() * (&den / v.denom())
            }
        });
        if !total.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest nonnegative integer root of the leading coefficient, or −1.
pub fn leading_zero_bound(op: &RecOperator) -> i64 {
    nonneg_integer_roots(op.leading())
        .expect("leading coefficient is nonzero")
        .last()
        .map_or(-1, |&r| r as i64)
}

/// Remaining ℕ-rooted content, if any (diagnostic helper).
pub fn rooted_content(op: &RecOperator) -> QPoly {
    let g = op.content();
    if g.is_constant() {
        return QPoly::one();
    }
    split_nonneg_root_part(&g).map(|(r, _)| r).unwrap_or(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::q;

    fn qp(cs: &[i64]) -> QPoly {
        QPoly::from_coeffs(cs.iter().map(|&c| q(c)).collect())
    }

    fn op(cs: &[&[i64]]) -> RecOperator {
        RecOperator::new(cs.iter().map(|c| qp(c)).collect()).unwrap()
    }

    #[test]
    fn first_order_examples() {
        assert_eq!(first_order_from_ratio(&qp(&[27]), &qp(&[1])).unwrap(), op(&[&[-27], &[1]]));
        assert_eq!(first_order_from_ratio(&qp(&[1, 1]), &qp(&[0, 1])).unwrap(), op(&[&[-1, -1], &[0, 1]]));
        assert_eq!(first_order_from_ratio(&qp(&[2]), &qp(&[1])).unwrap(), op(&[&[-2], &[1]]));
        assert!(first_order_from_ratio(&qp(&[2]), &QPoly::zero()).is_err());
        // common factor without roots in ℕ is cancelled, with a root it is kept
        let safe = first_order_from_ratio(&(&qp(&[3, 1]) * &qp(&[2])), &(&qp(&[3, 1]) * &qp(&[1, 1]))).unwrap();
        assert_eq!(safe, op(&[&[-2], &[1, 1]]));
        let kept = first_order_from_ratio(&(&qp(&[-3, 1]) * &qp(&[2])), &(&qp(&[-3, 1]) * &qp(&[1, 1]))).unwrap();
        assert_eq!(kept.order(), 1);
        assert_eq!(kept.leading().degree(), Some(2));
    }

    #[test]
    fn dilation_examples() {
        let l = op(&[&[-27], &[1]]);
        let d = rec_dilate(&l, IndicatorClass::new(1, 3).unwrap()).unwrap();
        assert_eq!(d, op(&[&[-27], &[], &[], &[1]]));

        let l = op(&[&[-1, -1], &[0, 1]]);
        let d = rec_dilate(&l, IndicatorClass::new(0, 2).unwrap()).unwrap();
        assert_eq!(d, op(&[&[-2, -1], &[], &[0, 1]]));

        let l = op(&[&[5, -1, 3], &[0, 2], &[1]]);
        assert_eq!(rec_dilate(&l, IndicatorClass::ONE).unwrap(), l);
    }

    #[test]
    fn leading_zero_bound_examples() {
        assert_eq!(leading_zero_bound(&op(&[&[1], &[-6, 1]])), 6);
        assert_eq!(leading_zero_bound(&op(&[&[1], &[1]])), -1);
        assert_eq!(leading_zero_bound(&op(&[&[1], &[0, -3, 1]])), 3);
    }

    #[test]
    fn content_handling() {
        // (n+2)·[s(n+1) - s(n)] loses the factor; (n-2)·[...] keeps it
        let safe = RecOperator::new(vec![qp(&[-2, -1]), qp(&[2, 1])]).unwrap().strip_safe_content().unwrap();
        assert_eq!(safe, RecOperator::difference());
        let kept = RecOperator::new(vec![qp(&[2, -1]), qp(&[-2, 1])]).unwrap().strip_safe_content().unwrap();
        assert_eq!(kept.leading(), &qp(&[-2, 1]));
        assert!(!kept.is_primitive());
        assert_eq!(rooted_content(&kept), qp(&[-2, 1]));
    }
}
