//! Precision-carrying real scalar backed by an arbitrary-precision float.
//!
//! Every value records the working precision (bits of mantissa) it was built
//! with; binary operations run at the larger precision of the two operands.
//! All rounding uses round-to-even, so results are deterministic for a fixed
//! precision and a fixed order of operations.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode, Sign, WORD_BIT_SIZE};
use num_bigint::{BigInt, Sign as IntSign};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Real number at a chosen working precision (in bits).
#[derive(Clone, Debug)]
pub struct Real {
    x: BigFloat,
    prec: usize,
}

impl Real {
    pub fn from_f64(v: f64, prec: usize) -> Self {
        Real { x: BigFloat::from_f64(v, prec), prec }
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        Real { x: BigFloat::from_i64(v, prec), prec }
    }

    pub fn zero(prec: usize) -> Self {
        Real::from_i64(0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Real::from_i64(1, prec)
    }

    pub fn pi(prec: usize) -> Self {
        Real { x: with_consts(|cc| cc.pi(prec, RM)), prec }
    }

    /// Converts an arbitrary-size integer, rounding to the working precision.
    pub fn from_bigint(v: &BigInt, prec: usize) -> Self {
        let (sign, digits) = v.to_u64_digits();
        if digits.is_empty() {
            return Real::zero(prec);
        }
        // accumulate exactly, then round once
        let work = 64 * digits.len() + 64;
        let base = BigFloat::from_i64(1i64 << 32, work).mul(&BigFloat::from_i64(1i64 << 32, work), work, RM);
        let mut acc = BigFloat::from_i64(0, work);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, work, RM);
            acc = acc.add(&BigFloat::from_u64(*d, work), work, RM);
        }
        let mut acc = Real { x: acc, prec: work };
        acc.x.set_precision(prec, RM).expect("precision");
        acc.prec = prec;
        if sign == IntSign::Minus {
            acc.x.inv_sign();
        }
        acc
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    fn binop(&self, rhs: &Real, f: impl FnOnce(&BigFloat, &BigFloat, usize) -> BigFloat) -> Real {
        let p = self.prec.max(rhs.prec);
        Real { x: f(&self.x, &rhs.x, p), prec: p }
    }

    pub fn add(&self, rhs: &Real) -> Real {
        self.binop(rhs, |a, b, p| a.add(b, p, RM))
    }

    pub fn sub(&self, rhs: &Real) -> Real {
        self.binop(rhs, |a, b, p| a.sub(b, p, RM))
    }

    pub fn mul(&self, rhs: &Real) -> Real {
        self.binop(rhs, |a, b, p| a.mul(b, p, RM))
    }

    pub fn div(&self, rhs: &Real) -> Real {
        self.binop(rhs, |a, b, p| a.div(b, p, RM))
    }

    pub fn neg(&self) -> Real {
        Real { x: self.x.neg(), prec: self.prec }
    }

    pub fn abs(&self) -> Real {
        Real { x: self.x.abs(), prec: self.prec }
    }

    pub fn recip(&self) -> Real {
        Real { x: self.x.reciprocal(self.prec, RM), prec: self.prec }
    }

    pub fn sqrt(&self) -> Real {
        Real { x: self.x.sqrt(self.prec, RM), prec: self.prec }
    }

    pub fn exp(&self) -> Real {
        Real { x: with_consts(|cc| self.x.exp(self.prec, RM, cc)), prec: self.prec }
    }

    pub fn ln(&self) -> Real {
        Real { x: with_consts(|cc| self.x.ln(self.prec, RM, cc)), prec: self.prec }
    }

    pub fn sin(&self) -> Real {
        Real { x: with_consts(|cc| self.x.sin(self.prec, RM, cc)), prec: self.prec }
    }

    pub fn cos(&self) -> Real {
        Real { x: with_consts(|cc| self.x.cos(self.prec, RM, cc)), prec: self.prec }
    }

    pub fn cosh(&self) -> Real {
        Real { x: with_consts(|cc| self.x.cosh(self.prec, RM, cc)), prec: self.prec }
    }

    pub fn atan(&self) -> Real {
        Real { x: with_consts(|cc| self.x.atan(self.prec, RM, cc)), prec: self.prec }
    }

    pub fn powi(&self, n: u64) -> Real {
        Real { x: self.x.powi(n as usize, self.prec, RM), prec: self.prec }
    }

    /// Two-argument arctangent with result in (-pi, pi].
    pub fn atan2(y: &Real, x: &Real) -> Real {
        let p = y.prec.max(x.prec);
        let pi = Real::pi(p);
        if x.is_zero() && y.is_zero() {
            return Real::zero(p);
        }
        if x.is_zero() {
            let half_pi = pi.div(&Real::from_i64(2, p));
            return if y.is_negative() { half_pi.neg() } else { half_pi };
        }
        let base = y.div(x).atan();
        if x.is_negative() {
            // quadrant correction; y == 0 maps to +pi (principal branch)
            if y.is_negative() {
                base.sub(&pi)
            } else {
                base.add(&pi)
            }
        } else {
            base
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.x.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.x.is_positive() && !self.x.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !self.x.is_nan() && !self.x.is_inf()
    }

    pub fn cmp_val(&self, rhs: &Real) -> Ordering {
        match self.x.cmp(&rhs.x) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            Some(_) => Ordering::Equal,
            None => panic!("comparison with NaN"),
        }
    }

    pub fn lt(&self, rhs: &Real) -> bool {
        self.cmp_val(rhs) == Ordering::Less
    }

    /// Best-effort conversion to f64 (saturates on exponent overflow).
    pub fn to_f64(&self) -> f64 {
        if self.x.is_zero() {
            return 0.0;
        }
        if self.x.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.x.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.x.is_nan() {
            return f64::NAN;
        }
        let (words, _n, sign, e, _inexact) = self.x.as_raw_parts().expect("finite value");
        let mut frac = 0.0f64;
        let take = words.len().min(3);
        for &w in words[words.len() - take..].iter() {
            frac = frac / (2.0f64).powi(WORD_BIT_SIZE as i32) + w as f64;
        }
        frac /= (2.0f64).powi(WORD_BIT_SIZE as i32);
        let v = frac * (2.0f64).powi(e);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_val(other) == Ordering::Equal
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_round_trip() {
        for v in [0.0, 1.0, -2.5, 0.1, 1e-30, -3.7e20] {
            let r = Real::from_f64(v, 128);
            assert_eq!(r.to_f64(), v);
        }
    }

    #[test]
    fn pi_matches_f64() {
        let pi = Real::pi(128);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn atan2_quadrants() {
        let p = 96;
        let cases = [
            (1.0, 1.0),
            (1.0, -1.0),
            (-1.0, -1.0),
            (-1.0, 1.0),
            (0.0, -1.0),
            (1.0, 0.0),
            (-1.0, 0.0),
        ];
        for (y, x) in cases {
            let got = Real::atan2(&Real::from_f64(y, p), &Real::from_f64(x, p)).to_f64();
            assert!((got - y.atan2(x)).abs() < 1e-14, "atan2({y},{x}): {got}");
        }
        // x < 0, y = 0 is on the branch cut: principal value +pi
        let on_cut = Real::atan2(&Real::zero(p), &Real::from_f64(-2.0, p)).to_f64();
        assert!((on_cut - std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn bigint_conversion() {
        let v = BigInt::parse_bytes(b"-123456789012345678901234567890", 10).unwrap();
        let r = Real::from_bigint(&v, 192);
        assert!((r.to_f64() - (-1.2345678901234568e29)).abs() / 1e29 < 1e-12);
        assert_eq!(Real::from_bigint(&BigInt::from(0), 64).to_f64(), 0.0);
        assert_eq!(Real::from_bigint(&BigInt::from(42), 64).to_f64(), 42.0);
    }

    #[test]
    fn precision_carries_through_ops() {
        let a = Real::from_f64(2.0, 96);
        let b = Real::from_f64(3.0, 160);
        assert_eq!(a.mul(&b).prec(), 160);
        assert_eq!(a.add(&b).prec(), 160);
    }
}
