//! Complex scalar at a configurable working precision.

use std::fmt;

use super::real::Real;

/// Complex number with both parts held at the same working precision.
///
/// `exp`, `ln` and `sqrt` use the principal branch: the argument lies in
/// (-pi, pi].
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexValue {
    re: Real,
    im: Real,
}

impl ComplexValue {
    pub fn new(re: Real, im: Real) -> Self {
        ComplexValue { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        ComplexValue { re: Real::from_f64(re, prec), im: Real::from_f64(im, prec) }
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        ComplexValue { re, im: Real::zero(prec) }
    }

    pub fn zero(prec: usize) -> Self {
        ComplexValue::from_f64(0.0, 0.0, prec)
    }

    pub fn one(prec: usize) -> Self {
        ComplexValue::from_f64(1.0, 0.0, prec)
    }

    pub fn re(&self) -> &Real {
        &self.re
    }

    pub fn im(&self) -> &Real {
        &self.im
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        ComplexValue { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> Self {
        ComplexValue { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        ComplexValue { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        ComplexValue { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        ComplexValue { re, im }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        // exponent range is enormous, the naive formula cannot overflow here
        let d = rhs.re.mul(&rhs.re).add(&rhs.im.mul(&rhs.im));
        let re = self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im)).div(&d);
        let im = self.im.mul(&rhs.re).sub(&self.re.mul(&rhs.im)).div(&d);
        ComplexValue { re, im }
    }

    pub fn scale(&self, k: &Real) -> Self {
        ComplexValue { re: self.re.mul(k), im: self.im.mul(k) }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.scale(&Real::from_i64(k, self.prec()))
    }

    /// Exact multiplication by 1/2.
    pub fn scale_half(&self) -> Self {
        self.scale(&Real::from_f64(0.5, self.prec()))
    }

    pub fn recip(&self) -> Self {
        ComplexValue::one(self.prec()).div(self)
    }

    pub fn abs(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im)).sqrt()
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    /// Argument in (-pi, pi].
    pub fn arg(&self) -> Real {
        Real::atan2(&self.im, &self.re)
    }

    pub fn exp(&self) -> Self {
        let m = self.re.exp();
        ComplexValue { re: m.mul(&self.im.cos()), im: m.mul(&self.im.sin()) }
    }

    pub fn ln(&self) -> Self {
        ComplexValue { re: self.abs().ln(), im: self.arg() }
    }

    /// Principal square root (real part >= 0; maps the negative real axis to +i).
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.im.is_zero() {
            if self.re.is_negative() {
                return ComplexValue { re: Real::zero(prec), im: self.re.neg().sqrt() };
            }
            return ComplexValue { re: self.re.sqrt(), im: Real::zero(prec) };
        }
        let two = Real::from_i64(2, prec);
        let r = self.abs();
        let w = r.add(&self.re.abs()).div(&two).sqrt();
        if !self.re.is_negative() {
            let im = self.im.div(&w.mul(&two));
            ComplexValue { re: w, im }
        } else {
            let re = self.im.abs().div(&w.mul(&two));
            let im = if self.im.is_negative() { w.neg() } else { w };
            ComplexValue { re, im }
        }
    }

    pub fn cosh(&self) -> Self {
        let u = self.exp();
        u.add(&u.recip()).scale(&Real::from_f64(0.5, self.prec()))
    }

    /// Integer power by binary exponentiation; negative exponents invert.
    pub fn powi(&self, n: i64) -> Self {
        if n == 0 {
            return ComplexValue::one(self.prec());
        }
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = ComplexValue::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, self.im.neg())
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(z: &ComplexValue, re: f64, im: f64, eps: f64) {
        assert!(
            (z.re().to_f64() - re).abs() < eps && (z.im().to_f64() - im).abs() < eps,
            "got {} + {}i, want {re} + {im}i",
            z.re().to_f64(),
            z.im().to_f64()
        );
    }

    #[test]
    fn field_ops() {
        let a = ComplexValue::from_f64(1.5, -2.0, 128);
        let b = ComplexValue::from_f64(-0.5, 3.25, 128);
        close(&a.mul(&b).div(&b), 1.5, -2.0, 1e-30);
        close(&a.add(&b).sub(&b), 1.5, -2.0, 1e-30);
        close(&a.mul(&a.recip()), 1.0, 0.0, 1e-30);
    }

    #[test]
    fn exp_ln_round_trip() {
        let z = ComplexValue::from_f64(0.3, -1.2, 128);
        close(&z.exp().ln(), 0.3, -1.2, 1e-35);
        // exp(i pi) = -1
        let ipi = ComplexValue::new(Real::zero(128), Real::pi(128));
        close(&ipi.exp(), -1.0, 0.0, 1e-35);
    }

    #[test]
    fn principal_sqrt() {
        close(&ComplexValue::from_f64(-4.0, 0.0, 128).sqrt(), 0.0, 2.0, 1e-30);
        close(&ComplexValue::from_f64(0.0, 2.0, 128).sqrt(), 1.0, 1.0, 1e-30);
        let z = ComplexValue::from_f64(-1.3, -0.7, 128);
        let s = z.sqrt();
        assert!(!s.re().is_negative());
        close(&s.mul(&s), -1.3, -0.7, 1e-30);
    }

    #[test]
    fn integer_powers() {
        let z = ComplexValue::from_f64(0.4, 0.3, 128);
        close(&z.powi(2), 0.4 * 0.4 - 0.3 * 0.3, 2.0 * 0.4 * 0.3, 1e-30);
        close(&z.powi(-3).mul(&z.powi(3)), 1.0, 0.0, 1e-30);
        close(&z.powi(0), 1.0, 0.0, 0.0);
    }

    #[test]
    fn cosh_matches_f64() {
        let z = ComplexValue::from_f64(0.7, 0.4, 128);
        let want_re = 0.7f64.cosh() * 0.4f64.cos();
        let want_im = 0.7f64.sinh() * 0.4f64.sin();
        close(&z.cosh(), want_re, want_im, 1e-14);
    }
}
