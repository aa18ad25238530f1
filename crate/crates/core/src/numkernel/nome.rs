//! The nome q, optionally paired with its generating parameter alpha and the
//! dual nome q1 = exp(-pi^2/alpha).

use crate::error::{Error, Result};

use super::complex::ComplexValue;
use super::real::Real;

/// A point q with |q| < 1, optionally carrying alpha (with q = exp(-alpha),
/// Re alpha > 0) and the dual nome q1 = exp(-pi^2/alpha).
///
/// Fractional powers of q and q1 are always computed from alpha as
/// exp(-c*alpha) or exp(c*pi^2/alpha), never as complex powers of q itself;
/// this pins the branch for quantities like q^{3/4} and q1^{-1/4}.
#[derive(Clone, Debug)]
pub struct Nome {
    q: ComplexValue,
    alpha: Option<ComplexValue>,
    q1: Option<ComplexValue>,
}

impl Nome {
    /// Builds the nome pair from alpha: q = exp(-alpha), q1 = exp(-pi^2/alpha).
    pub fn from_alpha(alpha: ComplexValue) -> Result<Nome> {
        if !alpha.re().is_positive() {
            return Err(Error::Domain("alpha must have Re(alpha) > 0".into()));
        }
        let prec = alpha.prec();
        let q = alpha.neg().exp();
        let pi = Real::pi(prec);
        let pi_sq = ComplexValue::from_real(pi.mul(&pi));
        let q1 = pi_sq.div(&alpha).neg().exp();
        Ok(Nome { q, alpha: Some(alpha), q1: Some(q1) })
    }

    /// Wraps a bare q with |q| < 1 (no alpha attached).
    pub fn from_q(q: ComplexValue) -> Result<Nome> {
        let one = Real::one(q.prec());
        if !q.abs().lt(&one) {
            return Err(Error::Domain("|q| must be < 1".into()));
        }
        Ok(Nome { q, alpha: None, q1: None })
    }

    pub fn q(&self) -> &ComplexValue {
        &self.q
    }

    pub fn alpha(&self) -> Option<&ComplexValue> {
        self.alpha.as_ref()
    }

    pub fn q1(&self) -> Option<&ComplexValue> {
        self.q1.as_ref()
    }

    pub fn prec(&self) -> usize {
        self.q.prec()
    }

    pub fn abs_q_f64(&self) -> f64 {
        self.q.abs_f64()
    }

    fn require_alpha(&self) -> Result<&ComplexValue> {
        self.alpha
            .as_ref()
            .ok_or_else(|| Error::Domain("operation requires a nome built from alpha".into()))
    }

    /// q^(num/den) = exp(-alpha * num/den), branch fixed by alpha.
    pub fn q_pow_frac(&self, num: i64, den: i64) -> Result<ComplexValue> {
        let alpha = self.require_alpha()?;
        let prec = self.prec();
        let ratio = Real::from_i64(num, prec).div(&Real::from_i64(den, prec));
        Ok(alpha.scale(&ratio).neg().exp())
    }

    /// q1^(num/den) = exp(-pi^2/alpha * num/den), branch fixed by alpha.
    pub fn q1_pow_frac(&self, num: i64, den: i64) -> Result<ComplexValue> {
        let alpha = self.require_alpha()?;
        let prec = self.prec();
        let pi = Real::pi(prec);
        let ratio = Real::from_i64(num, prec).div(&Real::from_i64(den, prec));
        let pi_sq = ComplexValue::from_real(pi.mul(&pi).mul(&ratio));
        Ok(pi_sq.div(alpha).neg().exp())
    }

    /// The nome q1^2 = exp(-2 pi^2 / alpha) as a full `Nome` (its generating
    /// parameter is 2 pi^2 / alpha).
    pub fn dual_squared(&self) -> Result<Nome> {
        let alpha = self.require_alpha()?;
        let prec = self.prec();
        let pi = Real::pi(prec);
        let two_pi_sq = ComplexValue::from_real(pi.mul(&pi).mul(&Real::from_i64(2, prec)));
        Nome::from_alpha(two_pi_sq.div(alpha))
    }
}

/// Convenience construction used throughout the identity checks.
pub fn nome_pair(alpha: ComplexValue) -> Result<Nome> {
    Nome::from_alpha(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_dual_point() {
        // alpha = pi gives q = q1 = exp(-pi)
        let prec = 128;
        let alpha = ComplexValue::from_real(Real::pi(prec));
        let n = nome_pair(alpha).unwrap();
        let q = n.q();
        let q1 = n.q1().unwrap();
        assert!(q.sub(q1).abs_f64() < 1e-36);
        assert!((q.re().to_f64() - (-std::f64::consts::PI).exp()).abs() < 1e-16);
        assert!((q.re().to_f64() - 0.0432139).abs() < 1e-6);
    }

    #[test]
    fn unit_alpha() {
        let n = nome_pair(ComplexValue::from_f64(1.0, 0.0, 128)).unwrap();
        assert!((n.q().re().to_f64() - (-1.0f64).exp()).abs() < 1e-16);
        let want_q1 = (-std::f64::consts::PI.powi(2)).exp();
        assert!((n.q1().unwrap().re().to_f64() - want_q1).abs() < 1e-16);
    }

    #[test]
    fn complex_alpha_moduli() {
        // direct complex-arithmetic oracle: |q| = e^{-Re alpha},
        // |q1| = e^{-Re(pi^2/alpha)} with Re(pi^2/alpha) = pi^2 Re(alpha)/|alpha|^2
        let n = nome_pair(ComplexValue::from_f64(1.0, 0.5, 128)).unwrap();
        assert!((n.abs_q_f64() - (-1.0f64).exp()).abs() < 1e-16);
        let pi2 = std::f64::consts::PI.powi(2);
        let want = (-pi2 * 1.0 / 1.25f64).exp();
        assert!((n.q1().unwrap().abs_f64() - want).abs() < 1e-14);
        assert!(n.q1().unwrap().abs_f64() < 1.0);
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        assert!(nome_pair(ComplexValue::from_f64(0.0, 1.0, 64)).is_err());
        assert!(nome_pair(ComplexValue::from_f64(-0.3, 0.0, 64)).is_err());
    }

    #[test]
    fn rejects_large_q() {
        assert!(Nome::from_q(ComplexValue::from_f64(1.5, 0.0, 64)).is_err());
        assert!(Nome::from_q(ComplexValue::from_f64(1.0, 0.0, 64)).is_err());
        assert!(Nome::from_q(ComplexValue::from_f64(0.99, 0.0, 64)).is_ok());
    }

    #[test]
    fn fractional_powers_from_alpha() {
        let n = nome_pair(ComplexValue::from_f64(1.0, 0.0, 128)).unwrap();
        let q34 = n.q_pow_frac(3, 4).unwrap();
        assert!((q34.re().to_f64() - (-0.75f64).exp()).abs() < 1e-16);
        let q1m14 = n.q1_pow_frac(-1, 4).unwrap();
        let want = (std::f64::consts::PI.powi(2) / 4.0).exp();
        assert!((q1m14.re().to_f64() - want).abs() / want < 1e-15);
        // q1^2 nome agrees with squaring q1
        let d = n.dual_squared().unwrap();
        let q1 = n.q1().unwrap();
        assert!(d.q().sub(&q1.mul(q1)).abs_f64() < 1e-40);
    }

    #[test]
    fn bare_q_has_no_fractional_powers() {
        let n = Nome::from_q(ComplexValue::from_f64(0.3, 0.0, 64)).unwrap();
        assert!(n.q_pow_frac(3, 4).is_err());
    }
}
