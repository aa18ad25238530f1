//! q-Pochhammer symbols (a;q)_n, finite and infinite.
//!
//! Step-2 symbols like (a;q^2)_n are obtained by passing q^2 as the nome;
//! there is no separate code path.

use crate::error::{Error, Result};

use super::complex::ComplexValue;
use super::eval::{rounding_slack, BoundKind, EvalOptions, EvalResult};

/// Finite product (a;q)_n = prod_{k=0}^{n-1} (1 - a q^k); the empty product
/// is 1.
pub fn qpoch_finite(a: &ComplexValue, q: &ComplexValue, n: usize) -> ComplexValue {
    let prec = a.prec().max(q.prec());
    let one = ComplexValue::one(prec);
    let mut prod = one.clone();
    let mut aqk = a.clone();
    for _ in 0..n {
        prod = prod.mul(&one.sub(&aqk));
        aqk = aqk.mul(q);
    }
    prod
}

/// Infinite product (a;q)_inf = prod_{k>=0} (1 - a q^k), |q| < 1.
///
/// Stops once the multiplicative tail bound sum_{k>=K} |a||q|^k / (1-|q|)
/// drops below the tolerance; the returned estimate satisfies
/// err_estimate <= tol * |value| (up to rounding slack).
pub fn qpoch_infinite(a: &ComplexValue, q: &ComplexValue, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    qpoch_infinite_opts(a, q, &opts)
}

pub fn qpoch_infinite_opts(a: &ComplexValue, q: &ComplexValue, opts: &EvalOptions) -> Result<EvalResult> {
    let abs_q = q.abs_f64();
    if !(abs_q < 1.0) {
        return Err(Error::Domain("|q| must be < 1".into()));
    }
    if abs_q > super::eval::SAFE_RADIUS {
        return Err(Error::Domain(format!(
            "|q| = {abs_q} exceeds the safe radius {} for infinite products",
            super::eval::SAFE_RADIUS
        )));
    }
    let prec = a.prec().max(q.prec());
    let one = ComplexValue::one(prec);
    let abs_a = a.abs_f64();

    let mut prod = one.clone();
    let mut aqk = a.clone();
    let mut k = 0usize;
    loop {
        // relative truncation error of dropping factors k.. is at most
        // exp(2 |a||q|^k / (1-|q|)) - 1 <= 4 |a||q|^k / (1-|q|)
        // once |a||q|^k <= 1/2
        let head = abs_a * abs_q.powi(k as i32);
        let tail_rel = 4.0 * head / (1.0 - abs_q);
        if head <= 0.5 && tail_rel <= opts.tol {
            let abs_v = prod.abs_f64();
            let err = tail_rel * abs_v + rounding_slack(prec, k, abs_v);
            return Ok(EvalResult { value: prod, err_estimate: err, terms_used: k, bound: BoundKind::Geometric });
        }
        if k >= opts.max_terms {
            return Err(Error::NonConvergence(format!(
                "infinite product did not meet tol {} within {} factors",
                opts.tol, opts.max_terms
            )));
        }
        prod = prod.mul(&one.sub(&aqk));
        aqk = aqk.mul(q);
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::real::Real;

    #[test]
    fn empty_product_is_one() {
        let a = ComplexValue::from_f64(3.7, -1.1, 96);
        let q = ComplexValue::from_f64(0.4, 0.2, 96);
        let r = qpoch_finite(&a, &q, 0);
        assert!(r.sub(&ComplexValue::one(96)).abs_f64() == 0.0);
    }

    #[test]
    fn two_factor_product() {
        // (1/2; 1/2)_2 = (1 - 1/2)(1 - 1/4) = 0.375
        let h = ComplexValue::from_f64(0.5, 0.0, 128);
        let r = qpoch_finite(&h, &h, 2);
        assert!((r.re().to_f64() - 0.375).abs() < 1e-30);
        assert!(r.im().is_zero());
    }

    #[test]
    fn vanishing_factor_at_root_of_unity() {
        // (-q; q)_N contains the factor 1 + q^N = 0 at q = e^{i pi/N}
        let prec = 128;
        for n in [3usize, 5, 8] {
            let theta = Real::pi(prec).div(&Real::from_i64(n as i64, prec));
            let q = ComplexValue::new(theta.cos(), theta.sin());
            let r = qpoch_finite(&q.neg(), &q, n);
            assert!(r.abs_f64() < 1e-35, "N={n}: {}", r.abs_f64());
        }
    }

    #[test]
    fn recurrence_property() {
        // (a;q)_{n+1} = (a;q)_n (1 - a q^n)
        let a = ComplexValue::from_f64(0.3, 0.7, 128);
        let q = ComplexValue::from_f64(0.45, -0.2, 128);
        for n in 0..12usize {
            let lhs = qpoch_finite(&a, &q, n + 1);
            let rhs = qpoch_finite(&a, &q, n)
                .mul(&ComplexValue::one(128).sub(&a.mul(&q.powi(n as i64))));
            assert!(lhs.sub(&rhs).abs_f64() < 1e-36);
        }
    }

    #[test]
    fn zero_a_gives_one() {
        let q = ComplexValue::from_f64(0.9, 0.0, 96);
        let r = qpoch_infinite(&ComplexValue::zero(96), &q, 1e-25).unwrap();
        assert!(r.value.sub(&ComplexValue::one(96)).abs_f64() == 0.0);
        assert!(r.terms_used == 0);
    }

    #[test]
    fn rejects_bad_nome() {
        let a = ComplexValue::one(64);
        assert!(qpoch_infinite(&a, &ComplexValue::from_f64(1.0, 0.0, 64), 1e-10).is_err());
        assert!(qpoch_infinite(&a, &ComplexValue::from_f64(0.97, 0.0, 64), 1e-10).is_err());
    }

    #[test]
    fn factorization_property() {
        // (a;q)_inf = (a;q)_n * (a q^n; q)_inf
        let a = ComplexValue::from_f64(0.6, 0.15, 128);
        let q = ComplexValue::from_f64(0.5, 0.1, 128);
        let full = qpoch_infinite(&a, &q, 1e-25).unwrap();
        for n in [1usize, 3, 7, 10] {
            let head = qpoch_finite(&a, &q, n);
            let shifted_a = a.mul(&q.powi(n as i64));
            let rest = qpoch_infinite(&shifted_a, &q, 1e-25).unwrap();
            let recombined = head.mul(&rest.value);
            let diff = full.value.sub(&recombined).abs_f64();
            assert!(diff <= full.err_estimate + rest.err_estimate + 1e-30, "n={n}: {diff}");
        }
    }
}
