//! Classical theta building blocks: the partial theta sum psi(q), the
//! eta-type correction quotient, and the Jacobi triple product check.

use crate::error::{Error, Result};

use super::complex::ComplexValue;
use super::eval::{
    rounding_slack, sum_bilateral, sum_one_sided, tail_mode, BoundKind, EvalOptions, EvalResult,
    SumOutcome, TailMode,
};
use super::qpoch::qpoch_infinite_opts;

/// psi(q) = sum_{n>=0} q^{n(n+1)/2}; equals (q^2;q^2)_inf / (q;q^2)_inf by
/// the triple product. The theta sum over odd squares is q^{1/4} psi(q^2).
pub fn theta_psi(q: &ComplexValue, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let abs_q = q.abs_f64();
    let mode = tail_mode(abs_q, &opts)?;
    let prec = q.prec();
    let mut qp = q.clone(); // q^{n+1}
    let out = sum_one_sided(
        &opts,
        &mode,
        ComplexValue::one(prec),
        |_n, t| {
            let t_next = t.mul(&qp);
            qp = qp.mul(q);
            t_next
        },
        |n| abs_q.powi(n as i32 + 1),
    )?;
    Ok(finish(out, prec, &mode))
}

/// The quotient [(q;q)_inf]^5 / [(q^2;q^2)_inf]^4.
pub fn eta_quotient_correction(q: &ComplexValue, tol: f64) -> Result<EvalResult> {
    let inner = EvalOptions::with_tol((tol / 32.0).max(1e-300));
    let e1 = qpoch_infinite_opts(q, q, &inner)?;
    let q2 = q.mul(q);
    let e2 = qpoch_infinite_opts(&q2, &q2, &inner)?;
    let value = e1.value.powi(5).div(&e2.value.powi(4));
    let abs_v = value.abs_f64();
    let rel1 = e1.err_estimate / e1.abs_f64().max(1e-300);
    let rel2 = e2.err_estimate / e2.abs_f64().max(1e-300);
    let err = 2.0 * (5.0 * rel1 + 4.0 * rel2) * abs_v + rounding_slack(q.prec(), 16, abs_v);
    Ok(EvalResult {
        value,
        err_estimate: err,
        terms_used: e1.terms_used + e2.terms_used,
        bound: BoundKind::Geometric,
    })
}

/// Both sides of the Jacobi triple product
/// sum_{n in Z} z^n q^{n^2} = (q^2;q^2)_inf (-zq;q^2)_inf (-q/z;q^2)_inf,
/// each evaluated independently.
pub fn jacobi_triple_product_sides(
    z: &ComplexValue,
    q: &ComplexValue,
    tol: f64,
) -> Result<(EvalResult, EvalResult)> {
    if z.is_zero() {
        return Err(Error::Domain("z must be nonzero".into()));
    }
    let opts = EvalOptions::with_tol(tol);
    let abs_q = q.abs_f64();
    match tail_mode(abs_q, &opts)? {
        TailMode::Geometric => {}
        TailMode::Heuristic => unreachable!("tail_mode rejects heuristic unless opted in"),
    }
    let prec = z.prec().max(q.prec());
    let abs_z = z.abs_f64();

    // symmetric partial sums of the bilateral theta series
    let sum = sum_bilateral(
        &opts,
        |n| Ok(z.powi(n).mul(&q.powi(n * n))),
        |n| abs_z * abs_q.powi(2 * n as i32 + 1),
        |n| abs_q.powi(2 * n as i32 + 1) / abs_z,
    )?;
    let lhs = finish(sum, prec, &TailMode::Geometric);

    let inner = EvalOptions::with_tol((tol / 16.0).max(1e-300));
    let q2 = q.mul(q);
    let p1 = qpoch_infinite_opts(&q2, &q2, &inner)?;
    let p2 = qpoch_infinite_opts(&z.mul(q).neg(), &q2, &inner)?;
    let p3 = qpoch_infinite_opts(&q.div(z).neg(), &q2, &inner)?;
    let value = p1.value.mul(&p2.value).mul(&p3.value);
    let abs_v = value.abs_f64();
    let rel = p1.err_estimate / p1.abs_f64().max(1e-300)
        + p2.err_estimate / p2.abs_f64().max(1e-300)
        + p3.err_estimate / p3.abs_f64().max(1e-300);
    let rhs = EvalResult {
        value,
        err_estimate: 2.0 * rel * abs_v + rounding_slack(prec, 8, abs_v),
        terms_used: p1.terms_used + p2.terms_used + p3.terms_used,
        bound: BoundKind::Geometric,
    };
    Ok((lhs, rhs))
}

/// |sum side - product side| of the Jacobi triple product.
pub fn jacobi_triple_product_residual(z: &ComplexValue, q: &ComplexValue, tol: f64) -> Result<f64> {
    let (lhs, rhs) = jacobi_triple_product_sides(z, q, tol)?;
    Ok(lhs.value.sub(&rhs.value).abs_f64())
}

pub(crate) fn finish(out: SumOutcome, prec: usize, mode: &TailMode) -> EvalResult {
    let bound = match mode {
        TailMode::Geometric => BoundKind::Geometric,
        TailMode::Heuristic => BoundKind::Heuristic,
    };
    let err = 4.0 * out.tail_bound + rounding_slack(prec, out.terms, out.abs_scale);
    EvalResult { value: out.value, err_estimate: err, terms_used: out.terms, bound }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_at_zero_is_one() {
        let r = theta_psi(&ComplexValue::zero(96), 1e-20).unwrap();
        assert!(r.value.sub(&ComplexValue::one(96)).abs_f64() == 0.0);
    }

    #[test]
    fn psi_at_half() {
        // direct higher-precision summation oracle (frozen from 45-digit run)
        let r = theta_psi(&ComplexValue::from_f64(0.5, 0.0, 128), 1e-25).unwrap();
        assert!((r.value.re().to_f64() - 1.6416325606551538662938427702).abs() < 1e-15);
    }

    #[test]
    fn psi_product_form() {
        // psi(q) = (q^2;q^2)_inf / (q;q^2)_inf
        let q = ComplexValue::from_f64(0.2, 0.0, 128);
        let psi = theta_psi(&q, 1e-20).unwrap();
        let q2 = q.mul(&q);
        let num = qpoch_infinite_opts(&q2, &q2, &EvalOptions::with_tol(1e-22)).unwrap();
        let den = qpoch_infinite_opts(&q, &q2, &EvalOptions::with_tol(1e-22)).unwrap();
        let diff = psi.value.sub(&num.value.div(&den.value)).abs_f64();
        assert!(diff < 1e-12, "diff = {diff}");
    }

    #[test]
    fn eta_quotient_at_zero() {
        let r = eta_quotient_correction(&ComplexValue::zero(96), 1e-20).unwrap();
        assert!(r.value.sub(&ComplexValue::one(96)).abs_f64() == 0.0);
    }

    #[test]
    fn eta_quotient_frozen_values() {
        // independent 45-digit product oracle
        let r = eta_quotient_correction(&ComplexValue::from_f64(0.1, 0.0, 128), 1e-22).unwrap();
        assert!((r.value.re().to_f64() - 0.581579886613219927900345861598).abs() < 1e-14);
        let r = eta_quotient_correction(&ComplexValue::from_f64(0.3, 0.0, 128), 1e-22).unwrap();
        assert!((r.value.re().to_f64() - 0.130439952994148152331502098496).abs() < 1e-14);
    }

    #[test]
    fn triple_product_residuals() {
        let cases = [
            (1.0, 0.0, 0.3, 1e-12),
            (-1.0, 0.0, 0.25, 1e-12),
            (2.0, 0.0, 0.5, 1e-10),
        ];
        for (zr, zi, qv, want) in cases {
            let z = ComplexValue::from_f64(zr, zi, 128);
            let q = ComplexValue::from_f64(qv, 0.0, 128);
            let resid = jacobi_triple_product_residual(&z, &q, 1e-20).unwrap();
            assert!(resid < want, "z={zr}+{zi}i q={qv}: {resid}");
        }
    }

    #[test]
    fn triple_product_sum_side_at_minus_one() {
        // at z = -1 the sum side is phi(-q) = sum (-1)^n q^{n^2}
        let q = ComplexValue::from_f64(0.25, 0.0, 128);
        let z = ComplexValue::from_f64(-1.0, 0.0, 128);
        let (lhs, _) = jacobi_triple_product_sides(&z, &q, 1e-20).unwrap();
        let mut direct = ComplexValue::one(128);
        for n in 1..40i64 {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            direct = direct.add(&q.powi(n * n).mul_i64(2 * sign));
        }
        assert!(lhs.value.sub(&direct).abs_f64() < 1e-30);
    }

    #[test]
    fn triple_product_rejects_zero_z() {
        let q = ComplexValue::from_f64(0.3, 0.0, 64);
        assert!(jacobi_triple_product_residual(&ComplexValue::zero(64), &q, 1e-10).is_err());
    }
}
