//! Lerch (Appell-Lerch) bilateral-sum representations, with the prefactors
//! that make them equal the Eulerian forms:
//!
//!   omega(q) = (q^2;q^2)_inf^{-1} sum_{n in Z} (-1)^n q^{3n(n+1)} / (1 - q^{2n+1})
//!   f(q)     = 2 (q)_inf^{-1}     sum_{n in Z} (-1)^n q^{n(3n+1)/2} / (1 + q^n)
//!   h1(q)    = (1/2) (-q)_inf/(q)_inf sum_{n in Z} (-1)^n q^{n(n+2)} / (1 - q^{2n+1})
//!   h2(q)    = (q)_inf/[(q^2;q^2)_inf]^2 sum_{n in Z} q^{n(n+1)/2} / (1 + q^n)
//!              + (1/2) [(q)_inf]^5/[(q^2;q^2)_inf]^4
//!
//! Sums run n = 0 first, then symmetric pairs; both one-sided tails must pass
//! their geometric bound before stopping. The n = 0 term of the h2 (and f)
//! sum is exactly 1/2.

use crate::error::{Error, Result};
use crate::numkernel::{
    eta_quotient_correction, qpoch_infinite_opts, rounding_slack, sum_bilateral, tail_mode,
    BoundKind, ComplexValue, EvalOptions, EvalResult, Nome, SumOutcome, TailMode,
};

struct Parts {
    sum: SumOutcome,
    prefactor: ComplexValue,
    prefactor_rel_err: f64,
    prefactor_terms: usize,
}

fn assemble(parts: Parts, prec: usize) -> EvalResult {
    let value = parts.prefactor.mul(&parts.sum.value);
    let abs_v = value.abs_f64();
    let terms = parts.sum.terms + parts.prefactor_terms;
    let err = 4.0 * parts.sum.tail_bound * parts.prefactor.abs_f64()
        + 2.0 * parts.prefactor_rel_err * abs_v
        + rounding_slack(prec, terms, abs_v.max(parts.sum.abs_scale));
    EvalResult { value, err_estimate: err, terms_used: terms, bound: BoundKind::Geometric }
}

fn check_geometric(q: &ComplexValue, opts: &EvalOptions) -> Result<f64> {
    let aq = q.abs_f64();
    match tail_mode(aq, opts)? {
        TailMode::Geometric => Ok(aq),
        TailMode::Heuristic => Err(Error::Domain(
            "Lerch sums are only evaluated inside the safe radius".into(),
        )),
    }
}

/// 1 - q^k for any integer k, guarding against near-vanishing values.
fn one_minus_qpow(q: &ComplexValue, k: i64, prec: usize) -> Result<ComplexValue> {
    let d = ComplexValue::one(prec).sub(&q.powi(k));
    if d.abs_f64() < 1e-12 {
        return Err(Error::Pole(format!("1 - q^{k} vanishes at this q")));
    }
    Ok(d)
}

fn one_plus_qpow(q: &ComplexValue, k: i64, prec: usize) -> Result<ComplexValue> {
    let d = ComplexValue::one(prec).add(&q.powi(k));
    if d.abs_f64() < 1e-12 {
        return Err(Error::Pole(format!("1 + q^{k} vanishes at this q")));
    }
    Ok(d)
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// omega(q) through its Lerch sum.
pub fn lerch_omega(nome: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = nome.q();
    let aq = check_geometric(q, &opts)?;
    let prec = q.prec();
    let sum = sum_bilateral(
        &opts,
        |n| {
            let den = one_minus_qpow(q, 2 * n + 1, prec)?;
            Ok(q.powi(3 * n * (n + 1)).div(&den).mul_i64(sign(n)))
        },
        |n| {
            let k = n as i32;
            aq.powi(6 * k + 6) * (1.0 + aq.powi(2 * k + 1)) / (1.0 - aq.powi(2 * k + 3))
        },
        |n| {
            let k = n as i32;
            aq.powi(6 * k + 2) * (1.0 + aq.powi(2 * k - 1)) / (1.0 - aq.powi(2 * k + 1))
        },
    )?;
    let inner = EvalOptions { tol: (tol / 16.0).max(1e-300), ..opts };
    let q2 = q.mul(q);
    let p = qpoch_infinite_opts(&q2, &q2, &inner)?;
    let prefactor = p.value.recip();
    let rel = p.err_estimate / p.abs_f64().max(1e-300);
    Ok(assemble(
        Parts { sum, prefactor, prefactor_rel_err: rel, prefactor_terms: p.terms_used },
        prec,
    ))
}

/// f(q) through its Lerch sum.
pub fn lerch_f(nome: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = nome.q();
    let aq = check_geometric(q, &opts)?;
    let prec = q.prec();
    let sum = sum_bilateral(
        &opts,
        |n| {
            let den = one_plus_qpow(q, n, prec)?;
            Ok(q.powi(n * (3 * n + 1) / 2).div(&den).mul_i64(sign(n)))
        },
        |n| {
            let k = n as i32;
            aq.powi(3 * k + 2) * (1.0 + aq.powi(k)) / (1.0 - aq.powi(k + 1))
        },
        |n| {
            let k = n as i32;
            aq.powi(3 * k + 2) * (1.0 + aq.powi(k)) / (1.0 - aq.powi(k + 1))
        },
    )?;
    let inner = EvalOptions { tol: (tol / 16.0).max(1e-300), ..opts };
    let p = qpoch_infinite_opts(q, q, &inner)?;
    let prefactor = p.value.recip().mul_i64(2);
    let rel = p.err_estimate / p.abs_f64().max(1e-300);
    Ok(assemble(
        Parts { sum, prefactor, prefactor_rel_err: rel, prefactor_terms: p.terms_used },
        prec,
    ))
}

/// h1(q) through its Lerch sum.
pub fn lerch_h1(nome: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = nome.q();
    let aq = check_geometric(q, &opts)?;
    let prec = q.prec();
    let sum = sum_bilateral(
        &opts,
        |n| {
            let den = one_minus_qpow(q, 2 * n + 1, prec)?;
            Ok(q.powi(n * (n + 2)).div(&den).mul_i64(sign(n)))
        },
        |n| {
            let k = n as i32;
            aq.powi(2 * k + 3) * (1.0 + aq.powi(2 * k + 1)) / (1.0 - aq.powi(2 * k + 3))
        },
        |n| {
            let k = n as i32;
            aq.powi(2 * k + 1) * (1.0 + aq.powi(2 * k - 1)) / (1.0 - aq.powi(2 * k + 1))
        },
    )?;
    let inner = EvalOptions { tol: (tol / 16.0).max(1e-300), ..opts };
    let pm = qpoch_infinite_opts(&q.neg(), q, &inner)?;
    let pp = qpoch_infinite_opts(q, q, &inner)?;
    let prefactor = pm.value.div(&pp.value).scale_half();
    let rel = pm.err_estimate / pm.abs_f64().max(1e-300) + pp.err_estimate / pp.abs_f64().max(1e-300);
    Ok(assemble(
        Parts {
            sum,
            prefactor,
            prefactor_rel_err: rel,
            prefactor_terms: pm.terms_used + pp.terms_used,
        },
        prec,
    ))
}

/// h2(q) through its Lerch sum plus the eta-quotient correction term.
pub fn lerch_h2(nome: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = nome.q();
    let aq = check_geometric(q, &opts)?;
    let prec = q.prec();
    let sum = sum_bilateral(
        &opts,
        |n| {
            let den = one_plus_qpow(q, n, prec)?;
            Ok(q.powi(n * (n + 1) / 2).div(&den))
        },
        |n| {
            let k = n as i32;
            aq.powi(k + 1) * (1.0 + aq.powi(k)) / (1.0 - aq.powi(k + 1))
        },
        |n| {
            let k = n as i32;
            aq.powi(k + 1) * (1.0 + aq.powi(k)) / (1.0 - aq.powi(k + 1))
        },
    )?;
    let inner = EvalOptions { tol: (tol / 16.0).max(1e-300), ..opts };
    let pp = qpoch_infinite_opts(q, q, &inner)?;
    let q2 = q.mul(q);
    let p2 = qpoch_infinite_opts(&q2, &q2, &inner)?;
    let prefactor = pp.value.div(&p2.value.mul(&p2.value));
    let rel = pp.err_estimate / pp.abs_f64().max(1e-300)
        + 2.0 * p2.err_estimate / p2.abs_f64().max(1e-300);
    let main = assemble(
        Parts {
            sum,
            prefactor,
            prefactor_rel_err: rel,
            prefactor_terms: pp.terms_used + p2.terms_used,
        },
        prec,
    );
    let corr = eta_quotient_correction(q, (tol / 4.0).max(1e-300))?;
    Ok(EvalResult {
        value: main.value.add(&corr.value.scale_half()),
        err_estimate: main.err_estimate + 0.5 * corr.err_estimate,
        terms_used: main.terms_used + corr.terms_used,
        bound: BoundKind::Geometric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h2_center_term_is_exactly_half() {
        // n = 0: q^0 / (1 + q^0) = 1/2, with no rounding at all
        let q = ComplexValue::from_f64(0.37, 0.11, 128);
        let prec = q.prec();
        let den = one_plus_qpow(&q, 0, prec).unwrap();
        let term = q.powi(0).div(&den);
        assert_eq!(term.re().to_f64(), 0.5);
        assert!(term.im().is_zero());
    }

    #[test]
    fn pole_guard_trips_near_unit_denominator() {
        // q extremely close to -1 would blow up 1 + q^1; fabricate directly
        let q = ComplexValue::from_f64(-1.0 + 1e-14, 0.0, 128);
        assert!(matches!(one_plus_qpow(&q, 1, 128), Err(Error::Pole(_))));
    }

    #[test]
    fn lerch_sums_reject_outside_safe_radius() {
        let n = Nome::from_q(ComplexValue::from_f64(0.97, 0.0, 128)).unwrap();
        assert!(lerch_omega(&n, 1e-15).is_err());
    }

    #[test]
    fn lerch_f_pair_decay_is_geometric() {
        // combined magnitude of term(n) + term(-n) decays at least
        // geometrically past a computable index
        let q = ComplexValue::from_f64(0.8, 0.0, 128);
        let prec = 128;
        let pair = |n: i64| -> f64 {
            let tp = q
                .powi(n * (3 * n + 1) / 2)
                .div(&one_plus_qpow(&q, n, prec).unwrap());
            let tm = q
                .powi(-n * (-3 * n + 1) / 2)
                .div(&one_plus_qpow(&q, -n, prec).unwrap());
            tp.abs_f64() + tm.abs_f64()
        };
        let mut prev = pair(3);
        for n in 4..14 {
            let cur = pair(n);
            assert!(cur < 0.9 * prev, "n={n}: {cur} vs {prev}");
            prev = cur;
        }
    }

    #[test]
    fn lerch_omega_matches_direct_bilateral_sum() {
        // independent check against a plain symmetric partial sum
        let prec = 128;
        let qv = ComplexValue::from_f64(0.2, 0.0, prec);
        let nome = Nome::from_q(qv.clone()).unwrap();
        let got = lerch_omega(&nome, 1e-20).unwrap();

        let one = ComplexValue::one(prec);
        let mut s = ComplexValue::zero(prec);
        for n in -30i64..=30 {
            let den = one.sub(&qv.powi(2 * n + 1));
            let t = qv.powi(3 * n * (n + 1)).div(&den).mul_i64(sign(n));
            s = s.add(&t);
        }
        // divide by (q^2;q^2)_inf computed as a long finite product
        let q2 = qv.mul(&qv);
        let mut prod = one.clone();
        let mut ak = q2.clone();
        for _ in 0..80 {
            prod = prod.mul(&one.sub(&ak));
            ak = ak.mul(&q2);
        }
        let want = s.div(&prod);
        assert!(got.value.sub(&want).abs_f64() < 1e-25);
    }
}
