//! Eulerian (one-sided q-hypergeometric) series for the six functions, the
//! finite sum of D5* at roots of unity, and the two-variable transformation
//! pair qhyper_lhs / qhyper_rhs.
//!
//! Every series is summed by term recurrence; each supplies a decreasing
//! geometric bound on all later term ratios, so truncation errors are
//! certified inside the safe radius (see `numkernel::eval`).

use crate::error::{Error, Result};
use crate::numkernel::{
    finish, qpoch_infinite_opts, rounding_slack, sum_one_sided, tail_mode, BoundKind, ComplexValue,
    EvalOptions, EvalResult, Nome, Real, TailMode,
};

/// D5(q) = sum_{n>=0} (-q)_n / (q;q^2)_{n+1} * q^n.
pub fn d5_series(q: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = q.q();
    let aq = q.abs_f64();
    let mode = tail_mode(aq, &opts)?;
    let prec = q.prec();
    let one = ComplexValue::one(prec);
    let t0 = one.div(&one.sub(q));
    let mut r = q.clone(); // q^{n+1}
    let mut w = q.powi(3); // q^{2n+3}
    let out = sum_one_sided(
        &opts,
        &mode,
        t0,
        |_n, t| {
            let t_next = t.mul(q).mul(&one.add(&r)).div(&one.sub(&w));
            r = r.mul(q);
            w = w.mul(q).mul(q);
            t_next
        },
        |n| aq * (1.0 + aq.powi(n as i32 + 1)) / (1.0 - aq.powi(2 * n as i32 + 3)),
    )?;
    Ok(finish(out, prec, &mode))
}

/// D5(q) via the rewritten form [(q;q^2)_inf]^{-2} sum_n [(q;q^2)_n]^2 q^{2n}.
pub fn d5_alt(q: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = q.q();
    let aq = q.abs_f64();
    let mode = tail_mode(aq, &opts)?;
    let prec = q.prec();
    let one = ComplexValue::one(prec);
    let q2 = q.mul(q);
    let mut v = q.clone(); // q^{2n+1}
    let out = sum_one_sided(
        &opts,
        &mode,
        one.clone(),
        |_n, t| {
            let f = one.sub(&v);
            let t_next = t.mul(&q2).mul(&f).mul(&f);
            v = v.mul(&q2);
            t_next
        },
        |n| {
            let x = 1.0 + aq.powi(2 * n as i32 + 1);
            aq * aq * x * x
        },
    )?;
    let inner = EvalOptions { tol: (tol / 16.0).max(1e-300), ..opts };
    let p = qpoch_infinite_opts(q, &q2, &inner)?;
    let value = out.value.div(&p.value).div(&p.value);
    let abs_v = value.abs_f64();
    let abs_p = p.abs_f64().max(1e-300);
    let rel_p = p.err_estimate / abs_p;
    let err = 4.0 * out.tail_bound / (abs_p * abs_p)
        + 4.0 * rel_p * abs_v
        + rounding_slack(prec, out.terms + p.terms_used, abs_v.max(out.abs_scale));
    Ok(EvalResult { value, err_estimate: err, terms_used: out.terms + p.terms_used, bound: BoundKind::Geometric })
}

/// D5*(q) = sum_{n>=0} (-1)^n q^{n(n+1)/2} (-q)_n / (q;q^2)_{n+1}.
pub fn d5_star_series(q: &Nome, tol: f64) -> Result<EvalResult> {
    d5_star_series_opts(q, &EvalOptions::with_tol(tol))
}

/// D5* with explicit evaluation options; `allow_heuristic` admits |q| beyond
/// the safe radius (used by the radial-limit consistency check).
pub fn d5_star_series_opts(q: &Nome, opts: &EvalOptions) -> Result<EvalResult> {
    let q = q.q();
    let aq = q.abs_f64();
    let mode = tail_mode(aq, opts)?;
    let prec = q.prec();
    let one = ComplexValue::one(prec);
    let t0 = one.div(&one.sub(q));
    let mut r = q.clone(); // q^{n+1}
    let out = sum_one_sided(
        opts,
        &mode,
        t0,
        |_n, t| {
            let den = one.sub(&r.mul(&r).mul(q)); // 1 - q^{2n+3}
            let t_next = t.mul(&r.neg()).mul(&one.add(&r)).div(&den);
            r = r.mul(q);
            t_next
        },
        |n| {
            let x = aq.powi(n as i32 + 1);
            x * (1.0 + x) / (1.0 - aq.powi(2 * n as i32 + 3))
        },
    )?;
    Ok(finish(out, prec, &mode))
}

/// Exact finite sum for D5* at q = e^{i pi/N}: terms with n >= N vanish
/// because (-q)_n picks up the factor 1 + q^N = 0. Denominators stay nonzero
/// since q^{2k+1} = 1 would force the odd 2k+1 to be a multiple of 2N.
pub fn d5_star_at_root(n_root: u32, prec: usize) -> Result<ComplexValue> {
    if n_root < 1 {
        return Err(Error::Domain("N must be >= 1".into()));
    }
    let theta = Real::pi(prec).div(&Real::from_i64(n_root as i64, prec));
    let q = ComplexValue::new(theta.cos(), theta.sin());
    let one = ComplexValue::one(prec);

    let mut sum = ComplexValue::zero(prec);
    let mut num = one.clone(); // (-q)_n
    let mut den = one.sub(&q); // (q;q^2)_{n+1}
    let mut qpow = one.clone(); // q^{n(n+1)/2}
    let mut qn = q.clone(); // q^{n+1}
    for n in 0..n_root as i64 {
        let term = qpow.mul(&num).div(&den);
        sum = if n % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
        // advance to n+1
        num = num.mul(&one.add(&qn));
        den = den.mul(&one.sub(&qn.mul(&qn).mul(&q))); // 1 - q^{2n+3}
        qpow = qpow.mul(&qn);
        qn = qn.mul(&q);
    }
    Ok(sum)
}

/// omega(q) = sum_{n>=0} q^{2n(n+1)} / [(q;q^2)_{n+1}]^2.
pub fn omega_series(q: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = q.q();
    let aq = q.abs_f64();
    let mode = tail_mode(aq, &opts)?;
    let prec = q.prec();
    let one = ComplexValue::one(prec);
    let d0 = one.sub(q);
    let t0 = one.div(&d0.mul(&d0));
    let mut r = q.clone(); // q^{n+1}
    let out = sum_one_sided(
        &opts,
        &mode,
        t0,
        |_n, t| {
            let den = one.sub(&r.mul(&r).mul(q)); // 1 - q^{2n+3}
            let t_next = t.mul(&r.powi(4)).div(&den.mul(&den));
            r = r.mul(q);
            t_next
        },
        |n| {
            let d = 1.0 - aq.powi(2 * n as i32 + 3);
            aq.powi(4 * n as i32 + 4) / (d * d)
        },
    )?;
    Ok(finish(out, prec, &mode))
}

/// omega(q) via the second form sum_{n>=0} q^n / (q;q^2)_{n+1}.
pub fn omega_alt(q: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = q.q();
    let aq = q.abs_f64();
    let mode = tail_mode(aq, &opts)?;
    let prec = q.prec();
    let one = ComplexValue::one(prec);
    let t0 = one.div(&one.sub(q));
    let mut w = q.powi(3); // q^{2n+3}
    let out = sum_one_sided(
        &opts,
        &mode,
        t0,
        |_n, t| {
            let t_next = t.mul(q).div(&one.sub(&w));
            w = w.mul(q).mul(q);
            t_next
        },
        |n| aq / (1.0 - aq.powi(2 * n as i32 + 3)),
    )?;
    Ok(finish(out, prec, &mode))
}

/// f(q) = sum_{n>=0} q^{n^2} / [(-q)_n]^2.
pub fn f_series(q: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = q.q();
    let aq = q.abs_f64();
    let mode = tail_mode(aq, &opts)?;
    let prec = q.prec();
    let one = ComplexValue::one(prec);
    let mut u = q.clone(); // q^{2n+1}
    let mut r = q.clone(); // q^{n+1}
    let out = sum_one_sided(
        &opts,
        &mode,
        one.clone(),
        |_n, t| {
            let den = one.add(&r);
            let t_next = t.mul(&u).div(&den.mul(&den));
            u = u.mul(q).mul(q);
            r = r.mul(q);
            t_next
        },
        |n| {
            let d = 1.0 - aq.powi(n as i32 + 1);
            aq.powi(2 * n as i32 + 1) / (d * d)
        },
    )?;
    Ok(finish(out, prec, &mode))
}

/// f(q) via the second form 2 - sum_{n>=0} (-1)^n q^n / (-q)_n.
pub fn f_alt(q: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = q.q();
    let aq = q.abs_f64();
    let mode = tail_mode(aq, &opts)?;
    let prec = q.prec();
    let one = ComplexValue::one(prec);
    let mut r = q.clone(); // q^{n+1}
    let out = sum_one_sided(
        &opts,
        &mode,
        one.clone(),
        |_n, t| {
            let t_next = t.mul(&q.neg()).div(&one.add(&r));
            r = r.mul(q);
            t_next
        },
        |n| aq / (1.0 - aq.powi(n as i32 + 1)),
    )?;
    let mut res = finish(out, prec, &mode);
    res.value = ComplexValue::from_f64(2.0, 0.0, prec).sub(&res.value);
    Ok(res)
}

/// h1(q) = sum_{n>=0} (-q)_{2n} q^n / [(q;q^2)_{n+1}]^2.
pub fn h1_series(q: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = q.q();
    let aq = q.abs_f64();
    let mode = tail_mode(aq, &opts)?;
    let prec = q.prec();
    let one = ComplexValue::one(prec);
    let d0 = one.sub(q);
    let t0 = one.div(&d0.mul(&d0));
    let mut v = q.clone(); // q^{2n+1}
    let out = sum_one_sided(
        &opts,
        &mode,
        t0,
        |_n, t| {
            let den = one.sub(&v.mul(q).mul(q)); // 1 - q^{2n+3}
            let t_next = t
                .mul(q)
                .mul(&one.add(&v))
                .mul(&one.add(&v.mul(q)))
                .div(&den.mul(&den));
            v = v.mul(q).mul(q);
            t_next
        },
        |n| {
            let k = 2 * n as i32;
            let d = 1.0 - aq.powi(k + 3);
            aq * (1.0 + aq.powi(k + 1)) * (1.0 + aq.powi(k + 2)) / (d * d)
        },
    )?;
    Ok(finish(out, prec, &mode))
}

/// h2(q) = sum_{n>=0} (-1)^n (q;q^2)_n q^{n^2} / [(-q^2;q^2)_n]^2.
pub fn h2_series(q: &Nome, tol: f64) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = q.q();
    let aq = q.abs_f64();
    let mode = tail_mode(aq, &opts)?;
    let prec = q.prec();
    let one = ComplexValue::one(prec);
    let mut v = q.clone(); // q^{2n+1}
    let out = sum_one_sided(
        &opts,
        &mode,
        one.clone(),
        |_n, t| {
            let den = one.add(&v.mul(q)); // 1 + q^{2n+2}
            let t_next = t.mul(&v.neg()).mul(&one.sub(&v)).div(&den.mul(&den));
            v = v.mul(q).mul(q);
            t_next
        },
        |n| {
            let k = 2 * n as i32;
            let d = 1.0 - aq.powi(k + 2);
            aq.powi(k + 1) * (1.0 + aq.powi(k + 1)) / (d * d)
        },
    )?;
    Ok(finish(out, prec, &mode))
}

fn guard_pole(f: &ComplexValue, what: &str) -> Result<()> {
    if f.abs_f64() < 1e-12 {
        return Err(Error::Pole(format!("vanishing denominator factor in {what}")));
    }
    Ok(())
}

/// Left side of the q-hypergeometric transformation:
/// sum_n (a;q^2)_n (b;q)_{2n} / [(q^2;q^2)_n (c;q)_{2n}] z^n.
pub fn qhyper_lhs(
    a: &ComplexValue,
    b: &ComplexValue,
    c: &ComplexValue,
    z: &ComplexValue,
    q: &Nome,
    tol: f64,
) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = q.q();
    let aq = q.abs_f64();
    let mode = tail_mode(aq, &opts)?;
    let abs_z = z.abs_f64();
    if !(abs_z < 1.0) {
        return Err(Error::Domain("|z| must be < 1".into()));
    }
    let prec = q.prec();
    let one = ComplexValue::one(prec);
    let q2 = q.mul(q);
    let (abs_a, abs_b, abs_c) = (a.abs_f64(), b.abs_f64(), c.abs_f64());
    let mut p2 = one.clone(); // q^{2n}
    let step = |_n: usize, t: &ComplexValue, p2: &mut ComplexValue| -> Result<ComplexValue> {
        let d1 = one.sub(&q2.mul(p2)); // 1 - q^{2n+2}
        let d2 = one.sub(&c.mul(p2)); // 1 - c q^{2n}
        let d3 = one.sub(&c.mul(p2).mul(q)); // 1 - c q^{2n+1}
        guard_pole(&d2, "(c;q)_{2n}")?;
        guard_pole(&d3, "(c;q)_{2n}")?;
        let t_next = t
            .mul(z)
            .mul(&one.sub(&a.mul(p2)))
            .mul(&one.sub(&b.mul(p2)))
            .mul(&one.sub(&b.mul(p2).mul(q)))
            .div(&d1)
            .div(&d2)
            .div(&d3);
        *p2 = p2.mul(&q2);
        Ok(t_next)
    };
    // the engine's `next` is infallible; surface pole errors afterwards
    let mut pole: Option<Error> = None;
    let out = sum_one_sided(
        &opts,
        &mode,
        one.clone(),
        |n, t| match step(n, t, &mut p2) {
            Ok(v) => v,
            Err(e) => {
                pole.get_or_insert(e);
                ComplexValue::zero(prec)
            }
        },
        |n| {
            let k = 2 * n as i32;
            let den = (1.0 - aq.powi(k + 2))
                * pos_or_inf(1.0 - abs_c * aq.powi(k))
                * pos_or_inf(1.0 - abs_c * aq.powi(k + 1));
            abs_z * (1.0 + abs_a * aq.powi(k)) * (1.0 + abs_b * aq.powi(k)) * (1.0 + abs_b * aq.powi(k + 1))
                / den
        },
    )?;
    if let Some(e) = pole {
        return Err(e);
    }
    Ok(finish(out, prec, &mode))
}

/// Right side of the q-hypergeometric transformation:
/// [(b)_inf (az;q^2)_inf / ((c)_inf (z;q^2)_inf)] *
/// sum_m (c/b;q)_m (z;q^2)_m / [(q)_m (az;q^2)_m] b^m.
/// For c = 0 the ratio c/b is taken to be 0.
pub fn qhyper_rhs(
    a: &ComplexValue,
    b: &ComplexValue,
    c: &ComplexValue,
    z: &ComplexValue,
    q: &Nome,
    tol: f64,
) -> Result<EvalResult> {
    let opts = EvalOptions::with_tol(tol);
    let q = q.q();
    let aq = q.abs_f64();
    let mode = tail_mode(aq, &opts)?;
    let abs_z = z.abs_f64();
    if !(abs_z < 1.0) {
        return Err(Error::Domain("|z| must be < 1".into()));
    }
    let abs_b = b.abs_f64();
    if !(abs_b < 1.0) {
        return Err(Error::Domain("the series side requires |b| < 1".into()));
    }
    let prec = q.prec();
    let one = ComplexValue::one(prec);
    let q2 = q.mul(q);
    let w = if c.is_zero() {
        ComplexValue::zero(prec)
    } else if b.is_zero() {
        return Err(Error::Domain("c/b undefined: b = 0 with c != 0".into()));
    } else {
        c.div(b)
    };
    let az = a.mul(z);
    let (abs_w, abs_az) = (w.abs_f64(), az.abs_f64());

    let inner = EvalOptions { tol: (tol / 32.0).max(1e-300), ..opts };
    let pb = qpoch_infinite_opts(b, q, &inner)?;
    let paz = qpoch_infinite_opts(&az, &q2, &inner)?;
    let pc = qpoch_infinite_opts(c, q, &inner)?;
    let pz = qpoch_infinite_opts(z, &q2, &inner)?;
    guard_pole(&pc.value, "(c;q)_inf")?;
    guard_pole(&pz.value, "(z;q^2)_inf")?;
    let prefactor = pb.value.mul(&paz.value).div(&pc.value).div(&pz.value);

    let mut qm = one.clone(); // q^m
    let mut p2 = one.clone(); // q^{2m}
    let mut pole: Option<Error> = None;
    let out = sum_one_sided(
        &opts,
        &mode,
        one.clone(),
        |_m, t| {
            let d1 = one.sub(&qm.mul(q)); // 1 - q^{m+1}
            let d2 = one.sub(&az.mul(&p2)); // 1 - az q^{2m}
            if let Err(e) = guard_pole(&d2, "(az;q^2)_m") {
                pole.get_or_insert(e);
                return ComplexValue::zero(prec);
            }
            let t_next = t
                .mul(b)
                .mul(&one.sub(&w.mul(&qm)))
                .mul(&one.sub(&z.mul(&p2)))
                .div(&d1)
                .div(&d2);
            qm = qm.mul(q);
            p2 = p2.mul(&q2);
            t_next
        },
        |m| {
            let k = m as i32;
            let den = (1.0 - aq.powi(k + 1)) * pos_or_inf(1.0 - abs_az * aq.powi(2 * k));
            abs_b * (1.0 + abs_w * aq.powi(k)) * (1.0 + abs_z * aq.powi(2 * k)) / den
        },
    )?;
    if let Some(e) = pole {
        return Err(e);
    }
    let value = prefactor.mul(&out.value);
    let abs_v = value.abs_f64();
    let rel_pref = pb.err_estimate / pb.abs_f64().max(1e-300)
        + paz.err_estimate / paz.abs_f64().max(1e-300)
        + pc.err_estimate / pc.abs_f64().max(1e-300)
        + pz.err_estimate / pz.abs_f64().max(1e-300);
    let terms = out.terms + pb.terms_used + paz.terms_used + pc.terms_used + pz.terms_used;
    let err = 4.0 * out.tail_bound * prefactor.abs_f64()
        + 2.0 * rel_pref * abs_v
        + rounding_slack(prec, terms, abs_v.max(out.abs_scale));
    Ok(EvalResult { value, err_estimate: err, terms_used: terms, bound: bound_of(&mode) })
}

fn pos_or_inf(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        f64::MIN_POSITIVE
    }
}

fn bound_of(mode: &TailMode) -> BoundKind {
    match mode {
        TailMode::Geometric => BoundKind::Geometric,
        TailMode::Heuristic => BoundKind::Heuristic,
    }
}
