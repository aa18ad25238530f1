//! Evaluation results and the shared series-summation engines.
//!
//! Truncation control is rigorous inside the safe radius: every series
//! supplies a decreasing bound `ratio_bound(n)` on all term ratios
//! |t_{m+1}/t_m| for m >= n, so the tail after t_n is at most
//! |t_n| * r/(1-r). Beyond the safe radius |q| <= 0.95 evaluation refuses
//! unless the caller explicitly opts into the heuristic last-term stopping
//! rule, and the result is flagged accordingly.

use crate::error::{Error, Result};

use super::complex::ComplexValue;

/// Which truncation-error bound produced `err_estimate`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    /// Geometric tail bound; `err_estimate` is an upper bound on the
    /// truncation error (plus rounding slack).
    Geometric,
    /// Last-term heuristic used outside the safe radius; indicative only.
    Heuristic,
}

/// Value of a truncated series or infinite product together with an error
/// estimate and the number of terms/factors consumed.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: ComplexValue,
    pub err_estimate: f64,
    pub terms_used: usize,
    pub bound: BoundKind,
}

impl EvalResult {
    pub fn abs_f64(&self) -> f64 {
        self.value.abs_f64()
    }
}

/// Largest |q| for which the geometric tail bounds are used; beyond it,
/// evaluation refuses unless heuristic mode is requested explicitly.
pub const SAFE_RADIUS: f64 = 0.95;

/// Hard cap on summed terms before reporting non-convergence.
pub const DEFAULT_MAX_TERMS: usize = 2_000_000;

/// Evaluation controls shared by the series evaluators.
#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub tol: f64,
    pub max_terms: usize,
    /// Permit |q| in (SAFE_RADIUS, 1) with a flagged heuristic error bound.
    pub allow_heuristic: bool,
}

impl EvalOptions {
    pub fn with_tol(tol: f64) -> Self {
        EvalOptions { tol, ..Default::default() }
    }
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { tol: 1e-20, max_terms: DEFAULT_MAX_TERMS, allow_heuristic: false }
    }
}

pub(crate) enum TailMode {
    Geometric,
    Heuristic,
}

/// Validates |q| against the safe radius and picks the tail-bound mode.
pub(crate) fn tail_mode(abs_q: f64, opts: &EvalOptions) -> Result<TailMode> {
    if !(abs_q < 1.0) {
        return Err(Error::Domain("|q| must be < 1".into()));
    }
    if abs_q > SAFE_RADIUS {
        if opts.allow_heuristic {
            Ok(TailMode::Heuristic)
        } else {
            Err(Error::Domain(format!(
                "|q| = {abs_q} exceeds the safe radius {SAFE_RADIUS}; \
                 enable heuristic evaluation to proceed"
            )))
        }
    } else {
        Ok(TailMode::Geometric)
    }
}

/// Conservative bound on accumulated rounding error of a summation.
pub(crate) fn rounding_slack(prec: usize, ops: usize, scale: f64) -> f64 {
    let ulp = (2.0f64).powi(-(prec.min(1000) as i32) + 6);
    (ops as f64 + 16.0) * scale.max(1e-300) * ulp
}

pub(crate) struct SumOutcome {
    pub value: ComplexValue,
    pub tail_bound: f64,
    pub terms: usize,
    /// Largest |t_n| seen, for rounding-slack scaling.
    pub abs_scale: f64,
}

/// Sums t_0 + t_1 + ... where `next(n, t_n)` produces t_{n+1} and
/// `ratio_bound(n)` bounds |t_{m+1}/t_m| for every m >= n (decreasing in n).
pub(crate) fn sum_one_sided(
    opts: &EvalOptions,
    mode: &TailMode,
    t0: ComplexValue,
    mut next: impl FnMut(usize, &ComplexValue) -> ComplexValue,
    ratio_bound: impl Fn(usize) -> f64,
) -> Result<SumOutcome> {
    match mode {
        TailMode::Geometric => {
            let mut sum = t0.clone();
            let mut t = t0;
            let mut abs_scale = sum.abs_f64();
            let mut n = 0usize;
            loop {
                let rb = ratio_bound(n);
                if n >= 1 && rb < 1.0 {
                    let tail = t.abs_f64() * rb / (1.0 - rb);
                    if tail <= opts.tol {
                        return Ok(SumOutcome { value: sum, tail_bound: tail, terms: n + 1, abs_scale });
                    }
                }
                if n + 1 >= opts.max_terms {
                    return Err(Error::NonConvergence(format!(
                        "series did not meet tol {} within {} terms",
                        opts.tol, opts.max_terms
                    )));
                }
                t = next(n, &t);
                sum = sum.add(&t);
                abs_scale = abs_scale.max(t.abs_f64()).max(sum.abs_f64());
                n += 1;
            }
        }
        TailMode::Heuristic => {
            // stop after a run of consecutive negligible terms; terms along
            // rays to roots of unity shrink non-monotonically, so one small
            // term is not evidence of convergence
            const RUN: usize = 10;
            let mut sum = t0.clone();
            let mut t = t0;
            let mut abs_scale = sum.abs_f64();
            let mut small_run = 0usize;
            let mut run_max = 0.0f64;
            let mut n = 0usize;
            loop {
                if n + 1 >= opts.max_terms {
                    return Err(Error::NonConvergence(format!(
                        "heuristic summation did not settle within {} terms",
                        opts.max_terms
                    )));
                }
                t = next(n, &t);
                sum = sum.add(&t);
                n += 1;
                let ta = t.abs_f64();
                abs_scale = abs_scale.max(ta).max(sum.abs_f64());
                if ta <= opts.tol * sum.abs_f64().max(1.0) {
                    small_run += 1;
                    run_max = run_max.max(ta);
                    if small_run >= RUN {
                        return Ok(SumOutcome {
                            value: sum,
                            tail_bound: run_max * 4.0 * RUN as f64,
                            terms: n + 1,
                            abs_scale,
                        });
                    }
                } else {
                    small_run = 0;
                    run_max = 0.0;
                }
            }
        }
    }
}

/// Sums a bilateral series: the n = 0 term first, then symmetric pairs
/// (n, -n). `ratio_pos(n)` bounds |t(m+1)/t(m)| for m >= n >= 1 and
/// `ratio_neg(n)` bounds |t(-m-1)/t(-m)| for m >= n >= 1; both decreasing.
/// Stops only once BOTH one-sided tails pass the bound.
pub(crate) fn sum_bilateral(
    opts: &EvalOptions,
    term: impl Fn(i64) -> Result<ComplexValue>,
    ratio_pos: impl Fn(i64) -> f64,
    ratio_neg: impl Fn(i64) -> f64,
) -> Result<SumOutcome> {
    let mut sum = term(0)?;
    let mut abs_scale = sum.abs_f64();
    let mut n = 1i64;
    loop {
        let tp = term(n)?;
        let tn = term(-n)?;
        sum = sum.add(&tp).add(&tn);
        abs_scale = abs_scale.max(tp.abs_f64()).max(tn.abs_f64()).max(sum.abs_f64());
        let rp = ratio_pos(n);
        let rn = ratio_neg(n);
        if rp < 1.0 && rn < 1.0 {
            let tail = tp.abs_f64() * rp / (1.0 - rp) + tn.abs_f64() * rn / (1.0 - rn);
            if tail <= opts.tol {
                return Ok(SumOutcome { value: sum, tail_bound: tail, terms: (2 * n + 1) as usize, abs_scale });
            }
        }
        if (2 * n) as usize >= opts.max_terms {
            return Err(Error::NonConvergence(format!(
                "bilateral series did not meet tol {} within {} terms",
                opts.tol, opts.max_terms
            )));
        }
        n += 1;
    }
}
