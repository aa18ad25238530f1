//! Precision-controlled complex arithmetic, nome construction, q-Pochhammer
//! symbols, and classical theta sums/products.
//!
//! Everything here is a pure function of its inputs; values can be moved
//! freely between threads and grids may be evaluated in parallel by callers.

mod complex;
mod eval;
mod nome;
mod qpoch;
mod real;
mod theta;

pub use complex::ComplexValue;
pub use eval::{BoundKind, EvalOptions, EvalResult, DEFAULT_MAX_TERMS, SAFE_RADIUS};
pub use nome::{nome_pair, Nome};
pub use qpoch::{qpoch_finite, qpoch_infinite, qpoch_infinite_opts};
pub use real::Real;
pub use theta::{
    eta_quotient_correction, jacobi_triple_product_residual, jacobi_triple_product_sides,
    theta_psi,
};

pub(crate) use eval::{rounding_slack, sum_bilateral, sum_one_sided, tail_mode, SumOutcome, TailMode};
pub(crate) use theta::finish;
