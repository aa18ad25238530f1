//! Evaluation and numerical certification toolkit for the second-order mock
//! theta function D5 and its companions (D5*, omega, f, h1, h2).
//!
//! The crate is organized in five layers:
//!
//! - [`numkernel`]: precision-controlled complex arithmetic, nomes,
//!   q-Pochhammer symbols, theta sums/products;
//! - [`qexpand`]: exact integer truncated power series, the coefficient
//!   oracle behind every displayed q-expansion;
//! - [`functions`]: the six special functions in all of their
//!   representations (Eulerian, alternative, Lerch sums), plus D5* at roots
//!   of unity;
//! - [`mordell`]: trapezoid quadrature for the two transformation integrals;
//! - [`verify`]: the identity registry, residual reports, and the quantum
//!   invariant table tau_N of the prism manifold M(2,2,2).
//!
//! Everything is a pure function of its inputs; grids can be evaluated in
//! parallel by callers.

pub mod error;
pub mod functions;
pub mod mordell;
pub mod numkernel;
pub mod qexpand;
pub mod verify;

pub use error::{Error, Result};
