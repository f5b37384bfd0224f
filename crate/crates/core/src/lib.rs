//! Weber parabolic cylinder functions U(a,x), V(a,x), W(a,x) in double precision.

pub mod asymptotic;
pub mod cgamma;
pub mod closed_forms;
mod continuation;
pub mod dispatch;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod numeric;
pub mod selftest;
pub mod series;
pub mod uv;
pub mod w;

pub use cgamma::{gamma, gamma_arg, gamma_modulus, log_gamma, recip_gamma_real, ComplexValue};
pub use dispatch::dispatch;
pub use error::{PcfError, Result};
pub use eval::{EvalResult, Function, Method, Regime};
pub use series::{sum_y12, SeriesResult, SeriesSign};
