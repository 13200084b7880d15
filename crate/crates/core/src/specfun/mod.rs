//! Special functions behind the closed-form distribution and index formulas.
//!
//! All functions are pure. The public entry points validate their domains and
//! return [`Error::Domain`](crate::Error::Domain) on bad input; crate-internal
//! callers that have already validated parameters use the unchecked variants.

mod beta;
mod gamma;
mod hypergeometric;

pub use beta::{ln_beta, reg_inc_beta};
pub use gamma::{digamma, erf, erfc, ln_gamma, reg_inc_gamma_p, reg_inc_gamma_q, EULER_GAMMA};
pub use hypergeometric::{hyp2f1, hyp3f2_unit};

pub(crate) use beta::{inc_beta_pair, lbeta};
pub(crate) use gamma::{inc_gamma, lgamma, psi};
