//! Special functions: Laguerre polynomials, modified Bessel functions, the Airy
//! function of complex argument, the complex error function and log-Gamma.

mod airy;
mod bessel;
pub(crate) mod ddouble;
mod erf;
mod gamma;
mod laguerre;
mod scaled;

pub use airy::{airy_ai, airy_ai_prime, airy_ai_scaled, airy_pair};
pub use bessel::{bessel_i, bessel_i_entire, bessel_k};
pub use erf::{erf, erf_complex, erfc_complex, erfi};
pub use gamma::{double_factorial, gamma, log_gamma};
pub use laguerre::{laguerre_l, laguerre_scaled, laguerre_seq, laguerre_seq_scaled};
pub use scaled::ScaledComplex;
