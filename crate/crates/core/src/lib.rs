//! Correlation kernels of the complex and symplectic non-Hermitian Wishart
//! ensembles.
//!
//! The crate covers the finite-N determinantal and Pfaffian kernels built from
//! planar Laguerre polynomials, the differential identities they satisfy, their
//! limits at strong and weak non-Hermiticity, and a Monte Carlo sampler for the
//! matrix model `X = X1 X2*`.
//!
//! ```
//! use wkl::finite_kernels::{ModelParams, SymmetryClass};
//!
//! let params = ModelParams::new(SymmetryClass::Complex, 20, 1.0, 0.5).unwrap();
//! let rho = wkl::finite_kernels::corr_c(&[num_complex::Complex64::new(1.0, 0.1)], &params).unwrap();
//! assert!(rho > 0.0);
//! ```

pub mod cd_verifier;
pub mod cli;
pub mod error;
pub mod finite_kernels;
pub mod geometry;
pub mod limit_kernels;
pub mod montecarlo;
pub mod quad;
pub mod scaling_harness;
pub mod specfun;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use specfun::ScaledComplex;
