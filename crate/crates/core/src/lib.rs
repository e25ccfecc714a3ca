//! Prolate spheroidal wave functions (PSWFs) of order zero.
//!
//! The crate builds the prolate spectrum for a band limit `c`, evaluates
//! `ψ_n`, `ψ_n'` and the integral eigenvalues `λ_n`, `μ_n`, locates the
//! roots and extrema of `ψ_n`, integrates the modified Prüfer phase of the
//! prolate ODE, and turns a collection of explicit inequalities on `χ_n`,
//! `t_n` and `ψ_n` into executable checks.
//!
//! ```
//! use prolate::{ProlateContext, ProlateSpectrum};
//!
//! let spectrum = ProlateSpectrum::build(&ProlateContext::new(10.0, 6).unwrap()).unwrap();
//! let chi6 = spectrum.chi(6);
//! assert!((chi6 / 100.0 - 1.0104).abs() < 1e-4);
//! ```

pub mod bounds;
pub mod elliptic;
pub mod error;
pub mod harness;
pub mod legendre;
pub mod ode;
pub mod prufer;
pub mod pswf;
pub mod roots;
pub mod tridiag;

pub use error::{ProlateError, Result};
pub use pswf::{IntegralEigenvalue, ProlateContext, ProlateSpectrum, PswfFunction};
pub use roots::{Regime, SpecialPoints};
