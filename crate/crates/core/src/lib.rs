//! Numerics for revival phenomena in periodic linear dispersive equations.
//!
//! The crate evaluates trigonometric polylogarithms `S^k_{j,r}` / `C^k_{j,r}`
//! in closed form, the dispersion relations and convolution kernels of the
//! linearised Benjamin–Ono, Intermediate Long Wave, Smith and KdV equations,
//! and the closed-form solution profiles of the periodic Riemann problem at
//! rational times `t = pπ/q`. Every closed form has a truncated-series
//! counterpart in [`evolution`] or [`trigpolylog::series_partial_sum`] that
//! serves as an independent check.

pub mod dispersion;
pub mod error;
pub mod evolution;
pub mod kernels;
pub mod numeric;
pub mod revival;
pub mod trigpolylog;
pub mod verification;

pub use dispersion::DispersionSpec;
pub use error::{Error, Result};
pub use evolution::{FourierInitialData, RationalTime, Time};
pub use trigpolylog::{Family, PolylogIndex};

/// ζ(3), Apéry's constant.
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;
/// ζ(5).
pub const ZETA_5: f64 = 1.036_927_755_143_37;
/// ζ(4) = π⁴/90.
pub const ZETA_4: f64 = 1.082_323_233_711_138_2;
