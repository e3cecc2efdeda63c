//! Numerical laboratory around the fourth power moment of the Riemann zeta
//! function on the critical line: the moment integral and its error term,
//! the modified Mellin transform of |zeta(1/2+ix)|^4 with a smoothed
//! decomposition that continues it left of Re s = 1, the Gaussian-smoothed
//! moment and its spectral kernels, and the stationary-phase machinery that
//! controls the oscillatory pieces.
//!
//! Everything is computed twice where it matters: each headline quantity has
//! an independent oracle route (Euler-Maclaurin vs Riemann-Siegel, direct
//! quadrature vs decomposition, direct oscillatory integral vs saddle value),
//! and the test suites pin the cross-checks.

pub mod error;
pub mod moments;
pub mod spectral;
pub mod quadrature;
pub mod specfun;
pub mod zetacore;

pub use error::{Result, ZmlError};
