//! Aharonov-Bohm wave operators on radial channels, computed by a stationary
//! Hankel route, a dilation-multiplier route and a Mellin-kernel route.

pub mod corpus;
pub mod error;
pub mod kernels;
pub mod pairing;
pub mod quadrature;
pub mod specfun;
pub mod symbols;
pub mod transforms;
pub mod waveop;

pub use error::{Error, Result};
pub use num_complex::Complex64;
