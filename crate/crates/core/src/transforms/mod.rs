//! Discretized transforms on a uniform grid in u = ln r.

pub mod grid;
pub mod hankel;
pub mod lagrange;
pub mod mellin;
pub mod multiplier;

pub use grid::{log_map, log_unmap, LineFunction, LogRadialGrid, RadialFunction};
pub use hankel::{
    generalized_inverse_hankel, hankel_kernel, hankel_transform, hankel_transform_with, BesselKind, HankelKernel,
    InverseOptions, Summation, TailModel, TruncationReport,
};
pub use mellin::{mellin_convolve, MellinKernel};
pub use multiplier::{apply_multiplier, multiplier_table, padding_factor, MultiplierTable};
