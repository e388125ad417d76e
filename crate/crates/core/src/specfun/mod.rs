//! Special functions: gamma, Bessel J/Y/H1 and the Gauss hypergeometric function.

mod bessel;
mod gamma;
mod hyp;

pub(crate) use bessel::{asymptotic_threshold, hankel_coefficients};
pub use bessel::{bessel_j, bessel_jy, bessel_y, hankel1};
pub(crate) use gamma::sin_pi;
pub use gamma::{digamma, gamma, gamma_real, pochhammer, rgamma};
pub(crate) use hyp::norm_minus_one_w;
pub use hyp::{hyp2f1, hyp2f1_continued, hyp2f1_norm_minus_one, Branch};
