//! Gauss hypergeometric function 2F1 on the real line.
//!
//! Power series for |z| <= 1/2, the z -> 1-z connection formulas (including
//! the logarithmic cases with integer c-a-b) for 1/2 < z < 1, Pfaff for
//! z < 0 and the z -> 1/z formula for the continuation to z > 1.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{digamma, gamma_real, is_nonpositive_integer, rgamma};
use crate::error::{domain, Error, Result};

const MAX_TERMS: usize = 1_000_000;
const TOL: f64 = 1e-17;
const INTEGER_SLACK: f64 = 1e-9;

/// Side of the cut [1, inf) from which 2F1 is continued.
///
/// `Upper` fixes (-z)^(-a) = e^(-i pi a) z^(-a), i.e. the limit from z - i0.
/// `Lower` is the complex conjugate choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Upper,
    Lower,
}

impl Branch {
    /// Sign s such that (-z)^(-a) = e^(s i pi a) z^(-a).
    fn phase_sign(self) -> f64 {
        match self {
            Branch::Upper => -1.0,
            Branch::Lower => 1.0,
        }
    }

    /// Imaginary part of log(1 - z) for z > 1.
    fn log_im(self) -> f64 {
        match self {
            Branch::Upper => PI,
            Branch::Lower => -PI,
        }
    }
}

fn check_finite(a: f64, b: f64, c: f64, z: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return domain("2F1 arguments must be finite");
    }
    if is_nonpositive_integer(c) {
        return domain(format!("2F1 undefined for c = {c}"));
    }
    Ok(())
}

fn series(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let mut sum = 1.0;
    let mut term = 1.0;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term == 0.0 || (term.abs() < TOL * sum.abs() && n > 2) {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!("2F1 series at z = {z}")))
}

// 15.3.6: non-integer s = c - a - b, 1/2 < z < 1.
fn connection_generic(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    let w = 1.0 - z;
    let s = c - a - b;
    let gc = gamma_real(c);
    let t1 = gc * gamma_real(s) * rgamma(c - a) * rgamma(c - b) * series(a, b, 1.0 - s, w)?;
    let t2 = gc * gamma_real(-s) * rgamma(a) * rgamma(b) * w.powf(s) * series(c - a, c - b, 1.0 + s, w)?;
    Ok(t1 + t2)
}

// Logarithmic sum shared by 15.3.10 (m = 0) and 15.3.11 (m >= 1):
// sum_n (a+m)_n (b+m)_n / (n! (n+m)!) w^n [log w - psi(n+1) - psi(n+m+1) + psi(a+n+m) + psi(b+n+m)]
fn log_sum(a: f64, b: f64, m: usize, w: f64, log_w: Complex64) -> Result<Complex64> {
    let mf = m as f64;
    let mut coef = 1.0 / (1..=m).fold(1.0, |acc, k| acc * k as f64);
    let mut psi1 = digamma(1.0);
    let mut psi2 = digamma(mf + 1.0);
    let mut psia = digamma(a + mf);
    let mut psib = digamma(b + mf);
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let bracket = log_w + (psia + psib - psi1 - psi2);
        let term = bracket * coef;
        sum += term;
        if coef == 0.0 || (term.norm() < TOL * sum.norm() && n > 2) {
            return Ok(sum);
        }
        coef *= (a + mf + nf) * (b + mf + nf) / ((nf + 1.0) * (nf + mf + 1.0)) * w;
        psi1 += 1.0 / (nf + 1.0);
        psi2 += 1.0 / (nf + mf + 1.0);
        psia += 1.0 / (a + mf + nf);
        psib += 1.0 / (b + mf + nf);
    }
    Err(Error::Convergence(format!("2F1 logarithmic series at 1 - z = {w}")))
}

// 15.3.10 and 15.3.11: c - a - b = m, m >= 0 integer, 1/2 < z < 1.
fn connection_integer(a: f64, b: f64, m: usize, z: f64) -> Result<f64> {
    let w = 1.0 - z;
    let c = a + b + m as f64;
    let gc = gamma_real(c);
    let log_w = Complex64::new(w.ln(), 0.0);
    if m == 0 {
        let s = log_sum(a, b, 0, w, log_w)?;
        // sum carries the opposite sign convention of 15.3.10
        return Ok(-gc * rgamma(a) * rgamma(b) * s.re);
    }
    let mut finite = 0.0;
    let mut t = 1.0;
    let one_minus_m = 1.0 - m as f64;
    for n in 0..m {
        finite += t;
        let nf = n as f64;
        t *= (a + nf) * (b + nf) / ((nf + 1.0) * (one_minus_m + nf)) * w;
    }
    let gm = gamma_real(m as f64);
    let t1 = gm * gc * rgamma(a + m as f64) * rgamma(b + m as f64) * finite;
    let sign = if m.is_multiple_of(2) { -1.0 } else { 1.0 };
    let s = log_sum(a, b, m, w, log_w)?;
    let t2 = sign * gc * rgamma(a) * rgamma(b) * w.powi(m as i32) * s.re;
    Ok(t1 + t2)
}

/// Gauss hypergeometric function 2F1(a, b; c; z) for real z < 1.
///
/// z = 1 is accepted when c - a - b > 0 (Gauss's value).
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    check_finite(a, b, c, z)?;
    // canonical order makes the result exactly symmetric in (a, b)
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    if z > 1.0 {
        return domain(format!("hyp2f1 requires z <= 1, got {z}; use hyp2f1_continued"));
    }
    if is_nonpositive_integer(c) {
        return domain(format!("hyp2f1 is undefined for c = {c}"));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(1.0);
    }
    let s = c - a - b;
    if z == 1.0 {
        if s <= 0.0 {
            return domain(format!("2F1 diverges at z = 1 when c - a - b = {s} <= 0"));
        }
        return Ok(gamma_real(c) * gamma_real(s) * rgamma(c - a) * rgamma(c - b));
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return series(a, b, c, z);
    }
    if z < 0.0 {
        // Pfaff: argument z/(z-1) lies in (0, 1)
        let zz = z / (z - 1.0);
        return Ok((1.0 - z).powf(-a) * hyp2f1(a, c - b, c, zz)?);
    }
    if z <= 0.5 {
        return series(a, b, c, z);
    }
    let m = s.round();
    if (s - m).abs() < INTEGER_SLACK {
        if m >= 0.0 {
            return connection_integer(a, b, m as usize, z);
        }
        // Euler: raises c - a - b to -m > 0
        let w = 1.0 - z;
        return Ok(w.powf(s) * connection_integer(c - a, c - b, (-m) as usize, z)?);
    }
    connection_generic(a, b, c, z)
}

/// Analytic continuation of 2F1(a, b; c; z) to z > 1 from the side given by `branch`.
///
/// Requires a - b not an integer.
pub fn hyp2f1_continued(a: f64, b: f64, c: f64, z: f64, branch: Branch) -> Result<Complex64> {
    check_finite(a, b, c, z)?;
    if !(z > 1.0) {
        return domain(format!("hyp2f1_continued requires z > 1, got {z}"));
    }
    let d = a - b;
    if (d - d.round()).abs() < INTEGER_SLACK {
        return domain(format!("hyp2f1_continued requires a - b non-integer, got {d}"));
    }
    let w = 1.0 / z;
    let gc = gamma_real(c);
    let sg = branch.phase_sign();
    let ph_a = Complex64::from_polar(z.powf(-a), sg * PI * a);
    let ph_b = Complex64::from_polar(z.powf(-b), sg * PI * b);
    let c1 = gc * gamma_real(b - a) * rgamma(b) * rgamma(c - a);
    let c2 = gc * gamma_real(a - b) * rgamma(a) * rgamma(c - b);
    let f1 = if c1 == 0.0 { 0.0 } else { hyp2f1(a, 1.0 - c + a, 1.0 - b + a, w)? };
    let f2 = if c2 == 0.0 { 0.0 } else { hyp2f1(b, 1.0 - c + b, 1.0 - a + b, w)? };
    Ok(ph_a * (c1 * f1) + ph_b * (c2 * f2))
}

/// Normalized 2F1 with c = a + b + 1, minus one:
/// Gamma(a+1) Gamma(b+1) / Gamma(a+b+1) * 2F1(a, b; a+b+1; z) - 1.
///
/// The function vanishes at z = 1. It is evaluated without cancellation
/// near z = 1 on both sides; for z > 1 the continuation from `branch` is used.
pub fn hyp2f1_norm_minus_one(a: f64, b: f64, z: f64, branch: Branch) -> Result<Complex64> {
    if !z.is_finite() || z < 0.0 {
        return domain("hyp2f1_norm_minus_one requires finite z >= 0");
    }
    norm_minus_one_w(a, b, 1.0 - z, branch)
}

/// Same as [`hyp2f1_norm_minus_one`] with the argument given as w = 1 - z,
/// so that z close to 1 keeps full relative precision in w.
pub(crate) fn norm_minus_one_w(a: f64, b: f64, w: f64, branch: Branch) -> Result<Complex64> {
    if !(a.is_finite() && b.is_finite() && w.is_finite()) || w > 1.0 {
        return domain("hyp2f1_norm_minus_one requires finite a, b and z >= 0");
    }
    let c = a + b + 1.0;
    let z = 1.0 - w;
    if w > 0.5 {
        let g = gamma_real(a + 1.0) * gamma_real(b + 1.0) * rgamma(c);
        return Ok(Complex64::new(g * hyp2f1(a, b, c, z)? - 1.0, 0.0));
    }
    let d = a - b;
    let integer_gap = (d - d.round()).abs() < INTEGER_SLACK;
    if w >= -0.5 || (integer_gap && w > -1.0) {
        if w == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let log_w = if w > 0.0 { Complex64::new(w.ln(), 0.0) } else { Complex64::new((-w).ln(), branch.log_im()) };
        let s = log_sum(a, b, 1, w, log_w)?;
        return Ok(s * (a * b * w));
    }
    let g = gamma_real(a + 1.0) * gamma_real(b + 1.0) * rgamma(c);
    Ok(hyp2f1_continued(a, b, c, z, branch)? * g - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    // (a, b, c, z, value) from mpmath, 40 digits
    const REAL: [(f64, f64, f64, f64, f64); 8] = [
        (0.4, -0.2, 1.3, 0.7, 0.94569430906742838),
        (0.85, 0.15, 2.0, 0.99, 1.1268584757830495),
        (1.5, 0.5, 3.0, 0.5, 1.1672458787974449),
        (0.65, 0.15, 1.8, 0.999999, 1.1089922430685756),
        (1.2, 0.7, 2.9, 0.95, 1.6454318880793787),
        (0.5, 0.5, 1.0, -3.0, 0.68644025030917508),
        (2.35, 0.35, 3.7, 0.75, 1.2851218855191007),
        (1.0, 1.0, 2.0, 0.5, 1.3862943611198906),
    ];
    // (a, b, c, z, re, im), limit from z - i0
    const CONTINUED: [(f64, f64, f64, f64, f64, f64); 4] = [
        (0.65, 0.15, 1.5, 1.5, 1.1413241157493864, -0.16594601676623835),
        (0.85, 0.35, 1.5, 4.0, 0.66883659835286351, -0.67418082864578952),
        (0.35, -0.35, 1.0, 1.2, 0.75535333690894262, 0.057514434580833965),
        (0.9, 0.1, 2.0, 30.0, 0.78339719286011833, -0.23621835120855014),
    ];

    #[test]
    fn real_values() {
        for (a, b, c, z, want) in REAL {
            let got = hyp2f1(a, b, c, z).unwrap();
            assert!((got - want).abs() < 1e-12 * want.abs(), "2F1({a},{b};{c};{z}) = {got}");
        }
    }

    #[test]
    fn trivial_arguments() {
        assert_eq!(hyp2f1(0.4, -0.2, 1.3, 0.0).unwrap(), 1.0);
        assert_eq!(hyp2f1(0.4, 0.0, 1.3, 0.9).unwrap(), 1.0);
        assert_eq!(hyp2f1_continued(0.4, 0.0, 1.3, 2.0, Branch::Upper).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(hyp2f1_continued(0.4, 0.0, 1.3, 2.0, Branch::Lower).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn symmetric_in_a_b() {
        for (a, b, c, z, _) in REAL {
            assert_eq!(hyp2f1(a, b, c, z).unwrap(), hyp2f1(b, a, c, z).unwrap());
        }
    }

    #[test]
    fn gauss_value_at_one() {
        // c - a - b = 1
        let (a, b, c) = (0.65, 0.15, 1.8);
        let gauss = gamma_real(c) * rgamma(c - a) * rgamma(c - b);
        assert!((hyp2f1(a, b, c, 1.0).unwrap() - gauss).abs() < 1e-13);
        assert!((hyp2f1(a, b, c, 1.0 - 1e-6).unwrap() - gauss).abs() < 1e-4);
    }

    #[test]
    fn continued_values_upper() {
        for (a, b, c, z, re, im) in CONTINUED {
            let got = hyp2f1_continued(a, b, c, z, Branch::Upper).unwrap();
            let want = Complex64::new(re, im);
            assert!((got - want).norm() < 1e-11 * want.norm(), "{a},{b};{c};{z}: {got}");
            let low = hyp2f1_continued(a, b, c, z, Branch::Lower).unwrap();
            assert!((low - want.conj()).norm() < 1e-11 * want.norm());
        }
    }

    #[test]
    fn continuity_across_one() {
        let (a, b, c) = (0.65, 0.15, 1.5);
        let below = hyp2f1(a, b, c, 1.0 - 1e-8).unwrap();
        let above = hyp2f1_continued(a, b, c, 1.0 + 1e-8, Branch::Upper).unwrap();
        assert!((below - above.re).abs() < 1e-4);
    }

    #[test]
    fn domain_errors() {
        assert!(hyp2f1(0.5, 0.5, 1.0, 1.5).is_err());
        assert!(hyp2f1(0.5, 0.5, -2.0, 0.3).is_err());
        assert!(hyp2f1(0.5, 0.5, 0.9, 1.0).is_err());
        assert!(hyp2f1_continued(1.5, 0.5, 3.0, 2.0, Branch::Upper).is_err());
        assert!(hyp2f1_continued(0.6, -0.4, 1.0, 2.5, Branch::Upper).is_err());
        assert!(hyp2f1_continued(0.6, 0.5, 3.0, 0.5, Branch::Upper).is_err());
    }

    #[test]
    fn normalized_form_matches_definition() {
        let (a, b) = (0.85, 0.15);
        let g = gamma_real(a + 1.0) * gamma_real(b + 1.0) * rgamma(a + b + 1.0);
        for z in [0.2, 0.6, 0.9, 0.999] {
            let direct = g * hyp2f1(a, b, a + b + 1.0, z).unwrap() - 1.0;
            let n = hyp2f1_norm_minus_one(a, b, z, Branch::Upper).unwrap();
            assert!((n.re - direct).abs() < 1e-12 && n.im == 0.0, "z={z}");
        }
        for z in [1.001, 1.4, 1.9, 3.0] {
            let direct = g * hyp2f1_continued(a, b, a + b + 1.0, z, Branch::Upper).unwrap() - 1.0;
            let n = hyp2f1_norm_minus_one(a, b, z, Branch::Upper).unwrap();
            assert!((n - direct).norm() < 1e-11, "z={z}");
        }
        assert_eq!(hyp2f1_norm_minus_one(a, b, 1.0, Branch::Upper).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn normalized_form_keeps_precision_near_one() {
        // N ~ a b w ln w for small w
        let (a, b) = (0.85, 0.15);
        let w = 1e-12;
        let n = norm_minus_one_w(a, b, w, Branch::Upper).unwrap().re;
        let lead = a * b * w * (w.ln() - 2.0 * digamma(1.0) - 1.0 + digamma(a + 1.0) + digamma(b + 1.0));
        assert!((n - lead).abs() < 1e-6 * lead.abs());
    }
}
