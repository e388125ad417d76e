//! Bessel functions J, Y and H1 of real non-negative order.
//!
//! Small and moderate arguments use Steed's continued fractions with
//! Temme's series for x < 2; large arguments use the Hankel expansion.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use super::gamma::temme_gammas;
use crate::error::{domain, Error, Result};

const EPS: f64 = 1e-16;
const FPMIN: f64 = 1e-300;
const MAXIT: usize = 100_000;
const XMIN: f64 = 2.0;

/// Argument above which the Hankel expansion is used for order `nu`.
pub(crate) fn asymptotic_threshold(nu: f64) -> f64 {
    f64::max(25.0, 1.5 * nu * nu)
}

/// Coefficients a_k(nu) of the Hankel expansion, up to `kmax`.
pub(crate) fn hankel_coefficients(nu: f64, kmax: usize) -> Vec<f64> {
    let mu4 = 4.0 * nu * nu;
    let mut a = Vec::with_capacity(kmax + 1);
    a.push(1.0);
    for k in 1..=kmax {
        let odd = (2 * k - 1) as f64;
        let prev = a[k - 1];
        a.push(prev * (mu4 - odd * odd) / (k as f64 * 8.0));
    }
    a
}

// P + iQ = sum_k i^k a_k x^{-k}; returns None when the series does not settle.
fn hankel_pq(nu: f64, x: f64) -> Option<(f64, f64)> {
    let mu4 = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= (mu4 - odd * odd) / (k as f64 * 8.0 * x);
        let mag = term.abs();
        if mag > last && mag > 1e-17 {
            return None;
        }
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if mag < 1e-17 * p.abs().max(1e-300) {
            return Some((p, q));
        }
        last = mag;
        if term == 0.0 {
            return Some((p, q));
        }
    }
    None
}

fn asymptotic_jy(nu: f64, x: f64) -> Option<(f64, f64)> {
    let (p, q) = hankel_pq(nu, x)?;
    // sin/cos of x - phi via angle sums: x is exact, phi is small
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = ((0.5 * nu + 0.25) * PI).sin_cos();
    let s = sx * cp - cx * sp;
    let c = cx * cp + sx * sp;
    let amp = (FRAC_2_PI / x).sqrt();
    Some((amp * (p * c - q * s), amp * (p * s + q * c)))
}

// Steed's method with Temme's series below XMIN.
fn steed_jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    let nl = if x < XMIN { (nu + 0.5) as usize } else { f64::max(0.0, nu - x + 1.5) as usize };
    let xmu = nu - nl as f64;
    let xmu2 = xmu * xmu;
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let w = xi2 / PI;

    // CF1 for J'_nu / J_nu
    let mut isign = 1.0;
    let mut h = (nu * xi).max(FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Convergence(format!("bessel CF1 at nu={nu}, x={x}")));
    }

    // downward recurrence to order xmu
    let mut rjl = isign * FPMIN;
    let mut rjpl = h * rjl;
    let rjl1 = rjl;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = EPS;
    }
    let f = rjpl / rjl;

    let (rjmu, mut rymu, mut ry1);
    if x < XMIN {
        let x2 = 0.5 * x;
        let pimu = PI * xmu;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = xmu * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(xmu);
        let mut ff = FRAC_2_PI * fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let ee = e.exp();
        let mut p = ee / (gampl * PI);
        let mut q = 1.0 / (ee * PI * gammi);
        let pimu2 = 0.5 * pimu;
        let fact3 = if pimu2.abs() < EPS { 1.0 } else { pimu2.sin() / pimu2 };
        let r = PI * pimu2 * fact3 * fact3;
        let mut cc = 1.0;
        let dd = -x2 * x2;
        let mut sum = ff + r * q;
        let mut sum1 = p;
        let mut ok = false;
        for i in 1..MAXIT {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - xmu2);
            cc *= dd / fi;
            p /= fi - xmu;
            q /= fi + xmu;
            let del = cc * (ff + r * q);
            sum += del;
            let del1 = cc * p - fi * del;
            sum1 += del1;
            if del.abs() < (1.0 + sum.abs()) * EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Convergence(format!("bessel Temme series at nu={nu}, x={x}")));
        }
        rymu = -sum;
        ry1 = -sum1 * xi2;
        let rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2 (Steed) for p + iq
        let mut a = 0.25 - xmu2;
        let mut p = -0.5 * xi;
        let mut q = 1.0;
        let br = 2.0 * x;
        let mut bi = 2.0;
        let mut fact = a * xi / (p * p + q * q);
        let mut cr = br + q * fact;
        let mut ci = bi + p * fact;
        let mut den = br * br + bi * bi;
        let mut dr = br / den;
        let mut di = -bi / den;
        let mut dlr = cr * dr - ci * di;
        let mut dli = cr * di + ci * dr;
        let mut temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        let mut ok = false;
        for i in 2..MAXIT {
            a += 2.0 * (i as f64 - 1.0);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if dr.abs() + di.abs() < FPMIN {
                dr = FPMIN;
            }
            fact = a / (cr * cr + ci * ci);
            cr = br + cr * fact;
            ci = bi - ci * fact;
            if cr.abs() + ci.abs() < FPMIN {
                cr = FPMIN;
            }
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (dlr - 1.0).abs() + dli.abs() < EPS {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::Convergence(format!("bessel CF2 at nu={nu}, x={x}")));
        }
        let gam = (p - f) / q;
        let mut rj = (w / ((p - f) * gam + q)).sqrt();
        if rjl < 0.0 {
            rj = -rj;
        }
        rjmu = rj;
        rymu = rjmu * gam;
        let rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }
    let scale = rjmu / rjl;
    let j = rjl1 * scale;
    for i in 1..=nl {
        let rytemp = (xmu + i as f64) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
    }
    Ok((j, rymu))
}

fn check_order(nu: f64) -> Result<()> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return domain(format!("Bessel order must be finite and >= 0, got {nu}"));
    }
    Ok(())
}

/// J_nu(x) and Y_nu(x) together, for nu >= 0 and x > 0.
pub fn bessel_jy(nu: f64, x: f64) -> Result<(f64, f64)> {
    check_order(nu)?;
    if !(x > 0.0) || !x.is_finite() {
        return domain(format!("Bessel argument must be finite and > 0, got {x}"));
    }
    if x >= asymptotic_threshold(nu) {
        if let Some(v) = asymptotic_jy(nu, x) {
            return Ok(v);
        }
    }
    steed_jy(nu, x)
}

/// Bessel function of the first kind, nu >= 0, x >= 0.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    check_order(nu)?;
    if x == 0.0 {
        return Ok(if nu == 0.0 { 1.0 } else { 0.0 });
    }
    Ok(bessel_jy(nu, x)?.0)
}

fn check_noninteger(nu: f64) -> Result<()> {
    if nu.fract() == 0.0 {
        return Err(Error::UnsupportedOrder(nu));
    }
    Ok(())
}

/// Bessel function of the second kind, non-integer nu > 0, x > 0.
pub fn bessel_y(nu: f64, x: f64) -> Result<f64> {
    check_noninteger(nu)?;
    Ok(bessel_jy(nu, x)?.1)
}

/// Hankel function of the first kind, J + iY, non-integer nu > 0, x > 0.
pub fn hankel1(nu: f64, x: f64) -> Result<Complex64> {
    check_noninteger(nu)?;
    let (j, y) = bessel_jy(nu, x)?;
    Ok(Complex64::new(j, y))
}
