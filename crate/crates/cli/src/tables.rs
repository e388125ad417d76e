//! CSV tables for `symbols`, `apply` and the `kernel` dump.

use std::fmt::Write;

use abwave::corpus::LogBump;
use abwave::kernels::{kernel_hj, kernel_jj, KernelKind};
use abwave::pairing::{damped_oracle, smeared_pairing, OracleOptions, SWindow};
use abwave::specfun::Branch;
use abwave::symbols::{phi_ab, phi_tilde, Sign};
use abwave::transforms::{LogRadialGrid, RadialFunction};
use abwave::waveop::{wave_ab_mellin, wave_ab_spectral, wave_ab_stationary};
use abwave::Complex64;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::output::{num, sig17, sig17_opt};

/// `n` equispaced points on [x0, x1]; a single point at x0 when n = 1.
pub fn linspace(x0: f64, x1: f64, n: usize) -> CliResult<Vec<f64>> {
    if n == 0 || !(x0.is_finite() && x1.is_finite()) || (n > 1 && x1 <= x0) {
        return Err(CliError::Usage(format!("need n >= 1 and x0 < x1, got [{x0}, {x1}] with n = {n}")));
    }
    if n == 1 {
        return Ok(vec![x0]);
    }
    let dx = (x1 - x0) / (n - 1) as f64;
    Ok((0..n).map(|j| x0 + j as f64 * dx).collect())
}

/// phi(x) table; `tilde` selects phi~_m (channels 0 and -1 only).
pub fn symbols_csv(m: i64, alpha: f64, sign: Sign, tilde: Option<Branch>, xs: &[f64]) -> CliResult<String> {
    let phi = match tilde {
        None => phi_ab(m, alpha, sign)?,
        Some(branch) => phi_tilde(m, alpha, branch)?,
    };
    let mut out = String::from("x,re_phi,im_phi,abs_phi\n");
    for &x in xs {
        let v = phi.eval(x);
        writeln!(out, "{},{},{},{}", num(x), num(v.re), num(v.im), num(v.norm())).unwrap();
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Route {
    Stationary,
    Spectral,
    Mellin,
}

/// Omega g on the grid by the chosen route.
pub fn apply_route(route: Route, m: i64, alpha: f64, sign: Sign, g: &RadialFunction) -> CliResult<RadialFunction> {
    Ok(match route {
        Route::Stationary => wave_ab_stationary(m, alpha, sign, g)?,
        Route::Spectral => wave_ab_spectral(m, alpha, sign, g)?,
        Route::Mellin => wave_ab_mellin(m, alpha, sign, g)?,
    })
}

/// amplitude times the log bump, sampled on the grid.
pub fn sample_bump(bump: &LogBump, amplitude: f64, grid: LogRadialGrid) -> CliResult<RadialFunction> {
    if !bump.fits(&grid) {
        let (a, b) = bump.support();
        return Err(CliError::Usage(format!("bump support [{a}, {b}] does not fit the grid with a unit margin")));
    }
    Ok(bump.sample(grid).scale(Complex64::new(amplitude, 0.0)))
}

pub fn function_csv(f: &RadialFunction) -> String {
    let mut out = String::from("r,re,im\n");
    for (j, v) in f.values.iter().enumerate() {
        writeln!(out, "{},{},{}", num(f.grid.r(j)), num(v.re), num(v.im)).unwrap();
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelDump {
    pub kind: &'static str,
    #[serde(serialize_with = "sig17")]
    pub mu: f64,
    #[serde(serialize_with = "sig17")]
    pub nu: f64,
    pub branch: &'static str,
    #[serde(serialize_with = "sig17")]
    pub window_a: f64,
    #[serde(serialize_with = "sig17")]
    pub window_b: f64,
    #[serde(serialize_with = "sig17")]
    pub re_c_delta: f64,
    #[serde(serialize_with = "sig17")]
    pub im_c_delta: f64,
    #[serde(serialize_with = "sig17")]
    pub re_c_pv: f64,
    #[serde(serialize_with = "sig17")]
    pub im_c_pv: f64,
    #[serde(serialize_with = "sig17")]
    pub re_pairing: f64,
    #[serde(serialize_with = "sig17")]
    pub im_pairing: f64,
    #[serde(serialize_with = "sig17_opt", skip_serializing_if = "Option::is_none")]
    pub re_oracle: Option<f64>,
    #[serde(serialize_with = "sig17_opt", skip_serializing_if = "Option::is_none")]
    pub im_oracle: Option<f64>,
    #[serde(serialize_with = "sig17_opt", skip_serializing_if = "Option::is_none")]
    pub rel_err: Option<f64>,
}

/// Smeared pairing of a kernel with the window bump, optionally against the oracle,
/// plus a pointwise table s, re_k, im_k of the non-delta part (s = 1 skipped).
pub fn kernel_dump(
    kind: KernelKind,
    mu: f64,
    nu: f64,
    branch: Branch,
    win: SWindow,
    oracle: bool,
    n: usize,
) -> CliResult<(KernelDump, String)> {
    let k = match kind {
        KernelKind::BesselJ => kernel_jj(mu, nu)?,
        KernelKind::Hankel => kernel_hj(mu, nu, branch)?,
    };
    let pairing = smeared_pairing(&k, win)?;
    let (o, rel_err) = if oracle {
        let o = damped_oracle(kind, mu, nu, win, OracleOptions::default())?;
        (Some(o), Some((pairing - o).norm() / o.norm()))
    } else {
        (None, None)
    };
    let mut table = String::from("s,re_k,im_k\n");
    for s in linspace(win.a, win.b, n)? {
        if (s - 1.0).abs() <= 1e-12 {
            continue;
        }
        let v = k.c_pv / (1.0 - s * s) + k.eval_regular(s)?;
        writeln!(table, "{},{},{}", num(s), num(v.re), num(v.im)).unwrap();
    }
    let dump = KernelDump {
        kind: if kind == KernelKind::BesselJ { "jj" } else { "hj" },
        mu,
        nu,
        branch: match (kind, branch) {
            (KernelKind::BesselJ, _) => "none",
            (_, Branch::Upper) => "upper",
            (_, Branch::Lower) => "lower",
        },
        window_a: win.a,
        window_b: win.b,
        re_c_delta: k.c_delta.re,
        im_c_delta: k.c_delta.im,
        re_c_pv: k.c_pv.re,
        im_c_pv: k.c_pv.im,
        re_pairing: pairing.re,
        im_pairing: pairing.im,
        re_oracle: o.map(|c| c.re),
        im_oracle: o.map(|c| c.im),
        rel_err,
    };
    Ok((dump, table))
}
