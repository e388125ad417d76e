//! Hankel-type transforms on the log grid by product integration.
//!
//! With h the log-mapped input, int k(w + u) h(u) du with k(t) = e^t B(e^t)
//! is evaluated exactly for the Lagrange interpolant of h. The
//! weights are moments of k over grid cells: Gauss-Legendre for moderate
//! e^t, asymptotic integration by parts of the Hankel expansion beyond.

use std::collections::HashMap;
use std::f64::consts::{FRAC_2_PI, PI};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use super::grid::{log_map, log_unmap, LineFunction, LogRadialGrid, RadialFunction};
use super::lagrange::weight;
use super::lagrange::{piece_coefficients, HALF_WIDTH, POINTS};
use crate::error::{domain, Result};
use crate::quadrature::gl16;
use crate::specfun::{asymptotic_threshold, bessel_jy, hankel_coefficients, rgamma, sin_pi};

/// Bessel function in the transform kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselKind {
    J,
    H1,
}

/// How the discrete correlation is summed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    #[default]
    Fft,
    Direct,
}

const IBP_MIN_PHASE: f64 = 25.0;
const GL_PANEL_WIDTH: f64 = 6.0;

// int_{ta}^{ta+d} sigma^p e^t B(e^t) dt for p < POINTS
fn cell_moments(ta: f64, d: f64, order: f64, kind: BesselKind) -> Result<[Complex64; POINTS]> {
    let tb = ta + d;
    let xa = ta.exp();
    let xb = tb.exp();
    if xa * d >= IBP_MIN_PHASE && xa >= asymptotic_threshold(order) {
        let mut m = ibp_moments(xa, xb, d, order);
        if kind == BesselKind::J {
            for v in m.iter_mut() {
                *v = Complex64::new(v.re, 0.0);
            }
        }
        return Ok(m);
    }
    gl_moments(ta, d, order, kind)
}

fn gl_moments(ta: f64, d: f64, order: f64, kind: BesselKind) -> Result<[Complex64; POINTS]> {
    let xa = ta.exp();
    let xb = (ta + d).exp();
    let rule = gl16();
    let npan = ((xb - xa) / GL_PANEL_WIDTH).ceil().max(1.0) as usize;
    let h = d / npan as f64;
    let mut m = [Complex64::new(0.0, 0.0); POINTS];
    for k in 0..npan {
        let mid = ta + (k as f64 + 0.5) * h;
        for (z, w) in rule.0.iter().zip(&rule.1) {
            let t = mid + 0.5 * h * z;
            let x = t.exp();
            let (j, y) = bessel_jy(order, x)?;
            let b = match kind {
                BesselKind::J => Complex64::new(j, 0.0),
                BesselKind::H1 => Complex64::new(j, y),
            };
            let v = b * (x * 0.5 * h * w);
            let sigma = (t - ta) / d;
            let mut sp = 1.0;
            for mp in m.iter_mut() {
                *mp += v * sp;
                sp *= sigma;
            }
        }
    }
    Ok(m)
}

// Moments of H1 by integrating the Hankel expansion by parts:
// int A e^{ix} dx = sum_q -i i^q [A^(q) e^{ix}], A^(q) = x^(beta-q) R_q(sigma).
fn ibp_moments(xa: f64, xb: f64, d: f64, order: f64) -> [Complex64; POINTS] {
    let coeffs = hankel_coefficients(order, 24);
    let pref = Complex64::from_polar(FRAC_2_PI.sqrt(), -(0.5 * order + 0.25) * PI);
    let ea = Complex64::new(xa.cos(), xa.sin());
    let eb = Complex64::new(xb.cos(), xb.sin());
    let unit_i = Complex64::new(0.0, 1.0);
    let mut out = [Complex64::new(0.0, 0.0); POINTS];
    for (p, slot) in out.iter_mut().enumerate() {
        let mut total = Complex64::new(0.0, 0.0);
        let mut ik = Complex64::new(1.0, 0.0);
        for (k, &ak) in coeffs.iter().enumerate() {
            let scale = ak.abs() * xa.powi(-(k as i32));
            if k > 0 && scale < 1e-17 {
                break;
            }
            let beta = -(k as f64) - 0.5;
            let mut r = [0.0f64; POINTS];
            r[p] = 1.0;
            let mut sum_a = Complex64::new(0.0, 0.0);
            let mut sum_b = Complex64::new(0.0, 0.0);
            let mut fq = Complex64::new(0.0, -1.0);
            for q in 0..60 {
                let bq = beta - q as f64;
                let va = xa.powf(bq) * r[0];
                let vb = xb.powf(bq) * r.iter().sum::<f64>();
                sum_a += fq * va;
                sum_b += fq * vb;
                let bound = r.iter().map(|c| c.abs()).sum::<f64>() * xa.powf(bq);
                if bound < 1e-17 * xa.powf(beta) {
                    break;
                }
                let mut next = [0.0f64; POINTS];
                for (i, c) in r.iter().enumerate() {
                    next[i] += bq * c;
                    if i > 0 {
                        next[i - 1] += i as f64 * c / d;
                    }
                }
                r = next;
                fq *= unit_i;
            }
            total += ik * ak * (eb * sum_b - ea * sum_a);
            ik *= unit_i;
        }
        *slot = pref * total;
    }
    out
}

/// Correlation weights C_K and their spectrum for one kernel on one grid.
pub struct HankelKernel {
    grid: LogRadialGrid,
    order: f64,
    kind: BesselKind,
    coeffs: Vec<Complex64>,
    small_x: Vec<(Complex64, f64)>,
    spectrum: Vec<Complex64>,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for HankelKernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HankelKernel").field("order", &self.order).field("kind", &self.kind).finish()
    }
}

impl HankelKernel {
    pub fn new(grid: LogRadialGrid, order: f64, kind: BesselKind) -> Result<Self> {
        if !(order >= 0.0) || !order.is_finite() {
            return domain(format!("transform order must be >= 0, got {order}"));
        }
        let n = grid.len();
        let d = grid.delta();
        let t0 = 2.0 * grid.u_min() - HALF_WIDTH as f64 * d;
        let cells: Vec<[Complex64; POINTS]> = (0..2 * n + POINTS - 2)
            .into_par_iter()
            .map(|c| cell_moments(t0 + c as f64 * d, d, order, kind))
            .collect::<Result<_>>()?;
        let pc = piece_coefficients();
        let coeffs: Vec<Complex64> = (0..2 * n - 1)
            .map(|k| {
                let mut s = Complex64::new(0.0, 0.0);
                for (j, row) in pc.iter().enumerate() {
                    let cm = &cells[k + j];
                    for (p, c) in row.iter().enumerate() {
                        s += cm[p] * *c;
                    }
                }
                s
            })
            .collect();
        let small_x = small_argument_terms(order, kind);
        let size = 4 * n;
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(size);
        let ifft = planner.plan_fft_inverse(size);
        let mut spectrum = vec![Complex64::new(0.0, 0.0); size];
        spectrum[..coeffs.len()].copy_from_slice(&coeffs);
        fft.process(&mut spectrum);
        Ok(Self { grid, order, kind, coeffs, small_x, spectrum, fft, ifft })
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn kind(&self) -> BesselKind {
        self.kind
    }

    /// Weights C_K, K = 0..2n-1, for kernel argument t_K = 2 u_min + K delta.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// H_j = sum_p C_{j+p} h_p, with h continued below the grid by `tail`.
    pub fn apply(&self, h: &LineFunction, how: Summation, tail: TailModel) -> Result<LineFunction> {
        self.grid.ensure_same(&h.grid)?;
        let n = self.grid.len();
        let mut values: Vec<Complex64> = match how {
            Summation::Direct => (0..n)
                .into_par_iter()
                .map(|j| h.values.iter().enumerate().map(|(p, v)| self.coeffs[j + p] * v).sum())
                .collect(),
            Summation::Fft => {
                let size = 4 * n;
                let mut buf = vec![Complex64::new(0.0, 0.0); size];
                for (q, v) in h.values.iter().rev().enumerate() {
                    buf[q] = *v;
                }
                self.fft.process(&mut buf);
                for (b, s) in buf.iter_mut().zip(&self.spectrum) {
                    *b *= s;
                }
                self.ifft.process(&mut buf);
                let inv = 1.0 / size as f64;
                buf[n - 1..2 * n - 1].iter().map(|v| v * inv).collect()
            }
        };
        if let Some(rate) = tail.rate(h) {
            if let Some(mut tau) = self.tail_weight(rate) {
                let decay = (-rate * self.grid.delta()).exp();
                let h0 = h.values[0];
                for (j, v) in values.iter_mut().enumerate() {
                    *v += h0 * tau;
                    tau = (tau + self.coeffs[j]) * decay;
                }
            }
        }
        Ok(LineFunction { grid: self.grid, values })
    }

    // sum_{q >= 1} e^{-a q Delta} C_{-q}, from the small-argument form of the kernel
    fn tail_weight(&self, rate: f64) -> Option<Complex64> {
        if self.small_x.is_empty() {
            return None;
        }
        let d = self.grid.delta();
        let t0 = 2.0 * self.grid.u_min();
        let mut acc = Complex64::new(0.0, 0.0);
        for &(amp, b) in &self.small_x {
            if rate + b <= 0.0 {
                return None;
            }
            acc += amp * (d * lagrange_exp_moment(b * d) * (b * t0).exp() / ((rate + b) * d).exp_m1());
        }
        Some(acc)
    }
}

// k(t) = sum A e^{b t} for e^t -> 0; empty when the form has log terms
fn small_argument_terms(order: f64, kind: BesselKind) -> Vec<(Complex64, f64)> {
    let a_j = 2f64.powf(-order) * rgamma(order + 1.0);
    match kind {
        BesselKind::J => vec![(Complex64::new(a_j, 0.0), 1.0 + order)],
        BesselKind::H1 => {
            let sn = sin_pi(order);
            if sn == 0.0 {
                return Vec::new();
            }
            let cs = sin_pi(order + 0.5);
            vec![
                (Complex64::new(a_j, a_j * cs / sn), 1.0 + order),
                (Complex64::new(0.0, -(2f64.powf(order)) * rgamma(1.0 - order) / sn), 1.0 - order),
            ]
        }
    }
}

// int Lambda(s) e^{c s} ds
fn lagrange_exp_moment(c: f64) -> f64 {
    let rule = gl16();
    let mut acc = 0.0;
    let hw = HALF_WIDTH as i32;
    for lo in -hw..hw {
        let mid = lo as f64 + 0.5;
        for (z, w) in rule.0.iter().zip(&rule.1) {
            let s = mid + 0.5 * z;
            acc += weight(s) * (c * s).exp() * 0.5 * w;
        }
    }
    acc
}

/// Continuation of a log-mapped input below u_min.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum TailModel {
    /// Zero below the grid.
    Off,
    /// h(u) = h(u_min) e^{a (u - u_min)} with a fitted from the first samples.
    #[default]
    Auto,
    /// As `Auto` with a given rate a > 0.
    Rate(f64),
}

impl TailModel {
    fn rate(self, h: &LineFunction) -> Option<f64> {
        match self {
            TailModel::Off => None,
            TailModel::Rate(a) => (a > 0.0).then_some(a),
            TailModel::Auto => fit_tail_rate(h),
        }
    }
}

// a with h_{j+1} / h_j = e^{a Delta} for j = 0, 1, 2 within 1e-6
fn fit_tail_rate(h: &LineFunction) -> Option<f64> {
    let v = &h.values;
    if v.len() < 4 || v[0].norm() == 0.0 {
        return None;
    }
    let ratios: Vec<Complex64> = (0..3).map(|j| v[j + 1] / v[j]).collect();
    let r = ratios[0];
    if !r.is_finite() || ratios.iter().any(|q| (q - r).norm() > 1e-6 * r.norm()) || r.im.abs() > 1e-9 * r.re.abs() {
        return None;
    }
    let a = r.re.ln() / h.grid.delta();
    (a > 0.0).then_some(a)
}

type KernelKey = (u64, u64, usize, u64, BesselKind);

fn kernel_cache() -> &'static Mutex<HashMap<KernelKey, Arc<HankelKernel>>> {
    static CACHE: OnceLock<Mutex<HashMap<KernelKey, Arc<HankelKernel>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared kernel for (grid, order, kind), built on first use.
pub fn hankel_kernel(grid: LogRadialGrid, order: f64, kind: BesselKind) -> Result<Arc<HankelKernel>> {
    let key = (grid.u_min().to_bits(), grid.u_max().to_bits(), grid.len(), order.to_bits(), kind);
    if let Some(k) = kernel_cache().lock().unwrap().get(&key) {
        return Ok(k.clone());
    }
    let k = Arc::new(HankelKernel::new(grid, order, kind)?);
    kernel_cache().lock().unwrap().insert(key, k.clone());
    Ok(k)
}

fn i_pow(m: i64) -> Complex64 {
    match m.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Channel Fourier-Bessel transform F_m g(k) = (-i)^|m| int_0^inf r J_|m|(k r) g(r) dr,
/// or its inverse F_m^* (which is F_m with the phase conjugated).
pub fn hankel_transform(g: &RadialFunction, m: i64, inverse: bool) -> Result<RadialFunction> {
    hankel_transform_with(g, m, inverse, Summation::Fft)
}

pub fn hankel_transform_with(g: &RadialFunction, m: i64, inverse: bool, how: Summation) -> Result<RadialFunction> {
    let order = m.unsigned_abs() as f64;
    let kernel = hankel_kernel(g.grid, order, BesselKind::J)?;
    let phase = if inverse { i_pow(m.abs()) } else { i_pow(-m.abs()) };
    let h = kernel.apply(&log_map(g), how, TailModel::Auto)?;
    Ok(log_unmap(&h.scale(phase)))
}

/// Options for [`generalized_inverse_hankel`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseOptions {
    /// Relative end magnitude of the log-mapped input above which truncation is flagged.
    pub tail_tolerance: f64,
    /// Abel damping e^{-eps k}: evaluate at eps and eps/2 and extrapolate linearly to 0.
    pub damping: Option<f64>,
    pub summation: Summation,
    pub tail: TailModel,
}

impl Default for InverseOptions {
    fn default() -> Self {
        Self { tail_tolerance: 1e-4, damping: None, summation: Summation::Fft, tail: TailModel::Auto }
    }
}

/// Truncation diagnostics of the input at the two ends of the k grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    pub low_end: f64,
    pub high_end: f64,
    pub flagged: bool,
}

/// prefactor * int_0^inf k B_order(k r) G(k) dk with B = J or H1.
pub fn generalized_inverse_hankel(
    big_g: &RadialFunction,
    order: f64,
    prefactor: Complex64,
    kind: BesselKind,
    opts: InverseOptions,
) -> Result<(RadialFunction, TruncationReport)> {
    let kernel = hankel_kernel(big_g.grid, order, kind)?;
    let h = log_map(big_g);
    let peak = h.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let n = h.values.len();
    let report = if peak > 0.0 {
        let low_end = h.values[0].norm() / peak;
        let high_end = h.values[n - 1].norm() / peak;
        TruncationReport { low_end, high_end, flagged: low_end > opts.tail_tolerance || high_end > opts.tail_tolerance }
    } else {
        TruncationReport { low_end: 0.0, high_end: 0.0, flagged: false }
    };
    let out = match opts.damping {
        None => kernel.apply(&h, opts.summation, opts.tail)?,
        Some(eps) => {
            let damped = |e: f64| {
                let vals = h.values.iter().enumerate().map(|(j, v)| v * (-e * h.grid.r(j)).exp()).collect();
                kernel.apply(&LineFunction { grid: h.grid, values: vals }, opts.summation, opts.tail)
            };
            let a = damped(eps)?;
            let b = damped(0.5 * eps)?;
            b.scale(Complex64::new(2.0, 0.0)).sub(&a)?
        }
    };
    Ok((log_unmap(&out.scale(prefactor)), report))
}
