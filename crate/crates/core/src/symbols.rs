//! Spectral symbols of the wave operators as functions of the dilation generator.
//!
//! Fourier convention: phi(x) = (2 pi)^-1/2 int phi_check(y) e^{-i x y} dy.
//! Each symbol is a constant, plus a multiple of tanh(pi x / 2), plus the
//! transform of a locally integrable kernel with a log singularity at y = 0.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::kernels::{kernel_hj, kernel_jj, RegularPart};
use crate::quadrature::{gl16, push_panel, tanh_sinh_left};
use crate::specfun::Branch;

const SQRT_2PI: f64 = 2.506_628_274_631_000_7;
/// Default frequency band resolved by the quadrature of the kernel transform.
pub const DEFAULT_BANDWIDTH: f64 = 400.0;

/// Magnetic flux alpha, restricted to (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FluxParameter(f64);

impl FluxParameter {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return domain(format!("flux must lie in (0, 1), got {alpha}"));
        }
        Ok(Self(alpha))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Angular momentum channel m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChannelIndex(pub i64);

impl ChannelIndex {
    pub fn value(self) -> i64 {
        self.0
    }

    /// The two channels where the self-adjoint extensions differ.
    pub fn is_singular(self) -> bool {
        self.0 == 0 || self.0 == -1
    }
}

/// Which wave operator: `Plus` for Omega_+, `Minus` for Omega_-.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// +1 for Plus, -1 for Minus: Omega_pm carries e^{-/+ i delta}.
    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// delta_m = pi (|m| - |m + alpha|) / 2, the phase shift of channel m.
pub fn delta_phase(m: i64, alpha: f64) -> f64 {
    0.5 * PI * ((m as f64).abs() - (m as f64 + alpha).abs())
}

/// Regular (log-singular) kernel on the line, y -> scale * s K_reg(s) with s = e^{orient y}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckKernel {
    scale: Complex64,
    regular: RegularPart,
    orient: f64,
    log_coeff: Complex64,
    decay: (f64, f64),
}

impl CheckKernel {
    /// Kernel value at y != 0.
    pub fn eval(&self, y: f64) -> Result<Complex64> {
        Ok(self.scale * self.regular.eval_mellin(self.orient * y)?)
    }

    /// Coefficient L with kernel(y) = L ln|y| + O(1) near y = 0.
    pub fn log_coefficient(&self) -> Complex64 {
        self.log_coeff
    }

    /// Exponential decay rates (as y -> -inf, as y -> +inf).
    pub fn decay_rates(&self) -> (f64, f64) {
        self.decay
    }

    pub fn with_scale(&self, c: Complex64) -> Self {
        Self { scale: self.scale * c, log_coeff: self.log_coeff * c, ..*self }
    }
}

fn ab_kernel_unphased(m: i64, alpha: f64) -> Result<CheckKernel> {
    let alpha = FluxParameter::new(alpha)?.value();
    let mu = (m as f64).abs();
    let nu = (m as f64 + alpha).abs();
    let k = kernel_jj(mu, nu)?;
    let scale = Complex64::new(SQRT_2PI, 0.0);
    Ok(CheckKernel {
        scale,
        regular: k.regular,
        orient: -1.0,
        log_coeff: scale * k.log_coefficient(),
        decay: (1.0, 1.0),
    })
}

/// Regular part of the kernel of phi_m^pm (the channel wave operator symbol).
pub fn phi_check3(m: i64, alpha: f64, sign: Sign) -> Result<CheckKernel> {
    let k = ab_kernel_unphased(m, alpha)?;
    let d = delta_phase(m, alpha);
    Ok(k.with_scale(Complex64::from_polar(1.0, -sign.as_f64() * d)))
}

/// Regular part of the kernel of phi~_m (the T_m symbol), m in {0, -1}.
pub fn phi_tilde_check3(m: i64, alpha: f64, branch: Branch) -> Result<CheckKernel> {
    let alpha = FluxParameter::new(alpha)?.value();
    if m != 0 && m != -1 {
        return Err(Error::UnsupportedChannel(format!("T_m symbol is defined for m in {{0, -1}}, got {m}")));
    }
    let mu = (m as f64 + alpha).abs();
    let nu = (m as f64).abs();
    let k = kernel_hj(mu, nu, branch)?;
    let d = delta_phase(m, alpha);
    let scale = Complex64::from_polar(0.5 * SQRT_2PI, -d);
    Ok(CheckKernel {
        scale,
        regular: k.regular,
        orient: 1.0,
        log_coeff: scale * k.log_coefficient(),
        decay: (1.0 - mu, 1.0),
    })
}

/// Quadrature representation of phi(x) = (2 pi)^-1/2 int k(y) e^{-ixy} dy.
#[derive(Debug, Clone)]
pub struct FourierCorrection {
    nodes: Vec<f64>,
    vals: Vec<Complex64>,
    bandwidth: f64,
    kernel: CheckKernel,
}

// extent where the kernel magnitude and its tail mass fall below ~1e-17
fn extent(kernel: &CheckKernel, side: f64, rate: f64) -> Result<f64> {
    let mut y: f64 = 4.0;
    loop {
        let v = kernel.eval(side * y)?.norm();
        if v < 1e-18 && v / rate.max(1e-3) < 1e-17 {
            return Ok(y);
        }
        if y > 5000.0 {
            return Ok(y);
        }
        y *= 1.15;
    }
}

impl FourierCorrection {
    pub fn build(kernel: CheckKernel, bandwidth: f64) -> Result<Self> {
        if !(bandwidth > 0.0) {
            return domain("bandwidth must be positive");
        }
        let hp = f64::min(0.5, 16.0 / bandwidth);
        let eps0 = f64::min(1.0 / 1024.0, 0.5 * hp);
        let rule = gl16();
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for side in [-1.0, 1.0] {
            let rate = if side < 0.0 { kernel.decay.0 } else { kernel.decay.1 };
            let ymax = extent(&kernel, side, rate)?;
            let mut local = tanh_sinh_left(eps0, 5);
            let mut a = eps0;
            while a < hp && 2.0 * a < ymax {
                push_panel(rule, a, 2.0 * a, &mut local);
                a *= 2.0;
            }
            let npan = ((ymax - a) / hp).ceil().max(1.0) as usize;
            let w = (ymax - a) / npan as f64;
            for i in 0..npan {
                let lo = a + i as f64 * w;
                push_panel(rule, lo, lo + w, &mut local);
            }
            pts.extend(local.into_iter().map(|(y, wt)| (side * y, wt)));
        }
        let inv = 1.0 / SQRT_2PI;
        let mut nodes = Vec::with_capacity(pts.len());
        let mut vals = Vec::with_capacity(pts.len());
        for (y, wt) in pts {
            let v = kernel.eval(y)?;
            if v.norm() * wt > 0.0 {
                nodes.push(y);
                vals.push(v * (wt * inv));
            }
        }
        Ok(Self { nodes, vals, bandwidth, kernel })
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// (2 pi)^-1/2 int |k|, a bound on sup |phi|.
    pub fn l1_bound(&self) -> f64 {
        self.vals.iter().map(|v| v.norm()).sum()
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        if x.abs() > self.bandwidth {
            if let Ok(fine) = FourierCorrection::build(self.kernel, 1.25 * x.abs()) {
                return fine.eval(x);
            }
        }
        self.nodes.iter().zip(&self.vals).map(|(&y, &v)| v * Complex64::from_polar(1.0, -x * y)).sum()
    }

    /// Values at x0 + k dx, k = 0..count.
    pub fn eval_uniform(&self, x0: f64, dx: f64, count: usize) -> Vec<Complex64> {
        const CHUNK: usize = 128;
        let steps: Vec<Complex64> = self.nodes.iter().map(|&y| Complex64::from_polar(1.0, -dx * y)).collect();
        let starts: Vec<usize> = (0..count).step_by(CHUNK).collect();
        let parts: Vec<Vec<Complex64>> = starts
            .par_iter()
            .map(|&k0| {
                let k1 = (k0 + CHUNK).min(count);
                let x = x0 + k0 as f64 * dx;
                let mut cur: Vec<Complex64> =
                    self.nodes.iter().zip(&self.vals).map(|(&y, &v)| v * Complex64::from_polar(1.0, -x * y)).collect();
                let mut out = Vec::with_capacity(k1 - k0);
                for _ in k0..k1 {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (c, s) in cur.iter_mut().zip(&steps) {
                        acc += *c;
                        *c *= *s;
                    }
                    out.push(acc);
                }
                out
            })
            .collect();
        parts.into_iter().flatten().collect()
    }
}

type CorrectionKey = (u8, i64, u64, u8, u64);

fn correction_cache() -> &'static Mutex<HashMap<CorrectionKey, Arc<FourierCorrection>>> {
    static CACHE: OnceLock<Mutex<HashMap<CorrectionKey, Arc<FourierCorrection>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_correction(key: CorrectionKey, kernel: CheckKernel, bandwidth: f64) -> Result<Arc<FourierCorrection>> {
    if let Some(c) = correction_cache().lock().unwrap().get(&key) {
        return Ok(c.clone());
    }
    let c = Arc::new(FourierCorrection::build(kernel, bandwidth)?);
    correction_cache().lock().unwrap().insert(key, c.clone());
    Ok(c)
}

type SymbolFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

#[derive(Clone)]
enum Form {
    Decomposed { constant: Complex64, tanh_coeff: Complex64, scale: Complex64, correction: Arc<FourierCorrection> },
    Function(SymbolFn),
}

/// A bounded continuous function on the extended real line.
#[derive(Clone)]
pub struct SpectralSymbol {
    form: Form,
    limit_minus: Complex64,
    limit_plus: Complex64,
    sup_bound: f64,
    decay_rate: Option<f64>,
    key: Option<String>,
}

impl std::fmt::Debug for SpectralSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralSymbol")
            .field("key", &self.key)
            .field("limit_minus", &self.limit_minus)
            .field("limit_plus", &self.limit_plus)
            .field("sup_bound", &self.sup_bound)
            .finish()
    }
}

impl SpectralSymbol {
    /// Symbol given by a closure, with its limits and a bound on its modulus.
    pub fn from_fn<F>(f: F, limit_minus: Complex64, limit_plus: Complex64, sup_bound: f64) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self { form: Form::Function(Arc::new(f)), limit_minus, limit_plus, sup_bound, decay_rate: None, key: None }
    }

    /// The constant symbol c.
    pub fn constant(c: Complex64) -> Self {
        Self::from_fn(move |_| c, c, c, c.norm())
    }

    /// tanh(pi x / 2).
    pub fn tanh() -> Self {
        Self::from_fn(|x| Complex64::new((0.5 * PI * x).tanh(), 0.0), (-1.0).into(), 1.0.into(), 1.0)
    }

    /// e^{i tau x}: the symbol of the dilation by e^tau. No limits at infinity;
    /// the recorded limits are placeholders.
    pub fn dilation(tau: f64) -> Self {
        Self::from_fn(move |x| Complex64::from_polar(1.0, tau * x), 0.0.into(), 0.0.into(), 1.0)
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        match &self.form {
            Form::Function(f) => f(x),
            Form::Decomposed { constant, tanh_coeff, scale, correction } => {
                *constant + *tanh_coeff * (0.5 * PI * x).tanh() + *scale * correction.eval(x)
            }
        }
    }

    /// Values at x0 + k dx for k = 0..count.
    pub fn eval_uniform(&self, x0: f64, dx: f64, count: usize) -> Vec<Complex64> {
        match &self.form {
            Form::Function(f) => (0..count).map(|k| f(x0 + k as f64 * dx)).collect(),
            Form::Decomposed { constant, tanh_coeff, scale, correction } => correction
                .eval_uniform(x0, dx, count)
                .into_iter()
                .enumerate()
                .map(|(k, v)| {
                    let x = x0 + k as f64 * dx;
                    *constant + *tanh_coeff * (0.5 * PI * x).tanh() + *scale * v
                })
                .collect(),
        }
    }

    /// Smooth part only (constant + tanh term), for extending tables past the band.
    pub fn eval_smooth(&self, x: f64) -> Complex64 {
        match &self.form {
            Form::Function(f) => f(x),
            Form::Decomposed { constant, tanh_coeff, .. } => *constant + *tanh_coeff * (0.5 * PI * x).tanh(),
        }
    }

    pub fn limit_minus_inf(&self) -> Complex64 {
        self.limit_minus
    }

    pub fn limit_plus_inf(&self) -> Complex64 {
        self.limit_plus
    }

    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    /// Band on which the kernel transform is resolved; None for closed-form symbols.
    pub fn bandwidth(&self) -> Option<f64> {
        match &self.form {
            Form::Function(_) => None,
            Form::Decomposed { correction, .. } => Some(correction.bandwidth()),
        }
    }

    /// Slowest exponential decay rate of the kernel, if known.
    pub fn kernel_decay_rate(&self) -> Option<f64> {
        self.decay_rate
    }

    /// Identity used to cache tabulations.
    pub fn key(&self) -> Option<&str> {
        self.key.as_deref()
    }

    /// sup |phi_3| bound from the L1 norm of its kernel.
    pub fn correction_l1_bound(&self) -> Option<f64> {
        match &self.form {
            Form::Function(_) => None,
            Form::Decomposed { correction, scale, .. } => Some(scale.norm() * correction.l1_bound()),
        }
    }

    /// Only the transformed kernel part phi_3.
    pub fn correction_only(&self) -> Option<SpectralSymbol> {
        match &self.form {
            Form::Function(_) => None,
            Form::Decomposed { scale, correction, .. } => Some(SpectralSymbol {
                form: Form::Decomposed {
                    constant: 0.0.into(),
                    tanh_coeff: 0.0.into(),
                    scale: *scale,
                    correction: correction.clone(),
                },
                limit_minus: 0.0.into(),
                limit_plus: 0.0.into(),
                sup_bound: self.correction_l1_bound().unwrap_or(f64::INFINITY),
                decay_rate: self.decay_rate,
                key: self.key.as_ref().map(|k| format!("{k}/corr")),
            }),
        }
    }
}

/// Options for building the kernel-based symbols.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolOptions {
    pub bandwidth: f64,
}

impl Default for SymbolOptions {
    fn default() -> Self {
        Self { bandwidth: DEFAULT_BANDWIDTH }
    }
}

/// phi_m^pm: Omega_pm restricted to channel m equals phi_m^pm(A).
pub fn phi_ab(m: i64, alpha: f64, sign: Sign) -> Result<SpectralSymbol> {
    phi_ab_with(m, alpha, sign, SymbolOptions::default())
}

pub fn phi_ab_with(m: i64, alpha: f64, sign: Sign, opts: SymbolOptions) -> Result<SpectralSymbol> {
    let kernel = ab_kernel_unphased(m, alpha)?;
    let d = delta_phase(m, alpha);
    let phase = Complex64::from_polar(1.0, -sign.as_f64() * d);
    let key = (0u8, m, alpha.to_bits(), 0u8, opts.bandwidth.to_bits());
    let correction = cached_correction(key, kernel, opts.bandwidth)?;
    let constant = phase * d.cos();
    let tanh_coeff = phase * Complex64::new(0.0, d.sin());
    let limit_plus_minus = Complex64::from_polar(1.0, -2.0 * sign.as_f64() * d);
    let (limit_minus, limit_plus) = match sign {
        Sign::Plus => (limit_plus_minus, Complex64::new(1.0, 0.0)),
        Sign::Minus => (Complex64::new(1.0, 0.0), limit_plus_minus),
    };
    Ok(SpectralSymbol {
        form: Form::Decomposed { constant, tanh_coeff, scale: phase, correction },
        limit_minus,
        limit_plus,
        // unimodular
        sup_bound: 1.0,
        decay_rate: Some(kernel.decay.0.min(kernel.decay.1)),
        key: Some(format!("ab:{m}:{:x}:{:?}:{:x}", alpha.to_bits(), sign, opts.bandwidth.to_bits())),
    })
}

/// phi~_m: T_m = phi~_m(A) for m in {0, -1}.
pub fn phi_tilde(m: i64, alpha: f64, branch: Branch) -> Result<SpectralSymbol> {
    phi_tilde_with(m, alpha, branch, SymbolOptions { bandwidth: 100.0 })
}

pub fn phi_tilde_with(m: i64, alpha: f64, branch: Branch, opts: SymbolOptions) -> Result<SpectralSymbol> {
    let kernel = phi_tilde_check3(m, alpha, branch)?;
    let bkey = match branch {
        Branch::Upper => 0u8,
        Branch::Lower => 1u8,
    };
    let key = (1u8, m, alpha.to_bits(), bkey, opts.bandwidth.to_bits());
    let correction = cached_correction(key, kernel, opts.bandwidth)?;
    let half = Complex64::new(0.5, 0.0);
    let form = Form::Decomposed { constant: half, tanh_coeff: half, scale: Complex64::new(1.0, 0.0), correction };
    let mut sym = SpectralSymbol {
        form,
        limit_minus: Complex64::new(0.0, 0.0),
        limit_plus: Complex64::new(1.0, 0.0),
        sup_bound: 1.0,
        decay_rate: Some(kernel.decay.0.min(kernel.decay.1)),
        key: Some(format!("tilde:{m}:{:x}:{bkey}:{:x}", alpha.to_bits(), opts.bandwidth.to_bits())),
    };
    sym.sup_bound = sampled_sup(&sym);
    Ok(sym)
}

// max |phi| on x in [-50, 50], step 0.01, with a margin for between-sample overshoot
fn sampled_sup(phi: &SpectralSymbol) -> f64 {
    let vals = phi.eval_uniform(-50.0, 0.01, 10_001);
    let m = vals.iter().map(|v| v.norm()).fold(1.0, f64::max);
    m * (1.0 + 1e-3)
}
