//! The Mellin-convolution form of phi(A): in u = ln r,
//! (phi(A) h)(u) = c_delta h(u) + c_pv Pv int h(v) / sinh(u - v) dv
//!               + (2 pi)^-1/2 int k(u - v) h(v) dv.
//!
//! Both integrals are taken against the Lagrange interpolant of h,
//! so the principal value is exact for the interpolant.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::grid::{log_map, log_unmap, LineFunction, LogRadialGrid, RadialFunction};
use super::lagrange::{weight, HALF_WIDTH};
use crate::error::Result;
use crate::quadrature::{gl16, tanh_sinh_left};
use crate::specfun::Branch;
use crate::symbols::{delta_phase, phi_check3, phi_tilde_check3, CheckKernel, Sign};

const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Delta, principal-value and regular parts of a kernel on the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinKernel {
    pub c_delta: Complex64,
    pub c_pv: Complex64,
    pub regular: Option<CheckKernel>,
}

impl MellinKernel {
    /// c_delta times the identity.
    pub fn delta(c: Complex64) -> Self {
        Self { c_delta: c, c_pv: Complex64::new(0.0, 0.0), regular: None }
    }

    /// c Pv(1/sinh); c = i/pi has the symbol tanh(pi x / 2).
    pub fn pv_sinh(c: Complex64) -> Self {
        Self { c_delta: Complex64::new(0.0, 0.0), c_pv: c, regular: None }
    }

    /// Kernel of phi_m^pm.
    pub fn phi_ab(m: i64, alpha: f64, sign: Sign) -> Result<Self> {
        let regular = phi_check3(m, alpha, sign)?;
        let d = delta_phase(m, alpha);
        let ph = Complex64::from_polar(1.0, -sign.as_f64() * d);
        Ok(Self { c_delta: ph * d.cos(), c_pv: -ph * (d.sin() / std::f64::consts::PI), regular: Some(regular) })
    }

    /// Kernel of phi~_m, m in {0, -1}.
    pub fn phi_tilde(m: i64, alpha: f64, branch: Branch) -> Result<Self> {
        let regular = phi_tilde_check3(m, alpha, branch)?;
        Ok(Self {
            c_delta: Complex64::new(0.5, 0.0),
            c_pv: Complex64::new(0.0, 0.5 / std::f64::consts::PI),
            regular: Some(regular),
        })
    }
}

// W_k = Delta int Lambda(s) f((k - s) Delta) ds, f singular at 0 (log type)
fn regular_weight(kernel: &CheckKernel, k: i64, d: f64) -> Result<Complex64> {
    let rule = gl16();
    let mut acc = Complex64::new(0.0, 0.0);
    let hw = HALF_WIDTH as i64;
    for lo in -hw..hw {
        let hi = lo + 1;
        if lo == k || hi == k {
            // distance from the singular knot
            let toward = if lo == k { 1.0 } else { -1.0 };
            for (dist, w) in tanh_sinh_left(1.0, 6) {
                let s = k as f64 + toward * dist;
                acc += kernel.eval(-toward * dist * d)? * (weight(s) * w);
            }
        } else {
            let mid = 0.5 * (lo + hi) as f64;
            for (z, w) in rule.0.iter().zip(&rule.1) {
                let s = mid + 0.5 * z;
                acc += kernel.eval((k as f64 - s) * d)? * (weight(s) * 0.5 * w);
            }
        }
    }
    Ok(acc * d)
}

// Delta int Lambda(s) / sinh((k - s) Delta) ds; Lambda vanishes at s = k != 0
fn pv_weight(k: i64, d: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let rule = gl16();
    let hw = HALF_WIDTH as i64;
    let mut acc = 0.0;
    for lo in -hw..hw {
        let mid = lo as f64 + 0.5;
        for (z, w) in rule.0.iter().zip(&rule.1) {
            let s = mid + 0.5 * z;
            acc += weight(s) / ((k as f64 - s) * d).sinh() * 0.5 * w;
        }
    }
    acc * d
}

/// Convolution weights W_k, k = -(n-1)..n-1, stored at index k + n - 1.
#[derive(Debug, Clone)]
pub struct MellinTable {
    pub grid: LogRadialGrid,
    pub weights: Vec<Complex64>,
    pub c_delta: Complex64,
}

impl MellinTable {
    pub fn new(kernel: &MellinKernel, grid: LogRadialGrid) -> Result<Self> {
        let n = grid.len() as i64;
        let d = grid.delta();
        let ks: Vec<i64> = (-(n - 1)..n).collect();
        let reg: Vec<Complex64> = match &kernel.regular {
            None => vec![Complex64::new(0.0, 0.0); ks.len()],
            Some(rk) => {
                let (rate_neg, rate_pos) = rk.decay_rates();
                // skip weights where the kernel envelope is below 1e-18
                let scale = rk.eval(d).map(|v| v.norm()).unwrap_or(1.0).max(1.0);
                let reach = |rate: f64| if rate > 0.0 { (scale.ln() + 42.0) / rate } else { f64::INFINITY };
                let (yneg, ypos) = (reach(rate_neg) + 2.0, reach(rate_pos) + 2.0);
                ks.par_iter()
                    .map(|&k| {
                        let y = k as f64 * d;
                        if y < -yneg || y > ypos {
                            Ok(Complex64::new(0.0, 0.0))
                        } else {
                            regular_weight(rk, k, d).map(|v| v * INV_SQRT_2PI)
                        }
                    })
                    .collect::<Result<_>>()?
            }
        };
        let weights = ks
            .iter()
            .zip(reg)
            .map(|(&k, r)| if kernel.c_pv == Complex64::new(0.0, 0.0) { r } else { r + kernel.c_pv * pv_weight(k, d) })
            .collect();
        Ok(Self { grid, weights, c_delta: kernel.c_delta })
    }

    pub fn apply(&self, h: &LineFunction) -> Result<LineFunction> {
        self.grid.ensure_same(&h.grid)?;
        let n = self.grid.len();
        let size = 4 * n;
        let mut a = vec![Complex64::new(0.0, 0.0); size];
        a[..self.weights.len()].copy_from_slice(&self.weights);
        let mut b = vec![Complex64::new(0.0, 0.0); size];
        b[..n].copy_from_slice(&h.values);
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(size);
        fft.process(&mut a);
        fft.process(&mut b);
        for (x, y) in a.iter_mut().zip(&b) {
            *x *= y;
        }
        planner.plan_fft_inverse(size).process(&mut a);
        let inv = 1.0 / size as f64;
        let values = (0..n).map(|j| a[j + n - 1] * inv + self.c_delta * h.values[j]).collect();
        Ok(LineFunction { grid: self.grid, values })
    }
}

type TableKey = (String, u64, u64, usize);

fn table_cache() -> &'static Mutex<HashMap<TableKey, Arc<MellinTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<MellinTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared table for (kernel, grid).
pub fn mellin_table(kernel: &MellinKernel, grid: LogRadialGrid) -> Result<Arc<MellinTable>> {
    let key = (format!("{kernel:?}"), grid.u_min().to_bits(), grid.u_max().to_bits(), grid.len());
    if let Some(t) = table_cache().lock().unwrap().get(&key) {
        return Ok(t.clone());
    }
    let t = Arc::new(MellinTable::new(kernel, grid)?);
    table_cache().lock().unwrap().insert(key, t.clone());
    Ok(t)
}

/// phi(A) g through its kernel.
pub fn mellin_convolve(kernel: &MellinKernel, g: &RadialFunction) -> Result<RadialFunction> {
    let table = mellin_table(kernel, g.grid)?;
    Ok(log_unmap(&table.apply(&log_map(g))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::SpectralSymbol;
    use crate::transforms::apply_multiplier;

    fn grid() -> LogRadialGrid {
        LogRadialGrid::new(-10.0, 10.0, 1024).unwrap()
    }

    fn bump(r: f64) -> Complex64 {
        let t = r.ln();
        if t.abs() < 1.0 {
            Complex64::new((-1.0 / (1.0 - t * t)).exp(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    fn rel(a: &RadialFunction, b: &RadialFunction) -> f64 {
        a.sub(b).unwrap().norm() / b.norm()
    }

    #[test]
    fn pure_delta_is_identity() {
        let g = RadialFunction::from_fn(grid(), bump);
        let out = mellin_convolve(&MellinKernel::delta(Complex64::new(1.0, 0.0)), &g).unwrap();
        assert!(rel(&out, &g) < 1e-15);
    }

    #[test]
    fn pv_weights_are_odd() {
        let d = 0.02;
        assert_eq!(pv_weight(0, d), 0.0);
        for k in [1, 2, 5, 40] {
            assert!((pv_weight(k, d) + pv_weight(-k, d)).abs() < 1e-15 * pv_weight(k, d).abs().max(1.0));
        }
        // far from the origin the weight is Delta / sinh(k Delta)
        let k = 200;
        assert!((pv_weight(k, d) - d / (k as f64 * d).sinh()).abs() < 1e-12);
    }

    #[test]
    fn tanh_anchor() {
        let g = RadialFunction::from_fn(grid().refined().refined(), bump);
        let a = apply_multiplier(&SpectralSymbol::tanh(), &g).unwrap();
        let b = mellin_convolve(&MellinKernel::pv_sinh(Complex64::new(0.0, 1.0 / std::f64::consts::PI)), &g).unwrap();
        assert!(rel(&a, &b) < 1e-6, "{}", rel(&a, &b));
    }

    #[test]
    fn odd_kernel_anticommutes_with_reflection() {
        let grid = grid();
        let n = grid.len();
        // symmetric about u = 0, which is node n/2
        let g = RadialFunction::from_fn(grid, |r| bump(r) * (1.0 + 0.5 * r.ln()));
        let h = log_map(&g);
        let mut refl = h.clone();
        for j in 1..n {
            refl.values[j] = h.values[n - j];
        }
        let t = MellinTable::new(&MellinKernel::pv_sinh(Complex64::new(1.0, 0.0)), grid).unwrap();
        let a = t.apply(&h).unwrap();
        let b = t.apply(&refl).unwrap();
        for j in n / 4..3 * n / 4 {
            assert!((a.values[j] + b.values[n - j]).norm() < 1e-12);
        }
    }

    #[test]
    fn regular_weights_sum_to_kernel_integral() {
        // sum_k W_k approximates int k(y) dy
        let kernel = MellinKernel::phi_ab(0, 0.5, Sign::Minus).unwrap();
        let t = MellinTable::new(&MellinKernel { c_pv: Complex64::new(0.0, 0.0), ..kernel }, grid()).unwrap();
        let total: Complex64 = t.weights.iter().sum();
        // (2 pi)^-1/2 int k = phi_3(0) = phi(0) - e^{-i delta}cos(delta) with delta = -pi/4
        let phi0 = crate::symbols::phi_ab(0, 0.5, Sign::Minus).unwrap().eval(0.0);
        let ph = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
        let want = phi0 - ph * std::f64::consts::FRAC_PI_4.cos();
        assert!((total - want).norm() < 1e-8, "{total} vs {want}");
    }
}
