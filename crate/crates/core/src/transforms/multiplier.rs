//! phi(A) as a Fourier multiplier in the log variable.
//!
//! With h_hat(xi) = int h(u) e^{-i u xi} du the dilation U_tau acts as
//! multiplication by e^{i tau xi}. The input is zero-padded so that the
//! kernel tails of decaying symbols do not wrap around.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::grid::{log_map, log_unmap, LineFunction, LogRadialGrid, RadialFunction};
use crate::error::Result;
use crate::symbols::SpectralSymbol;

/// Decay length, in units of 1/rate, that the padding must cover.
const PAD_DECAY_LENGTHS: f64 = 28.0;
const MAX_PAD: usize = 16;

/// Padding factor P: smallest power of two with (P - 1) L >= 28 / rate.
pub fn padding_factor(grid: &LogRadialGrid, decay_rate: Option<f64>) -> usize {
    let Some(rate) = decay_rate.filter(|r| *r > 0.0) else {
        return 2;
    };
    let len = grid.u_max() - grid.u_min();
    let mut p = 2;
    while ((p - 1) as f64) * len < PAD_DECAY_LENGTHS / rate && p < MAX_PAD {
        p *= 2;
    }
    p
}

/// Symbol values on the padded FFT frequency grid.
#[derive(Debug, Clone)]
pub struct MultiplierTable {
    pub grid: LogRadialGrid,
    pub pad: usize,
    pub values: Vec<Complex64>,
}

impl MultiplierTable {
    pub fn new(phi: &SpectralSymbol, grid: LogRadialGrid) -> Self {
        let pad = padding_factor(&grid, phi.kernel_decay_rate());
        let size = pad * grid.len();
        let dxi = 2.0 * PI / (size as f64 * grid.delta());
        let half = size / 2;
        let mut values = vec![Complex64::new(0.0, 0.0); size];
        let band = phi.bandwidth();
        // k = 0..=half at xi = k dxi; k = half+1..size at xi = (k - size) dxi
        let nonneg = match band {
            Some(b) => ((b / dxi).floor() as usize + 1).min(half + 1),
            None => half + 1,
        };
        let negcount = match band {
            Some(b) => ((b / dxi).floor() as usize).min(half - 1),
            None => half - 1,
        };
        let pos = phi.eval_uniform(0.0, dxi, nonneg);
        values[..nonneg].copy_from_slice(&pos);
        for (k, v) in values.iter_mut().enumerate().take(half + 1).skip(nonneg) {
            *v = phi.eval_smooth(k as f64 * dxi);
        }
        let neg = phi.eval_uniform(-(negcount as f64) * dxi, dxi, negcount);
        values[size - negcount..].copy_from_slice(&neg);
        for (k, v) in values.iter_mut().enumerate().take(size - negcount).skip(half + 1) {
            *v = phi.eval_smooth((k as f64 - size as f64) * dxi);
        }
        Self { grid, pad, values }
    }

    /// Multiply in frequency and crop back to the grid window.
    pub fn apply(&self, h: &LineFunction) -> Result<LineFunction> {
        self.grid.ensure_same(&h.grid)?;
        let n = self.grid.len();
        let size = self.values.len();
        let mut buf = vec![Complex64::new(0.0, 0.0); size];
        buf[..n].copy_from_slice(&h.values);
        let mut planner = FftPlanner::new();
        planner.plan_fft_forward(size).process(&mut buf);
        for (b, s) in buf.iter_mut().zip(&self.values) {
            *b *= s;
        }
        planner.plan_fft_inverse(size).process(&mut buf);
        let inv = 1.0 / size as f64;
        Ok(LineFunction { grid: self.grid, values: buf[..n].iter().map(|v| v * inv).collect() })
    }
}

type TableKey = (String, u64, u64, usize);

fn table_cache() -> &'static Mutex<HashMap<TableKey, Arc<MultiplierTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<MultiplierTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Table for `phi` on `grid`; cached when the symbol carries a key.
pub fn multiplier_table(phi: &SpectralSymbol, grid: LogRadialGrid) -> Arc<MultiplierTable> {
    let Some(key) = phi.key() else {
        return Arc::new(MultiplierTable::new(phi, grid));
    };
    let key = (key.to_string(), grid.u_min().to_bits(), grid.u_max().to_bits(), grid.len());
    if let Some(t) = table_cache().lock().unwrap().get(&key) {
        return t.clone();
    }
    let t = Arc::new(MultiplierTable::new(phi, grid));
    table_cache().lock().unwrap().insert(key, t.clone());
    t
}

/// phi(A) g.
pub fn apply_multiplier(phi: &SpectralSymbol, g: &RadialFunction) -> Result<RadialFunction> {
    let table = multiplier_table(phi, g.grid);
    Ok(log_unmap(&table.apply(&log_map(g))?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> LogRadialGrid {
        LogRadialGrid::new(-10.0, 10.0, 1024).unwrap()
    }

    fn bump(r: f64) -> Complex64 {
        let t = r.ln();
        if t.abs() < 1.0 {
            Complex64::new((-1.0 / (1.0 - t * t)).exp(), (1.0 - t * t).sqrt())
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    fn rel(a: &RadialFunction, b: &RadialFunction) -> f64 {
        a.sub(b).unwrap().norm() / b.norm()
    }

    #[test]
    fn padding() {
        let g = grid();
        assert_eq!(padding_factor(&g, None), 2);
        assert_eq!(padding_factor(&g, Some(1.0)), 4);
        assert_eq!(padding_factor(&g, Some(0.001)), 16);
        assert_eq!(padding_factor(&g, Some(50.0)), 2);
    }

    #[test]
    fn identity_symbol() {
        let g = RadialFunction::from_fn(grid(), bump);
        let out = apply_multiplier(&SpectralSymbol::constant(Complex64::new(1.0, 0.0)), &g).unwrap();
        assert!(rel(&out, &g) < 1e-14);
    }

    #[test]
    fn dilation_and_group_law() {
        let grid = grid();
        let g = RadialFunction::from_fn(grid, bump);
        let d = grid.delta();
        let tau = 5.0 * d;
        let out = apply_multiplier(&SpectralSymbol::dilation(tau), &g).unwrap();
        let want = RadialFunction::from_fn(grid, |r| bump(r * tau.exp()) * tau.exp());
        assert!(rel(&out, &want) < 1e-10);
        for (t1, t2, tol) in [(7.0 * d, -12.0 * d, 1e-12), (0.37, -1.21, 1e-6)] {
            let a = apply_multiplier(&SpectralSymbol::dilation(t1), &g).unwrap();
            let ab = apply_multiplier(&SpectralSymbol::dilation(t2), &a).unwrap();
            let c = apply_multiplier(&SpectralSymbol::dilation(t1 + t2), &g).unwrap();
            assert!(rel(&ab, &c) < tol, "{}", rel(&ab, &c));
        }
    }

    #[test]
    fn unimodular_symbol_preserves_norm() {
        let g = RadialFunction::from_fn(grid(), bump);
        let phi = SpectralSymbol::from_fn(
            |x| Complex64::from_polar(1.0, (0.5 * x).atan()),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            1.0,
        );
        let out = apply_multiplier(&phi, &g).unwrap();
        assert!((out.norm() / g.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn keyed_tables_are_cached() {
        let phi = crate::symbols::phi_ab_with(
            1,
            0.5,
            crate::symbols::Sign::Plus,
            crate::symbols::SymbolOptions { bandwidth: 50.0 },
        )
        .unwrap();
        let a = multiplier_table(&phi, grid());
        let b = multiplier_table(&phi, grid());
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(a.pad, 4);
        // past the band the table holds the smooth part
        let size = a.values.len();
        let k = size / 2 - 3;
        let xi = 2.0 * PI * k as f64 / (size as f64 * grid().delta());
        assert!(xi > 50.0);
        assert_eq!(a.values[k], phi.eval_smooth(xi));
    }

    #[test]
    fn grid_mismatch() {
        let t = MultiplierTable::new(&SpectralSymbol::tanh(), grid());
        let h = LineFunction::from_fn(grid().refined(), |_| Complex64::new(0.0, 0.0));
        assert!(t.apply(&h).is_err());
    }
}
