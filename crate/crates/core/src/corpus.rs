//! Smooth compactly supported test functions on (0, inf).

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::transforms::{LogRadialGrid, RadialFunction};

/// exp(-1 / (1 - t^2)) e^{i freq ln r} with t = (ln r - center) / width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBump {
    pub center: f64,
    pub width: f64,
    pub frequency: f64,
}

impl LogBump {
    pub fn new(center: f64, width: f64, frequency: f64) -> Result<Self> {
        if !(center.is_finite() && width > 0.0 && width.is_finite() && frequency.is_finite()) {
            return domain(format!("bad bump (center {center}, width {width}, frequency {frequency})"));
        }
        Ok(Self { center, width, frequency })
    }

    /// Bump supported on r in [r_a, r_b].
    pub fn from_support(r_a: f64, r_b: f64) -> Result<Self> {
        if !(r_a > 0.0 && r_b > r_a) {
            return domain(format!("support needs 0 < r_a < r_b, got [{r_a}, {r_b}]"));
        }
        let (a, b) = (r_a.ln(), r_b.ln());
        Self::new(0.5 * (a + b), 0.5 * (b - a), 0.0)
    }

    /// Support [r_a, r_b].
    pub fn support(&self) -> (f64, f64) {
        ((self.center - self.width).exp(), (self.center + self.width).exp())
    }

    pub fn eval(&self, r: f64) -> Complex64 {
        let u = r.ln();
        let t = (u - self.center) / self.width;
        if t.abs() < 1.0 {
            Complex64::from_polar((-1.0 / (1.0 - t * t)).exp(), self.frequency * u)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn sample(&self, grid: LogRadialGrid) -> RadialFunction {
        RadialFunction::from_fn(grid, |r| self.eval(r))
    }

    /// Whether the support sits inside (e^{u_min + 1}, e^{u_max - 1}).
    pub fn fits(&self, grid: &LogRadialGrid) -> bool {
        self.center - self.width > grid.u_min() + 1.0 && self.center + self.width < grid.u_max() - 1.0
    }
}

/// The three-member corpus used by the verification sweeps; supports lie in [0.2, 5].
pub fn default_corpus() -> [LogBump; 3] {
    [
        LogBump { center: 0.0, width: 1.0, frequency: 0.0 },
        LogBump { center: -0.5, width: 0.8, frequency: 2.0 },
        LogBump { center: 0.6, width: 0.9, frequency: -1.5 },
    ]
}
