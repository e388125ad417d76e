use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Uniform grid u_j = u_min + j * delta, j = 0..n, on the log scale r = e^u.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogRadialGrid {
    u_min: f64,
    u_max: f64,
    n: usize,
}

impl Default for LogRadialGrid {
    fn default() -> Self {
        Self { u_min: -12.0, u_max: 12.0, n: 4096 }
    }
}

impl LogRadialGrid {
    /// `n` must be a power of two, at least 16.
    pub fn new(u_min: f64, u_max: f64, n: usize) -> Result<Self> {
        if !(u_min.is_finite() && u_max.is_finite() && u_min < u_max) {
            return domain(format!("grid needs finite u_min < u_max, got [{u_min}, {u_max}]"));
        }
        if n < 16 || !n.is_power_of_two() {
            return domain(format!("grid size must be a power of two >= 16, got {n}"));
        }
        Ok(Self { u_min, u_max, n })
    }

    pub fn u_min(&self) -> f64 {
        self.u_min
    }

    pub fn u_max(&self) -> f64 {
        self.u_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn delta(&self) -> f64 {
        (self.u_max - self.u_min) / self.n as f64
    }

    pub fn u(&self, j: usize) -> f64 {
        self.u_min + j as f64 * self.delta()
    }

    pub fn r(&self, j: usize) -> f64 {
        self.u(j).exp()
    }

    pub fn u_values(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.u(j)).collect()
    }

    pub fn r_values(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.r(j)).collect()
    }

    /// Same window, twice as many points.
    pub fn refined(&self) -> Self {
        Self { n: 2 * self.n, ..*self }
    }

    pub(crate) fn ensure_same(&self, other: &Self) -> Result<()> {
        if self != other {
            return Err(Error::GridMismatch(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }
}

/// Function of r sampled on a log grid (values g(r_j)); L2(r dr) geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialFunction {
    pub grid: LogRadialGrid,
    pub values: Vec<Complex64>,
}

/// Function of u sampled on the same grid (values h(u_j)); L2(du) geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct LineFunction {
    pub grid: LogRadialGrid,
    pub values: Vec<Complex64>,
}

fn check_len(grid: &LogRadialGrid, len: usize) -> Result<()> {
    if grid.len() != len {
        return Err(Error::GridMismatch(format!("{} values for a grid of {}", len, grid.len())));
    }
    Ok(())
}

impl RadialFunction {
    pub fn new(grid: LogRadialGrid, values: Vec<Complex64>) -> Result<Self> {
        check_len(&grid, values.len())?;
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: LogRadialGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|j| f(grid.r(j))).collect();
        Self { grid, values }
    }

    pub fn zeros(grid: LogRadialGrid) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.len()] }
    }

    /// sqrt(int |g|^2 r dr), trapezoid on the log grid.
    pub fn norm(&self) -> f64 {
        let s: f64 = self.values.iter().enumerate().map(|(j, v)| v.norm_sqr() * self.grid.r(j).powi(2)).sum();
        (s * self.grid.delta()).sqrt()
    }

    /// <self, other> = int conj(self) other r dr.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.grid.ensure_same(&other.grid)?;
        let d = self.grid.delta();
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(j, (a, b))| a.conj() * b * self.grid.r(j).powi(2))
            .sum();
        Ok(s * d)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Self { grid: self.grid, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }
}

impl LineFunction {
    pub fn new(grid: LogRadialGrid, values: Vec<Complex64>) -> Result<Self> {
        check_len(&grid, values.len())?;
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: LogRadialGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.len()).map(|j| f(grid.u(j))).collect();
        Self { grid, values }
    }

    pub fn norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.delta()).sqrt()
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.grid.ensure_same(&other.grid)?;
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum();
        Ok(s * self.grid.delta())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.grid.ensure_same(&other.grid)?;
        Ok(Self { grid: self.grid, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }
}

/// h(u) = e^u g(e^u): unitary from L2(r dr) onto L2(du).
pub fn log_map(g: &RadialFunction) -> LineFunction {
    let values = g.values.iter().enumerate().map(|(j, v)| v * g.grid.r(j)).collect();
    LineFunction { grid: g.grid, values }
}

/// Inverse of [`log_map`].
pub fn log_unmap(h: &LineFunction) -> RadialFunction {
    let values = h.values.iter().enumerate().map(|(j, v)| v / h.grid.r(j)).collect();
    RadialFunction { grid: h.grid, values }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bump(r: f64) -> Complex64 {
        let t = r.ln();
        if t.abs() < 1.0 {
            Complex64::new((-1.0 / (1.0 - t * t)).exp(), 0.3 * t)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    #[test]
    fn grid_validation() {
        assert!(LogRadialGrid::new(1.0, 1.0, 64).is_err());
        assert!(LogRadialGrid::new(-1.0, 1.0, 8).is_err());
        assert!(LogRadialGrid::new(-1.0, 1.0, 100).is_err());
        let g = LogRadialGrid::new(-2.0, 2.0, 16).unwrap();
        assert_eq!(g.delta(), 0.25);
        assert_eq!(g.u(4), -1.0);
        assert_eq!(g.refined().len(), 32);
        assert_eq!(LogRadialGrid::default().len(), 4096);
    }

    #[test]
    fn log_map_round_trip_and_norm() {
        let grid = LogRadialGrid::new(-6.0, 6.0, 512).unwrap();
        let g = RadialFunction::from_fn(grid, bump);
        let h = log_map(&g);
        assert_eq!(log_unmap(&h).values.len(), g.values.len());
        for (a, b) in log_unmap(&h).values.iter().zip(&g.values) {
            assert!((a - b).norm() <= 1e-15 * b.norm());
        }
        assert!((h.norm() / g.norm() - 1.0).abs() < 1e-12);
        let z = log_map(&RadialFunction::zeros(grid));
        assert!(z.values.iter().all(|v| *v == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn norm_of_closed_form() {
        // int_0^inf e^{-r^2} r dr = 1/2
        let grid = LogRadialGrid::new(-20.0, 4.0, 1024).unwrap();
        let g = RadialFunction::from_fn(grid, |r| Complex64::new((-r * r / 2.0).exp(), 0.0));
        assert!((g.norm().powi(2) - 0.5).abs() < 1e-12, "{}", g.norm().powi(2));
        let ip = g.inner(&g.scale(Complex64::new(0.0, 2.0))).unwrap();
        assert!((ip - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn mismatched_grids() {
        let a = RadialFunction::zeros(LogRadialGrid::new(-1.0, 1.0, 16).unwrap());
        let b = RadialFunction::zeros(LogRadialGrid::new(-1.0, 1.0, 32).unwrap());
        assert!(matches!(a.add(&b), Err(Error::GridMismatch(_))));
        assert!(RadialFunction::new(a.grid, vec![Complex64::new(0.0, 0.0); 3]).is_err());
    }
}
