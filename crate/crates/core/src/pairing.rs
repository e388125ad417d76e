//! Smeared kernel pairings and the Abel-damped oscillatory oracle.
//!
//! A kernel K(s) from [`crate::kernels`] is paired with the bump
//! w(s) = exp(-1/(1-t^2)), t = (2s - a - b)/(b - a), supported on [a, b].
//! The oracle computes the same number from the defining double integral
//! lim_{eps->0} int_0^K k e^{-eps k} J_nu(k) int w(s) B_mu(s k) ds dk,
//! B = J or H1, without using the decomposition.

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::kernels::{KernelDecomposition, KernelKind};
use crate::quadrature::gl16;
use crate::specfun::{bessel_j, hankel1};

/// The test function on [a, b].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SWindow {
    pub a: f64,
    pub b: f64,
}

impl SWindow {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0 && b > a && b.is_finite()) {
            return domain(format!("window needs 0 < a < b, got [{a}, {b}]"));
        }
        Ok(Self { a, b })
    }

    pub fn eval(&self, s: f64) -> f64 {
        let t = (2.0 * s - self.a - self.b) / (self.b - self.a);
        if t.abs() < 1.0 {
            (-1.0 / (1.0 - t * t)).exp()
        } else {
            0.0
        }
    }

    fn contains_one(&self) -> bool {
        self.a < 1.0 && 1.0 < self.b
    }
}

fn panels(a: f64, b: f64, count: usize, mut f: impl FnMut(f64, f64)) {
    let (z, w) = gl16();
    let h = (b - a) / count as f64;
    for p in 0..count {
        let mid = a + (p as f64 + 0.5) * h;
        for (zi, wi) in z.iter().zip(w) {
            f(mid + 0.5 * h * zi, 0.5 * h * wi);
        }
    }
}

// GL panels on [lo, hi] halving toward one end
fn graded(lo: f64, hi: f64, toward_hi: bool, mut f: impl FnMut(f64, f64)) {
    let len = hi - lo;
    let mut outer = 1.0;
    for _ in 0..28 {
        let inner = 0.5 * outer;
        let (x0, x1) =
            if toward_hi { (hi - outer * len, hi - inner * len) } else { (lo + inner * len, lo + outer * len) };
        panels(x0, x1, 2, &mut f);
        outer = inner;
    }
    let (x0, x1) = if toward_hi { (hi - outer * len, hi) } else { (lo, lo + outer * len) };
    panels(x0, x1, 1, &mut f);
}

/// <K, w> = c_delta w(1) + c_pv Pv int w(s) / (1 - s^2) ds + int regular(s) w(s) ds.
pub fn smeared_pairing(k: &KernelDecomposition, win: SWindow) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = None;
    let mut add = |s: f64, wt: f64, w1: f64| match k.eval_regular(s) {
        Ok(reg) => {
            let ws = win.eval(s);
            acc += (k.c_pv * ((ws - w1) / (1.0 - s * s)) + reg * ws) * wt;
        }
        Err(e) => err = Some(e),
    };
    if win.contains_one() {
        let w1 = win.eval(1.0);
        graded(win.a, 1.0, true, |s, wt| add(s, wt, w1));
        graded(1.0, win.b, false, |s, wt| add(s, wt, w1));
        if let Some(e) = err {
            return Err(e);
        }
        // Pv int_a^b ds / (1 - s^2) = [ln((1 + s) / |1 - s|) / 2]_a^b
        let pv = 0.5 * (((1.0 + win.b) / (win.b - 1.0)).ln() - ((1.0 + win.a) / (1.0 - win.a)).ln());
        acc += k.c_delta * w1 + k.c_pv * (w1 * pv);
    } else {
        panels(win.a, win.b, 40, |s, wt| add(s, wt, 0.0));
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(acc)
}

/// Damping and cutoff of [`damped_oracle`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOptions {
    pub cutoff: f64,
    pub eps_coarse: f64,
    pub eps_fine: f64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { cutoff: 1e3, eps_coarse: 1e-2, eps_fine: 1e-3 }
    }
}

/// The damped double integral at two damping values, extrapolated linearly to eps = 0.
pub fn damped_oracle(kind: KernelKind, mu: f64, nu: f64, win: SWindow, opts: OracleOptions) -> Result<Complex64> {
    let hankel = kind == KernelKind::Hankel;
    let inner = |kappa: f64| -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut err = None;
        let count = (kappa * (win.b - win.a) / 4.0).ceil() as usize + 2;
        panels(win.a, win.b, count, |s, wt| {
            let x = s * kappa;
            let v = if hankel { hankel1(mu, x) } else { bessel_j(mu, x).map(|j| Complex64::new(j, 0.0)) };
            match v {
                Ok(v) => acc += v * (win.eval(s) * wt),
                Err(e) => err = Some(e),
            }
        });
        err.map_or(Ok(acc), Err)
    };
    let (e1, e2) = (opts.eps_coarse, opts.eps_fine);
    let mut v1 = Complex64::new(0.0, 0.0);
    let mut v2 = Complex64::new(0.0, 0.0);
    let mut err = None;
    let mut outer = |lo: f64, hi: f64, count: usize| {
        panels(lo, hi, count, |kappa, wt| {
            let f = inner(kappa).and_then(|w| Ok(w * (kappa * bessel_j(nu, kappa)? * wt)));
            match f {
                Ok(f) => {
                    v1 += f * (-e1 * kappa).exp();
                    v2 += f * (-e2 * kappa).exp();
                }
                Err(e) => err = Some(e),
            }
        });
    };
    // geometric panels resolve the power behaviour at k = 0
    let mut lo = 0.0;
    let mut hi = 2f64.powi(-20);
    while hi < 1.0 {
        outer(lo, hi, 1);
        lo = hi;
        hi *= 2.0;
    }
    outer(lo, 1.0, 1);
    outer(1.0, opts.cutoff, (opts.cutoff - 1.0).ceil() as usize);
    if let Some(e) = err {
        return Err(e);
    }
    Ok(v2 + (v2 - v1) * (e2 / (e1 - e2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::{kernel_hj, kernel_jj};
    use crate::specfun::Branch;

    #[test]
    fn window_validation() {
        assert!(SWindow::new(0.9, 0.5).is_err());
        assert!(SWindow::new(0.0, 0.5).is_err());
        let w = SWindow::new(0.5, 0.9).unwrap();
        assert_eq!(w.eval(0.5), 0.0);
        assert!((w.eval(0.7) - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn equal_orders_pair_to_point_value() {
        // kernel_jj(nu, nu) is delta(s - 1)
        let k = kernel_jj(0.5, 0.5).unwrap();
        let w = SWindow::new(0.8, 1.4).unwrap();
        let v = smeared_pairing(&k, w).unwrap();
        assert!((v - w.eval(1.0)).norm() < 1e-14);
        assert_eq!(smeared_pairing(&k, SWindow::new(0.5, 0.9).unwrap()).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn pairing_across_one_matches_oracle() {
        // exercises c_delta and c_pv
        let k = kernel_hj(0.7, 1.0, Branch::Upper).unwrap();
        let w = SWindow::new(0.7, 1.5).unwrap();
        let ours = smeared_pairing(&k, w).unwrap();
        let opts = OracleOptions { cutoff: 300.0, ..Default::default() };
        let oracle = damped_oracle(KernelKind::Hankel, 0.7, 1.0, w, opts).unwrap();
        assert!((ours - oracle).norm() < 1e-3 * oracle.norm(), "{ours} vs {oracle}");
    }

    #[test]
    fn oracle_matches_pairing_off_diagonal() {
        let k = kernel_jj(3.0, 2.2).unwrap();
        let w = SWindow::new(1.2, 1.8).unwrap();
        let ours = smeared_pairing(&k, w).unwrap();
        let opts = OracleOptions { cutoff: 300.0, ..Default::default() };
        let oracle = damped_oracle(KernelKind::BesselJ, 3.0, 2.2, w, opts).unwrap();
        assert!((ours - oracle).norm() < 1e-3 * oracle.norm(), "{ours} vs {oracle}");
    }
}
