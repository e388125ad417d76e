//! Gauss-Legendre and tanh-sinh rules.

use std::f64::consts::PI;
use std::sync::OnceLock;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Cached 16-point rule.
pub fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(16))
}

/// Cached 24-point rule.
pub fn gl24() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(24))
}

/// Append GL nodes for [a, b] to `out` as (x, weight) pairs.
pub fn push_panel(rule: &(Vec<f64>, Vec<f64>), a: f64, b: f64, out: &mut Vec<(f64, f64)>) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    for (x, w) in rule.0.iter().zip(&rule.1) {
        out.push((mid + half * x, half * w));
    }
}

/// Tanh-sinh nodes on [0, len] for integrands singular at 0.
///
/// Returns (distance from 0, weight); distances are computed without
/// cancellation so tiny nodes keep full relative precision.
pub fn tanh_sinh_left(len: f64, level: u32) -> Vec<(f64, f64)> {
    let h = 1.0 / f64::from(1u32 << level);
    let mut out = Vec::new();
    let kmax = (3.2 / h) as i64;
    for k in -kmax..=kmax {
        let t = k as f64 * h;
        let s = 0.5 * PI * t.sinh();
        let ch = s.cosh();
        // 1 + tanh(s) = 2 / (1 + e^{-2s})
        let frac = 1.0 / (1.0 + (-2.0 * s).exp());
        let x = len * frac;
        let w = len * 0.5 * h * 0.5 * PI * t.cosh() / (ch * ch);
        if x > 0.0 && w > 0.0 && x < len && x.is_finite() {
            out.push((x, w));
        }
    }
    out
}
