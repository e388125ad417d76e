//! Distributional kernels of the Bessel products
//! K(s) = int_0^inf k J_mu(s k) J_nu(k) dk and int_0^inf k H1_mu(s k) J_nu(k) dk
//! split into a delta at s = 1, a principal-value part s^-1 Pv(1/(1/s - s))
//! and a locally integrable regular part.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::specfun::{norm_minus_one_w, Branch};

/// Which Bessel product the kernel comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// J_mu(s k) J_nu(k)
    BesselJ,
    /// H1_mu(s k) J_nu(k)
    Hankel,
}

/// Locally integrable part of a kernel decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularPart {
    kind: KernelKind,
    mu: f64,
    nu: f64,
    amp: Complex64,
    branch: Branch,
}

impl RegularPart {
    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// Regular part at s > 0, s != 1.
    pub fn eval(&self, s: f64) -> Result<Complex64> {
        if !(s > 0.0) || !s.is_finite() || s == 1.0 {
            return domain(format!("regular part needs s > 0, s != 1, got {s}"));
        }
        let t = s.ln();
        Ok(self.eval_mellin(t)? / s)
    }

    /// s K_reg(s) at s = e^t, t != 0.
    ///
    /// This is the form that appears after the change of variables to the
    /// log scale; it stays finite for large |t| where K_reg itself overflows.
    pub fn eval_mellin(&self, t: f64) -> Result<Complex64> {
        if t == 0.0 || !t.is_finite() {
            return domain(format!("regular part is singular at t = {t}"));
        }
        // s * s^-1 / (1/s - s) = -1 / (2 sinh t) * ... with s = e^t:
        // s^-1/(1/s - s) = 1/(1 - s^2) and s/(1 - s^2) = -1/(2 sinh t)
        let pref = -0.5 / t.sinh();
        let bracket = match (self.kind, t < 0.0) {
            (KernelKind::BesselJ, true) => {
                // s^mu G F(s^2) - 1
                let a = 0.5 * (self.mu + self.nu);
                let b = 0.5 * (self.mu - self.nu);
                let w = -(2.0 * t).exp_m1();
                let n = norm_minus_one_w(a, b, w, self.branch)?;
                n * (self.mu * t).exp() + (self.mu * t).exp_m1()
            }
            _ => {
                // s^-nu G F(s^-2) - 1, continued past z = 1 for s < 1
                let a = 0.5 * (self.nu + self.mu);
                let b = 0.5 * (self.nu - self.mu);
                let w = -(-2.0 * t).exp_m1();
                let n = norm_minus_one_w(a, b, w, self.branch)?;
                n * (-self.nu * t).exp() + (-self.nu * t).exp_m1()
            }
        };
        Ok(self.amp * pref * bracket)
    }
}

/// K(s) = c_delta delta(s - 1) + c_pv s^-1 Pv(1/(1/s - s)) + regular(s).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelDecomposition {
    pub c_delta: Complex64,
    pub c_pv: Complex64,
    pub regular: RegularPart,
    pub mu: f64,
    pub nu: f64,
}

impl KernelDecomposition {
    pub fn eval_regular(&self, s: f64) -> Result<Complex64> {
        self.regular.eval(s)
    }

    /// Coefficient L of the logarithmic singularity at s = 1:
    /// s K_reg(s) = L ln|2 ln s| + O(1) on both sides.
    pub fn log_coefficient(&self) -> Complex64 {
        self.regular.amp * (0.25 * (self.mu * self.mu - self.nu * self.nu))
    }
}

fn check_params(mu: f64, nu: f64) -> Result<()> {
    if !(mu.is_finite() && nu.is_finite()) {
        return domain("kernel orders must be finite");
    }
    Ok(())
}

/// Decomposition of int_0^inf k J_mu(s k) J_nu(k) dk.
///
/// Requires nu + 2 > |mu| and mu + 2 > |nu|.
pub fn kernel_jj(mu: f64, nu: f64) -> Result<KernelDecomposition> {
    check_params(mu, nu)?;
    if !(nu + 2.0 > mu.abs() && mu + 2.0 > nu.abs()) {
        return domain(format!("kernel_jj requires nu+2 > |mu| and mu+2 > |nu| (mu={mu}, nu={nu})"));
    }
    let th = 0.5 * PI * (nu - mu);
    let amp = Complex64::new(2.0 / PI * th.sin(), 0.0);
    Ok(KernelDecomposition {
        c_delta: Complex64::new(th.cos(), 0.0),
        c_pv: amp,
        regular: RegularPart { kind: KernelKind::BesselJ, mu, nu, amp, branch: Branch::Upper },
        mu,
        nu,
    })
}

/// Decomposition of int_0^inf k H1_mu(s k) J_nu(k) dk.
///
/// Requires nu + 2 > |mu|. For s < 1 the hypergeometric factor is
/// evaluated past its cut, from the side given by `branch`; below
/// s = 2^-1/2 this needs a non-integer mu.
pub fn kernel_hj(mu: f64, nu: f64, branch: Branch) -> Result<KernelDecomposition> {
    check_params(mu, nu)?;
    if !(nu + 2.0 > mu.abs()) {
        return domain(format!("kernel_hj requires nu+2 > |mu| (mu={mu}, nu={nu})"));
    }
    let ph = Complex64::from_polar(1.0, 0.5 * PI * (nu - mu));
    let amp = ph * Complex64::new(0.0, -2.0 / PI);
    Ok(KernelDecomposition {
        c_delta: ph,
        c_pv: amp,
        regular: RegularPart { kind: KernelKind::Hankel, mu, nu, amp, branch },
        mu,
        nu,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // (mu, nu, s, K_reg(s)) from mpmath at 40 digits
    const JJ: [(f64, f64, f64, f64); 18] = [
        (1.0, 0.7, 0.3, 0.23303925467026195),
        (1.0, 0.7, 0.5, 0.21237329525696135),
        (1.0, 0.7, 0.999, 0.36939890130771199),
        (1.0, 0.7, 1.001, 0.14174636259258673),
        (1.0, 0.7, 2.0, -0.029074591856935033),
        (1.0, 0.7, 5.0, -0.0075370932898103337),
        (0.0, 0.5, 0.3, 0.051612697974290734),
        (0.0, 0.5, 0.5, 0.055350889745372775),
        (0.0, 0.5, 0.999, 0.20764432942727775),
        (0.0, 0.5, 1.001, 0.29556618221043517),
        (0.0, 0.5, 2.0, 0.050575007647930464),
        (0.0, 0.5, 5.0, 0.010967287948176012),
        (3.0, 2.2, 0.3, 0.65522573779008035),
        (3.0, 2.2, 0.5, 0.7476714172323326),
        (3.0, 2.2, 0.999, 4.0556048713951887),
        (3.0, 2.2, 1.001, 3.3984034957878977),
        (3.0, 2.2, 2.0, -0.11026262472150928),
        (3.0, 2.2, 5.0, -0.023579326701948551),
    ];

    // (mu, nu, s, re, im), 2F1 continued from z - i0
    const HJ: [(f64, f64, f64, f64, f64); 18] = [
        (0.7, 1.0, 0.3, -0.16039982918498301, -1.1919038536013192),
        (0.7, 1.0, 0.5, -0.11629836742774013, -0.77795789795435544),
        (0.7, 1.0, 0.999, 0.14199328565389776, -0.84085378125894017),
        (0.7, 1.0, 1.001, 0.36869765917403177, -0.72360989925011222),
        (0.7, 1.0, 2.0, 0.053093323814240339, -0.10420151509001488),
        (0.7, 1.0, 5.0, 0.0099119748102043131, -0.019453345892809406),
        (0.5, 0.0, 0.3, 0.2425316780419088, -0.27924586957828414),
        (0.5, 0.0, 0.5, 0.20230003059172186, -0.1425771755567337),
        (0.5, 0.0, 0.999, 0.29612974846700172, 0.11916505998687181),
        (0.5, 0.0, 1.001, 0.20725756226350969, 0.20725756226350969),
        (0.5, 0.0, 2.0, 0.013837722436343194, 0.013837722436343194),
        (0.5, 0.0, 5.0, 0.0020241630579552309, 0.0020241630579552309),
        (0.2, 0.0, 0.3, 0.048558008571525064, -0.024880109763050531),
        (0.2, 0.0, 0.5, 0.036707366336669477, -0.0077025041434512463),
        (0.2, 0.0, 0.999, 0.033293553342403459, 0.037680237724922269),
        (0.2, 0.0, 1.001, 0.014228304660471249, 0.043790219015446295),
        (0.2, 0.0, 2.0, 0.00091290996682546291, 0.0028096479758219339),
        (0.2, 0.0, 5.0, 0.00013303604227263031, 0.0004094428371534254),
    ];

    #[test]
    fn jj_regular_values() {
        for (mu, nu, s, want) in JJ {
            let k = kernel_jj(mu, nu).unwrap();
            let got = k.eval_regular(s).unwrap();
            assert!(got.im == 0.0);
            assert!((got.re - want).abs() < 1e-10 * want.abs(), "jj({mu},{nu},{s}) = {got}");
        }
    }

    #[test]
    fn hj_regular_values() {
        for (mu, nu, s, re, im) in HJ {
            let k = kernel_hj(mu, nu, Branch::Upper).unwrap();
            let got = k.eval_regular(s).unwrap();
            let want = Complex64::new(re, im);
            assert!((got - want).norm() < 1e-10 * want.norm(), "hj({mu},{nu},{s}) = {got}");
        }
    }

    #[test]
    fn equal_orders_leave_only_the_delta() {
        let k = kernel_jj(0.5, 0.5).unwrap();
        assert_eq!(k.c_delta, Complex64::new(1.0, 0.0));
        assert_eq!(k.c_pv, Complex64::new(0.0, 0.0));
        for s in [0.2, 0.9, 1.1, 4.0] {
            assert_eq!(k.eval_regular(s).unwrap(), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn jj_coefficients_through_delta_phase() {
        let d = 0.15 * PI;
        let k = kernel_jj(1.0, 0.7).unwrap();
        assert!((k.c_delta.re - d.cos()).abs() < 1e-15 && k.c_delta.im == 0.0);
        assert!((k.c_pv.re + 2.0 / PI * d.sin()).abs() < 1e-15 && k.c_pv.im == 0.0);
    }

    #[test]
    fn hj_equal_orders_closed_form() {
        let k = kernel_hj(0.5, 0.5, Branch::Upper).unwrap();
        assert!((k.c_delta - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let c = Complex64::new(0.0, -2.0 / PI);
        assert!((k.c_pv - c).norm() < 1e-15);
        for s in [0.2f64, 0.6, 0.95, 1.05, 3.0, 40.0] {
            let want = c * (1.0 / s / (1.0 / s - s)) * (s.powf(-0.5) - 1.0);
            let got = k.eval_regular(s).unwrap();
            assert!((got - want).norm() < 1e-12 * want.norm(), "s={s}: {got} vs {want}");
        }
    }

    #[test]
    fn hj_regular_decays_for_large_s() {
        let k = kernel_hj(0.7, 1.0, Branch::Upper).unwrap();
        let a = k.eval_regular(1e2).unwrap().norm();
        let b = k.eval_regular(1e4).unwrap().norm();
        assert!(b < a * 1e-3 && b < 1e-5);
    }

    #[test]
    fn log_singularity_coefficient() {
        // s K_reg(s) - L ln|2 ln s| stays bounded as s -> 1
        for k in [kernel_jj(1.0, 0.7).unwrap(), kernel_hj(0.2, 0.0, Branch::Upper).unwrap()] {
            let l = k.log_coefficient();
            let rem = |t: f64| k.regular.eval_mellin(t).unwrap() - l * (2.0 * t.abs()).ln();
            for side in [-1.0, 1.0] {
                let a = rem(side * 1e-6);
                let b = rem(side * 1e-9);
                assert!((a - b).norm() < 1e-4, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn regular_part_integrable_near_one() {
        // midpoint sums over [1-h, 1+h] converge as the mesh is refined
        let k = kernel_jj(1.0, 0.7).unwrap();
        let h = 0.1;
        let integral = |n: usize| {
            let dx = 2.0 * h / n as f64;
            (0..n).map(|i| k.eval_regular(1.0 - h + (i as f64 + 0.5) * dx).unwrap().re * dx).sum::<f64>()
        };
        let (a, b) = (integral(2000), integral(20000));
        assert!(a.is_finite() && (a - b).abs() < 1e-3 * b.abs().max(1e-2));
    }

    #[test]
    fn constraint_violations() {
        assert!(kernel_jj(3.0, 0.5).is_err());
        assert!(kernel_jj(0.5, 3.0).is_err());
        assert!(kernel_hj(3.0, 0.5, Branch::Upper).is_err());
        assert!(kernel_hj(0.5, 3.0, Branch::Upper).is_ok());
        let k = kernel_jj(1.0, 0.7).unwrap();
        assert!(k.eval_regular(1.0).is_err());
        assert!(k.eval_regular(-1.0).is_err());
    }
}
