//! Channel wave operators Omega_pm,m, the operator T_m, and the two-channel
//! assembly of Omega_-^U for an injected scattering matrix S(k).

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::Branch;
use crate::symbols::{delta_phase, phi_ab_with, phi_tilde_with, FluxParameter, Sign, SymbolOptions};
use crate::transforms::{
    apply_multiplier, generalized_inverse_hankel, hankel_transform, mellin_convolve, BesselKind, InverseOptions,
    LogRadialGrid, MellinKernel, RadialFunction, TruncationReport,
};

/// A 2x2 complex matrix, row major.
pub type Matrix2 = [[Complex64; 2]; 2];

const UNITARY_TOL: f64 = 1e-10;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// Functions on the two interior channels m = 0 and m = -1.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoChannelFunction {
    pub f0: RadialFunction,
    pub fm1: RadialFunction,
}

impl TwoChannelFunction {
    pub fn new(f0: RadialFunction, fm1: RadialFunction) -> Result<Self> {
        f0.grid.ensure_same(&fm1.grid)?;
        Ok(Self { f0, fm1 })
    }

    pub fn zeros(grid: LogRadialGrid) -> Self {
        Self { f0: RadialFunction::zeros(grid), fm1: RadialFunction::zeros(grid) }
    }

    pub fn grid(&self) -> LogRadialGrid {
        self.f0.grid
    }

    pub fn norm(&self) -> f64 {
        self.f0.norm().hypot(self.fm1.norm())
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        Ok(self.f0.inner(&other.f0)? + self.fm1.inner(&other.fm1)?)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self { f0: self.f0.add(&other.f0)?, fm1: self.fm1.add(&other.fm1)? })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self { f0: self.f0.sub(&other.f0)?, fm1: self.fm1.sub(&other.fm1)? })
    }

    /// diag(c0, c1) f.
    pub fn scale_channels(&self, c0: Complex64, c1: Complex64) -> Self {
        Self { f0: self.f0.scale(c0), fm1: self.fm1.scale(c1) }
    }
}

type MatrixField = Arc<dyn Fn(f64) -> Matrix2 + Send + Sync>;

#[derive(Clone)]
enum SForm {
    Constant(Matrix2),
    Field(MatrixField),
}

/// k -> S(k), a 2x2 matrix field acting in the momentum representation.
#[derive(Clone)]
pub struct SMatrixFunction {
    form: SForm,
    declared_unitary: bool,
}

impl std::fmt::Debug for SMatrixFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut d = f.debug_struct("SMatrixFunction");
        if let SForm::Constant(m) = &self.form {
            d.field("constant", m);
        }
        d.field("declared_unitary", &self.declared_unitary).finish()
    }
}

fn matrix_unitarity_defect(m: &Matrix2) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let s: Complex64 = m[i].iter().zip(&m[j]).map(|(a, b)| a * b.conj()).sum();
            let id = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - id).norm());
        }
    }
    worst
}

fn check_finite(m: &Matrix2) -> Result<()> {
    if m.iter().flatten().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("scattering matrix has non-finite entries".into()))
    }
}

impl SMatrixFunction {
    /// Constant matrix; a unitary declaration is verified.
    pub fn constant(m: Matrix2, declared_unitary: bool) -> Result<Self> {
        check_finite(&m)?;
        if declared_unitary {
            let d = matrix_unitarity_defect(&m);
            if d > UNITARY_TOL {
                return Err(Error::NonUnitary(d));
            }
        }
        Ok(Self { form: SForm::Constant(m), declared_unitary })
    }

    /// diag(s0, s1).
    pub fn diagonal(s0: Complex64, s1: Complex64) -> Result<Self> {
        let unitary = ((s0.norm() - 1.0).abs() <= UNITARY_TOL) && ((s1.norm() - 1.0).abs() <= UNITARY_TOL);
        Self::constant([[s0, zero()], [zero(), s1]], unitary)
    }

    /// The AB extension: diag(e^{-i pi alpha}, e^{i pi alpha}).
    pub fn aharonov_bohm(alpha: f64) -> Result<Self> {
        let a = FluxParameter::new(alpha)?.value();
        Self::diagonal(Complex64::from_polar(1.0, -PI * a), Complex64::from_polar(1.0, PI * a))
    }

    /// Matrix field; a unitary declaration is checked where it is sampled.
    pub fn from_fn<F>(f: F, declared_unitary: bool) -> Self
    where
        F: Fn(f64) -> Matrix2 + Send + Sync + 'static,
    {
        Self { form: SForm::Field(Arc::new(f)), declared_unitary }
    }

    pub fn declared_unitary(&self) -> bool {
        self.declared_unitary
    }

    pub fn eval(&self, k: f64) -> Matrix2 {
        match &self.form {
            SForm::Constant(m) => *m,
            SForm::Field(f) => f(k),
        }
    }

    /// max over the given momenta of |S S* - I|.
    pub fn unitarity_defect(&self, ks: &[f64]) -> f64 {
        match &self.form {
            SForm::Constant(m) => matrix_unitarity_defect(m),
            SForm::Field(f) => ks.iter().map(|&k| matrix_unitarity_defect(&f(k))).fold(0.0, f64::max),
        }
    }

    /// Pointwise conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let adj = |m: Matrix2| [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]];
        let form = match &self.form {
            SForm::Constant(m) => SForm::Constant(adj(*m)),
            SForm::Field(f) => {
                let f = f.clone();
                SForm::Field(Arc::new(move |k| adj(f(k))))
            }
        };
        Self { form, declared_unitary: self.declared_unitary }
    }

    /// S - diag(c0, c1).
    fn minus_diagonal(&self, c0: Complex64, c1: Complex64) -> Self {
        let shift = move |mut m: Matrix2| {
            m[0][0] -= c0;
            m[1][1] -= c1;
            m
        };
        let form = match &self.form {
            SForm::Constant(m) => SForm::Constant(shift(*m)),
            SForm::Field(f) => {
                let f = f.clone();
                SForm::Field(Arc::new(move |k| shift(f(k))))
            }
        };
        Self { form, declared_unitary: false }
    }
}

/// Boundary-condition triple of a self-adjoint extension; carried as metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionParameters {
    pub eta: f64,
    pub a: Complex64,
    pub b: Complex64,
}

impl ExtensionParameters {
    pub fn new(eta: f64, a: Complex64, b: Complex64) -> Result<Self> {
        let s = a.norm_sqr() + b.norm_sqr();
        if !eta.is_finite() || (s - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("need finite eta and |a|^2 + |b|^2 = 1, got {s}")));
        }
        Ok(Self { eta, a, b })
    }
}

/// Numerical settings shared by the routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteOptions {
    pub branch: Branch,
    pub inverse: InverseOptions,
    pub ab_symbol: SymbolOptions,
    pub tilde_symbol: SymbolOptions,
}

impl Default for RouteOptions {
    fn default() -> Self {
        Self {
            branch: Branch::Upper,
            inverse: InverseOptions::default(),
            ab_symbol: SymbolOptions::default(),
            tilde_symbol: SymbolOptions { bandwidth: 100.0 },
        }
    }
}

/// S_m = e^{2 i delta_m}.
pub fn channel_scattering(m: i64, alpha: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * delta_phase(m, alpha))
}

fn i_pow_int(m: u64) -> Complex64 {
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)]
        [(m % 4) as usize]
}

/// Omega_pm,m g = i^|m| e^{-/+ i delta} int k J_|m+alpha|(k r) [F_m g](k) dk.
pub fn wave_ab_stationary(m: i64, alpha: f64, sign: Sign, g: &RadialFunction) -> Result<RadialFunction> {
    Ok(wave_ab_stationary_with(m, alpha, sign, g, &RouteOptions::default())?.0)
}

pub fn wave_ab_stationary_with(
    m: i64,
    alpha: f64,
    sign: Sign,
    g: &RadialFunction,
    opts: &RouteOptions,
) -> Result<(RadialFunction, TruncationReport)> {
    let a = FluxParameter::new(alpha)?.value();
    let d = delta_phase(m, a);
    let pref = i_pow_int(m.unsigned_abs()) * Complex64::from_polar(1.0, -sign.as_f64() * d);
    let fg = hankel_transform(g, m, false)?;
    generalized_inverse_hankel(&fg, (m as f64 + a).abs(), pref, BesselKind::J, opts.inverse)
}

/// phi_m^pm(A) g.
pub fn wave_ab_spectral(m: i64, alpha: f64, sign: Sign, g: &RadialFunction) -> Result<RadialFunction> {
    wave_ab_spectral_with(m, alpha, sign, g, &RouteOptions::default())
}

pub fn wave_ab_spectral_with(
    m: i64,
    alpha: f64,
    sign: Sign,
    g: &RadialFunction,
    opts: &RouteOptions,
) -> Result<RadialFunction> {
    apply_multiplier(&phi_ab_with(m, alpha, sign, opts.ab_symbol)?, g)
}

/// The kernel form of phi_m^pm(A) g.
pub fn wave_ab_mellin(m: i64, alpha: f64, sign: Sign, g: &RadialFunction) -> Result<RadialFunction> {
    mellin_convolve(&MellinKernel::phi_ab(m, alpha, sign)?, g)
}

fn check_tilde_channel(m: i64) -> Result<()> {
    if m == 0 || m == -1 {
        Ok(())
    } else {
        Err(Error::UnsupportedChannel(format!("T_m is defined for m in {{0, -1}}, got {m}")))
    }
}

/// T_m g = 1/2 i^|m+alpha| int k H1_|m+alpha|(k r) [F_m g](k) dk, m in {0, -1}.
pub fn t_op_stationary(m: i64, alpha: f64, g: &RadialFunction) -> Result<RadialFunction> {
    Ok(t_op_stationary_with(m, alpha, g, &RouteOptions::default())?.0)
}

pub fn t_op_stationary_with(
    m: i64,
    alpha: f64,
    g: &RadialFunction,
    opts: &RouteOptions,
) -> Result<(RadialFunction, TruncationReport)> {
    check_tilde_channel(m)?;
    let a = FluxParameter::new(alpha)?.value();
    let mu = (m as f64 + a).abs();
    let pref = Complex64::from_polar(0.5, 0.5 * PI * mu);
    let fg = hankel_transform(g, m, false)?;
    generalized_inverse_hankel(&fg, mu, pref, BesselKind::H1, opts.inverse)
}

/// phi~_m(A) g.
pub fn t_op_spectral(m: i64, alpha: f64, g: &RadialFunction) -> Result<RadialFunction> {
    t_op_spectral_with(m, alpha, g, &RouteOptions::default())
}

pub fn t_op_spectral_with(m: i64, alpha: f64, g: &RadialFunction, opts: &RouteOptions) -> Result<RadialFunction> {
    check_tilde_channel(m)?;
    apply_multiplier(&phi_tilde_with(m, alpha, opts.branch, opts.tilde_symbol)?, g)
}

/// F* S(k) F on the two channels (F_0 on f0, F_-1 on fm1).
pub fn apply_smatrix(s: &SMatrixFunction, f: &TwoChannelFunction) -> Result<TwoChannelFunction> {
    let grid = f.grid();
    f.f0.grid.ensure_same(&f.fm1.grid)?;
    match &s.form {
        SForm::Constant(m) => {
            check_finite(m)?;
            // diagonal entries commute with the per-channel transforms
            let mut f0 = f.f0.scale(m[0][0]);
            let mut fm1 = f.fm1.scale(m[1][1]);
            if m[0][1] != zero() {
                let cross = hankel_transform(&hankel_transform(&f.fm1, -1, false)?, 0, true)?;
                f0 = f0.add(&cross.scale(m[0][1]))?;
            }
            if m[1][0] != zero() {
                let cross = hankel_transform(&hankel_transform(&f.f0, 0, false)?, -1, true)?;
                fm1 = fm1.add(&cross.scale(m[1][0]))?;
            }
            Ok(TwoChannelFunction { f0, fm1 })
        }
        SForm::Field(field) => {
            let a0 = hankel_transform(&f.f0, 0, false)?;
            let a1 = hankel_transform(&f.fm1, -1, false)?;
            let mut b0 = RadialFunction::zeros(grid);
            let mut b1 = RadialFunction::zeros(grid);
            for j in 0..grid.len() {
                let mat = field(grid.r(j));
                check_finite(&mat)?;
                b0.values[j] = mat[0][0] * a0.values[j] + mat[0][1] * a1.values[j];
                b1.values[j] = mat[1][0] * a0.values[j] + mat[1][1] * a1.values[j];
            }
            Ok(TwoChannelFunction { f0: hankel_transform(&b0, 0, true)?, fm1: hankel_transform(&b1, -1, true)? })
        }
    }
}

/// Omega_-^U f = diag(phi_0^-, phi_-1^-)(A) f
///             + diag(phi~_0, phi~_-1)(A) [S(-Delta) - diag(e^{-i pi alpha}, e^{i pi alpha})] f.
pub fn assemble_omega_minus(alpha: f64, s: &SMatrixFunction, f: &TwoChannelFunction) -> Result<TwoChannelFunction> {
    assemble_omega_minus_with(alpha, s, f, &RouteOptions::default())
}

pub fn assemble_omega_minus_with(
    alpha: f64,
    s: &SMatrixFunction,
    f: &TwoChannelFunction,
    opts: &RouteOptions,
) -> Result<TwoChannelFunction> {
    let a = FluxParameter::new(alpha)?.value();
    let base = TwoChannelFunction {
        f0: wave_ab_spectral_with(0, a, Sign::Minus, &f.f0, opts)?,
        fm1: wave_ab_spectral_with(-1, a, Sign::Minus, &f.fm1, opts)?,
    };
    let shifted = s.minus_diagonal(Complex64::from_polar(1.0, -PI * a), Complex64::from_polar(1.0, PI * a));
    let bracket = apply_smatrix(&shifted, f)?;
    let mut out = base;
    if bracket.f0.values.iter().any(|v| *v != zero()) {
        out.f0 = out.f0.add(&t_op_spectral_with(0, a, &bracket.f0, opts)?)?;
    }
    if bracket.fm1.values.iter().any(|v| *v != zero()) {
        out.fm1 = out.fm1.add(&t_op_spectral_with(-1, a, &bracket.fm1, opts)?)?;
    }
    Ok(out)
}

/// Omega_+^U = Omega_-^U S(-Delta)*; S must be declared unitary.
pub fn assemble_omega_plus(alpha: f64, s: &SMatrixFunction, f: &TwoChannelFunction) -> Result<TwoChannelFunction> {
    assemble_omega_plus_with(alpha, s, f, &RouteOptions::default())
}

pub fn assemble_omega_plus_with(
    alpha: f64,
    s: &SMatrixFunction,
    f: &TwoChannelFunction,
    opts: &RouteOptions,
) -> Result<TwoChannelFunction> {
    let defect = s.unitarity_defect(&f.grid().r_values());
    if !s.declared_unitary() || defect > UNITARY_TOL {
        return Err(Error::NonUnitary(defect));
    }
    let pulled = apply_smatrix(&s.adjoint(), f)?;
    assemble_omega_minus_with(alpha, s, &pulled, opts)
}
