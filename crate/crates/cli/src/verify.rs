//! The `verify` sweep: every configured case of every gate family, in a fixed order.

use std::time::Instant;

use abwave::corpus::LogBump;
use abwave::symbols::{delta_phase, Sign};
use abwave::transforms::{LogRadialGrid, RadialFunction};
use abwave::waveop::{
    assemble_omega_minus, t_op_spectral_with, t_op_stationary, wave_ab_spectral, wave_ab_stationary, RouteOptions,
    SMatrixFunction, TwoChannelFunction,
};
use abwave::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{BranchArg, SignArg, VerifyConfig};
use crate::error::CliResult;
use crate::output::{sig17, sig17_opt};

#[derive(Debug, Clone, Serialize)]
pub struct RouteRecord {
    pub m: i64,
    #[serde(serialize_with = "sig17")]
    pub alpha: f64,
    pub sign: SignArg,
    pub bump: usize,
    #[serde(serialize_with = "sig17")]
    pub residual: f64,
    #[serde(serialize_with = "sig17_opt")]
    pub residual_refined: Option<f64>,
    #[serde(serialize_with = "sig17_opt")]
    pub ratio: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsometryRecord {
    pub m: i64,
    #[serde(serialize_with = "sig17")]
    pub alpha: f64,
    pub sign: SignArg,
    pub bump: usize,
    #[serde(serialize_with = "sig17")]
    pub spectral_defect: f64,
    #[serde(serialize_with = "sig17")]
    pub stationary_defect: f64,
    pub pass: bool,
}

/// <Omega_s g, Omega_-s h> against e^{2 i s delta} <g, h>.
#[derive(Debug, Clone, Serialize)]
pub struct ScatteringRecord {
    pub m: i64,
    #[serde(serialize_with = "sig17")]
    pub alpha: f64,
    pub sign: SignArg,
    pub bump: usize,
    pub partner: usize,
    #[serde(serialize_with = "sig17")]
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TOperatorRecord {
    pub m: i64,
    #[serde(serialize_with = "sig17")]
    pub alpha: f64,
    pub bump: usize,
    pub branch: BranchArg,
    #[serde(serialize_with = "sig17")]
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BracketRecord {
    #[serde(serialize_with = "sig17")]
    pub alpha: f64,
    pub bump: usize,
    pub partner: usize,
    #[serde(serialize_with = "sig17")]
    pub residual: f64,
    pub pass: bool,
}

/// | |Omega_- f| / |f| - 1 | for a constant rotation S; reported, never gated.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeRecord {
    #[serde(serialize_with = "sig17")]
    pub alpha: f64,
    pub bump: usize,
    pub partner: usize,
    #[serde(serialize_with = "sig17")]
    pub angle: f64,
    #[serde(serialize_with = "sig17")]
    pub norm_defect: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilySummary {
    pub family: &'static str,
    pub cases: usize,
    pub failed: usize,
    #[serde(serialize_with = "sig17")]
    pub worst: f64,
    #[serde(serialize_with = "sig17_opt")]
    pub wall_time_s: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub summary: Vec<FamilySummary>,
    pub routes: Vec<RouteRecord>,
    pub isometry: Vec<IsometryRecord>,
    pub scattering: Vec<ScatteringRecord>,
    pub t_operator: Vec<TOperatorRecord>,
    pub bracket: Vec<BracketRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assembly_probe: Option<Vec<ProbeRecord>>,
}

fn rel(a: &RadialFunction, b: &RadialFunction, scale: f64) -> CliResult<f64> {
    Ok(a.sub(b)?.norm() / scale)
}

struct WaveCase {
    m: i64,
    alpha: f64,
    sign: SignArg,
    bump: usize,
}

type WaveRecords = (RouteRecord, IsometryRecord, ScatteringRecord);

fn wave_case(cfg: &VerifyConfig, grid: LogRadialGrid, bumps: &[LogBump], c: &WaveCase) -> CliResult<WaveRecords> {
    let tol = &cfg.tolerances;
    let sign: Sign = c.sign.into();
    let other = match sign {
        Sign::Plus => Sign::Minus,
        Sign::Minus => Sign::Plus,
    };
    let g = bumps[c.bump].sample(grid);
    let gn = g.norm();
    let st = wave_ab_stationary(c.m, c.alpha, sign, &g)?;
    let sp = wave_ab_spectral(c.m, c.alpha, sign, &g)?;
    let residual = rel(&st, &sp, gn)?;
    let (residual_refined, ratio) = if cfg.convergence {
        let fine = grid.refined();
        let gf = bumps[c.bump].sample(fine);
        let r =
            rel(&wave_ab_stationary(c.m, c.alpha, sign, &gf)?, &wave_ab_spectral(c.m, c.alpha, sign, &gf)?, gf.norm())?;
        (Some(r), Some(residual / r))
    } else {
        (None, None)
    };
    let pass = residual <= tol.routes && ratio.is_none_or(|q| q >= tol.shrink);
    let t1 =
        RouteRecord { m: c.m, alpha: c.alpha, sign: c.sign, bump: c.bump, residual, residual_refined, ratio, pass };

    let spectral_defect = (sp.norm() / gn - 1.0).abs();
    let stationary_defect = (st.norm() / gn - 1.0).abs();
    let iso = IsometryRecord {
        m: c.m,
        alpha: c.alpha,
        sign: c.sign,
        bump: c.bump,
        spectral_defect,
        stationary_defect,
        pass: spectral_defect <= tol.isometry_spectral && stationary_defect <= tol.isometry_stationary,
    };

    let partner = (c.bump + 1) % bumps.len();
    let h = bumps[partner].sample(grid);
    let phase = 2.0 * sign.as_f64() * delta_phase(c.m, c.alpha);
    let want = Complex64::from_polar(1.0, phase) * g.inner(&h)?;
    let scale = gn * h.norm();
    let via_st = st.inner(&wave_ab_stationary(c.m, c.alpha, other, &h)?)?;
    let via_sp = sp.inner(&wave_ab_spectral(c.m, c.alpha, other, &h)?)?;
    let residual = ((via_st - want).norm() / scale).max((via_sp - want).norm() / scale);
    let sc = ScatteringRecord {
        m: c.m,
        alpha: c.alpha,
        sign: c.sign,
        bump: c.bump,
        partner,
        residual,
        pass: residual <= tol.scattering,
    };
    Ok((t1, iso, sc))
}

fn summary<T>(family: &'static str, recs: &[T], f: impl Fn(&T) -> (bool, f64), secs: Option<f64>) -> FamilySummary {
    let failed = recs.iter().filter(|r| !f(r).0).count();
    let worst = recs.iter().map(|r| f(r).1).fold(0.0, f64::max);
    FamilySummary { family, cases: recs.len(), failed, worst, wall_time_s: secs }
}

/// Run every configured case. Wall times are included only when `timings` is set,
/// so reports are otherwise bit-identical across runs.
pub fn run(cfg: &VerifyConfig, timings: bool) -> CliResult<VerifyReport> {
    cfg.validate()?;
    let grid = cfg.grid.build()?;
    let bumps: Vec<LogBump> = cfg.corpus.iter().map(|b| b.build()).collect::<CliResult<_>>()?;
    let clock = |t: Instant| timings.then(|| t.elapsed().as_secs_f64());

    let t = Instant::now();
    let mut cases = Vec::new();
    for &m in &cfg.m {
        for &alpha in &cfg.alpha {
            for &sign in &cfg.sign {
                for bump in 0..bumps.len() {
                    cases.push(WaveCase { m, alpha, sign, bump });
                }
            }
        }
    }
    let wave: Vec<WaveRecords> = cases.par_iter().map(|c| wave_case(cfg, grid, &bumps, c)).collect::<CliResult<_>>()?;
    let wave_secs = clock(t);
    let (mut routes, mut isometry, mut scattering) = (Vec::new(), Vec::new(), Vec::new());
    for (a, b, c) in wave {
        routes.push(a);
        isometry.push(b);
        scattering.push(c);
    }

    let t = Instant::now();
    let opts = RouteOptions { branch: cfg.branch.into(), ..Default::default() };
    let mut t_cases = Vec::new();
    for &m in &cfg.tilde.m {
        for &alpha in &cfg.alpha {
            for bump in 0..bumps.len() {
                t_cases.push((m, alpha, bump));
            }
        }
    }
    let t_operator: Vec<TOperatorRecord> = t_cases
        .par_iter()
        .map(|&(m, alpha, bump)| {
            let g = bumps[bump].sample(grid);
            let st = t_op_stationary(m, alpha, &g)?;
            let sp = t_op_spectral_with(m, alpha, &g, &opts)?;
            let residual = rel(&st, &sp, g.norm())?;
            Ok(TOperatorRecord {
                m,
                alpha,
                bump,
                branch: cfg.branch,
                residual,
                pass: residual <= cfg.tolerances.t_operator,
            })
        })
        .collect::<CliResult<_>>()?;
    let t_secs = clock(t);

    let t = Instant::now();
    let mut pair_cases = Vec::new();
    for &alpha in &cfg.alpha {
        for bump in 0..bumps.len() {
            pair_cases.push((alpha, bump, (bump + 1) % bumps.len()));
        }
    }
    let two_channel =
        |bump: usize, partner: usize| TwoChannelFunction::new(bumps[bump].sample(grid), bumps[partner].sample(grid));
    let bracket: Vec<BracketRecord> = pair_cases
        .par_iter()
        .map(|&(alpha, bump, partner)| {
            let f = two_channel(bump, partner)?;
            let s = SMatrixFunction::aharonov_bohm(alpha)?;
            let out = assemble_omega_minus(alpha, &s, &f)?;
            let want = TwoChannelFunction {
                f0: wave_ab_spectral(0, alpha, Sign::Minus, &f.f0)?,
                fm1: wave_ab_spectral(-1, alpha, Sign::Minus, &f.fm1)?,
            };
            let residual = out.sub(&want)?.norm() / f.norm();
            Ok(BracketRecord { alpha, bump, partner, residual, pass: residual <= cfg.tolerances.bracket })
        })
        .collect::<CliResult<_>>()?;
    let bracket_secs = clock(t);

    let assembly_probe = match cfg.probe {
        None => None,
        Some(p) => {
            let (c, s) = (p.angle.cos(), p.angle.sin());
            let rot =
                [[Complex64::new(c, 0.0), Complex64::new(-s, 0.0)], [Complex64::new(s, 0.0), Complex64::new(c, 0.0)]];
            let smat = SMatrixFunction::constant(rot, true)?;
            let recs = pair_cases
                .par_iter()
                .map(|&(alpha, bump, partner)| {
                    let f = two_channel(bump, partner)?;
                    let out = assemble_omega_minus(alpha, &smat, &f)?;
                    let norm_defect = (out.norm() / f.norm() - 1.0).abs();
                    Ok(ProbeRecord { alpha, bump, partner, angle: p.angle, norm_defect })
                })
                .collect::<CliResult<Vec<_>>>()?;
            Some(recs)
        }
    };

    let summary = vec![
        summary("routes", &routes, |r| (r.pass, r.residual), wave_secs),
        summary("isometry", &isometry, |r| (r.pass, r.spectral_defect.max(r.stationary_defect)), wave_secs),
        summary("scattering", &scattering, |r| (r.pass, r.residual), wave_secs),
        summary("t_operator", &t_operator, |r| (r.pass, r.residual), t_secs),
        summary("bracket", &bracket, |r| (r.pass, r.residual), bracket_secs),
    ];
    let pass = summary.iter().all(|s| s.failed == 0);
    Ok(VerifyReport { pass, summary, routes, isometry, scattering, t_operator, bracket, assembly_probe })
}
