//! Verification sweep configuration (JSON). Schema: `CONFIG.md`.

use abwave::corpus::LogBump;
use abwave::specfun::Branch;
use abwave::symbols::Sign;
use abwave::transforms::LogRadialGrid;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const DEFAULT_CONFIG: &str = include_str!("../configs/default.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SignArg {
    Plus,
    Minus,
}

impl From<SignArg> for Sign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => Sign::Plus,
            SignArg::Minus => Sign::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum BranchArg {
    #[default]
    Upper,
    Lower,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Upper => Branch::Upper,
            BranchArg::Lower => Branch::Lower,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub u_min: f64,
    pub u_max: f64,
    pub n: usize,
}

impl GridSpec {
    pub fn build(&self) -> CliResult<LogRadialGrid> {
        if !self.n.is_power_of_two() {
            return Err(CliError::Usage(format!("grid size must be a power of two, got {}", self.n)));
        }
        Ok(LogRadialGrid::new(self.u_min, self.u_max, self.n)?)
    }
}

/// Parse `u_min,u_max,n`.
pub fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected u_min,u_max,n, got '{s}'"));
    }
    let f = |p: &str| p.parse::<f64>().map_err(|e| format!("'{p}': {e}"));
    let n = parts[2].parse::<usize>().map_err(|e| format!("'{}': {e}", parts[2]))?;
    Ok(GridSpec { u_min: f(parts[0])?, u_max: f(parts[1])?, n })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpSpec {
    pub center: f64,
    pub width: f64,
    #[serde(default)]
    pub frequency: f64,
}

impl BumpSpec {
    pub fn build(&self) -> CliResult<LogBump> {
        Ok(LogBump::new(self.center, self.width, self.frequency)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// stationary vs spectral wave operator, relative L2
    pub routes: f64,
    /// minimum residual ratio when n doubles
    pub shrink: f64,
    pub isometry_spectral: f64,
    pub isometry_stationary: f64,
    pub scattering: f64,
    pub t_operator: f64,
    pub bracket: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TildeSection {
    pub m: Vec<i64>,
}

impl Default for TildeSection {
    fn default() -> Self {
        Self { m: vec![0, -1] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeSpec {
    /// rotation angle of the constant unitary S fed to the assembly
    pub angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub alpha: Vec<f64>,
    pub m: Vec<i64>,
    pub sign: Vec<SignArg>,
    pub grid: GridSpec,
    pub corpus: Vec<BumpSpec>,
    pub tolerances: Tolerances,
    #[serde(default)]
    pub branch: BranchArg,
    #[serde(default = "yes")]
    pub convergence: bool,
    #[serde(default)]
    pub tilde: TildeSection,
    #[serde(default)]
    pub probe: Option<ProbeSpec>,
}

fn yes() -> bool {
    true
}

impl VerifyConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn shipped() -> Self {
        Self::from_json(DEFAULT_CONFIG).expect("shipped config is valid")
    }

    /// Structural checks; a zero tolerance is accepted (the gate then fails).
    pub fn validate(&self) -> CliResult<()> {
        let usage = |m: String| Err(CliError::Usage(m));
        if self.alpha.is_empty() || self.m.is_empty() || self.sign.is_empty() || self.corpus.is_empty() {
            return usage("alpha, m, sign and corpus lists must be non-empty".into());
        }
        if let Some(a) = self.alpha.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
            return usage(format!("alpha must lie in (0, 1), got {a}"));
        }
        if let Some(m) = self.tilde.m.iter().find(|m| **m != 0 && **m != -1) {
            return usage(format!("phi~ section: channel m = {m} is unsupported (only 0 and -1)"));
        }
        let t = &self.tolerances;
        let all =
            [t.routes, t.shrink, t.isometry_spectral, t.isometry_stationary, t.scattering, t.t_operator, t.bracket];
        if all.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return usage("tolerances must be finite and non-negative".into());
        }
        let grid = self.grid.build()?;
        for b in &self.corpus {
            let bump = b.build()?;
            if !bump.fits(&grid) {
                let (ra, rb) = bump.support();
                return usage(format!(
                    "bump support [{ra}, {rb}] is not inside (e^(u_min+1), e^(u_max-1)) = ({}, {})",
                    (grid.u_min() + 1.0).exp(),
                    (grid.u_max() - 1.0).exp()
                ));
            }
        }
        if let Some(p) = self.probe {
            if !p.angle.is_finite() {
                return usage("probe angle must be finite".into());
            }
        }
        Ok(())
    }
}
