//! `abwave` command line: symbol and kernel tables, route application and
//! verification sweeps. Exit codes: 0 pass, 1 numeric failure, 2 usage, 3 i/o.

mod config;
mod error;
mod output;
mod tables;
mod verify;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use abwave::corpus::{default_corpus, LogBump};
use abwave::kernels::KernelKind;
use abwave::pairing::SWindow;
use abwave::specfun::Branch;
use clap::{Parser, Subcommand, ValueEnum};

use config::{parse_grid, BranchArg, GridSpec, SignArg, VerifyConfig};
use error::{CliError, CliResult};
use output::emit;
use tables::Route;

#[derive(Parser)]
#[command(name = "abwave", version, about = "Aharonov-Bohm wave operators: tables and verification sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate phi_m^{+-}(x), or phi~_m(x) with --tilde.
    Symbols {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
        /// x0,x1
        #[arg(long, allow_hyphen_values = true, default_value = "-20,20", value_parser = parse_pair)]
        range: (f64, f64),
        #[arg(long, default_value_t = 2001)]
        n: usize,
        /// Tabulate phi~_m instead (m = 0 or -1).
        #[arg(long)]
        tilde: bool,
        #[arg(long, value_enum, default_value = "upper")]
        branch: BranchArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification sweep and write a JSON report.
    Verify {
        /// JSON config; the shipped default is used when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Override the config grid: u_min,u_max,n.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_grid)]
        grid: Option<GridSpec>,
        /// Override the config branch.
        #[arg(long, value_enum)]
        branch: Option<BranchArg>,
        /// Include wall times (the report is then no longer reproducible bit for bit).
        #[arg(long)]
        timings: bool,
        /// Print the shipped default config and exit.
        #[arg(long)]
        print_default: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the wave operator to a log bump by one route; columns r,re,im.
    Apply {
        #[arg(long, value_enum)]
        route: RouteArg,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum, default_value = "plus")]
        sign: SignArg,
        /// center,width[,frequency[,amplitude]] in ln r; defaults to the first corpus bump.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_bump)]
        bump: Option<(LogBump, f64)>,
        #[arg(long, allow_hyphen_values = true, default_value = "-12,12,4096", value_parser = parse_grid)]
        grid: GridSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Smeared pairing of a Bessel-product kernel with a bump on [a, b] (JSON),
    /// optionally checked against the damped oscillatory oracle.
    Kernel {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        nu: f64,
        /// a,b
        #[arg(long, value_parser = parse_pair)]
        window: (f64, f64),
        #[arg(long, value_enum, default_value = "upper")]
        branch: BranchArg,
        /// Also evaluate the oracle; exit 1 if the relative error exceeds --tol.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        /// Write the pointwise kernel table (s,re_k,im_k) here.
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, default_value_t = 201)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Stationary,
    Spectral,
    Mellin,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Jj,
    Hj,
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let v: Vec<f64> =
        s.split(',').map(|p| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}"))).collect::<Result<_, _>>()?;
    match v.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(format!("expected two comma-separated numbers, got '{s}'")),
    }
}

fn parse_bump(s: &str) -> Result<(LogBump, f64), String> {
    let v: Vec<f64> =
        s.split(',').map(|p| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}"))).collect::<Result<_, _>>()?;
    let (c, w, f, amp) = match v.as_slice() {
        [c, w] => (*c, *w, 0.0, 1.0),
        [c, w, f] => (*c, *w, *f, 1.0),
        [c, w, f, a] => (*c, *w, *f, *a),
        _ => return Err(format!("expected center,width[,frequency[,amplitude]], got '{s}'")),
    };
    let bump = LogBump::new(c, w, f).map_err(|e| e.to_string())?;
    Ok((bump, amp))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Symbols { m, alpha, sign, range, n, tilde, branch, out } => {
            let xs = tables::linspace(range.0, range.1, n)?;
            let tilde = tilde.then(|| Branch::from(branch));
            let csv = tables::symbols_csv(m, alpha, sign.into(), tilde, &xs)?;
            emit(out.as_deref(), &csv)
        }
        Command::Verify { config, grid, branch, timings, print_default, out } => {
            if print_default {
                return emit(out.as_deref(), config::DEFAULT_CONFIG);
            }
            let mut cfg = match config {
                None => VerifyConfig::shipped(),
                Some(p) => {
                    let text = fs::read_to_string(&p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                    VerifyConfig::from_json(&text)?
                }
            };
            if let Some(g) = grid {
                cfg.grid = g;
            }
            if let Some(b) = branch {
                cfg.branch = b;
            }
            let report = verify::run(&cfg, timings)?;
            emit(out.as_deref(), &json(&report))?;
            for s in &report.summary {
                eprintln!("{:<11} {:>4} cases, {:>4} failed, worst {:.3e}", s.family, s.cases, s.failed, s.worst);
            }
            if report.pass {
                Ok(())
            } else {
                Err(CliError::Numeric("one or more gates failed".into()))
            }
        }
        Command::Apply { route, m, alpha, sign, bump, grid, out } => {
            let grid = grid.build()?;
            let (bump, amp) = bump.unwrap_or((default_corpus()[0], 1.0));
            let g = tables::sample_bump(&bump, amp, grid)?;
            let route = match route {
                RouteArg::Stationary => Route::Stationary,
                RouteArg::Spectral => Route::Spectral,
                RouteArg::Mellin => Route::Mellin,
            };
            let f = tables::apply_route(route, m, alpha, sign.into(), &g)?;
            emit(out.as_deref(), &tables::function_csv(&f))
        }
        Command::Kernel { kind, mu, nu, window, branch, oracle, tol, table, n, out } => {
            let kind = match kind {
                KindArg::Jj => KernelKind::BesselJ,
                KindArg::Hj => KernelKind::Hankel,
            };
            let win = SWindow::new(window.0, window.1)?;
            let (dump, csv) = tables::kernel_dump(kind, mu, nu, branch.into(), win, oracle, n)?;
            if let Some(p) = table {
                emit(Some(&p), &csv)?;
            }
            emit(out.as_deref(), &json(&dump))?;
            match dump.rel_err {
                Some(e) if !(e <= tol) => Err(CliError::Numeric(format!("pairing vs oracle {e:.3e} > {tol:.1e}"))),
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("abwave: {e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
