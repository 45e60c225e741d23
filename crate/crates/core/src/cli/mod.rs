//! The `cvkey` command-line front end.
//!
//! Exit codes: 0 on success, 2 on configuration errors (including bad
//! flags), 3 on numerical-consistency or solver failures, 4 when a solver
//! finds no key at all. `CVKEY_THREADS` caps the sweep thread pool.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::analysis::{
    max_distance, min_efficiency, separability_threshold, sweep, SweepAxis, SweepSpec, DEFAULT_TOL_ETA,
    DEFAULT_TOL_KM,
};
use crate::channel::transmit;
use crate::error::{Error, Result};
use crate::fock::oracle_check;
use crate::gaussian::{log_negativity, pt_min_symplectic};
use crate::keyrate::secret_key_rate;
use config::{Defaults, PartialConfig, RunConfig};
use output::num;

pub const THREADS_ENV: &str = "CVKEY_THREADS";

const ORACLE_PROB_TOL: f64 = 1e-8;
const ORACLE_CM_TOL: f64 = 1e-6;
const ORACLE_DEFAULT_R: f64 = 0.5;

#[derive(Debug, Parser)]
#[command(name = "cvkey", version, about = "CV-QKD key rates under mode-mismatch noise")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Key-rate breakdown at a single operating point.
    Rate(CommonArgs),
    /// Key rate against fibre length.
    SweepDistance(SweepArgs),
    /// Key rate against detector efficiency.
    SweepEta(SweepArgs),
    /// Longest fibre with positive key.
    MaxDistance(SolverArgs),
    /// Lowest detector efficiency with positive key.
    MinEta(SolverArgs),
    /// Separability threshold and logarithmic negativity.
    Entanglement(CommonArgs),
    /// Compare the heralded-state formulas against a truncated Fock simulation.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// TOML configuration file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// tmsv | subtracted | zpc | zpc-loss
    #[arg(long)]
    resource: Option<String>,
    /// Heralded photon number for `subtracted`.
    #[arg(long)]
    k: Option<u32>,
    /// Ancilla loss probability for `zpc-loss`.
    #[arg(long, visible_alias = "loss-prob")]
    p: Option<f64>,
    #[arg(long, conflicts_with = "cosh2r")]
    r: Option<f64>,
    #[arg(long)]
    cosh2r: Option<f64>,
    /// Ancilla beamsplitter transmittance.
    #[arg(long)]
    tbs: Option<f64>,
    /// Mode-mismatch noise, overriding the multimode parameters.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    n_unmatched: Option<u32>,
    #[arg(long)]
    m_matched: Option<u32>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    n_bar: Option<f64>,
    #[arg(long)]
    length_km: Option<f64>,
    #[arg(long)]
    loss_coeff: Option<f64>,
    /// Detector efficiency.
    #[arg(long)]
    eta: Option<f64>,
    /// Reconciliation efficiency.
    #[arg(long)]
    beta: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    #[arg(long)]
    start: Option<f64>,
    /// Exclusive upper end of the grid.
    #[arg(long)]
    stop: Option<f64>,
    #[arg(long)]
    step: Option<f64>,
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Bisection tolerance (km for max-distance, absolute for min-eta).
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Fock cutoff per mode.
    #[arg(long)]
    cutoff: Option<usize>,
}

impl CommonArgs {
    fn partial(&self) -> PartialConfig {
        let mut p = PartialConfig { output: self.output.clone(), ..Default::default() };
        p.resource.kind = self.resource.clone();
        p.resource.k = self.k;
        p.resource.p = self.p;
        p.resource.r = self.r;
        p.resource.cosh2r = self.cosh2r;
        p.resource.t_bs = self.tbs;
        p.mismatch.delta = self.delta;
        p.mismatch.n_unmatched = self.n_unmatched;
        p.mismatch.m_matched = self.m_matched;
        p.mismatch.epsilon = self.epsilon;
        p.mismatch.alpha = self.alpha;
        p.mismatch.n_bar = self.n_bar;
        p.channel.length_km = self.length_km;
        p.channel.loss_coeff = self.loss_coeff;
        p.channel.eta = self.eta;
        p.channel.beta = self.beta;
        p
    }

    fn load(&self, extra: impl FnOnce(&mut PartialConfig), defaults: Defaults) -> Result<RunConfig> {
        let base = match &self.config {
            Some(path) => PartialConfig::from_file(path)?,
            None => PartialConfig::default(),
        };
        let mut flags = self.partial();
        extra(&mut flags);
        base.overlay(&flags).resolve(defaults)
    }
}

/// Runs the CLI with the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the CLI writing CSV to `out` (unless an output file is configured)
/// and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let n: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::config(format!("{THREADS_ENV} must be a positive integer, got '{value}'")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Error::config(format!("cannot start thread pool: {e}")))
}

/// Writes `body` to the configured file, or to `out`.
fn emit(cfg: &RunConfig, out: &mut dyn Write, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    match &cfg.output {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            body(&mut file)?;
            file.flush()?;
        }
        None => {
            body(out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn dispatch(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let distance = Defaults::for_axis(SweepAxis::DistanceKm, DEFAULT_TOL_KM);
    match command {
        Command::Rate(args) => {
            let cfg = args.load(|_| {}, distance)?;
            let b = secret_key_rate(&cfg.resource, &cfg.mismatch, &cfg.channel)?;
            let delta = cfg.mismatch.delta()?;
            emit(&cfg, out, |w| output::write_rate(w, &cfg.resource, delta, &b, cfg.channel.length_km, cfg.channel.eta))?;
        }
        Command::SweepDistance(args) | Command::SweepEta(args) => {
            let axis = match command {
                Command::SweepDistance(_) => SweepAxis::DistanceKm,
                _ => SweepAxis::DetectorEta,
            };
            let cfg = args.common.load(
                |p| {
                    p.sweep.start = args.start;
                    p.sweep.stop = args.stop;
                    p.sweep.step = args.step;
                },
                Defaults::for_axis(axis, DEFAULT_TOL_KM),
            )?;
            let (start, stop, step) = cfg.window;
            let spec = SweepSpec {
                axis,
                start,
                stop,
                step,
                resource: cfg.resource,
                mismatch: cfg.mismatch,
                channel: cfg.channel,
            };
            let rows = thread_pool()?.install(|| sweep(&spec))?;
            emit(&cfg, out, |w| output::write_sweep(w, axis, &rows))?;
        }
        Command::MaxDistance(args) => {
            let cfg = args.common.load(|p| p.solver.tol = args.tol, distance)?;
            let l = max_distance(&cfg.resource, &cfg.mismatch, &cfg.channel, cfg.tol)?;
            let delta = cfg.mismatch.delta()?;
            emit(&cfg, out, |w| {
                writeln!(w, "resource,delta,eta,beta,max_distance_km")?;
                writeln!(w, "{},{},{},{},{}", cfg.resource.kind.label(), num(delta), num(cfg.channel.eta), num(cfg.channel.beta), num(l))
            })?;
            writeln!(err, "maximum distance: {l:.3} km")?;
        }
        Command::MinEta(args) => {
            let defaults = Defaults { tol: DEFAULT_TOL_ETA, ..distance };
            let cfg = args.common.load(|p| p.solver.tol = args.tol, defaults)?;
            let eta = min_efficiency(&cfg.resource, &cfg.mismatch, &cfg.channel, cfg.tol)?;
            let delta = cfg.mismatch.delta()?;
            emit(&cfg, out, |w| {
                writeln!(w, "resource,delta,L_km,beta,min_eta")?;
                writeln!(w, "{},{},{},{},{}", cfg.resource.kind.label(), num(delta), num(cfg.channel.length_km), num(cfg.channel.beta), num(eta))
            })?;
            writeln!(err, "minimum detector efficiency: {eta:.6}")?;
        }
        Command::Entanglement(args) => {
            let cfg = args.load(|_| {}, distance)?;
            let delta = cfg.mismatch.delta()?;
            let source = cfg.resource.noisy_covariance(delta)?;
            let shared = transmit(&source, &cfg.channel)?;
            let l_min = pt_min_symplectic(&source)?;
            let e_source = log_negativity(&source)?;
            let e_shared = log_negativity(&shared)?;
            let threshold = separability_threshold(cfg.resource.r)?;
            emit(&cfg, out, |w| {
                writeln!(w, "resource,r,delta,tmsv_delta_threshold,l_min_source,log_negativity_source,log_negativity_shared,entangled")?;
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{}",
                    cfg.resource.kind.label(),
                    num(cfg.resource.r),
                    num(delta),
                    num(threshold),
                    num(l_min),
                    num(e_source),
                    num(e_shared),
                    e_source > 0.0
                )
            })?;
        }
        Command::OracleCheck(args) => {
            let defaults = Defaults { r: ORACLE_DEFAULT_R, ..distance };
            let cfg = args.common.load(|p| p.oracle.cutoff = args.cutoff, defaults)?;
            let ks: Vec<u32> = match args.common.k {
                Some(k) => vec![k],
                None => vec![0, 1, 2],
            };
            let rows = ks
                .iter()
                .map(|&k| {
                    let c = oracle_check(cfg.resource.r, cfg.resource.t_bs, k, cfg.cutoff)?;
                    let pass = c.prob_deviation() <= ORACLE_PROB_TOL && c.cm_deviation <= ORACLE_CM_TOL;
                    Ok((c, pass))
                })
                .collect::<Result<Vec<_>>>()?;
            emit(&cfg, out, |w| output::write_oracle(w, &rows))?;
            if rows.iter().any(|(_, pass)| !pass) {
                writeln!(err, "oracle disagrees with the closed forms")?;
                return Ok(3);
            }
        }
    }
    Ok(0)
}
