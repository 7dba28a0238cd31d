//! Command-line front end.
//!
//! Settings resolve as command-line flag, then `--config` file entry, then
//! built-in default. The config file holds `key=value` lines whose keys are
//! the long flag names without dashes (`g`, `h`, `x-min`, `seed`, ...); blank
//! lines and lines starting with `#` are skipped.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bounds::{cutset_diamond, cutset_symmetric_n, CutsetResult};
use crate::energy::ebit;
use crate::error::{RelayError, Result};
use crate::network::{normalize, NetworkConfig, NormalizedNetwork};
use crate::schemes::{rate_af, rate_baf, rate_bspdf_opt, rate_df, rate_tspdf_opt, RateResult};
use crate::sweep::{figure_points, read_csv, run_job, verify_rows, write_csv, Family, SweepJob};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "RELAYLAB_THREADS";

/// Relative slack allowed by `verify`.
pub const VERIFY_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "relaylab",
    version,
    about = "Rates and bounds for Gaussian parallel relay networks"
)]
pub struct Cli {
    /// `key=value` file with defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rate of one scheme (or the cut-set bound) on one network.
    Rate(NetworkArgs),
    /// Curve sweep over x = h/g, written as CSV.
    Sweep(SweepArgs),
    /// Minimum energy-per-bit bounds of a symmetric diamond network.
    Ebit(NetworkArgs),
    /// Data behind one of the standard figures (fig3 to fig8), written as CSV.
    Figure {
        id: String,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Checks a sweep CSV: achievable rows below the cut-set rows, energy ratios at least 1.
    Verify { csv: PathBuf },
}

#[derive(Debug, Args)]
pub struct NetworkArgs {
    /// df, af, baf, bspdf, tspdf or cutset.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Source-to-relay gains, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,
    /// Relay-to-destination gains, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    /// Source power.
    #[arg(long)]
    pub ps: Option<String>,
    /// Relay powers, comma separated (one value applies to all relays).
    #[arg(long)]
    pub pr: Option<String>,
    /// Noise variance.
    #[arg(long)]
    pub n0: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long = "x-min")]
    pub x_min: Option<String>,
    #[arg(long = "x-max")]
    pub x_max: Option<String>,
    #[arg(long)]
    pub points: Option<String>,
    /// Log-spaced grid (true/false).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub log: Option<String>,
    #[arg(long)]
    pub seed: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// sym2, symN, asym2 or energy.
    #[arg(long)]
    pub family: Option<String>,
    /// Comma separated scheme labels; all schemes of the family when absent.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Relay count of the symN family.
    #[arg(long)]
    pub n: Option<String>,
    #[command(flatten)]
    pub range: RangeArgs,
}

/// Flag values layered over a config file.
struct Settings {
    file: HashMap<String, String>,
}

impl Settings {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut file = HashMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path).map_err(|e| RelayError::Io(format!("{}: {e}", path.display())))?;
            for (no, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    return Err(RelayError::usage(format!(
                        "{}:{}: expected key=value",
                        path.display(),
                        no + 1
                    )));
                };
                file.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Settings { file })
    }

    fn raw(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.file.get(key).cloned())
    }

    fn get<T: std::str::FromStr>(&self, flag: &Option<String>, key: &str, default: T) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        match self.raw(flag, key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|e| RelayError::usage(format!("--{key} '{v}': {e}"))),
        }
    }

    fn list(&self, flag: &Option<String>, key: &str) -> Result<Option<Vec<f64>>> {
        self.raw(flag, key).map(|v| parse_list(key, &v)).transpose()
    }

    fn out(&self, flag: &Option<PathBuf>) -> Option<PathBuf> {
        flag.clone().or_else(|| self.file.get("out").map(PathBuf::from))
    }
}

fn parse_list(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| RelayError::usage(format!("--{key} '{v}': {e}")))
        })
        .collect()
}

fn network(args: &NetworkArgs, s: &Settings) -> Result<NetworkConfig> {
    let g = s
        .list(&args.g, "g")?
        .ok_or_else(|| RelayError::usage("--g is required"))?;
    let h = s
        .list(&args.h, "h")?
        .ok_or_else(|| RelayError::usage("--h is required"))?;
    let ps = s.get(&args.ps, "ps", 1.0)?;
    let pr = match s.list(&args.pr, "pr")? {
        None => vec![1.0; g.len()],
        Some(v) if v.len() == 1 => vec![v[0]; g.len()],
        Some(v) => v,
    };
    let n0 = s.get(&args.n0, "n0", 1.0)?;
    NetworkConfig::new(g, h, ps, pr, n0)
}

fn cutset(net: &NormalizedNetwork) -> Result<CutsetResult> {
    match net.n_relays() {
        2 => cutset_diamond(net),
        n if net.is_symmetric() => cutset_symmetric_n(n, net.g()[0], net.h()[0]),
        _ => Err(RelayError::domain(
            "the cut-set bound covers two-relay networks and symmetric networks",
        )),
    }
}

fn print_rate(out: &mut impl Write, r: &RateResult, net: &NormalizedNetwork) -> Result<()> {
    writeln!(out, "{:.6} bits", r.rate_bits)?;
    if let Some((r1, r2)) = r.rate_split {
        writeln!(out, "split {r1:.6} {r2:.6}")?;
    }
    let params = serde_json::to_string(&r.params).map_err(|e| RelayError::Io(e.to_string()))?;
    writeln!(out, "params {params}")?;
    writeln!(out, "relay_order {:?}", net.permutation())?;
    writeln!(out, "active {}", r.active_constraints.join(", "))?;
    writeln!(out, "boundary {}", r.supremum_on_boundary)?;
    Ok(())
}

fn cmd_rate(args: &NetworkArgs, s: &Settings, out: &mut impl Write) -> Result<()> {
    let scheme: String = s.get(&args.scheme, "scheme", String::new())?;
    if scheme.is_empty() {
        return Err(RelayError::usage("--scheme is required"));
    }
    let known = ["df", "af", "baf", "bspdf", "tspdf", "cutset"];
    if !known.contains(&scheme.as_str()) {
        return Err(RelayError::usage(format!(
            "unknown scheme '{scheme}' (expected one of {})",
            known.join(", ")
        )));
    }
    let net = normalize(&network(args, s)?)?;
    let result = match scheme.as_str() {
        "cutset" => {
            let c = cutset(&net)?;
            writeln!(out, "{:.6} bits", c.bound_bits)?;
            writeln!(out, "rho_star {:.6}", c.rho_star)?;
            writeln!(out, "active_cut {}", c.active_cut)?;
            return Ok(());
        }
        "df" => rate_df(&net),
        "af" => rate_af(&net)?,
        "baf" => rate_baf(&net)?,
        "bspdf" => rate_bspdf_opt(&net)?,
        _ => rate_tspdf_opt(&net)?,
    };
    print_rate(out, &result, &net)
}

fn cmd_ebit(args: &NetworkArgs, s: &Settings, out: &mut impl Write) -> Result<()> {
    let g = s
        .list(&args.g, "g")?
        .ok_or_else(|| RelayError::usage("--g is required"))?;
    let h = s
        .list(&args.h, "h")?
        .ok_or_else(|| RelayError::usage("--h is required"))?;
    if g.iter().any(|&v| v != g[0]) || h.iter().any(|&v| v != h[0]) {
        return Err(RelayError::domain(
            "energy bounds cover the symmetric diamond: give one g and one h",
        ));
    }
    let n0 = s.get(&args.n0, "n0", 1.0)?;
    let seed = s.get(&args.seed, "seed", 0u64)?;
    let r = ebit(g[0], h[0], n0, seed)?;
    writeln!(out, "lower {:.6e}", r.lower)?;
    for (k, name) in ["df", "baf", "bspdf"].iter().enumerate() {
        let upper = [r.upper_df, r.upper_baf, r.upper_bspdf][k];
        writeln!(
            out,
            "upper_{name} {upper:.6e} ratio {:.6} gamma_star {:.6e}",
            r.ratios[k], r.gamma_star[k]
        )?;
    }
    Ok(())
}

fn apply_range(job: &mut SweepJob, r: &RangeArgs, s: &Settings) -> Result<()> {
    job.x_min = s.get(&r.x_min, "x-min", job.x_min)?;
    job.x_max = s.get(&r.x_max, "x-max", job.x_max)?;
    job.points = s.get(&r.points, "points", job.points)?;
    job.log_spaced = s.get(&r.log, "log", job.log_spaced)?;
    job.seed = s.get(&r.seed, "seed", job.seed)?;
    job.validate()
}

fn emit(points: &[crate::asymptotic::CurvePoint], path: Option<PathBuf>, out: &mut impl Write) -> Result<()> {
    match path {
        Some(p) => {
            let file = fs::File::create(&p).map_err(|e| RelayError::Io(format!("{}: {e}", p.display())))?;
            write_csv(points, io::BufWriter::new(file))
        }
        None => write_csv(points, out),
    }
}

fn cmd_sweep(args: &SweepArgs, s: &Settings, out: &mut impl Write) -> Result<()> {
    let family: Family = s.get(&args.family, "family", "sym2".to_string())?.parse()?;
    let mut job = SweepJob::new(family, family.schemes());
    if let Some(list) = s.raw(&args.scheme, "scheme") {
        job.schemes = list.split(',').map(|x| x.trim().to_string()).collect();
    }
    job.n = s.get(&args.n, "n", 2)?;
    apply_range(&mut job, &args.range, s)?;
    let points = run_job(&job)?;
    emit(&points, s.out(&args.range.out), out)
}

fn cmd_figure(id: &str, range: &RangeArgs, s: &Settings, out: &mut impl Write) -> Result<()> {
    let mut base = SweepJob::new(Family::Sym2, &["cutset"]);
    apply_range(&mut base, range, s)?;
    let points = figure_points(id, &base)?;
    emit(&points, s.out(&range.out), out)
}

fn cmd_verify(path: &Path, out: &mut impl Write) -> Result<()> {
    let file = fs::File::open(path).map_err(|e| RelayError::Io(format!("{}: {e}", path.display())))?;
    let rows = read_csv(io::BufReader::new(file))?;
    let checked = verify_rows(&rows, VERIFY_TOL)?;
    writeln!(out, "ok: {checked} rows checked")?;
    Ok(())
}

/// Sizes the global thread pool from [`THREADS_ENV`].
pub fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| RelayError::usage(format!("{THREADS_ENV}='{v}' must be a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| RelayError::Io(e.to_string()))
}

/// Runs a parsed command, writing results to `out`.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<()> {
    let s = Settings::load(cli.config.as_deref())?;
    match &cli.command {
        Command::Rate(a) => cmd_rate(a, &s, out),
        Command::Sweep(a) => cmd_sweep(a, &s, out),
        Command::Ebit(a) => cmd_ebit(a, &s, out),
        Command::Figure { id, range } => cmd_figure(id, range, &s, out),
        Command::Verify { csv } => cmd_verify(csv, out),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match init_threads().and_then(|_| run(&cli, &mut out)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("relaylab: {e}");
            e.exit_code()
        }
    }
}
