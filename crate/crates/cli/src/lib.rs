//! Command-line front end: closed-form values, sweeps, protocol comparison and
//! the oracle verification suite.

pub mod output;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mpbt::{compare_protocols, fidelity, fidelity_terms, success_probability, ProtocolParams};
use num_traits::ToPrimitive;
use tensor_oracle::{verify_suite, OracleError, DEFAULT_MAX_DIM};

use output::{significant, write_csv, write_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_RESOURCE_CAP: i32 = 3;

/// Seed for the random operators drawn by `verify`.
pub const DEFAULT_SEED: u64 = 20190321;

#[derive(Debug, Parser)]
#[command(name = "mpbt", version, about = "Exact performance of multi-port-based teleportation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entanglement fidelity of the deterministic scheme, with one term per alpha.
    Fidelity(Instance),
    /// Exact success probability of the probabilistic scheme.
    Probability(Instance),
    /// Fidelity, probability and spectrum size over a grid of instances.
    Sweep(SweepArgs),
    /// Run every oracle check and report pass/fail per check.
    Verify(VerifyArgs),
    /// Compare with port-based teleportation of one system of dimension d^k.
    Compare(Instance),
}

#[derive(Debug, Args)]
pub struct Instance {
    /// Number of ports N.
    #[arg(long)]
    pub ports: usize,
    /// Number of teleported systems k.
    #[arg(long)]
    pub k: usize,
    /// Local dimension d.
    #[arg(long)]
    pub dim: usize,
}

impl Instance {
    fn params(&self) -> Result<ProtocolParams, mpbt::MpbtError> {
        ProtocolParams::new(self.ports, self.k, self.dim)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Port counts: a value, an inclusive range `a..b`, or a comma list.
    #[arg(long, value_parser = parse_values)]
    pub ports: Values,
    /// Teleported-system counts, same syntax.
    #[arg(long, value_parser = parse_values)]
    pub k: Values,
    /// Local dimensions, same syntax.
    #[arg(long, value_parser = parse_values)]
    pub dim: Values,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Cap on d^n for every operator the oracle builds.
    #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
    pub max_dim: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

/// A sorted, duplicate-free list of non-negative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Values(pub Vec<usize>);

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => num(s).map(|x| x..=x),
    }
}

pub fn parse_values(s: &str) -> Result<Values, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        out.extend(parse_range(part)?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(Values(out))
}

/// Valid instances of a sweep in `(N, k, d)` order, and the skipped triples.
pub fn sweep_grid(args: &SweepArgs) -> (Vec<ProtocolParams>, Vec<(usize, usize, usize)>) {
    let (mut valid, mut skipped) = (Vec::new(), Vec::new());
    for &n in &args.ports.0 {
        for &k in &args.k.0 {
            for &d in &args.dim.0 {
                match ProtocolParams::new(n, k, d) {
                    Ok(p) => valid.push(p),
                    Err(_) => skipped.push((n, k, d)),
                }
            }
        }
    }
    (valid, skipped)
}

fn cmd_fidelity(inst: &Instance, out: &mut dyn Write) -> io::Result<()> {
    let p = match inst.params() {
        Ok(p) => p,
        Err(e) => return Err(io::Error::new(io::ErrorKind::InvalidInput, e)),
    };
    writeln!(out, "F = {}", significant(fidelity(&p)))?;
    writeln!(out, "alpha\tterm")?;
    for t in fidelity_terms(&p) {
        writeln!(out, "{}\t{}", t.alpha, significant(t.value))?;
    }
    Ok(())
}

fn cmd_probability(inst: &Instance, out: &mut dyn Write) -> io::Result<()> {
    let p = inst.params().map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    let s = success_probability(&p);
    writeln!(out, "p = {} = {}", s.value, significant(s.value.to_f64().expect("finite")))?;
    writeln!(out, "alpha\tmu*\tm_alpha*d_alpha/lambda")?;
    for c in &s.optimal {
        writeln!(out, "{}\t{}\t{}", c.alpha, c.mu, c.ratio)?;
    }
    Ok(())
}

fn cmd_compare(inst: &Instance, out: &mut dyn Write) -> io::Result<()> {
    let c = compare_protocols(inst.ports, inst.k, inst.dim).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    let big = inst.dim.pow(inst.k as u32);
    writeln!(out, "scheme\tF\tp")?;
    let p_mpbt = c.probability_mpbt.to_f64().expect("finite");
    let p_pbt = c.probability_pbt_bigport.to_f64().expect("finite");
    writeln!(out, "mpbt(N={}, k={}, d={})\t{}\t{}", inst.ports, inst.k, inst.dim, significant(c.fidelity_mpbt), significant(p_mpbt))?;
    writeln!(out, "pbt(N={}, d={big})\t{}\t{}", inst.ports, significant(c.fidelity_pbt_bigport), significant(p_pbt))?;
    Ok(())
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<()> {
    let (valid, skipped) = sweep_grid(args);
    for (n, k, d) in skipped {
        writeln!(err, "skipped N={n} k={k} d={d}: not a valid instance")?;
    }
    let mut target: Box<dyn Write + '_> = match &args.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(&mut *out),
    };
    match args.format {
        Format::Csv => write_csv(&mut target, &valid).map_err(io::Error::other)?,
        Format::Json => write_json(&mut target, &valid)?,
    }
    target.flush()
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let results = match verify_suite(args.max_dim, args.seed) {
        Ok(r) => r,
        Err(e @ OracleError::ResourceCap { .. }) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_RESOURCE_CAP);
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_VERIFY_FAILED);
        }
    };
    let failed = results.iter().filter(|r| !r.passed).count();
    for r in &results {
        writeln!(out, "{r}")?;
    }
    writeln!(out, "{} checks, {} failed", results.len(), failed)?;
    for r in results.iter().filter(|r| !r.passed) {
        writeln!(err, "failed: {r}")?;
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

/// Parses `args` (program name first) and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Fidelity(i) => cmd_fidelity(i, out).map(|_| EXIT_OK),
        Command::Probability(i) => cmd_probability(i, out).map(|_| EXIT_OK),
        Command::Compare(i) => cmd_compare(i, out).map(|_| EXIT_OK),
        Command::Sweep(s) => cmd_sweep(s, out, err).map(|_| EXIT_OK),
        Command::Verify(v) => cmd_verify(v, out, err),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.kind() == io::ErrorKind::InvalidInput => {
            let _ = writeln!(err, "usage error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
