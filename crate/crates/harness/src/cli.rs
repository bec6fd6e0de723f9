use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dyson_core::closedform::{CoeffSpec, Family};
use dyson_core::goodrec::good_coeff;
use dyson_core::laurent::coeff_pruned_mode;
use dyson_core::qdixon::verify_identity;
use dyson_core::Error;

use crate::bench::{bench_rows, write_csv, Engines};
use crate::sweep::{plan, run_sweep, SweepOptions, VerifyFamily};
use crate::{term_cap, HarnessError};

#[derive(Parser, Debug)]
#[command(name = "dyson", version, about = "Exact coefficients of the Dyson and q-Dyson products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print one coefficient of the product.
    Coeff(CoeffArgs),
    /// Evaluate a closed form.
    Closed(ClosedArgs),
    /// Check closed forms against the expansion over a grid.
    Verify(VerifyArgs),
    /// Check one of the perturbed q-Dixon identities.
    Qdixon(QdixonArgs),
    /// Time the full and pruned expansion engines (CSV).
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Expand,
    Goodrec,
}

#[derive(Args, Debug)]
pub struct CoeffArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub a: Vec<u32>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub b: Vec<i32>,
    /// Use the q-Dyson product.
    #[arg(long)]
    pub q: bool,
    #[arg(long, value_enum, default_value_t = Engine::Expand)]
    pub engine: Engine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClosedFamily {
    Dyson,
    Qdyson,
    Thm1,
    Thm2,
    Thm3,
    Conj1,
    Conj2,
    Conj3,
}

#[derive(Args, Debug)]
pub struct ClosedArgs {
    #[arg(long, value_enum)]
    pub family: ClosedFamily,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    pub a: Vec<u32>,
    /// 1-based, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub indices: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = VerifyFamily::All)]
    pub family: VerifyFamily,
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long)]
    pub amax: Option<u32>,
    /// Check the q-versions of dyson and thm1..3.
    #[arg(long)]
    pub q: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Shift every q^L exponent by this much (negative control).
    #[arg(long, hide = true, default_value_t = 0)]
    pub inject_l_offset: u64,
}

#[derive(Args, Debug)]
pub struct QdixonArgs {
    #[arg(long)]
    pub id: u8,
    #[arg(long, default_value_t = 5)]
    pub max: u32,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("engine").args(["pruned", "full"]))]
pub struct BenchArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub amax: u32,
    #[arg(long)]
    pub pruned: bool,
    #[arg(long)]
    pub full: bool,
}

fn usage(msg: impl Into<String>) -> HarnessError {
    HarnessError::Usage(msg.into())
}

fn check_len(what: &str, got: usize, n: usize) -> Result<(), HarnessError> {
    if got != n {
        return Err(usage(format!("--{what} has {got} entries but --n is {n}")));
    }
    Ok(())
}

/// Runs a parsed command, writing results to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, HarnessError> {
    match cli.command {
        Command::Coeff(args) => coeff(args, out),
        Command::Closed(args) => closed(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Qdixon(args) => qdixon(args, out),
        Command::Bench(args) => bench(args, out),
    }
}

fn coeff(args: CoeffArgs, out: &mut dyn Write) -> Result<u8, HarnessError> {
    check_len("a", args.a.len(), args.n)?;
    check_len("b", args.b.len(), args.n)?;
    let value = match args.engine {
        Engine::Goodrec if args.q => return Err(usage("--q cannot be used with --engine goodrec")),
        Engine::Goodrec => good_coeff(&args.b, &args.a).to_string(),
        Engine::Expand => coeff_pruned_mode(&args.a, &args.b, args.q, term_cap()?)?.to_string(),
    };
    writeln!(out, "{value}")?;
    Ok(0)
}

fn closed(args: ClosedArgs, out: &mut dyn Write) -> Result<u8, HarnessError> {
    check_len("a", args.a.len(), args.n)?;
    let (family, q) = match args.family {
        ClosedFamily::Dyson => (Family::Constant, false),
        ClosedFamily::Qdyson => (Family::Constant, true),
        ClosedFamily::Thm1 => (Family::Thm1, false),
        ClosedFamily::Thm2 => (Family::Thm2, false),
        ClosedFamily::Thm3 => (Family::Thm3, false),
        ClosedFamily::Conj1 => (Family::Thm1, true),
        ClosedFamily::Conj2 => (Family::Thm2, true),
        ClosedFamily::Conj3 => (Family::Thm3, true),
    };
    let spec = CoeffSpec::new(family, args.indices, args.n).map_err(|e| match e {
        Error::InvalidIndices(msg) => usage(msg),
        e => e.into(),
    })?;
    let value = if q {
        spec.q_value(&args.a)?.to_string()
    } else {
        spec.classical_value(&args.a)?.to_string()
    };
    writeln!(out, "{value}")?;
    Ok(0)
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<u8, HarnessError> {
    let family = if args.q {
        args.family
            .q_version()
            .ok_or_else(|| usage(format!("--q does not apply to {}", args.family)))?
    } else {
        args.family
    };
    if matches!(args.nmax, Some(n) if n < 2) {
        return Err(usage("--nmax must be at least 2"));
    }
    if args.jobs == Some(0) {
        return Err(usage("--jobs must be positive"));
    }
    let mut grids = plan(family, args.nmax, args.amax);
    if args.q {
        for g in &mut grids {
            g.family = g.family.q_version().unwrap_or(g.family);
        }
        let mut seen = Vec::new();
        grids.retain(|g| {
            let fresh = !seen.contains(&g.family);
            seen.push(g.family);
            fresh
        });
    }
    grids.retain(|g| g.nmin <= g.nmax);
    if grids.is_empty() {
        return Err(usage(format!("--nmax {} is below the arity floor of {family}", args.nmax.unwrap_or(0))));
    }
    let opts = SweepOptions {
        cap: term_cap()?,
        l_offset: args.inject_l_offset,
    };
    let report = run_sweep(&grids, &opts, args.jobs)?;
    let json = report.to_json();
    match &args.report {
        Some(path) => {
            std::fs::write(path, json + "\n")?;
            writeln!(
                out,
                "{} cases: {} pass, {} fail ({} ms)",
                report.cases.len(),
                report.counts.pass,
                report.counts.fail,
                report.total_micros / 1000
            )?;
            for c in report.failures().take(20) {
                writeln!(out, "FAIL {} {:?}: {} != {}", c.family, c.params, c.lhs, c.rhs)?;
            }
        }
        None => writeln!(out, "{json}")?,
    }
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn qdixon(args: QdixonArgs, out: &mut dyn Write) -> Result<u8, HarnessError> {
    let report = verify_identity(args.id, args.max).map_err(|e| usage(e.to_string()))?;
    for r in report.failures() {
        match (&r.rhs, &r.first_difference) {
            (Err(e), _) => writeln!(out, "a={} b={} c={}: {e}", r.a, r.b, r.c)?,
            (Ok(_), Some((k, x, y))) => {
                writeln!(out, "a={} b={} c={}: differs at q^{k}: {x} vs {y}", r.a, r.b, r.c)?
            }
            (Ok(_), None) => writeln!(out, "a={} b={} c={}: differs", r.a, r.b, r.c)?,
        }
    }
    let held = report.results.iter().filter(|r| r.passed()).count();
    writeln!(out, "identity {}: {held}/{} triples hold", args.id, report.results.len())?;
    Ok(if report.all_passed() { 0 } else { 1 })
}

fn bench(args: BenchArgs, out: &mut dyn Write) -> Result<u8, HarnessError> {
    if args.n == 0 {
        return Err(usage("--n must be positive"));
    }
    let engines = match (args.pruned, args.full) {
        (true, _) => Engines::Pruned,
        (_, true) => Engines::Full,
        _ => Engines::Both,
    };
    let rows = bench_rows(args.n, args.amax, engines, term_cap()?)?;
    write_csv(&rows, out)?;
    Ok(0)
}
