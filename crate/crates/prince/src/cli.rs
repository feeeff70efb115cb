//! Subcommands of the `prince` binary.
//!
//! Exit codes: 0 success, 1 check mismatch, 2 usage or unreadable file,
//! 3 malformed input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use prince_core::oracle::{oracle_mine, DEFAULT_LIMIT};
use prince_core::{
    gen_bgrs, gen_gms, gen_ordre, Error as CoreError, GenOrdreOptions, Mined, MiningParams, Ratio, TransactionContext,
};

use crate::document::{Kind, LatticeDocument};
use crate::fimi::{self, ReadError};
use crate::{bench, export, random};

#[derive(Debug, Parser)]
#[command(
    name = "prince",
    version,
    about = "Minimal generators, closed itemset lattices and generic rule bases"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Mine a FIMI file and write the lattice and rule bases.
    Mine(MineArgs),
    /// Print the worst-case context with `n` items as FIMI text.
    Worstcase { n: u32 },
    /// Compare the pipeline against the exhaustive oracle (or a saved
    /// lattice document).
    Check(CheckArgs),
    /// Time the three stages for one or more thresholds (CSV on stdout).
    Bench(BenchArgs),
    /// Print a seeded random context as FIMI text.
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct Thresholds {
    /// Absolute object count (`2`) or percentage of objects (`40%`,
    /// rounded up).
    #[arg(long)]
    pub minsupp: String,
    /// Decimal (`0.5`) or fraction (`2/3`) in [0, 1].
    #[arg(long, default_value = "0")]
    pub minconf: String,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub thresholds: Thresholds,
    /// Write the lattice document as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Write the rule bases as text.
    #[arg(long)]
    pub rules: Option<PathBuf>,
    /// Write the lattice as a Graphviz digraph.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Context name stored in the document (defaults to the file stem).
    #[arg(long)]
    pub name: Option<String>,
    /// Connect provably closed generators straight to their subsets.
    #[arg(long)]
    pub closed_prefix_shortcut: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub thresholds: Thresholds,
    /// Compare against this lattice document instead of the oracle.
    #[arg(long)]
    pub against: Option<PathBuf>,
    /// Largest item count the oracle accepts.
    #[arg(long, default_value_t = DEFAULT_LIMIT)]
    pub oracle_limit: usize,
    #[arg(long)]
    pub name: Option<String>,
    #[arg(long)]
    pub closed_prefix_shortcut: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    pub input: PathBuf,
    /// Comma-separated thresholds, each absolute or `P%`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub minsupp: Vec<String>,
    #[arg(long, default_value = "0")]
    pub minconf: String,
    #[arg(long)]
    pub closed_prefix_shortcut: bool,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long)]
    pub items: u32,
    #[arg(long)]
    pub objects: usize,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Read(#[from] ReadError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: malformed lattice document: {source}")]
    Document {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{0} difference(s)")]
    Mismatch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Read(ReadError::Parse { .. }) | CliError::Document { .. } => 3,
            CliError::Usage(_) | CliError::Read(ReadError::Io { .. }) | CliError::Write { .. } | CliError::Core(_) => 2,
        }
    }
}

/// Parses `0.5`, `.25`, `1`, or `2/3` exactly.
pub fn parse_ratio(text: &str) -> Option<Ratio> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let (n, d) = (n.trim().parse::<u64>().ok()?, d.trim().parse::<u64>().ok()?);
        return (d != 0).then(|| Ratio::new(n, d));
    }
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 18 {
        return None;
    }
    let scale = 10u64.pow(frac.len() as u32);
    let int: u64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    Some(Ratio::new(int.checked_mul(scale)?.checked_add(frac)?, scale))
}

/// Resolves a threshold spec against a context with `objects` objects.
pub fn parse_minsupp(spec: &str, objects: usize) -> Result<u32, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "invalid --minsupp `{spec}`: expected a positive integer or a percentage like 40%"
        ))
    };
    if let Some(p) = spec.trim().strip_suffix('%') {
        let p = parse_ratio(p).ok_or_else(bad)?;
        if p > Ratio::new(100, 1) {
            return Err(bad());
        }
        return Ok(MiningParams::absolute_from_percent(p, objects));
    }
    match spec.trim().parse::<u32>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(bad()),
    }
}

pub fn parse_minconf(spec: &str) -> Result<Ratio, CliError> {
    parse_ratio(spec)
        .filter(|r| *r <= Ratio::ONE)
        .ok_or_else(|| CliError::Usage(format!("invalid --minconf `{spec}`: expected a value in [0, 1]")))
}

fn params_for(t: &Thresholds, ctx: &TransactionContext) -> Result<MiningParams, CliError> {
    let minsupp = parse_minsupp(&t.minsupp, ctx.num_objects())?;
    Ok(MiningParams::new(minsupp, parse_minconf(&t.minconf)?)?)
}

fn context_name(path: &Path, name: &Option<String>) -> String {
    name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

fn mine_with(ctx: &TransactionContext, params: &MiningParams, shortcut: bool) -> Mined {
    let miner = gen_gms(ctx, params);
    let mut lattice = gen_ordre(
        &miner,
        GenOrdreOptions {
            closed_prefix_shortcut: shortcut,
        },
    );
    let rules = gen_bgrs(&mut lattice, &miner, params);
    Mined { miner, lattice, rules }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Write {
        path: "<stdout>".into(),
        source: e,
    }
}

/// Runs one subcommand, writing regular output to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Mine(a) => mine_cmd(a, out),
        Command::Worstcase { n } => {
            let ctx = TransactionContext::worst_case(n).map_err(|e| CliError::Usage(e.to_string()))?;
            out.write_all(fimi::write(&ctx).as_bytes()).map_err(io)
        }
        Command::Check(a) => check_cmd(a, out),
        Command::Bench(a) => bench_cmd(a, out),
        Command::Random(a) => {
            if !(0.0..=1.0).contains(&a.density) {
                return Err(CliError::Usage(format!("--density {} is not in [0, 1]", a.density)));
            }
            let ctx = random::random_context(a.items, a.objects, a.density, a.seed);
            out.write_all(fimi::write(&ctx).as_bytes()).map_err(io)
        }
    }
}

fn mine_cmd(a: MineArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let ctx = fimi::read(&a.input)?;
    let params = params_for(&a.thresholds, &ctx)?;
    let start = Instant::now();
    let mined = mine_with(&ctx, &params, a.closed_prefix_shortcut);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;

    let doc = LatticeDocument::from_pipeline(&ctx, &context_name(&a.input, &a.name), &params, &mined);
    if let Some(p) = &a.json {
        write_file(p, &doc.to_json())?;
    }
    if let Some(p) = &a.rules {
        write_file(p, &export::rules_text(&doc))?;
    }
    if let Some(p) = &a.dot {
        write_file(p, &export::to_dot(&doc))?;
    }
    writeln!(
        out,
        "minsupp={} minsupp_abs={}",
        a.thresholds.minsupp.trim(),
        params.minsupp()
    )
    .map_err(io)?;
    writeln!(
        out,
        "classes={} generators={} border={} bg={} ri={} elapsed_ms={:.6}",
        doc.classes.len(),
        mined.miner.generators.len(),
        mined.miner.border.len(),
        doc.count_rules(Kind::Exact),
        doc.count_rules(Kind::Approximate),
        elapsed_ms
    )
    .map_err(io)
}

fn check_cmd(a: CheckArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let ctx = fimi::read(&a.input)?;
    let params = params_for(&a.thresholds, &ctx)?;
    let name = context_name(&a.input, &a.name);
    let found = LatticeDocument::from_pipeline(
        &ctx,
        &name,
        &params,
        &mine_with(&ctx, &params, a.closed_prefix_shortcut),
    );
    let (expected, source) = match &a.against {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| {
                CliError::Read(ReadError::Io {
                    path: path.display().to_string(),
                    source,
                })
            })?;
            let doc = LatticeDocument::from_json(&text).map_err(|source| CliError::Document {
                path: path.display().to_string(),
                source,
            })?;
            (doc, path.display().to_string())
        }
        None => (
            LatticeDocument::from_oracle(&ctx, &name, &params, &oracle_mine(&ctx, &params, a.oracle_limit)?),
            "oracle".to_owned(),
        ),
    };
    let diff = expected.diff(&found);
    if diff.is_empty() {
        writeln!(
            out,
            "ok: pipeline matches {source} (classes={} arcs={} rules={})",
            found.classes.len(),
            found.num_arcs(),
            found.rules.len()
        )
        .map_err(io)?;
        return Ok(());
    }
    for d in &diff {
        writeln!(out, "{d}").map_err(io)?;
    }
    writeln!(
        out,
        "mismatch: pipeline differs from {source} in {} place(s)",
        diff.len()
    )
    .map_err(io)?;
    Err(CliError::Mismatch(diff.len()))
}

fn bench_cmd(a: BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let ctx = fimi::read(&a.input)?;
    let minconf = parse_minconf(&a.minconf)?;
    let options = GenOrdreOptions {
        closed_prefix_shortcut: a.closed_prefix_shortcut,
    };
    writeln!(out, "{}", bench::CSV_HEADER).map_err(io)?;
    for spec in &a.minsupp {
        let params = MiningParams::new(parse_minsupp(spec, ctx.num_objects())?, minconf)?;
        writeln!(out, "{}", bench::run(&ctx, &params, options).csv()).map_err(io)?;
    }
    Ok(())
}
