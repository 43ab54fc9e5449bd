//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage, schema, I/O or engine errors, 2 when
//! a fuzz run finds a disagreement.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::{
    analyze, decompose, derive_seed, fuzz_equivalence, DecompositionReport, FuzzConfig, FuzzSummary, Model, Options,
    Report,
};
use crate::document::GraphDocument;
use crate::error::{Error, Result};
use crate::field::{PrimeField, DEFAULT_PRIME};
use crate::flats::{
    dilworth_truncate, hyperplane_through, intersect_with_hyperplane, random_family, shared_line, shared_line_family,
    span_rank, truncation_rhs_bruteforce,
};

#[derive(Parser, Debug)]
#[command(
    name = "rigikit",
    version,
    about = "Combinatorial and linear rigidity of bar frameworks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Ambient dimension d (2..=6); overrides the document's value.
    #[arg(long = "dim", global = true)]
    dim: Option<usize>,
    /// Prime modulus of the working field.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Linear trials before escalation.
    #[arg(long, global = true, default_value_t = 3)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Enable brute-force cross-checks on small inputs.
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze one graph document.
    Analyze { file: PathBuf },
    /// Cross-check both engines on random graphs.
    Fuzz {
        #[arg(long, value_parser = parse_model)]
        model: Model,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Write each counterexample as a replayable document into this directory.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// P-components of a graph document.
    Decompose { file: PathBuf },
    /// Dilworth truncation on random flat families and the shared-line family.
    TruncateDemo {
        #[arg(long, default_value_t = 50)]
        families: usize,
    },
}

fn parse_model(s: &str) -> std::result::Result<Model, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Runs the CLI on `argv` (including the program name), writing reports to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, out: &mut impl Write) -> Result<i32> {
    let c = &cli.common;
    let text = match &cli.command {
        Command::Analyze { file } => {
            let report = analyze_file(file, c)?;
            render(c.format, &report, render_report)
        }
        Command::Decompose { file } => {
            let doc = load(file)?;
            let report = decompose(&doc.graph()?, doc.model, c.dim.unwrap_or(doc.dimension))?;
            render(c.format, &report, render_decomposition)
        }
        Command::Fuzz { model, cases, dump } => {
            let mut cfg = FuzzConfig::new(*model, c.dim.unwrap_or(3), *cases, c.seed);
            cfg.prime = c.prime;
            cfg.trials = c.trials;
            cfg.oracle = c.oracle;
            let summary = fuzz_equivalence(&cfg)?;
            if let Some(dir) = dump {
                dump_counterexamples(dir, &summary)?;
            }
            let text = render(c.format, &summary, render_fuzz);
            emit(out, &text)?;
            return Ok(if summary.passed() { 0 } else { 2 });
        }
        Command::TruncateDemo { families } => {
            let demo = truncation_demo(c.prime, c.seed, *families)?;
            render(c.format, &demo, render_truncation)
        }
    };
    emit(out, &text)?;
    Ok(0)
}

fn emit(out: &mut impl Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Invalid(format!("cannot write output: {e}")))
}

fn render<T: Serialize>(format: Format, value: &T, text: fn(&T) -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Text => text(value),
    }
}

fn load(path: &Path) -> Result<GraphDocument> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read `{}`: {e}", path.display())))?;
    GraphDocument::from_json(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn analyze_file(path: &Path, c: &Common) -> Result<Report> {
    let doc = load(path)?;
    let g = doc.graph()?;
    let field = PrimeField::new(c.prime)?;
    let opts = Options {
        dimension: c.dim.unwrap_or(doc.dimension),
        prime: c.prime,
        trials: c.trials,
        seed: c.seed,
        oracle: c.oracle,
        joints: doc.joints(&g, &field)?,
    };
    analyze(&g, doc.model, &opts)
}

fn dump_counterexamples(dir: &Path, summary: &FuzzSummary) -> Result<()> {
    let io = |e: std::io::Error| Error::Invalid(format!("cannot write to `{}`: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for cx in &summary.counterexamples {
        let path = dir.join(format!("case-{}-seed-{}.json", cx.case, cx.case_seed));
        std::fs::write(&path, cx.document.to_json() + "\n").map_err(io)?;
    }
    Ok(())
}

fn render_report(r: &Report) -> String {
    let mut s = String::new();
    let g = &r.graph;
    let _ = writeln!(s, "model       {} (d = {}, D = {})", r.model, r.dimension, r.big_d);
    let _ = writeln!(
        s,
        "graph       {} vertices ({} bodies, {} rods, {} hinges), {} edges",
        g.vertices, g.bodies, g.rods, g.hinges, g.edges
    );
    let _ = writeln!(s, "count rank  {} of {}", r.combinatorial.rank, r.combinatorial.target);
    if let Some(o) = r.combinatorial.oracle_rank {
        let _ = writeln!(s, "oracle rank {o}");
    }
    let _ = writeln!(
        s,
        "linear rank {} (trials {:?}{})",
        r.linear.max_rank,
        r.linear.trial_ranks,
        if r.linear.escalated { ", escalated" } else { "" }
    );
    let _ = writeln!(
        s,
        "motions     {} ({} trivial)",
        r.linear.kernel_dimension, r.linear.trivial_dimension
    );
    let _ = writeln!(s, "agreement   {}", if r.agreement { "yes" } else { "NO" });
    let _ = writeln!(s, "verdict     {}", r.verdict);
    s
}

fn render_decomposition(r: &DecompositionReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} P-components ({} nontrivial), rank {}",
        r.components.len(),
        r.nontrivial,
        r.rank
    );
    for c in &r.components {
        let _ = writeln!(
            s,
            "  edges {:?} on {{{}}}  f = {}, f^ = {}",
            c.edges,
            c.vertices.join(", "),
            c.f,
            c.fhat
        );
    }
    s
}

fn render_fuzz(r: &FuzzSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} ({} d = {}, seed {})", r.summary, r.model, r.dimension, r.seed);
    let _ = writeln!(
        s,
        "polymatroid checks on {} cases, {} subsets, {} mismatches",
        r.polymatroid_cases, r.polymatroid_subsets, r.polymatroid_mismatches
    );
    let _ = writeln!(
        s,
        "escalations {}, bound violations {}, trivial-motion violations {}, hinge violations {}",
        r.escalations, r.bound_violations, r.trivial_violations, r.hinge_violations
    );
    for cx in &r.counterexamples {
        let _ = writeln!(s, "case {} (seed {}): {}", cx.case, cx.case_seed, cx.reasons.join("; "));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedLineDemo {
    /// Partition minimum of `Σ (rank - 1)`.
    pub partition_minimum: i64,
    /// Rank after cutting with a hyperplane containing the shared line.
    pub forced_rank: usize,
    /// Rank after cutting with a random hyperplane.
    pub generic_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationDemo {
    pub schema: u32,
    pub seed: u64,
    pub families: usize,
    pub matches: usize,
    pub shared_line: SharedLineDemo,
}

/// Truncates `families` random flat families and the three-planes-on-a-line
/// family, comparing each truncated rank with the partition minimum.
pub fn truncation_demo(prime: u64, seed: u64, families: usize) -> Result<TruncationDemo> {
    let field = PrimeField::new(prime)?;
    let mut matches = 0;
    for i in 0..families {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, i as u64));
        let n = rng.gen_range(1..=5);
        let fam = random_family(&field, &mut rng, n, 6, 3);
        let t = dilworth_truncate(&field, &fam, &mut rng)?;
        matches += (span_rank(&field, &t, &t.all()) as i64 == truncation_rhs_bruteforce(&field, &fam)?) as usize;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, u64::MAX));
    let foot = shared_line_family(&field);
    let h = hyperplane_through(&field, 4, &shared_line(), &mut rng)?;
    let forced = intersect_with_hyperplane(&field, &foot, &h)?;
    let generic = dilworth_truncate(&field, &foot, &mut rng)?;
    Ok(TruncationDemo {
        schema: crate::analysis::SCHEMA,
        seed,
        families,
        matches,
        shared_line: SharedLineDemo {
            partition_minimum: truncation_rhs_bruteforce(&field, &foot)?,
            forced_rank: span_rank(&field, &forced, &forced.all()),
            generic_rank: span_rank(&field, &generic, &generic.all()),
        },
    })
}

fn render_truncation(r: &TruncationDemo) -> String {
    let l = &r.shared_line;
    format!(
        "random families: {}/{} truncated ranks equal the partition minimum\n\
         three planes through a line: partition minimum {}, hyperplane through the line gives {}, random hyperplane gives {}\n",
        r.matches, r.families, l.partition_minimum, l.forced_rank, l.generic_rank
    )
}
