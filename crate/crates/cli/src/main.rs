//! `qualcube`: assess datasets into daQ quality graphs and read them back.
//!
//! Exit codes: 0 success, 1 validation or threshold failure, 2 usage error,
//! 3 I/O or network-configuration error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qualcube::charts::ChartKind;
use qualcube::rdf::RdfFormat;

#[derive(Debug, Parser)]
#[command(name = "qualcube", version, about = "Dataset quality metadata as RDF Data Cube observations")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// TOML configuration file; flags override its values.
    #[arg(long, global = true, env = "QUALCUBE_CONFIG")]
    pub config: Option<PathBuf>,
    /// Input RDF file (format from the extension); repeat to union several.
    #[arg(long, short, global = true)]
    pub input: Vec<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Quality graph IRI.
    #[arg(long, global = true)]
    pub graph_iri: Option<String>,
    /// Assessed dataset(s) or version(s); comma-separated or repeated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub computed_on: Vec<String>,
    /// Metric classes as IRIs or CURIEs, or `offline` / `all`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub metrics: Vec<String>,
    /// SPARQL endpoint to probe.
    #[arg(long, global = true)]
    pub endpoint: Option<String>,
    /// Seed for dereferenceability sampling.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Fixed assessment time (RFC 3339) instead of the system clock.
    #[arg(long, global = true)]
    pub clock: Option<String>,
    /// Ranking profile file (TOML).
    #[arg(long, global = true)]
    pub weights: Option<PathBuf>,
    /// Star-rating thresholds file (TOML).
    #[arg(long, global = true)]
    pub thresholds: Option<PathBuf>,
    #[arg(long, global = true)]
    pub kind: Option<ChartKindArg>,
    /// Extension vocabulary (Turtle or TriG); repeatable.
    #[arg(long, global = true)]
    pub extension: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Ttl,
    Trig,
    Nq,
    Nt,
}

impl From<Format> for RdfFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Ttl => RdfFormat::Turtle,
            Format::Trig => RdfFormat::TriG,
            Format::Nq => RdfFormat::NQuads,
            Format::Nt => RdfFormat::NTriples,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartKindArg {
    Hbar,
    Vbar,
    Radar,
    Lines,
}

impl From<ChartKindArg> for ChartKind {
    fn from(k: ChartKindArg) -> Self {
        match k {
            ChartKindArg::Hbar => ChartKind::HorizontalBar,
            ChartKindArg::Vbar => ChartKind::VerticalBar,
            ChartKindArg::Radar => ChartKind::Radar,
            ChartKindArg::Lines => ChartKind::Lines,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute metrics over a dataset and emit its quality graph.
    Assess,
    /// Check quality graphs against the daQ structural rules.
    Validate {
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Collect observations below instances of a class into a qb:ObservationGroup.
    Group {
        /// Category, dimension or metric class.
        #[arg(long)]
        class: String,
        /// Defaults to `<graph>/group/<class local name>`.
        #[arg(long)]
        group_iri: Option<String>,
    },
    /// Order datasets by a weighted sum of their latest metric values.
    Rank,
    /// Values of one metric across versions.
    Trend {
        #[arg(long)]
        class: String,
    },
    /// Award the sixth (quality) star.
    Stars {
        /// Stars already earned on the five-star open data scale.
        #[arg(long)]
        base_stars: Option<u8>,
    },
    /// Render an SVG chart of the latest values.
    Chart {
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Union quality graphs from several runs into one.
    Merge,
    /// Vocabulary utilities.
    #[command(subcommand)]
    Vocab(VocabCommand),
    /// Extension vocabulary utilities.
    #[command(subcommand)]
    Extend(ExtendCommand),
}

#[derive(Debug, Subcommand)]
pub enum VocabCommand {
    /// Print the built-in daQ vocabulary and metric catalog as Turtle.
    Dump,
}

#[derive(Debug, Subcommand)]
pub enum ExtendCommand {
    /// Lint an extension vocabulary and list the metrics it defines.
    Check,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
