//! Command-line orchestration: `compute` runs the whole pipeline from an
//! input file to a pairs file plus a stdout report, and `plot` renders an
//! existing pairs file as SVG. The two verbs share only the pairs-file
//! contract, so plotting never recomputes homology.
//!
//! Exit codes: 2 unreadable input, 3 parse error (with line diagnostics),
//! 4 invalid configuration, 1 anything else.

use std::fs;
use std::io::BufReader;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::complex::build_vr_filtration;
use crate::field::PrimeField;
use crate::homology::{betti_numbers, build_boundary_matrix, reduce};
use crate::metric::{pairwise_distances, DistanceMatrix, Metric, PointCloud};
use crate::numfmt::fmt_sig12;
use crate::persistence::{
    build_diagram, pairs_to_scales, read_pairs, top_features, write_pairs, Barcode, PersistencePair,
};
use crate::plot::{render_barcode, render_diagram};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Unreadable {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Unreadable { .. } => 2,
            CliError::Parse(_) => 3,
            CliError::Config(_) => 4,
            CliError::Output { .. } => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "betti",
    version,
    about = "Persistent homology of point clouds: Rips filtrations, barcodes, persistence diagrams"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute persistence pairs from a point cloud or distance matrix
    Compute(ComputeArgs),
    /// Render a pairs file as a static SVG plot
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// One point per line, comma-separated coordinates
    CsvPoints,
    /// Lower-triangular distance matrix, one row per point
    LowerDistance,
}

impl ValueEnum for Metric {
    fn value_variants<'a>() -> &'a [Self] {
        &[Metric::Euclidean, Metric::Manhattan, Metric::Chebyshev]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.name()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Diagram,
    Barcode,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Input file path
    #[arg(long)]
    pub input: PathBuf,
    /// How to interpret the input file
    #[arg(long, value_enum, default_value_t = InputFormat::CsvPoints)]
    pub format: InputFormat,
    /// Metric for csv-points input
    #[arg(long, value_enum, default_value_t = Metric::Euclidean)]
    pub metric: Metric,
    /// Largest simplex dimension to build; homology is reported up to one
    /// dimension below
    #[arg(long, default_value_t = 2)]
    pub max_dim: usize,
    /// Scale cutoff for the filtration (default: unbounded)
    #[arg(long)]
    pub max_eps: Option<f64>,
    /// Coefficient field characteristic (prime)
    #[arg(long, default_value_t = 2)]
    pub field: u32,
    /// Where to write the pairs file
    #[arg(long)]
    pub output: PathBuf,
    /// Keep zero-persistence pairs in the pairs file
    #[arg(long)]
    pub keep_zero: bool,
    /// How many of the most persistent features to report
    #[arg(long, default_value_t = 5)]
    pub top: usize,
    /// Also write the filtration debug dump to this path
    #[arg(long)]
    pub dump_filtration: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Pairs file produced by `compute`
    #[arg(long)]
    pub pairs: PathBuf,
    #[arg(long, value_enum)]
    pub kind: PlotKind,
    /// Output SVG path
    #[arg(long)]
    pub out: PathBuf,
    /// Scale at which to draw infinite deaths in the diagram
    #[arg(long)]
    pub infinity_cap: Option<f64>,
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Compute(args) => run_compute(args),
        Command::Plot(args) => run_plot(args),
    }
}

/// The full pipeline: read, build the filtration, reduce, export pairs, and
/// report Betti numbers and top features on stdout. Output is byte-identical
/// across runs on identical inputs.
pub fn run_compute(args: &ComputeArgs) -> Result<(), CliError> {
    let field = PrimeField::new(args.field).map_err(|e| CliError::Config(e.to_string()))?;
    let max_eps = match args.max_eps {
        Some(e) if e.is_nan() || e <= 0.0 => {
            return Err(CliError::Config(format!(
                "max-eps must be positive or unbounded, got {e}"
            )));
        }
        Some(e) => e,
        None => f64::INFINITY,
    };

    let raw = fs::read(&args.input).map_err(|source| CliError::Unreadable {
        path: args.input.clone(),
        source,
    })?;
    let dm = match args.format {
        InputFormat::CsvPoints => {
            let cloud = PointCloud::from_csv(BufReader::new(raw.as_slice()))
                .map_err(|e| CliError::Parse(e.to_string()))?;
            pairwise_distances(&cloud, args.metric)
        }
        InputFormat::LowerDistance => {
            DistanceMatrix::from_lower_triangular(BufReader::new(raw.as_slice()))
                .map_err(|e| CliError::Parse(e.to_string()))?
        }
    };

    let filtration = build_vr_filtration(&dm, args.max_dim, max_eps);
    if let Some(dump_path) = &args.dump_filtration {
        let mut buf = Vec::new();
        filtration
            .write_dump(&mut buf)
            .expect("in-memory dump cannot fail");
        fs::write(dump_path, buf).map_err(|source| CliError::Output {
            path: dump_path.clone(),
            source,
        })?;
    }

    let matrix = build_boundary_matrix(&filtration, field)
        .map_err(|e| CliError::Parse(format!("inconsistent filtration: {e}")))?;
    let reduction = reduce(&matrix);
    let mut pairs = pairs_to_scales(&reduction, &filtration);

    // Only dimensions up to max_dim - 1 are certified by a capped build;
    // zero-persistence pairs stay out of the export unless asked for.
    pairs.retain(|p| match args.max_dim.checked_sub(1) {
        Some(cap) => p.dim <= cap,
        None => false,
    });
    if !args.keep_zero {
        pairs.retain(|p| !p.is_zero_persistence());
    }

    let mut out = Vec::new();
    write_pairs(&pairs, &mut out).map_err(|e| CliError::Parse(e.to_string()))?;
    fs::write(&args.output, out).map_err(|source| CliError::Output {
        path: args.output.clone(),
        source,
    })?;

    print_report(&filtration, field, args, &pairs);
    Ok(())
}

fn print_report(
    filtration: &crate::complex::Filtration,
    field: PrimeField,
    args: &ComputeArgs,
    pairs: &[PersistencePair],
) {
    let eps_label = fmt_sig12(args.max_eps.unwrap_or(f64::INFINITY));
    match args.max_dim.checked_sub(1) {
        None => println!("betti at eps = {eps_label}: (none: max_dim 0 builds vertices only)"),
        Some(up_to) => {
            let betti = betti_numbers(filtration, filtration.len(), field, up_to)
                .expect("report dimension is within the build cap");
            let rendered: Vec<String> = betti
                .iter()
                .enumerate()
                .map(|(k, b)| format!("b{k} = {b}"))
                .collect();
            println!("betti at eps = {eps_label}: {}", rendered.join("  "));
        }
    }
    println!("top {} features:", args.top);
    for p in top_features(pairs, args.top) {
        println!(
            "  dim {}  birth {}  death {}  persistence {}",
            p.dim,
            fmt_sig12(p.birth),
            fmt_sig12(p.death),
            fmt_sig12(p.persistence())
        );
    }
}

/// Reads a pairs file and writes the requested SVG.
pub fn run_plot(args: &PlotArgs) -> Result<(), CliError> {
    if let Some(cap) = args.infinity_cap {
        if !cap.is_finite() || cap <= 0.0 {
            return Err(CliError::Config(format!(
                "infinity-cap must be a positive finite scale, got {cap}"
            )));
        }
    }
    let raw = fs::read(&args.pairs).map_err(|source| CliError::Unreadable {
        path: args.pairs.clone(),
        source,
    })?;
    let pairs = read_pairs(raw.as_slice()).map_err(|e| CliError::Parse(e.to_string()))?;
    let svg = match args.kind {
        PlotKind::Diagram => {
            let diagram = build_diagram(&pairs, true, args.infinity_cap)
                .map_err(|e| CliError::Config(e.to_string()))?;
            render_diagram(&diagram)
        }
        PlotKind::Barcode => render_barcode(&Barcode::new(pairs)),
    };
    fs::write(&args.out, svg).map_err(|source| CliError::Output {
        path: args.out.clone(),
        source,
    })?;
    Ok(())
}
