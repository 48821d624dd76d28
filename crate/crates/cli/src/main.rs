mod commands;
mod parse;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use algmax::exactla::{FieldSpec, PrimeField, Rationals};
use clap::{Parser, Subcommand};

use commands::{CliError, Loader};
use report::CommandReport;

#[derive(Parser, Debug)]
#[command(name = "algmax", version, about = "Maximal subalgebras of finite-dimensional algebras")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Coefficient field: Q or F<p>. Overrides the header of algebra files.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Append the elapsed time to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Radical, blocks and a Wedderburn-Malcev complement.
    Structure { algebra: PathBuf },
    #[command(subcommand)]
    Maximal(MaximalOp),
    /// Largest dimension of a proper subalgebra.
    Maxdim { algebra: PathBuf },
    #[command(subcommand)]
    Ext(ExtOp),
    #[command(subcommand)]
    Mod(ModOp),
    #[command(subcommand)]
    Quiver(QuiverOp),
    #[command(subcommand)]
    Poset(PosetOp),
}

#[derive(Subcommand, Debug)]
pub enum MaximalOp {
    /// List the families of maximal subalgebras up to conjugacy.
    Enumerate { algebra: PathBuf },
    /// Build the subalgebra of a family record.
    Instantiate { algebra: PathBuf, sub: String },
    /// Decide whether a subalgebra is maximal.
    Certify { algebra: PathBuf, sub: String },
    /// Semisimple or split type of a maximal subalgebra.
    Classify { algebra: PathBuf, sub: String },
    /// Exhaustive search over a finite field.
    Brute {
        algebra: PathBuf,
        #[arg(long, default_value_t = algmax::maximal::DEFAULT_ORACLE_DIM_CAP)]
        max_dim: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExtOp {
    /// Split, trivial and separable properties of A ⊂ B.
    Check { sub: String, algebra: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum ModOp {
    /// B ⊗_A M for an A-module M (actions indexed by A's echelon basis).
    Induce { module: PathBuf, sub: String, algebra: PathBuf },
    /// Restrict a B-module to A.
    Restrict { module: PathBuf, sub: String },
    /// Indecomposable summands.
    Decompose { module: PathBuf },
    /// Dimension vector over the vertices of a quiver or poset.
    Dimvec { module: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum QuiverOp {
    /// Path algebra of a quiver with relations.
    Build { quiver: PathBuf },
    /// Merge or split-hyperplane maximal subalgebra.
    Maximal {
        quiver: PathBuf,
        #[command(subcommand)]
        kind: QuiverKind,
    },
    /// Collapse an arrow of a tree quiver.
    Collapse { quiver: PathBuf, arrow: String },
    /// Delete all arrows at the given vertices.
    Delete {
        quiver: PathBuf,
        #[arg(required = true)]
        vertices: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum QuiverKind {
    /// Identify the idempotents of two vertices.
    Merge { a: String, b: String },
    /// Keep a hyperplane of the arrows a -> b, spanned by comma-separated coordinate vectors.
    Hyperplane { a: String, b: String, vectors: Vec<String> },
}

#[derive(Subcommand, Debug)]
pub enum PosetOp {
    /// Incidence algebra of a poset.
    Build { poset: PathBuf },
    /// Merge or interval-removal maximal subalgebra.
    Maximal {
        poset: PathBuf,
        #[command(subcommand)]
        kind: PosetKind,
    },
    /// Whether every element below b is comparable to a and every element above a to b.
    Clamped { poset: PathBuf, a: String, b: String },
}

#[derive(Subcommand, Debug)]
pub enum PosetKind {
    /// Identify [a,a] and [b,b].
    Merge { a: String, b: String },
    /// Remove the interval [a,b] for b covering a.
    Remove { a: String, b: String },
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<CommandReport, CliError> {
    let start = Instant::now();
    let loader = Loader::default();
    let spec = match &cli.field {
        Some(s) => parse::parse_field_spec(s).ok_or_else(|| CliError::Usage(format!("unsupported field '{s}'")))?,
        None => commands::default_field(&loader, &cli.cmd)?,
    };
    let result = match spec {
        FieldSpec::Rationals => commands::run(&Rationals, &loader, cli)?,
        FieldSpec::PrimeField(p) => {
            let f = PrimeField::new(p).map_err(|e| CliError::Usage(e.to_string()))?;
            commands::run(&f, &loader, cli)?
        }
    };
    Ok(CommandReport {
        command: argv,
        inputs: loader.digests(),
        field: spec.to_string(),
        seed: cli.seed,
        result,
        elapsed_ms: cli.timing.then(|| start.elapsed().as_millis()),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli, argv) {
        Ok(r) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&r.to_json()).expect("serializable"));
            } else {
                print!("{}", r.to_text());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
