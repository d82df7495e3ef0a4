//! `schubert`: Schubert products, conformal-blocks ranks and rank-one
//! classification sweeps from the command line.
//!
//! Exit codes: 0 success, 1 a sweep found a FAIL cell, 2 usage or input
//! error, 3 internal inconsistency (negative structure constant), 4 I/O.

mod sweep;

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use schubert_core::{
    rank, rank_by_full_product, CohomologyElement, GrassmannianContext, Partition, QuantumElement,
    RankQuery, SlnWeight,
};

#[derive(Parser)]
#[command(name = "schubert", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cup product of Schubert classes in H*(Gr(k,N)).
    Product(ProductArgs),
    /// Small quantum product of Schubert classes in QH*(Gr(k,N)).
    Qproduct(ProductArgs),
    /// Rank of the conformal-blocks bundle V(sl_n, weights, level), as JSON.
    Rank(RankArgs),
    /// Check rank = 1 <=> weight in Lambda over a grid of (n, level).
    Verify(sweep::VerifyArgs),
}

#[derive(Args)]
struct ProductArgs {
    /// The Grassmannian as "k,N".
    #[arg(long, value_name = "k,N")]
    gr: GrassmannianContext,
    /// Partitions to multiply, e.g. "[2,1]"; none means the unit.
    #[arg(value_name = "PARTITION")]
    partitions: Vec<Partition>,
    /// Raise the product to this power.
    #[arg(long, default_value_t = 1)]
    power: u32,
}

#[derive(Args)]
struct RankArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    level: u32,
    /// A weight such as "w_3", "2*w_1+w_2", "(0,1,1)" or "[2,1]"; repeatable.
    #[arg(long = "weight", required = true)]
    weights: Vec<String>,
    /// Repeat the list of weights this many times.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Extract the coefficient from the full product instead of pairing
    /// two half products.
    #[arg(long)]
    full_product: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Inconsistent(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Inconsistent(_) => 3,
            Self::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "error: {m}"),
            Self::Inconsistent(m) => write!(f, "internal inconsistency: {m}"),
            Self::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<schubert_core::Error> for CliError {
    fn from(e: schubert_core::Error) -> Self {
        match e {
            schubert_core::Error::Inconsistent(m) => Self::Inconsistent(m),
            other => Self::Usage(other.to_string()),
        }
    }
}

pub fn io_error(path: &std::path::Path, e: impl fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn cmd_product(args: &ProductArgs) -> Result<(), CliError> {
    let ctx = args.gr;
    let mut x = CohomologyElement::one(ctx);
    for p in &args.partitions {
        x = x.giambelli_mul(&CohomologyElement::schubert(ctx, p.clone())?)?;
    }
    let x = x.pow(args.power)?;
    if x.is_zero() {
        println!("0");
    }
    for (l, c) in x.terms() {
        println!("{c}*{l}");
    }
    Ok(())
}

fn cmd_qproduct(args: &ProductArgs) -> Result<(), CliError> {
    let ctx = args.gr;
    let mut x = QuantumElement::one(ctx);
    for p in &args.partitions {
        x = x.qmul(&QuantumElement::schubert(ctx, p.clone())?)?;
    }
    let x = x.qpower(args.power)?;
    if x.is_zero() {
        println!("0");
    }
    for (d, l, c) in x.terms() {
        println!("{c}*q^{d}*{l}");
    }
    Ok(())
}

fn cmd_rank(args: &RankArgs) -> Result<(), CliError> {
    let weights = args
        .weights
        .iter()
        .map(|s| SlnWeight::parse(args.n, s))
        .collect::<Result<Vec<_>, _>>()?;
    let all: Vec<_> = std::iter::repeat_n(weights, args.count).flatten().collect();
    let q = RankQuery::new(args.n, args.level, all)?;
    let r = if args.full_product {
        rank_by_full_product(&q)?
    } else {
        rank(&q)?
    };
    let json = serde_json::to_string(&r).map_err(|e| CliError::Io(e.to_string()))?;
    println!("{json}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Product(a) => cmd_product(a).map(|()| true),
        Command::Qproduct(a) => cmd_qproduct(a).map(|()| true),
        Command::Rank(a) => cmd_rank(a).map(|()| true),
        Command::Verify(a) => sweep::run(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
