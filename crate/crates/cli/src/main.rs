//! `schurq`: verify exact symmetric-function identities and expand the
//! underlying objects.
//!
//! Exit codes: 0 when no gating check failed, 1 on any gating failure,
//! 2 on usage errors. All configuration is by flags; output is deterministic
//! for a given configuration (timing fields aside) under any worker count.

mod report;
mod suites;

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use schurq_core::kostka::IndexCap;
use schurq_core::qseries::{q_poly, schur_two_reduced, QKind};
use schurq_core::{Ctx, Partition};
use suites::{Suite, SuiteConfig, GATING_SUITES};

#[derive(Parser)]
#[command(name = "schurq", version, about = "Exact symmetric-function identity verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report each check instance.
    Verify(VerifyArgs),
    /// Print one polynomial or table in canonical text form.
    Expand {
        #[command(subcommand)]
        object: ExpandObject,
    },
    /// Export a weight block as JSON (index list plus row-major entries).
    Show {
        #[command(subcommand)]
        table: ShowObject,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run (comma-separated); defaults to all gating suites.
    #[arg(long = "suite", value_enum, value_delimiter = ',')]
    suite: Vec<Suite>,
    /// Largest instance size for the core and phi sweeps.
    #[arg(long = "n-max", default_value_t = 2)]
    n_max: u32,
    /// Weight bound for the swept partitions.
    #[arg(long = "weight-max", default_value_t = 6)]
    weight_max: u32,
    /// Truncation grade for the series checks.
    #[arg(long = "y-degree-max", default_value_t = 6)]
    y_degree_max: u32,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum QKindArg {
    Single,
    Doubled,
}

impl From<QKindArg> for QKind {
    fn from(k: QKindArg) -> QKind {
        match k {
            QKindArg::Single => QKind::Single,
            QKindArg::Doubled => QKind::Doubled,
        }
    }
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse::<Partition>().map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum ExpandObject {
    /// Schur polynomial s_lambda in n variables.
    Schur {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long)]
        n: u32,
    },
    /// 2-reduced Schur polynomial S_lambda (determinant of q-values).
    Schur2r {
        #[arg(long, value_parser = parse_partition)]
        lambda: Partition,
        #[arg(long)]
        n: u32,
    },
    /// Schur Q-function Q_lambda (Pfaffian of two-row values).
    Qfn {
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = QKindArg::Single)]
        kind: QKindArg,
    },
    /// Kostka block of one weight over partitions with at most n parts.
    Kostka {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        n: u32,
    },
    /// Inverse Kostka block of one weight.
    Invkostka {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum ShowObject {
    /// Kostka block as JSON.
    Kostka {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        n: u32,
    },
    /// Inverse Kostka block as JSON.
    Invkostka {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        n: u32,
    },
}

fn usage_error(message: &str) -> ! {
    eprintln!("error: {message}");
    std::process::exit(2);
}

fn main() {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify(args) => run_verify(args),
        Command::Expand { object } => run_expand(object),
        Command::Show { table } => run_show(table),
    }
}

fn run_verify(args: VerifyArgs) -> ! {
    if args.workers == 0 {
        usage_error("--workers must be at least 1");
    }
    let suites = if args.suite.is_empty() {
        GATING_SUITES.to_vec()
    } else {
        args.suite.clone()
    };
    let cfg = SuiteConfig {
        suites,
        n_max: args.n_max,
        weight_max: args.weight_max,
        y_degree_max: args.y_degree_max,
        workers: args.workers,
    };
    let started = Instant::now();
    let reports = match suites::run_suites(&cfg) {
        Ok(r) => r,
        Err(e) => usage_error(&format!("failed to build worker pool: {e}")),
    };
    let summary = report::summarize(&reports, started.elapsed().as_millis());
    let rendered = match args.format {
        Format::Text => report::render_text(&reports, &summary),
        Format::Json => report::render_json(&reports, &summary),
    };
    print!("{rendered}");
    std::process::exit(if summary.fail > 0 { 1 } else { 0 });
}

fn block_for(ctx: &Ctx, weight: u32, n: u32) -> std::sync::Arc<schurq_core::kostka::WeightBlock> {
    ctx.weight_block(weight, IndexCap::MaxLen(n))
}

fn run_expand(object: ExpandObject) -> ! {
    let ctx = Ctx::new();
    match object {
        ExpandObject::Schur { lambda, n } => match schurq_core::bases::schur(&ctx, &lambda, n) {
            Ok(p) => println!("{p}"),
            Err(e) => usage_error(&e.to_string()),
        },
        ExpandObject::Schur2r { lambda, n } => {
            println!("{}", schur_two_reduced(&ctx, &lambda, n));
        }
        ExpandObject::Qfn { r, n, kind } => {
            println!("{}", q_poly(&ctx, r, n, kind.into()));
        }
        ExpandObject::Kostka { weight, n } => {
            let block = block_for(&ctx, weight, n);
            print_block_text(&block.index, &block.kostka);
        }
        ExpandObject::Invkostka { weight, n } => {
            let block = block_for(&ctx, weight, n);
            print_block_text(&block.index, &block.inverse);
        }
    }
    std::process::exit(0);
}

fn print_block_text(index: &[Partition], rows: &[Vec<i128>]) {
    println!(
        "index: {}",
        index
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    for row in rows {
        println!(
            "[{}]",
            row.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
    }
}

fn run_show(table: ShowObject) -> ! {
    let ctx = Ctx::new();
    let (weight, n, inverse) = match table {
        ShowObject::Kostka { weight, n } => (weight, n, false),
        ShowObject::Invkostka { weight, n } => (weight, n, true),
    };
    let block = block_for(&ctx, weight, n);
    let rows = if inverse { &block.inverse } else { &block.kostka };
    let value = serde_json::json!({
        "weight": weight,
        "n": n,
        "index": block.index.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "rows": rows
            .iter()
            .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    });
    println!("{value}");
    std::process::exit(0);
}
