//! `quivar` — exact computations on quotients of path algebras: Gröbner
//! bases, monomial invariants, deformation-variety equations, Betti data.
//!
//! Exit codes: 0 success, 1 problem-file parse error, 2 mathematical error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};

mod problem;
mod run;

use run::{Options, VariantFlag};

#[derive(Parser)]
#[command(
    name = "quivar",
    version,
    about = "Gröbner bases and deformation varieties for path algebra quotients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Plain,
    Graded,
    Special,
    Admissible,
}

#[derive(Args)]
struct CommonArgs {
    /// Problem file (see docs/problemfile.ebnf)
    file: PathBuf,
    /// Output format
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Completion cap: maximum remainder tip length
    #[arg(long, default_value_t = 12)]
    max_tip_length: usize,
    /// Completion cap: maximum number of overlap relations processed
    #[arg(long, default_value_t = 10_000)]
    max_pairs: usize,
    /// Truncation degree for Hilbert series
    #[arg(long, default_value_t = 10)]
    truncate: usize,
    /// Length bound (nontips) or homological degree cap (betti, gldim, cartan)
    #[arg(long)]
    nmax: Option<usize>,
    /// Admissibility exponent, overriding the [admissible] section
    #[arg(long)]
    m: Option<usize>,
    /// Thread count for parallel overlap reduction (output is identical for
    /// any value)
    #[arg(long)]
    jobs: Option<usize>,
    /// Element text, for `membership`
    #[arg(long)]
    element: Option<String>,
    /// Comma-separated coordinates, for `point-check`
    #[arg(long)]
    point: Option<String>,
    /// Presentation used by `point-check`
    #[arg(long, value_enum, default_value = "plain")]
    variant: VariantArg,
}

#[derive(Subcommand)]
enum Command {
    /// Complete the input to a Gröbner basis and reduce it
    Groebner(CommonArgs),
    /// Defining equations of the deformation space of the tip set
    Variety(CommonArgs),
    /// Equations of the weight-graded restriction
    VarietyGraded(CommonArgs),
    /// Equations with the [phi] pins appended and eliminated
    VarietySpecial(CommonArgs),
    /// Equations of the admissible-quotient subvariety
    VarietyAdmissible(CommonArgs),
    /// List nontips (all of them, or up to --nmax)
    Nontips(CommonArgs),
    /// Dimension of the quotient (= number of nontips)
    Dimension(CommonArgs),
    /// Length-graded dimensions up to --truncate
    Hilbert(CommonArgs),
    /// Cartan matrix, determinant, and the determinant-one verdict
    Cartan(CommonArgs),
    /// Betti tables per start vertex up to --nmax
    Betti(CommonArgs),
    /// Global dimension bound via chain extinction
    Gldim(CommonArgs),
    /// Ideal membership of --element
    Membership(CommonArgs),
    /// Check --point against the selected presentation and certify it
    PointCheck(CommonArgs),
    /// Recover the variety point of the ideal generated by [generators]
    PointOf(CommonArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Groebner(_) => "groebner",
            Command::Variety(_) => "variety",
            Command::VarietyGraded(_) => "variety-graded",
            Command::VarietySpecial(_) => "variety-special",
            Command::VarietyAdmissible(_) => "variety-admissible",
            Command::Nontips(_) => "nontips",
            Command::Dimension(_) => "dimension",
            Command::Hilbert(_) => "hilbert",
            Command::Cartan(_) => "cartan",
            Command::Betti(_) => "betti",
            Command::Gldim(_) => "gldim",
            Command::Membership(_) => "membership",
            Command::PointCheck(_) => "point-check",
            Command::PointOf(_) => "point-of",
        }
    }

    fn args(&self) -> &CommonArgs {
        match self {
            Command::Groebner(a)
            | Command::Variety(a)
            | Command::VarietyGraded(a)
            | Command::VarietySpecial(a)
            | Command::VarietyAdmissible(a)
            | Command::Nontips(a)
            | Command::Dimension(a)
            | Command::Hilbert(a)
            | Command::Cartan(a)
            | Command::Betti(a)
            | Command::Gldim(a)
            | Command::Membership(a)
            | Command::PointCheck(a)
            | Command::PointOf(a) => a,
        }
    }
}

fn dispatch(
    command: &Command,
    file: &problem::ProblemFile,
    opts: &Options,
) -> quivar::error::Result<run::Output> {
    match command {
        Command::Groebner(_) => run::run_groebner(file, opts),
        Command::Variety(_) => run::run_variety(file, opts, VariantFlag::Plain),
        Command::VarietyGraded(_) => run::run_variety(file, opts, VariantFlag::Graded),
        Command::VarietySpecial(_) => run::run_variety(file, opts, VariantFlag::Special),
        Command::VarietyAdmissible(_) => run::run_variety(file, opts, VariantFlag::Admissible),
        Command::Nontips(_) => run::run_nontips(file, opts),
        Command::Dimension(_) => run::run_dimension(file),
        Command::Hilbert(_) => run::run_hilbert(file, opts),
        Command::Cartan(_) => run::run_cartan(file, opts),
        Command::Betti(_) => run::run_betti(file, opts),
        Command::Gldim(_) => run::run_gldim(file, opts),
        Command::Membership(_) => run::run_membership(file, opts),
        Command::PointCheck(_) => run::run_point_check(file, opts),
        Command::PointOf(_) => run::run_point_of(file, opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let args = cli.command.args();

    let bytes = match std::fs::read(&args.file) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.file.display());
            return ExitCode::from(1);
        }
    };
    let text = match String::from_utf8(bytes.clone()) {
        Ok(t) => t,
        Err(_) => {
            eprintln!("error: {} is not UTF-8", args.file.display());
            return ExitCode::from(1);
        }
    };
    let file = match problem::parse(&text) {
        Ok(f) => f,
        Err(diag) => {
            eprintln!("parse error at {diag}");
            return ExitCode::from(1);
        }
    };

    let opts = Options {
        caps: quivar::CompletionCaps {
            max_tip_length: args.max_tip_length,
            max_pair_count: args.max_pairs,
        },
        truncate: args.truncate,
        nmax: args.nmax,
        admissible_m: args.m,
        element: args.element.clone(),
        point: args.point.clone(),
        variant: match args.variant {
            VariantArg::Plain => VariantFlag::Plain,
            VariantArg::Graded => VariantFlag::Graded,
            VariantArg::Special => VariantFlag::Special,
            VariantArg::Admissible => VariantFlag::Admissible,
        },
    };

    let compute = || dispatch(&cli.command, &file, &opts);
    let outcome = match args.jobs {
        Some(n) if n >= 1 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(compute),
            Err(e) => {
                eprintln!("error: cannot build thread pool: {e}");
                return ExitCode::from(2);
            }
        },
        _ => compute(),
    };

    match outcome {
        Ok(output) => {
            match args.format {
                Format::Text => print!("{}", output.text),
                Format::Json => {
                    let digest = Sha256::digest(&bytes);
                    let doc = json!({
                        "command": cli.command.name(),
                        "input-digest": format!("sha256:{:x}", digest),
                        "result": output.json,
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&doc).expect("serializable")
                    );
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
