//! `lbca`: presentations, Groebner certificates, Stanley-Reisner complexes and
//! singularity checks for lower bound cluster algebras.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use lbca::presentation::DEFAULT_MAX_ORACLE_CYCLE;
use lbca::YHeavyOrder;

use commands::ComplexFlags;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "lbca", version, about = "Lower bound cluster algebra toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include wall-clock time per stage (makes output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Adjacent cluster variables and the generators of the presentation.
    Present {
        input: PathBuf,
        #[arg(long, default_value = "ygradedlex", value_parser = parse_order)]
        order: YHeavyOrder,
    },
    /// Certify that the generators form a Groebner basis.
    #[command(group(ArgGroup::new("source").required(true).args(["input", "corpus"])))]
    Groebner {
        input: Option<PathBuf>,
        /// Certify this many random quivers instead of a file.
        #[arg(long)]
        corpus: Option<usize>,
        #[arg(long, default_value_t = 0, requires = "corpus")]
        seed: u64,
        /// Largest quiver size in the random corpus.
        #[arg(long, default_value_t = 5, requires = "corpus")]
        max_n: usize,
        #[arg(long, default_value = "ygradedlex", value_parser = parse_order)]
        order: YHeavyOrder,
    },
    /// Analyse the Stanley-Reisner complex of a quiver, matrix or complex file.
    Complex {
        input: PathBuf,
        #[arg(long)]
        facets: bool,
        #[arg(long)]
        f_vector: bool,
        /// Ball or sphere, with supporting counts (the default).
        #[arg(long)]
        classify: bool,
        /// Vertex decomposition with shedding order, re-verified.
        #[arg(long)]
        decompose: bool,
        #[arg(long)]
        boundary: bool,
    },
    /// Singular locus of a path quiver, or smoothness at a given point.
    #[command(group(ArgGroup::new("mode").required(true).args(["path_quiver", "input"])))]
    Singular {
        #[arg(long, value_name = "N")]
        path_quiver: Option<usize>,
        #[arg(requires = "point")]
        input: Option<PathBuf>,
        #[arg(long, requires = "input")]
        point: Option<PathBuf>,
    },
    /// Cross-check cycle expansions against the brute-force choice expansion.
    Oracle {
        input: PathBuf,
        /// Comma-separated vertices of one cycle; all simple cycles if absent.
        #[arg(long, value_delimiter = ',')]
        cycle: Option<Vec<usize>>,
        #[arg(long, default_value_t = DEFAULT_MAX_ORACLE_CYCLE)]
        max_len: usize,
    },
    /// Print the JSON schema of run reports.
    Schema,
}

fn parse_order(s: &str) -> Result<YHeavyOrder, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let t = cli.timings;
    let result = match cli.command {
        Command::Present { input, order } => commands::present(&input, order, t),
        Command::Groebner {
            input,
            corpus,
            seed,
            max_n,
            order,
        } => match (input, corpus) {
            (_, Some(count)) => commands::groebner_corpus(count, seed, max_n, order, t),
            (Some(input), None) => commands::groebner(&input, order, t),
            (None, None) => unreachable!("clap requires a source"),
        },
        Command::Complex {
            input,
            facets,
            f_vector,
            classify,
            decompose,
            boundary,
        } => {
            let flags = ComplexFlags {
                facets,
                f_vector,
                classify,
                decompose,
                boundary,
            };
            commands::complex(&input, flags, t)
        }
        Command::Singular {
            path_quiver,
            input,
            point,
        } => match (path_quiver, input, point) {
            (Some(n), _, _) => commands::singular_path(n, t),
            (None, Some(input), Some(point)) => commands::singular_point(&input, &point, t),
            _ => unreachable!("clap requires a mode"),
        },
        Command::Oracle { input, cycle, max_len } => commands::oracle(&input, cycle, max_len, t),
        Command::Schema => {
            print!("{}", report::SCHEMA);
            return ExitCode::SUCCESS;
        }
    };
    match result {
        Ok(report) => {
            match cli.format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
