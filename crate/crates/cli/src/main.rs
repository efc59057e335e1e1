//! `detdecomp`: generate, verify, evaluate and export decompositions of the
//! determinant tensor.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 characteristic-2 field where 1/2 is needed, 4 input/output failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use detdecomp_core::evaluate::{det_oracle, random_matrices};
use detdecomp_core::verify::{format_bound_table, rank_upper_bound, verify_with_jobs};
use detdecomp_core::{
    best_known, chow_to_waring, derksen3, det4, eval_decomposition, even_general, expand_poly, leibniz,
    rank_bound_table, read_decomposition, to_chow, write_decomposition, Decomposition, Error, FieldSpec, Matrix,
};

#[derive(Parser, Debug)]
#[command(name = "detdecomp", version, about = "Exact rank decompositions of the determinant tensor")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a decomposition file.
    Gen {
        #[command(flatten)]
        source: Source,
        /// Output path; stdout when omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Expand a decomposition and compare it with det_n.
    Verify {
        #[command(flatten)]
        source: Source,
    },
    /// Evaluate a determinant through a decomposition.
    Eval {
        #[command(flatten)]
        source: Source,
        /// Matrix file; a seeded random integer matrix when omitted.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = detdecomp_core::evaluate::DEFAULT_SEED)]
        seed: u64,
        /// Also compute the determinant by elimination and compare.
        #[arg(long)]
        check: bool,
    },
    /// Write the products of linear forms in the entries x[i,j].
    Chow {
        #[command(flatten)]
        source: Source,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Write the fully expanded polynomial instead.
        #[arg(long)]
        expand: bool,
    },
    /// Write a sum of n-th powers of linear forms (needs char 0 or > n).
    Waring {
        #[command(flatten)]
        source: Source,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the term count and the bound n!/2^floor((n-2)/2).
    Count {
        #[command(flatten)]
        source: Source,
    },
    /// Compare Bell numbers with n!/2^floor((n-2)/2).
    Table {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Formula {
    Leibniz,
    Derksen3,
    Det4,
    Even,
    /// Even formula for even n, its Laplace lift for odd n (n times the
    /// terms of n - 1).
    Best,
}

#[derive(Args, Debug)]
struct Source {
    /// Read the decomposition from a file instead of generating it.
    #[arg(long, short, conflicts_with_all = ["n", "formula"])]
    input: Option<PathBuf>,
    /// Matrix order.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Formula::Best)]
    formula: Formula,
    /// `q` or `fp:<prime>`.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: FieldSpec,
    /// Worker threads for expansion.
    #[arg(long, env = "DETDECOMP_JOBS", default_value_t = 1)]
    jobs: usize,
}

fn parse_field(s: &str) -> Result<FieldSpec, Error> {
    s.parse()
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CharTwo(_) => 3,
            Error::NotPrime(_) | Error::InvalidArgument(_) | Error::CharTooSmall { .. } => 2,
            _ => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 4,
            message: e.to_string(),
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 4,
        message: format!("{}: {e}", path.display()),
    })
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: 4,
            message: format!("{}: {e}", path.display()),
        }),
        None => {
            io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

impl Source {
    fn load(&self) -> Result<Decomposition, Failure> {
        if let Some(path) = &self.input {
            return read_decomposition(&read_text(path)?).map_err(|e| {
                let mut f = Failure::from(e);
                f.message = format!("{}: {}", path.display(), f.message);
                f
            });
        }
        let field = self.field;
        let n = match (self.formula, self.n) {
            (Formula::Derksen3, None) => 3,
            (Formula::Det4, None) => 4,
            (_, Some(n)) if n >= 1 => n,
            (_, Some(_)) => return Err(Failure::usage("--n must be at least 1")),
            (_, None) => return Err(Failure::usage("either --n or --input is required")),
        };
        let d = match self.formula {
            Formula::Leibniz => leibniz(n, field)?,
            Formula::Derksen3 if n == 3 => derksen3(field)?,
            Formula::Derksen3 => return Err(Failure::usage("--formula derksen3 requires --n 3")),
            Formula::Det4 if n == 4 => det4(field)?,
            Formula::Det4 => return Err(Failure::usage("--formula det4 requires --n 4")),
            Formula::Even if n % 2 == 0 => even_general(n / 2, field)?,
            Formula::Even => return Err(Failure::usage("--formula even requires an even --n")),
            Formula::Best => best_known(n, field)?,
        };
        Ok(d)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Gen { source, output } => {
            let d = source.load()?;
            emit(output.as_deref(), &write_decomposition(&d))?;
        }
        Command::Verify { source } => {
            let d = source.load()?;
            let report = verify_with_jobs(&d, source.jobs);
            println!("{report}");
            if !report.is_exact_match {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Eval {
            source,
            matrix,
            seed,
            check,
        } => {
            let d = source.load()?;
            let a = match &matrix {
                Some(path) => Matrix::parse(&read_text(path)?, d.field())?,
                None => random_matrices(d.order(), d.field(), 1, seed)
                    .pop()
                    .expect("one matrix"),
            };
            let value = eval_decomposition(&d, &a)?;
            if check {
                let oracle = det_oracle(&a);
                let ok = oracle == value;
                println!("det={value} oracle={oracle} match={ok}");
                if !ok {
                    return Ok(ExitCode::from(1));
                }
            } else {
                println!("{value}");
            }
        }
        Command::Chow {
            source,
            output,
            expand,
        } => {
            let chow = to_chow(&source.load()?);
            let text = if expand {
                expand_poly(&chow).to_string()
            } else {
                chow.to_string()
            };
            emit(output.as_deref(), &text)?;
        }
        Command::Waring { source, output } => {
            let waring = chow_to_waring(&to_chow(&source.load()?))?;
            emit(output.as_deref(), &waring.to_string())?;
        }
        Command::Count { source } => {
            let d = source.load()?;
            let bound = match rank_upper_bound(d.order()) {
                Ok(b) => b.to_string(),
                Err(_) => "n/a".to_string(),
            };
            println!("n={} terms={} bound={bound}", d.order(), d.term_count());
        }
        Command::Table { max_n } => {
            print!("{}", format_bound_table(&rank_bound_table(max_n)?));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("detdecomp: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
