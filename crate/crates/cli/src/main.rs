use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lehmer_cli::suites::{self, Settings, Suite};
use lehmer_cli::{commands, exit, exit_code, parse_tol};
use lehmer_core::bounds::BoundParams;
use lehmer_core::dyadic::parse_rational;
use lehmer_core::Result;
use serde_json::Value;

#[derive(Parser)]
#[command(name = "lehmer", version, about = "Certified heights of algebraic numbers and Lehmer-type bounds")]
struct Cli {
    /// Width of every reported height interval, in nats (e.g. 2^-40, 1e-12).
    #[arg(long, global = true, default_value = "2^-40")]
    tol: String,
    /// Ceiling of the working precision, in bits.
    #[arg(long, global = true, default_value_t = 65536)]
    max_bits: u64,
    /// Seed of the corpus generator.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FieldArg {
    /// Base field, e.g. field:poly:[-2,0,1];box:1.4,1.5,0,0 (default Q).
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weil height of a number.
    Height { number: String },
    /// Conjugates of a number over a field.
    Conj {
        number: String,
        #[command(flatten)]
        field: FieldArg,
    },
    /// W_k: the largest height of a conjugate ratio over k.
    Wk {
        number: String,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Lower and norm-trick upper bounds for V_k.
    Vk {
        number: String,
        #[command(flatten)]
        field: FieldArg,
    },
    /// Upper bound for the height relative to a subgroup by grid search, with
    /// the lower bound W/2 over the field of the generators.
    Hgamma {
        number: String,
        gamma: String,
        #[arg(long, default_value_t = 4)]
        m_max: u64,
        #[arg(long, default_value_t = 8)]
        e_max: u64,
    },
    /// Simultaneous approximation of a rational vector with denominator m <= Q^n.
    Dirichlet { vector: String, q: String },
    /// Table of explicit lower bounds.
    Bounds {
        /// Degree of the number.
        #[arg(long)]
        d: u64,
        /// Degree over the maximal abelian extension of Q.
        #[arg(long)]
        d0: Option<u64>,
        /// Degree over the maximal abelian extension of k.
        #[arg(long = "big-d")]
        big_d: Option<u64>,
        /// The field constant c(k).
        #[arg(long)]
        c_k: Option<String>,
        /// The conjectural degree-one constant.
        #[arg(long)]
        c0: Option<String>,
    },
    /// The lower-bound constant C_Gamma(eps) for a subgroup.
    Constant {
        gamma: String,
        #[arg(long, default_value = "3/2")]
        eps: String,
        /// Degree of the field generated by the subgroup.
        #[arg(long, default_value_t = 1)]
        k_deg: u64,
    },
    /// Run a verification suite and print one JSON record per check.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Corpus size, replacing each suite's default.
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        m_max: Option<u64>,
        #[arg(long)]
        e_max: Option<u64>,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Axioms,
    Thma,
    Voutier,
    Doubleweak,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Axioms => Suite::Axioms,
            SuiteArg::Thma => Suite::Thma,
            SuiteArg::Voutier => Suite::Voutier,
            SuiteArg::Doubleweak => Suite::Doubleweak,
            SuiteArg::All => Suite::All,
        }
    }
}

fn print_lines(lines: &[Value]) -> io::Result<()> {
    let mut out = io::stdout().lock();
    for v in lines {
        serde_json::to_writer(&mut out, v)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

fn optional_rational(s: &Option<String>) -> Result<Option<num_rational::BigRational>> {
    s.as_deref().map(parse_rational).transpose()
}

fn run(cli: Cli) -> Result<i32> {
    let tol = parse_tol(&cli.tol)?;
    let mb = cli.max_bits;
    let single = |v: Value| -> Result<i32> {
        print_lines(&[v]).map_err(|e| lehmer_core::Error::Parse(e.to_string()))?;
        Ok(exit::OK)
    };
    match cli.cmd {
        Cmd::Height { number } => single(commands::height(&number, &tol, mb)?),
        Cmd::Conj { number, field } => single(commands::conj(&number, field.field.as_deref(), mb)?),
        Cmd::Wk { number, field } => single(commands::wk(&number, field.field.as_deref(), &tol, mb)?),
        Cmd::Vk { number, field } => single(commands::vk(&number, field.field.as_deref(), &tol, mb)?),
        Cmd::Hgamma { number, gamma, m_max, e_max } => {
            single(commands::hgamma(&number, &gamma, m_max, e_max, &tol, mb)?)
        }
        Cmd::Dirichlet { vector, q } => single(commands::dirichlet(&vector, &q)?),
        Cmd::Bounds { d, d0, big_d, c_k, c0 } => {
            let p = BoundParams { d, d0, big_d, c_k: optional_rational(&c_k)?, c0_gamma: optional_rational(&c0)? };
            print_lines(&commands::bounds(&p)).map_err(|e| lehmer_core::Error::Parse(e.to_string()))?;
            Ok(exit::OK)
        }
        Cmd::Constant { gamma, eps, k_deg } => single(commands::constant(&gamma, &eps, k_deg, &tol, mb)?),
        Cmd::Verify { suite, count, m_max, e_max, out } => {
            let suite = Suite::from(suite);
            let settings = Settings { count, m_max, e_max, ..Settings::new(cli.seed, tol, mb) };
            let start = Instant::now();
            let report = suites::run(suite, &settings)?;
            let written = match &out {
                Some(path) => File::create(path).and_then(|f| {
                    let mut w = BufWriter::new(f);
                    report.write_jsonl(&mut w)?;
                    w.flush()
                }),
                None => report.write_jsonl(io::stdout().lock()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write report: {e}");
                return Ok(exit::USAGE);
            }
            let summary = report.summary();
            for c in report.failures() {
                eprintln!("FAIL {}: {} vs {}", c.name, c.lhs, c.rhs);
            }
            eprintln!("{}: {summary} ({:.2}s)", suite.name(), start.elapsed().as_secs_f64());
            let exhausted = report.checks.iter().any(|c| c.lhs.contains("precision exhausted"));
            Ok(if summary.fail > 0 {
                exit::FAILED
            } else if exhausted {
                exit::PRECISION
            } else {
                exit::OK
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        exit_code(&e)
    });
    ExitCode::from(code as u8)
}
