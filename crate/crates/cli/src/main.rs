use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use cymax::exactnum::{CycMatrix, CycNum, QMatrix};
use cymax::intlin::ZMatrix;
use cymax::io::{parse_cyc_columns, parse_cyc_vector, parse_integer_matrix, parse_lattice, parse_rational_matrix};
use cymax::isometry::catalog::SUPPORTED_R;
use cymax::isometry::parse_isometry_json;
use cymax::lattice::Lattice;
use cymax::report::Report;
use cymax::suite::{self, SuiteConfig};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "cymax", version, about = "Exact checks for maximal automorphisms of Calabi-Yau threefolds")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for the random property checks.
    #[arg(long, default_value_t = suite::DEFAULT_SEED, global = true)]
    seed: u64,
    /// Largest matrix order searched when computing the order of an action.
    #[arg(long, default_value_t = cymax::isometry::DEFAULT_ORDER_BOUND, global = true)]
    order_bound: u64,
    /// Include wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hodge numbers of the quotient threefolds for k = 0..6.
    HodgeTable,
    /// Allowed orders of maximal actions, or the analysis of one action.
    Classify {
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = cymax::classify::DEFAULT_M_MAX)]
        m_max: u64,
    },
    /// Validate a lattice isometry and report its eigenspace signatures.
    VerifyIsometry {
        /// Standard lattice name or a lattice JSON file; omit when the
        /// matrix file holds {"lattice", "matrix"}.
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Block structure of monodromy generators and the MUM obstruction.
    CheckMonodromy {
        #[arg(long)]
        f2: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        gens: Vec<PathBuf>,
        /// Alternating form; when given, form preservation is checked too.
        #[arg(long)]
        form: Option<PathBuf>,
        #[arg(long, default_value_t = cymax::monodromy::DEFAULT_WORD_LENGTH)]
        word_length: usize,
    },
    /// K3 period, weight-3 structure and its checks for a catalog isometry.
    Pipeline {
        #[arg(long)]
        r: usize,
        /// Period point coordinates in the eigenspace basis.
        #[arg(long)]
        omega: Option<PathBuf>,
    },
    /// Every table, catalog, pipeline, property and classification check in order.
    PaperSuite {
        #[arg(long, default_value_t = suite::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = cymax::classify::DEFAULT_M_MAX)]
        m_max: u64,
    },
}

/// An input problem: reported on stderr with exit code 2.
struct InputError(String);

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> cymax::Result<T>) -> Result<T, InputError> {
    parse(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Inputs parsed up front so that no computation starts on a bad file.
enum Job {
    HodgeTable,
    Classify { m_max: u64 },
    ClassifyMatrix { a: QMatrix },
    VerifyIsometry { lattice: Lattice, matrix: ZMatrix },
    CheckMonodromy { f2: CycMatrix, gens: Vec<QMatrix>, form: Option<QMatrix>, word_length: usize },
    Pipeline { r: usize, omega: Option<Vec<CycNum>> },
    PaperSuite(SuiteConfig),
}

fn prepare(cli: &Cli) -> Result<Job, InputError> {
    Ok(match &cli.command {
        Command::HodgeTable => Job::HodgeTable,
        Command::Classify { matrix: None, m_max } => Job::Classify { m_max: *m_max },
        Command::Classify { matrix: Some(p), .. } => Job::ClassifyMatrix { a: load(p, parse_rational_matrix)? },
        Command::VerifyIsometry { lattice, matrix } => match lattice {
            Some(l) => {
                let path = Path::new(l);
                let lattice = if path.is_file() {
                    load(path, parse_lattice)?
                } else {
                    parse_lattice(l).map_err(|e| InputError(format!("--lattice: {e}")))?
                };
                Job::VerifyIsometry { lattice, matrix: load(matrix, parse_integer_matrix)? }
            }
            None => {
                let (lattice, matrix) = load(matrix, parse_isometry_json)?;
                Job::VerifyIsometry { lattice, matrix }
            }
        },
        Command::CheckMonodromy { f2, gens, form, word_length } => Job::CheckMonodromy {
            f2: load(f2, parse_cyc_columns)?,
            gens: gens.iter().map(|p| load(p, parse_rational_matrix)).collect::<Result<_, _>>()?,
            form: form.as_deref().map(|p| load(p, parse_rational_matrix)).transpose()?,
            word_length: *word_length,
        },
        Command::Pipeline { r, omega } => {
            if !SUPPORTED_R.contains(r) {
                return Err(InputError(format!("--r must be one of {SUPPORTED_R:?}, got {r}")));
            }
            Job::Pipeline { r: *r, omega: omega.as_deref().map(|p| load(p, parse_cyc_vector)).transpose()? }
        }
        Command::PaperSuite { samples, m_max } => Job::PaperSuite(SuiteConfig {
            seed: cli.seed,
            samples: *samples,
            m_max: *m_max,
            order_bound: cli.order_bound,
        }),
    })
}

fn run(job: Job, order_bound: u64) -> Report {
    match job {
        Job::HodgeTable => suite::hodge_table_report(),
        Job::Classify { m_max } => suite::classify_report(m_max, order_bound),
        Job::ClassifyMatrix { a } => suite::classify_matrix_report(&a, order_bound),
        Job::VerifyIsometry { lattice, matrix } => suite::verify_isometry_report(&lattice, &matrix, order_bound),
        Job::CheckMonodromy { f2, gens, form, word_length } => {
            suite::check_monodromy_report(&f2, &gens, form.as_ref(), word_length)
        }
        Job::Pipeline { r, omega } => suite::pipeline_report(r, omega, order_bound),
        Job::PaperSuite(cfg) => suite::paper_suite(&cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let job = match prepare(&cli) {
        Ok(job) => job,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let mut report = run(job, cli.order_bound);
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    let mut out = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    if !out.ends_with('\n') {
        out.push('\n');
    }
    // The report is fully rendered before anything is written.
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}
