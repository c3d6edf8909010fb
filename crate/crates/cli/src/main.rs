//! Command-line surface for the ncgram toolkit.
//!
//! Exit codes: 0 success / check passed, 1 semantic failure (a check or
//! self-test failed), 2 input error (unreadable files, malformed matrices
//! or words), 3 search budget exhausted.

mod doc;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use ncgram::classify::{
    canonical_form, classify_rank3, classify_rank4, ClassifyError, ClassifyReport, Equivalence,
    SearchParams, Verdict,
};
use ncgram::eulerform::SURFACE_RANK;
use ncgram::geometry::{DivisorF1, OrderSpec};
use ncgram::mutation::{apply_generator, parse_word, verify_braid_relations};
use ncgram::ncalgebra::{sklyanin, NcAlgebraError, QuadraticPresentation};
use ncgram::{GramMatrix, IntMatrix};

use doc::{emit_structured, emit_text, named_matrix, parse_matrix_document, parse_presentation};

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Everything went through but the semantic answer is "no" (failed check,
/// failed self-test); distinguished from input errors and budget blowups.
enum CliError {
    Input(String),
    Budget(String),
}

impl CliError {
    fn report(self) -> ExitCode {
        match self {
            CliError::Input(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(EXIT_INPUT)
            }
            CliError::Budget(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(EXIT_BUDGET)
            }
        }
    }
}

#[derive(Parser)]
#[command(name = "ncgram", version, about = "Exact Euler-form computations for (non)commutative surfaces: axiom checks, braid mutation, orbit classification, graded dimensions, divisor intersections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Args)]
struct MatrixSource {
    /// Matrix file (plain text or structured document).
    #[arg(long, conflicts_with = "named")]
    file: Option<PathBuf>,
    /// Built-in matrix: P2, A, B:<m> or Bp:<m>.
    #[arg(long)]
    named: Option<String>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Maximum |entry| in states visited during orbit search.
    #[arg(long, default_value_t = SearchParams::default().entry_cap_orbit)]
    cap: i64,
    /// Maximum number of states visited per orbit search.
    #[arg(long, default_value_t = SearchParams::default().max_orbit_size)]
    max_orbit: usize,
    /// Maximum word length in bidirectional searches.
    #[arg(long, default_value_t = SearchParams::default().max_word_length)]
    max_word: usize,
}

impl BudgetArgs {
    fn params(&self, enumeration_bound: i64) -> SearchParams {
        SearchParams {
            entry_bound_enumeration: enumeration_bound.max(1),
            entry_cap_orbit: self.cap,
            max_orbit_size: self.max_orbit,
            max_word_length: self.max_word,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the surface-type axiom check on a Gram matrix.
    Check {
        #[command(flatten)]
        source: MatrixSource,
        /// Required rank of s - id.
        #[arg(long, default_value_t = SURFACE_RANK)]
        rank: usize,
    },
    /// Apply a signed braid word (tokens s<k>, S<k>, e<k>; rightmost
    /// generator acts first).
    Mutate {
        #[command(flatten)]
        source: MatrixSource,
        /// The word, e.g. "e1 e3 s3 s1 s2 s3".
        word: String,
        /// Print every intermediate matrix.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Print a built-in matrix.
    Gram {
        /// Built-in matrix: P2, A, B:<m> or Bp:<m>.
        #[arg(long)]
        named: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Canonicalize a matrix within its bounded braid orbit.
    Orbit {
        #[command(flatten)]
        source: MatrixSource,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Decide bounded orbit equivalence of two matrices.
    Equivalent {
        /// First matrix: built-in name or @<file>.
        left: String,
        /// Second matrix: built-in name or @<file>.
        right: String,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Enumerate bounded surface-type matrices and connect them to the
    /// known orbits.
    Classify {
        /// Lattice rank (3 or 4).
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// Entry bound for the enumeration.
        #[arg(long, default_value_t = 8)]
        bound: i64,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Canonical divisor, del Pezzo test and fiber type of an order on the
    /// first Hirzebruch surface.
    Geometry {
        /// Degree of the order.
        #[arg(long)]
        degree: usize,
        /// H-coefficient of the ramification class (default: cubic).
        #[arg(long, default_value_t = 3)]
        ram_h: i64,
        /// E-coefficient of the ramification class.
        #[arg(long, default_value_t = 0)]
        ram_e: i64,
        /// Ramification index (default: the degree).
        #[arg(long)]
        index: Option<usize>,
    },
    /// Graded dimensions of a quadratic algebra presentation.
    Hilbert {
        /// Sklyanin parameters a,b,c (rationals).
        #[arg(long, conflicts_with_all = ["presentation", "commutative"])]
        sklyanin: Option<String>,
        /// Presentation file.
        #[arg(long, conflicts_with = "commutative")]
        presentation: Option<PathBuf>,
        /// Fully commutative presentation on this many generators.
        #[arg(long)]
        commutative: Option<usize>,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Also run the modular screening mode and compare.
        #[arg(long)]
        modular: bool,
    },
    /// Verify the signed braid relations on seeded pseudorandom matrices.
    Relations {
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 9)]
        bound: i64,
        #[arg(long, default_value_t = 1729)]
        seed: u64,
    },
    /// Run the built-in golden test suite.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { source, rank } => cmd_check(source, rank),
        Command::Mutate {
            source,
            word,
            trace,
            format,
        } => cmd_mutate(source, &word, trace, format),
        Command::Gram { named, format } => cmd_gram(&named, format),
        Command::Orbit {
            source,
            budget,
            format,
        } => cmd_orbit(source, budget, format),
        Command::Equivalent {
            left,
            right,
            budget,
        } => cmd_equivalent(&left, &right, budget),
        Command::Classify {
            n,
            bound,
            budget,
            format,
        } => cmd_classify(n, bound, budget, format),
        Command::Geometry {
            degree,
            ram_h,
            ram_e,
            index,
        } => cmd_geometry(degree, ram_h, ram_e, index),
        Command::Hilbert {
            sklyanin,
            presentation,
            commutative,
            max_degree,
            modular,
        } => cmd_hilbert(sklyanin, presentation, commutative, max_degree, modular),
        Command::Relations {
            n,
            trials,
            bound,
            seed,
        } => cmd_relations(n, trials, bound, seed),
        Command::Selftest => Ok(selftest::run()),
    };
    match result {
        Ok(code) => code,
        Err(err) => err.report(),
    }
}

fn load_gram(source: &MatrixSource) -> Result<(GramMatrix, Option<String>), CliError> {
    let (matrix, name) = match (&source.file, &source.named) {
        (Some(path), None) => {
            let content = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            let document = parse_matrix_document(&content).map_err(CliError::Input)?;
            (document.matrix, document.name)
        }
        (None, Some(name)) => {
            let m = named_matrix(name).map_err(CliError::Input)?;
            return Ok((m, Some(name.clone())));
        }
        _ => {
            return Err(CliError::Input(
                "exactly one of --file or --named is required".into(),
            ))
        }
    };
    let gram = GramMatrix::new(matrix).map_err(|e| CliError::Input(e.to_string()))?;
    Ok((gram, name))
}

fn print_matrix(m: &IntMatrix, name: Option<&str>, format: OutputFormat) {
    match format {
        OutputFormat::Text => print!("{}", emit_text(m)),
        OutputFormat::Structured => println!("{}", emit_structured(m, name)),
    }
}

fn cmd_check(source: MatrixSource, rank: usize) -> Result<ExitCode, CliError> {
    let (gram, name) = load_gram(&source)?;
    if let Some(name) = name {
        println!("matrix:          {name}");
    }
    let report = gram.check_surface_type(rank);
    println!("{report}");
    if report.passes_surface_type {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_FAILURE))
    }
}

fn cmd_mutate(
    source: MatrixSource,
    word: &str,
    trace: bool,
    format: OutputFormat,
) -> Result<ExitCode, CliError> {
    let (gram, _) = load_gram(&source)?;
    let word = parse_word(word, gram.n()).map_err(|e| CliError::Input(e.to_string()))?;
    if trace {
        // apply rightmost-first, printing every intermediate
        let mut current = gram.clone();
        println!("start:");
        print_matrix(current.as_int_matrix(), None, format);
        for g in word.generators().iter().rev() {
            current = apply_generator(&current, *g)
                .map_err(|e| CliError::Input(e.to_string()))?;
            println!("after {g}:");
            print_matrix(current.as_int_matrix(), None, format);
        }
        return Ok(ExitCode::SUCCESS);
    }
    let result =
        ncgram::apply_word(&gram, &word).map_err(|e| CliError::Input(e.to_string()))?;
    print_matrix(result.as_int_matrix(), None, format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_gram(named: &str, format: OutputFormat) -> Result<ExitCode, CliError> {
    let m = named_matrix(named).map_err(CliError::Input)?;
    print_matrix(m.as_int_matrix(), Some(named), format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_orbit(
    source: MatrixSource,
    budget: BudgetArgs,
    format: OutputFormat,
) -> Result<ExitCode, CliError> {
    let (gram, _) = load_gram(&source)?;
    let params = budget.params(SearchParams::default().entry_bound_enumeration);
    let (certificate, exhausted) = match canonical_form(&gram, &params) {
        Ok(c) => (c, false),
        Err(ClassifyError::BudgetExhausted { best, .. }) => (*best, true),
        Err(e) => return Err(CliError::Input(e.to_string())),
    };
    println!("fingerprint:    {}", certificate.fingerprint);
    println!("witness word:   \"{}\"", certificate.witness_word);
    println!("representative:");
    print_matrix(certificate.representative.as_int_matrix(), None, format);
    if exhausted {
        Err(CliError::Budget(
            "orbit budget exhausted; representative is best-so-far".into(),
        ))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn load_gram_ref(spec: &str) -> Result<GramMatrix, CliError> {
    if let Some(path) = spec.strip_prefix('@') {
        let source = MatrixSource {
            file: Some(PathBuf::from(path)),
            named: None,
        };
        Ok(load_gram(&source)?.0)
    } else {
        named_matrix(spec).map_err(CliError::Input)
    }
}

fn cmd_equivalent(left: &str, right: &str, budget: BudgetArgs) -> Result<ExitCode, CliError> {
    let m1 = load_gram_ref(left)?;
    let m2 = load_gram_ref(right)?;
    let params = budget.params(SearchParams::default().entry_bound_enumeration);
    let outcome = ncgram::classify::equivalent(&m1, &m2, &params)
        .map_err(|e| CliError::Input(e.to_string()))?;
    match outcome {
        Equivalence::Witness(w) => {
            println!("equivalent; witness \"{w}\"");
            Ok(ExitCode::SUCCESS)
        }
        Equivalence::DistinguishedByInvariant => {
            println!("not equivalent: distinguished by invariant fingerprint");
            Ok(ExitCode::from(EXIT_FAILURE))
        }
        Equivalence::Inconclusive => {
            println!("inconclusive within the given budgets");
            Ok(ExitCode::from(EXIT_BUDGET))
        }
    }
}

fn cmd_classify(
    n: usize,
    bound: i64,
    budget: BudgetArgs,
    format: OutputFormat,
) -> Result<ExitCode, CliError> {
    let params = budget.params(bound);
    let report = match n {
        3 => classify_rank3(bound, &params),
        4 => classify_rank4(bound, &params),
        other => {
            return Err(CliError::Input(format!(
                "classification is implemented for ranks 3 and 4, got {other}"
            )))
        }
    };
    match format {
        OutputFormat::Text => print!("{report}"),
        OutputFormat::Structured => println!("{}", report_json(&report)),
    }
    Ok(ExitCode::SUCCESS)
}

fn report_json(report: &ClassifyReport) -> serde_json::Value {
    let records: Vec<serde_json::Value> = report
        .records
        .iter()
        .map(|record| {
            let entries: Vec<serde_json::Value> = record
                .matrix
                .as_int_matrix()
                .entries()
                .iter()
                .map(doc::bigint_json)
                .collect();
            let charpoly: Vec<String> = record
                .fingerprint
                .charpoly_serre
                .iter()
                .map(|c| c.to_string())
                .collect();
            let verdict = match &record.verdict {
                Verdict::ConnectedToPlane { witness } => serde_json::json!({
                    "target": "plane", "witness": witness.to_string(),
                }),
                Verdict::ConnectedToQuadric { witness } => serde_json::json!({
                    "target": "quadric", "witness": witness.to_string(),
                }),
                Verdict::ConnectedToFamily { m, witness } => serde_json::json!({
                    "target": "family", "m": m, "witness": witness.to_string(),
                }),
                Verdict::Unresolved => serde_json::json!({ "target": "unresolved" }),
            };
            serde_json::json!({
                "n": record.matrix.n(),
                "entries": entries,
                "fingerprint": {
                    "charpoly_serre": charpoly,
                    "rank_s_minus_id": record.fingerprint.rank_s_minus_id,
                },
                "verdict": verdict,
            })
        })
        .collect();
    serde_json::json!({
        "n": report.n,
        "bound": report.bound,
        "family_cap": report.family_cap,
        "unresolved": report.unresolved_count(),
        "records": records,
    })
}

fn cmd_geometry(
    degree: usize,
    ram_h: i64,
    ram_e: i64,
    index: Option<usize>,
) -> Result<ExitCode, CliError> {
    let class = DivisorF1::from_int(ram_h, ram_e);
    let spec = if degree == 1 && index.is_none() && class == DivisorF1::from_int(3, 0) {
        // trivial order: unramified
        OrderSpec::cubic(1).map_err(|e| CliError::Input(e.to_string()))?
    } else {
        OrderSpec::new(degree, class, index.unwrap_or(degree))
            .map_err(|e| CliError::Input(e.to_string()))?
    };
    println!(
        "order: degree {}, ramification {}, index {}",
        spec.degree, spec.ramification_class, spec.ramification_index
    );
    println!("K_A = {}", spec.order_canonical());
    let del_pezzo = spec.is_del_pezzo();
    let fiber = spec.generic_fiber_type();
    println!("-K_A . f   = {}", del_pezzo.minus_k_dot_fiber);
    println!("-K_A . C_0 = {}", del_pezzo.minus_k_dot_section);
    println!(
        "del Pezzo: {}; type: {}",
        if del_pezzo.is_del_pezzo { "yes" } else { "no" },
        fiber.fiber_type
    );
    println!("criterion: {}", ncgram::geometry::DelPezzoReport::CRITERION);
    println!("note: {}", ncgram::geometry::FiberReport::RULED_NOTE);
    Ok(ExitCode::SUCCESS)
}

fn cmd_hilbert(
    sklyanin_params: Option<String>,
    presentation: Option<PathBuf>,
    commutative: Option<usize>,
    max_degree: usize,
    modular: bool,
) -> Result<ExitCode, CliError> {
    let presentation = if let Some(raw) = sklyanin_params {
        let parts: Vec<&str> = raw.split(',').collect();
        if parts.len() != 3 {
            return Err(CliError::Input(format!(
                "--sklyanin expects a,b,c, got {raw:?}"
            )));
        }
        let parse = |s: &str| {
            BigRational::from_str(s.trim())
                .map_err(|e| CliError::Input(format!("bad parameter {s:?}: {e}")))
        };
        sklyanin(parse(parts[0])?, parse(parts[1])?, parse(parts[2])?)
            .map_err(|e| CliError::Input(e.to_string()))?
    } else if let Some(path) = presentation {
        let content = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        let (g, relations) = parse_presentation(&content).map_err(CliError::Input)?;
        QuadraticPresentation::new(g, relations).map_err(|e| CliError::Input(e.to_string()))?
    } else if let Some(g) = commutative {
        QuadraticPresentation::commutative(g).map_err(|e| CliError::Input(e.to_string()))?
    } else {
        return Err(CliError::Input(
            "one of --sklyanin, --presentation or --commutative is required".into(),
        ));
    };
    let budget_err = |e: NcAlgebraError| match e {
        NcAlgebraError::ResourceBudget { .. } => CliError::Budget(e.to_string()),
        other => CliError::Input(other.to_string()),
    };
    let dims = presentation.graded_dims(max_degree).map_err(budget_err)?;
    let joined: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    println!("{}", joined.join(","));
    if modular {
        let screened = presentation
            .graded_dims_modular(max_degree)
            .map_err(budget_err)?;
        let joined: Vec<String> = screened.iter().map(|d| d.to_string()).collect();
        println!("modular: {}", joined.join(","));
        if screened != dims {
            println!("modular screen disagrees with the rational computation");
            return Ok(ExitCode::from(EXIT_FAILURE));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_relations(n: usize, trials: usize, bound: i64, seed: u64) -> Result<ExitCode, CliError> {
    if n < 2 {
        return Err(CliError::Input("relations need rank at least 2".into()));
    }
    let report = verify_braid_relations(n, trials, bound, seed);
    println!(
        "checked {} relations on {} seeded matrices (rank {}, entries within {})",
        report.relations_checked, report.trials, report.rank, bound
    );
    match &report.first_failure {
        None => {
            println!("all relations hold");
            Ok(ExitCode::SUCCESS)
        }
        Some(failure) => {
            println!(
                "FAILED: relation {} on trial {}:\n{}",
                failure.relation, failure.trial, failure.matrix
            );
            Ok(ExitCode::from(EXIT_FAILURE))
        }
    }
}
