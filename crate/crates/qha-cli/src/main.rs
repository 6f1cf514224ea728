//! Command-line driver: analyze presentations, check single properties,
//! compute duals, run the commutation and closure verifications, and browse
//! the built-in corpus.
//!
//! Exit codes: 0 when every verdict passes, 1 when a verdict fails
//! (witnesses are printed), 2 on input or usage errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use qha::algebra::{build, build_algebra, extract_presentation, grading_diagnostics};
use qha::duality::{is_balanced, koszul_dual, koszulity_checks, ringel_dual};
use qha::presentation::{self, QuiverPresentation};
use qha::report::{analyze, verify_closure, verify_theorem1};
use qha::scalar::Field;
use qha::structural::{is_quasi_hereditary, Catalog, VertexOrder};

#[derive(Parser)]
#[command(name = "qha", version, about = "graded quasi-hereditary algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Override the coefficient field (`Q` or `Fp:<p>`).
    #[arg(long, global = true)]
    field: Option<String>,

    /// Cap for the degreewise algebra construction.
    #[arg(long, global = true)]
    max_degree: Option<i64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: quasi-heredity, Koszulity, balancedness, duals.
    Analyze { file: String },
    /// Check one property; exit 1 when it fails.
    Check {
        #[arg(value_enum)]
        property: Property,
        file: String,
    },
    /// Compute a dual and write its presentation.
    Dual {
        #[arg(value_enum)]
        which: Which,
        file: String,
        /// Output path for the dual's presentation.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a verification driver.
    Verify {
        #[arg(value_enum)]
        what: What,
        file: String,
        /// Second presentation, for the closure checks.
        file2: Option<String>,
    },
    /// List or show built-in corpus entries.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Balanced,
    Koszul,
    StandardKoszul,
    Qh,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Ringel,
    Koszul,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Theorem1,
    Closure,
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    Show { name: String },
}

fn load(path: &str, field: &Option<String>) -> Result<QuiverPresentation, String> {
    // corpus names are accepted in place of files
    let mut p = if std::path::Path::new(path).exists() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
        presentation::parse(&text).map_err(|e| e.to_string())?
    } else {
        presentation::corpus(path).map_err(|e| {
            format!("`{path}` is neither a readable file nor a corpus name: {e}")
        })?
    };
    if let Some(f) = field {
        let new_field = Field::parse_spec(f).map_err(|e| e.to_string())?;
        for r in &mut p.relations {
            for (c, _) in &mut r.terms {
                // integer or rational coefficients carry over to the new field
                let s = qha::scalar::coefficient_string(c);
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.parse::<i64>(), d.parse::<i64>()),
                    None => (s.parse::<i64>(), Ok(1)),
                };
                match (num, den) {
                    (Ok(n), Ok(d)) => {
                        *c = new_field.from_fraction(n, d).map_err(|e| e.to_string())?;
                    }
                    _ => return Err(format!("coefficient `{s}` does not fit the field")),
                }
            }
        }
        p.field = new_field;
    }
    Ok(p)
}

fn build_with_cap(
    p: &QuiverPresentation,
    cap: &Option<i64>,
) -> Result<Arc<qha::algebra::GradedAlgebra>, String> {
    match cap {
        Some(c) => build_algebra(p, *c).map_err(|e| e.to_string()),
        None => build(p).map_err(|e| e.to_string()),
    }
}

fn emit<T: serde::Serialize + std::fmt::Debug>(value: &T, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable report")
        ),
        Format::Text => println!("{value:#?}"),
    }
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Analyze { file } => {
            let p = load(file, &cli.field)?;
            let report = analyze(&p).map_err(|e| e.to_string())?;
            emit(&report, cli.format);
            Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Check { property, file } => {
            let p = load(file, &cli.field)?;
            let a = build_with_cap(&p, &cli.max_degree)?;
            let (ok, detail): (bool, String) = match property {
                Property::Qh => {
                    let v = is_quasi_hereditary(&a, VertexOrder::Natural);
                    (v.quasi_hereditary, format!("{v:?}"))
                }
                Property::Koszul => {
                    let k = koszulity_checks(&a).map_err(|e| e.to_string())?;
                    (k.koszul, format!("{k:?}"))
                }
                Property::StandardKoszul => {
                    let k = koszulity_checks(&a).map_err(|e| e.to_string())?;
                    (k.standard_koszul, format!("{k:?}"))
                }
                Property::Balanced => {
                    let catalog = Catalog::new(Arc::clone(&a)).map_err(|e| e.to_string())?;
                    let b = is_balanced(&catalog).map_err(|e| e.to_string())?;
                    (b.balanced, format!("{b:?}"))
                }
            };
            match cli.format {
                Format::Json => println!(
                    "{}",
                    serde_json::json!({ "pass": ok, "detail": detail })
                ),
                Format::Text => {
                    println!("{}: {}", if ok { "PASS" } else { "FAIL" }, detail);
                }
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Dual { which, file, output } => {
            let p = load(file, &cli.field)?;
            let a = build_with_cap(&p, &cli.max_degree)?;
            let dual = match which {
                Which::Ringel => {
                    let catalog = Catalog::new(Arc::clone(&a)).map_err(|e| e.to_string())?;
                    ringel_dual(&catalog).map_err(|e| e.to_string())?
                }
                Which::Koszul => koszul_dual(&a).map_err(|e| e.to_string())?,
            };
            let d = grading_diagnostics(&dual.algebra);
            let text = if d.positively_graded {
                let mut q =
                    extract_presentation(&dual.algebra).map_err(|e| e.to_string())?;
                q.name = format!("{}_{:?}", p.name, dual.kind).to_lowercase();
                presentation::render(&q)
            } else {
                return Err(format!(
                    "dual is not positively graded (graded dims {:?}); no presentation",
                    d.graded_dims
                ));
            };
            match output {
                Some(path) => {
                    std::fs::write(path, &text).map_err(|e| e.to_string())?;
                    eprintln!("wrote {}", path.display());
                }
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { what, file, file2 } => {
            let p = load(file, &cli.field)?;
            match what {
                What::Theorem1 => {
                    let report = verify_theorem1(&p).map_err(|e| e.to_string())?;
                    emit(&report, cli.format);
                    Ok(if report.all_pass() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    })
                }
                What::Closure => {
                    let q = match file2 {
                        Some(f) => Some(load(f, &cli.field)?),
                        None => None,
                    };
                    let report =
                        verify_closure(&p, q.as_ref()).map_err(|e| e.to_string())?;
                    emit(&report, cli.format);
                    Ok(if report.all_pass() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    })
                }
            }
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                for name in presentation::corpus_names() {
                    println!("{name}");
                }
                Ok(ExitCode::SUCCESS)
            }
            CorpusAction::Show { name } => {
                let p = presentation::corpus(name).map_err(|e| e.to_string())?;
                print!("{}", presentation::render(&p));
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. `qha corpus list | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
