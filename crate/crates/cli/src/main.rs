use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use leafatlas::atlas::{atlas_with_cap, AtlasError};
use leafatlas::report;
use leafatlas::rootsys::{CartanType, Family, DEFAULT_WEYL_CAP};
use leafatlas::satake::{
    builtin_catalog, builtin_catalog_text, load_catalog, parse_arrows, parse_index_set, validate,
    Catalog, SatakeDiagram,
};
use leafatlas::verify::{verify, VerifyConfig, VerifyError};

const CATALOG_ENV: &str = "LEAFATLAS_CATALOG";

#[derive(Parser)]
#[command(name = "leafatlas", version, about = "Symplectic leaves of compact symmetric spaces")]
struct Cli {
    /// Catalog file; overrides $LEAFATLAS_CATALOG and the built-in catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Leaf atlas of one real form.
    Atlas {
        /// Catalog label, e.g. `sl(2,R)`.
        #[arg(long, conflicts_with_all = ["cartan_type", "rank", "black", "arrows"])]
        form: Option<String>,
        /// Family letter (`A`) or full type (`A2`) of an inline diagram.
        #[arg(long = "type")]
        cartan_type: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        /// 1-based black nodes, e.g. `{2}`.
        #[arg(long, default_value = "{}")]
        black: Option<String>,
        /// Arrow pairs, e.g. `{(1,3)}`.
        #[arg(long, default_value = "{}")]
        arrows: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Echoed into the report.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_WEYL_CAP)]
        weyl_cap: usize,
    },
    /// Numerical verification on a matrix realization.
    Verify {
        #[arg(long)]
        form: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Tolerance override `name=value`, repeatable.
        #[arg(long = "tol")]
        tolerances: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Validate every catalog entry.
    Catalog {
        /// Print the catalog text instead of validating it.
        #[arg(long)]
        dump: bool,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
}

/// Failure with its exit code: 1 for usage, 2 for domain errors.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

/// The report text and whether its content counts as a pass.
struct Output {
    text: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli).and_then(|out| emit(&cli, out)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(cli: &Cli, out: Output) -> Result<u8, Failure> {
    match &cli.output {
        Some(path) => write_atomic(path, &out.text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
        }
    }
    Ok(if out.passed { 0 } else { 2 })
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)
}

fn catalog_source(cli: &Cli) -> Result<Option<(String, PathBuf)>, Failure> {
    let path = cli
        .catalog
        .clone()
        .or_else(|| std::env::var_os(CATALOG_ENV).map(PathBuf::from));
    match path {
        None => Ok(None),
        Some(p) => std::fs::read_to_string(&p)
            .map(|t| Some((t, p.clone())))
            .map_err(|e| Failure::usage(format!("cannot read catalog {}: {e}", p.display()))),
    }
}

fn load(cli: &Cli) -> Result<Catalog, Failure> {
    match catalog_source(cli)? {
        None => Ok(builtin_catalog()),
        Some((text, path)) => load_catalog(&text)
            .map_err(|e| Failure::domain(format!("{}: {e}", path.display()))),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Atlas { form, cartan_type, rank, black, arrows, format, seed, weyl_cap } => {
            let catalog = load(cli)?;
            let sd = match (form, cartan_type) {
                (Some(label), _) => catalog.get(label).cloned().ok_or_else(|| {
                    Failure::usage(format!(
                        "unknown form {label:?}; available: {}",
                        catalog.labels().join(", ")
                    ))
                })?,
                (None, Some(ty)) => inline_diagram(
                    ty,
                    *rank,
                    black.as_deref().unwrap_or("{}"),
                    arrows.as_deref().unwrap_or("{}"),
                )?,
                (None, None) => return Err(Failure::usage("give --form or --type")),
            };
            let report = atlas_with_cap(&sd, *weyl_cap).map_err(|e| match e {
                AtlasError::Invalid { .. } => Failure::domain(e.to_string()),
                other => Failure::domain(other.to_string()),
            })?;
            let text = match format {
                Format::Json => report::atlas_json(&report, *seed, &catalog.hash),
                Format::Md => report::atlas_markdown(&report),
            };
            Ok(Output { text, passed: true })
        }
        Command::Verify { form, samples, seed, tolerances, format } => {
            let mut cfg = VerifyConfig::new(form.clone());
            cfg.samples = *samples;
            cfg.seed = *seed;
            for t in tolerances {
                cfg.tolerances.apply(t).map_err(|e| Failure::usage(e.to_string()))?;
            }
            let r = verify(&cfg).map_err(|e| match e {
                VerifyError::UnknownTolerance(_) | VerifyError::BadOverride(_) => {
                    Failure::usage(e.to_string())
                }
                other => Failure::domain(other.to_string()),
            })?;
            for c in r.checks.iter().filter(|c| !c.passed) {
                eprintln!("check failed: {} = {:e} > {:e}", c.name, c.value, c.tol);
            }
            let text = match format {
                Format::Json => report::verify_json(&r),
                Format::Md => report::verify_markdown(&r),
            };
            Ok(Output { text, passed: r.passed() })
        }
        Command::Catalog { dump, format } => {
            let source = catalog_source(cli)?;
            if *dump {
                let text = source.map(|(t, _)| t).unwrap_or_else(builtin_catalog_text);
                return Ok(Output { text, passed: true });
            }
            let catalog = load(cli)?;
            if catalog.is_empty() {
                eprintln!("warning: catalog has no entries");
            }
            let reports: Vec<_> = catalog.entries.iter().map(validate).collect();
            let passed = reports.iter().all(|r| r.passed());
            let text = match format {
                Format::Json => report::catalog_json(&reports, &catalog.hash),
                Format::Md => report::catalog_markdown(&reports),
            };
            Ok(Output { text, passed })
        }
    }
}

fn inline_diagram(ty: &str, rank: Option<usize>, black: &str, arrows: &str) -> Result<SatakeDiagram, Failure> {
    let mut chars = ty.trim().chars();
    let family = chars
        .next()
        .and_then(Family::from_letter)
        .ok_or_else(|| Failure::usage(format!("unsupported Cartan type {ty:?}")))?;
    let digits = chars.as_str();
    let r = match (digits.parse::<usize>().ok(), rank) {
        (Some(a), Some(b)) if a != b => {
            return Err(Failure::usage(format!("--rank {b} disagrees with --type {ty}")))
        }
        (Some(a), _) => a,
        (None, Some(b)) if digits.is_empty() => b,
        _ => return Err(Failure::usage(format!("cannot read a rank from --type {ty:?}"))),
    };
    let cartan_type = CartanType::new(family, r).map_err(|e| Failure::usage(e.to_string()))?;
    let zero = |v: usize| v.checked_sub(1).ok_or_else(|| Failure::usage("node indices start at 1"));
    let black = parse_index_set(black)
        .map_err(Failure::usage)?
        .into_iter()
        .map(zero)
        .collect::<Result<Vec<_>, _>>()?;
    let arrows = parse_arrows(arrows)
        .map_err(Failure::usage)?
        .into_iter()
        .map(|(i, j)| Ok((zero(i)?, zero(j)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let sd = SatakeDiagram::new(String::new(), cartan_type, black, arrows);
    let label = format!("{cartan_type} {}", sd.decorations());
    Ok(SatakeDiagram { label, ..sd })
}
