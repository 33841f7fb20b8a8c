//! Batch front door for the brace toolkit: validation, invariant
//! reports, lambda groups, character degrees, isoclinism and the full
//! verification battery, all over flat JSON files.
//!
//! Exit codes: 0 success, 1 validation failure, 2 property violation,
//! 3 I/O or format error.

use brace_forge_core::brace::{make_radical_brace, make_trivial_brace, BraceFile, SkewBrace};
use brace_forge_core::caps::Caps;
use brace_forge_core::characters;
use brace_forge_core::corpus;
use brace_forge_core::error::CheckError;
use brace_forge_core::group::{FiniteGroup, GroupFile};
use brace_forge_core::isoclinism;
use brace_forge_core::lambda::LambdaGroup;
use brace_forge_core::verify;
use brace_forge_core::LambdaFlavor;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "brace-forge",
    version,
    about = "Exact computations with finite skew left braces"
)]
struct Cli {
    /// Pretty-print JSON output (default is compact, byte-stable).
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Flavor {
    /// Semidirect product through the opposite lambda map.
    Op,
    /// Semidirect product through the standard lambda map.
    Std,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a brace or group JSON file.
    Validate { path: PathBuf },
    /// Structural invariants of a brace (annihilator, commutator ideal,
    /// fixed and kernel sets, centers, class counts).
    Invariants { path: PathBuf },
    /// Emit the lambda group of a brace as a group JSON file.
    LambdaGroup {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Flavor::Op)]
        flavor: Flavor,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Irreducible character degrees of a group file, or of the lambda
    /// group when given a brace file.
    CharDegrees { path: PathBuf },
    /// Distinct irreducible degrees of a brace.
    Ird { path: PathBuf },
    /// Isoclinism certificate search for two braces (or two groups).
    Isoclinic { path_a: PathBuf, path_b: PathBuf },
    /// Regular-representation decomposition checks for a brace.
    RegularCheck { path: PathBuf },
    /// Run the whole verification battery over the default corpus.
    VerifyPaper {
        /// Restrict to corpus entries whose name contains the selector.
        #[arg(long)]
        only: Option<String>,
    },
    /// Construct a brace and emit its JSON.
    Make {
        /// Family: "trivial" (over --group) or "radical" (with --p/--n/--r).
        #[arg(long)]
        family: String,
        /// Base group for trivial braces: `z<k>`, k4, s3, d4, q8.
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum CliError {
    Io(String),
    Validation(String),
    Property(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Property(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Io(m) | CliError::Validation(m) | CliError::Property(m) => m,
        }
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Property(v) => CliError::Property(v.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// A parsed input file: either a bare group or a brace.
enum Input {
    Group(FiniteGroup),
    Brace(SkewBrace),
}

fn read_input(path: &Path) -> Result<Input, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Io(format!("{}: malformed JSON: {e}", path.display())))?;
    if value.get("add").is_some() && value.get("circ").is_some() {
        let file: BraceFile = serde_json::from_value(value)
            .map_err(|e| CliError::Io(format!("{}: bad brace schema: {e}", path.display())))?;
        let brace = SkewBrace::from_tables(&file.add, &file.circ)
            .map_err(|e| CliError::Validation(e.to_string()))?;
        if brace.order() != file.n {
            return Err(CliError::Validation(format!(
                "declared n = {} but tables have order {}",
                file.n,
                brace.order()
            )));
        }
        Ok(Input::Brace(brace))
    } else if value.get("table").is_some() {
        let file: GroupFile = serde_json::from_value(value)
            .map_err(|e| CliError::Io(format!("{}: bad group schema: {e}", path.display())))?;
        let group =
            FiniteGroup::from_rows(&file.table).map_err(|e| CliError::Validation(e.to_string()))?;
        if group.order() != file.n {
            return Err(CliError::Validation(format!(
                "declared n = {} but table has order {}",
                file.n,
                group.order()
            )));
        }
        Ok(Input::Group(group))
    } else {
        Err(CliError::Io(format!(
            "{}: expected a group file (n, table) or a brace file (n, add, circ)",
            path.display()
        )))
    }
}

fn require_brace(input: Input, path: &Path) -> Result<SkewBrace, CliError> {
    match input {
        Input::Brace(b) => Ok(b),
        Input::Group(_) => Err(CliError::Io(format!(
            "{}: expected a brace file",
            path.display()
        ))),
    }
}

fn emit<T: Serialize>(value: &T, human: bool, output: Option<&Path>) -> Result<(), CliError> {
    let text = if human {
        serde_json::to_string_pretty(value).expect("serializable")
    } else {
        serde_json::to_string(value).expect("serializable")
    };
    match output {
        Some(path) => std::fs::write(path, text.as_bytes())
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct InvariantsReport {
    n: usize,
    #[serde(rename = "Ann")]
    ann: Vec<usize>,
    #[serde(rename = "Aprime")]
    a_prime: Vec<usize>,
    #[serde(rename = "Fix")]
    fix: Vec<usize>,
    #[serde(rename = "Ker")]
    ker: Vec<usize>,
    z_add: Vec<usize>,
    z_circ: Vec<usize>,
    circ_derived: Vec<usize>,
    k_add: usize,
    k_circ: usize,
    is_left_brace: bool,
    is_self_opposite: bool,
}

#[derive(Serialize)]
struct DegreesReport {
    order: usize,
    k: usize,
    degrees: Vec<[u64; 2]>,
    prime_q: u64,
}

#[derive(Serialize)]
struct IrdReport {
    n: usize,
    lambda_order: usize,
    ird: Vec<u64>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum IsoclinicReport {
    Braces {
        isoclinic: bool,
        certificate: Option<isoclinism::BraceIsoclinism>,
    },
    Groups {
        isoclinic: bool,
        certificate: Option<isoclinism::GroupIsoclinism>,
    },
}

fn degrees_report(group: &FiniteGroup, caps: &Caps) -> Result<DegreesReport, CliError> {
    let table = characters::character_degrees(group, caps)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(DegreesReport {
        order: table.order,
        k: table.class_count,
        degrees: table
            .multiset
            .pairs()
            .iter()
            .map(|&(d, m)| [d, m as u64])
            .collect(),
        prime_q: table.prime_q,
    })
}

fn named_group(name: &str) -> Result<FiniteGroup, CliError> {
    match name {
        "k4" => Ok(corpus::klein4()),
        "s3" => Ok(corpus::sym3()),
        "d4" => Ok(corpus::dihedral4()),
        "q8" => Ok(corpus::quaternion8()),
        other => {
            if let Some(rest) = other.strip_prefix('z') {
                if let Ok(k) = rest.parse::<usize>() {
                    if (1..=512).contains(&k) {
                        return Ok(corpus::cyclic(k));
                    }
                }
            }
            Err(CliError::Io(format!(
                "unknown group '{other}' (expected z<k>, k4, s3, d4 or q8)"
            )))
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let caps = Caps::from_env();
    match cli.command {
        Command::Validate { path } => {
            match read_input(&path)? {
                Input::Group(group) => emit(
                    &serde_json::json!({"valid": true, "kind": "group", "n": group.order()}),
                    cli.human,
                    None,
                )?,
                Input::Brace(brace) => emit(
                    &serde_json::json!({"valid": true, "kind": "brace", "n": brace.order()}),
                    cli.human,
                    None,
                )?,
            }
            Ok(())
        }
        Command::Invariants { path } => {
            let brace = require_brace(read_input(&path)?, &path)?;
            let report = InvariantsReport {
                n: brace.order(),
                ann: brace.annihilator().members().to_vec(),
                a_prime: brace.commutator_ideal().members().to_vec(),
                fix: brace.fix_lambda().members().to_vec(),
                ker: brace.ker_lambda().members().to_vec(),
                z_add: brace.add().center().members().to_vec(),
                z_circ: brace.circ().center().members().to_vec(),
                circ_derived: brace.circ().derived_subgroup().members().to_vec(),
                k_add: brace.add().class_count(),
                k_circ: brace.circ().class_count(),
                is_left_brace: brace.is_left_brace(),
                is_self_opposite: brace_forge_core::is_self_opposite(&brace),
            };
            emit(&report, cli.human, None)
        }
        Command::LambdaGroup {
            path,
            flavor,
            output,
        } => {
            let brace = require_brace(read_input(&path)?, &path)?;
            let flavor = match flavor {
                Flavor::Op => LambdaFlavor::Opposite,
                Flavor::Std => LambdaFlavor::Standard,
            };
            let lg = LambdaGroup::build(&brace, flavor, &caps)?;
            emit(&lg.group().to_file(), cli.human, output.as_deref())
        }
        Command::CharDegrees { path } => {
            let report = match read_input(&path)? {
                Input::Group(group) => degrees_report(&group, &caps)?,
                Input::Brace(brace) => {
                    let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps)?;
                    degrees_report(lg.group(), &caps)?
                }
            };
            emit(&report, cli.human, None)
        }
        Command::Ird { path } => {
            let brace = require_brace(read_input(&path)?, &path)?;
            let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps)?;
            let degrees = characters::ird(&brace, &caps)?;
            let report = IrdReport {
                n: brace.order(),
                lambda_order: lg.group().order(),
                ird: degrees.into_iter().collect(),
            };
            emit(&report, cli.human, None)
        }
        Command::Isoclinic { path_a, path_b } => {
            let report = match (read_input(&path_a)?, read_input(&path_b)?) {
                (Input::Brace(a), Input::Brace(b)) => {
                    let certificate = isoclinism::brace_isoclinic(&a, &b, &caps)?;
                    IsoclinicReport::Braces {
                        isoclinic: certificate.is_some(),
                        certificate,
                    }
                }
                (Input::Group(a), Input::Group(b)) => {
                    let certificate = isoclinism::group_isoclinic(&a, &b, &caps)?;
                    IsoclinicReport::Groups {
                        isoclinic: certificate.is_some(),
                        certificate,
                    }
                }
                _ => {
                    return Err(CliError::Io(
                        "isoclinic expects two brace files or two group files".into(),
                    ))
                }
            };
            emit(&report, cli.human, None)
        }
        Command::RegularCheck { path } => {
            let brace = require_brace(read_input(&path)?, &path)?;
            let lg = LambdaGroup::build(&brace, LambdaFlavor::Opposite, &caps)?;
            let report = characters::regular_decomposition_check(&lg)?;
            emit(&report, cli.human, None)?;
            if report.all_hold() {
                Ok(())
            } else {
                Err(CliError::Property(
                    "regular decomposition checks failed".into(),
                ))
            }
        }
        Command::VerifyPaper { only } => {
            let summary = verify::verify_paper(only.as_deref(), &caps)?;
            emit(&summary, cli.human, None)?;
            if summary.all_hold {
                Ok(())
            } else {
                Err(CliError::Property(
                    "verification battery reported a failure".into(),
                ))
            }
        }
        Command::Make {
            family,
            group,
            p,
            n,
            r,
            output,
        } => {
            let brace = match family.as_str() {
                "trivial" => {
                    let name = group
                        .ok_or_else(|| CliError::Io("--family trivial requires --group".into()))?;
                    make_trivial_brace(&named_group(&name)?)
                }
                "radical" => {
                    let (p, n, r) = match (p, n, r) {
                        (Some(p), Some(n), Some(r)) => (p, n, r),
                        _ => {
                            return Err(CliError::Io(
                                "--family radical requires --p, --n and --r".into(),
                            ))
                        }
                    };
                    make_radical_brace(p, n, r, &caps)
                        .map_err(|e| CliError::Validation(e.to_string()))?
                }
                other => {
                    return Err(CliError::Io(format!(
                        "unknown family '{other}' (expected trivial or radical)"
                    )))
                }
            };
            emit(&brace.to_file(), cli.human, output.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}
