//! Command line front end.
//!
//! Exit codes: 0 affirmative, 1 well-formed negative answer, 2 input or
//! usage error, 3 budget exhausted or internal failure.

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use chaintab::io::{ChainDocument, CliffordField, TableauDocument};
use chaintab::tableau::validate_grid;
use chaintab::verify::{sweep_clifford_gonality, SweepConfig, SweepMode};
use chaintab::{
    bn_table, clifford_index, count_tableaux, find_tableau, gonality, params_of, reduce_to_rank_one, Error,
    SearchBudget, TorsionProfile,
};

#[derive(Parser)]
#[command(
    name = "chaintab",
    version,
    about = "Displacement tableaux and divisor invariants of chains of cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the torsion profile of a chain.
    Profile { chain: PathBuf },
    /// Check a tableau against a chain's torsion profile.
    Validate { chain: PathBuf, tableau: PathBuf },
    /// Find the lexicographically smallest tableau of a shape, or count them.
    Search {
        chain: PathBuf,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        count: bool,
        /// Maximum number of cell assignments.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Gonality with a witness tableau.
    Gonality { chain: PathBuf },
    /// Clifford index with a witness tableau.
    Clifford { chain: PathBuf },
    /// Existence table for 1 <= d <= d_max, 1 <= r <= d.
    BnTable {
        chain: PathBuf,
        #[arg(long)]
        d_max: i64,
    },
    /// Reduce a rank-r witness tableau to a rank-1 witness.
    Reduce {
        chain: PathBuf,
        tableau: PathBuf,
        #[arg(long)]
        trace: bool,
    },
    /// Check Cliff = gon - 2 over a family of torsion profiles.
    Verify {
        #[arg(long)]
        genus_min: usize,
        #[arg(long)]
        genus_max: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        torsion_values: Vec<u32>,
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long, requires = "samples")]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted { .. } | Error::Internal(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map_err(Failure::input)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn load_profile(path: &Path) -> Result<TorsionProfile, Failure> {
    Ok(ChainDocument::parse(&read_input(path)?)?.to_profile()?)
}

fn load_tableau(path: &Path) -> Result<TableauDocument, Failure> {
    Ok(TableauDocument::parse(&read_input(path)?)?)
}

fn emit(value: &impl Serialize) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value).map_err(Failure::input)?;
    writeln!(out).map_err(Failure::input)
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Profile { chain } => {
            emit(&load_profile(&chain)?)?;
            Ok(0)
        }
        Command::Validate { chain, tableau } => {
            let profile = load_profile(&chain)?;
            let doc = load_tableau(&tableau)?;
            if doc.genus != profile.genus() {
                return Err(Error::GenusMismatch {
                    tableau: doc.genus,
                    profile: profile.genus(),
                }
                .into());
            }
            let report = validate_grid(&doc.rows, &profile)?;
            if report.valid {
                emit(&json!({ "valid": true }))?;
                Ok(0)
            } else {
                emit(&report)?;
                Ok(1)
            }
        }
        Command::Search {
            chain,
            rows,
            cols,
            count,
            budget,
        } => {
            let profile = load_profile(&chain)?;
            if rows == 0 || cols == 0 {
                return Err(Failure::input("--rows and --cols must be at least 1"));
            }
            let budget = SearchBudget {
                node_cap: budget,
                count_cap: None,
            };
            if count {
                let n = count_tableaux(rows, cols, &profile, budget)?;
                emit(&json!({ "count": n }))?;
                return Ok(0);
            }
            match find_tableau(rows, cols, &profile, budget)? {
                Some(t) => {
                    emit(&TableauDocument::from(&t))?;
                    Ok(0)
                }
                None => {
                    emit(&serde_json::Value::Null)?;
                    Ok(1)
                }
            }
        }
        Command::Gonality { chain } => {
            let profile = load_profile(&chain)?;
            let gon = gonality(&profile)?;
            emit(&json!({
                "gonality": gon.value,
                "witness": TableauDocument::from(&gon.witness),
            }))?;
            Ok(0)
        }
        Command::Clifford { chain } => {
            let profile = load_profile(&chain)?;
            let c = clifford_index(&profile)?;
            let witness = c
                .witness
                .as_ref()
                .map(|(d, r, t)| json!({ "degree": d, "rank": r, "tableau": TableauDocument::from(t) }));
            let mut doc = json!({
                "clifford": CliffordField::from(c.value),
                "witness": witness,
                "convention_applied": c.convention_applied,
            });
            if c.value.is_empty_set() {
                doc["convention_value"] = json!(c.value.effective());
            }
            emit(&doc)?;
            Ok(0)
        }
        Command::BnTable { chain, d_max } => {
            let profile = load_profile(&chain)?;
            if d_max < 1 {
                return Err(Failure::input("--d-max must be at least 1"));
            }
            let entries = bn_table(&profile, d_max)?;
            emit(&json!({ "genus": profile.genus(), "entries": entries }))?;
            Ok(0)
        }
        Command::Reduce { chain, tableau, trace } => {
            let profile = load_profile(&chain)?;
            let doc = load_tableau(&tableau)?;
            let negative = |message: String| Failure { code: 1, message };
            let t = doc.to_tableau().map_err(|e| negative(e.to_string()))?;
            if t.genus() != profile.genus() {
                return Err(Failure::input(Error::GenusMismatch {
                    tableau: t.genus(),
                    profile: profile.genus(),
                }));
            }
            if t.cols() < 2 || t.rows() < 2 {
                let q = params_of(t.shape(), t.genus()).ok();
                return Err(negative(format!(
                    "{}x{} tableau is outside the regime r >= 1, g - d + r >= 2{}",
                    t.rows(),
                    t.cols(),
                    q.map(|q| format!(" (d = {}, r = {})", q.degree, q.rank))
                        .unwrap_or_default()
                )));
            }
            let (out, steps) = match reduce_to_rank_one(&t, &profile) {
                Ok(ok) => ok,
                Err(e @ Error::Internal(_)) => return Err(e.into()),
                Err(e) => return Err(negative(e.to_string())),
            };
            let mut doc = serde_json::to_value(TableauDocument::from(&out)).map_err(Failure::input)?;
            if trace {
                doc["trace"] = json!(steps.labels());
                doc["steps"] = serde_json::to_value(&steps).map_err(Failure::input)?;
            }
            emit(&doc)?;
            Ok(0)
        }
        Command::Verify {
            genus_min,
            genus_max,
            torsion_values,
            samples,
            seed,
            jobs,
        } => {
            let mode = match (samples, seed) {
                (Some(count), Some(seed)) => SweepMode::Sampled { count, seed },
                _ => SweepMode::Exhaustive,
            };
            let config = SweepConfig {
                genus_min,
                genus_max,
                alphabet: torsion_values,
                mode,
                jobs,
            };
            let report = sweep_clifford_gonality(&config)?;
            let mut out = io::stdout().lock();
            for record in &report.records {
                serde_json::to_writer(&mut out, record).map_err(Failure::input)?;
                writeln!(out).map_err(Failure::input)?;
            }
            serde_json::to_writer(&mut out, &json!({ "summary": report.summary })).map_err(Failure::input)?;
            writeln!(out).map_err(Failure::input)?;
            Ok(if report.summary.failures == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("chaintab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
