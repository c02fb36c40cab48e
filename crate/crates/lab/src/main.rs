//! `pgreedy` — experiment driver for the greedy-basis laboratory.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use pgreedy_core::constants::ConstantKind;
use pgreedy_core::spaces::AxiomReport;
use pgreedy_core::theorems::{InequalityRecord, Status};

use pgreedy_lab::config::RunConfig;
use pgreedy_lab::error::LabError;
use pgreedy_lab::report::{RenormReport, Report};
use pgreedy_lab::run::{
    axiom_phase, constants_phase, renorm_phase, run_full, theorems_phase, EstimatesArtifact,
    SpaceEstimates,
};

#[derive(Parser)]
#[command(name = "pgreedy", version, about = "Greedy-basis constants laboratory")]
struct Cli {
    /// Path to the JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override the configured RNG seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Override the configured worker count.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Directory for artifacts (report.json, estimates.json, CSV exports).
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Override the dimension safety cap.
    #[arg(long = "max-dim", global = true)]
    max_dim: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute all configured phases and write report.json.
    Run,
    /// Space-level checks.
    Spaces {
        #[command(subcommand)]
        cmd: SpacesCmd,
    },
    /// Constant estimation.
    Constants {
        #[command(subcommand)]
        cmd: ConstantsCmd,
    },
    /// Inequality-ledger evaluation.
    Theorems {
        #[command(subcommand)]
        cmd: TheoremsCmd,
    },
    /// Renorming verification.
    Renorm {
        #[command(subcommand)]
        cmd: RenormCmd,
    },
    /// Report conversion.
    Report {
        #[command(subcommand)]
        cmd: ReportCmd,
    },
}

#[derive(Subcommand)]
enum SpacesCmd {
    /// Sampled quasi-norm axiom checks; writes axioms.json.
    Validate,
}

#[derive(Subcommand)]
enum ConstantsCmd {
    /// Exhaustive lower-bound estimation; writes estimates.json.
    Estimate {
        /// Comma-separated constant symbols (e.g. "C_pg,D"); default all.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Subcommand)]
enum TheoremsCmd {
    /// Evaluate every inequality chain; requires estimates.json.
    Check,
}

#[derive(Subcommand)]
enum RenormCmd {
    /// Equivalence checks and the renormed estimate; writes renorm.json.
    Verify,
}

#[derive(Subcommand)]
enum ReportCmd {
    /// Convert report.json to CSV tables.
    Export {
        #[arg(long, value_enum, default_value_t = ExportFormat::Csv)]
        format: ExportFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Csv,
}

#[derive(Serialize, Deserialize)]
struct AxiomsArtifact {
    config_hash: String,
    spaces: Vec<NamedAxioms>,
}

#[derive(Serialize, Deserialize)]
struct NamedAxioms {
    name: String,
    axioms: AxiomReport,
}

#[derive(Serialize, Deserialize)]
struct LedgerArtifact {
    config_hash: String,
    spaces: Vec<NamedLedger>,
}

#[derive(Serialize, Deserialize)]
struct NamedLedger {
    name: String,
    ledger: Vec<InequalityRecord>,
}

#[derive(Serialize, Deserialize)]
struct RenormArtifact {
    config_hash: String,
    spaces: Vec<NamedRenorm>,
}

#[derive(Serialize, Deserialize)]
struct NamedRenorm {
    name: String,
    renorm: RenormReport,
}

fn main() {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("{}", e.diagnostic());
            std::process::exit(e.exit_code());
        }
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, LabError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| LabError::Usage("--config is required for this command".into()))?;
    let mut config = RunConfig::load(path)?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(workers) = cli.workers {
        config.workers = workers;
    }
    if let Some(cap) = cli.max_dim {
        config.max_dimension = cap;
    }
    config.validate()?;
    Ok(config)
}

fn save_json<T: Serialize>(value: &T, path: &Path) -> Result<(), LabError> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| LabError::Compute(format!("serialization failed: {e}")))?;
    bytes.push(b'\n');
    std::fs::write(path, bytes)?;
    Ok(())
}

fn parse_only(only: &str) -> Result<Vec<ConstantKind>, LabError> {
    only.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            ConstantKind::parse(s)
                .ok_or_else(|| LabError::Usage(format!("unknown constant symbol '{s}'")))
        })
        .collect()
}

fn execute(cli: Cli) -> Result<i32, LabError> {
    std::fs::create_dir_all(&cli.out)?;
    match &cli.command {
        Command::Run => {
            let config = load_config(&cli)?;
            let report = run_full(&config)?;
            let path = cli.out.join("report.json");
            report.save(&path)?;
            let passed = report.passed();
            println!("report written to {} (pass={passed})", path.display());
            if passed {
                Ok(0)
            } else {
                eprintln!("error[compute]: report contains FAIL records or axiom violations");
                Ok(1)
            }
        }
        Command::Spaces { cmd: SpacesCmd::Validate } => {
            let config = load_config(&cli)?;
            let mut artifact = AxiomsArtifact {
                config_hash: config.hash(),
                spaces: Vec::new(),
            };
            let mut ok = true;
            for sc in &config.spaces {
                let axioms = axiom_phase(&config, sc)?;
                ok &= axioms.passed();
                println!(
                    "space {}: axioms {}",
                    sc.name,
                    if axioms.passed() { "PASS" } else { "FAIL" }
                );
                artifact.spaces.push(NamedAxioms { name: sc.name.clone(), axioms });
            }
            save_json(&artifact, &cli.out.join("axioms.json"))?;
            if ok {
                Ok(0)
            } else {
                eprintln!("error[compute]: quasi-norm axiom violation detected");
                Ok(1)
            }
        }
        Command::Constants { cmd: ConstantsCmd::Estimate { only } } => {
            let config = load_config(&cli)?;
            let filter = only.as_deref().map(parse_only).transpose()?;
            let mut artifact = EstimatesArtifact {
                config_hash: config.hash(),
                spaces: Vec::new(),
            };
            for sc in &config.spaces {
                let rows = constants_phase(&config, sc, filter.as_deref())?;
                for row in &rows {
                    println!("space {}: {} = {}", sc.name, row.symbol, row.estimate.value);
                }
                artifact
                    .spaces
                    .push(SpaceEstimates { name: sc.name.clone(), constants: rows });
            }
            save_json(&artifact, &cli.out.join("estimates.json"))?;
            Ok(0)
        }
        Command::Theorems { cmd: TheoremsCmd::Check } => {
            let config = load_config(&cli)?;
            let est_path = cli.out.join("estimates.json");
            let bytes = std::fs::read(&est_path)
                .map_err(|_| LabError::Dependency(est_path.display().to_string()))?;
            let estimates: EstimatesArtifact = serde_json::from_slice(&bytes).map_err(|e| {
                LabError::Usage(format!("invalid estimates {}: {e}", est_path.display()))
            })?;
            if estimates.config_hash != config.hash() {
                return Err(LabError::Usage(format!(
                    "estimates.json was computed from a different config (hash {} != {})",
                    estimates.config_hash,
                    config.hash()
                )));
            }
            let mut artifact = LedgerArtifact {
                config_hash: config.hash(),
                spaces: Vec::new(),
            };
            let mut failed = 0usize;
            for sc in &config.spaces {
                let rows = estimates
                    .spaces
                    .iter()
                    .find(|s| s.name == sc.name)
                    .map(|s| s.constants.as_slice())
                    .unwrap_or(&[]);
                let ledger = theorems_phase(&config, sc, rows)?;
                for r in &ledger {
                    if r.status == Status::Fail {
                        failed += 1;
                        println!("space {}: FAIL {} (lhs={} rhs={})", sc.name, r.id, r.lhs, r.rhs);
                    }
                }
                artifact.spaces.push(NamedLedger { name: sc.name.clone(), ledger });
            }
            save_json(&artifact, &cli.out.join("ledger.json"))?;
            println!("ledger written ({failed} FAIL records)");
            if failed == 0 {
                Ok(0)
            } else {
                eprintln!("error[compute]: {failed} inequality records failed");
                Ok(1)
            }
        }
        Command::Renorm { cmd: RenormCmd::Verify } => {
            let config = load_config(&cli)?;
            let mut artifact = RenormArtifact {
                config_hash: config.hash(),
                spaces: Vec::new(),
            };
            let mut ok = true;
            for sc in &config.spaces {
                let renorm = renorm_phase(&config, sc, &[])?;
                ok &= renorm.equivalence.passed();
                println!(
                    "space {}: renormed C_pg = {} (plain {}), equivalence {}",
                    sc.name,
                    renorm.renormed_cpg.value,
                    renorm.plain_cpg,
                    if renorm.equivalence.passed() { "PASS" } else { "FAIL" }
                );
                artifact.spaces.push(NamedRenorm { name: sc.name.clone(), renorm });
            }
            save_json(&artifact, &cli.out.join("renorm.json"))?;
            if ok {
                Ok(0)
            } else {
                eprintln!("error[compute]: renorming equivalence check failed");
                Ok(1)
            }
        }
        Command::Report { cmd: ReportCmd::Export { format: ExportFormat::Csv } } => {
            let report = Report::load(&cli.out.join("report.json"))?;
            let written = report.export_csv(&cli.out)?;
            for path in written {
                println!("wrote {}", path.display());
            }
            Ok(0)
        }
    }
}
