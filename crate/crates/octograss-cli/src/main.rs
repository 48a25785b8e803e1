//! Batch verification harness for the octograss library.
//!
//! `octograss run` executes the requested suites and prints one line per
//! check; `octograss export` dumps the audit tables as CSV. Exit codes:
//! 0 all checks pass, 1 at least one check failed, 2 usage or
//! configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use octograss::verify::{self, export, Config};

#[derive(Parser)]
#[command(name = "octograss", version, about = "Verification suites for octonionic cross-product sections of Grassmannian sphere bundles")]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Run verification suites and print a report table.
    Run {
        /// Suite to run (repeatable). One of: octonion, lemmas-sigma3,
        /// lemmas-J, laplacians, curvature, criticality,
        /// parallel-obstruction, energy, diagram-phi, extensions, all.
        #[arg(long, default_value = "all")]
        suite: Vec<String>,
        /// Random seed for every sampled check.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Monte Carlo sample count.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Base finite-difference step.
        #[arg(long = "fd-step", default_value_t = 1e-3)]
        fd_step: f64,
        /// Tolerance for closed-form checks; sampled finite-difference
        /// checks use 100 times this value.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Write the full report as JSON (timing fields zeroed so reruns
        /// are byte-identical).
        #[arg(long)]
        json: Option<PathBuf>,
        /// Write the checks as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Export an audit table as CSV.
    Export {
        /// One of: epsilon-table, tangent-basis, lemma-values.
        kind: String,
        /// Subspace dimension for tangent-basis.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Ambient dimension for tangent-basis.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inspect a section by name: sigma2, sigma3, J, hopf, acs6.
    Inspect {
        name: String,
        /// Seed for the random evaluation point.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Commands::Run {
            suite,
            seed,
            samples,
            fd_step,
            tol,
            json,
            csv,
        } => {
            if samples == 0 {
                return Err(Box::new(octograss::Error::Config(
                    "--samples must be at least 1".into(),
                )));
            }
            if !(fd_step.is_finite() && fd_step > 0.0) || !(tol.is_finite() && tol > 0.0) {
                return Err(Box::new(octograss::Error::Config(
                    "--fd-step and --tol must be positive".into(),
                )));
            }
            let cfg = Config {
                fd_step,
                samples,
                seed,
                suites: suite,
                tol,
                ..Config::default()
            };
            let report = verify::run_configured(&cfg)?;
            print!("{}", report.render_table());
            if let Some(path) = json {
                std::fs::write(&path, report.to_deterministic_json())?;
                eprintln!("wrote JSON report to {}", path.display());
            }
            if let Some(path) = csv {
                std::fs::write(&path, report.to_csv())?;
                eprintln!("wrote CSV report to {}", path.display());
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Commands::Export { kind, k, n, out } => {
            let cfg = Config::default();
            let table = export::export_table(&kind, k, n, &cfg)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, table)?;
                    eprintln!("wrote {kind} to {}", path.display());
                }
                None => print!("{table}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Commands::Inspect { name, seed } => {
            match octograss::sections::by_name(&name)? {
                octograss::sections::AnySection::Normal(sec) => inspect(&sec, seed)?,
                octograss::sections::AnySection::Skew(sec) => inspect(&sec, seed)?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn inspect<F: octograss::bundles::Fiber + std::fmt::Debug>(
    sec: &octograss::sections::Section<F>,
    seed: u64,
) -> Result<(), Box<dyn std::error::Error>> {
    use octograss::diffops::{criticality_form_basis, rough_laplacian, DiffCfg};
    use octograss::energy::bending_density;
    use octograss::grassmann::random_point_seeded;

    let cfg = DiffCfg::default();
    println!(
        "section {} : G({},{}) (base dimension {})",
        sec.name(),
        sec.k(),
        sec.n(),
        sec.dim_base()
    );
    for (label, p) in [
        ("canonical base point", sec.base_point()),
        ("random point", random_point_seeded(sec.n(), sec.k(), seed)),
    ] {
        let lap = rough_laplacian(sec, &p, &cfg)?;
        let bending = bending_density(sec, &p, &cfg)?;
        let crit = criticality_form_basis(sec, &p, &cfg)?;
        let crit_max = crit.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        println!(
            "  at {label}:\n    Laplacian eigen-estimate {:+.9} (parallelism residual {:.2e})\n    bending density {:.9}\n    max |criticality form on basis| {:.2e}",
            lap.eigen_estimate, lap.residual, bending, crit_max
        );
    }
    Ok(())
}
