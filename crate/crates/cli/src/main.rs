use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use majorana_cli::{
    cmd_evolve, cmd_rep, cmd_verify, output_dir, CliError, Overrides, RunConfig, SuiteParams,
};

#[derive(Parser)]
#[command(
    name = "majorana",
    version,
    about = "Free Majorana particle: invariant suites and evolution runs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an invariant suite: algebra, axial, solver, poincare or all.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Supplies the base mass for the dynamics checks.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Multiplies every tolerance (0 makes any nonzero residual fail).
        #[arg(long, default_value_t = 1.0)]
        tolerance_scale: f64,
    },
    /// Evolve one initial datum with both solvers and write snapshots.
    Evolve {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        mass: Option<f64>,
        #[arg(long)]
        majorana_mass: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        l: Option<f64>,
        #[arg(long)]
        dims: Option<usize>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        t_final: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Poincaré representation checks: massive, massless or both.
    Rep {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load(config: Option<&PathBuf>) -> Result<RunConfig, CliError> {
    config.map_or_else(|| Ok(RunConfig::default()), |p| RunConfig::load(p))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify {
            suite,
            seed,
            config,
            out,
            tolerance_scale,
        } => {
            let cfg = load(config.as_ref())?;
            let params = SuiteParams {
                seed,
                mass: cfg.mass,
            };
            let report = cmd_verify(suite.parse()?, &params, tolerance_scale, &output_dir(out))?;
            print!("{}", report.to_table());
            Ok(report.passed)
        }
        Command::Rep { case, seed, out } => {
            let params = SuiteParams {
                seed,
                mass: RunConfig::default().mass,
            };
            let report = cmd_rep(case.parse()?, &params, &output_dir(out))?;
            print!("{}", report.to_table());
            Ok(report.passed)
        }
        Command::Evolve {
            config,
            mass,
            majorana_mass,
            seed,
            n,
            l,
            dims,
            dt,
            t_final,
            out,
        } => {
            let mut cfg = load(config.as_ref())?;
            cfg.apply(&Overrides {
                mass,
                majorana_mass,
                seed,
                output_dir: out,
                n,
                l,
                dims,
                dt,
                t_final,
            });
            let m = cmd_evolve(&cfg)?;
            println!(
                "{} steps of dt = {:e} to t = {}; max L2 discrepancy {:.3e}, max norm drift {:.3e}, both branches populated: {}",
                m.steps,
                m.dt,
                m.t_final,
                m.drift.max_l2_discrepancy,
                m.drift.max_norm_drift_rk4,
                m.pairing.both_branches_populated
            );
            println!(
                "wrote {} files to {}",
                m.files.len() + 1,
                cfg.resolved_output_dir().display()
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
