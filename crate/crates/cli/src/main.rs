use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pairgeom::exactla::DEFAULT_BUDGET;
use pairgeom_cli::commands::{self, FormKind};
use pairgeom_cli::config::{parse_field, parse_list, parse_pq};
use pairgeom_cli::{CliError, RunConfig};

#[derive(Parser)]
#[command(name = "pairgeom", version, about = "Flag geometries, intrinsic subspaces, Jordan pairs and graded Lie algebras over exact fields")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Field: a prime p or `rat`.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Ambient dimension n.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Pair shape p,q.
    #[arg(long, global = true)]
    pq: Option<String>,
    /// Flag length.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Flag type d1,d2,... (the ambient dimension may be omitted).
    #[arg(long = "type", visible_alias = "flags", global = true)]
    flag_type: Option<String>,
    /// Grassmannian of d-dimensional subspaces.
    #[arg(long, global = true)]
    grass: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest point count any enumeration may reach.
    #[arg(long, global = true, env = "GEOM_BUDGET")]
    budget: Option<u64>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// List subspaces, flags or Lagrangian flags as JSON lines.
    Enumerate {
        /// List Lagrangian flags of the given form kind.
        #[arg(long, num_args = 0..=1, default_missing_value = "symplectic")]
        lagrangian: Option<FormKind>,
    },
    /// Run a verification suite and write a JSON report.
    Verify {
        #[arg(long, required_unless_present = "list")]
        suite: Option<String>,
        /// Print the suite names and what they check.
        #[arg(long)]
        list: bool,
    },
    /// Intrinsic closure of the points in a JSON-lines file.
    Closure {
        #[arg(long)]
        points: PathBuf,
    },
    /// Run an experiment: classification, horizon or squeeze.
    Experiment {
        name: String,
        /// Idempotent rank for the squeeze experiment.
        #[arg(long)]
        rank: Option<usize>,
    },
}

fn config(c: &Common) -> Result<RunConfig, CliError> {
    let cfg = RunConfig {
        field: c.field.as_deref().map(parse_field).transpose()?,
        dim: c.dim,
        pq: c.pq.as_deref().map(parse_pq).transpose()?,
        k: c.k,
        flag_type: c.flag_type.as_deref().map(parse_list).transpose()?,
        grass: c.grass,
        seed: c.seed,
        budget: c.budget.unwrap_or(DEFAULT_BUDGET),
        out: c.out.clone(),
    };
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let cfg = config(&cli.common)?;
    match cli.command {
        Command::Enumerate { lagrangian } => commands::emit(&cfg, &commands::enumerate(&cfg, lagrangian)?),
        Command::Verify { list: true, .. } => commands::emit(&cfg, &commands::list_suites()),
        Command::Verify { suite, .. } => {
            let (text, pass) = commands::verify(&cfg, suite.as_deref().unwrap_or("all"))?;
            commands::emit(&cfg, &text)?;
            if pass {
                Ok(())
            } else {
                Err(CliError::Failed("a hard check failed; see the report".into()))
            }
        }
        Command::Closure { points } => {
            let text = std::fs::read_to_string(&points)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", points.display())))?;
            commands::emit(&cfg, &commands::closure(&cfg, &text)?)
        }
        Command::Experiment { name, rank } => commands::emit(&cfg, &commands::experiment(&cfg, &name, rank)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pairgeom: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
