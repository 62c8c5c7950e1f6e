mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "varchenko",
    version,
    about = "Varchenko determinants and Aguiar-Mahajan systems of hyperplane arrangements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Bareiss,
    Eval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckGroup {
    Witt,
    Distance,
    Prd,
    All,
}

#[derive(Args, Debug, Clone)]
pub struct Region {
    /// Apartment JSON: `{"constraints": {"1": "+"}}`.
    #[arg(long, conflicts_with = "flat")]
    pub apartment: Option<PathBuf>,
    /// Restrict to a flat, given as 1-based hyperplane indices: "1,2".
    #[arg(long)]
    pub flat: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Sampling {
    /// q-assignment JSON: `{"q": [["1/2", "1/3"], ...]}`. Drawn from --seed when absent.
    #[arg(long)]
    pub q: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List faces with ranks.
    Faces { input: PathBuf },
    /// Check the face set axioms.
    Validate { input: PathBuf },
    /// Print the Varchenko matrix, its determinant and the closed-form factors.
    Varchenko {
        input: PathBuf,
        #[command(flatten)]
        region: Region,
    },
    /// Determinant, verified against the closed-form product.
    Det {
        input: PathBuf,
        #[command(flatten)]
        region: Region,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Weights and multiplicities of the non-chamber faces.
    Weights {
        input: PathBuf,
        #[command(flatten)]
        region: Region,
    },
    /// The assembly matrix and its determinant.
    Assembly { input: PathBuf },
    /// Solution-space dimension of the linear system.
    AmDim {
        input: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Solve the linear system at a q-assignment.
    AmSolve {
        input: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
        /// Value of every minimal face.
        #[arg(long, default_value = "1")]
        x0: String,
    },
    /// Run identity checks.
    Check {
        #[arg(value_enum)]
        group: CheckGroup,
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Faces { input } => commands::faces(input),
        Command::Validate { input } => commands::validate(input),
        Command::Varchenko { input, region } => commands::matrix(input, region),
        Command::Det {
            input,
            region,
            method,
            points,
            seed,
        } => commands::det(input, region, *method, *points, *seed),
        Command::Weights { input, region } => commands::weights(input, region),
        Command::Assembly { input } => commands::assembly(input),
        Command::AmDim { input, sampling } => commands::am_dim(input, sampling),
        Command::AmSolve {
            input,
            sampling,
            x0,
        } => commands::am_solve(input, sampling, x0),
        Command::Check {
            group,
            input,
            seed,
            trials,
            points,
            method,
        } => commands::check(input, *group, *seed, *trials, *points, *method),
    };
    let out = match result {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = match cli.format {
        Format::Text => out.text,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("serializable");
            s.push('\n');
            s
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if out.violations {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
