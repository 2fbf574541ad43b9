use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use reduction_core::dynamics::Method;
use reduction_core::lax::Side;
use reduction_lab::commands;
use reduction_lab::config::RunConfig;
use reduction_lab::LabError;

#[derive(Parser)]
#[command(
    name = "reduction-lab",
    version,
    about = "Reduced SU(m,n) geodesics and BC_n Sutherland dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the restricted root system of su(m,n).
    Roots {
        m: usize,
        n: usize,
        /// Print JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Run the property suite and write verify.json.
    Verify {
        #[arg(long)]
        config: PathBuf,
    },
    /// Integrate one route and write its trajectory CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Projection)]
        method: MethodArg,
    },
    /// Run both routes on one grid and write compare.json.
    Compare {
        #[arg(long)]
        config: PathBuf,
    },
    /// Lax spectral drift and partner fit; writes lax.json.
    Lax {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
        v: f64,
        #[arg(long, value_enum, default_value_t = SideArg::L)]
        side: SideArg,
    },
    /// Repeat `compare` over values of one numeric config key.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Dotted key, e.g. orbit.y.
        #[arg(long)]
        param: String,
        /// Comma-separated values.
        #[arg(long, value_delimiter = ',', num_args = 0.., allow_negative_numbers = true)]
        values: Vec<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Projection,
    Direct,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    L,
    R,
}

fn run(cli: Cli) -> Result<i32, LabError> {
    match cli.command {
        Command::Roots { m, n, json } => {
            let rows = commands::root_table(m, n)?;
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&rows).expect("rows serialize")
                );
            } else {
                print!("{}", commands::render_root_table(&rows));
            }
            Ok(0)
        }
        Command::Verify { config } => commands::verify(&RunConfig::load(&config)?),
        Command::Simulate { config, method } => {
            let method = match method {
                MethodArg::Projection => Method::Projection,
                MethodArg::Direct => Method::Direct,
            };
            commands::simulate(&RunConfig::load(&config)?, method)
        }
        Command::Compare { config } => commands::compare(&RunConfig::load(&config)?),
        Command::Lax { config, v, side } => {
            let side = match side {
                SideArg::L => Side::Left,
                SideArg::R => Side::Right,
            };
            commands::lax(&RunConfig::load(&config)?, v, side)
        }
        Command::Sweep {
            config,
            param,
            values,
        } => {
            let text = std::fs::read_to_string(&config).map_err(|e| LabError::io(&config, e))?;
            let table: toml::Table = text
                .parse()
                .map_err(|e| LabError::Usage(format!("config is not valid TOML: {e}")))?;
            commands::sweep(&table, &param, &values)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
