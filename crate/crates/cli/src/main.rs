mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::ConfigFlags;
use crate::error::USAGE;

/// Hardy's Z-function: evaluation, zeros, sign measures, mollified means and
/// pair-correlation bounds.
#[derive(Debug, Parser)]
#[command(name = "hardyz", version)]
struct Cli {
    /// Directory for data files and manifests.jsonl.
    #[arg(long, global = true, env = output::OUT_DIR_ENV, default_value = "hardyz-out")]
    out_dir: PathBuf,

    #[command(flatten)]
    cfg: ConfigFlags,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate Z(t) at listed points or on a uniform grid.
    #[command(name = "z-eval")]
    ZEval(commands::ZEvalArgs),
    /// Locate and classify the zeros on (from, to].
    Zeros(commands::ZerosArgs),
    /// Measure of {T < t <= T+H : Z(t) > 0}.
    Measure(commands::MeasureArgs),
    /// Dyadic rows (T, H = T).
    Table1(commands::Table1Args),
    /// Rows (T, H) at a fixed H.
    Table2(commands::Table2Args),
    /// Mollifier coefficients α, β, b.
    Mollifier(commands::MollifierArgs),
    /// Mollified mean values with the sign-split and Cauchy–Schwarz checks.
    Means(commands::MeansArgs),
    /// f(α), the maximized constant G(A*), and the lower-bound curve.
    Paircorr(commands::PaircorrArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE as u8 } else { 0 });
        }
    };
    let result = config::load_config(&cli.cfg).and_then(|cfg| {
        let dir = &cli.out_dir;
        match &cli.command {
            Command::ZEval(a) => commands::z_eval(a, &cfg, dir),
            Command::Zeros(a) => commands::zeros(a, &cfg, dir),
            Command::Measure(a) => commands::measure(a, &cfg, dir),
            Command::Table1(a) => commands::table1(a, &cfg, dir),
            Command::Table2(a) => commands::table2(a, &cfg, dir),
            Command::Mollifier(a) => commands::mollifier(a, &cfg, dir),
            Command::Means(a) => commands::means(a, &cfg, dir),
            Command::Paircorr(a) => commands::paircorr(a, &cfg, dir),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hardyz: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
