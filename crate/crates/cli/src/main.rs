use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rbfkit_cli::{Command, InterpKernel, ModeSelection, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "rbfkit",
    about = "Meshless RBF studies: boundary-knot benchmark, centrosymmetric preconditioning, interpolation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Half,
    Sqrt2,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Mq,
    Tps,
    Pwtps,
    Wavelet,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Solve the Burgers-like equation on the ellipse boundary and report
    /// interior errors against the exact solution -2/x
    Burger {
        /// Number of boundary knots
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u32).range(1..))]
        knots: u32,
        /// Kernel scaling of the Bessel argument
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Centrosymmetric structure, preconditioning, and split-solve demo on a
    /// symmetric 1D grid
    Centro {
        /// Number of grid knots
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(2..))]
        knots: u32,
        /// Seed for the random consistency check
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interpolate sin(πx) on [0, 1] with a chosen kernel over increasing
    /// node counts
    Interp {
        #[arg(long, value_enum, default_value_t = KernelArg::Mq)]
        kernel: KernelArg,
        /// Largest node count in the sweep
        #[arg(long = "max-knots", default_value_t = 17, value_parser = clap::value_parser!(u32).range(2..))]
        max_knots: u32,
        #[arg(long, value_enum, default_value_t = FormatArg::Md)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn to_config(cli: CliCommand) -> RunConfig {
    let format = |f: FormatArg| match f {
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Md => OutputFormat::Markdown,
    };
    match cli {
        CliCommand::Burger {
            knots,
            mode,
            format: f,
            out,
        } => RunConfig {
            command: Command::Burger {
                mode: match mode {
                    ModeArg::Half => ModeSelection::Half,
                    ModeArg::Sqrt2 => ModeSelection::Sqrt2,
                    ModeArg::Both => ModeSelection::Both,
                },
            },
            n_knots: knots as usize,
            output_format: format(f),
            output_path: out,
        },
        CliCommand::Centro {
            knots,
            seed,
            format: f,
            out,
        } => RunConfig {
            command: Command::Centro { seed },
            n_knots: knots as usize,
            output_format: format(f),
            output_path: out,
        },
        CliCommand::Interp {
            kernel,
            max_knots,
            format: f,
            out,
        } => RunConfig {
            command: Command::Interp {
                kernel: match kernel {
                    KernelArg::Mq => InterpKernel::Mq,
                    KernelArg::Tps => InterpKernel::Tps,
                    KernelArg::Pwtps => InterpKernel::Pwtps,
                    KernelArg::Wavelet => InterpKernel::Wavelet,
                },
            },
            n_knots: max_knots as usize,
            output_format: format(f),
            output_path: out,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = to_config(cli.command);
    match rbfkit_cli::run(&cfg) {
        Ok(report) => {
            if let Some(path) = &cfg.output_path {
                if let Err(e) = std::fs::write(path, &report) {
                    eprintln!("rbfkit: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{report}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("rbfkit: {e}");
            ExitCode::from(1)
        }
    }
}
