use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bohr_hardy::cli::commands::{self, MulnormArgs, NormArgs, NormKind, ProductArgs, RecoverArgs};
use bohr_hardy::cli::{RunReport, VerifyOptions};

#[derive(Parser)]
#[command(
    name = "bohr-hardy",
    version,
    about = "Power series, Dirichlet series and Hardy-space multipliers at finite truncation"
)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormChoice {
    H2,
    Hp,
    Hinf,
}

#[derive(Subcommand)]
enum Command {
    /// Bohr lift: power series <-> Dirichlet series.
    Transform {
        input: PathBuf,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Apply an operator series to a vector series.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, short)]
        output: PathBuf,
        #[arg(long)]
        nvars: Option<usize>,
        #[arg(long)]
        degree: Option<u64>,
        #[arg(long)]
        max_frequency: Option<u64>,
    },
    /// H2, Hp or sup norm of a series.
    Norm {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "h2")]
        kind: NormChoice,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long)]
        nvars: Option<usize>,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
    },
    /// Compression-norm schedule of an operator symbol for degrees 0..=DEGREE.
    Mulnorm {
        input: PathBuf,
        #[arg(long, default_value_t = 10)]
        degree: u64,
        #[arg(long)]
        nvars: Option<usize>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Recover a Dirichlet coefficient from the vertical-line mean.
    Recover {
        input: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2.0)]
        sigma: f64,
        #[arg(long = "R", default_value_t = 1000.0)]
        half_width: f64,
        #[arg(long)]
        grid_points: Option<usize>,
    },
    /// Run a verification suite (bohr, parseval, cole-gamelin, dilation, toeplitz, diagonal, dirichlet, recover).
    Verify {
        suite: String,
        #[arg(long)]
        nvars: Option<usize>,
        #[arg(long)]
        degree: Option<u64>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Distance table for diagonal unimodular operators.
    ExampleSot {
        #[arg(long, default_value_t = 16)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 20240521)]
        seed: u64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

fn run(command: Command) -> bohr_hardy::Result<RunReport> {
    match command {
        Command::Transform { input, output } => commands::transform(&input, &output),
        Command::Product {
            left,
            right,
            output,
            nvars,
            degree,
            max_frequency,
        } => commands::product(
            &left,
            &right,
            &output,
            &ProductArgs {
                nvars,
                degree,
                max_frequency,
            },
        ),
        Command::Norm {
            input,
            kind,
            p,
            nvars,
            grid,
            radius,
        } => {
            let kind = match kind {
                NormChoice::H2 => NormKind::H2,
                NormChoice::Hp => NormKind::Hp,
                NormChoice::Hinf => NormKind::Hinf,
            };
            commands::norm(
                &input,
                &NormArgs {
                    kind,
                    p,
                    nvars,
                    grid,
                    radius,
                },
            )
        }
        Command::Mulnorm {
            input,
            degree,
            nvars,
            tol,
        } => commands::mulnorm(
            &input,
            &MulnormArgs {
                degrees: (0..=degree).collect(),
                nvars,
                tol,
            },
        ),
        Command::Recover {
            input,
            n,
            sigma,
            half_width,
            grid_points,
        } => commands::recover(
            &input,
            &RecoverArgs {
                n,
                sigma,
                half_width,
                grid_points,
            },
        ),
        Command::Verify {
            suite,
            nvars,
            degree,
            dim,
            p,
            grid,
            radius,
            seed,
            tol,
        } => commands::verify(
            &suite,
            &VerifyOptions {
                nvars,
                degree,
                dim,
                p,
                grid,
                radius,
                seed,
                tol,
            },
        ),
        Command::ExampleSot {
            dim,
            samples,
            seed,
            tol,
        } => commands::example_sot(dim, samples, seed, tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = report.write(path) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            eprint!("{}", report.summary());
        }
        None => println!("{}", report.to_json()),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
