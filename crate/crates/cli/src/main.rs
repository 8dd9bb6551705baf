use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use moment_cli::{run, Format, Input, JobSpec, Params};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

/// Moment problem analyses on a moment file or a named generator.
#[derive(Parser, Debug)]
#[command(name = "moments", version)]
struct Cli {
    /// analyze, jacobi, quadrature, pade, nevanlinna, transform or classify
    command: String,
    /// Moment file: {"kind": ..., "moments": ["1", "1/2", "0.5"], "label": ...}
    #[arg(long, conflicts_with_all = ["generator", "terms"])]
    file: Option<PathBuf>,
    /// hermite, laguerre or lognormal
    #[arg(long)]
    generator: Option<String>,
    /// Largest moment index K to generate; defaults to 2 * (depth or nmax or 12) + 4
    #[arg(long, requires = "generator")]
    terms: Option<usize>,
    /// Working precision in bits for float arithmetic
    #[arg(long, default_value_t = 256)]
    precision: u32,
    #[arg(long)]
    depth: Option<String>,
    /// Evaluation point for pade
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Largest N for pade
    #[arg(long)]
    nmax: Option<String>,
    /// Comma-separated shapes l = n - m + 1 for pade
    #[arg(long, allow_hyphen_values = true)]
    shapes: Option<String>,
    /// F or K section
    #[arg(long)]
    variant: Option<String>,
    /// Point RE,IM in the upper half plane for nevanlinna (default 0,1)
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// transform operation: shift, index-shift or even
    #[arg(long)]
    op: Option<String>,
    /// Translation for transform --op shift
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Index for transform --op index-shift
    #[arg(long)]
    ell: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let size_hint = [&cli.depth, &cli.nmax]
        .into_iter()
        .flatten()
        .find_map(|s| s.trim().parse::<usize>().ok())
        .unwrap_or(12);
    let input = match (cli.file, cli.generator, cli.terms) {
        (Some(path), None, None) => Input::File(path),
        (None, Some(name), terms) => Input::Generator {
            name,
            terms: terms.unwrap_or(2 * size_hint + 4),
        },
        _ => {
            eprintln!("error: give either --file PATH or --generator NAME --terms K");
            return ExitCode::from(2);
        }
    };
    let mut params = Params::new();
    let flags = [
        ("depth", cli.depth),
        ("x", cli.x),
        ("nmax", cli.nmax),
        ("shapes", cli.shapes),
        ("variant", cli.variant),
        ("z", cli.z),
        ("op", cli.op),
        ("c", cli.c),
        ("ell", cli.ell),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            params.insert(key, v);
        }
    }
    let job = JobSpec {
        command: cli.command,
        input,
        params,
        precision: cli.precision,
        format: match cli.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
    };
    let outcome = run(&job);
    if let Some(msg) = &outcome.error {
        eprintln!("error: {msg}");
        print!("{}", outcome.body);
    } else if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &outcome.body) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    } else {
        print!("{}", outcome.body);
    }
    ExitCode::from(outcome.exit_code as u8)
}
