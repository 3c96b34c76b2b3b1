use std::path::PathBuf;
use std::process::ExitCode;

use boroczky::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

mod render;
mod report;

/// Exact reports and figures for Böröczky line configurations and the
/// Fermat-cubic 6-torsion configuration.
#[derive(Parser, Debug)]
#[command(name = "boroczky", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; `render` defaults to svg, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (accepted for forward compatibility; runs are sequential).
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    threads: u32,
    /// Allow configurations over large cyclotomic fields.
    #[arg(long, global = true)]
    big: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lines, intersection points and triple-point count of B_n.
    Build {
        #[arg(long)]
        n: usize,
    },
    /// D6 orbit decomposition of the triple points (needs 3 | n).
    Orbits {
        #[arg(long)]
        n: usize,
    },
    /// Least degree of a form vanishing to order m at every triple point.
    Alpha {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Minimal generator degrees of the triple-point ideal.
    Mingens {
        #[arg(long)]
        n: usize,
        #[arg(long = "dmax")]
        d_max: usize,
    },
    /// Tests the product of the lines against the symbolic cube and the square.
    Witness {
        #[arg(long)]
        n: usize,
    },
    /// Compares (I^(3))_d with (I^2)_d degree by degree.
    Contain {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        upto: usize,
    },
    /// The 6-torsion configuration on x^3 + y^3 + z^3 = 0.
    Elliptic {
        /// Report path; overrides --out.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Compare the torsion table, incidence statistics and S3 representatives with the reference values.
        #[arg(long)]
        check_table: bool,
        /// Also compute dim (I^(3))_18 (slow).
        #[arg(long)]
        dimension: bool,
    },
    /// SVG figure of B_n.
    Render {
        #[arg(long)]
        n: usize,
        /// Half-width of the square viewport.
        #[arg(long, default_value_t = render::DEFAULT_RADIUS)]
        radius: f64,
    },
    /// Build, count and orbit checks for a range of n.
    Sweep {
        #[arg(long = "n-from")]
        n_from: usize,
        #[arg(long = "n-to")]
        n_to: usize,
    },
}

/// A failed run, tagged with the module that raised it.
#[derive(Debug)]
pub struct Failure {
    module: &'static str,
    error: Error,
}

impl Failure {
    pub fn new(module: &'static str, error: Error) -> Self {
        Failure { module, error }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Failure::new("cli", Error::InvalidInput(msg.into()))
    }

    fn exit_code(&self) -> u8 {
        match self.error {
            Error::InvalidInput(_) | Error::Unsupported(_) | Error::Parse(_) => 2,
            Error::ReferenceMismatch(_) => 4,
            _ => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "usage",
            4 => "reference_mismatch",
            _ => "computation",
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

pub trait Tag<T> {
    fn tag(self, module: &'static str) -> Outcome<T>;
}

impl<T> Tag<T> for boroczky::Result<T> {
    fn tag(self, module: &'static str) -> Outcome<T> {
        self.map_err(|e| Failure::new(module, e))
    }
}

/// Largest n handled without `--big`; ideal computations stop one step earlier.
const PLAIN_MAX_N: usize = 24;

fn check_n(n: usize, g: &Global, ideal: bool) -> Outcome<()> {
    if n < 3 {
        return Err(Failure::usage(format!("n must be at least 3, got {n}")));
    }
    let limit = if ideal { PLAIN_MAX_N - 1 } else { PLAIN_MAX_N };
    if n > limit && !g.big {
        return Err(Failure::usage(format!(
            "n = {n} needs a large field; pass --big to try it"
        )));
    }
    Ok(())
}

/// The report body and the outcome of any reference checks it carries.
pub struct Artifact {
    body: String,
    mismatch: Option<String>,
}

impl Artifact {
    pub fn json(v: serde_json::Value) -> Self {
        Artifact {
            body: serde_json::to_string_pretty(&v).expect("serializable") + "\n",
            mismatch: None,
        }
    }

    pub fn with_mismatch(mut self, m: Option<String>) -> Self {
        self.mismatch = m;
        self
    }
}

fn run(cli: &Cli) -> Outcome<Artifact> {
    let g = &cli.global;
    let is_render = matches!(cli.command, Command::Render { .. });
    let format = g
        .format
        .unwrap_or(if is_render { Format::Svg } else { Format::Json });
    if format == Format::Svg && !is_render {
        return Err(Failure::usage("only `render` produces svg"));
    }
    match &cli.command {
        Command::Build { n } => {
            check_n(*n, g, false)?;
            report::build(*n)
        }
        Command::Orbits { n } => {
            check_n(*n, g, false)?;
            if n % 3 != 0 {
                return Err(Failure::usage(format!("orbits need 3 | n, got {n}")));
            }
            report::orbits(*n)
        }
        Command::Alpha { n, m } => {
            check_n(*n, g, true)?;
            if *m == 0 {
                return Err(Failure::usage("m must be positive"));
            }
            report::alpha(*n, *m)
        }
        Command::Mingens { n, d_max } => {
            check_n(*n, g, true)?;
            report::mingens(*n, *d_max)
        }
        Command::Witness { n } => {
            check_n(*n, g, true)?;
            report::witness(*n)
        }
        Command::Contain { n, upto } => {
            check_n(*n, g, true)?;
            report::contain(*n, *upto)
        }
        Command::Elliptic {
            check_table,
            dimension,
            ..
        } => report::elliptic(*check_table, *dimension),
        Command::Render { n, radius } => {
            check_n(*n, g, false)?;
            if !(radius.is_finite() && *radius > 0.0) {
                return Err(Failure::usage("radius must be a positive number"));
            }
            let scene = render::scene(*n, *radius)?;
            Ok(match format {
                Format::Svg => Artifact {
                    body: scene.to_svg(),
                    mismatch: None,
                },
                Format::Json => Artifact::json(scene.to_json()),
            })
        }
        Command::Sweep { n_from, n_to } => {
            if n_from > n_to {
                return Err(Failure::usage("--n-from must not exceed --n-to"));
            }
            check_n(*n_from, g, false)?;
            check_n(*n_to, g, false)?;
            report::sweep(*n_from, *n_to)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = match &cli.command {
        Command::Elliptic {
            report: Some(p), ..
        } => Some(p.clone()),
        _ => cli.global.out.clone(),
    };
    let result = run(&cli).and_then(|a| {
        match &out {
            Some(p) => std::fs::write(p, &a.body).map_err(|e| {
                Failure::new(
                    "cli",
                    Error::InvalidInput(format!("cannot write {}: {e}", p.display())),
                )
            })?,
            None => print!("{}", a.body),
        }
        match a.mismatch {
            Some(m) => Err(Failure::new("cli", Error::ReferenceMismatch(m))),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let record = json!({
                "error": { "kind": f.kind(), "module": f.module, "message": f.error.to_string() }
            });
            eprintln!("{record}");
            ExitCode::from(f.exit_code())
        }
    }
}
