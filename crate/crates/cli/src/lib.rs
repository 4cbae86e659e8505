//! Report generation behind the `cpstokes` binary.

pub mod doc;
pub mod refs;
pub mod sections;

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use cpstokes_core::group::Variant;
use cpstokes_core::Scalar;

pub use doc::{Document, Format};
use sections::SeriesPoint;

#[derive(Debug, Parser)]
#[command(
    name = "cpstokes",
    version,
    about = "Monodromy, Stokes and Euler-form matrices for projective space"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

fn rank(s: &str) -> Result<usize, String> {
    let k: usize = s.parse().map_err(|_| format!("`{s}` is not a rank"))?;
    if k < 2 {
        return Err(format!("rank must be at least 2, got {k}"));
    }
    Ok(k)
}

fn tolerance(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if !(t.is_finite() && t > 0.0 && t < 1.0) {
        return Err(format!("tolerance must lie in (0, 1), got {s}"));
    }
    Ok(t)
}

fn series_point(s: &str) -> Result<SeriesPoint, String> {
    if let Ok(x) = Scalar::from_str(s) {
        return Ok(SeriesPoint::Exact(x));
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(SeriesPoint::Float(x)),
        _ => Err(format!("`{s}` is neither a rational nor a decimal")),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Levelt matrices h0, h_inf, h1 and the Kummer generators.
    Generators {
        #[arg(long, value_parser = rank)]
        k: usize,
        /// Use the pair with det(t - h0) = t^k + 1.
        #[arg(long)]
        twisted: bool,
    },
    /// Quadratic invariant of the monodromy group.
    Invariant {
        #[arg(long, value_parser = rank)]
        k: usize,
        #[arg(long)]
        twisted: bool,
    },
    /// Stokes matrix with Gram matrix, reflections and Coxeter element.
    Stokes {
        #[arg(long, value_parser = rank)]
        k: usize,
        /// Emit S^T (upper triangular) as the main matrix.
        #[arg(long)]
        transpose: bool,
    },
    /// Euler form matrix and the braid identity.
    Chi {
        #[arg(long, value_parser = rank)]
        k: usize,
    },
    /// Full identity suite over a range of ranks; exit status 1 if anything fails.
    Verify {
        #[arg(long, value_parser = rank, default_value = "2")]
        k_min: usize,
        #[arg(long, value_parser = rank, default_value = "10")]
        k_max: usize,
    },
    /// Power series coefficients of the holomorphic solution.
    Series {
        #[arg(long, value_parser = rank)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        terms: usize,
        /// Evaluate the series at this point (rational like 1/8, or decimal).
        #[arg(long, value_parser = series_point)]
        s: Option<SeriesPoint>,
    },
    /// Cayley matrix L and the Gamma-factor exponent forms.
    Mellin {
        #[arg(long, value_parser = rank)]
        k: usize,
    },
    /// Numerical monodromy around the singular points of the zeta plane.
    Monodromy {
        #[arg(long, value_parser = rank)]
        k: usize,
        #[arg(long, value_parser = tolerance, default_value = "1e-10")]
        tol: f64,
    },
}

/// Process exit status with either a rendered report or an error message.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
    pub error: Option<String>,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn variant(twisted: bool) -> Variant {
    if twisted {
        Variant::Twisted
    } else {
        Variant::Literal
    }
}

/// Verification documents for `k_min..=k_max`, computed concurrently and sorted by rank.
pub fn verify_range(k_min: usize, k_max: usize) -> cpstokes_core::Result<Vec<Document>> {
    let mut docs = std::thread::scope(|s| {
        let handles: Vec<_> = (k_min..=k_max)
            .map(|k| s.spawn(move || sections::verify(k)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect::<cpstokes_core::Result<Vec<_>>>()
    })?;
    docs.sort_by_key(|d| d.k);
    Ok(docs)
}

pub fn execute(cli: &Cli) -> Outcome {
    let (docs, as_array) = match &cli.command {
        Command::Verify { k_min, k_max } => {
            if k_min > k_max {
                return Outcome {
                    code: EXIT_USAGE,
                    output: String::new(),
                    error: Some(format!("--k-min {k_min} exceeds --k-max {k_max}")),
                };
            }
            (verify_range(*k_min, *k_max), true)
        }
        cmd => {
            let doc = match cmd {
                Command::Generators { k, twisted } => sections::generators(*k, variant(*twisted)),
                Command::Invariant { k, twisted } => sections::invariant(*k, variant(*twisted)),
                Command::Stokes { k, transpose } => sections::stokes(*k, *transpose),
                Command::Chi { k } => sections::chi(*k),
                Command::Series { k, terms, s } => sections::series(*k, *terms, s.as_ref()),
                Command::Mellin { k } => sections::mellin(*k),
                Command::Monodromy { k, tol } => sections::monodromy(*k, *tol),
                Command::Verify { .. } => unreachable!(),
            };
            (doc.map(|d| vec![d]), false)
        }
    };
    match docs {
        Ok(docs) => {
            let failed =
                matches!(cli.command, Command::Verify { .. }) && docs.iter().any(|d| !d.all_pass());
            Outcome {
                code: if failed { EXIT_FAILED } else { EXIT_OK },
                output: doc::render(&docs, cli.format, as_array),
                error: None,
            }
        }
        Err(e) => Outcome {
            code: EXIT_FAILED,
            output: String::new(),
            error: Some(e.to_string()),
        },
    }
}
