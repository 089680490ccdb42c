// Copyright 2026 mueller-sl4 Contributors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end for `mueller-sl4`.
//!
//! [`run`] parses arguments, executes one verb and writes to the given
//! streams. Exit codes: 0 success, 1 domain error, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mueller_sl4::dirac::{BasisId, GeneratorId, SubgroupId};
use mueller_sl4::verify::Module;
use mueller_sl4::EPS_ALG;

mod commands;
pub mod emit;
pub mod selfcheck;

pub const EPS_ENV: &str = "STOKES_SL4_EPS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mueller-sl4", version, about = "Mueller matrices, Stokes cones and SL(4,R) subgroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a Dirac basis matrix and its Gell-Mann flags.
    Basis {
        #[arg(long, value_parser = parse_name::<BasisId>)]
        id: BasisId,
    },
    /// Print a Lie algebra generator (a1..a3, b1..b3, A1..C3).
    Generator {
        #[arg(long, value_parser = parse_name::<GeneratorId>)]
        id: GeneratorId,
    },
    /// Print a one-parameter subgroup element.
    Subgroup {
        #[arg(long, value_parser = parse_name::<SubgroupId>)]
        id: SubgroupId,
        #[arg(long, allow_hyphen_values = true)]
        param: f64,
    },
    /// Apply a 4×4 matrix to a Stokes vector.
    Transform(MatrixArgs),
    /// Test whether a matrix maps a Stokes vector into the cone.
    Check(MatrixArgs),
    /// Admissible parameter range of a variant on a state.
    Range {
        #[arg(long, value_parser = parse_name::<SubgroupId>)]
        variant: SubgroupId,
        /// Inline JSON `{"intensity":..,"p":[..]}` or a file path.
        #[arg(long)]
        state: String,
        /// Also run the grid oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 100_000)]
        steps: usize,
        /// Oracle window `lo,hi` in the subgroup parameter.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        window: Option<(f64, f64)>,
        /// Complete the state to |p| = 1 keeping the variant's active coordinates.
        #[arg(long)]
        polarized: bool,
    },
    /// Apply a Lorentz boost to a state.
    Boost {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        /// Unit axis `x,y,z`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_triple)]
        axis: [f64; 3],
        #[arg(long)]
        state: String,
    },
    /// Boost taking a partially polarized state to natural light.
    Restframe {
        #[arg(long)]
        state: String,
    },
    /// Image of the sphere |p| = const under a boost along the third axis.
    Ellipsoid {
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        p: f64,
        /// Write a meridian section as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Lorentz matrix from a complex quaternion `re0,im0,...,re3,im3`.
    Factorize {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_octet)]
        k: [f64; 8],
    },
    /// D-entity table over a chart grid, as CSV.
    Depol {
        #[arg(long, value_parser = parse_name::<SubgroupId>)]
        variant: SubgroupId,
        #[arg(long)]
        state: String,
        /// Grid `lo,hi,n` in the chart parameter.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_grid, default_value = "-0.9,0.9,19")]
        grid: Grid,
        /// Write the neutral curve of the variant as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Run the invariant suite.
    Verify {
        /// Module name, or `cli`.
        #[arg(long, value_parser = parse_filter)]
        filter: Option<Filter>,
        #[arg(long, default_value_t = mueller_sl4::verify::VerifyConfig::default().seed)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// Inline JSON (16 numbers, flat or 4×4 nested) or a file path.
    #[arg(long)]
    pub matrix: String,
    /// Inline JSON `[s0,s1,s2,s3]` or a file path.
    #[arg(long)]
    pub stokes: String,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        match self.n {
            1 => vec![self.lo],
            n => (0..n).map(|k| self.lo + (self.hi - self.lo) * k as f64 / (n - 1) as f64).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    Module(Module),
    Cli,
}

fn parse_name<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("unknown name `{s}`"))
}

fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            let v: f64 = t.trim().parse().map_err(|_| format!("`{t}` is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("`{t}` is not finite"))
            }
        })
        .collect()
}

fn parse_octet(s: &str) -> Result<[f64; 8], String> {
    parse_floats(s)?.try_into().map_err(|_| "expected 8 numbers `re0,im0,...,re3,im3`".to_string())
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    match parse_floats(s)?[..] {
        [a, b] => Ok((a, b)),
        _ => Err("expected `lo,hi`".into()),
    }
}

fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    match parse_floats(s)?[..] {
        [a, b, c] => Ok([a, b, c]),
        _ => Err("expected `x,y,z`".into()),
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(',').collect();
    let [lo, hi, n] = parts[..] else {
        return Err("expected `lo,hi,n`".into());
    };
    let range = parse_pair(&format!("{lo},{hi}"))?;
    let n: usize = n.trim().parse().map_err(|_| format!("`{n}` is not a count"))?;
    if n == 0 || range.0 > range.1 {
        return Err("grid needs n ≥ 1 and lo ≤ hi".into());
    }
    Ok(Grid { lo: range.0, hi: range.1, n })
}

fn parse_filter(s: &str) -> Result<Filter, String> {
    if s == "cli" {
        return Ok(Filter::Cli);
    }
    s.parse::<Module>().map(Filter::Module).map_err(|_| {
        let names: Vec<&str> = Module::ALL.iter().map(|m| m.name()).chain(["cli"]).collect();
        format!("unknown module `{s}`; expected one of {}", names.join(", "))
    })
}

/// Tolerance from the `STOKES_SL4_EPS` value, if given.
pub fn eps_from(value: Option<&str>) -> Result<f64, String> {
    match value {
        None => Ok(EPS_ALG),
        Some(v) => match v.trim().parse::<f64>() {
            Ok(e) if e.is_finite() && e > 0.0 => Ok(e),
            _ => Err(format!("{EPS_ENV} must be a positive number, got `{v}`")),
        },
    }
}

/// Entry point using the process environment for the tolerance override.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env = std::env::var(EPS_ENV).ok();
    run_with(args, env.as_deref(), out, err)
}

/// Entry point with an explicit tolerance override.
pub fn run_with<I, T>(args: I, eps_override: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    let eps = match eps_from(eps_override) {
        Ok(e) => e,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match commands::execute(&cli.command, eps, err) {
        Ok(outcome) => {
            let _ = out.write_all(outcome.stdout.as_bytes());
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

/// Runs a command line in memory; returns `(code, stdout, stderr)`.
pub fn run_captured(args: &[&str], eps_override: Option<&str>) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mueller-sl4").chain(args.iter().copied());
    let code = run_with(argv, eps_override, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}
