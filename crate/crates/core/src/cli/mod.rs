//! The `fourterm` command line.
//!
//! Exit codes: 0 success, 1 I/O or internal failure, 2 usage error, 3 a
//! certified failure of real-rootedness (or a counterexample) was found.

mod output;
mod parse;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;

pub use output::{Cell, Format, Table, SCHEMA_VERSION};
pub use parse::{format_rational, parse_coefficients, parse_complex, parse_rational};

use crate::analysis::{
    certify, count_distinct_real, density_profile, dominance_at, first_nonreal, necessity_probe,
    reciprocal_dominance, DominanceReport,
};
use crate::error::Error;
use crate::params::{lambda_bound, normalized_alpha, predict_hyperbolic};
use crate::poly::{aberth, ComplexHorner, ExactPoly, RootOptions};
use crate::recurrence::{generate, member_roots, ExactParams};
use crate::scalar::Scalar;
use crate::theta::{theta_grid, vieta_residuals, ComplexSample, ThetaSample, GRID_OFFSET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE_FOUND: i32 = 3;

pub const CERTIFY_HEADER: &[&str] = &[
    "n",
    "degree",
    "squarefree_degree",
    "sturm_count",
    "hyperbolic",
    "max_abs_root",
    "lambda",
    "contained",
    "method",
];
pub const GEN_HEADER: &[&str] = &["n", "k", "coefficient"];
pub const ROOTS_HEADER: &[&str] = &["index", "re", "im"];
pub const THETA_HEADER: &[&str] = &[
    "theta",
    "delta",
    "zeta",
    "tau",
    "z",
    "abs_t1",
    "abs_t3",
    "vieta_max_residual",
];
pub const THETA_COMPLEX_HEADER: &[&str] = &[
    "theta",
    "delta",
    "zeta_re",
    "zeta_im",
    "tau_re",
    "tau_im",
    "z_re",
    "z_im",
    "abs_t1",
    "abs_t3",
    "vieta_max_residual",
];
pub const DENSITY_HEADER: &[&str] = &[
    "alpha",
    "n_max",
    "lambda",
    "root_count",
    "max_gap_central",
    "contained",
];
pub const DENSITY_ROOTS_HEADER: &[&str] = &["root"];
pub const COUNTEREXAMPLE_HEADER: &[&str] = &[
    "a",
    "b",
    "c",
    "alpha",
    "predicted_hyperbolic",
    "n_max",
    "first_nonreal_n",
    "witness_re",
    "witness_im",
    "sturm_count",
    "squarefree_degree",
];
pub const SOKAL_HEADER: &[&str] = &[
    "z_re",
    "z_im",
    "t1_re",
    "t1_im",
    "t2_re",
    "t2_im",
    "t3_re",
    "t3_im",
    "abs_t1",
    "abs_t2",
    "abs_t3",
    "two_dominant",
    "distinct_nonzero",
];
pub const LIMITS_HEADER: &[&str] = &[
    "offset",
    "z_left",
    "z_right",
    "lambda",
    "err_left",
    "err_right",
];

#[derive(Debug, Parser)]
#[command(
    name = "fourterm",
    version,
    about = "Zeros of P_n + a z P_{n-1} + b P_{n-2} + c z P_{n-3} = 0"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,

    /// Write to this file instead of stdout
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

/// Either a full triple or the normalized parameter.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "alpha", requires_all = ["b", "c"])]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "alpha", requires_all = ["a", "c"])]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "alpha", requires_all = ["a", "b"])]
    pub c: Option<String>,
    /// c/(ab) with a = b = 1
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Accept decimal notation (read as the exact decimal fraction)
    #[arg(long)]
    pub float: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify real-rootedness of P_1..P_N exactly
    Certify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 50)]
        n_max: usize,
    },
    /// Dump exact coefficients of P_0..P_N
    Gen {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        n: usize,
        /// Only P_N
        #[arg(long)]
        last: bool,
    },
    /// Float roots of P_n, or of an explicit polynomial
    Roots {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, required_unless_present = "poly")]
        n: Option<usize>,
        /// Coefficients, constant term first, e.g. "-1,0,1"
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n", "a", "alpha"])]
        poly: Option<String>,
    },
    /// Tabulate the angular parametrization
    Theta {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Run over complex numbers (needed when Delta < 0)
        #[arg(long)]
        complex: bool,
    },
    /// Gap statistics of the union of zeros of P_1..P_N
    Density {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 100)]
        n_max: usize,
        /// Also write the sorted union of zeros here as CSV
        #[arg(long)]
        roots_out: Option<PathBuf>,
    },
    /// Smallest n with a certified non-real zero
    Counterexample {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 300)]
        n_max: usize,
    },
    /// Moduli of the denominator roots at a probe point
    Sokal {
        #[command(flatten)]
        params: ParamArgs,
        /// Probe "re,im"; defaults to the standard probe for alpha
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        /// Use t^3 + z t^2 - t + c z (the b < 0 family) with c = --c
        #[arg(long)]
        reciprocal: bool,
    },
    /// lambda(alpha) and z(theta) near both ends of (0, pi)
    Limits {
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(io::Error),
    Internal(Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::InvalidParams(_)
            | Error::NonPositiveB
            | Error::AlphaOutOfRange(_)
            | Error::DegreeTooLow { .. }
            | Error::DegenerateCubic
            | Error::ZeroPolynomial => Failure::Usage(e.to_string()),
            other => Failure::Internal(other),
        }
    }
}

impl ParamArgs {
    fn exact(&self) -> Result<ExactParams, Failure> {
        let p = |s: &str| parse_rational(s, self.float);
        match (&self.alpha, &self.a, &self.b, &self.c) {
            (Some(alpha), ..) => Ok(ExactParams::from_alpha(p(alpha)?)),
            (None, Some(a), Some(b), Some(c)) => Ok(ExactParams::new(p(a)?, p(b)?, p(c)?)?),
            _ => Err(Failure::Usage(
                "give --alpha or all of --a, --b, --c".into(),
            )),
        }
    }

    fn alpha(&self) -> Result<BigRational, Failure> {
        Ok(normalized_alpha(&self.exact()?).alpha)
    }
}

/// Runs the command line with `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.output {
        Some(path) => File::create(path).map_err(Failure::Io).and_then(|f| {
            let mut w = BufWriter::new(f);
            let code = dispatch(&cli, &mut w)?;
            w.flush()?;
            Ok(code)
        }),
        None => dispatch(&cli, stdout),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INTERNAL
        }
        Err(Failure::Internal(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INTERNAL
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let (table, code) = match &cli.command {
        Command::Certify { params, n_max } => cmd_certify(params, *n_max)?,
        Command::Gen { params, n, last } => (cmd_gen(params, *n, *last)?, EXIT_OK),
        Command::Roots { params, n, poly } => (cmd_roots(params, *n, poly.as_deref())?, EXIT_OK),
        Command::Theta {
            params,
            samples,
            complex,
        } => (cmd_theta(params, *samples, *complex)?, EXIT_OK),
        Command::Density {
            params,
            n_max,
            roots_out,
        } => (cmd_density(params, *n_max, roots_out.as_ref())?, EXIT_OK),
        Command::Counterexample { params, n_max } => cmd_counterexample(params, *n_max)?,
        Command::Sokal {
            params,
            z,
            reciprocal,
        } => (cmd_sokal(params, z.as_deref(), *reciprocal)?, EXIT_OK),
        Command::Limits { params } => (cmd_limits(params)?, EXIT_OK),
    };
    table.write(cli.format, out)?;
    Ok(code)
}

fn params_meta(table: &mut Table, params: &ExactParams) {
    table.meta("a", json!(format_rational(params.a())));
    table.meta("b", json!(format_rational(params.b())));
    table.meta("c", json!(format_rational(params.c())));
}

fn cmd_certify(args: &ParamArgs, n_max: usize) -> Result<(Table, i32), Failure> {
    let params = args.exact()?;
    let reports = certify(&params, n_max)?;
    let mut table = Table::new("certify", CERTIFY_HEADER);
    params_meta(&mut table, &params);
    table.meta("predicted_hyperbolic", json!(predict_hyperbolic(&params)));
    for r in &reports {
        table.push(vec![
            r.n.into(),
            r.degree.into(),
            r.squarefree_degree.into(),
            r.sturm_count.into(),
            r.hyperbolic.into(),
            r.max_abs_root.into(),
            Cell::opt_float(r.lambda),
            Cell::opt_bool(r.contained),
            Cell::Text(
                match r.method {
                    crate::analysis::CertificateMethod::SignChanges => "sign_changes",
                    crate::analysis::CertificateMethod::Inclusion => "inclusion",
                    crate::analysis::CertificateMethod::Sturm => "sturm",
                }
                .into(),
            ),
        ]);
    }
    let all = reports.iter().all(|r| r.hyperbolic);
    table.meta("all_hyperbolic", json!(all));
    Ok((table, if all { EXIT_OK } else { EXIT_FAILURE_FOUND }))
}

fn cmd_gen(args: &ParamArgs, n: usize, last: bool) -> Result<Table, Failure> {
    let params = args.exact()?;
    let seq = generate(&params, n);
    let mut table = Table::new("gen", GEN_HEADER);
    params_meta(&mut table, &params);
    let first = if last { n } else { 0 };
    for (m, p) in seq.polys.iter().enumerate().skip(first) {
        for (k, c) in p.coeffs().iter().enumerate() {
            table.push(vec![m.into(), k.into(), Cell::Text(format_rational(c))]);
        }
    }
    Ok(table)
}

fn cmd_roots(args: &ParamArgs, n: Option<usize>, poly: Option<&str>) -> Result<Table, Failure> {
    let mut table = Table::new("roots", ROOTS_HEADER);
    let (exact, roots) = match poly {
        Some(text) => {
            let p = ExactPoly::new(parse_coefficients(text, args.float)?);
            if p.degree().unwrap_or(0) < 1 {
                return Err(Failure::Usage("polynomial must have degree >= 1".into()));
            }
            let horner = ComplexHorner::new(
                p.coeffs()
                    .iter()
                    .map(|c| Complex64::new(c.to_f64(), 0.0))
                    .collect(),
            );
            let roots = aberth(&horner, None, RootOptions::default())?;
            (p, roots)
        }
        None => {
            let params = args.exact()?;
            let n = n.ok_or_else(|| Failure::Usage("--n is required".into()))?;
            params_meta(&mut table, &params);
            let p = generate(&params, n).polys.pop().expect("nonempty");
            let roots = member_roots(&params.to_float(), n, None)?;
            (p, roots)
        }
    };
    if exact.degree().unwrap_or(0) >= 1 {
        let count = count_distinct_real(&exact, &roots, None)?;
        table.meta("distinct_real", json!(count.distinct_real));
        table.meta("squarefree_degree", json!(count.squarefree_degree));
        table.meta("all_real", json!(count.all_real()));
    }
    for (k, z) in roots.iter().enumerate() {
        table.push(vec![k.into(), z.re.into(), z.im.into()]);
    }
    Ok(table)
}

fn cmd_theta(args: &ParamArgs, samples: usize, complex: bool) -> Result<Table, Failure> {
    let alpha_exact = args.alpha()?;
    if alpha_exact.is_zero() {
        return Err(Failure::Usage("alpha must be nonzero".into()));
    }
    let alpha = alpha_exact.to_f64();
    if samples < 2 {
        return Err(Failure::Usage("--samples must be at least 2".into()));
    }
    let grid = theta_grid(samples, GRID_OFFSET);
    if complex {
        let mut table = Table::new("theta", THETA_COMPLEX_HEADER);
        table.meta("alpha", json!(alpha));
        for th in grid {
            let s = ComplexSample::new(th, alpha)?;
            let v = vieta_residuals(&s);
            table.push(vec![
                th.into(),
                s.delta.into(),
                s.zeta_plus.re.into(),
                s.zeta_plus.im.into(),
                s.tau.re.into(),
                s.tau.im.into(),
                s.z.re.into(),
                s.z.im.into(),
                s.t[0].norm().into(),
                s.t[2].norm().into(),
                v.max_relative().into(),
            ]);
        }
        return Ok(table);
    }
    if alpha_exact > BigRational::new(1.into(), 9.into()) {
        return Err(Failure::Usage(
            "alpha > 1/9 has Delta < 0 near the ends; use --complex".into(),
        ));
    }
    let mut table = Table::new("theta", THETA_HEADER);
    table.meta("alpha", json!(alpha));
    for th in grid {
        let s = ThetaSample::<f64>::new(th, alpha)?;
        let v = vieta_residuals(&s);
        table.push(vec![
            th.into(),
            s.delta.into(),
            s.zeta_plus.into(),
            s.tau.into(),
            s.z.into(),
            s.t[0].norm().into(),
            s.t[2].norm().into(),
            v.max_relative().into(),
        ]);
    }
    Ok(table)
}

fn cmd_density(
    args: &ParamArgs,
    n_max: usize,
    roots_out: Option<&PathBuf>,
) -> Result<Table, Failure> {
    let alpha = args.alpha()?;
    lambda_bound(&alpha)?;
    let d = density_profile(alpha.to_f64(), n_max)?;
    if let Some(path) = roots_out {
        let mut roots = Table::new("density_roots", DENSITY_ROOTS_HEADER);
        for z in &d.union_roots {
            roots.push(vec![(*z).into()]);
        }
        let mut w = BufWriter::new(File::create(path)?);
        roots.write(Format::Csv, &mut w)?;
        w.flush()?;
    }
    let mut table = Table::new("density", DENSITY_HEADER);
    table.push(vec![
        d.alpha.into(),
        d.n_max.into(),
        d.lambda.into(),
        d.union_roots.len().into(),
        d.max_gap_central.into(),
        d.contained.into(),
    ]);
    Ok(table)
}

fn cmd_counterexample(args: &ParamArgs, n_max: usize) -> Result<(Table, i32), Failure> {
    let params = args.exact()?;
    let rec = first_nonreal(&params, n_max)?;
    let mut table = Table::new("counterexample", COUNTEREXAMPLE_HEADER);
    let opt_int = |v: Option<usize>| v.map_or(Cell::Missing, Cell::from);
    table.push(vec![
        Cell::Text(format_rational(params.a())),
        Cell::Text(format_rational(params.b())),
        Cell::Text(format_rational(params.c())),
        rec.alpha.into(),
        rec.predicted_hyperbolic.into(),
        rec.n_max.into(),
        opt_int(rec.first_nonreal_n),
        Cell::opt_float(rec.witness_root.map(|z| z.re)),
        Cell::opt_float(rec.witness_root.map(|z| z.im)),
        opt_int(rec.sturm_count),
        opt_int(rec.squarefree_degree),
    ]);
    let code = if rec.first_nonreal_n.is_some() {
        EXIT_FAILURE_FOUND
    } else {
        EXIT_OK
    };
    Ok((table, code))
}

fn dominance_row(r: &DominanceReport) -> Vec<Cell> {
    let mut row: Vec<Cell> = vec![r.z_probe[0].into(), r.z_probe[1].into()];
    for t in &r.t_roots {
        row.push(t[0].into());
        row.push(t[1].into());
    }
    row.extend(r.t_moduli.iter().map(|&m| Cell::Float(m)));
    row.push(r.two_dominant.into());
    row.push(r.distinct_nonzero.into());
    row
}

fn cmd_sokal(args: &ParamArgs, z: Option<&str>, reciprocal: bool) -> Result<Table, Failure> {
    let mut table = Table::new("sokal", SOKAL_HEADER);
    if reciprocal {
        let params = args.exact()?;
        let c = params.c().to_f64();
        let probe = match z {
            Some(text) => parse_complex(text)?,
            None => Complex64::new(0.0, 1e-2),
        };
        let r = reciprocal_dominance(probe, c)?;
        table.meta("star_moduli", json!(r.star_moduli));
        table.meta("star_two_dominant", json!(r.star_two_dominant));
        table.push(dominance_row(&r.translated));
        return Ok(table);
    }
    let alpha = args.alpha()?.to_f64();
    let probe = match z {
        Some(text) => parse_complex(text)?,
        None => necessity_probe(alpha).ok_or_else(|| {
            Failure::Usage(format!("no standard probe for alpha = {alpha}; pass --z"))
        })?,
    };
    let r = dominance_at(probe, alpha)?;
    table.meta("alpha", json!(alpha));
    table.meta("discriminant", json!(r.discriminant));
    table.push(dominance_row(&r));
    Ok(table)
}

fn cmd_limits(args: &ParamArgs) -> Result<Table, Failure> {
    let alpha = args.alpha()?;
    let lambda = lambda_bound(&alpha)?;
    let a = alpha.to_f64();
    let mut table = Table::new("limits", LIMITS_HEADER);
    table.meta("alpha", json!(a));
    table.meta("lambda", json!(lambda));
    for k in 2..=6 {
        let off = 10f64.powi(-k);
        let left = crate::theta::z_of_theta(off, a)?;
        let right = crate::theta::z_of_theta(std::f64::consts::PI - off, a)?;
        table.push(vec![
            off.into(),
            left.into(),
            right.into(),
            lambda.into(),
            (left + lambda).abs().into(),
            (right - lambda).abs().into(),
        ]);
    }
    Ok(table)
}
