//! One function per binary subcommand. Each returns a [`RunReport`].

use std::path::Path;

use serde::Serialize;

use super::io::{parse_series_file, save_series_file, AnySeries};
use super::report::{Check, ReportBuilder, RunReport};
use super::verify::{self, VerifyOptions};
use crate::dirichlet::{bohr, bohr_inverse, dirichlet_product};
use crate::hardy::{h2_norm, hinf_norm, hp_norm, radial_schedule, TorusGrid};
use crate::multiindex::simplex;
use crate::multiplier::{diagonal_distance_table, multiplier_norm_schedule};
use crate::random::seeded;
use crate::series::{op_vec_product, TruncationParams};
use crate::{Error, Result};

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

/// Power series to Dirichlet series or back, depending on the input.
pub fn transform(input: &Path, output: &Path) -> Result<RunReport> {
    let mut report = ReportBuilder::new("transform");
    report
        .input("input", path_str(input))
        .input("output", path_str(output));
    let series = parse_series_file(input)?;
    let out = match &series {
        AnySeries::PowerVector(s) => AnySeries::DirichletVector(bohr(s)?),
        AnySeries::PowerOperator(s) => AnySeries::DirichletOperator(bohr(s)?),
        AnySeries::DirichletVector(s) => AnySeries::PowerVector(bohr_inverse(s)?),
        AnySeries::DirichletOperator(s) => AnySeries::PowerOperator(bohr_inverse(s)?),
    };
    save_series_file(output, &out)?;
    report
        .output(
            "direction",
            if series.is_dirichlet() {
                "dirichlet->power"
            } else {
                "power->dirichlet"
            },
        )
        .output("terms", out.len())
        .check(Check::close(
            "support size preserved",
            series.len() as f64,
            out.len() as f64,
            0.0,
        ));
    Ok(report.finish())
}

/// Parameters for `product`.
#[derive(Debug, Clone, Serialize)]
pub struct ProductArgs {
    pub nvars: Option<usize>,
    pub degree: Option<u64>,
    pub max_frequency: Option<u64>,
}

/// Operator series (left) applied to a vector series (right), both power or both Dirichlet.
pub fn product(left: &Path, right: &Path, output: &Path, args: &ProductArgs) -> Result<RunReport> {
    let mut report = ReportBuilder::new("product");
    report
        .input("left", path_str(left))
        .input("right", path_str(right))
        .input("output", path_str(output))
        .input("args", args);
    let out = match (parse_series_file(left)?, parse_series_file(right)?) {
        (AnySeries::PowerOperator(f), AnySeries::PowerVector(g)) => {
            let nvars = args.nvars.unwrap_or(f.nvars().max(g.nvars()).max(1));
            let degree = args
                .degree
                .unwrap_or(f.degree().unwrap_or(0) + g.degree().unwrap_or(0));
            let t = TruncationParams::hilbert(nvars, degree, f.dim())?;
            report.input("trunc", serde_json::json!({"nvars": nvars, "max_degree": degree}));
            AnySeries::PowerVector(op_vec_product(&f, &g, &t)?)
        }
        (AnySeries::DirichletOperator(d), AnySeries::DirichletVector(e)) => {
            let max_frequency = args.max_frequency.unwrap_or_else(|| {
                d.max_frequency()
                    .unwrap_or(1)
                    .saturating_mul(e.max_frequency().unwrap_or(1))
            });
            report.input("max_frequency", max_frequency);
            AnySeries::DirichletVector(dirichlet_product(&d, &e, max_frequency)?)
        }
        _ => {
            return Err(Error::InvalidArgument(
                "product needs an operator series on the left and a vector series of the same domain on the right"
                    .into(),
            ))
        }
    };
    save_series_file(output, &out)?;
    report.output("terms", out.len());
    Ok(report.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormKind {
    H2,
    Hp,
    Hinf,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormArgs {
    pub kind: NormKind,
    pub p: f64,
    pub nvars: Option<usize>,
    pub grid: usize,
    pub radius: f64,
}

pub fn norm(input: &Path, args: &NormArgs) -> Result<RunReport> {
    let mut report = ReportBuilder::new("norm");
    report.input("input", path_str(input)).input("args", args);
    let series = parse_series_file(input)?;
    let nvars_of = |n: usize| args.nvars.unwrap_or(n.max(1));
    match (args.kind, &series) {
        (NormKind::H2, AnySeries::PowerVector(f)) => {
            report.output("h2", h2_norm(f));
        }
        (NormKind::H2, AnySeries::DirichletVector(d)) => {
            report.output("h2", d.h2_norm());
        }
        (NormKind::Hp, AnySeries::PowerVector(f)) => {
            let grid = TorusGrid::new(nvars_of(f.nvars()), args.grid, args.radius)?;
            report
                .output("hp", hp_norm(f, args.p, &grid)?)
                .output("grid", grid);
        }
        (NormKind::Hinf, AnySeries::PowerVector(f)) => {
            let sched = radial_schedule(
                nvars_of(f.nvars()),
                &[args.grid],
                &radii_towards(args.radius),
            )?;
            report.output("hinf_estimate", hinf_norm(f, &sched)?);
        }
        (NormKind::Hinf, AnySeries::PowerOperator(f)) => {
            let sched = radial_schedule(
                nvars_of(f.nvars()),
                &[args.grid],
                &radii_towards(args.radius),
            )?;
            report.output("hinf_estimate", hinf_norm(f, &sched)?);
        }
        (kind, _) => {
            return Err(Error::InvalidArgument(format!(
                "{kind:?} norm is not defined for this series (kind {}, {})",
                series.kind().as_str(),
                if series.is_dirichlet() {
                    "dirichlet"
                } else {
                    "power"
                }
            )))
        }
    }
    Ok(report.finish())
}

/// `r/4 ... r` in four steps; a radius schedule ending at `r`.
fn radii_towards(r: f64) -> Vec<f64> {
    (1..=4).map(|k| r * k as f64 / 4.0).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct MulnormArgs {
    pub degrees: Vec<u64>,
    pub nvars: Option<usize>,
    pub tol: f64,
}

/// Compression-norm schedule of an operator symbol (power or Dirichlet file).
pub fn mulnorm(input: &Path, args: &MulnormArgs) -> Result<RunReport> {
    let mut report = ReportBuilder::new("mulnorm");
    report.input("input", path_str(input)).input("args", args);
    let f = match parse_series_file(input)? {
        AnySeries::PowerOperator(f) => f,
        AnySeries::DirichletOperator(d) => bohr_inverse(&d)?,
        _ => {
            return Err(Error::InvalidArgument(
                "mulnorm needs an operator-valued series".into(),
            ))
        }
    };
    let nvars = args.nvars.unwrap_or(f.nvars().max(1));
    let base = TruncationParams::hilbert(nvars, 0, f.dim())?;
    let sched = multiplier_norm_schedule(&f, &args.degrees, &base, args.tol)?;
    let sizes: Vec<usize> = args
        .degrees
        .iter()
        .map(|&d| simplex(nvars, d).len() * f.dim())
        .collect();
    report
        .output("schedule", &sched)
        .output("matrix_sizes", sizes)
        .check(Check::zero_count(
            "schedule nondecreasing",
            verify::count_decreases(&sched),
        ));
    Ok(report.finish())
}

#[derive(Debug, Clone, Serialize)]
pub struct RecoverArgs {
    pub n: u64,
    pub sigma: f64,
    pub half_width: f64,
    pub grid_points: Option<usize>,
}

pub fn recover(input: &Path, args: &RecoverArgs) -> Result<RunReport> {
    let mut report = ReportBuilder::new("recover");
    report.input("input", path_str(input)).input("args", args);
    let points = args
        .grid_points
        .unwrap_or_else(|| verify::recovery_grid_points(args.half_width));
    report.input("grid_points_used", points);
    match parse_series_file(input)? {
        AnySeries::DirichletVector(d) => {
            let got = d.recover_coefficient(args.n, args.sigma, args.half_width, points)?;
            let exact = d.coefficient_or_zero(args.n);
            report
                .output("recovered", pairs(got.iter()))
                .output("stored", pairs(exact.iter()))
                .output("error", (got - exact).norm());
        }
        AnySeries::DirichletOperator(d) => {
            let got = d.recover_coefficient(args.n, args.sigma, args.half_width, points)?;
            let exact = d.coefficient_or_zero(args.n);
            report.output("error", (got - exact).norm());
        }
        _ => {
            return Err(Error::InvalidArgument(
                "recover needs a Dirichlet series file".into(),
            ))
        }
    }
    Ok(report.finish())
}

fn pairs<'a>(it: impl Iterator<Item = &'a crate::Complex>) -> Vec<[f64; 2]> {
    it.map(|z| [z.re, z.im]).collect()
}

pub fn verify(suite: &str, opts: &VerifyOptions) -> Result<RunReport> {
    verify::run_verify(suite, opts)
}

/// Distance table for the diagonal unimodular example.
pub fn example_sot(dim: usize, samples: usize, seed: u64, tol: f64) -> Result<RunReport> {
    let mut report = ReportBuilder::new("example-sot");
    report
        .input("dim", dim)
        .input("samples", samples)
        .input("seed", seed)
        .input("tol", tol);
    let mut rng = seeded(seed);
    let table = diagonal_distance_table(&mut rng, dim, samples, 1e-14)?;
    let worst = table
        .iter()
        .map(|r| (r.operator_distance - r.sup_distance).abs())
        .fold(0.0, f64::max);
    report.output("table", &table).check(Check::at_most(
        "||T_w - T_v|| = ||w - v||_inf",
        0.0,
        worst,
        tol,
    ));
    Ok(report.finish())
}
