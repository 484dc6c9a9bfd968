//! Named verification suites run by `bohr-hardy verify <suite>`.
//!
//! Every suite draws its inputs from a seeded RNG, so a report can be
//! reproduced from the `seed` and parameters it records.

use std::f64::consts::PI;

use serde::Serialize;

use super::report::{Check, ReportBuilder, RunReport};
use crate::coefficient::{Coefficient, Operator, Vector};
use crate::dirichlet::{
    bohr, dirichlet_product, epsilon_schedule, DirichletSeries, HalfPlanePoint,
};
use crate::hardy::{
    cole_gamelin_kernel, cole_gamelin_tail_bound, h2_norm, hinf_norm, hp_norm,
    point_evaluation_bound, TorusGrid,
};
use crate::multiindex::{simplex, simplex_len, MultiIndex};
use crate::multiplier::{
    diagonal_distance_table, dirichlet_multiplier_norm_schedule, multiplier_norm_schedule,
    operator_norm, pointwise_vs_symbolic,
};
use crate::random::{self, seeded, Rng64};
use crate::series::{op_vec_product, OperatorSeries, TruncationParams, VectorSeries};
use crate::{Complex, Error, Result};

pub const SUITES: &[&str] = &[
    "bohr",
    "parseval",
    "cole-gamelin",
    "dilation",
    "toeplitz",
    "diagonal",
    "dirichlet",
    "recover",
];

pub const DEFAULT_SEED: u64 = 20240521;

/// Overrides for a suite's built-in parameters.
#[derive(Debug, Clone, Default, Serialize)]
pub struct VerifyOptions {
    pub nvars: Option<usize>,
    pub degree: Option<u64>,
    pub dim: Option<usize>,
    pub p: Option<f64>,
    pub grid: Option<usize>,
    pub radius: Option<f64>,
    pub seed: Option<u64>,
    pub tol: Option<f64>,
}

impl VerifyOptions {
    fn trunc(&self, nvars: usize, degree: u64, dim: usize) -> Result<TruncationParams> {
        TruncationParams::new(
            self.nvars.unwrap_or(nvars),
            self.degree.unwrap_or(degree),
            self.dim.unwrap_or(dim),
            self.p.unwrap_or(2.0),
        )
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

/// Run `suite` and collect its checks into a report.
pub fn run_verify(suite: &str, opts: &VerifyOptions) -> Result<RunReport> {
    let mut report = ReportBuilder::new("verify");
    report.input("suite", suite).input("options", opts);
    report.input("seed", opts.seed());
    let mut rng = seeded(opts.seed());
    match suite {
        "bohr" => bohr_suite(opts, &mut rng, &mut report)?,
        "parseval" => parseval_suite(opts, &mut rng, &mut report)?,
        "cole-gamelin" => cole_gamelin_suite(opts, &mut rng, &mut report)?,
        "dilation" => dilation_suite(opts, &mut rng, &mut report)?,
        "toeplitz" => toeplitz_suite(opts, &mut rng, &mut report)?,
        "diagonal" => diagonal_suite(opts, &mut rng, &mut report)?,
        "dirichlet" => dirichlet_suite(opts, &mut rng, &mut report)?,
        "recover" => recover_suite(opts, &mut report)?,
        other => return Err(Error::UnknownSuite(other.to_owned())),
    }
    Ok(report.finish())
}

fn trunc_input(report: &mut ReportBuilder, t: &TruncationParams) {
    report.input(
        "trunc",
        serde_json::json!({
            "nvars": t.nvars, "max_degree": t.max_degree, "dim": t.dim, "exponent": t.exponent
        }),
    );
}

fn bohr_suite(opts: &VerifyOptions, rng: &mut Rng64, report: &mut ReportBuilder) -> Result<()> {
    use rand::Rng;
    const LIMIT: u64 = 100_000;
    const PAIRS: usize = 1000;
    report.input("max_frequency", LIMIT).input("pairs", PAIRS);
    let _ = opts;

    let mut roundtrip_failures = 0usize;
    for n in 1..=LIMIT {
        if MultiIndex::from_frequency(n)?.to_frequency()? != n {
            roundtrip_failures += 1;
        }
    }
    let mut mult_failures = 0usize;
    let mut weight_failures = 0usize;
    for _ in 0..PAIRS {
        let n = rng.random_range(1..=LIMIT);
        let m = rng.random_range(1..=LIMIT);
        let a = MultiIndex::from_frequency(n)?;
        let b = MultiIndex::from_frequency(m)?;
        let sum = &a + &b;
        if sum.to_frequency()? != n * m {
            mult_failures += 1;
        }
        if sum.weighted_degree() != a.weighted_degree() + b.weighted_degree() {
            weight_failures += 1;
        }
    }
    report
        .output("roundtrips", LIMIT)
        .output("pairs", PAIRS)
        .check(Check::zero_count(
            "roundtrip n -> alpha -> n",
            roundtrip_failures,
        ))
        .check(Check::zero_count(
            "index(a+b) = index(a) index(b)",
            mult_failures,
        ))
        .check(Check::zero_count(
            "weighted degree additive",
            weight_failures,
        ));
    Ok(())
}

fn parseval_suite(opts: &VerifyOptions, rng: &mut Rng64, report: &mut ReportBuilder) -> Result<()> {
    const SAMPLES: usize = 50;
    let t = opts.trunc(3, 4, 2)?;
    let m = opts.grid.unwrap_or(2 * t.max_degree as usize + 1);
    let grid = TorusGrid::new(t.nvars, m, opts.radius.unwrap_or(1.0))?;
    let tol = opts.tol(1e-10);
    trunc_input(report, &t);
    report.input("grid", grid).input("samples", SAMPLES);

    let cells = simplex_len(t.nvars, t.max_degree);
    let mut worst = 0.0f64;
    for _ in 0..SAMPLES {
        let f = random::vector_series(rng, t.nvars, t.max_degree, t.dim, cells);
        let exact = h2_norm(&f);
        let quad = hp_norm(&f, 2.0, &grid)?;
        worst = worst.max((quad - exact).abs() / exact);
    }
    let residual = quadrature_consistency(rng, SAMPLES, &t)?;
    report
        .output("max_relative_difference", worst)
        .output("max_pointwise_vs_symbolic", residual)
        .check(Check::at_most(
            "quadrature H2 vs Parseval (relative)",
            0.0,
            worst,
            tol,
        ))
        .check(Check::at_most(
            "Fourier coefficients of F(w)G(w) = symbolic FG",
            0.0,
            residual,
            tol,
        ));
    Ok(())
}

fn cole_gamelin_suite(
    opts: &VerifyOptions,
    rng: &mut Rng64,
    report: &mut ReportBuilder,
) -> Result<()> {
    use rand::Rng;
    const KERNELS: usize = 20;
    const POINTS: usize = 100;
    const POLY_DEGREE: u64 = 4;
    let t = opts.trunc(2, 40, 2)?;
    let tol = opts.tol(1e-10);
    trunc_input(report, &t);
    report.input("kernels", KERNELS).input("points", POINTS);

    // (a) truncated extremal functions have norm ||x|| up to the geometric tail
    let mut kernel_excess = f64::NEG_INFINITY;
    let mut kernel_overshoot = 0.0f64;
    for _ in 0..KERNELS {
        let nvars = rng.random_range(1..=t.nvars);
        let x = random::vector(rng, t.dim);
        let z = random::point(rng, nvars, 0.7);
        let k = cole_gamelin_kernel(&x, &z, t.max_degree)?;
        let xn = x.norm();
        let gap = xn - h2_norm(&k);
        let bound = xn * cole_gamelin_tail_bound(&z, t.max_degree);
        kernel_excess = kernel_excess.max(gap - bound);
        kernel_overshoot = kernel_overshoot.max(-gap);
    }
    // (b) point evaluation is bounded by the reproducing-kernel norm
    let mut min_slack = f64::INFINITY;
    for _ in 0..POINTS {
        let g = random::vector_series(
            rng,
            t.nvars,
            POLY_DEGREE,
            t.dim,
            simplex_len(t.nvars, POLY_DEGREE),
        );
        let z = random::point(rng, t.nvars, 0.95);
        let lhs = g.evaluate(&z)?.norm();
        let rhs = h2_norm(&g) * point_evaluation_bound(&z, 2.0)?;
        min_slack = min_slack.min(rhs - lhs);
    }
    report
        .output("kernel_gap_minus_tail_bound", kernel_excess)
        .output("min_point_evaluation_slack", min_slack)
        .check(Check::at_most(
            "kernel norm deficit within tail bound",
            0.0,
            kernel_excess,
            1e-12,
        ))
        .check(Check::at_most(
            "kernel norm never exceeds ||x||",
            0.0,
            kernel_overshoot,
            1e-12,
        ))
        .check(Check::at_least(
            "point evaluation slack",
            0.0,
            min_slack,
            tol,
        ));
    Ok(())
}

fn dilation_suite(opts: &VerifyOptions, rng: &mut Rng64, report: &mut ReportBuilder) -> Result<()> {
    const SAMPLES: usize = 30;
    const RADII: [f64; 7] = [0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0];
    let t = opts.trunc(3, 3, 2)?;
    trunc_input(report, &t);
    report.input("samples", SAMPLES).input("radii", RADII);

    let product_trunc = t.with_degree(2 * t.max_degree);
    let mut contraction = 0.0f64;
    let mut bound_excess = 0.0f64;
    let mut mult = 0.0f64;
    for _ in 0..SAMPLES {
        let f = random::operator_series(rng, t.nvars, t.max_degree, t.dim, 6);
        let g = random::vector_series(rng, t.nvars, t.max_degree, t.dim, 8);
        let norm = h2_norm(&g);
        let w = g.max_weighted_degree() as i32;
        let fg = op_vec_product(&f, &g, &product_trunc)?;
        for r in RADII {
            let gr = g.radial_dilate(r)?;
            contraction = contraction.max(h2_norm(&gr) - norm);
            let diff = h2_norm(&g.sub(&gr)?);
            bound_excess = bound_excess.max(diff - (1.0 - r.powi(w)) * norm);
            let lhs = fg.radial_dilate(r)?;
            let rhs = op_vec_product(&f.radial_dilate(r)?, &gr, &product_trunc)?;
            mult = mult.max(max_coefficient_gap(&lhs, &rhs) / coefficient_scale(&lhs).max(1.0));
        }
    }
    report
        .output("max_norm_growth", contraction)
        .output("max_bound_excess", bound_excess)
        .output("max_multiplicativity_gap", mult)
        .check(Check::at_most("||F_r|| <= ||F||", 0.0, contraction, 1e-14))
        .check(Check::at_most(
            "||F - F_r|| <= (1 - r^W) ||F||",
            0.0,
            bound_excess,
            1e-14,
        ))
        .check(Check::at_most("(F G)_r = F_r G_r", 0.0, mult, 1e-14));
    Ok(())
}

fn max_coefficient_gap<C: Coefficient>(
    a: &crate::series::PowerSeries<C>,
    b: &crate::series::PowerSeries<C>,
) -> f64 {
    let mut worst = 0.0f64;
    for (alpha, c) in a.terms() {
        worst = worst.max(c.max_abs_diff(&b.coefficient_or_zero(alpha)));
    }
    for (alpha, c) in b.terms() {
        if a.coefficient(alpha).is_none() {
            worst = worst.max(c.max_abs_diff(&C::zero(c.dim())));
        }
    }
    worst
}

fn coefficient_scale<C: Coefficient>(a: &crate::series::PowerSeries<C>) -> f64 {
    a.terms()
        .flat_map(|(_, c)| c.entries())
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Largest singular value from nalgebra's dense SVD.
fn dense_norm(m: &Operator) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

fn toeplitz_suite(opts: &VerifyOptions, rng: &mut Rng64, report: &mut ReportBuilder) -> Result<()> {
    let degree = opts.degree.unwrap_or(50);
    let tol = opts.tol(1e-13);
    report.input("degree", degree).input("norm_tol", tol);

    // scalar 1 + z1
    let one = Operator::from_element(1, 1, Complex::new(1.0, 0.0));
    let f = OperatorSeries::from_terms(
        1,
        [
            (MultiIndex::zero(), one.clone()),
            (MultiIndex::unit(0), one),
        ],
    )?;
    let base = TruncationParams::hilbert(1, 0, 1)?;
    let degrees: Vec<u64> = (0..=degree).collect();
    let sched = multiplier_norm_schedule(&f, &degrees, &base, tol)?;
    let end = *sched.last().expect("schedule is non-empty");
    let closed_form = 2.0 * (PI / (2 * degree + 3) as f64).cos();
    let hinf = hinf_norm(&f, &[TorusGrid::new(1, 256, 0.999)?])?;
    report
        .output("one_plus_z_schedule", &sched)
        .output("one_plus_z_closed_form", closed_form)
        .output("hinf_estimate", &hinf)
        .check(Check::close(
            "||M_(1+z)|| at top degree -> 2",
            2.0,
            end,
            1e-3,
        ))
        .check(Check::close(
            "bidiagonal closed form 2cos(pi/(2D+3))",
            closed_form,
            end,
            1e-9,
        ))
        .check(Check::zero_count(
            "1+z schedule nondecreasing",
            count_decreases(&sched),
        ))
        .check(Check::at_most(
            "compression norm <= sup norm",
            2.0,
            end,
            1e-12,
        ))
        .check(Check::close(
            "grid sup estimate of 1+z",
            2.0,
            hinf.value,
            5e-3,
        ));

    // A z1: constant at ||A|| from degree 1
    let a = random::operator(rng, 3);
    let exact = dense_norm(&a);
    let shift = OperatorSeries::monomial(MultiIndex::unit(0), a);
    let base3 = TruncationParams::hilbert(2, 0, 3)?;
    let shift_sched = multiplier_norm_schedule(&shift, &[1, 2, 3, 4], &base3, tol)?;
    let worst = shift_sched
        .iter()
        .map(|s| (s - exact).abs())
        .fold(0.0, f64::max);
    report
        .output("shift_schedule", &shift_sched)
        .output("shift_dense_norm", exact)
        .check(Check::at_most(
            "A z1 schedule equals ||A||",
            0.0,
            worst,
            1e-8,
        ));

    // random operator polynomials
    let mut decreases = 0usize;
    for _ in 0..20 {
        let g = random::operator_series(rng, 2, 2, 2, 4);
        let s = multiplier_norm_schedule(
            &g,
            &[0, 1, 2, 3, 4],
            &TruncationParams::hilbert(2, 0, 2)?,
            tol,
        )?;
        decreases += count_decreases(&s);
    }
    report.check(Check::zero_count(
        "random schedules nondecreasing",
        decreases,
    ));
    Ok(())
}

/// Steps where the schedule drops by more than round-off.
pub fn count_decreases(s: &[f64]) -> usize {
    s.windows(2)
        .filter(|w| w[1] < w[0] - 1e-12 * w[0].max(1.0))
        .count()
}

fn diagonal_suite(opts: &VerifyOptions, rng: &mut Rng64, report: &mut ReportBuilder) -> Result<()> {
    const SAMPLES: usize = 100;
    let dim = opts.dim.unwrap_or(16);
    let tol = opts.tol(1e-12);
    report.input("dim", dim).input("samples", SAMPLES);
    let table = diagonal_distance_table(rng, dim, SAMPLES, 1e-14)?;
    let worst = table
        .iter()
        .map(|r| (r.operator_distance - r.sup_distance).abs())
        .fold(0.0, f64::max);
    let lower_bound_failures = table
        .iter()
        .filter(|r| r.operator_distance < r.sup_distance - tol)
        .count();
    let w = random::unimodular(rng, dim);
    let unit = operator_norm(&crate::multiplier::diagonal_example(&w)?, 1e-14)?;
    report
        .output("max_gap", worst)
        .check(Check::at_most(
            "||T_w - T_v|| = ||w - v||_inf",
            0.0,
            worst,
            tol,
        ))
        .check(Check::zero_count(
            "||T_w - T_v|| >= ||w - v||_inf",
            lower_bound_failures,
        ))
        .check(Check::close("||T_w|| = 1", 1.0, unit, tol));
    Ok(())
}

fn dirichlet_suite(
    opts: &VerifyOptions,
    rng: &mut Rng64,
    report: &mut ReportBuilder,
) -> Result<()> {
    use rand::Rng;
    const PAIRS: usize = 100;
    let max_n = opts.nvars.unwrap_or(3);
    let max_d = opts.degree.unwrap_or(3);
    let max_dim = opts.dim.unwrap_or(3);
    let tol = opts.tol(1e-12);
    report
        .input("pairs", PAIRS)
        .input("max_nvars", max_n)
        .input("max_degree", max_d)
        .input("max_dim", max_dim);

    let mut support_mismatches = 0usize;
    let mut coeff_gap = 0.0f64;
    let mut eval_gap = 0.0f64;
    for _ in 0..PAIRS {
        let n = rng.random_range(1..=max_n);
        let d = rng.random_range(0..=max_d);
        let dim = rng.random_range(1..=max_dim);
        let f = random::operator_series(rng, n, d, dim, 4);
        let g = random::vector_series(rng, n, d, dim, 5);
        let t = TruncationParams::hilbert(n, 2 * d, dim)?;
        let max_freq = simplex(n, 2 * d)
            .iter()
            .map(MultiIndex::to_frequency)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(1);
        let lhs = bohr(&op_vec_product(&f, &g, &t)?)?;
        let (bf, bg) = (bohr(&f)?, bohr(&g)?);
        let rhs = dirichlet_product(&bf, &bg, max_freq)?;
        let keys_l: Vec<u64> = lhs.terms().map(|(k, _)| k).collect();
        let keys_r: Vec<u64> = rhs.terms().map(|(k, _)| k).collect();
        if keys_l != keys_r {
            support_mismatches += 1;
        }
        for (k, c) in lhs.terms() {
            coeff_gap = coeff_gap.max(c.max_abs_diff(&rhs.coefficient_or_zero(k)));
        }
        let s = HalfPlanePoint::real(2.0);
        eval_gap = eval_gap.max(
            rhs.evaluate(s)
                .max_abs_diff(&(bf.evaluate(s) * bg.evaluate(s))),
        );
    }

    // shifts
    let e = random::vector_dirichlet(rng, 50, 2);
    let shifts: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let sched = epsilon_schedule(&e, &shifts)?;
    let increases = sched.windows(2).filter(|w| w[1].1 > w[0].1).count();
    let identity = e.epsilon_shift(0.0)? == e;
    let semigroup = shift_semigroup_gap(&e, 0.3, 0.45)?;

    // Bohr transport of the multiplier schedule
    let f = random::operator_series(rng, 2, 2, 2, 4);
    let base = TruncationParams::hilbert(2, 0, 2)?;
    let degs = [0, 1, 2, 3];
    let direct = multiplier_norm_schedule(&f, &degs, &base, 1e-13)?;
    let transported = dirichlet_multiplier_norm_schedule(&bohr(&f)?, &degs, &base, 1e-13)?;
    let transport_gap = direct
        .iter()
        .zip(&transported)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    report
        .output("max_coefficient_gap", coeff_gap)
        .output("epsilon_schedule", &sched)
        .check(Check::zero_count(
            "bohr(FG) and bohr(F) bohr(G) share support",
            support_mismatches,
        ))
        .check(Check::at_most(
            "bohr(FG) = bohr(F) bohr(G)",
            0.0,
            coeff_gap,
            tol,
        ))
        .check(Check::at_most("(D E)(2) = D(2)(E(2))", 0.0, eval_gap, tol))
        .check(Check::zero_count("||D_eps|| nonincreasing", increases))
        .check(Check::zero_count("D_0 = D", usize::from(!identity)))
        .check(Check::at_most("(D_a)_b = D_(a+b)", 0.0, semigroup, 1e-15))
        .check(Check::close(
            "schedule invariant under Bohr transport",
            0.0,
            transport_gap,
            0.0,
        ));
    Ok(())
}

/// Largest relative coefficient gap between `(D_a)_b` and `D_{a+b}`.
pub fn shift_semigroup_gap(d: &DirichletSeries<Vector>, a: f64, b: f64) -> Result<f64> {
    let twice = d.epsilon_shift(a)?.epsilon_shift(b)?;
    let once = d.epsilon_shift(a + b)?;
    let mut worst = 0.0f64;
    for (n, c) in once.terms() {
        let scale = c.norm().max(f64::MIN_POSITIVE);
        worst = worst.max(c.max_abs_diff(&twice.coefficient_or_zero(n)) / scale);
    }
    Ok(worst)
}

/// Quadrature nodes per unit of `t` used for vertical-line recovery.
pub const RECOVERY_NODES_PER_UNIT: f64 = 10.0;

pub fn recovery_grid_points(half_width: f64) -> usize {
    (2.0 * half_width * RECOVERY_NODES_PER_UNIT).ceil() as usize + 1
}

/// The two-term scalar series `3 * 2^{-s} + 5 * 3^{-s}`.
pub fn two_term_series() -> DirichletSeries<Vector> {
    let s = |x: f64| Vector::from_element(1, Complex::new(x, 0.0));
    DirichletSeries::from_terms(1, [(2, s(3.0)), (3, s(5.0))]).expect("finite coefficients")
}

fn recover_suite(opts: &VerifyOptions, report: &mut ReportBuilder) -> Result<()> {
    const SIGMA: f64 = 2.0;
    const DOUBLING_RS: [f64; 3] = [1e2, 4e2, 1.6e3];
    const FAR_R: f64 = 1e4;
    let tol = opts.tol(1e-2);
    report
        .input("sigma", SIGMA)
        .input("half_widths", DOUBLING_RS)
        .input("far_half_width", FAR_R);

    let d = two_term_series();
    let err = |r: f64| -> Result<f64> {
        let got = d.recover_coefficient(2, SIGMA, r, recovery_grid_points(r))?;
        Ok((got[0] - Complex::new(3.0, 0.0)).norm())
    };
    let errors = DOUBLING_RS
        .iter()
        .map(|&r| err(r))
        .collect::<Result<Vec<_>>>()?;
    let far = err(FAR_R)?;
    report.output("errors", &errors).output("far_error", far);
    for (i, w) in errors.windows(2).enumerate() {
        report.check(Check::at_least(
            format!(
                "a_2 error ratio R={} -> R={}",
                DOUBLING_RS[i],
                DOUBLING_RS[i + 1]
            ),
            1.8,
            w[0] / w[1],
            0.0,
        ));
    }
    report.check(Check::at_most("a_2 error at R = 1e4", 0.0, far, tol));

    let x = Vector::from_element(1, Complex::new(2.5, 0.0));
    let constant = DirichletSeries::single(1, x.clone())?;
    let got = constant.recover_coefficient(1, SIGMA, 123.0, recovery_grid_points(123.0))?;
    report.check(Check::at_most(
        "constant term recovered exactly",
        0.0,
        got.max_abs_diff(&x),
        1e-12,
    ));
    let absent = d.recover_coefficient(5, SIGMA, FAR_R, recovery_grid_points(FAR_R))?[0].norm();
    report.check(Check::at_most(
        "absent frequency recovers to ~0",
        0.0,
        absent,
        tol,
    ));
    Ok(())
}

/// Residual of the pointwise/symbolic comparison on a batch of random pairs.
pub fn quadrature_consistency(rng: &mut Rng64, pairs: usize, t: &TruncationParams) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let f: OperatorSeries = random::operator_series(rng, t.nvars, t.max_degree, t.dim, 4);
        let g: VectorSeries = random::vector_series(rng, t.nvars, t.max_degree, t.dim, 5);
        let grid = TorusGrid::torus(t.nvars, 2 * t.max_degree as usize + 1)?;
        worst = worst.max(pointwise_vs_symbolic(&f, &g, &grid)?);
    }
    Ok(worst)
}
