//! Acceptance run: one line per criterion, non-zero exit if any fails.
//!
//! Each criterion compares library output against an oracle computed here
//! from first principles (trial division, dense SVD, closed forms, brute-force
//! convolution), not against another code path of the library.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::Rng;

use bohr_hardy::coefficient::{Coefficient, Operator, Vector};
use bohr_hardy::dirichlet::{bohr, dirichlet_product, epsilon_schedule, DirichletSeries};
use bohr_hardy::hardy::{
    cole_gamelin_kernel, cole_gamelin_tail_bound, h2_norm, hp_norm, TorusGrid,
};
use bohr_hardy::multiindex::MultiIndex;
use bohr_hardy::multiplier::{
    diagonal_example, multiplier_norm_schedule, operator_norm, pointwise_vs_symbolic,
};
use bohr_hardy::random::{self, seeded, Rng64};
use bohr_hardy::series::{op_vec_product, OperatorSeries, TruncationParams, VectorSeries};
use bohr_hardy::{Complex, Result};

const SEED: u64 = 20240521;
const TOL: f64 = 1e-13;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn c(re: f64) -> Complex {
    Complex::new(re, 0.0)
}

fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut n = 2u64;
    while out.len() < k {
        if out
            .iter()
            .take_while(|&&p| p * p <= n)
            .all(|&p| !n.is_multiple_of(p))
        {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// Exponents of `n` by trial division over consecutive integers.
fn trial_division(n: u64, primes: &[u64]) -> Vec<u32> {
    let mut rest = n;
    let mut exps = Vec::new();
    for &p in primes {
        if rest == 1 {
            break;
        }
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        exps.push(e);
    }
    assert_eq!(rest, 1, "prime list too short for {n}");
    while exps.last() == Some(&0) {
        exps.pop();
    }
    exps
}

fn frequency_of(exps: &[u32], primes: &[u64]) -> u64 {
    exps.iter().zip(primes).map(|(&e, &p)| p.pow(e)).product()
}

fn largest_singular_value(m: &Operator) -> f64 {
    m.clone().svd(false, false).singular_values.max()
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn criterion_1() -> Result<Outcome> {
    const LIMIT: u64 = 100_000;
    let primes = first_primes(10_000);
    let mut roundtrip = 0usize;
    let mut mismatch = 0usize;
    for n in 1..=LIMIT {
        let alpha = MultiIndex::from_frequency(n)?;
        if alpha.to_frequency()? != n {
            roundtrip += 1;
        }
        if alpha.exponents() != trial_division(n, &primes).as_slice() {
            mismatch += 1;
        }
    }
    let mut rng = seeded(SEED);
    let mut mult = 0usize;
    for _ in 0..1000 {
        let n = rng.random_range(1..=LIMIT);
        let m = rng.random_range(1..=LIMIT);
        let sum = &MultiIndex::from_frequency(n)? + &MultiIndex::from_frequency(m)?;
        if sum.to_frequency()? != n * m {
            mult += 1;
        }
    }
    Ok(Outcome::new(
        roundtrip + mismatch + mult == 0,
        format!("roundtrip failures {roundtrip}, factorization mismatches {mismatch}, multiplicativity failures {mult}"),
    ))
}

fn criterion_2() -> Result<Outcome> {
    let primes = first_primes(8);
    let mut rng = seeded(SEED + 2);
    let mut support_failures = 0usize;
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let nvars = rng.random_range(1..=3);
        let deg = rng.random_range(0..=3);
        let dim = rng.random_range(1..=3);
        let nterms = rng.random_range(1..=6);
        let f = random::operator_series(&mut rng, nvars, deg, dim, nterms);
        let g = random::vector_series(&mut rng, nvars, deg, dim, nterms);
        let full = TruncationParams::hilbert(nvars, 2 * deg, dim)?;
        let lhs = bohr(&op_vec_product(&f, &g, &full)?)?;
        let rhs = dirichlet_product(&bohr(&f)?, &bohr(&g)?, u64::MAX)?;

        // brute-force convolution over frequency pairs
        let mut oracle: BTreeMap<u64, Vector> = BTreeMap::new();
        for (a, fa) in f.terms() {
            for (b, gb) in g.terms() {
                let n = frequency_of(a.exponents(), &primes) * frequency_of(b.exponents(), &primes);
                let slot = oracle.entry(n).or_insert_with(|| Vector::zeros(dim));
                *slot += fa * gb;
            }
        }
        oracle.retain(|_, v| v.iter().any(|z| *z != c(0.0)));

        let keys = |d: &DirichletSeries<Vector>| d.terms().map(|(n, _)| n).collect::<Vec<_>>();
        let oracle_keys: Vec<u64> = oracle.keys().copied().collect();
        if keys(&lhs) != keys(&rhs) || keys(&lhs) != oracle_keys {
            support_failures += 1;
            continue;
        }
        for (n, want) in &oracle {
            worst = worst
                .max(lhs.coefficient_or_zero(*n).max_abs_diff(want))
                .max(
                    rhs.coefficient_or_zero(*n)
                        .max_abs_diff(&lhs.coefficient_or_zero(*n)),
                );
        }
    }
    Ok(Outcome::new(
        support_failures == 0 && worst <= 1e-12,
        format!(
            "support mismatches {support_failures}, max coefficient gap {worst:.3e} (tol 1e-12)"
        ),
    ))
}

/// Grid mean of `|F|^2` computed node by node with explicit roots of unity.
fn torus_mean_square(f: &VectorSeries, nvars: usize, m: usize) -> f64 {
    let total = m.pow(nvars as u32);
    let mut acc = 0.0;
    for index in 0..total {
        let mut rest = index;
        let w: Vec<Complex> = (0..nvars)
            .map(|_| {
                let k = rest % m;
                rest /= m;
                Complex::from_polar(1.0, TAU * k as f64 / m as f64)
            })
            .collect();
        let mut value = Vector::zeros(f.dim());
        for (alpha, coeff) in f.terms() {
            let mono: Complex = (0..nvars).map(|j| w[j].powu(alpha.get(j))).product();
            value += coeff * mono;
        }
        acc += value.norm_squared();
    }
    acc / total as f64
}

fn criterion_3() -> Result<Outcome> {
    let (nvars, deg, dim) = (3usize, 4u64, 2usize);
    let m = 2 * deg as usize + 1;
    let grid = TorusGrid::torus(nvars, m)?;
    let mut rng = seeded(SEED + 3);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let f = random::vector_series(&mut rng, nvars, deg, dim, 12);
        let parseval: f64 = f.terms().map(|(_, v)| v.norm_squared()).sum::<f64>().sqrt();
        let quad = hp_norm(&f, 2.0, &grid)?;
        let manual = torus_mean_square(&f, nvars, m).sqrt();
        worst = worst
            .max(rel_gap(h2_norm(&f), parseval))
            .max(rel_gap(quad, parseval))
            .max(rel_gap(manual, parseval));
    }
    Ok(Outcome::new(
        worst <= 1e-10,
        format!("max relative gap {worst:.3e} (tol 1e-10)"),
    ))
}

/// `prod_j (1 - q_j) * sum_{|alpha| <= K} q^alpha`, summed directly.
fn retained_mass(q: &[f64], degree: u32) -> f64 {
    let head: f64 = q.iter().map(|qj| 1.0 - qj).product();
    let sum = match q {
        [] => 1.0,
        [a] => (0..=degree).map(|i| a.powi(i as i32)).sum(),
        [a, b] => (0..=degree)
            .flat_map(|i| (0..=degree - i).map(move |j| a.powi(i as i32) * b.powi(j as i32)))
            .sum(),
        _ => unreachable!("at most two variables"),
    };
    head * sum
}

fn criterion_4() -> Result<Outcome> {
    const DEGREE: u64 = 40;
    let mut rng = seeded(SEED + 4);
    let mut kernel_failures = 0usize;
    let mut oracle_gap = 0.0f64;
    for _ in 0..20 {
        let nvars = rng.random_range(1..=2);
        let dim = rng.random_range(1..=3);
        let x = random::vector(&mut rng, dim);
        let z = random::point(&mut rng, nvars, 0.7);
        let k = cole_gamelin_kernel(&x, &z, DEGREE)?;
        let got = h2_norm(&k);
        let bound = cole_gamelin_tail_bound(&z, DEGREE) * x.norm();
        if (x.norm() - got).abs() > bound + 1e-14 {
            kernel_failures += 1;
        }
        let q: Vec<f64> = z
            .iter()
            .map(|zj| zj.norm_sqr())
            .filter(|&q| q > 0.0)
            .collect();
        let exact = x.norm() * retained_mass(&q, DEGREE as u32).sqrt();
        oracle_gap = oracle_gap.max((exact - got).abs());
    }

    let mut worst_slack = f64::INFINITY;
    for _ in 0..100 {
        let nvars = rng.random_range(1..=3);
        let dim = rng.random_range(1..=3);
        let g = random::vector_series(&mut rng, nvars, 4, dim, 8);
        let z = random::point(&mut rng, nvars, 0.95);
        let bound: f64 = z
            .iter()
            .map(|zj| (1.0 - zj.norm_sqr()).powf(-0.5))
            .product();
        let lhs = g.evaluate(&z)?.norm();
        worst_slack = worst_slack.min(h2_norm(&g) * bound - lhs);
    }
    Ok(Outcome::new(
        kernel_failures == 0 && oracle_gap <= 1e-12 && worst_slack >= -1e-10,
        format!(
            "kernels outside tail bound {kernel_failures}, gap to exact retained mass {oracle_gap:.2e}, \
             worst point-evaluation slack {worst_slack:.3e}"
        ),
    ))
}

fn criterion_5() -> Result<Outcome> {
    let radii = [0.1, 0.2, 0.25, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];
    let mut rng = seeded(SEED + 5);
    let mut contraction = 0usize;
    let mut distance = 0usize;
    let mut dyadic_mismatch = 0usize;
    let mut worst_rel = 0.0f64;
    for _ in 0..20 {
        let nvars = rng.random_range(1..=3);
        let dim = rng.random_range(1..=3);
        let f = random::operator_series(&mut rng, nvars, 3, dim, 6);
        let g = random::vector_series(&mut rng, nvars, 3, dim, 6);
        let trunc = TruncationParams::hilbert(nvars, 6, dim)?;
        let fg = op_vec_product(&f, &g, &trunc)?;
        let norm = h2_norm(&g);
        let w = g.max_weighted_degree() as i32;
        for &r in &radii {
            let gr = g.radial_dilate(r)?;
            if h2_norm(&gr) > norm * (1.0 + 1e-15) {
                contraction += 1;
            }
            if h2_norm(&g.sub(&gr)?) > (1.0 - r.powi(w)) * norm + 1e-15 {
                distance += 1;
            }
            let lhs = fg.radial_dilate(r)?;
            let rhs = op_vec_product(&f.radial_dilate(r)?, &gr, &trunc)?;
            let keys = |s: &VectorSeries| s.terms().map(|(a, _)| a.clone()).collect::<Vec<_>>();
            if keys(&lhs) != keys(&rhs) {
                dyadic_mismatch += 1;
                continue;
            }
            for (alpha, a) in lhs.terms() {
                let b = rhs.coefficient_or_zero(alpha);
                if r == 0.5 || r == 0.25 || r == 1.0 {
                    // powers of two scale without rounding
                    if *a != b {
                        dyadic_mismatch += 1;
                    }
                } else {
                    worst_rel = worst_rel.max(a.max_abs_diff(&b) / a.norm().max(f64::MIN_POSITIVE));
                }
            }
        }
    }
    Ok(Outcome::new(
        contraction + distance + dyadic_mismatch == 0 && worst_rel <= 1e-14,
        format!(
            "contraction failures {contraction}, distance-bound failures {distance}, \
             dyadic inexact {dyadic_mismatch}, other r max relative gap {worst_rel:.2e}"
        ),
    ))
}

fn criterion_6() -> Result<Outcome> {
    let mut notes = Vec::new();
    let mut pass = true;

    // 1 + z: the compression is the (D+1)x(D+1) lower bidiagonal Toeplitz matrix
    let one_plus_z = OperatorSeries::from_terms(
        1,
        [
            (MultiIndex::zero(), Operator::from_element(1, 1, c(1.0))),
            (MultiIndex::unit(0), Operator::from_element(1, 1, c(1.0))),
        ],
    )?;
    const D: u64 = 50;
    let base = TruncationParams::hilbert(1, 0, 1)?;
    let got = multiplier_norm_schedule(&one_plus_z, &[D], &base, TOL)?[0];
    let n = D as usize + 1;
    let bidiag = DMatrix::from_fn(
        n,
        n,
        |i, j| if i == j || i == j + 1 { c(1.0) } else { c(0.0) },
    );
    let svd = largest_singular_value(&bidiag);
    let closed = 2.0 * (PI / (2.0 * D as f64 + 3.0)).cos();
    pass &= (got - 2.0).abs() <= 1e-3 && (got - svd).abs() <= 1e-9 && (svd - closed).abs() <= 1e-12;
    notes.push(format!(
        "1+z at D=50: {got:.9} (|2 - x| = {:.2e}, SVD {svd:.9})",
        2.0 - got
    ));

    // A z_1
    let mut rng = seeded(SEED + 6);
    let a = random::operator(&mut rng, 3);
    let symbol = OperatorSeries::monomial(MultiIndex::unit(0), a.clone());
    let want = largest_singular_value(&a);
    let degrees: Vec<u64> = (1..=8).collect();
    let sched =
        multiplier_norm_schedule(&symbol, &degrees, &TruncationParams::hilbert(2, 0, 3)?, TOL)?;
    let worst = sched.iter().map(|v| (v - want).abs()).fold(0.0, f64::max);
    pass &= worst <= 1e-8;
    notes.push(format!("A z1 schedule max gap to ||A|| {worst:.2e}"));

    // monotone schedules
    let mut decreases = 0usize;
    for _ in 0..20 {
        let nvars = rng.random_range(1..=2);
        let dim = rng.random_range(1..=2);
        let f = random::operator_series(&mut rng, nvars, 2, dim, 4);
        let base = TruncationParams::hilbert(nvars, 0, dim)?;
        let sched = multiplier_norm_schedule(&f, &[0, 1, 2, 3, 4, 5], &base, TOL)?;
        decreases += sched
            .windows(2)
            .filter(|w| w[1] < w[0] * (1.0 - 1e-12))
            .count();
    }
    pass &= decreases == 0;
    notes.push(format!("decreasing steps over 20 schedules {decreases}"));
    Ok(Outcome::new(pass, notes.join("; ")))
}

fn criterion_7() -> Result<Outcome> {
    let mut rng = seeded(SEED + 7);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let nvars = rng.random_range(1..=2);
        let dim = rng.random_range(1..=3);
        let df = rng.random_range(0..=3);
        let dg = rng.random_range(0..=3);
        let f = random::operator_series(&mut rng, nvars, df, dim, 5);
        let g = random::vector_series(&mut rng, nvars, dg, dim, 5);
        let m = (f.degree().unwrap_or(0) + g.degree().unwrap_or(0)) as usize + 1;
        let grid = TorusGrid::torus(nvars, m)?;
        worst = worst.max(pointwise_vs_symbolic(&f, &g, &grid)?);
    }
    Ok(Outcome::new(
        worst <= 1e-10,
        format!("max residual {worst:.3e} (tol 1e-10)"),
    ))
}

fn criterion_8() -> Result<Outcome> {
    let mut rng = seeded(SEED + 8);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let w = random::unimodular(&mut rng, 16);
        let v = random::unimodular(&mut rng, 16);
        let got = operator_norm(&(diagonal_example(&w)? - diagonal_example(&v)?), TOL)?;
        let sup = w
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        worst = worst.max((got - sup).abs());
    }
    Ok(Outcome::new(
        worst <= 1e-12,
        format!("max |operator distance - sup distance| {worst:.3e} (tol 1e-12)"),
    ))
}

fn criterion_9() -> Result<Outcome> {
    let d = DirichletSeries::from_terms(
        1,
        [
            (2, Vector::from_element(1, c(3.0))),
            (3, Vector::from_element(1, c(5.0))),
        ],
    )?;
    let error = |r: f64| -> Result<f64> {
        let points = (20.0 * r).ceil() as usize + 1;
        Ok((d.recover_coefficient(2, 2.0, r, points)?[0] - c(3.0)).norm())
    };
    let radii = [100.0, 400.0, 1600.0];
    let errors = radii
        .iter()
        .map(|&r| error(r))
        .collect::<Result<Vec<_>>>()?;
    let ratios: Vec<f64> = errors.windows(2).map(|w| w[0] / w[1]).collect();
    let far = error(1e4)?;
    let pass = ratios.iter().all(|&q| q >= 1.8) && far <= 1e-2;
    Ok(Outcome::new(
        pass,
        format!(
            "errors at R=100,400,1600: {:.3e}, {:.3e}, {:.3e}; ratios {:.3}, {:.3} (need >= 1.8); error at R=1e4 {far:.3e}",
            errors[0], errors[1], errors[2], ratios[0], ratios[1]
        ),
    ))
}

fn criterion_10() -> Result<Outcome> {
    let mut rng: Rng64 = seeded(SEED + 10);
    let shifts: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let mut increases = 0usize;
    let mut identity = 0usize;
    let mut semigroup = 0.0f64;
    for _ in 0..20 {
        let d = random::vector_dirichlet(&mut rng, 64, 2);
        let sched = epsilon_schedule(&d, &shifts)?;
        increases += sched.windows(2).filter(|w| w[1].1 > w[0].1).count();
        if d.epsilon_shift(0.0)? != d {
            identity += 1;
        }
        for (a, b) in [(0.1, 0.2), (0.3, 0.4), (0.5, 0.5), (0.25, 0.75)] {
            let two = d.epsilon_shift(a)?.epsilon_shift(b)?;
            let one = d.epsilon_shift(a + b)?;
            for (n, v) in one.terms() {
                let oracle = d.coefficient_or_zero(n) * c((n as f64).powf(-(a + b)));
                let scale = v.norm().max(f64::MIN_POSITIVE);
                semigroup = semigroup
                    .max(two.coefficient_or_zero(n).max_abs_diff(v) / scale)
                    .max(oracle.max_abs_diff(v) / scale);
            }
        }
    }
    Ok(Outcome::new(
        increases == 0 && identity == 0 && semigroup <= 1e-15,
        format!("increasing steps {increases}, identity failures {identity}, semigroup relative gap {semigroup:.2e}"),
    ))
}

type Criterion = (usize, fn() -> Result<Outcome>, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, criterion_1, Some(Duration::from_secs(1))),
        (2, criterion_2, None),
        (3, criterion_3, Some(Duration::from_secs(10))),
        (4, criterion_4, None),
        (5, criterion_5, None),
        (6, criterion_6, Some(Duration::from_secs(30))),
        (7, criterion_7, None),
        (8, criterion_8, None),
        (9, criterion_9, Some(Duration::from_secs(10))),
        (10, criterion_10, None),
    ];
    let mut failed = 0;
    for (id, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run().unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed <= b);
        let pass = outcome.pass && in_time;
        let timing = match budget {
            Some(b) => format!("{:.3}s of {}s", elapsed.as_secs_f64(), b.as_secs()),
            None => format!("{:.3}s", elapsed.as_secs_f64()),
        };
        println!(
            "criterion {id}: {} ({timing}) {}",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
        if !pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
