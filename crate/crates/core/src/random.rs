//! Seeded generators for coefficients, sparse series and points.
//!
//! Everything takes an explicit RNG so that verification runs are
//! reproducible from their seed.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coefficient::{Operator, Vector};
use crate::dirichlet::DirichletSeries;
use crate::multiindex::{simplex, MultiIndex};
use crate::series::{OperatorSeries, PowerSeries, VectorSeries};
use crate::Complex;

pub type Rng64 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries with real and imaginary parts uniform in `[-1, 1)`.
pub fn complex(rng: &mut impl Rng) -> Complex {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn vector(rng: &mut impl Rng, dim: usize) -> Vector {
    DVector::from_fn(dim, |_, _| complex(rng))
}

pub fn operator(rng: &mut impl Rng, dim: usize) -> Operator {
    DMatrix::from_fn(dim, dim, |_, _| complex(rng))
}

/// Uniform point of the polydisk `|z_j| <= max_modulus`.
pub fn point(rng: &mut impl Rng, nvars: usize, max_modulus: f64) -> Vec<Complex> {
    (0..nvars)
        .map(|_| {
            let r = max_modulus * rng.random::<f64>().sqrt();
            Complex::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
        })
        .collect()
}

/// Point of the torus `|w_j| = 1`.
pub fn unimodular(rng: &mut impl Rng, len: usize) -> Vec<Complex> {
    (0..len)
        .map(|_| Complex::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU)))
        .collect()
}

fn support(rng: &mut impl Rng, nvars: usize, max_degree: u64, nterms: usize) -> Vec<MultiIndex> {
    let mut cells = simplex(nvars, max_degree);
    let keep = nterms.min(cells.len());
    // partial Fisher-Yates
    for i in 0..keep {
        let j = rng.random_range(i..cells.len());
        cells.swap(i, j);
    }
    cells.truncate(keep);
    cells
}

fn series_with<C, R: Rng>(
    rng: &mut R,
    nvars: usize,
    max_degree: u64,
    dim: usize,
    nterms: usize,
    mut coeff: impl FnMut(&mut R) -> C,
) -> PowerSeries<C>
where
    C: crate::coefficient::Coefficient,
{
    let alphas = support(rng, nvars, max_degree, nterms);
    let mut s = PowerSeries::zero(dim);
    for alpha in alphas {
        let c = coeff(rng);
        s.add_term(alpha, &c)
            .expect("generated coefficient is valid");
    }
    s
}

/// Sparse vector series with up to `nterms` terms inside the degree simplex.
pub fn vector_series(
    rng: &mut impl Rng,
    nvars: usize,
    max_degree: u64,
    dim: usize,
    nterms: usize,
) -> VectorSeries {
    series_with(rng, nvars, max_degree, dim, nterms, |r| vector(r, dim))
}

pub fn operator_series(
    rng: &mut impl Rng,
    nvars: usize,
    max_degree: u64,
    dim: usize,
    nterms: usize,
) -> OperatorSeries {
    series_with(rng, nvars, max_degree, dim, nterms, |r| operator(r, dim))
}

/// Dense vector Dirichlet series on frequencies `1..=max_frequency`.
pub fn vector_dirichlet(
    rng: &mut impl Rng,
    max_frequency: u64,
    dim: usize,
) -> DirichletSeries<Vector> {
    DirichletSeries::from_terms(dim, (1..=max_frequency).map(|n| (n, vector(rng, dim))))
        .expect("generated coefficient is valid")
}

pub fn operator_dirichlet(
    rng: &mut impl Rng,
    max_frequency: u64,
    dim: usize,
) -> DirichletSeries<Operator> {
    DirichletSeries::from_terms(dim, (1..=max_frequency).map(|n| (n, operator(rng, dim))))
        .expect("generated coefficient is valid")
}
