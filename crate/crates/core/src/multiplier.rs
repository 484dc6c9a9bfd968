//! Multiplication operators `M_F : G -> F G` on truncated `H_2`.
//!
//! On coefficients of degree at most `D` in `N` variables, `M_F` followed by
//! truncation is a finite block matrix: the block at (row `alpha`, column
//! `gamma`) is `a_{alpha - gamma}` when the difference is a valid index. Rows
//! and columns are ordered graded-lex over the simplex with the coordinate
//! `1..d` innermost, so the degree-`D` matrix is the leading principal block
//! of the degree-`D + 1` matrix and the norms form a nondecreasing sequence.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::Serialize;

use crate::coefficient::{Operator, Vector};
use crate::dirichlet::DirichletSeries;
use crate::hardy::{coefficient_from_samples, hp_norm, torus_samples, TorusGrid};
use crate::multiindex::{simplex, MultiIndex};
use crate::random::{self, seeded};
use crate::series::{op_vec_product, OperatorSeries, TruncationParams, VectorSeries};
use crate::{Complex, Error, Result};

/// Relative residual target used by [`Coefficient::pointwise_norm`](crate::coefficient::Coefficient::pointwise_norm) for operators.
pub const DEFAULT_NORM_TOL: f64 = 1e-13;

pub const MAX_POWER_ITERATIONS: usize = 2_000_000;

const START_SEED: u64 = 0x5EED_B0A5;

/// Matrix of the truncated multiplication operator together with its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CompressionMatrix {
    basis: Vec<MultiIndex>,
    dim: usize,
    matrix: Operator,
}

impl CompressionMatrix {
    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    /// Coefficients of `g` on the basis, coordinates innermost.
    pub fn coefficients_of(&self, g: &VectorSeries) -> Result<Vector> {
        if g.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: g.dim(),
            });
        }
        let mut out = DVector::zeros(self.basis.len() * self.dim);
        for (slot, alpha) in self.basis.iter().enumerate() {
            if let Some(c) = g.coefficient(alpha) {
                out.rows_mut(slot * self.dim, self.dim).copy_from(c);
            }
        }
        Ok(out)
    }

    /// Series with the given basis coefficients.
    pub fn series_from(&self, coeffs: &Vector) -> Result<VectorSeries> {
        let mut s = VectorSeries::zero(self.dim);
        for (slot, alpha) in self.basis.iter().enumerate() {
            let c: Vector = coeffs.rows(slot * self.dim, self.dim).into_owned();
            s.add_term(alpha.clone(), &c)?;
        }
        Ok(s)
    }

    /// Matrix action on a series supported in the simplex.
    pub fn apply(&self, g: &VectorSeries) -> Result<VectorSeries> {
        let v = self.coefficients_of(g)?;
        self.series_from(&(&self.matrix * v))
    }

    pub fn norm(&self, tol: f64) -> Result<f64> {
        operator_norm(&self.matrix, tol)
    }
}

fn block_matrix<F>(basis_len: usize, dim: usize, mut block: F) -> Operator
where
    F: FnMut(usize, usize) -> Option<Operator>,
{
    let size = basis_len * dim;
    let mut m = DMatrix::zeros(size, size);
    for row in 0..basis_len {
        for col in 0..basis_len {
            if let Some(b) = block(row, col) {
                m.view_mut((row * dim, col * dim), (dim, dim)).copy_from(&b);
            }
        }
    }
    m
}

/// Matrix of `G -> truncate(F G)` on the degree-`trunc.max_degree` simplex.
pub fn assemble_compression(
    f: &OperatorSeries,
    trunc: &TruncationParams,
) -> Result<CompressionMatrix> {
    if trunc.dim != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: trunc.dim,
            found: f.dim(),
        });
    }
    let basis = simplex(trunc.nvars, trunc.max_degree);
    let matrix = block_matrix(basis.len(), f.dim(), |row, col| {
        let diff = basis[row].checked_sub(&basis[col])?;
        f.coefficient(&diff).cloned()
    });
    Ok(CompressionMatrix {
        basis,
        dim: f.dim(),
        matrix,
    })
}

/// The same compression written over frequencies: block `(m, n)` is
/// `a_{m/n}` when `n` divides `m`.
pub fn assemble_dirichlet_compression(
    d: &DirichletSeries<Operator>,
    frequencies: &[u64],
) -> Result<Operator> {
    if frequencies.contains(&0) {
        return Err(Error::InvalidFrequency(0));
    }
    Ok(block_matrix(frequencies.len(), d.dim(), |row, col| {
        let (m, n) = (frequencies[row], frequencies[col]);
        if m % n != 0 {
            return None;
        }
        d.coefficient(m / n).cloned()
    }))
}

/// Largest singular value of `m` by block power iteration on `G = m^* m`.
///
/// A fixed seeded block of `POWER_BLOCK` orthonormal vectors is multiplied by
/// `G` and re-orthonormalized each step; the Rayleigh-Ritz projection of `G`
/// onto the block gives the current estimate `theta` and its Ritz vector `u`.
/// Iteration stops once `||G u - theta u|| <= tol * theta`, so the singular
/// value is accurate to about `tol` relative. Singular values tied or nearly
/// tied with the top one are separated by the projection, which a single
/// vector cannot do.
pub fn operator_norm(m: &Operator, tol: f64) -> Result<f64> {
    operator_norm_with_cap(m, tol, MAX_POWER_ITERATIONS)
}

/// Width of the iterated block in [`operator_norm`].
pub const POWER_BLOCK: usize = 6;

pub fn operator_norm_with_cap(m: &Operator, tol: f64, max_iterations: usize) -> Result<f64> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    if !m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    if m.ncols() == 0 || m.nrows() == 0 || m.iter().all(|z| *z == Complex::new(0.0, 0.0)) {
        return Ok(0.0);
    }
    let n = m.ncols();
    let width = POWER_BLOCK.min(n);
    let mut rng = seeded(START_SEED);
    let start = DMatrix::from_fn(n, width, |_, _| random::complex(&mut rng));
    let mut q = start.qr().q();
    let adjoint = m.adjoint();
    let mut residual = f64::INFINITY;
    for _ in 0..max_iterations {
        let z = &adjoint * (m * &q);
        let projected = q.adjoint() * &z;
        // Hermitian up to rounding
        let projected = (&projected + projected.adjoint()) * Complex::new(0.5, 0.0);
        let eig = projected.symmetric_eigen();
        let top = eig.eigenvalues.imax();
        let theta = eig.eigenvalues[top];
        let y = eig.eigenvectors.column(top);
        let u = &q * y;
        residual = (&z * y - &u * Complex::new(theta, 0.0)).norm();
        if theta > 0.0 && residual <= tol * theta {
            return Ok(theta.sqrt());
        }
        q = z.qr().q();
    }
    Err(Error::NotConverged {
        iterations: max_iterations,
        residual,
    })
}

/// Compression norms at each degree in `degrees` (strictly increasing), with
/// `nvars` and `dim` taken from `base`.
pub fn multiplier_norm_schedule(
    f: &OperatorSeries,
    degrees: &[u64],
    base: &TruncationParams,
    tol: f64,
) -> Result<Vec<f64>> {
    check_increasing(degrees)?;
    degrees
        .iter()
        .map(|&deg| assemble_compression(f, &base.with_degree(deg))?.norm(tol))
        .collect()
}

/// The schedule computed on frequencies: the basis at degree `D` is the Bohr
/// image of the simplex, in the same order.
pub fn dirichlet_multiplier_norm_schedule(
    d: &DirichletSeries<Operator>,
    degrees: &[u64],
    base: &TruncationParams,
    tol: f64,
) -> Result<Vec<f64>> {
    check_increasing(degrees)?;
    degrees
        .iter()
        .map(|&deg| {
            let freqs = simplex(base.nvars, deg)
                .iter()
                .map(MultiIndex::to_frequency)
                .collect::<Result<Vec<_>>>()?;
            operator_norm(&assemble_dirichlet_compression(d, &freqs)?, tol)
        })
        .collect()
}

fn check_increasing(degrees: &[u64]) -> Result<()> {
    if degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "schedule degrees must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// The diagonal operator `diag(w_1, ..., w_d)` for `w` on the torus.
pub fn diagonal_example(w: &[Complex]) -> Result<Operator> {
    for (index, wj) in w.iter().enumerate() {
        let modulus = wj.norm();
        if modulus.is_nan() || (modulus - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnimodular { index, modulus });
        }
    }
    Ok(DMatrix::from_diagonal(&DVector::from_column_slice(w)))
}

/// One line of the diagonal-example table.
#[derive(Debug, Clone, Serialize)]
pub struct DiagonalDistance {
    pub operator_distance: f64,
    pub sup_distance: f64,
}

/// `||T_w - T_v||` next to `||w - v||_inf` for random pairs on `T^d`.
pub fn diagonal_distance_table(
    rng: &mut impl Rng,
    dim: usize,
    samples: usize,
    tol: f64,
) -> Result<Vec<DiagonalDistance>> {
    (0..samples)
        .map(|_| {
            let w = random::unimodular(rng, dim);
            let v = random::unimodular(rng, dim);
            let diff = diagonal_example(&w)? - diagonal_example(&v)?;
            let sup = w
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            Ok(DiagonalDistance {
                operator_distance: operator_norm(&diff, tol)?,
                sup_distance: sup,
            })
        })
        .collect()
}

/// Largest deviation between the grid Fourier coefficients of the pointwise
/// product `w -> F(w)(G(w))` and the symbolic product, over every index of
/// the product's degree simplex.
pub fn pointwise_vs_symbolic(
    f: &OperatorSeries,
    g: &VectorSeries,
    grid: &TorusGrid,
) -> Result<f64> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: g.dim(),
        });
    }
    if grid.radius != 1.0 {
        return Err(Error::InvalidGrid(format!(
            "comparison runs on the unit torus, grid radius is {}",
            grid.radius
        )));
    }
    let nvars = f.nvars().max(g.nvars());
    if nvars > grid.nvars {
        return Err(Error::InvalidGrid(format!(
            "grid has {} variables but the inputs use {nvars}",
            grid.nvars
        )));
    }
    let degree = f.degree().unwrap_or(0) + g.degree().unwrap_or(0);
    let needed = degree as usize + 1;
    if grid.points_per_var < needed {
        return Err(Error::InsufficientGrid {
            needed,
            got: grid.points_per_var,
        });
    }
    let trunc = TruncationParams::hilbert(grid.nvars.max(1), degree, f.dim())?;
    let symbolic = op_vec_product(f, g, &trunc)?;
    let samples = torus_samples(|w| f.eval_unchecked(w) * g.eval_unchecked(w), grid)?;
    let mut worst = 0.0f64;
    for alpha in simplex(grid.nvars, degree) {
        let numeric: Vector = coefficient_from_samples(&samples, f.dim(), &alpha, grid);
        let exact = symbolic.coefficient_or_zero(&alpha);
        worst = worst.max((numeric - exact).norm());
    }
    Ok(worst)
}

/// Lower-bound estimator of `||M_F||` on `H_p` for `p != 2`: the largest
/// ratio `||F G||_p / ||G||_p` over `samples` random polynomials `G` in the
/// simplex of `trunc`, with both norms taken by grid quadrature.
///
/// This is an estimator, not an exact compression norm.
pub fn hp_multiplier_estimate(
    f: &OperatorSeries,
    trunc: &TruncationParams,
    grid: &TorusGrid,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<f64> {
    let p = trunc.exponent;
    let product_trunc = trunc.with_degree(trunc.max_degree + f.degree().unwrap_or(0));
    let cells = crate::multiindex::simplex_len(trunc.nvars, trunc.max_degree);
    let mut best = 0.0f64;
    for _ in 0..samples {
        let g = random::vector_series(rng, trunc.nvars, trunc.max_degree, trunc.dim, cells);
        let denom = hp_norm(&g, p, grid)?;
        if denom == 0.0 {
            continue;
        }
        let num = hp_norm(&op_vec_product(f, &g, &product_trunc)?, p, grid)?;
        best = best.max(num / denom);
    }
    Ok(best)
}
