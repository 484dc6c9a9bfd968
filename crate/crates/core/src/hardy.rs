//! Hardy norms, Fourier coefficients on tensor grids of roots of unity, and
//! the Cole-Gamelin extremal kernels.
//!
//! Grid quadrature is exact for trigonometric polynomials once the number of
//! nodes per variable exceeds the frequency spread of the integrand: `M >= D + 1`
//! to extract coefficients of a degree-`D` polynomial, `M >= 2D + 1` for
//! `|F|^2` (the crate always uses the latter for `p = 2` checks).

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use crate::coefficient::{Coefficient, Vector};
use crate::multiindex::{simplex, MultiIndex};
use crate::series::{monomial_value, PowerSeries, VectorSeries};
use crate::{Complex, Error, Result};

/// `M` roots of unity per variable in `N` variables, all scaled by `radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorusGrid {
    pub nvars: usize,
    pub points_per_var: usize,
    pub radius: f64,
}

impl TorusGrid {
    pub fn new(nvars: usize, points_per_var: usize, radius: f64) -> Result<Self> {
        if points_per_var == 0 {
            return Err(Error::InvalidGrid(
                "points_per_var must be at least 1".into(),
            ));
        }
        if !(radius > 0.0 && radius <= 1.0) {
            return Err(Error::InvalidRadius(radius));
        }
        let nodes = (points_per_var as u128).checked_pow(nvars as u32);
        if nodes.is_none_or(|n| n > 1 << 26) {
            return Err(Error::InvalidGrid(format!(
                "{points_per_var}^{nvars} nodes is too many"
            )));
        }
        Ok(TorusGrid {
            nvars,
            points_per_var,
            radius,
        })
    }

    /// The unit torus grid.
    pub fn torus(nvars: usize, points_per_var: usize) -> Result<Self> {
        Self::new(nvars, points_per_var, 1.0)
    }

    pub fn len(&self) -> usize {
        self.points_per_var.pow(self.nvars as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn roots(&self) -> Vec<Complex> {
        let m = self.points_per_var as f64;
        (0..self.points_per_var)
            .map(|k| Complex::from_polar(self.radius, TAU * k as f64 / m))
            .collect()
    }

    /// Node `index` in mixed radix, first variable fastest.
    fn node(&self, roots: &[Complex], mut index: usize) -> Vec<Complex> {
        let m = self.points_per_var;
        (0..self.nvars)
            .map(|_| {
                let k = index % m;
                index /= m;
                roots[k]
            })
            .collect()
    }

    /// All grid nodes in a fixed order.
    pub fn nodes(&self) -> Vec<Vec<Complex>> {
        let roots = self.roots();
        (0..self.len()).map(|i| self.node(&roots, i)).collect()
    }

    /// `f` at every node, evaluated concurrently, returned in node order.
    pub fn sample<T, F>(&self, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&[Complex]) -> T + Sync,
    {
        let roots = self.roots();
        (0..self.len())
            .into_par_iter()
            .map(|i| f(&self.node(&roots, i)))
            .collect()
    }

    fn covers<C: Coefficient>(&self, f: &PowerSeries<C>) -> Result<()> {
        if f.nvars() > self.nvars {
            return Err(Error::InvalidGrid(format!(
                "grid has {} variables but the series uses {}",
                self.nvars,
                f.nvars()
            )));
        }
        Ok(())
    }
}

/// `sqrt(sum_alpha ||c_alpha||^2)`, exact for finitely supported series.
pub fn h2_norm(f: &VectorSeries) -> f64 {
    f.terms()
        .map(|(_, c)| c.iter().map(|z| z.norm_sqr()).sum::<f64>())
        .fold(0.0, |acc, x| acc + x)
        .sqrt()
}

/// Grid mean `((1/|grid|) sum ||F(node)||^p)^{1/p}`; `p = inf` gives the grid max.
pub fn hp_norm(f: &VectorSeries, p: f64, grid: &TorusGrid) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    grid.covers(f)?;
    let norms = grid.sample(|w| pointwise_euclidean(&f.eval_unchecked(w)));
    if p.is_infinite() {
        return Ok(norms.into_iter().fold(0.0, f64::max));
    }
    let mean = norms.iter().map(|v| v.powf(p)).sum::<f64>() / norms.len() as f64;
    Ok(mean.powf(1.0 / p))
}

fn pointwise_euclidean(v: &Vector) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Sup-norm estimate from a schedule of grids, with the per-grid values kept
/// as metadata. This is a lower bound for the supremum over the polydisk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HinfEstimate {
    pub value: f64,
    pub per_grid: Vec<(TorusGrid, f64)>,
}

/// Max over the schedule of the max over nodes of the pointwise norm
/// (Euclidean for vectors, largest singular value for operators).
pub fn hinf_norm<C: Coefficient>(
    f: &PowerSeries<C>,
    schedule: &[TorusGrid],
) -> Result<HinfEstimate> {
    if schedule.is_empty() {
        return Err(Error::InvalidGrid("empty grid schedule".into()));
    }
    let mut per_grid = Vec::with_capacity(schedule.len());
    let mut value = 0.0f64;
    for grid in schedule {
        grid.covers(f)?;
        let norms = grid.sample(|w| f.eval_unchecked(w).pointwise_norm());
        let mut best = 0.0f64;
        for n in norms {
            best = best.max(n?);
        }
        value = value.max(best);
        per_grid.push((*grid, best));
    }
    Ok(HinfEstimate { value, per_grid })
}

/// The standard refinement schedule: every `M` in `points` at every radius.
pub fn radial_schedule(nvars: usize, points: &[usize], radii: &[f64]) -> Result<Vec<TorusGrid>> {
    let mut out = Vec::new();
    for &r in radii {
        for &m in points {
            out.push(TorusGrid::new(nvars, m, r)?);
        }
    }
    Ok(out)
}

/// Discrete mean of `sampler(w) * conj(w)^alpha` over the unit-torus grid.
pub fn fourier_coefficient<C, S>(
    sampler: S,
    dim: usize,
    alpha: &MultiIndex,
    grid: &TorusGrid,
) -> Result<C>
where
    C: Coefficient,
    S: Fn(&[Complex]) -> C + Sync,
{
    let samples = torus_samples(sampler, grid)?;
    Ok(coefficient_from_samples(&samples, dim, alpha, grid))
}

pub(crate) fn torus_samples<C, S>(sampler: S, grid: &TorusGrid) -> Result<Vec<C>>
where
    C: Coefficient,
    S: Fn(&[Complex]) -> C + Sync,
{
    if grid.radius != 1.0 {
        return Err(Error::InvalidGrid(format!(
            "Fourier coefficients need the unit torus, grid radius is {}",
            grid.radius
        )));
    }
    Ok(grid.sample(sampler))
}

pub(crate) fn coefficient_from_samples<C: Coefficient>(
    samples: &[C],
    dim: usize,
    alpha: &MultiIndex,
    grid: &TorusGrid,
) -> C {
    let m = grid.points_per_var;
    // conj(w)^alpha at node k only depends on k_j * alpha_j mod M
    let twiddle: Vec<Complex> = (0..m)
        .map(|k| Complex::from_polar(1.0, -TAU * k as f64 / m as f64))
        .collect();
    let mut acc = C::zero(dim);
    for (index, sample) in samples.iter().enumerate() {
        let mut rest = index;
        let mut phase = Complex::new(1.0, 0.0);
        for j in 0..grid.nvars {
            let k = rest % m;
            rest /= m;
            let a = alpha.get(j) as usize;
            if a != 0 {
                phase *= twiddle[(k * (a % m)) % m];
            }
        }
        acc.add_scaled(sample, phase);
    }
    if alpha.nvars() > grid.nvars {
        // the grid cannot see variables it does not have
        return C::zero(dim);
    }
    acc.scaled(Complex::new(1.0 / samples.len() as f64, 0.0))
}

fn check_polydisk(z: &[Complex]) -> Result<()> {
    for (index, zj) in z.iter().enumerate() {
        let modulus = zj.norm();
        if modulus.is_nan() || modulus >= 1.0 {
            return Err(Error::OutsideDomain { index, modulus });
        }
    }
    Ok(())
}

/// `prod_j (1 - |z_j|^2)^{-1/p}`, the norm of point evaluation at `z` on `H_p`.
pub fn point_evaluation_bound(z: &[Complex], p: f64) -> Result<f64> {
    check_polydisk(z)?;
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    Ok(z.iter()
        .map(|zj| (1.0 - zj.norm_sqr()).powf(-1.0 / p))
        .product())
}

/// Degree-`degree` truncation of the `p = 2` extremal function
/// `x prod_j (1 - |z_j|^2)^{1/2} / (1 - conj(z_j) zeta_j)`, i.e.
/// `x prod_j (1 - |z_j|^2)^{1/2} sum_alpha conj(z)^alpha zeta^alpha`.
pub fn cole_gamelin_kernel(x: &Vector, z: &[Complex], degree: u64) -> Result<VectorSeries> {
    check_polydisk(z)?;
    let normalizer: f64 = z.iter().map(|zj| (1.0 - zj.norm_sqr()).sqrt()).product();
    let active: Vec<usize> = (0..z.len())
        .filter(|&j| z[j] != Complex::new(0.0, 0.0))
        .collect();
    let conj: Vec<Complex> = z.iter().map(|zj| zj.conj()).collect();
    let mut out = VectorSeries::zero(x.len());
    for cell in simplex(active.len(), degree) {
        let mut exps = vec![0u32; z.len()];
        for (slot, &j) in active.iter().enumerate() {
            exps[j] = cell.get(slot);
        }
        let alpha = MultiIndex::new(exps);
        let m = monomial_value(&alpha, &conj).expect("alpha lives inside z");
        out.accumulate(alpha, x, m * normalizer);
    }
    Ok(out)
}

/// Pointwise value of the general-`p` extremal function
/// `x prod_j (1 - |z_j|^2)^{1/p} (1 - conj(z_j) zeta_j)^{-2/p}` (principal branch).
pub fn cole_gamelin_value(x: &Vector, z: &[Complex], zeta: &[Complex], p: f64) -> Result<Vector> {
    check_polydisk(z)?;
    check_polydisk(zeta)?;
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let one = Complex::new(1.0, 0.0);
    let mut factor = one;
    for (j, zj) in z.iter().enumerate() {
        let zeta_j = zeta.get(j).copied().unwrap_or_default();
        let base = one - zj.conj() * zeta_j;
        factor *= (1.0 - zj.norm_sqr()).powf(1.0 / p) * base.powf(-2.0 / p);
    }
    Ok(x * factor)
}

/// Bound on `||x|| - ||truncated kernel||_2` relative to `||x||`.
///
/// The squared kernel coefficients form the product geometric law with ratios
/// `q_j = |z_j|^2`; total degree above `K` among `N'` active variables forces
/// some `alpha_j >= floor(K/N') + 1`, so the missing mass is at most
/// `sum_j q_j^{floor(K/N')+1}`, and `1 - sqrt(1 - t) <= t`.
pub fn cole_gamelin_tail_bound(z: &[Complex], degree: u64) -> f64 {
    let active: Vec<f64> = z
        .iter()
        .map(|zj| zj.norm_sqr())
        .filter(|&q| q > 0.0)
        .collect();
    if active.is_empty() {
        return 0.0;
    }
    let m = degree / active.len() as u64 + 1;
    active
        .iter()
        .map(|q| q.powf(m as f64))
        .sum::<f64>()
        .min(1.0)
}
