//! Coefficient spaces: vectors in `C^d` and operators in `B(C^d)`.

use std::fmt::Debug;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::multiplier::{operator_norm, DEFAULT_NORM_TOL};
use crate::{Complex, Error, Result};

pub type Vector = DVector<Complex>;
pub type Operator = DMatrix<Complex>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientKind {
    Vector,
    Operator,
}

impl CoefficientKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CoefficientKind::Vector => "vector",
            CoefficientKind::Operator => "operator",
        }
    }
}

/// A finite-dimensional coefficient space.
pub trait Coefficient: Clone + Debug + PartialEq + Send + Sync + 'static {
    const KIND: CoefficientKind;

    fn zero(dim: usize) -> Self;

    fn dim(&self) -> usize;

    /// Exact zero test; no tolerance.
    fn is_zero(&self) -> bool;

    fn is_finite(&self) -> bool;

    /// `self += c * other`.
    fn add_scaled(&mut self, other: &Self, c: Complex);

    fn scaled(&self, c: Complex) -> Self;

    /// Euclidean norm for vectors, largest singular value for operators.
    fn pointwise_norm(&self) -> Result<f64>;

    /// Largest entrywise modulus of `self - other`.
    fn max_abs_diff(&self, other: &Self) -> f64;

    /// Entries in row-major order.
    fn entries(&self) -> Vec<Complex>;
}

impl Coefficient for Vector {
    const KIND: CoefficientKind = CoefficientKind::Vector;

    fn zero(dim: usize) -> Self {
        DVector::zeros(dim)
    }

    fn dim(&self) -> usize {
        self.len()
    }

    fn is_zero(&self) -> bool {
        self.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    fn is_finite(&self) -> bool {
        self.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn add_scaled(&mut self, other: &Self, c: Complex) {
        self.axpy(c, other, Complex::new(1.0, 0.0));
    }

    fn scaled(&self, c: Complex) -> Self {
        self * c
    }

    fn pointwise_norm(&self) -> Result<f64> {
        Ok(self.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn entries(&self) -> Vec<Complex> {
        self.iter().copied().collect()
    }
}

impl Coefficient for Operator {
    const KIND: CoefficientKind = CoefficientKind::Operator;

    fn zero(dim: usize) -> Self {
        DMatrix::zeros(dim, dim)
    }

    fn dim(&self) -> usize {
        self.nrows()
    }

    fn is_zero(&self) -> bool {
        self.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    fn is_finite(&self) -> bool {
        self.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn add_scaled(&mut self, other: &Self, c: Complex) {
        for (a, b) in self.iter_mut().zip(other.iter()) {
            *a += c * b;
        }
    }

    fn scaled(&self, c: Complex) -> Self {
        self * c
    }

    fn pointwise_norm(&self) -> Result<f64> {
        operator_norm(self, DEFAULT_NORM_TOL)
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        self.iter()
            .zip(other.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn entries(&self) -> Vec<Complex> {
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                out.push(self[(i, j)]);
            }
        }
        out
    }
}

/// Check a coefficient against the series dimension and the finiteness invariant.
pub(crate) fn validate<C: Coefficient>(c: &C, dim: usize) -> Result<()> {
    if c.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: c.dim(),
        });
    }
    if !c.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// Vector from real entries; convenient in examples and tests.
pub fn real_vector(entries: &[f64]) -> Vector {
    DVector::from_iterator(entries.len(), entries.iter().map(|&x| Complex::new(x, 0.0)))
}

/// Operator from real rows.
pub fn real_operator(rows: &[&[f64]]) -> Operator {
    let n = rows.len();
    DMatrix::from_fn(n, n, |i, j| Complex::new(rows[i][j], 0.0))
}
