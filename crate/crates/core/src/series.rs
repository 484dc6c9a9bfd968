//! Sparse power series with vector or operator coefficients.
//!
//! Terms live in a `BTreeMap` keyed by [`MultiIndex`], so iteration follows
//! the graded-lexicographic order. Exact zeros are never stored; there is no
//! epsilon pruning.

use std::collections::BTreeMap;

use crate::coefficient::{validate, Coefficient, Operator, Vector};
use crate::multiindex::MultiIndex;
use crate::{Complex, Error, Result};

/// Truncation of the infinite-variable setting to something finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationParams {
    pub nvars: usize,
    pub max_degree: u64,
    pub dim: usize,
    /// Hardy exponent `p` in `[1, inf]`.
    pub exponent: f64,
}

impl TruncationParams {
    pub fn new(nvars: usize, max_degree: u64, dim: usize, exponent: f64) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::InvalidTruncation("nvars must be at least 1".into()));
        }
        if dim == 0 {
            return Err(Error::InvalidTruncation("dim must be at least 1".into()));
        }
        if exponent.is_nan() || exponent < 1.0 {
            return Err(Error::InvalidExponent(exponent));
        }
        Ok(TruncationParams {
            nvars,
            max_degree,
            dim,
            exponent,
        })
    }

    /// `p = 2`, the Hilbert-space case.
    pub fn hilbert(nvars: usize, max_degree: u64, dim: usize) -> Result<Self> {
        Self::new(nvars, max_degree, dim, 2.0)
    }

    pub fn with_degree(self, max_degree: u64) -> Self {
        TruncationParams { max_degree, ..self }
    }

    pub fn contains(&self, alpha: &MultiIndex) -> bool {
        alpha.nvars() <= self.nvars && alpha.total_degree() <= self.max_degree
    }
}

/// Finitely supported formal power series `sum_alpha c_alpha z^alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<C> {
    dim: usize,
    terms: BTreeMap<MultiIndex, C>,
}

pub type VectorSeries = PowerSeries<Vector>;
pub type OperatorSeries = PowerSeries<Operator>;

impl<C: Coefficient> PowerSeries<C> {
    pub fn zero(dim: usize) -> Self {
        PowerSeries {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// Build from terms; repeated indices are summed and exact zeros dropped.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, C)>,
    {
        let mut s = Self::zero(dim);
        for (alpha, c) in terms {
            s.add_term(alpha, &c)?;
        }
        Ok(s)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(MultiIndex::zero(), c)
    }

    pub fn monomial(alpha: MultiIndex, c: C) -> Self {
        let mut s = Self::zero(c.dim());
        s.accumulate(alpha, &c, Complex::new(1.0, 0.0));
        s
    }

    /// Add `c z^alpha` to the series.
    pub fn add_term(&mut self, alpha: MultiIndex, c: &C) -> Result<()> {
        validate(c, self.dim)?;
        self.accumulate(alpha, c, Complex::new(1.0, 0.0));
        Ok(())
    }

    pub(crate) fn accumulate(&mut self, alpha: MultiIndex, c: &C, scale: Complex) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                let value = c.scaled(scale);
                if !value.is_zero() {
                    v.insert(value);
                }
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_scaled(c, scale);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &MultiIndex) -> Option<&C> {
        self.terms.get(alpha)
    }

    /// Coefficient at `alpha`, zero when absent.
    pub fn coefficient_or_zero(&self, alpha: &MultiIndex) -> C {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| C::zero(self.dim))
    }

    /// Number of leading variables the support uses.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(MultiIndex::nvars).max().unwrap_or(0)
    }

    /// Largest total degree in the support; `None` for the zero series.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(MultiIndex::total_degree).max()
    }

    /// Largest exponent of a single variable over the support.
    pub fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|a| a.exponents().iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Largest weighted degree in the support (0 for the zero series).
    pub fn max_weighted_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(MultiIndex::weighted_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, Complex::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, Complex::new(-1.0, 0.0))
    }

    fn combine(&self, other: &Self, sign: Complex) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        for (alpha, c) in &other.terms {
            out.accumulate(alpha.clone(), c, sign);
        }
        Ok(out)
    }

    pub fn scaled(&self, c: Complex) -> Self {
        let mut out = Self::zero(self.dim);
        for (alpha, v) in &self.terms {
            out.accumulate(alpha.clone(), v, c);
        }
        out
    }

    /// `f_r(z) = f(r z1, r^2 z2, r^3 z3, ...)`: coefficient at `alpha` scaled
    /// by `r^{weighted_degree(alpha)}`.
    pub fn radial_dilate(&self, r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::InvalidRadius(r));
        }
        let mut out = Self::zero(self.dim);
        for (alpha, c) in &self.terms {
            let w = alpha.weighted_degree();
            let factor = r.powf(w as f64);
            out.accumulate(alpha.clone(), c, Complex::new(factor, 0.0));
        }
        Ok(out)
    }

    /// Drop terms outside the first `nvars` variables or above `max_degree`.
    pub fn truncate(&self, trunc: &TruncationParams) -> Self {
        PowerSeries {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| trunc.contains(a))
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// `sum c_alpha z^alpha` at a point of the open polydisk. Coordinates past
    /// the end of `z` are zero.
    pub fn evaluate(&self, z: &[Complex]) -> Result<C> {
        for (index, zj) in z.iter().enumerate() {
            let modulus = zj.norm();
            if modulus.is_nan() || modulus >= 1.0 {
                return Err(Error::OutsideDomain { index, modulus });
            }
        }
        Ok(self.eval_unchecked(z))
    }

    /// Evaluation on the closed polydisk, where the polytorus lives.
    pub fn evaluate_closed(&self, z: &[Complex]) -> Result<C> {
        for (index, zj) in z.iter().enumerate() {
            let modulus = zj.norm();
            if modulus.is_nan() || modulus > 1.0 + 1e-12 {
                return Err(Error::OutsideDomain { index, modulus });
            }
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: &[Complex]) -> C {
        let mut acc = C::zero(self.dim);
        for (alpha, c) in &self.terms {
            if let Some(m) = monomial_value(alpha, z) {
                acc.add_scaled(c, m);
            }
        }
        acc
    }
}

/// `z^alpha`, or `None` when a used variable lies beyond `z` (so the value is zero).
pub(crate) fn monomial_value(alpha: &MultiIndex, z: &[Complex]) -> Option<Complex> {
    let mut m = Complex::new(1.0, 0.0);
    for (j, &a) in alpha.exponents().iter().enumerate() {
        if a == 0 {
            continue;
        }
        let zj = *z.get(j)?;
        m *= zj.powu(a);
    }
    Some(m)
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `sum_alpha (sum_{beta + gamma = alpha} a_beta(b_gamma)) z^alpha`, keeping
/// only products inside `trunc`.
///
/// Terms of either factor outside `trunc` cannot contribute to a retained
/// product term and are skipped.
pub fn op_vec_product(
    f: &OperatorSeries,
    g: &VectorSeries,
    trunc: &TruncationParams,
) -> Result<VectorSeries> {
    check_dim(f.dim, g.dim)?;
    check_dim(trunc.dim, f.dim)?;
    let mut out = VectorSeries::zero(f.dim);
    let one = Complex::new(1.0, 0.0);
    for (beta, a) in f.terms() {
        if !trunc.contains(beta) {
            continue;
        }
        for (gamma, b) in g.terms() {
            if beta.total_degree() + gamma.total_degree() > trunc.max_degree {
                continue;
            }
            let alpha = beta + gamma;
            if alpha.nvars() > trunc.nvars {
                continue;
            }
            out.accumulate(alpha, &(a * b), one);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficient::{real_operator, real_vector};
    use crate::random::{self, seeded};

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from(v)
    }

    fn big_trunc(dim: usize) -> TruncationParams {
        TruncationParams::hilbert(8, 64, dim).unwrap()
    }

    #[test]
    fn constant_symbol_acts_on_every_coefficient() {
        let a = real_operator(&[&[1.0, 2.0], &[0.0, -1.0]]);
        let g = VectorSeries::from_terms(
            2,
            [
                (mi(&[]), real_vector(&[1.0, 1.0])),
                (mi(&[0, 2]), real_vector(&[0.5, -2.0])),
            ],
        )
        .unwrap();
        let prod = op_vec_product(&OperatorSeries::constant(a.clone()), &g, &big_trunc(2)).unwrap();
        assert_eq!(prod.len(), 2);
        for (alpha, b) in g.terms() {
            assert_eq!(prod.coefficient(alpha).unwrap(), &(&a * b));
        }
    }

    #[test]
    fn single_term_convolution() {
        let a = real_operator(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let b = real_vector(&[3.0, 4.0]);
        let f = OperatorSeries::monomial(MultiIndex::unit(0), a.clone());
        let g = VectorSeries::monomial(MultiIndex::unit(1), b.clone());
        let prod = op_vec_product(&f, &g, &big_trunc(2)).unwrap();
        assert_eq!(prod.len(), 1);
        assert_eq!(prod.coefficient(&mi(&[1, 1])).unwrap(), &(&a * &b));
    }

    #[test]
    fn product_rejects_dimension_mismatch() {
        let f = OperatorSeries::constant(real_operator(&[&[1.0]]));
        let g = VectorSeries::constant(real_vector(&[1.0, 2.0]));
        assert!(matches!(
            op_vec_product(&f, &g, &big_trunc(1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn product_matches_exhaustive_pair_enumeration() {
        let mut rng = seeded(11);
        let trunc = TruncationParams::hilbert(2, 2, 2).unwrap();
        for _ in 0..20 {
            let f = random::operator_series(&mut rng, 2, 2, 2, 4);
            let g = random::vector_series(&mut rng, 2, 2, 2, 4);
            let prod = op_vec_product(&f, &g, &trunc).unwrap();
            // oracle: dense loop over every (beta, gamma) in the simplex pair
            let cells = crate::multiindex::simplex(2, 2);
            for alpha in &cells {
                let mut expect = Vector::zeros(2);
                for beta in &cells {
                    for gamma in &cells {
                        if &(beta + gamma) == alpha {
                            expect += f.coefficient_or_zero(beta) * g.coefficient_or_zero(gamma);
                        }
                    }
                }
                let got = prod.coefficient_or_zero(alpha);
                assert!(got.max_abs_diff(&expect) < 1e-14, "{alpha}");
            }
            assert!(prod.terms().all(|(a, _)| trunc.contains(a)));
        }
    }

    #[test]
    fn dilation_examples() {
        let c = real_vector(&[1.0, -2.0]);
        let constant = VectorSeries::constant(c.clone());
        assert_eq!(constant.radial_dilate(0.3).unwrap(), constant);
        let s = VectorSeries::monomial(MultiIndex::unit(1), c.clone());
        let d = s.radial_dilate(0.5).unwrap();
        assert_eq!(
            d.coefficient(&MultiIndex::unit(1)).unwrap(),
            &(c * Complex::new(0.25, 0.0))
        );
        assert_eq!(s.radial_dilate(1.0).unwrap(), s);
        assert!(matches!(s.radial_dilate(0.0), Err(Error::InvalidRadius(_))));
        assert!(matches!(s.radial_dilate(1.5), Err(Error::InvalidRadius(_))));
        assert!(s.radial_dilate(f64::NAN).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let x = real_vector(&[2.0, -1.0]);
        let constant = VectorSeries::constant(x.clone());
        let z = [Complex::new(0.3, 0.2), Complex::new(-0.1, 0.0)];
        assert_eq!(constant.evaluate(&z).unwrap(), x);

        let lin = VectorSeries::monomial(MultiIndex::unit(0), x.clone());
        let v = lin.evaluate(&[Complex::new(0.5, 0.0)]).unwrap();
        assert!(v.max_abs_diff(&(&x * Complex::new(0.5, 0.0))) < 1e-15);

        // sum_{k<=3} x z^k at z = 1/2: (1 - 2^-4) / (1 - 1/2) = 1.875
        let geo = VectorSeries::from_terms(2, (0..=3).map(|k| (mi(&[k]), x.clone()))).unwrap();
        let v = geo.evaluate(&[Complex::new(0.5, 0.0)]).unwrap();
        assert!(v.max_abs_diff(&(&x * Complex::new(1.875, 0.0))) < 1e-15);

        assert!(matches!(
            lin.evaluate(&[Complex::new(1.0, 0.0)]),
            Err(Error::OutsideDomain { index: 0, .. })
        ));
        // padding: z shorter than the support means the missing coordinates are 0
        let z2 = VectorSeries::monomial(MultiIndex::unit(3), x.clone());
        assert!(z2.evaluate(&[Complex::new(0.5, 0.0)]).unwrap().is_zero());
    }

    #[test]
    fn truncation_examples() {
        let x = real_vector(&[1.0]);
        let y = real_vector(&[2.0]);
        let t = TruncationParams::hilbert(2, 2, 1).unwrap();
        let inside = VectorSeries::from_terms(1, [(mi(&[1, 1]), x.clone())]).unwrap();
        assert_eq!(inside.truncate(&t), inside);
        let far = VectorSeries::monomial(MultiIndex::unit(2), x.clone());
        assert!(far.truncate(&t).is_empty());
        let high = VectorSeries::from_terms(1, [(mi(&[]), x.clone()), (mi(&[3]), y)]).unwrap();
        assert_eq!(high.truncate(&t), VectorSeries::constant(x));
        let once = high.truncate(&t);
        assert_eq!(once.truncate(&t), once);
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let x = real_vector(&[1.0, 0.0]);
        let mut s = VectorSeries::monomial(mi(&[1]), x.clone());
        s.add_term(mi(&[1]), &(-&x)).unwrap();
        assert!(s.is_empty());
        s.add_term(mi(&[2]), &Vector::zeros(2)).unwrap();
        assert!(s.is_empty());
        let bad = real_vector(&[f64::INFINITY, 0.0]);
        assert!(matches!(s.add_term(mi(&[]), &bad), Err(Error::NonFinite)));
        assert!(matches!(
            s.add_term(mi(&[]), &real_vector(&[1.0])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn truncation_params_validate() {
        assert!(TruncationParams::new(0, 2, 1, 2.0).is_err());
        assert!(TruncationParams::new(1, 2, 0, 2.0).is_err());
        assert!(TruncationParams::new(1, 2, 1, 0.5).is_err());
        assert!(TruncationParams::new(1, 0, 1, f64::INFINITY).is_ok());
    }
}
