//! Dirichlet series `sum_n a_n n^{-s}` with vector or operator coefficients.
//!
//! [`bohr`] and [`bohr_inverse`] move between power series and Dirichlet
//! series through `n = p^alpha`; because that map turns index addition into
//! frequency multiplication, [`dirichlet_product`] is the image of
//! [`op_vec_product`](crate::series::op_vec_product).

use std::collections::BTreeMap;

use crate::coefficient::{validate, Coefficient, Operator, Vector};
use crate::multiindex::MultiIndex;
use crate::series::PowerSeries;
use crate::{Complex, Error, Result};

/// A point `s = sigma + i t` of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint {
    pub sigma: f64,
    pub t: f64,
}

impl HalfPlanePoint {
    pub fn new(sigma: f64, t: f64) -> Self {
        HalfPlanePoint { sigma, t }
    }

    pub fn real(sigma: f64) -> Self {
        HalfPlanePoint { sigma, t: 0.0 }
    }

    pub fn as_complex(self) -> Complex {
        Complex::new(self.sigma, self.t)
    }
}

/// `n^{-s} = exp(-s ln n)` with the real logarithm.
pub fn frequency_power(n: u64, s: Complex) -> Complex {
    (-s * (n as f64).ln()).exp()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSeries<C> {
    dim: usize,
    terms: BTreeMap<u64, C>,
}

impl<C: Coefficient> DirichletSeries<C> {
    pub fn zero(dim: usize) -> Self {
        DirichletSeries {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, C)>,
    {
        let mut d = Self::zero(dim);
        for (n, c) in terms {
            d.add_term(n, &c)?;
        }
        Ok(d)
    }

    /// `c n^{-s}`.
    pub fn single(n: u64, c: C) -> Result<Self> {
        let dim = c.dim();
        Self::from_terms(dim, [(n, c)])
    }

    pub fn add_term(&mut self, n: u64, c: &C) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidFrequency(0));
        }
        validate(c, self.dim)?;
        self.accumulate(n, c, Complex::new(1.0, 0.0));
        Ok(())
    }

    fn accumulate(&mut self, n: u64, c: &C, scale: Complex) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(n) {
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

    pub fn terms(&self) -> impl Iterator<Item = (u64, &C)> {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    pub fn coefficient(&self, n: u64) -> Option<&C> {
        self.terms.get(&n)
    }

    pub fn coefficient_or_zero(&self, n: u64) -> C {
        self.terms
            .get(&n)
            .cloned()
            .unwrap_or_else(|| C::zero(self.dim))
    }

    pub fn max_frequency(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let mut out = self.clone();
        for (&n, c) in &other.terms {
            out.accumulate(n, c, Complex::new(-1.0, 0.0));
        }
        Ok(out)
    }

    /// `sum a_n n^{-s}`.
    pub fn evaluate(&self, s: HalfPlanePoint) -> C {
        let s = s.as_complex();
        let mut acc = C::zero(self.dim);
        for (&n, c) in &self.terms {
            acc.add_scaled(c, frequency_power(n, s));
        }
        acc
    }

    /// `D_eps = sum a_n n^{-eps} n^{-s}`.
    pub fn epsilon_shift(&self, eps: f64) -> Result<Self> {
        if eps.is_nan() || eps < 0.0 {
            return Err(Error::InvalidShift(eps));
        }
        let mut out = Self::zero(self.dim);
        for (&n, c) in &self.terms {
            let factor = (n as f64).powf(-eps);
            out.accumulate(n, c, Complex::new(factor, 0.0));
        }
        Ok(out)
    }

    /// Trapezoid approximation of `(1/2R) int_{-R}^{R} D(sigma + it) n^{sigma + it} dt`,
    /// which tends to `a_n` as `R` grows.
    pub fn recover_coefficient(
        &self,
        n: u64,
        sigma: f64,
        half_width: f64,
        grid_points: usize,
    ) -> Result<C> {
        if n == 0 {
            return Err(Error::InvalidFrequency(0));
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "half-width R must be positive, got {half_width}"
            )));
        }
        if grid_points < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 quadrature points, got {grid_points}"
            )));
        }
        let h = 2.0 * half_width / (grid_points - 1) as f64;
        let ln_n = (n as f64).ln();
        // Integrand per term: a_m (n/m)^sigma e^{i t ln(n/m)}, assembled directly
        // so that large sigma does not overflow n^sigma.
        let weights: Vec<(f64, f64, &C)> = self
            .terms
            .iter()
            .map(|(&m, c)| {
                let log_ratio = ln_n - (m as f64).ln();
                ((sigma * log_ratio).exp(), log_ratio, c)
            })
            .collect();
        let mut acc = C::zero(self.dim);
        for k in 0..grid_points {
            let t = -half_width + k as f64 * h;
            let w = if k == 0 || k == grid_points - 1 {
                0.5
            } else {
                1.0
            };
            for &(amp, log_ratio, c) in &weights {
                let phase = Complex::from_polar(amp * w, t * log_ratio);
                acc.add_scaled(c, phase);
            }
        }
        Ok(acc.scaled(Complex::new(h / (2.0 * half_width), 0.0)))
    }
}

impl DirichletSeries<Vector> {
    /// `sqrt(sum ||a_n||^2)`, the `H_2` norm of the series.
    pub fn h2_norm(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .fold(0.0, |acc, x| acc + x)
            .sqrt()
    }
}

/// Norms of `D_eps` over a list of shifts. For finite series the supremum over
/// `eps > 0` is the value at `eps = 0`.
pub fn epsilon_schedule(d: &DirichletSeries<Vector>, shifts: &[f64]) -> Result<Vec<(f64, f64)>> {
    shifts
        .iter()
        .map(|&eps| Ok((eps, d.epsilon_shift(eps)?.h2_norm())))
        .collect()
}

/// Coefficient of `F` at `alpha` moved to frequency `p^alpha`.
pub fn bohr<C: Coefficient>(f: &PowerSeries<C>) -> Result<DirichletSeries<C>> {
    let mut out = DirichletSeries::zero(f.dim());
    for (alpha, c) in f.terms() {
        let n = alpha.to_frequency()?;
        out.terms.insert(n, c.clone());
    }
    Ok(out)
}

pub fn bohr_inverse<C: Coefficient>(d: &DirichletSeries<C>) -> Result<PowerSeries<C>> {
    let mut out = PowerSeries::zero(d.dim());
    for (&n, c) in &d.terms {
        let alpha = MultiIndex::from_frequency(n)?;
        out.accumulate(alpha, c, Complex::new(1.0, 0.0));
    }
    Ok(out)
}

/// `sum_n (sum_{k j = n} a_k(b_j)) n^{-s}` for `n <= max_frequency`.
pub fn dirichlet_product(
    d: &DirichletSeries<Operator>,
    e: &DirichletSeries<Vector>,
    max_frequency: u64,
) -> Result<DirichletSeries<Vector>> {
    if d.dim != e.dim {
        return Err(Error::DimensionMismatch {
            expected: d.dim,
            found: e.dim,
        });
    }
    let mut out = DirichletSeries::zero(d.dim);
    let one = Complex::new(1.0, 0.0);
    for (&k, a) in &d.terms {
        if k > max_frequency {
            break;
        }
        for (&j, b) in &e.terms {
            match k.checked_mul(j) {
                Some(n) if n <= max_frequency => out.accumulate(n, &(a * b), one),
                // frequencies ascend, so every later j overshoots too
                _ => break,
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficient::{real_operator, real_vector};
    use crate::random::{self, seeded};

    fn scalar(x: f64) -> Vector {
        real_vector(&[x])
    }

    #[test]
    fn bohr_examples() {
        let x = real_vector(&[1.0, 2.0]);
        let f = PowerSeries::monomial(MultiIndex::new(vec![2, 1]), x.clone());
        let d = bohr(&f).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.coefficient(12).unwrap(), &x);
        let c = bohr(&PowerSeries::constant(x.clone())).unwrap();
        assert_eq!(c.coefficient(1).unwrap(), &x);

        let six = DirichletSeries::single(6, x.clone()).unwrap();
        let back = bohr_inverse(&six).unwrap();
        assert_eq!(back.coefficient(&MultiIndex::new(vec![1, 1])).unwrap(), &x);
        let one = DirichletSeries::single(1, x.clone()).unwrap();
        assert_eq!(bohr_inverse(&one).unwrap(), PowerSeries::constant(x));
    }

    #[test]
    fn bohr_roundtrip_on_random_series() {
        let mut rng = seeded(3);
        for _ in 0..25 {
            let f = random::operator_series(&mut rng, 4, 3, 2, 6);
            let d = bohr(&f).unwrap();
            assert_eq!(d.len(), f.len());
            assert_eq!(bohr_inverse(&d).unwrap(), f);
        }
    }

    #[test]
    fn product_examples() {
        let a = real_operator(&[&[0.0, 1.0], &[2.0, 0.0]]);
        let b = real_vector(&[1.0, -1.0]);
        let d = DirichletSeries::single(2, a.clone()).unwrap();
        let e = DirichletSeries::single(3, b.clone()).unwrap();
        let p = dirichlet_product(&d, &e, 100).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coefficient(6).unwrap(), &(&a * &b));
        assert!(dirichlet_product(&d, &e, 5).unwrap().is_empty());

        let id = DirichletSeries::single(1, Operator::identity(2, 2)).unwrap();
        let mut rng = seeded(5);
        let e = random::vector_dirichlet(&mut rng, 10, 2);
        assert_eq!(dirichlet_product(&id, &e, 10).unwrap(), e);

        let wrong = DirichletSeries::single(1, real_vector(&[1.0])).unwrap();
        assert!(matches!(
            dirichlet_product(&id, &wrong, 10),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn product_coefficient_at_twelve_is_divisor_pair_sum() {
        let mut rng = seeded(9);
        let d = random::operator_dirichlet(&mut rng, 12, 2);
        let e = random::vector_dirichlet(&mut rng, 12, 2);
        let p = dirichlet_product(&d, &e, 12).unwrap();
        let mut expect = Vector::zeros(2);
        for (k, j) in [(1, 12), (2, 6), (3, 4), (4, 3), (6, 2), (12, 1)] {
            expect += d.coefficient_or_zero(k) * e.coefficient_or_zero(j);
        }
        assert!(p.coefficient_or_zero(12).max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn evaluation_examples() {
        let x = real_vector(&[1.5, -0.5]);
        let one = DirichletSeries::single(1, x.clone()).unwrap();
        assert_eq!(one.evaluate(HalfPlanePoint::new(0.3, 7.0)), x);
        let two = DirichletSeries::single(2, x.clone()).unwrap();
        let v = two.evaluate(HalfPlanePoint::real(1.0));
        assert!(v.max_abs_diff(&(&x * Complex::new(0.5, 0.0))) < 1e-15);
    }

    #[test]
    fn evaluation_of_products_factorizes() {
        let mut rng = seeded(21);
        let s = HalfPlanePoint::real(2.0);
        for _ in 0..10 {
            let d = random::operator_dirichlet(&mut rng, 8, 2);
            let e = random::vector_dirichlet(&mut rng, 8, 2);
            let p = dirichlet_product(&d, &e, 64).unwrap();
            let lhs = p.evaluate(s);
            let rhs = d.evaluate(s) * e.evaluate(s);
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn shift_examples() {
        let mut rng = seeded(2);
        let d = random::vector_dirichlet(&mut rng, 20, 2);
        assert_eq!(d.epsilon_shift(0.0).unwrap(), d);
        let a = real_vector(&[2.0, 4.0]);
        let four = DirichletSeries::single(4, a).unwrap();
        let shifted = four.epsilon_shift(0.5).unwrap();
        assert!(
            shifted
                .coefficient(4)
                .unwrap()
                .max_abs_diff(&real_vector(&[1.0, 2.0]))
                < 1e-15
        );
        assert!(matches!(d.epsilon_shift(-0.1), Err(Error::InvalidShift(_))));

        let sched = epsilon_schedule(&d, &[0.0, 0.25, 0.5, 1.0]).unwrap();
        assert!(sched.windows(2).all(|w| w[1].1 <= w[0].1));
        assert_eq!(sched[0].1, d.h2_norm());
    }

    #[test]
    fn shift_semigroup() {
        let mut rng = seeded(4);
        let d = random::vector_dirichlet(&mut rng, 30, 1);
        let twice = d.epsilon_shift(0.3).unwrap().epsilon_shift(0.45).unwrap();
        let once = d.epsilon_shift(0.75).unwrap();
        for (n, c) in once.terms() {
            let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(twice.coefficient(n).unwrap().max_abs_diff(c) <= 4.0 * f64::EPSILON * scale);
        }
    }

    #[test]
    fn recovery_of_constant_term_is_exact() {
        let x = real_vector(&[3.0, -1.0]);
        let d = DirichletSeries::single(1, x.clone()).unwrap();
        for r in [1.0, 37.5, 1e4] {
            let got = d.recover_coefficient(1, 2.0, r, 101).unwrap();
            assert!(got.max_abs_diff(&x) < 1e-13);
        }
    }

    fn two_term() -> DirichletSeries<Vector> {
        DirichletSeries::from_terms(1, [(2, scalar(3.0)), (3, scalar(5.0))]).unwrap()
    }

    #[test]
    fn recovery_matches_closed_form_cross_term() {
        // (1/2R) int e^{i c t} dt = sin(cR)/(cR) with c = ln(2/3)
        let d = two_term();
        let c = (2.0f64 / 3.0).ln();
        for r in [10.0, 100.0, 1000.0] {
            let got = d
                .recover_coefficient(2, 2.0, r, (200.0 * r) as usize + 1)
                .unwrap()[0];
            let expect = 3.0 + 5.0 * (4.0 / 9.0) * (c * r).sin() / (c * r);
            assert!((got - Complex::new(expect, 0.0)).norm() < 1e-5, "R = {r}");
        }
    }

    #[test]
    fn absent_frequency_recovers_to_zero() {
        let d = two_term();
        let small = d.recover_coefficient(5, 2.0, 100.0, 2001).unwrap()[0].norm();
        let large = d.recover_coefficient(5, 2.0, 1e4, 200_001).unwrap()[0].norm();
        assert!(large < 1e-2);
        assert!(large < small);
    }

    #[test]
    fn recovery_rejects_bad_arguments() {
        let d = two_term();
        assert!(d.recover_coefficient(2, 2.0, 0.0, 10).is_err());
        assert!(d.recover_coefficient(2, 2.0, -1.0, 10).is_err());
        assert!(d.recover_coefficient(2, 2.0, 1.0, 1).is_err());
        assert!(d.recover_coefficient(0, 2.0, 1.0, 10).is_err());
    }

    #[test]
    fn zero_frequency_rejected() {
        let mut d = DirichletSeries::<Vector>::zero(1);
        assert!(matches!(
            d.add_term(0, &scalar(1.0)),
            Err(Error::InvalidFrequency(0))
        ));
    }
}
