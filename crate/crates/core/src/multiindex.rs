//! Finitely supported multi-indices and the prime-power bijection.
//!
//! A [`MultiIndex`] is an eventually-null exponent sequence `(a1, a2, ...)`.
//! Variable `j` (0-based here, `z_{j+1}` in the usual notation) carries the
//! `j`-th prime, so the index maps to the frequency `n = p1^a1 * p2^a2 * ...`.
//! Under this map componentwise addition of indices becomes multiplication
//! of frequencies, which is what lets power-series products and Dirichlet
//! products be the same computation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use crate::{Error, Result};

pub mod primes;

/// Exponent sequence with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: impl Into<Vec<u32>>) -> Self {
        let mut exps = exponents.into();
        while exps.last() == Some(&0) {
            exps.pop();
        }
        MultiIndex(exps)
    }

    /// The zero index (the constant monomial).
    pub fn zero() -> Self {
        MultiIndex(Vec::new())
    }

    /// The index of the single variable `var` (0-based) to the first power.
    pub fn unit(var: usize) -> Self {
        let mut exps = vec![0; var + 1];
        exps[var] = 1;
        MultiIndex(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of variable `var`, zero beyond the stored length.
    pub fn get(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of leading variables needed to hold the support.
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&a| u64::from(a)).sum()
    }

    /// `sum_n n * a_n` with variables counted from 1; the exponent of `r` under
    /// the radial dilation `z_n -> r^n z_n`.
    pub fn weighted_degree(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &a)| (i as u64 + 1) * u64::from(a))
            .sum()
    }

    /// `self - other` when it stays non-negative in every coordinate.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut out = self.0.clone();
        for (slot, &b) in out.iter_mut().zip(&other.0) {
            *slot = slot.checked_sub(b)?;
        }
        Some(MultiIndex::new(out))
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Unique index with `n = prod p_i^{a_i}`.
    pub fn from_frequency(n: u64) -> Result<MultiIndex> {
        primes::with_global(|table| table.factor(n))
    }

    /// The frequency `prod p_i^{a_i}`; overflow of `u64` is an error.
    pub fn to_frequency(&self) -> Result<u64> {
        let overflow = || Error::FrequencyOverflow(self.to_string());
        let mut n: u64 = 1;
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let p = primes::nth_prime(i)?;
            let factor = p.checked_pow(a).ok_or_else(overflow)?;
            n = n.checked_mul(factor).ok_or_else(overflow)?;
        }
        Ok(n)
    }
}

/// Alias of [`MultiIndex::from_frequency`].
pub fn index_to_multiindex(n: u64) -> Result<MultiIndex> {
    MultiIndex::from_frequency(n)
}

/// Alias of [`MultiIndex::to_frequency`].
pub fn multiindex_to_index(alpha: &MultiIndex) -> Result<u64> {
    alpha.to_frequency()
}

/// Alias of [`MultiIndex::weighted_degree`].
pub fn weighted_degree(alpha: &MultiIndex) -> u64 {
    alpha.weighted_degree()
}

impl Add for &MultiIndex {
    type Output = MultiIndex;

    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        let (long, short) = if self.0.len() >= rhs.0.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.0.clone();
        for (slot, &b) in out.iter_mut().zip(&short.0) {
            *slot += b;
        }
        MultiIndex(out)
    }
}

impl Add for MultiIndex {
    type Output = MultiIndex;

    fn add(self, rhs: MultiIndex) -> MultiIndex {
        &self + &rhs
    }
}

// Graded lexicographic: total degree first, then the exponent sequences.
// Trimmed vectors compare like their zero-padded extensions.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| {
                Error::InvalidArgument(format!("multi-index `{s}` must be bracketed"))
            })?;
        if inner.trim().is_empty() {
            return Ok(MultiIndex::zero());
        }
        let exps = inner
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::InvalidArgument(format!("exponent `{}`: {e}", part.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MultiIndex::new(exps))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex::new(v)
    }
}

impl From<&[u32]> for MultiIndex {
    fn from(v: &[u32]) -> Self {
        MultiIndex::new(v.to_vec())
    }
}

/// All indices in `nvars` variables of total degree at most `max_degree`,
/// in graded-lexicographic order.
pub fn simplex(nvars: usize, max_degree: u64) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill_simplex(&mut current, 0, max_degree, &mut out);
    out.sort();
    out
}

fn fill_simplex(current: &mut Vec<u32>, var: usize, budget: u64, out: &mut Vec<MultiIndex>) {
    if var == current.len() {
        out.push(MultiIndex::new(current.clone()));
        return;
    }
    for a in 0..=budget {
        current[var] = a as u32;
        fill_simplex(current, var + 1, budget - a, out);
    }
    current[var] = 0;
}

/// `C(nvars + max_degree, nvars)`, the size of [`simplex`].
pub fn simplex_len(nvars: usize, max_degree: u64) -> usize {
    let n = nvars as u128;
    let d = max_degree as u128;
    let mut acc: u128 = 1;
    for k in 1..=n {
        acc = acc * (d + k) / k;
    }
    acc as usize
}
