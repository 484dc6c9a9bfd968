//! Sieve-backed prime table, extended on demand.

use std::sync::{OnceLock, RwLock};

use super::MultiIndex;
use crate::{Error, Result};

/// Largest sieve bound the shared table will grow to.
pub const DEFAULT_SIEVE_LIMIT: u64 = 1 << 26;

const INITIAL_BOUND: u64 = 1 << 12;

/// Primes up to `bound`, in increasing order.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    bound: u64,
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// A table sieved up to `bound` that may grow up to `limit`.
    pub fn with_bound(bound: u64, limit: u64) -> Self {
        let bound = bound.max(2).min(limit.max(2));
        PrimeTable {
            bound,
            limit: limit.max(bound),
            primes: sieve(bound),
        }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Grow the sieve so it covers every integer up to `needed`.
    pub fn extend_to(&mut self, needed: u64) -> Result<()> {
        if needed <= self.bound {
            return Ok(());
        }
        if needed > self.limit {
            return Err(Error::PrimeBound {
                needed,
                limit: self.limit,
            });
        }
        let bound = needed.max(self.bound.saturating_mul(2)).min(self.limit);
        self.primes = sieve(bound);
        self.bound = bound;
        Ok(())
    }

    /// The `k`-th prime, 0-based (`nth(0) == 2`).
    pub fn nth(&mut self, k: usize) -> Result<u64> {
        while self.primes.len() <= k {
            let next = estimate_nth_prime(k).max(self.bound.saturating_mul(2));
            self.extend_to(next.min(self.limit))?;
            if self.bound == self.limit && self.primes.len() <= k {
                return Err(Error::PrimeBound {
                    needed: estimate_nth_prime(k),
                    limit: self.limit,
                });
            }
        }
        Ok(self.primes[k])
    }

    /// 0-based position of the prime `p`, or `None` if `p` is not prime.
    pub fn position(&mut self, p: u64) -> Result<Option<usize>> {
        self.extend_to(p)?;
        Ok(self.primes.binary_search(&p).ok())
    }

    /// Exponent sequence of `n` over the increasing primes.
    pub fn factor(&mut self, n: u64) -> Result<MultiIndex> {
        if n == 0 {
            return Err(Error::InvalidFrequency(0));
        }
        let mut rest = n;
        let mut exps: Vec<u32> = Vec::new();
        let mut k = 0usize;
        loop {
            if rest == 1 {
                break;
            }
            let p = self.nth(k)?;
            if p.saturating_mul(p) > rest {
                // `rest` is itself prime
                let pos = self
                    .position(rest)?
                    .expect("cofactor without small divisors is prime");
                if exps.len() <= pos {
                    exps.resize(pos + 1, 0);
                }
                exps[pos] += 1;
                break;
            }
            let mut e = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                if exps.len() <= k {
                    exps.resize(k + 1, 0);
                }
                exps[k] = e;
            }
            k += 1;
        }
        Ok(MultiIndex::new(exps))
    }
}

impl Default for PrimeTable {
    fn default() -> Self {
        PrimeTable::with_bound(INITIAL_BOUND, DEFAULT_SIEVE_LIMIT)
    }
}

fn global() -> &'static RwLock<PrimeTable> {
    static TABLE: OnceLock<RwLock<PrimeTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(PrimeTable::default()))
}

/// Run `f` against the shared table with exclusive access.
pub fn with_global<T>(f: impl FnOnce(&mut PrimeTable) -> Result<T>) -> Result<T> {
    let mut guard = global().write().unwrap_or_else(|e| e.into_inner());
    f(&mut guard)
}

/// The `k`-th prime (0-based) from the shared table.
pub fn nth_prime(k: usize) -> Result<u64> {
    {
        let guard = global().read().unwrap_or_else(|e| e.into_inner());
        if let Some(&p) = guard.primes.get(k) {
            return Ok(p);
        }
    }
    with_global(|t| t.nth(k))
}

/// Pre-extend the shared table to cover `bound`.
pub fn reserve(bound: u64) -> Result<()> {
    with_global(|t| t.extend_to(bound))
}

// Upper bound p_k < k (ln k + ln ln k) for k >= 6 (1-based k).
fn estimate_nth_prime(k: usize) -> u64 {
    let n = (k + 1) as f64;
    if n < 6.0 {
        return 16;
    }
    (n * (n.ln() + n.ln().ln())).ceil() as u64 + 16
}

fn sieve(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        let t = PrimeTable::with_bound(30, 100);
        assert_eq!(t.primes(), &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn table_grows_lazily() {
        let mut t = PrimeTable::with_bound(10, 1 << 20);
        assert_eq!(t.nth(999).unwrap(), 7919);
        assert!(t.bound() >= 7919);
        assert_eq!(t.position(7919).unwrap(), Some(999));
        assert_eq!(t.position(7917).unwrap(), None);
    }

    #[test]
    fn limit_is_enforced() {
        let mut t = PrimeTable::with_bound(10, 100);
        // 101 is prime and beyond the limit
        assert!(matches!(t.factor(101), Err(Error::PrimeBound { .. })));
        assert!(t.nth(40).is_err());
        assert_eq!(t.nth(24).unwrap(), 97);
    }

    #[test]
    fn large_prime_power_factor() {
        let mut t = PrimeTable::default();
        let a = t.factor(1 << 62).unwrap();
        assert_eq!(a.exponents(), &[62]);
        let b = t.factor(999_983 * 2).unwrap();
        assert_eq!(b.get(0), 1);
        assert_eq!(b.total_degree(), 2);
    }
}
