use crate::ArithError;

/// Default cap on the sieve allocation: 4 GiB, i.e. limits up to ~10^9.
pub const DEFAULT_MEMORY_BUDGET: u64 = 4 << 30;

/// Smallest-prime-factor table for 2..=limit.
///
/// `spf[m] = m` exactly when m is prime; the primes list is exactly those m
/// in ascending order. Immutable after construction and safe to share across
/// threads.
#[derive(Debug, Clone)]
pub struct SieveTable {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u64>,
}

impl SieveTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// All primes ≤ limit, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Ascending primes ≤ n (empty for n < 2; n may exceed the limit, in
    /// which case the full list is returned).
    pub fn primes_upto(&self, n: u64) -> &[u64] {
        let k = self.primes.partition_point(|&p| p <= n);
        &self.primes[..k]
    }

    /// Smallest prime factor of m, for 2 ≤ m ≤ limit.
    pub fn spf(&self, m: u64) -> Result<u64, ArithError> {
        if m < 2 || m > self.limit {
            return Err(ArithError::OutOfRange {
                n: m,
                limit: self.limit,
            });
        }
        Ok(self.spf_raw(m))
    }

    /// O(1) primality for 2 ≤ m ≤ limit.
    pub fn is_prime(&self, m: u64) -> Result<bool, ArithError> {
        Ok(self.spf(m)? == m)
    }

    /// Unchecked lookup; callers guarantee 2 ≤ m ≤ limit.
    pub(crate) fn spf_raw(&self, m: u64) -> u64 {
        self.spf[m as usize] as u64
    }
}

/// Exact factorization with primes strictly increasing and all α ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

pub fn build_sieve(limit: u64) -> Result<SieveTable, ArithError> {
    build_sieve_with_budget(limit, DEFAULT_MEMORY_BUDGET)
}

/// Linear-time smallest-prime-factor sieve: every composite p·i is written
/// exactly once, by its smallest prime factor p ≤ spf(i).
pub fn build_sieve_with_budget(limit: u64, budget_bytes: u64) -> Result<SieveTable, ArithError> {
    if limit < 2 {
        return Err(ArithError::TooSmall {
            what: "sieve limit",
            min: 2,
            got: limit,
        });
    }
    if limit > u32::MAX as u64 {
        return Err(ArithError::UnsupportedLimit(limit));
    }
    let required = (limit as u128 + 1) * std::mem::size_of::<u32>() as u128;
    if required > budget_bytes as u128 {
        return Err(ArithError::MemoryBudget {
            required,
            budget: budget_bytes,
        });
    }

    let n = limit as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<u64> = Vec::new();
    for i in 2..=n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            primes.push(i as u64);
        }
        let s = spf[i] as usize;
        for &p in &primes {
            let p = p as usize;
            if p > s {
                break;
            }
            let m = p * i;
            if m > n {
                break;
            }
            spf[m] = p as u32;
        }
    }
    Ok(SieveTable { limit, spf, primes })
}

/// Factorize 2 ≤ n ≤ limit by repeatedly dividing out the smallest prime
/// factor; O(log n) divisions per call.
pub fn factorize(n: u64, table: &SieveTable) -> Result<Factorization, ArithError> {
    if n < 2 || n > table.limit() {
        return Err(ArithError::OutOfRange {
            n,
            limit: table.limit(),
        });
    }
    let mut m = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    while m > 1 {
        let p = table.spf_raw(m);
        let mut alpha = 0u32;
        while m % p == 0 {
            m /= p;
            alpha += 1;
        }
        factors.push((p, alpha));
    }
    Ok(Factorization { n, factors })
}
