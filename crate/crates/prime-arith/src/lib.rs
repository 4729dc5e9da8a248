//! Exact integer arithmetic around the completely additive function
//! sopfr(n) = Σ α_p·p (sum of prime factors with multiplicity) and its
//! summatory function B(x) = Σ_{n ≤ x} sopfr(n).
//!
//! B is computed by two independent exact routes that serve as mutual
//! oracles:
//!
//! * direct: accumulate sopfr(n) for n = 1..x, each value read off a
//!   smallest-prime-factor table in O(log n) divisions;
//! * decomposition: B(x) = Σ_{p ≤ x} p·v_p(x!) with the factorial valuation
//!   v_p(x!) = Σ_{k ≥ 1} ⌊x/p^k⌋ (Legendre's formula).
//!
//! Both routes are integer-only; accumulators are overflow-checked and wide
//! enough for x = 10^9. [`asymptotic_table`] tabulates the normalized ratio
//! 12·B(x)·ln(x)/(π²·x²), which approaches 1 from above as x grows.

mod sieve;
mod summatory;

pub use sieve::{
    build_sieve, build_sieve_with_budget, factorize, Factorization, SieveTable,
    DEFAULT_MEMORY_BUDGET,
};
pub use summatory::{
    asymptotic_table, sopfr, summatory_decomposed, summatory_direct, summatory_sweep_decomposed,
    summatory_sweep_direct, vp_factorial, vp_factorial_sieved, AsymptoticRow, Method,
    SummatoryResult,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: u64,
        got: u64,
    },
    #[error("sieve table needs {required} bytes, over the {budget}-byte budget")]
    MemoryBudget { required: u128, budget: u64 },
    #[error("sieve limit {0} exceeds the supported maximum of 2^32 - 1")]
    UnsupportedLimit(u64),
    #[error("{n} is outside the sieve range 2..={limit}")]
    OutOfRange { n: u64, limit: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("summatory accumulator overflowed at x={0}")]
    Overflow(u64),
}
