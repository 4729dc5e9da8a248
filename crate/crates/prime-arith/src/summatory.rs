use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;

use crate::{ArithError, SieveTable};

/// Which of the two exact routes produced a summatory value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    Decomposition,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Decomposition => "decomposed",
        })
    }
}

/// Exact B(x); no floating point anywhere on the computation path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummatoryResult {
    pub x: u64,
    pub value: u128,
    pub method: Method,
}

/// One row of the normalized-ratio table: ratio = 12·B(x)·ln(x)/(π²·x²).
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticRow {
    pub x: u64,
    pub b_value: u128,
    pub ratio: f64,
}

/// sopfr(n) = Σ α_p·p over n = Π p^α_p, with sopfr(1) = 0.
pub fn sopfr(n: u64, table: &SieveTable) -> Result<u64, ArithError> {
    if n == 0 {
        return Err(ArithError::TooSmall {
            what: "n",
            min: 1,
            got: 0,
        });
    }
    if n > table.limit() {
        return Err(ArithError::OutOfRange {
            n,
            limit: table.limit(),
        });
    }
    Ok(sopfr_raw(n, table))
}

/// Callers guarantee 1 ≤ n ≤ limit. Sum ≤ n, so plain u64 is safe.
fn sopfr_raw(n: u64, table: &SieveTable) -> u64 {
    let mut m = n;
    let mut total = 0u64;
    while m > 1 {
        let p = table.spf_raw(m);
        total += p;
        m /= p;
    }
    total
}

fn is_prime_trial(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// v_p(n!) = Σ_{k ≥ 1} ⌊n/p^k⌋; the power advances by checked
/// multiplication, so p^k can never wrap before exceeding n.
fn vp_core(p: u64, n: u64) -> u64 {
    let mut total = 0u64;
    let mut q = p;
    while q <= n {
        total += n / q;
        q = match q.checked_mul(p) {
            Some(next) => next,
            None => break,
        };
    }
    total
}

/// Valuation of n! at p. Primality of p is verified by trial division, so
/// any p is checkable, including p beyond every sieve limit.
pub fn vp_factorial(p: u64, n: u64) -> Result<u64, ArithError> {
    if n == 0 {
        return Err(ArithError::TooSmall {
            what: "n",
            min: 1,
            got: 0,
        });
    }
    if !is_prime_trial(p) {
        return Err(ArithError::NotPrime(p));
    }
    Ok(vp_core(p, n))
}

/// Same as [`vp_factorial`] but with the O(1) table primality check when p
/// is in range (trial division otherwise).
pub fn vp_factorial_sieved(p: u64, n: u64, table: &SieveTable) -> Result<u64, ArithError> {
    if n == 0 {
        return Err(ArithError::TooSmall {
            what: "n",
            min: 1,
            got: 0,
        });
    }
    let prime = if (2..=table.limit()).contains(&p) {
        table.spf_raw(p) == p
    } else {
        is_prime_trial(p)
    };
    if !prime {
        return Err(ArithError::NotPrime(p));
    }
    Ok(vp_core(p, n))
}

fn validate_x(x: u64, table: &SieveTable) -> Result<(), ArithError> {
    if x == 0 {
        return Err(ArithError::TooSmall {
            what: "x",
            min: 1,
            got: 0,
        });
    }
    if x > table.limit() {
        return Err(ArithError::OutOfRange {
            n: x,
            limit: table.limit(),
        });
    }
    Ok(())
}

/// B(x) by direct accumulation of sopfr(n) for n = 1..=x.
///
/// The range is split into fixed chunks whose partial sums are computed in
/// parallel and folded in chunk order; integer addition makes the result
/// identical to the sequential sum for any thread count.
pub fn summatory_direct(x: u64, table: &SieveTable) -> Result<SummatoryResult, ArithError> {
    validate_x(x, table)?;
    const CHUNK: u64 = 1 << 16;
    let starts: Vec<u64> = (1..=x).step_by(CHUNK as usize).collect();
    let partials: Result<Vec<u64>, ArithError> = starts
        .par_iter()
        .map(|&a| {
            let b = (a + CHUNK - 1).min(x);
            let mut s = 0u64;
            for n in a..=b {
                s = s
                    .checked_add(sopfr_raw(n, table))
                    .ok_or(ArithError::Overflow(x))?;
            }
            Ok(s)
        })
        .collect();
    let mut value = 0u128;
    for s in partials? {
        value = value
            .checked_add(s as u128)
            .ok_or(ArithError::Overflow(x))?;
    }
    Ok(SummatoryResult {
        x,
        value,
        method: Method::Direct,
    })
}

/// B(x) = Σ_{p ≤ x} p·v_p(x!): O(π(x)·log x) valuation steps, far cheaper
/// than the direct route for a single large x.
pub fn summatory_decomposed(x: u64, table: &SieveTable) -> Result<SummatoryResult, ArithError> {
    validate_x(x, table)?;
    let mut value = 0u128;
    for &p in table.primes_upto(x) {
        let term = (p as u128) * (vp_core(p, x) as u128);
        value = value.checked_add(term).ok_or(ArithError::Overflow(x))?;
    }
    Ok(SummatoryResult {
        x,
        value,
        method: Method::Decomposition,
    })
}

/// Prefix form of the direct route: returns B(0), B(1), …, B(x).
pub fn summatory_sweep_direct(x: u64, table: &SieveTable) -> Result<Vec<u128>, ArithError> {
    validate_x(x, table)?;
    let mut out = Vec::with_capacity(x as usize + 1);
    out.push(0u128);
    let mut acc = 0u128;
    for n in 1..=x {
        acc = acc
            .checked_add(sopfr_raw(n, table) as u128)
            .ok_or(ArithError::Overflow(n))?;
        out.push(acc);
    }
    Ok(out)
}

/// Prefix form of the decomposition route: B(0), B(1), …, B(x).
///
/// B(x) = Σ_{p^k ≤ x} p·⌊x/p^k⌋, and ⌊x/q⌋ counts the multiples of q up to
/// x, so adding p at every multiple of every prime power q = p^k and taking
/// prefix sums evaluates the valuation decomposition for all x at once.
/// No smallest-prime-factor lookup is involved; the routes share only the
/// primes list.
pub fn summatory_sweep_decomposed(x: u64, table: &SieveTable) -> Result<Vec<u128>, ArithError> {
    validate_x(x, table)?;
    let len = x as usize + 1;
    // add[m] ends up equal to sopfr(m) ≤ m ≤ x, so plain u64 adds cannot wrap.
    let mut add = vec![0u64; len];
    for &p in table.primes_upto(x) {
        let mut q = p;
        loop {
            let mut m = q as usize;
            while m < len {
                add[m] += p;
                m += q as usize;
            }
            q = match q.checked_mul(p) {
                Some(next) if next <= x => next,
                _ => break,
            };
        }
    }
    let mut out = Vec::with_capacity(len);
    out.push(0u128);
    let mut acc = 0u128;
    for n in 1..len {
        acc = acc
            .checked_add(add[n] as u128)
            .ok_or(ArithError::Overflow(n as u64))?;
        out.push(acc);
    }
    Ok(out)
}

/// Ratio rows in input order; B(x) exact via the decomposition route, with
/// natural log and a single floating division per row.
pub fn asymptotic_table(xs: &[u64], table: &SieveTable) -> Result<Vec<AsymptoticRow>, ArithError> {
    let mut rows = Vec::with_capacity(xs.len());
    for &x in xs {
        if x < 2 {
            return Err(ArithError::TooSmall {
                what: "x (the ratio needs log x > 0)",
                min: 2,
                got: x,
            });
        }
        let b_value = summatory_decomposed(x, table)?.value;
        let xf = x as f64;
        let ratio = (12.0 * b_value as f64 * xf.ln()) / (PI * PI * xf * xf);
        rows.push(AsymptoticRow { x, b_value, ratio });
    }
    Ok(rows)
}
