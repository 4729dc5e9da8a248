//! The sparse prime-frequency series F_n(t) = Σ_{p ≤ n} v_p(n!)·e^{ipt}:
//! one term per prime p ≤ n, with the factorial valuation v_p(n!) as
//! coefficient. Frequencies are integers, so F_n has period 2π and
//! Σ p·v_p(n!) ties the spectrum back to the summatory function B(n).
//!
//! Sampling conventions:
//!
//! * grids are half-open, ts[j] = 2πj/M for j = 0..M-1, so the uniform
//!   periodic quadrature rule has equal weights 2π/M;
//! * on grids every phase is reduced in exact integer arithmetic,
//!   p·t_j = 2π·((p·j) mod M)/M, keeping the samples at machine precision;
//! * off-grid evaluation reduces t once by rem_euclid(2π) before forming
//!   p·t, so large arguments cannot wash out the phase.
//!
//! The squared L² norm of F_n over one period equals 2π·Σ v_p(n!)² (cross
//! terms integrate to zero). For M ≥ 2·maxprime+1 the M-point rule
//! integrates |F_n|² exactly, which [`norm_check`] turns into a
//! machine-precision identity test rather than a tolerance test.

use std::f64::consts::TAU;

use num_complex::Complex64;
use prime_arith::{vp_factorial_sieved, ArithError, SieveTable};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },
    #[error("{samples} samples are below the exactness threshold of {required} (2·maxprime+1)")]
    BandwidthTooLow { samples: usize, required: usize },
}

/// The coefficient set of F_n: (p, v_p(n!)) for every prime p ≤ n,
/// ascending in p. Empty exactly when n = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSpectrum {
    n: u64,
    terms: Vec<(u64, u64)>,
}

impl PrimeSpectrum {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// (prime frequency, coefficient) pairs, primes strictly increasing.
    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }

    /// Σ c = F_n(0); also the triangle-inequality bound on |F_n|.
    pub fn coefficient_sum(&self) -> u64 {
        self.terms.iter().map(|&(_, c)| c).sum()
    }

    /// Σ p·c, which equals B(n).
    pub fn weighted_sum(&self) -> u128 {
        self.terms
            .iter()
            .map(|&(p, c)| p as u128 * c as u128)
            .sum()
    }

    pub fn max_prime(&self) -> Option<u64> {
        self.terms.last().map(|&(p, _)| p)
    }
}

/// Ordered samples of F_n on the half-open uniform grid [0, 2π).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    pub n: u64,
    pub ts: Vec<f64>,
    pub points: Vec<Complex64>,
}

impl SampledCurve {
    pub fn samples(&self) -> usize {
        self.points.len()
    }
}

/// Quadrature check of the squared-norm identity at sample count M.
#[derive(Debug, Clone, PartialEq)]
pub struct NormCheckReport {
    pub n: u64,
    pub samples: usize,
    /// 2π·Σ c², exact up to one rounding.
    pub analytic: f64,
    /// (2π/M)·Σ_j |F_n(2πj/M)|².
    pub quadrature: f64,
    pub abs_error: f64,
}

/// One term per prime p ≤ n with coefficient v_p(n!); n = 1 gives the
/// empty spectrum.
pub fn build_spectrum(n: u64, table: &SieveTable) -> Result<PrimeSpectrum, SeriesError> {
    if n == 0 {
        return Err(ArithError::TooSmall {
            what: "n",
            min: 1,
            got: 0,
        }
        .into());
    }
    if n > table.limit() {
        return Err(ArithError::OutOfRange {
            n,
            limit: table.limit(),
        }
        .into());
    }
    let mut terms = Vec::with_capacity(table.primes_upto(n).len());
    for &p in table.primes_upto(n) {
        terms.push((p, vp_factorial_sieved(p, n, table)?));
    }
    Ok(PrimeSpectrum { n, terms })
}

/// F_n(t) = Σ c·e^{ipt}, summed in ascending-p order in double precision.
pub fn evaluate(spectrum: &PrimeSpectrum, t: f64) -> Complex64 {
    let tr = t.rem_euclid(TAU);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(p, c) in &spectrum.terms {
        acc += c as f64 * Complex64::cis(p as f64 * tr);
    }
    acc
}

/// Grid values with exact integer phase reduction. Points are independent,
/// so parallel evaluation is bit-identical to sequential for any pool size;
/// within one point the term order is fixed (ascending p).
fn grid_points(spectrum: &PrimeSpectrum, m: usize) -> Vec<Complex64> {
    let roots: Vec<Complex64> = (0..m)
        .map(|r| Complex64::cis(TAU * r as f64 / m as f64))
        .collect();
    (0..m)
        .into_par_iter()
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(p, c) in &spectrum.terms {
                let r = ((p as u128 * j as u128) % m as u128) as usize;
                acc += c as f64 * roots[r];
            }
            acc
        })
        .collect()
}

/// Evaluate F_n on the half-open grid ts[j] = 2πj/M, j = 0..M-1.
pub fn sample_curve(spectrum: &PrimeSpectrum, samples: usize) -> Result<SampledCurve, SeriesError> {
    if samples < 2 {
        return Err(SeriesError::TooFewSamples {
            got: samples,
            min: 2,
        });
    }
    let ts = (0..samples)
        .map(|j| TAU * j as f64 / samples as f64)
        .collect();
    let points = grid_points(spectrum, samples);
    Ok(SampledCurve {
        n: spectrum.n,
        ts,
        points,
    })
}

/// Compare (2π/M)·Σ|F_n(t_j)|² with 2π·Σc².
///
/// Requires M ≥ 2·maxprime+1 for a non-empty spectrum: below that the rule
/// is not exact for |F_n|² and the report would not test the identity.
/// The quadrature sum runs sequentially in j, so the report is
/// bit-deterministic for any thread count.
pub fn norm_check(spectrum: &PrimeSpectrum, samples: usize) -> Result<NormCheckReport, SeriesError> {
    if samples < 2 {
        return Err(SeriesError::TooFewSamples {
            got: samples,
            min: 2,
        });
    }
    if let Some(maxp) = spectrum.max_prime() {
        let required = 2 * maxp as usize + 1;
        if samples < required {
            return Err(SeriesError::BandwidthTooLow { samples, required });
        }
    }
    let sum_sq: u128 = spectrum
        .terms
        .iter()
        .map(|&(_, c)| c as u128 * c as u128)
        .sum();
    let analytic = TAU * sum_sq as f64;
    let mut total = 0.0f64;
    for z in grid_points(spectrum, samples) {
        total += z.norm_sqr();
    }
    let quadrature = TAU / samples as f64 * total;
    Ok(NormCheckReport {
        n: spectrum.n,
        samples,
        analytic,
        quadrature,
        abs_error: (quadrature - analytic).abs(),
    })
}
