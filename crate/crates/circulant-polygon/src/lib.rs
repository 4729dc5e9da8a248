//! Circulant matrices acting on N-vertex polygons represented as vectors in
//! ℂ^N, and their diagonalization in the discrete Fourier basis.
//!
//! Conventions, used consistently everywhere:
//!
//! * a circulant is given by its first row c_0..c_{N-1} and acts as the
//!   cyclic correlation (Cx)_j = Σ_m c_{(m-j) mod N}·x_m;
//! * ω = e^{2πi/N}; the k-th Fourier mode f_k has entries ω^{jk}/√N (unit
//!   norm), and under the convention above C f_k = λ_k f_k with
//!   λ_k = Σ_j c_j ω^{jk};
//! * a circulant is Hermitian iff c_0 is real and c_j = conj(c_{N-j}), in
//!   which case every λ_k is real up to rounding.
//!
//! [`eigenpolygon`] materializes a Fourier mode as a polygon, and
//! [`prime_polygon`] evaluates the prime-frequency series
//! Σ_{p ≤ n} v_p(n!)·ω^{jp} at the N-th roots of unity, i.e. the same
//! combination of Fourier modes with coefficients aggregated over the
//! residues p mod N.
//!
//! Eigenvalues and both application paths use direct O(N²) sums; all index
//! products are reduced mod N in integers before touching floating point.

use std::f64::consts::TAU;

use num_complex::Complex64;
use prime_arith::{vp_factorial_sieved, ArithError, SieveTable};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolygonError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("need at least {min} vertices, got {got}")]
    TooFewVertices { got: usize, min: usize },
    #[error("circulant has dimension {spec} but the polygon has {poly} vertices")]
    DimensionMismatch { spec: usize, poly: usize },
    #[error("mode {k} is out of range for dimension {n_dim}")]
    ModeOutOfRange { k: usize, n_dim: usize },
}

/// A polygon as a vector of N ≥ 3 complex vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon {
    vertices: Vec<Complex64>,
}

impl Polygon {
    pub fn new(vertices: Vec<Complex64>) -> Result<Self, PolygonError> {
        if vertices.len() < 3 {
            return Err(PolygonError::TooFewVertices {
                got: vertices.len(),
                min: 3,
            });
        }
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// (1/N)·Σ_j vertices_j, the 0-frequency component.
    pub fn centroid(&self) -> Complex64 {
        let sum: Complex64 = self.vertices.iter().sum();
        sum / self.vertices.len() as f64
    }
}

/// First row c_0..c_{N-1} of an N×N circulant, N ≥ 2.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantSpec {
    first_row: Vec<Complex64>,
}

impl CirculantSpec {
    pub fn new(first_row: Vec<Complex64>) -> Result<Self, PolygonError> {
        if first_row.len() < 2 {
            return Err(PolygonError::TooFewVertices {
                got: first_row.len(),
                min: 2,
            });
        }
        Ok(CirculantSpec { first_row })
    }

    pub fn n_dim(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[Complex64] {
        &self.first_row
    }
}

/// Eigenvalues λ_k = Σ_j c_j ω^{jk}; the k-th eigenvector is the Fourier
/// mode with entries ω^{jk}/√N and is never materialized here.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantEigen {
    pub eigenvalues: Vec<Complex64>,
}

fn unit_roots(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|r| Complex64::cis(TAU * r as f64 / n as f64))
        .collect()
}

/// Index roots[(a·b) mod n] without overflow on the product.
fn root_at(roots: &[Complex64], a: usize, b: usize) -> Complex64 {
    roots[((a as u128 * b as u128) % roots.len() as u128) as usize]
}

/// True iff c_0 is real and c_j = conj(c_{N-j}) for all j, each to within
/// tol in modulus.
pub fn check_hermitian(spec: &CirculantSpec, tol: f64) -> bool {
    let tol = tol.max(0.0);
    let c = &spec.first_row;
    let n = c.len();
    if c[0].im.abs() > tol {
        return false;
    }
    (1..n).all(|j| (c[j] - c[n - j].conj()).norm() <= tol)
}

pub fn eigendecompose(spec: &CirculantSpec) -> CirculantEigen {
    let n = spec.n_dim();
    let roots = unit_roots(n);
    let eigenvalues = (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &cj) in spec.first_row.iter().enumerate() {
                acc += cj * root_at(&roots, j, k);
            }
            acc
        })
        .collect();
    CirculantEigen { eigenvalues }
}

fn check_dims(spec: &CirculantSpec, poly: &Polygon) -> Result<(), PolygonError> {
    if spec.n_dim() != poly.vertex_count() {
        return Err(PolygonError::DimensionMismatch {
            spec: spec.n_dim(),
            poly: poly.vertex_count(),
        });
    }
    Ok(())
}

/// Direct cyclic correlation: (Cx)_j = Σ_m c_{(m-j) mod N}·x_m.
pub fn apply_circulant(spec: &CirculantSpec, poly: &Polygon) -> Result<Polygon, PolygonError> {
    check_dims(spec, poly)?;
    let n = spec.n_dim();
    let c = &spec.first_row;
    let x = poly.vertices();
    let vertices = (0..n)
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, &xm) in x.iter().enumerate() {
                acc += c[(m + n - j) % n] * xm;
            }
            acc
        })
        .collect();
    Polygon::new(vertices)
}

/// Transform-domain application: forward DFT, multiply by the eigenvalues,
/// inverse DFT. Agrees with [`apply_circulant`] up to rounding and serves
/// as its cross-check.
pub fn apply_circulant_spectral(
    spec: &CirculantSpec,
    poly: &Polygon,
) -> Result<Polygon, PolygonError> {
    check_dims(spec, poly)?;
    let n = spec.n_dim();
    let roots = unit_roots(n);
    let lambda = eigendecompose(spec).eigenvalues;
    let x = poly.vertices();
    // X_k = Σ_m x_m ω^{-mk}
    let xhat: Vec<Complex64> = (0..n)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, &xm) in x.iter().enumerate() {
                acc += xm * root_at(&roots, m, k).conj();
            }
            acc
        })
        .collect();
    // y_j = (1/N)·Σ_k λ_k X_k ω^{jk}
    let vertices = (0..n)
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                acc += lambda[k] * xhat[k] * root_at(&roots, j, k);
            }
            acc / n as f64
        })
        .collect();
    Polygon::new(vertices)
}

/// The k-th discrete Fourier polygon: vertices ω^{jk}/√N, unit norm in ℂ^N.
pub fn eigenpolygon(n_dim: usize, k: usize) -> Result<Polygon, PolygonError> {
    if n_dim < 3 {
        return Err(PolygonError::TooFewVertices {
            got: n_dim,
            min: 3,
        });
    }
    if k >= n_dim {
        return Err(PolygonError::ModeOutOfRange { k, n_dim });
    }
    let roots = unit_roots(n_dim);
    let scale = 1.0 / (n_dim as f64).sqrt();
    let vertices = (0..n_dim).map(|j| scale * root_at(&roots, j, k)).collect();
    Polygon::new(vertices)
}

/// The prime-coefficient polygon: vertices_j = Σ_{p ≤ n} v_p(n!)·ω^{jp},
/// i.e. the prime-frequency series sampled at the N-th roots of unity.
/// Phases reduce to (j·(p mod N)) mod N exactly, and terms are summed in
/// ascending-p order.
pub fn prime_polygon(n: u64, n_dim: usize, table: &SieveTable) -> Result<Polygon, PolygonError> {
    if n_dim < 3 {
        return Err(PolygonError::TooFewVertices {
            got: n_dim,
            min: 3,
        });
    }
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
    let mut terms: Vec<(usize, f64)> = Vec::new();
    for &p in table.primes_upto(n) {
        let c = vp_factorial_sieved(p, n, table)?;
        terms.push(((p % n_dim as u64) as usize, c as f64));
    }
    let roots = unit_roots(n_dim);
    let vertices = (0..n_dim)
        .map(|j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(r, c) in &terms {
                acc += c * root_at(&roots, r, j);
            }
            acc
        })
        .collect();
    Polygon::new(vertices)
}
