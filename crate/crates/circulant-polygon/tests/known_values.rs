//! Known-value tests: Hermitian symmetry checks, eigenvalues of small
//! circulants against closed forms (2cos identities), the eigen-equation
//! examples, Fourier-mode polygons at fourth and third roots of unity, and
//! the prime-coefficient polygon by direct substitution.

use std::f64::consts::TAU;

use circulant_polygon::{
    apply_circulant, apply_circulant_spectral, check_hermitian, eigendecompose, eigenpolygon,
    prime_polygon, CirculantSpec, Polygon, PolygonError,
};
use num_complex::Complex64;
use prime_arith::build_sieve;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12
}

#[test]
fn hermitian_check_known_rows() {
    let identity = CirculantSpec::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
        .unwrap();
    assert!(check_hermitian(&identity, 0.0));

    let neighbors = CirculantSpec::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
        .unwrap();
    assert!(check_hermitian(&neighbors, 0.0));

    let skew = CirculantSpec::new(vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)]).unwrap();
    assert!(!check_hermitian(&skew, 0.0));

    // A perturbation below tol passes, above tol fails.
    let almost = CirculantSpec::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 1e-12)])
        .unwrap();
    assert!(!check_hermitian(&almost, 0.0));
    assert!(check_hermitian(&almost, 1e-9));
}

#[test]
fn spec_needs_two_entries() {
    assert!(matches!(
        CirculantSpec::new(vec![c(1.0, 0.0)]),
        Err(PolygonError::TooFewVertices { got: 1, min: 2 })
    ));
}

#[test]
fn eigenvalues_of_known_circulants() {
    let identity = CirculantSpec::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
        .unwrap();
    for lambda in eigendecompose(&identity).eigenvalues {
        assert!(close(lambda, c(1.0, 0.0)));
    }

    // λ_k = ω^k + ω^{3k} = 2cos(πk/2).
    let neighbors = CirculantSpec::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
        .unwrap();
    let eig = eigendecompose(&neighbors).eigenvalues;
    let expected = [c(2.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0), c(0.0, 0.0)];
    for (got, want) in eig.iter().zip(expected) {
        assert!(close(*got, want), "{got} vs {want}");
    }

    // λ_k = 2cos(2πk/3).
    let ring = CirculantSpec::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    let eig = eigendecompose(&ring).eigenvalues;
    let expected = [c(2.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)];
    for (got, want) in eig.iter().zip(expected) {
        assert!(close(*got, want), "{got} vs {want}");
    }
}

#[test]
fn apply_known_circulants() {
    let identity = CirculantSpec::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
        .unwrap();
    let poly = Polygon::new(vec![c(1.0, 2.0), c(-3.0, 0.0), c(0.0, 4.0), c(0.5, -0.5)]).unwrap();
    let out = apply_circulant(&identity, &poly).unwrap();
    for (got, want) in out.vertices().iter().zip(poly.vertices()) {
        assert!(close(*got, *want));
    }

    // Neighbor sums of the square (1, i, -1, -i) are antipodal pairs: zero.
    let neighbors = CirculantSpec::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
        .unwrap();
    let square = Polygon::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]).unwrap();
    let out = apply_circulant(&neighbors, &square).unwrap();
    for v in out.vertices() {
        assert!(v.norm() <= 1e-12);
    }

    // Row sums on the constant polygon.
    let ring = CirculantSpec::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    let ones = Polygon::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    let out = apply_circulant(&ring, &ones).unwrap();
    for v in out.vertices() {
        assert!(close(*v, c(2.0, 0.0)));
    }
}

#[test]
fn apply_requires_matching_dimensions() {
    let spec = CirculantSpec::new(vec![c(1.0, 0.0); 4]).unwrap();
    let poly = Polygon::new(vec![c(1.0, 0.0); 3]).unwrap();
    assert!(matches!(
        apply_circulant(&spec, &poly),
        Err(PolygonError::DimensionMismatch { spec: 4, poly: 3 })
    ));
    assert!(matches!(
        apply_circulant_spectral(&spec, &poly),
        Err(PolygonError::DimensionMismatch { .. })
    ));
}

#[test]
fn spectral_application_matches_spatial_on_known_cases() {
    let neighbors = CirculantSpec::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
        .unwrap();
    let poly = Polygon::new(vec![c(1.0, 2.0), c(-3.0, 0.0), c(0.0, 4.0), c(0.5, -0.5)]).unwrap();
    let spatial = apply_circulant(&neighbors, &poly).unwrap();
    let spectral = apply_circulant_spectral(&neighbors, &poly).unwrap();
    for (a, b) in spatial.vertices().iter().zip(spectral.vertices()) {
        assert!((a - b).norm() <= 1e-10);
    }
}

#[test]
fn eigenpolygon_known_modes() {
    // Constant mode: 1/√4.
    let p = eigenpolygon(4, 0).unwrap();
    for v in p.vertices() {
        assert!(close(*v, c(0.5, 0.0)));
    }

    // Fourth roots of unity over 2.
    let p = eigenpolygon(4, 1).unwrap();
    let expected = [c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)];
    for (got, want) in p.vertices().iter().zip(expected) {
        assert!(close(*got, want));
    }

    // (1, ω², ω⁴)/√3 with ω = e^{2πi/3}.
    let p = eigenpolygon(3, 2).unwrap();
    let w = Complex64::cis(TAU / 3.0);
    let s = 1.0 / 3f64.sqrt();
    let expected = [s * c(1.0, 0.0), s * w * w, s * w];
    for (got, want) in p.vertices().iter().zip(expected) {
        assert!(close(*got, want));
    }

    // Unit norm in C^N.
    for (n, k) in [(3, 1), (5, 2), (8, 7), (12, 0)] {
        let p = eigenpolygon(n, k).unwrap();
        let norm_sq: f64 = p.vertices().iter().map(|v| v.norm_sqr()).sum();
        assert!((norm_sq - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn eigenpolygon_rejects_bad_arguments() {
    assert!(matches!(
        eigenpolygon(4, 4),
        Err(PolygonError::ModeOutOfRange { k: 4, n_dim: 4 })
    ));
    assert!(matches!(
        eigenpolygon(2, 0),
        Err(PolygonError::TooFewVertices { got: 2, min: 3 })
    ));
}

#[test]
fn prime_polygon_known_values() {
    let table = build_sieve(2_000).unwrap();

    // Empty spectrum: the zero polygon.
    let p = prime_polygon(1, 5, &table).unwrap();
    assert_eq!(p.vertices().len(), 5);
    for v in p.vertices() {
        assert_eq!(*v, c(0.0, 0.0));
    }

    // vertices_j = ω^{2j} + ω^{3j}, ω = i: (2, -1-i, 0, -1+i).
    let p = prime_polygon(3, 4, &table).unwrap();
    let expected = [c(2.0, 0.0), c(-1.0, -1.0), c(0.0, 0.0), c(-1.0, 1.0)];
    for (got, want) in p.vertices().iter().zip(expected) {
        assert!(close(*got, want), "{got} vs {want}");
    }

    // No prime ≤ 10 is divisible by 16, so the 0-frequency mass vanishes.
    let p = prime_polygon(10, 16, &table).unwrap();
    assert!(p.centroid().norm() <= 1e-12 * 15.0);
}

#[test]
fn prime_polygon_rejects_bad_arguments() {
    let table = build_sieve(100).unwrap();
    assert!(matches!(
        prime_polygon(10, 2, &table),
        Err(PolygonError::TooFewVertices { .. })
    ));
    assert!(prime_polygon(0, 4, &table).is_err());
    assert!(prime_polygon(101, 4, &table).is_err());
}

#[test]
fn polygon_needs_three_vertices() {
    assert!(matches!(
        Polygon::new(vec![c(0.0, 0.0), c(1.0, 0.0)]),
        Err(PolygonError::TooFewVertices { got: 2, min: 3 })
    ));
}
