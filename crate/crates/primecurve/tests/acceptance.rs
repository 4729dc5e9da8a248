//! Acceptance gate: one test per release criterion, each printing a
//! `criterion N PASS` line (visible with `--nocapture`). Tolerances are
//! stated inline; a criterion that cannot be met must fail here.

use std::process::Command;
use std::sync::OnceLock;

use num_complex::Complex64;
use prime_arith::{build_sieve, SieveTable};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_primecurve");

fn big_table() -> &'static SieveTable {
    static TABLE: OnceLock<SieveTable> = OnceLock::new();
    TABLE.get_or_init(|| build_sieve(10_000_000).expect("sieve to 10^7"))
}

/// Independent oracle: trial division, no shared code with the library.
fn oracle_sopfr(mut n: u64) -> u64 {
    let mut s = 0;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            s += p;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        s += n;
    }
    s
}

#[test]
fn criterion_1_summatory_routes_agree() {
    let table = big_table();
    let x_full = 1_000_000u64;
    let direct = prime_arith::summatory_sweep_direct(x_full, table).unwrap();
    let decomposed = prime_arith::summatory_sweep_decomposed(x_full, table).unwrap();
    assert_eq!(direct.len(), decomposed.len());
    for x in 0..=x_full as usize {
        assert_eq!(direct[x], decomposed[x], "B({x}) differs between routes");
    }
    let spot = 10_000_000u64;
    let d = prime_arith::summatory_direct(spot, table).unwrap();
    let e = prime_arith::summatory_decomposed(spot, table).unwrap();
    assert_eq!(d.value, e.value, "B(10^7) differs between routes");
    println!(
        "criterion 1 PASS: both routes agree exactly for all x <= 10^6 and at x = 10^7 \
         (B(10^7) = {})",
        d.value
    );
}

#[test]
fn criterion_2_small_value_oracle() {
    let table = big_table();
    for n in 1..=10_000u64 {
        assert_eq!(
            prime_arith::sopfr(n, table).unwrap(),
            oracle_sopfr(n),
            "sopfr({n})"
        );
    }
    let brute = |x: u64| -> u64 { (1..=x).map(oracle_sopfr).sum() };
    assert_eq!(brute(6), 19);
    assert_eq!(brute(10), 45);
    assert_eq!(prime_arith::summatory_direct(6, table).unwrap().value, 19);
    assert_eq!(prime_arith::summatory_decomposed(10, table).unwrap().value, 45);
    println!(
        "criterion 2 PASS: sopfr matches trial division for n <= 10^4; B(6) = 19, B(10) = 45"
    );
}

#[test]
fn criterion_3_asymptotic_trend() {
    let table = big_table();
    let xs = [10_000u64, 100_000, 1_000_000, 10_000_000];
    let rows = prime_arith::asymptotic_table(&xs, table).unwrap();
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
    for w in ratios.windows(2) {
        assert!(w[1] < w[0], "ratio ladder not strictly decreasing: {ratios:?}");
    }
    assert!(
        (ratios[3] - 1.0).abs() < (ratios[0] - 1.0).abs(),
        "x = 10^7 ratio is not closer to 1: {ratios:?}"
    );
    println!(
        "criterion 3 PASS: normalized ratio strictly decreases {:.6} -> {:.6} -> {:.6} -> {:.6}",
        ratios[0], ratios[1], ratios[2], ratios[3]
    );
}

#[test]
fn criterion_4_parseval_identity() {
    let table = build_sieve(501).unwrap();
    let mut worst: f64 = 0.0;
    for n in 1..=500u64 {
        let spectrum = prime_series::build_spectrum(n, &table).unwrap();
        let samples = 2 * spectrum.max_prime().unwrap_or(0) as usize + 2;
        let report = prime_series::norm_check(&spectrum, samples).unwrap();
        if report.analytic == 0.0 {
            assert_eq!(report.quadrature, 0.0, "n = {n}: empty spectrum must be exact");
            continue;
        }
        let rel = report.abs_error / report.analytic;
        assert!(
            report.abs_error <= 1e-9 * report.analytic,
            "n = {n}: |quadrature - analytic| = {} exceeds 1e-9 relative",
            report.abs_error
        );
        worst = worst.max(rel);
    }
    println!(
        "criterion 4 PASS: norm identity holds to 1e-9 relative for all n <= 500 \
         (worst relative error {worst:.3e})"
    );
}

fn random_hermitian_row(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    c[0] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
    for j in 1..=(n / 2) {
        if 2 * j == n {
            c[j] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
        } else {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            c[j] = z;
            c[n - j] = z.conj();
        }
    }
    c
}

#[test]
fn criterion_5_eigen_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    for trial in 0..100 {
        let n = rng.random_range(3..=64usize);
        let row = random_hermitian_row(&mut rng, n);
        let spec = circulant_polygon::CirculantSpec::new(row).unwrap();
        assert!(circulant_polygon::check_hermitian(&spec, 0.0));
        let abs_sum: f64 = spec.first_row().iter().map(|c| c.norm()).sum();
        let scale = abs_sum.max(1.0);
        let eigen = circulant_polygon::eigendecompose(&spec);
        for (k, lambda) in eigen.eigenvalues.iter().enumerate() {
            assert!(
                lambda.im.abs() <= 1e-10 * abs_sum,
                "trial {trial}: N = {n}, k = {k}: imag eigenvalue {}",
                lambda.im
            );
            let mode = circulant_polygon::eigenpolygon(n, k).unwrap();
            let image = circulant_polygon::apply_circulant(&spec, &mode).unwrap();
            for (got, v) in image.vertices().iter().zip(mode.vertices()) {
                let err = (got - lambda * v).norm();
                assert!(
                    err <= 1e-10 * scale,
                    "trial {trial}: N = {n}, k = {k}: |C e_k - lambda e_k| = {err}"
                );
            }
        }
    }
    println!(
        "criterion 5 PASS: 100 random Hermitian circulants (N in 3..=64) satisfy the \
         eigen-equation to 1e-10 relative with real spectra"
    );
}

#[test]
fn criterion_6_series_polygon_bridge() {
    let table = build_sieve(101).unwrap();
    use std::f64::consts::TAU;
    for n in 1..=100u64 {
        let spectrum = prime_series::build_spectrum(n, &table).unwrap();
        let coeff_sum = spectrum.coefficient_sum() as f64;
        let scale = coeff_sum.max(1.0);
        for n_dim in 3..=64usize {
            let poly = circulant_polygon::prime_polygon(n, n_dim, &table).unwrap();
            for (j, v) in poly.vertices().iter().enumerate() {
                let direct = prime_series::evaluate(&spectrum, TAU * j as f64 / n_dim as f64);
                assert!(
                    (v - direct).norm() <= 1e-10 * scale,
                    "n = {n}, N = {n_dim}, j = {j}"
                );
            }
            if n_dim as u64 > n {
                let centroid = poly.centroid().norm();
                assert!(
                    centroid <= 1e-10 * coeff_sum,
                    "n = {n}, N = {n_dim}: centroid {centroid}"
                );
            }
        }
    }
    println!(
        "criterion 6 PASS: polygon vertices match the series on the N-grid to 1e-10 \
         relative for n <= 100, N in 3..=64; centroids vanish for N > n"
    );
}

#[test]
fn criterion_7_box_counting_calibration() {
    let segment = boxcount::segment_fixture(10_000);
    let seg = boxcount::box_dimension_fit(&segment, 0.25, 8).unwrap();
    assert!(
        (seg.slope - 1.0).abs() <= 0.1,
        "segment slope {} not within 1.0 +/- 0.1",
        seg.slope
    );
    assert!(seg.r_squared >= 0.99, "segment r^2 {}", seg.r_squared);

    let square = boxcount::square_fixture(1_000);
    let sq = boxcount::box_dimension_fit(&square, 0.25, 8).unwrap();
    assert!(
        (sq.slope - 2.0).abs() <= 0.15,
        "square slope {} not within 2.0 +/- 0.15",
        sq.slope
    );
    assert!(sq.r_squared >= 0.99, "square r^2 {}", sq.r_squared);

    // Curve slopes are reported for observation, never asserted.
    let table = build_sieve(51).unwrap();
    let spectrum = prime_series::build_spectrum(50, &table).unwrap();
    let curve = prime_series::sample_curve(&spectrum, 4096).unwrap();
    let e0 = boxcount::bounding_box(&curve.points).unwrap().max_side() / 4.0;
    let obs = boxcount::box_dimension_fit(&curve.points, e0, 8).unwrap();
    println!(
        "criterion 7 PASS: segment slope {:.6} (r^2 {:.6}), square slope {:.6} (r^2 {:.6}); \
         observed curve slope for n = 50: {:.4} (not asserted)",
        seg.slope, seg.r_squared, sq.slope, sq.r_squared, obs.slope
    );
}

#[test]
fn criterion_8_determinism() {
    let run = |args: &[&str]| -> (i32, Vec<u8>) {
        let out = Command::new(BIN).args(args).output().expect("binary runs");
        (out.status.code().expect("no signal"), out.stdout)
    };
    let (c1, one) = run(&["bsum", "1000000", "--method", "both", "--threads", "1"]);
    let (c8, eight) = run(&["bsum", "1000000", "--method", "both", "--threads", "8"]);
    assert_eq!(c1, 0);
    assert_eq!(c8, 0);
    assert_eq!(one, eight, "thread count changed bsum output");

    let (ca, a) = run(&["curve", "50"]);
    let (cb, b) = run(&["curve", "50"]);
    assert_eq!(ca, 0);
    assert_eq!(cb, 0);
    assert_eq!(a, b, "repeated curve runs differ");
    println!(
        "criterion 8 PASS: bsum at 10^6 is identical across 1 and 8 threads; \
         repeated curve output is byte-identical"
    );
}
