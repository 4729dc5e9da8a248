//! Box-counting estimation for sampled planar curves.
//!
//! A curve is a finite list of complex points. The counter lays a square
//! grid of side `epsilon` anchored at the bounding box's min corner, with
//! half-open cells `[k·eps, (k+1)·eps)`; points on the max edge are clamped
//! into the last cell so the cover stays finite. [`box_dimension_fit`]
//! counts cells down a dyadic ladder `eps0·2^-k`, drops rungs where the
//! count is within a factor of two of the sample count (at that resolution
//! the grid resolves samples, not the curve), and least-squares fits
//! `ln N(eps)` against `ln(1/eps)`.
//!
//! The slope is an experimental box-counting estimate of the sampled point
//! set; it is not a Hausdorff or Minkowski dimension claim.

use std::collections::HashSet;

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoxError {
    #[error("curve is empty")]
    EmptyCurve,
    #[error("curve contains a non-finite coordinate")]
    NonFinitePoint,
    #[error("cell size must be positive and finite, got {0}")]
    BadEpsilon(f64),
    #[error("initial cell size {epsilon0} exceeds the largest bounding-box side {max_side}")]
    EpsilonExceedsExtent { epsilon0: f64, max_side: f64 },
    #[error("ladder depth must be at least {min}, got {got}")]
    DepthTooSmall { got: usize, min: usize },
    #[error("only {usable} ladder rungs usable after the saturation guard; need {min}")]
    TooFewUsableRungs { usable: usize, min: usize },
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

/// Axis-aligned bounding box of a point set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min_x: f64,
    pub min_y: f64,
    pub width: f64,
    pub height: f64,
}

impl BoundingBox {
    /// True when the points are collinear with an axis (or all equal).
    pub fn is_degenerate(&self) -> bool {
        self.width == 0.0 || self.height == 0.0
    }

    pub fn max_side(&self) -> f64 {
        self.width.max(self.height)
    }
}

/// One resolution level of the dyadic ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderRung {
    pub epsilon: f64,
    pub count: usize,
}

/// Result of [`box_dimension_fit`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoxCountReport {
    /// Counts at every requested resolution, saturated rungs included.
    pub ladder: Vec<LadderRung>,
    /// Indices into `ladder` that passed the saturation guard and entered
    /// the fit.
    pub fit_range: Vec<usize>,
    /// Least-squares slope of `ln N` against `ln(1/eps)` over `fit_range`.
    pub slope: f64,
    /// Coefficient of determination of that fit, in `[0, 1]`.
    pub r_squared: f64,
    /// Number of input points the guard was measured against.
    pub samples: usize,
}

pub fn bounding_box(points: &[Complex64]) -> Result<BoundingBox, BoxError> {
    if points.is_empty() {
        return Err(BoxError::EmptyCurve);
    }
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for z in points {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(BoxError::NonFinitePoint);
        }
        min_x = min_x.min(z.re);
        max_x = max_x.max(z.re);
        min_y = min_y.min(z.im);
        max_y = max_y.max(z.im);
    }
    Ok(BoundingBox {
        min_x,
        min_y,
        width: max_x - min_x,
        height: max_y - min_y,
    })
}

fn check_epsilon(epsilon: f64) -> Result<(), BoxError> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(BoxError::BadEpsilon(epsilon))
    }
}

fn cells_along(side: f64, epsilon: f64) -> u64 {
    let c = (side / epsilon).ceil();
    if c < 1.0 {
        1
    } else {
        c as u64 // saturates at u64::MAX for absurd ratios
    }
}

fn cell_index(offset: f64, epsilon: f64, cells: u64) -> u64 {
    let i = (offset / epsilon).floor();
    if i < 0.0 {
        0
    } else {
        (i as u64).min(cells - 1)
    }
}

fn count_cells(points: &[Complex64], bbox: &BoundingBox, epsilon: f64) -> usize {
    let cols = cells_along(bbox.width, epsilon);
    let rows = cells_along(bbox.height, epsilon);
    let mut cells = HashSet::with_capacity(points.len().min(4096));
    for z in points {
        let ix = cell_index(z.re - bbox.min_x, epsilon, cols);
        let iy = cell_index(z.im - bbox.min_y, epsilon, rows);
        cells.insert((ix, iy));
    }
    cells.len()
}

/// Number of grid cells of side `epsilon` hit by the points.
pub fn box_count(points: &[Complex64], epsilon: f64) -> Result<usize, BoxError> {
    let bbox = bounding_box(points)?;
    check_epsilon(epsilon)?;
    Ok(count_cells(points, &bbox, epsilon))
}

/// Counts cells down the dyadic ladder `epsilon0 · 2^-k`, `k < depth`, and
/// fits the scaling exponent over the rungs that resolve the curve rather
/// than the individual samples (`2·count < points.len()`).
pub fn box_dimension_fit(
    points: &[Complex64],
    epsilon0: f64,
    depth: usize,
) -> Result<BoxCountReport, BoxError> {
    const MIN_DEPTH: usize = 3;
    if depth < MIN_DEPTH {
        return Err(BoxError::DepthTooSmall {
            got: depth,
            min: MIN_DEPTH,
        });
    }
    let bbox = bounding_box(points)?;
    check_epsilon(epsilon0)?;
    let max_side = bbox.max_side();
    if max_side > 0.0 && epsilon0 > max_side {
        return Err(BoxError::EpsilonExceedsExtent { epsilon0, max_side });
    }

    let samples = points.len();
    let mut ladder = Vec::with_capacity(depth);
    for k in 0..depth {
        let epsilon = epsilon0 * 0.5f64.powi(k as i32);
        let count = count_cells(points, &bbox, epsilon);
        ladder.push(LadderRung { epsilon, count });
    }

    let fit_range: Vec<usize> = (0..depth).filter(|&k| 2 * ladder[k].count < samples).collect();
    if fit_range.len() < MIN_DEPTH {
        return Err(BoxError::TooFewUsableRungs {
            usable: fit_range.len(),
            min: MIN_DEPTH,
        });
    }

    // Least squares on (ln 1/eps, ln N) over the usable rungs.
    let n = fit_range.len() as f64;
    let xs: Vec<f64> = fit_range.iter().map(|&k| ladder[k].epsilon.recip().ln()).collect();
    let ys: Vec<f64> = fit_range.iter().map(|&k| (ladder[k].count as f64).ln()).collect();
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if syy == 0.0 {
        return Err(BoxError::DegenerateFit(
            "every usable rung has the same count; no scaling signal".into(),
        ));
    }
    let slope = sxy / sxx;
    let r_squared = ((sxy * sxy) / (sxx * syy)).min(1.0);
    Ok(BoxCountReport {
        ladder,
        fit_range,
        slope,
        r_squared,
        samples,
    })
}

/// `count` evenly spaced points on the unit segment `[0, 1]` of the real
/// axis — a calibration fixture with box-counting slope 1.
pub fn segment_fixture(count: usize) -> Vec<Complex64> {
    match count {
        0 => Vec::new(),
        1 => vec![Complex64::new(0.0, 0.0)],
        _ => (0..count)
            .map(|i| Complex64::new(i as f64 / (count - 1) as f64, 0.0))
            .collect(),
    }
}

/// `side × side` points filling the unit square — a calibration fixture
/// with box-counting slope 2.
pub fn square_fixture(side: usize) -> Vec<Complex64> {
    match side {
        0 => Vec::new(),
        1 => vec![Complex64::new(0.0, 0.0)],
        _ => {
            let step = 1.0 / (side - 1) as f64;
            let mut points = Vec::with_capacity(side * side);
            for i in 0..side {
                for j in 0..side {
                    points.push(Complex64::new(i as f64 * step, j as f64 * step));
                }
            }
            points
        }
    }
}
