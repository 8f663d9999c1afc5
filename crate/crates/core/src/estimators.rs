//! Empirical dimension estimation from grids, interval sets and point
//! clouds: box-counting (capacity), information dimension, correlation
//! dimension, and the empirical Renyi spectrum.
//!
//! Scale grids default to powers of the generator base so that counts
//! on construction-aligned pre-fractals are exact; arbitrary scales are
//! supported but flagged as sampled. Every fit reports its r² and the
//! scale range used, so a poor scaling window is visible rather than
//! silently accepted.

use crate::cantor::IntervalSet;
use crate::error::{Error, Result};
use crate::grid::Grid2D;
use crate::multifractal::TwoScaleMeasure;
use crate::rat;
use num::rational::BigRational;
use serde::Serialize;

/// Empirical moment orders past this magnitude overflow partition sums;
/// the spectrum endpoints are approximated at |q| = 40.
pub const Q_MAX: f64 = 40.0;

/// Box occupation data over a decreasing ladder of scales.
#[derive(Debug, Clone)]
pub struct BoxCountSeries {
    /// Box sides (relative to the unit domain), strictly decreasing.
    pub scales: Vec<f64>,
    /// Occupied-box counts N(delta).
    pub counts: Vec<usize>,
    /// Per-scale occupation probabilities of the occupied boxes
    /// (each inner vector sums to 1), when the input carries mass.
    pub probs: Option<Vec<Vec<f64>>>,
    /// True when boxes are construction-aligned (counts are exact).
    pub exact: bool,
}

impl BoxCountSeries {
    fn validate(&self) -> Result<()> {
        if self.scales.len() < 3 {
            return Err(Error::Degenerate(format!(
                "need >= 3 scales, got {}",
                self.scales.len()
            )));
        }
        if self.scales.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Degenerate("scales must strictly decrease".into()));
        }
        Ok(())
    }
}

/// Least-squares fit summary; slope is the dimension estimate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    /// (coarsest, finest) box side used.
    pub scale_range: (f64, f64),
}

fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let mean_y = sy / n;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    // A constant series is fit exactly by its mean.
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    (slope, intercept, r2)
}

// ---------------------------------------------------------------------------
// Box counting
// ---------------------------------------------------------------------------

/// Counts occupied boxes of side base^-k over a construction-aligned
/// grid, for each k in `ks`. The grid side must be divisible by every
/// base^k. Also gathers per-box occupation probabilities.
pub fn box_count_grid(grid: &Grid2D, ks: &[u32]) -> Result<BoxCountSeries> {
    let side = grid.side();
    let total = grid.count_occupied();
    if total == 0 {
        return Err(Error::EmptyInput("box count of an empty grid".into()));
    }
    let base = grid.base().max(2) as usize;
    let mut scales = Vec::new();
    let mut counts = Vec::new();
    let mut probs = Vec::new();
    for &k in ks {
        let boxes = base
            .checked_pow(k)
            .ok_or_else(|| Error::OutOfRange(format!("scale exponent {k}")))?;
        if boxes > side || side % boxes != 0 {
            return Err(Error::OutOfRange(format!(
                "base^{k} = {boxes} boxes do not divide grid side {side}"
            )));
        }
        let cell = side / boxes;
        let mut mass = vec![0usize; boxes * boxes];
        for r in 0..side {
            for c in 0..side {
                if grid.get(r, c) {
                    mass[(r / cell) * boxes + c / cell] += 1;
                }
            }
        }
        let occupied: Vec<usize> = mass.into_iter().filter(|&m| m > 0).collect();
        scales.push(1.0 / boxes as f64);
        counts.push(occupied.len());
        probs.push(occupied.iter().map(|&m| m as f64 / total as f64).collect());
    }
    Ok(BoxCountSeries {
        scales,
        counts,
        probs: Some(probs),
        exact: true,
    })
}

/// Box counting for a 2D point cloud in the unit square at sides 1/m
/// for each m in `ms`. 1D data passes y = 0 throughout.
pub fn box_count_points(points: &[(f64, f64)], ms: &[usize]) -> Result<BoxCountSeries> {
    if points.is_empty() {
        return Err(Error::EmptyInput("box count of an empty cloud".into()));
    }
    if points
        .iter()
        .any(|p| !(0.0..=1.0).contains(&p.0) || !(0.0..=1.0).contains(&p.1))
    {
        return Err(Error::OutOfRange(
            "points must lie in the unit square".into(),
        ));
    }
    let mut scales = Vec::new();
    let mut counts = Vec::new();
    let mut probs = Vec::new();
    for &m in ms {
        if m < 1 {
            return Err(Error::OutOfRange("box subdivision m must be >= 1".into()));
        }
        let mut mass = std::collections::HashMap::<(usize, usize), usize>::new();
        for &(x, y) in points {
            let i = ((x * m as f64) as usize).min(m - 1);
            let j = ((y * m as f64) as usize).min(m - 1);
            *mass.entry((i, j)).or_insert(0) += 1;
        }
        scales.push(1.0 / m as f64);
        counts.push(mass.len());
        probs.push(
            mass.values()
                .map(|&c| c as f64 / points.len() as f64)
                .collect(),
        );
    }
    Ok(BoxCountSeries {
        scales,
        counts,
        probs: Some(probs),
        exact: false,
    })
}

/// Exact box counting of an interval set at sides base^-k: a box
/// counts when some interval overlaps more than a touching point.
/// All comparisons are exact rational arithmetic.
pub fn box_count_intervals(set: &IntervalSet, base: u32, ks: &[u32]) -> Result<BoxCountSeries> {
    if set.is_empty() {
        return Err(Error::EmptyInput("box count of an empty set".into()));
    }
    let mut scales = Vec::new();
    let mut counts = Vec::new();
    for &k in ks {
        let boxes = rat::pow(&rat::int(base as i64), k as i64);
        let mut occupied = std::collections::BTreeSet::<num::BigInt>::new();
        for iv in set.intervals() {
            let lo = iv.lo() * &boxes;
            let hi = iv.hi() * &boxes;
            let mut j = lo.floor().to_integer();
            while BigRational::from_integer(j.clone()) < hi {
                if BigRational::from_integer(&j + 1) > lo {
                    occupied.insert(j.clone());
                }
                j += 1;
            }
        }
        scales.push(rat::to_f64(&boxes.recip()));
        counts.push(occupied.len());
    }
    Ok(BoxCountSeries {
        scales,
        counts,
        probs: None,
        exact: true,
    })
}

/// Capacity estimate: slope of ln N against ln(1/delta).
pub fn fit_dimension(series: &BoxCountSeries) -> Result<FitResult> {
    series.validate()?;
    if series.counts.windows(2).all(|w| w[0] == w[1]) {
        return Err(Error::Degenerate(
            "all box counts equal; no scaling to fit".into(),
        ));
    }
    let xs: Vec<f64> = series.scales.iter().map(|d| (1.0 / d).ln()).collect();
    let ys: Vec<f64> = series.counts.iter().map(|&n| (n as f64).ln()).collect();
    let (slope, intercept, r2) = least_squares(&xs, &ys);
    Ok(FitResult {
        slope,
        intercept,
        r2,
        scale_range: (series.scales[0], *series.scales.last().unwrap()),
    })
}

/// Information dimension: slope of the box entropy S(delta) against
/// -ln delta. Empty boxes contribute nothing (0 ln 0 = 0); a uniform
/// E-dimensional measure comes out at +E.
pub fn information_dimension(series: &BoxCountSeries) -> Result<FitResult> {
    series.validate()?;
    let probs = series
        .probs
        .as_ref()
        .ok_or_else(|| Error::Degenerate("no per-box probabilities available".into()))?;
    let xs: Vec<f64> = series.scales.iter().map(|d| -d.ln()).collect();
    let ys: Vec<f64> = probs
        .iter()
        .map(|ps| {
            -ps.iter()
                .filter(|&&p| p > 0.0)
                .map(|p| p * p.ln())
                .sum::<f64>()
        })
        .collect();
    let (slope, intercept, r2) = least_squares(&xs, &ys);
    Ok(FitResult {
        slope,
        intercept,
        r2,
        scale_range: (series.scales[0], *series.scales.last().unwrap()),
    })
}

/// Pair-correlation integral: ordered pairs (n != m) at distance
/// strictly below delta, divided by N^2.
pub fn correlation_integral(points: &[(f64, f64)], delta: f64) -> f64 {
    let n = points.len();
    let d2 = delta * delta;
    let mut pairs = 0usize;
    for i in 0..n {
        for j in (i + 1)..n {
            let dx = points[i].0 - points[j].0;
            let dy = points[i].1 - points[j].1;
            if dx * dx + dy * dy < d2 {
                pairs += 1;
            }
        }
    }
    2.0 * pairs as f64 / (n as f64 * n as f64)
}

/// Correlation dimension: slope of ln I(delta) against ln delta.
/// Scales with no pairs are dropped; at least three informative scales
/// must remain.
pub fn correlation_dimension(points: &[(f64, f64)], deltas: &[f64]) -> Result<FitResult> {
    if points.len() < 2 {
        return Err(Error::EmptyInput("correlation needs >= 2 points".into()));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut used = Vec::new();
    for &d in deltas {
        let i = correlation_integral(points, d);
        if i > 0.0 {
            xs.push(d.ln());
            ys.push(i.ln());
            used.push(d);
        }
    }
    if xs.len() < 3 {
        return Err(Error::Degenerate(
            "fewer than 3 scales with any close pairs".into(),
        ));
    }
    if ys.windows(2).all(|w| w[0] == w[1]) {
        return Err(Error::Degenerate(
            "correlation integral is scale-independent (coincident points?)".into(),
        ));
    }
    let (slope, intercept, r2) = least_squares(&xs, &ys);
    Ok(FitResult {
        slope,
        intercept,
        r2,
        scale_range: (used[0], *used.last().unwrap()),
    })
}

/// One row of the empirical Renyi spectrum.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RenyiPoint {
    pub q: f64,
    pub dq: f64,
    pub r2: f64,
}

/// Empirical Renyi dimensions from weighted boxes: per-q regression of
/// ln Z(q, delta) = ln sum p_i^q against ln delta gives the cell-sum
/// mass exponent, converted by D_q = slope / (q - 1); q = 1 routes
/// through the information dimension. |q| is capped at `Q_MAX` since
/// empirical partition sums overflow beyond that.
pub fn renyi_spectrum(series: &BoxCountSeries, qs: &[f64]) -> Result<Vec<RenyiPoint>> {
    series.validate()?;
    let probs = series
        .probs
        .as_ref()
        .ok_or_else(|| Error::Degenerate("no per-box probabilities available".into()))?;
    let mut out = Vec::with_capacity(qs.len());
    for &q in qs {
        if q.abs() > Q_MAX {
            return Err(Error::OutOfRange(format!(
                "|q| = {} exceeds the empirical cap {Q_MAX}",
                q.abs()
            )));
        }
        if (q - 1.0).abs() < 1e-9 {
            let fit = information_dimension(series)?;
            out.push(RenyiPoint {
                q,
                dq: fit.slope,
                r2: fit.r2,
            });
            continue;
        }
        let xs: Vec<f64> = series.scales.iter().map(|d| d.ln()).collect();
        let mut ys = Vec::with_capacity(xs.len());
        for ps in probs {
            let z: f64 = ps.iter().filter(|&&p| p > 0.0).map(|p| p.powf(q)).sum();
            if !z.is_finite() || z <= 0.0 {
                return Err(Error::Overflow(format!("partition sum at q = {q}")));
            }
            ys.push(z.ln());
        }
        let (slope, _, r2) = least_squares(&xs, &ys);
        out.push(RenyiPoint {
            q,
            dq: slope / (q - 1.0),
            r2,
        });
    }
    Ok(out)
}

/// Mass dimension from true vs average density at body size L:
/// D_m = 3 - ln(rho_true / rho_avg) / ln L.
pub fn mass_dimension(rho_true: f64, rho_avg: f64, l: f64) -> Result<f64> {
    if !(rho_true > 0.0 && rho_avg > 0.0) {
        return Err(Error::OutOfRange("densities must be positive".into()));
    }
    if l <= 1.0 {
        return Err(Error::OutOfRange(format!("L must exceed 1, got {l}")));
    }
    Ok(3.0 - (rho_true / rho_avg).ln() / l.ln())
}

// ---------------------------------------------------------------------------
// Weighted refinement of a two-scale measure
// ---------------------------------------------------------------------------

/// Adaptive weighted refinement of a two-scale measure onto dyadic
/// boxes: segments recurse until they fit inside a single box of side
/// 2^-k, so box weights equal the measure of the box (up to the depth
/// guard). Deterministic, no sampling noise.
pub fn two_scale_box_weights(m: &TwoScaleMeasure, k: u32) -> Vec<f64> {
    const MAX_DEPTH: u32 = 96;
    let boxes = 1usize << k;
    let mf = boxes as f64;
    let mut acc = vec![0.0f64; boxes];
    // (start, length, weight, depth)
    let mut stack = vec![(0.0f64, 1.0f64, 1.0f64, 0u32)];
    while let Some((a, len, w, depth)) = stack.pop() {
        let i0 = ((a * mf) as usize).min(boxes - 1);
        let i1 = (((a + len) * mf) as usize).min(boxes - 1);
        if i0 == i1 || depth >= MAX_DEPTH {
            let mid = (((a + len / 2.0) * mf) as usize).min(boxes - 1);
            acc[if i0 == i1 { i0 } else { mid }] += w;
            continue;
        }
        stack.push((a, len * m.l1, w * m.p1, depth + 1));
        stack.push((a + len * (1.0 - m.l2), len * m.l2, w * m.p2, depth + 1));
    }
    acc
}

/// Box-count series of the two-scale measure over dyadic scales 2^-k.
pub fn two_scale_refinement_series(m: &TwoScaleMeasure, ks: &[u32]) -> Result<BoxCountSeries> {
    if ks.iter().any(|&k| k > 22) {
        return Err(Error::OutOfRange("refinement scale k > 22".into()));
    }
    let mut scales = Vec::new();
    let mut counts = Vec::new();
    let mut probs = Vec::new();
    for &k in ks {
        let weights = two_scale_box_weights(m, k);
        let occupied: Vec<f64> = weights.into_iter().filter(|&w| w > 0.0).collect();
        scales.push(0.5f64.powi(k as i32));
        counts.push(occupied.len());
        probs.push(occupied);
    }
    Ok(BoxCountSeries {
        scales,
        counts,
        probs: Some(probs),
        exact: false,
    })
}
