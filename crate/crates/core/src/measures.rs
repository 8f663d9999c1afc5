//! Texture measures that tell equal-dimension sets apart: gap and hole
//! lacunarity, gliding-box mass-variance lacunarity, and the
//! Kullback-Leibler order functional on 256-bin histograms.

use crate::cantor::IntervalSet;
use crate::error::{Error, Result};
use crate::estimators::FitResult;
use crate::grid::Grid2D;
use num::rational::BigRational;

/// Additive smoothing applied to every histogram bin before
/// normalization, so empty bins never produce infinities.
pub const KL_EPSILON: f64 = 1e-9;

/// Largest-gap lacunarity of a 1D set: the relative length of the
/// widest removed interval.
pub fn gap_lacunarity_1d(set: &IntervalSet) -> Result<BigRational> {
    set.largest_gap()
}

/// Hole lacunarity of a raster: sqrt(area) / perimeter of the largest
/// enclosed empty component. Components are 4-connected; the perimeter
/// counts unit edges between the hole and occupied cells, which pins
/// down the isoperimetric ambiguity of the ratio. Empty cells connected
/// to the border of the occupied bounding box are outside, not holes.
pub fn hole_lacunarity_2d(grid: &Grid2D) -> Result<f64> {
    let (r0, c0, r1, c1) = grid
        .occupied_bbox()
        .ok_or_else(|| Error::EmptyInput("no occupied cells".into()))?;
    let h = r1 - r0 + 1;
    let w = c1 - c0 + 1;
    // Label empty cells inside the bbox: 0 = unvisited, 1 = outside
    // (reaches the bbox border), 2 = visited hole.
    let mut label = vec![0u8; h * w];
    let at = |r: usize, c: usize| (r - r0) * w + (c - c0);
    let mut stack = Vec::new();
    for r in r0..=r1 {
        for c in c0..=c1 {
            let border = r == r0 || r == r1 || c == c0 || c == c1;
            if border && !grid.get(r, c) {
                label[at(r, c)] = 1;
                stack.push((r, c));
            }
        }
    }
    while let Some((r, c)) = stack.pop() {
        let neighbors = [
            (r.wrapping_sub(1), c),
            (r + 1, c),
            (r, c.wrapping_sub(1)),
            (r, c + 1),
        ];
        for (nr, nc) in neighbors {
            if (r0..=r1).contains(&nr)
                && (c0..=c1).contains(&nc)
                && !grid.get(nr, nc)
                && label[at(nr, nc)] == 0
            {
                label[at(nr, nc)] = 1;
                stack.push((nr, nc));
            }
        }
    }
    // Flood the remaining empty components; track the largest by area.
    let mut best: Option<(usize, usize)> = None; // (area, perimeter)
    for r in r0..=r1 {
        for c in c0..=c1 {
            if grid.get(r, c) || label[at(r, c)] != 0 {
                continue;
            }
            let mut area = 0usize;
            let mut perimeter = 0usize;
            label[at(r, c)] = 2;
            stack.push((r, c));
            while let Some((rr, cc)) = stack.pop() {
                area += 1;
                let neighbors = [
                    (rr.wrapping_sub(1), cc),
                    (rr + 1, cc),
                    (rr, cc.wrapping_sub(1)),
                    (rr, cc + 1),
                ];
                for (nr, nc) in neighbors {
                    if !(r0..=r1).contains(&nr) || !(c0..=c1).contains(&nc) {
                        continue;
                    }
                    if grid.get(nr, nc) {
                        perimeter += 1;
                    } else if label[at(nr, nc)] == 0 {
                        label[at(nr, nc)] = 2;
                        stack.push((nr, nc));
                    }
                }
            }
            if best.map_or(true, |(a, _)| area > a) {
                best = Some((area, perimeter));
            }
        }
    }
    let (area, perimeter) = best.ok_or(Error::NoHoles)?;
    Ok((area as f64).sqrt() / perimeter as f64)
}

/// Gliding-box mass variance over all axis-aligned L x L windows.
pub fn variance_lacunarity(grid: &Grid2D, window: usize) -> Result<f64> {
    let side = grid.side();
    if window == 0 || window >= side {
        return Err(Error::OutOfRange(format!(
            "window {window} must be in 1..{side}"
        )));
    }
    // Summed-area table for O(1) window mass.
    let stride = side + 1;
    let mut sat = vec![0u32; stride * stride];
    for r in 0..side {
        for c in 0..side {
            sat[(r + 1) * stride + c + 1] = sat[r * stride + c + 1] + sat[(r + 1) * stride + c]
                - sat[r * stride + c]
                + grid.get(r, c) as u32;
        }
    }
    let mass = |r: usize, c: usize, l: usize| -> f64 {
        (sat[(r + l) * stride + c + l] + sat[r * stride + c]
            - sat[(r + l) * stride + c]
            - sat[r * stride + c + l]) as f64
    };
    let n = side - window + 1;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for r in 0..n {
        for c in 0..n {
            let m = mass(r, c, window);
            sum += m;
            sum_sq += m * m;
        }
    }
    let count = (n * n) as f64;
    let mean = sum / count;
    Ok(sum_sq / count - mean * mean)
}

/// Variance lacunarity over a ladder of window sizes plus the fitted
/// log-log exponent of the variance (to be read against 2D for the
/// set's dimension D).
pub fn variance_lacunarity_exponent(grid: &Grid2D, windows: &[usize]) -> Result<FitResult> {
    if windows.len() < 2 {
        return Err(Error::OutOfRange("need at least two window sizes".into()));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &l in windows {
        let v = variance_lacunarity(grid, l)?;
        if v <= 0.0 {
            return Err(Error::Degenerate(format!(
                "zero variance at window {l}; uniform occupancy has no lacunarity"
            )));
        }
        xs.push((l as f64).ln());
        ys.push(v.ln());
    }
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    let mean_y = sy / n;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    Ok(FitResult {
        slope,
        intercept,
        r2: if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot },
        scale_range: (
            *windows.first().unwrap() as f64,
            *windows.last().unwrap() as f64,
        ),
    })
}

/// 256-bin histogram of a distribution density.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram256 {
    bins: [f64; 256],
}

impl Histogram256 {
    pub fn new(bins: [f64; 256]) -> Result<Self> {
        if bins.iter().any(|b| !b.is_finite() || *b < 0.0) {
            return Err(Error::InvalidSpec(
                "histogram bins must be finite and non-negative".into(),
            ));
        }
        if bins.iter().sum::<f64>() <= 0.0 {
            return Err(Error::EmptyInput("histogram with zero total".into()));
        }
        Ok(Self { bins })
    }

    pub fn from_counts(counts: &[f64]) -> Result<Self> {
        if counts.len() != 256 {
            return Err(Error::InvalidSpec(format!(
                "need exactly 256 bins, got {}",
                counts.len()
            )));
        }
        let mut bins = [0.0; 256];
        bins.copy_from_slice(counts);
        Self::new(bins)
    }

    pub fn bins(&self) -> &[f64; 256] {
        &self.bins
    }

    fn smoothed_probabilities(&self) -> [f64; 256] {
        let total: f64 = self.bins.iter().map(|b| b + KL_EPSILON).sum();
        let mut out = [0.0; 256];
        for (o, b) in out.iter_mut().zip(&self.bins) {
            *o = (b + KL_EPSILON) / total;
        }
        out
    }
}

/// Relative-order functional: the Kullback-Leibler divergence
/// sum f1 ln(f1 / f2) over epsilon-smoothed, normalized bins.
/// Non-negative, zero iff the histograms normalize identically, and
/// asymmetric in its arguments.
pub fn kl_order(f1: &Histogram256, f2: &Histogram256) -> f64 {
    let p = f1.smoothed_probabilities();
    let q = f2.smoothed_probabilities();
    p.iter().zip(&q).map(|(pi, qi)| pi * (pi / qi).ln()).sum()
}
