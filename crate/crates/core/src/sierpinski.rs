//! Generators for the Sierpinski triangle (midpoint subdivision, IFS
//! rendering, chaos game, the doubling game, barycentric digit test),
//! the carpet family, the Menger sponge, and the analytic dimension
//! table for all of them.
//!
//! Triangle rasters live in the affine frame spanned by the initiator:
//! coordinates (u, v) are the barycentric weights of the second and
//! third vertex, so the equilateral triangle becomes the right triangle
//! u, v >= 0, u + v <= 1 and every generation-n cell is dyadic. Cell
//! (i, j) of a side-2^n raster is occupied iff the upward triangle with
//! corner (i, j)/2^n survives; this makes rasterization exact rather
//! than sampled, and raster row 0 is stored at the top so PGM export
//! reads naturally.

use crate::cantor::Membership;
use crate::error::{Error, Result};
use crate::grid::{Grid2D, Grid3D, MAX_SIDE};
use crate::rat::{self, DigitExpansion, Tail};
use crate::rng::SplitMix64;
use num::rational::BigRational;
use num::Signed;
use std::collections::BTreeSet;

pub const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Vertices of the unit equilateral initiator, placed so the contraction
/// system below is literally the classical one: (0,0), (1,0), (1/2, √3/2).
pub const TRIANGLE_VERTICES: [(f64, f64); 3] = [(0.0, 0.0), (1.0, 0.0), (0.5, SQRT3 / 2.0)];

/// Vertices of the right-triangle (affine frame) version.
pub const TRIANGLE_VERTICES_AFFINE: [(f64, f64); 3] = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)];

// ---------------------------------------------------------------------------
// Affine maps and iterated function systems
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap2D {
    /// Row-major 2x2 linear part.
    pub linear: [[f64; 2]; 2],
    pub offset: [f64; 2],
}

impl AffineMap2D {
    pub fn new(linear: [[f64; 2]; 2], offset: [f64; 2]) -> Self {
        Self { linear, offset }
    }

    pub fn apply(&self, p: (f64, f64)) -> (f64, f64) {
        (
            self.linear[0][0] * p.0 + self.linear[0][1] * p.1 + self.offset[0],
            self.linear[1][0] * p.0 + self.linear[1][1] * p.1 + self.offset[1],
        )
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &AffineMap2D) -> AffineMap2D {
        let a = &self.linear;
        let b = &other.linear;
        AffineMap2D {
            linear: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
            offset: {
                let t = self.apply((other.offset[0], other.offset[1]));
                [t.0, t.1]
            },
        }
    }

    /// Spectral norm of the linear part.
    pub fn operator_norm(&self) -> f64 {
        let [[a, b], [c, d]] = self.linear;
        let s = a * a + b * b + c * c + d * d;
        let det = a * d - b * c;
        let disc = (s * s - 4.0 * det * det).max(0.0).sqrt();
        ((s + disc) / 2.0).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ifs {
    maps: Vec<AffineMap2D>,
}

impl Ifs {
    pub fn new(maps: Vec<AffineMap2D>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::InvalidSpec("IFS needs at least one map".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.operator_norm() >= 1.0 {
                return Err(Error::InvalidSpec(format!(
                    "map {i} is not a contraction (norm {})",
                    m.operator_norm()
                )));
            }
        }
        Ok(Self { maps })
    }

    pub fn maps(&self) -> &[AffineMap2D] {
        &self.maps
    }
}

/// The three contractions whose attractor is the Sierpinski triangle on
/// the equilateral initiator: scale 1/2 with offsets (0,0), (1/2,0),
/// (1/4, √3/4).
pub fn sierpinski_ifs() -> Ifs {
    let half = [[0.5, 0.0], [0.0, 0.5]];
    Ifs::new(vec![
        AffineMap2D::new(half, [0.0, 0.0]),
        AffineMap2D::new(half, [0.5, 0.0]),
        AffineMap2D::new(half, [0.25, SQRT3 / 4.0]),
    ])
    .expect("contractions")
}

/// The same system conjugated into the affine frame: offsets (0,0),
/// (1/2,0), (0,1/2). All coordinates stay dyadic, which is what makes
/// raster comparisons against the subdivision exact.
pub fn sierpinski_ifs_affine() -> Ifs {
    let half = [[0.5, 0.0], [0.0, 0.5]];
    Ifs::new(vec![
        AffineMap2D::new(half, [0.0, 0.0]),
        AffineMap2D::new(half, [0.5, 0.0]),
        AffineMap2D::new(half, [0.0, 0.5]),
    ])
    .expect("contractions")
}

// ---------------------------------------------------------------------------
// Triangle subdivision
// ---------------------------------------------------------------------------

pub const TRIANGLE_MAX_LEVEL: usize = 13;

/// Upward triangle of the generation-`level` subdivision with corner
/// (i, j) / 2^level in the affine frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriangleCell {
    pub i: u32,
    pub j: u32,
    pub level: u32,
}

impl TriangleCell {
    /// Euclidean vertices on the equilateral initiator.
    pub fn euclidean_vertices(&self) -> [(f64, f64); 3] {
        let s = 0.5f64.powi(self.level as i32);
        let u = self.i as f64 * s;
        let v = self.j as f64 * s;
        let to_xy = |u: f64, v: f64| (u + v / 2.0, v * SQRT3 / 2.0);
        [to_xy(u, v), to_xy(u + s, v), to_xy(u, v + s)]
    }
}

/// The 3^n upward triangles of generation n.
pub fn triangle_subdivide(n: usize) -> Result<Vec<TriangleCell>> {
    if n > TRIANGLE_MAX_LEVEL {
        return Err(Error::GenerationOverflow {
            generation: n,
            limit: TRIANGLE_MAX_LEVEL,
        });
    }
    let mut cells = vec![TriangleCell { i: 0, j: 0, level: 0 }];
    for _ in 0..n {
        let mut next = Vec::with_capacity(cells.len() * 3);
        for c in &cells {
            next.push(TriangleCell {
                i: 2 * c.i,
                j: 2 * c.j,
                level: c.level + 1,
            });
            next.push(TriangleCell {
                i: 2 * c.i + 1,
                j: 2 * c.j,
                level: c.level + 1,
            });
            next.push(TriangleCell {
                i: 2 * c.i,
                j: 2 * c.j + 1,
                level: c.level + 1,
            });
        }
        cells = next;
    }
    Ok(cells)
}

/// Occupancy raster of the generation-n triangle at its natural
/// resolution 2^n (affine frame; row 0 = top).
pub fn triangle_raster(n: usize) -> Result<Grid2D> {
    let cells = triangle_subdivide(n)?;
    let side = 1usize << n;
    let mut grid = Grid2D::new(side, 2)?;
    for c in &cells {
        grid.set(side - 1 - c.j as usize, c.i as usize, true);
    }
    Ok(grid)
}

/// Total removed area after n subdivision steps, relative to the
/// initiator: 1 - (3/4)^n.
pub fn removed_area(n: usize) -> BigRational {
    rat::one() - rat::pow(&rat::ratio(3, 4), n as i64)
}

/// The same quantity as the explicit series sum_{k=1..n} (1/4)(3/4)^(k-1).
pub fn removed_area_series(n: usize) -> BigRational {
    let mut acc = rat::zero();
    for k in 1..=n {
        acc += rat::ratio(1, 4) * rat::pow(&rat::ratio(3, 4), k as i64 - 1);
    }
    acc
}

/// Closed form 3((3/2)^n - 1) for the total perimeter of all removed
/// triangles after n steps (unit initiator side).
pub fn perimeter_sum(n: usize) -> BigRational {
    rat::int(3) * (rat::pow(&rat::ratio(3, 2), n as i64) - rat::one())
}

/// Direct summation sum_{k=1..n} (3/2)^k, kept as the independent route.
pub fn perimeter_sum_direct(n: usize) -> BigRational {
    let mut acc = rat::zero();
    for k in 1..=n {
        acc += rat::pow(&rat::ratio(3, 2), k as i64);
    }
    acc
}

// ---------------------------------------------------------------------------
// IFS rendering
// ---------------------------------------------------------------------------

/// Renders the depth-n image of the seed (the filled unit square) under
/// all |maps|^n compositions, rasterized on a `resolution`-sided grid
/// over the unit square by the cell-center rule.
pub fn ifs_render(ifs: &Ifs, n: usize, resolution: usize) -> Result<Grid2D> {
    if resolution == 0 || !resolution.is_power_of_two() || resolution > MAX_SIDE {
        return Err(Error::RasterCap {
            side: resolution,
            limit: MAX_SIDE,
        });
    }
    // The smallest feature after n steps has size r_max^n; fewer cells
    // than 1/r_max^n per axis cannot resolve them.
    let r_max = ifs
        .maps
        .iter()
        .map(AffineMap2D::operator_norm)
        .fold(0.0f64, f64::max);
    let needed = (1.0 / r_max).powi(n as i32).ceil() as usize;
    if resolution < needed {
        return Err(Error::Undersampled {
            resolution,
            depth: n,
            needed,
        });
    }
    match ifs.maps.len().checked_pow(n as u32) {
        Some(c) if c <= (1 << 22) => {}
        _ => {
            return Err(Error::GenerationOverflow {
                generation: n,
                limit: 22,
            })
        }
    }

    let identity = AffineMap2D::new([[1.0, 0.0], [0.0, 1.0]], [0.0, 0.0]);
    let mut maps = vec![identity];
    for _ in 0..n {
        let mut next = Vec::with_capacity(maps.len() * ifs.maps.len());
        for m in &maps {
            for f in &ifs.maps {
                next.push(f.compose(m));
            }
        }
        maps = next;
    }

    let mut grid = Grid2D::new(resolution, 2)?;
    let seed = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
    for m in &maps {
        let quad: Vec<(f64, f64)> = seed.iter().map(|&p| m.apply(p)).collect();
        rasterize_convex(&mut grid, &quad);
    }
    Ok(grid)
}

/// Marks every cell whose center lies in the convex polygon (boundary
/// included).
fn rasterize_convex(grid: &mut Grid2D, poly: &[(f64, f64)]) {
    let res = grid.side();
    let h = 1.0 / res as f64;
    let min_x = poly.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = poly.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = poly.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = poly.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let clamp = |x: f64| x.max(0.0).min(res as f64 - 1.0) as usize;
    let c0 = clamp((min_x / h - 1.0).floor());
    let c1 = clamp((max_x / h + 1.0).ceil());
    let y0 = clamp((min_y / h - 1.0).floor());
    let y1 = clamp((max_y / h + 1.0).ceil());
    let mut area2 = 0.0;
    for k in 0..poly.len() {
        let (ax, ay) = poly[k];
        let (bx, by) = poly[(k + 1) % poly.len()];
        area2 += ax * by - bx * ay;
    }
    let sign = if area2 >= 0.0 { 1.0 } else { -1.0 };
    for jy in y0..=y1 {
        for col in c0..=c1 {
            let cx = (col as f64 + 0.5) * h;
            let cy = (jy as f64 + 0.5) * h;
            let mut inside = true;
            for k in 0..poly.len() {
                let (ax, ay) = poly[k];
                let (bx, by) = poly[(k + 1) % poly.len()];
                let cross = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
                if sign * cross < 0.0 {
                    inside = false;
                    break;
                }
            }
            if inside {
                grid.set(res - 1 - jy, col, true);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Chaos game and the doubling game
// ---------------------------------------------------------------------------

/// Random midpoint iteration toward the given triangle's vertices.
/// After discarding `transient` points, emits `points` positions. The
/// vertex choice is `next_choice(3)` on a SplitMix64 stream, so runs
/// are reproducible bit for bit per seed.
pub fn chaos_game(
    vertices: &[(f64, f64); 3],
    start: (f64, f64),
    points: usize,
    transient: usize,
    seed: u64,
) -> Vec<(f64, f64)> {
    let mut rng = SplitMix64::new(seed);
    let mut p = start;
    let mut out = Vec::with_capacity(points);
    for step in 0..points + transient {
        let v = vertices[rng.next_choice(3) as usize];
        p = ((p.0 + v.0) / 2.0, (p.1 + v.1) / 2.0);
        if step >= transient {
            out.push(p);
        }
    }
    out
}

/// One step of the doubling game: expand p by 2 away from vertex v.
pub fn sir_pinsky_step(p: (f64, f64), v: (f64, f64)) -> (f64, f64) {
    (2.0 * p.0 - v.0, 2.0 * p.1 - v.1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SirPinskyOutcome {
    /// Still inside the initiator after the full iteration budget.
    Stays,
    /// Left the initiator at the given step (1-based).
    Escapes { step: usize },
}

/// Iterates the doubling game from the nearest vertex (lowest index on
/// ties). Points of the attractor stay inside forever; points of a
/// removed triangle's preimage escape.
pub fn sir_pinsky_classify(start: (f64, f64), max_steps: usize) -> SirPinskyOutcome {
    let mut p = start;
    for step in 1..=max_steps {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (k, v) in TRIANGLE_VERTICES.iter().enumerate() {
            let d = (p.0 - v.0).powi(2) + (p.1 - v.1).powi(2);
            if d < best_d - 1e-15 {
                best_d = d;
                best = k;
            }
        }
        p = sir_pinsky_step(p, TRIANGLE_VERTICES[best]);
        if !in_initiator(p) {
            return SirPinskyOutcome::Escapes { step };
        }
    }
    SirPinskyOutcome::Stays
}

/// Closed-initiator membership with a small tolerance for accumulated
/// float error.
fn in_initiator(p: (f64, f64)) -> bool {
    let v = 2.0 * p.1 / SQRT3;
    let u = p.0 - p.1 / SQRT3;
    let eps = 1e-9;
    u >= -eps && v >= -eps && u + v <= 1.0 + eps
}

/// Digit membership test in barycentric coordinates: the point is on
/// the attractor iff some choice of binary expansions puts exactly one
/// 1 among (x, y, z) at every place. Dual expansions of dyadic
/// coordinates are tried just as in the 1D digit tests.
pub fn barycentric_membership(
    x: &BigRational,
    y: &BigRational,
    z: &BigRational,
    depth: usize,
) -> Result<Membership> {
    if x.is_negative() || y.is_negative() || z.is_negative() {
        return Err(Error::InvalidSpec(
            "barycentric coordinates must be non-negative".into(),
        ));
    }
    if &(x + y) + z != rat::one() {
        return Err(Error::InvalidSpec(
            "barycentric coordinates must sum to 1".into(),
        ));
    }
    let ex = DigitExpansion::of(x, 2, depth);
    let ey = DigitExpansion::of(y, 2, depth);
    let ez = DigitExpansion::of(z, 2, depth);
    let mut best = Membership::Out;
    for a in &ex {
        for b in &ey {
            for c in &ez {
                let prefix_ok =
                    (0..depth).all(|i| a.digits[i] + b.digits[i] + c.digits[i] == 1);
                if !prefix_ok {
                    continue;
                }
                let tails = [a.tail, b.tail, c.tail];
                if tails.iter().all(|t| *t != Tail::Unknown) {
                    // Constant tails decide the remaining places: they
                    // qualify iff exactly one coordinate runs at digit 1.
                    if tails.iter().filter(|t| **t == Tail::Maxed).count() == 1 {
                        return Ok(Membership::In);
                    }
                    continue;
                }
                best = Membership::InAtDepth;
            }
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Carpets
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarpetSpec {
    base: u32,
    kept: BTreeSet<(u32, u32)>,
}

impl CarpetSpec {
    pub fn new(base: u32, kept: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidSpec(format!("carpet base {base} < 2")));
        }
        let kept: BTreeSet<(u32, u32)> = kept.into_iter().collect();
        if kept.is_empty() {
            return Err(Error::InvalidSpec(
                "carpet generator needs at least one kept cell".into(),
            ));
        }
        if kept.iter().any(|&(r, c)| r >= base || c >= base) {
            return Err(Error::InvalidSpec("kept cell outside generator".into()));
        }
        Ok(Self { base, kept })
    }

    /// The standard carpet: 3x3 generator minus the center.
    pub fn standard() -> Self {
        let kept = (0..3)
            .flat_map(|r| (0..3).map(move |c| (r, c)))
            .filter(|&(r, c)| !(r == 1 && c == 1));
        Self::new(3, kept).expect("valid generator")
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn kept(&self) -> &BTreeSet<(u32, u32)> {
        &self.kept
    }

    pub fn kept_count(&self) -> usize {
        self.kept.len()
    }

    /// ln |kept| / ln base.
    pub fn dimension(&self) -> f64 {
        (self.kept.len() as f64).ln() / (self.base as f64).ln()
    }

    /// Occupancy grid of side base^n with |kept|^n occupied cells: cell
    /// (r, c) survives iff every base-b digit pair of (r, c) is kept.
    pub fn generate(&self, n: usize) -> Result<Grid2D> {
        let side = (self.base as usize)
            .checked_pow(n as u32)
            .filter(|&s| s <= MAX_SIDE)
            .ok_or(Error::GenerationOverflow {
                generation: n,
                limit: MAX_SIDE,
            })?;
        let mut grid = Grid2D::new(side, self.base)?;
        let b = self.base as usize;
        for row in 0..side {
            for col in 0..side {
                let (mut r, mut c) = (row, col);
                let mut keep = true;
                for _ in 0..n {
                    if !self.kept.contains(&((r % b) as u32, (c % b) as u32)) {
                        keep = false;
                        break;
                    }
                    r /= b;
                    c /= b;
                }
                if keep {
                    grid.set(row, col, true);
                }
            }
        }
        Ok(grid)
    }
}

/// Dimension of the narrow-ring centered carpet: generator is the ring
/// of 4(b-1) cells of side 1/b.
pub fn ring_carpet_dimension(b: u32) -> f64 {
    (4.0 * (b as f64 - 1.0)).ln() / (b as f64).ln()
}

/// Dimension of the wide-ring centered carpet as printed in the source
/// material: ln(b^3 - 1)/ln b. The printed exponent exceeds 2 for
/// b >= 3, which no planar carpet can reach (b^2 - 1 would be the
/// dimensionally consistent cell count); emitted as printed, with the
/// discrepancy noted in the dimension table.
pub fn wide_ring_carpet_dimension_printed(b: u32) -> f64 {
    ((b as f64).powi(3) - 1.0).ln() / (b as f64).ln()
}

// ---------------------------------------------------------------------------
// Menger sponge
// ---------------------------------------------------------------------------

pub const SPONGE_MAX_GENERATION: usize = 4;

/// Generation-n Menger sponge: voxel (x, y, z) survives iff no digit
/// position has two or more middle (= 1) coordinates. 20^n voxels.
pub fn sponge_generate(n: usize) -> Result<Grid3D> {
    if n > SPONGE_MAX_GENERATION {
        return Err(Error::GenerationOverflow {
            generation: n,
            limit: SPONGE_MAX_GENERATION,
        });
    }
    let side = 3usize.pow(n as u32);
    let mut grid = Grid3D::new(side, 3)?;
    for z in 0..side {
        for y in 0..side {
            for x in 0..side {
                let (mut a, mut b, mut c) = (x, y, z);
                let mut keep = true;
                for _ in 0..n {
                    let middles =
                        (a % 3 == 1) as u8 + (b % 3 == 1) as u8 + (c % 3 == 1) as u8;
                    if middles >= 2 {
                        keep = false;
                        break;
                    }
                    a /= 3;
                    b /= 3;
                    c /= 3;
                }
                if keep {
                    grid.set(x, y, z, true);
                }
            }
        }
    }
    Ok(grid)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl std::str::FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(Error::Parse(format!("bad axis {other:?}"))),
        }
    }
}

/// The 2D slice of the sponge at `index` along `axis`. Face slices
/// (index 0 or side-1) reproduce the standard carpet exactly.
pub fn face_slice(grid: &Grid3D, axis: Axis, index: usize) -> Result<Grid2D> {
    let side = grid.side();
    if index >= side {
        return Err(Error::OutOfRange(format!(
            "slice index {index} outside side {side}"
        )));
    }
    let mut out = Grid2D::new(side, grid.base())?;
    for row in 0..side {
        for col in 0..side {
            let occupied = match axis {
                Axis::X => grid.get(index, row, col),
                Axis::Y => grid.get(row, index, col),
                Axis::Z => grid.get(row, col, index),
            };
            if occupied {
                out.set(row, col, true);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Analytic dimension table
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, serde::Serialize)]
pub struct DimensionEntry {
    pub name: &'static str,
    pub formula: &'static str,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

/// The named analytic constants of the classical constructions.
pub fn product_dimensions() -> Vec<DimensionEntry> {
    let ln = |x: f64| x.ln();
    let e = |name, formula, value| DimensionEntry {
        name,
        formula,
        value,
        note: None,
    };
    vec![
        e("cantor_triadic", "ln 2 / ln 3", ln(2.0) / ln(3.0)),
        e("cantor_middle_fifth", "ln 4 / ln 5", ln(4.0) / ln(5.0)),
        e("cantor_keep9_base10", "ln 9 / ln 10", ln(9.0) / ln(10.0)),
        e("cantor_keep8_base10", "ln 8 / ln 10", ln(8.0) / ln(10.0)),
        e("cantor_keep7_base10", "ln 7 / ln 10", ln(7.0) / ln(10.0)),
        e("cantor_product_2d", "2 ln 2 / ln 3", 2.0 * ln(2.0) / ln(3.0)),
        e("triangle", "ln 3 / ln 2", ln(3.0) / ln(2.0)),
        e("pyramid", "ln 4 / ln 2", ln(4.0) / ln(2.0)),
        e("carpet", "ln 8 / ln 3", ln(8.0) / ln(3.0)),
        e("carpet_base7", "ln 40 / ln 7", ln(40.0) / ln(7.0)),
        e("koch", "ln 4 / ln 3", ln(4.0) / ln(3.0)),
        e(
            "c4_product_3d",
            "3 ln 2 / ln(8/3)",
            3.0 * ln(2.0) / ln(8.0 / 3.0),
        ),
        e(
            "c4_product_2d",
            "2 ln 2 / ln(8/3)",
            2.0 * ln(2.0) / ln(8.0 / 3.0),
        ),
        e("sponge", "ln 20 / ln 3", ln(20.0) / ln(3.0)),
        e("cheese_3d", "ln 26 / ln 3", ln(26.0) / ln(3.0)),
        DimensionEntry {
            name: "centered_ring_b5",
            formula: "ln[4(b-1)] / ln b, b = 5",
            value: ring_carpet_dimension(5),
            note: None,
        },
        DimensionEntry {
            name: "centered_wide_ring_b5_printed",
            formula: "ln(b^3 - 1) / ln b, b = 5",
            value: wide_ring_carpet_dimension_printed(5),
            note: Some(
                "printed formula exceeds 2 for b >= 3 and cannot be a planar carpet; \
                 b^2 - 1 cells would be the consistent generator count",
            ),
        },
    ]
}

/// Dimension of the k-dimensional cheese, ln(3^k - 1)/ln 3.
pub fn cheese_dimension(k: u32) -> f64 {
    ((3f64.powi(k as i32)) - 1.0).ln() / 3f64.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    /// True when the raster cell containing (u, v) or one of its eight
    /// neighbors is occupied (distance to the set at most one cell
    /// diagonal).
    fn near_occupied(grid: &Grid2D, u: f64, v: f64) -> bool {
        let side = grid.side();
        let i = ((u * side as f64) as i64).min(side as i64 - 1);
        let j = ((v * side as f64) as i64).min(side as i64 - 1);
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                let (ci, cj) = (i + di, j + dj);
                if (0..side as i64).contains(&ci)
                    && (0..side as i64).contains(&cj)
                    && grid.get(side - 1 - cj as usize, ci as usize)
                {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn subdivision_counts_and_nesting() {
        assert_eq!(triangle_subdivide(0).unwrap().len(), 1);
        assert_eq!(triangle_subdivide(3).unwrap().len(), 27);
        for c in triangle_subdivide(4).unwrap() {
            assert!(c.i + c.j < 1 << c.level);
        }
        assert!(triangle_subdivide(TRIANGLE_MAX_LEVEL + 1).is_err());
    }

    #[test]
    fn triangle_area_series() {
        assert_eq!(removed_area(1), ratio(1, 4));
        assert_eq!(removed_area(2), ratio(7, 16));
        for n in 0..=20 {
            assert_eq!(removed_area(n), removed_area_series(n));
        }
        assert!(rat::to_f64(&removed_area(60)) > 1.0 - 1e-7);
    }

    #[test]
    fn perimeter_series() {
        assert_eq!(perimeter_sum(1), ratio(3, 2));
        assert_eq!(perimeter_sum(2), ratio(15, 4));
        for n in 1..=20 {
            assert_eq!(perimeter_sum(n), perimeter_sum_direct(n));
        }
    }

    #[test]
    fn ifs_fixed_points_and_offsets() {
        let ifs = sierpinski_ifs();
        let f = ifs.maps();
        assert_eq!(f[1].apply((1.0, 0.0)), (1.0, 0.0));
        assert_eq!(f[2].apply((0.0, 0.0)), (0.25, SQRT3 / 4.0));
        assert_eq!(f[0].apply((1.0, 1.0)), (0.5, 0.5));
    }

    #[test]
    fn ifs_render_matches_subdivision_exactly() {
        let ifs = sierpinski_ifs_affine();
        for n in 0..=8 {
            let render = ifs_render(&ifs, n, 1 << n).unwrap();
            let subdiv = triangle_raster(n).unwrap();
            assert_eq!(render, subdiv, "generation {n}");
            assert_eq!(render.count_occupied(), 3usize.pow(n as u32));
        }
    }

    #[test]
    fn ifs_render_square_seed_layout() {
        // One step on the unit-square seed: three half-size squares.
        let g = ifs_render(&sierpinski_ifs_affine(), 1, 2).unwrap();
        assert_eq!(g.count_occupied(), 3);
        // Row 1 is the bottom: both bottom squares plus the top-left.
        assert!(g.get(1, 0) && g.get(1, 1) && g.get(0, 0) && !g.get(0, 1));
        let seed = ifs_render(&sierpinski_ifs_affine(), 0, 4).unwrap();
        assert_eq!(seed.count_occupied(), 16);
        assert!(matches!(
            ifs_render(&sierpinski_ifs_affine(), 5, 16),
            Err(Error::Undersampled { .. })
        ));
    }

    #[test]
    fn chaos_game_stays_on_attractor() {
        let pts = chaos_game(&TRIANGLE_VERTICES_AFFINE, (0.0, 0.0), 20_000, 0, 42);
        let grid = triangle_raster(8).unwrap();
        for (u, v) in &pts {
            assert!(near_occupied(&grid, *u, *v));
        }
        // Same seed, same stream.
        let again = chaos_game(&TRIANGLE_VERTICES_AFFINE, (0.0, 0.0), 1000, 0, 42);
        assert_eq!(&pts[..1000], &again[..]);
    }

    #[test]
    fn chaos_game_covers_every_generation_6_cell() {
        // Ergodic coverage: a long run hits every surviving cell of the
        // generation-6 subdivision, whatever the seed.
        let grid = triangle_raster(6).unwrap();
        let side = grid.side();
        for seed in [1u64, 2, 3, 4, 5] {
            let pts = chaos_game(&TRIANGLE_VERTICES_AFFINE, (0.0, 0.0), 1_000_000, 20, seed);
            let mut hit = vec![false; side * side];
            for (u, v) in &pts {
                let i = ((u * side as f64) as usize).min(side - 1);
                let j = ((v * side as f64) as usize).min(side - 1);
                hit[j * side + i] = true;
            }
            for j in 0..side {
                for i in 0..side {
                    if grid.get(side - 1 - j, i) {
                        assert!(hit[j * side + i], "seed {seed}: cell ({i}, {j}) unvisited");
                    }
                }
            }
        }
    }

    #[test]
    fn chaos_game_converges_from_removed_center() {
        // Start at the centroid of the removed central triangle; the
        // orbit walks down the hierarchy of removed centers toward the
        // attractor.
        let centroid = (0.5, SQRT3 / 6.0);
        let pts = chaos_game(&TRIANGLE_VERTICES, centroid, 64, 0, 9);
        let grid = triangle_raster(10).unwrap();
        for (x, y) in &pts[30..] {
            let v = 2.0 * y / SQRT3;
            let u = x - y / SQRT3;
            assert!(near_occupied(&grid, u, v), "({x}, {y}) off the attractor");
        }
    }

    #[test]
    fn sir_pinsky_outcomes() {
        assert_eq!(
            sir_pinsky_classify(TRIANGLE_VERTICES[0], 100),
            SirPinskyOutcome::Stays
        );
        // Edge midpoints bounce among vertices forever.
        assert_eq!(sir_pinsky_classify((0.5, 0.0), 100), SirPinskyOutcome::Stays);
        // The centroid sits in the removed central triangle and escapes.
        let centroid = (0.5, SQRT3 / 6.0);
        assert!(matches!(
            sir_pinsky_classify(centroid, 100),
            SirPinskyOutcome::Escapes { .. }
        ));
        assert_eq!(sir_pinsky_step((0.5, 0.0), TRIANGLE_VERTICES[1]), (0.0, 0.0));
    }

    #[test]
    fn barycentric_examples() {
        let r = ratio;
        // Vertex.
        assert_eq!(
            barycentric_membership(&r(1, 1), &r(0, 1), &r(0, 1), 32).unwrap(),
            Membership::In
        );
        // Edge midpoint: qualifies through the dual expansion of 1/2.
        assert_eq!(
            barycentric_membership(&r(1, 2), &r(1, 2), &r(0, 1), 32).unwrap(),
            Membership::In
        );
        // Midpoint of a subdivision edge: x = .1000, y = .0100,
        // z = .00111... puts one 1 at every place.
        assert_eq!(
            barycentric_membership(&r(1, 2), &r(1, 4), &r(1, 4), 32).unwrap(),
            Membership::In
        );
        // Centroid: place 1 reads (0, 0, 0) in every expansion.
        assert_eq!(
            barycentric_membership(&r(1, 3), &r(1, 3), &r(1, 3), 32).unwrap(),
            Membership::Out
        );
        assert!(barycentric_membership(&r(1, 2), &r(1, 2), &r(1, 2), 8).is_err());
    }

    #[test]
    fn barycentric_agrees_with_raster() {
        // Digit test vs the generation-6 subdivision raster on a grid
        // of rational points: in iff some closed cell contains it.
        let n = 6usize;
        let grid = triangle_raster(n).unwrap();
        let side = grid.side();
        let denom = 64i64;
        for iu in 0..=denom {
            for iv in 0..=(denom - iu) {
                let u = ratio(iu, denom);
                let v = ratio(iv, denom);
                let x = rat::one() - &u - &v;
                let verdict = barycentric_membership(&x, &u, &v, 24).unwrap();
                let uf = iu as f64 / denom as f64;
                let vf = iv as f64 / denom as f64;
                let s = 1.0 / side as f64;
                let mut in_raster = false;
                for ci in [-1i64, 0] {
                    for cj in [-1i64, 0] {
                        let i = (uf * side as f64).floor() as i64 + ci;
                        let j = (vf * side as f64).floor() as i64 + cj;
                        if !(0..side as i64).contains(&i) || !(0..side as i64).contains(&j)
                        {
                            continue;
                        }
                        let (u0, v0) = (i as f64 * s, j as f64 * s);
                        if grid.get(side - 1 - j as usize, i as usize)
                            && uf >= u0 - 1e-12
                            && vf >= v0 - 1e-12
                            && uf + vf <= u0 + v0 + s + 1e-12
                        {
                            in_raster = true;
                        }
                    }
                }
                assert_eq!(
                    verdict.is_in(),
                    in_raster,
                    "u = {iu}/{denom}, v = {iv}/{denom}"
                );
            }
        }
    }

    #[test]
    fn carpet_generation() {
        let spec = CarpetSpec::standard();
        let g1 = spec.generate(1).unwrap();
        assert_eq!(g1.count_occupied(), 8);
        assert!(!g1.get(1, 1));
        assert_eq!(spec.generate(0).unwrap().count_occupied(), 1);
        assert_eq!(spec.generate(4).unwrap().count_occupied(), 4096);
        assert!((spec.dimension() - 1.892789).abs() < 1e-6);
    }

    #[test]
    fn carpet_self_similarity() {
        // The generation-(n+1) carpet restricted to a kept generator
        // cell, rescaled by b, is the generation-n carpet.
        let spec = CarpetSpec::standard();
        let coarse = spec.generate(2).unwrap();
        let fine = spec.generate(3).unwrap();
        let sub = coarse.side();
        for &(gr, gc) in spec.kept() {
            for r in 0..sub {
                for c in 0..sub {
                    assert_eq!(
                        fine.get(gr as usize * sub + r, gc as usize * sub + c),
                        coarse.get(r, c)
                    );
                }
            }
        }
    }

    #[test]
    fn four_corner_carpet_has_dimension_one() {
        let spec = CarpetSpec::new(4, [(0, 0), (0, 3), (3, 0), (3, 3)]).unwrap();
        assert!((spec.dimension() - 1.0).abs() < 1e-12);
        assert_eq!(spec.generate(2).unwrap().count_occupied(), 16);
    }

    #[test]
    fn sponge_counts_and_slices() {
        assert_eq!(sponge_generate(1).unwrap().count_occupied(), 20);
        let s2 = sponge_generate(2).unwrap();
        assert_eq!(s2.count_occupied(), 400);
        let carpet = CarpetSpec::standard().generate(2).unwrap();
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            for index in [0, s2.side() - 1] {
                assert_eq!(face_slice(&s2, axis, index).unwrap(), carpet);
            }
        }
        assert!(sponge_generate(5).is_err());
        assert!(face_slice(&s2, Axis::X, 99).is_err());
    }

    #[test]
    fn dimension_table_spot_checks() {
        let table = product_dimensions();
        let get = |name: &str| {
            table
                .iter()
                .find(|e| e.name == name)
                .unwrap_or_else(|| panic!("{name} missing"))
                .value
        };
        assert!((get("cantor_product_2d") - 1.2618595).abs() < 1e-7);
        assert!((get("sponge") - 2.726833).abs() < 1e-6);
        assert!((get("pyramid") - 2.0).abs() < 1e-15);
        assert!((get("carpet_base7") - 1.8957).abs() < 1e-4);
        assert!((cheese_dimension(3) - 2.965647).abs() < 1e-6);
        let wide = table
            .iter()
            .find(|e| e.name == "centered_wide_ring_b5_printed")
            .unwrap();
        assert!(wide.note.is_some());
        assert!(wide.value > 2.0);
    }
}
