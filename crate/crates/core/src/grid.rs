//! Occupancy bitmaps for pre-fractal rasters and percolation lattices,
//! plus binary PGM (P5) import/export.
//!
//! `Grid2D` is indexed `(row, col)` with row 0 at the top, matching the
//! PGM byte order (row-major from top-left, 255 = occupied, 0 = empty).

use crate::error::{Error, Result};

/// Side length above which rasters are refused.
pub const MAX_SIDE: usize = 8192;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid2D {
    side: usize,
    base: u32,
    bits: Vec<u64>,
}

impl Grid2D {
    pub fn new(side: usize, base: u32) -> Result<Self> {
        if side == 0 || side > MAX_SIDE {
            return Err(Error::RasterCap {
                side,
                limit: MAX_SIDE,
            });
        }
        Ok(Self {
            side,
            base,
            bits: vec![0; (side * side + 63) / 64],
        })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// Subdivision base the raster was built with (3 for carpets,
    /// 2 for triangle rasters); 0 when not applicable.
    pub fn base(&self) -> u32 {
        self.base
    }

    #[inline]
    fn idx(&self, row: usize, col: usize) -> usize {
        debug_assert!(row < self.side && col < self.side);
        row * self.side + col
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        let i = self.idx(row, col);
        self.bits[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        let i = self.idx(row, col);
        if value {
            self.bits[i >> 6] |= 1 << (i & 63);
        } else {
            self.bits[i >> 6] &= !(1 << (i & 63));
        }
    }

    pub fn count_occupied(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Bounding box of occupied cells as (row0, col0, row1, col1),
    /// inclusive.
    pub fn occupied_bbox(&self) -> Option<(usize, usize, usize, usize)> {
        let (mut r0, mut c0, mut r1, mut c1) = (usize::MAX, usize::MAX, 0, 0);
        let mut any = false;
        for row in 0..self.side {
            for col in 0..self.side {
                if self.get(row, col) {
                    any = true;
                    r0 = r0.min(row);
                    c0 = c0.min(col);
                    r1 = r1.max(row);
                    c1 = c1.max(col);
                }
            }
        }
        any.then_some((r0, c0, r1, c1))
    }

    /// Binary PGM, maxval 255, one byte per cell.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.side, self.side).into_bytes();
        out.reserve(self.side * self.side);
        for row in 0..self.side {
            for col in 0..self.side {
                out.push(if self.get(row, col) { 255 } else { 0 });
            }
        }
        out
    }

    /// Parses a P5 PGM with a square image; any nonzero byte counts as
    /// occupied. `base` is recorded as 0 (unknown).
    pub fn from_pgm(data: &[u8]) -> Result<Grid2D> {
        fn next_token(data: &[u8], pos: &mut usize) -> Result<String> {
            while *pos < data.len() {
                if data[*pos] == b'#' {
                    while *pos < data.len() && data[*pos] != b'\n' {
                        *pos += 1;
                    }
                } else if data[*pos].is_ascii_whitespace() {
                    *pos += 1;
                } else {
                    break;
                }
            }
            let start = *pos;
            while *pos < data.len() && !data[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
            if start == *pos {
                return Err(Error::Parse("truncated PGM header".into()));
            }
            Ok(String::from_utf8_lossy(&data[start..*pos]).into_owned())
        }
        let mut pos = 0usize;
        if next_token(data, &mut pos)? != "P5" {
            return Err(Error::Parse("not a binary PGM (P5)".into()));
        }
        let width: usize = next_token(data, &mut pos)?
            .parse()
            .map_err(|_| Error::Parse("bad PGM width".into()))?;
        let height: usize = next_token(data, &mut pos)?
            .parse()
            .map_err(|_| Error::Parse("bad PGM height".into()))?;
        let _maxval: usize = next_token(data, &mut pos)?
            .parse()
            .map_err(|_| Error::Parse("bad PGM maxval".into()))?;
        if width != height {
            return Err(Error::Parse(format!(
                "need a square raster, got {width}x{height}"
            )));
        }
        pos += 1; // single whitespace byte after maxval
        if data.len() < pos + width * height {
            return Err(Error::Parse("PGM pixel data truncated".into()));
        }
        let mut grid = Grid2D::new(width, 0)?;
        for row in 0..height {
            for col in 0..width {
                if data[pos + row * width + col] != 0 {
                    grid.set(row, col, true);
                }
            }
        }
        Ok(grid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid3D {
    side: usize,
    base: u32,
    bits: Vec<u64>,
}

impl Grid3D {
    pub fn new(side: usize, base: u32) -> Result<Self> {
        // 3D rasters get a tighter cap: side^3 voxels.
        if side == 0 || side > 243 {
            return Err(Error::RasterCap { side, limit: 243 });
        }
        Ok(Self {
            side,
            base,
            bits: vec![0; (side * side * side + 63) / 64],
        })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    #[inline]
    fn idx(&self, x: usize, y: usize, z: usize) -> usize {
        debug_assert!(x < self.side && y < self.side && z < self.side);
        (z * self.side + y) * self.side + x
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> bool {
        let i = self.idx(x, y, z);
        self.bits[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, z: usize, value: bool) {
        let i = self.idx(x, y, z);
        if value {
            self.bits[i >> 6] |= 1 << (i & 63);
        } else {
            self.bits[i >> 6] &= !(1 << (i & 63));
        }
    }

    pub fn count_occupied(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }
}
