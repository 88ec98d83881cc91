//! Free subdivisions of the rectangle `[0,P]×[0,Q]` into maximal squares.
//!
//! Stage `j` places `q_j` squares of side `r_j` inside the remainder
//! rectangle `R_j`: a row for odd `j`, a column for even `j`. The flype
//! exponent `f_j` moves `f_j` of those squares to the far end of the row
//! (left) or column (top). An odd exponent also reflects everything built
//! inside `R_{j+1}`, so each remainder rectangle carries a pair of mirror
//! flags and local placements are read through them.

use serde::Serialize;

use crate::error::Result;
use crate::lattice::HalfPoint;
use crate::rational::{expand, Expansion, FlypeVector, Fraction, TwistVector};

/// An axis-aligned square with integral lower-left corner `(x, z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Square {
    pub x: i64,
    pub z: i64,
    pub size: i64,
    pub stage: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corner {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::TopLeft, Corner::TopRight, Corner::BottomLeft, Corner::BottomRight];

    pub fn opposite(self) -> Corner {
        match self {
            Corner::TopLeft => Corner::BottomRight,
            Corner::BottomRight => Corner::TopLeft,
            Corner::TopRight => Corner::BottomLeft,
            Corner::BottomLeft => Corner::TopRight,
        }
    }
}

impl Square {
    pub fn corner(&self, c: Corner) -> HalfPoint {
        let (dx, dz) = match c {
            Corner::TopLeft => (0, self.size),
            Corner::TopRight => (self.size, self.size),
            Corner::BottomLeft => (0, 0),
            Corner::BottomRight => (self.size, 0),
        };
        HalfPoint::integral(self.x + dx, self.z + dz)
    }

    pub fn center(&self) -> HalfPoint {
        HalfPoint::doubled(2 * self.x + self.size, 2 * self.z + self.size)
    }

    /// Whether `p` lies in the closed square.
    pub fn contains(&self, p: HalfPoint) -> bool {
        let (x0, z0, s) = (2 * self.x, 2 * self.z, 2 * self.size);
        (x0..=x0 + s).contains(&p.x2) && (z0..=z0 + s).contains(&p.z2)
    }

    pub fn area(&self) -> i64 {
        self.size * self.size
    }
}

/// The remainder rectangle `R_j` and the mirror flags of its local frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub stage: usize,
    pub x: i64,
    pub z: i64,
    pub width: i64,
    pub height: i64,
    pub mirror_x: bool,
    pub mirror_z: bool,
}

impl Region {
    /// Absolute lower-left corner of a `w×h` box at local offset `(u, v)`.
    fn place(&self, u: i64, v: i64, w: i64, h: i64) -> (i64, i64) {
        let x = if self.mirror_x { self.x + self.width - (u + w) } else { self.x + u };
        let z = if self.mirror_z { self.z + self.height - (v + h) } else { self.z + v };
        (x, z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Vertical,
    Horizontal,
}

/// An interior edge contributed by one stage, between integral endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Segment {
    pub stage: usize,
    pub orientation: Orientation,
    pub start: HalfPoint,
    pub end: HalfPoint,
}

impl Segment {
    /// Template points strictly inside the segment, bottom-to-top or
    /// left-to-right. On a vertical edge these are dots, on a horizontal
    /// edge boxes.
    pub fn interior_points(&self) -> Vec<HalfPoint> {
        match self.orientation {
            Orientation::Vertical => {
                (self.start.z2 + 1..self.end.z2).step_by(2).map(|z2| HalfPoint::doubled(self.start.x2, z2)).collect()
            }
            Orientation::Horizontal => {
                (self.start.x2 + 1..self.end.x2).step_by(2).map(|x2| HalfPoint::doubled(x2, self.start.z2)).collect()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision {
    expansion: Expansion,
    flype: FlypeVector,
    normalized_last: bool,
    squares: Vec<Square>,
    regions: Vec<Region>,
}

impl Subdivision {
    pub fn fraction(&self) -> Fraction {
        self.expansion.fraction
    }

    pub fn twist(&self) -> &TwistVector {
        &self.expansion.twist
    }

    pub fn expansion(&self) -> &Expansion {
        &self.expansion
    }

    /// The flype vector actually used, with `f_n` set to zero.
    pub fn flype(&self) -> &FlypeVector {
        &self.flype
    }

    /// True when the caller's `f_n` was non-zero and got dropped.
    pub fn normalized_last(&self) -> bool {
        self.normalized_last
    }

    /// Squares in placement order: stage by stage, and within stage `n`
    /// from the local origin of `R_n` outwards.
    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    /// `R_1, …, R_n`.
    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region(&self, j: usize) -> &Region {
        &self.regions[j - 1]
    }

    pub fn stage_squares(&self, j: usize) -> impl Iterator<Item = &Square> {
        self.squares.iter().filter(move |s| s.stage == j)
    }

    /// Interior edges added by stage `j`: vertical for odd `j`, horizontal
    /// for even `j`, ordered left-to-right or bottom-to-top.
    pub fn stage_segments(&self, j: usize) -> Vec<Segment> {
        let r = self.region(j);
        let mut cuts: Vec<(i64, i64, i64)> = Vec::new();
        for s in self.stage_squares(j) {
            if j % 2 == 1 {
                for x in [s.x, s.x + s.size] {
                    if x != r.x && x != r.x + r.width {
                        cuts.push((x, s.z, s.z + s.size));
                    }
                }
            } else {
                for z in [s.z, s.z + s.size] {
                    if z != r.z && z != r.z + r.height {
                        cuts.push((z, s.x, s.x + s.size));
                    }
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        cuts.into_iter()
            .map(|(c, lo, hi)| {
                if j % 2 == 1 {
                    Segment { stage: j, orientation: Orientation::Vertical, start: HalfPoint::integral(c, lo), end: HalfPoint::integral(c, hi) }
                } else {
                    Segment { stage: j, orientation: Orientation::Horizontal, start: HalfPoint::integral(lo, c), end: HalfPoint::integral(hi, c) }
                }
            })
            .collect()
    }

    pub fn segments(&self) -> Vec<Segment> {
        (1..=self.twist().len()).flat_map(|j| self.stage_segments(j)).collect()
    }

    /// Index of the square whose interior contains `p`, given in doubled
    /// coordinates times two (so half-cell centers are exact).
    pub fn square_containing_quadrupled(&self, x4: i64, z4: i64) -> Option<usize> {
        self.squares.iter().position(|s| {
            4 * s.x < x4 && x4 < 4 * (s.x + s.size) && 4 * s.z < z4 && z4 < 4 * (s.z + s.size)
        })
    }
}

/// Builds the free subdivision of `q` selected by `f`. `f_n` is ignored.
pub fn subdivide(q: Fraction, f: &FlypeVector) -> Result<Subdivision> {
    let expansion = expand(q);
    f.check_against(&expansion.twist)?;
    let (flype, normalized_last) = f.normalized();
    let n = expansion.len();
    let mut squares = Vec::new();
    let mut regions = Vec::with_capacity(n);
    let mut region = Region {
        stage: 1,
        x: 0,
        z: 0,
        width: q.numer() as i64,
        height: q.denom() as i64,
        mirror_x: false,
        mirror_z: false,
    };
    for j in 1..=n {
        region.stage = j;
        regions.push(region);
        let count = expansion.twist.q(j) as i64;
        let side = expansion.r(j) as i64;
        let odd = j % 2 == 1;
        let mut push = |u: i64, v: i64| {
            let (x, z) = region.place(u, v, side, side);
            squares.push(Square { x, z, size: side, stage: j });
        };
        if j == n {
            for k in 0..count {
                if odd { push(k, 0) } else { push(0, k) }
            }
            break;
        }
        let far = flype.f(j) as i64;
        let near = count - far;
        let next = if odd {
            for k in 0..far {
                push(k * side, 0);
            }
            for k in 0..near {
                push(region.width - (k + 1) * side, 0);
            }
            let w = region.width - count * side;
            let (x, z) = region.place(far * side, 0, w, region.height);
            Region { width: w, x, z, mirror_z: region.mirror_z ^ (far % 2 == 1), ..region }
        } else {
            for k in 0..far {
                push(0, region.height - (k + 1) * side);
            }
            for k in 0..near {
                push(0, k * side);
            }
            let h = region.height - count * side;
            let (x, z) = region.place(0, near * side, region.width, h);
            Region { height: h, x, z, mirror_x: region.mirror_x ^ (far % 2 == 1), ..region }
        };
        region = next;
    }
    Ok(Subdivision { expansion, flype, normalized_last, squares, regions })
}
