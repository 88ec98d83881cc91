//! Exact half-integer lattice.
//!
//! Every point used by the diagrams lives on the lattice `(½ℤ)²`, so points
//! and half-integral quantities are stored doubled.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point of the half-integer lattice, stored as `(2x, 2z)`.
///
/// Ordering is row-major: by height first, then left to right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", from = "[i64; 2]")]
pub struct HalfPoint {
    pub x2: i64,
    pub z2: i64,
}

impl HalfPoint {
    pub const fn doubled(x2: i64, z2: i64) -> Self {
        Self { x2, z2 }
    }

    /// An integral lattice point.
    pub const fn integral(x: i64, z: i64) -> Self {
        Self { x2: 2 * x, z2: 2 * z }
    }

    pub fn is_integral(&self) -> bool {
        self.x2 % 2 == 0 && self.z2 % 2 == 0
    }

    pub fn offset(&self, dx2: i64, dz2: i64) -> Self {
        Self { x2: self.x2 + dx2, z2: self.z2 + dz2 }
    }
}

impl Ord for HalfPoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.z2, self.x2).cmp(&(other.z2, other.x2))
    }
}

impl PartialOrd for HalfPoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl From<HalfPoint> for [i64; 2] {
    fn from(p: HalfPoint) -> Self {
        [p.x2, p.z2]
    }
}

impl From<[i64; 2]> for HalfPoint {
    fn from([x2, z2]: [i64; 2]) -> Self {
        Self { x2, z2 }
    }
}

impl fmt::Display for HalfPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", HalfInt(self.x2), HalfInt(self.z2))
    }
}

/// An element of `½ℤ`, stored doubled. Serializes as its value: an integer,
/// or a number ending in `.5` (exact in binary floating point).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(pub i64);

impl Serialize for HalfInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0 % 2 == 0 { s.serialize_i64(self.0 / 2) } else { s.serialize_f64(self.0 as f64 / 2.0) }
    }
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// The value `n / 2`.
    pub const fn halves(n: i64) -> Self {
        HalfInt(n)
    }

    pub const fn doubled(&self) -> i64 {
        self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(&self) -> Self {
        HalfInt(self.0.abs())
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
