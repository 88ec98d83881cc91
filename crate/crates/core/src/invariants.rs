//! Writhe, cusp counts, and the classical invariants `tb` and `r`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::HalfInt;
use crate::tangle::{FrontKind, FrontProjection, JunctionKind};

/// How crossings between the two strands of a tangle enter a strand's writhe.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub enum WritheConvention {
    /// Only crossings of a strand with itself.
    #[default]
    #[serde(rename = "self")]
    SelfOnly,
    /// Self-crossings plus half of every crossing with the other strand.
    #[serde(rename = "half-mixed")]
    HalfMixed,
}

impl WritheConvention {
    pub fn name(&self) -> &'static str {
        match self {
            WritheConvention::SelfOnly => "self",
            WritheConvention::HalfMixed => "half-mixed",
        }
    }
}

impl fmt::Display for WritheConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WritheConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "self" => Ok(WritheConvention::SelfOnly),
            "half-mixed" => Ok(WritheConvention::HalfMixed),
            other => Err(Error::UnknownConvention(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassicalInvariants {
    pub writhe: HalfInt,
    pub down: u32,
    pub up: u32,
    pub tb: HalfInt,
    pub r: HalfInt,
}

impl ClassicalInvariants {
    fn from_parts(writhe: HalfInt, down: u32, up: u32) -> Self {
        let cusps = HalfInt::halves((down + up) as i64);
        ClassicalInvariants {
            writhe,
            down,
            up,
            tb: writhe - cusps,
            r: HalfInt::halves(down as i64 - up as i64),
        }
    }
}

/// `+1` for a right-handed crossing, `−1` for a left-handed one.
pub fn crossing_sign(fp: &FrontProjection, crossing: usize) -> i64 {
    let c = &fp.crossings[crossing];
    let (ox, oz) = fp.arcs[c.over].direction();
    let (ux, uz) = fp.arcs[c.under].direction();
    (ox * uz - oz * ux).signum()
}

pub fn writhe(fp: &FrontProjection) -> Result<i64> {
    if !fp.is_oriented() {
        return Err(Error::Unoriented);
    }
    Ok((0..fp.crossings.len()).map(|c| crossing_sign(fp, c)).sum())
}

/// A cusp is downward when the strand arrives at it moving down.
fn cusp_is_down(fp: &FrontProjection, j: &crate::tangle::Junction) -> bool {
    let incoming = j.arcs.iter().map(|&a| &fp.arcs[a]).find(|a| a.to == j.point).expect("oriented junction");
    incoming.direction().1 < 0
}

fn strand_cusps(fp: &FrontProjection, strand: Option<usize>) -> (u32, u32) {
    let (mut down, mut up) = (0, 0);
    for j in fp.junctions.iter().filter(|j| matches!(j.kind, JunctionKind::Cusp(_))) {
        if strand.is_some() && fp.arcs[j.arcs[0]].strand != strand {
            continue;
        }
        if cusp_is_down(fp, j) {
            down += 1;
        } else {
            up += 1;
        }
    }
    (down, up)
}

/// `(D, U)`: downward and upward cusps.
pub fn cusp_counts(fp: &FrontProjection) -> Result<(u32, u32)> {
    if !fp.is_oriented() {
        return Err(Error::Unoriented);
    }
    Ok(strand_cusps(fp, None))
}

/// `tb` and `r` of a closed front.
pub fn tb_r(fp: &FrontProjection) -> Result<ClassicalInvariants> {
    if fp.kind != FrontKind::Closed {
        return Err(Error::OpenCurve);
    }
    let w = writhe(fp)?;
    let (down, up) = cusp_counts(fp)?;
    Ok(ClassicalInvariants::from_parts(HalfInt::from_int(w), down, up))
}

/// Per-strand invariants of a traced tangle front.
pub fn strandwise_invariants(fp: &FrontProjection, convention: WritheConvention) -> Result<Vec<ClassicalInvariants>> {
    if !fp.is_oriented() {
        return Err(Error::Unoriented);
    }
    let count = fp.strands.len();
    let mut own = vec![0i64; count];
    let mut mixed = 0i64;
    for (k, c) in fp.crossings.iter().enumerate() {
        let sign = crossing_sign(fp, k);
        match (fp.arcs[c.over].strand, fp.arcs[c.under].strand) {
            (Some(a), Some(b)) if a == b => own[a] += sign,
            (Some(_), Some(_)) => mixed += sign,
            _ => return Err(Error::Unoriented),
        }
    }
    Ok((0..count)
        .map(|s| {
            let doubled = 2 * own[s] + if convention == WritheConvention::HalfMixed { mixed } else { 0 };
            let (down, up) = strand_cusps(fp, Some(s));
            ClassicalInvariants::from_parts(HalfInt::halves(doubled), down, up)
        })
        .collect())
}
