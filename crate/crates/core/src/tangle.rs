//! Front projections of flyped tangles and of the unknot `K_q`.
//!
//! Fronts are combinatorial: arcs are straight segments between lattice
//! points carrying only the sign of their slope. After Legendrianization the
//! actual slopes lie in `(−1, 0)` or `(0, 1)`, so the slope bound holds by
//! construction and the over-arc at a crossing is always the negative one.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::boxdot::{BoxDotDiagram, BoxDotTemplate};
use crate::error::{Error, Result};
use crate::lattice::HalfPoint;
use crate::rational::{cf_value, FlypeVector, Fraction, TwistVector};
use crate::subdivision::{Corner, Square};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Slope {
    Negative,
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub from: HalfPoint,
    pub to: HalfPoint,
    pub slope: Slope,
    /// Subdivision square holding the arc, for tangle fronts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strand: Option<usize>,
}

impl Arc {
    fn new(from: HalfPoint, to: HalfPoint, square: Option<usize>) -> Self {
        let rising = (to.x2 - from.x2).signum() == (to.z2 - from.z2).signum();
        Arc { from, to, slope: if rising { Slope::Positive } else { Slope::Negative }, square, strand: None }
    }

    pub fn direction(&self) -> (i64, i64) {
        ((self.to.x2 - self.from.x2).signum(), (self.to.z2 - self.from.z2).signum())
    }

    fn reversed(&self) -> Arc {
        Arc { from: self.to, to: self.from, ..*self }
    }

    /// Length in doubled lattice steps.
    pub fn steps(&self) -> i64 {
        (self.to.x2 - self.from.x2).abs()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Opening {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum JunctionKind {
    Maximum,
    Minimum,
    /// A cusp; `Right` means both branches leave to the right (`<`).
    Cusp(Opening),
}

impl JunctionKind {
    pub fn is_cusp(&self) -> bool {
        matches!(self, JunctionKind::Cusp(_))
    }
}

/// Where two arcs meet with a horizontal tangent: a smooth local extremum
/// or a cusp. `mark` is the box-dot mark that records it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Junction {
    pub point: HalfPoint,
    pub kind: JunctionKind,
    pub mark: HalfPoint,
    pub arcs: [usize; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub point: HalfPoint,
    pub over: usize,
    pub under: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    P1,
    P2,
    P3,
    P4,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Strand {
    /// Arc ids in the order of the strand's orientation.
    pub arcs: Vec<usize>,
    pub closed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<Endpoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub end: Option<Endpoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FrontKind {
    Tangle,
    Closed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrontProjection {
    pub kind: FrontKind,
    pub p: u64,
    pub q: u64,
    pub arcs: Vec<Arc>,
    pub crossings: Vec<Crossing>,
    pub junctions: Vec<Junction>,
    pub endpoints: Vec<(Endpoint, HalfPoint)>,
    /// Empty until the front has been traced.
    pub strands: Vec<Strand>,
    /// Stage of the innermost twist and the first square of `R_n`, used to
    /// orient the second strand. Tangle fronts only.
    #[serde(skip)]
    reference_square: Option<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConnectivityType {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "inf")]
    Infinity,
}

impl FrontProjection {
    pub fn fraction(&self) -> Fraction {
        Fraction::new(self.p, self.q).expect("front of a valid fraction")
    }

    pub fn is_oriented(&self) -> bool {
        !self.strands.is_empty()
    }

    pub fn cusps(&self) -> impl Iterator<Item = &Junction> {
        self.junctions.iter().filter(|j| j.kind.is_cusp())
    }

    pub fn extrema(&self) -> impl Iterator<Item = &Junction> {
        self.junctions.iter().filter(|j| !j.kind.is_cusp())
    }

    pub fn junction_at(&self, p: HalfPoint) -> Option<&Junction> {
        self.junctions.iter().find(|j| j.point == p)
    }

    /// Junctions met along strand `s` in order, skipping its ends.
    pub fn strand_junctions(&self, s: usize) -> Result<Vec<&Junction>> {
        let strand = self.strands.get(s).ok_or(Error::Unoriented)?;
        let index: HashMap<HalfPoint, &Junction> = self.junctions.iter().map(|j| (j.point, j)).collect();
        let mut out = Vec::new();
        let count = strand.arcs.len();
        let inner = if strand.closed { count } else { count.saturating_sub(1) };
        for k in 0..inner {
            let p = self.arcs[strand.arcs[k]].to;
            out.push(*index.get(&p).ok_or_else(|| Error::Malformed(format!("no junction at {p}")))?);
        }
        Ok(out)
    }

    /// The endpoint reached by `γ¹`, as a connectivity type.
    pub fn traced_connectivity(&self) -> Result<ConnectivityType> {
        match self.strands.first().and_then(|s| s.end) {
            Some(Endpoint::P2) => Ok(ConnectivityType::Zero),
            Some(Endpoint::P3) => Ok(ConnectivityType::Infinity),
            Some(Endpoint::P4) => Ok(ConnectivityType::One),
            _ => Err(Error::Unoriented),
        }
    }
}

pub fn connectivity_type(q: Fraction) -> ConnectivityType {
    if q.numer().is_multiple_of(2) {
        ConnectivityType::Zero
    } else if q.denom().is_multiple_of(2) {
        ConnectivityType::Infinity
    } else {
        ConnectivityType::One
    }
}

/// Connectivity of the subtangle `(q_n, …, q_{j+1}, 0)`.
pub fn subtangle_connectivity(v: &TwistVector, j: usize) -> Result<ConnectivityType> {
    Ok(connectivity_type(cf_value(&v.subtangle(j)?)?))
}

fn corner_pair_kind(a: Corner, b: Corner) -> Option<JunctionKind> {
    use Corner::*;
    match (a, b) {
        (TopLeft, TopRight) | (TopRight, TopLeft) => Some(JunctionKind::Maximum),
        (BottomLeft, BottomRight) | (BottomRight, BottomLeft) => Some(JunctionKind::Minimum),
        (TopLeft, BottomLeft) | (BottomLeft, TopLeft) => Some(JunctionKind::Cusp(Opening::Right)),
        (TopRight, BottomRight) | (BottomRight, TopRight) => Some(JunctionKind::Cusp(Opening::Left)),
        _ => None,
    }
}

/// Inscribes one crossing in every square and joins diagonals at shared
/// corners. The result is untraced; see [`trace_strands`].
pub fn build_front(d: &BoxDotDiagram) -> Result<FrontProjection> {
    let q = d.fraction();
    let (p2, q2) = (2 * q.numer() as i64, 2 * q.denom() as i64);
    let squares: &[Square] = d.subdivision().squares();
    let mut arcs = Vec::with_capacity(2 * squares.len());
    let mut crossings = Vec::with_capacity(squares.len());
    let mut incidences: BTreeMap<HalfPoint, Vec<(usize, Corner)>> = BTreeMap::new();
    for (i, s) in squares.iter().enumerate() {
        let over = arcs.len();
        arcs.push(Arc::new(s.corner(Corner::TopLeft), s.corner(Corner::BottomRight), Some(i)));
        arcs.push(Arc::new(s.corner(Corner::BottomLeft), s.corner(Corner::TopRight), Some(i)));
        crossings.push(Crossing { point: s.center(), over, under: over + 1 });
        for c in Corner::ALL {
            let arc = if matches!(c, Corner::TopLeft | Corner::BottomRight) { over } else { over + 1 };
            incidences.entry(s.corner(c)).or_default().push((arc, c));
        }
    }
    let endpoints = vec![
        (Endpoint::P1, HalfPoint::doubled(0, q2)),
        (Endpoint::P2, HalfPoint::doubled(p2, q2)),
        (Endpoint::P3, HalfPoint::doubled(0, 0)),
        (Endpoint::P4, HalfPoint::doubled(p2, 0)),
    ];
    let mut junctions = Vec::new();
    for (point, inc) in &incidences {
        let is_end = endpoints.iter().any(|(_, e)| e == point);
        match (is_end, inc.as_slice()) {
            (true, [_]) => {}
            (false, [(a, ca), (b, cb)]) => {
                let kind = corner_pair_kind(*ca, *cb)
                    .ok_or_else(|| Error::Malformed(format!("diagonals meet head-on at {point}")))?;
                let mark = match kind {
                    JunctionKind::Maximum => point.offset(0, -1),
                    JunctionKind::Minimum => point.offset(0, 1),
                    JunctionKind::Cusp(Opening::Right) => point.offset(1, 0),
                    JunctionKind::Cusp(Opening::Left) => point.offset(-1, 0),
                };
                junctions.push(Junction { point: *point, kind, mark, arcs: [*a, *b] });
            }
            _ => return Err(Error::Malformed(format!("{} arc ends at {point}", inc.len()))),
        }
    }
    let n = d.twist().len();
    let reference = squares.iter().position(|s| s.stage == n).map(|i| (n, i));
    Ok(FrontProjection {
        kind: FrontKind::Tangle,
        p: q.numer(),
        q: q.denom(),
        arcs,
        crossings,
        junctions,
        endpoints,
        strands: Vec::new(),
        reference_square: reference,
    })
}

/// Follows arcs from `start` through junctions to an endpoint; returns the
/// oriented arcs visited.
fn walk(fp: &FrontProjection, start: HalfPoint) -> Result<(Vec<(usize, Arc)>, HalfPoint)> {
    let junction_at: HashMap<HalfPoint, [usize; 2]> = fp.junctions.iter().map(|j| (j.point, j.arcs)).collect();
    let ends: Vec<HalfPoint> = fp.endpoints.iter().map(|e| e.1).collect();
    let first = fp
        .arcs
        .iter()
        .position(|a| a.from == start || a.to == start)
        .ok_or_else(|| Error::Malformed(format!("no arc at endpoint {start}")))?;
    let mut out = Vec::new();
    let (mut id, mut at) = (first, start);
    loop {
        let arc = fp.arcs[id];
        let oriented = if arc.from == at { arc } else { arc.reversed() };
        out.push((id, oriented));
        at = oriented.to;
        if ends.contains(&at) {
            return Ok((out, at));
        }
        if out.len() > fp.arcs.len() {
            return Err(Error::Malformed("strand does not terminate".into()));
        }
        let pair = junction_at.get(&at).ok_or_else(|| Error::Malformed(format!("dangling arc at {at}")))?;
        id = if pair[0] == id { pair[1] } else { pair[0] };
    }
}

/// Labels the strand through `p1` as `γ¹`, oriented away from `p1`, and
/// orients `γ²` to cross the first square of `R_n` in the same direction.
pub fn trace_strands(fp: &FrontProjection) -> Result<FrontProjection> {
    if fp.kind != FrontKind::Tangle {
        return Err(Error::Malformed("only tangle fronts are traced".into()));
    }
    let point_of = |e: Endpoint| fp.endpoints.iter().find(|x| x.0 == e).map(|x| x.1).expect("four endpoints");
    let endpoint_of = |p: HalfPoint| fp.endpoints.iter().find(|x| x.1 == p).map(|x| x.0).expect("traced to an endpoint");
    let (first, end1) = walk(fp, point_of(Endpoint::P1))?;
    let rest = fp
        .endpoints
        .iter()
        .map(|e| e.1)
        .find(|&p| p != point_of(Endpoint::P1) && p != end1)
        .ok_or_else(|| Error::Malformed("no free endpoint for the second strand".into()))?;
    let (mut second, mut end2) = walk(fp, rest)?;
    let mut start2 = rest;
    if first.len() + second.len() != fp.arcs.len() {
        return Err(Error::Malformed("strands leave arcs unvisited".into()));
    }
    if let Some((n, square)) = fp.reference_square {
        let dir_in = |path: &[(usize, Arc)]| path.iter().find(|(_, a)| a.square == Some(square)).map(|(_, a)| a.direction());
        let (d1, d2) = match (dir_in(&first), dir_in(&second)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Malformed("a strand misses the innermost twist".into())),
        };
        let agree = if n % 2 == 1 { d1.0 == d2.0 } else { d1.1 == d2.1 };
        if !agree {
            second = second.into_iter().rev().map(|(i, a)| (i, a.reversed())).collect();
            std::mem::swap(&mut start2, &mut end2);
        }
    }
    let mut out = fp.clone();
    out.strands.clear();
    for (s, (path, start, end)) in [(first, point_of(Endpoint::P1), end1), (second, start2, end2)].into_iter().enumerate() {
        for (id, arc) in &path {
            out.arcs[*id] = Arc { strand: Some(s), ..*arc };
        }
        out.strands.push(Strand {
            arcs: path.iter().map(|(id, _)| *id).collect(),
            closed: false,
            start: Some(endpoint_of(start)),
            end: Some(endpoint_of(end)),
        });
    }
    Ok(out)
}

/// Builds and traces the front of the flyped tangle `q^f`.
pub fn tangle_front(d: &BoxDotDiagram) -> Result<FrontProjection> {
    trace_strands(&build_front(d)?)
}

/// The unknot `K_q`: the billiard path of slope ±1 through every template
/// point, starting at the top-left boundary dot heading down-right. It
/// bounces smoothly off the top and bottom and cusps at the sides.
pub fn build_unknot(t: &BoxDotTemplate) -> FrontProjection {
    let (p2, q2) = (2 * t.width(), 2 * t.height());
    let start = HalfPoint::doubled(0, q2 - 1);
    let (mut dx, mut dz) = (1i64, -1i64);
    let mut at = start;
    let mut arcs = Vec::new();
    let mut bends = Vec::new();
    loop {
        // run until the next wall
        let to_x = if dx > 0 { p2 - at.x2 } else { at.x2 };
        let to_z = if dz > 0 { q2 - at.z2 } else { at.z2 };
        let len = to_x.min(to_z);
        let next = at.offset(dx * len, dz * len);
        arcs.push(Arc { strand: Some(0), ..Arc::new(at, next, None) });
        at = next;
        let kind = if at.x2 == 0 {
            dx = 1;
            JunctionKind::Cusp(Opening::Right)
        } else if at.x2 == p2 {
            dx = -1;
            JunctionKind::Cusp(Opening::Left)
        } else if at.z2 == q2 {
            dz = -1;
            JunctionKind::Maximum
        } else {
            dz = 1;
            JunctionKind::Minimum
        };
        bends.push((at, kind));
        if at == start {
            break;
        }
    }
    let count = arcs.len();
    let junctions = bends
        .into_iter()
        .enumerate()
        .map(|(k, (point, kind))| Junction { point, kind, mark: point, arcs: [k, (k + 1) % count] })
        .collect();
    // interior template points are each visited once per slope
    let mut passes: BTreeMap<HalfPoint, [Option<usize>; 2]> = BTreeMap::new();
    for (id, arc) in arcs.iter().enumerate() {
        let (sx, sz) = arc.direction();
        let slot = if arc.slope == Slope::Negative { 0 } else { 1 };
        for k in 1..arc.steps() {
            let p = arc.from.offset(sx * k, sz * k);
            if t.contains(p) {
                passes.entry(p).or_default()[slot] = Some(id);
            }
        }
    }
    let crossings = passes
        .into_iter()
        .filter_map(|(point, slots)| match slots {
            [Some(over), Some(under)] => Some(Crossing { point, over, under }),
            _ => None,
        })
        .collect();
    FrontProjection {
        kind: FrontKind::Closed,
        p: t.width() as u64,
        q: t.height() as u64,
        strands: vec![Strand { arcs: (0..count).collect(), closed: true, start: None, end: None }],
        arcs,
        crossings,
        junctions,
        endpoints: Vec::new(),
        reference_square: None,
    }
}

/// Convenience: parse-free construction of `Γ_{q^f}` from a vector pair.
pub fn flyped_front(v: &TwistVector, f: &FlypeVector) -> Result<FrontProjection> {
    tangle_front(&crate::boxdot::apply_f_move(v, f)?)
}
