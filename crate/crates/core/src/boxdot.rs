//! Box-dot templates and diagrams.
//!
//! The template of `P/Q` has boxes at `(i−½, j)` and dots at `(i, j−½)`.
//! A diagram keeps the interior template points that fall on interior
//! edges of a subdivision, each tagged with the stage whose edge holds it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::HalfPoint;
use crate::rational::{cf_value, flyped_notation, FlypeVector, Fraction, TwistVector};
use crate::subdivision::{subdivide, Orientation, Subdivision};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MarkKind {
    Dot,
    Box,
}

impl MarkKind {
    /// Dots sit at integral `x`, boxes at integral `z`.
    pub fn of(p: HalfPoint) -> Option<MarkKind> {
        match (p.x2.rem_euclid(2), p.z2.rem_euclid(2)) {
            (0, 1) => Some(MarkKind::Dot),
            (1, 0) => Some(MarkKind::Box),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoxDotTemplate {
    p: i64,
    q: i64,
}

impl BoxDotTemplate {
    pub fn new(q: Fraction) -> Self {
        Self { p: q.numer() as i64, q: q.denom() as i64 }
    }

    pub fn width(&self) -> i64 {
        self.p
    }

    pub fn height(&self) -> i64 {
        self.q
    }

    /// All boxes, row-major.
    pub fn boxes(&self) -> Vec<HalfPoint> {
        let mut out: Vec<_> =
            (0..=self.q).flat_map(|j| (1..=self.p).map(move |i| HalfPoint::doubled(2 * i - 1, 2 * j))).collect();
        out.sort();
        out
    }

    /// All dots, row-major.
    pub fn dots(&self) -> Vec<HalfPoint> {
        let mut out: Vec<_> =
            (1..=self.q).flat_map(|j| (0..=self.p).map(move |i| HalfPoint::doubled(2 * i, 2 * j - 1))).collect();
        out.sort();
        out
    }

    pub fn contains(&self, pt: HalfPoint) -> bool {
        MarkKind::of(pt).is_some() && (0..=2 * self.p).contains(&pt.x2) && (0..=2 * self.q).contains(&pt.z2)
    }

    pub fn is_boundary(&self, pt: HalfPoint) -> bool {
        self.contains(pt) && (pt.x2 == 0 || pt.x2 == 2 * self.p || pt.z2 == 0 || pt.z2 == 2 * self.q)
    }

    pub fn is_interior(&self, pt: HalfPoint) -> bool {
        self.contains(pt) && !self.is_boundary(pt)
    }

    /// Checkerboard sign: a dot `(i, j−½)` or interior box `(i−½, j)` is
    /// positive iff `i + j ≡ Q (mod 2)`. Boundary boxes carry no sign.
    pub fn sign(&self, pt: HalfPoint) -> Option<Sign> {
        let (i, j) = match MarkKind::of(pt)? {
            MarkKind::Dot => (pt.x2 / 2, (pt.z2 + 1) / 2),
            MarkKind::Box => {
                if pt.z2 == 0 || pt.z2 == 2 * self.q {
                    return None;
                }
                ((pt.x2 + 1) / 2, pt.z2 / 2)
            }
        };
        if !self.contains(pt) {
            return None;
        }
        Some(if (i + j - self.q).rem_euclid(2) == 0 { Sign::Positive } else { Sign::Negative })
    }

    /// Every signed template point, row-major.
    pub fn sign_marks(&self) -> Vec<(HalfPoint, Sign)> {
        let mut out: Vec<_> =
            self.boxes().into_iter().chain(self.dots()).filter_map(|p| self.sign(p).map(|s| (p, s))).collect();
        out.sort();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Mark {
    pub point: HalfPoint,
    pub kind: MarkKind,
    pub stage: usize,
}

#[derive(Clone, Debug)]
pub struct BoxDotDiagram {
    template: BoxDotTemplate,
    subdivision: Subdivision,
    marks: Vec<Mark>,
}

impl PartialEq for BoxDotDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.fraction() == other.fraction() && self.marks == other.marks
    }
}

impl Eq for BoxDotDiagram {}

impl BoxDotDiagram {
    pub fn fraction(&self) -> Fraction {
        self.subdivision.fraction()
    }

    pub fn twist(&self) -> &TwistVector {
        self.subdivision.twist()
    }

    pub fn flype(&self) -> &FlypeVector {
        self.subdivision.flype()
    }

    pub fn template(&self) -> &BoxDotTemplate {
        &self.template
    }

    pub fn subdivision(&self) -> &Subdivision {
        &self.subdivision
    }

    /// Marks in row-major order.
    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn dots(&self) -> impl Iterator<Item = &Mark> {
        self.marks.iter().filter(|m| m.kind == MarkKind::Dot)
    }

    pub fn boxes(&self) -> impl Iterator<Item = &Mark> {
        self.marks.iter().filter(|m| m.kind == MarkKind::Box)
    }

    pub fn mark_at(&self, p: HalfPoint) -> Option<&Mark> {
        self.marks.binary_search_by(|m| m.point.cmp(&p)).ok().map(|i| &self.marks[i])
    }

    pub fn notation(&self) -> String {
        flyped_notation(self.twist(), self.flype())
    }
}

/// Intersects the subdivision's interior edges with the template.
pub fn diagram(s: &Subdivision, t: &BoxDotTemplate) -> Result<BoxDotDiagram> {
    let q = s.fraction();
    if t.width() != q.numer() as i64 || t.height() != q.denom() as i64 {
        return Err(Error::FractionMismatch { left: q.to_string(), right: format!("{}/{}", t.width(), t.height()) });
    }
    let mut marks = Vec::new();
    for seg in s.segments() {
        let kind = match seg.orientation {
            Orientation::Vertical => MarkKind::Dot,
            Orientation::Horizontal => MarkKind::Box,
        };
        for point in seg.interior_points() {
            debug_assert!(t.is_interior(point));
            marks.push(Mark { point, kind, stage: seg.stage });
        }
    }
    marks.sort();
    Ok(BoxDotDiagram { template: *t, subdivision: s.clone(), marks })
}

/// The diagram of the flyped tangle `v^f`.
pub fn apply_f_move(v: &TwistVector, f: &FlypeVector) -> Result<BoxDotDiagram> {
    v.check_regular()?;
    f.check_against(v)?;
    let q = cf_value(v)?;
    diagram(&subdivide(q, f)?, &BoxDotTemplate::new(q))
}

/// Diagram for a fraction and flype vector.
pub fn flyped_diagram(q: Fraction, f: &FlypeVector) -> Result<BoxDotDiagram> {
    diagram(&subdivide(q, f)?, &BoxDotTemplate::new(q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EndpointSlot {
    P1,
    P2,
    P3,
    P4,
}

impl EndpointSlot {
    pub const ALL: [EndpointSlot; 4] = [EndpointSlot::P1, EndpointSlot::P2, EndpointSlot::P3, EndpointSlot::P4];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MarkClasses {
    pub shared: Vec<HalfPoint>,
    pub tagged: Vec<HalfPoint>,
    /// Boundary dots next to `p1` (top-left), `p2`, `p3`, `p4` in that
    /// order. For `Q = 1` the slots on each side coincide.
    pub endpoint: [HalfPoint; 4],
    pub plain: Vec<HalfPoint>,
}

impl MarkClasses {
    pub fn tagged_dots(&self) -> impl Iterator<Item = &HalfPoint> {
        self.tagged.iter().filter(|p| MarkKind::of(**p) == Some(MarkKind::Dot))
    }

    pub fn tagged_boxes(&self) -> impl Iterator<Item = &HalfPoint> {
        self.tagged.iter().filter(|p| MarkKind::of(**p) == Some(MarkKind::Box))
    }

    pub fn is_shared(&self, p: HalfPoint) -> bool {
        self.shared.binary_search(&p).is_ok()
    }

    pub fn is_tagged(&self, p: HalfPoint) -> bool {
        self.tagged.binary_search(&p).is_ok()
    }
}

pub fn mark_classes(d: &BoxDotDiagram) -> MarkClasses {
    let s = d.subdivision();
    let n = d.twist().len();
    let mut shared: Vec<HalfPoint> = s.stage_segments(n).iter().flat_map(|seg| seg.interior_points()).collect();
    shared.sort();
    let mut tagged = shared.clone();
    for j in 1..n {
        for seg in s.stage_segments(j) {
            let pts = seg.interior_points();
            tagged.extend(pts.first());
            tagged.extend(pts.last());
        }
    }
    tagged.sort();
    tagged.dedup();
    let plain = d.marks.iter().map(|m| m.point).filter(|p| tagged.binary_search(p).is_err()).collect();
    let (p, q) = (d.template.width(), d.template.height());
    let endpoint = [
        HalfPoint::doubled(0, 2 * q - 1),
        HalfPoint::doubled(2 * p, 2 * q - 1),
        HalfPoint::doubled(0, 1),
        HalfPoint::doubled(2 * p, 1),
    ];
    MarkClasses { shared, tagged, endpoint, plain }
}

/// JSON form of a diagram, with doubled coordinates in row-major order.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramRecord {
    pub p: u64,
    pub q: u64,
    pub vector: String,
    pub f: Vec<u32>,
    pub dots: Vec<HalfPoint>,
    pub boxes: Vec<HalfPoint>,
    pub stages: BTreeMap<String, usize>,
    pub classes: MarkClasses,
    pub signs: BTreeMap<String, Sign>,
}

impl DiagramRecord {
    pub fn new(d: &BoxDotDiagram) -> Self {
        let key = |p: &HalfPoint| format!("{},{}", p.x2, p.z2);
        DiagramRecord {
            p: d.fraction().numer(),
            q: d.fraction().denom(),
            vector: d.notation(),
            f: d.flype().notation_order(),
            dots: d.dots().map(|m| m.point).collect(),
            boxes: d.boxes().map(|m| m.point).collect(),
            stages: d.marks.iter().map(|m| (key(&m.point), m.stage)).collect(),
            classes: mark_classes(d),
            signs: d.marks.iter().filter_map(|m| d.template.sign(m.point).map(|s| (key(&m.point), s))).collect(),
        }
    }
}
