//! A removal certificate showing that `K_q` is an unknot.
//!
//! Inside a square of side `m` the curve `K_q` is the unlink `U_m`: `m`
//! rectangular loops with slope ±1 sides, the loop through `(0, m−½)` lying
//! on top. Removing the loops top-down, square by square (stage by stage,
//! rows right to left, columns bottom to top), must consume every step of
//! the curve.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::HalfPoint;
use crate::subdivision::{Square, Subdivision};
use crate::tangle::{FrontKind, FrontProjection};

/// A unit step between adjacent template points, endpoints in sorted order.
type Step = (HalfPoint, HalfPoint);

fn step(a: HalfPoint, b: HalfPoint) -> Step {
    if a <= b { (a, b) } else { (b, a) }
}

fn is_negative(s: &Step) -> bool {
    (s.1.x2 - s.0.x2) != (s.1.z2 - s.0.z2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnlinkLoop {
    /// `j` for the loop through `(0, j−½)`; removal runs from `m` down to 1.
    pub level: i64,
    pub corners: [HalfPoint; 4],
    #[serde(skip)]
    steps: Vec<Step>,
}

impl UnlinkLoop {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }
}

/// The loops of `U_m` in removal order, translated to `origin` (integral).
pub fn square_unlink(m: i64, origin: HalfPoint) -> Vec<UnlinkLoop> {
    (1..=m)
        .rev()
        .map(|j| {
            let corners = [
                origin.offset(0, 2 * j - 1),
                origin.offset(2 * j - 1, 0),
                origin.offset(2 * m, 2 * m - 2 * j + 1),
                origin.offset(2 * m - 2 * j + 1, 2 * m),
            ];
            let mut steps = Vec::new();
            for k in 0..4 {
                let (a, b) = (corners[k], corners[(k + 1) % 4]);
                let (dx, dz) = ((b.x2 - a.x2).signum(), (b.z2 - a.z2).signum());
                let mut at = a;
                while at != b {
                    let next = at.offset(dx, dz);
                    steps.push(step(at, next));
                    at = next;
                }
            }
            UnlinkLoop { level: j, corners, steps }
        })
        .collect()
}

/// The full `U_m` pattern: one diagonal per half-unit cell of the square.
pub fn unlink_pattern(m: i64, origin: HalfPoint) -> BTreeSet<Step> {
    let mut out = BTreeSet::new();
    for a in 0..2 * m {
        for b in 0..2 * m {
            let p = origin.offset(a, b);
            if (p.x2 + p.z2).rem_euclid(2) == 1 {
                out.insert(step(p, p.offset(1, 1)));
            } else {
                out.insert(step(p.offset(1, 0), p.offset(0, 1)));
            }
        }
    }
    out
}

/// Checks that `loops` partition `pattern` and that at every crossing
/// interior to the square the earlier-removed loop is the over strand.
pub fn check_unlink(square: &Square, loops: &[UnlinkLoop], pattern: &BTreeSet<Step>) -> Result<()> {
    let fail = |msg: String| Err(Error::CertificateFailed(format!("square at ({}, {}) size {}: {msg}", square.x, square.z, square.size)));
    let mut owner: BTreeMap<Step, usize> = BTreeMap::new();
    for (k, l) in loops.iter().enumerate() {
        for s in &l.steps {
            if owner.insert(*s, k).is_some() {
                return fail(format!("loop {} reuses a step", l.level));
            }
        }
    }
    if owner.len() != pattern.len() || owner.keys().any(|s| !pattern.contains(s)) {
        return fail("loops do not partition the curve".into());
    }
    let (x0, z0, s2) = (2 * square.x, 2 * square.z, 2 * square.size);
    let mut through: BTreeMap<HalfPoint, [Vec<usize>; 2]> = BTreeMap::new();
    for (s, &k) in &owner {
        for p in [s.0, s.1] {
            if p.x2 > x0 && p.x2 < x0 + s2 && p.z2 > z0 && p.z2 < z0 + s2 {
                through.entry(p).or_default()[usize::from(!is_negative(s))].push(k);
            }
        }
    }
    for (p, [neg, pos]) in through {
        let single = |v: &[usize]| v.len() == 2 && v[0] == v[1];
        if !single(&neg) || !single(&pos) {
            return fail(format!("loops bend at interior point {p}"));
        }
        if neg[0] != pos[0] && neg[0] > pos[0] {
            return fail(format!("loop {} passes under a later loop at {p}", loops[neg[0]].level));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareRemoval {
    pub square: Square,
    pub loops: Vec<UnlinkLoop>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct UnknotCertificate {
    pub squares: Vec<SquareRemoval>,
}

impl UnknotCertificate {
    /// Removal steps in order: one per loop, naming its square.
    pub fn steps(&self) -> impl Iterator<Item = (&Square, &UnlinkLoop)> {
        self.squares.iter().flat_map(|s| s.loops.iter().map(move |l| (&s.square, l)))
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }
}

fn removal_order(s: &Subdivision) -> Vec<Square> {
    let mut order: Vec<Square> = s.squares().to_vec();
    order.sort_by_key(|q| (q.stage, if q.stage % 2 == 1 { -q.x } else { q.z }));
    order
}

/// Certifies that `fp = K_q` unravels to nothing through the subdivision `s`.
pub fn verify_unknot(fp: &FrontProjection, s: &Subdivision) -> Result<UnknotCertificate> {
    if fp.fraction() != s.fraction() {
        return Err(Error::FractionMismatch { left: fp.fraction().to_string(), right: s.fraction().to_string() });
    }
    if fp.kind != FrontKind::Closed || fp.strands.len() != 1 || !fp.strands[0].closed {
        return Err(Error::CertificateFailed("curve is not a single closed component".into()));
    }
    let arcs = &fp.strands[0].arcs;
    for (k, &a) in arcs.iter().enumerate() {
        if fp.arcs[a].to != fp.arcs[arcs[(k + 1) % arcs.len()]].from {
            return Err(Error::CertificateFailed("strand arcs do not chain into a loop".into()));
        }
    }
    if fp.crossings.is_empty() {
        return Ok(UnknotCertificate::default());
    }
    let mut by_square: BTreeMap<usize, BTreeSet<Step>> = BTreeMap::new();
    let mut remaining = BTreeSet::new();
    for arc in &fp.arcs {
        let (dx, dz) = arc.direction();
        let mut at = arc.from;
        while at != arc.to {
            let next = at.offset(dx, dz);
            let st = step(at, next);
            let square = s
                .square_containing_quadrupled(at.x2 + next.x2, at.z2 + next.z2)
                .ok_or_else(|| Error::CertificateFailed(format!("step at {at} lies outside every square")))?;
            if !remaining.insert(st) {
                return Err(Error::CertificateFailed(format!("curve retraces the step at {at}")));
            }
            by_square.entry(square).or_default().insert(st);
            at = next;
        }
    }
    let mut cert = UnknotCertificate::default();
    for square in removal_order(s) {
        let index = s.squares().iter().position(|q| *q == square).expect("square of s");
        let loops = square_unlink(square.size, HalfPoint::integral(square.x, square.z));
        let pattern = by_square.remove(&index).unwrap_or_default();
        check_unlink(&square, &loops, &pattern)?;
        for l in &loops {
            for st in &l.steps {
                remaining.remove(st);
            }
        }
        cert.squares.push(SquareRemoval { square, loops });
    }
    if !remaining.is_empty() {
        return Err(Error::CertificateFailed(format!("{} steps left after all removals", remaining.len())));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxdot::BoxDotTemplate;
    use crate::rational::{FlypeVector, Fraction};
    use crate::subdivision::subdivide;
    use crate::tangle::build_unknot;

    #[test]
    fn u5_has_five_loops() {
        let origin = HalfPoint::integral(0, 0);
        let loops = square_unlink(5, origin);
        assert_eq!(loops.len(), 5);
        assert_eq!(loops[0].corners[0], HalfPoint::doubled(0, 9));
        let sq = Square { x: 0, z: 0, size: 5, stage: 1 };
        check_unlink(&sq, &loops, &unlink_pattern(5, origin)).unwrap();
    }

    #[test]
    fn reversed_removal_fails() {
        let origin = HalfPoint::integral(0, 0);
        let mut loops = square_unlink(3, origin);
        loops.reverse();
        let sq = Square { x: 0, z: 0, size: 3, stage: 1 };
        assert!(check_unlink(&sq, &loops, &unlink_pattern(3, origin)).is_err());
    }

    #[test]
    fn five_thirds_certificate() {
        let q = Fraction::new(5, 3).unwrap();
        let k = build_unknot(&BoxDotTemplate::new(q));
        let cert = verify_unknot(&k, &subdivide(q, &FlypeVector::zeros(3)).unwrap()).unwrap();
        assert_eq!(cert.squares.len(), 4);
        assert_eq!(cert.steps().count(), 3 + 2 + 1 + 1);
        assert_eq!(cert.squares[0].square.size, 3);
    }

    #[test]
    fn one_over_one_is_empty() {
        let q = Fraction::new(1, 1).unwrap();
        let k = build_unknot(&BoxDotTemplate::new(q));
        assert!(verify_unknot(&k, &subdivide(q, &FlypeVector::zeros(1)).unwrap()).unwrap().is_empty());
    }
}
