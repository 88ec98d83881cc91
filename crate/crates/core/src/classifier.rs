//! Elliptic profiles and the flype classification rules.
//!
//! A tangle's elliptic profile lists, for each oriented strand, the dots
//! marking its local extrema in encounter order. Shared dots mark an
//! extremum on both strands and so appear once in each list.

use serde::Serialize;

use crate::boxdot::{flyped_diagram, mark_classes, BoxDotDiagram};
use crate::error::{Error, Result};
use crate::invariants::{strandwise_invariants, ClassicalInvariants, WritheConvention};
use crate::lattice::{HalfInt, HalfPoint};
use crate::rational::{flyped_notation, regular_cf, FlypeVector, Fraction, TwistVector};
use crate::tangle::{subtangle_connectivity, tangle_front, ConnectivityType, FrontProjection};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticProfile {
    pub p: u64,
    pub q: u64,
    pub e1: Vec<HalfPoint>,
    pub e2: Vec<HalfPoint>,
    /// Shared ids, row-major.
    pub shared: Vec<HalfPoint>,
}

impl EllipticProfile {
    pub fn fraction(&self) -> Fraction {
        Fraction::new(self.p, self.q).expect("profile of a valid fraction")
    }

    pub fn cardinalities(&self) -> (usize, usize) {
        (self.e1.len(), self.e2.len())
    }

    /// `(position in E1, position in E2)` for every shared id, sorted.
    pub fn shared_index_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .shared
            .iter()
            .filter_map(|s| Some((self.e1.iter().position(|p| p == s)?, self.e2.iter().position(|p| p == s)?)))
            .collect();
        out.sort();
        out
    }

    /// Index in E1 of the first shared id, if any.
    pub fn shared_start(&self) -> Option<usize> {
        self.e1.iter().position(|p| self.shared.binary_search(p).is_ok())
    }
}

/// Profile from a diagram and its traced front.
pub fn elliptic_profile_of(d: &BoxDotDiagram, fp: &FrontProjection) -> Result<EllipticProfile> {
    let classes = mark_classes(d);
    let mut lists = [Vec::new(), Vec::new()];
    for (s, list) in lists.iter_mut().enumerate() {
        for j in fp.strand_junctions(s)? {
            if !j.kind.is_cusp() {
                list.push(j.mark);
            }
        }
    }
    let [e1, e2] = lists;
    let mut shared: Vec<HalfPoint> = e1.iter().filter(|p| e2.contains(p)).copied().collect();
    shared.sort();
    if shared.iter().any(|p| !classes.is_shared(*p)) {
        return Err(Error::Malformed("an extremum is met by both strands away from the innermost twist".into()));
    }
    Ok(EllipticProfile { p: d.fraction().numer(), q: d.fraction().denom(), e1, e2, shared })
}

pub fn elliptic_profile(d: &BoxDotDiagram) -> Result<EllipticProfile> {
    elliptic_profile_of(d, &tangle_front(d)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum CardinalityCheck {
    Pass,
    Fail { strand: usize, left: usize, right: usize },
}

fn same_fraction(a: &EllipticProfile, b: &EllipticProfile) -> Result<()> {
    if (a.p, a.q) != (b.p, b.q) {
        return Err(Error::FractionMismatch { left: a.fraction().to_string(), right: b.fraction().to_string() });
    }
    Ok(())
}

/// Elliptic counts must agree strand by strand for isotopic tangles.
pub fn cardinality_check(a: &EllipticProfile, b: &EllipticProfile) -> Result<CardinalityCheck> {
    same_fraction(a, b)?;
    Ok(if a.e1.len() != b.e1.len() {
        CardinalityCheck::Fail { strand: 1, left: a.e1.len(), right: b.e1.len() }
    } else if a.e2.len() != b.e2.len() {
        CardinalityCheck::Fail { strand: 2, left: a.e2.len(), right: b.e2.len() }
    } else {
        CardinalityCheck::Pass
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum BijectionCheck {
    Consistent,
    /// A shared index pair present on one side only.
    Inconsistent { pair: (usize, usize), side: usize },
}

/// The order-preserving bijections between equal-size profiles must carry
/// shared ids to shared ids.
pub fn bijection_obstruction(a: &EllipticProfile, b: &EllipticProfile) -> Result<BijectionCheck> {
    same_fraction(a, b)?;
    let (pa, pb) = (a.shared_index_pairs(), b.shared_index_pairs());
    if let Some(pair) = pa.iter().find(|p| !pb.contains(p)) {
        return Ok(BijectionCheck::Inconsistent { pair: *pair, side: 1 });
    }
    if let Some(pair) = pb.iter().find(|p| !pa.contains(p)) {
        return Ok(BijectionCheck::Inconsistent { pair: *pair, side: 2 });
    }
    Ok(BijectionCheck::Consistent)
}

/// Sum of `f_j` over odd `j < n`.
pub fn sigma(v: &TwistVector, f: &FlypeVector) -> Result<u32> {
    f.check_against(v)?;
    Ok((1..v.len()).step_by(2).map(|j| f.f(j)).sum())
}

/// Like [`sigma`], restricted to stages whose subtangle has connectivity `∞`.
pub fn sigma_inf(v: &TwistVector, f: &FlypeVector) -> Result<u32> {
    f.check_against(v)?;
    let mut total = 0;
    for j in (1..v.len()).step_by(2) {
        if subtangle_connectivity(v, j)? == ConnectivityType::Infinity {
            total += f.f(j);
        }
    }
    Ok(total)
}

/// Zeroes `f_n` and every even-indexed exponent.
pub fn canonicalize(v: &TwistVector, f: &FlypeVector) -> Result<FlypeVector> {
    f.check_against(v)?;
    let n = v.len();
    let mut out = f.clone();
    for j in 1..=n {
        if j == n || j % 2 == 0 {
            out.set(j, 0);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    Isotopic,
    NotIsotopic,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Equal after dropping `f_n` and vertical flypes.
    VerticalFlype,
    /// Different numbers of flypes at `∞`-subtangles.
    SigmaInfinity,
    /// Odd length with different total horizontal flype count.
    SigmaShift,
    EllipticCount,
    OrderedBijection,
    StrandwiseInvariants,
    None,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::VerticalFlype => "vertical-flype",
            Rule::SigmaInfinity => "sigma-infinity",
            Rule::SigmaShift => "sigma-shift",
            Rule::EllipticCount => "elliptic-count",
            Rule::OrderedBijection => "ordered-bijection",
            Rule::StrandwiseInvariants => "strandwise-invariants",
            Rule::None => "none",
        }
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            Rule::VerticalFlype => Outcome::Isotopic,
            Rule::None => Outcome::Unknown,
            _ => Outcome::NotIsotopic,
        }
    }
}

/// Everything the rules look at, for one flype vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideEvidence {
    pub vector: String,
    pub canonical: String,
    pub sigma: u32,
    pub sigma_inf: u32,
    pub cardinalities: (usize, usize),
    pub shared_pairs: Vec<(usize, usize)>,
    pub strandwise: Vec<ClassicalInvariants>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub convention: WritheConvention,
    pub left: SideEvidence,
    pub right: SideEvidence,
    pub cardinality: CardinalityCheck,
    pub bijection: BijectionCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Canonical { form: String },
    Sigma { left: u32, right: u32 },
    Cardinality { strand: usize, left: usize, right: usize },
    SharedPair { pair: (usize, usize), side: usize },
    Strandwise { left: Vec<ClassicalInvariants>, right: Vec<ClassicalInvariants> },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub rule: &'static str,
    pub witness: Witness,
    pub evidence: Evidence,
}

/// Writhe and cusp counts move under isotopy; only `(tb, r)` is compared.
fn invariant_part(s: &[ClassicalInvariants]) -> Vec<(HalfInt, HalfInt)> {
    s.iter().map(|i| (i.tb, i.r)).collect()
}

struct Side {
    evidence: SideEvidence,
    canonical: FlypeVector,
    profile: EllipticProfile,
}

fn side(q: Fraction, v: &TwistVector, f: &FlypeVector, convention: WritheConvention) -> Result<Side> {
    let d = flyped_diagram(q, f)?;
    let fp = tangle_front(&d)?;
    let profile = elliptic_profile_of(&d, &fp)?;
    let canonical = canonicalize(v, f)?;
    let evidence = SideEvidence {
        vector: flyped_notation(v, f),
        canonical: flyped_notation(v, &canonical),
        sigma: sigma(v, f)?,
        sigma_inf: sigma_inf(v, f)?,
        cardinalities: profile.cardinalities(),
        shared_pairs: profile.shared_index_pairs(),
        strandwise: strandwise_invariants(&fp, convention)?,
    };
    Ok(Side { evidence, canonical, profile })
}

/// Every rule that fires on the pair, with its witness, in rule order.
/// The final entry is always [`Rule::None`] when nothing else fires.
pub fn justifications(
    q: Fraction,
    f: &FlypeVector,
    g: &FlypeVector,
    convention: WritheConvention,
) -> Result<(Vec<(Rule, Witness)>, Evidence)> {
    let v = regular_cf(q);
    let (a, b) = (side(q, &v, f, convention)?, side(q, &v, g, convention)?);
    let cardinality = cardinality_check(&a.profile, &b.profile)?;
    let bijection = bijection_obstruction(&a.profile, &b.profile)?;
    let mut fired = Vec::new();
    if a.canonical == b.canonical {
        fired.push((Rule::VerticalFlype, Witness::Canonical { form: a.evidence.canonical.clone() }));
    }
    let (ea, eb) = (&a.evidence, &b.evidence);
    if ea.sigma_inf != eb.sigma_inf {
        fired.push((Rule::SigmaInfinity, Witness::Sigma { left: ea.sigma_inf, right: eb.sigma_inf }));
    }
    if v.len() % 2 == 1 && ea.sigma != eb.sigma {
        fired.push((Rule::SigmaShift, Witness::Sigma { left: ea.sigma, right: eb.sigma }));
    }
    if let CardinalityCheck::Fail { strand, left, right } = cardinality {
        fired.push((Rule::EllipticCount, Witness::Cardinality { strand, left, right }));
    } else if let BijectionCheck::Inconsistent { pair, side } = bijection {
        fired.push((Rule::OrderedBijection, Witness::SharedPair { pair, side }));
    }
    if invariant_part(&ea.strandwise) != invariant_part(&eb.strandwise) {
        fired.push((
            Rule::StrandwiseInvariants,
            Witness::Strandwise { left: ea.strandwise.clone(), right: eb.strandwise.clone() },
        ));
    }
    if fired.is_empty() {
        fired.push((Rule::None, Witness::None));
    }
    let evidence = Evidence { convention, left: a.evidence, right: b.evidence, cardinality, bijection };
    Ok((fired, evidence))
}

/// Decides whether `q^f` and `q^g` are Legendrian isotopic where the known
/// rules allow it; the first rule that fires wins.
pub fn classify_pair(q: Fraction, f: &FlypeVector, g: &FlypeVector, convention: WritheConvention) -> Result<Verdict> {
    let (mut fired, evidence) = justifications(q, f, g, convention)?;
    let (rule, witness) = fired.swap_remove(0);
    Ok(Verdict { outcome: rule.outcome(), rule: rule.name(), witness, evidence })
}
