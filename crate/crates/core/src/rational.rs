//! Regular continued fractions and flype exponent vectors.
//!
//! Vectors are indexed by stage: `q_1` is the outermost (horizontal) twist and
//! `q_n` the innermost. They print in the conventional `(q_n, …, q_1)` order,
//! with flype exponents written as superscripts: `(2,1^1,1)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A reduced positive rational `P/Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fraction {
    p: u64,
    q: u64,
}

impl Fraction {
    /// Builds `p/q`, reducing it to lowest terms.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        Ok(Self::reduce(p, q)?.0)
    }

    /// Reduces `p/q`; the flag reports whether a common factor was removed.
    pub fn reduce(p: u64, q: u64) -> Result<(Self, bool)> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidFraction {
                token: format!("{p}/{q}"),
                reason: "numerator and denominator must be positive".into(),
            });
        }
        let g = p.gcd(&q);
        Ok((Self { p: p / g, q: q / g }, g != 1))
    }

    pub fn numer(&self) -> u64 {
        self.p
    }

    pub fn denom(&self) -> u64 {
        self.q
    }

    pub fn is_integer(&self) -> bool {
        self.q == 1
    }

    pub fn less_than_one(&self) -> bool {
        self.p < self.q
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// A parsed fraction together with whether the input had to be reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParsedFraction {
    pub value: Fraction,
    pub reduced_from: Option<(u64, u64)>,
}

/// Parses `"P/Q"` or `"P"`. Signs, zero, and junk are rejected with the
/// offending token named in the error.
pub fn parse_fraction(input: &str) -> Result<ParsedFraction> {
    let token = input.trim();
    let bad = |reason: &str| Error::InvalidFraction { token: token.to_string(), reason: reason.to_string() };
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (token, "1"),
    };
    let parse = |s: &str| -> Result<u64> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("expected a positive integer or P/Q"));
        }
        s.parse::<u64>().map_err(|_| bad("integer out of range"))
    };
    let (p, q) = (parse(num)?, parse(den)?);
    if p == 0 || q == 0 {
        return Err(bad("numerator and denominator must be positive"));
    }
    let (value, reduced) = Fraction::reduce(p, q)?;
    Ok(ParsedFraction { value, reduced_from: reduced.then_some((p, q)) })
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_fraction(s).map(|p| p.value)
    }
}

/// Twist components of a continued fraction, stored by stage (`q_1` first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistVector(Vec<u32>);

impl TwistVector {
    /// Builds a vector from components listed in `(q_n, …, q_1)` order.
    pub fn from_notation_order(components: &[u32]) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidVector { token: "()".into(), reason: "vector is empty".into() });
        }
        Ok(Self(components.iter().rev().copied().collect()))
    }

    pub fn from_stages(stages: Vec<u32>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::InvalidVector { token: "()".into(), reason: "vector is empty".into() });
        }
        Ok(Self(stages))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Component `q_j`, 1-based.
    pub fn q(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    pub fn stages(&self) -> &[u32] {
        &self.0
    }

    /// Components in `(q_n, …, q_1)` order.
    pub fn notation_order(&self) -> Vec<u32> {
        self.0.iter().rev().copied().collect()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&q| q as u64).sum()
    }

    /// Checks the three conditions of a regular continued fraction.
    pub fn check_regular(&self) -> Result<()> {
        let n = self.len();
        let qn = self.q(n);
        if n > 1 && qn < 2 {
            return Err(Error::NotRegular(format!("q_n = {qn} must be at least 2")));
        }
        if n == 1 && qn == 0 {
            return Err(Error::NotRegular("the single component must be positive".into()));
        }
        for j in 2..n {
            if self.q(j) == 0 {
                return Err(Error::NotRegular(format!("interior component q_{j} is 0")));
            }
        }
        Ok(())
    }

    pub fn is_regular(&self) -> bool {
        self.check_regular().is_ok()
    }

    /// The subtangle vector `(q_n, …, q_{j+1}, 0)`.
    pub fn subtangle(&self, j: usize) -> Result<TwistVector> {
        if j == 0 || j >= self.len() {
            return Err(Error::InvalidVector {
                token: self.to_string(),
                reason: format!("subtangle stage {j} must lie in 1..{}", self.len()),
            });
        }
        let mut stages = vec![0];
        stages.extend_from_slice(&self.0[j..]);
        Ok(TwistVector(stages))
    }
}

impl fmt::Display for TwistVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().rev().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Flype exponents `f_j`, stored by stage like [`TwistVector`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlypeVector(Vec<u32>);

impl FlypeVector {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn from_stages(stages: Vec<u32>) -> Self {
        Self(stages)
    }

    pub fn from_notation_order(exponents: &[u32]) -> Self {
        Self(exponents.iter().rev().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Exponent `f_j`, 1-based.
    pub fn f(&self, j: usize) -> u32 {
        self.0[j - 1]
    }

    pub fn set(&mut self, j: usize, value: u32) {
        self.0[j - 1] = value;
    }

    pub fn stages(&self) -> &[u32] {
        &self.0
    }

    pub fn notation_order(&self) -> Vec<u32> {
        self.0.iter().rev().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&f| f == 0)
    }

    /// Checks `0 ≤ f_j ≤ q_j` and matching length.
    pub fn check_against(&self, v: &TwistVector) -> Result<()> {
        if self.len() != v.len() {
            return Err(Error::LengthMismatch { expected: v.len(), found: self.len() });
        }
        for j in 1..=v.len() {
            if self.f(j) > v.q(j) {
                return Err(Error::FlypeOutOfRange { stage: j, exponent: self.f(j), max: v.q(j) });
            }
        }
        Ok(())
    }

    /// Copy with `f_n` set to zero; the flag reports whether it was non-zero.
    pub fn normalized(&self) -> (FlypeVector, bool) {
        let mut out = self.clone();
        let n = out.len();
        let touched = n > 0 && out.0[n - 1] != 0;
        if n > 0 {
            out.0[n - 1] = 0;
        }
        (out, touched)
    }
}

impl fmt::Display for FlypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().rev().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Renders `q^f` in superscript notation, omitting zero exponents.
pub fn flyped_notation(v: &TwistVector, f: &FlypeVector) -> String {
    let parts: Vec<String> = (1..=v.len())
        .rev()
        .map(|j| match f.stages().get(j - 1).copied().unwrap_or(0) {
            0 => v.q(j).to_string(),
            e => format!("{}^{}", v.q(j), e),
        })
        .collect();
    format!("({})", parts.join(","))
}

/// Parses `"(2,1^1,1)"` or `"2,1^1,1"` into twist components and exponents.
/// Whitespace is ignored and omitted exponents mean 0.
pub fn parse_flyped(input: &str) -> Result<(TwistVector, FlypeVector)> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |token: &str, reason: &str| Error::InvalidVector { token: token.to_string(), reason: reason.to_string() };
    let inner = match (compact.strip_prefix('('), compact.ends_with(')')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => compact.as_str(),
        _ => return Err(bad(&compact, "unbalanced parentheses")),
    };
    if inner.is_empty() {
        return Err(bad(input.trim(), "vector is empty"));
    }
    let number = |s: &str| -> Result<u32> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(s, "expected a non-negative integer"));
        }
        s.parse::<u32>().map_err(|_| bad(s, "integer out of range"))
    };
    let mut qs = Vec::new();
    let mut fs = Vec::new();
    for item in inner.split(',') {
        let (q, f) = match item.split_once('^') {
            Some((q, f)) => (number(q).map_err(|_| bad(item, "expected q or q^f"))?, number(f).map_err(|_| bad(item, "expected q or q^f"))?),
            None => (number(item).map_err(|_| bad(item, "expected q or q^f"))?, 0),
        };
        qs.push(q);
        fs.push(f);
    }
    Ok((TwistVector::from_notation_order(&qs)?, FlypeVector::from_notation_order(&fs)))
}

/// The Euclidean data behind a regular continued fraction: square counts
/// `q_j` and side lengths `r_0 = P, r_1 = Q, …, r_n = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub fraction: Fraction,
    pub twist: TwistVector,
    remainders: Vec<u64>,
}

impl Expansion {
    /// `r_j` for `0 ≤ j ≤ n`.
    pub fn r(&self, j: usize) -> u64 {
        self.remainders[j]
    }

    pub fn remainders(&self) -> &[u64] {
        &self.remainders
    }

    pub fn len(&self) -> usize {
        self.twist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twist.is_empty()
    }
}

/// Runs the square-subdivision recurrence `r_{j-1} = q_j r_j + r_{j+1}`.
pub fn expand(q: Fraction) -> Expansion {
    let mut remainders = vec![q.numer(), q.denom()];
    let mut stages = Vec::new();
    loop {
        let j = remainders.len() - 1;
        let (prev, cur) = (remainders[j - 1], remainders[j]);
        stages.push((prev / cur) as u32);
        let rest = prev % cur;
        if rest == 0 {
            break;
        }
        remainders.push(rest);
    }
    Expansion { fraction: q, twist: TwistVector(stages), remainders }
}

pub fn regular_cf(q: Fraction) -> TwistVector {
    expand(q).twist
}

/// Exact value of `q_1 + 1/(q_2 + 1/(… + 1/q_n))`.
pub fn cf_value(v: &TwistVector) -> Result<Fraction> {
    let n = v.len();
    let (mut num, mut den) = (v.q(n) as u128, 1u128);
    for j in (1..n).rev() {
        if num == 0 {
            return Err(Error::DivisionByZero);
        }
        let next = (v.q(j) as u128).checked_mul(num).and_then(|a| a.checked_add(den)).ok_or(Error::Overflow)?;
        den = num;
        num = next;
    }
    if num == 0 {
        return Err(Error::InvalidFraction { token: v.to_string(), reason: "continued fraction evaluates to 0".into() });
    }
    let g = num.gcd(&den);
    let (p, q) = (num / g, den / g);
    let p = u64::try_from(p).map_err(|_| Error::Overflow)?;
    let q = u64::try_from(q).map_err(|_| Error::Overflow)?;
    Fraction::new(p, q)
}

/// All flype vectors with `f_n = 0` and `0 ≤ f_j ≤ q_j`, in lexicographic
/// order of the `(f_n, …, f_1)` notation.
pub fn enumerate_flype_vectors(v: &TwistVector) -> Result<Vec<FlypeVector>> {
    v.check_regular()?;
    let n = v.len();
    let mut out = vec![FlypeVector::zeros(n)];
    for j in (1..n).rev() {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..=v.q(j)).map(move |e| {
                    let mut g = f.clone();
                    g.set(j, e);
                    g
                })
            })
            .collect();
    }
    Ok(out)
}

/// Every regular vector whose components sum to at most `max_total`.
pub fn regular_vectors(max_total: u32) -> Vec<TwistVector> {
    fn extend(prefix: &mut Vec<u32>, remaining: u32, out: &mut Vec<TwistVector>) {
        // prefix holds (q_n, …) in notation order; q_n >= 2 already placed.
        for last in 0..=remaining {
            let mut v = prefix.clone();
            v.push(last);
            out.push(TwistVector::from_notation_order(&v).expect("non-empty"));
        }
        for mid in 1..=remaining {
            prefix.push(mid);
            extend(prefix, remaining - mid, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for single in 1..=max_total {
        out.push(TwistVector(vec![single]));
    }
    for qn in 2..=max_total {
        let mut prefix = vec![qn];
        extend(&mut prefix, max_total - qn, &mut out);
    }
    out.sort();
    out
}
