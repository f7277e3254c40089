//! Fixed point data: signed weight multisets, their canonical form, validation
//! and the JSON interchange format shared by every command.
//!
//! A [`FixedPointData`] value is always canonical: weights inside each point
//! are non-decreasing and points are ordered by sign (`+` first) and then
//! lexicographically by weights. Equality, hashing and ordering therefore
//! compare multisets.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Weights = SmallVec<[u64; 4]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flip()
    }
}

impl TryFrom<i64> for Sign {
    type Error = String;
    fn try_from(v: i64) -> Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be +1 or -1, got {other}")),
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        s.value()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One fixed point: its sign and the multiset of its weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPointDatum {
    sign: Sign,
    weights: Weights,
}

impl FixedPointDatum {
    /// Builds a datum, sorting the weights. Zero weights and an empty weight
    /// list are rejected.
    pub fn new(sign: Sign, weights: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut weights: Weights = weights.into_iter().collect();
        if weights.is_empty() {
            return Err(Error::EmptyWeights { point: 0 });
        }
        if let Some(pos) = weights.iter().position(|&w| w == 0) {
            return Err(Error::NonPositiveWeight {
                point: 0,
                position: pos,
                value: 0,
            });
        }
        weights.sort_unstable();
        Ok(FixedPointDatum { sign, weights })
    }

    /// Two-weight datum. Panics on a zero weight; meant for literals in code
    /// and tests.
    pub fn pair(sign: Sign, a: u64, b: u64) -> Self {
        Self::new(sign, [a, b]).expect("weights must be positive")
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn contains(&self, w: u64) -> bool {
        self.weights.binary_search(&w).is_ok()
    }

    pub fn multiplicity(&self, w: u64) -> usize {
        self.weights.iter().filter(|&&x| x == w).count()
    }

    pub fn reversed(&self) -> Self {
        FixedPointDatum {
            sign: self.sign.flip(),
            weights: self.weights.clone(),
        }
    }

    /// The weight left over after removing one copy of `w`, for two-weight
    /// points.
    pub fn other_weight(&self, w: u64) -> Option<u64> {
        match self.weights.as_slice() {
            [x, y] if *x == w => Some(*y),
            [x, y] if *y == w => Some(*x),
            _ => None,
        }
    }

    pub fn weight_gcd(&self) -> u64 {
        self.weights.iter().fold(0, |g, &w| g.gcd(&w))
    }
}

impl Ord for FixedPointDatum {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .sign
            .cmp(&self.sign)
            .then_with(|| self.weights.cmp(&other.weights))
    }
}

impl PartialOrd for FixedPointDatum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FixedPointDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}", self.sign)?;
        for w in &self.weights {
            write!(f, ",{w}")?;
        }
        f.write_str("}")
    }
}

/// A canonical multiset of fixed points sharing one arity. Empty data has
/// arity 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedPointData {
    arity: usize,
    points: Vec<FixedPointDatum>,
}

impl FixedPointData {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Collects points into canonical form. Fails only if arities differ.
    pub fn new(points: impl IntoIterator<Item = FixedPointDatum>) -> Result<Self> {
        let mut points: Vec<FixedPointDatum> = points.into_iter().collect();
        let arity = points.first().map_or(0, FixedPointDatum::arity);
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.arity() != arity) {
            return Err(Error::MixedArity {
                point: i,
                expected: arity,
                found: p.arity(),
            });
        }
        points.sort();
        Ok(FixedPointData { arity, points })
    }

    /// Builds two-weight data from `(sign, a, b)` triples.
    pub fn from_pairs(pairs: &[(Sign, u64, u64)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|&(s, a, b)| FixedPointDatum::pair(s, a, b)),
        )
        .expect("pairs share arity 2")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn points(&self) -> &[FixedPointDatum] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FixedPointDatum> {
        self.points.iter()
    }

    pub fn count_of(&self, datum: &FixedPointDatum) -> usize {
        self.points.iter().filter(|p| *p == datum).count()
    }

    pub fn contains(&self, datum: &FixedPointDatum) -> bool {
        self.points.binary_search(datum).is_ok()
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.points
            .iter()
            .flat_map(|p| p.weights.iter().copied())
            .max()
    }

    pub fn min_weight(&self) -> Option<u64> {
        self.points
            .iter()
            .flat_map(|p| p.weights.iter().copied())
            .min()
    }

    pub fn count_sign(&self, sign: Sign) -> usize {
        self.points.iter().filter(|p| p.sign == sign).count()
    }

    /// Flips every sign.
    pub fn reverse_orientation(&self) -> Self {
        let mut points: Vec<_> = self.points.iter().map(FixedPointDatum::reversed).collect();
        points.sort();
        FixedPointData {
            arity: self.arity,
            points,
        }
    }

    /// Divides every weight by the gcd of all weights over all points.
    pub fn make_effective(&self) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::EmptyData);
        }
        let g = self.points.iter().fold(0u64, |g, p| g.gcd(&p.weight_gcd()));
        let points = self.points.iter().map(|p| FixedPointDatum {
            sign: p.sign,
            weights: p.weights.iter().map(|w| w / g).collect(),
        });
        Self::new(points)
    }

    /// Removes one copy of each listed point. `None` if a point is missing.
    pub(crate) fn without(&self, remove: &[&FixedPointDatum]) -> Option<Self> {
        let mut points = self.points.clone();
        for r in remove {
            let i = points.binary_search(r).ok()?;
            points.remove(i);
        }
        let arity = if points.is_empty() { 0 } else { self.arity };
        Some(FixedPointData { arity, points })
    }

    /// Adds points of the same arity, keeping canonical order.
    pub(crate) fn with(&self, add: impl IntoIterator<Item = FixedPointDatum>) -> Result<Self> {
        Self::new(self.points.iter().cloned().chain(add))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("data serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("data serializes")
    }
}

impl fmt::Display for FixedPointData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl<'a> IntoIterator for &'a FixedPointData {
    type Item = &'a FixedPointDatum;
    type IntoIter = std::slice::Iter<'a, FixedPointDatum>;
    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Canonical form of an arbitrary point list.
pub fn canonicalize(points: impl IntoIterator<Item = FixedPointDatum>) -> Result<FixedPointData> {
    FixedPointData::new(points)
}

// ---------------------------------------------------------------------------
// Serialization

#[derive(Serialize, Deserialize)]
struct RawPoint {
    sign: i64,
    weights: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct RawData {
    points: Vec<RawPoint>,
}

impl Serialize for FixedPointData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawData::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FixedPointData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawData::deserialize(d)?;
        FixedPointData::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl From<&FixedPointData> for RawData {
    fn from(data: &FixedPointData) -> Self {
        RawData {
            points: data
                .points
                .iter()
                .map(|p| RawPoint {
                    sign: p.sign.value(),
                    weights: p.weights.iter().map(|&w| w as i64).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<RawData> for FixedPointData {
    type Error = Error;

    fn try_from(raw: RawData) -> Result<Self> {
        let mut points = Vec::with_capacity(raw.points.len());
        let mut arity = None;
        for (i, rp) in raw.points.into_iter().enumerate() {
            let sign = Sign::try_from(rp.sign).map_err(|_| Error::BadSign {
                point: i,
                value: rp.sign,
            })?;
            if rp.weights.is_empty() {
                return Err(Error::EmptyWeights { point: i });
            }
            if let Some((pos, &value)) = rp.weights.iter().enumerate().find(|(_, &w)| w < 1) {
                return Err(Error::NonPositiveWeight {
                    point: i,
                    position: pos,
                    value,
                });
            }
            let expected = *arity.get_or_insert(rp.weights.len());
            if rp.weights.len() != expected {
                return Err(Error::MixedArity {
                    point: i,
                    expected,
                    found: rp.weights.len(),
                });
            }
            points.push(FixedPointDatum::new(
                sign,
                rp.weights.iter().map(|&w| w as u64),
            )?);
        }
        FixedPointData::new(points)
    }
}

/// Parses the interchange format `{"points":[{"sign":±1,"weights":[...]}, ...]}`.
/// Unknown fields are ignored, so lines of `enumerate --with-traces` parse too.
pub fn parse(text: &str) -> Result<FixedPointData> {
    let raw: RawData = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    FixedPointData::try_from(raw)
}

pub fn serialize(data: &FixedPointData) -> String {
    data.to_json()
}

// ---------------------------------------------------------------------------
// Validation

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMode {
    General,
    EffectiveDim4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ViolationCode {
    NonPositiveWeight,
    MixedArity,
    ArityNotTwo,
    NonEffectivePoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
    pub index: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            f.write_str(&v.message)?;
        }
        Ok(())
    }
}

/// Checks an arbitrary point list. `General` covers positivity and uniform
/// arity; `EffectiveDim4` also demands two coprime weights at every point.
pub fn validate_points(points: &[FixedPointDatum], mode: ValidationMode) -> ValidationReport {
    let mut violations = Vec::new();
    let arity = points.first().map_or(0, FixedPointDatum::arity);
    for (i, p) in points.iter().enumerate() {
        if p.weights.contains(&0) {
            violations.push(Violation {
                code: ViolationCode::NonPositiveWeight,
                message: format!("point {i} {p} has a zero weight"),
                index: Some(i),
            });
        }
        if p.arity() != arity {
            violations.push(Violation {
                code: ViolationCode::MixedArity,
                message: format!("point {i} {p} has arity {}, expected {arity}", p.arity()),
                index: Some(i),
            });
        }
    }
    if mode == ValidationMode::EffectiveDim4 && !points.is_empty() {
        if arity != 2 {
            violations.push(Violation {
                code: ViolationCode::ArityNotTwo,
                message: format!("arity {arity}, dimension 4 needs two weights per point"),
                index: None,
            });
        } else {
            for (i, p) in points.iter().enumerate() {
                let g = p.weight_gcd();
                if p.arity() == 2 && g > 1 {
                    violations.push(Violation {
                        code: ViolationCode::NonEffectivePoint,
                        message: format!("point {i} {p} has weight gcd {g}"),
                        index: Some(i),
                    });
                }
            }
        }
    }
    ValidationReport { violations }
}

pub fn validate(data: &FixedPointData, mode: ValidationMode) -> ValidationReport {
    validate_points(&data.points, mode)
}
