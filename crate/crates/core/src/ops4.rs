//! Rewrites on 4-dimensional fixed point data: adding a rotated sphere,
//! blowing a point up, and their inverses. A [`ConstructionTrace`] is a
//! sequence of forward steps starting from no fixed points.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::data::{FixedPointData, FixedPointDatum, Sign};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ConstructionStep {
    /// Adds `{+,a,b}` and `{-,a,b}`.
    AddSphere { a: u64, b: u64 },
    /// Replaces `{sign,a,b}` by `{sign,a,a+b}` and `{sign,b,a+b}`.
    BlowUp { sign: Sign, a: u64, b: u64 },
}

impl ConstructionStep {
    pub fn add_sphere(a: u64, b: u64) -> Self {
        ConstructionStep::AddSphere {
            a: a.min(b),
            b: a.max(b),
        }
    }

    pub fn blow_up(sign: Sign, a: u64, b: u64) -> Self {
        ConstructionStep::BlowUp {
            sign,
            a: a.min(b),
            b: a.max(b),
        }
    }

    pub fn apply(&self, data: &FixedPointData) -> Result<FixedPointData> {
        match *self {
            ConstructionStep::AddSphere { a, b } => add_sphere(data, a, b),
            ConstructionStep::BlowUp { sign, a, b } => {
                blow_up(data, &FixedPointDatum::new(sign, [a, b])?)
            }
        }
    }
}

impl fmt::Display for ConstructionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionStep::AddSphere { a, b } => write!(f, "AddSphere({a},{b})"),
            ConstructionStep::BlowUp { sign, a, b } => write!(f, "BlowUp({sign},{a},{b})"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConstructionTrace {
    pub steps: Vec<ConstructionStep>,
}

impl ConstructionTrace {
    pub fn new(steps: Vec<ConstructionStep>) -> Self {
        ConstructionTrace { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: ConstructionStep) {
        self.steps.push(step);
    }

    pub fn then(&self, step: ConstructionStep) -> Self {
        let mut t = self.clone();
        t.push(step);
        t
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}

impl fmt::Display for ConstructionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

fn require_dim4(data: &FixedPointData) -> Result<()> {
    if data.is_empty() || data.arity() == 2 {
        Ok(())
    } else {
        Err(Error::ArityMismatch {
            left: data.arity(),
            right: 2,
        })
    }
}

/// Adds the two fixed points of a rotation of the 4-sphere with coprime
/// weights `a`, `b`.
pub fn add_sphere(data: &FixedPointData, a: u64, b: u64) -> Result<FixedPointData> {
    require_dim4(data)?;
    if a == 0 || b == 0 || a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    data.with([
        FixedPointDatum::pair(Sign::Plus, a, b),
        FixedPointDatum::pair(Sign::Minus, a, b),
    ])
}

/// Replaces one copy of `point = {s,a,b}` by `{s,a,a+b}` and `{s,b,a+b}`.
pub fn blow_up(data: &FixedPointData, point: &FixedPointDatum) -> Result<FixedPointData> {
    require_dim4(data)?;
    let [a, b] = point.weights() else {
        return Err(Error::ArityMismatch {
            left: point.arity(),
            right: 2,
        });
    };
    let sum = a.checked_add(*b).ok_or(Error::Overflow { a: *a, b: *b })?;
    let rest = data
        .without(&[point])
        .ok_or_else(|| Error::PointNotPresent(point.clone()))?;
    rest.with([
        FixedPointDatum::pair(point.sign(), *a, sum),
        FixedPointDatum::pair(point.sign(), *b, sum),
    ])
}

/// The blown-down point of a pair `{s,a,w}`, `{s,b,w}` with `a + b = w`.
pub fn blow_down_target(
    first: &FixedPointDatum,
    second: &FixedPointDatum,
) -> Result<FixedPointDatum> {
    if first.arity() != 2 || second.arity() != 2 {
        return Err(Error::PairInvalid(
            Box::new(first.clone()),
            Box::new(second.clone()),
            "points need two weights",
        ));
    }
    if first.sign() != second.sign() {
        return Err(Error::PairInvalid(
            Box::new(first.clone()),
            Box::new(second.clone()),
            "signs differ",
        ));
    }
    let mut shared = false;
    for &w in first.weights() {
        let (Some(a), Some(b)) = (first.other_weight(w), second.other_weight(w)) else {
            continue;
        };
        shared = true;
        if a.checked_add(b) == Some(w) {
            return Ok(FixedPointDatum::pair(first.sign(), a, b));
        }
    }
    let why = if shared {
        "remaining weights do not add up to the shared weight"
    } else {
        "no shared weight"
    };
    Err(Error::PairInvalid(
        Box::new(first.clone()),
        Box::new(second.clone()),
        why,
    ))
}

/// Inverse of [`blow_up`]: replaces `{s,a,w}` and `{s,b,w}` (with `a + b = w`)
/// by `{s,a,b}`.
pub fn blow_down(
    data: &FixedPointData,
    first: &FixedPointDatum,
    second: &FixedPointDatum,
) -> Result<FixedPointData> {
    require_dim4(data)?;
    let target = blow_down_target(first, second)?;
    let rest = data.without(&[first, second]).ok_or_else(|| {
        Error::PointNotPresent(if data.contains(first) { second } else { first }.clone())
    })?;
    rest.with([target])
}

/// Inverse of [`add_sphere`]: removes `{+,a,w}` and `{-,a,w}`.
pub fn remove_sphere(data: &FixedPointData, a: u64, w: u64) -> Result<FixedPointData> {
    require_dim4(data)?;
    let plus = FixedPointDatum::pair(Sign::Plus, a, w);
    let minus = FixedPointDatum::pair(Sign::Minus, a, w);
    data.without(&[&plus, &minus]).ok_or(Error::PairNotPresent {
        a: a.min(w),
        w: a.max(w),
    })
}

/// Data of an equivariant sum: the union of both sides, each optionally with
/// reversed orientation. No free-orbit hypothesis is visible at this level.
pub fn equivariant_sum(
    left: &FixedPointData,
    left_orientation: Sign,
    right: &FixedPointData,
    right_orientation: Sign,
) -> Result<FixedPointData> {
    if !left.is_empty() && !right.is_empty() && left.arity() != right.arity() {
        return Err(Error::ArityMismatch {
            left: left.arity(),
            right: right.arity(),
        });
    }
    let orient = |d: &FixedPointData, s: Sign| match s {
        Sign::Plus => d.clone(),
        Sign::Minus => d.reverse_orientation(),
    };
    let l = orient(left, left_orientation);
    let r = orient(right, right_orientation);
    FixedPointData::new(l.points().iter().chain(r.points()).cloned())
}

/// Folds the steps from empty data, failing at the first step that does not
/// apply.
pub fn replay(trace: &ConstructionTrace) -> Result<FixedPointData> {
    trace
        .steps
        .iter()
        .enumerate()
        .try_fold(FixedPointData::empty(), |data, (index, step)| {
            step.apply(&data).map_err(|e| Error::StepInapplicable {
                index,
                source: Box::new(e),
            })
        })
}
