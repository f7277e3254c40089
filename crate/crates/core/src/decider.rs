//! Realizability of 4-dimensional fixed point data.
//!
//! The search always attacks the largest weight `w > 1`. The canonically
//! first point `{s,a,w}` carrying it must sit on an isotropy sphere with some
//! partner `q`, and either `q = {s,b,w}` with `a + b = w` (undo a blow-up) or
//! `q = {-s,a,w}` (remove a rotated sphere). Several partners can be locally
//! valid for a bare multiset, so all are tried, with failed states memoized by
//! canonical form. When every weight is 1 the data is realizable iff the
//! signs balance.

use std::collections::HashSet;

use serde::Serialize;

use crate::data::{validate, FixedPointData, FixedPointDatum, Sign, ValidationMode};
use crate::error::{Error, Result};
use crate::invariants::{signature, smallest_weight_balance, weight_parity_check};
use crate::ops4::{blow_down, remove_sphere, replay, ConstructionStep, ConstructionTrace};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    OddWeightMultiplicity {
        weight: u64,
        count: u64,
    },
    SmallestWeightImbalance {
        weight: u64,
        balance: i64,
    },
    SignatureOutOfRange {
        signature: i64,
        points: usize,
    },
    SemiFreeImbalance {
        plus: usize,
        minus: usize,
    },
    /// No partner choice at this weight level led to a realizable state.
    SearchExhausted {
        weight: u64,
    },
}

impl Obstruction {
    /// Name of the invariant check that reports the same failure.
    pub fn check_name(&self) -> Option<&'static str> {
        use crate::invariants::check_names::*;
        match self {
            Obstruction::OddWeightMultiplicity { .. } => Some(WEIGHT_PARITY),
            Obstruction::SmallestWeightImbalance { .. } => Some(SMALLEST_WEIGHT_BALANCE),
            Obstruction::SignatureOutOfRange { .. } => Some(SIGNATURE_RANGE),
            Obstruction::SemiFreeImbalance { .. } => Some(SEMI_FREE),
            Obstruction::SearchExhausted { .. } => None,
        }
    }
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::OddWeightMultiplicity { weight, count } => {
                write!(f, "weight {weight} occurs {count} times")
            }
            Obstruction::SmallestWeightImbalance { weight, balance } => {
                write!(f, "smallest weight {weight} has signed count {balance}")
            }
            Obstruction::SignatureOutOfRange { signature, points } => {
                write!(f, "signature {signature} out of range for {points} points")
            }
            Obstruction::SemiFreeImbalance { plus, minus } => {
                write!(
                    f,
                    "all weights 1 with {plus} positive and {minus} negative points"
                )
            }
            Obstruction::SearchExhausted { weight } => {
                write!(
                    f,
                    "no pairing of weight {weight} reduces to realizable data"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub realizable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ConstructionTrace>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
}

impl Decision {
    fn yes(trace: ConstructionTrace) -> Self {
        Decision {
            realizable: true,
            trace: Some(trace),
            obstruction: None,
        }
    }

    fn no(obstruction: Obstruction) -> Self {
        Decision {
            realizable: false,
            trace: None,
            obstruction: Some(obstruction),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decision serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("decision serializes")
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// States expanded.
    pub nodes: usize,
    pub memo_hits: usize,
    /// States where the first partner failed and a later one succeeded.
    pub late_successes: usize,
}

/// Per-call search state. Only failures are memoized; a success returns
/// straight up the stack.
#[derive(Debug, Default)]
pub struct SearchState {
    failed: HashSet<FixedPointData>,
    pub stats: SearchStats,
}

impl SearchState {
    pub fn is_known_failure(&self, data: &FixedPointData) -> bool {
        self.failed.contains(data)
    }

    fn search(&mut self, data: &FixedPointData) -> Option<ConstructionTrace> {
        let Some(w) = data.max_weight() else {
            return Some(ConstructionTrace::default());
        };
        if w == 1 {
            let plus = data.count_sign(Sign::Plus);
            if plus != data.count_sign(Sign::Minus) {
                return None;
            }
            return Some(ConstructionTrace::new(vec![
                ConstructionStep::add_sphere(
                    1, 1
                );
                plus
            ]));
        }
        if self.failed.contains(data) {
            self.stats.memo_hits += 1;
            return None;
        }
        self.stats.nodes += 1;

        let p = data
            .iter()
            .find(|p| p.contains(w))
            .expect("some point carries the max weight");
        let a = p.other_weight(w).expect("two-weight point");

        let mut tried = 0;
        let mut previous: Option<&FixedPointDatum> = None;
        for q in data.iter().filter(|q| q.contains(w)) {
            if previous == Some(q) {
                continue;
            }
            previous = Some(q);
            if q == p && data.count_of(p) < 2 {
                continue;
            }
            let b = q.other_weight(w).expect("two-weight point");
            let (reduced, step) = if q.sign() == p.sign() {
                if a + b != w {
                    continue;
                }
                let reduced = blow_down(data, p, q).expect("valid blow-down pair");
                (reduced, ConstructionStep::blow_up(p.sign(), a, b))
            } else {
                if a != b {
                    continue;
                }
                let reduced = remove_sphere(data, a, w).expect("mirrored pair present");
                (reduced, ConstructionStep::add_sphere(a, w))
            };
            tried += 1;
            if let Some(trace) = self.search(&reduced) {
                if tried > 1 {
                    self.stats.late_successes += 1;
                }
                return Some(trace.then(step));
            }
        }
        self.failed.insert(data.clone());
        None
    }
}

fn screen(data: &FixedPointData) -> Option<Obstruction> {
    if data.is_empty() {
        return None;
    }
    if let Some((weight, count)) = weight_parity_check(data).first_odd() {
        return Some(Obstruction::OddWeightMultiplicity { weight, count });
    }
    let balance = smallest_weight_balance(data).expect("non-empty");
    if balance != 0 {
        return Some(Obstruction::SmallestWeightImbalance {
            weight: data.min_weight().expect("non-empty"),
            balance,
        });
    }
    let sig = signature(data);
    let k = data.len();
    if sig.abs() > k as i64 - 2 {
        return Some(Obstruction::SignatureOutOfRange {
            signature: sig,
            points: k,
        });
    }
    None
}

/// Decides realizability, returning the search statistics alongside.
pub fn decide_with_stats(data: &FixedPointData) -> Result<(Decision, SearchStats)> {
    let report = validate(data, ValidationMode::EffectiveDim4);
    if !report.ok() {
        return Err(Error::ValidationFailed(report));
    }
    if let Some(obstruction) = screen(data) {
        return Ok((Decision::no(obstruction), SearchStats::default()));
    }
    let mut state = SearchState::default();
    let decision = match state.search(data) {
        Some(trace) => Decision::yes(trace),
        None => match data.max_weight() {
            Some(1) => Decision::no(Obstruction::SemiFreeImbalance {
                plus: data.count_sign(Sign::Plus),
                minus: data.count_sign(Sign::Minus),
            }),
            w => Decision::no(Obstruction::SearchExhausted {
                weight: w.unwrap_or(0),
            }),
        },
    };
    Ok((decision, state.stats))
}

/// Decides whether `data` is the fixed point data of an effective circle
/// action on a closed oriented 4-manifold. A positive answer carries a
/// construction trace that replays to `data`.
pub fn decide(data: &FixedPointData) -> Result<Decision> {
    decide_with_stats(data).map(|(d, _)| d)
}

pub fn verify_trace(trace: &ConstructionTrace, data: &FixedPointData) -> bool {
    replay(trace).is_ok_and(|d| d == *data)
}
