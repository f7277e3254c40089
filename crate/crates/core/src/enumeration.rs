//! Bounded exhaustive generation of realizable 4-dimensional fixed point data.
//!
//! Breadth-first closure from the empty data under the two construction
//! steps, deduplicated by canonical form. Both steps only ever increase the
//! point count and the largest weight, so cutting at the bounds loses nothing
//! that lies within them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::data::{FixedPointData, FixedPointDatum, Sign};
use crate::error::{Error, Result};
use crate::invariants::signature;
use crate::ops4::{ConstructionStep, ConstructionTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnumerationBounds {
    pub max_points: usize,
    pub max_weight: u64,
}

impl EnumerationBounds {
    pub fn new(max_points: usize, max_weight: u64) -> Self {
        EnumerationBounds {
            max_points,
            max_weight,
        }
    }
}

/// Every reachable data set within bounds, with the first trace that reached
/// it. Iteration is in canonical order.
#[derive(Debug, Clone, Default)]
pub struct Corpus {
    entries: BTreeMap<FixedPointData, ConstructionTrace>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, data: &FixedPointData) -> bool {
        self.entries.contains_key(data)
    }

    pub fn trace(&self, data: &FixedPointData) -> Option<&ConstructionTrace> {
        self.entries.get(data)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FixedPointData, &ConstructionTrace)> {
        self.entries.iter()
    }

    pub fn data(&self) -> impl Iterator<Item = &FixedPointData> {
        self.entries.keys()
    }

    pub fn with_points(&self, k: usize) -> impl Iterator<Item = &FixedPointData> {
        self.entries.keys().filter(move |d| d.len() == k)
    }

    /// Signatures of the entries with exactly `k` points.
    pub fn signature_spectrum(&self, k: usize) -> BTreeSet<i64> {
        self.with_points(k).map(signature).collect()
    }
}

/// Coprime `(a, b)` with `1 <= a <= b <= max_weight`.
pub fn coprime_pairs(max_weight: u64) -> Vec<(u64, u64)> {
    (1..=max_weight)
        .flat_map(|a| (a..=max_weight).map(move |b| (a, b)))
        .filter(|(a, b)| a.gcd(b) == 1)
        .collect()
}

fn successors(
    data: &FixedPointData,
    bounds: EnumerationBounds,
    spheres: &[(u64, u64)],
) -> Vec<(FixedPointData, ConstructionStep)> {
    let mut out = Vec::new();
    if data.len() + 2 <= bounds.max_points {
        for &(a, b) in spheres {
            let next = data
                .with([
                    FixedPointDatum::pair(Sign::Plus, a, b),
                    FixedPointDatum::pair(Sign::Minus, a, b),
                ])
                .expect("same arity");
            out.push((next, ConstructionStep::add_sphere(a, b)));
        }
    }
    if data.len() < bounds.max_points {
        let mut previous: Option<&FixedPointDatum> = None;
        for p in data.iter() {
            if previous == Some(p) {
                continue;
            }
            previous = Some(p);
            let &[a, b] = p.weights() else { continue };
            if a + b > bounds.max_weight {
                continue;
            }
            let next = crate::ops4::blow_up(data, p).expect("point present");
            out.push((next, ConstructionStep::blow_up(p.sign(), a, b)));
        }
    }
    out
}

/// Closure of the construction steps within `bounds`. With `jobs > 1` each
/// BFS level is expanded on a thread pool; levels are merged in frontier
/// order, so the result is identical for every job count.
pub fn enumerate_with_jobs(bounds: EnumerationBounds, jobs: usize) -> Corpus {
    let spheres = coprime_pairs(bounds.max_weight);
    let mut seen: HashMap<FixedPointData, ConstructionTrace> = HashMap::new();
    seen.insert(FixedPointData::empty(), ConstructionTrace::default());
    let mut frontier = vec![FixedPointData::empty()];

    let pool = (jobs > 1).then(|| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool")
    });

    while !frontier.is_empty() {
        let expanded: Vec<Vec<(FixedPointData, ConstructionStep)>> = match &pool {
            Some(pool) => pool.install(|| {
                frontier
                    .par_iter()
                    .map(|d| successors(d, bounds, &spheres))
                    .collect()
            }),
            None => frontier
                .iter()
                .map(|d| successors(d, bounds, &spheres))
                .collect(),
        };
        let mut next = Vec::new();
        for (parent, children) in frontier.iter().zip(expanded) {
            for (child, step) in children {
                if seen.contains_key(&child) {
                    continue;
                }
                let trace = seen[parent].then(step);
                seen.insert(child.clone(), trace);
                next.push(child);
            }
        }
        next.sort();
        frontier = next;
    }
    Corpus {
        entries: seen.into_iter().collect(),
    }
}

pub fn enumerate(bounds: EnumerationBounds) -> Corpus {
    enumerate_with_jobs(bounds, 1)
}

/// Every multiset of at most `max_points` signed coprime pairs with weights up
/// to `max_weight`, realizable or not. Includes the empty data.
pub fn candidate_universe(max_points: usize, max_weight: u64) -> Vec<FixedPointData> {
    let mut kinds: Vec<FixedPointDatum> = coprime_pairs(max_weight)
        .into_iter()
        .flat_map(|(a, b)| [Sign::Plus, Sign::Minus].map(|s| FixedPointDatum::pair(s, a, b)))
        .collect();
    kinds.sort();

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        kinds: &[FixedPointDatum],
        left: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<FixedPointData>,
    ) {
        out.push(FixedPointData::new(chosen.iter().map(|&i| kinds[i].clone())).expect("arity 2"));
        if left == 0 {
            return;
        }
        for i in start..kinds.len() {
            chosen.push(i);
            rec(i, kinds, left - 1, chosen, out);
            chosen.pop();
        }
    }
    rec(0, &kinds, max_points, &mut chosen, &mut out);
    out
}

/// Signatures realized by exactly `k` points with weights up to `max_weight`.
pub fn signature_spectrum(k: usize, max_weight: u64) -> BTreeSet<i64> {
    enumerate(EnumerationBounds::new(k, max_weight)).signature_spectrum(k)
}

/// Closed-form families of realizable data with two, three or four points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `{+,a,b}, {-,a,b}`.
    MirroredPair { a: u64, b: u64 },
    /// `{-s,a,b}, {s,a,a+b}, {s,b,a+b}`.
    BlownUpSphere { orientation: Sign, a: u64, b: u64 },
    /// `{+,a,b}, {-,a,b}, {+,c,d}, {-,c,d}`.
    TwoSpheres { a: u64, b: u64, c: u64, d: u64 },
    /// `{-s,a,b}, {s,a,a+b}, {s,b,a+2b}, {s,a+b,a+2b}`.
    TwiceBlownUpSphere { orientation: Sign, a: u64, b: u64 },
}

impl Family {
    /// The data this family member stands for.
    pub fn data(&self) -> Option<FixedPointData> {
        let pairs: Vec<(Sign, u64, u64)> = match *self {
            Family::MirroredPair { a, b } => vec![(Sign::Plus, a, b), (Sign::Minus, a, b)],
            Family::BlownUpSphere {
                orientation: s,
                a,
                b,
            } => {
                let ab = a.checked_add(b)?;
                vec![(-s, a, b), (s, a, ab), (s, b, ab)]
            }
            Family::TwoSpheres { a, b, c, d } => vec![
                (Sign::Plus, a, b),
                (Sign::Minus, a, b),
                (Sign::Plus, c, d),
                (Sign::Minus, c, d),
            ],
            Family::TwiceBlownUpSphere {
                orientation: s,
                a,
                b,
            } => {
                let ab = a.checked_add(b)?;
                let abb = ab.checked_add(b)?;
                vec![(-s, a, b), (s, a, ab), (s, b, abb), (s, ab, abb)]
            }
        };
        Some(FixedPointData::from_pairs(&pairs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classified {
    pub data: FixedPointData,
    #[serde(flatten)]
    pub family: Family,
    pub signature: i64,
}

/// All family members whose data equals `data`.
pub fn matching_families(data: &FixedPointData) -> Vec<Family> {
    if data.arity() != 2 {
        return Vec::new();
    }
    let plus: Vec<&FixedPointDatum> = data.iter().filter(|p| p.sign() == Sign::Plus).collect();
    let minus: Vec<&FixedPointDatum> = data.iter().filter(|p| p.sign() == Sign::Minus).collect();
    let wts = |p: &FixedPointDatum| (p.weights()[0], p.weights()[1]);

    let mut candidates = Vec::new();
    match data.len() {
        2 => {
            if let [p] = plus[..] {
                let (a, b) = wts(p);
                candidates.push(Family::MirroredPair { a, b });
            }
        }
        3 | 4 => {
            let (lone, majority) = match (plus.len(), minus.len()) {
                (1, _) => (Some(plus[0]), Sign::Minus),
                (_, 1) => (Some(minus[0]), Sign::Plus),
                _ => (None, Sign::Plus),
            };
            if let Some(p) = lone {
                let (x, y) = wts(p);
                for (a, b) in [(x, y), (y, x)] {
                    candidates.push(if data.len() == 3 {
                        Family::BlownUpSphere {
                            orientation: majority,
                            a: x,
                            b: y,
                        }
                    } else {
                        Family::TwiceBlownUpSphere {
                            orientation: majority,
                            a,
                            b,
                        }
                    });
                }
            }
            if data.len() == 4 && plus.len() == 2 {
                for m in [[0, 1], [1, 0]] {
                    let (a, b) = wts(plus[0]);
                    let (c, d) = wts(plus[1]);
                    if wts(minus[m[0]]) == (a, b) && wts(minus[m[1]]) == (c, d) {
                        candidates.push(Family::TwoSpheres { a, b, c, d });
                    }
                }
            }
        }
        _ => {}
    }
    let mut found: Vec<Family> = candidates
        .into_iter()
        .filter(|f| f.data().as_ref() == Some(data))
        .collect();
    found.dedup();
    found
}

/// Matches every `k`-point entry of the bounded corpus against the closed-form
/// families. Each entry must match exactly one.
pub fn classify_small(k: usize, max_weight: u64) -> Result<Vec<Classified>> {
    if !(2..=4).contains(&k) {
        return Err(Error::UnsupportedPointCount(k));
    }
    let corpus = enumerate(EnumerationBounds::new(k, max_weight));
    corpus.with_points(k).map(classify_entry).collect()
}

pub fn classify_entry(data: &FixedPointData) -> Result<Classified> {
    match matching_families(data)[..] {
        [family] => Ok(Classified {
            data: data.clone(),
            family,
            signature: signature(data),
        }),
        _ => Err(Error::UnmatchedEntry(data.to_string())),
    }
}
