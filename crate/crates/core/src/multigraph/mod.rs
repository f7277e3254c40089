//! Signed, labelled, 2-regular multigraphs whose vertices are fixed points
//! and whose edges are isotropy spheres labelled by their weight.
//!
//! [`graph_of`] builds the multigraph of a construction trace, [`data_of`]
//! reads the fixed point data back off a graph, and [`check_properties`]
//! evaluates the three realizability conditions (coprime labels at every
//! vertex, the congruence along every edge, opposite signs on every
//! smallest-label edge).

mod dot;

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::data::{FixedPointData, FixedPointDatum, Sign};
use crate::decider::decide;
use crate::error::{Error, Result};
use crate::ops4::{ConstructionStep, ConstructionTrace};

pub use dot::to_dot;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub sign: Sign,
}

/// Unordered edge between `u` and `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: u64,
}

impl Edge {
    pub fn other(&self, end: usize) -> usize {
        if self.u == end {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multigraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphViolation {
    DuplicateVertex { id: usize },
    UnknownEndpoint { edge: usize, vertex: usize },
    Loop { edge: usize, vertex: usize },
    Degree { vertex: usize, degree: usize },
    ZeroLabel { edge: usize },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub violations: Vec<GraphViolation>,
}

impl GraphReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Loop-freeness, 2-regularity, positive labels, and consistent vertex ids.
pub fn validate_graph(g: &Multigraph) -> GraphReport {
    let mut violations = Vec::new();
    let mut degree: HashMap<usize, usize> = HashMap::new();
    for v in &g.vertices {
        if degree.insert(v.id, 0).is_some() {
            violations.push(GraphViolation::DuplicateVertex { id: v.id });
        }
    }
    for (i, e) in g.edges.iter().enumerate() {
        if e.label == 0 {
            violations.push(GraphViolation::ZeroLabel { edge: i });
        }
        if e.u == e.v {
            violations.push(GraphViolation::Loop {
                edge: i,
                vertex: e.u,
            });
        }
        for end in [e.u, e.v] {
            match degree.get_mut(&end) {
                Some(d) => *d += 1,
                None => violations.push(GraphViolation::UnknownEndpoint {
                    edge: i,
                    vertex: end,
                }),
            }
        }
    }
    for v in &g.vertices {
        let d = degree[&v.id];
        if d != 2 {
            violations.push(GraphViolation::Degree {
                vertex: v.id,
                degree: d,
            });
        }
    }
    GraphReport { violations }
}

impl Multigraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        Multigraph { vertices, edges }
    }

    pub fn vertex(&self, id: usize) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    /// Indices of the edges at each vertex, in edge order.
    fn incidence(&self) -> HashMap<usize, Vec<usize>> {
        let mut inc: HashMap<usize, Vec<usize>> =
            self.vertices.iter().map(|v| (v.id, Vec::new())).collect();
        for (i, e) in self.edges.iter().enumerate() {
            for end in [e.u, e.v] {
                if let Some(list) = inc.get_mut(&end) {
                    list.push(i);
                }
            }
        }
        inc
    }

    fn sign_map(&self) -> HashMap<usize, Sign> {
        self.vertices.iter().map(|v| (v.id, v.sign)).collect()
    }

    fn require_valid(&self) -> Result<()> {
        let report = validate_graph(self);
        if report.ok() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(
                serde_json::to_string(&report.violations).expect("violations serialize"),
            ))
        }
    }

    /// Vertex data paired with edge descriptions in terms of endpoint data.
    /// Two graphs with equal keys differ only by vertex ids and edge order.
    pub fn canonical_key(
        &self,
    ) -> (
        Vec<FixedPointDatum>,
        Vec<(FixedPointDatum, FixedPointDatum, u64)>,
    ) {
        let inc = self.incidence();
        let datum = |id: usize| {
            FixedPointDatum::new(
                self.vertex(id).map_or(Sign::Plus, |v| v.sign),
                inc[&id].iter().map(|&e| self.edges[e].label),
            )
            .expect("vertex with positive labels")
        };
        let mut vertices: Vec<_> = self.vertices.iter().map(|v| datum(v.id)).collect();
        vertices.sort();
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let (x, y) = (datum(e.u), datum(e.v));
                if x <= y {
                    (x, y, e.label)
                } else {
                    (y, x, e.label)
                }
            })
            .collect();
        edges.sort();
        (vertices, edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EffectiveWitness {
    pub vertex: usize,
    pub edges: [usize; 2],
    pub labels: [u64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeWitness {
    pub edge: usize,
    pub u: usize,
    pub v: usize,
    pub label: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PropertyStatus<W> {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<W>,
}

impl<W> PropertyStatus<W> {
    fn from_witness(witness: Option<W>) -> Self {
        PropertyStatus {
            pass: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub effective: PropertyStatus<EffectiveWitness>,
    pub equal_modulo: PropertyStatus<EdgeWitness>,
    pub minimal: PropertyStatus<EdgeWitness>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.effective.pass && self.equal_modulo.pass && self.minimal.pass
    }
}

/// The edge at a vertex other than `e`. For parallel edges this is the
/// remaining parallel copy.
fn other_edge(at: &[usize], e: usize) -> usize {
    if at[0] == e {
        at[1]
    } else {
        at[0]
    }
}

/// Evaluates the effective, equal modulo and minimal properties. The first
/// offending vertex or edge is kept as witness.
pub fn check_properties(g: &Multigraph) -> Result<PropertyReport> {
    g.require_valid()?;
    let inc = g.incidence();
    let signs = g.sign_map();

    let effective = g.vertices.iter().find_map(|v| {
        let at = &inc[&v.id];
        let labels = [g.edges[at[0]].label, g.edges[at[1]].label];
        (labels[0].gcd(&labels[1]) != 1).then_some(EffectiveWitness {
            vertex: v.id,
            edges: [at[0], at[1]],
            labels,
        })
    });

    let witness = |i: usize, e: &Edge| EdgeWitness {
        edge: i,
        u: e.u,
        v: e.v,
        label: e.label,
    };

    // -eps(v1) w(e1) = eps(v2) w(e2)  (mod w(e))
    let equal_modulo = g.edges.iter().enumerate().find_map(|(i, e)| {
        let e1 = g.edges[other_edge(&inc[&e.u], i)].label as i128;
        let e2 = g.edges[other_edge(&inc[&e.v], i)].label as i128;
        let s1 = signs[&e.u].value() as i128;
        let s2 = signs[&e.v].value() as i128;
        let lhs = -s1 * e1 - s2 * e2;
        (lhs.rem_euclid(e.label as i128) != 0).then(|| witness(i, e))
    });

    let min_label = g.edges.iter().map(|e| e.label).min();
    let minimal = g.edges.iter().enumerate().find_map(|(i, e)| {
        (Some(e.label) == min_label && signs[&e.u] == signs[&e.v]).then(|| witness(i, e))
    });

    Ok(PropertyReport {
        effective: PropertyStatus::from_witness(effective),
        equal_modulo: PropertyStatus::from_witness(equal_modulo),
        minimal: PropertyStatus::from_witness(minimal),
    })
}

/// Builds the multigraph of a trace. A sphere contributes two opposite-signed
/// vertices joined by edges labelled `a` and `b`. Blowing up `v = {s,a,b}`
/// keeps `v`'s id for `{s,a,a+b}` (holding the `a` edge), adds a new vertex
/// `{s,b,a+b}` that takes over the `b` edge, and joins them by an edge
/// labelled `a+b`. When `a = b` the lower-indexed edge stays with `v`. Among
/// identical candidate vertices the lowest id is blown up.
pub fn graph_of(trace: &ConstructionTrace) -> Result<Multigraph> {
    let mut g = Multigraph::default();
    for (index, step) in trace.steps.iter().enumerate() {
        match *step {
            ConstructionStep::AddSphere { a, b } => {
                if a == 0 || b == 0 || a.gcd(&b) != 1 {
                    return Err(Error::TraceInvalid(format!(
                        "step {index}: sphere weights {a}, {b} are not coprime"
                    )));
                }
                let id = g.vertices.len();
                g.vertices.push(Vertex {
                    id,
                    sign: Sign::Plus,
                });
                g.vertices.push(Vertex {
                    id: id + 1,
                    sign: Sign::Minus,
                });
                g.edges.push(Edge {
                    u: id,
                    v: id + 1,
                    label: a,
                });
                g.edges.push(Edge {
                    u: id,
                    v: id + 1,
                    label: b,
                });
            }
            ConstructionStep::BlowUp { sign, a, b } => {
                let (a, b) = (a.min(b), a.max(b));
                let inc = g.incidence();
                let target = g.vertices.iter().find_map(|v| {
                    if v.sign != sign {
                        return None;
                    }
                    let at = &inc[&v.id];
                    let (x, y) = (g.edges[at[0]].label, g.edges[at[1]].label);
                    if (x, y) == (a, b) {
                        Some((v.id, at[0], at[1]))
                    } else if (y, x) == (a, b) {
                        Some((v.id, at[1], at[0]))
                    } else {
                        None
                    }
                });
                let Some((v, _edge_a, edge_b)) = target else {
                    return Err(Error::TraceInvalid(format!(
                        "step {index}: no vertex {{{sign},{a},{b}}} to blow up"
                    )));
                };
                let sum = a.checked_add(b).ok_or(Error::Overflow { a, b })?;
                let new_id = g.vertices.iter().map(|v| v.id).max().map_or(0, |m| m + 1);
                g.vertices.push(Vertex { id: new_id, sign });
                let e = &mut g.edges[edge_b];
                if e.u == v {
                    e.u = new_id;
                } else {
                    e.v = new_id;
                }
                g.edges.push(Edge {
                    u: v,
                    v: new_id,
                    label: sum,
                });
            }
        }
    }
    Ok(g)
}

/// Fixed point data read off the vertices: each vertex's sign and incident
/// labels.
pub fn data_of(g: &Multigraph) -> Result<FixedPointData> {
    g.require_valid()?;
    let inc = g.incidence();
    FixedPointData::new(g.vertices.iter().map(|v| {
        FixedPointDatum::new(v.sign, inc[&v.id].iter().map(|&e| g.edges[e].label))
            .expect("validated labels are positive")
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Realization {
    Realizable { trace: ConstructionTrace },
    NotRealizable { properties: PropertyReport },
}

/// A construction trace for a graph satisfying all three properties. The
/// trace comes from the data-level decider on the graph's vertex data; a
/// rejection there is reported as [`Error::InternalInconsistency`].
pub fn realize(g: &Multigraph) -> Result<Realization> {
    let properties = check_properties(g)?;
    if !properties.all_pass() {
        return Ok(Realization::NotRealizable { properties });
    }
    let data = data_of(g)?;
    let decision = decide(&data)?;
    match decision.trace {
        Some(trace) => Ok(Realization::Realizable { trace }),
        None => Err(Error::InternalInconsistency(data.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Sign::{Minus as M, Plus as P};
    use crate::ops4::replay;

    pub(crate) fn graph(vertices: &[(usize, Sign)], edges: &[(usize, usize, u64)]) -> Multigraph {
        Multigraph::new(
            vertices
                .iter()
                .map(|&(id, sign)| Vertex { id, sign })
                .collect(),
            edges
                .iter()
                .map(|&(u, v, label)| Edge { u, v, label })
                .collect(),
        )
    }

    fn triangle(apex: Sign) -> Multigraph {
        // p(apex), p1(+), p2(+); p-p1:1, p-p2:1, p1-p2:2
        graph(
            &[(0, apex), (1, P), (2, P)],
            &[(0, 1, 1), (0, 2, 1), (1, 2, 2)],
        )
    }

    fn trace(steps: &[ConstructionStep]) -> ConstructionTrace {
        ConstructionTrace::new(steps.to_vec())
    }

    #[test]
    fn validate_examples() {
        assert!(validate_graph(&triangle(M)).ok());
        let three = graph(&[(0, P), (1, M)], &[(0, 1, 1), (0, 1, 2), (0, 1, 3)]);
        let r = validate_graph(&three);
        assert!(r.violations.contains(&GraphViolation::Degree {
            vertex: 0,
            degree: 3
        }));
        let looped = graph(&[(0, P)], &[(0, 0, 1)]);
        assert!(validate_graph(&looped)
            .violations
            .contains(&GraphViolation::Loop { edge: 0, vertex: 0 }));
        let zero = graph(&[(0, P), (1, M)], &[(0, 1, 0), (0, 1, 1)]);
        assert!(validate_graph(&zero)
            .violations
            .contains(&GraphViolation::ZeroLabel { edge: 0 }));
        let dangling = graph(&[(0, P), (1, M)], &[(0, 1, 1), (0, 7, 1), (1, 0, 1)]);
        assert!(validate_graph(&dangling)
            .violations
            .contains(&GraphViolation::UnknownEndpoint { edge: 1, vertex: 7 }));
    }

    #[test]
    fn properties_examples() {
        let r = check_properties(&triangle(M)).unwrap();
        assert!(r.all_pass(), "{r:?}");

        let r = check_properties(&triangle(P)).unwrap();
        assert!(r.effective.pass && r.equal_modulo.pass);
        assert!(!r.minimal.pass);

        let double = graph(&[(0, P), (1, M)], &[(0, 1, 1), (0, 1, 2)]);
        assert!(check_properties(&double).unwrap().all_pass());

        let non_effective = graph(&[(0, P), (1, M)], &[(0, 1, 2), (0, 1, 4)]);
        let r = check_properties(&non_effective).unwrap();
        assert!(!r.effective.pass);
        assert_eq!(r.effective.witness.unwrap().labels, [2, 4]);

        // {+,1,3}-{-,1,3} joined by 3 and 1 is fine; relabel the 1 edge of a
        // same-sign pair to break the congruence
        let bad_mod = graph(
            &[(0, P), (1, P), (2, M)],
            &[(0, 1, 3), (0, 2, 1), (1, 2, 1)],
        );
        let r = check_properties(&bad_mod).unwrap();
        assert!(!r.equal_modulo.pass);
        assert_eq!(r.equal_modulo.witness.unwrap().label, 3);

        assert!(matches!(
            check_properties(&graph(&[(0, P)], &[(0, 0, 1)])),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn graph_of_sphere() {
        let g = graph_of(&trace(&[ConstructionStep::add_sphere(1, 2)])).unwrap();
        assert_eq!(g, graph(&[(0, P), (1, M)], &[(0, 1, 1), (0, 1, 2)]));
    }

    #[test]
    fn graph_of_blown_up_sphere() {
        let t = trace(&[
            ConstructionStep::add_sphere(1, 1),
            ConstructionStep::blow_up(P, 1, 1),
        ]);
        let g = graph_of(&t).unwrap();
        assert_eq!(
            g,
            graph(
                &[(0, P), (1, M), (2, P)],
                &[(0, 1, 1), (2, 1, 1), (0, 2, 2)]
            )
        );
        assert_eq!(g.canonical_key(), triangle(M).canonical_key());
        assert_eq!(data_of(&g).unwrap(), replay(&t).unwrap());
    }

    #[test]
    fn graph_of_unequal_blow_up() {
        let t = trace(&[
            ConstructionStep::add_sphere(1, 2),
            ConstructionStep::blow_up(P, 1, 2),
        ]);
        let g = graph_of(&t).unwrap();
        assert!(validate_graph(&g).ok());
        assert!(check_properties(&g).unwrap().all_pass());
        let data = data_of(&g).unwrap();
        assert_eq!(data, replay(&t).unwrap());
        assert_eq!(
            data,
            FixedPointData::from_pairs(&[(M, 1, 2), (P, 1, 3), (P, 2, 3)])
        );
        let mut labels: Vec<_> = g.edges.iter().map(|e| e.label).collect();
        labels.sort();
        assert_eq!(labels, [1, 2, 3]);
    }

    #[test]
    fn graph_of_rejects_bad_traces() {
        assert!(matches!(
            graph_of(&trace(&[ConstructionStep::blow_up(P, 1, 1)])),
            Err(Error::TraceInvalid(_))
        ));
        assert!(matches!(
            graph_of(&trace(&[ConstructionStep::AddSphere { a: 2, b: 4 }])),
            Err(Error::TraceInvalid(_))
        ));
    }

    #[test]
    fn data_of_examples() {
        assert_eq!(
            data_of(&triangle(M)).unwrap(),
            FixedPointData::from_pairs(&[(M, 1, 1), (P, 1, 2), (P, 1, 2)])
        );
        let double = graph(&[(0, P), (1, M)], &[(0, 1, 1), (0, 1, 2)]);
        assert_eq!(
            data_of(&double).unwrap(),
            FixedPointData::from_pairs(&[(P, 1, 2), (M, 1, 2)])
        );
    }

    #[test]
    fn realize_examples() {
        assert_eq!(
            realize(&triangle(M)).unwrap(),
            Realization::Realizable {
                trace: trace(&[
                    ConstructionStep::add_sphere(1, 1),
                    ConstructionStep::blow_up(P, 1, 1)
                ])
            }
        );
        match realize(&triangle(P)).unwrap() {
            Realization::NotRealizable { properties } => assert!(!properties.minimal.pass),
            other => panic!("{other:?}"),
        }
        let non_effective = graph(&[(0, P), (1, M)], &[(0, 1, 2), (0, 1, 4)]);
        match realize(&non_effective).unwrap() {
            Realization::NotRealizable { properties } => assert!(!properties.effective.pass),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn graph_json_format() {
        let double = graph(&[(0, P), (1, M)], &[(0, 1, 1), (0, 1, 2)]);
        let json = double.to_json();
        assert_eq!(
            json,
            r#"{"vertices":[{"id":0,"sign":1},{"id":1,"sign":-1}],"edges":[{"u":0,"v":1,"label":1},{"u":0,"v":1,"label":2}]}"#
        );
        assert_eq!(Multigraph::parse(&json).unwrap(), double);
    }
}
