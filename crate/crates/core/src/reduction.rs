//! Local circuit rewrites that leave every external effective resistance
//! unchanged: series, parallel, Δ-Y and star-mesh.
//!
//! Each `*_step` function returns the rewritten network together with a
//! [`ReductionStep`] describing exactly what changed. The plain variants
//! drop the step.

use std::fmt;

use crate::error::{Error, Result};
use crate::network::{ResistanceNetwork, VertexId};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    /// `removed` had neighbors `x` (resistance `r1`) and `z` (`r2`); the new
    /// edge `x`-`z` has `r1 + r2`.
    Series {
        removed: VertexId,
        x: VertexId,
        z: VertexId,
        r1: Rational,
        r2: Rational,
        result: Rational,
    },
    Parallel {
        x: VertexId,
        y: VertexId,
        before: Vec<Rational>,
        result: Rational,
    },
    /// Triangle `x, y, z` with `ra` opposite `x` (edge `y`-`z`), `rb` opposite
    /// `y`, `rc` opposite `z`, replaced by a star at `center` with legs
    /// `r1` (to `x`), `r2` (to `y`), `r3` (to `z`).
    DeltaY {
        x: VertexId,
        y: VertexId,
        z: VertexId,
        center: VertexId,
        ra: Rational,
        rb: Rational,
        rc: Rational,
        r1: Rational,
        r2: Rational,
        r3: Rational,
    },
    /// `removed` was eliminated; `added` lists the merged mesh edges.
    StarMesh {
        removed: VertexId,
        legs: Vec<(VertexId, Rational)>,
        added: Vec<(VertexId, VertexId, Rational)>,
    },
}

impl ReductionStep {
    pub fn kind(&self) -> &'static str {
        match self {
            ReductionStep::Series { .. } => "series",
            ReductionStep::Parallel { .. } => "parallel",
            ReductionStep::DeltaY { .. } => "delta-y",
            ReductionStep::StarMesh { .. } => "star-mesh",
        }
    }

    /// Applies the same rewrite to `net`, recomputing it from scratch.
    pub fn apply(&self, net: &ResistanceNetwork) -> Result<(ResistanceNetwork, ReductionStep)> {
        match self {
            ReductionStep::Series { removed, .. } => series_step(net, *removed),
            ReductionStep::Parallel { x, y, .. } => parallel_step(net, *x, *y),
            ReductionStep::DeltaY { x, y, z, .. } => delta_y_step(net, *x, *y, *z),
            ReductionStep::StarMesh { removed, .. } => star_mesh_step(net, *removed),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let s = |r: &Rational| r.to_string();
        match self {
            ReductionStep::Series { removed, x, z, r1, r2, result } => json!({
                "kind": "series", "vertices": [removed.0, x.0, z.0],
                "before": [s(r1), s(r2)], "after": [s(result)],
            }),
            ReductionStep::Parallel { x, y, before, result } => json!({
                "kind": "parallel", "vertices": [x.0, y.0],
                "before": before.iter().map(s).collect::<Vec<_>>(), "after": [s(result)],
            }),
            ReductionStep::DeltaY { x, y, z, center, ra, rb, rc, r1, r2, r3 } => json!({
                "kind": "delta-y", "vertices": [x.0, y.0, z.0, center.0],
                "before": [s(ra), s(rb), s(rc)], "after": [s(r1), s(r2), s(r3)],
            }),
            ReductionStep::StarMesh { removed, legs, added } => json!({
                "kind": "star-mesh",
                "vertices": std::iter::once(removed.0).chain(legs.iter().map(|l| l.0 .0)).collect::<Vec<_>>(),
                "before": legs.iter().map(|l| s(&l.1)).collect::<Vec<_>>(),
                "after": added.iter().map(|a| format!("{}-{}:{}", a.0, a.1, a.2)).collect::<Vec<_>>(),
            }),
        }
    }
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::Series { removed, x, z, r1, r2, result } => {
                write!(f, "series    drop {removed}: {x}-{z} = {r1} + {r2} = {result}")
            }
            ReductionStep::Parallel { x, y, before, result } => {
                let parts: Vec<_> = before.iter().map(|r| r.to_string()).collect();
                write!(f, "parallel  {x}-{y}: {} -> {result}", parts.join(" || "))
            }
            ReductionStep::DeltaY { x, y, z, center, ra, rb, rc, r1, r2, r3 } => {
                write!(f, "delta-y   ({x},{y},{z}) [{ra}, {rb}, {rc}] -> center {center} [{r1}, {r2}, {r3}]")
            }
            ReductionStep::StarMesh { removed, added, .. } => {
                let parts: Vec<_> = added.iter().map(|(p, q, r)| format!("{p}-{q}={r}")).collect();
                write!(f, "star-mesh drop {removed}: {}", parts.join(", "))
            }
        }
    }
}

/// Ordered record of applied steps.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn push(&mut self, step: ReductionStep) {
        self.steps.push(step);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn count(&self, kind: &str) -> usize {
        self.steps.iter().filter(|s| s.kind() == kind).count()
    }

    /// Re-runs every step from `initial`, checking each recomputed step
    /// matches the recorded one. Returns the final network.
    pub fn replay(&self, initial: &ResistanceNetwork) -> Result<ResistanceNetwork> {
        let mut net = initial.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let (next, redo) = step.apply(&net)?;
            if &redo != step {
                return Err(Error::InvalidParameter(format!(
                    "trace step {i} does not replay: recorded {step}, got {redo}"
                )));
            }
            net = next;
        }
        Ok(net)
    }
}

/// Series rule at `y`.
pub fn series_step(net: &ResistanceNetwork, y: VertexId) -> Result<(ResistanceNetwork, ReductionStep)> {
    net.check_vertex(y)?;
    let not = |reason: String| Error::NotSeriesReducible { vertex: y, reason };
    let incident: Vec<_> = net.incident(y).cloned().collect();
    if incident.len() != 2 {
        return Err(not(format!("{} incident edges, need exactly 2", incident.len())));
    }
    let (x, z) = (incident[0].other(y), incident[1].other(y));
    if x == z {
        return Err(not(format!("both edges lead to {x}; reduce them in parallel first")));
    }
    let (r1, r2) = (incident[0].resistance.clone(), incident[1].resistance.clone());
    let result = &r1 + &r2;
    let mut out = net.clone();
    out.remove_vertex(y)?;
    out.add_edge(x, z, result.clone())?;
    Ok((out, ReductionStep::Series { removed: y, x, z, r1, r2, result }))
}

pub fn series_reduce(net: &ResistanceNetwork, y: VertexId) -> Result<ResistanceNetwork> {
    series_step(net, y).map(|(n, _)| n)
}

/// Parallel rule: every `x`-`y` edge collapses into one with
/// `(Σ 1/R)^{-1}`.
pub fn parallel_step(net: &ResistanceNetwork, x: VertexId, y: VertexId) -> Result<(ResistanceNetwork, ReductionStep)> {
    net.check_vertex(x)?;
    net.check_vertex(y)?;
    if net.edges_between(x, y).count() < 2 {
        return Err(Error::NotParallelReducible(x, y));
    }
    let mut out = net.clone();
    let before = out.remove_edges_between(x, y);
    let conductance: Rational = before.iter().map(|r| r.recip()).collect::<Result<Vec<_>, _>>()?.into_iter().sum();
    let result = conductance.recip()?;
    out.add_edge(x, y, result.clone())?;
    Ok((out, ReductionStep::Parallel { x, y, before, result }))
}

pub fn parallel_reduce(net: &ResistanceNetwork, x: VertexId, y: VertexId) -> Result<ResistanceNetwork> {
    parallel_step(net, x, y).map(|(n, _)| n)
}

fn single_edge(net: &ResistanceNetwork, p: VertexId, q: VertexId) -> std::result::Result<Rational, String> {
    let mut it = net.edges_between(p, q);
    match (it.next(), it.next()) {
        (Some(e), None) => Ok(e.resistance.clone()),
        (None, _) => Err(format!("no edge {p}-{q}")),
        (Some(_), Some(_)) => Err(format!("parallel edges {p}-{q}; reduce them first")),
    }
}

/// Δ-Y on triangle `x, y, z`. The new center gets the next free id.
pub fn delta_y_step(
    net: &ResistanceNetwork,
    x: VertexId,
    y: VertexId,
    z: VertexId,
) -> Result<(ResistanceNetwork, ReductionStep)> {
    for v in [x, y, z] {
        net.check_vertex(v)?;
    }
    let tri = |reason: String| Error::NotATriangle(x, y, z, reason);
    if x == y || y == z || x == z {
        return Err(tri("vertices must be distinct".into()));
    }
    let ra = single_edge(net, y, z).map_err(tri)?;
    let rb = single_edge(net, x, z).map_err(tri)?;
    let rc = single_edge(net, x, y).map_err(tri)?;
    let total = &(&ra + &rb) + &rc;
    let r1 = (&rb * &rc).checked_div(&total)?;
    let r2 = (&ra * &rc).checked_div(&total)?;
    let r3 = (&ra * &rb).checked_div(&total)?;
    let mut out = net.clone();
    out.remove_edges_between(y, z);
    out.remove_edges_between(x, z);
    out.remove_edges_between(x, y);
    let center = out.add_vertex();
    out.add_edge(center, x, r1.clone())?;
    out.add_edge(center, y, r2.clone())?;
    out.add_edge(center, z, r3.clone())?;
    Ok((out, ReductionStep::DeltaY { x, y, z, center, ra, rb, rc, r1, r2, r3 }))
}

pub fn delta_y(net: &ResistanceNetwork, x: VertexId, y: VertexId, z: VertexId) -> Result<ResistanceNetwork> {
    delta_y_step(net, x, y, z).map(|(n, _)| n)
}

/// Eliminates `v`: each neighbor pair `(p, q)` gains conductance
/// `c_p c_q / Σc`, merged with any existing `p`-`q` edges.
pub fn star_mesh_step(net: &ResistanceNetwork, v: VertexId) -> Result<(ResistanceNetwork, ReductionStep)> {
    net.check_vertex(v)?;
    let neighbors = net.neighbors(v);
    let legs: Vec<(VertexId, Rational)> = neighbors
        .iter()
        .map(|&p| {
            let c: Rational = net.edges_between(v, p).map(|e| e.conductance()).sum();
            (p, c.recip().expect("positive conductance"))
        })
        .collect();
    let conductances: Vec<Rational> = legs.iter().map(|(_, r)| r.recip()).collect::<Result<_, _>>()?;
    let total: Rational = conductances.iter().sum();
    let mut out = net.clone();
    out.remove_vertex(v)?;
    let mut added = Vec::new();
    for i in 0..legs.len() {
        for j in i + 1..legs.len() {
            let (p, q) = (legs[i].0, legs[j].0);
            let mut c = (&conductances[i] * &conductances[j]).checked_div(&total)?;
            for r in out.remove_edges_between(p, q) {
                c += r.recip()?;
            }
            let r = c.recip()?;
            out.add_edge(p, q, r.clone())?;
            added.push((p, q, r));
        }
    }
    Ok((out, ReductionStep::StarMesh { removed: v, legs, added }))
}

pub fn star_mesh_eliminate(net: &ResistanceNetwork, v: VertexId) -> Result<ResistanceNetwork> {
    star_mesh_step(net, v).map(|(n, _)| n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laplacian::effective_resistance;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn q(p: i64, d: i64) -> Rational {
        Rational::frac(p, d)
    }

    fn path3(r1: Rational, r2: Rational) -> ResistanceNetwork {
        let mut net = ResistanceNetwork::with_vertices(3);
        net.add_edge(v(0), v(1), r1).unwrap();
        net.add_edge(v(1), v(2), r2).unwrap();
        net
    }

    fn triangle(ra: Rational, rb: Rational, rc: Rational) -> ResistanceNetwork {
        // x = 0, y = 1, z = 2
        let mut net = ResistanceNetwork::with_vertices(3);
        net.add_edge(v(1), v(2), ra).unwrap();
        net.add_edge(v(0), v(2), rb).unwrap();
        net.add_edge(v(0), v(1), rc).unwrap();
        net
    }

    #[test]
    fn series_examples() {
        let out = series_reduce(&path3(q(1, 1), q(1, 1)), v(1)).unwrap();
        assert_eq!(out.edges().len(), 1);
        assert_eq!(out.edges()[0].resistance, q(2, 1));
        let out = series_reduce(&path3(q(1, 2), q(1, 3)), v(1)).unwrap();
        assert_eq!(out.edges()[0].resistance, q(5, 6));
    }

    #[test]
    fn series_rejects_degree_three_and_parallel_pairs() {
        let mut star = ResistanceNetwork::with_vertices(4);
        for i in 1..4 {
            star.add_unit_edge(v(0), v(i)).unwrap();
        }
        assert!(matches!(series_reduce(&star, v(0)), Err(Error::NotSeriesReducible { .. })));
        let mut two = ResistanceNetwork::with_vertices(2);
        two.add_unit_edge(v(0), v(1)).unwrap();
        two.add_unit_edge(v(0), v(1)).unwrap();
        assert!(matches!(series_reduce(&two, v(0)), Err(Error::NotSeriesReducible { .. })));
    }

    #[test]
    fn parallel_examples() {
        let mut net = ResistanceNetwork::with_vertices(2);
        net.add_unit_edge(v(0), v(1)).unwrap();
        assert_eq!(parallel_reduce(&net, v(0), v(1)), Err(Error::NotParallelReducible(v(0), v(1))));
        net.add_unit_edge(v(0), v(1)).unwrap();
        assert_eq!(parallel_reduce(&net, v(0), v(1)).unwrap().edges()[0].resistance, q(1, 2));
        net.add_unit_edge(v(1), v(0)).unwrap();
        assert_eq!(parallel_reduce(&net, v(0), v(1)).unwrap().edges()[0].resistance, q(1, 3));
        let mut net = ResistanceNetwork::with_vertices(2);
        net.add_edge(v(0), v(1), q(2, 1)).unwrap();
        net.add_edge(v(0), v(1), q(3, 1)).unwrap();
        let out = parallel_reduce(&net, v(0), v(1)).unwrap();
        assert_eq!(out.edge_count(), 1);
        assert_eq!(out.edges()[0].resistance, q(6, 5));
    }

    #[test]
    fn delta_y_examples() {
        let (_, step) = delta_y_step(&triangle(q(1, 1), q(1, 1), q(1, 1)), v(0), v(1), v(2)).unwrap();
        match step {
            ReductionStep::DeltaY { r1, r2, r3, center, .. } => {
                assert_eq!((r1, r2, r3), (q(1, 3), q(1, 3), q(1, 3)));
                assert_eq!(center, v(3));
            }
            _ => unreachable!(),
        }
        let (_, step) = delta_y_step(&triangle(q(1, 1), q(2, 1), q(3, 1)), v(0), v(1), v(2)).unwrap();
        match step {
            ReductionStep::DeltaY { r1, r2, r3, .. } => assert_eq!((r1, r2, r3), (q(1, 1), q(1, 2), q(1, 3))),
            _ => unreachable!(),
        }
    }

    #[test]
    fn delta_y_preserves_unit_triangle_resistance() {
        let before = triangle(q(1, 1), q(1, 1), q(1, 1));
        let after = delta_y(&before, v(0), v(1), v(2)).unwrap();
        assert_eq!(effective_resistance(&before, v(0), v(1)).unwrap(), q(2, 3));
        assert_eq!(effective_resistance(&after, v(0), v(1)).unwrap(), q(2, 3));
    }

    #[test]
    fn delta_y_needs_a_triangle() {
        let net = path3(q(1, 1), q(1, 1));
        assert!(matches!(delta_y(&net, v(0), v(1), v(2)), Err(Error::NotATriangle(..))));
    }

    #[test]
    fn star_mesh_examples() {
        // pendant vertex
        let mut net = path3(q(1, 1), q(1, 1));
        let out = star_mesh_eliminate(&net, v(2)).unwrap();
        assert_eq!(out.vertex_count(), 2);
        assert_eq!(out.edge_count(), 1);
        // degree two behaves like series
        let out = star_mesh_eliminate(&net, v(1)).unwrap();
        assert_eq!(out.edges()[0].resistance, q(2, 1));
        // existing parallel edge gets merged
        net.add_unit_edge(v(0), v(2)).unwrap();
        let out = star_mesh_eliminate(&net, v(1)).unwrap();
        assert_eq!(out.edge_count(), 1);
        assert_eq!(out.edges()[0].resistance, q(2, 3));
    }

    #[test]
    fn star_mesh_inverts_delta_y() {
        let tri = triangle(q(1, 1), q(2, 1), q(3, 1));
        let (star, step) = delta_y_step(&tri, v(0), v(1), v(2)).unwrap();
        let center = match step {
            ReductionStep::DeltaY { center, .. } => center,
            _ => unreachable!(),
        };
        let back = star_mesh_eliminate(&star, center).unwrap();
        assert_eq!(back, tri);
    }

    #[test]
    fn trace_replays() {
        let mut net = ResistanceNetwork::with_vertices(4);
        net.add_unit_edge(v(0), v(1)).unwrap();
        net.add_unit_edge(v(1), v(2)).unwrap();
        net.add_unit_edge(v(2), v(0)).unwrap();
        net.add_unit_edge(v(2), v(3)).unwrap();
        net.add_unit_edge(v(3), v(0)).unwrap();
        let mut trace = ReductionTrace::default();
        let (a, s) = series_step(&net, v(3)).unwrap();
        trace.push(s);
        let (b, s) = parallel_step(&a, v(2), v(0)).unwrap();
        trace.push(s);
        let (c, s) = delta_y_step(&b, v(0), v(1), v(2)).unwrap();
        trace.push(s);
        assert_eq!(trace.replay(&net).unwrap(), c);
        assert_eq!(trace.count("series"), 1);
        // a doctored step is caught
        if let ReductionStep::Series { result, .. } = &mut trace.steps[0] {
            *result = q(7, 1);
        }
        assert!(trace.replay(&net).is_err());
    }
}
