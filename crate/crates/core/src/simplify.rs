//! Left-to-right simplification of a terminal chain.
//!
//! Starting from the leftmost square, each cycle is series-reduced down to a
//! triangle on the previous star center and the next rung, and that
//! triangle is replaced by a star. After the last square `S_n` the network
//! is a path from the source corner to the final center `z`, which hangs on
//! `b_n` (leg `R_1`) and `k_n` (leg `R_2`) of the untouched last hexagon.
//! A closing series pass collapses the path into one edge.

use crate::chain::TerminalChain;
use crate::error::{Error, Result};
use crate::network::{ResistanceNetwork, VertexId};
use crate::rational::Rational;
use crate::reduction::{delta_y_step, series_step, ReductionStep, ReductionTrace};

/// Which left corner of `S_1` survives as the terminal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    A,
    L,
}

#[derive(Clone, Debug)]
pub struct Simplified {
    pub source: VertexId,
    pub network: ResistanceNetwork,
    pub trace: ReductionTrace,
    /// Number of trace steps before the closing series pass.
    pub core_steps: usize,
    /// Center created by the last Δ-Y.
    pub center: VertexId,
    /// Leg from `center` to `b_n`.
    pub r1: Rational,
    /// Leg from `center` to `k_n`.
    pub r2: Rational,
    /// Resistance of the collapsed path from `source` to `center`.
    pub tail: Rational,
}

impl Simplified {
    /// `r(source, x)` and `r(source, y)` read off the final ring, valid when
    /// the last hexagon has unit edges: the ring through `center` has legs
    /// `R_1 + 1` and `R_2 + 4` to `x`, `R_1 + 2` and `R_2 + 3` to `y`.
    pub fn closed_form(&self) -> (Rational, Rational) {
        let total = &(&self.r1 + &self.r2) + &Rational::from_integer(5);
        let ring =
            |p: i64, q: i64| (&self.r1 + &Rational::from_integer(p)) * (&self.r2 + &Rational::from_integer(q)) / &total;
        (&self.tail + &ring(1, 4), &self.tail + &ring(2, 3))
    }

    /// Networks after each step, starting with `initial`.
    pub fn snapshots(&self, initial: &ResistanceNetwork) -> Result<Vec<ResistanceNetwork>> {
        let mut out = vec![initial.clone()];
        for step in &self.trace.steps {
            let (next, _) = step.apply(out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }
}

struct Driver {
    net: ResistanceNetwork,
    trace: ReductionTrace,
}

impl Driver {
    fn series(&mut self, v: VertexId) -> Result<()> {
        let (net, step) = series_step(&self.net, v)?;
        self.net = net;
        self.trace.push(step);
        Ok(())
    }

    /// Series-reduces every vertex of `doomed`, always taking the smallest
    /// id that is currently reducible.
    fn series_all(&mut self, mut doomed: Vec<VertexId>) -> Result<()> {
        doomed.sort();
        while !doomed.is_empty() {
            let pos = doomed
                .iter()
                .position(|&v| self.net.degree(v) == 2 && self.net.neighbors(v).len() == 2)
                .ok_or_else(|| Error::Labeling(format!("cannot series-reduce any of {doomed:?}")))?;
            let v = doomed.remove(pos);
            self.series(v)?;
        }
        Ok(())
    }

    fn delta_y(&mut self, x: VertexId, y: VertexId, z: VertexId) -> Result<VertexId> {
        let (net, step) = delta_y_step(&self.net, x, y, z)?;
        let center = match &step {
            ReductionStep::DeltaY { center, .. } => *center,
            _ => unreachable!("delta_y_step records a DeltaY"),
        };
        self.net = net;
        self.trace.push(step);
        Ok(center)
    }
}

fn leg(net: &ResistanceNetwork, p: VertexId, q: VertexId) -> Result<Rational> {
    let mut es = net.edges_between(p, q);
    match (es.next(), es.next()) {
        (Some(e), None) => Ok(e.resistance.clone()),
        _ => Err(Error::Labeling(format!("expected a single edge {p}-{q}"))),
    }
}

/// Runs the simplification on `chain` keeping `source` (`a_1` or `l_1`).
/// Every step is recorded; replaying the trace reproduces `network`.
pub fn simplify_chain_circuit(chain: &TerminalChain, source: Source) -> Result<Simplified> {
    let n = chain.n();
    let last = *chain.squares.last().ok_or_else(|| Error::InvalidParameter("empty chain".into()))?;
    if leg(&chain.network, last.b, last.k)? != Rational::one() {
        return Err(Error::InvalidParameter(format!("edge b_{n} k_{n} must have weight 1")));
    }
    let s1 = chain.squares[0];
    let (keep, drop) = match source {
        Source::A => (s1.a, s1.l),
        Source::L => (s1.l, s1.a),
    };
    let mut d = Driver { net: chain.network.clone(), trace: ReductionTrace::default() };

    d.series(drop)?;
    let mut center = d.delta_y(keep, s1.b, s1.k)?;
    for i in 1..n {
        // hexagon C_i, then square S_{i+1}
        let next = chain.squares[i];
        let hex = chain.hexagons[i - 1];
        d.series_all(hex.iter().copied().filter(|&v| v != next.a && v != next.l).collect())?;
        center = d.delta_y(center, next.a, next.l)?;
        d.series_all(vec![next.a, next.l])?;
        center = d.delta_y(center, next.b, next.k)?;
    }
    let core_steps = d.trace.len();
    let r1 = leg(&d.net, center, last.b)?;
    let r2 = leg(&d.net, center, last.k)?;

    // collapse source .. center into one edge
    let path: Vec<VertexId> =
        d.net.vertices().filter(|&v| v != keep && v != center && !chain.hexagons[n - 1].contains(&v)).collect();
    d.series_all(path)?;
    let tail = leg(&d.net, keep, center)?;

    Ok(Simplified { source: keep, network: d.net, trace: d.trace, core_steps, center, r1, r2, tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::build_terminal_chain;
    use crate::laplacian::effective_resistance;

    #[test]
    fn one_hexagon_counts() {
        let f = build_terminal_chain(1, None).unwrap();
        let s = simplify_chain_circuit(&f, Source::A).unwrap();
        assert_eq!(s.core_steps, 2);
        assert_eq!(s.trace.steps[0].kind(), "series");
        assert_eq!(s.trace.steps[1].kind(), "delta-y");
        // triangle a_1 b_1 k_1 with sides 1, 1 (b_1 k_1) and 2 (a_1 k_1 via l_1)
        assert_eq!(s.r1, Rational::frac(1, 4));
        assert_eq!(s.r2, Rational::frac(1, 2));
    }

    #[test]
    fn step_counts_grow_linearly() {
        for n in 1..=5 {
            let f = build_terminal_chain(n, None).unwrap();
            let s = simplify_chain_circuit(&f, Source::L).unwrap();
            let core = ReductionTrace { steps: s.trace.steps[..s.core_steps].to_vec() };
            assert_eq!(core.count("delta-y"), 2 * n - 1);
            assert_eq!(core.count("series"), 6 * n - 5);
        }
    }

    #[test]
    fn final_form_matches_oracle() {
        for n in 1..=4 {
            let f = build_terminal_chain(n, None).unwrap();
            for src in [Source::A, Source::L] {
                let s = simplify_chain_circuit(&f, src).unwrap();
                assert!(s.r1.is_positive() && s.r1 < Rational::one());
                assert_eq!(s.trace.replay(&f.network).unwrap(), s.network);
                let (rx, ry) = s.closed_form();
                assert_eq!(rx, effective_resistance(&f.network, s.source, f.x).unwrap());
                assert_eq!(ry, effective_resistance(&f.network, s.source, f.y).unwrap());
                assert_eq!(s.network.vertex_count(), 8);
            }
        }
    }
}
