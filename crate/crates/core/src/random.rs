//! Seeded random networks for property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::network::{ResistanceNetwork, VertexId};
use crate::rational::Rational;

/// Default seed used whenever the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// A small positive rational `p/q` with `1 <= p, q <= 9`.
pub fn small_positive<R: Rng>(rng: &mut R) -> Rational {
    Rational::frac(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

/// Erdős–Rényi graph on `n` vertices with edge probability `p`, resampled
/// until connected. Vertex ids start at `offset`. With `weighted`, edge
/// resistances are drawn by [`small_positive`], otherwise they are 1.
pub fn connected_gnp<R: Rng>(rng: &mut R, n: u32, p: f64, offset: u32, weighted: bool) -> ResistanceNetwork {
    loop {
        let mut net = ResistanceNetwork::new();
        for i in 0..n {
            net.insert_vertex(VertexId(offset + i));
        }
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    let r = if weighted { small_positive(rng) } else { Rational::one() };
                    net.add_edge(VertexId(offset + i), VertexId(offset + j), r).expect("valid edge");
                }
            }
        }
        if net.is_connected() {
            return net;
        }
    }
}

/// A connected multigraph rich in reducible spots: a random spanning tree,
/// extra chords (some duplicated as parallel edges), and a few subdivided
/// edges so that degree-2 vertices show up.
pub fn reducible_network<R: Rng>(rng: &mut R, max_vertices: u32) -> ResistanceNetwork {
    let core = rng.gen_range(3..=max_vertices.saturating_sub(2).max(3));
    let mut net = ResistanceNetwork::with_vertices(core);
    let mut order: Vec<u32> = (0..core).collect();
    order.shuffle(rng);
    for i in 1..order.len() {
        let j = rng.gen_range(0..i);
        net.add_edge(VertexId(order[i]), VertexId(order[j]), small_positive(rng)).expect("valid");
    }
    for _ in 0..rng.gen_range(1..=core) {
        let (u, v) = (rng.gen_range(0..core), rng.gen_range(0..core));
        if u != v {
            net.add_edge(VertexId(u), VertexId(v), small_positive(rng)).expect("valid");
            if rng.gen_bool(0.3) {
                net.add_edge(VertexId(u), VertexId(v), small_positive(rng)).expect("valid");
            }
        }
    }
    while net.vertex_count() < max_vertices as usize && rng.gen_bool(0.6) {
        let e = net.edges()[rng.gen_range(0..net.edge_count())].clone();
        let r = e.resistance.clone();
        net.remove_one_edge(e.u, e.v);
        let mid = net.add_vertex();
        net.add_edge(e.u, mid, r).expect("valid");
        net.add_edge(mid, e.v, small_positive(rng)).expect("valid");
    }
    net
}
