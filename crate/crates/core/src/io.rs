//! Text formats: edge lists in, DOT out.
//!
//! Edge list: one resistor per line, `u v r` with integer vertex ids and
//! `r` in `p` or `p/q` form. Blank lines and `#` comments are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::chain::LabeledChain;
use crate::error::{Error, Result};
use crate::network::{ResistanceNetwork, VertexId};
use crate::rational::Rational;

pub fn parse_edge_list(text: &str) -> Result<ResistanceNetwork> {
    let mut net = ResistanceNetwork::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: &str| Error::Parse(format!("line {}: {m}: {raw:?}", lineno + 1));
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [u, v, r] = fields[..] else {
            return Err(err("expected `u v p/q`"));
        };
        let u = VertexId(u.parse().map_err(|_| err("bad vertex id"))?);
        let v = VertexId(v.parse().map_err(|_| err("bad vertex id"))?);
        let r: Rational = r.parse().map_err(|_| err("bad resistance"))?;
        if !r.is_positive() {
            return Err(err("resistance must be positive"));
        }
        if u == v {
            return Err(err("self-loop"));
        }
        net.insert_vertex(u);
        net.insert_vertex(v);
        net.add_edge(u, v, r)?;
    }
    Ok(net)
}

pub fn write_edge_list(net: &ResistanceNetwork) -> String {
    net.edges().iter().map(|e| format!("{} {} {}\n", e.u, e.v, e.resistance)).collect()
}

/// Undirected DOT with each edge labeled by its resistance.
pub fn network_to_dot(net: &ResistanceNetwork) -> String {
    let mut out = String::from("graph network {\n");
    for v in net.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for e in net.edges() {
        let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.u, e.v, e.resistance);
    }
    out.push_str("}\n");
    out
}

/// DOT for a labeled chain. Vertices carry `hexagon` (1-based index, 0 when
/// on no hexagon) and, for square corners, `role` (`a3`, `k1`, …). Square
/// corners also get a `label`; `pos` is a layout hint.
pub fn chain_to_dot(chain: &LabeledChain) -> String {
    let labels = chain.labels();
    let hexagon = chain.hexagon_of();
    let mut out = String::new();
    let _ = writeln!(out, "graph \"G{}\" {{", chain.code.compact());
    let _ = writeln!(out, "  // n = {} hexagons, code {}", chain.code.n(), chain.code);
    let positions = layout_hints(chain);
    for v in chain.network.vertices() {
        let mut attrs = vec![format!("hexagon={}", hexagon.get(&v).copied().unwrap_or(0))];
        if let Some(l) = labels.get(&v) {
            attrs.push(format!("role=\"{l}\""));
            attrs.push(format!("label=\"{l}\""));
        }
        if let Some((x, y)) = positions.get(&v) {
            attrs.push(format!("pos=\"{x:.3},{y}\""));
        }
        let _ = writeln!(out, "  {v} [{}];", attrs.join(", "));
    }
    for e in chain.network.edges() {
        if e.resistance == Rational::one() {
            let _ = writeln!(out, "  {} -- {};", e.u, e.v);
        } else {
            let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.u, e.v, e.resistance);
        }
    }
    out.push_str("}\n");
    out
}

/// Ladder coordinates: hexagon `k` spans `x = 4k .. 4k+2`, top path at
/// `y = 1`, bottom path at `y = 0`.
fn layout_hints(chain: &LabeledChain) -> BTreeMap<VertexId, (f64, f64)> {
    let mut pos = BTreeMap::new();
    for (k, h) in chain.hexagons.iter().enumerate() {
        let x0 = 4.0 * k as f64;
        // h[0..=top] is the top path, h[top+1..6] the bottom path right to left
        let top = 1 + chain.code.top_count(k + 1) as usize;
        let bottom = 4 - top;
        for (i, &v) in h.iter().enumerate() {
            let p = if i <= top {
                (x0 + 2.0 * i as f64 / top as f64, 1.0)
            } else {
                (x0 + 2.0 * (5 - i) as f64 / bottom as f64, 0.0)
            };
            pos.entry(v).or_insert(p);
        }
    }
    pos
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{build_chain, ChainCode};

    #[test]
    fn edge_list_roundtrip() {
        let text = "# triangle\n0 1 1\n1 2 1/2\n\n2 0 3/4  # chord\n";
        let net = parse_edge_list(text).unwrap();
        assert_eq!(net.vertex_count(), 3);
        assert_eq!(net.edge_count(), 3);
        assert_eq!(parse_edge_list(&write_edge_list(&net)).unwrap(), net);
    }

    #[test]
    fn edge_list_errors() {
        for bad in ["0 1", "0 1 0", "0 1 -1/2", "a 1 1", "0 0 1", "0 1 1 2"] {
            assert!(matches!(parse_edge_list(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn dot_has_labels() {
        let code: ChainCode = "02".parse().unwrap();
        let chain = build_chain(&code).unwrap();
        let dot = chain_to_dot(&chain);
        assert!(dot.starts_with("graph \"G02\" {"));
        for role in ["a1", "b1", "k1", "l1", "a3", "l3"] {
            assert!(dot.contains(&format!("role=\"{role}\"")), "missing {role}");
        }
        assert!(dot.contains("hexagon=4"));
        assert_eq!(dot.matches(" -- ").count(), chain.network.edge_count());
        assert!(network_to_dot(&chain.network).contains("[label=\"1\"]"));
    }
}
