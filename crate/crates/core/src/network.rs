//! Weighted undirected multigraphs whose edges are resistors.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Stable vertex identifier. Assigned in construction order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub resistance: Rational,
}

impl Edge {
    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    pub fn joins(&self, x: VertexId, y: VertexId) -> bool {
        (self.u == x && self.v == y) || (self.u == y && self.v == x)
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn conductance(&self) -> Rational {
        self.resistance.recip().expect("edge resistances are positive")
    }

    fn key(&self) -> (VertexId, VertexId, &Rational) {
        (self.u.min(self.v), self.u.max(self.v), &self.resistance)
    }
}

/// A resistor network. Parallel edges are kept as separate entries; self
/// loops are never stored.
#[derive(Clone, Debug, Default)]
pub struct ResistanceNetwork {
    vertices: BTreeSet<VertexId>,
    edges: Vec<Edge>,
    next_id: u32,
}

impl PartialEq for ResistanceNetwork {
    /// Same vertex set and same edge multiset; edge order is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.sorted_edge_keys() == other.sorted_edge_keys()
    }
}

impl Eq for ResistanceNetwork {}

impl ResistanceNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    /// A network with vertices `0..n` and no edges.
    pub fn with_vertices(n: u32) -> Self {
        let mut net = Self::new();
        for _ in 0..n {
            net.add_vertex();
        }
        net
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_id);
        self.next_id += 1;
        self.vertices.insert(id);
        id
    }

    /// Inserts a vertex with a caller-chosen id (used by the edge-list reader).
    pub fn insert_vertex(&mut self, id: VertexId) {
        self.vertices.insert(id);
        self.next_id = self.next_id.max(id.0 + 1);
    }

    /// Adds a resistor. A loop `u == v` is accepted and dropped, since it
    /// carries no current.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, resistance: Rational) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if !resistance.is_positive() {
            return Err(Error::InvalidParameter(format!("edge {u}-{v} has non-positive resistance {resistance}")));
        }
        if u != v {
            self.edges.push(Edge { u, v, resistance });
        }
        Ok(())
    }

    pub fn add_unit_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.add_edge(u, v, Rational::one())
    }

    pub fn check_vertex(&self, x: VertexId) -> Result<()> {
        if self.vertices.contains(&x) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(x))
        }
    }

    pub fn contains(&self, x: VertexId) -> bool {
        self.vertices.contains(&x)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Id the next `add_vertex` call will hand out.
    pub fn next_id(&self) -> VertexId {
        VertexId(self.next_id)
    }

    /// Number of incident edges (parallel edges counted separately).
    pub fn degree(&self, x: VertexId) -> usize {
        self.edges.iter().filter(|e| e.touches(x)).count()
    }

    pub fn incident(&self, x: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.touches(x))
    }

    /// Distinct neighbors in ascending order.
    pub fn neighbors(&self, x: VertexId) -> Vec<VertexId> {
        let set: BTreeSet<_> = self.incident(x).map(|e| e.other(x)).collect();
        set.into_iter().collect()
    }

    pub fn edges_between(&self, x: VertexId, y: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.joins(x, y))
    }

    pub fn has_edge(&self, x: VertexId, y: VertexId) -> bool {
        self.edges.iter().any(|e| e.joins(x, y))
    }

    /// Removes every edge joining `x` and `y`, returning their resistances in
    /// insertion order.
    pub fn remove_edges_between(&mut self, x: VertexId, y: VertexId) -> Vec<Rational> {
        let mut removed = Vec::new();
        self.edges.retain(|e| {
            if e.joins(x, y) {
                removed.push(e.resistance.clone());
                false
            } else {
                true
            }
        });
        removed
    }

    /// Removes one edge joining `x` and `y`, if present.
    pub fn remove_one_edge(&mut self, x: VertexId, y: VertexId) -> Option<Rational> {
        let pos = self.edges.iter().position(|e| e.joins(x, y))?;
        Some(self.edges.remove(pos).resistance)
    }

    /// Removes a vertex together with its incident edges.
    pub fn remove_vertex(&mut self, x: VertexId) -> Result<()> {
        self.check_vertex(x)?;
        self.vertices.remove(&x);
        self.edges.retain(|e| !e.touches(x));
        Ok(())
    }

    /// Replaces edge `u`-`v` (one copy) by a path through `count` fresh
    /// vertices; every new edge is a unit resistor. Returns the new vertices
    /// from the `u` end.
    pub fn subdivide_edge(&mut self, u: VertexId, v: VertexId, count: usize) -> Result<Vec<VertexId>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        self.remove_one_edge(u, v).ok_or_else(|| Error::InvalidParameter(format!("no edge {u}-{v} to subdivide")))?;
        let fresh: Vec<_> = (0..count).map(|_| self.add_vertex()).collect();
        let mut prev = u;
        for &w in &fresh {
            self.add_unit_edge(prev, w)?;
            prev = w;
        }
        self.add_unit_edge(prev, v)?;
        Ok(fresh)
    }

    /// Sets the resistance of every edge joining `x` and `y`.
    pub fn set_resistance(&mut self, x: VertexId, y: VertexId, resistance: Rational) -> Result<()> {
        if !resistance.is_positive() {
            return Err(Error::InvalidParameter(format!("edge {x}-{y} has non-positive resistance {resistance}")));
        }
        let mut hit = false;
        for e in self.edges.iter_mut().filter(|e| e.joins(x, y)) {
            e.resistance = resistance.clone();
            hit = true;
        }
        if hit {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("no edge {x}-{y}")))
        }
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices.iter().next() {
            None => true,
            Some(&start) => self.component_of(start).len() == self.vertices.len(),
        }
    }

    /// Vertices reachable from `start`.
    pub fn component_of(&self, start: VertexId) -> BTreeSet<VertexId> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in adj.get(&x).into_iter().flatten() {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    pub fn adjacency(&self) -> BTreeMap<VertexId, Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in &self.edges {
            adj.entry(e.u).or_default().push(e.v);
            adj.entry(e.v).or_default().push(e.u);
        }
        adj
    }

    /// The sub-network induced on `keep`. Vertex ids are preserved.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> ResistanceNetwork {
        ResistanceNetwork {
            vertices: keep.iter().copied().filter(|v| self.vertices.contains(v)).collect(),
            edges: self.edges.iter().filter(|e| keep.contains(&e.u) && keep.contains(&e.v)).cloned().collect(),
            next_id: self.next_id,
        }
    }

    /// Disjoint union; fails if the vertex sets overlap.
    pub fn union(&self, other: &ResistanceNetwork) -> Result<ResistanceNetwork> {
        if let Some(v) = self.vertices.intersection(&other.vertices).next() {
            return Err(Error::InvalidPair(format!("vertex {v} appears in both components")));
        }
        Ok(ResistanceNetwork {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.iter().chain(&other.edges).cloned().collect(),
            next_id: self.next_id.max(other.next_id),
        })
    }

    /// Sum of edge resistances along a shortest path, by Dijkstra. `None`
    /// if `v` is unreachable.
    pub fn shortest_path_resistance(&self, u: VertexId, v: VertexId) -> Option<Rational> {
        let mut dist: BTreeMap<VertexId, Rational> = BTreeMap::from([(u, Rational::zero())]);
        let mut done = BTreeSet::new();
        loop {
            let (x, d) = dist
                .iter()
                .filter(|(x, _)| !done.contains(*x))
                .min_by(|a, b| a.1.cmp(b.1))
                .map(|(x, d)| (*x, d.clone()))?;
            if x == v {
                return Some(d);
            }
            done.insert(x);
            for e in self.incident(x) {
                let y = e.other(x);
                let cand = &d + &e.resistance;
                if dist.get(&y).is_none_or(|old| cand < *old) {
                    dist.insert(y, cand);
                }
            }
        }
    }

    fn sorted_edge_keys(&self) -> Vec<(VertexId, VertexId, &Rational)> {
        let mut keys: Vec<_> = self.edges.iter().map(Edge::key).collect();
        keys.sort();
        keys
    }
}
