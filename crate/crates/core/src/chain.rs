//! Ladder graphs and phenylene chains built from their `{0,1,2}` codes.
//!
//! Everything is laid out on a ladder: a top path `t_0 … t_m`, a bottom
//! path `u_0 … u_m` and rungs `t_j u_j`. A ladder square between rungs
//! `j-1` and `j` either stays a square or becomes a hexagon by subdividing
//! its top edge with `c` fresh vertices and its bottom edge with `2 - c`.
//!
//! Square corners follow one orientation everywhere: `a`/`l` sit on the
//! left rung, `b`/`k` on the right rung, `a`/`b` on top and `l`/`k` at the
//! bottom. So the square's edges are `ab`, `bk`, `kl` and `la`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::network::{ResistanceNetwork, VertexId};
use crate::rational::Rational;

/// Explicit edge resistances keyed by `(min, max)` endpoint.
pub type EdgeWeights = BTreeMap<(VertexId, VertexId), Rational>;

pub fn edge_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

/// `n` hexagons and a word of length `max(n-2, 0)` over `{0, 1, 2}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ChainCode {
    n: usize,
    w: Vec<u8>,
}

impl ChainCode {
    pub fn new(n: usize, w: Vec<u8>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("a chain needs at least one hexagon".into()));
        }
        if w.len() != n.saturating_sub(2) {
            return Err(Error::InvalidParameter(format!(
                "a chain with {n} hexagons needs a word of length {}, got {}",
                n.saturating_sub(2),
                w.len()
            )));
        }
        if let Some(bad) = w.iter().find(|&&t| t > 2) {
            return Err(Error::InvalidParameter(format!("code entry {bad} is not 0, 1 or 2")));
        }
        Ok(ChainCode { n, w })
    }

    /// Code with `n = w.len() + 2`.
    pub fn from_word(w: Vec<u8>) -> Result<Self> {
        Self::new(w.len() + 2, w)
    }

    /// `H_n`, all zeros.
    pub fn helicene(n: usize) -> Result<Self> {
        Self::new(n, vec![0; n.saturating_sub(2)])
    }

    /// `L_n`, all ones.
    pub fn linear(n: usize) -> Result<Self> {
        Self::new(n, vec![1; n.saturating_sub(2)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[u8] {
        &self.w
    }

    /// Digits without separators, e.g. `"020"`. Empty for `n <= 2`.
    pub fn compact(&self) -> String {
        self.w.iter().map(|d| char::from(b'0' + d)).collect()
    }

    pub fn reversed(&self) -> Self {
        ChainCode { n: self.n, w: self.w.iter().rev().copied().collect() }
    }

    pub fn complemented(&self) -> Self {
        ChainCode { n: self.n, w: self.w.iter().map(|t| 2 - t).collect() }
    }

    /// The four images under reversal and complement.
    pub fn orbit(&self) -> BTreeSet<ChainCode> {
        let c = self.complemented();
        BTreeSet::from([self.clone(), self.reversed(), c.reversed(), c])
    }

    pub fn canonical(&self) -> ChainCode {
        self.orbit().into_iter().next().expect("orbit is nonempty")
    }

    /// No entry equals 1. Kinks are only defined for interior hexagons.
    pub fn is_all_kink(&self) -> bool {
        self.w.iter().all(|&t| t != 1)
    }

    /// Number of subdivision vertices on the top edge of hexagon `C_k`
    /// (1-based). Terminal hexagons put both on the bottom.
    pub fn top_count(&self, k: usize) -> u8 {
        if k == 1 || k == self.n {
            0
        } else {
            self.w[k - 2]
        }
    }
}

pub fn canonical_code(code: &ChainCode) -> ChainCode {
    code.canonical()
}

pub fn is_all_kink(code: &ChainCode) -> bool {
    code.is_all_kink()
}

impl fmt::Display for ChainCode {
    /// `(0,2,0)`; `()` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.w.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn parse_word(s: &str) -> Result<Vec<u8>> {
    let entry = |d: &str| match d {
        "0" => Ok(0),
        "1" => Ok(1),
        "2" => Ok(2),
        other => Err(Error::Parse(format!("code entry {other:?} is not 0, 1 or 2"))),
    };
    if s.contains(',') {
        s.split(',').map(|d| entry(d.trim())).collect()
    } else {
        s.chars().map(|c| entry(c.encode_utf8(&mut [0; 4]))).collect()
    }
}

impl FromStr for ChainCode {
    type Err = Error;

    /// Accepts `n=5 w=0,2,0`, `w=020`, or a bare word `020`. Without `n`,
    /// the hexagon count is the word length plus two.
    fn from_str(s: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut w: Option<Vec<u8>> = None;
        for tok in s.split_whitespace() {
            if let Some(v) = tok.strip_prefix("n=") {
                let parsed = v.parse().map_err(|_| Error::Parse(format!("bad hexagon count {v:?}")))?;
                if n.replace(parsed).is_some() {
                    return Err(Error::Parse("n given twice".into()));
                }
            } else {
                let word = tok.strip_prefix("w=").unwrap_or(tok);
                if w.replace(parse_word(word)?).is_some() {
                    return Err(Error::Parse("word given twice".into()));
                }
            }
        }
        match (n, w) {
            (Some(n), Some(w)) => ChainCode::new(n, w),
            (Some(n), None) if n <= 2 => ChainCode::new(n, Vec::new()),
            (Some(n), None) => Err(Error::Parse(format!("n={n} needs a word of length {}", n - 2))),
            (None, Some(w)) => ChainCode::from_word(w),
            (None, None) => Err(Error::Parse("empty chain code".into())),
        }
        .map_err(|e| match e {
            Error::InvalidParameter(m) => Error::Parse(m),
            other => other,
        })
    }
}

/// Corners of one square of a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquareCorners {
    pub a: VertexId,
    pub b: VertexId,
    pub k: VertexId,
    pub l: VertexId,
}

impl SquareCorners {
    pub fn vertices(&self) -> [VertexId; 4] {
        [self.a, self.b, self.k, self.l]
    }

    /// `ab, bk, kl, la`.
    pub fn cycle_edges(&self) -> [(VertexId, VertexId); 4] {
        [(self.a, self.b), (self.b, self.k), (self.k, self.l), (self.l, self.a)]
    }
}

/// Ladder `Q_m`: `2(m+1)` vertices, `3m+1` unit edges. Top vertices get ids
/// `0..=m`, bottom vertices `m+1..=2m+1`.
pub fn build_ladder(m: usize) -> Result<ResistanceNetwork> {
    if m < 1 {
        return Err(Error::InvalidParameter("a ladder needs at least one square".into()));
    }
    let mut net = ResistanceNetwork::with_vertices(2 * (m as u32 + 1));
    let (t, u) = ladder_ids(m);
    for j in 0..=m {
        net.add_unit_edge(t(j), u(j))?;
        if j > 0 {
            net.add_unit_edge(t(j - 1), t(j))?;
            net.add_unit_edge(u(j - 1), u(j))?;
        }
    }
    Ok(net)
}

fn ladder_ids(m: usize) -> (impl Fn(usize) -> VertexId, impl Fn(usize) -> VertexId) {
    let t = |j: usize| VertexId(j as u32);
    let u = move |j: usize| VertexId((m + 1 + j) as u32);
    (t, u)
}

/// What each ladder square turns into.
#[derive(Clone, Copy, Debug)]
enum Cell {
    Square,
    Hexagon { top: u8 },
}

struct Layout {
    network: ResistanceNetwork,
    hexagons: Vec<[VertexId; 6]>,
    squares: Vec<SquareCorners>,
}

fn build_layout(cells: &[Cell]) -> Result<Layout> {
    let m = cells.len();
    let mut network = build_ladder(m)?;
    let (t, u) = ladder_ids(m);
    let mut hexagons = Vec::new();
    let mut squares = Vec::new();
    for (idx, cell) in cells.iter().enumerate() {
        let j = idx + 1;
        match *cell {
            Cell::Square => squares.push(SquareCorners { a: t(j - 1), b: t(j), k: u(j), l: u(j - 1) }),
            Cell::Hexagon { top } => {
                let top_new = network.subdivide_edge(t(j - 1), t(j), top as usize)?;
                let bottom_new = network.subdivide_edge(u(j - 1), u(j), 2 - top as usize)?;
                let mut cycle = vec![t(j - 1)];
                cycle.extend(top_new);
                cycle.push(t(j));
                cycle.push(u(j));
                cycle.extend(bottom_new.into_iter().rev());
                cycle.push(u(j - 1));
                hexagons.push(cycle.try_into().expect("six vertices"));
            }
        }
    }
    Ok(Layout { network, hexagons, squares })
}

fn apply_weights(net: &mut ResistanceNetwork, weights: &EdgeWeights) -> Result<()> {
    for (&(u, v), r) in weights {
        if !r.is_positive() {
            return Err(Error::InvalidParameter(format!("weight {r} on edge {u}-{v} is not positive")));
        }
        if !net.has_edge(u, v) {
            return Err(Error::InvalidParameter(format!("no edge {u}-{v} to weight")));
        }
        net.set_resistance(u, v, r.clone())?;
    }
    Ok(())
}

/// The degree-2 neighbor of `corner` inside `hexagon`, and that vertex's
/// other neighbor.
fn terminal_pair(net: &ResistanceNetwork, hexagon: &[VertexId; 6], corner: VertexId) -> Result<(VertexId, VertexId)> {
    let pos = hexagon
        .iter()
        .position(|&v| v == corner)
        .ok_or_else(|| Error::Labeling(format!("{corner} is not on the last hexagon")))?;
    let around = [hexagon[(pos + 1) % 6], hexagon[(pos + 5) % 6]];
    let x = around
        .into_iter()
        .find(|&v| net.degree(v) == 2)
        .ok_or_else(|| Error::Labeling(format!("no degree-2 neighbor of {corner}")))?;
    let xp = hexagon.iter().position(|&v| v == x).expect("on hexagon");
    let y = [hexagon[(xp + 1) % 6], hexagon[(xp + 5) % 6]]
        .into_iter()
        .find(|&v| v != corner)
        .expect("hexagon has two neighbors");
    Ok((x, y))
}

/// A phenylene chain: `n` hexagons `C_1 … C_n`, `n - 1` squares, and
/// square `S_i` joining `C_i` (via `a_i l_i`) to `C_{i+1}` (via `b_i k_i`).
#[derive(Clone, Debug)]
pub struct LabeledChain {
    pub code: ChainCode,
    pub network: ResistanceNetwork,
    /// Cycle order, starting at the top-left vertex.
    pub hexagons: Vec<[VertexId; 6]>,
    pub squares: Vec<SquareCorners>,
}

impl LabeledChain {
    /// Human-readable role of each labeled vertex (`a1`, `k3`, …).
    pub fn labels(&self) -> BTreeMap<VertexId, String> {
        let mut out = BTreeMap::new();
        for (i, s) in self.squares.iter().enumerate() {
            for (name, v) in [("a", s.a), ("b", s.b), ("k", s.k), ("l", s.l)] {
                out.insert(v, format!("{name}{}", i + 1));
            }
        }
        out
    }

    /// 1-based index of the hexagon holding each vertex.
    pub fn hexagon_of(&self) -> BTreeMap<VertexId, usize> {
        self.hexagons.iter().enumerate().flat_map(|(i, h)| h.iter().map(move |&v| (v, i + 1))).collect()
    }

    /// For `n >= 2`: `x` is the degree-2 vertex of `C_n` next to
    /// `b_{n-1}` and `y` its other neighbor.
    pub fn terminal_pair(&self) -> Result<(VertexId, VertexId)> {
        let last = self.squares.last().ok_or_else(|| Error::Labeling("chain has no square".into()))?;
        terminal_pair(&self.network, self.hexagons.last().expect("n >= 1"), last.b)
    }

    pub fn with_weights(mut self, weights: &EdgeWeights) -> Result<Self> {
        apply_weights(&mut self.network, weights)?;
        Ok(self)
    }
}

/// Builds `G(w)` from `Q_{2n-1}`.
pub fn build_chain(code: &ChainCode) -> Result<LabeledChain> {
    let n = code.n();
    let cells: Vec<Cell> = (1..2 * n)
        .map(|j| if j % 2 == 1 { Cell::Hexagon { top: code.top_count(j.div_ceil(2)) } } else { Cell::Square })
        .collect();
    let Layout { network, hexagons, squares } = build_layout(&cells)?;
    Ok(LabeledChain { code: code.clone(), network, hexagons, squares })
}

/// A chain that opens with a square: `S_1, C_1, S_2, …, S_n, C_n`.
#[derive(Clone, Debug)]
pub struct TerminalChain {
    /// Top counts of `C_1 … C_{n-1}`.
    pub interior: Vec<u8>,
    pub network: ResistanceNetwork,
    pub hexagons: Vec<[VertexId; 6]>,
    pub squares: Vec<SquareCorners>,
    pub x: VertexId,
    pub y: VertexId,
}

impl TerminalChain {
    pub fn n(&self) -> usize {
        self.hexagons.len()
    }

    /// Edges of the last hexagon `C_n`.
    pub fn last_hexagon_edges(&self) -> Vec<(VertexId, VertexId)> {
        let h = self.hexagons.last().expect("n >= 1");
        (0..6).map(|i| edge_key(h[i], h[(i + 1) % 6])).collect()
    }

    /// Whether every edge of `C_n` is a single unit resistor.
    pub fn last_hexagon_is_unit(&self) -> bool {
        self.last_hexagon_edges().into_iter().all(|(u, v)| {
            let mut es = self.network.edges_between(u, v);
            matches!((es.next(), es.next()), (Some(e), None) if e.resistance == Rational::one())
        })
    }
}

/// Terminal chain with linear interior hexagons.
pub fn build_terminal_chain(n: usize, weights: Option<&EdgeWeights>) -> Result<TerminalChain> {
    if n < 1 {
        return Err(Error::InvalidParameter("need at least one hexagon".into()));
    }
    build_terminal_chain_with(&vec![1; n - 1], weights)
}

/// Terminal chain with `interior.len() + 1` hexagons; `interior[i]` is the
/// top count of `C_{i+1}`. The last hexagon puts both subdivisions on the
/// bottom, so `x` is its top-right vertex.
pub fn build_terminal_chain_with(interior: &[u8], weights: Option<&EdgeWeights>) -> Result<TerminalChain> {
    if let Some(bad) = interior.iter().find(|&&t| t > 2) {
        return Err(Error::InvalidParameter(format!("code entry {bad} is not 0, 1 or 2")));
    }
    let n = interior.len() + 1;
    let cells: Vec<Cell> = (1..=2 * n)
        .map(|j| {
            if j % 2 == 1 {
                Cell::Square
            } else {
                Cell::Hexagon { top: interior.get(j / 2 - 1).copied().unwrap_or(0) }
            }
        })
        .collect();
    let Layout { mut network, hexagons, squares } = build_layout(&cells)?;
    let last = *squares.last().expect("n >= 1");
    if let Some(w) = weights {
        if let Some(r) = w.get(&edge_key(last.b, last.k)) {
            if *r != Rational::one() {
                return Err(Error::InvalidParameter(format!("edge b_{n} k_{n} must have weight 1, got {r}")));
            }
        }
        apply_weights(&mut network, w)?;
    }
    let (x, y) = terminal_pair(&network, hexagons.last().expect("n >= 1"), last.b)?;
    Ok(TerminalChain { interior: interior.to_vec(), network, hexagons, squares, x, y })
}
