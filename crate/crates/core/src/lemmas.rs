//! Resistance inequalities behind the kink-flip argument, checked exactly.

use std::collections::BTreeSet;

use rand::Rng;
use serde_json::json;

use crate::chain::{build_chain, build_terminal_chain_with, edge_key, ChainCode, EdgeWeights, LabeledChain};
use crate::error::{Error, Result};
use crate::extremal::st_split;
use crate::laplacian::{resistance_matrix, resistances_from};
use crate::network::{ResistanceNetwork, VertexId};
use crate::random::small_positive;
use crate::rational::Rational;
use crate::simplify::{simplify_chain_circuit, Source};

/// Random weights on every edge of `net` except those listed in `fixed`.
pub fn random_weights_except<R: Rng>(
    rng: &mut R,
    net: &ResistanceNetwork,
    fixed: &BTreeSet<(VertexId, VertexId)>,
) -> EdgeWeights {
    net.edges()
        .iter()
        .map(|e| edge_key(e.u, e.v))
        .filter(|k| !fixed.contains(k))
        .map(|k| (k, small_positive(rng)))
        .collect()
}

fn hexagon_edges(h: &[VertexId; 6]) -> BTreeSet<(VertexId, VertexId)> {
    (0..6).map(|i| edge_key(h[i], h[(i + 1) % 6])).collect()
}

/// One source corner's side of the terminal-chain inequality.
#[derive(Clone, Debug)]
pub struct TerminalSide {
    pub source: VertexId,
    pub r_x: Rational,
    pub r_y: Rational,
    pub strict: bool,
    /// Legs of the final star.
    pub r1: Rational,
    pub r2: Rational,
    pub r1_in_unit_interval: bool,
    /// Every intermediate network keeps `r(source, x)` and `r(source, y)`.
    pub stepwise_preserved: bool,
    pub steps: usize,
    /// Closed form from the final ring agrees with the oracle; `None` when
    /// the last hexagon is weighted and the closed form does not apply.
    pub closed_form_matches: Option<bool>,
}

impl TerminalSide {
    pub fn pass(&self) -> bool {
        self.strict && self.r1_in_unit_interval && self.stepwise_preserved && self.closed_form_matches != Some(false)
    }

    fn to_json(&self) -> serde_json::Value {
        json!({
            "source": self.source.0,
            "r_x": self.r_x.to_string(),
            "r_y": self.r_y.to_string(),
            "strict": self.strict,
            "r1": self.r1.to_string(),
            "r2": self.r2.to_string(),
            "r1_in_unit_interval": self.r1_in_unit_interval,
            "stepwise_preserved": self.stepwise_preserved,
            "steps": self.steps,
            "closed_form_matches": self.closed_form_matches,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Lemma5Report {
    pub n: usize,
    pub interior: Vec<u8>,
    pub x: VertexId,
    pub y: VertexId,
    pub from_a: TerminalSide,
    pub from_l: TerminalSide,
    pub weights: Option<EdgeWeights>,
}

impl Lemma5Report {
    pub fn pass(&self) -> bool {
        self.from_a.pass() && self.from_l.pass()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "check": "lemma5",
            "n": self.n,
            "interior": self.interior.iter().map(|d| char::from(b'0' + d)).collect::<String>(),
            "x": self.x.0,
            "y": self.y.0,
            "from_a": self.from_a.to_json(),
            "from_l": self.from_l.to_json(),
            "pass": self.pass(),
        });
        if let Some(w) = &self.weights {
            v["weights"] = weights_json(w);
        }
        v
    }
}

pub fn weights_json(w: &EdgeWeights) -> serde_json::Value {
    w.iter().map(|((u, v), r)| json!([u.0, v.0, r.to_string()])).collect()
}

/// [`check_lemma5_with`] on the terminal chain with linear interior hexagons.
pub fn check_lemma5(n: usize, weights: Option<&EdgeWeights>) -> Result<Lemma5Report> {
    if n < 1 {
        return Err(Error::InvalidParameter("need at least one hexagon".into()));
    }
    check_lemma5_with(&vec![1; n - 1], weights)
}

/// `r(a_1, x) < r(a_1, y)` and `r(l_1, x) < r(l_1, y)` by the oracle, plus
/// a run of the simplification with every step checked against it.
pub fn check_lemma5_with(interior: &[u8], weights: Option<&EdgeWeights>) -> Result<Lemma5Report> {
    let chain = build_terminal_chain_with(interior, weights)?;
    let unit_tail = chain.last_hexagon_is_unit();
    let side = |src: Source| -> Result<TerminalSide> {
        let simplified = simplify_chain_circuit(&chain, src)?;
        let s = simplified.source;
        let targets = [chain.x, chain.y];
        let [r_x, r_y]: [Rational; 2] = resistances_from(&chain.network, s, &targets)?.try_into().expect("two targets");
        let mut stepwise_preserved = true;
        for net in simplified.snapshots(&chain.network)?.iter().skip(1) {
            if resistances_from(net, s, &targets)? != [r_x.clone(), r_y.clone()] {
                stepwise_preserved = false;
                break;
            }
        }
        let closed_form_matches = unit_tail.then(|| simplified.closed_form() == (r_x.clone(), r_y.clone()));
        Ok(TerminalSide {
            source: s,
            strict: r_x < r_y,
            r_x,
            r_y,
            r1_in_unit_interval: simplified.r1.is_positive() && simplified.r1 < Rational::one(),
            r1: simplified.r1,
            r2: simplified.r2,
            stepwise_preserved,
            steps: simplified.trace.len(),
            closed_form_matches,
        })
    };
    Ok(Lemma5Report {
        n: chain.n(),
        interior: interior.to_vec(),
        x: chain.x,
        y: chain.y,
        from_a: side(Source::A)?,
        from_l: side(Source::L)?,
        weights: weights.cloned(),
    })
}

/// Random weights for a terminal chain: every edge outside the last
/// hexagon gets a random resistance; the last hexagon (including
/// `b_n k_n`) stays at 1.
pub fn random_lemma5_weights<R: Rng>(rng: &mut R, interior: &[u8]) -> Result<EdgeWeights> {
    let chain = build_terminal_chain_with(interior, None)?;
    let fixed = hexagon_edges(chain.hexagons.last().expect("n >= 1"));
    Ok(random_weights_except(rng, &chain.network, &fixed))
}

#[derive(Clone, Debug)]
pub struct Lemma6Row {
    pub u: VertexId,
    pub r_x: Rational,
    pub r_y: Rational,
}

#[derive(Clone, Debug)]
pub struct Lemma6Report {
    pub code: ChainCode,
    pub x: VertexId,
    pub y: VertexId,
    pub rows: Vec<Lemma6Row>,
    pub weights: Option<EdgeWeights>,
}

impl Lemma6Report {
    pub fn pass(&self) -> bool {
        self.rows.len() == 4 && self.rows.iter().all(|r| r.r_x < r.r_y)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "check": "lemma6",
            "code": self.code.compact(),
            "n": self.code.n(),
            "x": self.x.0,
            "y": self.y.0,
            "rows": self.rows.iter().map(|r| json!({
                "u": r.u.0, "r_x": r.r_x.to_string(), "r_y": r.r_y.to_string(), "strict": r.r_x < r.r_y,
            })).collect::<Vec<_>>(),
            "pass": self.pass(),
        });
        if let Some(w) = &self.weights {
            v["weights"] = weights_json(w);
        }
        v
    }
}

/// For each `u` on `C_1` other than `a_1, l_1`: `r(u, x) < r(u, y)`, where
/// `x` is the degree-2 neighbor of `b_{n-1}` on `C_n`.
pub fn check_lemma6(code: &ChainCode, weights: Option<&EdgeWeights>) -> Result<Lemma6Report> {
    if code.n() < 2 {
        return Err(Error::InvalidParameter("need at least two hexagons".into()));
    }
    let mut chain = build_chain(code)?;
    let last = *chain.squares.last().expect("n >= 2");
    if let Some(w) = weights {
        if let Some(r) = w.get(&edge_key(last.b, last.k)) {
            if *r != Rational::one() {
                return Err(Error::InvalidParameter(format!(
                    "edge b_{0} k_{0} must have weight 1, got {r}",
                    code.n() - 1
                )));
            }
        }
        chain = chain.with_weights(w)?;
    }
    let (x, y) = chain.terminal_pair()?;
    let first = chain.squares[0];
    let matrix = resistance_matrix(&chain.network)?;
    let rows = chain.hexagons[0]
        .iter()
        .filter(|&&u| u != first.a && u != first.l)
        .map(|&u| Lemma6Row {
            u,
            r_x: matrix.get(u, x).expect("present").clone(),
            r_y: matrix.get(u, y).expect("present").clone(),
        })
        .collect();
    Ok(Lemma6Report { code: code.clone(), x, y, rows, weights: weights.cloned() })
}

/// Random weights for [`check_lemma6`]: the last hexagon stays at unit weight.
pub fn random_lemma6_weights<R: Rng>(rng: &mut R, code: &ChainCode) -> Result<EdgeWeights> {
    let chain = build_chain(code)?;
    let fixed = hexagon_edges(chain.hexagons.last().expect("n >= 1"));
    Ok(random_weights_except(rng, &chain.network, &fixed))
}

#[derive(Clone, Debug)]
pub struct HexagonReport {
    pub r: Rational,
    pub sum_a: Rational,
    pub sum_l: Rational,
    pub difference: Rational,
    pub closed_form: Rational,
    pub expected_sum_a: Rational,
    pub expected_sum_l: Rational,
    /// `difference < 0` when `r < 1`; vacuous otherwise.
    pub negative_below_one: bool,
}

impl HexagonReport {
    pub fn pass(&self) -> bool {
        self.difference == self.closed_form
            && self.sum_a == self.expected_sum_a
            && self.sum_l == self.expected_sum_l
            && self.negative_below_one
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "check": "hexagon",
            "r": self.r.to_string(),
            "sum_a": self.sum_a.to_string(),
            "sum_l": self.sum_l.to_string(),
            "difference": self.difference.to_string(),
            "closed_form": self.closed_form.to_string(),
            "expected_sum_a": self.expected_sum_a.to_string(),
            "expected_sum_l": self.expected_sum_l.to_string(),
            "negative_below_one": self.negative_below_one,
            "pass": self.pass(),
        })
    }
}

/// The last hexagon of a reduced `A`: cycle `b - a - l - s - s - k - b`
/// with weight `r` on the rung `k b` and 1 elsewhere. Returns the network
/// and `(a, l)`.
pub fn weighted_hexagon(r: &Rational) -> Result<(ResistanceNetwork, VertexId, VertexId)> {
    if !r.is_positive() {
        return Err(Error::InvalidParameter(format!("hexagon weight {r} must be positive")));
    }
    let mut net = ResistanceNetwork::with_vertices(6);
    let v = |i: u32| VertexId(i);
    // 0 = b, 1 = a, 2 = l, 3, 4 = bottom, 5 = k
    for i in 0..5 {
        net.add_unit_edge(v(i), v(i + 1))?;
    }
    net.add_edge(v(5), v(0), r.clone())?;
    Ok((net, v(1), v(2)))
}

/// Both vertex sums on the weighted hexagon and their difference, checked
/// against `(2r − 2)/(r + 5)` and the sums `(11r + 24)/(r + 5)`,
/// `(9r + 26)/(r + 5)`.
pub fn weighted_hexagon_check(r: &Rational) -> Result<HexagonReport> {
    let (net, a, l) = weighted_hexagon(r)?;
    let m = resistance_matrix(&net)?;
    let sum_to = |t: VertexId| -> Rational { net.vertices().map(|y| m.get(y, t).expect("present").clone()).sum() };
    let (sum_a, sum_l) = (sum_to(a), sum_to(l));
    let lin = |p: i64, q: i64| &(r * &Rational::from_integer(p)) + &Rational::from_integer(q);
    let denom = lin(1, 5);
    let difference = &sum_a - &sum_l;
    Ok(HexagonReport {
        r: r.clone(),
        closed_form: lin(2, -2).checked_div(&denom)?,
        expected_sum_a: lin(11, 24).checked_div(&denom)?,
        expected_sum_l: lin(9, 26).checked_div(&denom)?,
        negative_below_one: *r >= Rational::one() || difference.is_negative(),
        sum_a,
        sum_l,
        difference,
    })
}

/// The three vertex groups of one side of a split chain, with the sums of
/// resistances to the near and far marked corners.
#[derive(Clone, Debug)]
pub struct GroupSums {
    pub name: &'static str,
    pub vertices: usize,
    pub to_near: Rational,
    pub to_far: Rational,
}

impl GroupSums {
    pub fn strict(&self) -> bool {
        self.to_near < self.to_far
    }
}

#[derive(Clone, Debug)]
pub struct PartitionReport {
    pub code: ChainCode,
    pub square: usize,
    /// `A` side: near `a_i`, far `l_i`.
    pub a_groups: Vec<GroupSums>,
    /// `B` side: near `k_i`, far `b_i`.
    pub b_groups: Vec<GroupSums>,
    pub a_sums: (Rational, Rational),
    pub b_sums: (Rational, Rational),
}

impl PartitionReport {
    pub fn pass(&self) -> bool {
        self.a_groups.iter().chain(&self.b_groups).all(GroupSums::strict)
            && self.a_sums.0 < self.a_sums.1
            && self.b_sums.0 < self.b_sums.1
    }

    pub fn to_json(&self) -> serde_json::Value {
        let groups = |g: &[GroupSums]| {
            g.iter()
                .map(|g| {
                    json!({
                        "group": g.name, "vertices": g.vertices,
                        "to_near": g.to_near.to_string(), "to_far": g.to_far.to_string(), "strict": g.strict(),
                    })
                })
                .collect::<Vec<_>>()
        };
        json!({
            "code": self.code.compact(),
            "square": self.square,
            "a_groups": groups(&self.a_groups),
            "b_groups": groups(&self.b_groups),
            "r_a": [self.a_sums.0.to_string(), self.a_sums.1.to_string()],
            "r_b": [self.b_sums.0.to_string(), self.b_sums.1.to_string()],
            "pass": self.pass(),
        })
    }
}

fn group_sums(
    net: &ResistanceNetwork,
    groups: Vec<(&'static str, BTreeSet<VertexId>)>,
    near: VertexId,
    far: VertexId,
) -> Result<Vec<GroupSums>> {
    let m = resistance_matrix(net)?;
    let total = groups.iter().map(|g| g.1.len()).sum::<usize>();
    if total != net.vertex_count() {
        return Err(Error::Labeling(format!("groups cover {total} of {} vertices", net.vertex_count())));
    }
    Ok(groups
        .into_iter()
        .filter(|(_, vs)| !vs.is_empty())
        .map(|(name, vs)| GroupSums {
            name,
            vertices: vs.len(),
            to_near: vs.iter().map(|&y| m.get(y, near).expect("present").clone()).sum(),
            to_far: vs.iter().map(|&y| m.get(y, far).expect("present").clone()).sum(),
        })
        .collect())
}

/// Splits the chain at square `i` and compares, group by group, the sums of
/// resistances to the two marked corners on each side. On the `A` side the
/// groups are: hexagon vertices off the next square for `C_1 … C_{i-1}`,
/// the corners `a_j, l_j` for `j < i`, and `C_i` itself. The `B` side
/// mirrors this.
pub fn partition_inequalities(chain: &LabeledChain, i: usize) -> Result<PartitionReport> {
    let pair = st_split(chain, i)?;
    let sq = &chain.squares;
    let hex = |j: usize| -> BTreeSet<VertexId> { chain.hexagons[j - 1].iter().copied().collect() };
    let n = chain.hexagons.len();

    let a_corners: BTreeSet<VertexId> = (1..i).flat_map(|j| [sq[j - 1].a, sq[j - 1].l]).collect();
    let a_off: BTreeSet<VertexId> = (1..i).flat_map(hex).filter(|v| !a_corners.contains(v)).collect();
    let a_groups =
        group_sums(&pair.a_side, vec![("hexagon", a_off), ("square", a_corners), ("last", hex(i))], pair.a, pair.l)?;

    let b_corners: BTreeSet<VertexId> = (i + 1..n).flat_map(|j| [sq[j - 1].b, sq[j - 1].k]).collect();
    let b_off: BTreeSet<VertexId> = (i + 2..=n).flat_map(hex).filter(|v| !b_corners.contains(v)).collect();
    let b_groups = group_sums(
        &pair.b_side,
        vec![("hexagon", b_off), ("square", b_corners), ("last", hex(i + 1))],
        pair.k,
        pair.b,
    )?;

    let total = |g: &[GroupSums]| -> (Rational, Rational) {
        (g.iter().map(|x| x.to_near.clone()).sum(), g.iter().map(|x| x.to_far.clone()).sum())
    };
    Ok(PartitionReport {
        code: chain.code.clone(),
        square: i,
        a_sums: total(&a_groups),
        b_sums: total(&b_groups),
        a_groups,
        b_groups,
    })
}
