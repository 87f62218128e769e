//! Exact effective resistances from the conductance Laplacian.
//!
//! This is the elimination side of the crate: nothing in here knows about
//! series, parallel or Δ-Y rules, so it can serve as the oracle for them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::network::{ResistanceNetwork, VertexId};
use crate::rational::Rational;

type Matrix = Vec<Vec<Rational>>;

/// Pairwise effective resistances, rows and columns in `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResistanceMatrix {
    pub order: Vec<VertexId>,
    pub r: Matrix,
}

impl ResistanceMatrix {
    pub fn get(&self, u: VertexId, v: VertexId) -> Option<&Rational> {
        let i = self.order.binary_search(&u).ok()?;
        let j = self.order.binary_search(&v).ok()?;
        Some(&self.r[i][j])
    }

    /// Row sums: the total resistance from each vertex to all others.
    pub fn row_sums(&self) -> BTreeMap<VertexId, Rational> {
        self.order.iter().zip(&self.r).map(|(&v, row)| (v, row.iter().sum())).collect()
    }

    /// Sum over unordered pairs.
    pub fn total(&self) -> Rational {
        let mut acc = Rational::zero();
        for (i, row) in self.r.iter().enumerate() {
            for x in &row[i + 1..] {
                acc += x;
            }
        }
        acc
    }

    /// `{"order": [...], "r": [["p/q", ...], ...]}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order.iter().map(|v| v.0).collect::<Vec<_>>(),
            "r": self
                .r
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }
}

fn ensure_connected(net: &ResistanceNetwork) -> Result<()> {
    if net.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Conductance Laplacian in ascending vertex order.
pub fn conductance_laplacian(net: &ResistanceNetwork) -> (Vec<VertexId>, Matrix) {
    let order: Vec<VertexId> = net.vertices().collect();
    let index: BTreeMap<VertexId, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = order.len();
    let mut lap = vec![vec![Rational::zero(); n]; n];
    for e in net.edges() {
        let (i, j) = (index[&e.u], index[&e.v]);
        let c = e.conductance();
        lap[i][i] += &c;
        lap[j][j] += &c;
        lap[i][j] -= &c;
        lap[j][i] -= &c;
    }
    (order, lap)
}

/// Laplacian with the row and column of `ground` removed. Returns the
/// remaining vertices and the matrix.
fn grounded(net: &ResistanceNetwork, ground: VertexId) -> (Vec<VertexId>, Matrix) {
    let (order, lap) = conductance_laplacian(net);
    let g = order.binary_search(&ground).expect("ground vertex present");
    let keep: Vec<usize> = (0..order.len()).filter(|&i| i != g).collect();
    let m = keep.iter().map(|&i| keep.iter().map(|&j| lap[i][j].clone()).collect()).collect();
    (keep.iter().map(|&i| order[i]).collect(), m)
}

/// Solves `m · x = rhs` for every column of `rhs`. Each row of `[m | rhs]`
/// is scaled to integers, then reduced by fraction-free Gauss-Jordan
/// elimination, where every division by the previous pivot is exact. A
/// singular `m` yields `Error::Disconnected`: every matrix passed here is a
/// grounded Laplacian or a Laplacian shifted by `J/N`, both nonsingular
/// exactly when the network is connected.
fn solve_many(m: Matrix, rhs: Matrix) -> Result<Matrix> {
    let n = m.len();
    let width = n + rhs.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .zip(&rhs)
        .map(|(row, b)| {
            let scale = row.iter().chain(b).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().chain(b).map(|x| x.numer() * (&scale / x.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Disconnected)?;
        a.swap(col, p);
        let pivot = std::mem::take(&mut a[col]);
        let pv = &pivot[col];
        for (r, row) in a.iter_mut().enumerate() {
            if r == col {
                continue;
            }
            let f = row[col].clone();
            for c in 0..width {
                let mut x = &row[c] * pv;
                if !f.is_zero() && !pivot[c].is_zero() {
                    x -= &f * &pivot[c];
                }
                row[c] = x / &prev;
            }
        }
        prev = pv.clone();
        a[col] = pivot;
    }
    // the left block is now diagonal
    Ok(a.into_iter()
        .map(|row| {
            let d = BigRational::from_integer(row[0..n].iter().find(|x| !x.is_zero()).expect("pivot").clone());
            row[n..].iter().map(|x| Rational::from(BigRational::from_integer(x.clone()) / &d)).collect()
        })
        .collect())
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

fn inverse(m: Matrix) -> Result<Matrix> {
    let n = m.len();
    solve_many(m, identity(n))
}

/// Exact `r(u, v)`: ground `v`, solve `L' φ = e_u`, read `φ(u)`.
pub fn effective_resistance(net: &ResistanceNetwork, u: VertexId, v: VertexId) -> Result<Rational> {
    net.check_vertex(u)?;
    net.check_vertex(v)?;
    if u == v {
        return Ok(Rational::zero());
    }
    ensure_connected(net)?;
    let (order, m) = grounded(net, v);
    let iu = order.binary_search(&u).expect("u present");
    let rhs = (0..order.len()).map(|i| vec![if i == iu { Rational::one() } else { Rational::zero() }]).collect();
    let phi = solve_many(m, rhs)?;
    Ok(phi[iu][0].clone())
}

/// `r(source, t)` for each target, from one solve with `source` grounded:
/// `r(source, t)` is the `t`-th diagonal entry of the inverse.
pub fn resistances_from(net: &ResistanceNetwork, source: VertexId, targets: &[VertexId]) -> Result<Vec<Rational>> {
    net.check_vertex(source)?;
    for &t in targets {
        net.check_vertex(t)?;
    }
    ensure_connected(net)?;
    let (order, m) = grounded(net, source);
    let cols: Vec<Option<usize>> = targets.iter().map(|t| order.binary_search(t).ok()).collect();
    let live: Vec<usize> = cols.iter().flatten().copied().collect();
    let rhs = (0..order.len())
        .map(|i| live.iter().map(|&j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let phi = solve_many(m, rhs)?;
    let mut k = 0;
    Ok(cols
        .iter()
        .map(|c| match c {
            None => Rational::zero(),
            Some(i) => {
                k += 1;
                phi[*i][k - 1].clone()
            }
        })
        .collect())
}

/// All pairwise resistances from a single inversion of `L + J/N`:
/// `r(u, v) = M_uu + M_vv - 2 M_uv`.
pub fn resistance_matrix(net: &ResistanceNetwork) -> Result<ResistanceMatrix> {
    ensure_connected(net)?;
    let (order, mut lap) = conductance_laplacian(net);
    let n = order.len();
    if n == 0 {
        return Ok(ResistanceMatrix { order, r: Vec::new() });
    }
    let shift = Rational::frac(1, n as i64);
    for row in lap.iter_mut() {
        for x in row.iter_mut() {
            *x += &shift;
        }
    }
    let inv = inverse(lap)?;
    let r =
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::zero()
                        } else {
                            &(&inv[i][i] + &inv[j][j]) - &(&inv[i][j] + &inv[i][j])
                        }
                    })
                    .collect()
            })
            .collect();
    Ok(ResistanceMatrix { order, r })
}

/// `Σ_{y ≠ x} r(x, y)`. Grounding `x` makes `r(x, y)` the `y`-th diagonal
/// entry of the inverse grounded Laplacian.
pub fn resistance_sum(net: &ResistanceNetwork, x: VertexId) -> Result<Rational> {
    net.check_vertex(x)?;
    ensure_connected(net)?;
    if net.vertex_count() == 1 {
        return Ok(Rational::zero());
    }
    let (_, m) = grounded(net, x);
    let inv = inverse(m)?;
    Ok(inv.iter().enumerate().map(|(i, row)| row[i].clone()).sum())
}

/// Kirchhoff index, the sum of `r(u, v)` over unordered pairs.
///
/// With `M` the inverse of the Laplacian grounded at any vertex,
/// `Kf = N·tr(M) − 1ᵀM1`. A single vertex has index 0.
pub fn kirchhoff_index(net: &ResistanceNetwork) -> Result<Rational> {
    ensure_connected(net)?;
    let n = net.vertex_count();
    if n <= 1 {
        return Ok(Rational::zero());
    }
    let ground = net.vertices().next().expect("nonempty");
    let (_, m) = grounded(net, ground);
    let inv = inverse(m)?;
    let trace: Rational = inv.iter().enumerate().map(|(i, row)| row[i].clone()).sum();
    let total: Rational = inv.iter().flatten().sum();
    Ok(Rational::from_integer(n as i64) * trace - total)
}
