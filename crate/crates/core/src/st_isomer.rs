//! S,T-isomers: two ways of bridging a pair of marked components.
//!
//! Given disjoint connected `A` (marked `a`, `l`) and `B` (marked `b`, `k`),
//! `S` adds unit edges `ab` and `lk`, `T` adds `ak` and `bl`. Their Kirchhoff
//! indices differ by
//!
//! ```text
//! Kf(S) - Kf(T) = (r_A(l) - r_A(a)) (r_B(b) - r_B(k)) / (r_A(a,l) + r_B(b,k) + 2)
//! ```
//!
//! where `r_X(v)` is the resistance sum of `v` inside `X`. The right-hand
//! side only needs resistances inside the components.

use rand::Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::laplacian::{effective_resistance, kirchhoff_index, resistance_sum};
use crate::network::{ResistanceNetwork, VertexId};
use crate::random::connected_gnp;
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct StPair {
    pub a_side: ResistanceNetwork,
    pub a: VertexId,
    pub l: VertexId,
    pub b_side: ResistanceNetwork,
    pub b: VertexId,
    pub k: VertexId,
}

impl StPair {
    pub fn new(
        a_side: ResistanceNetwork,
        a: VertexId,
        l: VertexId,
        b_side: ResistanceNetwork,
        b: VertexId,
        k: VertexId,
    ) -> Result<Self> {
        let pair = StPair { a_side, a, l, b_side, b, k };
        pair.validate()?;
        Ok(pair)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPair(m));
        if self.a == self.l {
            return bad(format!("a and l coincide ({})", self.a));
        }
        if self.b == self.k {
            return bad(format!("b and k coincide ({})", self.b));
        }
        for (net, v, side) in [
            (&self.a_side, self.a, "A"),
            (&self.a_side, self.l, "A"),
            (&self.b_side, self.b, "B"),
            (&self.b_side, self.k, "B"),
        ] {
            if !net.contains(v) {
                return bad(format!("marked vertex {v} is not in {side}"));
            }
        }
        if let Some(v) = self.a_side.vertices().find(|&v| self.b_side.contains(v)) {
            return bad(format!("A and B share vertex {v}"));
        }
        if !self.a_side.is_connected() || !self.b_side.is_connected() {
            return bad("components must be connected".into());
        }
        Ok(())
    }

    /// Swaps `a`↔`l` and `b`↔`k` together.
    pub fn swapped_both(&self) -> StPair {
        StPair { a: self.l, l: self.a, b: self.k, k: self.b, ..self.clone() }
    }

    /// Swaps only `a`↔`l`, which exchanges the roles of `S` and `T`.
    pub fn swapped_a(&self) -> StPair {
        StPair { a: self.l, l: self.a, ..self.clone() }
    }
}

/// Returns `(S, T)`.
pub fn make_st_pair(pair: &StPair) -> Result<(ResistanceNetwork, ResistanceNetwork)> {
    pair.validate()?;
    let base = pair.a_side.union(&pair.b_side)?;
    let mut s = base.clone();
    s.add_unit_edge(pair.a, pair.b)?;
    s.add_unit_edge(pair.l, pair.k)?;
    let mut t = base;
    t.add_unit_edge(pair.a, pair.k)?;
    t.add_unit_edge(pair.b, pair.l)?;
    Ok((s, t))
}

/// The closed form for `Kf(S) - Kf(T)`, from resistances inside `A` and `B`.
pub fn lemma4_delta(pair: &StPair) -> Result<Rational> {
    pair.validate()?;
    let (a_net, b_net) = (&pair.a_side, &pair.b_side);
    let left = resistance_sum(a_net, pair.l)? - resistance_sum(a_net, pair.a)?;
    let right = resistance_sum(b_net, pair.b)? - resistance_sum(b_net, pair.k)?;
    let denom = effective_resistance(a_net, pair.a, pair.l)?
        + effective_resistance(b_net, pair.b, pair.k)?
        + Rational::from_integer(2);
    Ok((left * right).checked_div(&denom)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma4Report {
    pub kf_s: Rational,
    pub kf_t: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
    pub pass: bool,
}

impl Lemma4Report {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "kf_s": self.kf_s.to_string(),
            "kf_t": self.kf_t.to_string(),
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "pass": self.pass,
        })
    }
}

/// Computes both sides: `Kf(S) - Kf(T)` by elimination on the full graphs,
/// and the closed form.
pub fn verify_lemma4(pair: &StPair) -> Result<Lemma4Report> {
    let (s, t) = make_st_pair(pair)?;
    let kf_s = kirchhoff_index(&s)?;
    let kf_t = kirchhoff_index(&t)?;
    let lhs = &kf_s - &kf_t;
    let rhs = lemma4_delta(pair)?;
    let pass = lhs == rhs;
    Ok(Lemma4Report { kf_s, kf_t, lhs, rhs, pass })
}

/// Random pair: two connected G(n, p) components with `2..=max_vertices`
/// vertices each and distinct random marks. `B`'s ids start after `A`'s.
pub fn random_pair<R: Rng>(rng: &mut R, max_vertices: u32, weighted: bool) -> StPair {
    let na = rng.gen_range(2..=max_vertices);
    let nb = rng.gen_range(2..=max_vertices);
    let p = rng.gen_range(0.3..0.8);
    let a_side = connected_gnp(rng, na, p, 0, weighted);
    let b_side = connected_gnp(rng, nb, p, na, weighted);
    let pick2 = |rng: &mut R, n: u32, offset: u32| {
        let x = rng.gen_range(0..n);
        let mut y = rng.gen_range(0..n - 1);
        if y >= x {
            y += 1;
        }
        (VertexId(offset + x), VertexId(offset + y))
    };
    let (a, l) = pick2(rng, na, 0);
    let (b, k) = pick2(rng, nb, na);
    StPair { a_side, a, l, b_side, b, k }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn edge(u: u32, w: u32) -> ResistanceNetwork {
        let mut net = ResistanceNetwork::new();
        net.insert_vertex(v(u));
        net.insert_vertex(v(w));
        net.add_unit_edge(v(u), v(w)).unwrap();
        net
    }

    fn path(ids: [u32; 3]) -> ResistanceNetwork {
        let mut net = ResistanceNetwork::new();
        for i in ids {
            net.insert_vertex(v(i));
        }
        net.add_unit_edge(v(ids[0]), v(ids[1])).unwrap();
        net.add_unit_edge(v(ids[1]), v(ids[2])).unwrap();
        net
    }

    /// A = a–l–m with l interior, B = b–k–p with k interior.
    pub(crate) fn p3_pair() -> StPair {
        StPair::new(path([0, 1, 2]), v(0), v(1), path([3, 4, 5]), v(3), v(4)).unwrap()
    }

    #[test]
    fn symmetric_pair() {
        let pair = StPair::new(edge(0, 1), v(0), v(1), edge(2, 3), v(2), v(3)).unwrap();
        let (s, t) = make_st_pair(&pair).unwrap();
        for g in [&s, &t] {
            assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
            assert!(g.vertices().all(|x| g.degree(x) == 2));
        }
        assert_eq!(lemma4_delta(&pair).unwrap(), Rational::zero());
        let rep = verify_lemma4(&pair).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.lhs, Rational::zero());
    }

    #[test]
    fn p3_pair_values() {
        let pair = p3_pair();
        let (s, t) = make_st_pair(&pair).unwrap();
        // S: cycle a-b-k-l with pendants on l and k (adjacent); T: cycle a-k-b-l,
        // pendants on l and k (opposite)
        assert!(s.has_edge(v(1), v(4)) && t.has_edge(v(0), v(4)) && t.has_edge(v(3), v(1)));
        let rep = verify_lemma4(&pair).unwrap();
        assert_eq!(rep.kf_s, Rational::frac(83, 4));
        assert_eq!(rep.kf_t, Rational::from_integer(21));
        assert_eq!(rep.rhs, Rational::frac(-1, 4));
        assert!(rep.pass);
        assert_eq!(rep.to_json().to_string(), r#"{"kf_s":"83/4","kf_t":"21","lhs":"-1/4","pass":true,"rhs":"-1/4"}"#);
    }

    #[test]
    fn invalid_pairs() {
        assert!(StPair::new(edge(0, 1), v(0), v(0), edge(2, 3), v(2), v(3)).is_err());
        assert!(StPair::new(edge(0, 1), v(0), v(1), edge(1, 3), v(1), v(3)).is_err());
        assert!(StPair::new(edge(0, 1), v(0), v(1), edge(2, 3), v(2), v(9)).is_err());
        let mut split = ResistanceNetwork::with_vertices(3);
        split.add_unit_edge(v(0), v(1)).unwrap();
        assert!(StPair::new(split, v(0), v(2), edge(5, 6), v(5), v(6)).is_err());
    }

    #[test]
    fn swap_symmetries() {
        let pair = p3_pair();
        let d = lemma4_delta(&pair).unwrap();
        assert_eq!(lemma4_delta(&pair.swapped_both()).unwrap(), d);
        assert_eq!(lemma4_delta(&pair.swapped_a()).unwrap(), -d);
    }
}
