//! Exhaustive search over all chains with `n` hexagons.
//!
//! Codes are enumerated in lexicographic order; Kirchhoff indices are
//! computed in parallel and merged back in that same order, so every table
//! and verdict is independent of scheduling.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde_json::json;

use crate::chain::{build_chain, ChainCode, LabeledChain, SquareCorners};
use crate::error::{Error, Result};
use crate::laplacian::{kirchhoff_index, resistance_matrix};
use crate::network::{ResistanceNetwork, VertexId};
use crate::rational::Rational;
use crate::st_isomer::{lemma4_delta, make_st_pair, StPair};

/// Default bound on `3^(n-2)` for exhaustive runs (`n <= 9`).
pub const DEFAULT_CAP: u64 = 2187;

/// Number of codes with `n` hexagons, saturating.
pub fn code_count(n: usize) -> u64 {
    3u64.checked_pow(n.saturating_sub(2) as u32).unwrap_or(u64::MAX)
}

/// All codes for `n` hexagons in lexicographic order; with
/// `canonical_only`, the canonical representative of each class once.
pub fn enumerate_codes(n: usize, canonical_only: bool) -> Result<Vec<ChainCode>> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one hexagon".into()));
    }
    let len = n.saturating_sub(2);
    let mut all = Vec::with_capacity(code_count(n) as usize);
    let mut word = vec![0u8; len];
    loop {
        all.push(ChainCode::new(n, word.clone())?);
        // odometer, last position fastest
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(if canonical_only {
                    all.into_iter().filter(|c| c.canonical() == *c).collect()
                } else {
                    all
                });
            }
            pos -= 1;
            if word[pos] < 2 {
                word[pos] += 1;
                break;
            }
            word[pos] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KfReport {
    pub code: ChainCode,
    pub canonical: ChainCode,
    pub kf: Rational,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub per_vertex_sums: Option<BTreeMap<VertexId, Rational>>,
}

impl KfReport {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "n": self.code.n(),
            "code": self.code.compact(),
            "canonical": self.canonical.compact(),
            "kf": self.kf.to_string(),
            "vertices": self.vertex_count,
            "edges": self.edge_count,
        });
        if let Some(sums) = &self.per_vertex_sums {
            v["per_vertex_sums"] = sums.iter().map(|(k, r)| (k.0.to_string(), json!(r.to_string()))).collect();
        }
        v
    }
}

/// Exact `Kf(G(w))`.
pub fn kf_of_code(code: &ChainCode) -> Result<KfReport> {
    let chain = build_chain(code)?;
    Ok(KfReport {
        code: code.clone(),
        canonical: code.canonical(),
        kf: kirchhoff_index(&chain.network)?,
        vertex_count: chain.network.vertex_count(),
        edge_count: chain.network.edge_count(),
        per_vertex_sums: None,
    })
}

/// Like [`kf_of_code`] but also fills in every vertex's resistance sum,
/// computed from the full resistance matrix; `kf` is then half their total.
pub fn kf_of_code_with_sums(code: &ChainCode) -> Result<KfReport> {
    let chain = build_chain(code)?;
    let sums = resistance_matrix(&chain.network)?.row_sums();
    let kf = sums.values().sum::<Rational>() * Rational::frac(1, 2);
    Ok(KfReport {
        code: code.clone(),
        canonical: code.canonical(),
        kf,
        vertex_count: chain.network.vertex_count(),
        edge_count: chain.network.edge_count(),
        per_vertex_sums: Some(sums),
    })
}

fn check_cap(n: usize, cap: u64) -> Result<()> {
    let count = code_count(n);
    if count > cap {
        return Err(Error::CapExceeded { n, count, cap });
    }
    Ok(())
}

/// `Kf` for every code in `codes`, in the given order.
pub fn kf_many(codes: &[ChainCode]) -> Result<Vec<KfReport>> {
    codes.par_iter().map(kf_of_code).collect()
}

#[derive(Clone, Debug)]
pub struct ExtremaTable {
    pub n: usize,
    /// One report per code, lexicographic.
    pub reports: Vec<KfReport>,
    pub min_kf: Rational,
    pub max_kf: Rational,
    pub min_class: Vec<ChainCode>,
    pub max_class: Vec<ChainCode>,
}

impl ExtremaTable {
    /// Smallest value strictly above the minimum, if any.
    pub fn runner_up_min(&self) -> Option<&Rational> {
        self.reports.iter().map(|r| &r.kf).filter(|k| **k > self.min_kf).min()
    }

    /// Largest value strictly below the maximum, if any.
    pub fn runner_up_max(&self) -> Option<&Rational> {
        self.reports.iter().map(|r| &r.kf).filter(|k| **k < self.max_kf).max()
    }

    pub fn is_min(&self, code: &ChainCode) -> bool {
        self.min_class.contains(code)
    }

    pub fn is_max(&self, code: &ChainCode) -> bool {
        self.max_class.contains(code)
    }

    /// Rows `n,code,canonical,kf_num,kf_den,is_all_kink,is_min,is_max`.
    pub fn to_csv(&self, approx: bool) -> String {
        let mut out = String::from("n,code,canonical,kf_num,kf_den,is_all_kink,is_min,is_max");
        if approx {
            out.push_str(",kf_approx");
        }
        out.push('\n');
        for r in &self.reports {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}",
                self.n,
                r.code.compact(),
                r.canonical.compact(),
                r.kf.numer(),
                r.kf.denom(),
                r.code.is_all_kink(),
                self.is_min(&r.code),
                self.is_max(&r.code)
            ));
            if approx {
                out.push_str(&format!(",{}", r.kf.approx_string()));
            }
            out.push('\n');
        }
        out
    }
}

/// Exhaustive min/max over all `3^(n-2)` codes.
pub fn find_extrema(n: usize, cap: u64) -> Result<ExtremaTable> {
    check_cap(n, cap)?;
    let codes = enumerate_codes(n, false)?;
    let reports = kf_many(&codes)?;
    let min_kf = reports.iter().map(|r| &r.kf).min().expect("at least one code").clone();
    let max_kf = reports.iter().map(|r| &r.kf).max().expect("at least one code").clone();
    let class = |target: &Rational| reports.iter().filter(|r| &r.kf == target).map(|r| r.code.clone()).collect();
    Ok(ExtremaTable { n, min_class: class(&min_kf), max_class: class(&max_kf), min_kf, max_kf, reports })
}

fn codes_json(codes: &[ChainCode]) -> serde_json::Value {
    codes.iter().map(|c| json!(c.compact())).collect()
}

/// Helicene minimum and linear maximum, both unique up to the code
/// symmetries.
#[derive(Clone, Debug)]
pub struct ConjectureVerdict {
    pub n: usize,
    pub min_kf: Rational,
    pub max_kf: Rational,
    pub min_class: Vec<ChainCode>,
    pub max_class: Vec<ChainCode>,
    pub expected_min_class: Vec<ChainCode>,
    pub expected_max_class: Vec<ChainCode>,
    pub runner_up_min: Option<Rational>,
    pub runner_up_max: Option<Rational>,
    pub pass: bool,
}

impl ConjectureVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        let opt = |r: &Option<Rational>| r.as_ref().map(|x| x.to_string());
        json!({
            "check": "conjecture",
            "n": self.n,
            "min_kf": self.min_kf.to_string(),
            "max_kf": self.max_kf.to_string(),
            "min_class": codes_json(&self.min_class),
            "max_class": codes_json(&self.max_class),
            "expected_min_class": codes_json(&self.expected_min_class),
            "expected_max_class": codes_json(&self.expected_max_class),
            "runner_up_min": opt(&self.runner_up_min),
            "runner_up_max": opt(&self.runner_up_max),
            "pass": self.pass,
        })
    }
}

pub fn verify_conjecture_table(table: &ExtremaTable) -> Result<ConjectureVerdict> {
    let n = table.n;
    let expected_min_class: Vec<ChainCode> = ChainCode::helicene(n)?.orbit().into_iter().collect();
    let expected_max_class = vec![ChainCode::linear(n)?];
    let pass = table.min_class == expected_min_class && table.max_class == expected_max_class;
    Ok(ConjectureVerdict {
        n,
        min_kf: table.min_kf.clone(),
        max_kf: table.max_kf.clone(),
        min_class: table.min_class.clone(),
        max_class: table.max_class.clone(),
        expected_min_class,
        expected_max_class,
        runner_up_min: table.runner_up_min().cloned(),
        runner_up_max: table.runner_up_max().cloned(),
        pass,
    })
}

pub fn verify_conjecture(n: usize, cap: u64) -> Result<ConjectureVerdict> {
    if n < 3 {
        return Err(Error::InvalidParameter("the extremal question needs n >= 3".into()));
    }
    verify_conjecture_table(&find_extrema(n, cap)?)
}

/// Every minimizer is all-kink.
#[derive(Clone, Debug)]
pub struct Theorem1Verdict {
    pub n: usize,
    pub min_kf: Rational,
    pub min_class: Vec<ChainCode>,
    /// Minimizers containing a 1, if any.
    pub witnesses: Vec<ChainCode>,
    pub pass: bool,
}

impl Theorem1Verdict {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "check": "theorem1",
            "n": self.n,
            "min_kf": self.min_kf.to_string(),
            "min_class": codes_json(&self.min_class),
            "witnesses": codes_json(&self.witnesses),
            "pass": self.pass,
        })
    }
}

pub fn verify_theorem1_table(table: &ExtremaTable) -> Theorem1Verdict {
    let witnesses: Vec<ChainCode> = table.min_class.iter().filter(|c| !c.is_all_kink()).cloned().collect();
    Theorem1Verdict {
        n: table.n,
        min_kf: table.min_kf.clone(),
        min_class: table.min_class.clone(),
        pass: witnesses.is_empty(),
        witnesses,
    }
}

pub fn verify_theorem1(n: usize, cap: u64) -> Result<Theorem1Verdict> {
    Ok(verify_theorem1_table(&find_extrema(n, cap)?))
}

fn square(chain: &LabeledChain, i: usize) -> Result<SquareCorners> {
    if i == 0 || i > chain.squares.len() {
        return Err(Error::InvalidParameter(format!("square index {i} outside 1..={}", chain.squares.len())));
    }
    Ok(chain.squares[i - 1])
}

fn flip_edges(net: &ResistanceNetwork, s: &SquareCorners) -> Result<ResistanceNetwork> {
    let mut out = net.clone();
    for (p, q) in [(s.a, s.b), (s.l, s.k)] {
        out.remove_one_edge(p, q).ok_or_else(|| Error::Labeling(format!("square edge {p}-{q} is missing")))?;
    }
    out.add_unit_edge(s.a, s.k)?;
    out.add_unit_edge(s.b, s.l)?;
    Ok(out)
}

/// `G'`: at square `i` (1-based), drop `a_i b_i` and `l_i k_i`, add `a_i k_i`
/// and `b_i l_i`.
pub fn kink_flip(chain: &LabeledChain, i: usize) -> Result<ResistanceNetwork> {
    flip_edges(&chain.network, &square(chain, i)?)
}

/// [`kink_flip`] with labels kept consistent. The part of the chain past
/// square `i` is now mirrored, so its corners swap top and bottom and its
/// code entries are complemented. Flipping the same square twice restores
/// the original chain.
pub fn kink_flip_labeled(chain: &LabeledChain, i: usize) -> Result<LabeledChain> {
    let network = kink_flip(chain, i)?;
    let mut squares = chain.squares.clone();
    let s = &mut squares[i - 1];
    std::mem::swap(&mut s.b, &mut s.k);
    for s in squares.iter_mut().skip(i) {
        std::mem::swap(&mut s.a, &mut s.l);
        std::mem::swap(&mut s.b, &mut s.k);
    }
    let word: Vec<u8> =
        chain.code.word().iter().enumerate().map(|(j, &t)| if j + 1 >= i { 2 - t } else { t }).collect();
    Ok(LabeledChain { code: ChainCode::new(chain.code.n(), word)?, network, hexagons: chain.hexagons.clone(), squares })
}

/// Splits `chain` at square `i` into the S,T pair whose `S` is the chain
/// itself and whose `T` is the kink flip. `A` holds `a_i`, `B` holds `b_i`.
pub fn st_split(chain: &LabeledChain, i: usize) -> Result<StPair> {
    let s = square(chain, i)?;
    let mut cut = chain.network.clone();
    for (p, q) in [(s.a, s.b), (s.l, s.k)] {
        cut.remove_one_edge(p, q).ok_or_else(|| Error::Labeling(format!("square edge {p}-{q} is missing")))?;
    }
    let a_part = cut.component_of(s.a);
    if a_part.contains(&s.b) {
        return Err(Error::Labeling(format!("removing square {i}'s bridges does not split the chain")));
    }
    let b_part: BTreeSet<VertexId> = cut.vertices().filter(|v| !a_part.contains(v)).collect();
    StPair::new(cut.induced(&a_part), s.a, s.l, cut.induced(&b_part), s.b, s.k)
}

/// Square indices `i` where `C_i` has code 0 and `C_{i+1}` code 2.
pub fn zero_two_junctions(code: &ChainCode) -> Vec<usize> {
    code.word().windows(2).enumerate().filter(|(_, w)| w == &[0, 2]).map(|(j, _)| j + 2).collect()
}

#[derive(Clone, Debug)]
pub struct KinkFlipReport {
    pub code: ChainCode,
    pub square: usize,
    pub kf_original: Rational,
    pub kf_flipped: Rational,
    /// Code of a chain isomorphic to the flipped graph.
    pub flipped_code: ChainCode,
    pub kf_flipped_code: Rational,
    pub closed_form: Rational,
    /// `Kf(G') < Kf(G)`.
    pub decreases: bool,
    /// The split pair rebuilds exactly `G` and `G'`, and the closed form
    /// equals `Kf(G) - Kf(G')`.
    pub decomposition_matches: bool,
}

impl KinkFlipReport {
    pub fn pass(&self) -> bool {
        self.decreases && self.decomposition_matches && self.kf_flipped == self.kf_flipped_code
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "code": self.code.compact(),
            "square": self.square,
            "kf": self.kf_original.to_string(),
            "kf_flipped": self.kf_flipped.to_string(),
            "flipped_code": self.flipped_code.compact(),
            "kf_flipped_code": self.kf_flipped_code.to_string(),
            "closed_form": self.closed_form.to_string(),
            "decreases": self.decreases,
            "decomposition_matches": self.decomposition_matches,
            "pass": self.pass(),
        })
    }
}

pub fn check_kink_flip(code: &ChainCode, i: usize) -> Result<KinkFlipReport> {
    let chain = build_chain(code)?;
    let flipped = kink_flip_labeled(&chain, i)?;
    let kf_original = kirchhoff_index(&chain.network)?;
    let kf_flipped = kirchhoff_index(&flipped.network)?;
    let kf_flipped_code = kirchhoff_index(&build_chain(&flipped.code)?.network)?;
    let pair = st_split(&chain, i)?;
    let (s, t) = make_st_pair(&pair)?;
    let closed_form = lemma4_delta(&pair)?;
    let decomposition_matches = s == chain.network && t == flipped.network && closed_form == &kf_original - &kf_flipped;
    Ok(KinkFlipReport {
        code: code.clone(),
        square: i,
        decreases: kf_flipped < kf_original,
        kf_original,
        kf_flipped,
        flipped_code: flipped.code,
        kf_flipped_code,
        closed_form,
        decomposition_matches,
    })
}

/// Kink-flip reports for every `(0, 2)` junction of every all-kink chain
/// with `n` hexagons.
pub fn kink_flip_sweep(n: usize, cap: u64) -> Result<Vec<KinkFlipReport>> {
    check_cap(n, cap)?;
    let jobs: Vec<(ChainCode, usize)> = enumerate_codes(n, false)?
        .into_iter()
        .filter(ChainCode::is_all_kink)
        .flat_map(|c| zero_two_junctions(&c).into_iter().map(move |i| (c.clone(), i)))
        .collect();
    jobs.par_iter().map(|(c, i)| check_kink_flip(c, *i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> ChainCode {
        s.parse().unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_codes(1, false).unwrap(), vec![code("n=1")]);
        assert_eq!(enumerate_codes(2, true).unwrap(), vec![code("n=2")]);
        let three: Vec<String> = enumerate_codes(3, false).unwrap().iter().map(|c| c.compact()).collect();
        assert_eq!(three, vec!["0", "1", "2"]);
        assert_eq!(enumerate_codes(5, false).unwrap().len(), 27);
        let all = enumerate_codes(6, false).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn canonical_classes_match_burnside() {
        // brute-force orbit partition against Burnside's count for n = 4..7
        for n in 4..=7 {
            let all = enumerate_codes(n, false).unwrap();
            let mut seen = BTreeSet::new();
            let mut orbits = 0;
            for c in &all {
                if seen.insert(c.clone()) {
                    orbits += 1;
                    seen.extend(c.orbit());
                }
            }
            let len = (n - 2) as u32;
            let fixed_rev = 3u64.pow(len.div_ceil(2));
            // complement fixes only the all-ones word; reverse-complement
            // fixes words determined by their first half (middle entry 1)
            let fixed_comp = 1;
            let fixed_both = 3u64.pow(len / 2);
            let burnside = (3u64.pow(len) + fixed_rev + fixed_comp + fixed_both) / 4;
            assert_eq!(orbits, burnside, "n = {n}");
            assert_eq!(enumerate_codes(n, true).unwrap().len() as u64, burnside);
        }
        assert_eq!(enumerate_codes(4, true).unwrap().len(), 4);
    }

    #[test]
    fn kf_small() {
        assert_eq!(kf_of_code(&code("n=1")).unwrap().kf, Rational::frac(35, 2));
        assert_eq!(kf_of_code(&code("000")).unwrap().kf, kf_of_code(&code("222")).unwrap().kf);
        let r = kf_of_code_with_sums(&code("02")).unwrap();
        assert_eq!(r.kf, kf_of_code(&code("02")).unwrap().kf);
        assert_eq!(r.per_vertex_sums.as_ref().unwrap().len(), 24);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(find_extrema(10, DEFAULT_CAP), Err(Error::CapExceeded { n: 10, count: 6561, .. })));
        assert!(find_extrema(4, 9).is_ok());
        assert!(find_extrema(5, 9).is_err());
    }

    #[test]
    fn flip_twice_restores() {
        let chain = build_chain(&code("0200")).unwrap();
        let once = kink_flip_labeled(&chain, 2).unwrap();
        let twice = kink_flip_labeled(&once, 2).unwrap();
        assert_eq!(twice.network, chain.network);
        assert_eq!(twice.code, chain.code);
        assert_eq!(twice.squares, chain.squares);
        // the bare flip refuses a square whose edges are already gone
        let g1 = kink_flip(&chain, 2).unwrap();
        let relabeled = LabeledChain { network: g1, ..chain.clone() };
        assert!(matches!(kink_flip(&relabeled, 2), Err(Error::Labeling(_))));
        assert!(kink_flip(&chain, 0).is_err());
        assert!(kink_flip(&chain, 6).is_err());
    }

    #[test]
    fn junctions() {
        assert_eq!(zero_two_junctions(&code("0202")), vec![2, 4]);
        assert!(zero_two_junctions(&code("2000")).is_empty());
    }

    #[test]
    fn flip_at_junction_decreases() {
        let rep = check_kink_flip(&code("02"), 2).unwrap();
        assert!(rep.pass(), "{:?}", rep);
        assert!(rep.closed_form.is_positive());
        assert_eq!(rep.flipped_code, code("00"));
    }
}
