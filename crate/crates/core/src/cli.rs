//! Command-line front end.
//!
//! Exit status: 0 on success or a passing check, 1 when a check fails, 2 on
//! bad input (unknown flags, malformed codes or weights, cap exceeded).

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::chain::{build_chain, build_terminal_chain_with, ChainCode};
use crate::error::{Error, Result};
use crate::extremal::{
    enumerate_codes, find_extrema, kf_of_code, kf_of_code_with_sums, kink_flip_sweep, verify_conjecture_table,
    verify_theorem1_table, DEFAULT_CAP,
};
use crate::io::{chain_to_dot, network_to_dot, parse_edge_list, write_edge_list};
use crate::laplacian::{kirchhoff_index, resistance_matrix};
use crate::lemmas::{
    check_lemma5_with, check_lemma6, random_lemma5_weights, random_lemma6_weights, weighted_hexagon_check,
};
use crate::network::ResistanceNetwork;
use crate::random::DEFAULT_SEED;
use crate::rational::Rational;
use crate::simplify::{simplify_chain_circuit, Source};
use crate::st_isomer::{random_pair, verify_lemma4, StPair};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "phenylene", version, about = "Exact Kirchhoff indices of phenylene chains")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Add a decimal rendering next to exact values.
    #[arg(long, global = true)]
    pub approx: bool,
    /// Largest number of codes an exhaustive run may visit.
    #[arg(long, global = true, env = "PHENYLENE_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct GraphInput {
    /// Chain code, e.g. `020`, `w=0,2,0` or `n=5 w=0,2,0`.
    #[arg(long)]
    pub code: Option<String>,
    /// Edge-list file with lines `u v p/q`.
    #[arg(long)]
    pub edges: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kirchhoff index of a chain or an edge-list network.
    Kf {
        #[command(flatten)]
        input: GraphInput,
        /// Also report every vertex's resistance sum.
        #[arg(long)]
        sums: bool,
    },
    /// All codes with `n` hexagons.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// One representative per symmetry class.
        #[arg(long)]
        canonical: bool,
    },
    /// Exhaustive minimum and maximum of Kf over `n` hexagons.
    Extrema {
        #[arg(long)]
        n: usize,
    },
    /// Run one of the verification suites.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Simplify a terminal chain down to its final star.
    Reduce {
        /// Number of hexagons, with linear interior.
        #[arg(long, required_unless_present = "code")]
        n: Option<usize>,
        /// Top counts of `C_1 … C_{n-1}`, e.g. `11` or `0,2`.
        #[arg(long, conflicts_with = "n")]
        code: Option<String>,
        /// Left corner of the first square kept as terminal.
        #[arg(long, value_enum, default_value_t = SourceArg::A)]
        source: SourceArg,
        /// Print every step.
        #[arg(long)]
        trace: bool,
    },
    /// Graphviz rendering of a chain or an edge-list network.
    ExportDot {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Full resistance matrix of an edge-list network.
    Matrix {
        #[arg(long)]
        edges: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SourceArg {
    A,
    L,
}

#[derive(Subcommand, Debug)]
pub enum Check {
    /// S,T-isomer difference against its closed form on random pairs.
    Lemma4 {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Largest component size.
        #[arg(long, default_value_t = 8)]
        max_vertices: u32,
    },
    /// Terminal-chain inequalities for every interior code with `n` hexagons.
    Lemma5 {
        #[arg(long)]
        n: usize,
        /// Extra random weight assignments.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// First-hexagon inequalities for every chain with `n` hexagons.
    Lemma6 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Every minimizer is all-kink.
    Theorem1 {
        #[arg(long)]
        n: usize,
    },
    /// Minimum on the helicene class, maximum on the linear chain.
    Conjecture {
        #[arg(long)]
        n: usize,
    },
    /// Vertex-sum difference on the hexagon with one weighted rung.
    Hexagon {
        #[arg(long)]
        r: String,
    },
    /// Kf drops at every (0,2) junction of every all-kink chain.
    KinkFlip {
        #[arg(long)]
        n: usize,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match execute(&cli, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Parse(format!("output: {e}"))
}

fn read_network(path: &Path) -> Result<ResistanceNetwork> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_edge_list(&text)
}

fn parse_code(s: &str) -> Result<ChainCode> {
    s.parse()
}

fn parse_interior(s: &str) -> Result<Vec<u8>> {
    let s = s.trim().trim_start_matches("w=");
    let entries: Vec<String> = if s.contains(',') {
        s.split(',').map(|d| d.trim().to_string()).collect()
    } else {
        s.chars().map(String::from).collect()
    };
    entries
        .iter()
        .map(|d| match d.as_str() {
            "0" => Ok(0),
            "1" => Ok(1),
            "2" => Ok(2),
            _ => Err(Error::Parse(format!("code entry {d:?} is not 0, 1 or 2"))),
        })
        .collect()
}

fn cap_check(n: usize, count: u64, cap: u64) -> Result<()> {
    if count > cap {
        return Err(Error::CapExceeded { n, count, cap });
    }
    Ok(())
}

fn value(r: &Rational, approx: bool) -> String {
    if approx {
        format!("{r}\t{}", r.approx_string())
    } else {
        r.to_string()
    }
}

fn json_value(r: &Rational, approx: bool) -> serde_json::Value {
    if approx {
        json!({"exact": r.to_string(), "approx": r.to_f64_approx()})
    } else {
        json!(r.to_string())
    }
}

fn print_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("serializable")).map_err(io_err)
}

fn verdict_line(out: &mut dyn Write, pass: bool, what: &str) -> Result<()> {
    writeln!(out, "{} {what}", if pass { "PASS" } else { "FAIL" }).map_err(io_err)
}

fn codes_text(codes: &[ChainCode]) -> String {
    let parts: Vec<String> = codes.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Kf { input, sums } => kf(cli, out, input, *sums),
        Command::Enumerate { n, canonical } => enumerate(cli, out, *n, *canonical),
        Command::Extrema { n } => extrema(cli, out, *n),
        Command::Verify { check } => verify(cli, out, check),
        Command::Reduce { n, code, source, trace } => reduce(cli, out, *n, code.as_deref(), *source, *trace),
        Command::ExportDot { input } => {
            let dot = match (&input.code, &input.edges) {
                (Some(c), _) => chain_to_dot(&build_chain(&parse_code(c)?)?),
                (None, Some(p)) => network_to_dot(&read_network(p)?),
                (None, None) => unreachable!("clap requires one input"),
            };
            write!(out, "{dot}").map_err(io_err)?;
            Ok(true)
        }
        Command::Matrix { edges } => {
            let m = resistance_matrix(&read_network(edges)?)?;
            if cli.format == Format::Json {
                print_json(out, &m.to_json())?;
            } else {
                for (i, u) in m.order.iter().enumerate() {
                    let row: Vec<String> = m.r[i].iter().map(ToString::to_string).collect();
                    writeln!(out, "{u}: {}", row.join(" ")).map_err(io_err)?;
                }
            }
            Ok(true)
        }
    }
}

fn kf(cli: &Cli, out: &mut dyn Write, input: &GraphInput, sums: bool) -> Result<bool> {
    if let Some(path) = &input.edges {
        let net = read_network(path)?;
        let kf = kirchhoff_index(&net)?;
        if cli.format == Format::Json {
            print_json(
                out,
                &json!({"vertices": net.vertex_count(), "edges": net.edge_count(), "kf": json_value(&kf, cli.approx)}),
            )?;
        } else {
            writeln!(out, "{}", value(&kf, cli.approx)).map_err(io_err)?;
        }
        return Ok(true);
    }
    let code = parse_code(input.code.as_deref().expect("clap requires one input"))?;
    let report = if sums { kf_of_code_with_sums(&code)? } else { kf_of_code(&code)? };
    match cli.format {
        Format::Json => {
            let mut v = report.to_json();
            if cli.approx {
                v["kf_approx"] = json!(report.kf.to_f64_approx());
            }
            print_json(out, &v)?;
        }
        _ => {
            writeln!(out, "{}", value(&report.kf, cli.approx)).map_err(io_err)?;
            if let Some(s) = &report.per_vertex_sums {
                for (v, r) in s {
                    writeln!(out, "{v}\t{}", value(r, cli.approx)).map_err(io_err)?;
                }
            }
        }
    }
    Ok(true)
}

fn enumerate(cli: &Cli, out: &mut dyn Write, n: usize, canonical: bool) -> Result<bool> {
    cap_check(n, crate::extremal::code_count(n), cli.cap)?;
    let codes = enumerate_codes(n, canonical)?;
    match cli.format {
        Format::Json => {
            let rows: Vec<_> = codes
                .iter()
                .map(|c| json!({"code": c.compact(), "canonical": c.canonical().compact(), "is_all_kink": c.is_all_kink()}))
                .collect();
            print_json(out, &json!({"n": n, "count": codes.len(), "codes": rows}))?;
        }
        Format::Csv => {
            writeln!(out, "n,code,canonical,is_all_kink").map_err(io_err)?;
            for c in &codes {
                writeln!(out, "{n},{},{},{}", c.compact(), c.canonical().compact(), c.is_all_kink()).map_err(io_err)?;
            }
        }
        _ => {
            for c in &codes {
                writeln!(out, "{c}").map_err(io_err)?;
            }
        }
    }
    Ok(true)
}

fn extrema(cli: &Cli, out: &mut dyn Write, n: usize) -> Result<bool> {
    let table = find_extrema(n, cli.cap)?;
    match cli.format {
        Format::Csv => write!(out, "{}", table.to_csv(cli.approx)).map_err(io_err)?,
        Format::Json => {
            let rows: Vec<_> = table
                .reports
                .iter()
                .map(|r| {
                    json!({
                        "code": r.code.compact(),
                        "canonical": r.canonical.compact(),
                        "kf": json_value(&r.kf, cli.approx),
                        "is_all_kink": r.code.is_all_kink(),
                        "is_min": table.is_min(&r.code),
                        "is_max": table.is_max(&r.code),
                    })
                })
                .collect();
            let class = |cs: &[ChainCode]| cs.iter().map(|c| c.compact()).collect::<Vec<_>>();
            print_json(
                out,
                &json!({
                    "n": n,
                    "min_kf": json_value(&table.min_kf, cli.approx),
                    "max_kf": json_value(&table.max_kf, cli.approx),
                    "min_class": class(&table.min_class),
                    "max_class": class(&table.max_class),
                    "rows": rows,
                }),
            )?;
        }
        _ => {
            writeln!(out, "n = {n}, {} codes", table.reports.len()).map_err(io_err)?;
            writeln!(out, "min Kf = {} on {}", value(&table.min_kf, cli.approx), codes_text(&table.min_class))
                .map_err(io_err)?;
            writeln!(out, "max Kf = {} on {}", value(&table.max_kf, cli.approx), codes_text(&table.max_class))
                .map_err(io_err)?;
        }
    }
    Ok(true)
}

fn reduce(
    cli: &Cli,
    out: &mut dyn Write,
    n: Option<usize>,
    code: Option<&str>,
    source: SourceArg,
    trace: bool,
) -> Result<bool> {
    let interior = match (n, code) {
        (_, Some(c)) => parse_interior(c)?,
        (Some(0), None) => return Err(Error::InvalidParameter("need at least one hexagon".into())),
        (Some(n), None) => vec![1; n - 1],
        (None, None) => unreachable!("clap requires --n or --code"),
    };
    let chain = build_terminal_chain_with(&interior, None)?;
    let src = match source {
        SourceArg::A => Source::A,
        SourceArg::L => Source::L,
    };
    let s = simplify_chain_circuit(&chain, src)?;
    let replayed = s.trace.replay(&chain.network)? == s.network;
    if cli.format == Format::Json {
        let mut v = json!({
            "n": chain.n(),
            "source": s.source.0,
            "x": chain.x.0,
            "y": chain.y.0,
            "r1": json_value(&s.r1, cli.approx),
            "r2": json_value(&s.r2, cli.approx),
            "tail": json_value(&s.tail, cli.approx),
            "delta_y_steps": s.trace.count("delta-y"),
            "series_steps": s.trace.count("series"),
            "replay_matches": replayed,
        });
        if trace {
            v["steps"] = s.trace.steps.iter().map(|st| st.to_json()).collect();
        }
        print_json(out, &v)?;
    } else {
        if trace {
            for (i, st) in s.trace.steps.iter().enumerate() {
                writeln!(out, "{:>3}. {st}", i + 1).map_err(io_err)?;
            }
        }
        writeln!(out, "R1 = {}", value(&s.r1, cli.approx)).map_err(io_err)?;
        writeln!(out, "R2 = {}", value(&s.r2, cli.approx)).map_err(io_err)?;
        writeln!(out, "tail = {}", value(&s.tail, cli.approx)).map_err(io_err)?;
    }
    Ok(replayed)
}

fn pair_witness(pair: &StPair) -> serde_json::Value {
    json!({
        "a_side": write_edge_list(&pair.a_side),
        "a": pair.a.0,
        "l": pair.l.0,
        "b_side": write_edge_list(&pair.b_side),
        "b": pair.b.0,
        "k": pair.k.0,
    })
}

/// Runs a list of named checks, prints them, and reports whether all passed.
/// Each entry is `(label, pass, json)`.
fn report_all(
    cli: &Cli,
    out: &mut dyn Write,
    check: &str,
    entries: Vec<(String, bool, serde_json::Value)>,
) -> Result<bool> {
    let pass = entries.iter().all(|e| e.1);
    let failures: Vec<&(String, bool, serde_json::Value)> = entries.iter().filter(|e| !e.1).collect();
    if cli.format == Format::Json {
        let mut v = json!({"check": check, "cases": entries.len(), "pass": pass});
        v["results"] = entries.iter().map(|e| e.2.clone()).collect();
        if let Some(first) = failures.first() {
            v["witness"] = first.2.clone();
        }
        print_json(out, &v)?;
    } else {
        verdict_line(out, pass, &format!("{check}: {} of {} cases", entries.len() - failures.len(), entries.len()))?;
        if let Some(first) = failures.first() {
            writeln!(out, "witness {}: {}", first.0, first.2).map_err(io_err)?;
        }
    }
    Ok(pass)
}

fn verify(cli: &Cli, out: &mut dyn Write, check: &Check) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match check {
        Check::Lemma4 { samples, max_vertices } => {
            if *max_vertices < 2 {
                return Err(Error::InvalidParameter("components need at least 2 vertices".into()));
            }
            let mut entries = Vec::new();
            for i in 0..*samples {
                let pair = random_pair(&mut rng, *max_vertices, i % 2 == 1);
                let rep = verify_lemma4(&pair)?;
                let mut v = rep.to_json();
                if !rep.pass {
                    v["pair"] = pair_witness(&pair);
                }
                entries.push((format!("sample {i}"), rep.pass, v));
            }
            report_all(cli, out, "lemma4", entries)
        }
        Check::Lemma5 { n, samples } => {
            if *n == 0 {
                return Err(Error::InvalidParameter("need at least one hexagon".into()));
            }
            cap_check(*n, crate::extremal::code_count(n + 1), cli.cap)?;
            let mut entries = Vec::new();
            for code in enumerate_codes(n + 1, false)? {
                let rep = check_lemma5_with(code.word(), None)?;
                entries.push((format!("interior {}", code.compact()), rep.pass(), rep.to_json()));
            }
            for i in 0..*samples {
                let interior: Vec<u8> = (0..n - 1).map(|_| rng.gen_range(0..3)).collect();
                let w = random_lemma5_weights(&mut rng, &interior)?;
                let rep = check_lemma5_with(&interior, Some(&w))?;
                entries.push((format!("weighted sample {i}"), rep.pass(), rep.to_json()));
            }
            report_all(cli, out, "lemma5", entries)
        }
        Check::Lemma6 { n, samples } => {
            if *n < 2 {
                return Err(Error::InvalidParameter("need at least two hexagons".into()));
            }
            cap_check(*n, crate::extremal::code_count(*n), cli.cap)?;
            let codes = enumerate_codes(*n, false)?;
            let mut entries = Vec::new();
            for code in &codes {
                let rep = check_lemma6(code, None)?;
                entries.push((format!("code {}", code.compact()), rep.pass(), rep.to_json()));
            }
            for i in 0..*samples {
                let code = &codes[rng.gen_range(0..codes.len())];
                let w = random_lemma6_weights(&mut rng, code)?;
                let rep = check_lemma6(code, Some(&w))?;
                entries.push((format!("weighted sample {i}"), rep.pass(), rep.to_json()));
            }
            report_all(cli, out, "lemma6", entries)
        }
        Check::Theorem1 { n } => {
            let v = verify_theorem1_table(&find_extrema(*n, cli.cap)?);
            if cli.format == Format::Json {
                print_json(out, &v.to_json())?;
            } else {
                verdict_line(out, v.pass, &format!("theorem1 n={n}: minimizers {}", codes_text(&v.min_class)))?;
                writeln!(out, "min Kf = {}", value(&v.min_kf, cli.approx)).map_err(io_err)?;
                if !v.pass {
                    writeln!(out, "witness: {}", codes_text(&v.witnesses)).map_err(io_err)?;
                }
            }
            Ok(v.pass)
        }
        Check::Conjecture { n } => {
            if *n < 3 {
                return Err(Error::InvalidParameter("the extremal question needs n >= 3".into()));
            }
            let v = verify_conjecture_table(&find_extrema(*n, cli.cap)?)?;
            if cli.format == Format::Json {
                print_json(out, &v.to_json())?;
            } else {
                verdict_line(out, v.pass, &format!("conjecture n={n}"))?;
                writeln!(out, "min class {} Kf = {}", codes_text(&v.min_class), value(&v.min_kf, cli.approx))
                    .map_err(io_err)?;
                writeln!(out, "max class {} Kf = {}", codes_text(&v.max_class), value(&v.max_kf, cli.approx))
                    .map_err(io_err)?;
                if !v.pass {
                    writeln!(
                        out,
                        "witness: expected min {} and max {}",
                        codes_text(&v.expected_min_class),
                        codes_text(&v.expected_max_class)
                    )
                    .map_err(io_err)?;
                }
            }
            Ok(v.pass)
        }
        Check::Hexagon { r } => {
            let r: Rational = r.parse()?;
            let rep = weighted_hexagon_check(&r)?;
            if cli.format == Format::Json {
                print_json(out, &rep.to_json())?;
            } else {
                verdict_line(out, rep.pass(), &format!("hexagon r={r}"))?;
                writeln!(out, "difference = {}", value(&rep.difference, cli.approx)).map_err(io_err)?;
                writeln!(out, "closed form = {}", value(&rep.closed_form, cli.approx)).map_err(io_err)?;
            }
            Ok(rep.pass())
        }
        Check::KinkFlip { n } => {
            let reports = kink_flip_sweep(*n, cli.cap)?;
            let entries = reports
                .iter()
                .map(|r| (format!("code {} square {}", r.code.compact(), r.square), r.pass(), r.to_json()))
                .collect();
            report_all(cli, out, "kink-flip", entries)
        }
    }
}
