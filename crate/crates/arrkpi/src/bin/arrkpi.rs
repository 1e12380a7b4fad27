//! Command-line front end: build arrangements, run verification suites, and
//! export DOT/JSON artifacts.
//!
//! Exit codes: `0` — success with no violations; `1` — a verification suite
//! found violations (the JSON report carries the counterexamples); `2` —
//! usage errors, unreadable input, or parameters beyond the supported caps
//! (rank ≤ 4 for geometric suites, rank ≤ 3 and radius ≤ 8 for braid-ball
//! suites).
//!
//! JSON reports go to stdout (or `--out`); the human-readable summary goes
//! to the other stream, so identical configurations produce byte-identical
//! machine output. Set `ARRKPI_LOG=info` or `ARRKPI_LOG=debug` for progress
//! lines on stderr.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::OnceLock;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use arrkpi::arrangement::{enumerate_fans, Arrangement, FanComplex};
use arrkpi::artinball::{deligne_ball, run_ball_suite, Diagram, DEFAULT_MARGIN};
use arrkpi::coxmodel::{
    an_sphere, bn_complex, dn_subdivision, positive_part, s_le, u_le, TypedComplex,
};
use arrkpi::exactgeom::{
    rat, signs_to_string, solve_constraints, LinCon, Rational, Rel, Sign,
};
use arrkpi::families::{
    family_h, family_k, reflection_arrangement, verify_admissible, BlockKind,
};
use arrkpi::posetlab::{
    cube_space, poset_from_s_order, poset_from_u_order, FinitePoset, OrthoschemeSpace, Point,
};
use arrkpi::report::{CheckReport, RunReport};
use arrkpi::salvetti::salvetti_of;

/// Largest ambient rank accepted by the geometric commands.
const GEOMETRIC_RANK_CAP: usize = 4;
/// Largest diagram rank accepted by the braid-ball suite.
const ARTIN_RANK_CAP: usize = 3;
/// Largest ball radius accepted by the braid-ball suite.
const ARTIN_RADIUS_CAP: i64 = 8;
/// Number of random point pairs sampled by the orthoscheme suite.
const ORTHOSCHEME_PAIRS: usize = 50;

#[derive(Parser)]
#[command(
    name = "arrkpi",
    version,
    about = "Exact fans, Salvetti complexes, cube-model spheres, orthoscheme metrics, and braid-ball experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the fans of an arrangement and print a JSON listing.
    Fans(FansArgs),
    /// Run a verification suite; exit 0 iff it finds no violations.
    Verify(VerifyArgs),
    /// Export a DOT or JSON artifact of one of the supported complexes.
    Export(ExportArgs),
}

#[derive(Args)]
struct FansArgs {
    /// Compact family spec: "B:n=2", "D:n=3", "A:n=2", "H:k=1,n=2",
    /// "K:k=1,n=2,box=2".
    #[arg(long)]
    family: Option<String>,
    /// Arrangement JSON file ({dim, hyperplanes: [[normal…, offset]…], region}).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Write the listing here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    /// Classify the local arrangement at every vertex of a family member.
    Admissible,
    /// Order and flag properties of the cube-model spheres at one rank.
    Coxeter,
    /// Bowtie/flag/lattice analysis of a poset loaded from JSON.
    Poset,
    /// Cell counts, Euler characteristic, and retractions of Salvetti complexes.
    Salvetti,
    /// Sampled string metric vs. exact ambient ℓ∞ distance on cube complexes.
    Orthoscheme,
    /// Order and cycle audits inside braid-group coset-complex balls.
    Artin,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run.
    suite: SuiteName,
    /// Compact positional form of a family spec, e.g. `K 1 2` (kind k n)
    /// or `B 2` (kind n).
    #[arg(value_name = "FAMILY_ARGS", num_args = 0..)]
    rest: Vec<String>,
    /// Compact family spec (see `fans --help`).
    #[arg(long)]
    family: Option<String>,
    /// Input file: arrangement JSON, or poset JSON for the poset suite.
    #[arg(long, visible_alias = "poset")]
    file: Option<PathBuf>,
    /// Rank / ambient dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Family scale parameter.
    #[arg(long)]
    k: Option<i64>,
    /// Ball radius for the artin suite.
    #[arg(long = "L")]
    radius: Option<i64>,
    /// Sampling refinement level for the orthoscheme suite.
    #[arg(long)]
    level: Option<u32>,
    /// Numeric tolerance for the orthoscheme suite.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Depth required of verdict-carrying vertices in the artin suite.
    #[arg(long)]
    margin: Option<i64>,
    /// RNG seed for randomized suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Shrink the validated region to [-W, W]^n (admissible suite).
    #[arg(long, value_name = "W")]
    window: Option<i64>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    /// Hasse diagram of the cube-model s-order at rank n (DOT).
    Hasse,
    /// 1-skeleton of the Salvetti complex of a family member (DOT).
    Salvetti,
    /// Coset-complex ball of the braid group A(n) at radius L (DOT or JSON).
    Ball,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
}

#[derive(Args)]
struct ExportArgs {
    /// What to export.
    kind: ExportKind,
    /// Rank (hasse, ball).
    #[arg(long)]
    n: Option<usize>,
    /// Ball radius (ball).
    #[arg(long = "L")]
    radius: Option<i64>,
    /// Compact family spec (salvetti).
    #[arg(long)]
    family: Option<String>,
    /// Arrangement JSON file (salvetti).
    #[arg(long)]
    file: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
    format: ExportFormat,
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    WriteOut {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write to stdout: {0}")]
    Stdout(std::io::Error),
}

/// Prints to stdout, treating a closed pipe (e.g. piping into `head`) as
/// success instead of a panic or an error.
fn print_stdout(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::Stdout(e)),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn verbosity() -> u8 {
    static LEVEL: OnceLock<u8> = OnceLock::new();
    *LEVEL.get_or_init(|| match std::env::var("ARRKPI_LOG").as_deref() {
        Ok("debug") | Ok("2") => 2,
        Ok("") | Ok("0") | Ok("off") | Ok("quiet") | Err(_) => 0,
        Ok(_) => 1,
    })
}

fn log_info(msg: &str) {
    if verbosity() >= 1 {
        eprintln!("[arrkpi] {msg}");
    }
}

fn log_debug(msg: &str) {
    if verbosity() >= 2 {
        eprintln!("[arrkpi] {msg}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Fans(args) => cmd_fans(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Export(args) => cmd_export(args),
    }
}

// ---------------------------------------------------------------------------
// Arrangement sources
// ---------------------------------------------------------------------------

/// Parses a compact family spec like "B:n=2" or "K:k=1,n=2,box=2" into a
/// canonical name and the arrangement it denotes.
fn parse_family(spec: &str) -> Result<(String, Arrangement), CliError> {
    let (kind, tail) = match spec.split_once(':') {
        Some((k, t)) => (k, Some(t)),
        None => (spec, None),
    };
    let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
    if let Some(tail) = tail {
        for part in tail.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| usage(format!("malformed family parameter {part:?}")))?;
            kv.insert(key.trim(), value.trim());
        }
    }
    let get_num = |kv: &BTreeMap<&str, &str>, key: &str| -> Result<Option<i64>, CliError> {
        kv.get(key)
            .map(|v| {
                v.parse::<i64>()
                    .map_err(|_| usage(format!("family parameter {key}={v} is not an integer")))
            })
            .transpose()
    };
    let n = get_num(&kv, "n")?;
    let k = get_num(&kv, "k")?;
    let boxw = get_num(&kv, "box")?;
    for key in kv.keys() {
        if !matches!(*key, "n" | "k" | "box") {
            return Err(usage(format!("unknown family parameter {key:?}")));
        }
    }
    let need_n = || n.ok_or_else(|| usage(format!("family {kind:?} needs n=<rank>")));
    let rank_of = |v: i64| -> Result<usize, CliError> {
        usize::try_from(v).map_err(|_| usage(format!("rank must be non-negative, got {v}")))
    };
    let kind_upper = kind.to_ascii_uppercase();
    let (name, arr) = match kind_upper.as_str() {
        "A" | "B" | "D" => {
            let block = match kind_upper.as_str() {
                "A" => BlockKind::SkewedA,
                "B" => BlockKind::B,
                _ => BlockKind::D,
            };
            if k.is_some() || boxw.is_some() {
                return Err(usage(format!("family {kind_upper} only takes n=<rank>")));
            }
            let rank = rank_of(need_n()?)?;
            check_geometric_rank(rank)?;
            let arr = reflection_arrangement(block, rank)
                .map_err(|e| usage(format!("family {kind_upper}:n={rank}: {e}")))?;
            (format!("{kind_upper}:n={rank}"), arr)
        }
        "H" => {
            let rank = rank_of(need_n()?)?;
            let k = k.unwrap_or(1);
            check_geometric_rank(rank)?;
            if k < 1 || rank < 2 {
                return Err(usage("family H needs k ≥ 1 and n ≥ 2"));
            }
            let arr = family_h(k, rank).map_err(|e| usage(e.to_string()))?;
            (format!("H:k={k},n={rank}"), arr)
        }
        "K" => {
            let rank = rank_of(need_n()?)?;
            let k = k.unwrap_or(1);
            check_geometric_rank(rank)?;
            if k < 1 || rank < 2 {
                return Err(usage("family K needs k ≥ 1 and n ≥ 2"));
            }
            let half = boxw.unwrap_or(2 * k);
            if half < 1 {
                return Err(usage("family K needs box ≥ 1"));
            }
            let arr = family_k(k, rank, half).map_err(|e| usage(e.to_string()))?;
            (format!("K:k={k},n={rank},box={half}"), arr)
        }
        other => {
            return Err(usage(format!(
                "unknown family kind {other:?}; expected A, B, D, H, or K"
            )))
        }
    };
    Ok((name, arr))
}

fn check_geometric_rank(n: usize) -> Result<(), CliError> {
    if n > GEOMETRIC_RANK_CAP {
        return Err(usage(format!(
            "rank {n} exceeds the geometric cap of {GEOMETRIC_RANK_CAP}"
        )));
    }
    Ok(())
}

/// Turns the positional form (`K 1 2` or `B 2`) into a compact spec string.
fn positional_family(rest: &[String]) -> Result<String, CliError> {
    match rest {
        [kind, n] => Ok(format!("{kind}:n={n}")),
        [kind, k, n] => Ok(format!("{kind}:k={k},n={n}")),
        _ => Err(usage(
            "positional family form is KIND N (reflection) or KIND K N (level family)",
        )),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

/// Resolves the arrangement named by `--file`, `--family`, or the positional
/// family form, in that order of precedence.
fn load_arrangement(
    family: Option<&str>,
    file: Option<&Path>,
    rest: &[String],
) -> Result<(String, Arrangement), CliError> {
    if let Some(path) = file {
        let text = read_file(path)?;
        let arr = Arrangement::from_json_str(&text).map_err(|e| usage(e.to_string()))?;
        check_geometric_rank(arr.dim())?;
        return Ok((format!("file:{}", path.display()), arr));
    }
    if let Some(spec) = family {
        return parse_family(spec);
    }
    if !rest.is_empty() {
        return parse_family(&positional_family(rest)?);
    }
    Err(usage(
        "no arrangement given; pass --family, --file, or a positional family",
    ))
}

// ---------------------------------------------------------------------------
// Output plumbing
// ---------------------------------------------------------------------------

fn write_artifact(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::WriteOut {
            path: path.to_path_buf(),
            source,
        }),
        None => print_stdout(text),
    }
}

/// Prints the machine-readable report and the human summary on separate
/// streams: JSON to stdout and summary to stderr, or JSON to `--out` and
/// summary to stdout.
fn emit_report(run: &RunReport, out: Option<&Path>) -> Result<bool, CliError> {
    let json = run.to_json_string();
    match out {
        Some(path) => {
            fs::write(path, format!("{json}\n")).map_err(|source| CliError::WriteOut {
                path: path.to_path_buf(),
                source,
            })?;
            print_stdout(run.summary().trim_end())?;
        }
        None => {
            print_stdout(&json)?;
            eprint!("{}", run.summary());
        }
    }
    Ok(run.passed())
}

// ---------------------------------------------------------------------------
// fans
// ---------------------------------------------------------------------------

fn cmd_fans(args: FansArgs) -> Result<bool, CliError> {
    let (name, arr) = load_arrangement(args.family.as_deref(), args.file.as_deref(), &[])?;
    log_info(&format!(
        "{name}: {} hyperplanes in dimension {}",
        arr.hyperplanes().len(),
        arr.dim()
    ));
    let fc = enumerate_fans(&arr).map_err(|e| usage(e.to_string()))?;
    let complete = bounded_fans_clear_of_boundary(&fc, None);
    if !complete {
        log_info("note: a bounded fan touches the region boundary; cells near the rim may be truncated");
    }
    let listing = json!({
        "source": name,
        "dim": arr.dim(),
        "hyperplane_count": arr.hyperplanes().len(),
        "hyperplanes": arr.hyperplanes().iter().map(|h| h.to_row()).collect::<Vec<_>>(),
        "region": arr.region(),
        "fan_count": fc.len(),
        "chamber_count": fc.chambers().len(),
        "bounded_fans_complete": complete,
        "fans": fc.fans().iter().map(|f| json!({
            "covector": signs_to_string(&f.covector),
            "dim": f.dim,
            "bounded": f.bounded,
            "witness": f.witness.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    let text = serde_json::to_string_pretty(&listing).expect("listing serializes");
    write_artifact(&text, args.out.as_deref())?;
    Ok(true)
}

/// Whether the closure of every relevant bounded fan stays strictly inside
/// the open region box. A bounded fan whose closure touches the boundary
/// may have been truncated when an infinite arrangement was restricted to
/// the box. With `window`, only fans whose closure meets the closed window
/// are examined — the certificate that the box padded a smaller study
/// region adequately; without it, every bounded fan counts.
fn bounded_fans_clear_of_boundary(fc: &FanComplex, window: Option<&[(i64, i64)]>) -> bool {
    let arr = fc.arrangement();
    let dim = arr.dim();
    let hs = arr.hyperplanes();
    let axis = |j: usize, sign: i64| -> Vec<Rational> {
        let mut coeffs = vec![Rational::zero(); dim];
        coeffs[j] = rat(sign);
        coeffs
    };
    for fan in fc.fans().iter().filter(|f| f.bounded) {
        // Closed-fan constraints: σ_i(n_i·x − c_i) ≥ 0, with equality on zeros.
        let mut base: Vec<LinCon> = Vec::with_capacity(hs.len());
        for (h, &s) in hs.iter().zip(&fan.covector) {
            let flip = s == Sign::Neg;
            base.push(LinCon {
                coeffs: h
                    .normal()
                    .iter()
                    .map(|&a| if flip { rat(-a) } else { rat(a) })
                    .collect(),
                constant: if flip { rat(h.offset()) } else { rat(-h.offset()) },
                rel: if s == Sign::Zero { Rel::Eq } else { Rel::Ge },
            });
        }
        if let Some(win) = window {
            let mut meets = base.clone();
            for (j, &(lo, hi)) in win.iter().enumerate() {
                meets.push(LinCon {
                    coeffs: axis(j, 1),
                    constant: rat(-lo),
                    rel: Rel::Ge,
                });
                meets.push(LinCon {
                    coeffs: axis(j, -1),
                    constant: rat(hi),
                    rel: Rel::Ge,
                });
            }
            if solve_constraints(meets, dim).is_none() {
                continue;
            }
        }
        for (j, &(lo, hi)) in arr.region().iter().enumerate() {
            for bound in [lo, hi] {
                let mut cons = base.clone();
                cons.push(LinCon {
                    coeffs: axis(j, 1),
                    constant: rat(-bound),
                    rel: Rel::Eq,
                });
                if solve_constraints(cons, dim).is_some() {
                    return false;
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<bool, CliError> {
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        // Only the first initialization wins; later calls are a no-op.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    let report = match args.suite {
        SuiteName::Admissible => suite_admissible(&args)?,
        SuiteName::Coxeter => suite_coxeter(&args)?,
        SuiteName::Poset => suite_poset(&args)?,
        SuiteName::Salvetti => suite_salvetti(&args)?,
        SuiteName::Orthoscheme => suite_orthoscheme(&args)?,
        SuiteName::Artin => suite_artin(&args)?,
    };
    emit_report(&report, args.out.as_deref())
}

fn suite_admissible(args: &VerifyArgs) -> Result<RunReport, CliError> {
    let (name, arr) =
        load_arrangement(args.family.as_deref(), args.file.as_deref(), &args.rest)?;
    let window: Option<Vec<(i64, i64)>> = match args.window {
        None => None,
        Some(w) if w >= 1 => Some(vec![(-w, w); arr.dim()]),
        Some(w) => return Err(usage(format!("--window must be ≥ 1, got {w}"))),
    };
    let mut run = RunReport::new("admissible");
    run.set_parameter("arrangement", &name);
    if let Some(w) = args.window {
        run.set_parameter("window", w);
    }
    log_info(&format!("classifying vertices of {name}"));

    // With a study window the suite also certifies the box is large enough:
    // no bounded fan that reaches the window may touch the box boundary.
    if let Some(win) = &window {
        let fc = enumerate_fans(&arr).map_err(|e| usage(e.to_string()))?;
        let mut boundary = CheckReport::new("bounded_fans_inside_box");
        if bounded_fans_clear_of_boundary(&fc, Some(win)) {
            boundary.record(None);
        } else {
            boundary.violation(
                None,
                json!({ "kind": "truncated_box", "arrangement": name }),
            );
        }
        run.push(boundary);
    }

    let admissible = verify_admissible(&arr, window.as_deref());
    let mut vertices = CheckReport::new("admissible_vertices");
    for entry in &admissible.vertices {
        if entry.factors.is_some() {
            vertices.record(None);
        } else {
            vertices.violation(
                None,
                json!({ "kind": "inadmissible_vertex", "vertex": entry.vertex }),
            );
        }
    }
    run.set_parameter("vertex_count", admissible.vertex_count);
    run.push(vertices);
    Ok(run)
}

/// Records reflexivity, antisymmetry, and transitivity of `le` over a
/// labeled vertex set.
fn partial_order_report(
    name: &str,
    labels: &[String],
    le: impl Fn(usize, usize) -> bool,
) -> CheckReport {
    let n = labels.len();
    let mut report = CheckReport::new(name);
    let wit = |ids: &[usize]| {
        json!({
            "kind": "order_axiom",
            "vertices": ids.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
        })
    };
    for i in 0..n {
        if le(i, i) {
            report.record(None);
        } else {
            report.violation(None, wit(&[i]));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if le(i, j) && le(j, i) {
                report.violation(None, wit(&[i, j]));
            } else {
                report.record(None);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || !le(i, j) {
                continue;
            }
            for k in 0..n {
                if k == j || k == i || !le(j, k) {
                    continue;
                }
                if le(i, k) {
                    report.record(None);
                } else {
                    report.violation(None, wit(&[i, j, k]));
                }
            }
        }
    }
    report
}

fn vertex_labels(cx: &TypedComplex) -> Vec<String> {
    cx.vertices().iter().map(|v| v.to_string()).collect()
}

/// Boolean property check: one recorded check that either passes or carries
/// the supplied witness.
fn property_check(name: &str, ok: bool, witness_json: serde_json::Value) -> CheckReport {
    let mut report = CheckReport::new(name);
    if ok {
        report.record(None);
    } else {
        report.violation(None, witness_json);
    }
    report
}

fn suite_coxeter(args: &VerifyArgs) -> Result<RunReport, CliError> {
    let n = args.n.unwrap_or(3);
    if n < 1 {
        return Err(usage("--n must be at least 1"));
    }
    check_geometric_rank(n)?;
    let mut run = RunReport::new("coxeter");
    run.set_parameter("n", n);

    log_info(&format!("cube model at rank {n}"));
    let cube = bn_complex(n);
    let labels = vertex_labels(&cube);
    run.push(partial_order_report("s_order_partial_order", &labels, |i, j| {
        s_le(&cube.vertices()[i], &cube.vertices()[j])
    }));

    let (real, _) = an_sphere(n).map_err(|e| usage(e.to_string()))?;
    let real_labels = vertex_labels(&real);
    run.push(partial_order_report("u_order_partial_order", &real_labels, |i, j| {
        u_le(&real.vertices()[i], &real.vertices()[j]).expect("real vertices")
    }));

    let cube_poset = poset_from_s_order(&cube, false);
    let bow = cube_poset.bowtie_witness();
    run.push(property_check(
        "subdivided_bowtie_free",
        bow.is_none(),
        json!({ "kind": "bowtie", "witness": bow.map(|w| w.map(|i| cube_poset.label(i).to_string())) }),
    ));
    let flag = cube_poset.upward_flag_witness();
    run.push(property_check(
        "subdivided_upward_flag",
        flag.is_none(),
        json!({ "kind": "upflag", "witness": flag.map(|w| w.map(|i| cube_poset.label(i).to_string())) }),
    ));

    let pos = positive_part(n);
    let pos_poset = poset_from_s_order(&pos, false);
    let bow = pos_poset.bowtie_witness();
    run.push(property_check(
        "positive_part_bowtie_free",
        bow.is_none(),
        json!({ "kind": "bowtie", "witness": bow.map(|w| w.map(|i| pos_poset.label(i).to_string())) }),
    ));
    let flag = pos_poset.upward_flag_witness();
    run.push(property_check(
        "positive_part_upward_flag",
        flag.is_none(),
        json!({ "kind": "upflag", "witness": flag.map(|w| w.map(|i| pos_poset.label(i).to_string())) }),
    ));

    // Rank-two contrast: the unsubdivided hexagon order is bowtie-free yet
    // not upward flag — the subdivision is what restores the flag property.
    let (hexagon, _) = an_sphere(2).map_err(|e| usage(e.to_string()))?;
    let hex_poset = poset_from_u_order(&hexagon, false);
    let hex_flag = hex_poset.upward_flag_witness();
    if let Some(w) = hex_flag {
        let labels: Vec<String> = w.iter().map(|&i| hex_poset.label(i).to_string()).collect();
        run.set_parameter("hexagon_flag_witness", labels.join(" "));
    }
    run.push(property_check(
        "hexagon_contrast",
        hex_poset.is_bowtie_free() && hex_flag.is_some(),
        json!({ "kind": "contrast_failed" }),
    ));

    if n >= 3 {
        log_debug("checking the fork-diagram subdivision isomorphism");
        let iso = dn_subdivision(n);
        run.push(property_check(
            "fork_sphere_subdivision_iso",
            iso.is_ok(),
            json!({ "kind": "iso_failed", "message": iso.err().map(|e| e.to_string()) }),
        ));
    }
    Ok(run)
}

fn suite_poset(args: &VerifyArgs) -> Result<RunReport, CliError> {
    let path = args
        .file
        .as_deref()
        .ok_or_else(|| usage("the poset suite needs --file (alias --poset) <poset.json>"))?;
    let text = read_file(path)?;
    let poset = FinitePoset::from_json_str(&text).map_err(|e| usage(e.to_string()))?;
    let mut run = RunReport::new("poset");
    run.set_parameter("file", path.display());
    run.set_parameter("elements", poset.len());
    run.set_parameter("bounded", poset.is_bounded());
    run.set_parameter("graded", poset.is_graded());

    let bow = poset.bowtie_witness();
    run.push(property_check(
        "bowtie_free",
        bow.is_none(),
        json!({ "kind": "bowtie", "witness": bow.map(|w| w.map(|i| poset.label(i).to_string())) }),
    ));
    let up = poset.upward_flag_witness();
    run.push(property_check(
        "upward_flag",
        up.is_none(),
        json!({ "kind": "upflag", "witness": up.map(|w| w.map(|i| poset.label(i).to_string())) }),
    ));
    let down = poset.downward_flag_witness();
    run.push(property_check(
        "downward_flag",
        down.is_none(),
        json!({ "kind": "downflag", "witness": down.map(|w| w.map(|i| poset.label(i).to_string())) }),
    ));

    // For bounded graded posets, being a lattice must coincide with being
    // bowtie-free; on other posets the check is vacuous.
    let mut equiv = CheckReport::new("lattice_iff_bowtie_free");
    if poset.is_bounded() && poset.is_graded() {
        let lattice = poset.is_lattice().map_err(|e| usage(e.to_string()))?;
        if lattice == bow.is_none() {
            equiv.record(None);
        } else {
            equiv.violation(
                None,
                json!({ "kind": "equivalence", "lattice": lattice, "bowtie_free": bow.is_none() }),
            );
        }
    }
    run.push(equiv);
    Ok(run)
}

fn suite_salvetti(args: &VerifyArgs) -> Result<RunReport, CliError> {
    let sources: Vec<(String, Arrangement)> = if args.family.is_some()
        || args.file.is_some()
        || !args.rest.is_empty()
    {
        vec![load_arrangement(
            args.family.as_deref(),
            args.file.as_deref(),
            &args.rest,
        )?]
    } else {
        ["A:n=2", "A:n=3", "B:n=2", "D:n=3"]
            .iter()
            .map(|spec| parse_family(spec))
            .collect::<Result<_, _>>()?
    };
    let mut run = RunReport::new("salvetti");
    run.set_parameter(
        "arrangements",
        sources
            .iter()
            .map(|(name, _)| name.as_str())
            .collect::<Vec<_>>()
            .join(" "),
    );

    let mut counts = CheckReport::new("cell_count_identity");
    let mut euler = CheckReport::new("euler_characteristic_zero");
    let mut retraction = CheckReport::new("retraction_property");
    let mut doubling = CheckReport::new("edge_doubling");
    for (name, arr) in &sources {
        log_info(&format!("salvetti complex of {name}"));
        let sc = salvetti_of(arr).map_err(|e| usage(e.to_string()))?;
        let fc = sc.fan_complex();
        let mut expected = vec![0usize; arr.dim() + 1];
        for f in 0..fc.len() {
            expected[arr.dim() - fc.fan(f).dim] += fc.chamber_set(f).len();
        }
        let got = sc.cell_counts();
        for (k, &want) in expected.iter().enumerate() {
            if got.get(k).copied().unwrap_or(0) == want {
                counts.record(None);
            } else {
                counts.violation(
                    None,
                    json!({ "kind": "cell_count", "arrangement": name, "dim": k,
                            "expected": want, "got": got.get(k).copied().unwrap_or(0) }),
                );
            }
        }
        if arr.is_central() && arr.is_essential() {
            if sc.euler_characteristic() == 0 {
                euler.record(None);
            } else {
                euler.violation(
                    None,
                    json!({ "kind": "euler", "arrangement": name, "chi": sc.euler_characteristic() }),
                );
            }
        }
        match sc.check_retraction_property() {
            Ok(()) => retraction.record(None),
            Err(msg) => retraction.violation(
                None,
                json!({ "kind": "retraction", "arrangement": name, "message": msg }),
            ),
        }
        match sc.check_edge_doubling() {
            Ok(()) => doubling.record(None),
            Err(msg) => doubling.violation(
                None,
                json!({ "kind": "edge_doubling", "arrangement": name, "message": msg }),
            ),
        }
    }
    run.push(counts);
    run.push(euler);
    run.push(retraction);
    run.push(doubling);
    Ok(run)
}

/// A random point of the space: a random maximal simplex with random
/// barycentric weights of denominator 4, so the points sit on the sampling
/// grid of every level ≥ 2 and the sampled path metric can realize exact
/// geodesics through them.
fn random_point(space: &OrthoschemeSpace, rng: &mut ChaCha8Rng) -> Point {
    let chain = rng.gen_range(0..space.chains().len());
    let len = space.chains()[chain].len();
    let mut raw = vec![0i64; len];
    for _ in 0..4 {
        raw[rng.gen_range(0..len)] += 1;
    }
    let bary: Vec<Rational> = raw
        .iter()
        .map(|&a| Rational::new(a.into(), 4.into()))
        .collect();
    space
        .point(chain, &bary)
        .expect("random barycentric coordinates are valid")
}

fn suite_orthoscheme(args: &VerifyArgs) -> Result<RunReport, CliError> {
    let ranks: Vec<usize> = match args.n {
        Some(n) => {
            if n < 1 {
                return Err(usage("--n must be at least 1"));
            }
            check_geometric_rank(n)?;
            vec![n]
        }
        None => vec![2, 3],
    };
    let level = args.level.unwrap_or(4);
    let tolerance = args.tolerance.unwrap_or(1e-6);
    if tolerance.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(usage("--tolerance must be positive"));
    }
    let tol = Rational::from_float(tolerance)
        .ok_or_else(|| usage("--tolerance must be finite"))?;
    let mut run = RunReport::new("orthoscheme");
    run.set_parameter(
        "n",
        ranks
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" "),
    );
    run.set_parameter("level", level);
    run.set_parameter("tolerance", tolerance);
    run.set_parameter("seed", args.seed);
    run.set_parameter("pairs", ORTHOSCHEME_PAIRS);

    let mut faces = CheckReport::new("shared_face_consistency");
    let mut isometry = CheckReport::new("cube_isometry");
    for &n in &ranks {
        log_info(&format!("cube space at rank {n}, level {level}"));
        let space = cube_space(n);
        match space.check_shared_face_consistency() {
            Ok(()) => faces.record(None),
            Err(msg) => faces.violation(None, json!({ "kind": "face", "n": n, "message": msg })),
        }
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for _ in 0..ORTHOSCHEME_PAIRS {
            let a = random_point(&space, &mut rng);
            let b = random_point(&space, &mut rng);
            let sampled = space.string_distance(&a, &b, level);
            let ambient = space
                .ambient_linf(&a, &b)
                .expect("cube space has ambient data");
            let off = (&sampled - &ambient).abs();
            if off <= tol {
                isometry.record(None);
            } else {
                isometry.violation(
                    None,
                    json!({
                        "kind": "isometry", "n": n,
                        "sampled": sampled.to_string(),
                        "ambient": ambient.to_string(),
                    }),
                );
            }
        }
    }
    run.push(faces);
    run.push(isometry);
    Ok(run)
}

fn suite_artin(args: &VerifyArgs) -> Result<RunReport, CliError> {
    let n = args.n.unwrap_or(2);
    let radius = args.radius.unwrap_or(3);
    let margin = args.margin.unwrap_or(DEFAULT_MARGIN);
    if n > ARTIN_RANK_CAP {
        return Err(usage(format!(
            "rank {n} exceeds the braid-ball cap of {ARTIN_RANK_CAP}"
        )));
    }
    if !(1..=ARTIN_RADIUS_CAP).contains(&radius) {
        return Err(usage(format!(
            "radius must be in 1..={ARTIN_RADIUS_CAP}, got {radius}"
        )));
    }
    log_info(&format!(
        "ball of {} at radius {radius}, margin {margin}",
        Diagram::A(n)
    ));
    run_ball_suite(n, radius, margin).map_err(|e| usage(e.to_string()))
}

// ---------------------------------------------------------------------------
// export
// ---------------------------------------------------------------------------

fn cmd_export(args: ExportArgs) -> Result<bool, CliError> {
    let text = match args.kind {
        ExportKind::Hasse => {
            let n = args.n.unwrap_or(2);
            if n < 1 {
                return Err(usage("--n must be at least 1"));
            }
            check_geometric_rank(n)?;
            let cx = bn_complex(n);
            match args.format {
                ExportFormat::Dot => cx.to_dot_s_hasse(),
                ExportFormat::Json => {
                    serde_json::to_string_pretty(&cx.to_json_tables()).expect("tables serialize")
                }
            }
        }
        ExportKind::Salvetti => {
            let (name, arr) =
                load_arrangement(args.family.as_deref(), args.file.as_deref(), &[])?;
            log_info(&format!("salvetti complex of {name}"));
            let sc = salvetti_of(&arr).map_err(|e| usage(e.to_string()))?;
            match args.format {
                ExportFormat::Dot => sc.to_dot_one_skeleton(),
                ExportFormat::Json => {
                    serde_json::to_string_pretty(&sc.to_json_cells()).expect("cells serialize")
                }
            }
        }
        ExportKind::Ball => {
            let n = args.n.unwrap_or(2);
            let radius = args.radius.unwrap_or(2);
            if n > ARTIN_RANK_CAP {
                return Err(usage(format!(
                    "rank {n} exceeds the braid-ball cap of {ARTIN_RANK_CAP}"
                )));
            }
            if !(1..=ARTIN_RADIUS_CAP).contains(&radius) {
                return Err(usage(format!(
                    "radius must be in 1..={ARTIN_RADIUS_CAP}, got {radius}"
                )));
            }
            let ball = deligne_ball(n, radius).map_err(|e| usage(e.to_string()))?;
            log_info(&format!(
                "ball has {} elements and {} vertices",
                ball.ball().len(),
                ball.len()
            ));
            match args.format {
                ExportFormat::Dot => ball.to_dot(),
                ExportFormat::Json => {
                    serde_json::to_string_pretty(&ball.summary_json()).expect("summary serializes")
                }
            }
        }
    };
    write_artifact(&text, args.out.as_deref())?;
    Ok(true)
}
