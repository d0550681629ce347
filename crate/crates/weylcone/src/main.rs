//! The `weylcone` command line: enumerate the defining side-length
//! inequality system for polygons in a rank-2 building, check membership of
//! side-length vectors, certify that every defining row is irredundant, run
//! independent sampling oracles against the system, and straighten or lay
//! out billiard paths.
//!
//! Exit codes: 0 on success (member / all rows irredundant / no violations /
//! billiard identities verified), 1 on a semantic negative (point outside,
//! redundant row found, sample violations, non-billiard path), 2 on invalid
//! configuration or unreadable input.
//!
//! The environment variable `WEYLCONE_SIGN_BITS` sets the starting interval
//! precision for exact sign determination; it affects performance only,
//! never results.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use weylcone::jsonio::{
    element_to_json, open_input_from_json, path_from_json, point_from_json, scalar_to_json,
    system_from_json, system_to_json, vec2_to_json, CheckOutput, FoldFailure, FoldOutput,
    IrredundantOutput, IrredundantRow, JsonAffine, JsonOpenInput, JsonPath, JsonPiece, JsonPoint,
    JsonRowValue, JsonSystem, OpenOutput, SampleOutput, SampleViolation,
};
use weylcone::oracles::{
    apartment_sample, check_triples, hermitian_sample, spectrum_to_delta, SpectralTriple,
};
use weylcone_core::cone::{ConeSystem, Membership, RowVerdict};
use weylcone_core::coxeter::{Apartment, WeylElement};
use weylcone_core::exactreal::{CycloReal, FieldContext};
use weylcone_core::functionals::{
    enumerate_tuples_direct, enumerate_tuples_filtered, tuple_parity, MAX_WALL_ORDER,
};
use weylcone_core::polygonlab::{
    fold_onto_chamber, open_polygon, straighten, AffineIsometry, PolygonError,
};

const SIGN_BITS_ENV: &str = "WEYLCONE_SIGN_BITS";

#[derive(Parser)]
#[command(
    name = "weylcone",
    version,
    about = "Exact side-length inequality systems for polygons in rank-2 buildings"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum OracleKind {
    /// Random traceless Hermitian pairs, float spectra (m = 3, n = 3 only).
    Hermitian,
    /// Random closed polygons with rational vertices, exact membership.
    Apartment,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the defining inequality system for n-gon side lengths.
    Inequalities {
        /// Dihedral order parameter (angle pi/m).
        #[arg(long)]
        m: u32,
        /// Number of polygon sides.
        #[arg(long)]
        n: usize,
        /// Enumerate by filtering all direction tuples through the
        /// wall-partition test (slower; same output).
        #[arg(long, conflicts_with = "full")]
        weak: bool,
        /// Enumerate directly from position pairs (default; same output).
        #[arg(long)]
        full: bool,
    },
    /// Classify a side-length vector against a system: interior, boundary
    /// (all tight rows listed), or outside (all violated rows listed).
    Check {
        /// System file produced by `inequalities --format json`.
        #[arg(long)]
        system: PathBuf,
        /// Point file: `{"m": .., "coords": [..]}` with 2n coordinates.
        #[arg(long)]
        point: PathBuf,
    },
    /// Certify that every row of the system is irredundant (or exhibit a
    /// conic combination for any redundant row).
    Irredundant {
        /// System file; alternative to --m/--n.
        #[arg(long, conflicts_with_all = ["m", "n"])]
        system: Option<PathBuf>,
        /// Dihedral order parameter for the canonical system.
        #[arg(long, requires = "n")]
        m: Option<u32>,
        /// Number of sides for the canonical system.
        #[arg(long, requires = "m")]
        n: Option<usize>,
    },
    /// Run a sampling oracle against the system and report violations.
    Sample {
        #[arg(long, value_enum)]
        oracle: OracleKind,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: usize,
        /// RNG seed (reported in the output header).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of samples to draw.
        #[arg(long)]
        count: usize,
        /// Violation threshold for the float-spectra oracle.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Also write the sampled spectra and side lengths as CSV
        /// (hermitian oracle only).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Straighten a billiard path: per-break isometries, holonomy, endpoint,
    /// and the folded image of the path in the closed chamber.
    Fold {
        /// Path file: `{"m": .., "apex": {..}, "points": [..]}`.
        #[arg(long)]
        path: PathBuf,
    },
    /// Lay side data down in the plane with the given transitions.
    Open {
        /// Input file: `{"m": .., "sides": [..], "transitions": [..]}`.
        #[arg(long)]
        path: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Inequalities { m, n, weak, full: _ } => {
            cmd_inequalities(m, n, weak, cli.format, &cli.out)
        }
        Command::Check { system, point } => cmd_check(&system, &point, cli.format, &cli.out),
        Command::Irredundant { system, m, n } => {
            cmd_irredundant(system.as_deref(), m, n, cli.format, &cli.out)
        }
        Command::Sample { oracle, m, n, seed, count, tolerance, csv } => {
            cmd_sample(oracle, m, n, seed, count, tolerance, csv.as_deref(), cli.format, &cli.out)
        }
        Command::Fold { path } => cmd_fold(&path, cli.format, &cli.out),
        Command::Open { path } => cmd_open(&path, cli.format, &cli.out),
    }
}

/// Build the model plane for order m, honoring the sign-precision override.
fn apartment_for(m: u32) -> Result<Apartment> {
    if m > MAX_WALL_ORDER {
        bail!("m = {m} exceeds the supported maximum {MAX_WALL_ORDER}");
    }
    let mut field = FieldContext::new(m).map_err(|e| anyhow!("invalid m = {m}: {e}"))?;
    if let Ok(text) = std::env::var(SIGN_BITS_ENV) {
        let bits: u32 = text
            .trim()
            .parse()
            .with_context(|| format!("{SIGN_BITS_ENV} must be a positive integer, got '{text}'"))?;
        field.set_sign_start_bits(bits);
    }
    Ok(Apartment::from_field(field))
}

fn check_sides(n: usize) -> Result<()> {
    if !(2..=12).contains(&n) {
        bail!("side count n = {n} out of the supported range 2..=12");
    }
    Ok(())
}

fn load_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn render_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn fmt_tuple(tuple: &[u32]) -> String {
    let inner: Vec<String> = tuple.iter().map(|d| d.to_string()).collect();
    format!("({})", inner.join(","))
}

/// Twelve significant digits plus the exact field element.
fn fmt_value(f: &FieldContext, x: &CycloReal) -> String {
    format!("{:.11e} (exact: {})", f.approx_f64(x), f.display(x))
}

fn fmt_index_list(list: &[usize]) -> String {
    let inner: Vec<String> = list.iter().map(|i| i.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

fn cmd_inequalities(
    m: u32,
    n: usize,
    weak: bool,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let ap = apartment_for(m)?;
    check_sides(n)?;
    if weak {
        let states = (2u128 * m as u128).checked_pow(n as u32);
        match states {
            Some(s) if s <= 100_000_000 => {}
            _ => bail!("the filtering route cannot enumerate (2m)^n = (2*{m})^{n} tuples"),
        }
    }
    let tuples = if weak {
        enumerate_tuples_filtered(ap.group(), n)
    } else {
        enumerate_tuples_direct(ap.group(), n)
    };
    // Canonical row order: even-parity tuples first, lexicographic within
    // each parity (matching ConeSystem::new).
    let mut ordered: Vec<Vec<u32>> = Vec::with_capacity(tuples.len());
    for parity in 0..2u32 {
        ordered.extend(tuples.iter().filter(|t| t[0] % 2 == parity).cloned());
    }
    let sys = ConeSystem::from_tuples(&ap, n, ordered);
    let body = match format {
        Format::Json => render_json(&system_to_json(&sys))?,
        Format::Text => {
            let f = sys.field();
            let even = sys
                .tuples()
                .iter()
                .filter(|t| tuple_parity(t) == Some(0))
                .count();
            let odd = sys.tuples().len() - even;
            let mut lines = vec![
                format!("inequality system: m={m} n={n}"),
                format!(
                    "rows: {} functional ({even} even, {odd} odd), {} coordinate",
                    sys.tuples().len(),
                    2 * n
                ),
            ];
            for (i, (tuple, row)) in sys.tuples().iter().zip(sys.functional_rows()).enumerate() {
                let parity = if tuple_parity(tuple) == Some(0) { "even" } else { "odd" };
                let coeffs: Vec<String> = row.iter().map(|c| fmt_value(f, c)).collect();
                lines.push(format!(
                    "row {i:3} tuple {} {parity}: {}",
                    fmt_tuple(tuple),
                    coeffs.join(", ")
                ));
            }
            lines.join("\n") + "\n"
        }
    };
    emit(out, &body)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(
    system: &Path,
    point: &Path,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let js: JsonSystem = load_json(system)?;
    let ap = apartment_for(js.m)?;
    let sys = system_from_json(&ap, &js)?;
    let jp: JsonPoint = load_json(point)?;
    let coords = point_from_json(sys.field(), &jp)?;
    if coords.len() != 2 * sys.n() {
        bail!("point has {} coordinates, the system needs {}", coords.len(), 2 * sys.n());
    }
    let f = sys.field();
    let values = sys.evaluate_all(&coords);
    let membership = sys.member(&coords);
    let (status, af, ac, vf, vc) = match &membership {
        Membership::Interior => ("interior", vec![], vec![], vec![], vec![]),
        Membership::Boundary { active_functionals, active_coordinates } => {
            ("boundary", active_functionals.clone(), active_coordinates.clone(), vec![], vec![])
        }
        Membership::Outside { violated_functionals, violated_coordinates } => {
            ("outside", vec![], vec![], violated_functionals.clone(), violated_coordinates.clone())
        }
    };
    let report = CheckOutput {
        m: sys.m(),
        n: sys.n(),
        status: String::from(status),
        active_functionals: af,
        active_coordinates: ac,
        violated_functionals: vf,
        violated_coordinates: vc,
        values: values
            .iter()
            .enumerate()
            .map(|(row, v)| JsonRowValue {
                row,
                tuple: sys.tuples()[row].clone(),
                value: scalar_to_json(f, v),
            })
            .collect(),
    };
    let body = match format {
        Format::Json => render_json(&report)?,
        Format::Text => {
            let mut lines = vec![
                format!("membership: {status}"),
                format!("active functional rows: {}", fmt_index_list(&report.active_functionals)),
                format!("active coordinates: {}", fmt_index_list(&report.active_coordinates)),
                format!(
                    "violated functional rows: {}",
                    fmt_index_list(&report.violated_functionals)
                ),
                format!("violated coordinates: {}", fmt_index_list(&report.violated_coordinates)),
            ];
            for (row, v) in values.iter().enumerate() {
                lines.push(format!(
                    "row {row:3} tuple {}: {}",
                    fmt_tuple(&sys.tuples()[row]),
                    fmt_value(f, v)
                ));
            }
            lines.join("\n") + "\n"
        }
    };
    emit(out, &body)?;
    Ok(if membership.is_outside() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmd_irredundant(
    system: Option<&Path>,
    m: Option<u32>,
    n: Option<usize>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let sys = match (system, m, n) {
        (Some(path), None, None) => {
            let js: JsonSystem = load_json(path)?;
            let ap = apartment_for(js.m)?;
            system_from_json(&ap, &js)?
        }
        (None, Some(m), Some(n)) => {
            let ap = apartment_for(m)?;
            check_sides(n)?;
            ConeSystem::new(&ap, n)
        }
        _ => bail!("give either --system FILE or both --m and --n"),
    };
    let f = sys.field();
    let mut rows = Vec::with_capacity(sys.tuples().len());
    let mut all = true;
    for index in 0..sys.tuples().len() {
        let verdict = sys.row_verdict(index);
        let (irredundant, witness, combination) = match verdict {
            RowVerdict::Irredundant { witness } => {
                (true, Some(witness.iter().map(|c| scalar_to_json(f, c)).collect()), None)
            }
            RowVerdict::Redundant { combination } => {
                all = false;
                (false, None, Some(combination.iter().map(|c| scalar_to_json(f, c)).collect()))
            }
        };
        rows.push(IrredundantRow {
            row: index,
            tuple: sys.tuples()[index].clone(),
            irredundant,
            witness,
            combination,
        });
    }
    let report =
        IrredundantOutput { m: sys.m(), n: sys.n(), all_irredundant: all, rows };
    let body = match format {
        Format::Json => render_json(&report)?,
        Format::Text => {
            let mut lines = vec![format!("system: m={} n={}", report.m, report.n)];
            for row in &report.rows {
                let status = if row.irredundant { "irredundant" } else { "REDUNDANT" };
                lines.push(format!("row {:3} tuple {} {status}", row.row, fmt_tuple(&row.tuple)));
            }
            lines.push(format!("all rows irredundant: {all}"));
            lines.join("\n") + "\n"
        }
    };
    emit(out, &body)?;
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn write_csv(path: &Path, triples: &[SpectralTriple]) -> Result<()> {
    let mut text = String::from(
        "l_a1,l_a2,l_a3,l_b1,l_b2,l_b3,l_c1,l_c2,l_c3,d_a1,d_a2,d_b1,d_b2,d_c1,d_c2\n",
    );
    for t in triples {
        let da = spectrum_to_delta(&t.a).map_err(|e| anyhow!("{e}"))?;
        let db = spectrum_to_delta(&t.b).map_err(|e| anyhow!("{e}"))?;
        let dc = spectrum_to_delta(&t.c).map_err(|e| anyhow!("{e}"))?;
        let fields: Vec<String> = t
            .a
            .iter()
            .chain(t.b.iter())
            .chain(t.c.iter())
            .chain(da.iter())
            .chain(db.iter())
            .chain(dc.iter())
            .map(|v| format!("{v:?}"))
            .collect();
        text.push_str(&fields.join(","));
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    oracle: OracleKind,
    m: u32,
    n: usize,
    seed: u64,
    count: usize,
    tolerance: f64,
    csv: Option<&Path>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<ExitCode> {
    let ap = apartment_for(m)?;
    check_sides(n)?;
    let sys = ConeSystem::new(&ap, n);
    let report = match oracle {
        OracleKind::Hermitian => {
            if m != 3 || n != 3 {
                bail!("the hermitian oracle is fixed at m = 3, n = 3 (got m = {m}, n = {n})");
            }
            let triples = hermitian_sample(seed, count);
            if let Some(path) = csv {
                write_csv(path, &triples)?;
            }
            let r = check_triples(&sys, &triples, tolerance)?;
            SampleOutput {
                oracle: String::from("hermitian"),
                m,
                n,
                seed,
                count: r.count,
                tolerance: Some(r.tolerance),
                boundary_hits: None,
                violation_count: r.violations.len(),
                violations: r
                    .violations
                    .iter()
                    .map(|v| SampleViolation {
                        sample: v.sample,
                        row: Some(v.row),
                        value: Some(v.value),
                        violated_functionals: None,
                        violated_coordinates: None,
                    })
                    .collect(),
                worst_by_row: Some(if count == 0 { vec![] } else { r.worst_by_row }),
            }
        }
        OracleKind::Apartment => {
            if csv.is_some() {
                bail!("--csv applies to the hermitian oracle only");
            }
            let r = apartment_sample(&sys, seed, count);
            SampleOutput {
                oracle: String::from("apartment"),
                m,
                n,
                seed,
                count: r.count,
                tolerance: None,
                boundary_hits: Some(r.boundary_hits),
                violation_count: r.violations.len(),
                violations: r
                    .violations
                    .iter()
                    .map(|v| SampleViolation {
                        sample: v.sample,
                        row: None,
                        value: None,
                        violated_functionals: Some(v.violated_functionals.clone()),
                        violated_coordinates: Some(v.violated_coordinates.clone()),
                    })
                    .collect(),
                worst_by_row: None,
            }
        }
    };
    let clean = report.violation_count == 0;
    let body = match format {
        Format::Json => render_json(&report)?,
        Format::Text => {
            let mut lines = vec![
                format!(
                    "oracle: {}  m: {m}  n: {n}  seed: {seed}  count: {count}",
                    report.oracle
                ),
            ];
            if let Some(t) = report.tolerance {
                lines.push(format!("tolerance: {t:e}"));
            }
            if let Some(b) = report.boundary_hits {
                lines.push(format!("boundary hits: {b}"));
            }
            if let Some(worst) = &report.worst_by_row {
                for (row, v) in worst.iter().enumerate() {
                    lines.push(format!(
                        "row {row:3} tuple {} worst value: {v:.11e}",
                        fmt_tuple(&sys.tuples()[row])
                    ));
                }
            }
            for v in &report.violations {
                match (v.row, v.value) {
                    (Some(row), Some(value)) => lines.push(format!(
                        "VIOLATION sample {} row {row} tuple {}: {value:.11e}",
                        v.sample,
                        fmt_tuple(&sys.tuples()[row])
                    )),
                    _ => lines.push(format!(
                        "VIOLATION sample {}: functional rows {} coordinates {}",
                        v.sample,
                        fmt_index_list(v.violated_functionals.as_deref().unwrap_or(&[])),
                        fmt_index_list(v.violated_coordinates.as_deref().unwrap_or(&[])),
                    )),
                }
            }
            lines.push(format!(
                "verdict: {}",
                if clean { "PASS (no violations)".to_string() } else {
                    format!("FAIL ({} violations)", report.violation_count)
                }
            ));
            lines.join("\n") + "\n"
        }
    };
    emit(out, &body)?;
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_fold(path: &Path, format: Format, out: &Option<PathBuf>) -> Result<ExitCode> {
    let js: JsonPath = load_json(path)?;
    let ap = apartment_for(js.m)?;
    let billiard = path_from_json(&ap, &js)?;
    let f = ap.field();
    let straightened = match straighten(&ap, &billiard) {
        Ok(s) => s,
        Err(PolygonError::NotBilliard { break_index }) => {
            let body = match format {
                Format::Json => render_json(&FoldFailure {
                    error: String::from("not a billiard path"),
                    break_index,
                })?,
                Format::Text => format!("not a billiard path at break {break_index}\n"),
            };
            emit(out, &body)?;
            return Ok(ExitCode::from(1));
        }
        Err(e) => bail!("invalid path: {e}"),
    };

    // Re-verify the defining identities of the straightening: the ordered
    // isometry product carries the last point to the endpoint, its linear
    // part inverts to the holonomy, and each isometry fixes its break point.
    let mut composed = AffineIsometry::identity(&ap);
    for mu in &straightened.isometries {
        composed = AffineIsometry::compose(&ap, &composed, mu);
    }
    let last = billiard.points.last().expect("straighten rejects empty paths");
    let endpoint_ok =
        ap.vec_is_zero(&ap.vec_sub(&composed.apply(&ap, last), &straightened.endpoint));
    let holonomy_ok = ap.group().inverse(composed.linear) == straightened.holonomy;
    let fixes_ok = straightened
        .isometries
        .iter()
        .zip(&billiard.points)
        .all(|(mu, y)| ap.vec_is_zero(&ap.vec_sub(&mu.apply(&ap, y), y)));
    let identity_verified = endpoint_ok && holonomy_ok && fixes_ok;

    let mut full_path = Vec::with_capacity(billiard.points.len() + 1);
    full_path.push(billiard.apex.clone());
    full_path.extend(billiard.points.iter().cloned());
    let pieces = fold_onto_chamber(&ap, &full_path);

    let report = FoldOutput {
        m: js.m,
        breaks: straightened
            .isometries
            .iter()
            .map(|mu| JsonAffine {
                linear: element_to_json(mu.linear),
                translation: vec2_to_json(f, &mu.translation),
            })
            .collect(),
        holonomy: element_to_json(straightened.holonomy),
        endpoint: vec2_to_json(f, &straightened.endpoint),
        identity_verified,
        pieces: pieces
            .iter()
            .map(|segment| {
                segment
                    .iter()
                    .map(|p| JsonPiece {
                        start: vec2_to_json(f, &p.start),
                        end: vec2_to_json(f, &p.end),
                        value: vec2_to_json(f, &p.value),
                    })
                    .collect()
            })
            .collect(),
    };
    let body = match format {
        Format::Json => render_json(&report)?,
        Format::Text => {
            let mut lines = vec![format!(
                "billiard path with {} breaks",
                straightened.isometries.len()
            )];
            for (i, mu) in straightened.isometries.iter().enumerate() {
                lines.push(format!(
                    "break {} isometry: {} translation ({}, {})",
                    i + 1,
                    fmt_element(mu.linear),
                    fmt_value(f, &mu.translation.x),
                    fmt_value(f, &mu.translation.y)
                ));
            }
            lines.push(format!("holonomy: {}", fmt_element(straightened.holonomy)));
            lines.push(format!(
                "endpoint: ({}, {})",
                fmt_value(f, &straightened.endpoint.x),
                fmt_value(f, &straightened.endpoint.y)
            ));
            lines.push(format!(
                "isometry product identity: {}",
                if identity_verified { "verified" } else { "FAILED" }
            ));
            for (i, segment) in pieces.iter().enumerate() {
                lines.push(format!("segment {i}: {} folded pieces", segment.len()));
            }
            lines.join("\n") + "\n"
        }
    };
    emit(out, &body)?;
    Ok(if identity_verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn fmt_element(e: WeylElement) -> String {
    match e {
        WeylElement::Rotation(j) => format!("rot {j}"),
        WeylElement::Reflection(j) => format!("ref {j}"),
    }
}

fn cmd_open(path: &Path, format: Format, out: &Option<PathBuf>) -> Result<ExitCode> {
    let js: JsonOpenInput = load_json(path)?;
    let ap = apartment_for(js.m)?;
    let (sides, transitions) = open_input_from_json(&ap, &js)?;
    let f = ap.field();
    let (points, holonomy) = match open_polygon(&ap, &sides, &transitions) {
        Ok(r) => r,
        Err(e) => bail!("invalid input: {e}"),
    };
    let mut acc = WeylElement::identity();
    for &t in &transitions {
        acc = ap.group().compose(acc, t);
    }
    let identity_verified = acc == holonomy;
    let report = OpenOutput {
        m: js.m,
        points: points.iter().map(|p| vec2_to_json(f, p)).collect(),
        holonomy: element_to_json(holonomy),
        identity_verified,
    };
    let body = match format {
        Format::Json => render_json(&report)?,
        Format::Text => {
            let mut lines = vec![format!("opened polygon with {} points", points.len())];
            for (i, p) in points.iter().enumerate() {
                lines.push(format!(
                    "point {i}: ({}, {})",
                    fmt_value(f, &p.x),
                    fmt_value(f, &p.y)
                ));
            }
            lines.push(format!("holonomy: {}", fmt_element(holonomy)));
            lines.push(format!(
                "transition product identity: {}",
                if identity_verified { "verified" } else { "FAILED" }
            ));
            lines.join("\n") + "\n"
        }
    };
    emit(out, &body)?;
    Ok(if identity_verified { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
