//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for invalid input or I/O failure, 2 when
//! `verify` finds a failing check.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bell::{self, PhotonConvention, Species, StateRecord, Subsystem};
use crate::error::Error;
use crate::lorentz::{self, Axis, FourVector, Rapidity, Tolerances, RAPIDITY_CAP};
use crate::massive;
use crate::photon::{self, Helicity, MasslessMomentum};
use crate::sampling::DEFAULT_SEED;
use crate::verify;

pub const SEED_ENV: &str = "WIGNERKIT_SEED";

const SIGNIFICANT_DIGITS: usize = 12;
const MAX_GRID_POINTS: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "wignerkit", version, about = "Wigner rotations, spinor transport and Bell-state entanglement under Lorentz boosts")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate the Wigner angle and deflection angle over an (η, ω) grid.
    WignerAngle(WignerArgs),
    /// Boost a Bell pair and report amplitudes, Wigner data and entanglement.
    Transform(TransformArgs),
    /// Run the invariant suites and print a pass/fail report.
    Verify(VerifyArgs),
    /// Tabulate the gauge-fixed photon polarization under B_x(ω).
    SweepPolarization(PolarizationArgs),
}

/// A grid given as `a:b:step` (inclusive) or a comma-separated list.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid(pub Vec<f64>);

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Grid, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid number {t:?} in grid {s:?}"))
        };
        let values = if s.contains(':') {
            let parts: Vec<f64> = s.split(':').map(parse).collect::<Result<_, _>>()?;
            let [a, b, step] = parts[..] else {
                return Err(format!("grid {s:?} must have the form start:stop:step"));
            };
            if !(step > 0.0 && step.is_finite()) {
                return Err(format!("grid step must be positive, got {step}"));
            }
            if !(b >= a) {
                return Err(format!("grid stop {b} is below start {a}"));
            }
            let n = ((b - a) / step + 1e-9).floor();
            if !(n < MAX_GRID_POINTS as f64) {
                return Err(format!("grid {s:?} has more than {MAX_GRID_POINTS} points"));
            }
            (0..=n as usize).map(|i| a + i as f64 * step).collect()
        } else {
            s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?
        };
        if values.is_empty() {
            return Err("grid is empty".into());
        }
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && v.abs() <= RAPIDITY_CAP)) {
            return Err(format!("rapidity {v} is outside |η| <= {RAPIDITY_CAP}"));
        }
        Ok(Grid(values))
    }
}

#[derive(Debug, Args)]
struct EtaArgs {
    /// Rapidity of the particle along z.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "eta_grid")]
    eta: Option<f64>,
    /// Rapidity grid, `a:b:step` or `v1,v2,...`.
    #[arg(long, allow_hyphen_values = true)]
    eta_grid: Option<Grid>,
}

#[derive(Debug, Args)]
struct OmegaArgs {
    /// Rapidity of the boost along x.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "omega_grid")]
    omega: Option<f64>,
    /// Boost rapidity grid, `a:b:step` or `v1,v2,...`.
    #[arg(long, allow_hyphen_values = true)]
    omega_grid: Option<Grid>,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report angles in degrees.
    #[arg(long)]
    degrees: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SpeciesArg {
    SpinHalf,
    Photon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    GaugeFixed,
    HelicityPhase,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum HelicityArg {
    Plus,
    Minus,
}

#[derive(Debug, Args)]
struct WignerArgs {
    #[command(flatten)]
    eta: EtaArgs,
    #[command(flatten)]
    omega: OmegaArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct TransformArgs {
    #[arg(long, value_enum, default_value = "spin-half")]
    species: SpeciesArg,
    /// Photon amplitude convention.
    #[arg(long, value_enum, default_value = "gauge-fixed")]
    convention: ConventionArg,
    #[command(flatten)]
    eta: EtaArgs,
    #[command(flatten)]
    omega: OmegaArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Seed for the randomized checks; falls back to $WIGNERKIT_SEED, then 1729.
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance override `NAME=VALUE` with NAME one of exact, composed, unitary, all.
    #[arg(long = "tol")]
    tol: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PolarizationArgs {
    #[command(flatten)]
    omega: OmegaArgs,
    #[arg(long, value_enum, default_value = "plus")]
    helicity: HelicityArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

/// `%.12g`-style formatting, with `-0` printed as `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim(mantissa))
    }
}

fn rounded(x: f64) -> Value {
    let s = format_number(x);
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => json!(v),
        _ => Value::String(s),
    }
}

/// Rounds every number in a JSON tree to the output precision.
fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) => n.as_f64().map_or(Value::Number(n), rounded),
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn grid_values(single: Option<f64>, grid: &Option<Grid>, default: f64) -> Result<Vec<f64>, Failure> {
    let values = match (single, grid) {
        (Some(v), _) => vec![v],
        (None, Some(g)) => g.0.clone(),
        (None, None) => vec![default],
    };
    for v in &values {
        Rapidity::new(*v)?;
    }
    Ok(values)
}

fn angle(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_degrees()
    } else {
        x
    }
}

fn unit_suffix(degrees: bool) -> &'static str {
    if degrees {
        "deg"
    } else {
        "rad"
    }
}

fn csv(header: &[String], rows: &[Vec<f64>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn json_rows(header: &[String], rows: &[Vec<f64>]) -> String {
    let records: Vec<Value> = rows
        .iter()
        .map(|row| {
            Value::Object(
                header
                    .iter()
                    .zip(row)
                    .map(|(k, &v)| (k.clone(), rounded(v)))
                    .collect(),
            )
        })
        .collect();
    pretty(&Value::Array(records))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn table(format: Format, header: &[&str], rows: &[Vec<f64>]) -> String {
    let header: Vec<String> = header.iter().map(|s| s.to_string()).collect();
    match format {
        Format::Csv => csv(&header, rows),
        Format::Json => json_rows(&header, rows),
    }
}

/// `Ω/θ`, continued to its `ω → 0` limit `sinh η tanh η / (1 + cosh η)` where `θ = 0`.
fn angle_ratio(eta: f64, omega: f64, theta: f64, wigner: f64) -> f64 {
    if theta == 0.0 || omega == 0.0 {
        eta.sinh() * eta.tanh() / (1.0 + eta.cosh())
    } else {
        wigner / theta
    }
}

fn cmd_wigner_angle(args: &WignerArgs) -> Result<String, Failure> {
    let etas = grid_values(args.eta.eta, &args.eta.eta_grid, 1.0)?;
    let omegas = grid_values(args.omega.omega, &args.omega.omega_grid, 1.0)?;
    let deg = args.output.degrees;
    let mut rows = Vec::with_capacity(etas.len() * omegas.len());
    for &eta in &etas {
        for &omega in &omegas {
            let theta = massive::deflection_angle_xz(eta, omega);
            let wigner = massive::wigner_angle_xz(eta, omega);
            let ratio = angle_ratio(eta, omega, theta, wigner);
            rows.push(vec![eta, omega, angle(theta, deg), angle(wigner, deg), ratio]);
        }
    }
    let u = unit_suffix(deg);
    let header = ["eta", "omega", &format!("theta_{u}"), &format!("omega_wigner_{u}"), "ratio"];
    Ok(table(args.output.format.unwrap_or(Format::Csv), &header, &rows))
}

struct TransformRow {
    record: Value,
    row: Vec<f64>,
}

fn transform_one(
    species: Species,
    convention: PhotonConvention,
    eta: f64,
    omega: f64,
    deg: bool,
) -> Result<TransformRow, Failure> {
    let p = match species {
        Species::SpinHalf => FourVector::new(0.0, 0.0, eta.sinh(), eta.cosh()),
        Species::Photon => *MasslessMomentum::standard().four_vector(),
    };
    let lambda = lorentz::boost_axis(Axis::X, Rapidity::new(omega)?);
    let state = bell::bell_state(species, p)?;
    let t = bell::transport_detailed(&state, &lambda, convention)?;
    let concurrence = bell::concurrence(&t.state)?;
    let entropy = bell::entropy(&bell::reduced_density(&t.state, Subsystem::A)?)?;
    let entropy_b = bell::entropy(&bell::reduced_density(&t.state, Subsystem::B)?)?;
    let [a, b] = t.local;
    let mut particles = Vec::new();
    for (label, action) in [("A", a), ("B", b)] {
        let mut v = serde_json::to_value(action).expect("local actions serialize");
        v["angle"] = json!(angle(action.angle, deg));
        if let Some(tilt) = action.triad_angle {
            v["triad_angle"] = json!(angle(tilt, deg));
        }
        v["particle"] = json!(label);
        particles.push(v);
    }
    let mut record = json!({
        "species": species,
        "eta": if species == Species::Photon { Value::Null } else { json!(eta) },
        "omega": omega,
        "angle_unit": unit_suffix(deg),
        "lambda": lambda,
        "initial": StateRecord::new(&state)?,
        "final": StateRecord::new(&t.state)?,
        "omega_wigner_A": angle(a.angle, deg),
        "omega_wigner_B": angle(b.angle, deg),
        "particles": particles,
        "concurrence": concurrence,
        "entropy_bits": entropy,
        "entropy_B_bits": entropy_b,
    });
    if species == Species::Photon {
        record["convention"] = json!(convention);
        record["triad_tilt"] = json!(angle(a.triad_angle.unwrap_or(0.0), deg));
    }
    Ok(TransformRow {
        record,
        row: vec![eta, omega, angle(a.angle, deg), angle(b.angle, deg), concurrence, entropy],
    })
}

fn cmd_transform(args: &TransformArgs) -> Result<String, Failure> {
    let species = match args.species {
        SpeciesArg::SpinHalf => Species::SpinHalf,
        SpeciesArg::Photon => Species::Photon,
    };
    let convention = match args.convention {
        ConventionArg::GaugeFixed => PhotonConvention::GaugeFixed,
        ConventionArg::HelicityPhase => PhotonConvention::HelicityPhase,
    };
    let etas = grid_values(args.eta.eta, &args.eta.eta_grid, 1.0)?;
    let omegas = grid_values(args.omega.omega, &args.omega.omega_grid, 1.0)?;
    let deg = args.output.degrees;
    let mut results = Vec::new();
    for &eta in &etas {
        for &omega in &omegas {
            results.push(transform_one(species, convention, eta, omega, deg)?);
        }
    }
    match args.output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let value = if results.len() == 1 {
                results.remove(0).record
            } else {
                Value::Array(results.into_iter().map(|r| r.record).collect())
            };
            Ok(pretty(&round_json(value)))
        }
        Format::Csv => {
            let rows: Vec<Vec<f64>> = results.into_iter().map(|r| r.row).collect();
            let header = ["eta", "omega", "omega_wigner_A", "omega_wigner_B", "concurrence", "entropy_bits"];
            Ok(table(Format::Csv, &header, &rows))
        }
    }
}

fn parse_tolerances(overrides: &[String]) -> Result<Tolerances, Failure> {
    let mut tol = Tolerances::default();
    for item in overrides {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| Failure::Invalid(format!("tolerance override {item:?} must be NAME=VALUE")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| Failure::Invalid(format!("invalid tolerance value in {item:?}")))?;
        if !(value > 0.0 && value.is_finite()) {
            return Err(Failure::Invalid(format!("tolerance must be positive, got {value}")));
        }
        match name.trim() {
            "exact" => tol.exact = value,
            "composed" => tol.composed = value,
            "unitary" => tol.unitary = value,
            "all" => {
                tol.exact = value;
                tol.composed = value;
                tol.unitary = value;
            }
            other => {
                return Err(Failure::Invalid(format!(
                    "unknown tolerance {other:?} (expected exact, composed, unitary or all)"
                )))
            }
        }
    }
    Ok(tol)
}

fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64, Failure> {
    match (flag, env) {
        (Some(s), _) => Ok(s),
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Invalid(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        (None, None) => Ok(DEFAULT_SEED),
    }
}

fn cmd_sweep_polarization(args: &PolarizationArgs) -> Result<String, Failure> {
    let omegas = grid_values(args.omega.omega, &args.omega.omega_grid, 1.0)?;
    let helicity = match args.helicity {
        HelicityArg::Plus => Helicity::Plus,
        HelicityArg::Minus => Helicity::Minus,
    };
    let deg = args.output.degrees;
    let k = MasslessMomentum::standard();
    let mut rows = Vec::with_capacity(omegas.len());
    for &omega in &omegas {
        let lambda = lorentz::boost_axis(Axis::X, Rapidity::new(omega)?);
        let (_, theta) = photon::rotation_angle(&photon::triad_rotation(&lambda, &k)?)?;
        let eps = photon::gauge_fixed_transform(&lambda, &k, helicity)?;
        let c = eps.components();
        rows.push(vec![
            omega,
            angle(theta, deg),
            c[0].re,
            c[0].im,
            c[1].re,
            c[1].im,
            c[2].re,
            c[2].im,
            eps.gauge_report().max(),
        ]);
    }
    let theta = format!("theta_{}", unit_suffix(deg));
    let header = [
        "omega", &theta, "eps_x_re", "eps_x_im", "eps_y_re", "eps_y_im", "eps_z_re", "eps_z_im", "gauge_residual",
    ];
    Ok(table(args.output.format.unwrap_or(Format::Csv), &header, &rows))
}

fn emit(text: &str, path: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Invalid(format!("cannot write output: {e}"))),
    }
}

fn dispatch(cli: &Cli, env_seed: Option<&str>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &cli.command {
        Command::WignerAngle(a) => emit(&cmd_wigner_angle(a)?, &a.output.out, stdout),
        Command::Transform(a) => emit(&cmd_transform(a)?, &a.output.out, stdout),
        Command::SweepPolarization(a) => emit(&cmd_sweep_polarization(a)?, &a.output.out, stdout),
        Command::Verify(a) => {
            let seed = resolve_seed(a.seed, env_seed)?;
            let tol = parse_tolerances(&a.tol)?;
            let report = verify::run(seed, tol);
            let text = report.render();
            emit(&text, &a.out, stdout)?;
            if report.passed() {
                Ok(())
            } else {
                let failed: Vec<&str> = report
                    .suites
                    .iter()
                    .flat_map(|s| s.checks.iter().filter(|c| !c.passed).map(|c| c.name))
                    .collect();
                let mut msg = String::from("verification failed:");
                for name in failed {
                    let _ = write!(msg, " {name}");
                }
                Err(Failure::Verification(msg))
            }
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
/// `env_seed` stands in for `$WIGNERKIT_SEED`.
pub fn run_with_io<I, T>(args: I, env_seed: Option<&str>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match dispatch(&cli, env_seed, stdout) {
        Ok(()) => 0,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(stderr, "{msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.0), "0");
        assert_eq!(format_number(-0.0), "0");
        assert_eq!(format_number(1.0), "1");
        assert_eq!(format_number(0.420_783_961_638_072_9), "0.420783961638");
        assert_eq!(format_number(-2.5), "-2.5");
        assert_eq!(format_number(1.5e-7), "1.5e-7");
        assert_eq!(format_number(123_456_789_012_345.0), "1.23456789012e14");
        assert_eq!(format_number(0.000_123_456_789_012_34), "0.000123456789012");
    }

    #[test]
    fn grid_parsing() {
        assert_eq!("0:1:0.5".parse::<Grid>().unwrap().0, vec![0.0, 0.5, 1.0]);
        assert_eq!("0.1,0.5, 1".parse::<Grid>().unwrap().0, vec![0.1, 0.5, 1.0]);
        assert_eq!("2".parse::<Grid>().unwrap().0, vec![2.0]);
        assert_eq!("0:0.3:0.1".parse::<Grid>().unwrap().0.len(), 4);
        for bad in ["1:0:0.1", "0:1:0", "0:1", "a,b", "0:60:1", "0:1:1e-9"] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }

    #[test]
    fn tolerance_overrides() {
        let t = parse_tolerances(&["exact=1e-9".into(), "unitary=2e-14".into()]).unwrap();
        assert_eq!((t.exact, t.composed, t.unitary), (1e-9, 1e-10, 2e-14));
        let t = parse_tolerances(&["all=1e-18".into()]).unwrap();
        assert_eq!((t.exact, t.composed, t.unitary), (1e-18, 1e-18, 1e-18));
        assert!(parse_tolerances(&["loose=1".into()]).is_err());
        assert!(parse_tolerances(&["exact=-1".into()]).is_err());
        assert!(parse_tolerances(&["exact".into()]).is_err());
    }

    #[test]
    fn seed_resolution() {
        assert_eq!(resolve_seed(Some(5), Some("9")).unwrap(), 5);
        assert_eq!(resolve_seed(None, Some("9")).unwrap(), 9);
        assert_eq!(resolve_seed(None, None).unwrap(), DEFAULT_SEED);
        assert!(resolve_seed(None, Some("x")).is_err());
    }

    #[test]
    fn ratio_limit_at_zero_boost() {
        let eta = 1.0f64;
        let limit = angle_ratio(eta, 0.0, 0.0, 0.0);
        let small = 1e-6;
        let near = massive::wigner_angle_xz(eta, small) / massive::deflection_angle_xz(eta, small);
        assert!((limit - near).abs() < 1e-9);
        assert_eq!(angle_ratio(0.0, 0.0, 0.0, 0.0), 0.0);
    }
}
