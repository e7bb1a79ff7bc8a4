//! Batch command-line surface over every computation and checker.
//!
//! Each run writes a header record (version, config echo, seed) followed by
//! JSON lines or CSV rows. The exit status is 0 when no asserted inequality
//! failed, 1 when one did, and 2 for unreadable input or invalid arguments.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arithhilbert::{arith_hilbert, arith_hilbert_on_x, check_ar_hilbert_part1, check_mlnull};
use crate::error::{Error, Result};
use crate::forms::HomogeneousForm;
use crate::heights::{
    bezout_check, bezout_instances, derive_seed, divisor_height, point_height, random_theta, sharp_bezout_check,
    transcendence_profile, Cycle,
};
use crate::lattice::{short_vector, LatticeJson, MetrizedLattice};
use crate::report::{write_csv, BoundReport};
use crate::schemes::{build_chain, check_al_hilbert, hilbert_fn, interpolate, vanishing_lattice, SchemeSpec};
use crate::suite::{standard_suite, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Algebraic Hilbert function H_X(D) with its bounds.
    Hilbert,
    /// Arithmetic Hilbert function of a scheme or of P^t (--ambient).
    ArithHilbert,
    /// Certified short vector of I_X(D) or of a lattice file.
    Shortvec,
    /// Short form through Y (--scheme) avoiding X (--scheme2).
    Interpolate,
    /// Chain of two hypersurfaces through a point set in P^2; --d caps the degree.
    Chain,
    /// Heights of the points and hypersurfaces of a scheme file.
    Height,
    /// Arithmetic Bézout for two cycles, or the harness family without files.
    Bezout,
    /// Sharp Bézout of the first hypersurface of --scheme on the coordinate
    /// subspace cut out by the variables listed in --scheme2.
    SharpBezout,
    /// The standard batch of inequality checks.
    Bounds,
    /// Small values of integral binary forms at a seeded random point.
    Transcendence,
}

/// Parsed command line; every subcommand shares the same flags.
#[derive(Clone, Debug, Parser, serde::Serialize)]
#[command(
    name = "arakelov",
    version,
    about = "Exact metrized lattices of forms, heights and their inequalities"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Dimension t of the ambient P^t (defaults to the scheme file's t).
    #[arg(long, global = true)]
    pub t: Option<usize>,
    /// Degree D.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Norm budget H.
    #[arg(long, global = true)]
    pub h: Option<f64>,
    /// Scheme (or lattice) JSON file.
    #[arg(long, global = true)]
    pub scheme: Option<PathBuf>,
    /// Second scheme JSON file.
    #[arg(long, global = true)]
    pub scheme2: Option<PathBuf>,
    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub out: OutputFormat,
    /// Monte Carlo tolerance in standard errors.
    #[arg(long = "tolerance-sigma", global = true, default_value_t = 3.0)]
    pub tolerance_sigma: f64,
    /// Use the whole space P^t instead of a scheme file.
    #[arg(long, global = true)]
    pub ambient: bool,
}

/// What a subcommand produced: free-form rows and inequality reports.
#[derive(Default)]
struct Outcome {
    rows: Vec<Value>,
    reports: Vec<BoundReport>,
    /// CSV table (header, rows) used instead of the report table.
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_scheme(path: &Path) -> Result<SchemeSpec> {
    SchemeSpec::from_json_str(&read_file(path)?)
}

impl RunConfig {
    fn need_d(&self) -> Result<usize> {
        self.d.ok_or_else(|| Error::Parse("--d is required".into()))
    }

    fn scheme1(&self) -> Result<SchemeSpec> {
        if self.ambient {
            let t = self.t.ok_or_else(|| Error::Parse("--ambient needs --t".into()))?;
            return Ok(SchemeSpec::ambient(t));
        }
        let path = self
            .scheme
            .as_ref()
            .ok_or_else(|| Error::Parse("--scheme is required".into()))?;
        let x = load_scheme(path)?;
        self.check_t(&x)?;
        Ok(x)
    }

    fn scheme2(&self) -> Result<SchemeSpec> {
        let path = self
            .scheme2
            .as_ref()
            .ok_or_else(|| Error::Parse("--scheme2 is required".into()))?;
        let x = load_scheme(path)?;
        self.check_t(&x)?;
        Ok(x)
    }

    fn check_t(&self, x: &SchemeSpec) -> Result<()> {
        match self.t {
            Some(t) if t != x.dimension_t() => Err(Error::Parse(format!(
                "--t {t} does not match the scheme file (t = {})",
                x.dimension_t()
            ))),
            _ => Ok(()),
        }
    }

    /// The header record echoing the full configuration.
    pub fn header(&self) -> Value {
        json!({
            "record": "header",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "config": self,
            "seed": self.seed,
        })
    }
}

fn cycle_from_scheme(x: &SchemeSpec) -> Result<Cycle> {
    if x.is_ambient() {
        return Ok(Cycle::Ambient);
    }
    if !x.hypersurfaces().is_empty() {
        if !x.points().is_empty() {
            return Err(Error::Domain("a cycle is either points or hypersurfaces".into()));
        }
        let hs = x.hypersurfaces();
        if hs.iter().all(|g| g.degree() == 1) {
            let normals = hs
                .iter()
                .map(|g| {
                    g.integer_coefficients()
                        .ok_or_else(|| Error::Domain("non-integral form".into()))
                })
                .collect::<Result<_>>()?;
            return Ok(Cycle::Hyperplanes(normals));
        }
        let mut prod = hs[0].clone();
        for g in &hs[1..] {
            prod = crate::forms::form_product(&prod, g)?;
        }
        return Ok(Cycle::Divisor(prod));
    }
    if !x.is_reduced_points() {
        return Err(Error::Domain("fat points are not supported as Bézout cycles".into()));
    }
    Ok(Cycle::Points(x.points().iter().map(|p| p.coords().to_vec()).collect()))
}

fn run_command(cfg: &RunConfig) -> Result<Outcome> {
    let mut o = Outcome::default();
    match cfg.command {
        Command::Hilbert => {
            let x = cfg.scheme1()?;
            let d = cfg.need_d()?;
            let reports = check_al_hilbert(&x, d)?;
            let upper = reports.iter().find(|r| r.name == "hilbert_upper").map(|r| r.rhs);
            let lower = reports.iter().find(|r| r.name == "hilbert_lower").map(|r| r.lhs);
            o.rows.push(json!({
                "H": hilbert_fn(&x, d)?,
                "upper": upper,
                "lower": lower,
                "holds": reports.iter().all(|r| !r.failed()),
            }));
            o.reports = reports;
        }
        Command::ArithHilbert => {
            let x = cfg.scheme1()?;
            let d = cfg.need_d()?;
            o.rows.push(arith_hilbert(&x, d)?.to_json());
            if x.is_reduced_points() && !x.points().is_empty() {
                match arith_hilbert_on_x(&x, d) {
                    Ok(v) => {
                        o.rows.push(v.to_json());
                        o.reports.push(check_ar_hilbert_part1(&x, d)?);
                    }
                    Err(e @ Error::DegreeTooSmall { .. }) => {
                        o.rows.push(json!({"metric_kind": "l2_on_x", "error": e.to_string()}))
                    }
                    Err(e) => return Err(e),
                }
            }
            o.reports.push(check_mlnull(&x, d)?);
        }
        Command::Shortvec => {
            let path = cfg
                .scheme
                .as_ref()
                .ok_or_else(|| Error::Parse("--scheme is required".into()))?;
            let text = read_file(path)?;
            let value: Value = serde_json::from_str(&text)?;
            let lattice = if value.get("basis").is_some() {
                MetrizedLattice::try_from(&serde_json::from_value::<LatticeJson>(value)?)?
            } else {
                let x = SchemeSpec::from_json_str(&text)?;
                cfg.check_t(&x)?;
                vanishing_lattice(&x, cfg.need_d()?)?
            };
            let cert = short_vector(&lattice)?;
            o.rows.push(json!({
                "vector": cert.vector.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "log_length": cert.log_length,
                "minkowski_rhs": cert.minkowski_rhs,
                "method": format!("{:?}", cert.method),
                "rank": lattice.rank(),
            }));
            o.reports.push(BoundReport::exact(
                "minkowski_short_vector",
                cert.log_length,
                cert.minkowski_rhs,
                cert.holds_exactly(),
                json!({"rank": lattice.rank()}),
            ));
        }
        Command::Interpolate => {
            let y = cfg.scheme1()?;
            let x = cfg.scheme2()?;
            let r = interpolate(&y, &x, cfg.need_d()?)?;
            o.rows.push(r.to_json());
            o.reports.push(BoundReport::exact(
                "interpolation_minkowski",
                r.log_norm,
                r.minkowski_rhs,
                r.certificate_holds(),
                json!({"d": cfg.d}),
            ));
        }
        Command::Chain => {
            let y = cfg.scheme1()?;
            let chain = build_chain(&y, cfg.d.unwrap_or(8))?;
            o.reports.push(BoundReport::exact(
                "chain_contains_y",
                0.0,
                0.0,
                chain.contains_y,
                json!({"steps": chain.steps.len()}),
            ));
            o.rows.push(chain.to_json());
        }
        Command::Height => {
            let x = cfg.scheme1()?;
            for (k, p) in x.points().iter().enumerate() {
                let mut row = point_height(p.coords())?.to_json();
                row["point"] = json!(k);
                o.rows.push(row);
            }
            for (k, g) in x.hypersurfaces().iter().enumerate() {
                let h = divisor_height(g, cfg.samples, derive_seed(cfg.seed, k as u64))?;
                let mut row = h.to_json();
                row["hypersurface"] = json!(k);
                o.rows.push(row);
                o.reports.push(BoundReport::with_tolerance(
                    "divisor_height_nonnegative",
                    0.0,
                    h.value,
                    cfg.tolerance_sigma * h.stderr,
                    json!({"form": g}),
                ));
            }
        }
        Command::Bezout => {
            if cfg.scheme.is_none() && cfg.scheme2.is_none() {
                let count = cfg.d.unwrap_or(30);
                for (k, (x, y)) in bezout_instances(cfg.seed, count).iter().enumerate() {
                    o.reports.push(bezout_check(
                        2,
                        x,
                        y,
                        cfg.samples,
                        derive_seed(cfg.seed, k as u64),
                        cfg.tolerance_sigma,
                    )?);
                }
            } else {
                let x = cfg.scheme1()?;
                let y = cfg.scheme2()?;
                if x.dimension_t() != y.dimension_t() {
                    return Err(Error::Shape("cycles live in different spaces".into()));
                }
                o.reports.push(bezout_check(
                    x.dimension_t(),
                    &cycle_from_scheme(&x)?,
                    &cycle_from_scheme(&y)?,
                    cfg.samples,
                    cfg.seed,
                    cfg.tolerance_sigma,
                )?);
            }
        }
        Command::SharpBezout => {
            let f_scheme = cfg.scheme1()?;
            let f = f_scheme
                .hypersurfaces()
                .first()
                .cloned()
                .ok_or_else(|| Error::Parse("--scheme must contain a hypersurface".into()))?;
            let t = f.dimension();
            let vanishing = match &cfg.scheme2 {
                None => Vec::new(),
                Some(_) => coordinate_indices(&cfg.scheme2()?)?,
            };
            o.reports = sharp_bezout_check(t, &vanishing, &f, cfg.samples, cfg.seed, cfg.tolerance_sigma)?;
        }
        Command::Bounds => {
            let suite = SuiteConfig {
                max_degree: cfg.d.unwrap_or(3),
                samples: cfg.samples,
                seed: cfg.seed,
                tolerance_sigma: cfg.tolerance_sigma,
                ..SuiteConfig::default()
            };
            o.reports = standard_suite(&suite)?;
        }
        Command::Transcendence => {
            let d = cfg.d.unwrap_or(10);
            let h = cfg.h.unwrap_or(10.0);
            let p = transcendence_profile(random_theta(cfg.seed), d, h)?;
            o.reports.push(BoundReport::exact(
                "witness_within_budget",
                p.witness_log_norm,
                h,
                p.witness_log_norm <= h,
                json!({"d": d}),
            ));
            o.table = Some((
                ["D", "H", "achieved", "rhs_paper", "ratio"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                vec![p.csv_row().to_vec()],
            ));
            o.rows.push(p.to_json());
        }
    }
    Ok(o)
}

/// Indices j of the variables x_j listed as hypersurfaces of `x`.
fn coordinate_indices(x: &SchemeSpec) -> Result<Vec<usize>> {
    x.hypersurfaces()
        .iter()
        .map(|g| {
            (0..=g.dimension())
                .find(|&j| *g == HomogeneousForm::variable(g.dimension(), j))
                .ok_or_else(|| Error::Parse(format!("{g} is not a coordinate variable")))
        })
        .collect()
}

/// Executes one configured run, writing to `out`; returns the exit status.
pub fn run<W: Write>(cfg: &RunConfig, out: &mut W) -> i32 {
    let io = |r: std::io::Result<()>| r.is_ok();
    let header = cfg.header();
    let outcome = match run_command(cfg) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(out, "{header}");
            let _ = writeln!(out, "{}", json!({"record": "error", "message": e.to_string()}));
            eprintln!("error: {e}");
            return 2;
        }
    };
    let failed: Vec<&BoundReport> = outcome.reports.iter().filter(|r| r.failed()).collect();
    let ok = match cfg.out {
        OutputFormat::Json => {
            let mut ok = io(writeln!(out, "{header}"));
            for r in &outcome.rows {
                let mut r = r.clone();
                if let Value::Object(m) = &mut r {
                    m.insert("record".into(), json!("row"));
                }
                ok &= io(writeln!(out, "{r}"));
            }
            for r in &outcome.reports {
                let mut v = serde_json::to_value(r).expect("reports serialize");
                v["record"] = json!("report");
                ok &= io(writeln!(out, "{v}"));
            }
            ok
        }
        OutputFormat::Csv => {
            let mut ok = io(writeln!(out, "# {header}"));
            match &outcome.table {
                Some((head, rows)) => {
                    let mut w = csv::Writer::from_writer(&mut *out);
                    ok &= w.write_record(head).is_ok();
                    for r in rows {
                        ok &= w.write_record(r).is_ok();
                    }
                    ok &= w.flush().is_ok();
                }
                None => ok &= write_csv(&outcome.reports, &mut *out).is_ok(),
            }
            ok
        }
    };
    if !ok {
        eprintln!("error: could not write output");
        return 2;
    }
    if failed.is_empty() {
        0
    } else {
        for r in failed {
            eprintln!("assertion failed: {}", r.to_json_line());
        }
        1
    }
}

/// Parses `args` (including the program name) and runs; returns the exit
/// status. Help and version requests exit 0.
pub fn main_with_args<I, S, W>(args: I, out: &mut W) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
    W: Write,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => run(&cfg, out),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = main_with_args(std::iter::once("arakelov").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    fn write_tmp(name: &str, content: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("arakelov-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, content).unwrap();
        p
    }

    #[test]
    fn ambient_arith_hilbert() {
        let (code, out) = run_args(&["arith-hilbert", "--t", "1", "--d", "1", "--ambient"]);
        assert_eq!(code, 0, "{out}");
        let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines[0]["record"], "header");
        assert_eq!(lines[0]["seed"], 0);
        let v = lines[1]["value"].as_f64().unwrap();
        assert!((v - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn hilbert_from_file() {
        let p = write_tmp(
            "pts.json",
            r#"{"t": 2, "points": [{"coords": [1,0,0]}, {"coords": [0,1,0]}, {"coords": [0,0,1]}]}"#,
        );
        let (code, out) = run_args(&["hilbert", "--t", "2", "--d", "4", "--scheme", p.to_str().unwrap()]);
        assert_eq!(code, 0, "{out}");
        let row: Value = serde_json::from_str(out.lines().nth(1).unwrap()).unwrap();
        assert_eq!(row["H"], 3);
        assert_eq!(row["holds"], true);
    }

    #[test]
    fn parse_errors_exit_2() {
        let p = write_tmp("bad.json", "{not json");
        let (code, _) = run_args(&["hilbert", "--d", "1", "--scheme", p.to_str().unwrap()]);
        assert_eq!(code, 2);
        let (code, _) = run_args(&["hilbert", "--d", "x"]);
        assert_eq!(code, 2);
        let (code, _) = run_args(&["frobnicate"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn byte_identical_reruns() {
        let a = run_args(&["bezout", "--d", "5", "--samples", "5000", "--seed", "3"]);
        let b = run_args(&["bezout", "--d", "5", "--samples", "5000", "--seed", "3"]);
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
    }

    #[test]
    fn transcendence_csv() {
        let (code, out) = run_args(&["transcendence", "--d", "6", "--h", "5", "--seed", "7", "--out", "csv"]);
        assert_eq!(code, 0, "{out}");
        let mut lines = out.lines();
        assert!(lines.next().unwrap().starts_with("# {"));
        assert_eq!(lines.next().unwrap(), "D,H,achieved,rhs_paper,ratio");
        assert!(lines.next().unwrap().starts_with("6,5,"));
    }
}
