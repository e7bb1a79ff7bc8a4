//! The standard instance family: a fixed batch of small schemes, forms and
//! cycles on which every explicit inequality of the crate is evaluated.

use serde_json::json;

use crate::arithhilbert::{check_3bew, check_ar_hilbert_part1, check_ar_hilbert_parts23, check_mlnull};
use crate::error::{Error, Result};
use crate::forms::{check_product_bounds, HomogeneousForm};
use crate::heights::{bezout_check, bezout_instances, derive_seed, sharp_bezout_check};
use crate::report::BoundReport;
use crate::schemes::{check_al_hilbert, check_al_hilbinf, interpolate, FatPoint, SchemeSpec};

/// Parameters of a suite run.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Largest degree D used for the scheme checks.
    pub max_degree: usize,
    pub samples: u64,
    pub seed: u64,
    pub tolerance_sigma: f64,
    /// Number of harness-generated Bézout instances.
    pub bezout_instances: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_degree: 3,
            samples: 20_000,
            seed: 0,
            tolerance_sigma: 3.0,
            bezout_instances: 10,
        }
    }
}

/// The schemes of the standard family.
pub fn standard_schemes() -> Vec<(String, SchemeSpec)> {
    let pts = |t: usize, p: &[Vec<i64>]| SchemeSpec::reduced_points(t, p).expect("valid points");
    let mut out = vec![
        ("P1".to_string(), SchemeSpec::ambient(1)),
        ("P2".to_string(), SchemeSpec::ambient(2)),
        ("P1 point (1:0)".to_string(), pts(1, &[vec![1, 0]])),
        ("P1 point (1:1)".to_string(), pts(1, &[vec![1, 1]])),
        ("P1 point (3:4)".to_string(), pts(1, &[vec![3, 4]])),
        ("P1 two points".to_string(), pts(1, &[vec![1, 0], vec![1, 2]])),
        ("P2 point (1:2:0)".to_string(), pts(2, &[vec![1, 2, 0]])),
        (
            "P2 three coordinate points".to_string(),
            pts(2, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
        ),
        (
            "P2 four points".to_string(),
            pts(2, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]]),
        ),
    ];
    let fat = SchemeSpec::from_points(
        2,
        vec![FatPoint::new(vec![1.into(), 1.into(), 0.into()], 2).expect("valid")],
    )
    .expect("valid");
    out.push(("P2 double point (1:1:0)".to_string(), fat));
    let mut conic = SchemeSpec::empty(2);
    conic
        .add_hypersurface(HomogeneousForm::from_integers(2, 2, &[1, 0, 0, 0, 0, -1]).expect("valid"))
        .expect("valid");
    out.push(("P2 conic x0^2 - x2^2".to_string(), conic));
    out
}

fn tag(mut reports: Vec<BoundReport>, instance: &str) -> Vec<BoundReport> {
    for r in &mut reports {
        if let serde_json::Value::Object(m) = &mut r.inputs {
            m.insert("instance".into(), json!(instance));
        }
    }
    reports
}

/// Runs every checker on the standard family. Instances whose
/// preconditions fail at a given degree (for example too few sections to
/// separate the points) are skipped.
pub fn standard_suite(cfg: &SuiteConfig) -> Result<Vec<BoundReport>> {
    let mut out = Vec::new();
    let skip = |e: &Error| {
        matches!(
            e,
            Error::DegreeTooSmall { .. } | Error::Precondition(_) | Error::InsufficientDegree { .. }
        )
    };
    for (name, x) in standard_schemes() {
        let min_d = x.hypersurfaces().iter().map(HomogeneousForm::degree).max().unwrap_or(0);
        for d in min_d..=cfg.max_degree {
            out.extend(tag(check_al_hilbert(&x, d)?, &name));
            out.extend(tag(vec![check_mlnull(&x, d)?], &name));
            out.extend(tag(check_ar_hilbert_parts23(&x, d)?, &name));
            if x.is_reduced_points() && !x.points().is_empty() {
                match check_ar_hilbert_part1(&x, d) {
                    Ok(r) => out.extend(tag(vec![r], &name)),
                    Err(e) if skip(&e) => {}
                    Err(e) => return Err(e),
                }
                out.extend(tag(vec![check_al_hilbinf(&x, 2, d)?], &name));
            }
        }
    }
    // Nested point sets for the relative orthogonal complement.
    let nested = [
        (vec![vec![1, 0]], vec![vec![1, 0], vec![1, 3]], 1usize),
        (vec![vec![0, 1, 0]], vec![vec![0, 1, 0], vec![1, 1, 1]], 2),
        (
            vec![vec![1, 0, 0], vec![0, 1, 0]],
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 2, 3]],
            2,
        ),
    ];
    for (yp, xp, t) in nested {
        let y = SchemeSpec::reduced_points(t, &yp)?;
        let x = SchemeSpec::reduced_points(t, &xp)?;
        for d in 1..=cfg.max_degree {
            out.push(check_3bew(&y, &x, d)?);
        }
    }
    // Interpolation certificates.
    let pairs = [
        (vec![vec![1, 0]], vec![vec![0, 1]], 1usize, 1usize),
        (
            vec![vec![1, 0, 0], vec![0, 1, 0]],
            vec![vec![0, 0, 1], vec![1, 1, 1]],
            2,
            2,
        ),
        (vec![vec![1, 2, 3]], vec![vec![1, 0, 0], vec![2, 1, 1]], 2, 2),
    ];
    for (yp, xp, t, d) in pairs {
        let y = SchemeSpec::reduced_points(t, &yp)?;
        let x = SchemeSpec::reduced_points(t, &xp)?;
        let r = interpolate(&y, &x, d)?;
        out.push(BoundReport::exact(
            "interpolation_minkowski",
            r.log_norm,
            r.minkowski_rhs,
            r.certificate_holds(),
            json!({"t": t, "d": d, "form": r.form}),
        ));
    }
    // Products of forms.
    let forms = [
        HomogeneousForm::from_integers(1, 1, &[1, -1])?,
        HomogeneousForm::from_integers(1, 3, &[1, 0, 0, 1])?,
        HomogeneousForm::from_integers(2, 2, &[1, -2, 0, 3, 1, -1])?,
        HomogeneousForm::from_integers(2, 1, &[2, 0, -5])?,
    ];
    for f in &forms {
        for g in &forms {
            if f.dimension() == g.dimension() {
                out.extend(check_product_bounds(f, g)?);
            }
        }
    }
    // Arithmetic Bézout on the harness family.
    for (k, (x, y)) in bezout_instances(cfg.seed, cfg.bezout_instances).iter().enumerate() {
        out.push(bezout_check(
            2,
            x,
            y,
            cfg.samples,
            derive_seed(cfg.seed, 100 + k as u64),
            cfg.tolerance_sigma,
        )?);
    }
    // Sharp Bézout on coordinate subspaces.
    let sharp: [(usize, Vec<usize>, HomogeneousForm); 4] = [
        (1, vec![], HomogeneousForm::variable(1, 0)),
        (2, vec![0], HomogeneousForm::variable(2, 1)),
        (2, vec![0], HomogeneousForm::from_integers(2, 2, &[1, -2, 0, 3, 1, -1])?),
        (
            2,
            vec![1, 2],
            HomogeneousForm::from_integers(2, 2, &[2, 1, 1, 0, 0, 3])?,
        ),
    ];
    for (k, (t, j, f)) in sharp.iter().enumerate() {
        out.extend(sharp_bezout_check(
            *t,
            j,
            f,
            cfg.samples,
            derive_seed(cfg.seed, 200 + k as u64),
            cfg.tolerance_sigma,
        )?);
    }
    Ok(out)
}

/// The reports of a suite run whose names mark empirical constants.
pub fn empirical_constants(reports: &[BoundReport]) -> Vec<&BoundReport> {
    reports
        .iter()
        .filter(|r| r.name.starts_with("empirical_constant") || r.name == "sharp_bezout_constant")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let reports = standard_suite(&SuiteConfig::default()).unwrap();
        let failed: Vec<_> = reports.iter().filter(|r| r.failed()).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        let consts = empirical_constants(&reports);
        assert!(consts.len() > 20);
    }
}
