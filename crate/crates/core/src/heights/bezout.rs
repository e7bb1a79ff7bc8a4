//! Arithmetic Bézout checks on cycles whose heights are computable:
//! the whole space, rational points, hyperplanes, and divisors of forms.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{gcd_all, q_to_f64, Z};
use crate::forms::{monomials, stoll_number_or_zero, HomogeneousForm};
use crate::report::BoundReport;
use crate::schemes::forms_coprime;

use super::{derive_seed, divisor_height, fs_log_integral, hyperplane_height, point_height, HeightEstimate};

/// An effective cycle in P^t with a computable height.
#[derive(Clone, Debug, PartialEq)]
pub enum Cycle {
    /// P^t itself, of height σ_t.
    Ambient,
    /// A sum of rational points (codimension t).
    Points(Vec<Vec<Z>>),
    /// A sum of hyperplanes {a·x = 0}, given by their normals.
    Hyperplanes(Vec<Vec<Z>>),
    /// The divisor of a form, with Monte Carlo height.
    Divisor(HomogeneousForm),
}

fn normalize(v: &[Z]) -> Result<Vec<Z>> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::Domain("zero vector".into()));
    }
    let g = gcd_all(v.iter());
    let mut out: Vec<Z> = v.iter().map(|x| x / &g).collect();
    let lead = out.iter().find(|x| !x.is_zero()).expect("nonzero");
    if lead.is_negative() {
        out = out.into_iter().map(|x| -x).collect();
    }
    Ok(out)
}

fn dot(a: &[Z], b: &[Z]) -> Z {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cross(a: &[Z], b: &[Z]) -> Vec<Z> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

impl Cycle {
    /// Codimension in P^t; the empty cycle counts as codimension t + 1.
    pub fn codimension(&self, t: usize) -> usize {
        match self {
            Cycle::Ambient => 0,
            Cycle::Points(p) if p.is_empty() => t + 1,
            Cycle::Points(_) => t,
            Cycle::Hyperplanes(_) | Cycle::Divisor(_) => 1,
        }
    }

    pub fn degree(&self) -> u64 {
        match self {
            Cycle::Ambient => 1,
            Cycle::Points(p) => p.len() as u64,
            Cycle::Hyperplanes(h) => h.len() as u64,
            Cycle::Divisor(f) => f.degree() as u64,
        }
    }

    /// Height; exact except for divisors of forms.
    pub fn height(&self, t: usize, samples: u64, seed: u64) -> Result<HeightEstimate> {
        match self {
            Cycle::Ambient => Ok(HeightEstimate::exact(q_to_f64(&stoll_number_or_zero(t)))),
            Cycle::Points(p) => {
                let mut total = 0.0;
                for v in p {
                    total += point_height(v)?.value;
                }
                Ok(HeightEstimate::exact(total))
            }
            Cycle::Hyperplanes(h) => {
                let mut total = 0.0;
                for a in h {
                    total += hyperplane_height(a)?.value;
                }
                Ok(HeightEstimate::exact(total))
            }
            Cycle::Divisor(f) => divisor_height(f, samples, seed),
        }
    }

    fn validate(&self, t: usize) -> Result<()> {
        let check = |v: &Vec<Z>| {
            if v.len() != t + 1 {
                Err(Error::Shape(format!("expected {} coordinates, got {}", t + 1, v.len())))
            } else if v.iter().all(Zero::is_zero) {
                Err(Error::Domain("zero vector in a cycle".into()))
            } else {
                Ok(())
            }
        };
        match self {
            Cycle::Ambient => Ok(()),
            Cycle::Points(p) | Cycle::Hyperplanes(p) => p.iter().try_for_each(check),
            Cycle::Divisor(f) if f.dimension() != t => Err(Error::Shape("divisor on another space".into())),
            Cycle::Divisor(f) if f.is_zero() || f.degree() == 0 => {
                Err(Error::Domain("a divisor needs a nonconstant nonzero form".into()))
            }
            Cycle::Divisor(_) => Ok(()),
        }
    }

    /// Normals of the linear components, if the cycle is a sum of
    /// hyperplanes.
    fn linear_components(&self) -> Option<Vec<Vec<Z>>> {
        match self {
            Cycle::Hyperplanes(h) => Some(h.clone()),
            Cycle::Divisor(f) if f.degree() == 1 => f.integer_coefficients().map(|c| vec![c]),
            _ => None,
        }
    }

    /// A form cutting out a codimension-one cycle on P^1 or P^2.
    fn as_form(&self, t: usize) -> Option<HomogeneousForm> {
        match self {
            Cycle::Divisor(f) => Some(f.clone()),
            Cycle::Hyperplanes(h) => {
                let mut prod = HomogeneousForm::constant(t, crate::exact::q(1));
                for a in h {
                    prod = crate::forms::form_product(&prod, &HomogeneousForm::linear(a)).ok()?;
                }
                Some(prod)
            }
            _ => None,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Cycle::Ambient => "ambient",
            Cycle::Points(_) => "points",
            Cycle::Hyperplanes(_) => "hyperplanes",
            Cycle::Divisor(_) => "divisor",
        }
    }

    pub fn to_json(&self) -> Value {
        let vecs = |v: &Vec<Vec<Z>>| -> Vec<Vec<String>> {
            v.iter().map(|p| p.iter().map(|x| x.to_string()).collect()).collect()
        };
        match self {
            Cycle::Ambient => json!({"kind": "ambient"}),
            Cycle::Points(p) => json!({"kind": "points", "points": vecs(p)}),
            Cycle::Hyperplanes(h) => json!({"kind": "hyperplanes", "normals": vecs(h)}),
            Cycle::Divisor(f) => json!({"kind": "divisor", "form": f}),
        }
    }
}

/// Whether a point lies on a codimension-one cycle.
fn on_divisor(c: &Cycle, t: usize, p: &[Z]) -> bool {
    c.as_form(t).is_some_and(|f| f.eval_z(p).is_zero())
}

/// The intersection cycle of two properly intersecting cycles.
pub fn intersect(t: usize, x: &Cycle, y: &Cycle) -> Result<Cycle> {
    x.validate(t)?;
    y.validate(t)?;
    match (x, y) {
        (Cycle::Ambient, c) | (c, Cycle::Ambient) => return Ok(c.clone()),
        _ => {}
    }
    let (p, q) = (x.codimension(t), y.codimension(t));
    if p + q > t + 1 {
        return Err(Error::Precondition(format!(
            "codimensions {p} + {q} exceed t + 1 = {}",
            t + 1
        )));
    }
    let not_proper = || Error::Precondition("the cycles do not intersect properly".into());
    if p + q == t + 1 {
        // The intersection must be empty.
        let meets = match (x, y) {
            (Cycle::Points(a), Cycle::Points(b)) => {
                let na: Vec<_> = a.iter().map(|v| normalize(v)).collect::<Result<_>>()?;
                b.iter()
                    .map(|v| normalize(v))
                    .collect::<Result<Vec<_>>>()?
                    .iter()
                    .any(|v| na.contains(v))
            }
            (Cycle::Points(a), d) | (d, Cycle::Points(a)) => a.iter().any(|v| on_divisor(d, t, v)),
            (a, b) => {
                // Two codimension-one cycles on P^1.
                let (f, g) = (a.as_form(t).expect("codim 1"), b.as_form(t).expect("codim 1"));
                !forms_coprime(&f, &g)?
            }
        };
        return if meets {
            Err(not_proper())
        } else {
            Ok(Cycle::Points(Vec::new()))
        };
    }
    if t != 2 {
        return Err(Error::Domain(
            "positive-dimensional intersections are implemented in P^2 only".into(),
        ));
    }
    let (la, lb) = match (x.linear_components(), y.linear_components()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::Domain(format!(
                "intersection of {} and {} needs linear components",
                x.label(),
                y.label()
            )))
        }
    };
    let mut points = Vec::new();
    for a in &la {
        for b in &lb {
            let c = cross(a, b);
            if c.iter().all(Zero::is_zero) {
                return Err(not_proper());
            }
            points.push(normalize(&c)?);
        }
    }
    debug_assert!(points.iter().all(|p| la.iter().chain(&lb).any(|a| dot(a, p).is_zero())));
    Ok(Cycle::Points(points))
}

/// h(X·Y) ≤ deg Y·h(X) + deg X·h(Y) + ((t+1−p−q)/2)·log 2·deg X·deg Y
/// for properly intersecting X, Y of codimensions p, q.
///
/// With only exact heights the comparison is made in floating point
/// with a relative rounding guard of 1e-12; with Monte Carlo heights the
/// tolerance is `tolerance_sigma` times the combined standard error.
pub fn bezout_check(
    t: usize,
    x: &Cycle,
    y: &Cycle,
    samples: u64,
    seed: u64,
    tolerance_sigma: f64,
) -> Result<BoundReport> {
    let xy = intersect(t, x, y)?;
    let hx = x.height(t, samples, derive_seed(seed, 0))?;
    let hy = y.height(t, samples, derive_seed(seed, 1))?;
    let hxy = xy.height(t, samples, derive_seed(seed, 2))?;
    let (p, q) = (x.codimension(t), y.codimension(t));
    let (dx, dy) = (x.degree() as f64, y.degree() as f64);
    let excess = (t + 1 - p - q) as f64;
    let rhs = dy * hx.value + dx * hy.value + 0.5 * excess * std::f64::consts::LN_2 * dx * dy;
    let inputs = json!({
        "t": t,
        "x": x.to_json(),
        "y": y.to_json(),
        "intersection": xy.to_json(),
        "h_x": hx.to_json(),
        "h_y": hy.to_json(),
        "h_xy": hxy.to_json(),
    });
    let name = "arithmetic_bezout";
    if hx.exact && hy.exact && hxy.exact {
        let guard = 1e-12 * (1.0 + rhs.abs());
        Ok(BoundReport::exact(
            name,
            hxy.value,
            rhs,
            hxy.value <= rhs + guard,
            inputs,
        ))
    } else {
        let combined = (hxy.stderr.powi(2) + (dy * hx.stderr).powi(2) + (dx * hy.stderr).powi(2)).sqrt();
        Ok(BoundReport::with_tolerance(
            name,
            hxy.value,
            rhs,
            tolerance_sigma * combined,
            inputs,
        ))
    }
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Z> {
    loop {
        let v: Vec<i64> = (0..n).map(|_| rng.random_range(-range..=range)).collect();
        if v.iter().any(|&x| x != 0) {
            return normalize(&v.iter().map(|&x| Z::from(x)).collect::<Vec<_>>()).expect("nonzero");
        }
    }
}

/// Seeded family of proper intersection instances in P^2, cycling through
/// line·line, linear divisor·line, two lines·line, line·points (disjoint)
/// and ambient·cycle.
pub fn bezout_instances(seed: u64, count: usize) -> Vec<(Cycle, Cycle)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let k = out.len() % 5;
        let a = random_vector(&mut rng, 3, 3);
        let b = random_vector(&mut rng, 3, 3);
        let c = random_vector(&mut rng, 3, 3);
        let candidate = match k {
            0 => (Cycle::Hyperplanes(vec![a]), Cycle::Hyperplanes(vec![b])),
            1 => (Cycle::Divisor(HomogeneousForm::linear(&a)), Cycle::Hyperplanes(vec![b])),
            2 => (Cycle::Hyperplanes(vec![a, b]), Cycle::Hyperplanes(vec![c])),
            3 => (Cycle::Hyperplanes(vec![a]), Cycle::Points(vec![b, c])),
            _ => {
                if rng.random_bool(0.5) {
                    (Cycle::Ambient, Cycle::Points(vec![a, b]))
                } else {
                    (Cycle::Hyperplanes(vec![a]), Cycle::Ambient)
                }
            }
        };
        if intersect(2, &candidate.0, &candidate.1).is_ok() {
            out.push(candidate);
        }
    }
    out
}

/// The part of f free of the variables x_j, j ∈ J, which is the L²
/// orthogonal projection of f off I_X(D) for X = {x_j = 0, j ∈ J}.
pub fn coordinate_projection(f: &HomogeneousForm, vanishing: &[usize]) -> Result<HomogeneousForm> {
    let coeffs = monomials(f.dimension(), f.degree())
        .iter()
        .zip(f.coefficients())
        .map(|(m, c)| {
            if vanishing.iter().all(|&j| m.exponents()[j] == 0) {
                c.clone()
            } else {
                crate::exact::q(0)
            }
        })
        .collect();
    HomogeneousForm::from_dense(f.dimension(), f.degree(), coeffs)
}

/// Sharp Bézout on a coordinate subspace X = {x_j = 0, j ∈ J} ≅ P^{t−p}.
///
/// Reports, in order:
/// * the empirical constant ĉ = (h(X·div f) − D·σ_{t−p} − log|f_X^⊥|)/D,
///   asserted ≤ 10;
/// * ∫_X log|f| − ∫_{P^t} log|f| ≤ D·(σ_{p+1} + σ_{2t+1} − σ_{t−p} − σ_{t−1});
/// * ∫_{P^t} log|f_X^⊥| ≤ log|f_X^⊥|.
///
/// The last two are asserted within `tolerance_sigma` standard errors.
pub fn sharp_bezout_check(
    t: usize,
    vanishing: &[usize],
    f: &HomogeneousForm,
    samples: u64,
    seed: u64,
    tolerance_sigma: f64,
) -> Result<Vec<BoundReport>> {
    if f.dimension() != t {
        return Err(Error::Shape("form lives on another space".into()));
    }
    if t == 0 {
        return Err(Error::Domain("sharp Bézout needs t ≥ 1".into()));
    }
    let mut j: Vec<usize> = vanishing.to_vec();
    j.sort_unstable();
    j.dedup();
    if j.len() != vanishing.len() || j.iter().any(|&i| i > t) || j.len() > t {
        return Err(Error::Domain(format!("invalid coordinate subspace {vanishing:?}")));
    }
    let d = f.degree();
    if d == 0 {
        return Err(Error::Domain("sharp Bézout needs D ≥ 1".into()));
    }
    let p = j.len();
    let restricted = f.restrict_to_coordinate_subspace(&j)?;
    if restricted.is_zero() {
        return Err(Error::Precondition("f vanishes on X".into()));
    }
    let perp = coordinate_projection(f, &j)?;
    let log_perp = perp.l2_norm().log_norm;
    let on_x = fs_log_integral(&restricted, samples, derive_seed(seed, 0))?;
    let on_p = fs_log_integral(f, samples, derive_seed(seed, 1))?;
    let perp_on_p = fs_log_integral(&perp, samples, derive_seed(seed, 2))?;
    let sigma = |k: usize| q_to_f64(&stoll_number_or_zero(k));
    let df = d as f64;
    let h_x = sigma(t - p);
    let lhs = df * h_x + on_x.value;
    let c_hat = (lhs - df * h_x - log_perp) / df;
    let base = json!({
        "t": t,
        "vanishing": j,
        "d": d,
        "form": f,
        "h_x_div_f": lhs,
        "log_norm_perp": log_perp,
        "integral_on_x": on_x.to_json(),
        "integral_on_p": on_p.to_json(),
        "c_hat": c_hat,
    });
    let distance_const = sigma(p + 1) + sigma(2 * t + 1) - sigma(t - p) - sigma(t - 1);
    let distance = on_x.value - on_p.value;
    let distance_err = (on_x.stderr.powi(2) + on_p.stderr.powi(2)).sqrt();
    Ok(vec![
        BoundReport::with_tolerance(
            "sharp_bezout_constant",
            c_hat,
            10.0,
            tolerance_sigma * on_x.stderr / df,
            base.clone(),
        ),
        BoundReport::with_tolerance(
            "algebraic_distance",
            distance,
            df * distance_const,
            tolerance_sigma * distance_err,
            base.clone(),
        ),
        BoundReport::with_tolerance(
            "log_integral_below_norm",
            perp_on_p.value,
            log_perp,
            tolerance_sigma * perp_on_p.stderr,
            base,
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::z;

    fn zv(v: &[i64]) -> Vec<Z> {
        v.iter().map(|&x| z(x)).collect()
    }

    #[test]
    fn two_coordinate_lines() {
        let x = Cycle::Divisor(HomogeneousForm::variable(2, 0));
        let y = Cycle::Divisor(HomogeneousForm::variable(2, 1));
        assert_eq!(intersect(2, &x, &y).unwrap(), Cycle::Points(vec![zv(&[0, 0, 1])]));
        let r = bezout_check(2, &x, &y, 100_000, 1, 3.0).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.lhs, 0.0);
        assert!((r.rhs - (1.0 + 0.5 * 2f64.ln())).abs() < 0.02);
        let exact = bezout_check(
            2,
            &Cycle::Hyperplanes(vec![zv(&[1, 0, 0])]),
            &Cycle::Hyperplanes(vec![zv(&[0, 1, 0])]),
            0,
            0,
            3.0,
        )
        .unwrap();
        assert!(exact.holds && (exact.rhs - (1.0 + 0.5 * 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn ambient_and_improper() {
        let x = Cycle::Hyperplanes(vec![zv(&[1, 2, 2])]);
        let r = bezout_check(2, &x, &Cycle::Ambient, 0, 0, 3.0).unwrap();
        assert!(r.holds && r.slack > 0.0);
        let same = bezout_check(2, &x, &Cycle::Hyperplanes(vec![zv(&[-1, -2, -2])]), 0, 0, 3.0);
        assert!(matches!(same, Err(Error::Precondition(_))));
        let pts = Cycle::Points(vec![zv(&[1, 0, 0])]);
        assert!(matches!(
            bezout_check(2, &pts, &pts, 0, 0, 3.0),
            Err(Error::Precondition(_))
        ));
        let on_line = Cycle::Points(vec![zv(&[2, -1, 0])]);
        assert!(matches!(intersect(2, &x, &on_line), Err(Error::Precondition(_))));
        let off_line = Cycle::Points(vec![zv(&[1, 1, 1])]);
        assert_eq!(intersect(2, &x, &off_line).unwrap(), Cycle::Points(vec![]));
    }

    #[test]
    fn harness_family_holds() {
        let inst = bezout_instances(11, 10);
        assert_eq!(inst.len(), 10);
        for (k, (x, y)) in inst.iter().enumerate() {
            let r = bezout_check(2, x, y, 20_000, k as u64, 3.0).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn sharp_bezout_examples() {
        let r = sharp_bezout_check(1, &[], &HomogeneousForm::variable(1, 0), 100_000, 3, 3.0).unwrap();
        assert!(r.iter().all(|b| b.holds), "{r:?}");
        // ĉ = (−½ − ½ log ½)/1
        let expected = -0.5 + 0.5 * 2f64.ln();
        assert!((r[0].lhs - expected).abs() < 0.01);
        let r = sharp_bezout_check(2, &[0], &HomogeneousForm::variable(2, 1), 100_000, 4, 3.0).unwrap();
        assert!(r.iter().all(|b| b.holds), "{r:?}");
        let err = sharp_bezout_check(2, &[1], &HomogeneousForm::variable(2, 1), 1000, 4, 3.0);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn projection_drops_ideal_terms() {
        let f = HomogeneousForm::from_integers(2, 2, &[1, 2, 3, 4, 5, 6]).unwrap();
        let p = coordinate_projection(&f, &[0]).unwrap();
        let r = f.restrict_to_coordinate_subspace(&[0]).unwrap();
        assert_eq!(
            p.terms().filter(|(_, c)| !c.is_zero()).count(),
            r.terms().filter(|(_, c)| !c.is_zero()).count()
        );
        let diff = f.sub(&p).unwrap();
        assert_eq!(crate::forms::l2_inner_product(&diff, &p).unwrap(), crate::exact::q(0));
    }
}
