//! Heights of rational points, 0-cycles and divisors in P^t.
//!
//! Point heights are exact. Divisor heights use
//! h(div f) = D·σ_t + ∫_{P^t} log(|f(z)|/‖z‖^D) dμ, with the integral
//! estimated by Monte Carlo over the unit sphere of C^{t+1}.

pub mod bezout;
pub mod transcendence;

use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{gcd_all, ln_int, q_to_f64, Z};
use crate::forms::{stoll_number_or_zero, HomogeneousForm};

pub use bezout::{bezout_check, bezout_instances, sharp_bezout_check, Cycle};
pub use transcendence::{random_theta, transcendence_profile, TranscendenceProfile};

/// Samples per independent random stream.
const CHUNK: u64 = 1 << 14;

/// A height value, exact or estimated.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightEstimate {
    pub value: f64,
    /// Zero for exact values.
    pub stderr: f64,
    /// Zero for exact values.
    pub samples: u64,
    pub exact: bool,
    pub seed: Option<u64>,
    /// Set when the input had to be divided by its content.
    pub normalized_input: bool,
}

impl HeightEstimate {
    pub fn exact(value: f64) -> Self {
        HeightEstimate {
            value,
            stderr: 0.0,
            samples: 0,
            exact: true,
            seed: None,
            normalized_input: false,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "value": self.value,
            "stderr": self.stderr,
            "samples": self.samples,
            "exact": self.exact,
            "seed": self.seed,
        });
        if self.normalized_input {
            v["warning"] = json!("input was not primitive; content divided out");
        }
        v
    }
}

/// log ‖v‖₂ of the primitive vector on the line through v.
pub fn point_height(v: &[Z]) -> Result<HeightEstimate> {
    if v.iter().all(Zero::is_zero) {
        return Err(Error::Domain("the zero vector is not a projective point".into()));
    }
    let g = gcd_all(v.iter());
    let norm_sq: Z = v.iter().map(|x| (x / &g) * (x / &g)).sum();
    let mut h = HeightEstimate::exact(0.5 * ln_int(&norm_sq));
    h.normalized_input = g != Z::from(1);
    Ok(h)
}

/// Running count, mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    n: f64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1.0;
        let delta = x - self.mean;
        self.mean += delta / self.n;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Moments) -> Moments {
        if self.n == 0.0 {
            return other;
        }
        if other.n == 0.0 {
            return self;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        Moments {
            n,
            mean: self.mean + delta * other.n / n,
            m2: self.m2 + other.m2 + delta * delta * self.n * other.n / n,
        }
    }
}

/// f64 view of a form, with exponent vectors, for fast sampling.
struct FloatForm {
    t: usize,
    d: usize,
    terms: Vec<(f64, Vec<u32>)>,
}

impl FloatForm {
    fn new(f: &HomogeneousForm) -> Self {
        FloatForm {
            t: f.dimension(),
            d: f.degree(),
            terms: f
                .terms()
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (q_to_f64(c), m.exponents().to_vec()))
                .collect(),
        }
    }

    /// log(|f(z)|/‖z‖^D).
    fn log_ratio(&self, z: &[Complex64], powers: &mut [Vec<Complex64>]) -> f64 {
        for (j, zj) in z.iter().enumerate() {
            let p = &mut powers[j];
            p[0] = Complex64::new(1.0, 0.0);
            for e in 1..=self.d {
                p[e] = p[e - 1] * zj;
            }
        }
        let mut value = Complex64::new(0.0, 0.0);
        for (c, e) in &self.terms {
            let mut term = Complex64::new(*c, 0.0);
            for (j, &k) in e.iter().enumerate() {
                if k > 0 {
                    term *= powers[j][k as usize];
                }
            }
            value += term;
        }
        let norm_sq: f64 = z.iter().map(|x| x.norm_sqr()).sum();
        0.5 * value.norm_sqr().ln() - 0.5 * self.d as f64 * norm_sq.ln()
    }
}

/// A standard complex Gaussian vector in C^{t+1}; its direction is uniform
/// on the unit sphere.
fn gaussian_point<R: Rng>(rng: &mut R, t: usize) -> Vec<Complex64> {
    (0..=t)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Monte Carlo estimate of ∫_{P^t} log(|f(z)|/‖z‖^D) dμ (Fubini–Study).
///
/// Samples are split into fixed chunks, each drawn from its own ChaCha
/// stream of the given seed, and merged in chunk order, so the result does
/// not depend on the number of threads.
pub fn fs_log_integral(f: &HomogeneousForm, samples: u64, seed: u64) -> Result<HeightEstimate> {
    if f.is_zero() {
        return Err(Error::Domain("log|f| is not integrable for the zero form".into()));
    }
    if samples < 2 {
        return Err(Error::Domain(
            "at least two samples are needed for a standard error".into(),
        ));
    }
    let ff = FloatForm::new(f);
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Moments> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut powers = vec![vec![Complex64::new(0.0, 0.0); ff.d + 1]; ff.t + 1];
            let mut m = Moments::default();
            for _ in 0..count {
                let z = gaussian_point(&mut rng, ff.t);
                m.push(ff.log_ratio(&z, &mut powers));
            }
            m
        })
        .collect();
    let total = parts.into_iter().fold(Moments::default(), Moments::merge);
    let variance = total.m2 / (total.n - 1.0);
    Ok(HeightEstimate {
        value: total.mean,
        stderr: (variance / total.n).sqrt(),
        samples,
        exact: false,
        seed: Some(seed),
        normalized_input: false,
    })
}

/// h(div f) = D·σ_t + ∫ log|f| dμ for a primitive integral form.
/// Other nonzero forms are first divided by their content, which is
/// recorded as a warning.
pub fn divisor_height(f: &HomogeneousForm, samples: u64, seed: u64) -> Result<HeightEstimate> {
    if f.is_zero() {
        return Err(Error::Domain("the zero form has no divisor".into()));
    }
    let normalized = !f.is_primitive();
    let g = if normalized { f.primitive() } else { f.clone() };
    let mut h = fs_log_integral(&g, samples, seed)?;
    h.value += g.degree() as f64 * q_to_f64(&stoll_number_or_zero(g.dimension()));
    h.normalized_input = normalized;
    Ok(h)
}

/// Exact height of a hyperplane {a·x = 0}: σ_{t−1} + log ‖a‖ for
/// primitive a.
pub fn hyperplane_height(a: &[Z]) -> Result<HeightEstimate> {
    if a.len() < 2 {
        return Err(Error::Domain("hyperplanes need t ≥ 1".into()));
    }
    let mut h = point_height(a)?;
    h.value += q_to_f64(&stoll_number_or_zero(a.len() - 2));
    Ok(h)
}

/// Exact height of the divisor of a split binary form given its roots,
/// as the sum of the root heights. The product of the factors
/// b·x0 − a·x1 over the roots (a:b) must equal ±f.
pub fn split_divisor_height_oracle(f: &HomogeneousForm, roots: &[Vec<Z>]) -> Result<HeightEstimate> {
    if f.dimension() != 1 {
        return Err(Error::Domain("split oracle is for binary forms".into()));
    }
    if f.is_zero() {
        return Err(Error::Domain("the zero form has no divisor".into()));
    }
    let mut product = HomogeneousForm::constant(1, crate::exact::q(1));
    let mut seen: Vec<Vec<Z>> = Vec::new();
    let mut total = 0.0;
    for r in roots {
        if r.len() != 2 || r.iter().all(Zero::is_zero) {
            return Err(Error::Factorization(format!("invalid root {r:?}")));
        }
        let g = gcd_all(r.iter());
        let mut p: Vec<Z> = r.iter().map(|x| x / &g).collect();
        if p[0].is_negative() || (p[0].is_zero() && p[1].is_negative()) {
            p = p.into_iter().map(|x| -x).collect();
        }
        if seen.contains(&p) {
            return Err(Error::Factorization("repeated root: form is not squarefree".into()));
        }
        let factor = HomogeneousForm::linear(&[p[1].clone(), -p[0].clone()]);
        product = crate::forms::form_product(&product, &factor)?;
        total += point_height(&p)?.value;
        seen.push(p);
    }
    let target = f.primitive();
    if product != target && product.scale(&crate::exact::q(-1)) != target {
        return Err(Error::Factorization("the roots do not multiply out to f".into()));
    }
    let mut h = HeightEstimate::exact(total);
    h.normalized_input = !f.is_primitive();
    Ok(h)
}

/// SplitMix64 step, used to derive independent sub-seeds.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The k-th sub-seed of `seed`.
pub fn derive_seed(seed: u64, k: u64) -> u64 {
    splitmix64(seed ^ splitmix64(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::z;

    fn zv(v: &[i64]) -> Vec<Z> {
        v.iter().map(|&x| z(x)).collect()
    }

    #[test]
    fn point_heights() {
        assert_eq!(point_height(&zv(&[1, 0])).unwrap().value, 0.0);
        assert!((point_height(&zv(&[3, 4])).unwrap().value - 5f64.ln()).abs() < 1e-15);
        assert!((point_height(&zv(&[1, 1, 1])).unwrap().value - 0.5 * 3f64.ln()).abs() < 1e-15);
        let h = point_height(&zv(&[6, 8])).unwrap();
        assert!(h.normalized_input && (h.value - 5f64.ln()).abs() < 1e-15);
        assert!(point_height(&zv(&[0, 0])).is_err());
    }

    #[test]
    fn beta_law_integrals() {
        let x0 = HomogeneousForm::variable(1, 0);
        let h = fs_log_integral(&x0, 200_000, 1).unwrap();
        assert!((h.value + 0.5).abs() < 3.0 * h.stderr, "{h:?}");
        let x0 = HomogeneousForm::variable(2, 0);
        let h = fs_log_integral(&x0, 200_000, 2).unwrap();
        assert!((h.value + 0.75).abs() < 3.0 * h.stderr, "{h:?}");
        let diff = HomogeneousForm::from_integers(1, 1, &[1, -1]).unwrap();
        let h = fs_log_integral(&diff, 200_000, 3).unwrap();
        assert!((h.value - (0.5 * 2f64.ln() - 0.5)).abs() < 3.0 * h.stderr, "{h:?}");
    }

    #[test]
    fn seed_determinism_and_scaling() {
        let f = HomogeneousForm::from_integers(2, 2, &[1, 2, 0, -1, 0, 3]).unwrap();
        let a = fs_log_integral(&f, 40_000, 9).unwrap();
        let b = fs_log_integral(&f, 40_000, 9).unwrap();
        assert_eq!(a, b);
        let c = fs_log_integral(&f, 160_000, 9).unwrap();
        let ratio = a.stderr / c.stderr;
        assert!((1.8..2.2).contains(&ratio), "{ratio}");
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let d = single.install(|| fs_log_integral(&f, 40_000, 9).unwrap());
        assert_eq!(a, d);
    }

    #[test]
    fn divisor_heights() {
        let h = divisor_height(&HomogeneousForm::variable(1, 0), 100_000, 4).unwrap();
        assert!(h.value.abs() < 3.0 * h.stderr);
        let h = divisor_height(&HomogeneousForm::variable(2, 0), 100_000, 5).unwrap();
        assert!((h.value - 0.5).abs() < 3.0 * h.stderr);
        let x0x1 = HomogeneousForm::from_integers(1, 2, &[0, 1, 0]).unwrap();
        let h = divisor_height(&x0x1, 100_000, 6).unwrap();
        assert!(h.value.abs() < 3.0 * h.stderr);
        let two_x0 = HomogeneousForm::from_integers(1, 1, &[2, 0]).unwrap();
        assert!(divisor_height(&two_x0, 1000, 1).unwrap().normalized_input);
        assert!(divisor_height(&HomogeneousForm::zero(1, 1), 1000, 1).is_err());
    }

    #[test]
    fn split_oracle() {
        let x0 = HomogeneousForm::variable(1, 0);
        assert_eq!(split_divisor_height_oracle(&x0, &[zv(&[0, 1])]).unwrap().value, 0.0);
        // x0(x0 − x1) = x0² − x0x1
        let f = HomogeneousForm::from_integers(1, 2, &[1, -1, 0]).unwrap();
        let h = split_divisor_height_oracle(&f, &[zv(&[0, 1]), zv(&[1, 1])]).unwrap();
        assert!((h.value - 0.5 * 2f64.ln()).abs() < 1e-15);
        // (x0 − 2x1)(2x0 − x1) = 2x0² − 5x0x1 + 2x1²
        let f = HomogeneousForm::from_integers(1, 2, &[2, -5, 2]).unwrap();
        let h = split_divisor_height_oracle(&f, &[zv(&[2, 1]), zv(&[1, 2])]).unwrap();
        assert!((h.value - 5f64.ln()).abs() < 1e-15);
        assert!(matches!(
            split_divisor_height_oracle(&f, &[zv(&[2, 1]), zv(&[1, 3])]),
            Err(Error::Factorization(_))
        ));
        let mc = divisor_height(&HomogeneousForm::from_integers(1, 2, &[1, -1, 0]).unwrap(), 200_000, 8).unwrap();
        assert!((mc.value - 0.5 * 2f64.ln()).abs() < 3.0 * mc.stderr);
    }

    #[test]
    fn hyperplanes() {
        assert!((hyperplane_height(&zv(&[1, 0, 0])).unwrap().value - 0.5).abs() < 1e-15);
        assert_eq!(hyperplane_height(&zv(&[0, 1])).unwrap().value, 0.0);
    }
}
