//! Small values of integral binary forms at a point θ ∈ P^1(C).
//!
//! For a norm budget H, the search looks for integral f of degree D with
//! log|f|_{L²} ≤ H and −log(|f(θ)|/‖θ‖^D) as large as possible, by LLL on
//! the coefficient lattice with Gram diag(|X^I|²) + K²·Re(θ^I·conj θ^J)
//! for K = 2^4, 2^5, ..., each scale warm-started from the previous
//! reduced basis. Every candidate is evaluated exactly at the dyadic
//! point θ.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{f64_to_q, ln_q, q_to_f64, Q, Z};
use crate::forms::{l2_gram_diagonal, monomials, stoll_number_or_zero, HomogeneousForm};
use crate::lattice::lll::lll_gram_integral;

/// Base exponents of the scaling grid K = 2^j. The sweep continues past
/// the end while some reduced vector still fits the budget, up to
/// [`scale_cap`].
pub const SCALE_EXPONENTS: std::ops::RangeInclusive<u32> = 4..=60;

/// Bits of precision kept below K when rounding θ^I.
const EXTRA_BITS: u32 = 24;

/// Largest j tried: the useful K is about e^{H + achieved}, and achieved
/// stays below H + σ₁D²/2 + HD in practice.
pub fn scale_cap(h: f64, rhs_paper: f64) -> u32 {
    let bound = ((2.0 * h.max(0.0) + rhs_paper) / std::f64::consts::LN_2).ceil() as u32 + 8;
    bound.max(*SCALE_EXPONENTS.end())
}

fn mat_mul_z(a: &[Vec<Z>], b: &[Vec<Z>]) -> Vec<Vec<Z>> {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, r)| x * &r[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Outcome of one search.
#[derive(Clone, Debug)]
pub struct TranscendenceProfile {
    pub theta: [Complex64; 2],
    pub d: usize,
    pub h: f64,
    /// −log(|f(θ)|/‖θ‖^D) for the best witness; +∞ if f(θ) = 0.
    pub achieved: f64,
    /// σ₁·D²/2 + H·D.
    pub rhs_paper: f64,
    pub ratio: f64,
    pub witness_form: HomogeneousForm,
    pub witness_log_norm: f64,
    /// False when some integral form within the budget vanishes at θ.
    pub generic: bool,
    /// The j with K = 2^j that produced the witness.
    pub scale_exponent: u32,
}

impl TranscendenceProfile {
    pub fn to_json(&self) -> Value {
        json!({
            "theta": self.theta.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "D": self.d,
            "H": self.h,
            "achieved": if self.achieved.is_finite() { json!(self.achieved) } else { json!("inf") },
            "rhs_paper": self.rhs_paper,
            "ratio": self.ratio,
            "witness_form": self.witness_form,
            "witness_log_norm": self.witness_log_norm,
            "generic": self.generic,
            "scale_exponent": self.scale_exponent,
        })
    }

    /// Row for the (D, H, achieved, rhs_paper, ratio) table.
    pub fn csv_row(&self) -> [String; 5] {
        [
            self.d.to_string(),
            self.h.to_string(),
            self.achieved.to_string(),
            self.rhs_paper.to_string(),
            self.ratio.to_string(),
        ]
    }
}

/// A seeded uniformly random point on the unit sphere of C².
pub fn random_theta(seed: u64) -> [Complex64; 2] {
    use rand::Rng;
    use rand_distr::StandardNormal;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = [Complex64::default(); 2];
    for c in z.iter_mut() {
        *c = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    }
    let n = (z[0].norm_sqr() + z[1].norm_sqr()).sqrt();
    [z[0] / n, z[1] / n]
}

/// Exact complex rational.
#[derive(Clone, Debug, PartialEq)]
struct CQ {
    re: Q,
    im: Q,
}

impl CQ {
    fn from_f64(z: Complex64) -> Self {
        CQ {
            re: f64_to_q(z.re),
            im: f64_to_q(z.im),
        }
    }

    fn one() -> Self {
        CQ {
            re: Q::one(),
            im: Q::zero(),
        }
    }

    fn mul(&self, o: &CQ) -> CQ {
        CQ {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

/// Exact (Re, Im) of f(θ) at the dyadic point θ, computed independently
/// of the search.
pub fn exact_value_at(f: &HomogeneousForm, theta: [Complex64; 2]) -> (Q, Q) {
    let t0 = CQ::from_f64(theta[0]);
    let t1 = CQ::from_f64(theta[1]);
    // Coefficient k belongs to x0^{D−k}·x1^k.
    let mut acc = CQ {
        re: Q::zero(),
        im: Q::zero(),
    };
    let mut p0 = CQ::one();
    let coeffs: Vec<&Q> = f.coefficients().iter().collect();
    let d = f.degree();
    let mut pow1 = vec![CQ::one()];
    for k in 1..=d {
        pow1.push(pow1[k - 1].mul(&t1));
    }
    for k in (0..=d).rev() {
        let term = pow1[k].mul(&p0);
        acc.re += coeffs[k] * &term.re;
        acc.im += coeffs[k] * &term.im;
        p0 = p0.mul(&t0);
    }
    (acc.re, acc.im)
}

struct Candidate {
    achieved: f64,
    form_coeffs: Vec<Z>,
    log_norm: f64,
    zero: bool,
    scale_exponent: u32,
}

/// Searches integral binary forms of degree D with log|f|_{L²} ≤ H for a
/// small value at θ.
pub fn transcendence_profile(theta: [Complex64; 2], d: usize, h: f64) -> Result<TranscendenceProfile> {
    if d == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    if !h.is_finite() {
        return Err(Error::Domain("norm budget must be finite".into()));
    }
    let t0 = CQ::from_f64(theta[0]);
    let t1 = CQ::from_f64(theta[1]);
    if t0.is_zero() && t1.is_zero() {
        return Err(Error::Domain("θ must be nonzero".into()));
    }
    let mons = monomials(1, d);
    let values: Vec<CQ> = mons
        .iter()
        .map(|m| {
            let e = m.exponents();
            let mut v = CQ::one();
            for _ in 0..e[0] {
                v = v.mul(&t0);
            }
            for _ in 0..e[1] {
                v = v.mul(&t1);
            }
            v
        })
        .collect();
    let theta_norm_pow = {
        let n = t0.norm_sq() + t1.norm_sq();
        crate::exact::q_pow(&n, d as u64)
    };
    let weights = l2_gram_diagonal(1, d);
    let n = mons.len();
    // θ^I = (value_re + i·value_im) / common with integer numerators.
    let common = crate::exact::denom_lcm(
        &values
            .iter()
            .flat_map(|v| [v.re.clone(), v.im.clone()])
            .collect::<Vec<_>>(),
    );
    let int_values: Vec<(Z, Z)> = values
        .iter()
        .map(|v| {
            let c = Q::from_integer(common.clone());
            ((&v.re * &c).to_integer(), (&v.im * &c).to_integer())
        })
        .collect();
    let log_scale = 2.0 * crate::exact::ln_int(&common) + ln_q(&theta_norm_pow);

    let evaluate = |c: &[Z], j: u32| -> Option<Candidate> {
        if c.iter().all(Zero::is_zero) {
            return None;
        }
        let sq: Q = c.iter().zip(&weights).map(|(x, w)| Q::from_integer(x * x) * w).sum();
        let log_norm = 0.5 * ln_q(&sq);
        if log_norm > h {
            return None;
        }
        let (mut re, mut im) = (Z::zero(), Z::zero());
        for (x, (vr, vi)) in c.iter().zip(&int_values) {
            if !x.is_zero() {
                re += x * vr;
                im += x * vi;
            }
        }
        let abs_sq = &re * &re + &im * &im;
        let zero = abs_sq.is_zero();
        let achieved = if zero {
            f64::INFINITY
        } else {
            -0.5 * (crate::exact::ln_int(&abs_sq) - log_scale)
        };
        Some(Candidate {
            achieved,
            form_coeffs: c.to_vec(),
            log_norm,
            zero,
            scale_exponent: j,
        })
    };

    let sigma1 = q_to_f64(&stoll_number_or_zero(1));
    let df = d as f64;
    let rhs_paper = sigma1 * df * df / 2.0 + h * df;

    // Integral Gram at scale K = 2^j: L·2^{2c}·(diag(w) + K²·Re(θ^I conj θ^J))
    // with θ^I rounded to 2^{−(j+c)}.
    let lcm = crate::exact::denom_lcm(&weights);
    let diag: Vec<Z> = weights
        .iter()
        .map(|w| (w * Q::from_integer(lcm.clone() << (2 * EXTRA_BITS))).to_integer())
        .collect();
    let scaled_gram = |j: u32| -> Vec<Vec<Z>> {
        let bits = j + EXTRA_BITS;
        let round = |x: &Q| (x * Q::from_integer(Z::one() << bits)).round().to_integer();
        let re: Vec<Z> = values.iter().map(|v| round(&v.re)).collect();
        let im: Vec<Z> = values.iter().map(|v| round(&v.im)).collect();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut g = &lcm * (&re[a] * &re[b] + &im[a] * &im[b]);
                        if a == b {
                            g += &diag[a];
                        }
                        g
                    })
                    .collect()
            })
            .collect()
    };

    let pick = |best: Option<Candidate>, c: Candidate| match best {
        Some(b) if b.achieved >= c.achieved => Some(b),
        _ => Some(c),
    };
    let mut best: Option<Candidate> = (0..n)
        .map(|i| (0..n).map(|k| Z::from((i == k) as i64)).collect::<Vec<_>>())
        .filter_map(|c| evaluate(&c, 0))
        .fold(None, pick);
    let cap = scale_cap(h, rhs_paper);
    let mut u: Vec<Vec<Z>> = (0..n)
        .map(|i| (0..n).map(|k| Z::from((i == k) as i64)).collect())
        .collect();
    for j in *SCALE_EXPONENTS.start()..=cap {
        let g = crate::lattice::lll::transform_gram_z(&scaled_gram(j), &u);
        let (step, _) = lll_gram_integral(&g, 99, 100);
        u = mat_mul_z(&step, &u);
        let mut candidates: Vec<Vec<Z>> = u.clone();
        for a in 0..n {
            for b in (a + 1)..n {
                candidates.push(u[a].iter().zip(&u[b]).map(|(x, y)| x + y).collect());
                candidates.push(u[a].iter().zip(&u[b]).map(|(x, y)| x - y).collect());
            }
        }
        let mut within_budget = false;
        for c in &candidates {
            if let Some(cand) = evaluate(c, j) {
                within_budget = true;
                best = pick(best, cand);
            }
        }
        let found_zero = best.as_ref().is_some_and(|b| b.zero);
        if found_zero || (!within_budget && j >= *SCALE_EXPONENTS.end()) {
            break;
        }
    }
    let best = best.ok_or(Error::BudgetTooSmall)?;
    let mut form = HomogeneousForm::from_z(1, d, &best.form_coeffs)?;
    if form
        .coefficients()
        .iter()
        .find(|c| !c.is_zero())
        .is_some_and(|c| c < &Q::zero())
    {
        form = form.scale(&Q::from_integer(Z::from(-1)));
    }
    Ok(TranscendenceProfile {
        theta,
        d,
        h,
        achieved: best.achieved,
        rhs_paper,
        ratio: best.achieved / rhs_paper,
        witness_form: form,
        witness_log_norm: best.log_norm,
        generic: !best.zero,
        scale_exponent: best.scale_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_theta_flagged() {
        let p = transcendence_profile([Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], 3, 2.0).unwrap();
        assert!(!p.generic && p.achieved.is_infinite());
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = transcendence_profile([Complex64::new(s, 0.0), Complex64::new(s, 0.0)], 1, 1.0).unwrap();
        assert!(!p.generic);
        let (re, im) = exact_value_at(&p.witness_form, p.theta);
        assert!(re.is_zero() && im.is_zero());
    }

    #[test]
    fn witness_certificate_is_consistent() {
        let theta = random_theta(3);
        let p = transcendence_profile(theta, 6, 4.0).unwrap();
        assert!(p.generic);
        assert!(p.witness_log_norm <= p.h);
        assert!((p.witness_form.l2_norm().log_norm - p.witness_log_norm).abs() < 1e-12);
        let (re, im) = exact_value_at(&p.witness_form, theta);
        let n = crate::exact::q_pow(
            &(CQ::from_f64(theta[0]).norm_sq() + CQ::from_f64(theta[1]).norm_sq()),
            6,
        );
        let direct = -0.5 * ln_q(&((&re * &re + &im * &im) / n));
        assert!((direct - p.achieved).abs() <= 1e-9 * p.achieved.abs());
        assert!(p.achieved > 10.0, "{}", p.achieved);
    }

    #[test]
    fn tiny_budget_rejected() {
        let theta = random_theta(5);
        assert_eq!(
            transcendence_profile(theta, 4, -5.0).unwrap_err(),
            Error::BudgetTooSmall
        );
    }
}
