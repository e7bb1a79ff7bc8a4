//! Homogeneous forms in t+1 variables with exact coefficients, and the
//! metrics the rest of the crate measures them with.
//!
//! Coefficients are stored densely in graded-lex order: for a fixed degree
//! the exponent vectors are sorted lexicographically descending, so
//! `x_0^D` comes first and `x_t^D` last.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, gcd_all, ln_q, Q, Z};

/// Exponent vector of a monomial `x_0^{i_0} ... x_t^{i_t}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// Number of variables, t + 1.
    pub fn order(&self) -> usize {
        self.0.len()
    }

    /// Total degree |I|.
    pub fn norm(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

/// All multi-indices of order t+1 and norm `d`, in graded-lex order.
pub fn monomials(t: usize, d: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; t + 1];
    fill(&mut cur, 0, d as u32, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(MultiIndex(cur.clone()));
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, left - e, out);
    }
}

/// Rank of Γ(P^t, O(d)), i.e. C(d+t, t).
pub fn space_dim(t: usize, d: usize) -> usize {
    crate::exact::binom(d + t, t) as usize
}

pub(crate) fn monomial_positions(t: usize, d: usize) -> HashMap<MultiIndex, usize> {
    monomials(t, d).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// The multinomial C(D+t, I) = (D+t)! / (i_0! ... i_t! t!).
pub fn multinomial_weight(index: &MultiIndex) -> Z {
    let t = index.order() - 1;
    let d = index.norm();
    let denom = index
        .exponents()
        .iter()
        .fold(factorial(t as u64), |acc, &e| acc * factorial(e as u64));
    factorial((d + t) as u64) / denom
}

/// |X^I|²_{L²} = i_0!⋯i_t!·t!/(D+t)!.
pub fn monomial_norm_sq(index: &MultiIndex) -> Q {
    Q::new(Z::one(), multinomial_weight(index))
}

/// Diagonal of the L² Gram matrix of the monomial basis of Γ(P^t, O(d)).
pub fn l2_gram_diagonal(t: usize, d: usize) -> Vec<Q> {
    monomials(t, d).iter().map(monomial_norm_sq).collect()
}

/// σ_t = ½ Σ_{k=1}^{t} Σ_{m=1}^{k} 1/m. Errors at t = 0; use
/// [`stoll_number_or_zero`] where the empty-sum convention is wanted.
pub fn stoll_number(t: usize) -> Result<Q> {
    if t == 0 {
        return Err(Error::Domain("the Stoll number needs t >= 1".into()));
    }
    Ok(stoll_number_or_zero(t))
}

/// σ_t with σ_0 = 0.
pub fn stoll_number_or_zero(t: usize) -> Q {
    let mut harmonic = Q::zero();
    let mut total = Q::zero();
    for k in 1..=t {
        harmonic += Q::new(Z::one(), Z::from(k));
        total += &harmonic;
    }
    total / Q::from_integer(Z::from(2))
}

/// A norm carried both exactly (when it is a square root of a rational) and
/// as a logarithm.
#[derive(Clone, Debug, PartialEq)]
pub struct NormValue {
    pub squared_norm: Option<Q>,
    pub log_norm: f64,
}

impl NormValue {
    pub fn from_squared(sq: Q) -> Self {
        let log_norm = 0.5 * ln_q(&sq);
        NormValue {
            squared_norm: Some(sq),
            log_norm,
        }
    }
}

/// Upper bound for log |f|_∞ read off the coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SupBound {
    Log(f64),
    ZeroForm,
}

/// Element of Γ(P^t, O(D)).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousForm {
    t: usize,
    d: usize,
    coeffs: Vec<Q>,
}

impl HomogeneousForm {
    pub fn zero(t: usize, d: usize) -> Self {
        HomogeneousForm {
            t,
            d,
            coeffs: vec![Q::zero(); space_dim(t, d)],
        }
    }

    /// Builds a form from coefficients listed in graded-lex order.
    pub fn from_dense(t: usize, d: usize, coeffs: Vec<Q>) -> Result<Self> {
        if coeffs.len() != space_dim(t, d) {
            return Err(Error::Shape(format!(
                "expected {} coefficients for t={t}, D={d}, got {}",
                space_dim(t, d),
                coeffs.len()
            )));
        }
        Ok(HomogeneousForm { t, d, coeffs })
    }

    pub fn from_integers(t: usize, d: usize, coeffs: &[i64]) -> Result<Self> {
        Self::from_dense(t, d, coeffs.iter().map(|&c| Q::from_integer(Z::from(c))).collect())
    }

    pub fn from_z(t: usize, d: usize, coeffs: &[Z]) -> Result<Self> {
        Self::from_dense(t, d, coeffs.iter().cloned().map(Q::from_integer).collect())
    }

    /// Builds a form from (exponents, coefficient) terms; repeated
    /// exponents accumulate.
    pub fn from_terms(t: usize, terms: &[(Vec<u32>, Q)]) -> Result<Self> {
        let d = match terms.first() {
            Some((e, _)) => e.iter().map(|&x| x as usize).sum(),
            None => return Err(Error::Shape("a form needs at least one term".into())),
        };
        let pos = monomial_positions(t, d);
        let mut f = Self::zero(t, d);
        for (e, c) in terms {
            let idx = pos
                .get(&MultiIndex(e.clone()))
                .ok_or_else(|| Error::Shape(format!("monomial {e:?} is not of order {} and degree {d}", t + 1)))?;
            f.coeffs[*idx] += c;
        }
        Ok(f)
    }

    /// The coordinate form x_i.
    pub fn variable(t: usize, i: usize) -> Self {
        let mut f = Self::zero(t, 1);
        f.coeffs[i] = Q::one();
        f
    }

    pub fn constant(t: usize, c: Q) -> Self {
        HomogeneousForm {
            t,
            d: 0,
            coeffs: vec![c],
        }
    }

    /// A linear form Σ a_i x_i.
    pub fn linear(coeffs: &[Z]) -> Self {
        let t = coeffs.len() - 1;
        Self::from_z(t, 1, coeffs).expect("t+1 coefficients")
    }

    pub fn dimension(&self) -> usize {
        self.t
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &Q)> {
        monomials(self.t, self.d)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficient vector; `None` unless the form is integral.
    pub fn integer_coefficients(&self) -> Option<Vec<Z>> {
        self.is_integral()
            .then(|| self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    /// gcd of the coefficients of an integral form.
    pub fn content(&self) -> Option<Z> {
        self.integer_coefficients().map(|c| gcd_all(&c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_some_and(|g| g.is_one())
    }

    /// Primitive integral form proportional to `self`, with the sign fixed
    /// so that the first nonzero coefficient is positive.
    pub fn primitive(&self) -> Self {
        let mut ints = crate::exact::primitive_part(&self.coeffs);
        if let Some(first) = ints.iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                ints.iter_mut().for_each(|c| *c = -c.clone());
            }
        }
        Self::from_z(self.t, self.d, &ints).unwrap()
    }

    pub fn scale(&self, s: &Q) -> Self {
        HomogeneousForm {
            t: self.t,
            d: self.d,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_space(other)?;
        Ok(HomogeneousForm {
            t: self.t,
            d: self.d,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    fn check_same_space_dim(&self, other: &Self) -> Result<()> {
        if self.t != other.t {
            return Err(Error::Shape(format!("forms on P^{} and P^{}", self.t, other.t)));
        }
        Ok(())
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.t != other.t || self.d != other.d {
            return Err(Error::Shape(format!(
                "forms live in different spaces: (t={}, D={}) vs (t={}, D={})",
                self.t, self.d, other.t, other.d
            )));
        }
        Ok(())
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * crate::exact::q_pow(x, e as u64))
            })
            .sum()
    }

    pub fn eval_z(&self, point: &[Z]) -> Q {
        let p: Vec<Q> = point.iter().cloned().map(Q::from_integer).collect();
        self.eval(&p)
    }

    /// Floating-point value at a complex point.
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in self.terms() {
            let mut term = Complex64::new(crate::exact::q_to_f64(c), 0.0);
            for (&e, z) in m.exponents().iter().zip(point) {
                term *= z.powu(e);
            }
            total += term;
        }
        total
    }

    /// Substitutes x_j = 0 for every j in `vanishing`, returning a form on
    /// the complementary coordinate subspace (variables keep their order).
    pub fn restrict_to_coordinate_subspace(&self, vanishing: &[usize]) -> Result<Self> {
        if vanishing.len() > self.t {
            return Err(Error::Domain("cannot restrict to an empty subspace".into()));
        }
        let keep: Vec<usize> = (0..=self.t).filter(|j| !vanishing.contains(j)).collect();
        let new_t = keep.len() - 1;
        let terms: Vec<(Vec<u32>, Q)> = monomials(self.t, self.d)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(m, _)| vanishing.iter().all(|&j| m.0[j] == 0))
            .map(|(m, c)| (keep.iter().map(|&j| m.0[j]).collect(), c.clone()))
            .collect();
        let mut out = Self::zero(new_t, self.d);
        let pos = monomial_positions(new_t, self.d);
        for (e, c) in terms {
            out.coeffs[pos[&MultiIndex(e)]] += c;
        }
        Ok(out)
    }

    /// Exact L² norm on P^t.
    pub fn l2_norm(&self) -> NormValue {
        NormValue::from_squared(l2_inner_product(self, self).expect("same space"))
    }
}

/// ⟨f, g⟩_{L²} = Σ_I c_I(f) c_I(g) |X^I|².
pub fn l2_inner_product(f: &HomogeneousForm, g: &HomogeneousForm) -> Result<Q> {
    f.check_same_space(g)?;
    Ok(monomials(f.t, f.d)
        .iter()
        .zip(f.coeffs.iter().zip(&g.coeffs))
        .filter(|(_, (a, b))| !a.is_zero() && !b.is_zero())
        .map(|(m, (a, b))| a * b * monomial_norm_sq(m))
        .sum())
}

/// Exact polynomial product.
pub fn form_product(f: &HomogeneousForm, g: &HomogeneousForm) -> Result<HomogeneousForm> {
    if f.t != g.t {
        return Err(Error::Shape(format!(
            "cannot multiply forms in {} and {} variables",
            f.t + 1,
            g.t + 1
        )));
    }
    let t = f.t;
    let d = f.d + g.d;
    let pos = monomial_positions(t, d);
    let mut out = HomogeneousForm::zero(t, d);
    for (mf, cf) in f.terms() {
        for (mg, cg) in g.terms() {
            let e: Vec<u32> = mf.0.iter().zip(&mg.0).map(|(a, b)| a + b).collect();
            out.coeffs[pos[&MultiIndex(e)]] += cf * cg;
        }
    }
    Ok(out)
}

/// log Σ_I |c_I|, an upper bound for log |f|_∞ because every metrized
/// monomial has sup norm at most 1.
pub fn coefficient_sup_bound(f: &HomogeneousForm) -> SupBound {
    if f.is_zero() {
        return SupBound::ZeroForm;
    }
    let total: Q = f.coeffs.iter().map(|c| c.abs()).sum();
    SupBound::Log(ln_q(&total))
}

/// Smallest and largest value of log |X^I|_{L²} over all |I| = d.
pub fn monomial_log_norm_extremes(t: usize, d: usize) -> (f64, f64) {
    monomials(t, d)
        .iter()
        .map(|m| 0.5 * ln_q(&monomial_norm_sq(m)))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Σ_{|I| = d} log |X^I|_{L²}.
pub fn monomial_log_norm_sum(t: usize, d: usize) -> f64 {
    monomials(t, d).iter().map(|m| 0.5 * ln_q(&monomial_norm_sq(m))).sum()
}

/// H_t = Σ_{m=1}^t 1/m.
pub fn harmonic_number(t: usize) -> Q {
    (1..=t).map(|m| Q::new(Z::one(), Z::from(m))).sum()
}

/// Monomial-level constant for the product upper bound:
/// max_I (½ log C(D+t, I) − ½ log C(D+t, t)) / D, clamped at 0 (0 for D = 0).
pub fn product_upper_constant(t: usize, d: usize) -> f64 {
    if d == 0 {
        return 0.0;
    }
    let (lo, _) = monomial_log_norm_extremes(t, d);
    let base = 0.5 * crate::forms::log_binomial(d + t, t);
    ((-lo - base) / d as f64).max(0.0)
}

/// Upper and lower bounds for log |fg|_{L²} in terms of log |f| + log |g|.
///
/// * `product_upper`: log|fg| ≤ log|f| + log|g| + c₁(D+D′) + log C(D+D′+t, t)
///   with c₁ the larger of the two monomial-level constants.
/// * `product_lower`: log|f| + log|g| − ((D+D′)/2)·H_t ≤ log|fg|, which
///   follows from the relations between the sup, L² and log-integral norms.
/// * `product_lower_log_form` (not asserted): the same with the loss
///   c₂(log D + log D′), c₂ = 1; this form fails already for x0·x1.
pub fn check_product_bounds(f: &HomogeneousForm, g: &HomogeneousForm) -> Result<Vec<crate::report::BoundReport>> {
    use crate::report::BoundReport;
    f.check_same_space_dim(g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain("product bounds need nonzero forms".into()));
    }
    let t = f.t;
    let (d1, d2) = (f.d, g.d);
    let fg = form_product(f, g)?;
    let (lf, lg, lfg) = (f.l2_norm().log_norm, g.l2_norm().log_norm, fg.l2_norm().log_norm);
    let c1 = product_upper_constant(t, d1).max(product_upper_constant(t, d2));
    let upper_rhs = lf + lg + c1 * (d1 + d2) as f64 + log_binomial(d1 + d2 + t, t);
    let ht = crate::exact::q_to_f64(&harmonic_number(t));
    let lower_lhs = lf + lg - 0.5 * (d1 + d2) as f64 * ht;
    let log_loss = |d: usize| if d == 0 { 0.0 } else { (d as f64).ln() };
    let log_form_lhs = lf + lg - (log_loss(d1) + log_loss(d2));
    let inputs = serde_json::json!({"t": t, "d": d1, "d_prime": d2, "c1": c1});
    let guard = |x: f64| 1e-12 * (1.0 + x.abs());
    Ok(vec![
        BoundReport::exact(
            "product_upper",
            lfg,
            upper_rhs,
            lfg <= upper_rhs + guard(upper_rhs),
            inputs.clone(),
        ),
        BoundReport::exact(
            "product_lower",
            lower_lhs,
            lfg,
            lower_lhs <= lfg + guard(lfg),
            inputs.clone(),
        ),
        BoundReport::info("product_lower_log_form", log_form_lhs, lfg, inputs),
    ])
}

impl fmt::Debug for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.terms() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            let mono: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                    .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Wire format: `{"t": .., "d": .., "coeffs": [[[exponents], "num/den"], ..]}`
/// with nonzero terms in graded-lex order.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct FormJson {
    pub t: usize,
    pub d: usize,
    pub coeffs: Vec<(Vec<u32>, String)>,
}

pub fn format_rational(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: Z = n.trim().parse().map_err(|_| bad())?;
            let d: Z = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl From<&HomogeneousForm> for FormJson {
    fn from(f: &HomogeneousForm) -> Self {
        FormJson {
            t: f.t,
            d: f.d,
            coeffs: f.terms().map(|(m, c)| (m.0, format_rational(c))).collect(),
        }
    }
}

impl TryFrom<&FormJson> for HomogeneousForm {
    type Error = Error;

    fn try_from(j: &FormJson) -> Result<Self> {
        let pos = monomial_positions(j.t, j.d);
        let mut f = HomogeneousForm::zero(j.t, j.d);
        for (e, c) in &j.coeffs {
            let idx = pos
                .get(&MultiIndex(e.clone()))
                .ok_or_else(|| Error::Parse(format!("exponents {e:?} do not match t={} d={}", j.t, j.d)))?;
            f.coeffs[*idx] += parse_rational(c)?;
        }
        Ok(f)
    }
}

impl Serialize for HomogeneousForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomogeneousForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FormJson::deserialize(d)?;
        HomogeneousForm::try_from(&j).map_err(serde::de::Error::custom)
    }
}

/// log C(n, k) for callers that only need the real value.
pub fn log_binomial(n: usize, k: usize) -> f64 {
    crate::exact::ln_int(&binomial(n as u64, k as u64))
}

/// Convenience for tests and examples: f64 view of a rational coefficient.
pub fn coefficient_f64(c: &Q) -> f64 {
    c.to_f64().unwrap_or_else(|| crate::exact::q_to_f64(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, q_frac};

    #[test]
    fn stoll_numbers() {
        assert_eq!(stoll_number(1).unwrap(), q_frac(1, 2));
        assert_eq!(stoll_number(2).unwrap(), q_frac(5, 4));
        assert_eq!(stoll_number(3).unwrap(), q_frac(13, 6));
        assert!(matches!(stoll_number(0), Err(Error::Domain(_))));
        assert_eq!(stoll_number_or_zero(0), q(0));
    }

    #[test]
    fn monomial_norms() {
        assert_eq!(monomial_norm_sq(&MultiIndex::new(vec![2, 0])), q_frac(1, 3));
        assert_eq!(monomial_norm_sq(&MultiIndex::new(vec![0, 0, 0])), q(1));
        assert_eq!(monomial_norm_sq(&MultiIndex::new(vec![1, 1, 0])), q_frac(1, 12));
    }

    #[test]
    fn graded_lex_order() {
        let m = monomials(2, 2);
        let e: Vec<Vec<u32>> = m.into_iter().map(|m| m.0).collect();
        assert_eq!(
            e,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        assert_eq!(monomials(3, 4).len(), space_dim(3, 4));
    }

    #[test]
    fn inner_products() {
        let x0 = HomogeneousForm::variable(1, 0);
        let x1 = HomogeneousForm::variable(1, 1);
        assert_eq!(l2_inner_product(&x0, &x1).unwrap(), q(0));
        assert_eq!(l2_inner_product(&x0, &x0).unwrap(), q_frac(1, 2));
        let s = x0.add(&x1).unwrap();
        let d = x0.sub(&x1).unwrap();
        assert_eq!(l2_inner_product(&s, &d).unwrap(), q(0));
        let y = HomogeneousForm::variable(2, 0);
        assert!(matches!(l2_inner_product(&x0, &y), Err(Error::Shape(_))));
    }

    #[test]
    fn products() {
        let x0 = HomogeneousForm::variable(1, 0);
        let x1 = HomogeneousForm::variable(1, 1);
        let p = form_product(&x0, &x1).unwrap();
        assert_eq!(p, HomogeneousForm::from_integers(1, 2, &[0, 1, 0]).unwrap());
        let s = x0.add(&x1).unwrap();
        let d = x0.sub(&x1).unwrap();
        assert_eq!(
            form_product(&s, &d).unwrap(),
            HomogeneousForm::from_integers(1, 2, &[1, 0, -1]).unwrap()
        );
        let one = HomogeneousForm::constant(1, q(1));
        assert_eq!(form_product(&s, &one).unwrap(), s);
        assert!(form_product(&s, &HomogeneousForm::variable(2, 0)).is_err());
    }

    #[test]
    fn sup_bounds() {
        let x0 = HomogeneousForm::variable(1, 0);
        assert_eq!(coefficient_sup_bound(&x0), SupBound::Log(0.0));
        let d = HomogeneousForm::from_integers(1, 1, &[1, -1]).unwrap();
        match coefficient_sup_bound(&d) {
            SupBound::Log(v) => assert!((v - 2f64.ln()).abs() < 1e-15),
            SupBound::ZeroForm => panic!(),
        }
        let f = HomogeneousForm::from_integers(1, 2, &[3, 0, 0]).unwrap();
        match coefficient_sup_bound(&f) {
            SupBound::Log(v) => assert!((v - 3f64.ln()).abs() < 1e-15),
            SupBound::ZeroForm => panic!(),
        }
        assert_eq!(coefficient_sup_bound(&HomogeneousForm::zero(1, 2)), SupBound::ZeroForm);
    }

    #[test]
    fn json_round_trip_and_format() {
        let f = HomogeneousForm::from_dense(1, 2, vec![q(3), q_frac(-1, 2), q(0)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"t":1,"d":2,"coeffs":[[[2,0],"3"],[[1,1],"-1/2"]]}"#);
        let back: HomogeneousForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<HomogeneousForm>(r#"{"t":1,"d":2,"coeffs":[[[1,0],"1"]]}"#).is_err());
    }

    #[test]
    fn restriction_to_coordinate_subspace() {
        // x0*x1 + x2^2 restricted to x0 = 0 is x2^2 in variables (x1, x2).
        let f = HomogeneousForm::from_terms(2, &[(vec![1, 1, 0], q(1)), (vec![0, 0, 2], q(1))]).unwrap();
        let r = f.restrict_to_coordinate_subspace(&[0]).unwrap();
        assert_eq!(r, HomogeneousForm::from_integers(1, 2, &[0, 0, 1]).unwrap());
    }

    #[test]
    fn primitive_normalisation() {
        let f = HomogeneousForm::from_integers(1, 1, &[-4, 6]).unwrap();
        assert_eq!(f.content().unwrap(), Z::from(2));
        assert_eq!(f.primitive(), HomogeneousForm::from_integers(1, 1, &[2, -3]).unwrap());
    }

    #[test]
    fn product_bounds() {
        let x0 = HomogeneousForm::variable(1, 0);
        let x1 = HomogeneousForm::variable(1, 1);
        let r = check_product_bounds(&x0, &x1).unwrap();
        assert!(r[0].holds && r[1].holds);
        // x0·x1: |x0x1|² = 1/6 < |x0|²|x1|² = 1/4, so the log-form lower bound fails.
        assert!(!r[2].holds && !r[2].failed());
        let f = HomogeneousForm::from_integers(2, 2, &[1, -2, 0, 3, 1, -1]).unwrap();
        let g = HomogeneousForm::from_integers(2, 1, &[2, 0, -5]).unwrap();
        assert!(check_product_bounds(&f, &g).unwrap().iter().all(|b| !b.failed()));
        assert_eq!(harmonic_number(3), q_frac(11, 6));
    }
}
