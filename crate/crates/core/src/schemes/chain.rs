//! Chains P² ⊃ X_1 ⊃ X_2 ⊃ Y cut out by short forms through a point set Y,
//! with proper intersection certified by an exact coprimality test.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{binom, Q, Z};
use crate::forms::HomogeneousForm;
use crate::lattice::{lll_reduced_basis, short_vector};
use crate::schemes::unipoly::UniPoly;
use crate::schemes::{hilbert_fn, vanishing_lattice, SchemeSpec};

/// f(p + λ·q) as a polynomial in λ.
fn restrict_to_line(f: &HomogeneousForm, p: &[Q], q: &[Q]) -> UniPoly {
    let vars: Vec<UniPoly> = p
        .iter()
        .zip(q)
        .map(|(a, b)| UniPoly::linear(a.clone(), b.clone()))
        .collect();
    let mut total = UniPoly::new(Vec::new());
    for (m, c) in f.terms() {
        let mut term = UniPoly::one().scale(c);
        for (&e, v) in m.exponents().iter().zip(&vars) {
            for _ in 0..e {
                term = term.mul(v);
            }
        }
        total = total.add(&term);
    }
    total
}

fn qv(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| Q::from_integer(Z::from(x))).collect()
}

/// Whether two nonzero forms on P^1 or P^2 have no common factor.
///
/// Pick q with f(q)·g(q) ≠ 0. If f and g share a factor h then h(q) ≠ 0,
/// so on every line through q the restrictions share a root. Conversely,
/// coprime forms meet in at most deg f · deg g points, none equal to q,
/// so among deg f · deg g + 1 distinct lines through q one carries no
/// common root and the univariate gcd there is constant.
pub fn forms_coprime(f: &HomogeneousForm, g: &HomogeneousForm) -> Result<bool> {
    let t = f.dimension();
    if g.dimension() != t {
        return Err(Error::Shape("forms on different spaces".into()));
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::Domain("coprimality of the zero form".into()));
    }
    if f.degree() == 0 || g.degree() == 0 {
        return Ok(true);
    }
    let candidates: Vec<Vec<i64>> = match t {
        1 => (0..).take(64).map(|c| vec![c, 1]).collect(),
        2 => (0..8)
            .flat_map(|a: i64| (0..8).map(move |b: i64| vec![a - 3, b - 3, 1]))
            .collect(),
        _ => return Err(Error::Domain("coprimality test implemented for t ≤ 2".into())),
    };
    let q = candidates
        .into_iter()
        .map(|c| qv(&c))
        .find(|c| !f.eval(c).is_zero() && !g.eval(c).is_zero())
        .ok_or_else(|| Error::Domain("no admissible direction found".into()))?;
    let lines = if t == 1 { 1 } else { f.degree() * g.degree() + 1 };
    for a in 0..lines as i64 {
        let p = if t == 1 { qv(&[1, 0]) } else { qv(&[1, a, 0]) };
        let gcd = restrict_to_line(f, &p, &q).gcd(&restrict_to_line(g, &p, &q));
        if gcd.is_constant() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// One hypersurface of the chain.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub degree: usize,
    pub form: HomogeneousForm,
    pub log_norm: f64,
    /// deg X_i = D_1 ⋯ D_i.
    pub cycle_degree: u64,
    /// H_Y(D_i − 1).
    pub hilbert_before: usize,
    /// deg X_i · C(D_i + t − i, t − i).
    pub comparison: u64,
}

#[derive(Clone, Debug)]
pub struct Chain {
    pub steps: Vec<ChainStep>,
    /// Every form vanishes at every point of Y (checked by evaluation).
    pub contains_y: bool,
    /// D_{i+1} − 2(D̄_i + 1) with D̄_i = D_1 + … + D_i − i, observed only.
    pub gaps: Vec<i64>,
}

impl Chain {
    pub fn to_json(&self) -> Value {
        json!({
            "steps": self.steps.iter().map(|s| json!({
                "D": s.degree,
                "form": s.form,
                "log_norm": s.log_norm,
                "deg_X": s.cycle_degree,
                "H_Y(D-1)": s.hilbert_before,
                "deg_X_binomial": s.comparison,
            })).collect::<Vec<_>>(),
            "contains_y": self.contains_y,
            "gaps": self.gaps,
        })
    }
}

/// Builds f_1 (shortest form through Y at the least degree where one
/// exists) and f_2 (a short form through Y, coprime to f_1, at the least
/// degree ≥ D_1 where one is found among LLL basis vectors and their
/// pairwise sums and differences).
pub fn build_chain(y: &SchemeSpec, degree_cap: usize) -> Result<Chain> {
    let t = y.dimension_t();
    if t != 2 || !y.is_reduced_points() || y.points().is_empty() {
        return Err(Error::Precondition(
            "chain builder needs a nonempty reduced point set in P^2".into(),
        ));
    }
    let step = |d: usize, form: HomogeneousForm, i: usize, deg: u64| -> Result<ChainStep> {
        let hilbert_before = if d == 0 { 0 } else { hilbert_fn(y, d - 1)? };
        Ok(ChainStep {
            degree: d,
            log_norm: form.l2_norm().log_norm,
            form,
            cycle_degree: deg,
            hilbert_before,
            comparison: deg * binom(d + t - i, t - i),
        })
    };
    let mut steps = Vec::new();
    let mut first = None;
    for d in 1..=degree_cap {
        let l = vanishing_lattice(y, d)?;
        if l.rank() > 0 {
            let v = short_vector(&l)?.vector;
            first = Some((d, HomogeneousForm::from_z(t, d, &v)?));
            break;
        }
    }
    let (d1, f1) = first.ok_or(Error::CapExceeded {
        cap: degree_cap,
        built: 0,
    })?;
    steps.push(step(d1, f1.clone(), 1, d1 as u64)?);
    let mut second = None;
    'outer: for d in d1..=degree_cap {
        let l = vanishing_lattice(y, d)?;
        let mut candidates = vec![short_vector(&l)?.vector];
        let basis = lll_reduced_basis(&l);
        candidates.extend(basis.iter().cloned());
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                candidates.push(basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect());
                candidates.push(basis[i].iter().zip(&basis[j]).map(|(a, b)| a - b).collect());
            }
        }
        for c in candidates {
            let g = HomogeneousForm::from_z(t, d, &c)?;
            if forms_coprime(&f1, &g)? {
                second = Some((d, g.primitive()));
                break 'outer;
            }
        }
    }
    let (d2, f2) = second.ok_or(Error::CapExceeded {
        cap: degree_cap,
        built: 1,
    })?;
    steps.push(step(d2, f2, 2, (d1 * d2) as u64)?);
    let contains_y = steps
        .iter()
        .all(|s| y.points().iter().all(|p| s.form.eval_z(p.coords()).is_zero()));
    let dbar1 = d1 as i64 - 1;
    let gaps = vec![d2 as i64 - 2 * (dbar1 + 1)];
    Ok(Chain {
        steps,
        contains_y,
        gaps,
    })
}
