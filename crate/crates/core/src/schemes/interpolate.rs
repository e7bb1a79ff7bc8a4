//! Short integral forms vanishing on one scheme and on no component of
//! another.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{ln_q, Q, Z};
use crate::forms::{format_rational, HomogeneousForm};
use crate::lattice::{self, arith_degree, orth_complement_lattice, MetrizedLattice, ShortVectorCertificate};
use crate::schemes::combine::combine_avoiding_zeros;
use crate::schemes::{vanishing_lattice, SchemeSpec};

/// Output of [`interpolate`].
#[derive(Clone, Debug)]
pub struct InterpolationResult {
    /// Primitive integral form in I_Y(D).
    pub form: HomogeneousForm,
    pub squared_norm: Q,
    pub log_norm: f64,
    /// max_i (Minkowski bound of the i-th complement lattice) + 2 log n.
    pub minkowski_rhs: f64,
    /// Per component of X, an exact nonzero functional value of `form`.
    pub nonvanishing_witness: Vec<Q>,
    pub multipliers: Vec<u64>,
    pub component_certificates: Vec<ShortVectorCertificate>,
    component_data: Vec<(usize, Q)>,
}

impl InterpolationResult {
    /// log|f| ≤ minkowski_rhs, decided on rationals: for some component i
    /// with complement rank r_i and Gram determinant δ_i,
    /// (|f|²/n⁴)^{r_i} ≤ r_i^{r_i}·δ_i.
    pub fn certificate_holds(&self) -> bool {
        let n = self.component_data.len() as u64;
        let scaled = &self.squared_norm / Q::from_integer(Z::from(n.pow(4)));
        self.component_data
            .iter()
            .any(|(r, det)| lattice::minkowski_holds_exactly(&scaled, *r, det))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "form": self.form,
            "log_norm": self.log_norm,
            "minkowski_rhs": self.minkowski_rhs,
            "nonvanishing_witness": self.nonvanishing_witness.iter().map(format_rational).collect::<Vec<_>>(),
            "multipliers": self.multipliers,
            "certificate_holds": self.certificate_holds(),
        })
    }
}

/// A short f ∈ I_Y(D) that is nonzero on every component of X.
///
/// For each component X_i a shortest vector of I_Y(D) ∩ I_{Y∪X_i}(D)^⊥ is
/// nonzero on X_i; these are combined with small multipliers so that no
/// component sees a zero.
pub fn interpolate(y: &SchemeSpec, x: &SchemeSpec, d: usize) -> Result<InterpolationResult> {
    if y.dimension_t() != x.dimension_t() {
        return Err(Error::Shape("schemes live in different spaces".into()));
    }
    let t = y.dimension_t();
    let components = x.components();
    if components.is_empty() {
        return Err(Error::Precondition("X has no components to avoid".into()));
    }
    let i_y = vanishing_lattice(y, d)?;
    let mut forms = Vec::new();
    let mut certs = Vec::new();
    let mut data = Vec::new();
    for (i, c) in components.iter().enumerate() {
        let union = y.union(&c.as_scheme(t))?;
        let i_union = vanishing_lattice(&union, d)?;
        if i_union.rank() >= i_y.rank() {
            return Err(Error::InsufficientDegree {
                component: i,
                rank_y: i_y.rank(),
                rank_union: i_union.rank(),
            });
        }
        let g: MetrizedLattice = orth_complement_lattice(&i_y, &i_union)?;
        let cert = lattice::short_vector(&g)?;
        data.push((g.rank(), arith_degree(&g)?.det_gram));
        forms.push(HomogeneousForm::from_z(t, d, &cert.vector)?);
        certs.push(cert);
    }
    // The functional for component j is its first condition that f_j fails.
    let mut functionals = Vec::new();
    for (c, f) in components.iter().zip(&forms) {
        let rows = c.as_scheme(t).condition_rows(d)?;
        let row = rows
            .into_iter()
            .find(|r| !crate::linalg::dot_q(r, f.coefficients()).is_zero())
            .expect("a vector off I_{Y∪X_i} fails some condition of X_i");
        functionals.push(row);
    }
    let evals: Vec<Vec<Q>> = forms
        .iter()
        .map(|f| {
            functionals
                .iter()
                .map(|l| crate::linalg::dot_q(l, f.coefficients()))
                .collect()
        })
        .collect();
    let m = combine_avoiding_zeros(&evals)?;
    let mut combined = HomogeneousForm::zero(t, d);
    for (f, &mi) in forms.iter().zip(&m) {
        if mi != 0 {
            combined = combined.add(&f.scale(&Q::from_integer(Z::from(mi))))?;
        }
    }
    let form = combined.primitive();
    let witnesses: Vec<Q> = functionals
        .iter()
        .map(|l| crate::linalg::dot_q(l, form.coefficients()))
        .collect();
    debug_assert!(witnesses.iter().all(|w| !w.is_zero()));
    let squared_norm = form.l2_norm().squared_norm.expect("exact");
    let n = components.len() as f64;
    let minkowski_rhs = certs.iter().map(|c| c.minkowski_rhs).fold(f64::NEG_INFINITY, f64::max) + 2.0 * n.ln();
    Ok(InterpolationResult {
        log_norm: 0.5 * ln_q(&squared_norm),
        squared_norm,
        minkowski_rhs,
        nonvanishing_witness: witnesses,
        multipliers: m,
        component_certificates: certs,
        component_data: data,
        form,
    })
}
