//! Metrized integer lattices: the arithmetic bundles over Z that every
//! other module measures.
//!
//! A [`MetrizedLattice`] is a set of linearly independent integer vectors in
//! Z^N together with a positive-definite rational metric on Q^N. All Gram
//! data is exact; degrees take a single logarithm at the very end.

pub mod enumerate;
pub mod lll;

use std::cmp::Ordering;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{ln_q, q_pow, Q, Z};
use crate::forms::{format_rational, l2_gram_diagonal, parse_rational, space_dim};
use crate::linalg::{self, QMatrix, ZMatrix};

/// Ambient metric on Q^N.
#[derive(Clone, Debug, PartialEq)]
pub enum Metric {
    Identity,
    /// Diagonal L² metric of the monomial basis of Γ(P^t, O(d)).
    L2Forms {
        t: usize,
        d: usize,
        weights: Vec<Q>,
    },
    Gram(QMatrix),
}

impl Metric {
    pub fn l2_forms(t: usize, d: usize) -> Self {
        Metric::L2Forms {
            t,
            d,
            weights: l2_gram_diagonal(t, d),
        }
    }

    pub fn inner(&self, u: &[Q], v: &[Q]) -> Q {
        match self {
            Metric::Identity => linalg::dot_q(u, v),
            Metric::L2Forms { weights, .. } => u
                .iter()
                .zip(v)
                .zip(weights)
                .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
                .map(|((a, b), w)| a * b * w)
                .sum(),
            Metric::Gram(g) => {
                let mut s = Q::zero();
                for (i, a) in u.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in v.iter().enumerate() {
                        if !b.is_zero() {
                            s += a * b * &g[i][j];
                        }
                    }
                }
                s
            }
        }
    }

    pub fn inner_z(&self, u: &[Z], v: &[Z]) -> Q {
        self.inner(&to_q(u), &to_q(v))
    }

    fn dim(&self) -> Option<usize> {
        match self {
            Metric::Identity => None,
            Metric::L2Forms { weights, .. } => Some(weights.len()),
            Metric::Gram(g) => Some(g.len()),
        }
    }
}

/// Gram matrix of `basis` under `metric`, via B·G then (B·G)·Bᵀ for a
/// general Gram metric.
fn gram_of(metric: &Metric, basis: &[Vec<Z>]) -> QMatrix {
    match metric {
        Metric::Gram(g) => {
            let bg: QMatrix = basis
                .iter()
                .map(|b| {
                    (0..g.len())
                        .map(|j| {
                            b.iter()
                                .zip(g)
                                .filter(|(x, _)| !x.is_zero())
                                .map(|(x, row)| &row[j] * Q::from_integer(x.clone()))
                                .sum()
                        })
                        .collect()
                })
                .collect();
            bg.iter()
                .map(|r| {
                    basis
                        .iter()
                        .map(|b| {
                            r.iter()
                                .zip(b)
                                .filter(|(_, x)| !x.is_zero())
                                .map(|(v, x)| v * Q::from_integer(x.clone()))
                                .sum()
                        })
                        .collect()
                })
                .collect()
        }
        _ => basis
            .iter()
            .map(|a| basis.iter().map(|b| metric.inner_z(a, b)).collect())
            .collect(),
    }
}

fn to_q(v: &[Z]) -> Vec<Q> {
    v.iter().cloned().map(Q::from_integer).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetrizedLattice {
    ambient_dim: usize,
    metric: Metric,
    basis: ZMatrix,
    gram: QMatrix,
    saturated: bool,
}

/// \widehat{deg} of a metrized lattice, with the exact Gram determinant.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeValue {
    pub det_gram: Q,
    pub degree: f64,
}

impl DegreeValue {
    fn from_det(det_gram: Q) -> Self {
        let degree = -0.5 * ln_q(&det_gram);
        DegreeValue { det_gram, degree }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShortVectorMethod {
    Lll,
    Enumeration,
}

/// A nonzero lattice vector with its Minkowski certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortVectorCertificate {
    /// Ambient integer coordinates.
    pub vector: Vec<Z>,
    pub squared_length: Q,
    pub log_length: f64,
    pub minkowski_rhs: f64,
    pub method: ShortVectorMethod,
    rank: usize,
    det_gram: Q,
}

impl ShortVectorCertificate {
    /// Exact form of log|v| ≤ −deg/r + ½ log r, i.e. |v|^{2r} ≤ r^r · det.
    pub fn holds_exactly(&self) -> bool {
        minkowski_holds_exactly(&self.squared_length, self.rank, &self.det_gram)
    }
}

/// |v|^{2r} ≤ r^r · det, the exact form of the Minkowski bound.
pub fn minkowski_holds_exactly(squared_length: &Q, rank: usize, det_gram: &Q) -> bool {
    let r = rank as u64;
    q_pow(squared_length, r) <= q_pow(&Q::from_integer(Z::from(r)), r) * det_gram
}

impl MetrizedLattice {
    /// Lattice spanned by `basis`, which must be linearly independent.
    pub fn new(ambient_dim: usize, metric: Metric, basis: ZMatrix) -> Result<Self> {
        if let Some(n) = metric.dim() {
            if n != ambient_dim {
                return Err(Error::Shape(format!(
                    "metric has dimension {n}, ambient is {ambient_dim}"
                )));
            }
        }
        if basis.iter().any(|b| b.len() != ambient_dim) {
            return Err(Error::Shape("basis vector of wrong length".into()));
        }
        let gram = gram_of(&metric, &basis);
        if !basis.is_empty() && linalg::det(&gram).is_zero() {
            return Err(Error::RankDeficient);
        }
        Ok(MetrizedLattice {
            ambient_dim,
            metric,
            basis,
            gram,
            saturated: false,
        })
    }

    /// The full lattice Z^N with the given metric.
    pub fn standard(ambient_dim: usize, metric: Metric) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                (0..ambient_dim)
                    .map(|j| if i == j { Z::one() } else { Z::zero() })
                    .collect()
            })
            .collect();
        let mut l = Self::new(ambient_dim, metric, basis).expect("identity basis");
        l.saturated = true;
        l
    }

    /// Γ(P^t, O(d)) with the L² metric.
    pub fn forms(t: usize, d: usize) -> Self {
        Self::standard(space_dim(t, d), Metric::l2_forms(t, d))
    }

    pub(crate) fn new_saturated(ambient_dim: usize, metric: Metric, basis: ZMatrix) -> Result<Self> {
        let mut l = Self::new(ambient_dim, metric, basis)?;
        l.saturated = true;
        Ok(l)
    }

    /// Same lattice, different ambient metric.
    pub fn with_metric(&self, metric: Metric) -> Result<Self> {
        let mut l = Self::new(self.ambient_dim, metric, self.basis.clone())?;
        l.saturated = self.saturated;
        Ok(l)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn basis(&self) -> &ZMatrix {
        &self.basis
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    fn has_identity_basis(&self) -> bool {
        self.rank() == self.ambient_dim
            && self.basis.iter().enumerate().all(|(i, b)| {
                b.iter()
                    .enumerate()
                    .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
            })
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Integer coordinates of an ambient vector in this basis, if it lies in
    /// the lattice.
    pub fn coordinates_of(&self, v: &[Z]) -> Option<Vec<Z>> {
        let b = linalg::to_q_rows(&self.basis);
        let x = linalg::coordinates_in(&b, &to_q(v))?;
        x.iter()
            .all(|c| c.is_integer())
            .then(|| x.iter().map(|c| c.to_integer()).collect())
    }

    pub fn contains(&self, v: &[Z]) -> bool {
        self.coordinates_of(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Self) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn squared_length(&self, v: &[Z]) -> Q {
        self.metric.inner_z(v, v)
    }

    /// v minus its orthogonal projection onto the real span of this lattice.
    pub fn project_off(&self, v: &[Q]) -> Vec<Q> {
        if self.basis.is_empty() {
            return v.to_vec();
        }
        let bq = linalg::to_q_rows(&self.basis);
        let rhs: Vec<Q> = bq.iter().map(|b| self.metric.inner(b, v)).collect();
        let inv = linalg::inverse(&self.gram).expect("nonsingular Gram");
        let coeffs: Vec<Q> = inv.iter().map(|row| linalg::dot_q(row, &rhs)).collect();
        let mut out = v.to_vec();
        for (c, b) in coeffs.iter().zip(&bq) {
            for (o, x) in out.iter_mut().zip(b) {
                *o -= c * x;
            }
        }
        out
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson::from(self)
    }
}

/// Saturated lattice (Q-span ∩ Z^N) generated by `vectors`, in HNF, with the
/// identity metric. Use [`MetrizedLattice::with_metric`] to re-metrize.
pub fn saturate(vectors: &[Vec<Z>], ambient_dim: usize) -> MetrizedLattice {
    saturate_with_metric(vectors, ambient_dim, Metric::Identity)
}

pub fn saturate_with_metric(vectors: &[Vec<Z>], ambient_dim: usize, metric: Metric) -> MetrizedLattice {
    let basis = linalg::saturate_rows(vectors, ambient_dim);
    MetrizedLattice::new_saturated(ambient_dim, metric, basis).expect("HNF rows are independent")
}

/// \widehat{deg} L = −½ log det(Gram). Rank 0 gives degree 0.
pub fn arith_degree(l: &MetrizedLattice) -> Result<DegreeValue> {
    if l.rank() == 0 {
        return Ok(DegreeValue::from_det(Q::one()));
    }
    let det = linalg::det(&l.gram);
    if !det.is_positive() {
        return Err(Error::RankDeficient);
    }
    Ok(DegreeValue::from_det(det))
}

fn check_same_space(e: &MetrizedLattice, f: &MetrizedLattice) -> Result<()> {
    if e.ambient_dim != f.ambient_dim || e.metric != f.metric {
        return Err(Error::Shape("lattices live in different metrized spaces".into()));
    }
    Ok(())
}

/// Integer coordinates of F's basis in E's basis; checks F ⊆ E and that F is
/// saturated in E.
fn relative_coordinates(e: &MetrizedLattice, f: &MetrizedLattice) -> Result<ZMatrix> {
    check_same_space(e, f)?;
    if e.has_identity_basis() && f.saturated {
        return Ok(f.basis.clone());
    }
    let coords: ZMatrix = f
        .basis
        .iter()
        .map(|b| e.coordinates_of(b).ok_or(Error::NotContained))
        .collect::<Result<_>>()?;
    // A lattice saturated in Z^N is saturated in every lattice containing it.
    if !coords.is_empty() && !f.saturated {
        let sat = linalg::saturate_rows(&coords, e.rank());
        let g_coords = linalg::det(&std_gram(&coords));
        let g_sat = linalg::det(&std_gram(&sat));
        if g_coords != g_sat {
            return Err(Error::NotSaturated);
        }
    }
    Ok(coords)
}

fn std_gram(rows: &[Vec<Z>]) -> QMatrix {
    let rq = linalg::to_q_rows(rows);
    rq.iter()
        .map(|a| rq.iter().map(|b| linalg::dot_q(a, b)).collect())
        .collect()
}

/// E/F with the metric induced through the orthogonal complement of F_∞.
/// The result lives in an abstract Z^{rk E − rk F}. Its basis is dual to a
/// basis k_1..k_m of the annihilator K = Hom(E/F, Z) of F, and its Gram
/// matrix is (K G_E⁻¹ Kᵀ)⁻¹.
pub fn quotient_lattice(e: &MetrizedLattice, f: &MetrizedLattice) -> Result<MetrizedLattice> {
    let coords = relative_coordinates(e, f)?;
    let r = e.rank();
    let k = f.rank();
    if k == r {
        return MetrizedLattice::new_saturated(0, Metric::Gram(Vec::new()), Vec::new());
    }
    let annihilator = linalg::integer_kernel(&linalg::to_q_rows(&coords), r);
    let m = r - k;
    debug_assert_eq!(annihilator.len(), m);
    let dual_gram = dual_gram(e, &annihilator);
    let identity: ZMatrix = (0..m)
        .map(|i| (0..m).map(|j| if i == j { Z::one() } else { Z::zero() }).collect())
        .collect();
    let id_q = linalg::to_q_rows(&identity);
    let gram = linalg::solve(&dual_gram, &id_q).ok_or(Error::RankDeficient)?;
    MetrizedLattice::new_saturated(m, Metric::Gram(gram), identity)
}

/// K G_E⁻¹ Kᵀ for integer rows K in E-coordinates.
fn dual_gram(e: &MetrizedLattice, k: &[Vec<Z>]) -> QMatrix {
    let r = e.rank();
    // G_E⁻¹ Kᵀ, one column per row of K.
    let kq = linalg::to_q_rows(k);
    let kt: QMatrix = (0..r).map(|i| kq.iter().map(|row| row[i].clone()).collect()).collect();
    let diag = e.has_identity_basis().then(|| match &e.metric {
        Metric::Identity => Some(vec![Q::one(); r]),
        Metric::L2Forms { weights, .. } => Some(weights.clone()),
        Metric::Gram(_) => None,
    });
    let x: QMatrix = match diag.flatten() {
        Some(w) => kt
            .iter()
            .zip(&w)
            .map(|(row, wi)| row.iter().map(|v| v / wi).collect())
            .collect(),
        None => linalg::solve(&e.gram, &kt).expect("nonsingular Gram"),
    };
    kq.iter()
        .map(|a| {
            (0..k.len())
                .map(|j| {
                    a.iter()
                        .zip(&x)
                        .filter(|(v, _)| !v.is_zero())
                        .map(|(v, row)| v * &row[j])
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// G = E ∩ F_∞^⊥, saturated in E, with the restricted metric.
pub fn orth_complement_lattice(e: &MetrizedLattice, f: &MetrizedLattice) -> Result<MetrizedLattice> {
    relative_coordinates(e, f)?;
    if f.rank() == 0 {
        return Ok(MetrizedLattice {
            saturated: true,
            ..e.clone()
        });
    }
    let eq = linalg::to_q_rows(&e.basis);
    let fq = linalg::to_q_rows(&f.basis);
    let conditions: QMatrix = fq
        .iter()
        .map(|fv| eq.iter().map(|ev| e.metric.inner(ev, fv)).collect())
        .collect();
    let kernel = linalg::integer_kernel(&conditions, e.rank());
    let vectors: ZMatrix = kernel
        .iter()
        .map(|a| {
            (0..e.ambient_dim)
                .map(|c| a.iter().zip(&e.basis).map(|(x, b)| x * &b[c]).sum())
                .collect()
        })
        .collect();
    MetrizedLattice::new_saturated(e.ambient_dim, e.metric.clone(), linalg::hnf(vectors))
}

/// −(1/r)·\widehat{deg} L + ½ log r.
pub fn minkowski_bound(l: &MetrizedLattice) -> Result<f64> {
    let r = l.rank();
    if r == 0 {
        return Err(Error::Domain("Minkowski bound of a rank-0 lattice".into()));
    }
    let deg = arith_degree(l)?;
    Ok(-deg.degree / r as f64 + 0.5 * (r as f64).ln())
}

/// Tie-break among equally short vectors: sign fixed so the leading
/// coordinate is positive; then prefer the earliest leading coordinate,
/// then the lexicographically smallest coordinate sequence.
fn canonical_sign(mut v: Vec<Z>) -> Vec<Z> {
    if let Some(first) = v.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            v.iter_mut().for_each(|c| *c = -c.clone());
        }
    }
    v
}

fn tie_order(a: &[Z], b: &[Z]) -> Ordering {
    let lead = |v: &[Z]| v.iter().position(|c| !c.is_zero()).unwrap_or(usize::MAX);
    lead(a).cmp(&lead(b)).then_with(|| a.cmp(b))
}

/// A shortest nonzero vector, certified against the Minkowski bound.
/// LLL (δ = 0.99) seeds an exact enumeration over the reduced basis.
pub fn short_vector(l: &MetrizedLattice) -> Result<ShortVectorCertificate> {
    let r = l.rank();
    if r == 0 {
        return Err(Error::Domain("rank-0 lattice has no nonzero vector".into()));
    }
    let det = arith_degree(l)?.det_gram;
    let out = lll::lll_gram(&l.gram, &lll::default_delta());
    let lll_first = out.gram[0][0].clone();
    let (best, coeffs) = enumerate::shortest_coefficients(&out.gram, &out.mu, &out.gso_sq, &lll_first);
    let mut candidates: Vec<Vec<Z>> = coeffs
        .iter()
        .map(|x| {
            let in_basis: Vec<Z> = (0..r)
                .map(|j| x.iter().zip(&out.transform).map(|(c, row)| Z::from(*c) * &row[j]).sum())
                .collect();
            let ambient: Vec<Z> = (0..l.ambient_dim)
                .map(|c| in_basis.iter().zip(&l.basis).map(|(a, b)| a * &b[c]).sum())
                .collect();
            canonical_sign(ambient)
        })
        .collect();
    candidates.sort_by(|a, b| tie_order(a, b));
    let vector = candidates
        .into_iter()
        .next()
        .expect("enumeration returns the seed vector at worst");
    let method = if best == lll_first {
        ShortVectorMethod::Lll
    } else {
        ShortVectorMethod::Enumeration
    };
    let cert = ShortVectorCertificate {
        log_length: 0.5 * ln_q(&best),
        squared_length: best,
        minkowski_rhs: minkowski_bound(l)?,
        method,
        rank: r,
        det_gram: det,
        vector,
    };
    assert!(
        cert.holds_exactly(),
        "Minkowski certificate failed: this is a bug in short-vector search"
    );
    Ok(cert)
}

/// LLL-reduced (δ = 0.99) basis of `l`, as ambient integer vectors.
pub fn lll_reduced_basis(l: &MetrizedLattice) -> ZMatrix {
    let out = lll::lll_gram(&l.gram, &lll::default_delta());
    out.transform
        .iter()
        .map(|row| {
            (0..l.ambient_dim)
                .map(|c| row.iter().zip(&l.basis).map(|(a, b)| a * &b[c]).sum())
                .collect()
        })
        .collect()
}

/// Wire format for lattices. The basis is always emitted in HNF.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct LatticeJson {
    pub ambient_dim: usize,
    pub metric: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub basis: Vec<Vec<Value>>,
}

fn z_to_value(x: &Z) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn value_to_z(v: &Value) -> Result<Z> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Z::from)
            .ok_or_else(|| Error::Parse(format!("non-integer basis entry {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}"))),
        other => Err(Error::Parse(format!("bad basis entry {other}"))),
    }
}

impl From<&MetrizedLattice> for LatticeJson {
    fn from(l: &MetrizedLattice) -> Self {
        let (metric, t, d) = match &l.metric {
            Metric::Identity => (Value::from("identity"), None, None),
            Metric::L2Forms { t, d, .. } => (Value::from("l2_forms"), Some(*t), Some(*d)),
            Metric::Gram(g) => (
                Value::Array(
                    g.iter()
                        .map(|row| Value::Array(row.iter().map(|x| Value::from(format_rational(x))).collect()))
                        .collect(),
                ),
                None,
                None,
            ),
        };
        LatticeJson {
            ambient_dim: l.ambient_dim,
            metric,
            t,
            d,
            basis: linalg::hnf(l.basis.clone())
                .iter()
                .map(|r| r.iter().map(z_to_value).collect())
                .collect(),
        }
    }
}

impl TryFrom<&LatticeJson> for MetrizedLattice {
    type Error = Error;

    fn try_from(j: &LatticeJson) -> Result<Self> {
        let metric = match &j.metric {
            Value::String(s) if s == "identity" => Metric::Identity,
            Value::String(s) if s == "l2_forms" => {
                let (t, d) =
                    j.t.zip(j.d)
                        .ok_or_else(|| Error::Parse("l2_forms metric needs \"t\" and \"d\"".into()))?;
                Metric::l2_forms(t, d)
            }
            Value::Array(rows) => Metric::Gram(
                rows.iter()
                    .map(|row| match row {
                        Value::Array(xs) => xs
                            .iter()
                            .map(|x| match x {
                                Value::String(s) => parse_rational(s),
                                Value::Number(n) => n
                                    .as_i64()
                                    .map(|v| Q::from_integer(Z::from(v)))
                                    .ok_or_else(|| Error::Parse(format!("bad Gram entry {n}"))),
                                other => Err(Error::Parse(format!("bad Gram entry {other}"))),
                            })
                            .collect::<Result<Vec<Q>>>(),
                        other => Err(Error::Parse(format!("bad Gram row {other}"))),
                    })
                    .collect::<Result<QMatrix>>()?,
            ),
            other => return Err(Error::Parse(format!("unknown metric {other}"))),
        };
        let basis = j
            .basis
            .iter()
            .map(|r| r.iter().map(value_to_z).collect::<Result<Vec<Z>>>())
            .collect::<Result<ZMatrix>>()?;
        MetrizedLattice::new(j.ambient_dim, metric, basis)
    }
}
