//! Subschemes of P^t given by fat rational points and hypersurfaces, their
//! vanishing lattices I_X(D), and algebraic Hilbert functions.
//!
//! A form vanishes on a fat point of order n exactly when every partial
//! derivative of order < n vanishes there; it vanishes on a hypersurface
//! {g = 0} when g divides it. Both are linear conditions on the coefficient
//! vector, so I_X(D) is the saturated integer kernel of a stacked condition
//! matrix.

pub mod chain;
pub mod combine;
pub mod interpolate;
pub mod unipoly;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{binom, gcd_all, q_pow, Q, Z};
use crate::forms::{form_product, monomials, space_dim, HomogeneousForm, MultiIndex};
use crate::lattice::{Metric, MetrizedLattice};
use crate::linalg::{self, QMatrix};
use crate::report::BoundReport;

pub use chain::{build_chain, forms_coprime, Chain, ChainStep};
pub use combine::combine_avoiding_zeros;
pub use interpolate::{interpolate, InterpolationResult};

/// A rational point with an imposed vanishing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FatPoint {
    coords: Vec<Z>,
    order: usize,
}

impl FatPoint {
    /// Normalizes `coords` to be primitive with positive first nonzero entry.
    pub fn new(coords: Vec<Z>, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("vanishing order must be at least 1".into()));
        }
        let g = gcd_all(&coords);
        if g.is_zero() {
            return Err(Error::Domain("the zero vector is not a projective point".into()));
        }
        let sign = if coords.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            -Z::one()
        } else {
            Z::one()
        };
        let coords = coords.iter().map(|c| c / &g * &sign).collect();
        Ok(FatPoint { coords, order })
    }

    pub fn reduced(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| Z::from(c)).collect(), 1)
    }

    pub fn coords(&self) -> &[Z] {
        &self.coords
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dimension(&self) -> usize {
        self.coords.len() - 1
    }

    /// ‖p‖² for the primitive representative.
    pub fn norm_sq(&self) -> Z {
        self.coords.iter().map(|c| c * c).sum()
    }

    /// Multiplicity C(n+t−1, t) of the n-th infinitesimal neighbourhood.
    pub fn degree(&self) -> u64 {
        binom(self.order + self.dimension() - 1, self.dimension())
    }

    fn coords_q(&self) -> Vec<Q> {
        self.coords.iter().cloned().map(Q::from_integer).collect()
    }

    /// Rows ∂^J(X^I)(p) for all |J| < order, one row per J.
    fn condition_rows(&self, d: usize) -> QMatrix {
        let t = self.dimension();
        let cols = monomials(t, d);
        let p = self.coords_q();
        let mut rows = Vec::new();
        for k in 0..self.order.min(d + 1) {
            for j in monomials(t, k) {
                rows.push(cols.iter().map(|i| derivative_at(i, &j, &p)).collect());
            }
        }
        if self.order > d + 1 {
            // Vanishing to order > D forces f = 0: the order-D derivatives
            // are (multiples of) the coefficients themselves.
            rows.clear();
            for c in 0..cols.len() {
                let mut r = vec![Q::zero(); cols.len()];
                r[c] = Q::one();
                rows.push(r);
            }
        }
        rows
    }

    /// Value at the point, or the first nonvanishing jet when `order > 1`.
    pub fn first_nonzero_condition(&self, f: &HomogeneousForm) -> Option<Q> {
        first_nonzero(&self.condition_rows(f.degree()), f)
    }
}

/// ∂^J X^I evaluated at p: Π_m i_m!/(i_m − j_m)! · p_m^{i_m − j_m}.
fn derivative_at(i: &MultiIndex, j: &MultiIndex, p: &[Q]) -> Q {
    let mut v = Q::one();
    for ((&a, &b), x) in i.0.iter().zip(&j.0).zip(p) {
        if b > a {
            return Q::zero();
        }
        let falling: u64 = ((a - b + 1)..=a).map(u64::from).product();
        v *= Q::from_integer(Z::from(falling)) * q_pow(x, (a - b) as u64);
        if v.is_zero() {
            return v;
        }
    }
    v
}

fn first_nonzero(rows: &[Vec<Q>], f: &HomogeneousForm) -> Option<Q> {
    rows.iter()
        .map(|r| linalg::dot_q(r, f.coefficients()))
        .find(|v| !v.is_zero())
}

/// Annihilator rows of g·Γ(O(D − deg g)) under the standard pairing.
fn divisibility_rows(g: &HomogeneousForm, d: usize) -> Result<QMatrix> {
    let e = g.degree();
    if d < e {
        return Err(Error::DegreeTooSmall { d, needed: e });
    }
    let t = g.dimension();
    let n = space_dim(t, d);
    let multiples: QMatrix = monomials(t, d - e)
        .into_iter()
        .map(|m| {
            let mono = HomogeneousForm::from_terms(t, &[(m.0, Q::one())]).expect("monomial");
            form_product(g, &mono).expect("same t").coefficients().to_vec()
        })
        .collect();
    Ok(linalg::rational_kernel(&multiples, n).0)
}

/// Finite union of fat points and hypersurfaces in P^t, or the whole space.
///
/// [`SchemeSpec::ambient`] is P^t itself (I_X = 0); [`SchemeSpec::empty`]
/// is the empty union (I_X = everything) and is the starting point for
/// building schemes atom by atom. A serialized spec without atoms reads as
/// the whole space.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeSpec {
    t: usize,
    whole: bool,
    points: Vec<FatPoint>,
    hypersurfaces: Vec<HomogeneousForm>,
    ci_witness: Option<Vec<HomogeneousForm>>,
}

/// One atom of a [`SchemeSpec`].
#[derive(Clone, Debug, PartialEq)]
pub enum Component {
    Point(FatPoint),
    Hypersurface(HomogeneousForm),
}

impl Component {
    pub fn as_scheme(&self, t: usize) -> SchemeSpec {
        let mut s = SchemeSpec::empty(t);
        match self {
            Component::Point(p) => s.points.push(p.clone()),
            Component::Hypersurface(g) => s.hypersurfaces.push(g.clone()),
        }
        s
    }

    /// An exact functional value certifying that `f` does not vanish on
    /// this component, if it does not.
    pub fn nonvanishing_witness(&self, f: &HomogeneousForm) -> Result<Option<Q>> {
        Ok(match self {
            Component::Point(p) => p.first_nonzero_condition(f),
            Component::Hypersurface(g) => first_nonzero(&divisibility_rows(g, f.degree())?, f),
        })
    }
}

impl SchemeSpec {
    /// The whole space P^t.
    pub fn ambient(t: usize) -> Self {
        SchemeSpec {
            whole: true,
            ..Self::empty(t)
        }
    }

    /// The empty scheme; add atoms to build a union.
    pub fn empty(t: usize) -> Self {
        SchemeSpec {
            t,
            whole: false,
            points: Vec::new(),
            hypersurfaces: Vec::new(),
            ci_witness: None,
        }
    }

    pub fn from_points(t: usize, points: Vec<FatPoint>) -> Result<Self> {
        let mut s = Self::empty(t);
        for p in points {
            s.add_point(p)?;
        }
        Ok(s)
    }

    pub fn reduced_points(t: usize, points: &[Vec<i64>]) -> Result<Self> {
        Self::from_points(t, points.iter().map(|p| FatPoint::reduced(p)).collect::<Result<_>>()?)
    }

    fn check_not_whole(&self) -> Result<()> {
        if self.whole {
            return Err(Error::Domain("the whole space already contains every atom".into()));
        }
        Ok(())
    }

    pub fn add_point(&mut self, p: FatPoint) -> Result<()> {
        self.check_not_whole()?;
        if p.dimension() != self.t {
            return Err(Error::Shape(format!(
                "point in P^{} added to a scheme in P^{}",
                p.dimension(),
                self.t
            )));
        }
        if self.points.iter().any(|q| q.coords == p.coords) {
            return Err(Error::Domain(format!("duplicate point {:?}", p.coords)));
        }
        self.points.push(p);
        Ok(())
    }

    /// Adds {g = 0}; g is replaced by its primitive integral multiple.
    pub fn add_hypersurface(&mut self, g: HomogeneousForm) -> Result<()> {
        self.check_not_whole()?;
        if g.dimension() != self.t {
            return Err(Error::Shape("hypersurface in the wrong projective space".into()));
        }
        if g.is_zero() || g.degree() == 0 {
            return Err(Error::Domain("a hypersurface needs a nonconstant form".into()));
        }
        self.hypersurfaces.push(g.primitive());
        Ok(())
    }

    /// Records forms whose complete intersection is claimed to be this
    /// scheme. The claim is verified only for reduced point schemes.
    pub fn set_ci_witness(&mut self, forms: Vec<HomogeneousForm>) {
        self.ci_witness = Some(forms);
    }

    pub fn with_ci_witness(mut self, forms: Vec<HomogeneousForm>) -> Self {
        self.set_ci_witness(forms);
        self
    }

    pub fn dimension_t(&self) -> usize {
        self.t
    }

    pub fn points(&self) -> &[FatPoint] {
        &self.points
    }

    pub fn hypersurfaces(&self) -> &[HomogeneousForm] {
        &self.hypersurfaces
    }

    pub fn ci_witness(&self) -> Option<&[HomogeneousForm]> {
        self.ci_witness.as_deref()
    }

    pub fn is_ambient(&self) -> bool {
        self.whole
    }

    pub fn is_empty(&self) -> bool {
        !self.whole && self.points.is_empty() && self.hypersurfaces.is_empty()
    }

    pub fn is_reduced_points(&self) -> bool {
        !self.whole && self.hypersurfaces.is_empty() && self.points.iter().all(|p| p.order == 1)
    }

    /// Dimension of the scheme (t for the whole space).
    pub fn dimension(&self) -> usize {
        if self.is_ambient() {
            self.t
        } else if !self.hypersurfaces.is_empty() {
            self.t - 1
        } else {
            0
        }
    }

    /// Σ C(n+t−1, t) over fat points plus Σ deg g over hypersurfaces
    /// (1 for the whole space, 0 for the empty scheme).
    pub fn degree(&self) -> u64 {
        if self.is_ambient() {
            return 1;
        }
        self.points.iter().map(FatPoint::degree).sum::<u64>()
            + self.hypersurfaces.iter().map(|g| g.degree() as u64).sum::<u64>()
    }

    pub fn components(&self) -> Vec<Component> {
        self.points
            .iter()
            .cloned()
            .map(Component::Point)
            .chain(self.hypersurfaces.iter().cloned().map(Component::Hypersurface))
            .collect()
    }

    /// Scheme-theoretic union of the listed atoms.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.t != other.t {
            return Err(Error::Shape("union of schemes in different spaces".into()));
        }
        if self.whole || other.whole {
            return Ok(Self::ambient(self.t));
        }
        let mut s = self.clone();
        s.ci_witness = None;
        for p in &other.points {
            if let Some(q) = s.points.iter_mut().find(|q| q.coords == p.coords) {
                q.order = q.order.max(p.order);
            } else {
                s.points.push(p.clone());
            }
        }
        for g in &other.hypersurfaces {
            if !s.hypersurfaces.contains(g) {
                s.hypersurfaces.push(g.clone());
            }
        }
        Ok(s)
    }

    fn check_degree(&self, d: usize) -> Result<()> {
        if let Some(g) = self.hypersurfaces.iter().find(|g| g.degree() > d) {
            return Err(Error::DegreeTooSmall { d, needed: g.degree() });
        }
        Ok(())
    }

    /// Linear conditions cutting out I_X(D) from the coefficient space.
    pub fn condition_rows(&self, d: usize) -> Result<QMatrix> {
        self.check_degree(d)?;
        let n = space_dim(self.t, d);
        if self.whole {
            return Ok((0..n)
                .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
                .collect());
        }
        let mut rows = Vec::new();
        for p in &self.points {
            rows.extend(p.condition_rows(d));
        }
        for g in &self.hypersurfaces {
            rows.extend(divisibility_rows(g, d)?);
        }
        Ok(rows)
    }

    pub fn to_json(&self) -> SchemeJson {
        SchemeJson::from(self)
    }
}

/// I_X(D) with the ambient L² metric, saturated, basis in HNF.
pub fn vanishing_lattice(x: &SchemeSpec, d: usize) -> Result<MetrizedLattice> {
    let rows = x.condition_rows(d)?;
    let n = space_dim(x.t, d);
    let metric = Metric::l2_forms(x.t, d);
    if rows.is_empty() {
        return Ok(MetrizedLattice::standard(n, metric));
    }
    if x.whole {
        return Ok(crate::lattice::saturate_with_metric(&[], n, metric));
    }
    let basis = linalg::integer_kernel(&rows, n);
    Ok(crate::lattice::saturate_with_metric(&basis, n, metric))
}

/// H_X(D) = C(D+t, t) − rk I_X(D).
pub fn hilbert_fn(x: &SchemeSpec, d: usize) -> Result<usize> {
    let rows = x.condition_rows(d)?;
    Ok(linalg::rank(&rows, space_dim(x.t, d)))
}

/// Upper bound deg X · C(D + dim X, dim X), summed over the point part and
/// the hypersurface part when both are present.
pub fn hilbert_upper_bound(x: &SchemeSpec, d: usize) -> u64 {
    if x.whole {
        return binom(d + x.t, x.t);
    }
    let points: u64 = x.points.iter().map(FatPoint::degree).sum();
    let hyper: u64 = x.hypersurfaces.iter().map(|g| g.degree() as u64).sum();
    points + hyper * binom(d + x.t - 1, x.t - 1)
}

/// Checks a complete-intersection witness for a reduced point scheme: the
/// t forms vanish on every point and their degrees multiply to #points.
fn witness_is_valid(x: &SchemeSpec) -> Option<Vec<usize>> {
    let w = x.ci_witness.as_ref()?;
    if !x.is_reduced_points() || x.points.is_empty() || w.len() != x.t {
        return None;
    }
    let degrees: Vec<usize> = w.iter().map(HomogeneousForm::degree).collect();
    let product: usize = degrees.iter().product();
    let vanish = w
        .iter()
        .all(|g| g.dimension() == x.t && x.points.iter().all(|p| g.eval_z(&p.coords).is_zero()));
    (vanish && product == x.points.len()).then_some(degrees)
}

/// Upper and (when witnessed) lower bounds for the algebraic Hilbert
/// function. The first report is the upper bound; a second report is
/// present when a verified complete-intersection witness allows the lower
/// bound deg X · C(D − D̄ + dim X, dim X) with D̄ = Σ D_i − s.
pub fn check_al_hilbert(x: &SchemeSpec, d: usize) -> Result<Vec<BoundReport>> {
    let h = hilbert_fn(x, d)? as u64;
    let upper = hilbert_upper_bound(x, d);
    let mut inputs = json!({
        "t": x.t, "d": d, "deg_x": x.degree(), "dim_x": x.dimension(), "H": h, "upper": upper,
    });
    let mut out = Vec::new();
    match witness_is_valid(x) {
        Some(degrees) => {
            let dbar = degrees.iter().sum::<usize>() as i64 - degrees.len() as i64;
            let lower = if d as i64 >= dbar { x.degree() } else { 0 };
            inputs["lower"] = json!(lower);
            out.push(BoundReport::exact(
                "hilbert_upper",
                h as f64,
                upper as f64,
                h <= upper,
                inputs.clone(),
            ));
            out.push(BoundReport::exact(
                "hilbert_lower",
                lower as f64,
                h as f64,
                lower <= h,
                inputs,
            ));
        }
        None => {
            inputs["lower"] = json!("not witnessed");
            out.push(BoundReport::exact(
                "hilbert_upper",
                h as f64,
                upper as f64,
                h <= upper,
                inputs,
            ));
        }
    }
    Ok(out)
}

/// H_{V_n}(D) ≤ deg Y · C(n + t − 1, t) for the n-th infinitesimal
/// neighbourhood V_n of a reduced point configuration Y.
pub fn check_al_hilbinf(y: &SchemeSpec, n: usize, d: usize) -> Result<BoundReport> {
    if !y.is_reduced_points() || y.points.is_empty() {
        return Err(Error::Precondition(
            "needs a nonempty reduced point configuration".into(),
        ));
    }
    let fat = SchemeSpec::from_points(
        y.t,
        y.points
            .iter()
            .map(|p| FatPoint::new(p.coords.clone(), n))
            .collect::<Result<_>>()?,
    )?;
    let h = hilbert_fn(&fat, d)? as u64;
    let bound = y.points.len() as u64 * binom(n + y.t - 1, y.t);
    Ok(BoundReport::exact(
        "hilbert_infinitesimal",
        h as f64,
        bound as f64,
        h <= bound,
        json!({"t": y.t, "n": n, "d": d, "deg_y": y.points.len(), "H": h}),
    ))
}

/// Wire format: `{"t": .., "points": [{"coords": [..], "order": n}],
/// "hypersurfaces": [form-json], "ci_witness": [form-json]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct SchemeJson {
    pub t: usize,
    #[serde(default)]
    pub points: Vec<PointJson>,
    #[serde(default)]
    pub hypersurfaces: Vec<HomogeneousForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci_witness: Option<Vec<HomogeneousForm>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct PointJson {
    pub coords: Vec<Value>,
    #[serde(default = "one")]
    pub order: usize,
}

fn one() -> usize {
    1
}

fn z_json(x: &Z) -> Value {
    x.to_i64()
        .map(Value::from)
        .unwrap_or_else(|| Value::from(x.to_string()))
}

fn json_z(v: &Value) -> Result<Z> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Z::from)
            .ok_or_else(|| Error::Parse(format!("bad coordinate {n}"))),
        Value::String(s) => s.parse().map_err(|_| Error::Parse(format!("bad coordinate {s:?}"))),
        other => Err(Error::Parse(format!("bad coordinate {other}"))),
    }
}

impl From<&SchemeSpec> for SchemeJson {
    fn from(s: &SchemeSpec) -> Self {
        SchemeJson {
            t: s.t,
            points: s
                .points
                .iter()
                .map(|p| PointJson {
                    coords: p.coords.iter().map(z_json).collect(),
                    order: p.order,
                })
                .collect(),
            hypersurfaces: s.hypersurfaces.clone(),
            ci_witness: s.ci_witness.clone(),
        }
    }
}

impl TryFrom<&SchemeJson> for SchemeSpec {
    type Error = Error;

    fn try_from(j: &SchemeJson) -> Result<Self> {
        if j.points.is_empty() && j.hypersurfaces.is_empty() {
            return Ok(SchemeSpec::ambient(j.t));
        }
        let mut s = SchemeSpec::empty(j.t);
        for p in &j.points {
            let coords = p.coords.iter().map(json_z).collect::<Result<Vec<Z>>>()?;
            s.add_point(FatPoint::new(coords, p.order)?)?;
        }
        for g in &j.hypersurfaces {
            s.add_hypersurface(g.clone())?;
        }
        if let Some(w) = &j.ci_witness {
            s.set_ci_witness(w.clone());
        }
        Ok(s)
    }
}

impl SchemeSpec {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: SchemeJson = serde_json::from_str(s)?;
        SchemeSpec::try_from(&j)
    }
}
