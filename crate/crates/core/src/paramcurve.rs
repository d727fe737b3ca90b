//! Rational curves `P^1 → P^m` given by a parametrization, and self-maps of
//! `P^1` pushed along them.
//!
//! A self-map `(P, Q)` of the curve extends to degree-`q^r` forms on `P^m`
//! exactly when each pullback `p_i(P_r, Q_r)` lies in the image of the
//! restriction map `S_{q^r} → k[u,v]_{e·q^r}`. That is a linear system; when it
//! is inconsistent the residual of the pullback modulo the image names the
//! obstructing monomials.

use std::fmt;

use thiserror::Error;

use crate::dynsys::{DynError, ProjectiveVariety};
use crate::extender::{extend_lifted, ExtensionConfig, ExtensionFailure, ExtensionResult, RPolicy};
use crate::field::Scalar;
use crate::groebner::{buchberger, eliminate, GroebnerError};
use crate::linalg::{DenseMatrix, Solution};
use crate::poly::{monomials_of_degree, Monomial, MonomialOrder, PolyError, PolyRing, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("the parameter ring must have exactly two variables, found {0}")]
    ParameterRing(usize),
    #[error("form {0} is not homogeneous of the common degree")]
    Degree(usize),
    #[error("forms must have positive degree")]
    ZeroDegree,
    #[error("a self-map of the curve needs degree at least 2, found {0}")]
    SelfMapDegree(u32),
    #[error("the forms have a common zero on P^1")]
    BasePoint,
    #[error("at least {0} forms are required")]
    TooFewForms(usize),
    #[error("forms live in different rings")]
    RingMismatch,
    #[error("ambient variable names clash with the parameter names")]
    NameClash,
    #[error("elimination produced a non-homogeneous generator")]
    NonHomogeneousImplicitization,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Variety(#[from] DynError),
}

fn common_degree(forms: &[Polynomial]) -> Result<u32, CurveError> {
    let d = forms.iter().find_map(Polynomial::homogeneous_degree).ok_or(CurveError::Degree(0))?;
    for (i, f) in forms.iter().enumerate() {
        if !f.is_homogeneous_of(d) {
            return Err(CurveError::Degree(i));
        }
    }
    Ok(d)
}

/// True when the forms generate an ideal of `k[u,v]` containing powers of both variables.
fn base_point_free(forms: &[Polynomial]) -> Result<bool, CurveError> {
    Ok(buchberger(forms, MonomialOrder::Grevlex)?.is_projectively_empty()?)
}

/// An embedding `(u:v) ↦ (p_0 : ... : p_m)` of `P^1` by forms of degree `e`.
#[derive(Debug, Clone)]
pub struct CurveParametrization {
    param_ring: Ring,
    ambient_ring: Ring,
    forms: Vec<Polynomial>,
    degree: u32,
}

impl CurveParametrization {
    /// Ambient coordinates are named `x0, ..., xm`.
    pub fn new(forms: Vec<Polynomial>) -> Result<Self, CurveError> {
        let first = forms.first().ok_or(CurveError::TooFewForms(2))?;
        let ambient = PolyRing::indexed("x", forms.len(), first.field())?;
        Self::with_ambient(forms, ambient)
    }

    pub fn with_ambient(forms: Vec<Polynomial>, ambient_ring: Ring) -> Result<Self, CurveError> {
        if forms.len() < 2 {
            return Err(CurveError::TooFewForms(2));
        }
        let param_ring = forms[0].ring().clone();
        if param_ring.nvars() != 2 {
            return Err(CurveError::ParameterRing(param_ring.nvars()));
        }
        if forms.iter().any(|f| f.ring() != &param_ring) || ambient_ring.field() != param_ring.field() {
            return Err(CurveError::RingMismatch);
        }
        if ambient_ring.nvars() != forms.len() {
            return Err(PolyError::Arity { expected: ambient_ring.nvars(), got: forms.len() }.into());
        }
        if ambient_ring.names().iter().any(|n| param_ring.var_index(n).is_some()) {
            return Err(CurveError::NameClash);
        }
        let forms: Vec<Polynomial> = forms.into_iter().map(|f| f.with_order(MonomialOrder::Grevlex)).collect();
        let degree = common_degree(&forms)?;
        if degree == 0 {
            return Err(CurveError::ZeroDegree);
        }
        if !base_point_free(&forms)? {
            return Err(CurveError::BasePoint);
        }
        Ok(Self { param_ring, ambient_ring, forms, degree })
    }

    pub fn param_ring(&self) -> &Ring {
        &self.param_ring
    }

    pub fn ambient_ring(&self) -> &Ring {
        &self.ambient_ring
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    /// Common degree `e` of the forms.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn restrict(&self, f: &Polynomial) -> Result<Polynomial, CurveError> {
        Ok(f.substitute(&self.forms)?)
    }
}

/// A self-map `(u:v) ↦ (P : Q)` of `P^1` of degree at least two.
#[derive(Debug, Clone)]
pub struct CurveSelfMap {
    p: Polynomial,
    q: Polynomial,
    degree: u32,
}

impl CurveSelfMap {
    pub fn new(p: Polynomial, q: Polynomial) -> Result<Self, CurveError> {
        if p.ring() != q.ring() {
            return Err(CurveError::RingMismatch);
        }
        if p.ring().nvars() != 2 {
            return Err(CurveError::ParameterRing(p.ring().nvars()));
        }
        let pair = vec![p.with_order(MonomialOrder::Grevlex), q.with_order(MonomialOrder::Grevlex)];
        let degree = common_degree(&pair)?;
        if degree < 2 {
            return Err(CurveError::SelfMapDegree(degree));
        }
        if !base_point_free(&pair)? {
            return Err(CurveError::BasePoint);
        }
        let [p, q] = <[Polynomial; 2]>::try_from(pair).unwrap();
        Ok(Self { p, q, degree })
    }

    pub fn p(&self) -> &Polynomial {
        &self.p
    }

    pub fn q(&self) -> &Polynomial {
        &self.q
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `(P_r, Q_r)` with `φ^r = (P_r : Q_r)`.
    pub fn iterate(&self, r: u32) -> (Polynomial, Polynomial) {
        let mut pr = self.p.clone();
        let mut qr = self.q.clone();
        for _ in 1..r {
            let images = [pr.clone(), qr.clone()];
            pr = self.p.substitute(&images).expect("two images");
            qr = self.q.substitute(&images).expect("two images");
        }
        (pr, qr)
    }
}

/// `p_i(P_r, Q_r)`: the coordinates of `i ∘ φ^r`, forms of degree `e·q^r`.
pub fn pullbacks(curve: &CurveParametrization, selfmap: &CurveSelfMap, r: u32) -> Result<Vec<Polynomial>, CurveError> {
    assert!(r >= 1, "pullbacks need r >= 1");
    if selfmap.p.ring() != &curve.param_ring {
        return Err(CurveError::RingMismatch);
    }
    let (pr, qr) = selfmap.iterate(r);
    curve.forms.iter().map(|f| Ok(f.substitute(&[pr.clone(), qr.clone()])?)).collect()
}

/// The restriction map `S_d → k[u,v]_{e·d}` in monomial coordinates.
#[derive(Debug, Clone)]
pub struct RestrictionMatrix {
    pub degree: u32,
    pub matrix: DenseMatrix,
    /// Monomials of `k[u,v]_{e·d}`, descending.
    pub row_monomials: Vec<Monomial>,
    /// Monomials of `S_d`, descending in grevlex.
    pub column_monomials: Vec<Monomial>,
}

impl RestrictionMatrix {
    pub fn coordinates(&self, f: &Polynomial) -> Vec<Scalar> {
        self.row_monomials.iter().map(|m| f.coefficient(m)).collect()
    }
}

pub fn restriction_matrix(curve: &CurveParametrization, d: u32) -> RestrictionMatrix {
    let field = curve.param_ring.field();
    let columns = monomials_of_degree(curve.ambient_ring.nvars(), d, MonomialOrder::Grevlex);
    let rows = monomials_of_degree(2, curve.degree * d, MonomialOrder::Grevlex);
    let mut matrix = DenseMatrix::zeros(field, rows.len(), columns.len());
    for (j, m) in columns.iter().enumerate() {
        let image = curve.restrict(&curve.ambient_ring.monomial(m.clone())).expect("arity");
        for (i, row) in rows.iter().enumerate() {
            let c = image.coefficient(row);
            if !c.is_zero() {
                matrix.set(i, j, c);
            }
        }
    }
    RestrictionMatrix { degree: d, matrix, row_monomials: rows, column_monomials: columns }
}

/// Echelon description of the image of the restriction map.
#[derive(Debug, Clone)]
pub struct ImageBasis {
    pub degree: u32,
    pub rank: usize,
    /// Pivot monomials of the reduced image basis.
    pub image_monomials: Vec<Monomial>,
    /// Monomials of `k[u,v]_{e·d}` that are not pivots.
    pub missing_monomials: Vec<Monomial>,
    /// Reduced image basis: row `i` has a one at `image_monomials[i]` and zeros at the other pivots.
    pub echelon: DenseMatrix,
    pivot_rows: Vec<usize>,
}

impl ImageBasis {
    /// The pullback with its image part removed; supported on missing monomials only.
    pub fn residual(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut res = coords.to_vec();
        for (i, &p) in self.pivot_rows.iter().enumerate() {
            let c = coords[p].clone();
            if c.is_zero() {
                continue;
            }
            for (k, e) in self.echelon.row(i).iter().enumerate() {
                if !e.is_zero() {
                    res[k] = &res[k] - &(&c * e);
                }
            }
        }
        res
    }
}

pub fn image_basis(restriction: &RestrictionMatrix) -> ImageBasis {
    let reduced = restriction.matrix.transpose().rref();
    let rank = reduced.rank;
    let rows = &restriction.row_monomials;
    let pivots = reduced.pivot_columns.clone();
    let missing = (0..rows.len()).filter(|k| !pivots.contains(k)).map(|k| rows[k].clone()).collect();
    let mut echelon = DenseMatrix::zeros(restriction.matrix.field(), rank, rows.len());
    for i in 0..rank {
        for (k, e) in reduced.matrix.row(i).iter().enumerate() {
            echelon.set(i, k, e.clone());
        }
    }
    ImageBasis {
        degree: restriction.degree,
        rank,
        image_monomials: pivots.iter().map(|&k| rows[k].clone()).collect(),
        missing_monomials: missing,
        echelon,
        pivot_rows: pivots,
    }
}

/// Why one pullback cannot be lifted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub pullback_index: usize,
    /// Missing monomials carrying a nonzero residual coefficient.
    pub monomials: Vec<(Monomial, Scalar)>,
    /// Row of the reduced augmented system `[M | b]` with zero coefficients and nonzero right side.
    pub inconsistent_row: usize,
    /// `y` with `y·M = 0` and `y·b ≠ 0`.
    pub left_witness: Vec<Scalar>,
}

#[derive(Debug, Clone)]
pub struct LiftReport {
    pub r: u32,
    /// `q^r`, the degree of the lifts.
    pub degree: u32,
    pub liftable: bool,
    pub pullbacks: Vec<Polynomial>,
    /// Forms `F_i` in the ambient ring with `F_i ∘ param = pullback_i`; present iff liftable.
    pub lifts: Option<Vec<Polynomial>>,
    pub obstructions: Vec<Obstruction>,
    pub image: ImageBasis,
}

impl LiftReport {
    /// Union of obstructing monomials over all pullbacks, descending.
    pub fn obstructing_monomials(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = Vec::new();
        for o in &self.obstructions {
            for (m, _) in &o.monomials {
                if !out.contains(m) {
                    out.push(m.clone());
                }
            }
        }
        out.sort_by(|a, b| MonomialOrder::Grevlex.cmp(b, a));
        out
    }
}

/// Decides whether `φ^r` lifts to forms of degree `q^r` on the ambient space.
pub fn liftability(curve: &CurveParametrization, selfmap: &CurveSelfMap, r: u32) -> Result<LiftReport, CurveError> {
    let degree = selfmap.degree.pow(r);
    let pulled = pullbacks(curve, selfmap, r)?;
    let restriction = restriction_matrix(curve, degree);
    let image = image_basis(&restriction);
    let mut lifts = Vec::new();
    let mut obstructions = Vec::new();
    for (i, b) in pulled.iter().enumerate() {
        let coords = restriction.coordinates(b);
        match restriction.matrix.solve(&coords).expect("shapes agree") {
            Solution::Consistent { particular, .. } => {
                let terms = restriction.column_monomials.iter().cloned().zip(particular).collect();
                let lift = Polynomial::from_terms(curve.ambient_ring.clone(), MonomialOrder::Grevlex, terms);
                debug_assert_eq!(&curve.restrict(&lift)?, b);
                lifts.push(lift);
            }
            Solution::Inconsistent { row, left_witness } => {
                let residual = image.residual(&coords);
                let monomials = restriction
                    .row_monomials
                    .iter()
                    .zip(residual)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (m.clone(), c))
                    .collect();
                obstructions.push(Obstruction { pullback_index: i, monomials, inconsistent_row: row, left_witness });
            }
        }
    }
    let liftable = obstructions.is_empty();
    Ok(LiftReport {
        r,
        degree,
        liftable,
        pullbacks: pulled,
        lifts: liftable.then_some(lifts),
        obstructions,
        image,
    })
}

/// Generators of the homogeneous ideal of the image curve, by eliminating `u, v`
/// from the graph ideal `(x_i - p_i)`.
pub fn implicitize(curve: &CurveParametrization) -> Result<Vec<Polynomial>, CurveError> {
    let pnames = curve.param_ring.names();
    let anames = curve.ambient_ring.names();
    let graph_ring = PolyRing::new(pnames.iter().chain(anames).cloned(), curve.param_ring.field())?;
    let param_map: Vec<Option<usize>> = (0..2).map(Some).collect();
    let mut graph = Vec::with_capacity(anames.len());
    for (i, p) in curve.forms.iter().enumerate() {
        let lifted = p.map_variables(&graph_ring, &param_map, MonomialOrder::Grevlex)?;
        graph.push(&graph_ring.var(2 + i) - &lifted);
    }
    let eliminated = eliminate(&graph, 2)?;
    let identity: Vec<Option<usize>> = (0..anames.len()).map(Some).collect();
    let mut out = Vec::with_capacity(eliminated.len());
    for g in eliminated {
        if !g.is_homogeneous() {
            return Err(CurveError::NonHomogeneousImplicitization);
        }
        out.push(g.map_variables(&curve.ambient_ring, &identity, MonomialOrder::Grevlex)?.normalized());
    }
    out.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| MonomialOrder::Grevlex.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()))
    });
    Ok(out)
}

/// One `r` of the minimal-`r` search.
#[derive(Debug, Clone)]
pub enum TrailEntry {
    Obstructed(LiftReport),
    ExtensionFailed { r: u32, failure: Box<ExtensionFailure> },
}

impl TrailEntry {
    pub fn r(&self) -> u32 {
        match self {
            TrailEntry::Obstructed(report) => report.r,
            TrailEntry::ExtensionFailed { r, .. } => *r,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CurveExtension {
    pub variety: ProjectiveVariety,
    pub lift: LiftReport,
    pub result: ExtensionResult,
    pub trail: Vec<TrailEntry>,
}

#[derive(Debug, Clone)]
pub struct CurveExtensionFailure {
    pub trail: Vec<TrailEntry>,
}

impl fmt::Display for CurveExtensionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no extension found for r in ")?;
        let rs: Vec<String> = self.trail.iter().map(|t| t.r().to_string()).collect();
        write!(f, "{{{}}}", rs.join(", "))
    }
}

/// Implicitizes the curve, then tries `r = 1, 2, ...`: lift `φ^r` if the
/// restriction map allows it and run the extender at that `r`.
pub fn end_to_end_extend(
    curve: &CurveParametrization,
    selfmap: &CurveSelfMap,
    config: &ExtensionConfig,
) -> Result<Result<CurveExtension, CurveExtensionFailure>, CurveError> {
    let variety = ProjectiveVariety::new(curve.ambient_ring.clone(), implicitize(curve)?)?;
    let rs: Vec<u32> = match config.r_policy {
        RPolicy::AutoSearch { max_r } => (1..=max_r).collect(),
        RPolicy::Fixed(r) => vec![r],
    };
    let mut trail = Vec::new();
    for r in rs {
        let report = liftability(curve, selfmap, r)?;
        let Some(lifts) = report.lifts.clone() else {
            trail.push(TrailEntry::Obstructed(report));
            continue;
        };
        match extend_lifted(&variety, selfmap.degree, r, &lifts, config) {
            Ok(result) => return Ok(Ok(CurveExtension { variety, lift: report, result, trail })),
            Err(failure) => trail.push(TrailEntry::ExtensionFailed { r, failure: Box::new(failure) }),
        }
    }
    Ok(Err(CurveExtensionFailure { trail }))
}

/// Checks `ψ ∘ i = i ∘ φ^r` along the parametrization: `h_i(p_0, ..., p_m)`
/// must equal the `i`-th pullback exactly. A conjugated result is compared
/// against `A·p` and `A·(pullbacks)`.
pub fn replay_on_parametrization(
    curve: &CurveParametrization,
    selfmap: &CurveSelfMap,
    result: &ExtensionResult,
) -> Result<bool, CurveError> {
    let mut expected = pullbacks(curve, selfmap, result.r())?;
    let mut images = curve.forms.clone();
    if let Some(c) = result.conjugation() {
        expected = c.apply(&expected);
        images = c.apply(&images);
    }
    let psi = result.psi();
    if psi.len() != expected.len() {
        return Ok(false);
    }
    for (h, b) in psi.iter().zip(&expected) {
        if &h.substitute(&images)? != b {
            return Ok(false);
        }
    }
    Ok(true)
}
