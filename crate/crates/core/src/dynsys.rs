//! Polarized dynamical systems `(X, O(1)|_X, φ)` on embedded varieties.
//!
//! `φ` is given by forms `g_0, ..., g_m` of degree `q` representing the
//! pullbacks of the coordinates modulo the ideal of `X`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::field::{primitive_scale, FieldSpec, Scalar};
use crate::groebner::{buchberger, GroebnerBasis, GroebnerError};
use crate::poly::{MonomialOrder, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynError {
    #[error("generator {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("generator {0} is a nonzero constant")]
    ConstantGenerator(usize),
    #[error("the ideal defines the empty set in projective space")]
    EmptyVariety,
    #[error("polynomials from different rings")]
    RingMismatch,
    #[error("point has {got} coordinates, expected {expected}")]
    PointArity { expected: usize, got: usize },
    #[error("all coordinates of the point are zero")]
    ZeroPoint,
    #[error("coordinate field {found} does not match {expected}")]
    PointField { expected: FieldSpec, found: FieldSpec },
    #[error("the map is undefined at {0}: every coordinate form vanishes")]
    Indeterminate(RationalPoint),
    #[error("point {0} does not lie on the variety")]
    OffVariety(RationalPoint),
    #[error("invalid point text '{0}'")]
    PointSyntax(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// `X ⊂ P^m` with its grevlex Gröbner basis.
#[derive(Debug, Clone)]
pub struct ProjectiveVariety {
    ring: Ring,
    ideal_generators: Vec<Polynomial>,
    groebner: GroebnerBasis,
    dimension: i64,
}

impl ProjectiveVariety {
    /// The generators must be forms of positive degree and generate the full
    /// (saturated, radical) ideal of `X`; only homogeneity and nonemptiness are
    /// checked.
    pub fn new(ring: Ring, generators: Vec<Polynomial>) -> Result<Self, DynError> {
        let mut gens = Vec::with_capacity(generators.len());
        for (i, g) in generators.into_iter().enumerate() {
            if g.ring() != &ring {
                return Err(DynError::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(DynError::NotHomogeneous(i));
            }
            if !g.is_zero() && g.homogeneous_degree() == Some(0) {
                return Err(DynError::ConstantGenerator(i));
            }
            gens.push(g.with_order(MonomialOrder::Grevlex));
        }
        let groebner = if gens.is_empty() {
            GroebnerBasis::zero_ideal(ring.clone(), MonomialOrder::Grevlex)
        } else {
            buchberger(&gens, MonomialOrder::Grevlex)?
        };
        if groebner.is_projectively_empty()? {
            return Err(DynError::EmptyVariety);
        }
        let dimension = groebner.affine_dimension() - 1;
        Ok(Self { ring, ideal_generators: gens, groebner, dimension })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `m`, for `X ⊂ P^m`.
    pub fn ambient_dimension(&self) -> usize {
        self.ring.nvars() - 1
    }

    pub fn ideal_generators(&self) -> &[Polynomial] {
        &self.ideal_generators
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.groebner
    }

    /// Projective dimension `g` of `X`.
    pub fn dimension(&self) -> i64 {
        self.dimension
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.ideal_generators.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0)
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.ideal_generators.iter().all(|f| f.evaluate(p.coordinates()).is_zero())
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.groebner.normal_form(f).expect("same ring")
    }

    pub fn is_member(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }
}

/// A failed hypothesis of a polarized system, with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Arity { expected: usize, got: usize },
    PolarizationDegree { q: u32 },
    MapRing { index: usize },
    MapDegree { index: usize, expected: u32 },
    /// `f_k(g_0, ..., g_m)` is not in the ideal; `normal_form` is its remainder.
    NotInvariant { generator: usize, normal_form: Polynomial },
    /// The forms `g_i` have a common zero on `X`.
    BasePointsOnVariety,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Arity { expected, got } => write!(f, "arity: expected {expected} map forms, got {got}"),
            Violation::PolarizationDegree { q } => write!(f, "polarization degree: q = {q}, need q >= 2"),
            Violation::MapRing { index } => write!(f, "map form {index} lives in a different ring"),
            Violation::MapDegree { index, expected } => {
                write!(f, "map form {index} is not a nonzero form of degree {expected}")
            }
            Violation::NotInvariant { generator, normal_form } => write!(
                f,
                "invariance: generator {generator} composed with the map has nonzero normal form {normal_form}"
            ),
            Violation::BasePointsOnVariety => write!(f, "base points: the map forms have a common zero on X"),
        }
    }
}

/// A validated polarized system.
#[derive(Debug, Clone)]
pub struct PolarizedSystem {
    variety: ProjectiveVariety,
    q: u32,
    map_forms: Vec<Polynomial>,
}

/// Checks every hypothesis and reports all that fail.
pub fn validate_system(
    variety: ProjectiveVariety,
    q: u32,
    map_forms: Vec<Polynomial>,
) -> Result<PolarizedSystem, Vec<Violation>> {
    let mut violations = Vec::new();
    let n = variety.ring.nvars();
    if q < 2 {
        violations.push(Violation::PolarizationDegree { q });
    }
    if map_forms.len() != n {
        violations.push(Violation::Arity { expected: n, got: map_forms.len() });
        return Err(violations);
    }
    let mut well_formed = true;
    for (index, g) in map_forms.iter().enumerate() {
        if g.ring() != &variety.ring {
            violations.push(Violation::MapRing { index });
            well_formed = false;
        } else if g.is_zero() || !g.is_homogeneous_of(q) {
            violations.push(Violation::MapDegree { index, expected: q });
            well_formed = false;
        }
    }
    if !well_formed {
        return Err(violations);
    }
    let forms: Vec<Polynomial> = map_forms.iter().map(|g| g.with_order(MonomialOrder::Grevlex)).collect();
    for (k, f) in variety.ideal_generators.iter().enumerate() {
        let composite = f.substitute(&forms).expect("arity checked");
        let nf = variety.reduce(&composite);
        if !nf.is_zero() {
            violations.push(Violation::NotInvariant { generator: k, normal_form: nf });
        }
    }
    let mut combined = variety.ideal_generators.clone();
    combined.extend(forms.iter().cloned());
    let joint = buchberger(&combined, MonomialOrder::Grevlex).expect("same ring");
    if !joint.is_projectively_empty().expect("homogeneous") {
        violations.push(Violation::BasePointsOnVariety);
    }
    if violations.is_empty() {
        Ok(PolarizedSystem { variety, q, map_forms: forms })
    } else {
        Err(violations)
    }
}

impl PolarizedSystem {
    pub fn variety(&self) -> &ProjectiveVariety {
        &self.variety
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn map_forms(&self) -> &[Polynomial] {
        &self.map_forms
    }

    /// Forms of degree `q^r` representing `(φ^r)^*` of the coordinates.
    ///
    /// Each composition step is reduced modulo the ideal of `X`; this is sound
    /// because `φ` preserves `X` and the ideal is the full ideal of `X`.
    pub fn iterate_pullback(&self, r: u32) -> Vec<Polynomial> {
        assert!(r >= 1, "iterate_pullback needs r >= 1");
        let mut alpha = self.map_forms.clone();
        for _ in 1..r {
            alpha = self
                .map_forms
                .iter()
                .map(|g| self.variety.reduce(&g.substitute(&alpha).expect("arity")))
                .collect();
        }
        alpha
    }

    /// The system `(X, φ^r)`, polarized with degree `q^r`.
    pub fn iterate_system(&self, r: u32) -> PolarizedSystem {
        PolarizedSystem { variety: self.variety.clone(), q: self.q.pow(r), map_forms: self.iterate_pullback(r) }
    }

    pub fn evaluate(&self, p: &RationalPoint) -> Result<RationalPoint, DynError> {
        evaluate(&self.map_forms, p)
    }

    /// Iterates `φ` from `p` until a point repeats or `max_steps` maps have been applied.
    pub fn orbit_classify(&self, p: &RationalPoint, max_steps: usize) -> Result<OrbitOutcome, DynError> {
        if p.coordinates().len() != self.variety.ring.nvars() {
            return Err(DynError::PointArity { expected: self.variety.ring.nvars(), got: p.coordinates().len() });
        }
        if !self.variety.contains(p) {
            return Err(DynError::OffVariety(p.clone()));
        }
        let mut seen: HashMap<RationalPoint, usize> = HashMap::new();
        let mut orbit = vec![p.clone()];
        seen.insert(p.clone(), 0);
        for step in 1..=max_steps {
            let next = self.evaluate(orbit.last().unwrap())?;
            if let Some(&first) = seen.get(&next) {
                return Ok(OrbitOutcome::Preperiodic { tail: first, cycle: step - first, orbit });
            }
            seen.insert(next.clone(), step);
            orbit.push(next);
        }
        Ok(OrbitOutcome::NoRepetition { steps: max_steps })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitOutcome {
    /// `φ^(tail+cycle)(P) = φ^tail(P)`, minimal in both. `orbit` holds
    /// `P, φ(P), ..., φ^(tail+cycle-1)(P)`.
    Preperiodic { tail: usize, cycle: usize, orbit: Vec<RationalPoint> },
    NoRepetition { steps: usize },
}

impl OrbitOutcome {
    /// The periodic points reached, in orbit order.
    pub fn cycle_points(&self) -> Option<&[RationalPoint]> {
        match self {
            OrbitOutcome::Preperiodic { tail, orbit, .. } => Some(&orbit[*tail..]),
            OrbitOutcome::NoRepetition { .. } => None,
        }
    }
}

/// Image of `p` under the map given by `forms`.
pub fn evaluate(forms: &[Polynomial], p: &RationalPoint) -> Result<RationalPoint, DynError> {
    let Some(first) = forms.first() else {
        return Err(DynError::PointArity { expected: p.coordinates().len(), got: 0 });
    };
    if first.ring().nvars() != p.coordinates().len() {
        return Err(DynError::PointArity { expected: first.ring().nvars(), got: p.coordinates().len() });
    }
    let image: Vec<Scalar> = forms.iter().map(|f| f.evaluate(p.coordinates())).collect();
    match RationalPoint::new(image) {
        Err(DynError::ZeroPoint) => Err(DynError::Indeterminate(p.clone())),
        other => other,
    }
}

/// A point of `P^m(k)` in canonical coordinates: over the rationals, coprime
/// integers with first nonzero entry positive; over `F_p`, first nonzero entry one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: Vec<Scalar>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Scalar>) -> Result<Self, DynError> {
        let Some(first) = coords.first() else {
            return Err(DynError::ZeroPoint);
        };
        let field = first.field();
        if let Some(bad) = coords.iter().find(|c| c.field() != field) {
            return Err(DynError::PointField { expected: field, found: bad.field() });
        }
        if coords.iter().all(Scalar::is_zero) {
            return Err(DynError::ZeroPoint);
        }
        let lambda = primitive_scale(field, coords.iter());
        Ok(Self { coords: coords.iter().map(|c| c * &lambda).collect() })
    }

    /// Parses `a:b:c` with integer or `n/d` entries.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self, DynError> {
        let bad = || DynError::PointSyntax(text.to_string());
        let coords = text
            .split(':')
            .map(|part| {
                let part = part.trim();
                let (n, d) = match part.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (part, "1"),
                };
                let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
                let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
                field.from_ratio(&n, &d).map_err(|_| bad())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coords)
    }

    pub fn coordinates(&self) -> &[Scalar] {
        &self.coords
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(":"))
    }
}
