use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use crate::field::{primitive_scale, random_scalar, FieldSpec, Scalar};
use crate::poly::{monomials_of_degree, Monomial, MonomialOrder, PolyError, PolyRing, Ring};

pub type Term = (Monomial, Scalar);

/// A polynomial with nonzero coefficients, terms strictly descending in `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    order: MonomialOrder,
    terms: Vec<Term>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_exact_string())
    }
}

impl Polynomial {
    pub fn zero(ring: Ring, order: MonomialOrder) -> Self {
        Self { ring, order, terms: Vec::new() }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms(ring: Ring, order: MonomialOrder, terms: Vec<Term>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity does not match ring");
            assert_eq!(c.field(), field, "coefficient field does not match ring");
            match acc.get_mut(&m) {
                Some(existing) => *existing += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Self { ring, order, terms }
    }

    /// Terms must already be strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: Ring, order: MonomialOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Self { ring, order, terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common degree of all terms, if there is one. Zero counts as homogeneous of every degree
    /// and reports `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// True for zero and for forms of degree `n`.
    pub fn is_homogeneous_of(&self, n: u32) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == n)
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.order == other.order
    }

    fn check(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    /// Same polynomial with terms re-sorted for another order.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        assert!(order.is_valid_for(self.ring.nvars()), "order {order:?} invalid for this ring");
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: self.ring.clone(), order, terms }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.ring.clone(), self.order));
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(self.ring.clone(), self.order);
        for (m, c) in &small.terms {
            acc = acc.merge(&large.mul_term(m, c), false);
        }
        Ok(acc)
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let terms = merge_terms(self.order, &self.terms, &other.terms, subtract);
        Polynomial { ring: self.ring.clone(), order: self.order, terms }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring.clone(), self.order);
        }
        Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c · m · self`. Multiplying by a monomial preserves term order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring.clone(), self.order);
        }
        Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut acc = Polynomial::from_terms(
            self.ring.clone(),
            self.order,
            vec![(Monomial::one(self.ring.nvars()), self.field().one())],
        );
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales to the canonical representative: integer coefficients with content
    /// one and positive leading coefficient over the rationals, monic over `F_p`.
    pub fn normalized(&self) -> Polynomial {
        let lambda = primitive_scale(self.field(), self.terms.iter().map(|(_, c)| c));
        self.scale(&lambda)
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inverse().expect("leading coefficient is nonzero")),
        }
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars(), "point arity does not match ring");
        let mut acc = self.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Composite `self(images[0], ..., images[n])`, living in the images' ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        let n = self.ring.nvars();
        if images.len() != n {
            return Err(PolyError::Arity { expected: n, got: images.len() });
        }
        let first = &images[0];
        if images.iter().any(|g| !g.same_ring(first)) || first.field() != self.field() {
            return Err(PolyError::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|g| vec![Polynomial::from_terms(g.ring.clone(), g.order, vec![(Monomial::one(g.ring.nvars()), g.field().one())])])
            .collect();
        let mut acc = Polynomial::zero(first.ring.clone(), first.order);
        for (m, c) in &self.terms {
            let mut t = Polynomial::from_terms(
                first.ring.clone(),
                first.order,
                vec![(Monomial::one(first.ring.nvars()), c.clone())],
            );
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Re-expresses this polynomial in `target`, sending variable `i` to
    /// `var_map[i]`. Variables mapped to `None` must not occur.
    pub fn map_variables(&self, target: &Ring, var_map: &[Option<usize>], order: MonomialOrder) -> Result<Polynomial, PolyError> {
        if var_map.len() != self.ring.nvars() {
            return Err(PolyError::Arity { expected: self.ring.nvars(), got: var_map.len() });
        }
        if target.field() != self.field() {
            return Err(PolyError::RingMismatch);
        }
        if !order.is_valid_for(target.nvars()) {
            return Err(PolyError::InvalidOrder(order, target.nvars()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match var_map[i] {
                    Some(j) => exps[j] += e,
                    None => return Err(PolyError::UnmappedVariable(self.ring.names()[i].clone())),
                }
            }
            terms.push((Monomial::new(exps), c.clone()));
        }
        Ok(Polynomial::from_terms(target.clone(), order, terms))
    }

    /// Reduces rational coefficients into the prime field of `target`, whose
    /// variables must match. `None` when the prime divides a denominator.
    pub fn reduce_modulo(&self, target: &Ring) -> Option<Polynomial> {
        if target.names() != self.ring.names() {
            return None;
        }
        let field = target.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let value = match c.as_rational() {
                Some(q) => field.from_ratio(q.numer(), q.denom()).ok()?,
                None if c.field() == field => c.clone(),
                None => return None,
            };
            if !value.is_zero() {
                terms.push((m.clone(), value));
            }
        }
        Some(Polynomial::from_sorted_terms(target.clone(), self.order, terms))
    }

    /// Prints the exact coefficients, terms descending in the polynomial's own order.
    pub fn to_exact_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono = monomial_string(&self.ring, m);
            if mono.is_empty() {
                out.push_str(&magnitude.to_string());
            } else if magnitude.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{magnitude}*{mono}"));
            }
        }
        out
    }
}

/// Canonical text: grevlex term order, scaled by [`Polynomial::normalized`].
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.with_order(MonomialOrder::Grevlex).normalized().to_exact_string())
    }
}

pub(crate) fn monomial_string(ring: &PolyRing, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                ring.names()[i].clone()
            } else {
                format!("{}^{}", ring.names()[i], e)
            }
        })
        .collect();
    parts.join("*")
}

pub(crate) fn merge_terms(order: MonomialOrder, a: &[Term], b: &[Term], subtract: bool) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.cmp(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if subtract { -&t.1 } else { t.1.clone() };
        out.push((t.0.clone(), c));
    }
    out
}

/// Scales a tuple of polynomials by one common factor so that all coefficients
/// become integers with joint content one and the first nonzero leading
/// coefficient is positive (monic over `F_p`). The projective map the tuple
/// defines is unchanged.
pub fn canonical_tuple(polys: &[Polynomial]) -> Vec<Polynomial> {
    let Some(first) = polys.first() else {
        return Vec::new();
    };
    let field = first.field();
    let lambda = primitive_scale(field, polys.iter().flat_map(|p| p.terms.iter().map(|(_, c)| c)));
    polys.iter().map(|p| p.with_order(MonomialOrder::Grevlex).scale(&lambda)).collect()
}

/// Random form of degree `n` whose coefficients come from [`random_scalar`].
pub fn random_homogeneous<R: Rng + ?Sized>(ring: &Ring, n: u32, bound: u64, rng: &mut R) -> Polynomial {
    let terms = monomials_of_degree(ring.nvars(), n, MonomialOrder::Grevlex)
        .into_iter()
        .map(|m| (m, random_scalar(ring.field(), bound, rng)))
        .collect();
    Polynomial::from_terms(ring.clone(), MonomialOrder::Grevlex, terms)
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("polynomial arithmetic: {e}"))
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring4() -> Ring {
        PolyRing::indexed("x", 4, FieldSpec::Rationals).unwrap()
    }

    fn uv() -> Ring {
        PolyRing::new(["u", "v"], FieldSpec::Rationals).unwrap()
    }

    #[test]
    fn addition_cancels() {
        let r = PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap();
        let a = r.parse("x1^2 - x0*x2").unwrap();
        let b = r.parse("x0*x2").unwrap();
        assert_eq!(&a + &b, r.parse("x1^2").unwrap());
    }

    #[test]
    fn difference_of_squares() {
        let r = ring4();
        let p = r.parse("x0 + x1").unwrap() * r.parse("x0 - x1").unwrap();
        assert_eq!(p, r.parse("x0^2 - x1^2").unwrap());
    }

    #[test]
    fn scaling_by_half() {
        let r = ring4();
        let half = FieldSpec::Rationals.from_ratio(&1.into(), &2.into()).unwrap();
        assert_eq!(r.parse("2*x0").unwrap().scale(&half), r.var(0));
    }

    #[test]
    fn quadric_vanishes_on_quintic() {
        let r = ring4();
        let s = uv();
        let images: Vec<_> = ["u^5", "u^4*v", "u*v^4", "v^5"].iter().map(|t| s.parse(t).unwrap()).collect();
        let f = r.parse("x0*x3 - x1*x2").unwrap();
        assert!(f.substitute(&images).unwrap().is_zero());
    }

    #[test]
    fn substitute_into_veronese() {
        let r = PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap();
        let s = uv();
        let images: Vec<_> = ["u^2", "u*v", "v^2"].iter().map(|t| s.parse(t).unwrap()).collect();
        assert_eq!(r.var(0).substitute(&images).unwrap(), s.parse("u^2").unwrap());
        let a = r.parse("x1^2").unwrap().substitute(&images).unwrap();
        let b = r.parse("x0*x2").unwrap().substitute(&images).unwrap();
        assert_eq!(a, s.parse("u^2*v^2").unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn substitute_checks_arity_and_ring() {
        let r = ring4();
        let s = uv();
        assert_eq!(
            r.var(0).substitute(&[s.var(0), s.var(1)]),
            Err(PolyError::Arity { expected: 4, got: 2 })
        );
        let other = PolyRing::new(["a", "b"], FieldSpec::Rationals).unwrap();
        assert_eq!(
            r.var(0).substitute(&[s.var(0), s.var(1), other.var(0), s.var(0)]),
            Err(PolyError::RingMismatch)
        );
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = ring4().var(0);
        let b = uv().var(0);
        assert_eq!(a.try_add(&b), Err(PolyError::RingMismatch));
        assert_eq!(a.try_mul(&a.with_order(MonomialOrder::Lex)), Err(PolyError::RingMismatch));
    }

    #[test]
    fn invalid_rings_rejected() {
        assert!(PolyRing::new(Vec::<String>::new(), FieldSpec::Rationals).is_err());
        assert!(PolyRing::new(["x", "x"], FieldSpec::Rationals).is_err());
        assert!(PolyRing::new(["1x"], FieldSpec::Rationals).is_err());
    }

    #[test]
    fn canonical_tuple_uses_common_factor() {
        let r = ring4();
        let half = FieldSpec::Rationals.from_ratio(&1.into(), &2.into()).unwrap();
        let tuple = vec![r.var(0).scale(&half), r.parse("-x1 + 3*x2").unwrap()];
        let c = canonical_tuple(&tuple);
        assert_eq!(c[0], r.var(0));
        assert_eq!(c[1], r.parse("-2*x1 + 6*x2").unwrap());
    }

    #[test]
    fn random_homogeneous_contract() {
        let r = PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..5).map(|_| random_homogeneous(&r, 3, 5, &mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(9), draw(9));
        assert!(draw(9).iter().all(|p| p.is_homogeneous_of(3)));
    }

    #[test]
    fn random_homogeneous_supports_vary() {
        let r = PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let supports: std::collections::HashSet<Vec<Monomial>> = (0..1000)
            .map(|_| {
                let p = random_homogeneous(&r, 2, 1, &mut rng);
                assert!(p.is_homogeneous_of(2));
                p.terms().iter().map(|(m, _)| m.clone()).collect()
            })
            .collect();
        assert!(supports.len() >= 2, "only {} supports", supports.len());
    }

    fn arb_poly(ring: Ring, max_deg: u32) -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..=max_deg, ring.nvars()), -4i64..5), 0..5).prop_map(
            move |ts| {
                let terms = ts
                    .into_iter()
                    .map(|(e, c)| (Monomial::new(e), ring.field().from_i64(c)))
                    .collect();
                Polynomial::from_terms(ring.clone(), MonomialOrder::Grevlex, terms)
            },
        )
    }

    fn arb_form(ring: Ring, degree: u32) -> impl Strategy<Value = Polynomial> {
        let monos = monomials_of_degree(ring.nvars(), degree, MonomialOrder::Grevlex);
        proptest::collection::vec(-3i64..4, monos.len()).prop_map(move |cs| {
            let terms = monos.iter().cloned().zip(cs.into_iter().map(|c| ring.field().from_i64(c))).collect();
            Polynomial::from_terms(ring.clone(), MonomialOrder::Grevlex, terms)
        })
    }

    proptest! {
        #[test]
        fn substitute_is_a_ring_homomorphism(
            f in arb_poly(PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap(), 2),
            g in arb_poly(PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap(), 2),
            images in proptest::collection::vec(arb_poly(PolyRing::new(["u", "v"], FieldSpec::Rationals).unwrap(), 2), 3),
        ) {
            let r = PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap();
            let f = f.map_variables(&r, &[Some(0), Some(1), Some(2)], MonomialOrder::Grevlex).unwrap();
            let g = g.map_variables(&r, &[Some(0), Some(1), Some(2)], MonomialOrder::Grevlex).unwrap();
            let sf = f.substitute(&images).unwrap();
            let sg = g.substitute(&images).unwrap();
            prop_assert_eq!((&f * &g).substitute(&images).unwrap(), &sf * &sg);
            prop_assert_eq!((&f + &g).substitute(&images).unwrap(), &sf + &sg);
        }

        #[test]
        fn substitute_multiplies_degrees(
            f in arb_form(PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap(), 2),
            images in proptest::collection::vec(arb_form(PolyRing::new(["u", "v"], FieldSpec::Rationals).unwrap(), 3), 3),
        ) {
            let s = f.substitute(&images).unwrap();
            prop_assert!(s.is_homogeneous_of(6));
        }

        #[test]
        fn products_of_forms_are_forms(
            f in arb_form(PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap(), 2),
            g in arb_form(PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap(), 3),
        ) {
            prop_assert!((&f * &g).is_homogeneous_of(5));
        }

        #[test]
        fn print_parse_round_trip(f in arb_poly(PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap(), 3)) {
            let r = f.ring().clone();
            let exact = r.parse(&f.to_exact_string()).unwrap();
            prop_assert_eq!(&exact, &f);
            let canonical = f.to_string();
            prop_assert_eq!(r.parse(&canonical).unwrap().to_string(), canonical);
        }
    }
}
