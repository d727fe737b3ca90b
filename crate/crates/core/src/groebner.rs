//! Reduced Gröbner bases and the ideal queries built on them.
//!
//! Bases are computed with Buchberger's algorithm using the normal selection
//! strategy and the Gebauer–Möller installation of the product and chain
//! criteria.

use std::cmp::Ordering;

use thiserror::Error;

use crate::field::Scalar;
use crate::linalg::DenseMatrix;
use crate::poly::{monomials_of_degree, Monomial, MonomialOrder, PolyError, PolyRing, Polynomial, Ring, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("no generators supplied")]
    EmptyGenerators,
    #[error("generators or queries live in different rings or orders")]
    RingMismatch,
    #[error("the ideal is not homogeneous")]
    NotHomogeneous,
    #[error("monomial order {0:?} is not graded")]
    NotGraded(MonomialOrder),
    #[error("expected block elimination order with first block {expected}, found {found:?}")]
    WrongOrder { expected: usize, found: MonomialOrder },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A reduced Gröbner basis together with the generators it was computed from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    source_generators: Vec<Polynomial>,
}

/// Degree-`n` piece of a homogeneous ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: u32,
    /// Reduced-echelon basis: monic, distinct leading monomials.
    pub basis: Vec<Polynomial>,
    /// Number of monomials of degree `n`.
    pub ambient_dimension: usize,
}

impl GradedPiece {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Outcome of multivariate division: `f = Σ quotients[i]·elements[i] + remainder`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

struct Reducer<'a> {
    lead: &'a Monomial,
    mask: u64,
    poly: &'a Polynomial,
}

fn reducers<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> Vec<Reducer<'a>> {
    polys
        .into_iter()
        .filter_map(|p| {
            let lead = p.leading_monomial()?;
            Some(Reducer { lead, mask: lead.support_mask(), poly: p })
        })
        .collect()
}

fn find_reducer<'r, 'a>(rs: &'r [Reducer<'a>], m: &Monomial) -> Option<&'r Reducer<'a>> {
    let mask = m.support_mask();
    rs.iter().find(|r| r.mask & !mask == 0 && r.lead.divides(m))
}

/// `a - coef·shift·b`, both descending in `order`.
fn sub_scaled(order: MonomialOrder, a: &[Term], b: &[Term], shift: &Monomial, coef: &Scalar) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(m, c)| (m.mul(shift), c)).peekable();
    while i < a.len() {
        let Some((bm, bc)) = bi.peek() else { break };
        match order.cmp(&a[i].0, bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (bm, bc) = bi.next().unwrap();
                out.push((bm, -&(coef * bc)));
            }
            Ordering::Equal => {
                let c = &a[i].1 - &(coef * *bc);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                bi.next();
                i += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (bm, bc) in bi {
        out.push((bm, -&(coef * bc)));
    }
    out
}

/// Full reduction of `f` by `rs`; every term of the result is irreducible.
fn reduce(order: MonomialOrder, f: Vec<Term>, rs: &[Reducer<'_>]) -> Vec<Term> {
    let mut p = f;
    let mut start = 0;
    let mut rem = Vec::new();
    while start < p.len() {
        let (m, c) = &p[start];
        match find_reducer(rs, m) {
            Some(r) => {
                let shift = r.lead.quotient_of(m).expect("divides");
                let coef = c.checked_div(r.poly.leading_coeff().unwrap()).expect("nonzero lead");
                p = sub_scaled(order, &p[start + 1..], &r.poly.terms()[1..], &shift, &coef);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    ring: Ring,
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn lead(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    /// Gebauer–Möller update for a new element `h`.
    fn install(&mut self, h: Polynomial) {
        let hi = self.polys.len();
        let hl = h.leading_monomial().unwrap().clone();
        self.polys.push(h);
        self.active.push(true);

        let candidates: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair { i: g, j: hi, lcm: self.lead(g).lcm(&hl) })
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for (k, p) in candidates.iter().enumerate() {
            let coprime = self.lead(p.i).is_coprime(&hl);
            let dominated = candidates[k + 1..].iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p.clone());
            }
        }
        // product criterion
        kept.retain(|p| !self.lead(p.i).is_coprime(&hl));
        // dedupe equal lcms, keeping the first
        let mut fresh: Vec<Pair> = Vec::new();
        for p in kept {
            if !fresh.iter().any(|q| q.lcm == p.lcm) {
                fresh.push(p);
            }
        }

        // chain criterion against the old pairs
        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                !(hl.divides(&p.lcm)
                    && self.lead(p.i).lcm(&hl) != p.lcm
                    && self.lead(p.j).lcm(&hl) != p.lcm)
            })
            .collect();
        self.pairs.extend(fresh);

        for g in 0..hi {
            if self.active[g] && hl.divides(self.lead(g)) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| order.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))))?
            .0;
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, p: &Pair) -> Vec<Term> {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let sf = f.leading_monomial().unwrap().quotient_of(&p.lcm).unwrap();
        let sg = g.leading_monomial().unwrap().quotient_of(&p.lcm).unwrap();
        let cf = f.leading_coeff().unwrap();
        let cg = g.leading_coeff().unwrap();
        let coef = cf.checked_div(cg).unwrap();
        let left: Vec<Term> = f.terms()[1..].iter().map(|(m, c)| (m.mul(&sf), c.clone())).collect();
        sub_scaled(self.order, &left, &g.terms()[1..], &sg, &coef)
    }

    fn run(mut self) -> Vec<Polynomial> {
        while let Some(pair) = self.select() {
            let s = self.s_polynomial(&pair);
            if s.is_empty() {
                continue;
            }
            let rs = reducers(self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p));
            let h = reduce(self.order, s, &rs);
            if h.is_empty() {
                continue;
            }
            let h = Polynomial::from_sorted_terms(self.ring.clone(), self.order, h).make_monic();
            self.install(h);
        }
        self.polys.into_iter().zip(self.active).filter(|(_, a)| *a).map(|(p, _)| p).collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `generators` under `order`.
pub fn buchberger(generators: &[Polynomial], order: MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    let first = generators.first().ok_or(GroebnerError::EmptyGenerators)?;
    let ring = first.ring().clone();
    if generators.iter().any(|g| g.ring() != &ring) {
        return Err(GroebnerError::RingMismatch);
    }
    if !order.is_valid_for(ring.nvars()) {
        return Err(PolyError::InvalidOrder(order, ring.nvars()).into());
    }
    let source_generators = generators.to_vec();
    let mut inputs: Vec<Polynomial> =
        generators.iter().filter(|g| !g.is_zero()).map(|g| g.with_order(order).make_monic()).collect();
    inputs.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

    let mut builder = Builder { ring: ring.clone(), order, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for g in inputs {
        let rs = reducers(builder.polys.iter().zip(&builder.active).filter(|(_, &a)| a).map(|(p, _)| p));
        let h = reduce(order, g.into_terms(), &rs);
        if !h.is_empty() {
            let h = Polynomial::from_sorted_terms(ring.clone(), order, h).make_monic();
            builder.install(h);
        }
    }
    let minimal = builder.run();
    let elements = interreduce(&ring, order, minimal);
    Ok(GroebnerBasis { ring, order, elements, source_generators })
}

/// Turns a Gröbner basis into the reduced one, canonically scaled and sorted.
fn interreduce(ring: &Ring, order: MonomialOrder, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    // drop elements whose lead is divisible by another lead
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (k, p) in basis.iter().enumerate() {
        let lm = p.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, q)| {
            let ql = q.leading_monomial().unwrap();
            l != k && ql.divides(lm) && (ql != lm || l < k)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others = reducers(minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, p)| p));
        let (lead, tail) = minimal[k].terms().split_first().unwrap();
        let mut terms = vec![lead.clone()];
        terms.extend(reduce(order, tail.to_vec(), &others));
        reduced.push(Polynomial::from_sorted_terms(ring.clone(), order, terms).normalized());
    }
    reduced
}

impl GroebnerBasis {
    /// Basis of the zero ideal.
    pub fn zero_ideal(ring: Ring, order: MonomialOrder) -> Self {
        Self { ring, order, elements: Vec::new(), source_generators: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn source_generators(&self) -> &[Polynomial] {
        &self.source_generators
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.elements.iter().filter_map(Polynomial::leading_monomial).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|p| p.leading_monomial().is_some_and(Monomial::is_one))
    }

    /// True when the ideal is generated by forms. Checked on the reduced basis,
    /// which is independent of the generators supplied.
    pub fn is_homogeneous_ideal(&self) -> bool {
        self.source_generators.iter().all(Polynomial::is_homogeneous)
            || (self.order.is_graded() && self.elements.iter().all(Polynomial::is_homogeneous))
    }

    fn prepare(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if f.ring() != &self.ring {
            return Err(GroebnerError::RingMismatch);
        }
        Ok(if f.order() == self.order { f.clone() } else { f.with_order(self.order) })
    }

    /// Remainder of `f` on division by the basis; unique for a Gröbner basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, GroebnerError> {
        let f = self.prepare(f)?;
        let rs = reducers(&self.elements);
        let rem = reduce(self.order, f.into_terms(), &rs);
        Ok(Polynomial::from_sorted_terms(self.ring.clone(), self.order, rem))
    }

    /// Division recording quotients, so that `f - remainder` is exhibited as an ideal member.
    pub fn divide(&self, f: &Polynomial) -> Result<Division, GroebnerError> {
        let f = self.prepare(f)?;
        let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); self.elements.len()];
        let mut p = f.into_terms();
        let mut rem = Vec::new();
        let mut start = 0;
        while start < p.len() {
            let (m, c) = &p[start];
            let hit = self.elements.iter().position(|g| g.leading_monomial().unwrap().divides(m));
            match hit {
                Some(k) => {
                    let g = &self.elements[k];
                    let shift = g.leading_monomial().unwrap().quotient_of(m).unwrap();
                    let coef = c.checked_div(g.leading_coeff().unwrap()).unwrap();
                    quotients[k].push((shift.clone(), coef.clone()));
                    p = sub_scaled(self.order, &p[start + 1..], &g.terms()[1..], &shift, &coef);
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        Ok(Division {
            quotients: quotients
                .into_iter()
                .map(|q| Polynomial::from_terms(self.ring.clone(), self.order, q))
                .collect(),
            remainder: Polynomial::from_sorted_terms(self.ring.clone(), self.order, rem),
        })
    }

    pub fn is_member(&self, f: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    fn require_graded_homogeneous(&self) -> Result<(), GroebnerError> {
        if !self.order.is_graded() {
            return Err(GroebnerError::NotGraded(self.order));
        }
        if !self.is_homogeneous_ideal() {
            return Err(GroebnerError::NotHomogeneous);
        }
        Ok(())
    }

    /// Basis of `I_n`, read off from the kernel of `S_n → S_n / I_n`.
    pub fn graded_piece(&self, n: u32) -> Result<GradedPiece, GroebnerError> {
        self.require_graded_homogeneous()?;
        let field = self.ring.field();
        let monos = monomials_of_degree(self.ring.nvars(), n, self.order);
        let index: std::collections::HashMap<&Monomial, usize> =
            monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let rs = reducers(&self.elements);
        let mut rows = Vec::new();
        for m in &monos {
            let nf = reduce(self.order, vec![(m.clone(), field.one())], &rs);
            if nf.len() == 1 && &nf[0].0 == m {
                continue;
            }
            let mut row = vec![field.zero(); monos.len()];
            row[index[m]] = field.one();
            for (t, c) in nf {
                let slot = &mut row[index[&t]];
                *slot = &*slot - &c;
            }
            rows.push(row);
        }
        let basis = if rows.is_empty() {
            Vec::new()
        } else {
            let r = DenseMatrix::from_rows(field, rows).expect("rectangular").rref();
            (0..r.rank)
                .map(|i| {
                    let terms = r
                        .matrix
                        .row(i)
                        .iter()
                        .zip(&monos)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, m)| (m.clone(), c.clone()))
                        .collect();
                    Polynomial::from_sorted_terms(self.ring.clone(), self.order, terms)
                })
                .collect()
        };
        Ok(GradedPiece { degree: n, basis, ambient_dimension: monos.len() })
    }

    /// `dim (S/I)_n`: the number of standard monomials of degree `n`.
    pub fn hilbert_function(&self, n: u32) -> Result<usize, GroebnerError> {
        self.require_graded_homogeneous()?;
        let leads = self.leading_monomials();
        Ok(monomials_of_degree(self.ring.nvars(), n, self.order)
            .iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .count())
    }

    /// Krull dimension of `S/I`, or −1 for the unit ideal.
    pub fn affine_dimension(&self) -> i64 {
        if self.is_unit_ideal() {
            return -1;
        }
        let n = self.ring.nvars();
        let masks = minimal_supports(self.leading_monomials().iter().map(|m| m.support_mask()));
        n as i64 - min_hitting_set(&masks, n) as i64
    }

    /// True iff the ideal has no zeros in projective space: every variable has a
    /// pure power among the leading monomials.
    pub fn is_projectively_empty(&self) -> Result<bool, GroebnerError> {
        if !self.is_homogeneous_ideal() {
            return Err(GroebnerError::NotHomogeneous);
        }
        if self.is_unit_ideal() {
            return Ok(true);
        }
        let mut seen = vec![false; self.ring.nvars()];
        for m in self.leading_monomials() {
            if let Some(i) = m.pure_power_variable() {
                seen[i] = true;
            }
        }
        Ok(seen.into_iter().all(|s| s))
    }

    /// Elements free of the first `k` variables, re-expressed in the ring of the
    /// remaining ones (grevlex). Requires the matching block elimination order;
    /// `k = 0` returns the basis itself.
    pub fn elimination_ideal(&self, k: usize) -> Result<Vec<Polynomial>, GroebnerError> {
        if k == 0 {
            return Ok(self.elements.clone());
        }
        if self.order != MonomialOrder::BlockElimination(k) {
            return Err(GroebnerError::WrongOrder { expected: k, found: self.order });
        }
        let names = &self.ring.names()[k..];
        let sub = PolyRing::new(names.iter().cloned(), self.ring.field())?;
        let var_map: Vec<Option<usize>> = (0..self.ring.nvars()).map(|i| i.checked_sub(k)).collect();
        let mut out = Vec::new();
        for g in &self.elements {
            if g.terms().iter().all(|(m, _)| m.exponents()[..k].iter().all(|&e| e == 0)) {
                out.push(g.map_variables(&sub, &var_map, MonomialOrder::Grevlex)?);
            }
        }
        Ok(out)
    }
}

/// Generators of `(ideal) ∩ k[x_k, ..., x_n]` in the smaller ring.
pub fn eliminate(generators: &[Polynomial], k: usize) -> Result<Vec<Polynomial>, GroebnerError> {
    if k == 0 {
        return Ok(buchberger(generators, MonomialOrder::Grevlex)?.elements);
    }
    buchberger(generators, MonomialOrder::BlockElimination(k))?.elimination_ideal(k)
}

fn minimal_supports(masks: impl Iterator<Item = u64>) -> Vec<u64> {
    let mut all: Vec<u64> = masks.collect();
    all.sort_by_key(|m| m.count_ones());
    all.dedup();
    let mut out: Vec<u64> = Vec::new();
    for m in all {
        if !out.iter().any(|&o| o & m == o) {
            out.push(m);
        }
    }
    out
}

/// Size of a smallest variable set meeting every support; the complement of
/// such a set is a maximal independent set of the leading-term ideal.
fn min_hitting_set(supports: &[u64], nvars: usize) -> usize {
    fn search(supports: &[u64], chosen: u64, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        // branch on the unmet support with the fewest variables
        let unmet = supports.iter().filter(|&&s| s & chosen == 0).min_by_key(|s| s.count_ones());
        let Some(&s) = unmet else {
            *best = size;
            return;
        };
        let mut bits = s;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            search(supports, chosen | b, size + 1, best);
            bits &= bits - 1;
        }
    }
    let mut best = nvars + 1;
    search(supports, 0, 0, &mut best);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring(n: usize) -> Ring {
        PolyRing::indexed("x", n, FieldSpec::Rationals).unwrap()
    }

    fn gens(r: &Ring, texts: &[&str]) -> Vec<Polynomial> {
        texts.iter().map(|t| r.parse(t).unwrap()).collect()
    }

    fn gb(r: &Ring, texts: &[&str]) -> GroebnerBasis {
        buchberger(&gens(r, texts), MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn single_conic_is_its_own_basis() {
        let r = ring(3);
        let g = gb(&r, &["x1^2 - x0*x2"]);
        assert_eq!(g.elements(), &[r.parse("x1^2 - x0*x2").unwrap()]);
    }

    #[test]
    fn coordinate_ideal() {
        let r = ring(2);
        let g = gb(&r, &["x1", "x0"]);
        assert_eq!(g.elements(), &gens(&r, &["x0", "x1"])[..]);
        assert_eq!(g.affine_dimension(), 0);
        assert!(g.is_projectively_empty().unwrap());
    }

    #[test]
    fn normal_form_single_step() {
        let r = ring(3);
        let g = gb(&r, &["x1^2 - x0*x2"]);
        assert_eq!(g.normal_form(&r.parse("x1^2").unwrap()).unwrap(), r.parse("x0*x2").unwrap());
        assert!(g.is_member(&r.zero()).unwrap());
        assert!(g.is_member(&r.parse("x1^2 - x0*x2").unwrap()).unwrap());
    }

    #[test]
    fn twisted_cubic_basis() {
        let r = ring(4);
        let g = gb(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        assert_eq!(g.elements().len(), 3);
        assert_eq!(g.affine_dimension(), 2);
        assert_eq!(g.hilbert_function(1).unwrap(), 4);
        assert_eq!(g.hilbert_function(2).unwrap(), 7);
        assert_eq!(g.graded_piece(2).unwrap().dimension(), 3);
    }

    #[test]
    fn unit_and_zero_ideals() {
        let r = ring(3);
        let unit = gb(&r, &["x0 + 1", "x0"]);
        assert!(unit.is_unit_ideal());
        assert_eq!(unit.affine_dimension(), -1);
        assert_eq!(unit.elements(), &[r.one()]);
        let zero = buchberger(&[r.zero()], MonomialOrder::Grevlex).unwrap();
        assert!(zero.elements().is_empty());
        assert_eq!(zero.affine_dimension(), 3);
        assert_eq!(GroebnerBasis::zero_ideal(r.clone(), MonomialOrder::Grevlex).affine_dimension(), 3);
        let h = gb(&r, &["x0", "x1", "x2"]);
        assert_eq!(h.affine_dimension(), 0);
        assert_eq!(h.graded_piece(0).unwrap().dimension(), 0);
    }

    #[test]
    fn projective_emptiness() {
        let r = ring(3);
        assert!(gb(&r, &["x0^2", "x1^2", "x2^2"]).is_projectively_empty().unwrap());
        let r4 = ring(4);
        assert!(!gb(&r4, &["x0*x3 - x1*x2"]).is_projectively_empty().unwrap());
        assert_eq!(gb(&r, &["x0 + 1"]).is_projectively_empty(), Err(GroebnerError::NotHomogeneous));
    }

    #[test]
    fn graded_queries_need_homogeneous_graded_input() {
        let r = ring(2);
        assert_eq!(gb(&r, &["x0 - 1"]).hilbert_function(2), Err(GroebnerError::NotHomogeneous));
        let lex = buchberger(&gens(&r, &["x0 - x1"]), MonomialOrder::Lex).unwrap();
        assert_eq!(lex.graded_piece(1), Err(GroebnerError::NotGraded(MonomialOrder::Lex)));
    }

    #[test]
    fn veronese_elimination() {
        let r = PolyRing::new(["u", "v", "x0", "x1", "x2"], FieldSpec::Rationals).unwrap();
        let g = gens(&r, &["x0 - u^2", "x1 - u*v", "x2 - v^2"]);
        let eliminated = eliminate(&g, 2).unwrap();
        let small = PolyRing::indexed("x", 3, FieldSpec::Rationals).unwrap();
        assert_eq!(eliminated, vec![small.parse("x1^2 - x0*x2").unwrap()]);
        let same = eliminate(&gens(&small, &["x1^2 - x0*x2"]), 0).unwrap();
        assert_eq!(same, vec![small.parse("x1^2 - x0*x2").unwrap()]);
    }

    #[test]
    fn elimination_checks_order() {
        let r = ring(3);
        let g = gb(&r, &["x0 - x1"]);
        assert!(matches!(g.elimination_ideal(1), Err(GroebnerError::WrongOrder { .. })));
    }

    #[test]
    fn ring_mismatch() {
        let g = gb(&ring(3), &["x0"]);
        assert_eq!(g.normal_form(&ring(2).var(0)), Err(GroebnerError::RingMismatch));
        assert_eq!(buchberger(&[], MonomialOrder::Grevlex), Err(GroebnerError::EmptyGenerators));
        assert_eq!(
            buchberger(&[ring(3).var(0), ring(2).var(0)], MonomialOrder::Grevlex),
            Err(GroebnerError::RingMismatch)
        );
    }

    #[test]
    fn division_records_quotients() {
        let r = ring(3);
        let g = gb(&r, &["x1^2 - x0*x2", "x0^3 - x2^3"]);
        let f = r.parse("x1^5 + 3*x0^4*x1 - x2^2*x1 + 7").unwrap();
        let d = g.divide(&f).unwrap();
        let mut combo = d.remainder.clone();
        for (q, e) in d.quotients.iter().zip(g.elements()) {
            combo = &combo + &(q * e);
        }
        assert_eq!(combo, f.with_order(g.order()));
        assert_eq!(d.remainder, g.normal_form(&f).unwrap());
    }

    #[test]
    fn hitting_set_small_cases() {
        assert_eq!(min_hitting_set(&[0b001, 0b010, 0b100], 3), 3);
        assert_eq!(min_hitting_set(&[0b011, 0b110], 3), 1);
        assert_eq!(min_hitting_set(&[], 3), 0);
    }
}
