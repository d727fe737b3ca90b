use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub(crate) type Exponents = SmallVec<[u32; 8]>;

/// Dense exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = u32>) -> Self {
        let exps: Exponents = exps.into_iter().collect();
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Self { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` is set iff variable `i` occurs.
    pub fn support_mask(&self) -> u64 {
        debug_assert!(self.nvars() <= 64);
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | (1 << i))
    }

    /// If this is `x_i^k` with `k ≥ 1`, returns `i`.
    pub fn pure_power_variable(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// Monomial orders. Variables are ranked by index: `x_0 > x_1 > ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Product order eliminating the first `k` variables: compare the first
    /// block by grevlex, break ties by grevlex on the remaining variables.
    BlockElimination(usize),
}

impl MonomialOrder {
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }

    pub fn is_valid_for(&self, nvars: usize) -> bool {
        match *self {
            MonomialOrder::BlockElimination(k) => k >= 1 && k < nvars,
            _ => true,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(&a.exps, a.degree, &b.exps, b.degree),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::BlockElimination(k) => {
                let (ah, at) = a.exps.split_at(k);
                let (bh, bt) = b.exps.split_at(k);
                let ahd: u32 = ah.iter().sum();
                let bhd: u32 = bh.iter().sum();
                grevlex(ah, ahd, bh, bhd).then_with(|| grevlex(at, a.degree - ahd, bt, b.degree - bhd))
            }
        }
    }
}

fn grevlex(a: &[u32], ad: u32, b: &[u32], bd: u32) -> Ordering {
    ad.cmp(&bd).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// All monomials of total degree `n` in `nvars` variables, descending in `order`.
pub fn monomials_of_degree(nvars: usize, n: u32, order: MonomialOrder) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; nvars];
    fill(&mut current, 0, n, &mut out);
    out.sort_by(|a, b| order.cmp(b, a));
    out
}

fn fill(current: &mut Vec<u32>, index: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if index + 1 == current.len() {
        current[index] = remaining;
        out.push(Monomial::new(current.iter().copied()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[index] = e;
        fill(current, index + 1, remaining - e, out);
    }
    current[index] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.iter().copied())
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        // x1^2 > x0*x2 in grevlex
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_block_examples() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        let b = MonomialOrder::BlockElimination(1);
        assert_eq!(b.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(b.cmp(&m(&[0, 0, 2]), &m(&[0, 1, 0])), Ordering::Greater);
        assert!(!MonomialOrder::BlockElimination(0).is_valid_for(3));
        assert!(!MonomialOrder::BlockElimination(3).is_valid_for(3));
        assert!(MonomialOrder::BlockElimination(2).is_valid_for(3));
    }

    #[test]
    fn degree_enumeration_counts() {
        let two = monomials_of_degree(2, 10, MonomialOrder::Grevlex);
        assert_eq!(two.len(), 11);
        assert_eq!(two[0], m(&[10, 0]));
        assert_eq!(two[10], m(&[0, 10]));
        assert_eq!(monomials_of_degree(4, 2, MonomialOrder::Grevlex).len(), 10);
        assert_eq!(monomials_of_degree(3, 0, MonomialOrder::Grevlex), vec![m(&[0, 0, 0])]);
        let cubic = monomials_of_degree(4, 3, MonomialOrder::Lex);
        assert_eq!(cubic.len(), 20);
        assert!(cubic.windows(2).all(|w| MonomialOrder::Lex.cmp(&w[0], &w[1]) == Ordering::Greater));
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 0, 1]).divides(&m(&[2, 1, 1])));
        assert!(!m(&[1, 0, 2]).divides(&m(&[2, 1, 1])));
        assert_eq!(m(&[1, 0, 1]).quotient_of(&m(&[2, 1, 1])), Some(m(&[1, 1, 0])));
        assert_eq!(m(&[1, 2, 0]).lcm(&m(&[0, 1, 3])), m(&[1, 2, 3]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 4, 1])));
        assert_eq!(m(&[0, 3, 0]).pure_power_variable(), Some(1));
        assert_eq!(m(&[1, 3, 0]).pure_power_variable(), None);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 3).prop_map(Monomial::new)
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::BlockElimination(1)),
            Just(MonomialOrder::BlockElimination(2)),
        ]
    }

    proptest! {
        #[test]
        fn order_axioms(o in arb_order(), a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            // totality and antisymmetry
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            // one is minimal
            prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
            // multiplicative
            if o.cmp(&a, &b) == Ordering::Less {
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), Ordering::Less);
            }
            // transitivity
            if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
            }
        }
    }
}
