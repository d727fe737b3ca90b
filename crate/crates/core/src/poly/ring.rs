use std::sync::Arc;

use crate::field::{FieldSpec, Scalar};
use crate::poly::{Monomial, MonomialOrder, PolyError, Polynomial};

/// A polynomial ring `k[x_0, ..., x_n]` with named variables.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    field: FieldSpec,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, field: FieldSpec) -> Result<Ring, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(PolyError::InvalidRing("a ring needs at least one variable".into()));
        }
        if names.len() > 64 {
            return Err(PolyError::InvalidRing("at most 64 variables are supported".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(PolyError::InvalidRing(format!("'{n}' is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(PolyError::InvalidRing(format!("duplicate variable '{n}'")));
            }
        }
        Ok(Arc::new(Self { names, field }))
    }

    /// Ring on `prefix0, ..., prefix{count-1}`.
    pub fn indexed(prefix: &str, count: usize, field: FieldSpec) -> Result<Ring, PolyError> {
        Self::new((0..count).map(|i| format!("{prefix}{i}")), field)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial::zero(self.clone(), MonomialOrder::Grevlex)
    }

    pub fn constant(self: &Arc<Self>, c: Scalar) -> Polynomial {
        Polynomial::from_terms(self.clone(), MonomialOrder::Grevlex, vec![(Monomial::one(self.nvars()), c)])
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        self.constant(self.field.one())
    }

    pub fn var(self: &Arc<Self>, index: usize) -> Polynomial {
        assert!(index < self.nvars(), "variable index {index} out of range");
        Polynomial::from_terms(
            self.clone(),
            MonomialOrder::Grevlex,
            vec![(Monomial::variable(self.nvars(), index), self.field.one())],
        )
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial) -> Polynomial {
        assert_eq!(m.nvars(), self.nvars());
        Polynomial::from_terms(self.clone(), MonomialOrder::Grevlex, vec![(m, self.field.one())])
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial, crate::poly::ParseError> {
        crate::poly::parse_polynomial(self, text)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
