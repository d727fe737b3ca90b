//! Exact construction of ambient extensions for polarized self-maps of
//! embedded projective varieties.
//!
//! Given `X ⊂ P^m` cut out by forms `f_i` and a self-map `φ` of `X` given by
//! degree-`q` forms, [`extender::extend`] builds forms `h_0, ..., h_m` of
//! degree `q^r` that agree with `φ^r` on `X` and have no common zero in
//! `P^m`, together with checkable certificates. [`paramcurve`] handles maps of
//! rational curves given by a parametrization, including the linear-algebra
//! obstruction that can rule out small `r`.

pub mod dynsys;
pub mod extender;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod paramcurve;
pub mod poly;

pub use field::{FieldSpec, Scalar};
pub use groebner::{buchberger, GroebnerBasis};
pub use poly::{Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
