//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! A [`Scalar`] always knows which field it lives in. The `std::ops`
//! implementations panic when operands come from different fields; the
//! `checked_*` methods report the same situation as an [`ArithError`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

/// Smallest characteristic accepted by [`FieldSpec::prime_field`].
pub const MIN_DEFAULT_CHARACTERISTIC: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} and {1})")]
    FieldMismatch(FieldSpec, FieldSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is below the minimum {1}; use FieldSpec::small_prime_field to override")]
    CharacteristicTooSmall(u64, u64),
    #[error("characteristic {0} is too large (must fit in 63 bits)")]
    CharacteristicTooLarge(u64),
}

/// The coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

impl FieldSpec {
    /// A prime field of characteristic at least [`MIN_DEFAULT_CHARACTERISTIC`].
    pub fn prime_field(p: u64) -> Result<Self, FieldError> {
        if p < MIN_DEFAULT_CHARACTERISTIC {
            return Err(FieldError::CharacteristicTooSmall(p, MIN_DEFAULT_CHARACTERISTIC));
        }
        Self::small_prime_field(p)
    }

    /// A prime field of any prime characteristic.
    pub fn small_prime_field(p: u64) -> Result<Self, FieldError> {
        if p >= 1 << 63 {
            return Err(FieldError::CharacteristicTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue { value: r.to_u64().unwrap(), modulus: p }
            }
        }
    }

    /// The element `num / den`, reduced to canonical form.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            FieldSpec::PrimeField(_) => self.from_bigint(num).checked_div(&self.from_bigint(den)),
        }
    }
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// An exact element of a [`FieldSpec`].
///
/// Rationals are kept reduced with a positive denominator; residues are kept in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Sign for rationals; residues count as nonnegative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Residue { .. } => None,
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<(), ArithError> {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => Ok(()),
            (Scalar::Residue { modulus: p, .. }, Scalar::Residue { modulus: q, .. }) if p == q => Ok(()),
            _ => Err(ArithError::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                let s = (*a as u128 + *b as u128) % *p as u128;
                Scalar::Residue { value: s as u64, modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.check_same(other)?;
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => unreachable!(),
        })
    }

    pub fn inverse(&self) -> Result<Scalar, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ArithError> {
        self.check_same(other)?;
        self.checked_mul(&other.inverse()?)
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
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
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident, $assign_trait:ident, $assign:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar arithmetic: {e}"),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $assign_trait<&Scalar> for Scalar {
            fn $assign(&mut self, rhs: &Scalar) {
                *self = (&*self).$method(rhs);
            }
        }
    };
}

forward_binop!(Add, add, checked_add, AddAssign, add_assign);
forward_binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

/// Draws a coefficient for randomized constructions.
///
/// Over the rationals the value is a uniform integer in `[-bound, bound]`; over a
/// prime field it is a uniform residue and `bound` is ignored.
pub fn random_scalar<R: Rng + ?Sized>(field: FieldSpec, bound: u64, rng: &mut R) -> Scalar {
    assert!(bound >= 1, "random_scalar: bound must be at least 1");
    match field {
        FieldSpec::Rationals => {
            let b = bound.min(i64::MAX as u64) as i64;
            field.from_i64(rng.gen_range(-b..=b))
        }
        FieldSpec::PrimeField(p) => Scalar::Residue { value: rng.gen_range(0..p), modulus: p },
    }
}

/// Factor `λ` such that `λ·coeffs` is an integer vector with content one whose
/// first nonzero entry is positive. Over a prime field, `λ` makes the first
/// nonzero entry equal to one. Returns one for an all-zero input.
pub fn primitive_scale<'a, I>(field: FieldSpec, coeffs: I) -> Scalar
where
    I: IntoIterator<Item = &'a Scalar>,
{
    let mut iter = coeffs.into_iter().filter(|c| !c.is_zero()).peekable();
    let Some(first) = iter.peek().cloned() else {
        return field.one();
    };
    match field {
        FieldSpec::PrimeField(_) => first.inverse().expect("nonzero"),
        FieldSpec::Rationals => {
            let negative = first.is_negative();
            let mut den_lcm = BigInt::one();
            let mut num_gcd = BigInt::zero();
            for c in iter {
                let q = c.as_rational().expect("rational coefficient");
                den_lcm = den_lcm.lcm(q.denom());
                num_gcd = num_gcd.gcd(q.numer());
            }
            let mut factor = BigRational::new(den_lcm, num_gcd);
            if negative {
                factor = -factor;
            }
            Scalar::Rational(factor)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Scalar {
        FieldSpec::Rationals.from_ratio(&BigInt::from(n), &BigInt::from(d)).unwrap()
    }

    #[test]
    fn fraction_addition() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
    }

    #[test]
    fn fractions_are_reduced_on_construction() {
        let half = q(2, 4);
        assert_eq!(half, q(1, 2));
        let r = half.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(1));
        assert_eq!(r.denom(), &BigInt::from(2));
        let neg = q(3, -6);
        assert_eq!(neg.as_rational().unwrap().denom(), &BigInt::from(2));
        assert!(neg.is_negative());
    }

    #[test]
    fn inverse_mod_seven() {
        let f7 = FieldSpec::small_prime_field(7).unwrap();
        assert_eq!(f7.from_i64(3).inverse().unwrap(), f7.from_i64(5));
        assert_eq!(f7.from_i64(-1), f7.from_i64(6));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(q(1, 1).checked_div(&q(0, 1)), Err(ArithError::DivisionByZero));
        let f7 = FieldSpec::small_prime_field(7).unwrap();
        assert_eq!(f7.from_i64(7).inverse(), Err(ArithError::DivisionByZero));
        assert!(FieldSpec::Rationals.from_ratio(&BigInt::from(1), &BigInt::from(0)).is_err());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f7 = FieldSpec::small_prime_field(7).unwrap();
        let f11 = FieldSpec::small_prime_field(11).unwrap();
        assert!(matches!(q(1, 2).checked_add(&f7.one()), Err(ArithError::FieldMismatch(..))));
        assert!(matches!(f7.one().checked_mul(&f11.one()), Err(ArithError::FieldMismatch(..))));
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixed_field_operator_panics() {
        let f7 = FieldSpec::small_prime_field(7).unwrap();
        let _ = q(1, 2) + f7.one();
    }

    #[test]
    fn characteristic_checks() {
        assert_eq!(FieldSpec::prime_field(1_048_583), Ok(FieldSpec::PrimeField(1_048_583)));
        assert_eq!(FieldSpec::prime_field(1_048_577), Err(FieldError::NotPrime(1_048_577)));
        assert!(matches!(FieldSpec::prime_field(7), Err(FieldError::CharacteristicTooSmall(7, _))));
        assert!(matches!(FieldSpec::prime_field(1_000_003), Err(FieldError::CharacteristicTooSmall(..))));
        assert!(FieldSpec::small_prime_field(1_000_003).is_ok());
        assert!(FieldSpec::small_prime_field(1).is_err());
        assert!(FieldSpec::small_prime_field(9).is_err());
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        fn trial(n: u64) -> bool {
            n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
        }
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), trial(n), "n = {n}");
        }
        // strong pseudoprimes to several small bases
        assert!(!is_prime_u64(3_215_031_751));
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn random_scalar_is_seed_deterministic() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..20).map(|_| random_scalar(FieldSpec::Rationals, 10, &mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(42), draw(42));
        assert_ne!(draw(42), draw(43));
    }

    #[test]
    fn random_scalar_bound_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let s = random_scalar(FieldSpec::Rationals, 1, &mut rng);
            assert!([q(-1, 1), q(0, 1), q(1, 1)].contains(&s));
        }
    }

    #[test]
    fn random_scalar_spreads_over_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let distinct: std::collections::HashSet<_> =
            (0..10_000).map(|_| random_scalar(FieldSpec::Rationals, 10, &mut rng)).collect();
        assert!(distinct.len() >= 15, "only {} distinct values", distinct.len());
        let fp = FieldSpec::prime_field(1_048_583).unwrap();
        let residues: std::collections::HashSet<_> =
            (0..1000).map(|_| random_scalar(fp, 10, &mut rng)).collect();
        assert!(residues.len() > 900);
    }

    #[test]
    fn primitive_scale_clears_denominators() {
        let coeffs = [q(-1, 2), q(0, 1), q(3, 4)];
        let lambda = primitive_scale(FieldSpec::Rationals, &coeffs);
        let scaled: Vec<_> = coeffs.iter().map(|c| c * &lambda).collect();
        assert_eq!(scaled, vec![q(2, 1), q(0, 1), q(-3, 1)]);
    }

    fn arb_rational() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    fn arb_residue() -> impl Strategy<Value = Scalar> {
        (0u64..1_000_003).prop_map(|v| FieldSpec::PrimeField(1_000_003).from_i64(v as i64))
    }

    fn check_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
        assert_eq!(&(a + b) + c, a + &(b + c));
        assert_eq!(&(a * b) * c, a * &(b * c));
        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        assert_eq!(a + b, b + a);
        assert_eq!(a * b, b * a);
        assert!((a - a).is_zero());
        if !a.is_zero() {
            assert!((a * &a.inverse().unwrap()).is_one());
        }
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn prime_field_axioms(a in arb_residue(), b in arb_residue(), c in arb_residue()) {
            check_axioms(&a, &b, &c);
        }
    }
}
