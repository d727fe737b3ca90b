use dynext::field::FieldSpec;
use dynext::groebner::buchberger;
use dynext::poly::monomials_of_degree;
use dynext::{GroebnerBasis, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
use proptest::prelude::*;

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l).unwrap(), cg);
    let b = g.mul_term(&mg.quotient_of(&l).unwrap(), cf);
    &a - &b
}

fn ring(n: usize, field: FieldSpec) -> Ring {
    PolyRing::indexed("x", n, field).unwrap()
}

/// A form of degree `d` from a coefficient list over the monomials of that degree.
fn form(r: &Ring, d: u32, coeffs: &[i64]) -> Polynomial {
    let monos = monomials_of_degree(r.nvars(), d, MonomialOrder::Grevlex);
    let terms = monos.into_iter().zip(coeffs.iter().cycle()).map(|(m, &c)| (m, r.field().from_i64(c))).collect();
    Polynomial::from_terms(r.clone(), MonomialOrder::Grevlex, terms)
}

fn arb_ideal() -> impl Strategy<Value = (Vec<(u32, Vec<i64>)>, bool)> {
    (
        proptest::collection::vec((1u32..=3, proptest::collection::vec(-2i64..=2, 1..10)), 1..=3),
        any::<bool>(),
    )
}

fn build(shape: &[(u32, Vec<i64>)], modular: bool) -> Option<(Ring, Vec<Polynomial>)> {
    let field = if modular { FieldSpec::prime_field(1_048_583).unwrap() } else { FieldSpec::Rationals };
    let r = ring(3, field);
    let gens: Vec<Polynomial> = shape.iter().map(|(d, c)| form(&r, *d, c)).filter(|f| !f.is_zero()).collect();
    (!gens.is_empty()).then_some((r, gens))
}

fn sparse_poly(r: &Ring, terms: &[(u32, u32, u32, i64)]) -> Polynomial {
    let t = terms.iter().map(|&(a, b, c, k)| (Monomial::new([a, b, c]), r.field().from_i64(k))).collect();
    Polynomial::from_terms(r.clone(), MonomialOrder::Grevlex, t)
}

fn check_basis(gb: &GroebnerBasis) -> Result<(), TestCaseError> {
    let el = gb.elements();
    for i in 0..el.len() {
        for j in i + 1..el.len() {
            prop_assert!(gb.normal_form(&s_polynomial(&el[i], &el[j])).unwrap().is_zero());
        }
        for (k, other) in el.iter().enumerate() {
            if k != i {
                let lead = el[i].leading_monomial().unwrap();
                prop_assert!(other.terms().iter().all(|(m, _)| !lead.divides(m)), "basis not reduced");
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn buchberger_fixpoint_and_idempotence((shape, modular) in arb_ideal()) {
        let Some((_, gens)) = build(&shape, modular) else { return Ok(()) };
        let gb = buchberger(&gens, MonomialOrder::Grevlex).unwrap();
        check_basis(&gb)?;
        for g in &gens {
            prop_assert!(gb.is_member(g).unwrap());
        }
        let again = buchberger(gb.elements(), MonomialOrder::Grevlex).unwrap();
        prop_assert_eq!(again.elements(), gb.elements());
    }

    #[test]
    fn lex_bases_are_bases_too((shape, modular) in arb_ideal()) {
        let Some((_, gens)) = build(&shape, modular) else { return Ok(()) };
        let lex: Vec<Polynomial> = gens.iter().map(|g| g.with_order(MonomialOrder::Lex)).collect();
        let gb = buchberger(&lex, MonomialOrder::Lex).unwrap();
        check_basis(&gb)?;
        let grevlex = buchberger(&gens, MonomialOrder::Grevlex).unwrap();
        for g in gb.elements() {
            prop_assert!(grevlex.is_member(&g.with_order(MonomialOrder::Grevlex)).unwrap());
        }
        prop_assert_eq!(gb.affine_dimension(), grevlex.affine_dimension());
    }

    #[test]
    fn division_is_sound(
        (shape, modular) in arb_ideal(),
        f in proptest::collection::vec((0u32..4, 0u32..4, 0u32..4, -5i64..=5), 1..8),
    ) {
        let Some((r, gens)) = build(&shape, modular) else { return Ok(()) };
        let gb = buchberger(&gens, MonomialOrder::Grevlex).unwrap();
        let f = sparse_poly(&r, &f);
        let div = gb.divide(&f).unwrap();
        let mut recombined = div.remainder.clone();
        for (q, g) in div.quotients.iter().zip(gb.elements()) {
            recombined = &recombined + &(q * g);
        }
        prop_assert_eq!(&recombined, &f);
        let leads = gb.leading_monomials();
        prop_assert!(div.remainder.terms().iter().all(|(m, _)| !leads.iter().any(|l| l.divides(m))));
        prop_assert_eq!(gb.normal_form(&f).unwrap(), div.remainder);
    }

    #[test]
    fn normal_forms_keep_degree((shape, modular) in arb_ideal(), d in 1u32..5, coeffs in proptest::collection::vec(-3i64..=3, 1..12)) {
        let Some((r, gens)) = build(&shape, modular) else { return Ok(()) };
        let gb = buchberger(&gens, MonomialOrder::Grevlex).unwrap();
        let f = form(&r, d, &coeffs);
        prop_assert!(gb.normal_form(&f).unwrap().is_homogeneous_of(d));
    }

    #[test]
    fn hilbert_function_complements_graded_piece((shape, modular) in arb_ideal(), n in 0u32..6) {
        let Some((r, gens)) = build(&shape, modular) else { return Ok(()) };
        let gb = buchberger(&gens, MonomialOrder::Grevlex).unwrap();
        let piece = gb.graded_piece(n).unwrap();
        prop_assert_eq!(piece.ambient_dimension, monomials_of_degree(r.nvars(), n, MonomialOrder::Grevlex).len());
        prop_assert_eq!(piece.ambient_dimension, piece.dimension() + gb.hilbert_function(n).unwrap());
        for b in &piece.basis {
            prop_assert!(gb.is_member(b).unwrap());
        }
    }
}

/// Dimension of `V(I)` for a monomial ideal by trying every set of vanishing coordinates.
fn brute_force_dimension(n: usize, gens: &[Vec<u32>]) -> i64 {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return -1;
    }
    let mut best = 0;
    for zero_set in 0u32..(1 << n) {
        let hits_all = gens.iter().all(|g| g.iter().enumerate().any(|(i, &e)| e > 0 && zero_set & (1 << i) != 0));
        if hits_all {
            best = best.max(n as i64 - zero_set.count_ones() as i64);
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn monomial_dimension_matches_subset_search(
        n in 1usize..=3,
        gens in proptest::collection::vec(proptest::collection::vec(0u32..3, 3), 1..5),
    ) {
        let r = ring(n, FieldSpec::Rationals);
        let gens: Vec<Vec<u32>> = gens.into_iter().map(|g| g[..n].to_vec()).collect();
        let polys: Vec<Polynomial> = gens.iter().map(|g| r.monomial(Monomial::new(g.clone()))).collect();
        let gb = buchberger(&polys, MonomialOrder::Grevlex).unwrap();
        prop_assert_eq!(gb.affine_dimension(), brute_force_dimension(n, &gens));
    }

    #[test]
    fn monomial_dimension_in_more_variables(
        gens in proptest::collection::vec(proptest::collection::vec(0u32..2, 6), 1..7),
    ) {
        let r = ring(6, FieldSpec::Rationals);
        let polys: Vec<Polynomial> = gens.iter().map(|g| r.monomial(Monomial::new(g.clone()))).collect();
        let gb = buchberger(&polys, MonomialOrder::Grevlex).unwrap();
        prop_assert_eq!(gb.affine_dimension(), brute_force_dimension(6, &gens));
    }
}

#[test]
fn hilbert_identity_on_named_curves() {
    let q = FieldSpec::Rationals;
    let conic = ring(3, q);
    let cubic = ring(4, q);
    let cases = [
        (conic.clone(), vec!["x1^2 - x0*x2"]),
        (cubic.clone(), vec!["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]),
        (
            cubic.clone(),
            vec!["x1*x2 - x0*x3", "x1^4 - x0^3*x2", "x0^2*x2^2 - x1^3*x3", "x0*x2^3 - x1^2*x3^2", "x2^4 - x1*x3^3"],
        ),
    ];
    for (r, texts) in cases {
        let gens: Vec<Polynomial> = texts.iter().map(|t| r.parse(t).unwrap()).collect();
        let gb = buchberger(&gens, MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.affine_dimension(), 2, "curves have affine cones of dimension 2");
        for n in 0..=6 {
            let total = monomials_of_degree(r.nvars(), n, MonomialOrder::Grevlex).len();
            assert_eq!(total, gb.graded_piece(n).unwrap().dimension() + gb.hilbert_function(n).unwrap());
        }
    }
}

#[test]
fn rational_normal_curve_hilbert_function() {
    // the twisted cubic has Hilbert function 3n + 1
    let r = ring(4, FieldSpec::Rationals);
    let gens: Vec<Polynomial> =
        ["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"].iter().map(|t| r.parse(t).unwrap()).collect();
    let gb = buchberger(&gens, MonomialOrder::Grevlex).unwrap();
    for n in 0..=6 {
        assert_eq!(gb.hilbert_function(n).unwrap(), 3 * n as usize + 1);
    }
}
