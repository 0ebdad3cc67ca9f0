//! Property tests for the polynomial engine: ring laws, truncation
//! soundness, modular consistency, and text round-trips.

use addcomb_core::polyring::{
    expand_product, parse_poly, power_linear_form, CoefficientRing, DegreeCap, Monomial,
    SparsePoly,
};
use num_bigint::BigInt;
use proptest::prelude::*;

const MAX_VARS: usize = 4;

fn arb_monomial() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=3, 0..=MAX_VARS)
}

fn arb_poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((arb_monomial(), -9i64..=9), 0..=6).prop_map(|terms| {
        SparsePoly::from_terms(
            CoefficientRing::integers(),
            MAX_VARS,
            terms
                .into_iter()
                .map(|(exps, c)| (Monomial::new(exps), BigInt::from(c))),
        )
        .expect("arity bounded by construction")
    })
}

fn arb_cap() -> impl Strategy<Value = DegreeCap> {
    prop_oneof![
        Just(DegreeCap::Unbounded),
        prop::collection::vec(0u32..=6, MAX_VARS).prop_map(DegreeCap::per_variable),
    ]
}

proptest! {
    #[test]
    fn multiplication_is_commutative(f in arb_poly(), g in arb_poly()) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
    }

    #[test]
    fn multiplication_is_associative(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        let left = f.mul(&g).unwrap().mul(&h).unwrap();
        let right = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn distributivity(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
        let left = f.mul(&g.add(&h).unwrap()).unwrap();
        let right = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    /// Capped products agree with uncapped ones on every monomial within
    /// the cap (all factors here have nonnegative exponents).
    #[test]
    fn truncation_soundness(
        factors in prop::collection::vec(arb_poly(), 1..=3),
        cap in prop::collection::vec(0u32..=4, MAX_VARS),
        probe in arb_monomial(),
    ) {
        let ring = CoefficientRing::integers();
        let capped = expand_product(ring, MAX_VARS, &factors, &DegreeCap::per_variable(cap.clone())).unwrap();
        let uncapped = expand_product(ring, MAX_VARS, &factors, &DegreeCap::Unbounded).unwrap();
        let within: Vec<u32> = probe
            .iter()
            .enumerate()
            .map(|(i, &e)| e.min(cap[i]))
            .collect();
        let m = Monomial::new(within);
        prop_assert_eq!(capped.coeff(&m).unwrap(), uncapped.coeff(&m).unwrap());
    }

    /// Reducing an integer-ring coefficient mod p matches the coefficient
    /// computed natively in the mod-p ring.
    #[test]
    fn modular_consistency(f in arb_poly(), g in arb_poly(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        let gfp = CoefficientRing::mod_p(p).unwrap();
        let to_gfp = |poly: &SparsePoly| {
            SparsePoly::from_terms(
                gfp,
                MAX_VARS,
                poly.iter_terms().map(|(m, c)| (m.clone(), c.clone())),
            )
            .unwrap()
        };
        let over_z = f.mul(&g).unwrap();
        let over_p = to_gfp(&f).mul(&to_gfp(&g)).unwrap();
        prop_assert_eq!(to_gfp(&over_z), over_p);
    }

    #[test]
    fn display_parse_roundtrip(f in arb_poly()) {
        let ring = CoefficientRing::integers();
        let text = f.to_string();
        let parsed = parse_poly(&text, ring, MAX_VARS).unwrap();
        prop_assert_eq!(parsed, f);
    }

    /// The multinomial route and repeated capped multiplication produce
    /// identical term maps.
    #[test]
    fn power_form_routes_agree(
        coeffs in prop::collection::vec(-4i64..=4, 1..=MAX_VARS),
        e in 0u32..=5,
        cap in arb_cap(),
    ) {
        let ring = CoefficientRing::integers();
        let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        let direct = power_linear_form(ring, MAX_VARS, &big, e, &cap).unwrap();
        let linear = SparsePoly::from_terms(
            ring,
            MAX_VARS,
            big.iter().enumerate().map(|(i, c)| (Monomial::var(i), c.clone())),
        )
        .unwrap();
        let mut by_mul = SparsePoly::one(ring, MAX_VARS);
        for _ in 0..e {
            by_mul = by_mul.mul_capped(&linear, &cap).unwrap();
        }
        prop_assert_eq!(direct, by_mul);
    }

    /// Evaluation is a ring homomorphism: (f*g)(x) = f(x) g(x).
    #[test]
    fn evaluation_is_multiplicative(
        f in arb_poly(),
        g in arb_poly(),
        point in prop::collection::vec(-5i64..=5, MAX_VARS),
    ) {
        let point: Vec<BigInt> = point.into_iter().map(BigInt::from).collect();
        let fg = f.mul(&g).unwrap().evaluate(&point).unwrap();
        let f_times_g = f.evaluate(&point).unwrap() * g.evaluate(&point).unwrap();
        prop_assert_eq!(fg, f_times_g);
    }
}
