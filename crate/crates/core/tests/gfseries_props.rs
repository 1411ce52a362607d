use num_bigint::BigInt;
use poplab::gfseries::{
    expand_rational, load_theorem_gf, small_coefficients, solve_system, theorem_gf, Monomial,
    MultiPoly, RationalGF, Var, XPoly, XSeries,
};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((proptest::array::uniform6(0u32..3), -4i64..5), 0..6).prop_map(|ts| {
        let mut p = MultiPoly::zero();
        for (e, c) in ts {
            p.add_term(Monomial(e), c.into());
        }
        p
    })
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &MultiPoly::zero(), a.clone());
        prop_assert_eq!(&a * &MultiPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn series_inverse(a in poly(), b in poly(), sign in prop::bool::ANY) {
        let c0 = MultiPoly::constant(if sign { 1 } else { -1 });
        let s = XSeries::from_coeffs(vec![c0, a, b], 5);
        prop_assert_eq!(s.mul(&s.inverse().unwrap()).unwrap(), XSeries::one(5));
    }

    #[test]
    fn json_round_trips(a in poly(), b in poly()) {
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<MultiPoly>(&json).unwrap(), a.clone());
        let s = XSeries::from_coeffs(vec![a, b], 3);
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<XSeries>(&json).unwrap(), s);
    }
}

#[test]
fn expansion_times_denominator_is_numerator() {
    for (j, l) in [(3, 3), (3, 4), (3, 5), (4, 4), (4, 5), (5, 5)] {
        let gf = load_theorem_gf(j, l).unwrap();
        let n = 9;
        let s = gf.expand(n).unwrap();
        let den = XSeries::from_xpoly(&gf.denominator, n);
        let num = XSeries::from_xpoly(&gf.numerator, n);
        assert_eq!(s.mul(&den).unwrap(), num, "({j},{l})");
    }
}

#[test]
fn substitution_commutes_with_expansion() {
    for (j, l) in [(3, 4), (4, 5), (5, 5)] {
        let gf = load_theorem_gf(j, l).unwrap();
        for var in Var::ALL {
            let a = gf.expand(7).unwrap().substitute_one(var);
            let b = gf.map_coeffs(|c| c.substitute_one(var)).expand(7).unwrap();
            assert_eq!(a, b, "({j},{l}) {var}");
        }
    }
}

#[test]
fn system_matches_explicit_for_all_pairs() {
    for j in 3..=5 {
        for l in 3..=5 {
            let sys = solve_system(j, l, 8).unwrap();
            assert_eq!(sys, expand_rational(&theorem_gf(j, l).unwrap(), 8).unwrap(), "({j},{l})");
        }
    }
    assert!(solve_system(2, 3, 4).is_err());
}

#[test]
fn fixture_audits() {
    let counts = [
        ((3, 3), (9, 3)),
        ((3, 4), (15, 4)),
        ((3, 5), (21, 5)),
        ((4, 4), (49, 7)),
        ((4, 5), (93, 10)),
        ((5, 5), (293, 17)),
    ];
    for ((j, l), want) in counts {
        let gf = load_theorem_gf(j, l).unwrap();
        assert_eq!(gf.monomial_counts(), want);
        assert_eq!(gf.denominator.coeff(0), MultiPoly::constant(-1));
        assert_eq!(gf.normalized().denominator.coeff(0), MultiPoly::one());
    }
}

#[test]
fn remark_values_from_brute_force() {
    // G̃_2 starts 1 + uvst x + ..., the l = 4 second coefficient is pu²vst² + quv²s²t
    let sc = small_coefficients(3, 3).unwrap();
    assert_eq!(sc.w[&(2, 1)], MultiPoly::monomial([0, 0, 1, 1, 1, 1]));
    let sc = small_coefficients(3, 4).unwrap();
    assert_eq!(
        sc.w[&(3, 1)],
        MultiPoly::monomial([0, 0, 1, 1, 1, 1])
    );
    let sc = small_coefficients(4, 4).unwrap();
    assert_eq!(
        sc.w[&(3, 2)],
        &MultiPoly::monomial([1, 0, 2, 1, 1, 2]) + &MultiPoly::monomial([0, 1, 1, 2, 2, 1])
    );
}

#[test]
fn increasing_only_rational_form() {
    let uvst = MultiPoly::monomial([0, 0, 1, 1, 1, 1]);
    let put = MultiPoly::monomial([1, 0, 1, 0, 0, 1]);
    let gf = RationalGF::new(XPoly::term(1, uvst), XPoly::one().sub(&XPoly::term(1, put)));
    let s = gf.expand(3).unwrap();
    assert_eq!(*s.coeff(3), MultiPoly::monomial([2, 0, 3, 1, 1, 3]));
    let ones = RationalGF::new(
        XPoly::one(),
        XPoly::from_coeffs([1, -1, -1, -3, -1].map(MultiPoly::constant).to_vec()),
    );
    assert_eq!(
        ones.expand(7).unwrap().eval_ones(),
        [1, 1, 2, 6, 12, 25, 57, 124].map(BigInt::from).to_vec()
    );
}
