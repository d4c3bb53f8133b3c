//! Exact multivariate Laurent-polynomial, rational-function, and truncated
//! power-series arithmetic over arbitrary-precision rationals.

mod gcd;
mod laurent;
mod ratfn;
mod series;

pub use gcd::{exact_divide, poly_divrem, poly_gcd, primitive_normalize, try_exact_div};
pub use laurent::LaurentPoly;
pub use ratfn::{ExpansionCenter, RationalFn};
pub use series::TruncSeries;

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::rational::{rat_int, Rat};
    use num_traits::One;
    use proptest::prelude::*;

    fn arb_coef() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
    }

    fn arb_laurent(nvars: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-3i32..=3, nvars), arb_coef()), 0..max_terms)
            .prop_map(move |terms| {
                let mut p = LaurentPoly::zero(nvars);
                for (e, c) in terms {
                    p.add_term(e, c);
                }
                p
            })
    }

    fn arb_poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(0i32..=3, nvars), arb_coef()), 0..max_terms)
            .prop_map(move |terms| {
                let mut p = LaurentPoly::zero(nvars);
                for (e, c) in terms {
                    p.add_term(e, c);
                }
                p
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn laurent_ring_axioms(a in arb_laurent(2, 5), b in arb_laurent(2, 5), c in arb_laurent(2, 5)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
        }

        #[test]
        fn exact_divide_recovers_factor(a in arb_laurent(2, 4), b in arb_laurent(2, 4)) {
            prop_assume!(!b.is_zero());
            let product = &a * &b;
            prop_assert_eq!(exact_divide(&product, &b).unwrap(), a);
        }

        #[test]
        fn derivative_inverts_antiderivative(a in arb_laurent(1, 5)) {
            // Drop exponent -1 terms so the antiderivative exists.
            let mut f = LaurentPoly::zero(1);
            for (e, c) in a.terms() {
                if e[0] != -1 {
                    f.add_term(e.clone(), c.clone());
                }
            }
            let integral = f.antiderivative(0, &rat_int(-1)).unwrap();
            prop_assert_eq!(integral.partial_derivative(0), f);
            // The normalization really does vanish at the lower limit.
            prop_assert!(integral.substitute_rational(0, &rat_int(-1)).unwrap().is_zero());
        }

        #[test]
        fn ratfn_field_axioms(a in arb_poly(2, 4), b in arb_poly(2, 4), d1 in arb_poly(2, 3), d2 in arb_poly(2, 3)) {
            prop_assume!(!d1.is_zero() && !d2.is_zero());
            let f = RationalFn::new(a, d1).unwrap();
            let g = RationalFn::new(b, d2).unwrap();
            let sum = f.add(&g).unwrap();
            prop_assert_eq!(sum.sub(&g).unwrap(), f.clone());
            let prod = f.mul(&g).unwrap();
            if !g.is_zero() {
                prop_assert_eq!(prod.div(&g).unwrap(), f);
            }
        }

        #[test]
        fn ratfn_canonical_under_common_factor(
            a in arb_poly(2, 4), d in arb_poly(2, 3), c in arb_poly(2, 3),
        ) {
            prop_assume!(!d.is_zero() && !c.is_zero());
            let plain = RationalFn::new(a.clone(), d.clone()).unwrap();
            let scaled = RationalFn::new(&a * &c, &d * &c).unwrap();
            prop_assert_eq!(plain, scaled);
        }

        #[test]
        fn simple_pole_residue_shortcut(p in arb_poly(2, 4), q in arb_poly(2, 3)) {
            // f = p / ((t - x) q) with q(t=x) != 0: the generic expansion path
            // must match num/den' evaluated at the center.
            prop_assume!(!q.is_zero());
            let t = LaurentPoly::var(2, 0);
            let x = LaurentPoly::var(2, 1);
            let q_at_center = q.map_slots(2, &[(1, false), (1, false)]);
            prop_assume!(!q_at_center.is_zero());
            let den = &(&t - &x) * &q;
            let f = RationalFn::new(p.clone(), den.clone()).unwrap();
            let generic = f.residue_at(0, &ExpansionCenter::PlusVar(1), 2).unwrap();
            // Residue formula for simple poles: num / (d/dt den) at t = x.
            let den_prime = den.partial_derivative(0);
            let shortcut = RationalFn::new(
                p.map_slots(2, &[(1, false), (1, false)]),
                den_prime.map_slots(2, &[(1, false), (1, false)]),
            ).unwrap();
            prop_assert_eq!(generic, shortcut);
        }

        #[test]
        fn series_sqrt_squares_back(coeffs in prop::collection::vec(arb_coef(), 1..6)) {
            let mut c = coeffs;
            c[0] = Rat::one(); // force a perfect-square nonzero constant term
            let s = TruncSeries::from_coeffs("u", c);
            let r = s.sqrt().unwrap();
            prop_assert_eq!(r.mul(&r).unwrap(), s);
        }

        #[test]
        fn series_invert_multiplies_to_one(coeffs in prop::collection::vec(arb_coef(), 1..6)) {
            let mut c = coeffs;
            c[0] = rat_int(2);
            let s = TruncSeries::from_coeffs("u", c);
            let inv = s.invert().unwrap();
            prop_assert_eq!(s.mul(&inv).unwrap(), TruncSeries::one("u", s.order()));
        }
    }
}
