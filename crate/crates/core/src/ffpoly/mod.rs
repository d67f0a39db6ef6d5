//! Prime fields and sparse multivariate polynomials.

mod field;
mod monomial;
mod parse;
mod poly;

pub use field::{FieldPrime, MAX_PRIME};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, parse_poly_list};
pub use poly::{Poly, PolyRing, Term};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;

    fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(
            FieldPrime::new(p).unwrap(),
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    #[test]
    fn frob_pow_examples() {
        let r = ring(3, &["x", "y"]);
        let f = parse_poly("x + y", &r).unwrap();
        assert_eq!(f.frob_pow(1).unwrap().to_string(), "x^3 + y^3");
        assert_eq!(f.frob_pow(0).unwrap(), f);
        let g = parse_poly("2*x", &r).unwrap();
        assert_eq!(g.frob_pow(2).unwrap().to_string(), "2*x^9");
    }

    #[test]
    fn frob_pow_overflow() {
        let r = ring(2, &["x"]);
        let f = parse_poly("x^4", &r).unwrap();
        assert!(f.frob_pow(31).is_err());
        assert!(f.frob_pow(29).is_ok());
    }

    #[test]
    fn printing_is_canonical() {
        let r = ring(7, &["x", "y", "z"]);
        let f = parse_poly("z + 3*x*y^2 - x^3 + 2 + y*y", &r).unwrap();
        assert_eq!(f.to_string(), "6*x^3 + 3*x*y^2 + y^2 + z + 2");
        assert_eq!(Poly::zero(&r).to_string(), "0");
    }

    #[test]
    fn remap_moves_variables() {
        let r = ring(5, &["x", "y"]);
        let t = ring(5, &["a", "x", "y"]);
        let f = parse_poly("x^2*y + 3", &r).unwrap();
        assert_eq!(f.remap(&t, &[1, 2]).to_string(), "x^2*y + 3");
        assert_eq!(f.remap(&t, &[0, 0]).to_string(), "a^3 + 3");
    }

    fn poly_strategy(p: u64, nvars: usize, max_terms: usize) -> impl Strategy<Value = Poly> {
        let r = ring(p, &["x", "y", "z"][..nvars]);
        prop::collection::vec(
            (prop::collection::vec(0u32..4, nvars), 0u32..p as u32),
            0..=max_terms,
        )
        .prop_map(move |ts| {
            Poly::from_terms(&r, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)))
        })
    }

    fn poly_pair(p: u64) -> impl Strategy<Value = (Poly, Poly)> {
        (poly_strategy(p, 3, 5), poly_strategy(p, 3, 5))
    }

    proptest! {
        #[test]
        fn frobenius_is_additive(
            (f, g) in prop_oneof![poly_pair(2), poly_pair(3), poly_pair(5)],
            e in 0u32..=3,
        ) {
            let lhs = f.add(&g).frob_pow(e).unwrap();
            let rhs = f.frob_pow(e).unwrap().add(&g.frob_pow(e).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn frob_pow_matches_square_and_multiply(
            f in prop_oneof![poly_strategy(2, 3, 5), poly_strategy(3, 3, 5), poly_strategy(5, 3, 5)],
            e in 0u32..=2,
        ) {
            let q = (f.ring().p() as u64).pow(e);
            prop_assert_eq!(f.frob_pow(e).unwrap(), f.pow(q).unwrap());
        }

        #[test]
        fn print_parse_is_a_fixed_point(f in poly_strategy(5, 3, 6)) {
            let printed = f.to_string();
            let reparsed = parse_poly(&printed, f.ring()).unwrap();
            prop_assert_eq!(&reparsed, &f);
            prop_assert_eq!(reparsed.to_string(), printed);
        }

        #[test]
        fn ring_axioms(f in poly_strategy(3, 2, 4), g in poly_strategy(3, 2, 4), h in poly_strategy(3, 2, 4)) {
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert!(f.sub(&f).is_zero());
        }
    }
}
