use newton_bif_core::{parse_polynomial, Mode, Rational, SparsePoly};
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn poly(n: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::collection::vec(0i64..4, n), -5i64..=5, 1i64..=3), 0..6).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(e, a, b)| (e, q(a, b)));
        SparsePoly::from_terms(n, Mode::Affine, terms).unwrap()
    })
}

fn point(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-4i64..=4, 1i64..=3), n).prop_map(|v| v.into_iter().map(|(a, b)| q(a, b)).collect())
}

proptest! {
    #[test]
    fn text_round_trip(f in poly(3)) {
        let g = parse_polynomial(&f.to_string(), 3, Mode::Affine).unwrap();
        prop_assert_eq!(f, g);
    }

    #[test]
    fn json_round_trip(f in poly(2)) {
        let g = SparsePoly::from_json_terms(2, Mode::Affine, &f.to_json_terms()).unwrap();
        prop_assert_eq!(f, g);
    }

    #[test]
    fn mixed_partials_commute(f in poly(3)) {
        let a = f.partial_derivative(0).unwrap().partial_derivative(2).unwrap();
        let b = f.partial_derivative(2).unwrap().partial_derivative(0).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in poly(2), g in poly(2), x in point(2)) {
        let fx = f.eval_rational(&x).unwrap();
        let gx = g.eval_rational(&x).unwrap();
        prop_assert_eq!(f.mul(&g).eval_rational(&x).unwrap(), &fx * &gx);
        prop_assert_eq!(f.add(&g).eval_rational(&x).unwrap(), fx + gx);
    }

    #[test]
    fn minus_constant_shifts_values(f in poly(2), x in point(2), c in -5i64..5) {
        let c = q(c, 2);
        prop_assert_eq!(f.minus_constant(&c).eval_rational(&x).unwrap(), f.eval_rational(&x).unwrap() - c);
    }
}
