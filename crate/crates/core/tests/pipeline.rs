use newton_bif_core::euler::chi_rational;
use newton_bif_core::{
    affine_critical_values, parse_polynomial, Analysis, CertVerdict, Error, Mode, Options, Outcome, Rational, Settings,
    SparsePoly, Value,
};
use num_bigint::BigInt;

fn p(s: &str, n: usize) -> SparsePoly {
    parse_polynomial(s, n, Mode::Affine).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn critical_values_of_a_cubic_curve() {
    let f = p("x1^3 + x2^3 + x1*x2 + x1^2*x2^2", 2);
    let cv = affine_critical_values(&f, &Settings::default()).unwrap();
    let exact: Vec<_> = cv.values.iter().map(|v| v.exact.clone().unwrap()).collect();
    assert_eq!(exact, vec![q(0, 1), q(1, 16)]);
}

#[test]
fn case_a_certificates() {
    let f = p("x1 + x1*x2 + x1^2*x2^2", 2);
    let a = Analysis::new(&f, Options::default()).unwrap();
    assert_eq!(a.nondegeneracy_outcome(), Outcome::Pass);
    let certs = a.certify_all();
    assert_eq!(certs.len(), 2);
    assert_eq!(certs[0].verdict, CertVerdict::Certified);
    assert_eq!(certs[1].verdict, CertVerdict::CandidateOnly);
    assert!(certs.iter().all(|c| c.is_sound()));
    assert!(matches!(a.candidate(&Value::rational(q(5, 1))), Err(Error::Invalid(_))));
}

#[test]
fn three_variable_pipeline() {
    let f = p("x1^2 + x1^2*x2^2 + x1^2*x2^2*x3^3", 3);
    let a = Analysis::new(&f, Options { full_trace: true, ..Options::default() }).unwrap();
    assert!(a.kf.values().iter().any(|v| v.exact == Some(q(0, 1))));
    for c in a.certify_all() {
        assert!(c.is_sound());
        assert!(c.euler_jump.is_none());
    }
}

#[test]
fn fiber_euler_characteristics() {
    assert_eq!(chi_rational(&p("x1*x2", 2), &q(1, 1)).unwrap(), 0);
    assert_eq!(chi_rational(&p("x1*x2", 2), &q(0, 1)).unwrap(), 1);
    assert_eq!(chi_rational(&p("x1^2 + x2^2", 2), &q(1, 1)).unwrap(), 0);
    assert_eq!(chi_rational(&p("x1", 2), &q(3, 1)).unwrap(), 1);
}

#[test]
fn too_many_variables() {
    let f = p("x1 + x2 + x3 + x4 + x5", 5);
    assert!(matches!(Analysis::new(&f, Options::default()), Err(Error::Guard(_))));
}

#[test]
fn fibers_over_conjugate_values() {
    let f = p("-5/2*x1^3*x2^2 + 3/2*x1^3*x2 - 2*x1*x2", 2);
    let a = Analysis::new(&f, Options::default()).unwrap();
    let complex: Vec<_> = a.kf.candidates.iter().filter(|c| c.value.exact.is_none()).collect();
    assert_eq!(complex.len(), 2);
    for c in complex {
        assert_eq!(newton_bif_core::chi_affine_curve_fiber(&f, &c.value).unwrap().chi, -3);
    }
    let g = p("x1^3*x2^2 + x1^2*x2 + 1/2*x2^3 - x2^2", 2);
    let a = Analysis::new(&g, Options::default()).unwrap();
    let quartic = a.kf.candidates.iter().find(|c| c.value.exact.is_none()).unwrap();
    assert!(matches!(newton_bif_core::chi_affine_curve_fiber(&g, &quartic.value), Err(Error::Guard(_))));
}
