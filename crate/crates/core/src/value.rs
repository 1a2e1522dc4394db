//! Scalars carried through the pipeline, with their certification status.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::poly::Rational;
use crate::roots;
use crate::upoly::UPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Exact,
    Numeric,
    Heuristic,
}

impl Status {
    /// The weaker of two statuses.
    pub fn meet(self, other: Status) -> Status {
        self.max(other)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative distance under which two roots are merged.
    pub root: f64,
    /// Residual accepted when back-substituting a numerical solution.
    pub residual: f64,
    /// Relative distance under which two values are identified.
    pub cluster: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { root: 1e-9, residual: 1e-8, cluster: 1e-9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Settings {
    pub tolerances: Tolerances,
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { tolerances: Tolerances::default(), seed: 0 }
    }
}

impl Settings {
    /// A sub-seed derived from a key, so that independent pieces of work draw
    /// from independent streams.
    pub fn sub_seed(&self, key: &[i64]) -> u64 {
        let mut h: u64 = self.seed ^ 0x9e37_79b9_7f4a_7c15;
        for &k in key {
            h ^= k as u64;
            h = h.wrapping_mul(0x1000_0000_01b3).rotate_left(17);
        }
        h
    }
}

/// A complex number, known exactly when rational, or as a root of an exact
/// irreducible polynomial, or only numerically.
#[derive(Debug, Clone, PartialEq)]
pub struct Value {
    pub approx: Complex64,
    pub exact: Option<Rational>,
    /// An irreducible polynomial over the rationals vanishing at the value.
    pub polynomial: Option<UPoly>,
    pub status: Status,
}

impl Value {
    pub fn rational(r: Rational) -> Value {
        Value { approx: roots::to_complex(&r), polynomial: Some(UPoly::new(vec![-r.clone(), num_traits::One::one()])), exact: Some(r), status: Status::Exact }
    }

    pub fn algebraic(approx: Complex64, polynomial: UPoly) -> Value {
        Value { approx, exact: None, polynomial: Some(polynomial), status: Status::Exact }
    }

    pub fn numeric(approx: Complex64, status: Status) -> Value {
        Value { approx, exact: None, polynomial: None, status }
    }

    pub fn is_rational(&self) -> bool {
        self.exact.is_some()
    }

    /// Equality test: `Some` when decided, `None` when the numbers are too
    /// close to separate but cannot be compared exactly.
    pub fn same(&self, other: &Value, tol: f64) -> Option<bool> {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return Some(a == b);
        }
        let close = roots::close(self.approx, other.approx, tol);
        match (&self.exact, &other.exact, &self.polynomial, &other.polynomial) {
            (Some(r), None, _, Some(p)) | (None, Some(r), Some(p), _) => {
                if !p.eval(r).is_zero() {
                    return Some(false);
                }
                return Some(close);
            }
            (None, None, Some(p), Some(q)) => {
                if p.gcd(q).deg() == 0 {
                    return Some(false);
                }
                return Some(close);
            }
            _ => {}
        }
        if close {
            return Some(true);
        }
        if roots::close(self.approx, other.approx, 10.0 * tol) {
            return None;
        }
        Some(false)
    }

    pub fn display(&self) -> String {
        match &self.exact {
            Some(r) => r.to_string(),
            None => format_complex(self.approx),
        }
    }

    /// Sort key: real part, then imaginary part.
    pub fn sort_key(&self) -> (f64, f64) {
        (self.approx.re, self.approx.im)
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im.abs() <= 1e-14 * z.re.abs().max(1.0) {
        format!("{:.12}", z.re)
    } else if z.im < 0.0 {
        format!("{:.12}-{:.12}i", z.re, -z.im)
    } else {
        format!("{:.12}+{:.12}i", z.re, z.im)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Value", 4)?;
        st.serialize_field("approx", &[self.approx.re, self.approx.im])?;
        st.serialize_field("exact", &self.exact.as_ref().map(|r| r.to_string()))?;
        st.serialize_field("polynomial", &self.polynomial.as_ref().map(|p| p.primitive().to_string()))?;
        st.serialize_field("status", &self.status)?;
        st.end()
    }
}

/// Builds the values whose exact defining polynomial is `v` (squarefree):
/// rational roots are recognized and confirmed, the others carry their
/// irreducible factor.
pub fn values_from_polynomial(v: &UPoly, tol: &Tolerances) -> Vec<Value> {
    let v = v.squarefree();
    if v.deg() == 0 {
        return Vec::new();
    }
    let approx = roots::distinct(&roots::roots_upoly(&v), tol.root);
    let mut out: Vec<Value> = Vec::new();
    for z in approx {
        let rational = if roots::is_real(z, 1e-10) {
            roots::recognize_rational(z.re, 1_000_000, 1e-10).filter(|r| v.eval(r).is_zero())
        } else {
            None
        };
        match rational {
            Some(r) => out.push(Value::rational(r)),
            None => match roots::irreducible_factor(&v, z) {
                Some(p) if p.deg() == 1 => {
                    let r = -p.coeff(0) / p.coeff(1);
                    out.push(Value::rational(r));
                }
                Some(p) => out.push(Value::algebraic(z, p)),
                None => out.push(Value::numeric(z, Status::Numeric)),
            },
        }
    }
    sort_values(&mut out);
    out
}

pub fn sort_values(v: &mut [Value]) {
    v.sort_by(|a, b| a.sort_key().0.total_cmp(&b.sort_key().0).then(a.sort_key().1.total_cmp(&b.sort_key().1)));
}

/// Appends `x` unless an equal value is already present.
pub fn push_distinct(set: &mut Vec<Value>, x: Value, tol: f64) {
    if let Some(i) = set.iter().position(|y| y.same(&x, tol) == Some(true)) {
        if x.status < set[i].status {
            set[i] = x;
        }
        return;
    }
    set.push(x);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    #[test]
    fn values_of_quadratic() {
        let vals = values_from_polynomial(&UPoly::from_ints(&[-4, 0, 1]), &Tolerances::default());
        assert_eq!(vals.iter().map(|v| v.exact.clone().unwrap()).collect::<Vec<_>>(), vec![rational(-2, 1), rational(2, 1)]);
        let irr = values_from_polynomial(&UPoly::from_ints(&[-2, 0, 1]), &Tolerances::default());
        assert!(irr.iter().all(|v| v.exact.is_none() && v.status == Status::Exact));
    }

    #[test]
    fn comparisons() {
        let a = Value::rational(rational(-1, 4));
        let b = Value::numeric(Complex64::new(-0.25, 0.0), Status::Numeric);
        assert_eq!(a.same(&b, 1e-9), Some(true));
        let s = values_from_polynomial(&UPoly::from_ints(&[-2, 0, 1]), &Tolerances::default());
        assert_eq!(s[0].same(&s[1], 1e-9), Some(false));
        assert_eq!(s[0].same(&Value::rational(rational(1, 1)), 1e-9), Some(false));
    }
}
