//! Sparse (Laurent) polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, IntVec};
use crate::polytope::{FaceId, LatticePolytope};

pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exponent vector ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub IntVec);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        crate::cone::grlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Affine,
    Laurent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    nvars: usize,
    mode: Mode,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize, mode: Mode) -> Self {
        SparsePoly { nvars, mode, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, mode: Mode, c: Rational) -> Self {
        let mut p = Self::zero(nvars, mode);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn from_terms<I>(nvars: usize, mode: Mode, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (IntVec, Rational)>,
    {
        let mut p = Self::zero(nvars, mode);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: e.len() });
            }
            if mode == Mode::Affine && e.iter().any(|&x| x < 0) {
                return Err(Error::NegativeExponent);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: IntVec, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = Monomial(e);
        let sum = self.terms.get(&key).map_or(c.clone(), |old| old + &c);
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&IntVec, &Rational)> {
        self.terms.iter().map(|(m, c)| (&m.0, c))
    }

    pub fn coefficient(&self, e: &[i64]) -> Rational {
        self.terms.get(&Monomial(e.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<IntVec> {
        self.terms.keys().map(|m| m.0.clone()).collect()
    }

    /// The coefficient of the zero exponent, i.e. `f(0)` for an affine polynomial.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn as_laurent(&self) -> SparsePoly {
        SparsePoly { mode: Mode::Laurent, ..self.clone() }
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        let mut p = Self::zero(self.nvars, self.mode);
        for (e, a) in self.terms() {
            p.add_term(e.clone(), a * c);
        }
        p
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut p = self.clone();
        for (e, c) in other.terms() {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut p = Self::zero(self.nvars, self.mode);
        for (e, a) in self.terms() {
            for (f, b) in other.terms() {
                p.add_term(e.iter().zip(f).map(|(x, y)| x + y).collect(), a * b);
            }
        }
        p
    }

    /// `self − c`.
    pub fn minus_constant(&self, c: &Rational) -> SparsePoly {
        let mut p = self.clone();
        p.add_term(vec![0; self.nvars], -c.clone());
        p
    }

    /// Partial derivative with respect to variable `i` (0-based).
    pub fn partial_derivative(&self, i: usize) -> Result<SparsePoly> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange { index: i + 1, dim: self.nvars });
        }
        let mut p = Self::zero(self.nvars, self.mode);
        for (e, c) in self.terms() {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            p.add_term(f, c * Rational::from_integer(BigInt::from(e[i])));
        }
        Ok(p)
    }

    /// Toric derivative `x_i ∂_i`, which keeps the support inside the original one.
    pub fn toric_derivative(&self, i: usize) -> Result<SparsePoly> {
        if i >= self.nvars {
            return Err(Error::VariableOutOfRange { index: i + 1, dim: self.nvars });
        }
        let mut p = Self::zero(self.nvars, self.mode);
        for (e, c) in self.terms() {
            p.add_term(e.clone(), c * Rational::from_integer(BigInt::from(e[i])));
        }
        Ok(p)
    }

    /// `f_γ`: the sum of the terms whose exponents lie on the face.
    pub fn gamma_part(&self, polytope: &LatticePolytope, face: FaceId) -> Result<SparsePoly> {
        if polytope.ambient_dim != self.nvars || face.0 >= polytope.faces.len() {
            return Err(Error::ForeignFace);
        }
        let mut p = Self::zero(self.nvars, self.mode);
        for (e, c) in self.terms() {
            if polytope.face_contains_point(face, e) {
                p.add_term(e.clone(), c.clone());
            }
        }
        Ok(p)
    }

    /// Rewrites the polynomial in the coordinates `t_k = x^{b_k}` of a
    /// lattice basis: `x^v ↦ t^c` with `v = Σ c_k b_k`.
    pub fn monomial_change_of_coordinates(&self, basis: &[IntVec]) -> Result<SparsePoly> {
        if let Some(b) = basis.iter().find(|b| b.len() != self.nvars) {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: b.len() });
        }
        let mut p = Self::zero(basis.len(), Mode::Laurent);
        for (e, c) in self.terms() {
            let coords = lattice::lattice_coordinates(basis, e).ok_or_else(|| Error::NotInLattice(e.clone()))?;
            p.add_term(coords, c.clone());
        }
        Ok(p)
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> SparsePoly {
        let mut p = Self::zero(self.nvars, Mode::Laurent);
        for (e, c) in self.terms() {
            p.add_term(e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone());
        }
        p
    }

    /// Shifts the support so that every exponent is nonnegative and the
    /// minimum in each coordinate is zero. Returns the polynomial and the shift used.
    pub fn clear_monomial(&self) -> (SparsePoly, IntVec) {
        if self.is_zero() {
            return (self.clone(), vec![0; self.nvars]);
        }
        let shift: IntVec = (0..self.nvars).map(|i| -self.terms.keys().map(|m| m.0[i]).min().unwrap_or(0)).collect();
        let mut p = self.shift(&shift);
        p.mode = Mode::Affine;
        (p, shift)
    }

    fn check_point<T>(&self, point: &[T], is_zero: impl Fn(&T) -> bool) -> Result<()> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: point.len() });
        }
        for (e, _) in self.terms() {
            if let Some(i) = (0..self.nvars).find(|&i| e[i] < 0 && is_zero(&point[i])) {
                return Err(Error::Pole(i + 1));
            }
        }
        Ok(())
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Result<Rational> {
        self.check_point(point, |x| x.is_zero())?;
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    t *= pow_rational(x, k);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating-point evaluation: each term is a product of `powi` factors,
    /// terms summed left to right in canonical order.
    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        self.check_point(point, |x| *x == Complex64::new(0.0, 0.0))?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            let mut t = Complex64::new(rational_to_f64(c), 0.0);
            for (x, &k) in point.iter().zip(e) {
                if k != 0 {
                    t *= x.powi(k as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        let z: Vec<Complex64> = point.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Ok(self.eval_complex(&z)?.re)
    }

    /// Complex gradient.
    pub fn gradient(&self) -> Result<Vec<SparsePoly>> {
        (0..self.nvars).map(|i| self.partial_derivative(i)).collect()
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.0.iter().sum::<i64>()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| lattice::is_zero(&m.0))
    }

    /// Term list in the JSON form `[num, den, [e1, …, en]]`.
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms()
            .map(|(e, c)| JsonTerm(JsonInt(c.numer().clone()), JsonInt(c.denom().clone()), e.clone()))
            .collect()
    }

    pub fn from_json_terms(nvars: usize, mode: Mode, terms: &[JsonTerm]) -> Result<SparsePoly> {
        let mut items = Vec::with_capacity(terms.len());
        for JsonTerm(num, den, e) in terms {
            if den.0.is_zero() {
                return Err(Error::Invalid("zero denominator".into()));
            }
            items.push((e.clone(), Rational::new(num.0.clone(), den.0.clone())));
        }
        Self::from_terms(nvars, mode, items)
    }

    pub fn from_json_str(text: &str, nvars: usize, mode: Mode) -> Result<SparsePoly> {
        let terms: Vec<JsonTerm> = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        Self::from_json_terms(nvars, mode, &terms)
    }
}

pub(crate) fn pow_rational(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

/// Arbitrary-size integer that serializes as a JSON number when it fits in
/// `i64` and as a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(JsonInt(BigInt::from(v))),
            Raw::Str(s) => s.trim().parse().map(JsonInt).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm(pub JsonInt, pub JsonInt, pub IntVec);

impl fmt::Display for SparsePoly {
    /// Canonical form: terms in descending graded lexicographic order,
    /// variables written `x1, x2, …`. Reparses to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            let coeff = if abs.is_integer() { abs.numer().to_string() } else { format!("{}/{}", abs.numer(), abs.denom()) };
            match (factors.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{}*{}", coeff, factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Parses the text grammar: `+`/`-` separated terms, each a `*`-joined
/// product of rational numbers `p` or `p/q` and powers `x<k>^<e>`.
pub fn parse_polynomial(text: &str, nvars: usize, mode: Mode) -> Result<SparsePoly> {
    Parser { s: text.as_bytes(), pos: 0, nvars, mode }.parse()
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    nvars: usize,
    mode: Mode,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string"))
    }

    fn signed_small(&mut self) -> Result<i64> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            if self.peek() == Some(b'+') {
                self.pos += 1;
            }
            false
        };
        let at = self.pos;
        let v = self.integer()?.to_i64().ok_or(Error::Syntax { pos: at, msg: "exponent too large".into() })?;
        Ok(if neg { -v } else { v })
    }

    fn parse(mut self) -> Result<SparsePoly> {
        let mut poly = SparsePoly::zero(self.nvars, self.mode);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err("empty expression"),
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    Rational::one()
                }
                Some(b'-') => {
                    self.pos += 1;
                    -Rational::one()
                }
                Some(_) if first => Rational::one(),
                Some(_) => return self.err("expected '+' or '-'"),
            };
            first = false;
            let (e, c) = self.term()?;
            poly.add_term(e, sign * c);
        }
        Ok(poly)
    }

    fn term(&mut self) -> Result<(IntVec, Rational)> {
        let mut coeff = Rational::one();
        let mut e = vec![0i64; self.nvars];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let mut q = Rational::from_integer(num);
                    if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let at = self.pos;
                        let den = self.integer()?;
                        if den.is_zero() {
                            return Err(Error::Syntax { pos: at, msg: "zero denominator".into() });
                        }
                        q /= Rational::from_integer(den);
                    }
                    coeff *= q;
                }
                Some(b'x') | Some(b'X') => {
                    self.pos += 1;
                    let idx = self.integer()?.to_usize().unwrap_or(usize::MAX);
                    if idx == 0 || idx > self.nvars {
                        return Err(Error::VariableOutOfRange { index: idx, dim: self.nvars });
                    }
                    let mut k = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        k = self.signed_small()?;
                    }
                    if k < 0 && self.mode == Mode::Affine {
                        return Err(Error::NegativeExponent);
                    }
                    e[idx - 1] += k;
                }
                _ => return self.err("expected a coefficient or a variable"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((e, coeff));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> SparsePoly {
        parse_polynomial(s, n, Mode::Affine).unwrap()
    }

    #[test]
    fn parses_simple_terms() {
        let f = p("x1 + x1^2*x2", 2);
        let terms: Vec<_> = f.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        assert_eq!(terms, vec![(vec![1, 0], rational(1, 1)), (vec![2, 1], rational(1, 1))]);
    }

    #[test]
    fn cancellation_gives_zero() {
        assert!(p("3/2*x1^2 - 3/2*x1^2", 1).is_zero());
    }

    #[test]
    fn negative_exponent_rejected_in_affine_mode() {
        assert_eq!(parse_polynomial("x1^-1", 1, Mode::Affine), Err(Error::NegativeExponent));
        let q = parse_polynomial("x1^-1", 1, Mode::Laurent).unwrap();
        assert_eq!(q.support(), vec![vec![-1]]);
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_polynomial("x1 + * x2", 2, Mode::Affine) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_polynomial("x3", 2, Mode::Affine), Err(Error::VariableOutOfRange { index: 3, dim: 2 })));
        assert!(matches!(parse_polynomial("1/0", 1, Mode::Affine), Err(Error::Syntax { .. })));
    }

    #[test]
    fn derivatives() {
        let f = p("x1 + x1^2*x2", 2);
        assert_eq!(f.partial_derivative(0).unwrap(), p("1 + 2*x1*x2", 2));
        assert_eq!(f.partial_derivative(1).unwrap(), p("x1^2", 2));
        let g = parse_polynomial("x1 + x1^2", 1, Mode::Laurent).unwrap();
        assert_eq!(g.partial_derivative(0).unwrap(), parse_polynomial("1 + 2*x1", 1, Mode::Laurent).unwrap());
        assert!(f.partial_derivative(2).is_err());
    }

    #[test]
    fn gamma_parts() {
        let f = p("x1 + x1*x2 + x1^2*x2^2", 2);
        let seg = LatticePolytope::convex_hull(&[vec![0, 0], vec![2, 2]]).unwrap();
        assert_eq!(f.gamma_part(&seg, seg.whole()).unwrap(), p("x1*x2 + x1^2*x2^2", 2));

        let g = p("x1 + x1^2*x2", 2);
        let tri = LatticePolytope::convex_hull(&[vec![0, 0], vec![1, 0], vec![2, 1]]).unwrap();
        let v = tri.face_by_points(&[vec![1, 0]]).unwrap();
        assert_eq!(g.gamma_part(&tri, v).unwrap(), p("x1", 2));
        assert_eq!(g.gamma_part(&tri, tri.whole()).unwrap(), g);
    }

    #[test]
    fn change_of_coordinates() {
        let f = p("x1*x2 + x1^2*x2^2", 2);
        let t = f.monomial_change_of_coordinates(&[vec![1, 1]]).unwrap();
        assert_eq!(t, parse_polynomial("x1 + x1^2", 1, Mode::Laurent).unwrap());
        let g = p("x1^2*x2", 2);
        assert_eq!(g.monomial_change_of_coordinates(&[vec![2, 1]]).unwrap(), parse_polynomial("x1", 1, Mode::Laurent).unwrap());
        let h = p("3*x1 - x2^4 + 7", 2);
        assert_eq!(h.monomial_change_of_coordinates(&[vec![1, 0], vec![0, 1]]).unwrap(), h.as_laurent());
        assert!(matches!(f.monomial_change_of_coordinates(&[vec![2, 2]]), Err(Error::NotInLattice(_))));
    }

    #[test]
    fn evaluation() {
        let f = p("x1 + x1^2*x2", 2);
        assert_eq!(f.eval_rational(&[rational(1, 1), rational(1, 1)]).unwrap(), rational(2, 1));
        assert_eq!(p("x1*x2", 2).eval_rational(&[rational(2, 1), rational(1, 2)]).unwrap(), rational(1, 1));
        let inv = parse_polynomial("x1^-1", 1, Mode::Laurent).unwrap();
        assert_eq!(inv.eval_rational(&[rational(0, 1)]), Err(Error::Pole(1)));
        assert_eq!(f.eval_f64(&[1.0, 1.0]).unwrap(), 2.0);
    }

    #[test]
    fn printing_round_trips() {
        for s in ["x1 + x1^2*x2", "-3/2*x1^3 + 7 - x2", "0", "-1"] {
            let f = p(s, 2);
            assert_eq!(p(&f.to_string(), 2), f);
        }
        assert_eq!(p("x1 + x1^2*x2", 2).to_string(), "x1^2*x2 + x1");
    }

    #[test]
    fn json_terms() {
        let f = SparsePoly::from_json_str("[[1,1,[1,0]],[3,2,[2,1]],[\"-5\",1,[0,0]]]", 2, Mode::Affine).unwrap();
        assert_eq!(f, p("x1 + 3/2*x1^2*x2 - 5", 2));
        let back = serde_json::to_string(&f.to_json_terms()).unwrap();
        assert_eq!(SparsePoly::from_json_str(&back, 2, Mode::Affine).unwrap(), f);
    }
}
