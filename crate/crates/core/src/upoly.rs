//! Dense univariate polynomials over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::poly::{rational_to_f64, Rational};

/// Coefficients stored from the constant term upward, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&a| Rational::from_integer(BigInt::from(a))).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }

    pub fn neg(&self) -> UPoly {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    pub fn pow(&self, k: usize) -> UPoly {
        let mut r = Self::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Division with remainder. Panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg();
        let lc = d.lc();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * b;
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().recip())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(g, s)` with `g = gcd(self, o)` monic and `s·self ≡ g (mod o)`.
    pub fn ext_gcd(&self, o: &UPoly) -> (UPoly, UPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
        }
        if r0.is_zero() {
            return (r0, s0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv))
    }

    pub fn derivative(&self) -> UPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn squarefree(&self) -> UPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Removes the factor `x^k` of highest possible `k`.
    pub fn strip_x(&self) -> UPoly {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Self::new(self.coeffs[k..].to_vec())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + rational_to_f64(c);
        }
        acc
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| Complex64::new(rational_to_f64(c), 0.0)).collect()
    }

    /// Clears denominators and the integer content, keeping a positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for a in &ints {
            g = num_integer::gcd(g, a.clone());
        }
        if self.lc().is_negative() {
            g = -g;
        }
        Self::new(ints.into_iter().map(|a| Rational::from_integer(a / &g)).collect())
    }

    /// Resultant via the Euclidean algorithm over the field of fractions.
    pub fn resultant(&self, o: &UPoly) -> Rational {
        if self.is_zero() || o.is_zero() {
            return Rational::zero();
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = Rational::one();
        loop {
            let (da, db) = (a.deg(), b.deg());
            if db == 0 {
                return acc * num_traits::pow(b.lc(), da);
            }
            if da == 0 {
                return acc * num_traits::pow(a.lc(), db);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Rational::zero();
            }
            let dr = r.deg();
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc *= num_traits::pow(b.lc(), da - dr);
            a = b;
            b = r;
        }
    }

    /// Newton-form interpolation through distinct nodes.
    pub fn interpolate(points: &[(Rational, Rational)]) -> UPoly {
        let n = points.len();
        let xs: Vec<Rational> = points.iter().map(|p| p.0.clone()).collect();
        let mut dd: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
            }
        }
        let mut acc = UPoly::zero();
        for i in (0..n).rev() {
            let lin = UPoly::new(vec![-xs[i].clone(), Rational::one()]);
            acc = acc.mul(&lin).add(&UPoly::constant(dd[i].clone()));
        }
        acc
    }

    /// Substitutes `x ↦ a·x + b`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> UPoly {
        let lin = UPoly::new(vec![b.clone(), a.clone()]);
        let mut acc = UPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&UPoly::constant(c.clone()));
        }
        acc
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let neg = c.is_negative();
            let a = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{a}*{var}")?;
            }
        }
        Ok(())
    }
}
