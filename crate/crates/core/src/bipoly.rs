//! Bivariate polynomials, viewed as polynomials in `v` over `Q[u]`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Mode, Rational, SparsePoly};
use crate::upoly::UPoly;

/// `Σ_k c_k(u) v^k`, no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    coeffs: Vec<UPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn from_u(p: UPoly) -> Self {
        Self::new(vec![p])
    }

    /// Reads `x1 ↦ u`, `x2 ↦ v` from a two-variable polynomial with nonnegative exponents.
    pub fn from_sparse(p: &SparsePoly) -> Result<Self> {
        if p.nvars() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: p.nvars() });
        }
        let mut grid: Vec<Vec<Rational>> = Vec::new();
        for (e, c) in p.terms() {
            if e[0] < 0 || e[1] < 0 {
                return Err(Error::NegativeExponent);
            }
            let (i, j) = (e[0] as usize, e[1] as usize);
            if grid.len() <= j {
                grid.resize(j + 1, Vec::new());
            }
            if grid[j].len() <= i {
                grid[j].resize(i + 1, Rational::zero());
            }
            grid[j][i] += c;
        }
        Ok(Self::new(grid.into_iter().map(UPoly::new).collect()))
    }

    pub fn to_sparse(&self) -> SparsePoly {
        let mut terms = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                terms.push((vec![i as i64, j as i64], a.clone()));
            }
        }
        SparsePoly::from_terms(2, Mode::Affine, terms).expect("two exponents")
    }

    pub fn coeffs(&self) -> &[UPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> UPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_v(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn deg_u(&self) -> usize {
        self.coeffs.iter().map(|c| c.deg()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1 && self.coeffs.iter().all(|c| c.is_constant())
    }

    pub fn lc_v(&self) -> UPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Exchanges the roles of `u` and `v`.
    pub fn swap(&self) -> BiPoly {
        let du = self.deg_u();
        Self::new(
            (0..=du)
                .map(|i| UPoly::new(self.coeffs.iter().map(|c| c.coeff(i)).collect()))
                .collect(),
        )
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![UPoly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::new(v)
    }

    pub fn mul_u(&self, p: &UPoly) -> BiPoly {
        Self::new(self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    pub fn minus_constant(&self, c: &Rational) -> BiPoly {
        self.sub(&BiPoly::from_u(UPoly::constant(c.clone())))
    }

    pub fn derivative_v(&self) -> BiPoly {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer(BigInt::from(k))))
                .collect(),
        )
    }

    pub fn derivative_u(&self) -> BiPoly {
        Self::new(self.coeffs.iter().map(|c| c.derivative()).collect())
    }

    /// Substitutes a value for `u`, leaving a polynomial in `v`.
    pub fn eval_u(&self, u: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| c.eval(u)).collect())
    }

    pub fn eval_u_complex(&self, u: Complex64) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.eval_complex(u)).collect()
    }

    pub fn eval_complex(&self, u: Complex64, v: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c.eval_complex(u);
        }
        acc
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        self.eval_u(u).eval(v)
    }

    /// Monic gcd of the coefficients in `Q[u]`.
    pub fn content_v(&self) -> UPoly {
        self.coeffs.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
    }

    pub fn primitive_v(&self) -> BiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content_v();
        Self::new(self.coeffs.iter().map(|a| a.exact_div(&c).expect("content divides")).collect())
    }

    /// Scales so that the leading coefficient in `v` has leading coefficient one.
    pub fn normalize(&self) -> BiPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let s = self.lc_v().lc().recip();
        Self::new(self.coeffs.iter().map(|c| c.scale(&s)).collect())
    }

    /// Pseudo-remainder of `self` by `b` in `v`.
    pub fn prem(&self, b: &BiPoly) -> BiPoly {
        let db = b.deg_v();
        let lb = b.lc_v();
        let mut r = self.clone();
        while !r.is_zero() && r.deg_v() >= db {
            let k = r.deg_v() - db;
            let lr = r.lc_v();
            let mut shifted = vec![UPoly::zero(); k];
            shifted.extend(b.coeffs.iter().map(|c| c.mul(&lr)));
            r = r.mul_u(&lb).sub(&BiPoly::new(shifted));
        }
        r
    }

    /// Greatest common divisor in `Q[u, v]`, normalized.
    pub fn gcd(&self, o: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return o.normalize();
        }
        if o.is_zero() {
            return self.normalize();
        }
        let c = self.content_v().gcd(&o.content_v());
        let (mut a, mut b) = (self.primitive_v(), o.primitive_v());
        if coprime_in_v(&a, &b) {
            return BiPoly::from_u(c).normalize();
        }
        if a.deg_v() < b.deg_v() {
            std::mem::swap(&mut a, &mut b);
        }
        let g = loop {
            if b.deg_v() == 0 {
                break BiPoly::from_u(UPoly::one());
            }
            let r = a.prem(&b);
            if r.is_zero() {
                break b;
            }
            a = b;
            b = r.primitive_v();
        };
        g.primitive_v().mul_u(&c).normalize()
    }

    /// Quotient when `d` divides `self` exactly in `Q[u, v]`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        if d.is_zero() {
            return None;
        }
        let dd = d.deg_v();
        let ld = d.lc_v();
        let mut r = self.clone();
        let mut q = vec![UPoly::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while !r.is_zero() {
            if r.deg_v() < dd {
                return None;
            }
            let k = r.deg_v() - dd;
            let c = r.lc_v().exact_div(&ld)?;
            let mut shifted = vec![UPoly::zero(); k];
            shifted.extend(d.coeffs.iter().map(|a| a.mul(&c)));
            r = r.sub(&BiPoly::new(shifted));
            q[k] = q[k].add(&c);
        }
        Some(Self::new(q))
    }

    /// Removes the monomial factor `u^a v^b` of highest degree.
    pub fn strip_monomial(&self) -> BiPoly {
        let b = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let a = self.coeffs.iter().filter(|c| !c.is_zero()).map(|c| c.coeffs().iter().take_while(|x| x.is_zero()).count()).min().unwrap_or(0);
        Self::new(
            self.coeffs[b..]
                .iter()
                .map(|c| if c.is_zero() { UPoly::zero() } else { UPoly::new(c.coeffs()[a..].to_vec()) })
                .collect(),
        )
    }

    /// Resultant with respect to `v`, as a polynomial in `u`, by exact
    /// evaluation at integer nodes and interpolation.
    pub fn resultant_v(&self, o: &BiPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let (da, db) = (self.deg_v(), o.deg_v());
        if da == 0 {
            return self.lc_v().pow(db);
        }
        if db == 0 {
            return o.lc_v().pow(da);
        }
        let bound = da * o.deg_u() + db * self.deg_u();
        let (la, lb) = (self.lc_v(), o.lc_v());
        let mut pts = Vec::with_capacity(bound + 1);
        let mut k: i64 = 0;
        while pts.len() <= bound {
            let u = Rational::from_integer(BigInt::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }));
            k += 1;
            if la.eval(&u).is_zero() || lb.eval(&u).is_zero() {
                continue;
            }
            let r = self.eval_u(&u).resultant(&o.eval_u(&u));
            pts.push((u, r));
        }
        UPoly::interpolate(&pts)
    }

    /// Substitutes `u ↦ u − λ v`.
    pub fn shear(&self, lambda: &Rational) -> BiPoly {
        if lambda.is_zero() {
            return self.clone();
        }
        let lin = BiPoly::new(vec![UPoly::monomial(1, Rational::one()), UPoly::constant(-lambda.clone())]);
        let mut acc = BiPoly::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            let mut pw = BiPoly::unit();
            let mut part = BiPoly::zero();
            for a in c.coeffs() {
                part = part.add(&pw.mul(&BiPoly::from_u(UPoly::constant(a.clone()))));
                pw = pw.mul(&lin);
            }
            let mut vj = vec![UPoly::zero(); j];
            vj.push(UPoly::one());
            acc = acc.add(&part.mul(&BiPoly::new(vj)));
        }
        acc
    }

    pub fn unit() -> BiPoly {
        BiPoly::from_u(UPoly::constant(Rational::one()))
    }
}

/// Sufficient test for `gcd_v(a, b) = 1`: a specialization `u = u0` keeping
/// both leading coefficients nonzero and giving coprime polynomials in `v`.
fn coprime_in_v(a: &BiPoly, b: &BiPoly) -> bool {
    let (la, lb) = (a.lc_v(), b.lc_v());
    for k in 0..8i64 {
        let u0 = Rational::new(BigInt::from(2 * k + 3), BigInt::from(k + 2));
        if la.eval(&u0).is_zero() || lb.eval(&u0).is_zero() {
            continue;
        }
        if a.eval_u(&u0).gcd(&b.eval_u(&u0)).deg() == 0 {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn bp(s: &str) -> BiPoly {
        BiPoly::from_sparse(&parse_polynomial(s, 2, Mode::Affine).unwrap()).unwrap()
    }

    #[test]
    fn round_trip_and_swap() {
        let p = bp("x1 + 3*x1^2*x2 - x2^3");
        assert_eq!(BiPoly::from_sparse(&p.to_sparse()).unwrap(), p);
        assert_eq!(p.swap(), bp("x2 + 3*x2^2*x1 - x1^3"));
    }

    #[test]
    fn gcd_of_products() {
        let common = bp("x1*x2 - 1");
        let a = common.mul(&bp("x1 + x2"));
        let b = common.mul(&bp("x1^2 - 2*x2 + 1"));
        assert_eq!(a.gcd(&b), common.normalize());
        assert_eq!(bp("x1 + 1").gcd(&bp("x2")), BiPoly::unit());
        let c = bp("x1^2 - 1").mul(&bp("x2 + 1"));
        assert_eq!(c.gcd(&bp("x1 - 1")), bp("x1 - 1"));
    }

    #[test]
    fn division() {
        let a = bp("x1*x2 - 1");
        let b = bp("x1 + x2^2");
        assert_eq!(a.mul(&b).exact_div(&a), Some(b.clone()));
        assert_eq!(b.exact_div(&a), None);
    }

    #[test]
    fn resultant_in_v() {
        // Res_v(v^2 - u, v - 1) = 1 - u.
        assert_eq!(bp("x2^2 - x1").resultant_v(&bp("x2 - 1")), UPoly::from_ints(&[1, -1]));
        // Res_v(u v - 1, v - u) = u^2 - 1 up to sign.
        let r = bp("x1*x2 - 1").resultant_v(&bp("x2 - x1"));
        assert_eq!(r.monic(), UPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn shear_substitutes() {
        let p = bp("x1^2 + x2");
        assert_eq!(p.shear(&crate::poly::rational(2, 1)), bp("x1^2 - 4*x1*x2 + 4*x2^2 + x2"));
    }

    #[test]
    fn strip() {
        assert_eq!(bp("x1^2*x2 + x1^3*x2^2").strip_monomial(), bp("1 + x1*x2"));
    }
}
