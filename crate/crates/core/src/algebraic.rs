//! Exact computations at the roots of a squarefree polynomial `h`, working in
//! `Q[u]/(h)` and splitting `h` whenever a zero divisor shows up.

use num_traits::One;

use crate::bipoly::BiPoly;
use crate::poly::Rational;
use crate::upoly::UPoly;

/// Arithmetic modulo a squarefree `h`. Operations that meet a zero divisor
/// return the nontrivial factor of `h` they uncovered.
pub(crate) struct Modular<'a> {
    h: &'a UPoly,
}

pub(crate) type Split<T> = std::result::Result<T, UPoly>;

impl Modular<'_> {
    pub fn reduce(&self, a: &UPoly) -> UPoly {
        a.rem(self.h)
    }

    pub fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        a.mul(b).rem(self.h)
    }

    pub fn is_zero(&self, a: &UPoly) -> Split<bool> {
        let r = self.reduce(a);
        if r.is_zero() {
            return Ok(true);
        }
        let g = r.gcd(self.h);
        if g.deg() > 0 {
            return Err(g);
        }
        Ok(false)
    }

    /// Inverse of an element already known to be nonzero.
    pub fn inv(&self, a: &UPoly) -> Split<UPoly> {
        let (g, s) = self.reduce(a).ext_gcd(self.h);
        if g.deg() > 0 {
            return Err(g);
        }
        Ok(self.reduce(&s))
    }

    pub fn pow(&self, a: &UPoly, k: i64) -> Split<UPoly> {
        let base = if k < 0 { self.inv(a)? } else { self.reduce(a) };
        let mut acc = UPoly::one();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        Ok(acc)
    }

    /// Drops leading coefficients that vanish.
    pub fn trim(&self, mut a: Vec<UPoly>) -> Split<Vec<UPoly>> {
        while let Some(last) = a.last() {
            if self.is_zero(last)? {
                a.pop();
            } else {
                break;
            }
        }
        Ok(a.iter().map(|c| self.reduce(c)).collect())
    }

    fn rem(&self, a: Vec<UPoly>, b: &[UPoly]) -> Split<Vec<UPoly>> {
        let mut r = self.trim(a)?;
        let db = b.len() - 1;
        let inv = self.inv(&b[db])?;
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = self.mul(&r[r.len() - 1], &inv);
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = self.reduce(&r[k + j].sub(&c.mul(bj)));
            }
            r.pop();
            r = self.trim(r)?;
        }
        Ok(r)
    }

    /// Monic gcd of two trimmed polynomials with coefficients in `Q[u]/(h)`.
    pub fn gcd(&self, a: Vec<UPoly>, b: Vec<UPoly>) -> Split<Vec<UPoly>> {
        let (mut a, mut b) = (self.trim(a)?, self.trim(b)?);
        while !b.is_empty() {
            let r = self.rem(a, &b)?;
            a = b;
            b = r;
        }
        if a.is_empty() {
            return Ok(a);
        }
        let inv = self.inv(a.last().expect("nonempty"))?;
        Ok(a.iter().map(|c| self.mul(c, &inv)).collect())
    }

    pub fn derivative(&self, a: &[UPoly]) -> Vec<UPoly> {
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
            .collect()
    }

    /// Number of distinct roots (in the algebraic closure) of a trimmed polynomial.
    pub fn distinct_roots(&self, a: Vec<UPoly>) -> Split<usize> {
        let a = self.trim(a)?;
        if a.len() <= 1 {
            return Ok(0);
        }
        let d = self.derivative(&a);
        let g = self.gcd(a.clone(), d)?;
        Ok(a.len() - g.len())
    }

    /// Squarefree part `a / gcd(a, a')`, monic.
    pub fn squarefree(&self, a: Vec<UPoly>) -> Split<Vec<UPoly>> {
        let a = self.trim(a)?;
        if a.len() <= 1 {
            return Ok(a);
        }
        let g = self.gcd(a.clone(), self.derivative(&a))?;
        let mut q = vec![UPoly::zero(); a.len() - g.len() + 1];
        let mut r = a;
        let dg = g.len() - 1;
        while r.len() > dg {
            let k = r.len() - 1 - dg;
            let c = r[r.len() - 1].clone();
            for (j, gj) in g.iter().enumerate() {
                r[k + j] = self.reduce(&r[k + j].sub(&c.mul(gj)));
            }
            q[k] = c;
            r.pop();
        }
        let inv = self.inv(q.last().expect("nonempty"))?;
        Ok(q.iter().map(|c| self.mul(c, &inv)).collect())
    }

    /// Evaluates a bivariate polynomial at `(u, v)` with `v` an element.
    pub fn eval_bipoly(&self, p: &BiPoly, v: &UPoly) -> UPoly {
        let mut acc = UPoly::zero();
        for c in p.coeffs().iter().rev() {
            acc = self.reduce(&self.mul(&acc, v).add(c));
        }
        acc
    }
}

/// Runs `f` on every factor of the squarefree `h`, refining the factorization
/// whenever `f` reports a zero divisor. The returned factors multiply to `h`.
pub(crate) fn run_split<T>(h: &UPoly, mut f: impl FnMut(&Modular) -> Split<T>) -> Vec<(UPoly, T)> {
    let mut work = vec![h.monic()];
    let mut out = Vec::new();
    while let Some(m) = work.pop() {
        if m.deg() == 0 {
            continue;
        }
        match f(&Modular { h: &m }) {
            Ok(t) => out.push((m, t)),
            Err(g) => {
                let g = g.monic();
                let rest = m.exact_div(&g).expect("factor divides");
                work.push(rest.monic());
                work.push(g);
            }
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| format!("{}", a.0).cmp(&format!("{}", b.0))));
    out
}

/// `Res_u(h(u), s − ψ(u))`: a polynomial in `s` whose roots are the values of
/// `ψ` at the roots of `h`.
pub(crate) fn charpoly(h: &UPoly, psi: &UPoly) -> UPoly {
    let a = BiPoly::new(h.coeffs().iter().map(|c| UPoly::constant(c.clone())).collect());
    let mut b: Vec<UPoly> = psi.coeffs().iter().map(|c| UPoly::constant(-c.clone())).collect();
    if b.is_empty() {
        b.push(UPoly::zero());
    }
    b[0] = b[0].add(&UPoly::monomial(1, Rational::one()));
    let r = a.resultant_v(&BiPoly::new(b));
    r.squarefree()
}

/// A finite set of points `(u, φ(u))` for `u` running over the roots of `h`,
/// in coordinates sheared by `λ` (the original first coordinate is `u − λ·φ(u)`).
#[derive(Debug, Clone)]
pub(crate) struct PointSet {
    pub h: UPoly,
    pub phi: UPoly,
    pub lambda: Rational,
    pub value: UPoly,
}

/// A value function `N(u, v)·u^{k1}·v^{k2}`.
pub(crate) struct ValueFn<'a> {
    pub numerator: &'a BiPoly,
    pub shift: (i64, i64),
}

enum PointOutcome {
    None,
    Point(UPoly, UPoly),
    NotShape,
}

/// Common zeros of two coprime bivariate polynomials with the value of `value`
/// at each. With `torus` set, points with a vanishing coordinate are dropped.
pub(crate) fn isolated_points(a: &BiPoly, b: &BiPoly, value: &ValueFn, torus: bool) -> Vec<PointSet> {
    let lambdas = [0i64, 1, -1, 2, -3, 5, 7, -11, 13, 17];
    for &l in &lambdas {
        let lambda = Rational::from_integer(l.into());
        let (sa, sb, sn) = (a.shear(&lambda), b.shear(&lambda), value.numerator.shear(&lambda));
        let r = sa.resultant_v(&sb);
        if r.is_zero() {
            continue;
        }
        let h = r.squarefree();
        if h.deg() == 0 {
            return Vec::new();
        }
        let parts = run_split(&h, |k| {
            let g = k.gcd(sa.coeffs().to_vec(), sb.coeffs().to_vec())?;
            if g.len() <= 1 {
                return Ok(PointOutcome::None);
            }
            let s = k.squarefree(g)?;
            if s.len() > 2 {
                return Ok(PointOutcome::NotShape);
            }
            let phi = k.reduce(&s[0].neg());
            let u_orig = k.reduce(&UPoly::monomial(1, Rational::one()).sub(&phi.scale(&lambda)));
            if torus && (k.is_zero(&u_orig)? || k.is_zero(&phi)?) {
                return Ok(PointOutcome::None);
            }
            let mut val = k.eval_bipoly(&sn, &phi);
            val = k.mul(&val, &k.pow(&u_orig, value.shift.0)?);
            val = k.mul(&val, &k.pow(&phi, value.shift.1)?);
            Ok(PointOutcome::Point(phi, val))
        });
        if parts.iter().any(|(_, o)| matches!(o, PointOutcome::NotShape)) {
            continue;
        }
        return parts
            .into_iter()
            .filter_map(|(h, o)| match o {
                PointOutcome::Point(phi, value) => Some(PointSet { h, phi, lambda: lambda.clone(), value }),
                _ => None,
            })
            .collect();
    }
    log::warn!("no generic shear found; isolated points not resolved");
    Vec::new()
}

/// For each factor of `h`, the number of distinct roots in `v` of `p(u, v)`
/// when `u` is a root of that factor.
pub(crate) fn distinct_fiber_counts(h: &UPoly, p: &BiPoly) -> Vec<(UPoly, usize)> {
    run_split(h, |k| k.distinct_roots(p.coeffs().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Mode};

    fn bp(s: &str) -> BiPoly {
        BiPoly::from_sparse(&parse_polynomial(s, 2, Mode::Affine).unwrap()).unwrap()
    }

    #[test]
    fn charpoly_of_square_root() {
        // values of u^2 + u at the roots of u^2 - 2: 2 ± sqrt 2.
        let c = charpoly(&UPoly::from_ints(&[-2, 0, 1]), &UPoly::from_ints(&[0, 1, 1]));
        assert_eq!(c, UPoly::from_ints(&[2, -4, 1]));
    }

    #[test]
    fn splitting_counts() {
        // At u = 0 the fiber v^2 - u has one root, at u = 1 two.
        let h = UPoly::from_ints(&[0, -1, 1]);
        let counts = distinct_fiber_counts(&h, &bp("x2^2 - x1"));
        assert_eq!(counts, vec![(UPoly::from_ints(&[0, 1]), 1), (UPoly::from_ints(&[-1, 1]), 2)]);
    }

    #[test]
    fn points_of_a_circle_and_line() {
        let a = bp("x1^2 + x2^2 - 2");
        let b = bp("x1 - x2");
        let one = BiPoly::unit();
        let pts = isolated_points(&a, &b, &ValueFn { numerator: &one, shift: (1, 1) }, false);
        let total: usize = pts.iter().map(|p| p.h.deg()).sum();
        assert_eq!(total, 2);
        for p in &pts {
            assert_eq!(charpoly(&p.h, &p.value), UPoly::from_ints(&[-1, 1]));
        }
    }
}
