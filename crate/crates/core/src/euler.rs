//! Euler characteristics of plane curve fibers and their jumps.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebraic;
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::poly::{Mode, Rational, SparsePoly};
use crate::roots;
use crate::upoly::UPoly;
use crate::value::{Status, Tolerances, Value};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExceptionalPoint {
    pub x: Value,
    pub distinct_roots: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberTopology {
    pub value: Value,
    pub chi: i64,
    pub vertical_lines: Vec<Value>,
    pub exceptional_points: Vec<ExceptionalPoint>,
    pub generic_root_count: usize,
    /// Number of conjugate fibers described by the stored data; more than one
    /// when the value is irrational and the union over its conjugates was used.
    pub conjugates: usize,
    pub status: Status,
}

impl FiberTopology {
    /// The Euler characteristic recomputed from the projection data.
    pub fn recomputed_chi(&self) -> i64 {
        let v = self.vertical_lines.len() as i64;
        let s = self.exceptional_points.len() as i64;
        let r = self.generic_root_count as i64;
        let total = v + r * (1 - s - v) + self.exceptional_points.iter().map(|p| p.distinct_roots as i64).sum::<i64>();
        total / self.conjugates as i64
    }
}

/// Largest `deg_x1 · deg_x2` of the conjugate-union curve handled exactly.
pub const MAX_CONJUGATE_BIDEGREE: usize = 64;

struct Projection {
    vertical: UPoly,
    generic: usize,
    special: Vec<(UPoly, usize)>,
}

impl Projection {
    fn chi(&self) -> i64 {
        let s: usize = self.special.iter().map(|(h, _)| h.deg()).sum();
        let v = self.vertical.deg() as i64;
        v + self.generic as i64 * (1 - s as i64 - v) + self.special.iter().map(|(h, r)| (h.deg() * r) as i64).sum::<i64>()
    }
}

/// Projection of `{F = 0}` to the first coordinate.
fn project(f: &BiPoly) -> Result<Projection> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let cont = f.content_v();
    if f.deg_v() == 0 {
        return Ok(Projection { vertical: cont.squarefree(), generic: 0, special: Vec::new() });
    }
    let p = f.primitive_v();
    let g = p.gcd(&p.derivative_v());
    let p = p.exact_div(&g).expect("gcd divides");
    let disc = p.resultant_v(&p.derivative_v());
    let h = p.lc_v().mul(&disc).mul(&cont).squarefree();
    let vertical = h.gcd(&cont);
    let rest = h.exact_div(&vertical).expect("gcd divides");
    let special = if rest.deg() == 0 { Vec::new() } else { algebraic::distinct_fiber_counts(&rest, &p) };
    Ok(Projection { vertical, generic: p.deg_v(), special })
}

fn swap_variables(f: &SparsePoly) -> SparsePoly {
    let terms: Vec<_> = f.terms().map(|(e, c)| (vec![e[1], e[0]], c.clone())).collect();
    SparsePoly::from_terms(2, f.mode(), terms).expect("same shape")
}

fn compose(m: &UPoly, f: &SparsePoly) -> SparsePoly {
    let mut acc = SparsePoly::zero(f.nvars(), Mode::Affine);
    for c in m.coeffs().iter().rev() {
        acc = acc.mul(f).add(&SparsePoly::constant(f.nvars(), Mode::Affine, c.clone()));
    }
    acc
}

fn check_plane(f: &SparsePoly) -> Result<()> {
    if f.nvars() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: f.nvars() });
    }
    if f.mode() == Mode::Laurent && f.support().iter().flatten().any(|&e| e < 0) {
        return Err(Error::NegativeExponent);
    }
    Ok(())
}

/// `χ(f⁻¹(c))` for a polynomial in two variables, by projecting to the
/// first coordinate. Irrational values are handled through the union of
/// the conjugate fibers, which all have the same Euler characteristic.
pub fn chi_affine_curve_fiber(f: &SparsePoly, c: &Value) -> Result<FiberTopology> {
    check_plane(f)?;
    let (level, conjugates) = match (&c.exact, &c.polynomial) {
        (Some(r), _) => (f.minus_constant(r), 1),
        (None, Some(m)) => (compose(m, f), m.deg()),
        _ => return Err(Error::Unsupported("Euler characteristic of a fiber over a value known only numerically".into())),
    };
    if level.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let level = BiPoly::from_sparse(&level)?;
    if conjugates > 1 && level.deg_u() * level.deg_v() > MAX_CONJUGATE_BIDEGREE {
        return Err(Error::Guard(format!(
            "fiber over a value of degree {conjugates} gives bidegree ({}, {})",
            level.deg_u(),
            level.deg_v()
        )));
    }
    let proj = project(&level)?;
    let chi = proj.chi();
    if chi % conjugates as i64 != 0 {
        return Err(Error::IncreasePrecision);
    }
    let tol = Tolerances::default();
    let vertical_lines = crate::value::values_from_polynomial(&proj.vertical, &tol);
    let mut exceptional_points = Vec::new();
    for (h, r) in &proj.special {
        for x in crate::value::values_from_polynomial(h, &tol) {
            exceptional_points.push(ExceptionalPoint { x, distinct_roots: *r });
        }
    }
    let topo = FiberTopology {
        value: c.clone(),
        chi: chi / conjugates as i64,
        vertical_lines,
        exceptional_points,
        generic_root_count: proj.generic,
        conjugates,
        status: Status::Exact,
    };
    if topo.recomputed_chi() != topo.chi {
        return Err(Error::IncreasePrecision);
    }
    Ok(topo)
}

/// The same Euler characteristic computed by projecting to the second coordinate.
pub fn chi_swapped(f: &SparsePoly, c: &Value) -> Result<i64> {
    check_plane(f)?;
    Ok(chi_affine_curve_fiber(&swap_variables(f), c)?.chi)
}

pub fn chi_rational(f: &SparsePoly, c: &Rational) -> Result<i64> {
    Ok(chi_affine_curve_fiber(f, &Value::rational(c.clone()))?.chi)
}

/// The simplest rational in `[lo, hi]`, `lo <= hi`.
fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    if lo.is_positive() {
        let fl = lo.floor();
        if &fl == lo {
            return fl;
        }
        if fl < hi.floor() {
            return fl + Rational::one();
        }
        let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
        return fl + inner.recip();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    Rational::zero()
}

fn to_rational(x: f64) -> Rational {
    Rational::from_f64(x).unwrap_or_else(Rational::zero)
}

fn min_gap(k: &[Value]) -> f64 {
    let mut gap = f64::INFINITY;
    for (i, a) in k.iter().enumerate() {
        for b in &k[i + 1..] {
            gap = gap.min((a.approx - b.approx).norm());
        }
    }
    if gap.is_finite() { gap } else { 1.0 }
}

/// A rational value at distance at least the margin from every element of
/// `k`: half the minimal gap, or 1 when `k` has at most one element.
pub fn pick_generic_value(k: &[Value], seed: u64) -> Rational {
    generic_values(k, 1, seed).remove(0)
}

/// `count` distinct generic values for the margin rule of [`pick_generic_value`].
pub fn generic_values(k: &[Value], count: usize, seed: u64) -> Vec<Rational> {
    let margin = if k.len() <= 1 { 1.0 } else { min_gap(k) / 2.0 };
    let ok = |c: &Rational| k.iter().all(|v| (v.approx - roots::to_complex(c)).norm() >= margin);
    let mut out: Vec<Rational> = Vec::new();
    for i in 0..64i64 {
        let c = Rational::from_integer(BigInt::from(if i % 2 == 1 { (i + 1) / 2 } else { -i / 2 }));
        if out.len() < count && ok(&c) && !out.contains(&c) {
            out.push(c);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < count {
        let c = Rational::new(BigInt::from(rng.gen_range(-4000i64..4000)), BigInt::from(rng.gen_range(1i64..97)));
        if ok(&c) && !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JumpReport {
    pub value: Value,
    /// The nearby value at which the generic fiber is sampled.
    pub nearby: String,
    pub chi_at_value: i64,
    pub chi_nearby: i64,
    pub jump: i64,
    pub status: Status,
}

/// `E_f(b) = (−1)^{n−1}(χ(b+ε) − χ(b))` with `n = 2`. The nearby value is
/// `b + ε` with `ε = 10⁻³` of the minimal gap in `k`, checked against `b + ε/2`.
/// For a non-real `b` any generic value is used, the complement of `k` being connected.
pub fn euler_jump(f: &SparsePoly, b: &Value, k: &[Value], seed: u64) -> Result<JumpReport> {
    check_plane(f)?;
    if !k.iter().any(|v| v.same(b, 1e-9) == Some(true)) {
        return Err(Error::Invalid(format!("{} is not among the candidate values", b.display())));
    }
    let chi_b = chi_affine_curve_fiber(f, b)?.chi;
    let eps = 1e-3 * min_gap(k);
    let nearby = |e: f64| -> Rational {
        let lo = to_rational(e * 0.99);
        let hi = to_rational(e * 1.01);
        let d = simplest_between(&lo, &hi);
        match &b.exact {
            Some(r) => r + d,
            None => simplest_between(&(to_rational(b.approx.re) + lo), &(to_rational(b.approx.re) + hi)),
        }
    };
    let (c1, c2) = if roots::is_real(b.approx, 1e-12) {
        (nearby(eps), nearby(eps / 2.0))
    } else {
        let g = generic_values(k, 2, seed);
        (g[0].clone(), g[1].clone())
    };
    let chi1 = chi_rational(f, &c1)?;
    let chi2 = chi_rational(f, &c2)?;
    if chi1 != chi2 {
        return Err(Error::EpsilonNotGeneric(format!("χ = {chi1} at {c1} but {chi2} at {c2}")));
    }
    Ok(JumpReport { value: b.clone(), nearby: c1.to_string(), chi_at_value: chi_b, chi_nearby: chi1, jump: -(chi1 - chi_b), status: Status::Exact })
}

/// Euler characteristic of a generic fiber.
pub fn generic_chi(f: &SparsePoly, k: &[Value], seed: u64) -> Result<i64> {
    chi_rational(f, &pick_generic_value(k, seed))
}
