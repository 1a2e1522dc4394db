//! Critical values on face tori, affine critical values, non-degeneracy at
//! infinity and isolated singularities of the face fibers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebraic::{self, ValueFn};
use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::lattice::{self, IntVec};
use crate::newton::{FaceClassification, NewtonData};
use crate::poly::{Mode, Rational, SparsePoly};
use crate::polytope::{FaceId, LatticePolytope};
use crate::roots;
use crate::upoly::UPoly;
use crate::value::{push_distinct, sort_values, values_from_polynomial, Settings, Status, Tolerances, Value};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalValueSet {
    pub values: Vec<Value>,
    pub status: Status,
    /// Vertices of the face whose torus carries the computation.
    pub source_face: Option<Vec<IntVec>>,
    pub method: String,
}

impl CriticalValueSet {
    fn new(mut values: Vec<Value>, method: &str) -> Self {
        sort_values(&mut values);
        let status = values.iter().fold(Status::Exact, |s, v| s.meet(v.status));
        CriticalValueSet { values, status, source_face: None, method: method.to_string() }
    }

    fn with_status(mut self, status: Status) -> Self {
        self.status = self.status.meet(status);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub description: String,
    /// Coordinates of a point in the ambient torus, when rational.
    pub point: Option<Vec<String>>,
    /// Defining polynomial of a witness set, in face-torus coordinates.
    pub polynomial: Option<String>,
    /// Checked by exact substitution or by exact elimination.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witnesses: Vec<Witness>,
    pub method: String,
    pub status: Status,
}

impl Verdict {
    fn pass(method: &str) -> Verdict {
        Verdict { outcome: Outcome::Pass, witnesses: Vec::new(), method: method.into(), status: Status::Exact }
    }

    fn fail(method: &str, witness: Witness) -> Verdict {
        Verdict { outcome: Outcome::Fail, witnesses: vec![witness], method: method.into(), status: Status::Exact }
    }

    fn unknown(method: &str) -> Verdict {
        Verdict { outcome: Outcome::Unknown, witnesses: Vec::new(), method: method.into(), status: Status::Heuristic }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceVerdict {
    pub face: Vec<IntVec>,
    pub dim: i64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NondegeneracyReport {
    pub faces: Vec<FaceVerdict>,
    pub overall: Verdict,
}

/// The face polynomial as a Laurent polynomial on the face torus, together
/// with the lattice basis and the vertex used to shift the face to the origin.
pub struct FaceTorus {
    pub q: SparsePoly,
    pub basis: Vec<IntVec>,
    pub shift: IntVec,
    pub f_gamma: SparsePoly,
}

pub fn face_torus(f: &SparsePoly, polytope: &LatticePolytope, id: FaceId) -> Result<FaceTorus> {
    let face = polytope.face(id);
    let f_gamma = f.gamma_part(polytope, id)?;
    let shift = if face.contains_origin { vec![0; f.nvars()] } else { polytope.vertices[face.vertex_indices[0]].clone() };
    let basis = polytope.lattice_basis_of_face_span(id)?;
    let neg: IntVec = shift.iter().map(|x| -x).collect();
    let q = f_gamma.shift(&neg).monomial_change_of_coordinates(&basis)?;
    Ok(FaceTorus { q, basis, shift, f_gamma })
}

/// `f_γ` on the torus of `L_γ ∩ Z^n`, in `dim γ` Laurent variables. For a
/// face missing the origin the polynomial is first divided by the monomial of
/// the face's first vertex.
pub fn restrict_to_face_torus(f: &SparsePoly, polytope: &LatticePolytope, id: FaceId) -> Result<SparsePoly> {
    Ok(face_torus(f, polytope, id)?.q)
}

fn clear1(p: &SparsePoly) -> (UPoly, i64) {
    let (n, shift) = p.clear_monomial();
    (dense1(&n), shift[0])
}

fn dense1(p: &SparsePoly) -> UPoly {
    let mut c = vec![Rational::zero(); p.support().iter().map(|e| e[0] as usize + 1).max().unwrap_or(0)];
    for (e, a) in p.terms() {
        c[e[0] as usize] = a.clone();
    }
    UPoly::new(c)
}

fn clear2(p: &SparsePoly) -> (BiPoly, (i64, i64)) {
    let (n, shift) = p.clear_monomial();
    (BiPoly::from_sparse(&n).expect("two variables, nonnegative exponents"), (shift[0], shift[1]))
}

fn toric(p: &SparsePoly, i: usize) -> SparsePoly {
    p.toric_derivative(i).expect("variable in range")
}

fn describe(p: &BiPoly) -> String {
    p.to_sparse().to_string()
}

/// `{p(z) : z ∈ (C*)^d, ∂p(z) = 0}` for a Laurent polynomial in `d` variables.
pub fn critical_values_torus(p: &SparsePoly, settings: &Settings) -> Result<CriticalValueSet> {
    let d = p.nvars();
    if p.is_constant() {
        return Ok(CriticalValueSet::new(vec![Value::rational(p.constant_term())], "constant polynomial"));
    }
    match d {
        1 => Ok(torus_values_1(p, &settings.tolerances)),
        2 => torus_values_2(p, settings),
        _ => {
            let vals = multistart_values(p, true, settings.seed, &settings.tolerances, 64 * d);
            Ok(CriticalValueSet::new(vals, "seeded multistart Newton on the toric gradient").with_status(Status::Heuristic))
        }
    }
}

fn torus_values_1(p: &SparsePoly, tol: &Tolerances) -> CriticalValueSet {
    let (num, k) = clear1(p);
    let (dp, _) = clear1(&toric(p, 0));
    let h = dp.squarefree().strip_x();
    let mut v = UPoly::one();
    for (hi, psi) in algebraic::run_split(&h, |m| {
        let t = UPoly::monomial(1, Rational::one());
        Ok(m.mul(&m.reduce(&num), &m.pow(&t, -k)?))
    }) {
        v = v.mul(&algebraic::charpoly(&hi, &psi));
    }
    CriticalValueSet::new(values_from_polynomial(&v, tol), "roots of the derivative numerator, exact elimination")
}

fn torus_values_2(p: &SparsePoly, settings: &Settings) -> Result<CriticalValueSet> {
    let (num, shift) = clear2(p);
    let g1 = clear2(&toric(p, 0)).0.strip_monomial();
    let g2 = clear2(&toric(p, 1)).0.strip_monomial();
    let value = ValueFn { numerator: &num, shift: (-shift.0, -shift.1) };
    plane_values(&g1, &g2, &value, true, settings, |r| {
        let (n, _) = clear2(&p.minus_constant(r));
        n.strip_monomial()
    })
}

/// Critical values from the system `g1 = g2 = 0` in the plane or torus:
/// positive-dimensional components are sampled, isolated points eliminated exactly.
fn plane_values(
    g1: &BiPoly,
    g2: &BiPoly,
    value: &ValueFn,
    torus: bool,
    settings: &Settings,
    level: impl Fn(&Rational) -> BiPoly,
) -> Result<CriticalValueSet> {
    let tol = &settings.tolerances;
    let mut g = g1.gcd(g2);
    if torus {
        g = g.strip_monomial();
    }
    let mut values: Vec<Value> = Vec::new();
    let mut method = String::from("resultant elimination with exact splitting");
    if !g.is_constant() {
        method.push_str("; critical curve sampled");
        for v in component_values(&g, value, torus, settings, &level)? {
            push_distinct(&mut values, v, tol.cluster);
        }
    }
    if !g.is_zero() {
        let a = g1.exact_div(&g).unwrap_or_default();
        let b = g2.exact_div(&g).unwrap_or_default();
        if !a.is_constant() && !b.is_constant() {
            let mut poly = UPoly::one();
            for pt in algebraic::isolated_points(&a, &b, value, torus) {
                poly = poly.mul(&algebraic::charpoly(&pt.h, &pt.value));
            }
            for v in values_from_polynomial(&poly, tol) {
                push_distinct(&mut values, v, tol.cluster);
            }
        }
    }
    Ok(CriticalValueSet::new(values, &method))
}

fn eval_value(value: &ValueFn, u: Complex64, v: Complex64) -> Complex64 {
    value.numerator.eval_complex(u, v) * u.powi(value.shift.0 as i32) * v.powi(value.shift.1 as i32)
}

/// Values of the function on the curve `g = 0`, sampled on two vertical
/// lines and on the vertical components. Rational samples are upgraded when
/// `gcd(g, level(r))` is nonconstant.
fn component_values(
    g: &BiPoly,
    value: &ValueFn,
    torus: bool,
    settings: &Settings,
    level: &impl Fn(&Rational) -> BiPoly,
) -> Result<Vec<Value>> {
    let tol = &settings.tolerances;
    let mut raw: Vec<Complex64> = Vec::new();
    let content = g.content_v();
    let v0 = Complex64::new(3.0 / 7.0, 0.0);
    for u0 in roots::distinct(&roots::roots_upoly(&content), tol.root) {
        if torus && u0.norm() < 1e-12 {
            continue;
        }
        raw.push(eval_value(value, u0, v0));
    }
    let prim = g.primitive_v();
    if prim.deg_v() >= 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(settings.sub_seed(&[prim.deg_u() as i64, prim.deg_v() as i64]));
        let mut samples: Vec<Vec<Complex64>> = Vec::new();
        for _ in 0..3 {
            let u0 = Rational::new(rng.gen_range(2i64..40).into(), rng.gen_range(3i64..17).into());
            let line = prim.eval_u(&u0);
            if line.deg() < prim.deg_v() {
                continue;
            }
            let uc = roots::to_complex(&u0);
            let vals: Vec<Complex64> = roots::distinct(&roots::roots_upoly(&line.squarefree()), tol.root)
                .into_iter()
                .filter(|v| !torus || v.norm() > 1e-12)
                .map(|v| eval_value(value, uc, v))
                .collect();
            samples.push(roots::distinct(&vals, 1e-7));
        }
        let agree = |a: &[Complex64], b: &[Complex64]| {
            a.len() == b.len() && a.iter().all(|x| b.iter().any(|y| roots::close(*x, *y, 1e-6)))
        };
        match samples.as_slice() {
            [a, b, ..] if agree(a, b) => raw.extend(a),
            [a, b, c] if agree(a, c) || agree(b, c) => raw.extend(c),
            [a] => raw.extend(a),
            _ => return Err(Error::CriticalValuesNotFinite),
        }
    }
    let mut out = Vec::new();
    for z in roots::distinct(&raw, 1e-7) {
        let exact = roots::is_real(z, 1e-9)
            .then(|| roots::recognize_rational(z.re, 1_000_000, 1e-9))
            .flatten()
            .filter(|r| !g.gcd(&level(r)).is_constant());
        match exact {
            Some(r) => push_distinct(&mut out, Value::rational(r), tol.cluster),
            None => push_distinct(&mut out, Value::numeric(z, Status::Numeric), tol.cluster),
        }
    }
    Ok(out)
}

/// `f(Sing f)`: exact elimination for one and two variables, seeded
/// multistart Newton for three and four.
pub fn affine_critical_values(f: &SparsePoly, settings: &Settings) -> Result<CriticalValueSet> {
    let n = f.nvars();
    if f.is_constant() {
        return Ok(CriticalValueSet::new(vec![Value::rational(f.constant_term())], "constant polynomial"));
    }
    let tol = &settings.tolerances;
    match n {
        1 => {
            let num = dense1(f);
            let h = num.derivative().squarefree();
            let mut v = UPoly::one();
            for (hi, psi) in algebraic::run_split(&h, |m| Ok(m.reduce(&num))) {
                v = v.mul(&algebraic::charpoly(&hi, &psi));
            }
            Ok(CriticalValueSet::new(values_from_polynomial(&v, tol), "roots of the derivative, exact elimination"))
        }
        2 => {
            let fx = BiPoly::from_sparse(&f.partial_derivative(0)?)?;
            let fy = BiPoly::from_sparse(&f.partial_derivative(1)?)?;
            let num = BiPoly::from_sparse(f)?;
            let value = ValueFn { numerator: &num, shift: (0, 0) };
            plane_values(&fx, &fy, &value, false, settings, |r| num.minus_constant(r))
        }
        3 | 4 => {
            let vals = multistart_values(f, false, settings.seed, tol, 96 * n);
            Ok(CriticalValueSet::new(vals, "seeded multistart Newton on the gradient").with_status(Status::Numeric))
        }
        _ => Err(Error::Guard(format!(
            "affine critical values are not computed for {n} variables; supply them explicitly"
        ))),
    }
}

/// Values at critical points found by Newton's method from seeded random
/// starts. Points recognized as rational and verified exactly give exact values.
fn multistart_values(p: &SparsePoly, toric_system: bool, seed: u64, tol: &Tolerances, starts: usize) -> Vec<Value> {
    let d = p.nvars();
    let eqs: Vec<SparsePoly> = (0..d)
        .map(|i| if toric_system { toric(p, i) } else { p.partial_derivative(i).expect("in range") })
        .collect();
    let jac: Vec<Vec<SparsePoly>> = eqs.iter().map(|e| (0..d).map(|j| e.partial_derivative(j).expect("in range")).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Value> = Vec::new();
    for _ in 0..starts {
        let mut z: Vec<Complex64> = (0..d)
            .map(|_| {
                if toric_system {
                    Complex64::from_polar(rng.gen_range(-1.5f64..1.5).exp(), rng.gen_range(0.0..std::f64::consts::TAU))
                } else {
                    Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
                }
            })
            .collect();
        let mut converged = false;
        for _ in 0..80 {
            let Ok(fv) = eqs.iter().map(|e| e.eval_complex(&z)).collect::<Result<Vec<_>>>() else { break };
            let norm = fv.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            if !norm.is_finite() {
                break;
            }
            if norm < tol.residual * 1e-3 {
                converged = true;
                break;
            }
            let Ok(jv) = jac.iter().flatten().map(|e| e.eval_complex(&z)).collect::<Result<Vec<_>>>() else { break };
            let j = DMatrix::from_row_slice(d, d, &jv);
            let rhs = DVector::from_iterator(d, fv.iter().map(|x| -x));
            let Some(step) = j.lu().solve(&rhs) else { break };
            for k in 0..d {
                z[k] += step[k];
            }
            if step.norm() < 1e-15 * z.iter().map(|x| x.norm()).fold(1.0, f64::max) {
                converged = eqs.iter().all(|e| e.eval_complex(&z).is_ok_and(|x| x.norm() < tol.residual));
                break;
            }
        }
        if !converged || z.iter().any(|x| !x.is_finite() || (toric_system && x.norm() < 1e-8)) {
            continue;
        }
        let Ok(val) = p.eval_complex(&z) else { continue };
        push_distinct(&mut out, exact_point_value(p, &eqs, &z).unwrap_or(Value::numeric(val, Status::Numeric)), 1e-7);
    }
    sort_values(&mut out);
    out
}

fn exact_point_value(p: &SparsePoly, eqs: &[SparsePoly], z: &[Complex64]) -> Option<Value> {
    let pt: Vec<Rational> = z
        .iter()
        .map(|x| roots::is_real(*x, 1e-9).then(|| roots::recognize_rational(x.re, 10_000, 1e-9)).flatten())
        .collect::<Option<_>>()?;
    if eqs.iter().all(|e| e.eval_rational(&pt).is_ok_and(|v| v.is_zero())) {
        return Some(Value::rational(p.eval_rational(&pt).ok()?));
    }
    None
}

/// `K_i` for a face through the origin.
pub fn face_critical_values(f: &SparsePoly, data: &NewtonData, id: FaceId, settings: &Settings) -> Result<CriticalValueSet> {
    let q = restrict_to_face_torus(f, &data.polytope, id)?;
    let mut s = Settings { seed: settings.sub_seed(&data.polytope.face(id).vertex_indices.iter().map(|&i| i as i64).collect::<Vec<_>>()), ..*settings };
    s.tolerances = settings.tolerances;
    let mut set = critical_values_torus(&q, &s)?;
    set.source_face = Some(data.polytope.face_vertices(id));
    Ok(set)
}

fn rational_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Maps a face-torus point to the ambient torus through dual lattice vectors.
fn lift_point(t: &[Rational], basis: &[IntVec], n: usize) -> Option<Vec<Rational>> {
    let c = lattice::dual_vectors(basis, n)?;
    Some(
        (0..n)
            .map(|i| {
                t.iter()
                    .zip(&c)
                    .fold(Rational::one(), |acc, (tk, ck)| acc * crate::poly::pow_rational(tk, ck[i]))
            })
            .collect(),
    )
}

/// Whether `f_γ` and all its partial derivatives vanish at `x`.
fn singular_at(f_gamma: &SparsePoly, x: &[Rational]) -> bool {
    f_gamma.eval_rational(x).is_ok_and(|v| v.is_zero())
        && (0..f_gamma.nvars()).all(|i| f_gamma.partial_derivative(i).is_ok_and(|d| d.eval_rational(x).is_ok_and(|v| v.is_zero())))
}

fn exponent_label(basis: &[IntVec]) -> String {
    basis.iter().enumerate().map(|(k, b)| format!("t{} = x^{:?}", k + 1, b)).collect::<Vec<_>>().join(", ")
}

fn face_smoothness(f: &SparsePoly, polytope: &LatticePolytope, id: FaceId, settings: &Settings) -> Result<Verdict> {
    let face = polytope.face(id);
    if face.dim == 0 {
        return Ok(Verdict::pass("single monomial"));
    }
    let ft = face_torus(f, polytope, id)?;
    let n = f.nvars();
    let q = &ft.q;
    match face.dim {
        1 => {
            let (num, _) = clear1(q);
            let g = num.gcd(&num.derivative());
            if g.deg() == 0 {
                return Ok(Verdict::pass("gcd(q, q') = 1"));
            }
            let mut w = Witness {
                description: format!("{}, t1 a root of {}", exponent_label(&ft.basis), g),
                point: None,
                polynomial: Some(g.to_string()),
                verified: true,
            };
            if let Some(r) = roots::rational_roots(&g).first() {
                if let Some(x) = lift_point(std::slice::from_ref(r), &ft.basis, n) {
                    w.verified = singular_at(&ft.f_gamma, &x);
                    w.point = Some(rational_strings(&x));
                }
            }
            Ok(Verdict::fail("gcd(q, q') nonconstant", w))
        }
        2 => {
            let (num, shift) = clear2(q);
            let g1 = clear2(&toric(q, 0)).0.strip_monomial();
            let g2 = clear2(&toric(q, 1)).0.strip_monomial();
            let g = g1.gcd(&g2).strip_monomial();
            let common = g.gcd(&num.strip_monomial()).strip_monomial();
            if !common.is_constant() {
                let w = Witness {
                    description: format!("{}, singular along the curve {} = 0", exponent_label(&ft.basis), describe(&common)),
                    point: None,
                    polynomial: Some(describe(&common)),
                    verified: true,
                };
                return Ok(Verdict::fail("common factor of q and its toric gradient", w));
            }
            let (Some(a), Some(b)) = (g1.exact_div(&g), g2.exact_div(&g)) else {
                return Ok(Verdict::pass("toric gradient has no isolated zeros"));
            };
            if a.is_constant() || b.is_constant() {
                return Ok(Verdict::pass("toric gradient has no isolated zeros"));
            }
            let value = ValueFn { numerator: &num, shift: (-shift.0, -shift.1) };
            for pt in algebraic::isolated_points(&a, &b, &value, true) {
                let z = pt.value.gcd(&pt.h);
                if z.deg() == 0 {
                    continue;
                }
                let mut w = Witness {
                    description: format!(
                        "{}, isolated singular point with u a root of {} and t2 = {} (t1 = u - {}·t2)",
                        exponent_label(&ft.basis),
                        z,
                        pt.phi.rem(&z),
                        pt.lambda
                    ),
                    point: None,
                    polynomial: Some(z.to_string()),
                    verified: true,
                };
                if let Some(u) = roots::rational_roots(&z).first() {
                    let t2 = pt.phi.eval(u);
                    let t1 = u - &pt.lambda * &t2;
                    if let Some(x) = lift_point(&[t1, t2], &ft.basis, n) {
                        w.verified = singular_at(&ft.f_gamma, &x);
                        w.point = Some(rational_strings(&x));
                    }
                }
                return Ok(Verdict::fail("isolated singular point by exact elimination", w));
            }
            Ok(Verdict::pass("no critical point of q on the zero level"))
        }
        _ => {
            let vals = multistart_values(q, true, settings.sub_seed(&face.vertex_indices.iter().map(|&i| i as i64).collect::<Vec<_>>()), &settings.tolerances, 64 * face.dim as usize);
            let hit = vals.iter().any(|v| v.approx.norm() < 1e-6);
            let mut v = Verdict::unknown(if hit {
                "heuristic: multistart Newton found a critical point near the zero level"
            } else {
                "heuristic: multistart Newton found no singular point; not a proof"
            });
            v.status = Status::Heuristic;
            Ok(v)
        }
    }
}

/// Smoothness of `{f_γ = 0}` in the torus for every face missing the origin.
pub fn nondegenerate_at_infinity(f: &SparsePoly, settings: &Settings) -> Result<NondegeneracyReport> {
    let data = NewtonData::new(f)?;
    let p = &data.polytope;
    let mut faces = Vec::new();
    for id in p.face_ids() {
        let face = p.face(id);
        if face.dim < 0 || face.contains_origin {
            continue;
        }
        faces.push(FaceVerdict { face: p.face_vertices(id), dim: face.dim, verdict: face_smoothness(f, p, id, settings)? });
    }
    let overall = if let Some(bad) = faces.iter().find(|v| v.verdict.outcome == Outcome::Fail) {
        Verdict { outcome: Outcome::Fail, witnesses: bad.verdict.witnesses.clone(), method: "per-face check".into(), status: Status::Exact }
    } else if faces.iter().any(|v| v.verdict.outcome == Outcome::Unknown) {
        Verdict::unknown("per-face check; some faces undecided")
    } else {
        Verdict::pass("per-face check")
    };
    Ok(NondegeneracyReport { faces, overall })
}

fn compose(m: &UPoly, q: &SparsePoly) -> SparsePoly {
    let mut acc = SparsePoly::zero(q.nvars(), Mode::Laurent);
    for c in m.coeffs().iter().rev() {
        acc = acc.mul(q).add(&SparsePoly::constant(q.nvars(), Mode::Laurent, c.clone()));
    }
    acc
}

/// Whether the fiber `q = b` on a two-dimensional torus has only isolated
/// singular points.
pub fn isolated_fiber_singularities_2(q: &SparsePoly, b: &Value, settings: &Settings) -> Result<Verdict> {
    let g1 = clear2(&toric(q, 0)).0.strip_monomial();
    let g2 = clear2(&toric(q, 1)).0.strip_monomial();
    let g = g1.gcd(&g2).strip_monomial();
    if g.is_constant() {
        return Ok(Verdict::pass("no positive-dimensional critical component"));
    }
    let level = match (&b.exact, &b.polynomial) {
        (Some(r), _) => Some(clear2(&q.minus_constant(r)).0),
        (None, Some(m)) => Some(clear2(&compose(m, q)).0),
        _ => None,
    };
    if let Some(level) = level {
        let h = g.gcd(&level.strip_monomial()).strip_monomial();
        if h.is_constant() {
            return Ok(Verdict::pass("critical curve misses the fiber"));
        }
        return Ok(Verdict::fail(
            "fiber contains a critical curve",
            Witness {
                description: format!("singular along {} = 0", describe(&h)),
                point: None,
                polynomial: Some(describe(&h)),
                verified: true,
            },
        ));
    }
    let (num, shift) = clear2(q);
    let value = ValueFn { numerator: &num, shift: (-shift.0, -shift.1) };
    let comps = component_values(&g, &value, true, settings, &|r| clear2(&q.minus_constant(r)).0.strip_monomial())?;
    let mut verdict = Verdict::pass("numeric comparison with sampled curve values");
    for c in &comps {
        match c.same(b, settings.tolerances.cluster) {
            Some(true) => {
                verdict = Verdict {
                    outcome: Outcome::Fail,
                    witnesses: vec![Witness { description: format!("critical curve {} = 0 at this level", describe(&g)), point: None, polynomial: Some(describe(&g)), verified: false }],
                    method: "numeric comparison with sampled curve values".into(),
                    status: Status::Numeric,
                };
                break;
            }
            None => verdict = Verdict::unknown("value too close to a curve value to separate"),
            Some(false) => {}
        }
    }
    verdict.status = verdict.status.meet(Status::Numeric);
    Ok(verdict)
}

/// The isolated-singularities condition over `b`, per atypical face.
pub fn isolated_singularities_over(
    f: &SparsePoly,
    data: &NewtonData,
    atypical: &[FaceClassification],
    b: &Value,
    settings: &Settings,
) -> Result<Vec<FaceVerdict>> {
    let mut out = Vec::new();
    for c in atypical {
        let verdict = match c.dim {
            1 => Verdict::pass("one-dimensional face: fibers are finite"),
            2 => isolated_fiber_singularities_2(&restrict_to_face_torus(f, &data.polytope, c.face)?, b, settings)?,
            _ => Verdict::unknown("no exact method for faces of dimension three or more"),
        };
        out.push(FaceVerdict { face: c.vertices.clone(), dim: c.dim, verdict });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rational};

    fn p(s: &str, n: usize) -> SparsePoly {
        parse_polynomial(s, n, Mode::Affine).unwrap()
    }

    fn l(s: &str, n: usize) -> SparsePoly {
        parse_polynomial(s, n, Mode::Laurent).unwrap()
    }

    fn exact(set: &CriticalValueSet) -> Vec<Rational> {
        set.values.iter().map(|v| v.exact.clone().expect("rational value")).collect()
    }

    #[test]
    fn restriction_examples() {
        let f = p("x1 + x1*x2 + x1^2*x2^2", 2);
        let data = NewtonData::new(&f).unwrap();
        let seg = data.polytope.face_by_points(&[vec![0, 0], vec![2, 2]]).unwrap();
        assert_eq!(restrict_to_face_torus(&f, &data.polytope, seg).unwrap(), l("x1 + x1^2", 1));
        let g = p("x1 + x1^2*x2", 2);
        let data = NewtonData::new(&g).unwrap();
        let seg = data.polytope.face_by_points(&[vec![0, 0], vec![2, 1]]).unwrap();
        assert_eq!(restrict_to_face_torus(&g, &data.polytope, seg).unwrap(), l("x1", 1));
    }

    #[test]
    fn torus_values_one_variable() {
        let s = Settings::default();
        assert_eq!(exact(&critical_values_torus(&l("x1 + x1^2", 1), &s).unwrap()), vec![rational(-1, 4)]);
        assert!(critical_values_torus(&l("x1", 1), &s).unwrap().values.is_empty());
        assert_eq!(exact(&critical_values_torus(&l("x1 + x1^-1", 1), &s).unwrap()), vec![rational(-2, 1), rational(2, 1)]);
    }

    #[test]
    fn torus_values_two_variables() {
        let s = Settings::default();
        // x + y + 1/(xy): critical points x = y = 1 and its cube-root twists, values 3ω.
        let set = critical_values_torus(&l("x1 + x2 + x1^-1*x2^-1", 2), &s).unwrap();
        assert_eq!(set.values.len(), 3);
        assert_eq!(set.status, Status::Exact);
        assert!(set.values.iter().any(|v| v.exact == Some(rational(3, 1))));
        // A critical curve: (x y)^2 - 2 x y is critical along x y = 1 with value -1.
        let set = critical_values_torus(&l("x1^2*x2^2 - 2*x1*x2", 2), &s).unwrap();
        assert_eq!(exact(&set), vec![rational(-1, 1)]);
    }

    #[test]
    fn affine_values() {
        let s = Settings::default();
        assert_eq!(exact(&affine_critical_values(&p("x1 + x1*x2 + x1^2*x2^2", 2), &s).unwrap()), vec![rational(0, 1)]);
        assert_eq!(exact(&affine_critical_values(&p("x1^2 + x2^2", 2), &s).unwrap()), vec![rational(0, 1)]);
        assert!(affine_critical_values(&p("x1", 1), &s).unwrap().values.is_empty());
        assert_eq!(exact(&affine_critical_values(&p("x1 + x1^2", 1), &s).unwrap()), vec![rational(-1, 4)]);
        assert_eq!(exact(&affine_critical_values(&p("x1^3 - 3*x1", 1), &s).unwrap()), vec![rational(-2, 1), rational(2, 1)]);
        assert!(affine_critical_values(&p("x1 + x1^2*x2", 2), &s).unwrap().values.is_empty());
        let set = affine_critical_values(&p("x1^2 + x2^2 + x3^2 - 2*x3", 3), &s).unwrap();
        assert_eq!(exact(&set), vec![rational(-1, 1)]);
        assert_eq!(set.status, Status::Numeric);
    }

    #[test]
    fn nondegeneracy() {
        let s = Settings::default();
        let rep = nondegenerate_at_infinity(&p("x1 + x1*x2 + x1^2*x2^2", 2), &s).unwrap();
        assert_eq!(rep.overall.outcome, Outcome::Pass);
        let rep = nondegenerate_at_infinity(&p("x1^2 + 2*x1*x2 + x2^2", 2), &s).unwrap();
        assert_eq!(rep.overall.outcome, Outcome::Fail);
        let w = &rep.overall.witnesses[0];
        assert!(w.verified);
        assert_eq!(w.point.as_ref().unwrap().len(), 2);
        let rep = nondegenerate_at_infinity(&p("x1^3 + x2^3 + x1*x2", 2), &s).unwrap();
        assert_eq!(rep.overall.outcome, Outcome::Pass);
    }

    #[test]
    fn nondegeneracy_on_a_two_dimensional_face() {
        let s = Settings::default();
        // The face x + y + z^2... is smooth; (x + y + z)^2 is not.
        let good = nondegenerate_at_infinity(&p("x1 + x2 + x3 + x1*x2*x3", 3), &s).unwrap();
        assert_ne!(good.overall.outcome, Outcome::Fail);
        let bad = nondegenerate_at_infinity(&p("x1^2 + x2^2 + x3^2 + 2*x1*x2 + 2*x1*x3 + 2*x2*x3", 3), &s).unwrap();
        assert_eq!(bad.overall.outcome, Outcome::Fail);
    }

    #[test]
    fn isolated_singularities() {
        let s = Settings::default();
        let q = l("x1^2*x2^2 - 2*x1*x2", 2);
        let v = isolated_fiber_singularities_2(&q, &Value::rational(rational(-1, 1)), &s).unwrap();
        assert_eq!(v.outcome, Outcome::Fail);
        let v = isolated_fiber_singularities_2(&q, &Value::rational(rational(1, 1)), &s).unwrap();
        assert_eq!(v.outcome, Outcome::Pass);
        let v = isolated_fiber_singularities_2(&l("x1 + x2 + x1*x2^2", 2), &Value::rational(rational(0, 1)), &s).unwrap();
        assert_eq!(v.outcome, Outcome::Pass);
    }
}
