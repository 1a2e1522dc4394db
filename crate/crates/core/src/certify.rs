//! Assembly of the candidate set `K_f` and certification of its elements.

use serde::Serialize;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::euler::{self, JumpReport};
use crate::lattice::IntVec;
use crate::newton::{FaceClassification, NewtonData};
use crate::poly::SparsePoly;
use crate::torus::{self, CriticalValueSet, FaceVerdict, NondegeneracyReport, Outcome};
use crate::value::{push_distinct, sort_values, Settings, Status, Value};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Origin {
    AffineCritical,
    #[serde(rename = "f(0)")]
    ConstantTerm,
    Face { vertices: Vec<IntVec>, dim: i64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateValue {
    pub value: Value,
    pub origins: Vec<Origin>,
    /// `Some(true)` when the value avoids `f(Sing f) ∪ {f(0)}`, `None` when
    /// the comparison could not be decided.
    pub in_theorem_scope: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FaceValues {
    pub face: Vec<IntVec>,
    pub dim: i64,
    pub values: CriticalValueSet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KfAssembly {
    pub candidates: Vec<CandidateValue>,
    pub affine_critical: CriticalValueSet,
    pub f0: Value,
    pub faces: Vec<FaceValues>,
    pub status: Status,
}

impl KfAssembly {
    pub fn values(&self) -> Vec<Value> {
        self.candidates.iter().map(|c| c.value.clone()).collect()
    }

    pub fn find(&self, b: &Value, tol: f64) -> Option<&CandidateValue> {
        self.candidates.iter().find(|c| c.value.same(b, tol) == Some(true))
    }
}

fn scope_of(v: &Value, affine: &CriticalValueSet, f0: &Value, tol: f64) -> Option<bool> {
    let mut out = Some(true);
    for w in affine.values.iter().chain(std::iter::once(f0)) {
        match v.same(w, tol) {
            Some(true) => return Some(false),
            None => out = None,
            Some(false) => {}
        }
    }
    out
}

/// `K_f = f(Sing f) ∪ {f(0)} ∪ ⋃ K_i` with the origin of every value.
/// `assumed` replaces the computation of `f(Sing f)`.
pub fn assemble_kf(
    f: &SparsePoly,
    data: &NewtonData,
    atypical: &[FaceClassification],
    settings: &Settings,
    assumed: Option<&[Value]>,
) -> Result<KfAssembly> {
    let n = f.nvars();
    if data.polytope.dim != n as i64 {
        return Err(Error::NotFullDimensional { dim: data.polytope.dim, n });
    }
    let tol = settings.tolerances.cluster;
    let affine_critical = match assumed {
        Some(vals) => {
            let mut v: Vec<Value> = Vec::new();
            for x in vals {
                push_distinct(&mut v, x.clone(), tol);
            }
            sort_values(&mut v);
            let status = v.iter().fold(Status::Exact, |s, x| s.meet(x.status));
            CriticalValueSet { values: v, status, source_face: None, method: "supplied by the caller".into() }
        }
        None => torus::affine_critical_values(f, settings)?,
    };
    let f0 = Value::rational(f.constant_term());
    let mut faces = Vec::new();
    for c in atypical {
        faces.push(FaceValues { face: c.vertices.clone(), dim: c.dim, values: torus::face_critical_values(f, data, c.face, settings)? });
    }
    let mut candidates: Vec<CandidateValue> = Vec::new();
    let mut add = |v: &Value, o: Origin| {
        if let Some(c) = candidates.iter_mut().find(|c| c.value.same(v, tol) == Some(true)) {
            if !c.origins.contains(&o) {
                c.origins.push(o);
            }
            if v.status < c.value.status {
                c.value = v.clone();
            }
        } else {
            candidates.push(CandidateValue { value: v.clone(), origins: vec![o], in_theorem_scope: None });
        }
    };
    for v in &affine_critical.values {
        add(v, Origin::AffineCritical);
    }
    add(&f0, Origin::ConstantTerm);
    for fv in &faces {
        for v in &fv.values.values {
            add(v, Origin::Face { vertices: fv.face.clone(), dim: fv.dim });
        }
    }
    for c in &mut candidates {
        c.in_theorem_scope = scope_of(&c.value, &affine_critical, &f0, tol);
    }
    candidates.sort_by(|a, b| a.value.sort_key().0.total_cmp(&b.value.sort_key().0).then(a.value.sort_key().1.total_cmp(&b.value.sort_key().1)));
    let status = faces.iter().fold(affine_critical.status, |s, fv| s.meet(fv.values.status));
    Ok(KfAssembly { candidates, affine_critical, f0, faces, status })
}

/// `e(τ)`: 1 when `τ ∩ R^n_+` has the dimension of `τ`, else 0.
pub fn e_function(tau: &Cone) -> Result<u8> {
    let cap = tau.intersect(&Cone::orthant(tau.ambient_dim))?;
    Ok(u8::from(cap.dim == tau.dim))
}

/// Number of extreme rays shared by `σ` and `σ ∩ R^n_+`.
pub fn common_edges_count(sigma: &Cone) -> Result<usize> {
    let cap = sigma.intersect(&Cone::orthant(sigma.ambient_dim))?;
    Ok(sigma.common_rays(&cap))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub statement: Option<String>,
    pub warning: Option<String>,
}

pub fn inclusion_report(nondegeneracy: Outcome, n: usize) -> InclusionReport {
    match nondegeneracy {
        Outcome::Pass if n == 2 => InclusionReport { statement: Some("B_f = K_f".into()), warning: None },
        Outcome::Pass => InclusionReport { statement: Some("B_f ⊆ K_f; certified subset listed below".into()), warning: None },
        Outcome::Fail => InclusionReport { statement: None, warning: Some("f is degenerate at infinity; no inclusion is asserted".into()) },
        Outcome::Unknown => InclusionReport {
            statement: None,
            warning: Some("non-degeneracy at infinity is undecided; no inclusion is asserted".into()),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertVerdict {
    #[serde(rename = "certified-in-B_f")]
    Certified,
    #[serde(rename = "candidate-only")]
    CandidateOnly,
    #[serde(rename = "unknown")]
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub theorem: String,
    pub name: String,
    pub quote_tag: String,
    pub status: Outcome,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub value: CandidateValue,
    pub verdict: CertVerdict,
    pub theorem: Option<String>,
    pub reason: Option<String>,
    pub hypothesis_trace: Vec<HypothesisCheck>,
    pub euler_jump: Option<JumpReport>,
    pub euler_jump_error: Option<String>,
}

impl Certificate {
    /// Whether a certified verdict rests only on passing hypotheses of the cited theorem.
    pub fn is_sound(&self) -> bool {
        if self.verdict != CertVerdict::Certified {
            return true;
        }
        let Some(t) = &self.theorem else { return false };
        let cited: Vec<_> = self.hypothesis_trace.iter().filter(|h| &h.theorem == t).collect();
        !cited.is_empty() && cited.iter().all(|h| h.status == Outcome::Pass)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub settings: Settings,
    pub skip_nondegeneracy_check: bool,
    pub assumed_critical_values: Option<Vec<Value>>,
    pub full_trace: bool,
}

/// Everything the certifier needs about one polynomial.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub f: SparsePoly,
    pub data: NewtonData,
    pub atypical: Vec<FaceClassification>,
    /// Absent when the check was skipped.
    pub nondegeneracy: Option<NondegeneracyReport>,
    pub kf: KfAssembly,
    pub options: Options,
}

fn combine(items: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut out = Outcome::Pass;
    for o in items {
        match o {
            Outcome::Fail => return Outcome::Fail,
            Outcome::Unknown => out = Outcome::Unknown,
            Outcome::Pass => {}
        }
    }
    out
}

fn outcome_of(b: bool) -> Outcome {
    if b { Outcome::Pass } else { Outcome::Fail }
}

struct FaceFacts<'a> {
    class: &'a FaceClassification,
    /// `None` when membership of `b` in `K_i` is undecided.
    member: Option<bool>,
    dim_sigma: usize,
    dim_cap: usize,
    common: usize,
    cap_is_face: bool,
}

impl Analysis {
    pub fn new(f: &SparsePoly, options: Options) -> Result<Analysis> {
        let data = NewtonData::new(f)?;
        let n = f.nvars();
        if data.polytope.dim != n as i64 {
            return Err(Error::NotFullDimensional { dim: data.polytope.dim, n });
        }
        let atypical = data.atypical_faces()?;
        let nondegeneracy = if options.skip_nondegeneracy_check {
            None
        } else {
            Some(torus::nondegenerate_at_infinity(f, &options.settings)?)
        };
        let kf = assemble_kf(f, &data, &atypical, &options.settings, options.assumed_critical_values.as_deref())?;
        Ok(Analysis { f: f.clone(), data, atypical, nondegeneracy, kf, options })
    }

    pub fn n(&self) -> usize {
        self.f.nvars()
    }

    pub fn nondegeneracy_outcome(&self) -> Outcome {
        self.nondegeneracy.as_ref().map_or(Outcome::Pass, |r| r.overall.outcome)
    }

    pub fn inclusion(&self) -> InclusionReport {
        inclusion_report(self.nondegeneracy_outcome(), self.n())
    }

    /// The candidate matching `b`, or an error when `b` is not in `K_f`.
    pub fn candidate(&self, b: &Value) -> Result<CandidateValue> {
        self.kf
            .find(b, self.options.settings.tolerances.cluster)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("{} is not in K_f", b.display())))
    }

    pub fn isai(&self, b: &Value) -> Result<Vec<FaceVerdict>> {
        torus::isolated_singularities_over(&self.f, &self.data, &self.atypical, b, &self.options.settings)
    }

    pub fn certify_all(&self) -> Vec<Certificate> {
        self.kf.candidates.iter().map(|c| self.certify(c)).collect()
    }

    pub fn certify(&self, cand: &CandidateValue) -> Certificate {
        let mut cert = Certificate {
            value: cand.clone(),
            verdict: CertVerdict::CandidateOnly,
            theorem: None,
            reason: None,
            hypothesis_trace: Vec::new(),
            euler_jump: None,
            euler_jump_error: None,
        };
        if self.n() == 2 {
            match euler::euler_jump(&self.f, &cand.value, &self.kf.values(), self.options.settings.seed) {
                Ok(j) => cert.euler_jump = Some(j),
                Err(e) => cert.euler_jump_error = Some(e.to_string()),
            }
        }
        match cand.in_theorem_scope {
            Some(false) => {
                cert.reason = Some("theorem scope excludes f(Sing f) ∪ {f(0)}".into());
                return cert;
            }
            None => {
                cert.verdict = CertVerdict::Unknown;
                cert.reason = Some("too close to f(Sing f) ∪ {f(0)} to decide the theorem scope".into());
                return cert;
            }
            Some(true) => {}
        }
        let theorems = self.theorems(&cand.value);
        let mut first_unknown = None;
        for (name, checks) in theorems {
            let status = combine(checks.iter().map(|h| h.status));
            let done = cert.verdict == CertVerdict::Certified;
            if !done || self.options.full_trace {
                cert.hypothesis_trace.extend(checks);
            }
            if done {
                continue;
            }
            match status {
                Outcome::Pass => {
                    cert.verdict = CertVerdict::Certified;
                    cert.theorem = Some(name.to_string());
                    if !self.options.full_trace {
                        break;
                    }
                }
                Outcome::Unknown if first_unknown.is_none() => first_unknown = Some(name),
                _ => {}
            }
        }
        if cert.verdict != CertVerdict::Certified {
            if let Some(name) = first_unknown {
                cert.verdict = CertVerdict::Unknown;
                cert.theorem = Some(name.to_string());
                cert.reason = Some("some hypotheses could not be decided".into());
            } else {
                cert.reason = Some("no theorem applies".into());
            }
        }
        cert
    }

    fn face_facts(&self, b: &Value) -> Vec<FaceFacts<'_>> {
        let tol = self.options.settings.tolerances.cluster;
        let n = self.n();
        let mut out = Vec::new();
        for (c, fv) in self.atypical.iter().zip(&self.kf.faces) {
            let member = membership(fv.values.values.iter().map(|v| v.same(b, tol)));
            if member == Some(false) {
                continue;
            }
            let cap = &c.sigma_cap_orthant;
            out.push(FaceFacts {
                class: c,
                member,
                dim_sigma: c.sigma.dim,
                dim_cap: cap.dim,
                common: c.sigma.common_rays(cap),
                cap_is_face: cap.face_of_orthant().ok().flatten().is_some() || cap.dim == 0,
            });
            debug_assert_eq!(cap.ambient_dim, n);
        }
        out
    }

    fn theorems(&self, b: &Value) -> Vec<(&'static str, Vec<HypothesisCheck>)> {
        let n = self.n();
        let nd = self.nondegeneracy_outcome();
        let nd_evidence = match &self.nondegeneracy {
            Some(r) => r.overall.method.clone(),
            None => "check skipped; assumed by the caller".into(),
        };
        let isai = self.isai(b);
        let (isai_status, isai_evidence) = match &isai {
            Ok(v) => (
                combine(v.iter().map(|fv| fv.verdict.outcome)),
                v.iter().map(|fv| format!("{:?}: {:?}", fv.face, fv.verdict.outcome)).collect::<Vec<_>>().join("; "),
            ),
            Err(e) => (Outcome::Unknown, e.to_string()),
        };
        let facts = self.face_facts(b);
        let h = |theorem: &str, name: &str, tag: &str, status: Outcome, evidence: String| HypothesisCheck {
            theorem: theorem.into(),
            name: name.into(),
            quote_tag: tag.into(),
            status,
            evidence,
        };
        let dim_full = |t: &str| {
            h(t, "dim Γ_∞(f) = n", "full-dimension", outcome_of(self.data.polytope.dim == n as i64), format!("dim = {}", self.data.polytope.dim))
        };
        let nondeg = |t: &str| h(t, "f non-degenerate at infinity", "non-degenerate", nd, nd_evidence.clone());
        let isai_h = |t: &str| h(t, "isolated singularities at infinity over b", "isolated-singularities", isai_status, isai_evidence.clone());
        let n_is = |t: &str, k: usize| h(t, &format!("n = {k}"), "ambient-dimension", outcome_of(n == k), format!("n = {n}"));

        let mut out = Vec::new();

        let mut nz = vec![n_is("N-Z", 2)];
        if n == 2 {
            nz.push(nondeg("N-Z"));
        }
        out.push(("N-Z", nz));

        let mut mt2 = vec![n_is("MT-2", 3)];
        if n == 3 {
            mt2.extend([dim_full("MT-2"), nondeg("MT-2"), isai_h("MT-2")]);
        }
        out.push(("MT-2", mt2));

        let mt1 = vec![
            dim_full("MT-1"),
            nondeg("MT-1"),
            isai_h("MT-1"),
            forall(&facts, "MT-1", "σ_i ∩ R^n_+ = {0} for every i with b ∈ K_i", "sigma-cap-orthant-zero", |x| {
                let zero = x.dim_cap == 0;
                if zero != x.class.relint_in_open_orthant {
                    return Outcome::Unknown;
                }
                outcome_of(zero)
            }),
            exists(&facts, "MT-1", "some γ_i with b ∈ K_i is relatively simple", "relatively-simple", |x| x.class.relatively_simple),
        ];
        out.push(("MT-1", mt1));

        let mt3 = vec![
            dim_full("MT-3"),
            nondeg("MT-3"),
            isai_h("MT-3"),
            forall(&facts, "MT-3", "σ_i ∩ R^n_+ is a face of R^n_+ of dimension ≤ 2", "orthant-face-dim-le-2", |x| {
                outcome_of(x.cap_is_face && x.dim_cap <= 2)
            }),
            exists(&facts, "MT-3", "some relatively simple γ_i with b ∈ K_i has ≤ 1 common edge when dim σ_i ∩ R^n_+ = 2", "common-edges-le-1", |x| {
                x.class.relatively_simple && (x.dim_cap != 2 || x.common <= 1)
            }),
        ];
        out.push(("MT-3", mt3));

        let mut smt4 = vec![n_is("SMT-4", 4)];
        if n == 4 {
            smt4.push(isai_h("SMT-4"));
            smt4.push(forall(&facts, "SMT-4", "no common edge when dim σ_i = dim σ_i ∩ R^4_+ = 3", "no-common-edge", |x| {
                outcome_of(!(x.dim_sigma == 3 && x.dim_cap == 3) || x.common == 0)
            }));
            smt4.push(exists(&facts, "SMT-4", "some γ_i with b ∈ K_i has ≤ 1 common edge when dim σ_i = 3 and dim σ_i ∩ R^4_+ = 2", "common-edges-le-1", |x| {
                !(x.dim_sigma == 3 && x.dim_cap == 2) || x.common <= 1
            }));
        }
        out.push(("SMT-4", smt4));

        let mut smc5 = vec![n_is("SMC-5", 4)];
        if n == 4 {
            smc5.push(isai_h("SMC-5"));
            smc5.push(forall(&facts, "SMC-5", "dim σ_i ∩ R^4_+ ≤ 1 or dim σ_i ≤ 2 for every i with b ∈ K_i", "small-cones", |x| {
                outcome_of(x.dim_cap <= 1 || x.dim_sigma <= 2)
            }));
        }
        out.push(("SMC-5", smc5));
        out
    }
}

/// `Some(true)` if some comparison is decided equal, `Some(false)` if all are
/// decided different, `None` otherwise.
fn membership(items: impl IntoIterator<Item = Option<bool>>) -> Option<bool> {
    let mut out = Some(false);
    for x in items {
        match x {
            Some(true) => return Some(true),
            None => out = None,
            Some(false) => {}
        }
    }
    out
}

fn faces_label(facts: &[&FaceFacts]) -> String {
    if facts.is_empty() {
        return "no face".into();
    }
    facts.iter().map(|x| format!("{:?}", x.class.vertices)).collect::<Vec<_>>().join(", ")
}

fn forall(facts: &[FaceFacts], theorem: &str, name: &str, tag: &str, test: impl Fn(&FaceFacts) -> Outcome) -> HypothesisCheck {
    let failing: Vec<&FaceFacts> = facts.iter().filter(|x| test(x) != Outcome::Pass).collect();
    let status = combine(facts.iter().map(|x| match (x.member, test(x)) {
        (None, Outcome::Fail) => Outcome::Unknown,
        (_, o) => o,
    }));
    let all: Vec<&FaceFacts> = facts.iter().collect();
    let evidence = if failing.is_empty() {
        format!("holds on {}", faces_label(&all))
    } else {
        format!("violated or undecided on {}", faces_label(&failing))
    };
    HypothesisCheck { theorem: theorem.into(), name: name.into(), quote_tag: tag.into(), status, evidence }
}

fn exists(facts: &[FaceFacts], theorem: &str, name: &str, tag: &str, test: impl Fn(&FaceFacts) -> bool) -> HypothesisCheck {
    let good: Vec<&FaceFacts> = facts.iter().filter(|x| test(x)).collect();
    let status = if good.iter().any(|x| x.member == Some(true)) {
        Outcome::Pass
    } else if good.is_empty() {
        Outcome::Fail
    } else {
        Outcome::Unknown
    };
    let all: Vec<&FaceFacts> = facts.iter().collect();
    let evidence = if good.is_empty() { format!("fails on {}", faces_label(&all)) } else { format!("witnessed by {}", faces_label(&good)) };
    HypothesisCheck { theorem: theorem.into(), name: name.into(), quote_tag: tag.into(), status, evidence }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, rational, Mode};

    fn p(s: &str, n: usize) -> SparsePoly {
        parse_polynomial(s, n, Mode::Affine).unwrap()
    }

    #[test]
    fn case_a() {
        let a = Analysis::new(&p("x1 + x1*x2 + x1^2*x2^2", 2), Options::default()).unwrap();
        let vals: Vec<_> = a.kf.candidates.iter().map(|c| c.value.exact.clone().unwrap()).collect();
        assert_eq!(vals, vec![rational(-1, 4), rational(0, 1)]);
        let c = &a.kf.candidates[0];
        assert_eq!(c.origins, vec![Origin::Face { vertices: vec![vec![0, 0], vec![2, 2]], dim: 1 }]);
        assert_eq!(c.in_theorem_scope, Some(true));
        assert_eq!(a.kf.candidates[1].origins, vec![Origin::AffineCritical, Origin::ConstantTerm]);
        let cert = a.certify(c);
        assert_eq!(cert.verdict, CertVerdict::Certified);
        assert_eq!(cert.theorem.as_deref(), Some("N-Z"));
        assert_eq!(cert.euler_jump.as_ref().unwrap().jump, 1);
        assert!(cert.is_sound());
        let zero = a.certify(&a.kf.candidates[1]);
        assert_eq!(zero.verdict, CertVerdict::CandidateOnly);
        assert_eq!(zero.euler_jump.as_ref().unwrap().jump, 1);
    }

    #[test]
    fn case_a_full_trace_reaches_mt1() {
        let opts = Options { full_trace: true, ..Options::default() };
        let a = Analysis::new(&p("x1 + x1*x2 + x1^2*x2^2", 2), opts).unwrap();
        let cert = a.certify(&a.kf.candidates[0]);
        let mt1: Vec<_> = cert.hypothesis_trace.iter().filter(|h| h.theorem == "MT-1").collect();
        assert!(!mt1.is_empty());
        assert!(mt1.iter().all(|h| h.status == Outcome::Pass));
    }

    #[test]
    fn case_b() {
        let a = Analysis::new(&p("x1 + x1^2*x2", 2), Options::default()).unwrap();
        assert_eq!(a.kf.candidates.len(), 1);
        assert_eq!(a.kf.candidates[0].origins, vec![Origin::ConstantTerm]);
        assert!(a.kf.faces[0].values.values.is_empty());
    }

    #[test]
    fn cone_functions() {
        assert_eq!(e_function(&Cone::zero(2)).unwrap(), 1);
        assert_eq!(e_function(&Cone::from_rays(2, &[vec![1, -1]]).unwrap()).unwrap(), 0);
        assert_eq!(e_function(&Cone::from_rays(3, &[vec![1, 0, 0], vec![1, 1, 0]]).unwrap()).unwrap(), 1);
        let sigma = Cone::from_rays(3, &[vec![0, 0, 1], vec![0, 3, -2]]).unwrap();
        assert_eq!(common_edges_count(&sigma).unwrap(), 1);
        assert_eq!(common_edges_count(&Cone::from_rays(2, &[vec![1, -1]]).unwrap()).unwrap(), 0);
        let inside = Cone::from_rays(3, &[vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(common_edges_count(&inside).unwrap(), 3);
    }

    #[test]
    fn three_variables() {
        // x + x y z + (x y z)^2 has the atypical face [0, (2,2,2)] with K = {-1/4}.
        let a = Analysis::new(&p("x1 + x2 + x3 + x1*x2*x3 + x1^2*x2^2*x3^2", 3), Options::default()).unwrap();
        for c in a.certify_all() {
            assert!(c.is_sound());
        }
    }

    #[test]
    fn inclusion_statements() {
        assert_eq!(inclusion_report(Outcome::Pass, 2).statement.as_deref(), Some("B_f = K_f"));
        assert!(inclusion_report(Outcome::Fail, 3).statement.is_none());
    }
}
