//! Plain-text rendering of the reports.

use std::fmt::Write;

use newton_bif_core::certify::{CertVerdict, Certificate, InclusionReport, Origin};
use newton_bif_core::euler::{FiberTopology, JumpReport};
use newton_bif_core::report::{EulerSummary, FaceRow, FacesReport, FanReport, FullReport, Header, KfReport, PolyhedronReport};
use newton_bif_core::{CandidateValue, IntVec, KfAssembly, NondegeneracyReport, Outcome, Status, Value};

fn status(s: Status) -> &'static str {
    match s {
        Status::Exact => "exact",
        Status::Numeric => "numeric",
        Status::Heuristic => "heuristic",
    }
}

fn outcome(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Unknown => "unknown",
    }
}

fn points(v: &[IntVec]) -> String {
    let inner: Vec<String> = v.iter().map(|p| format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
    format!("[{}]", inner.join(", "))
}

fn value(v: &Value) -> String {
    let mut s = v.display();
    if v.exact.is_none() {
        if let Some(p) = &v.polynomial {
            write!(s, " (root of {})", p.primitive()).unwrap();
        }
    }
    write!(s, " [{}]", status(v.status)).unwrap();
    s
}

fn header(out: &mut String, h: &Header) {
    writeln!(out, "f = {}  (n = {}, seed {})", h.polynomial, h.nvars, h.seed).unwrap();
}

fn polyhedron(out: &mut String, p: &PolyhedronReport) {
    writeln!(
        out,
        "Newton polyhedron at infinity: dim {}, {} vertices, normalized volume {} [{}]",
        p.dim,
        p.vertices.len(),
        p.normalized_volume.value,
        status(p.normalized_volume.status)
    )
    .unwrap();
    writeln!(out, "  vertices: {}", points(&p.vertices)).unwrap();
    writeln!(out, "  convenient: {}", if p.convenient { "yes" } else { "no" }).unwrap();
}

fn face_rows(out: &mut String, rows: &[FaceRow]) {
    if rows.is_empty() {
        writeln!(out, "Atypical faces: none").unwrap();
        return;
    }
    writeln!(out, "Atypical faces:").unwrap();
    for r in rows {
        writeln!(out, "  {}  dim {}", points(&r.vertices), r.dim).unwrap();
        writeln!(out, "    σ rays {}  dim σ {}", points(&r.sigma_rays), r.sigma_dim).unwrap();
        writeln!(out, "    σ ∩ R^n_+ rays {}  dim {}", points(&r.sigma_cap_orthant_rays), r.sigma_cap_orthant_dim).unwrap();
        writeln!(
            out,
            "    relatively simple: {}  relint in open orthant: {}  e = {}  common edges = {}",
            r.relatively_simple, r.relint_in_open_orthant, r.e.value, r.common_edges.value
        )
        .unwrap();
        match &r.bad_partner {
            Some(d) => writeln!(out, "    bad face {}", points(d)).unwrap(),
            None => writeln!(out, "    no bad face of the same dimension").unwrap(),
        }
    }
}

pub fn faces(r: &FacesReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.header);
    polyhedron(&mut out, &r.polyhedron);
    face_rows(&mut out, &r.atypical_faces);
    out
}

pub fn fan(r: &FanReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.header);
    writeln!(out, "Dual fan ({} cones):", r.cones.len()).unwrap();
    for c in &r.cones {
        write!(out, "  face {} dim {}: rays {} dim {}", points(&c.face), c.face_dim, points(&c.rays), c.dim).unwrap();
        if !c.lineality.is_empty() {
            write!(out, " lineality {}", points(&c.lineality)).unwrap();
        }
        out.push('\n');
    }
    out
}

fn nondegeneracy(out: &mut String, r: &Option<NondegeneracyReport>) {
    let Some(r) = r else {
        writeln!(out, "Non-degeneracy at infinity: assumed (check skipped)").unwrap();
        return;
    };
    writeln!(out, "Non-degeneracy at infinity: {} ({})", outcome(r.overall.outcome), r.overall.method).unwrap();
    for fv in r.faces.iter().filter(|fv| fv.verdict.outcome != Outcome::Pass) {
        writeln!(out, "  face {}: {} ({})", points(&fv.face), outcome(fv.verdict.outcome), fv.verdict.method).unwrap();
    }
    for w in &r.overall.witnesses {
        writeln!(out, "  witness: {}", w.description).unwrap();
        if let Some(p) = &w.point {
            writeln!(out, "  witness point: ({}){}", p.join(", "), if w.verified { ", verified exactly" } else { "" }).unwrap();
        }
    }
}

fn origin(o: &Origin) -> String {
    match o {
        Origin::AffineCritical => "affine-critical".into(),
        Origin::ConstantTerm => "f(0)".into(),
        Origin::Face { vertices, .. } => format!("face {}", points(vertices)),
    }
}

fn candidate(c: &CandidateValue) -> String {
    let scope = match c.in_theorem_scope {
        Some(true) => "in scope",
        Some(false) => "out of scope",
        None => "scope undecided",
    };
    format!("{}  origins: {}  {}", value(&c.value), c.origins.iter().map(origin).collect::<Vec<_>>().join(", "), scope)
}

fn kf_block(out: &mut String, kf: &KfAssembly) {
    writeln!(out, "K_f ({}):", status(kf.status)).unwrap();
    for c in &kf.candidates {
        writeln!(out, "  {}", candidate(c)).unwrap();
    }
}

pub fn kf(r: &KfReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.header);
    nondegeneracy(&mut out, &r.nondegeneracy);
    kf_block(&mut out, &r.kf);
    out
}

fn verdict(v: CertVerdict) -> &'static str {
    match v {
        CertVerdict::Certified => "certified-in-B_f",
        CertVerdict::CandidateOnly => "candidate-only",
        CertVerdict::Unknown => "unknown",
    }
}

fn certificate(out: &mut String, c: &Certificate) {
    write!(out, "  {}: {}", c.value.value.display(), verdict(c.verdict)).unwrap();
    if let Some(t) = &c.theorem {
        write!(out, " by Theorem {t}").unwrap();
    }
    if let Some(r) = &c.reason {
        write!(out, " ({r})").unwrap();
    }
    out.push('\n');
    for h in &c.hypothesis_trace {
        writeln!(out, "    [{}] {}: {} ({})", outcome(h.status), h.theorem, h.name, h.evidence).unwrap();
    }
    if let Some(j) = &c.euler_jump {
        writeln!(out, "    Euler jump {} (χ = {} at the value, {} at {})", j.jump, j.chi_at_value, j.chi_nearby, j.nearby).unwrap();
    }
    if let Some(e) = &c.euler_jump_error {
        writeln!(out, "    Euler jump not computed: {e}").unwrap();
    }
}

fn inclusion(out: &mut String, i: &InclusionReport) {
    if let Some(s) = &i.statement {
        writeln!(out, "Inclusion: {s}").unwrap();
    }
    if let Some(w) = &i.warning {
        writeln!(out, "Warning: {w}").unwrap();
    }
}

fn euler_block(out: &mut String, e: &EulerSummary) {
    writeln!(out, "Euler characteristics: generic χ = {} (at {})", e.generic_chi.value, e.generic_value).unwrap();
    let width = e.rows.iter().map(|r| r.value.len()).max().unwrap_or(5).max(5);
    writeln!(out, "  {:<width$}  {:>4}  {:>4}", "value", "chi", "jump").unwrap();
    for r in &e.rows {
        let jump = r.jump.as_ref().map_or("-".to_string(), |j| j.value.to_string());
        writeln!(out, "  {:<width$}  {:>4}  {:>4}", r.value, r.chi.value, jump).unwrap();
    }
}

pub fn full(r: &FullReport) -> String {
    let mut out = String::new();
    header(&mut out, &r.header);
    polyhedron(&mut out, &r.polyhedron);
    face_rows(&mut out, &r.atypical_faces);
    nondegeneracy(&mut out, &r.nondegeneracy);
    kf_block(&mut out, &r.kf);
    inclusion(&mut out, &r.inclusion);
    writeln!(out, "Certificates:").unwrap();
    for c in &r.certificates {
        certificate(&mut out, c);
    }
    if let Some(e) = &r.euler {
        euler_block(&mut out, e);
    }
    out
}

pub fn certificate_report(h: &Header, i: &InclusionReport, c: &Certificate) -> String {
    let mut out = String::new();
    header(&mut out, h);
    inclusion(&mut out, i);
    writeln!(out, "{}", candidate(&c.value)).unwrap();
    certificate(&mut out, c);
    out
}

pub fn chi(h: &Header, t: &FiberTopology) -> String {
    let mut out = String::new();
    header(&mut out, h);
    writeln!(out, "χ(f⁻¹({})) = {}", t.value.display(), t.chi).unwrap();
    writeln!(out, "  generic number of points over the first coordinate: {}", t.generic_root_count).unwrap();
    writeln!(out, "  vertical lines: {}", t.vertical_lines.len()).unwrap();
    for v in &t.vertical_lines {
        writeln!(out, "    x1 = {}", value(v)).unwrap();
    }
    writeln!(out, "  exceptional points: {}", t.exceptional_points.len()).unwrap();
    for p in &t.exceptional_points {
        writeln!(out, "    x1 = {}: {} points", value(&p.x), p.distinct_roots).unwrap();
    }
    out
}

pub fn jump(h: &Header, j: &JumpReport) -> String {
    let mut out = String::new();
    header(&mut out, h);
    writeln!(out, "E_f({}) = {}", j.value.display(), j.jump).unwrap();
    writeln!(out, "  χ at the value: {}", j.chi_at_value).unwrap();
    writeln!(out, "  χ at {}: {}", j.nearby, j.chi_nearby).unwrap();
    out
}
