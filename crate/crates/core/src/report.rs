//! Serializable reports for the whole pipeline and its stages.

use serde::Serialize;

use crate::certify::{common_edges_count, e_function, Analysis, Certificate, InclusionReport, KfAssembly};
use crate::error::Result;
use crate::euler;
use crate::lattice::IntVec;
use crate::newton::{is_convenient, BadFacePair, NewtonData};
use crate::poly::SparsePoly;
use crate::torus::NondegeneracyReport;
use crate::value::{Settings, Status, Tolerances};

pub const SCHEMA_VERSION: u32 = 1;

/// A computed number with its certification status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tagged<T> {
    pub value: T,
    pub status: Status,
}

impl<T> Tagged<T> {
    pub fn exact(value: T) -> Self {
        Tagged { value, status: Status::Exact }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Header {
    pub schema_version: u32,
    pub polynomial: String,
    pub nvars: usize,
    pub seed: u64,
    pub tolerances: TolerancesReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TolerancesReport {
    pub root: String,
    pub residual: String,
    pub cluster: String,
}

impl From<&Tolerances> for TolerancesReport {
    fn from(t: &Tolerances) -> Self {
        TolerancesReport { root: format!("{:e}", t.root), residual: format!("{:e}", t.residual), cluster: format!("{:e}", t.cluster) }
    }
}

pub fn header(f: &SparsePoly, settings: &Settings) -> Header {
    Header {
        schema_version: SCHEMA_VERSION,
        polynomial: f.to_string(),
        nvars: f.nvars(),
        seed: settings.seed,
        tolerances: (&settings.tolerances).into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyhedronReport {
    pub vertices: Vec<IntVec>,
    pub dim: i64,
    pub facets: Vec<FacetRow>,
    pub normalized_volume: Tagged<String>,
    pub convenient: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetRow {
    pub normal: IntVec,
    pub offset: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceRow {
    pub vertices: Vec<IntVec>,
    pub dim: i64,
    pub sigma_rays: Vec<IntVec>,
    pub sigma_dim: usize,
    pub sigma_cap_orthant_rays: Vec<IntVec>,
    pub sigma_cap_orthant_dim: usize,
    pub relatively_simple: bool,
    pub relint_in_open_orthant: bool,
    pub e: Tagged<u8>,
    pub common_edges: Tagged<usize>,
    pub bad_partner: Option<Vec<IntVec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacesReport {
    #[serde(flatten)]
    pub header: Header,
    pub polyhedron: PolyhedronReport,
    pub atypical_faces: Vec<FaceRow>,
    pub bad_faces: Vec<BadFacePair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConeRow {
    pub face: Vec<IntVec>,
    pub face_dim: i64,
    pub rays: Vec<IntVec>,
    pub lineality: Vec<IntVec>,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanReport {
    #[serde(flatten)]
    pub header: Header,
    pub cones: Vec<ConeRow>,
}

pub fn polyhedron_report(f: &SparsePoly, data: &NewtonData) -> Result<PolyhedronReport> {
    let p = &data.polytope;
    Ok(PolyhedronReport {
        vertices: p.vertices.clone(),
        dim: p.dim,
        facets: p.facets.iter().map(|f| FacetRow { normal: f.normal.clone(), offset: f.offset }).collect(),
        normalized_volume: Tagged::exact(p.normalized_volume()?.to_string()),
        convenient: is_convenient(f)?,
    })
}

pub fn face_rows(data: &NewtonData) -> Result<Vec<FaceRow>> {
    let mut rows = Vec::new();
    for c in data.atypical_faces()? {
        rows.push(FaceRow {
            e: Tagged::exact(e_function(&c.sigma)?),
            common_edges: Tagged::exact(common_edges_count(&c.sigma)?),
            vertices: c.vertices.clone(),
            dim: c.dim,
            sigma_rays: c.sigma.rays.clone(),
            sigma_dim: c.sigma.dim,
            sigma_cap_orthant_rays: c.sigma_cap_orthant.rays.clone(),
            sigma_cap_orthant_dim: c.sigma_cap_orthant.dim,
            relatively_simple: c.relatively_simple,
            relint_in_open_orthant: c.relint_in_open_orthant,
            bad_partner: c.bad_partner.clone(),
        });
    }
    Ok(rows)
}

pub fn faces_report(f: &SparsePoly, settings: &Settings) -> Result<FacesReport> {
    let data = NewtonData::new(f)?;
    Ok(FacesReport {
        header: header(f, settings),
        polyhedron: polyhedron_report(f, &data)?,
        atypical_faces: face_rows(&data)?,
        bad_faces: if f.minus_constant(&f.constant_term()).is_zero() { Vec::new() } else { crate::newton::bad_faces(f)? },
    })
}

pub fn fan_report(f: &SparsePoly, settings: &Settings) -> Result<FanReport> {
    let data = NewtonData::new(f)?;
    let p = &data.polytope;
    let mut cones = Vec::new();
    for id in p.face_ids() {
        let face = p.face(id);
        if face.dim < 0 {
            continue;
        }
        let c = data.fan.cone(id);
        cones.push(ConeRow { face: p.face_vertices(id), face_dim: face.dim, rays: c.rays.clone(), lineality: c.lineality.clone(), dim: c.dim });
    }
    Ok(FanReport { header: header(f, settings), cones })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiRow {
    pub value: String,
    pub chi: Tagged<i64>,
    pub jump: Option<Tagged<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerSummary {
    pub generic_value: String,
    pub generic_chi: Tagged<i64>,
    pub rows: Vec<ChiRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KfReport {
    #[serde(flatten)]
    pub header: Header,
    pub nondegeneracy: Option<NondegeneracyReport>,
    pub kf: KfAssembly,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FullReport {
    #[serde(flatten)]
    pub header: Header,
    pub polyhedron: PolyhedronReport,
    pub atypical_faces: Vec<FaceRow>,
    pub bad_faces: Vec<BadFacePair>,
    pub nondegeneracy: Option<NondegeneracyReport>,
    pub kf: KfAssembly,
    pub inclusion: InclusionReport,
    pub certificates: Vec<Certificate>,
    pub euler: Option<EulerSummary>,
}

pub fn kf_report(a: &Analysis) -> KfReport {
    KfReport { header: header(&a.f, &a.options.settings), nondegeneracy: a.nondegeneracy.clone(), kf: a.kf.clone() }
}

/// Euler characteristics at a generic value and at every candidate, for two variables.
pub fn euler_summary(a: &Analysis, certificates: &[Certificate]) -> Result<Option<EulerSummary>> {
    if a.n() != 2 {
        return Ok(None);
    }
    let k = a.kf.values();
    let generic = euler::pick_generic_value(&k, a.options.settings.seed);
    let generic_chi = euler::chi_rational(&a.f, &generic)?;
    let mut rows = Vec::new();
    for c in certificates {
        let chi = euler::chi_affine_curve_fiber(&a.f, &c.value.value).ok().map(|t| t.chi);
        if let Some(chi) = chi {
            rows.push(ChiRow {
                value: c.value.value.display(),
                chi: Tagged::exact(chi),
                jump: c.euler_jump.as_ref().map(|j| Tagged::exact(j.jump)),
            });
        }
    }
    Ok(Some(EulerSummary { generic_value: generic.to_string(), generic_chi: Tagged::exact(generic_chi), rows }))
}

pub fn full_report(a: &Analysis) -> Result<FullReport> {
    let certificates = a.certify_all();
    let euler = euler_summary(a, &certificates)?;
    Ok(FullReport {
        header: header(&a.f, &a.options.settings),
        polyhedron: polyhedron_report(&a.f, &a.data)?,
        atypical_faces: face_rows(&a.data)?,
        bad_faces: crate::newton::bad_faces(&a.f).unwrap_or_default(),
        nondegeneracy: a.nondegeneracy.clone(),
        kf: a.kf.clone(),
        inclusion: a.inclusion(),
        certificates,
        euler,
    })
}
