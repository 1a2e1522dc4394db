//! Newton polyhedron at infinity and classification of its faces.

use serde::Serialize;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::IntVec;
use crate::poly::SparsePoly;
use crate::polytope::{Fan, FaceId, LatticePolytope};

/// `Γ_∞(f)`: the hull of the support together with the origin.
pub fn newton_polyhedron_at_infinity(f: &SparsePoly) -> Result<LatticePolytope> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut pts = f.support();
    pts.push(vec![0; f.nvars()]);
    LatticePolytope::convex_hull(&pts)
}

/// `NP(f)`: the hull of the support.
pub fn newton_polytope(f: &SparsePoly) -> Result<LatticePolytope> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    LatticePolytope::convex_hull(&f.support())
}

/// Every coordinate axis carries a support point `k·e_i` with `k > 0`.
pub fn is_convenient(f: &SparsePoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    Ok((0..n).all(|i| f.support().iter().any(|e| e[i] > 0 && (0..n).all(|j| j == i || e[j] == 0))))
}

pub fn check_dim_full(f: &SparsePoly) -> bool {
    newton_polyhedron_at_infinity(f).is_ok_and(|p| p.dim == f.nvars() as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceClassification {
    pub face: FaceId,
    pub vertices: Vec<IntVec>,
    pub dim: i64,
    pub contains_origin: bool,
    pub sigma: Cone,
    pub atypical: bool,
    /// Vertices of `γ ∩ NP(f − f(0))` when its dimension equals `dim γ`.
    pub bad_partner: Option<Vec<IntVec>>,
    pub relatively_simple: bool,
    pub sigma_cap_orthant: Cone,
    /// Every point of the relative interior has all coordinates positive.
    pub relint_in_open_orthant: bool,
}

impl FaceClassification {
    pub fn dim_sigma_cap_orthant(&self) -> usize {
        self.sigma_cap_orthant.dim
    }
}

/// Simplicial, or of dimension at most three.
pub fn cone_is_relatively_simple(sigma: &Cone) -> bool {
    sigma.dim <= 3 || sigma.is_simplicial().unwrap_or(false)
}

pub fn is_relatively_simple(c: &FaceClassification) -> bool {
    cone_is_relatively_simple(&c.sigma)
}

/// The Newton data of `f` needed by the classification.
#[derive(Debug, Clone)]
pub struct NewtonData {
    pub polytope: LatticePolytope,
    pub fan: Fan,
    /// `NP(f − f(0))`, absent when `f` is constant.
    pub np_nonconstant: Option<LatticePolytope>,
}

impl NewtonData {
    pub fn new(f: &SparsePoly) -> Result<NewtonData> {
        let polytope = newton_polyhedron_at_infinity(f)?;
        let fan = polytope.dual_fan()?;
        let g = f.minus_constant(&f.constant_term());
        let np_nonconstant = if g.is_zero() { None } else { Some(newton_polytope(&g)?) };
        Ok(NewtonData { polytope, fan, np_nonconstant })
    }

    /// Vertices of `γ ∩ NP(f − f(0))` for a face through the origin.
    pub fn trace_on_np(&self, id: FaceId) -> Option<Vec<IntVec>> {
        let np = self.np_nonconstant.as_ref()?;
        let sigma = self.fan.cone(id);
        let n = self.polytope.ambient_dim;
        let mut u = vec![0i64; n];
        for r in &sigma.rays {
            for k in 0..n {
                u[k] += r[k];
            }
        }
        let vals: Vec<i128> = np.vertices.iter().map(|v| crate::lattice::dot(&u, v)).collect();
        let min = *vals.iter().min()?;
        if min != 0 {
            return Some(Vec::new());
        }
        Some(np.face_vertices(np.supporting_face(&u)))
    }

    pub fn classify(&self, id: FaceId) -> Result<FaceClassification> {
        let p = &self.polytope;
        let face = p.face(id);
        let sigma = self.fan.cone(id).clone();
        let n = p.ambient_dim;
        let sigma_cap_orthant = sigma.intersect(&Cone::orthant(n))?;
        let vertices = p.face_vertices(id);
        let atypical = face.contains_origin && face.dim >= 1 && !sigma.is_in_orthant();
        let bad_partner = if atypical {
            self.trace_on_np(id).filter(|d| !d.is_empty() && affine_dim(d, n) == face.dim)
        } else {
            None
        };
        let relint_in_open_orthant = (0..n).all(|j| vertices.iter().any(|v| v[j] > 0));
        Ok(FaceClassification {
            face: id,
            dim: face.dim,
            contains_origin: face.contains_origin,
            relatively_simple: cone_is_relatively_simple(&sigma),
            sigma,
            atypical,
            bad_partner,
            sigma_cap_orthant,
            relint_in_open_orthant,
            vertices,
        })
    }

    /// Classification records for every nonempty face through the origin.
    pub fn origin_faces(&self) -> Result<Vec<FaceClassification>> {
        self.polytope
            .face_ids()
            .filter(|&id| self.polytope.face(id).contains_origin)
            .map(|id| self.classify(id))
            .collect()
    }

    pub fn atypical_faces(&self) -> Result<Vec<FaceClassification>> {
        Ok(self.origin_faces()?.into_iter().filter(|c| c.atypical).collect())
    }
}

fn affine_dim(pts: &[IntVec], n: usize) -> i64 {
    match pts.split_first() {
        None => -1,
        Some((p0, rest)) => {
            crate::lattice::rank(&rest.iter().map(|p| crate::lattice::sub(p, p0)).collect::<Vec<_>>(), n) as i64
        }
    }
}

pub fn atypical_faces(f: &SparsePoly) -> Result<Vec<FaceClassification>> {
    NewtonData::new(f)?.atypical_faces()
}

/// An atypical face with its trace on `NP(f − f(0))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadFacePair {
    pub gamma: Vec<IntVec>,
    pub gamma_dim: i64,
    /// Vertices of `Δ = γ ∩ NP(f − f(0))`.
    pub delta: Vec<IntVec>,
    pub delta_dim: i64,
    /// Whether `dim Δ = dim γ`, so that `Δ` is the bad face paired with `γ`.
    pub paired: bool,
}

pub fn bad_faces(f: &SparsePoly) -> Result<Vec<BadFacePair>> {
    let data = NewtonData::new(f)?;
    if data.np_nonconstant.is_none() {
        return Err(Error::ZeroPolynomial);
    }
    let n = f.nvars();
    let mut out = Vec::new();
    for c in data.atypical_faces()? {
        let delta = data.trace_on_np(c.face).unwrap_or_default();
        let delta_dim = affine_dim(&delta, n);
        out.push(BadFacePair { gamma: c.vertices.clone(), gamma_dim: c.dim, paired: delta_dim == c.dim, delta, delta_dim });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Mode};

    fn p(s: &str, n: usize) -> SparsePoly {
        parse_polynomial(s, n, Mode::Affine).unwrap()
    }

    #[test]
    fn polyhedra() {
        let exp = newton_polyhedron_at_infinity(&p("x1^2 + x1^2*x2^2 + x1^2*x2^2*x3^3", 3)).unwrap();
        assert_eq!(exp.vertices.len(), 4);
        let tri = newton_polyhedron_at_infinity(&p("x1 + x1^2*x2", 2)).unwrap();
        assert_eq!(tri.vertices, vec![vec![0, 0], vec![1, 0], vec![2, 1]]);
        let pt = newton_polyhedron_at_infinity(&p("5", 2)).unwrap();
        assert_eq!(pt.dim, 0);
        assert!(matches!(newton_polyhedron_at_infinity(&p("0", 2)), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn convenience() {
        assert!(is_convenient(&p("x1 + x2", 2)).unwrap());
        assert!(!is_convenient(&p("x1 + x1^2*x2", 2)).unwrap());
        assert!(is_convenient(&p("x1^3 + x2^3 + x1*x2", 2)).unwrap());
    }

    #[test]
    fn full_dimension() {
        assert!(check_dim_full(&p("x1^2 + x1^2*x2^2 + x1^2*x2^2*x3^3", 3)));
        assert!(!check_dim_full(&p("x1 + x1^2", 2)));
        assert!(check_dim_full(&p("x1 + x2", 2)));
    }

    #[test]
    fn exp_atypical_faces() {
        let f = p("x1^2 + x1^2*x2^2 + x1^2*x2^2*x3^3", 3);
        let faces = atypical_faces(&f).unwrap();
        let has = |vs: &[IntVec]| faces.iter().any(|c| c.vertices == vs);
        assert!(has(&[vec![0, 0, 0], vec![2, 2, 0]]));
        assert!(has(&[vec![0, 0, 0], vec![2, 0, 0]]));
        assert!(!has(&[vec![0, 0, 0], vec![2, 0, 0], vec![2, 2, 0]]));
        let seg = faces.iter().find(|c| c.vertices == [vec![0, 0, 0], vec![2, 0, 0]]).unwrap();
        assert_eq!(seg.dim_sigma_cap_orthant(), 2);
        for c in &faces {
            assert!(c.sigma.rays.iter().any(|r| r.iter().any(|&x| x < 0)));
        }
    }

    #[test]
    fn triangle_atypical_face() {
        let faces = atypical_faces(&p("x1 + x1^2*x2", 2)).unwrap();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].vertices, vec![vec![0, 0], vec![2, 1]]);
        assert_eq!(faces[0].sigma.rays, vec![vec![1, -2]]);
        assert!(atypical_faces(&p("x1^2 + x2^3 + x1*x2", 2)).unwrap().is_empty());
    }

    #[test]
    fn bad_face_pairs() {
        let pairs = bad_faces(&p("x1 + x1*x2 + x1^2*x2^2", 2)).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(pairs[0].paired);
        assert_eq!(pairs[0].delta, vec![vec![1, 1], vec![2, 2]]);
        let pairs = bad_faces(&p("x1 + x1^2*x2", 2)).unwrap();
        assert_eq!(pairs[0].delta, vec![vec![2, 1]]);
        assert!(!pairs[0].paired);
        assert!(bad_faces(&p("x1 + x2 + x1*x2", 2)).unwrap().is_empty());
    }

    #[test]
    fn relative_simplicity() {
        assert!(cone_is_relatively_simple(&Cone::from_rays(2, &[vec![1, -1]]).unwrap()));
        let simplicial4 = Cone::from_rays(4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]).unwrap();
        assert!(cone_is_relatively_simple(&simplicial4));
        let octa: Vec<IntVec> = (0..3)
            .flat_map(|i| {
                [1i64, -1].into_iter().map(move |s| {
                    let mut v = vec![0, 0, 0, 1];
                    v[i] = s;
                    v
                })
            })
            .collect();
        let cone = Cone::from_rays(4, &octa).unwrap();
        assert_eq!((cone.rays.len(), cone.dim), (6, 4));
        assert!(!cone_is_relatively_simple(&cone));
    }
}
