//! Lattice polytopes with their full face lattice, and the dual fan.
//!
//! A hull of dimension `d < n` is handled in the coordinates selected by the
//! pivot columns of its difference vectors; that projection is injective on
//! the affine hull, so facets computed there lift back by zero padding.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::cone::{self, grlex_cmp, Cone};
use crate::error::{Error, Result};
use crate::lattice::{self, dot, sub, IntVec};

/// Index of a face inside its parent polytope's face list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FaceId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    /// Sorted indices into the parent's vertex list.
    pub vertex_indices: Vec<usize>,
    /// Affine dimension; −1 for the empty face.
    pub dim: i64,
    pub contains_origin: bool,
    /// Indices of the facets containing this face.
    #[serde(skip)]
    pub facets: Vec<usize>,
}

/// Inequality `⟨normal, x⟩ + offset ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub normal: IntVec,
    pub offset: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticePolytope {
    pub ambient_dim: usize,
    pub vertices: Vec<IntVec>,
    pub dim: i64,
    pub facets: Vec<Facet>,
    /// Equations `⟨normal, x⟩ = rhs` cutting out the affine hull.
    pub hull_equations: Vec<(IntVec, i64)>,
    /// All faces, graded by dimension (empty face first, the polytope last).
    pub faces: Vec<Face>,
    #[serde(skip)]
    index: BTreeMap<Vec<usize>, usize>,
}

impl LatticePolytope {
    pub fn convex_hull(points: &[IntVec]) -> Result<LatticePolytope> {
        let Some(first) = points.first() else {
            return Err(Error::Invalid("empty point set".into()));
        };
        let n = first.len();
        cone::guard_dim(n)?;
        if let Some(bad) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
        }
        let mut pts: Vec<IntVec> = points.to_vec();
        pts.sort_by(|a, b| grlex_cmp(a, b));
        pts.dedup();

        let p0 = pts[0].clone();
        let diffs: Vec<IntVec> = pts.iter().skip(1).map(|p| sub(p, &p0)).collect();
        let pivots = lattice::pivot_columns(&diffs, n);
        let d = pivots.len();

        let hull_equations: Vec<(IntVec, i64)> = lattice::nullspace(&diffs, n)?
            .into_iter()
            .map(|e| {
                let rhs = dot(&e, &p0);
                Ok((e, i64::try_from(rhs).map_err(|_| Error::Overflow)?))
            })
            .collect::<Result<_>>()?;

        if d == 0 {
            let vertices = vec![p0];
            return Ok(Self::assemble(n, vertices, 0, Vec::new(), hull_equations, vec![Vec::new(), vec![0]], &[]));
        }

        // Facets: extreme rays of {(c, a) : c + ⟨a, q⟩ ≥ 0 for all projected points q}.
        let rows: Vec<IntVec> = pts
            .iter()
            .map(|p| std::iter::once(1).chain(pivots.iter().map(|&i| p[i])).collect())
            .collect();
        let (rays, lin) = cone::generators(d + 1, &rows, &[])?;
        debug_assert!(lin.is_empty());
        let facets: Vec<Facet> = rays
            .into_iter()
            .map(|r| {
                let mut normal = vec![0i64; n];
                for (k, &i) in pivots.iter().enumerate() {
                    normal[i] = r[k + 1];
                }
                Facet { normal, offset: r[0] }
            })
            .collect();

        let tight = |p: &IntVec, f: &Facet| dot(&f.normal, p) + f.offset as i128 == 0;
        let point_facets: Vec<BTreeSet<usize>> =
            pts.iter().map(|p| (0..facets.len()).filter(|&j| tight(p, &facets[j])).collect()).collect();
        // A point is a vertex when no other point shares all of its facets.
        let vertex_pts: Vec<usize> = (0..pts.len())
            .filter(|&i| !(0..pts.len()).any(|j| j != i && point_facets[i].is_subset(&point_facets[j])))
            .collect();
        let vertices: Vec<IntVec> = vertex_pts.iter().map(|&i| pts[i].clone()).collect();

        let facet_sets: Vec<Vec<usize>> = (0..facets.len())
            .map(|f| (0..vertices.len()).filter(|&v| tight(&vertices[v], &facets[f])).collect())
            .collect();
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        all.insert((0..vertices.len()).collect());
        let mut frontier: Vec<Vec<usize>> = facet_sets.clone();
        while let Some(face) = frontier.pop() {
            if !all.insert(face.clone()) {
                continue;
            }
            for fs in &facet_sets {
                let meet: Vec<usize> = face.iter().copied().filter(|v| fs.contains(v)).collect();
                if !all.contains(&meet) {
                    frontier.push(meet);
                }
            }
        }
        all.insert(Vec::new());
        let face_sets: Vec<Vec<usize>> = all.into_iter().collect();
        Ok(Self::assemble(n, vertices, d as i64, facets, hull_equations, face_sets, &facet_sets))
    }

    fn assemble(
        n: usize,
        vertices: Vec<IntVec>,
        dim: i64,
        facets: Vec<Facet>,
        hull_equations: Vec<(IntVec, i64)>,
        face_sets: Vec<Vec<usize>>,
        facet_sets: &[Vec<usize>],
    ) -> LatticePolytope {
        let mut faces: Vec<Face> = face_sets
            .into_iter()
            .map(|vs| {
                let fdim = affine_dim(&vs.iter().map(|&i| vertices[i].clone()).collect::<Vec<_>>(), n);
                let contains_origin = vs.iter().any(|&i| lattice::is_zero(&vertices[i]));
                let fac = (0..facet_sets.len())
                    .filter(|&f| vs.iter().all(|v| facet_sets[f].contains(v)))
                    .collect();
                Face { vertex_indices: vs, dim: fdim, contains_origin, facets: fac }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertex_indices.cmp(&b.vertex_indices)));
        let index = faces.iter().enumerate().map(|(i, f)| (f.vertex_indices.clone(), i)).collect();
        LatticePolytope { ambient_dim: n, vertices, dim, facets, hull_equations, faces, index }
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id.0]
    }

    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> {
        (0..self.faces.len()).map(FaceId)
    }

    /// Looks up the face with exactly this vertex index set.
    pub fn face_by_vertices(&self, vertex_indices: &[usize]) -> Option<FaceId> {
        self.index.get(vertex_indices).map(|&i| FaceId(i))
    }

    pub fn whole(&self) -> FaceId {
        FaceId(self.faces.len() - 1)
    }

    pub fn vertex_index(&self, v: &[i64]) -> Option<usize> {
        self.vertices.iter().position(|w| w.as_slice() == v)
    }

    /// Face with vertices given as points; `None` when they do not form a face.
    pub fn face_by_points(&self, pts: &[IntVec]) -> Option<FaceId> {
        let mut idx: Vec<usize> = pts.iter().map(|p| self.vertex_index(p)).collect::<Option<_>>()?;
        idx.sort_unstable();
        idx.dedup();
        self.face_by_vertices(&idx)
    }

    pub fn face_vertices(&self, id: FaceId) -> Vec<IntVec> {
        self.face(id).vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    pub fn contains_point(&self, p: &[i64]) -> bool {
        p.len() == self.ambient_dim
            && self.hull_equations.iter().all(|(e, r)| dot(e, p) == *r as i128)
            && self.facets.iter().all(|f| dot(&f.normal, p) + f.offset as i128 >= 0)
    }

    /// Whether the lattice point `p` lies on the face.
    pub fn face_contains_point(&self, id: FaceId, p: &[i64]) -> bool {
        let face = self.face(id);
        if face.dim < 0 || !self.contains_point(p) {
            return false;
        }
        if self.dim == 0 {
            return true;
        }
        face.facets.iter().all(|&f| dot(&self.facets[f].normal, p) + self.facets[f].offset as i128 == 0)
    }

    /// The face on which `⟨u, ·⟩` attains its minimum.
    pub fn supporting_face(&self, u: &[i64]) -> FaceId {
        let vals: Vec<i128> = self.vertices.iter().map(|v| dot(u, v)).collect();
        let min = *vals.iter().min().expect("polytope has a vertex");
        let argmin: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] == min).collect();
        self.face_by_vertices(&argmin).expect("argmin set of a linear functional is a face")
    }

    /// Faces of `id` of codimension one inside it.
    pub fn facets_of_face(&self, id: FaceId) -> Vec<FaceId> {
        let face = self.face(id);
        self.face_ids()
            .filter(|&g| {
                let gf = self.face(g);
                gf.dim == face.dim - 1 && gf.dim >= 0 && gf.vertex_indices.iter().all(|v| face.vertex_indices.contains(v))
            })
            .collect()
    }

    /// Basis of the saturated lattice of the face's affine direction. For a
    /// face through the origin this is `L_γ ∩ Z^n`.
    pub fn lattice_basis_of_face_span(&self, id: FaceId) -> Result<Vec<IntVec>> {
        let face = self.face(id);
        if face.dim < 1 {
            return Err(Error::FaceTooSmall(face.dim));
        }
        let vs = self.face_vertices(id);
        let diffs: Vec<IntVec> = vs.iter().skip(1).map(|v| sub(v, &vs[0])).collect();
        lattice::saturated_basis(&diffs, self.ambient_dim)
    }

    pub fn normalized_volume(&self) -> Result<BigInt> {
        self.normalized_volume_of_face(self.whole())
    }

    /// `d!` times the lattice volume of a `d`-dimensional face, measured in
    /// the lattice of its own affine span.
    pub fn normalized_volume_of_face(&self, id: FaceId) -> Result<BigInt> {
        let face = self.face(id);
        if face.dim < 0 {
            return Ok(BigInt::from(0));
        }
        if face.dim == 0 {
            return Ok(BigInt::from(1));
        }
        let basis = self.lattice_basis_of_face_span(id)?;
        let mut total = BigInt::from(0);
        for simplex in self.triangulate(id) {
            let base = &self.vertices[simplex[0]];
            let rows: Vec<IntVec> = simplex[1..]
                .iter()
                .map(|&v| lattice::lattice_coordinates(&basis, &sub(&self.vertices[v], base)).ok_or(Error::Overflow))
                .collect::<Result<_>>()?;
            total += lattice::determinant(&rows).abs();
        }
        Ok(total)
    }

    /// Pulling triangulation from the smallest vertex, recursively over facets.
    pub fn triangulate(&self, id: FaceId) -> Vec<Vec<usize>> {
        let face = self.face(id);
        if face.dim <= 0 {
            return if face.dim == 0 { vec![face.vertex_indices.clone()] } else { Vec::new() };
        }
        let apex = face.vertex_indices[0];
        let mut out = Vec::new();
        for g in self.facets_of_face(id) {
            if self.face(g).vertex_indices.contains(&apex) {
                continue;
            }
            for mut s in self.triangulate(g) {
                s.insert(0, apex);
                out.push(s);
            }
        }
        out
    }

    /// The dual fan; requires a full-dimensional polytope.
    pub fn dual_fan(&self) -> Result<Fan> {
        let n = self.ambient_dim;
        if self.dim != n as i64 {
            return Err(Error::NotFullDimensional { dim: self.dim, n });
        }
        let mut cones = BTreeMap::new();
        for id in self.face_ids().filter(|&id| self.face(id).dim >= 0) {
            cones.insert(id, self.normal_cone(id)?);
        }
        Ok(Fan { ambient_dim: n, cones })
    }

    /// `σ(γ)`, the closure of the set of `u` whose supporting face is `γ`.
    pub fn normal_cone(&self, id: FaceId) -> Result<Cone> {
        let face = self.face(id);
        if face.dim < 0 {
            return Err(Error::Invalid("the empty face has no normal cone".into()));
        }
        let w0 = &self.vertices[face.vertex_indices[0]];
        let ineqs: Vec<IntVec> = self.vertices.iter().map(|v| sub(v, w0)).collect();
        let eqs: Vec<IntVec> = face.vertex_indices.iter().map(|&i| sub(&self.vertices[i], w0)).collect();
        Cone::from_constraints(self.ambient_dim, &ineqs, &eqs)
    }
}

fn affine_dim(pts: &[IntVec], n: usize) -> i64 {
    match pts.split_first() {
        None => -1,
        Some((p0, rest)) => lattice::rank(&rest.iter().map(|p| sub(p, p0)).collect::<Vec<_>>(), n) as i64,
    }
}

/// Cones `σ(γ)` keyed by face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fan {
    pub ambient_dim: usize,
    pub cones: BTreeMap<FaceId, Cone>,
}

impl Fan {
    pub fn cone(&self, id: FaceId) -> &Cone {
        &self.cones[&id]
    }

    /// Faces whose cone contains `u` in its relative interior.
    pub fn locate(&self, u: &[i64]) -> Vec<FaceId> {
        self.cones.iter().filter(|(_, c)| c.contains_relint(u)).map(|(&id, _)| id).collect()
    }
}

/// Normalized volume as a machine integer, for reporting.
pub fn volume_u64(v: &BigInt) -> Option<u64> {
    v.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp() -> LatticePolytope {
        LatticePolytope::convex_hull(&[vec![0, 0, 0], vec![2, 0, 0], vec![2, 2, 0], vec![2, 2, 3]]).unwrap()
    }

    fn count(p: &LatticePolytope, d: i64) -> usize {
        p.faces.iter().filter(|f| f.dim == d).count()
    }

    #[test]
    fn exp_tetrahedron_lattice() {
        let p = exp();
        assert_eq!(p.dim, 3);
        assert_eq!(p.vertices.len(), 4);
        assert_eq!((count(&p, 0), count(&p, 1), count(&p, 2), count(&p, 3)), (4, 6, 4, 1));
        assert_eq!(count(&p, -1), 1);
    }

    #[test]
    fn collinear_interior_point_dropped() {
        let p = LatticePolytope::convex_hull(&[vec![0, 0], vec![1, 0], vec![2, 0]]).unwrap();
        assert_eq!(p.dim, 1);
        assert_eq!(p.vertices, vec![vec![0, 0], vec![2, 0]]);
        assert!(p.contains_point(&[1, 0]));
        assert!(!p.contains_point(&[1, 1]));
    }

    #[test]
    fn singleton() {
        let p = LatticePolytope::convex_hull(&[vec![1, 1]]).unwrap();
        assert_eq!(p.dim, 0);
        assert_eq!(p.faces.len(), 2);
        assert_eq!(p.normalized_volume().unwrap(), BigInt::from(1));
    }

    #[test]
    fn supporting_faces_of_exp() {
        let p = exp();
        let f = p.supporting_face(&[1, -1, 0]);
        assert_eq!(p.face_vertices(f), vec![vec![0, 0, 0], vec![2, 2, 0], vec![2, 2, 3]]);
        assert_eq!(p.supporting_face(&[0, 0, 0]), p.whole());
        assert_eq!(p.face_vertices(p.supporting_face(&[1, 1, 1])), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn normal_cones_of_exp() {
        let p = exp();
        let fan = p.dual_fan().unwrap();
        let seg = p.face_by_points(&[vec![0, 0, 0], vec![2, 2, 0]]).unwrap();
        assert_eq!(fan.cone(seg).rays, vec![vec![1, -1, 0], vec![0, 0, 1]]);
        assert_eq!(fan.cone(seg).dim, 2);
        let tri = p.face_by_points(&[vec![0, 0, 0], vec![2, 0, 0], vec![2, 2, 0]]).unwrap();
        assert_eq!(fan.cone(tri).rays, vec![vec![0, 0, 1]]);
        assert_eq!(fan.cone(p.whole()).dim, 0);
    }

    #[test]
    fn volumes() {
        assert_eq!(exp().normalized_volume().unwrap(), BigInt::from(12));
        let simplex = LatticePolytope::convex_hull(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(simplex.normalized_volume().unwrap(), BigInt::from(1));
        let seg = LatticePolytope::convex_hull(&[vec![0, 0], vec![2, 2]]).unwrap();
        assert_eq!(seg.normalized_volume().unwrap(), BigInt::from(2));
        let cube = LatticePolytope::convex_hull(
            &[0, 1].iter().flat_map(|&a| [0, 1].iter().flat_map(move |&b| [0, 1].iter().map(move |&c| vec![a, b, c]))).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(cube.normalized_volume().unwrap(), BigInt::from(6));
    }

    #[test]
    fn face_span_bases() {
        let seg = LatticePolytope::convex_hull(&[vec![0, 0], vec![2, 2]]).unwrap();
        assert_eq!(seg.lattice_basis_of_face_span(seg.whole()).unwrap(), vec![vec![1, 1]]);
        let p = exp();
        let e = p.face_by_points(&[vec![0, 0, 0], vec![2, 0, 0]]).unwrap();
        assert_eq!(p.lattice_basis_of_face_span(e).unwrap(), vec![vec![1, 0, 0]]);
        let b = p.lattice_basis_of_face_span(p.whole()).unwrap();
        assert_eq!(lattice::determinant(&b).abs(), BigInt::from(1));
        let v = p.face_by_points(&[vec![0, 0, 0]]).unwrap();
        assert_eq!(p.lattice_basis_of_face_span(v), Err(Error::FaceTooSmall(0)));
    }

    #[test]
    fn lower_dimensional_fan_is_an_error() {
        let p = LatticePolytope::convex_hull(&[vec![0, 0], vec![1, 0], vec![2, 0]]).unwrap();
        assert!(matches!(p.dual_fan(), Err(Error::NotFullDimensional { dim: 1, n: 2 })));
    }
}
