//! Rational polyhedral cones with both generator and inequality descriptions.
//!
//! Conversion in either direction goes through one double description
//! routine ([`generators`]): given `{u : A u ≥ 0, E u = 0}` it returns the
//! extreme rays and a lineality basis. Applied to rays and lineality of a
//! cone it yields the facet normals and the equations, since those are the
//! generators of the dual cone.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{self, dot, is_zero, primitive, primitive_oriented, IntVec};

/// Bound on the number of intermediate rays in one conversion.
pub const MAX_DD_RAYS: usize = 4096;
/// Ambient dimension guard shared by the polyhedral code.
pub const MAX_AMBIENT_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cone {
    pub ambient_dim: usize,
    /// Extreme rays of the pointed part, primitive.
    pub rays: Vec<IntVec>,
    /// Basis of the lineality space, primitive with positive leading entry.
    pub lineality: Vec<IntVec>,
    /// Facet normals `a` with `⟨a, u⟩ ≥ 0`, irredundant.
    pub halfspaces: Vec<IntVec>,
    /// Normals `e` with `⟨e, u⟩ = 0` spanning the orthogonal complement of the cone's span.
    pub equations: Vec<IntVec>,
    pub dim: usize,
}

/// Graded lexicographic order on integer vectors: by the sum of entries, then
/// lexicographically.
pub fn grlex_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let sa: i64 = a.iter().sum();
    let sb: i64 = b.iter().sum();
    sa.cmp(&sb).then_with(|| a.cmp(b))
}

fn sorted(mut v: Vec<IntVec>) -> Vec<IntVec> {
    v.sort_by(|a, b| grlex_cmp(a, b));
    v.dedup();
    v
}

struct Ray {
    v: IntVec,
    zeros: Vec<usize>,
}

fn combine(p: &[i64], q: &[i64], ap: i128, aq: i128) -> Result<IntVec> {
    // ap > 0 > aq; ap·q − aq·p lies on the hyperplane.
    let w: Vec<i128> = p.iter().zip(q).map(|(&x, &y)| ap * y as i128 - aq * x as i128).collect();
    let g = w.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
    let g = if g == 0 { 1 } else { g };
    w.iter().map(|x| i64::try_from(x / g).map_err(|_| Error::Overflow)).collect()
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Double description on a pointed cone `{t : rows·t ≥ 0}` in `Q^k` whose
/// constraint matrix has rank `k`.
fn dd_pointed(rows: &[IntVec], k: usize) -> Result<Vec<IntVec>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    // Greedy choice of k independent rows for the initial simplicial cone.
    let mut basis_idx = Vec::new();
    let mut chosen: Vec<IntVec> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        chosen.push(r.clone());
        if lattice::rank(&chosen, k) == chosen.len() {
            basis_idx.push(i);
        } else {
            chosen.pop();
        }
        if basis_idx.len() == k {
            break;
        }
    }
    if basis_idx.len() < k {
        return Err(Error::Invalid("constraint matrix is rank deficient".into()));
    }
    let mut order: Vec<usize> = basis_idx.clone();
    order.extend((0..rows.len()).filter(|i| !basis_idx.contains(i)));
    let processed_rows: Vec<IntVec> = order.iter().map(|&i| rows[i].clone()).collect();

    // Initial rays: ray j is tight on every basis row except j.
    let mut rays: Vec<Ray> = Vec::with_capacity(k);
    for j in 0..k {
        let others: Vec<IntVec> = (0..k).filter(|&i| i != j).map(|i| processed_rows[i].clone()).collect();
        let ns = lattice::nullspace(&others, k)?;
        debug_assert_eq!(ns.len(), 1);
        let mut v = ns.into_iter().next().ok_or(Error::Invalid("degenerate basis".into()))?;
        if dot(&processed_rows[j], &v) < 0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
        let zeros = (0..k).filter(|&i| i != j).collect();
        rays.push(Ray { v, zeros });
    }

    for (idx, a) in processed_rows.iter().enumerate().skip(k) {
        let vals: Vec<i128> = rays.iter().map(|r| dot(a, &r.v)).collect();
        if vals.iter().all(|&s| s >= 0) {
            for (r, &s) in rays.iter_mut().zip(&vals) {
                if s == 0 {
                    r.zeros.push(idx);
                }
            }
            continue;
        }
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common = intersect_sorted(&rays[p].zeros, &rays[q].zeros);
                if common.len() + 2 < k {
                    continue;
                }
                let tight: Vec<IntVec> = common.iter().map(|&i| processed_rows[i].clone()).collect();
                if lattice::rank(&tight, k) != k - 2 {
                    continue;
                }
                let v = combine(&rays[p].v, &rays[q].v, vals[p], vals[q])?;
                let mut zeros = common;
                zeros.push(idx);
                next.push(Ray { v, zeros });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i] > 0 {
                kept.push(r);
            } else if vals[i] == 0 {
                r.zeros.push(idx);
                kept.push(r);
            }
        }
        kept.extend(next);
        if kept.len() > MAX_DD_RAYS {
            return Err(Error::Guard(format!("more than {MAX_DD_RAYS} intermediate rays")));
        }
        rays = kept;
    }
    Ok(rays.into_iter().map(|r| r.v).collect())
}

/// Extreme rays and lineality basis of `{u ∈ R^n : ⟨a,u⟩ ≥ 0 (a ∈ ineqs), ⟨e,u⟩ = 0 (e ∈ eqs)}`.
pub fn generators(n: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> Result<(Vec<IntVec>, Vec<IntVec>)> {
    let ineqs: Vec<IntVec> = ineqs.iter().filter(|a| !is_zero(a)).map(|a| primitive(a)).collect();
    let eqs: Vec<IntVec> = eqs.iter().filter(|a| !is_zero(a)).cloned().collect();
    let mut all = ineqs.clone();
    all.extend(eqs.iter().cloned());
    let lineality_raw = lattice::nullspace(&all, n)?;
    let lineality: Vec<IntVec> = if lineality_raw.is_empty() {
        Vec::new()
    } else {
        lattice::hermite_rows(&lineality_raw)?.iter().map(|v| primitive_oriented(v)).collect()
    };

    // Parametrise the pointed part inside span(eqs ∪ lineality)^⊥.
    let mut eq_all = eqs.clone();
    eq_all.extend(lineality.iter().cloned());
    let param = lattice::nullspace(&eq_all, n)?;
    let k = param.len();
    let reduced: Vec<IntVec> = ineqs
        .iter()
        .map(|a| param.iter().map(|b| i64::try_from(dot(a, b)).map_err(|_| Error::Overflow)).collect())
        .collect::<Result<_>>()?;
    let reduced: Vec<IntVec> = reduced.into_iter().filter(|r| !is_zero(r)).collect();
    let t_rays = if k == 0 { Vec::new() } else { dd_pointed(&reduced, k)? };
    let mut rays = Vec::with_capacity(t_rays.len());
    for t in t_rays {
        let mut u = vec![0i128; n];
        for (tj, b) in t.iter().zip(&param) {
            for (ui, &bi) in u.iter_mut().zip(b) {
                *ui += *tj as i128 * bi as i128;
            }
        }
        let g = u.iter().fold(0i128, |g, &x| num_integer::gcd(g, x)).max(1);
        let v: IntVec = u.iter().map(|x| i64::try_from(x / g).map_err(|_| Error::Overflow)).collect::<Result<_>>()?;
        rays.push(v);
    }
    Ok((sorted(rays), lineality))
}

impl Cone {
    /// Cone `{u : ⟨a,u⟩ ≥ 0, ⟨e,u⟩ = 0}`.
    pub fn from_constraints(n: usize, ineqs: &[IntVec], eqs: &[IntVec]) -> Result<Cone> {
        guard_dim(n)?;
        let (rays, lineality) = generators(n, ineqs, eqs)?;
        Self::from_generators_unchecked(n, rays, lineality)
    }

    /// Cone generated by `rays` plus the linear span of `lineality`.
    pub fn from_generators(n: usize, rays: &[IntVec], lineality: &[IntVec]) -> Result<Cone> {
        guard_dim(n)?;
        let (halfspaces, equations) = generators(n, rays, lineality)?;
        let mut c = Self::from_constraints_unchecked(n, halfspaces.clone(), equations.clone())?;
        c.halfspaces = halfspaces;
        c.equations = canonical_equations(equations)?;
        Ok(c)
    }

    pub fn from_rays(n: usize, rays: &[IntVec]) -> Result<Cone> {
        Self::from_generators(n, rays, &[])
    }

    fn from_generators_unchecked(n: usize, rays: Vec<IntVec>, lineality: Vec<IntVec>) -> Result<Cone> {
        let (halfspaces, equations) = generators(n, &rays, &lineality)?;
        let mut span = rays.clone();
        span.extend(lineality.iter().cloned());
        let dim = lattice::rank(&span, n);
        Ok(Cone {
            ambient_dim: n,
            rays,
            lineality,
            halfspaces,
            equations: canonical_equations(equations)?,
            dim,
        })
    }

    fn from_constraints_unchecked(n: usize, ineqs: Vec<IntVec>, eqs: Vec<IntVec>) -> Result<Cone> {
        let (rays, lineality) = generators(n, &ineqs, &eqs)?;
        Self::from_generators_unchecked(n, rays, lineality)
    }

    /// The nonnegative orthant `R^n_+`.
    pub fn orthant(n: usize) -> Cone {
        let unit = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<IntVec>();
        let units: Vec<IntVec> = sorted((0..n).map(unit).collect());
        Cone {
            ambient_dim: n,
            rays: units.clone(),
            lineality: Vec::new(),
            halfspaces: units,
            equations: Vec::new(),
            dim: n,
        }
    }

    /// The cone `{0}`.
    pub fn zero(n: usize) -> Cone {
        let unit = |i: usize| (0..n).map(|j| i64::from(i == j)).collect::<IntVec>();
        Cone {
            ambient_dim: n,
            rays: Vec::new(),
            lineality: Vec::new(),
            halfspaces: Vec::new(),
            equations: sorted((0..n).map(unit).collect()),
            dim: 0,
        }
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains(&self, u: &[i64]) -> bool {
        self.halfspaces.iter().all(|a| dot(a, u) >= 0) && self.equations.iter().all(|e| dot(e, u) == 0)
    }

    /// Membership in the relative interior.
    pub fn contains_relint(&self, u: &[i64]) -> bool {
        self.halfspaces.iter().all(|a| dot(a, u) > 0) && self.equations.iter().all(|e| dot(e, u) == 0)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: other.ambient_dim });
        }
        let mut ineqs = self.halfspaces.clone();
        ineqs.extend(other.halfspaces.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_constraints(self.ambient_dim, &ineqs, &eqs)
    }

    pub fn is_simplicial(&self) -> Result<bool> {
        if !self.is_pointed() {
            return Err(Error::NotPointed);
        }
        Ok(self.rays.len() == self.dim)
    }

    pub fn is_in_orthant(&self) -> bool {
        self.is_pointed() && self.rays.iter().all(|r| r.iter().all(|&x| x >= 0))
    }

    /// The coordinate set `J` (0-based) when the cone equals the orthant face
    /// `{u ≥ 0, u_j = 0 for j ∉ J}`.
    pub fn face_of_orthant(&self) -> Result<Option<Vec<usize>>> {
        if !self.is_in_orthant() {
            return Err(Error::NotInOrthant);
        }
        let mut coords = Vec::new();
        for r in &self.rays {
            let nz: Vec<usize> = (0..r.len()).filter(|&i| r[i] != 0).collect();
            if nz.len() != 1 || r[nz[0]] != 1 {
                return Ok(None);
            }
            coords.push(nz[0]);
        }
        coords.sort_unstable();
        Ok(Some(coords))
    }

    /// Number of extreme rays shared with `other`.
    pub fn common_rays(&self, other: &Cone) -> usize {
        self.rays.iter().filter(|r| other.rays.contains(r)).count()
    }
}

fn canonical_equations(eqs: Vec<IntVec>) -> Result<Vec<IntVec>> {
    if eqs.is_empty() {
        return Ok(eqs);
    }
    Ok(sorted(lattice::hermite_rows(&eqs)?.iter().map(|v| primitive_oriented(v)).collect()))
}

pub(crate) fn guard_dim(n: usize) -> Result<()> {
    if n > MAX_AMBIENT_DIM {
        return Err(Error::Guard(format!("ambient dimension {n} exceeds {MAX_AMBIENT_DIM}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_round_trip() {
        let c = Cone::from_constraints(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[]).unwrap();
        assert_eq!(c, Cone::orthant(3));
        let o = Cone::orthant(3);
        assert_eq!(o.intersect(&o).unwrap(), o);
    }

    #[test]
    fn ray_meets_quadrant_in_origin() {
        let ray = Cone::from_rays(2, &[vec![1, -1]]).unwrap();
        let cap = ray.intersect(&Cone::orthant(2)).unwrap();
        assert_eq!(cap.dim, 0);
        assert!(cap.rays.is_empty());
        assert_eq!(cap.face_of_orthant().unwrap(), Some(vec![]));
    }

    #[test]
    fn simpliciality() {
        let c = Cone::from_rays(3, &[vec![1, -1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(c.dim, 2);
        assert!(c.is_simplicial().unwrap());
        let square = Cone::from_rays(3, &[vec![1, 0, 1], vec![0, 1, 1], vec![-1, 0, 1], vec![0, -1, 1]]).unwrap();
        assert_eq!(square.dim, 3);
        assert_eq!(square.rays.len(), 4);
        assert!(!square.is_simplicial().unwrap());
        assert!(Cone::zero(3).is_simplicial().unwrap());
    }

    #[test]
    fn redundant_rays_dropped() {
        let c = Cone::from_rays(2, &[vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 0]]).unwrap();
        assert_eq!(c.rays, vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn lineality_is_detected() {
        let half = Cone::from_constraints(2, &[vec![0, 1]], &[]).unwrap();
        assert_eq!(half.lineality, vec![vec![1, 0]]);
        assert_eq!(half.rays, vec![vec![0, 1]]);
        assert!(half.is_simplicial().is_err());
    }

    #[test]
    fn orthant_faces() {
        let c = Cone::from_rays(3, &[vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(c.face_of_orthant().unwrap(), Some(vec![1, 2]));
        let diag = Cone::from_rays(2, &[vec![1, 1]]).unwrap();
        assert_eq!(diag.face_of_orthant().unwrap(), None);
        let out = Cone::from_rays(2, &[vec![1, -1]]).unwrap();
        assert_eq!(out.face_of_orthant(), Err(Error::NotInOrthant));
    }
}
