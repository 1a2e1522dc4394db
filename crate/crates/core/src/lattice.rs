//! Exact integer and rational linear algebra on small dense matrices.
//!
//! Everything here works over `BigInt`/`BigRational` internally and hands
//! back `i64` vectors, failing with [`Error::Overflow`] if an entry does not
//! fit. Matrices are lists of rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntVec = Vec<i64>;

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

pub fn sub(a: &[i64], b: &[i64]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> IntVec {
    let g = gcd_slice(v);
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

/// Primitive with the first nonzero entry made positive (for lineality
/// generators and hyperplane normals of equalities).
pub fn primitive_oriented(v: &[i64]) -> IntVec {
    let mut p = primitive(v);
    if let Some(first) = p.iter().find(|&&x| x != 0) {
        if *first < 0 {
            p.iter_mut().for_each(|x| *x = -*x);
        }
    }
    p
}

pub(crate) fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

pub(crate) fn big_primitive(v: &[BigInt]) -> Result<IntVec> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.iter().map(to_i64).collect();
    }
    v.iter().map(|x| to_i64(&(x / &g))).collect()
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Reduced row echelon form over Q. Returns the reduced matrix and the pivot
/// columns.
pub(crate) fn rref(rows: &[Vec<BigRational>], ncols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..ncols {
                    let d = &factor * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

fn to_rat_rows(rows: &[IntVec]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

pub fn rank(rows: &[IntVec], ncols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rref(&to_rat_rows(rows), ncols).1.len()
}

/// Pivot columns of the row space; projecting onto them is injective on the
/// span of `rows`.
pub fn pivot_columns(rows: &[IntVec], ncols: usize) -> Vec<usize> {
    if rows.is_empty() {
        return Vec::new();
    }
    rref(&to_rat_rows(rows), ncols).1
}

/// Basis of the rational null space `{x : rows·x = 0}`, scaled to primitive
/// integer vectors.
pub fn nullspace(rows: &[IntVec], ncols: usize) -> Result<Vec<IntVec>> {
    let (m, pivots) = rref(&to_rat_rows(rows), ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(rational_to_primitive(&v)?);
    }
    Ok(basis)
}

pub(crate) fn rational_to_primitive(v: &[BigRational]) -> Result<IntVec> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    big_primitive(&ints)
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Basis of the integer kernel `{x ∈ Z^n : A x = 0}` via unimodular column
/// reduction of `A` (Hermite style).
pub fn integer_kernel(rows: &[IntVec], ncols: usize) -> Result<Vec<IntVec>> {
    let m = rows.len();
    // columns of the stacked matrix [A; I]
    let mut cols: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            let mut c: Vec<BigInt> = rows.iter().map(|r| BigInt::from(r[j])).collect();
            c.extend((0..ncols).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }));
            c
        })
        .collect();
    let mut k = 0;
    for r in 0..m {
        if k == ncols {
            break;
        }
        for j in (k + 1)..ncols {
            if cols[j][r].is_zero() {
                continue;
            }
            if cols[k][r].is_zero() {
                cols.swap(k, j);
                continue;
            }
            let a = cols[k][r].clone();
            let b = cols[j][r].clone();
            let (g, s, t) = ext_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            let ck = cols[k].clone();
            let cj = cols[j].clone();
            cols[k] = ck.iter().zip(&cj).map(|(x, y)| &s * x + &t * y).collect();
            cols[j] = ck.iter().zip(&cj).map(|(x, y)| -&bg * x + &ag * y).collect();
        }
        if !cols[k][r].is_zero() {
            k += 1;
        }
    }
    cols[k..]
        .iter()
        .map(|c| c[m..].iter().map(to_i64).collect::<Result<IntVec>>())
        .collect()
}

/// Integer vectors `c_1, …, c_d` with `⟨b_i, c_j⟩ = δ_ij` for the rows `b_i`
/// of a saturated basis; `None` when the basis is not saturated.
pub fn dual_vectors(basis: &[IntVec], n: usize) -> Option<Vec<IntVec>> {
    let d = basis.len();
    let mut cols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            let mut c: Vec<BigInt> = basis.iter().map(|r| BigInt::from(r[j])).collect();
            c.extend((0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }));
            c
        })
        .collect();
    for r in 0..d {
        for j in (r + 1)..n {
            if cols[j][r].is_zero() {
                continue;
            }
            if cols[r][r].is_zero() {
                cols.swap(r, j);
                continue;
            }
            let (a, b) = (cols[r][r].clone(), cols[j][r].clone());
            let (g, s, t) = ext_gcd(&a, &b);
            let (ag, bg) = (&a / &g, &b / &g);
            let (cr, cj) = (cols[r].clone(), cols[j].clone());
            cols[r] = cr.iter().zip(&cj).map(|(x, y)| &s * x + &t * y).collect();
            cols[j] = cr.iter().zip(&cj).map(|(x, y)| -&bg * x + &ag * y).collect();
        }
        if cols[r][r].is_zero() {
            return None;
        }
    }
    let mut out = Vec::with_capacity(d);
    for j in 0..d {
        let mut y = vec![BigRational::zero(); d];
        for i in 0..d {
            let mut acc = if i == j { BigRational::one() } else { BigRational::zero() };
            for k in 0..i {
                acc -= BigRational::from_integer(cols[k][i].clone()) * &y[k];
            }
            y[i] = acc / BigRational::from_integer(cols[i][i].clone());
        }
        let mut x = Vec::with_capacity(n);
        for row in 0..n {
            let mut acc = BigRational::zero();
            for k in 0..d {
                acc += BigRational::from_integer(cols[k][d + row].clone()) * &y[k];
            }
            if !acc.is_integer() {
                return None;
            }
            x.push(acc.to_integer().to_i64()?);
        }
        out.push(x);
    }
    Some(out)
}

/// Row Hermite normal form: nonzero rows in echelon form with positive
/// pivots and entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(rows: &[IntVec]) -> Result<Vec<IntVec>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            if m[r][c].is_zero() {
                m.swap(r, i);
                continue;
            }
            let (g, s, t) = ext_gcd(&m[r][c], &m[i][c]);
            let (ag, bg) = (&m[r][c] / &g, &m[i][c] / &g);
            let rr = m[r].clone();
            let ri = m[i].clone();
            m[r] = rr.iter().zip(&ri).map(|(x, y)| &s * x + &t * y).collect();
            m[i] = rr.iter().zip(&ri).map(|(x, y)| -&bg * x + &ag * y).collect();
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            m[r].iter_mut().for_each(|x| *x = -x.clone());
        }
        let p = m[r][c].clone();
        for i in 0..r {
            let q = m[i][c].div_floor(&p);
            if !q.is_zero() {
                let rr = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&rr) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.iter().map(|row| row.iter().map(to_i64).collect()).collect()
}

/// Basis (in row Hermite normal form) of the saturated lattice
/// `span_R(vectors) ∩ Z^n`.
pub fn saturated_basis(vectors: &[IntVec], n: usize) -> Result<Vec<IntVec>> {
    let nonzero: Vec<IntVec> = vectors.iter().filter(|v| !is_zero(v)).cloned().collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }
    let complement = nullspace(&nonzero, n)?;
    let kernel = integer_kernel(&complement, n)?;
    hermite_rows(&kernel)
}

/// Integer coordinates of `v` with respect to a lattice basis, or `None` when
/// `v` is not in the lattice.
pub fn lattice_coordinates(basis: &[IntVec], v: &[i64]) -> Option<IntVec> {
    let n = v.len();
    let d = basis.len();
    if d == 0 {
        return if is_zero(v) { Some(Vec::new()) } else { None };
    }
    // Solve Bᵀ c = v over Q.
    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = basis.iter().map(|b| rat(b[i])).collect();
            r.push(rat(v[i]));
            r
        })
        .collect();
    let (m, pivots) = rref(&rows, d + 1);
    if pivots.contains(&d) {
        return None;
    }
    let mut c = vec![BigRational::zero(); d];
    for (row, &pc) in m.iter().zip(&pivots) {
        c[pc] = row[d].clone();
    }
    c.iter()
        .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
        .collect()
}

/// Exact determinant of a square integer matrix (Bareiss elimination).
pub fn determinant(rows: &[IntVec]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = ((k + 1)..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// A vector `c` with `⟨b, c⟩ = 1` for a primitive vector `b`.
pub fn unimodular_complement(b: &[i64]) -> Option<IntVec> {
    let mut acc_g = 0i64;
    let mut c = vec![0i64; b.len()];
    for (i, &x) in b.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if acc_g == 0 {
            acc_g = x;
            c[i] = 1;
            continue;
        }
        let e = acc_g.extended_gcd(&x);
        c.iter_mut().for_each(|ci| *ci *= e.x);
        c[i] = e.y;
        acc_g = e.gcd;
    }
    match acc_g {
        1 => Some(c),
        -1 => Some(c.iter().map(|x| -x).collect()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_vectors_of_plane() {
        let b = vec![vec![1, 0, 1], vec![0, 1, 0]];
        let c = dual_vectors(&b, 3).unwrap();
        for (i, bi) in b.iter().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                assert_eq!(dot(bi, cj), (i == j) as i128);
            }
        }
        assert!(dual_vectors(&[vec![2, 0]], 2).is_none());
    }

    #[test]
    fn saturation_divides_content() {
        assert_eq!(saturated_basis(&[vec![2, 2]], 2).unwrap(), vec![vec![1, 1]]);
        assert_eq!(saturated_basis(&[vec![2, 0, 0]], 3).unwrap(), vec![vec![1, 0, 0]]);
        assert_eq!(saturated_basis(&[vec![-2, -1]], 2).unwrap(), vec![vec![2, 1]]);
    }

    #[test]
    fn full_lattice_is_unimodular() {
        let b = saturated_basis(&[vec![2, 0, 0], vec![2, 2, 0], vec![2, 2, 3]], 3).unwrap();
        assert_eq!(b.len(), 3);
        assert_eq!(determinant(&b).abs(), BigInt::one());
    }

    #[test]
    fn plane_saturation() {
        // span of (2,0,2) and (0,4,0) saturates to the x-z diagonal plus y
        let b = saturated_basis(&[vec![2, 0, 2], vec![0, 4, 0]], 3).unwrap();
        assert_eq!(b, vec![vec![1, 0, 1], vec![0, 1, 0]]);
    }

    #[test]
    fn kernel_of_row() {
        let k = integer_kernel(&[vec![2, 3]], 2).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(dot(&k[0], &[2, 3]), 0);
        assert_eq!(gcd_slice(&k[0]), 1);
    }

    #[test]
    fn coordinates() {
        assert_eq!(lattice_coordinates(&[vec![1, 1]], &[2, 2]), Some(vec![2]));
        assert_eq!(lattice_coordinates(&[vec![2, 1]], &[2, 1]), Some(vec![1]));
        assert_eq!(lattice_coordinates(&[vec![2, 1]], &[1, 1]), None);
        assert_eq!(lattice_coordinates(&[vec![2, 2]], &[1, 1]), None);
    }

    #[test]
    fn det_exp_tetrahedron() {
        assert_eq!(determinant(&[vec![2, 0, 0], vec![2, 2, 0], vec![2, 2, 3]]), BigInt::from(12));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
    }

    #[test]
    fn complement_vector() {
        for b in [vec![-1, 1], vec![2, 1], vec![3, 5, 7], vec![0, 0, -1]] {
            let c = unimodular_complement(&b).unwrap();
            assert_eq!(dot(&b, &c), 1, "{b:?}");
        }
        assert!(unimodular_complement(&[2, 4]).is_none());
    }
}
