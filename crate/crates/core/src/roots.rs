//! Complex roots of univariate polynomials, clustering and rational recognition.

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::poly::Rational;
use crate::upoly::UPoly;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = czero();
    let mut dp = czero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let radix = 2.0f64;
    loop {
        let mut done = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].norm();
                    r += m[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= radix * radix;
            }
            if (c + r / f) < 0.95 * s * f {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// All complex roots with multiplicity, coefficients listed from the constant term up.
pub fn roots_complex(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|a| *a == czero()) {
        c.pop();
    }
    let zeros_at_origin = c.iter().take_while(|a| **a == czero()).count();
    let c = c.split_off(zeros_at_origin);
    let n = c.len().saturating_sub(1);
    let mut out = vec![czero(); zeros_at_origin];
    if n == 0 {
        return out;
    }
    if n == 1 {
        out.push(-c[0] / c[1]);
        return out;
    }
    let lc = c[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lc;
    }
    balance(&mut m);
    let eig: Vec<Complex64> = match Schur::try_new(m, 1e-15, 200 * n) {
        Some(s) => {
            let (_, t) = s.unpack();
            t.diagonal().iter().copied().collect()
        }
        None => aberth(&c),
    };
    for mut z in eig {
        for _ in 0..8 {
            let (p, dp) = horner(&c, z);
            if dp.norm() == 0.0 || !p.is_finite() {
                break;
            }
            let step = p / dp;
            let nz = z - step;
            let (np, _) = horner(&c, nz);
            if !np.is_finite() || np.norm() > p.norm() {
                break;
            }
            z = nz;
            if step.norm() <= 1e-17 * z.norm().max(1.0) {
                break;
            }
        }
        out.push(z);
    }
    out
}

/// Simultaneous Aberth iteration started on a circle of the Cauchy radius.
fn aberth(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lc = c[n].norm();
    let radius = 1.0 + c[..n].iter().map(|a| a.norm() / lc).fold(0.0, f64::max);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(c, z[i]);
            if p == czero() {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

pub fn roots_upoly(p: &UPoly) -> Vec<Complex64> {
    roots_complex(&p.to_complex())
}

/// Whether two numbers agree to a relative tolerance (absolute near zero).
pub fn close(a: Complex64, b: Complex64, rel_tol: f64) -> bool {
    (a - b).norm() <= rel_tol * a.norm().max(b.norm()).max(1.0)
}

/// Single-linkage clusters, each given as indices into `points`, ordered by first index.
pub fn cluster(points: &[Complex64], rel_tol: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut j = i;
        while p[j] != r {
            let nx = p[j];
            p[j] = r;
            j = nx;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if close(points[i], points[j], rel_tol) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Cluster representatives (means).
pub fn distinct(points: &[Complex64], rel_tol: f64) -> Vec<Complex64> {
    cluster(points, rel_tol)
        .into_iter()
        .map(|g| g.iter().map(|&i| points[i]).sum::<Complex64>() / g.len() as f64)
        .collect()
}

/// Smallest distance between cluster representatives relative to their size.
pub fn min_relative_gap(points: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = (points[i] - points[j]).norm() / points[i].norm().max(points[j].norm()).max(1.0);
            best = best.min(d);
        }
    }
    best
}

/// Continued-fraction reconstruction of `x` by a rational with denominator at
/// most `max_den`, accepted when within `tol` (relative, absolute below one).
pub fn recognize_rational(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let approx = h1 as f64 / k1 as f64;
        if (approx - x).abs() <= tol * x.abs().max(1.0) {
            return Some(Rational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = r - a;
        if frac.abs() < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

/// Rational roots of `p` found numerically and confirmed by exact substitution.
pub fn rational_roots(p: &UPoly) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    if p.is_zero() {
        return out;
    }
    let sf = p.squarefree();
    for z in roots_upoly(&sf) {
        if z.im.abs() > 1e-6 * z.norm().max(1.0) {
            continue;
        }
        if let Some(r) = recognize_rational(z.re, 1_000_000, 1e-7) {
            if sf.eval(&r).is_zero() && !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out.sort();
    out
}

/// The irreducible factor over the rationals of the squarefree polynomial `p`
/// that vanishes at `root`, found by recombining numerical roots and confirmed
/// by exact division. `None` when `p` has too many roots to search.
pub fn irreducible_factor(p: &UPoly, root: Complex64) -> Option<UPoly> {
    let p = p.primitive();
    let n = p.deg();
    if n <= 1 {
        return Some(p);
    }
    if n > 20 {
        return None;
    }
    let rs = roots_upoly(&p);
    let anchor = (0..n).min_by(|&i, &j| (rs[i] - root).norm().total_cmp(&(rs[j] - root).norm()))?;
    let others: Vec<usize> = (0..n).filter(|&i| i != anchor).collect();
    let lc = crate::poly::rational_to_f64(&p.lc());
    for size in 0..others.len() {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            let mut chosen = vec![rs[anchor]];
            chosen.extend(comb.iter().map(|&k| rs[others[k]]));
            if let Some(f) = integer_product(&chosen, lc) {
                if p.exact_div(&f).is_some() {
                    return Some(f.primitive());
                }
            }
            if !next_combination(&mut comb, others.len()) {
                break;
            }
        }
    }
    Some(p)
}

fn integer_product(roots: &[Complex64], lc: f64) -> Option<UPoly> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![czero(); c.len() + 1];
        for (k, a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * r;
        }
        c = next;
    }
    let mut out = Vec::with_capacity(c.len());
    for a in c {
        let v = a * lc;
        if v.im.abs() > 1e-6 * v.norm().max(1.0) {
            return None;
        }
        let rounded = v.re.round();
        if (v.re - rounded).abs() > 1e-6 * v.re.abs().max(1.0) || rounded.abs() > 9e15 {
            return None;
        }
        out.push(Rational::from_integer(BigInt::from(rounded.to_i64()?)));
    }
    Some(UPoly::new(out))
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn to_complex(q: &Rational) -> Complex64 {
    Complex64::new(crate::poly::rational_to_f64(q), 0.0)
}

pub fn is_real(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol * z.norm().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    fn sorted_re(mut v: Vec<Complex64>) -> Vec<f64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re));
        v.into_iter().map(|z| z.re).collect()
    }

    #[test]
    fn quadratic_roots() {
        let r = sorted_re(roots_upoly(&UPoly::from_ints(&[-2, -1, 1])));
        assert!((r[0] + 1.0).abs() < 1e-12 && (r[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn roots_of_wilkinson_like() {
        let mut p = UPoly::one();
        for k in 1..=12 {
            p = p.mul(&UPoly::from_ints(&[-k, 1]));
        }
        let r = sorted_re(roots_upoly(&p));
        for (k, x) in r.iter().enumerate() {
            assert!((x - (k + 1) as f64).abs() < 1e-6, "{x}");
        }
        assert_eq!(rational_roots(&p).len(), 12);
    }

    #[test]
    fn complex_roots_and_zero_root() {
        let r = roots_upoly(&UPoly::from_ints(&[0, 1, 0, 1]));
        assert_eq!(r.len(), 3);
        assert!(r.iter().any(|z| z.norm() < 1e-14));
        assert!(r.iter().any(|z| (z - Complex64::new(0.0, 1.0)).norm() < 1e-12));
    }

    #[test]
    fn clustering() {
        let pts = [Complex64::new(1.0, 0.0), Complex64::new(1.0 + 1e-12, 0.0), Complex64::new(2.0, 0.0)];
        assert_eq!(cluster(&pts, 1e-9), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn rational_recognition() {
        assert_eq!(recognize_rational(-0.25, 1_000_000, 1e-10), Some(rational(-1, 4)));
        assert_eq!(recognize_rational(1.0 / 3.0, 1_000_000, 1e-10), Some(rational(1, 3)));
        assert_eq!(recognize_rational(std::f64::consts::PI, 1000, 1e-10), None);
    }

    #[test]
    fn factor_recombination() {
        let a = UPoly::from_ints(&[-2, 0, 1]);
        let b = UPoly::from_ints(&[1, 1, 1]);
        let p = a.mul(&b);
        let f = irreducible_factor(&p, Complex64::new(2f64.sqrt(), 0.0)).unwrap();
        assert_eq!(f, a);
        let g = irreducible_factor(&p, Complex64::new(-0.5, 0.75f64.sqrt())).unwrap();
        assert_eq!(g, b);
    }
}
