//! Univariate polynomials over a [`SmallField`] and resultant degrees.
//!
//! Polynomials are little-endian coefficient vectors with no trailing zeros
//! (the zero polynomial is the empty vector). The one nontrivial export is
//! [`resultant_x_degree`]: deg_x Res_y(F, g) for bivariate inputs, computed
//! by specializing x at enough points of an extension field, taking exact
//! Sylvester determinants, and reading the degree off Newton divided
//! differences. Specialization commutes with the determinant, so vanishing
//! leading coefficients of g(x0, y) cause no trouble.

use crate::field::SmallField;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub type Poly = Vec<u16>;

pub fn pnorm(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Degree, with deg 0 = -1 by convention.
pub fn pdeg(p: &[u16]) -> i64 {
    p.len() as i64 - 1
}

pub fn pis_zero(p: &[u16]) -> bool {
    p.is_empty()
}

pub fn padd(f: &SmallField, a: &[u16], b: &[u16]) -> Poly {
    let mut out = vec![0u16; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = f.add(out[i], c);
    }
    pnorm(out)
}

pub fn pneg(f: &SmallField, a: &[u16]) -> Poly {
    a.iter().map(|&c| f.neg(c)).collect()
}

pub fn psub(f: &SmallField, a: &[u16], b: &[u16]) -> Poly {
    padd(f, a, &pneg(f, b))
}

pub fn pscale(f: &SmallField, a: &[u16], s: u16) -> Poly {
    if s == 0 {
        return Vec::new();
    }
    a.iter().map(|&c| f.mul(c, s)).collect()
}

pub fn pmul(f: &SmallField, a: &[u16], b: &[u16]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u16; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    pnorm(out)
}

/// Multiply by x^n.
pub fn pshift(a: &[u16], n: usize) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u16; n];
    out.extend_from_slice(a);
    out
}

pub fn peval(f: &SmallField, a: &[u16], x: u16) -> u16 {
    let mut acc = 0u16;
    for &c in a.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

/// Formal derivative (coefficients multiplied by their exponent mod p).
pub fn pderiv(f: &SmallField, a: &[u16]) -> Poly {
    let mut out = Vec::new();
    for (i, &c) in a.iter().enumerate().skip(1) {
        out.push(f.int_mul(i as i64, c));
    }
    pnorm(out)
}

/// Shared cache of extension fields and base-field embeddings, keyed by
/// (p, base degree, extension degree). Resultant calls are hot.
fn ext_cache(
    base: &SmallField,
    k_ext: u32,
) -> Arc<(SmallField, Vec<u16>)> {
    static CACHE: OnceLock<Mutex<HashMap<(u16, u32, u32), Arc<(SmallField, Vec<u16>)>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (base.p, base.k, k_ext);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let ext = SmallField::new(base.p, k_ext).expect("extension field construction");
    let map = base.embedding_into(&ext).expect("base field embeds in extension");
    let entry = Arc::new((ext, map));
    cache.lock().unwrap().insert(key, entry.clone());
    entry
}

/// deg_x Res_y(F, g) where F = sum fc[i](x) y^i is monic in y and
/// g = sum gc[j](x) y^j. Returns None when the resultant is identically zero
/// (impossible for F irreducible and g nonzero reduced mod F).
pub fn resultant_x_degree(base: &SmallField, fc: &[Poly], gc: &[Poly]) -> Option<i64> {
    let mut gc: Vec<Poly> = gc.to_vec();
    while gc.last().map_or(false, |p| pis_zero(p)) {
        gc.pop();
    }
    assert!(!gc.is_empty(), "resultant with the zero polynomial");
    let m = fc.len() - 1; // deg_y F
    let n = gc.len() - 1; // true deg_y g
    assert_eq!(fc[m], vec![1], "F must be monic in y");

    let df = fc.iter().map(|p| pdeg(p).max(0)).max().unwrap_or(0);
    let dg = gc.iter().map(|p| pdeg(p).max(0)).max().unwrap_or(0);
    let bound = (n as i64) * df + (m as i64) * dg;
    let npoints = bound as usize + 1;

    // Smallest extension with enough evaluation points.
    let mut k_ext = base.k;
    while (base.p as u64).pow(k_ext) < npoints as u64 {
        k_ext += base.k;
    }
    let entry = ext_cache(base, k_ext);
    let (ext, embed) = (&entry.0, &entry.1);

    let lift = |p: &Poly| -> Poly { p.iter().map(|&c| embed[c as usize]).collect() };
    let fc_e: Vec<Poly> = fc.iter().map(lift).collect();
    let gc_e: Vec<Poly> = gc.iter().map(lift).collect();

    let size = m + n;
    let mut xs = Vec::with_capacity(npoints);
    let mut ys = Vec::with_capacity(npoints);
    for x0 in 0..npoints as u16 {
        let fv: Vec<u16> = fc_e.iter().map(|p| peval(ext, p, x0)).collect();
        let gv: Vec<u16> = gc_e.iter().map(|p| peval(ext, p, x0)).collect();
        let mut mat = vec![vec![0u16; size]; size];
        for r in 0..n {
            for (i, &v) in fv.iter().enumerate() {
                mat[r][r + (m - i)] = v;
            }
        }
        for r in 0..m {
            for (j, &v) in gv.iter().enumerate() {
                mat[n + r][r + (n - j)] = v;
            }
        }
        xs.push(x0);
        ys.push(det_in_place(ext, mat));
    }
    interp_degree(ext, &xs, &mut ys)
}

/// Exact determinant over a field by Gaussian elimination.
fn det_in_place(f: &SmallField, mut mat: Vec<Vec<u16>>) -> u16 {
    let n = mat.len();
    let mut det = 1u16;
    for col in 0..n {
        let pivot = match (col..n).find(|&r| mat[r][col] != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = f.neg(det);
        }
        let pv = mat[col][col];
        det = f.mul(det, pv);
        let pinv = f.inv(pv);
        for r in col + 1..n {
            let factor = f.mul(mat[r][col], pinv);
            if factor == 0 {
                continue;
            }
            for c in col..n {
                let sub = f.mul(factor, mat[col][c]);
                mat[r][c] = f.sub(mat[r][c], sub);
            }
        }
    }
    det
}

/// Degree of the interpolating polynomial through (xs[i], ys[i]), via Newton
/// divided differences (the Newton basis is degree-graded, so the largest
/// index with nonzero coefficient is the degree). None for the zero function.
fn interp_degree(f: &SmallField, xs: &[u16], ys: &mut [u16]) -> Option<i64> {
    let n = xs.len();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.sub(ys[i], ys[i - 1]);
            let den = f.sub(xs[i], xs[i - j]);
            ys[i] = f.div(num, den);
        }
    }
    ys.iter().rposition(|&c| c != 0).map(|d| d as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> SmallField {
        SmallField::new(2, 2).unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        let f = f4();
        let a = vec![1, 1]; // 1 + x
        let b = vec![1, 0, 1]; // 1 + x^2
        assert_eq!(pmul(&f, &a, &a), b); // (1+x)^2 over char 2
        assert_eq!(psub(&f, &a, &a), Vec::<u16>::new());
        assert_eq!(pdeg(&pshift(&a, 3)), 4);
        assert_eq!(peval(&f, &b, 1), 0);
    }

    #[test]
    fn derivative_char_p() {
        let f = f4();
        // d/dx (x^2 + x) = 1 over char 2.
        assert_eq!(pderiv(&f, &[0, 1, 1]), vec![1]);
        let f9 = SmallField::new(3, 2).unwrap();
        // d/dx x^3 = 0 over char 3.
        assert_eq!(pderiv(&f9, &[0, 0, 0, 1]), Vec::<u16>::new());
    }

    // F for the Hermitian curve y^2 + y - x^3 over F_4 (char 2).
    fn hermitian2_f() -> Vec<Poly> {
        vec![vec![0, 0, 0, 1], vec![1], vec![1]]
    }

    #[test]
    fn resultant_degree_examples() {
        let f = f4();
        let fc = hermitian2_f();
        // g = x: Res_y = x^2.
        assert_eq!(resultant_x_degree(&f, &fc, &[vec![0, 1]]), Some(2));
        // g = y: Res_y = F(x, 0) = x^3.
        assert_eq!(resultant_x_degree(&f, &fc, &[vec![], vec![1]]), Some(3));
        // g = 1: resultant is a nonzero constant.
        assert_eq!(resultant_x_degree(&f, &fc, &[vec![1]]), Some(0));
    }

    #[test]
    fn resultant_linear_in_y_is_substitution() {
        let f = f4();
        // F = y + x, g = y^2 + x: Res_y = g(-x) = x^2 + x, degree 2.
        let fc = vec![vec![0, 1], vec![1]];
        let gc = vec![vec![0, 1], vec![], vec![1]];
        assert_eq!(resultant_x_degree(&f, &fc, &gc), Some(2));
    }

    #[test]
    fn resultant_handles_constant_y_degree() {
        let f = f4();
        let fc = hermitian2_f();
        // g = x^5 (no y): Res = (x^5)^2, degree 10.
        assert_eq!(resultant_x_degree(&f, &fc, &[vec![0, 0, 0, 0, 0, 1]]), Some(10));
    }
}
