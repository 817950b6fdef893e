//! Function-field kernel: valuations at the two distinguished places and
//! Riemann–Roch dimensions l(aP∞ + bP0), computed from the curve equation
//! with no imported semigroup data.
//!
//! The central object is an echelonized "master list" of functions: for each
//! reduced-basis element b_j and each x-power i with pole order
//! qc·i + w_j ≤ a_max, the function x^i b_j is expanded at the origin and the
//! list is echelonized by vanishing order. Every entry then carries a
//! distinct pole order at P∞ and a distinct vanishing order at P0, which
//! turns every dimension query into a counting problem.

use crate::curve::{Biv, CurveId, CurvePreset};
use crate::poly::pis_zero;
use crate::series::Series;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("divisor {a}P+{b}Q outside kernel window |a|,|b| <= {window}")]
    Range { a: i64, b: i64, window: i64 },
    #[error("no torsion order found up to {0}")]
    TorsionNotFound(i64),
}

/// Basis of the module of functions regular outside P∞, weight-reduced so the
/// pole orders are distinct mod deg_y F.
pub struct ReducedBasis {
    pub elems: Vec<Biv>,
    /// w_j = -v_∞(b_j), sorted ascending; w_0 = 0.
    pub weights: Vec<i64>,
}

/// Solves F(t, y(t)) = 0 for y as a series in t = x at the origin, by
/// fixed-point iteration on y = -f_1^{-1}(f_0 + Σ_{j≥2} f_j y^j). Each pass
/// strictly increases the valuation of the update, so the iteration
/// stabilizes within `precision` rounds.
pub fn expand_series_at_origin(curve: &CurvePreset, precision: usize) -> Series {
    let f = &*curve.field;
    let f1inv = Series::from_poly(&curve.fy[1], precision).invert(f);
    let neg_one = f.neg(1);
    let mut y = Series::zero(precision);
    for _ in 0..precision + 2 {
        let mut acc = Series::from_poly(&curve.fy[0], precision);
        let mut ypow = y.mul(f, &y);
        for j in 2..=curve.qc {
            if !pis_zero(&curve.fy[j]) {
                acc = acc.add(f, &Series::from_poly(&curve.fy[j], precision).mul(f, &ypow));
            }
            if j < curve.qc {
                ypow = ypow.mul(f, &y);
            }
        }
        let next = f1inv.mul(f, &acc).scale(f, neg_one);
        if next == y {
            return y;
        }
        y = next;
    }
    unreachable!("origin expansion failed to stabilize");
}

/// Weight reduction of the basis {1, y, ..., y^{qc-1}}: whenever two weights
/// collide mod qc, a unique scalar multiple of the lighter element (shifted
/// by a power of x) strictly improves the heavier one.
pub fn reduced_infinity_basis(curve: &CurvePreset) -> ReducedBasis {
    let f = &*curve.field;
    let qc = curve.qc as i64;
    let mut elems: Vec<Biv> = (0..curve.qc)
        .map(|j| {
            let mut g = vec![Vec::new(); j + 1];
            g[j] = vec![1];
            g
        })
        .collect();
    let mut weights: Vec<i64> =
        elems.iter().map(|g| -curve.val_infinity(g).unwrap()).collect();
    let cap: i64 = weights.iter().sum();
    let mut steps = 0i64;
    loop {
        let mut pair = None;
        'outer: for i in 0..elems.len() {
            for j in 0..elems.len() {
                if i != j && weights[i] >= weights[j] && (weights[i] - weights[j]) % qc == 0 {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = pair else { break };
        let m = ((weights[i] - weights[j]) / qc) as usize;
        let shifted = curve.biv_xshift(&elems[j], m);
        let mut improved = false;
        for lambda in 1..f.q as u16 {
            let cand = curve.biv_add(&elems[i], &curve.biv_scale(&shifted, lambda));
            if curve.biv_is_zero(&cand) {
                continue;
            }
            let w = -curve.val_infinity(&cand).unwrap();
            if w < weights[i] {
                elems[i] = cand;
                weights[i] = w;
                improved = true;
                break;
            }
        }
        assert!(improved, "weight reduction found no improving scalar");
        steps += 1;
        assert!(steps <= cap, "weight reduction failed to terminate");
    }
    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by_key(|&i| weights[i]);
    ReducedBasis {
        elems: order.iter().map(|&i| elems[i].clone()).collect(),
        weights: order.iter().map(|&i| weights[i]).collect(),
    }
}

struct Echelon {
    poles: Vec<i64>,
    vanish: Vec<i64>,
    funcs: Vec<Biv>,
}

/// Master list of functions x^i b_j with pole order ≤ a_max, echelonized at
/// the origin so all vanishing orders are distinct. Processing in increasing
/// pole order keeps the prefix spans intact: the entries with pole ≤ N are
/// always a basis of L(N·P∞).
fn build_echelon(curve: &CurvePreset, basis: &ReducedBasis, a_max: i64) -> Echelon {
    let f = &*curve.field;
    let prec = (a_max + 1) as usize;
    let yser = expand_series_at_origin(curve, prec);

    let mut items: Vec<(i64, Biv, Series)> = Vec::new();
    for (bj, &w) in basis.elems.iter().zip(&basis.weights) {
        if w > a_max {
            continue;
        }
        // Expand b_j once, then shift by powers of t for the x^i multiples.
        let mut ser = Series::zero(prec);
        let mut ypow = Series::from_poly(&vec![1], prec);
        for p in bj {
            if !pis_zero(p) {
                ser = ser.add(f, &Series::from_poly(p, prec).mul(f, &ypow));
            }
            ypow = ypow.mul(f, &yser);
        }
        let qc = curve.qc as i64;
        let mut i = 0i64;
        while qc * i + w <= a_max {
            items.push((qc * i + w, curve.biv_xshift(bj, i as usize), ser.shift_up(i as usize)));
            i += 1;
        }
    }
    items.sort_by_key(|it| it.0);

    let mut poles = Vec::new();
    let mut vanish = Vec::new();
    let mut funcs: Vec<Biv> = Vec::new();
    let mut sers: Vec<Series> = Vec::new();
    // vanishing order -> row index
    let mut owner: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
    for (pole, mut func, mut ser) in items {
        loop {
            let v = ser
                .valuation()
                .expect("a nonzero function in L(a_max P∞) vanishes to order <= a_max");
            assert!(v as i64 <= pole, "vanishing order exceeds pole order");
            match owner.get(&v) {
                Some(&row) => {
                    let scale = f.div(ser.c[v], sers[row].c[v]);
                    ser = ser.sub(f, &sers[row].scale(f, scale));
                    func = curve.biv_add(
                        &func,
                        &curve.biv_scale(&funcs[row], f.neg(scale)),
                    );
                }
                None => {
                    owner.insert(v, poles.len());
                    poles.push(pole);
                    vanish.push(v as i64);
                    funcs.push(func);
                    sers.push(ser);
                    break;
                }
            }
        }
    }
    Echelon { poles, vanish, funcs }
}

/// Least e ≥ 1 with an element of L(eP∞) vanishing to order exactly e at the
/// origin; the witness u then has div(u) = e(P0 - P∞) by degree count.
pub fn class_torsion_order(
    curve: &CurvePreset,
    basis: &ReducedBasis,
    search_cap: i64,
) -> Result<(i64, Biv), KernelError> {
    assert!(search_cap >= 2 * curve.genus + 1);
    let ech = build_echelon(curve, basis, search_cap);
    let mut best: Option<(i64, usize)> = None;
    for (row, (&pole, &v)) in ech.poles.iter().zip(&ech.vanish).enumerate() {
        if pole >= 1 && pole == v && best.map_or(true, |(b, _)| pole < b) {
            best = Some((pole, row));
        }
    }
    match best {
        Some((e, row)) => Ok((e, ech.funcs[row].clone())),
        None => Err(KernelError::TorsionNotFound(search_cap)),
    }
}

pub struct Kernel {
    pub curve: CurvePreset,
    pub genus: i64,
    /// Torsion order of the class of P0 - P∞.
    pub e: i64,
    /// Unit with div(u) = e(P0 - P∞).
    pub unit: Biv,
    pub weights: Vec<i64>,
    pub window: i64,
    a_max: i64,
    ech: Echelon,
}

impl Kernel {
    /// Default window |a|, |b| ≤ 6g + e.
    pub fn new(id: CurveId) -> Kernel {
        Self::build(id, None)
    }

    pub fn with_window(id: CurveId, window: i64) -> Kernel {
        Self::build(id, Some(window))
    }

    fn build(id: CurveId, window: Option<i64>) -> Kernel {
        let curve = CurvePreset::load(id);
        let basis = reduced_infinity_basis(&curve);
        let qc = curve.qc as i64;
        let genus: i64 = basis.weights.iter().map(|w| w / qc).sum();
        assert_eq!(genus, curve.genus, "reduced-basis genus disagrees with preset");
        let (e, unit) =
            class_torsion_order(&curve, &basis, 4 * genus + 4).expect("preset torsion");
        assert_eq!(curve.val_infinity(&unit).unwrap(), -e);
        let window = window.unwrap_or(6 * genus + e);
        // Queries shift by at most e·k with k ≤ ceil(window/e), so pole
        // orders up to 2·window + e must be covered by the master list.
        let a_max = 2 * window + e;
        let ech = build_echelon(&curve, &basis, a_max);
        Kernel { curve, genus, e, unit, weights: basis.weights, window, a_max, ech }
    }

    /// l(aP∞ + bP0).
    pub fn rr_dim(&self, a: i64, b: i64) -> Result<i64, KernelError> {
        if a.abs() > self.window || b.abs() > self.window {
            return Err(KernelError::Range { a, b, window: self.window });
        }
        if a + b < 0 {
            return Ok(0);
        }
        let (a2, b2, _) = self.normalize(a, b);
        Ok(self
            .ech
            .poles
            .iter()
            .zip(&self.ech.vanish)
            .filter(|&(&pole, &v)| pole <= a2 && v >= -b2)
            .count() as i64)
    }

    /// Shift (a, b) by multiples of the torsion unit so a' ≥ 0, b' ≤ 0.
    fn normalize(&self, a: i64, b: i64) -> (i64, i64, i64) {
        let e = self.e;
        let ceil_div = |x: i64, y: i64| (x + y - 1).div_euclid(y);
        let k = 0i64.max(ceil_div(b, e)).max(ceil_div(-a, e));
        let (a2, b2) = (a + e * k, b - e * k);
        assert!(a2 <= self.a_max && a2 >= 0 && b2 <= 0);
        (a2, b2, k)
    }

    /// Functions spanning L(aP∞ + bP0), as (numerator, k) with the actual
    /// function = numerator / unit^k. Numerators are regular outside P∞.
    pub fn rr_basis(&self, a: i64, b: i64) -> Result<(Vec<Biv>, i64), KernelError> {
        if a.abs() > self.window || b.abs() > self.window {
            return Err(KernelError::Range { a, b, window: self.window });
        }
        if a + b < 0 {
            return Ok((Vec::new(), 0));
        }
        let (a2, b2, k) = self.normalize(a, b);
        let funcs = self
            .ech
            .poles
            .iter()
            .zip(&self.ech.vanish)
            .zip(&self.ech.funcs)
            .filter(|&((&pole, &v), _)| pole <= a2 && v >= -b2)
            .map(|(_, func)| func.clone())
            .collect();
        Ok((funcs, k))
    }
}
