//! Built-in plane curve presets and arithmetic on functions reduced mod the
//! curve equation.
//!
//! Every preset F(x, y) = 0 is monic in y with a single totally ramified
//! place P∞ over x = ∞ and a smooth origin P0 = (0,0) where x is a
//! uniformizer. Functions regular outside P∞ are represented as
//! g = Σ_{j < deg_y F} f_j(x) y^j.

use crate::field::SmallField;
use crate::poly::{
    padd, pderiv, peval, pis_zero, pmul, pneg, pscale, pshift, resultant_x_degree, Poly,
};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("unknown curve id {0:?}")]
    UnknownId(String),
    #[error("valuation of zero")]
    ValuationOfZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveId {
    Hermitian2,
    Hermitian3,
    Hermitian4,
    Suzuki8,
    Suzuki32,
}

impl CurveId {
    pub fn parse(s: &str) -> Result<CurveId, CurveError> {
        match s {
            "hermitian2" => Ok(CurveId::Hermitian2),
            "hermitian3" => Ok(CurveId::Hermitian3),
            "hermitian4" => Ok(CurveId::Hermitian4),
            "suzuki8" => Ok(CurveId::Suzuki8),
            "suzuki32" => Ok(CurveId::Suzuki32),
            other => Err(CurveError::UnknownId(other.to_string())),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CurveId::Hermitian2 => "hermitian2",
            CurveId::Hermitian3 => "hermitian3",
            CurveId::Hermitian4 => "hermitian4",
            CurveId::Suzuki8 => "suzuki8",
            CurveId::Suzuki32 => "suzuki32",
        }
    }
}

/// A function g(x, y), reduced mod F: coefficient polys of y^0..y^{qc-1},
/// trailing zero entries trimmed. The zero function is the empty vector.
pub type Biv = Vec<Poly>;

pub struct CurvePreset {
    pub id: CurveId,
    pub field: Arc<SmallField>,
    /// deg_y F.
    pub qc: usize,
    /// Coefficients f_j(x) of y^j in F, j = 0..=qc; fy[qc] = 1.
    pub fy: Vec<Poly>,
    pub genus: i64,
    /// Rational points including the place at infinity.
    pub rational_point_count: usize,
}

impl CurvePreset {
    pub fn load(id: CurveId) -> CurvePreset {
        let preset = match id {
            CurveId::Hermitian2 => Self::hermitian(2, 2, 1),
            CurveId::Hermitian3 => Self::hermitian(3, 3, 1),
            CurveId::Hermitian4 => Self::hermitian(4, 2, 2),
            CurveId::Suzuki8 => Self::suzuki(8, 2, 10, 3),
            CurveId::Suzuki32 => Self::suzuki(32, 4, 36, 5),
        };
        let mut preset = preset;
        preset.id = id;
        preset.validate();
        preset
    }

    /// Hermitian curve y^q0 + y - x^{q0+1} over F_{q0^2} = F_{p^k}.
    fn hermitian(q0: usize, p: u16, k: u32) -> CurvePreset {
        let field = Arc::new(SmallField::new(p, 2 * k).unwrap());
        let mut fy = vec![Vec::new(); q0 + 1];
        let mut xp = vec![0u16; q0 + 2];
        xp[q0 + 1] = 1;
        fy[0] = pneg(&field, &xp);
        fy[1] = vec![1];
        fy[q0] = padd(&field, &fy[q0].clone(), &[1]);
        CurvePreset {
            id: CurveId::Hermitian2,
            field,
            qc: q0,
            fy,
            genus: (q0 * (q0 - 1) / 2) as i64,
            rational_point_count: q0 * q0 * q0 + 1,
        }
    }

    /// Suzuki curve y^q + y - x^{q+2q0} - x^{q0+1} over F_q, q = 2 q0^2.
    fn suzuki(q: usize, q0: usize, e1: usize, e2: usize) -> CurvePreset {
        let k = (q as f64).log2() as u32;
        let field = Arc::new(SmallField::new(2, k).unwrap());
        let mut f0 = vec![0u16; e1 + 1];
        f0[e1] = 1;
        f0[e2] = 1; // char 2, so -x^{e1} - x^{e2} = x^{e1} + x^{e2}
        let mut fy = vec![Vec::new(); q + 1];
        fy[0] = f0;
        fy[1] = vec![1];
        fy[q] = vec![1];
        CurvePreset {
            id: CurveId::Suzuki8,
            field,
            qc: q,
            fy,
            genus: (q0 * (q - 1)) as i64,
            rational_point_count: q * q + 1,
        }
    }

    fn validate(&self) {
        let f = &*self.field;
        assert_eq!(self.fy[self.qc], vec![1], "F must be monic in y");
        // F(0,0) = 0 and dF/dy(0,0) != 0: the origin is on the curve and
        // smooth with x a uniformizer.
        assert_eq!(self.eval_f(0, 0), 0);
        assert_ne!(peval(f, &self.fy[1], 0), 0, "dF/dy must not vanish at the origin");
        // Affine nonsingularity over the constant field.
        for x in f.elements() {
            for y in f.elements() {
                if self.eval_f(x, y) != 0 {
                    continue;
                }
                let fx = self.eval_fx(x, y);
                let fyv = self.eval_fy(x, y);
                assert!(fx != 0 || fyv != 0, "singular affine point");
            }
        }
    }

    fn eval_f(&self, x: u16, y: u16) -> u16 {
        let f = &*self.field;
        let mut acc = 0u16;
        let mut yp = 1u16;
        for fj in &self.fy {
            acc = f.add(acc, f.mul(peval(f, fj, x), yp));
            yp = f.mul(yp, y);
        }
        acc
    }

    fn eval_fx(&self, x: u16, y: u16) -> u16 {
        let f = &*self.field;
        let mut acc = 0u16;
        let mut yp = 1u16;
        for fj in &self.fy {
            acc = f.add(acc, f.mul(peval(f, &pderiv(f, fj), x), yp));
            yp = f.mul(yp, y);
        }
        acc
    }

    fn eval_fy(&self, x: u16, y: u16) -> u16 {
        let f = &*self.field;
        let mut acc = 0u16;
        let mut yp = 1u16;
        for (j, fj) in self.fy.iter().enumerate().skip(1) {
            acc = f.add(acc, f.int_mul(j as i64, f.mul(peval(f, fj, x), yp)));
            yp = f.mul(yp, y);
        }
        acc
    }

    /// Affine rational points, lexicographic in the element encoding.
    pub fn affine_points(&self) -> Vec<(u16, u16)> {
        let mut out = Vec::new();
        for x in self.field.elements() {
            for y in self.field.elements() {
                if self.eval_f(x, y) == 0 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    // ----- arithmetic on functions reduced mod F -----

    pub fn biv_zero(&self) -> Biv {
        Vec::new()
    }

    pub fn biv_one(&self) -> Biv {
        vec![vec![1]]
    }

    pub fn biv_y(&self) -> Biv {
        vec![Vec::new(), vec![1]]
    }

    pub fn biv_is_zero(&self, g: &Biv) -> bool {
        g.iter().all(|p| pis_zero(p))
    }

    fn biv_trim(&self, mut g: Biv) -> Biv {
        while g.last().map_or(false, |p| pis_zero(p)) {
            g.pop();
        }
        g
    }

    pub fn biv_add(&self, a: &Biv, b: &Biv) -> Biv {
        let f = &*self.field;
        let mut out = vec![Vec::new(); a.len().max(b.len())];
        for (i, p) in a.iter().enumerate() {
            out[i] = p.clone();
        }
        for (i, p) in b.iter().enumerate() {
            out[i] = padd(f, &out[i], p);
        }
        self.biv_trim(out)
    }

    pub fn biv_scale(&self, a: &Biv, s: u16) -> Biv {
        if s == 0 {
            return Vec::new();
        }
        a.iter().map(|p| pscale(&self.field, p, s)).collect()
    }

    /// Multiply by x^n.
    pub fn biv_xshift(&self, a: &Biv, n: usize) -> Biv {
        a.iter().map(|p| pshift(p, n)).collect()
    }

    /// Product reduced mod F via y^qc = -(f_0 + ... + f_{qc-1} y^{qc-1}).
    pub fn biv_mul(&self, a: &Biv, b: &Biv) -> Biv {
        let f = &*self.field;
        if self.biv_is_zero(a) || self.biv_is_zero(b) {
            return Vec::new();
        }
        let mut prod = vec![Vec::new(); a.len() + b.len() - 1];
        for (i, p) in a.iter().enumerate() {
            if pis_zero(p) {
                continue;
            }
            for (j, q) in b.iter().enumerate() {
                prod[i + j] = padd(f, &prod[i + j], &pmul(f, p, q));
            }
        }
        for m in (self.qc..prod.len()).rev() {
            let c = std::mem::take(&mut prod[m]);
            if pis_zero(&c) {
                continue;
            }
            for j in 0..self.qc {
                let term = pneg(f, &pmul(f, &c, &self.fy[j]));
                prod[m - self.qc + j] = padd(f, &prod[m - self.qc + j], &term);
            }
        }
        prod.truncate(self.qc);
        self.biv_trim(prod)
    }

    pub fn biv_eval(&self, g: &Biv, x: u16, y: u16) -> u16 {
        let f = &*self.field;
        let mut acc = 0u16;
        let mut yp = 1u16;
        for p in g {
            acc = f.add(acc, f.mul(peval(f, p, x), yp));
            yp = f.mul(yp, y);
        }
        acc
    }

    /// v_∞(g) = -deg_x Res_y(F, g): the norm valuation at the unique totally
    /// ramified place over x = ∞.
    pub fn val_infinity(&self, g: &Biv) -> Result<i64, CurveError> {
        if self.biv_is_zero(g) {
            return Err(CurveError::ValuationOfZero);
        }
        let d = resultant_x_degree(&self.field, &self.fy, g)
            .expect("resultant of F with a nonzero reduced function is nonzero");
        Ok(-d)
    }
}
