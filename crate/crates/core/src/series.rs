//! Truncated power series in the uniformizer t = x at the origin place.
//!
//! A series holds exactly `prec` coefficients (orders 0..prec). All series in
//! one kernel computation share the same precision, so arithmetic never has
//! to track precision loss beyond plain truncation.

use crate::field::SmallField;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    pub c: Vec<u16>,
}

impl Series {
    pub fn zero(prec: usize) -> Series {
        Series { c: vec![0; prec] }
    }

    pub fn from_poly(p: &Poly, prec: usize) -> Series {
        let mut c = vec![0u16; prec];
        for (i, &v) in p.iter().enumerate().take(prec) {
            c[i] = v;
        }
        Series { c }
    }

    pub fn prec(&self) -> usize {
        self.c.len()
    }

    /// Order of the lowest nonzero coefficient; None if zero to precision.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|&v| v != 0)
    }

    pub fn add(&self, f: &SmallField, other: &Series) -> Series {
        assert_eq!(self.prec(), other.prec());
        Series { c: self.c.iter().zip(&other.c).map(|(&a, &b)| f.add(a, b)).collect() }
    }

    pub fn sub(&self, f: &SmallField, other: &Series) -> Series {
        assert_eq!(self.prec(), other.prec());
        Series { c: self.c.iter().zip(&other.c).map(|(&a, &b)| f.sub(a, b)).collect() }
    }

    pub fn scale(&self, f: &SmallField, s: u16) -> Series {
        Series { c: self.c.iter().map(|&a| f.mul(a, s)).collect() }
    }

    pub fn mul(&self, f: &SmallField, other: &Series) -> Series {
        assert_eq!(self.prec(), other.prec());
        let prec = self.prec();
        let mut c = vec![0u16; prec];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().take(prec - i).enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Series { c }
    }

    /// Multiply by t^n, discarding coefficients pushed past the precision.
    pub fn shift_up(&self, n: usize) -> Series {
        let prec = self.prec();
        let mut c = vec![0u16; prec];
        for i in 0..prec.saturating_sub(n) {
            c[i + n] = self.c[i];
        }
        Series { c }
    }

    /// Multiplicative inverse; requires a unit (nonzero constant term).
    pub fn invert(&self, f: &SmallField) -> Series {
        assert!(self.c[0] != 0, "series inverse requires a unit");
        let prec = self.prec();
        let a0 = f.inv(self.c[0]);
        let mut c = vec![0u16; prec];
        c[0] = a0;
        for n in 1..prec {
            let mut acc = 0u16;
            for k in 1..=n {
                acc = f.add(acc, f.mul(self.c[k], c[n - k]));
            }
            c[n] = f.neg(f.mul(a0, acc));
        }
        Series { c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_product() {
        let f = SmallField::new(2, 3).unwrap();
        let s = Series::from_poly(&vec![1, 1, 0, 1], 8); // 1 + t + t^3
        let inv = s.invert(&f);
        let one = s.mul(&f, &inv);
        assert_eq!(one.c[0], 1);
        assert!(one.c[1..].iter().all(|&v| v == 0));
    }

    #[test]
    fn shift_and_valuation() {
        let f = SmallField::new(2, 2).unwrap();
        let s = Series::from_poly(&vec![0, 1], 5); // t
        assert_eq!(s.valuation(), Some(1));
        let t3 = s.shift_up(2);
        assert_eq!(t3.valuation(), Some(3));
        assert_eq!(Series::zero(4).valuation(), None);
        let sq = s.mul(&f, &s);
        assert_eq!(sq.valuation(), Some(2));
    }
}
