//! Divisor-level services on top of the kernel: dense dimension tables over a
//! window with class-reduction fallbacks, Γ-membership, two-point floors and
//! ceilings, and cache persistence.
//!
//! Divisor classes are periodic under (a, b) -> (a+e, b-e), so any query is
//! answered from the canonical representative (deg - r, r) with r = b mod e;
//! degrees outside [0, 2g-2] fall back to the analytic values.

use crate::ffkernel::Kernel;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("floor undefined: l({0}) = 0")]
    FloorUndefined(TwoPointDivisor),
    #[error("cache file does not match: {0}")]
    CacheMismatch(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad cache json: {0}")]
    Json(#[from] serde_json::Error),
}

/// aP + bQ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoPointDivisor {
    pub a: i64,
    pub b: i64,
}

/// Shorthand constructor.
pub const fn d2(a: i64, b: i64) -> TwoPointDivisor {
    TwoPointDivisor { a, b }
}

impl TwoPointDivisor {
    pub const ZERO: TwoPointDivisor = d2(0, 0);

    pub fn deg(&self) -> i64 {
        self.a + self.b
    }

    /// Componentwise partial order.
    pub fn leq(&self, other: &TwoPointDivisor) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    pub fn is_effective(&self) -> bool {
        self.a >= 0 && self.b >= 0
    }

    pub fn min(&self, other: &TwoPointDivisor) -> TwoPointDivisor {
        d2(self.a.min(other.a), self.b.min(other.b))
    }

    pub fn coeff(&self, pt: Pt) -> i64 {
        match pt {
            Pt::P => self.a,
            Pt::Q => self.b,
        }
    }

    /// Support within {P, Q}.
    pub fn support(&self) -> PointSet {
        let mut s = PointSet::EMPTY;
        if self.a != 0 {
            s = s.insert(Pt::P);
        }
        if self.b != 0 {
            s = s.insert(Pt::Q);
        }
        s
    }
}

impl Add for TwoPointDivisor {
    type Output = TwoPointDivisor;
    fn add(self, o: TwoPointDivisor) -> TwoPointDivisor {
        d2(self.a + o.a, self.b + o.b)
    }
}

impl Sub for TwoPointDivisor {
    type Output = TwoPointDivisor;
    fn sub(self, o: TwoPointDivisor) -> TwoPointDivisor {
        d2(self.a - o.a, self.b - o.b)
    }
}

impl Neg for TwoPointDivisor {
    type Output = TwoPointDivisor;
    fn neg(self) -> TwoPointDivisor {
        d2(-self.a, -self.b)
    }
}

impl fmt::Display for TwoPointDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 0 && self.b == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        if self.a != 0 {
            write!(f, "{}P", self.a)?;
            first = false;
        }
        if self.b != 0 {
            if !first && self.b > 0 {
                write!(f, "+")?;
            }
            write!(f, "{}Q", self.b)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pt {
    P,
    Q,
}

impl Pt {
    pub const BOTH: [Pt; 2] = [Pt::P, Pt::Q];

    pub fn delta(&self) -> TwoPointDivisor {
        match self {
            Pt::P => d2(1, 0),
            Pt::Q => d2(0, 1),
        }
    }

    pub fn other(&self) -> Pt {
        match self {
            Pt::P => Pt::Q,
            Pt::Q => Pt::P,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Pt::P => "P",
            Pt::Q => "Q",
        }
    }
}

impl fmt::Display for Pt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Subset of {P, Q}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PointSet(u8);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);
    pub const ONLY_P: PointSet = PointSet(1);
    pub const ONLY_Q: PointSet = PointSet(2);
    pub const BOTH: PointSet = PointSet(3);

    pub fn of(pt: Pt) -> PointSet {
        PointSet::EMPTY.insert(pt)
    }

    pub fn contains(&self, pt: Pt) -> bool {
        self.0 & PointSet::of_bit(pt) != 0
    }

    fn of_bit(pt: Pt) -> u8 {
        match pt {
            Pt::P => 1,
            Pt::Q => 2,
        }
    }

    #[must_use]
    pub fn insert(&self, pt: Pt) -> PointSet {
        PointSet(self.0 | PointSet::of_bit(pt))
    }

    pub fn union(&self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Pt> + '_ {
        Pt::BOTH.into_iter().filter(|pt| self.contains(*pt))
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for pt in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", pt)?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl Serialize for PointSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let names: Vec<&str> = self.iter().map(|pt| pt.name()).collect();
        names.serialize(s)
    }
}

/// Dense table of l(aP + bQ) over a window, with analytic fallbacks for
/// anything outside.
#[derive(Debug, Serialize, Deserialize)]
pub struct DimensionTable {
    pub curve: String,
    pub genus: i64,
    pub e: i64,
    pub a_lo: i64,
    pub a_hi: i64,
    pub b_lo: i64,
    pub b_hi: i64,
    vals: Vec<i64>,
}

impl DimensionTable {
    /// Default bound-computation window: a, b in [-(2g+e), deg_cap + 2g + e].
    pub fn build_default(kernel: &Kernel) -> DimensionTable {
        Self::build_with_deg_cap(kernel, 2 * kernel.genus - 1)
    }

    /// Same shape, but sized so designed classes up to degree `deg_cap` can
    /// be searched.
    pub fn build_with_deg_cap(kernel: &Kernel, deg_cap: i64) -> DimensionTable {
        let (g, e) = (kernel.genus, kernel.e);
        let lo = -(2 * g + e);
        let hi = deg_cap.max(2 * g - 1) + 2 * g + e;
        Self::build(kernel, lo, hi, lo, hi)
    }

    pub fn build(kernel: &Kernel, a_lo: i64, a_hi: i64, b_lo: i64, b_hi: i64) -> DimensionTable {
        let (g, e) = (kernel.genus, kernel.e);
        // The window must contain every canonical class representative
        // (deg - r, r), deg in [0, 2g-2], r in [0, e-1].
        assert!(a_lo <= -(e - 1) && a_hi >= 2 * g - 2 && b_lo <= 0 && b_hi >= e - 1);
        let rows: Vec<Vec<i64>> = (a_lo..=a_hi)
            .into_par_iter()
            .map(|a| {
                (b_lo..=b_hi)
                    .map(|b| kernel.rr_dim(a, b).expect("table window within kernel window"))
                    .collect()
            })
            .collect();
        let vals = rows.concat();
        let t = DimensionTable {
            curve: kernel.curve.id.as_str().to_string(),
            genus: g,
            e,
            a_lo,
            a_hi,
            b_lo,
            b_hi,
            vals,
        };
        // Sweep consistency: one step changes the dimension by 0 or 1.
        for a in a_lo..=a_hi {
            for b in b_lo..=b_hi {
                let l = t.raw(a, b).unwrap();
                if a > a_lo {
                    let d = l - t.raw(a - 1, b).unwrap();
                    assert!(d == 0 || d == 1, "dimension sweep inconsistency at ({a},{b})");
                }
                if b > b_lo {
                    let d = l - t.raw(a, b - 1).unwrap();
                    assert!(d == 0 || d == 1, "dimension sweep inconsistency at ({a},{b})");
                }
            }
        }
        t
    }

    /// Stored value, window hits only.
    pub fn raw(&self, a: i64, b: i64) -> Option<i64> {
        if a < self.a_lo || a > self.a_hi || b < self.b_lo || b > self.b_hi {
            return None;
        }
        let ncols = (self.b_hi - self.b_lo + 1) as usize;
        Some(self.vals[(a - self.a_lo) as usize * ncols + (b - self.b_lo) as usize])
    }

    /// l(aP + bQ) for arbitrary coefficients, via class reduction.
    pub fn dim(&self, d: TwoPointDivisor) -> i64 {
        let deg = d.deg();
        if deg < 0 {
            return 0;
        }
        if deg > 2 * self.genus - 2 {
            return deg + 1 - self.genus;
        }
        let r = d.b.rem_euclid(self.e);
        self.raw(deg - r, r).expect("class representative inside window")
    }

    /// A ∈ Γ_pt ⟺ L(A) ≠ L(A - pt).
    pub fn gamma_membership(&self, d: TwoPointDivisor, pt: Pt) -> bool {
        self.dim(d) != self.dim(d - pt.delta())
    }

    /// Minimal A' ≤ A with two-point support and L(A') = L(A).
    pub fn two_point_floor(&self, d: TwoPointDivisor) -> Result<TwoPointDivisor, TableError> {
        let l = self.dim(d);
        if l < 1 {
            return Err(TableError::FloorUndefined(d));
        }
        let mut cur = d;
        loop {
            let before = cur;
            for pt in Pt::BOTH {
                while self.dim(cur - pt.delta()) == l {
                    cur = cur - pt.delta();
                }
            }
            if cur == before {
                return Ok(cur);
            }
        }
    }

    /// Max k ≥ 0 with l(A + k·pt) = l(A). Finite: past degree 2g-2 every
    /// step adds dimension.
    pub fn ceiling_extent(&self, d: TwoPointDivisor, pt: Pt) -> i64 {
        let l = self.dim(d);
        let mut k = 0i64;
        let mut cur = d;
        while self.dim(cur + pt.delta()) == l {
            cur = cur + pt.delta();
            k += 1;
            assert!(k <= 4 * self.genus + self.e + 8, "ceiling extent runaway");
        }
        k
    }

    pub fn canonical(&self) -> TwoPointDivisor {
        d2(2 * self.genus - 2, 0)
    }

    /// The degenerate class (∼ 0) for which the order machinery would need
    /// the out-of-scope refinement.
    pub fn is_zero_class(&self, c: TwoPointDivisor) -> bool {
        c.deg() == 0 && c.b.rem_euclid(self.e) == 0
    }

    // ----- persistence -----

    fn checksum(&self) -> u64 {
        fn eat(h: u64, byte: u8) -> u64 {
            (h ^ byte as u64).wrapping_mul(0x100000001b3)
        }
        let mut h: u64 = 0xcbf29ce484222325;
        for &byte in self.curve.as_bytes() {
            h = eat(h, byte);
        }
        let nums = [self.genus, self.e, self.a_lo, self.a_hi, self.b_lo, self.b_hi];
        for x in nums.iter().chain(self.vals.iter()) {
            for byte in x.to_le_bytes() {
                h = eat(h, byte);
            }
        }
        h
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), TableError> {
        #[derive(Serialize)]
        struct Envelope<'a> {
            format: u32,
            checksum: u64,
            table: &'a DimensionTable,
        }
        let env = Envelope { format: 1, checksum: self.checksum(), table: self };
        std::fs::write(path, serde_json::to_vec(&env)?)?;
        Ok(())
    }

    pub fn load(path: &std::path::Path, curve: &str) -> Result<DimensionTable, TableError> {
        #[derive(Deserialize)]
        struct Envelope {
            format: u32,
            checksum: u64,
            table: DimensionTable,
        }
        let env: Envelope = serde_json::from_slice(&std::fs::read(path)?)?;
        if env.format != 1 {
            return Err(TableError::CacheMismatch(format!("format {}", env.format)));
        }
        if env.table.curve != curve {
            return Err(TableError::CacheMismatch(format!(
                "curve {} (wanted {curve})",
                env.table.curve
            )));
        }
        if env.table.checksum() != env.checksum {
            return Err(TableError::CacheMismatch("checksum".into()));
        }
        Ok(env.table)
    }

    pub fn export_csv(&self, out: &mut dyn std::io::Write) -> Result<(), TableError> {
        writeln!(out, "a,b,l")?;
        for a in self.a_lo..=self.a_hi {
            for b in self.b_lo..=self.b_hi {
                writeln!(out, "{a},{b},{}", self.raw(a, b).unwrap())?;
            }
        }
        Ok(())
    }
}

/// Closed-form two-point dimension count on the Hermitian curve over
/// F_{q0^2}: L(aP∞ + bP0) has the monomial basis x^i y^j with 0 ≤ i ≤ q0,
/// j ∈ Z, pole order at P∞ (= i·q0 + j(q0+1)) at most a and vanishing order
/// at P0 (= i + j(q0+1)) at least -b.
pub fn hermitian_closed_form_dim(q0: i64, a: i64, b: i64) -> i64 {
    let m = q0 + 1;
    let mut count = 0;
    for i in 0..=q0 {
        let hi = (a - i * q0).div_euclid(m);
        let lo = -((b + i).div_euclid(m));
        if hi >= lo {
            count += hi - lo + 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn divisor_display_and_order() {
        assert_eq!(d2(22, 6).to_string(), "22P+6Q");
        assert_eq!(d2(-4, 6).to_string(), "-4P+6Q");
        assert_eq!(d2(14, 0).to_string(), "14P");
        assert_eq!(d2(0, -2).to_string(), "-2Q");
        assert_eq!(d2(0, 0).to_string(), "0");
        assert!(d2(1, 2).leq(&d2(1, 3)));
        assert!(!d2(2, 2).leq(&d2(1, 3)));
        assert_eq!(d2(3, -1).support(), PointSet::BOTH);
        assert_eq!(d2(3, 0).support(), PointSet::ONLY_P);
    }

    #[test]
    fn pointset_basics() {
        assert_eq!(PointSet::BOTH.to_string(), "{P,Q}");
        assert_eq!(PointSet::EMPTY.to_string(), "{}");
        assert!(PointSet::ONLY_P.is_subset(&PointSet::BOTH));
        assert!(!PointSet::BOTH.is_subset(&PointSet::ONLY_Q));
        assert_eq!(PointSet::ONLY_Q.len(), 1);
    }

    #[test]
    fn table_dimension_values() {
        let t = fixtures::suzuki8_table();
        assert_eq!(t.dim(d2(26, 0)), 14);
        assert_eq!(t.dim(d2(0, 0)), 1);
        assert_eq!(t.dim(d2(-1, 0)), 0);
        assert_eq!(t.dim(d2(8, 0)), 2);
        // Class reduction answers far outside the window.
        assert_eq!(t.dim(d2(1000, -990)), t.dim(d2(1000 - 13 * 76, -990 + 13 * 76)));
    }

    #[test]
    fn gamma_membership_examples() {
        let t = fixtures::suzuki8_table();
        assert!(t.gamma_membership(d2(0, 0), Pt::P));
        assert!(t.gamma_membership(d2(8, 0), Pt::P));
        assert!(!t.gamma_membership(d2(11, -6), Pt::P));
        // Fallback consistency.
        assert!(t.gamma_membership(d2(40, 0), Pt::P)); // deg > 2g-2
        assert!(!t.gamma_membership(d2(-3, 0), Pt::Q)); // deg < 0
    }

    #[test]
    fn floors() {
        let t = fixtures::suzuki8_table();
        assert_eq!(t.two_point_floor(d2(14, 0)).unwrap(), d2(13, 0));
        assert_eq!(t.two_point_floor(d2(0, 0)).unwrap(), d2(0, 0));
        assert_eq!(t.two_point_floor(d2(8, 0)).unwrap(), d2(8, 0));
        assert!(t.two_point_floor(d2(-1, 0)).is_err());
    }

    #[test]
    fn floor_idempotent_and_strip_order_independent() {
        let t = fixtures::suzuki8_table();
        for a in -6..=20 {
            for b in -6..=13 {
                let d = d2(a, b);
                if t.dim(d) < 1 {
                    continue;
                }
                let fl = t.two_point_floor(d).unwrap();
                assert_eq!(t.dim(fl), t.dim(d));
                assert_eq!(t.two_point_floor(fl).unwrap(), fl);
                assert!(fl.leq(&d));
                // Q-first stripping reaches the same fixed point.
                let l = t.dim(d);
                let mut cur = d;
                loop {
                    let before = cur;
                    for pt in [Pt::Q, Pt::P] {
                        while t.dim(cur - pt.delta()) == l {
                            cur = cur - pt.delta();
                        }
                    }
                    if cur == before {
                        break;
                    }
                }
                assert_eq!(cur, fl);
            }
        }
    }

    #[test]
    fn ceiling_extents() {
        let t = fixtures::suzuki8_table();
        assert_eq!(t.ceiling_extent(d2(0, 0), Pt::P), 7);
        // 26P sits exactly at degree 2g-2 with l = g, and l(27P) = 27+1-g = g
        // still, so one free step remains before dimensions start growing.
        assert_eq!(t.ceiling_extent(d2(26, 0), Pt::P), 1);
        assert_eq!(t.ceiling_extent(d2(27, 0), Pt::P), 0);
        assert_eq!(t.ceiling_extent(d2(30, 0), Pt::Q), 0);
        // Strictly past 2g-2 the extent is always 0.
        for a in (2 * t.genus - 1)..(2 * t.genus + 5) {
            assert_eq!(t.ceiling_extent(d2(a, 0), Pt::P), 0);
        }
    }

    #[test]
    fn hermitian_oracle_matches_kernel() {
        let k = fixtures::herm2_kernel();
        for a in -25..=25 {
            for b in -25..=25 {
                assert_eq!(
                    k.rr_dim(a, b).unwrap(),
                    hermitian_closed_form_dim(2, a, b),
                    "mismatch at ({a},{b})"
                );
            }
        }
    }

    #[test]
    fn cache_roundtrip_and_checksum() {
        let t = fixtures::herm2_table();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("herm2.json");
        t.save(&path).unwrap();
        let back = DimensionTable::load(&path, "hermitian2").unwrap();
        assert_eq!(back.dim(d2(5, 2)), t.dim(d2(5, 2)));
        assert!(DimensionTable::load(&path, "suzuki8").is_err());
        // Corrupt a value: checksum must catch it.
        let text = std::fs::read_to_string(&path).unwrap();
        let bad = text.replacen("\"vals\":[0", "\"vals\":[1", 1);
        assert_ne!(text, bad);
        std::fs::write(&path, bad).unwrap();
        assert!(DimensionTable::load(&path, "hermitian2").is_err());
    }

    #[test]
    fn csv_export_shape() {
        let t = fixtures::herm2_table();
        let mut buf = Vec::new();
        t.export_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "a,b,l");
        let expect = ((t.a_hi - t.a_lo + 1) * (t.b_hi - t.b_lo + 1)) as usize;
        assert_eq!(lines.len(), expect + 1);
    }
}
