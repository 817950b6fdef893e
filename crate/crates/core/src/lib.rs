//! Distance bounds for algebraic geometric codes with two-point divisor
//! support.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`], [`poly`] — exact arithmetic in small finite fields and
//!   univariate polynomial utilities (resultants by evaluation/interpolation).
//! * [`curve`], [`series`] — built-in plane curve presets and truncated power
//!   series at the origin place.
//! * [`ffkernel`] — function-field kernel: valuations at the two
//!   distinguished places and Riemann–Roch dimensions computed from the curve
//!   equation alone.
//! * [`tables`] — memoized dimension tables, Γ-membership, floors/ceilings,
//!   divisor-class bookkeeping.
//! * [`floorbounds`] — Goppa, base-point, Lundell–McCullough, GST, ABZ and
//!   ABZ+ bounds with witnesses.
//! * [`orderbounds`] — grid-path order bounds (Feng–Rao, Beelen, ABZ′, DP,
//!   DK) and their semigroup/sequence aggregations.
//! * [`codelab`] — actual codes on small Hermitian curves, brute-force
//!   minimum distances, and the bound audit.

pub mod codelab;
pub mod curve;
pub mod ffkernel;
pub mod field;
pub mod floorbounds;
pub mod orderbounds;
pub mod poly;
pub mod series;
pub mod tables;

pub use curve::{CurveId, CurvePreset};
pub use ffkernel::Kernel;
pub use tables::{d2, DimensionTable, PointSet, Pt, TwoPointDivisor};

/// Kernels and tables are expensive to build, so unit tests across modules
/// share lazily built instances.
#[cfg(test)]
pub(crate) mod fixtures {
    use crate::curve::CurveId;
    use crate::ffkernel::Kernel;
    use crate::tables::DimensionTable;
    use once_cell::sync::Lazy;

    static SUZUKI8_KERNEL: Lazy<Kernel> = Lazy::new(|| Kernel::new(CurveId::Suzuki8));
    static SUZUKI8_TABLE: Lazy<DimensionTable> =
        Lazy::new(|| DimensionTable::build_default(suzuki8_kernel()));
    static HERM2_KERNEL: Lazy<Kernel> =
        Lazy::new(|| Kernel::with_window(CurveId::Hermitian2, 60));
    static HERM2_TABLE: Lazy<DimensionTable> =
        Lazy::new(|| DimensionTable::build_with_deg_cap(herm2_kernel(), 8));
    static HERM3_KERNEL: Lazy<Kernel> =
        Lazy::new(|| Kernel::with_window(CurveId::Hermitian3, 60));
    static HERM3_TABLE: Lazy<DimensionTable> =
        Lazy::new(|| DimensionTable::build_with_deg_cap(herm3_kernel(), 26));

    pub fn suzuki8_kernel() -> &'static Kernel {
        &SUZUKI8_KERNEL
    }
    pub fn suzuki8_table() -> &'static DimensionTable {
        &SUZUKI8_TABLE
    }
    pub fn herm2_kernel() -> &'static Kernel {
        &HERM2_KERNEL
    }
    pub fn herm2_table() -> &'static DimensionTable {
        &HERM2_TABLE
    }
    pub fn herm3_kernel() -> &'static Kernel {
        &HERM3_KERNEL
    }
    pub fn herm3_table() -> &'static DimensionTable {
        &HERM3_TABLE
    }
}

