//! Ground truth at desk scale: actual evaluation and residue codes on the
//! small curves, brute-forced minimum distances, the star-product sanity
//! check behind the AB method, and the audit comparing every bound against
//! reality.
//!
//! Codes live on D = rational points away from the two distinguished places,
//! so every bound (whatever its avoid-set) applies. Residue codes are built
//! as duals of evaluation codes; the orthogonality of the two generator
//! matrices is the certificate for that construction.

use crate::ffkernel::{Kernel, KernelError};
use crate::field::SmallField;
use crate::floorbounds::{abz_bound, abz_plus_bound, goppa_bound, gst_bound, lm_bound, MixedMode};
use crate::orderbounds::{
    chain_filtration_bound, order_bound_suite, EdgeEstimator, OrderSuite,
};
use crate::tables::{d2, DimensionTable, PointSet, Pt, TwoPointDivisor};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::Arc;
use thiserror::Error;

/// Hard cap on q^k for exhaustive codeword enumeration.
const ENUMERATION_BUDGET: u64 = 20_000_000;

#[derive(Debug, Error)]
pub enum CodeLabError {
    #[error("kernel window: {0}")]
    Window(#[from] KernelError),
    #[error("an evaluation point meets the support of G")]
    PointMeetsSupport,
    #[error("enumerating {0} messages exceeds the budget; refusing to estimate")]
    BudgetExceeded(u64),
    #[error("zero-dimensional code has no nonzero codewords")]
    EmptyCode,
    #[error("invalid decomposition: {0}")]
    BadDecomposition(String),
}

/// Affine rational points of a preset, in the deterministic scan order.
#[derive(Debug, Clone)]
pub struct RationalPointList {
    pub affine: Vec<(u16, u16)>,
    /// Count including the place at infinity.
    pub total: usize,
}

pub fn rational_points(kernel: &Kernel) -> RationalPointList {
    let affine = kernel.curve.affine_points();
    let total = affine.len() + 1;
    assert_eq!(total, kernel.curve.rational_point_count);
    RationalPointList { affine, total }
}

/// Evaluation points for a two-point code: every affine point except the
/// origin, so both distinguished places stay off D.
pub fn two_point_support(kernel: &Kernel) -> Vec<(u16, u16)> {
    rational_points(kernel).affine.into_iter().filter(|&p| p != (0, 0)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CodeKind {
    /// C_L(D, G): evaluations of L(G).
    Evaluation,
    /// C_Ω(D, G): built as the dual of the evaluation code.
    Residue,
}

impl CodeKind {
    pub fn name(&self) -> &'static str {
        match self {
            CodeKind::Evaluation => "L",
            CodeKind::Residue => "Omega",
        }
    }
}

#[derive(Debug, Clone)]
pub struct LinearCode {
    pub curve: String,
    pub kind: CodeKind,
    pub g: TwoPointDivisor,
    pub n: usize,
    pub k: usize,
    /// k × n generator matrix, rows independent (reduced echelon rows for
    /// evaluation codes, nullspace basis for residue codes).
    pub gen: Vec<Vec<u16>>,
    pub field: Arc<SmallField>,
}

/// Row-reduce in place; returns the nonzero rows and their pivot columns.
fn row_reduce(f: &SmallField, mut mat: Vec<Vec<u16>>) -> (Vec<Vec<u16>>, Vec<usize>) {
    let n = mat.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..n {
        let Some(src) = (row..mat.len()).find(|&i| mat[i][col] != 0) else {
            continue;
        };
        mat.swap(row, src);
        let inv = f.inv(mat[row][col]);
        for v in mat[row].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..mat.len() {
            if i != row && mat[i][col] != 0 {
                let s = mat[i][col];
                for j in 0..n {
                    let t = f.mul(s, mat[row][j]);
                    mat[i][j] = f.sub(mat[i][j], t);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == mat.len() {
            break;
        }
    }
    mat.truncate(row);
    (mat, pivots)
}

/// Basis of the right nullspace of `mat` (vectors v with mat · v = 0).
fn nullspace(f: &SmallField, mat: Vec<Vec<u16>>, n: usize) -> Vec<Vec<u16>> {
    let (rref, pivots) = row_reduce(f, mat);
    let mut out = Vec::new();
    for free in 0..n {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u16; n];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(rref[i][free]);
        }
        out.push(v);
    }
    out
}

/// Evaluate a basis of L(G) at the given points; rows span the evaluation
/// image (they may be dependent as vectors).
fn eval_basis(
    kernel: &Kernel,
    g: TwoPointDivisor,
    points: &[(u16, u16)],
) -> Result<Vec<Vec<u16>>, CodeLabError> {
    let (funcs, kpow) = kernel.rr_basis(g.a, g.b)?;
    let f = &*kernel.curve.field;
    // Functions are numerator / unit^kpow; the unit vanishes only at the
    // origin, so a positive power forbids evaluating there (and G with a
    // pole allowed at the origin forbids it regardless).
    if (kpow > 0 || g.b > 0) && points.contains(&(0, 0)) {
        return Err(CodeLabError::PointMeetsSupport);
    }
    let scale: Vec<u16> = points
        .iter()
        .map(|&(x, y)| {
            if kpow == 0 {
                1
            } else {
                f.pow(f.inv(kernel.curve.biv_eval(&kernel.unit, x, y)), kpow)
            }
        })
        .collect();
    Ok(funcs
        .iter()
        .map(|func| {
            points
                .iter()
                .zip(&scale)
                .map(|(&(x, y), &s)| f.mul(kernel.curve.biv_eval(func, x, y), s))
                .collect()
        })
        .collect())
}

pub fn build_code(
    kernel: &Kernel,
    points: &[(u16, u16)],
    g: TwoPointDivisor,
    kind: CodeKind,
) -> Result<LinearCode, CodeLabError> {
    let f = &kernel.curve.field;
    let n = points.len();
    let rows = eval_basis(kernel, g, points)?;
    let gen = match kind {
        CodeKind::Evaluation => row_reduce(f, rows).0,
        CodeKind::Residue => nullspace(f, rows, n),
    };
    Ok(LinearCode {
        curve: kernel.curve.id.as_str().to_string(),
        kind,
        g,
        n,
        k: gen.len(),
        gen,
        field: kernel.curve.field.clone(),
    })
}

/// Exact count of messages the brute force would touch: q^k.
fn message_count(q: usize, k: usize) -> u64 {
    (q as u64).saturating_pow(k as u32)
}

fn weight(word: &[u16]) -> i64 {
    word.iter().filter(|&&v| v != 0).count() as i64
}

fn min_weight_rec(
    f: &SmallField,
    scaled: &[Vec<Vec<u16>>],
    free: &[usize],
    word: &[u16],
    best: &mut i64,
) {
    let Some((&j, rest)) = free.split_first() else {
        *best = (*best).min(weight(word));
        return;
    };
    min_weight_rec(f, scaled, rest, word, best);
    for s in 1..f.q as u16 {
        let next: Vec<u16> =
            word.iter().zip(&scaled[j][s as usize]).map(|(&a, &b)| f.add(a, b)).collect();
        min_weight_rec(f, scaled, rest, &next, best);
    }
}

/// Exact minimum distance by exhaustive enumeration, one representative per
/// scalar class (leading message symbol normalized to 1). Deterministic and
/// parallel over (leading position, next symbol) stripes.
pub fn exact_min_distance(code: &LinearCode) -> Result<i64, CodeLabError> {
    if code.k == 0 {
        return Err(CodeLabError::EmptyCode);
    }
    let f = &*code.field;
    let q = f.q;
    let msgs = message_count(q, code.k);
    if msgs > ENUMERATION_BUDGET {
        return Err(CodeLabError::BudgetExceeded(msgs));
    }
    let scaled: Vec<Vec<Vec<u16>>> = code
        .gen
        .iter()
        .map(|row| (0..q as u16).map(|s| row.iter().map(|&v| f.mul(v, s)).collect()).collect())
        .collect();
    let mut stripes: Vec<(usize, Option<u16>)> = Vec::new();
    for lead in 0..code.k {
        if lead + 1 < code.k {
            for s in 0..q as u16 {
                stripes.push((lead, Some(s)));
            }
        } else {
            stripes.push((lead, None));
        }
    }
    let d = stripes
        .par_iter()
        .map(|&(lead, first)| {
            let mut word = scaled[lead][1].clone();
            let mut free: Vec<usize> = (lead + 1..code.k).collect();
            if let Some(s) = first {
                let j = free.remove(0);
                for (w, v) in word.iter_mut().zip(&scaled[j][s as usize]) {
                    *w = f.add(*w, *v);
                }
            }
            let mut best = i64::MAX;
            min_weight_rec(f, &scaled, &free, &word, &mut best);
            best
        })
        .min()
        .expect("at least one stripe");
    Ok(d)
}

fn star(f: &SmallField, a: &[u16], b: &[u16]) -> Vec<u16> {
    a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)).collect()
}

fn dot(f: &SmallField, a: &[u16], b: &[u16]) -> u16 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Check the star-product mechanics behind the AB method for G = A + B + Z:
/// every product of L(A)- and L(B)-evaluations must be orthogonal to
/// C_Ω(D, G), and every codeword c of C_Ω(D, G) must satisfy
/// wt(c) ≥ dim(c ∗ C_L(D,A)) + dim(c ∗ C_L(D,B)).
pub fn star_product_check(
    kernel: &Kernel,
    points: &[(u16, u16)],
    a: TwoPointDivisor,
    b: TwoPointDivisor,
    z: TwoPointDivisor,
) -> Result<bool, CodeLabError> {
    if !z.is_effective() {
        return Err(CodeLabError::BadDecomposition(format!("Z = {z} is not effective")));
    }
    let f = &*kernel.curve.field;
    let g = a + b + z;
    let a_rows = eval_basis(kernel, a, points)?;
    let b_rows = eval_basis(kernel, b, points)?;
    let omega = build_code(kernel, points, g, CodeKind::Residue)?;
    for fa in &a_rows {
        for fb in &b_rows {
            let p = star(f, fa, fb);
            if omega.gen.iter().any(|w| dot(f, &p, w) != 0) {
                return Ok(false);
            }
        }
    }
    if omega.k == 0 {
        return Ok(true);
    }
    let msgs = message_count(f.q, omega.k);
    if msgs > ENUMERATION_BUDGET {
        return Err(CodeLabError::BudgetExceeded(msgs));
    }
    // Enumerate every nonzero codeword (scalars don't change either side,
    // but the full loop is cheap at desk scale) via an odometer on messages.
    let mut digits = vec![0u16; omega.k];
    let mut word = vec![0u16; omega.n];
    loop {
        let mut i = 0;
        loop {
            if i == omega.k {
                return Ok(true);
            }
            if digits[i] as usize + 1 < f.q {
                digits[i] += 1;
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        for (j, w) in word.iter_mut().enumerate() {
            *w = digits
                .iter()
                .zip(&omega.gen)
                .fold(0, |acc, (&s, row)| f.add(acc, f.mul(s, row[j])));
        }
        let ra = row_reduce(f, a_rows.iter().map(|r| star(f, &word, r)).collect()).0.len();
        let rb = row_reduce(f, b_rows.iter().map(|r| star(f, &word, r)).collect()).0.len();
        if weight(&word) < (ra + rb) as i64 {
            return Ok(false);
        }
    }
}

/// Every bound the toolkit computes for one designed class, floor family
/// then order family.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundProfile {
    pub goppa: i64,
    pub lm: i64,
    pub gst: i64,
    pub gst2: i64,
    pub abz: i64,
    pub abz_plus: i64,
    pub beelen: i64,
    pub abz_prime: i64,
    pub dp: i64,
    pub dk: i64,
}

impl BoundProfile {
    pub fn max(&self) -> i64 {
        // The chains end at d_DK and d_ABZ+ ≤ d_ABZ′; d_DK dominates.
        self.dk
    }
}

/// All bounds for a designed class; `None` when the class is degenerate
/// (l(−C) > 0), where the plain γ machinery does not apply.
pub fn bound_profile(t: &DimensionTable, c: TwoPointDivisor) -> Option<BoundProfile> {
    let OrderSuite { d_b, d_abz_prime, d_dp, d_dk, .. } =
        order_bound_suite(t, c, PointSet::BOTH)?;
    Some(BoundProfile {
        goppa: goppa_bound(c),
        lm: lm_bound(t, c).value,
        gst: gst_bound(t, c).value,
        gst2: abz_plus_bound(t, c, MixedMode::Gst2).value,
        abz: abz_bound(t, c).value,
        abz_plus: abz_plus_bound(t, c, MixedMode::Full).value,
        beelen: d_b,
        abz_prime: d_abz_prime,
        dp: d_dp,
        dk: d_dk,
    })
}

/// Beelen's bound at code level for a code with designed class C on an
/// evaluation support of class `d_class`: the class sweep of the Beelen
/// bound, restricted to filtration steps G′−pt → G′ = K+C′ where the
/// subcode C_Ω(D, G′) is strictly smaller than C_Ω(D, G′−pt). Near
/// deg C = n the class function saturates at deg C while the code-level
/// bound keeps climbing, which is what makes it exact on the Hermitian
/// curves. `None` means the code is zero.
pub fn beelen_code_bound(
    t: &DimensionTable,
    c: TwoPointDivisor,
    d_class: TwoPointDivisor,
) -> Option<i64> {
    let kdiv = t.canonical();
    let n = d_class.deg();
    // h(X) = dim C_L(D, X); the residue code at X has dimension n − h(X).
    let h = |x: TwoPointDivisor| t.dim(x) - t.dim(x - d_class);
    let shrinks = |cp: TwoPointDivisor, pt: Pt| {
        let g1 = kdiv + cp;
        h(g1 + pt.delta()) - h(g1) == 1
    };
    let exhausted = |cp: TwoPointDivisor| h(kdiv + cp) == n;
    chain_filtration_bound(t, c, PointSet::BOTH, EdgeEstimator::Line, &shrinks, &exhausted)
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditRow {
    pub kind: CodeKind,
    pub g: TwoPointDivisor,
    pub n: usize,
    pub k: usize,
    /// Reduced representative of the designed class (G − K for residue
    /// codes, D − G for evaluation codes).
    pub designed: TwoPointDivisor,
    pub bounds: BoundProfile,
    /// Code-level Beelen bound (filtration steps restricted to actual
    /// subcode drops); the value the Hermitian exactness claim is about.
    pub beelen_code: i64,
    /// Exact brute-forced distance; `None` marks skipped(budget).
    pub exact: Option<i64>,
    pub safety_ok: bool,
    pub beelen_exact: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    pub curve: String,
    pub rows: Vec<AuditRow>,
    pub violations: usize,
    pub beelen_misses: usize,
    pub skipped: usize,
}

fn class_rep(e: i64, deg: i64, b: i64) -> TwoPointDivisor {
    let r = b.rem_euclid(e);
    d2(deg - r, r)
}

/// Audit every two-point code with designed residue class degree in
/// [1, max_degc]: both the residue code C_Ω(D, K+C) and the evaluation code
/// C_L(D, K+C) on D = affine points minus the origin. For each row, checks
/// that no bound exceeds the exact distance and whether the Beelen bound
/// attains it; rows beyond the enumeration budget are reported as skipped.
pub fn audit_bounds(kernel: &Kernel, t: &DimensionTable, max_degc: i64) -> AuditReport {
    let points = two_point_support(kernel);
    let n_aff = (points.len() + 1) as i64;
    let mut rows = Vec::new();
    for deg in 1..=max_degc {
        for r in 0..t.e {
            let c = class_rep(t.e, deg, r);
            if t.dim(TwoPointDivisor::ZERO - c) > 0 {
                continue;
            }
            let g = t.canonical() + c;
            let l_designed = class_rep(t.e, n_aff - 1 - g.deg(), -1 - g.b);
            for (kind, designed) in
                [(CodeKind::Residue, c), (CodeKind::Evaluation, l_designed)]
            {
                if t.dim(TwoPointDivisor::ZERO - designed) > 0 {
                    continue;
                }
                let Some(bounds) = bound_profile(t, designed) else { continue };
                let d_class = d2(n_aff, -1);
                let beelen_code = beelen_code_bound(t, designed, d_class)
                    .expect("audited codes are nonzero");
                assert!(beelen_code >= bounds.beelen);
                let code = build_code(kernel, &points, g, kind).expect("audit window");
                let exact = match exact_min_distance(&code) {
                    Ok(d) => Some(d),
                    Err(CodeLabError::BudgetExceeded(_)) => None,
                    Err(e) => panic!("audit brute force: {e}"),
                };
                rows.push(AuditRow {
                    kind,
                    g,
                    n: code.n,
                    k: code.k,
                    designed,
                    bounds,
                    beelen_code,
                    exact,
                    safety_ok: exact.map_or(true, |d| bounds.max() <= d && beelen_code <= d),
                    beelen_exact: exact.map_or(true, |d| beelen_code == d),
                });
            }
        }
    }
    let violations = rows.iter().filter(|r| !r.safety_ok).count();
    let beelen_misses =
        rows.iter().filter(|r| r.exact.is_some() && !r.beelen_exact).count();
    let skipped = rows.iter().filter(|r| r.exact.is_none()).count();
    AuditReport { curve: kernel.curve.id.as_str().to_string(), rows, violations, beelen_misses, skipped }
}

pub fn write_audit_csv(
    report: &AuditReport,
    out: &mut dyn std::io::Write,
) -> std::io::Result<()> {
    writeln!(
        out,
        "kind,G,n,k,designed,d_exact,d_GOP,d_LM,d_GST,d_GST2,d_ABZ,d_ABZplus,d_B,d_ABZprime,d_DP,d_DK,d_B_code,safety,beelen_exact"
    )?;
    for r in &report.rows {
        let exact =
            r.exact.map_or_else(|| "skipped(budget)".to_string(), |d| d.to_string());
        let b = &r.bounds;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.kind.name(),
            r.g,
            r.n,
            r.k,
            r.designed,
            exact,
            b.goppa,
            b.lm,
            b.gst,
            b.gst2,
            b.abz,
            b.abz_plus,
            b.beelen,
            b.abz_prime,
            b.dp,
            b.dk,
            r.beelen_code,
            if r.safety_ok { "ok" } else { "VIOLATION" },
            if r.exact.is_none() { "-" } else if r.beelen_exact { "yes" } else { "no" },
        )?;
    }
    Ok(())
}
