//! Order bounds computed as path optimization over the two-point divisor
//! grid.
//!
//! Everything here estimates γ(C;S,S′), the minimal degree of a divisor
//! class that is base-point free along S and stays so after subtracting C
//! along S′. A monotone walk through divisor classes picks up weight +1 on
//! an edge into A through a point of S′ where A has no base point but A−C
//! does, and weight −1 on an edge through a point outside S where the
//! situation is reversed; the total over any walk is a valid lower bound.
//! Since dimensions only depend on the divisor class, walks live on a
//! cylinder indexed by (degree, Q-coefficient mod e) rather than on the
//! full grid.
//!
//! The classical bounds differ only in the walk shapes they admit — a
//! straight line for the Beelen bound, a line with a single bend for ABZ′,
//! an unrestricted walk for DP/DK — and in how per-class estimates are
//! aggregated over the cone C + λ, λ ≥ 0 (semigroup form, greedy sequence
//! form, or a plain cone minimum for DK).

use serde::Serialize;

use crate::tables::{d2, DimensionTable, PointSet, Pt, TwoPointDivisor};

/// Representative divisor of the class with the given degree and
/// Q-coefficient residue.
fn rep(d: i64, r: i64) -> TwoPointDivisor {
    d2(d - r, r)
}

/// Degree window on which edge weights can be nonzero: below it both L(A)
/// and L(A−C) are trivial, above it both grow by one every step.
fn window(t: &DimensionTable, c: TwoPointDivisor) -> (i64, i64) {
    let lo = 0.min(c.deg()) - 1;
    let hi = (2 * t.genus - 2).max(2 * t.genus - 2 + c.deg()) + 1;
    (lo, hi)
}

/// Weight of the edge arriving at `a` through `pt`.
fn edge_weight(
    t: &DimensionTable,
    c: TwoPointDivisor,
    a: TwoPointDivisor,
    pt: Pt,
    s: PointSet,
    sprime: PointSet,
) -> i64 {
    let here = t.gamma_membership(a, pt);
    let shifted = t.gamma_membership(a - c, pt);
    if sprime.contains(pt) && here && !shifted {
        1
    } else if !s.contains(pt) && !here && shifted {
        -1
    } else {
        0
    }
}

/// Index sets of one walk through the main theorem, with 0-based positions
/// into `steps` (position i refers to the arrival divisor a0 + steps[..=i]).
#[derive(Debug, Clone)]
pub struct MtsOutcome {
    pub delta: Vec<usize>,
    pub delta_prime: Vec<usize>,
    pub bound: i64,
}

/// Evaluates the main theorem on an explicit walk.
pub fn mts_evaluate(
    t: &DimensionTable,
    c: TwoPointDivisor,
    a0: TwoPointDivisor,
    steps: &[Pt],
    s: PointSet,
    sprime: PointSet,
) -> MtsOutcome {
    let mut a = a0;
    let mut delta = Vec::new();
    let mut delta_prime = Vec::new();
    let mut bound = 0;
    for (i, &pt) in steps.iter().enumerate() {
        a = a + pt.delta();
        let here = t.gamma_membership(a, pt);
        let shifted = t.gamma_membership(a - c, pt);
        if here && !shifted {
            delta.push(i);
            if sprime.contains(pt) {
                bound += 1;
            }
        } else if !here && shifted {
            delta_prime.push(i);
            if !s.contains(pt) {
                bound -= 1;
            }
        }
    }
    MtsOutcome { delta, delta_prime, bound }
}

/// γ estimate over straight walks in direction `pt`, optimized over the
/// transverse offset (or pinned to the line through the zero class).
pub fn gamma_line(
    t: &DimensionTable,
    c: TwoPointDivisor,
    pt: Pt,
    s: PointSet,
    sprime: PointSet,
    through_origin: bool,
) -> i64 {
    let e = t.e;
    let (dlo, dhi) = window(t, c);
    let offsets: Vec<i64> = if through_origin { vec![0] } else { (0..e).collect() };
    let mut best = i64::MIN;
    for o in offsets {
        let mut sum = 0;
        for d in dlo + 1..=dhi {
            let r = match pt {
                Pt::P => o,
                Pt::Q => (o + d).rem_euclid(e),
            };
            sum += edge_weight(t, c, rep(d, r), pt, s, sprime);
        }
        best = best.max(sum);
    }
    best
}

/// γ estimate over unrestricted monotone walks (the DP/DK walk shape).
pub fn gamma_free(
    t: &DimensionTable,
    c: TwoPointDivisor,
    s: PointSet,
    sprime: PointSet,
) -> i64 {
    let e = t.e as usize;
    let (dlo, dhi) = window(t, c);
    // cur[r] = best walk value ending at class (d, r); walks may start and
    // stop anywhere, so values are clamped at 0 and the maximum is global.
    let mut cur = vec![0i64; e];
    let mut best = 0i64;
    for d in dlo + 1..=dhi {
        let mut next = vec![i64::MIN; e];
        for r in 0..e {
            let a = rep(d, r as i64);
            let via_p = cur[r] + edge_weight(t, c, a, Pt::P, s, sprime);
            let via_q =
                cur[(r + e - 1) % e] + edge_weight(t, c, a, Pt::Q, s, sprime);
            next[r] = via_p.max(via_q).max(0);
            best = best.max(next[r]);
        }
        cur = next;
    }
    best
}

/// γ estimate over walks in direction `pt` with at most one contiguous
/// run of steps in the other direction (the ABZ′ walk shape: B + iP below,
/// B + Z + iP above the bend). With the bend disabled this is exactly the
/// straight-line estimate.
pub fn gamma_bent(
    t: &DimensionTable,
    c: TwoPointDivisor,
    pt: Pt,
    s: PointSet,
    sprime: PointSet,
    allow_bend: bool,
) -> i64 {
    let e = t.e as usize;
    let (dlo, dhi) = window(t, c);
    let other = pt.other();
    let prev_r = |step: Pt, r: usize| -> usize {
        match step {
            Pt::P => r,
            Pt::Q => (r + e - 1) % e,
        }
    };
    const NEG: i64 = i64::MIN / 4;
    // Phases: 0 = before the bend, 1 = inside the bend, 2 = after it.
    let mut cur = [vec![0i64; e], vec![NEG; e], vec![NEG; e]];
    let mut best = 0i64;
    for d in dlo + 1..=dhi {
        let mut next = [vec![NEG; e], vec![NEG; e], vec![NEG; e]];
        for r in 0..e {
            let a = rep(d, r as i64);
            let w_pt = edge_weight(t, c, a, pt, s, sprime);
            let w_ot = edge_weight(t, c, a, other, s, sprime);
            next[0][r] = (cur[0][prev_r(pt, r)] + w_pt).max(0);
            if allow_bend {
                next[1][r] =
                    cur[0][prev_r(other, r)].max(cur[1][prev_r(other, r)]) + w_ot;
                next[2][r] =
                    cur[1][prev_r(pt, r)].max(cur[2][prev_r(pt, r)]) + w_pt;
            }
            best = best.max(next[0][r]).max(next[1][r]).max(next[2][r]);
        }
        cur = next;
    }
    best
}

/// Which walk shape an aggregation uses for its per-edge γ estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeEstimator {
    /// Straight line in the edge direction, S = S′ = {edge point}
    /// (the Beelen bound).
    Line,
    /// Straight line with S widened to all points avoided by D; a
    /// strengthening of the Beelen bound, off for golden-table runs.
    LineFullS,
    /// Line with one bend, S = all points avoided by D (the ABZ′ bound).
    BentLine,
    /// Unrestricted walk, S = all points avoided by D (the DP bound).
    Free,
}

fn raw_edge_label(
    t: &DimensionTable,
    allowed: PointSet,
    est: EdgeEstimator,
    cp: TwoPointDivisor,
    q: Pt,
) -> i64 {
    match est {
        EdgeEstimator::Line => {
            gamma_line(t, cp, q, PointSet::of(q), PointSet::of(q), false)
        }
        EdgeEstimator::LineFullS => gamma_line(t, cp, q, allowed, PointSet::of(q), false),
        EdgeEstimator::BentLine => gamma_bent(t, cp, q, allowed, PointSet::of(q), true),
        EdgeEstimator::Free => gamma_free(t, cp, allowed, PointSet::of(q)),
    }
}

/// Smallest j ≥ 0 with a representative λ = iP + jQ, i ≥ 0, of the cone
/// class at depth `l` and Q-residue offset `r` from the base class.
fn min_q_offset(e: i64, cb: i64, r: i64) -> i64 {
    (r - cb).rem_euclid(e)
}

/// Per-layer monotonized edge labels over the cone {C + λ : λ ≥ 0}. Layer
/// `l` holds, for every class residue, the best estimate seen along
/// non-edge directions (γ(C′+R;S,Q) ≥ γ(C′;S,Q) whenever R avoids Q, so
/// carrying maxima forward is sound and is what makes the semigroup and
/// greedy sequence forms agree).
struct ConeLabels {
    e: i64,
    cb: i64,
    base_deg: i64,
    /// layers[l][r] = (label for P-edge, label for Q-edge), None when the
    /// class is not in the cone yet.
    layers: Vec<Vec<Option<(i64, i64)>>>,
}

impl ConeLabels {
    fn new(t: &DimensionTable, c: TwoPointDivisor) -> ConeLabels {
        ConeLabels {
            e: t.e,
            cb: c.b.rem_euclid(t.e),
            base_deg: c.deg(),
            layers: Vec::new(),
        }
    }

    fn extend_to(
        &mut self,
        t: &DimensionTable,
        allowed: PointSet,
        est: EdgeEstimator,
        depth: usize,
    ) {
        let e = self.e;
        while self.layers.len() <= depth {
            let l = self.layers.len() as i64;
            let mut layer = vec![None; e as usize];
            for r in 0..e {
                if min_q_offset(e, self.cb, r) > l {
                    continue;
                }
                let cp = rep(self.base_deg + l, r);
                let mut lp = if allowed.contains(Pt::P) {
                    raw_edge_label(t, allowed, est, cp, Pt::P)
                } else {
                    i64::MIN
                };
                let mut lq = if allowed.contains(Pt::Q) {
                    raw_edge_label(t, allowed, est, cp, Pt::Q)
                } else {
                    i64::MIN
                };
                if l > 0 {
                    // P-edge labels carry over Q-predecessors and vice versa.
                    if let Some((pp, _)) =
                        self.layers[(l - 1) as usize][((r + e - 1) % e) as usize]
                    {
                        lp = lp.max(pp);
                    }
                    if let Some((_, qq)) = self.layers[(l - 1) as usize][r as usize] {
                        lq = lq.max(qq);
                    }
                }
                layer[r as usize] = Some((lp, lq));
            }
            self.layers.push(layer);
        }
    }

    fn vertex_max(&self, l: usize, r: i64) -> Option<i64> {
        self.layers[l][r as usize].map(|(lp, lq)| lp.max(lq))
    }
}

/// Semigroup-form aggregation (Beelen / DP / ABZ′): minimum over the cone
/// of the best outgoing edge estimate. Sound cutoff: every estimate at
/// C′ = C + λ is at least deg C′, because a straight window-spanning line
/// in an admissible direction picks up deg C′ more gains than losses and
/// the losses are not charged.
pub fn semigroup_bound(
    t: &DimensionTable,
    c: TwoPointDivisor,
    allowed: PointSet,
    est: EdgeEstimator,
) -> i64 {
    assert!(!allowed.is_empty(), "need at least one point avoided by D");
    let mut best = i64::MAX;
    let mut labels = ConeLabels::new(t, c);
    let mut l = 0usize;
    loop {
        if best <= c.deg() + l as i64 {
            return best;
        }
        labels.extend_to(t, allowed, est, l);
        for r in 0..t.e {
            let off = min_q_offset(t.e, labels.cb, r);
            let in_cone = match allowed {
                PointSet::ONLY_P => off == 0,
                PointSet::ONLY_Q => off == (l as i64).rem_euclid(t.e),
                _ => off <= l as i64,
            };
            if !in_cone {
                continue;
            }
            if let Some(v) = labels.vertex_max(l, r) {
                best = best.min(v);
            }
        }
        l += 1;
    }
}

/// Code-level aggregation: the best over filtration chains (monotone walks
/// from C in allowed directions) of the minimum edge label among steps
/// that actually shrink the subcode. Steps where the subcode is unchanged
/// are skipped — a codeword never separates there — and a chain ends once
/// the subcode is zero (`exhausted`). Computed as a max-min dynamic program
/// over the cone, swept far enough that every vertex is exhausted. Returns
/// `None` when the code at C is already zero.
pub fn chain_filtration_bound(
    t: &DimensionTable,
    c: TwoPointDivisor,
    allowed: PointSet,
    est: EdgeEstimator,
    shrinks: &dyn Fn(TwoPointDivisor, Pt) -> bool,
    exhausted: &dyn Fn(TwoPointDivisor) -> bool,
) -> Option<i64> {
    assert!(!allowed.is_empty(), "need at least one point avoided by D");
    let e = t.e;
    let cb = c.b.rem_euclid(e);
    if exhausted(c) {
        return None;
    }
    let in_cone = |l: i64, r: i64| {
        let off = min_q_offset(e, cb, r);
        match allowed {
            PointSet::ONLY_P => off == 0,
            PointSet::ONLY_Q => off == l.rem_euclid(e),
            _ => off <= l,
        }
    };
    // Find the first layer where every cone vertex is exhausted; the
    // subcode dimension is nonincreasing along the cone, so it exists.
    let mut depth = 0usize;
    loop {
        let all_done = (0..e).filter(|&r| in_cone(depth as i64, r)).all(|r| {
            exhausted(rep(c.deg() + depth as i64, r))
        });
        if all_done {
            break;
        }
        depth += 1;
    }
    let mut labels = ConeLabels::new(t, c);
    labels.extend_to(t, allowed, est, depth);
    // values[r] holds the DP value at the current layer, swept backwards;
    // exhausted vertices contribute MAX (no codeword separates beyond).
    let mut values = vec![i64::MAX; e as usize];
    for l in (0..depth as i64).rev() {
        let mut next = vec![i64::MAX; e as usize];
        for r in 0..e {
            if !in_cone(l, r) {
                continue;
            }
            let cp = rep(c.deg() + l, r);
            if exhausted(cp) {
                next[r as usize] = i64::MAX;
                continue;
            }
            let (lp, lq) = labels.layers[l as usize][r as usize].expect("cone label");
            let mut best = i64::MIN;
            if allowed.contains(Pt::P) && in_cone(l + 1, r) {
                let down = values[r as usize];
                best = best.max(if shrinks(cp, Pt::P) { down.min(lp) } else { down });
            }
            if allowed.contains(Pt::Q) && in_cone(l + 1, (r + 1) % e) {
                let down = values[((r + 1) % e) as usize];
                best = best.max(if shrinks(cp, Pt::Q) { down.min(lq) } else { down });
            }
            next[r as usize] = best;
        }
        values = next;
    }
    Some(values[cb as usize])
}

/// Greedy sequence-form aggregation over the same labels: follow the edge
/// with the best estimate, keep the running minimum. Agrees with the
/// semigroup form because the labels are monotonized.
pub fn greedy_sequence_bound(
    t: &DimensionTable,
    c: TwoPointDivisor,
    allowed: PointSet,
    est: EdgeEstimator,
) -> i64 {
    assert!(!allowed.is_empty(), "need at least one point avoided by D");
    let mut best = i64::MAX;
    let mut labels = ConeLabels::new(t, c);
    let mut l = 0usize;
    let mut r = c.b.rem_euclid(t.e);
    loop {
        if best <= c.deg() + l as i64 {
            return best;
        }
        labels.extend_to(t, allowed, est, l);
        let (lp, lq) = labels.layers[l][r as usize].expect("walk stays in the cone");
        if lp >= lq {
            best = best.min(lp);
        } else {
            best = best.min(lq);
            r = (r + 1) % t.e;
        }
        l += 1;
    }
}

/// DK aggregation: plain minimum of the vertex estimates γ(C+λ;S,S) over
/// the cone. No monotonization is available for vertex labels (λ steps lie
/// in S′ itself), but none is needed for the cone minimum.
pub fn dk_bound(t: &DimensionTable, c: TwoPointDivisor, allowed: PointSet) -> i64 {
    assert!(!allowed.is_empty(), "need at least one point avoided by D");
    let e = t.e;
    let cb = c.b.rem_euclid(e);
    let mut best = i64::MAX;
    let mut l = 0i64;
    loop {
        if best <= c.deg() + l {
            return best;
        }
        for r in 0..e {
            let off = min_q_offset(e, cb, r);
            let in_cone = match allowed {
                PointSet::ONLY_P => off == 0,
                PointSet::ONLY_Q => off == l.rem_euclid(e),
                _ => off <= l,
            };
            if in_cone {
                best = best.min(gamma_free(t, rep(c.deg() + l, r), allowed, allowed));
            }
        }
        l += 1;
    }
}

/// One-point ray aggregation used by the Feng–Rao and CMST bounds: the
/// coset sequence sticks to a single point.
fn ray_min(
    t: &DimensionTable,
    c: TwoPointDivisor,
    pt: Pt,
    through_origin: bool,
) -> i64 {
    let mut best = i64::MAX;
    let mut j = 0i64;
    loop {
        if best <= c.deg() + j {
            return best;
        }
        let cp = c + match pt {
            Pt::P => d2(j, 0),
            Pt::Q => d2(0, j),
        };
        best = best.min(gamma_line(
            t,
            cp,
            pt,
            PointSet::of(pt),
            PointSet::of(pt),
            through_origin,
        ));
        j += 1;
    }
}

pub fn beelen_bound(t: &DimensionTable, c: TwoPointDivisor, allowed: PointSet) -> i64 {
    semigroup_bound(t, c, allowed, EdgeEstimator::Line)
}

pub fn dp_bound(t: &DimensionTable, c: TwoPointDivisor, allowed: PointSet) -> i64 {
    semigroup_bound(t, c, allowed, EdgeEstimator::Free)
}

pub fn abz_prime_bound(t: &DimensionTable, c: TwoPointDivisor, allowed: PointSet) -> i64 {
    semigroup_bound(t, c, allowed, EdgeEstimator::BentLine)
}

pub fn cmst_bound(t: &DimensionTable, c: TwoPointDivisor, allowed: PointSet) -> i64 {
    allowed
        .iter()
        .map(|pt| ray_min(t, c, pt, false))
        .max()
        .expect("need at least one point avoided by D")
}

pub fn feng_rao_bound(t: &DimensionTable, c: TwoPointDivisor, allowed: PointSet) -> i64 {
    allowed
        .iter()
        .map(|pt| ray_min(t, c, pt, true))
        .max()
        .expect("need at least one point avoided by D")
}

/// All order bounds for the code with designed minimum support C, defined
/// with an evaluation divisor disjoint from the points in `allowed`.
/// `None` when L(−C) ≠ 0: those classes need the out-of-scope refinement
/// and every entry would be vacuous.
#[derive(Debug, Clone, Serialize)]
pub struct OrderSuite {
    pub d_fr: i64,
    pub d_cmst: i64,
    pub d_b: i64,
    pub d_abz_prime: i64,
    pub d_dp: i64,
    pub d_dk: i64,
}

pub fn order_bound_suite(
    t: &DimensionTable,
    c: TwoPointDivisor,
    allowed: PointSet,
) -> Option<OrderSuite> {
    if t.dim(d2(0, 0) - c) > 0 {
        return None;
    }
    Some(OrderSuite {
        d_fr: feng_rao_bound(t, c, allowed),
        d_cmst: cmst_bound(t, c, allowed),
        d_b: beelen_bound(t, c, allowed),
        d_abz_prime: abz_prime_bound(t, c, allowed),
        d_dp: dp_bound(t, c, allowed),
        d_dk: dk_bound(t, c, allowed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::suzuki8_table;

    /// Δ/Δ′ as degree indices for the line a0 + (i+1)·pt, i.e. the walk
    /// arriving at divisors of degree a0.deg()+1 ..= a0.deg()+n.
    fn line_deltas(
        t: &DimensionTable,
        c: TwoPointDivisor,
        a0: TwoPointDivisor,
        pt: Pt,
        n: usize,
    ) -> (Vec<i64>, Vec<i64>) {
        let steps = vec![pt; n];
        let out = mts_evaluate(t, c, a0, &steps, PointSet::of(pt), PointSet::of(pt));
        let base = a0.a + 1;
        (
            out.delta.iter().map(|&i| base + i as i64).collect(),
            out.delta_prime.iter().map(|&i| base + i as i64).collect(),
        )
    }

    #[test]
    fn constant_and_translated_lines() {
        let t = suzuki8_table();
        let c = d2(-3, 6);
        // A_i = iP, indices are degrees.
        let (delta, delta_prime) = line_deltas(t, c, d2(-1, 0), Pt::P, 32);
        assert_eq!(delta, vec![0, 8, 12, 13, 16, 24]);
        assert_eq!(delta_prime, vec![17, 19, 27]);
        // A_i = iP + 3Q.
        let (delta, delta_prime) = line_deltas(t, c, d2(-1, 3), Pt::P, 32);
        assert_eq!(delta, vec![0, 8, 11, 12, 13, 16, 24]);
        assert_eq!(delta_prime, vec![7, 9, 15, 17]);
        // The translated line realizes γ(C;P,P) ≥ 7; the origin line only 6.
        assert_eq!(gamma_line(t, c, Pt::P, PointSet::ONLY_P, PointSet::ONLY_P, false), 7);
        assert_eq!(gamma_line(t, c, Pt::P, PointSet::ONLY_P, PointSet::ONLY_P, true), 6);
    }

    #[test]
    fn combined_walk_beats_all_lines() {
        let t = suzuki8_table();
        let c = d2(2, 2);
        let (delta, delta_prime) = line_deltas(t, c, d2(-1, 0), Pt::P, 32);
        assert_eq!(delta, vec![0, 8, 10, 13, 16, 21, 29]);
        assert_eq!(delta_prime, vec![14, 15, 27]);
        let (delta, delta_prime) = line_deltas(t, c, d2(-1, 2), Pt::P, 32);
        assert_eq!(delta, vec![0, 8, 13, 16, 19, 21, 29]);
        assert_eq!(delta_prime, vec![2, 14, 15]);
        // 0, ..., 15P, 15P+Q, 15P+2Q, ..., 29P+2Q with S = {P,Q}, S′ = {P}.
        let mut steps = vec![Pt::P; 16];
        steps.extend([Pt::Q, Pt::Q]);
        steps.extend(vec![Pt::P; 14]);
        let out = mts_evaluate(t, c, d2(-1, 0), &steps, PointSet::BOTH, PointSet::ONLY_P);
        assert_eq!(out.bound, 8);
        assert!(gamma_free(t, c, PointSet::BOTH, PointSet::ONLY_P) >= 8);
    }

    #[test]
    fn free_walks_separate_dp_from_dk() {
        let t = suzuki8_table();
        let c = d2(-5, 8);
        let (delta, delta_prime) = line_deltas(t, c, d2(-1, -3), Pt::P, 36);
        assert_eq!(delta, vec![10, 12, 13, 22, 23, 25]);
        assert_eq!(delta_prime, vec![8, 16, 27]);
        let (delta, delta_prime) = line_deltas(t, c, d2(-1, -2), Pt::P, 36);
        assert_eq!(delta, vec![10, 12, 13, 22, 23, 25]);
        assert_eq!(delta_prime, vec![8, 19, 27]);
        // 10P−3Q, ..., 16P−3Q, 16P−2Q, ..., 25P−2Q with S = {P}, S′ = {P,Q}.
        let mut steps = vec![Pt::P; 7];
        steps.push(Pt::Q);
        steps.extend(vec![Pt::P; 9]);
        let out = mts_evaluate(t, c, d2(9, -3), &steps, PointSet::ONLY_P, PointSet::BOTH);
        assert_eq!(out.bound, 7);
        // Vertex estimate vs the best single-direction edge estimate. The
        // walk above certifies 7; the optimum over all walks is one better
        // (via a detour through 10Q and back to 16P), though the cone
        // aggregation washes that out (d_DK below).
        assert_eq!(gamma_free(t, c, PointSet::BOTH, PointSet::BOTH), 8);
        assert_eq!(gamma_free(t, c, PointSet::BOTH, PointSet::ONLY_P), 6);
        assert_eq!(gamma_free(t, c, PointSet::BOTH, PointSet::ONLY_Q), 6);
        assert_eq!(dk_bound(t, c, PointSet::BOTH), 7);
        assert_eq!(dp_bound(t, c, PointSet::BOTH), 6);
    }

    #[test]
    fn beelen_edge_labels_and_aggregation() {
        let t = suzuki8_table();
        let line = |c: TwoPointDivisor, pt: Pt| {
            gamma_line(t, c, pt, PointSet::of(pt), PointSet::of(pt), false)
        };
        // γ_B values for C = 9P+Q and its cone neighbours.
        assert_eq!(line(d2(9, 1), Pt::P), 13);
        assert_eq!(line(d2(10, 1), Pt::Q), 13);
        assert_eq!(line(d2(10, 2), Pt::Q), 14);
        assert_eq!(line(d2(10, 1), Pt::P), 11);
        assert_eq!(line(d2(11, 1), Pt::P), 14);
        assert_eq!(line(d2(9, 1), Pt::Q), 12);
        assert_eq!(line(d2(9, 2), Pt::Q), 13);
        assert_eq!(line(d2(9, 3), Pt::Q), 13);
        // Constant-point rays undershoot the mixed sequence.
        assert_eq!(ray_min(t, d2(9, 1), Pt::P, false), 11);
        assert_eq!(ray_min(t, d2(9, 1), Pt::Q, false), 12);
        assert_eq!(beelen_bound(t, d2(9, 1), PointSet::BOTH), 13);
    }

    #[test]
    fn duality_on_long_walks() {
        let t = suzuki8_table();
        for c in [d2(-3, 6), d2(2, 2), d2(-5, 8), d2(4, 1), d2(14, 0)] {
            let (dlo, dhi) = window(t, c);
            let n = (dhi - dlo) as usize;
            for (pa, pb) in [(Pt::P, Pt::Q), (Pt::Q, Pt::P)] {
                // Window-spanning staircase: alternate blocks of both steps.
                let mut steps = Vec::with_capacity(n);
                for i in 0..n {
                    steps.push(if i % 3 == 0 { pa } else { pb });
                }
                let a0 = rep(dlo, 0);
                let out =
                    mts_evaluate(t, c, a0, &steps, PointSet::EMPTY, PointSet::BOTH);
                assert_eq!(
                    out.delta.len() as i64 - out.delta_prime.len() as i64,
                    c.deg(),
                    "duality defect at {c:?}"
                );
            }
        }
    }

    #[test]
    fn zero_bend_degenerates_to_line() {
        let t = suzuki8_table();
        for c in [d2(2, 2), d2(-5, 8), d2(4, 1)] {
            for pt in [Pt::P, Pt::Q] {
                let s = PointSet::of(pt);
                assert_eq!(
                    gamma_bent(t, c, pt, s, s, false),
                    gamma_line(t, c, pt, s, s, false)
                );
            }
        }
    }

    #[test]
    fn semigroup_and_greedy_sequence_agree() {
        let t = suzuki8_table();
        for deg in [3i64, 7, 11, 20] {
            for r in 0..t.e {
                let c = rep(deg, r);
                if t.dim(d2(0, 0) - c) > 0 {
                    continue;
                }
                for est in [EdgeEstimator::Line, EdgeEstimator::Free] {
                    assert_eq!(
                        semigroup_bound(t, c, PointSet::BOTH, est),
                        greedy_sequence_bound(t, c, PointSet::BOTH, est),
                        "disagreement at {c:?} {est:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn suite_on_published_rows() {
        let t = suzuki8_table();
        // (C, d_B, d_ABZ′, d_DK) for selected codes G = K + C; None where
        // no published d_DK value exists.
        let rows = [
            (d2(2, 2), 7, 8, Some(8)),    // G = 28P+2Q
            (d2(4, 0), 8, 8, None),       // G = 30P
            (d2(4, 1), 8, 8, Some(8)),    // G = 30P+Q
            (d2(4, 2), 9, 10, Some(10)),  // G = 30P+2Q
            (d2(1, 1), 7, 8, Some(8)),    // G = 27P+Q
            (d2(-1, 1), 6, 6, Some(6)),   // G = 25P+Q
            (d2(-2, 2), 4, 4, Some(4)),   // G = 24P+2Q
            (d2(14, 0), 16, 16, Some(16)), // G = 40P
        ];
        for (c, b, abzp, dk) in rows {
            let s = order_bound_suite(t, c, PointSet::BOTH).expect("nondegenerate");
            assert_eq!(s.d_b, b, "d_B at {c:?}");
            assert_eq!(s.d_abz_prime, abzp, "d_ABZ' at {c:?}");
            if let Some(dk) = dk {
                assert_eq!(s.d_dk, dk, "d_DK at {c:?}");
            }
            assert!(s.d_b <= s.d_abz_prime && s.d_abz_prime <= s.d_dp && s.d_dp <= s.d_dk);
            assert!(s.d_fr <= s.d_cmst);
        }
    }

    #[test]
    fn degenerate_class_is_refused() {
        let t = suzuki8_table();
        assert!(order_bound_suite(t, d2(0, 0), PointSet::BOTH).is_none());
        assert!(order_bound_suite(t, d2(-13, 13), PointSet::BOTH).is_none());
        assert!(order_bound_suite(t, d2(-1, 0), PointSet::BOTH).is_none());
    }
}
