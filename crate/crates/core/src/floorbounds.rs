//! Floor-type and mixed lower bounds for the minimum distance of residue
//! codes C_Ω(D, G).
//!
//! Every bound here is a function of the designed class C = G − K alone and
//! comes with a witness decomposition K + C = A + B + Z (Z ≥ 0) plus the
//! avoid-set of points that D must miss for the bound to apply. Searches run
//! over the two-point family inside the dimension table's window.
//!
//! The d_MMP bound is not a separate routine: it is the A+Z = B+Z = H special
//! case of `lm_bound` and is subsumed by its search.

use crate::tables::{d2, DimensionTable, PointSet, Pt, TwoPointDivisor};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FloorError {
    /// −C is effective, so 0 lies in Γ(C;S,∅) and the plain γ machinery
    /// degenerates; the Γ* refinement that would rescue it is out of scope.
    #[error("class {0} has l(-C) > 0; bound not applicable without the Γ* refinement")]
    DegenerateClass(TwoPointDivisor),
}

/// Decomposition K + C = A + B + Z certifying a bound value, with the
/// auxiliary A′ ≤ A, B′ ≤ B used by the mixed (+δ) bounds when they fire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(rename = "A")]
    pub a: TwoPointDivisor,
    #[serde(rename = "B")]
    pub b: TwoPointDivisor,
    #[serde(rename = "Z")]
    pub z: TwoPointDivisor,
    #[serde(rename = "Aprime")]
    pub aprime: Option<TwoPointDivisor>,
    #[serde(rename = "Bprime")]
    pub bprime: Option<TwoPointDivisor>,
}

impl Witness {
    fn plain(a: TwoPointDivisor, b: TwoPointDivisor, z: TwoPointDivisor) -> Witness {
        Witness { a, b, z, aprime: None, bprime: None }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub value: i64,
    pub witness: Option<Witness>,
    pub avoid_set: PointSet,
    /// Step-string path witness; used by the order bounds, absent here.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

impl BoundReport {
    fn new(name: &str, value: i64, witness: Witness, avoid_set: PointSet) -> BoundReport {
        BoundReport { name: name.to_string(), value, witness: Some(witness), avoid_set, path: None }
    }
}

/// ∅ < {P} < {Q} < {P,Q}: the reporting preference order for avoid-sets.
fn avoid_rank(s: PointSet) -> u8 {
    (s.contains(Pt::P) as u8) + 2 * (s.contains(Pt::Q) as u8)
}

/// Reporting tie-break among equal-valued witnesses: smaller avoid-set, then
/// lexicographically smallest (deg Z, Z_P).
fn witness_key(avoid: PointSet, z: TwoPointDivisor) -> (u8, i64, i64) {
    (avoid_rank(avoid), z.deg(), z.a)
}

fn f_of(t: &DimensionTable, c: TwoPointDivisor, x: TwoPointDivisor) -> i64 {
    t.dim(x) - t.dim(x - c)
}

fn kc_of(t: &DimensionTable, c: TwoPointDivisor) -> TwoPointDivisor {
    t.canonical() + c
}

/// d_GOP: the designed distance deg(G − K), reported raw.
pub fn goppa_bound(c: TwoPointDivisor) -> i64 {
    c.deg()
}

/// d_BPT: deg C + 1 when the (effective) class C has a base point at P or Q.
pub fn base_point_bound(t: &DimensionTable, c: TwoPointDivisor) -> Result<i64, FloorError> {
    if t.dim(-c) != 0 {
        return Err(FloorError::DegenerateClass(c));
    }
    let l = t.dim(c);
    let based = l >= 1 && Pt::BOTH.iter().any(|&pt| !t.gamma_membership(c, pt));
    Ok(if based { c.deg() + 1 } else { c.deg() })
}

/// d_LM: max of deg C + deg Z over K+C = A+B+Z with Z ≥ 0, L(A+Z) = L(A) and
/// L(B+Z) = L(B).
///
/// Search: for each class of Y = B+Z with l(Y) ≥ 1 the valid B form the
/// interval [⌊Y⌋, Y]; for the other condition, scan b ≥ 0 with
/// l(K+C−Y+bQ) = l(K+C−Y) and read off the P-extent at K+C−Y+bQ, capping the
/// gain componentwise at the floor slack of Y.
pub fn lm_bound(t: &DimensionTable, c: TwoPointDivisor) -> BoundReport {
    let kc = kc_of(t, c);
    let zero = Witness::plain(kc, TwoPointDivisor::ZERO, TwoPointDivisor::ZERO);
    let mut best = (c.deg(), witness_key(PointSet::EMPTY, TwoPointDivisor::ZERO), zero);
    for dy in 0..=(2 * t.genus - 1) {
        for r in 0..t.e {
            let y = d2(dy - r, r);
            if t.dim(y) < 1 {
                continue;
            }
            let fl = y - t.two_point_floor(y).expect("l(Y) >= 1");
            if fl == TwoPointDivisor::ZERO {
                continue;
            }
            let x = kc - y;
            for zb in 0..=t.ceiling_extent(x, Pt::Q) {
                let za = t.ceiling_extent(x + d2(0, zb), Pt::P);
                let z = d2(za.min(fl.a), zb.min(fl.b));
                let value = c.deg() + z.deg();
                let key = witness_key(z.support(), z);
                if value > best.0 || (value == best.0 && key < best.1) {
                    best = (value, key, Witness::plain(x, y - z, z));
                }
            }
        }
    }
    let (value, _, w) = best;
    BoundReport::new("d_LM", value, w, w.z.support())
}

/// d_GST (one-parameter form): max over B with l(B) ≥ 1 of
/// deg C + l(B−C) − l(⌊B⌋−C), i.e. deg C + f(⌊B⌋) − f(B).
pub fn gst_bound(t: &DimensionTable, c: TwoPointDivisor) -> BoundReport {
    let kc = kc_of(t, c);
    let zero = Witness::plain(kc, TwoPointDivisor::ZERO, TwoPointDivisor::ZERO);
    let mut best = (c.deg(), witness_key(PointSet::EMPTY, TwoPointDivisor::ZERO), zero);
    for db in 0..=(2 * t.genus - 1) {
        for r in 0..t.e {
            let b = d2(db - r, r);
            if t.dim(b) < 1 {
                continue;
            }
            let floor = t.two_point_floor(b).expect("l(B) >= 1");
            let z = b - floor;
            let value = c.deg() + f_of(t, c, floor) - f_of(t, c, b);
            let key = witness_key(z.support(), z);
            if value > best.0 || (value == best.0 && key < best.1) {
                best = (value, key, Witness::plain(kc - b, floor, z));
            }
        }
    }
    let (value, _, w) = best;
    BoundReport::new("d_GST", value, w, w.z.support())
}

/// d_ABZ: deg C + max over W of [max_{B ≤ W} f(B) − f(W)].
pub fn abz_bound(t: &DimensionTable, c: TwoPointDivisor) -> BoundReport {
    abz_search(t, c, false)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedMode {
    /// Theorem form: unrestricted A′ ≤ A, B′ ≤ B, gain up to +2 over d_ABZ.
    Full,
    /// Corollary form (d_GST2): A′ = B+P shape, gain +1, plus the d_LM floor.
    Gst2,
}

/// d_ABZ+ (full) or d_GST2 (gst2): the mixed bounds.
pub fn abz_plus_bound(t: &DimensionTable, c: TwoPointDivisor, mode: MixedMode) -> BoundReport {
    match mode {
        MixedMode::Full => abz_search(t, c, true),
        MixedMode::Gst2 => gst2_bound(t, c),
    }
}

/// Theorem value of a decomposition: f(A) + f(B) plus one per verified
/// auxiliary divisor. Panics if the witness is malformed; used to certify
/// that every reported witness reproduces its reported value.
pub fn evaluate_decomposition(t: &DimensionTable, c: TwoPointDivisor, w: &Witness) -> i64 {
    assert_eq!(w.a + w.b + w.z, kc_of(t, c), "witness must decompose K + C");
    assert!(w.z.is_effective(), "witness Z must be effective");
    let sigma = w.z.support();
    let mut value = f_of(t, c, w.a) + f_of(t, c, w.b);
    for (outer, prime) in [(w.a, w.aprime), (w.b, w.bprime)] {
        let Some(p) = prime else { continue };
        assert!(verify_delta(t, c, outer, p, sigma), "auxiliary divisor fails the δ conditions");
        value += 1;
    }
    value
}

/// The δ(A) = 1 certificate of the mixed bound: A′ ≤ A with support of A−A′
/// inside supp Z, condition 1 at some point of Z, and condition 2 (A−C ∈ Γ_Q)
/// at every point Q actually stepped through, i.e. Q with A′ ≤ A−Q ≤ A.
fn verify_delta(
    t: &DimensionTable,
    c: TwoPointDivisor,
    a: TwoPointDivisor,
    aprime: TwoPointDivisor,
    sigma: PointSet,
) -> bool {
    aprime.leq(&a)
        && (a - aprime).support().is_subset(&sigma)
        && cond1_at(t, c, aprime, sigma)
        && (a - aprime).support().iter().all(|q| t.gamma_membership(a - c, q))
}

/// Condition 1 of the mixed bound at A′: some P ∈ σ with A′ ∉ Γ_P and
/// A′ − C ∈ Γ_P.
fn cond1_at(t: &DimensionTable, c: TwoPointDivisor, x: TwoPointDivisor, sigma: PointSet) -> bool {
    sigma.iter().any(|p| !t.gamma_membership(x, p) && t.gamma_membership(x - c, p))
}

/// σ index order used by the grid machinery: {P}, {Q}, {P,Q}.
const SIGMAS: [PointSet; 3] = [PointSet::ONLY_P, PointSet::ONLY_Q, PointSet::BOTH];

/// Class-indexed δ_σ data for one designed class. All δ conditions are
/// functions of the divisor class (deg, b mod e), and the A′-cone
/// reachabilities are running ORs over degree, so the whole search lives on
/// the class cylinder.
///
/// Condition 2 only constrains the points actually stepped through from A to
/// A′, so the grid tracks, per σ, where condition 1 is reachable through pure
/// P-steps, pure Q-steps, and mixed steps separately, and charges each route
/// only its own Γ-membership tests.
struct DeltaGrid {
    dlo: i64,
    dhi: i64,
    e: i64,
    c1: Vec<[bool; 3]>,
    via_p: Vec<[bool; 3]>,
    via_q: Vec<[bool; 3]>,
    via_pq: Vec<bool>,
    delta: Vec<[bool; 3]>,
}

impl DeltaGrid {
    fn build(t: &DimensionTable, c: TwoPointDivisor, dhi: i64) -> DeltaGrid {
        // Condition 1 needs l(A′ − C) ≥ 1, impossible below degree deg C.
        let dlo = c.deg();
        let e = t.e;
        let n = ((dhi - dlo + 1) * e) as usize;
        let mut g = DeltaGrid {
            dlo,
            dhi,
            e,
            c1: vec![[false; 3]; n],
            via_p: vec![[false; 3]; n],
            via_q: vec![[false; 3]; n],
            via_pq: vec![false; n],
            delta: vec![[false; 3]; n],
        };
        for d in dlo..=dhi {
            for r in 0..e {
                let x = d2(d - r, r);
                let i = g.idx(d, r);
                // A′ − P keeps the residue; A′ − Q shifts it down.
                let prev = (d > dlo).then(|| (g.idx(d - 1, r), g.idx(d - 1, (r + e - 1) % e)));
                for (s, &sigma) in SIGMAS.iter().enumerate() {
                    let c1 = cond1_at(t, c, x, sigma);
                    g.c1[i][s] = c1;
                    g.via_p[i][s] = c1 || prev.is_some_and(|(ip, _)| g.via_p[ip][s]);
                    g.via_q[i][s] = c1 || prev.is_some_and(|(_, iq)| g.via_q[iq][s]);
                }
                g.via_pq[i] = g.c1[i][2]
                    || prev.is_some_and(|(ip, iq)| g.via_pq[ip] || g.via_pq[iq]);
                let in_gamma = |pt: Pt| t.gamma_membership(x - c, pt);
                g.delta[i][0] = g.c1[i][0] || (g.via_p[i][0] && in_gamma(Pt::P));
                g.delta[i][1] = g.c1[i][1] || (g.via_q[i][1] && in_gamma(Pt::Q));
                g.delta[i][2] = g.c1[i][2]
                    || (g.via_p[i][2] && in_gamma(Pt::P))
                    || (g.via_q[i][2] && in_gamma(Pt::Q))
                    || (g.via_pq[i] && in_gamma(Pt::P) && in_gamma(Pt::Q));
            }
        }
        g
    }

    fn idx(&self, d: i64, r: i64) -> usize {
        ((d - self.dlo) * self.e + r) as usize
    }

    fn cell(&self, x: TwoPointDivisor) -> Option<usize> {
        let d = x.deg();
        if d < self.dlo {
            return None;
        }
        assert!(d <= self.dhi, "δ grid query above its band");
        Some(self.idx(d, x.b.rem_euclid(self.e)))
    }

    fn delta_at(&self, x: TwoPointDivisor, s: usize) -> bool {
        self.cell(x).is_some_and(|i| self.delta[i][s])
    }

    /// Reconstruct a concrete A′ for a divisor with δ_σ = 1 by walking one of
    /// the reachability cones down until condition 1 holds on the nose.
    fn find_prime(
        &self,
        t: &DimensionTable,
        c: TwoPointDivisor,
        mut x: TwoPointDivisor,
        s: usize,
    ) -> TwoPointDivisor {
        let i = self.cell(x).expect("find_prime on a divisor without δ");
        if self.c1[i][s] {
            return x;
        }
        let in_gamma = |pt: Pt| t.gamma_membership(x - c, pt);
        // Pick a firing route and descend it; each step stays inside the
        // route's own reachability cone.
        if self.via_p[i][s] && in_gamma(Pt::P) {
            while !self.c1[self.cell(x).unwrap()][s] {
                x = x - Pt::P.delta();
            }
        } else if self.via_q[i][s] && in_gamma(Pt::Q) {
            while !self.c1[self.cell(x).unwrap()][s] {
                x = x - Pt::Q.delta();
            }
        } else {
            debug_assert!(s == 2 && self.via_pq[i] && in_gamma(Pt::P) && in_gamma(Pt::Q));
            loop {
                let i = self.cell(x).unwrap();
                if self.c1[i][2] {
                    break;
                }
                let via_p_below = self
                    .cell(x - Pt::P.delta())
                    .is_some_and(|j| self.via_pq[j]);
                x = x - if via_p_below { Pt::P.delta() } else { Pt::Q.delta() };
            }
        }
        x
    }
}

/// Prefer the candidate divisor that leaves the smaller Z: larger degree,
/// then larger P-coefficient.
fn better_b(cur: TwoPointDivisor, cand: TwoPointDivisor) -> bool {
    (cand.deg(), cand.a) > (cur.deg(), cur.a)
}

/// Shared engine for d_ABZ (`mixed = false`) and d_ABZ+ (`mixed = true`):
/// per exact Z-support σ, a running cone maximum of f(B) (+ δ_σ(B)) feeds the
/// sweep over W = B + Z, with δ_σ(K+C−W) added in the mixed case.
fn abz_search(t: &DimensionTable, c: TwoPointDivisor, mixed: bool) -> BoundReport {
    let kc = kc_of(t, c);
    let (lo, hi) = (t.a_lo, t.a_hi);
    let n = (hi - lo + 1) as usize;
    let at = |a: i64, b: i64| ((a - lo) as usize) * n + (b - lo) as usize;
    let grid = mixed.then(|| {
        let dhi = (2 * hi).max(kc.deg() - 2 * lo);
        DeltaGrid::build(t, c, dhi)
    });

    let mut fv = vec![0i64; n * n];
    for a in lo..=hi {
        for b in lo..=hi {
            fv[at(a, b)] = f_of(t, c, d2(a, b));
        }
    }
    let cone_val = |a: i64, b: i64, s: usize| {
        fv[at(a, b)]
            + grid.as_ref().map_or(0, |g| g.delta_at(d2(a, b), s) as i64)
    };

    // cone[s][W] = best (f(B) + δ_σ(B), B) over B ≤ W with W − B of exact
    // support σ.
    const NONE: (i64, TwoPointDivisor) = (i64::MIN / 4, TwoPointDivisor::ZERO);
    let mut cone = vec![vec![NONE; n * n]; 3];
    let mut full = vec![NONE; n * n]; // running max including B = W, for σ = {P,Q}
    for a in lo..=hi {
        for b in lo..=hi {
            let i = at(a, b);
            let merge = |slot: &mut (i64, TwoPointDivisor), cand: (i64, TwoPointDivisor)| {
                if cand.0 > slot.0 || (cand.0 == slot.0 && better_b(slot.1, cand.1)) {
                    *slot = cand;
                }
            };
            if a > lo {
                let c0 = (cone_val(a - 1, b, 0), d2(a - 1, b));
                merge(&mut cone[0][i], c0);
                let prev = cone[0][at(a - 1, b)];
                merge(&mut cone[0][i], prev);
            }
            if b > lo {
                let c1 = (cone_val(a, b - 1, 1), d2(a, b - 1));
                merge(&mut cone[1][i], c1);
                let prev = cone[1][at(a, b - 1)];
                merge(&mut cone[1][i], prev);
            }
            let mut m = (cone_val(a, b, 2), d2(a, b));
            if a > lo {
                let prev = full[at(a - 1, b)];
                merge(&mut m, prev);
            }
            if b > lo {
                let prev = full[at(a, b - 1)];
                merge(&mut m, prev);
            }
            full[i] = m;
            if a > lo && b > lo {
                cone[2][i] = full[at(a - 1, b - 1)];
            }
        }
    }

    // σ = ∅ baseline: B = W, value deg C.
    let zero = Witness::plain(kc, TwoPointDivisor::ZERO, TwoPointDivisor::ZERO);
    let mut best = (c.deg(), witness_key(PointSet::EMPTY, TwoPointDivisor::ZERO), zero);
    for wa in lo..=hi {
        for wb in lo..=hi {
            let w = d2(wa, wb);
            let i = at(wa, wb);
            for s in 0..3 {
                let (bv, bdiv) = cone[s][i];
                if bv <= i64::MIN / 4 {
                    continue;
                }
                let a_div = kc - w;
                let bonus = grid.as_ref().map_or(0, |g| g.delta_at(a_div, s) as i64);
                let value = c.deg() + bv - fv[i] + bonus;
                let z = w - bdiv;
                let key = witness_key(z.support(), z);
                if value > best.0 || (value == best.0 && key < best.1) {
                    let (aprime, bprime) = match &grid {
                        Some(g) => (
                            g.delta_at(a_div, s).then(|| g.find_prime(t, c, a_div, s)),
                            g.delta_at(bdiv, s).then(|| g.find_prime(t, c, bdiv, s)),
                        ),
                        None => (None, None),
                    };
                    best = (value, key, Witness { a: a_div, b: bdiv, z, aprime, bprime });
                }
            }
        }
    }
    let (value, _, w) = best;
    let name = if mixed { "d_ABZ+" } else { "d_ABZ" };
    BoundReport::new(name, value, w, w.z.support())
}

/// d_GST2: the corollary form of the mixed bound — Ā = A+Z, B with
/// supp(Ā−B) ⊆ supp Z, L(Ā) = L(Ā−Z), L(B) = L(B+Z+Q) for all Q ∈ supp Z,
/// and B+Z+P ≤ Ā for some P ∈ supp Z — giving deg C + deg Z + 1, floored by
/// d_LM (which the published bound subsumes).
fn gst2_bound(t: &DimensionTable, c: TwoPointDivisor) -> BoundReport {
    let kc = kc_of(t, c);
    let mut best = lm_bound(t, c);
    best.name = "d_GST2".to_string();
    let (lo, hi) = (t.a_lo, t.a_hi);
    for ba in lo..=hi {
        for bb in lo..=hi {
            let b = d2(ba, bb);
            let abar = kc - b;
            let za_cap = (abar.a - b.a).min(hi);
            let zb_cap = (abar.b - b.b).min(hi);
            if za_cap < 0 || zb_cap < 0 || c.deg() + za_cap + zb_cap <= best.value {
                continue;
            }
            let lb = t.dim(b);
            let labar = t.dim(abar);
            let need = abar - b; // condition 2: supp(Ā−B) ⊆ supp Z
            'za: for za in 0..=za_cap {
                if za >= 1 && t.dim(b + d2(za, 0)) != lb {
                    break 'za;
                }
                for zb in 0..=zb_cap {
                    let z = d2(za, zb);
                    if z == TwoPointDivisor::ZERO {
                        continue;
                    }
                    if zb >= 1 && t.dim(b + z) != lb {
                        break;
                    }
                    if t.dim(abar - z) != labar {
                        break;
                    }
                    let sigma = z.support();
                    if !need.support().is_subset(&sigma) {
                        continue;
                    }
                    if !sigma.iter().all(|q| t.dim(b + z + q.delta()) == lb) {
                        continue;
                    }
                    let Some(p4) = sigma.iter().find(|p| (b + z + p.delta()).leq(&abar)) else {
                        continue;
                    };
                    let value = c.deg() + z.deg() + 1;
                    let avoid = abar.support().union(b.support()).union(sigma);
                    let key = witness_key(avoid, z);
                    let better = value > best.value
                        || (value == best.value
                            && best
                                .witness
                                .map_or(true, |w| key < witness_key(best.avoid_set, w.z)));
                    if better {
                        let w = Witness {
                            a: abar - z,
                            b,
                            z,
                            aprime: Some(b + p4.delta()),
                            bprime: None,
                        };
                        best = BoundReport::new("d_GST2", value, w, avoid);
                    }
                }
            }
        }
    }
    best
}
