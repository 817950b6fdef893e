//! Acceptance suite: one test per release criterion, each printing a single
//! `ACCEPTANCE criterion N: PASS/FAIL/SKIP — ...` line (run with
//! `--nocapture` to see them for passing tests too). Criterion 6 is a known
//! honest failure: six cells of the published thirty-row table cannot be
//! reproduced from the stated hypotheses (four d_GST2 cells) or are exceeded
//! by provably sound witnesses (two d_ABZ+ cells); the test states the
//! analysis and fails rather than weakening the check.

use std::sync::OnceLock;
use std::time::Instant;

use agcb::goldens;
use agcb::{cmd_reproduce, improvement_sweep, RunConfig};
use agcb_core::codelab::{audit_bounds, bound_profile};
use agcb_core::floorbounds::{
    abz_bound, abz_plus_bound, evaluate_decomposition, goppa_bound, gst_bound, lm_bound,
    MixedMode, Witness,
};
use agcb_core::orderbounds::{
    beelen_bound, dk_bound, dp_bound, gamma_bent, gamma_free, gamma_line,
    greedy_sequence_bound, mts_evaluate, semigroup_bound, EdgeEstimator,
};
use agcb_core::tables::hermitian_closed_form_dim;
use agcb_core::{d2, CurveId, DimensionTable, Kernel, PointSet, Pt, TwoPointDivisor};

static SUZUKI8_KERNEL: OnceLock<Kernel> = OnceLock::new();
static SUZUKI8_TABLE: OnceLock<DimensionTable> = OnceLock::new();

fn kernel() -> &'static Kernel {
    SUZUKI8_KERNEL.get_or_init(|| Kernel::new(CurveId::Suzuki8))
}

fn table() -> &'static DimensionTable {
    SUZUKI8_TABLE.get_or_init(|| DimensionTable::build_default(kernel()))
}

fn cfg() -> RunConfig {
    RunConfig::new(CurveId::Suzuki8)
}

/// Prints the criterion line; panics when any check failed.
fn finish(n: u8, label: &str, started: Instant, fails: Vec<String>) {
    let secs = started.elapsed().as_secs_f64();
    if fails.is_empty() {
        println!("ACCEPTANCE criterion {n}: PASS — {label} ({secs:.1} s)");
    } else {
        println!("ACCEPTANCE criterion {n}: FAIL — {label} ({secs:.1} s)");
        for f in &fails {
            println!("  {f}");
        }
        panic!("criterion {n} failed; details above");
    }
}

macro_rules! expect {
    ($fails:ident, $cond:expr, $($msg:tt)*) => {
        if !$cond {
            $fails.push(format!($($msg)*));
        }
    };
}

#[test]
fn criterion_01_kernel_validity() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let k = kernel();
    let (g, e, w) = (k.genus, k.e, k.window);
    expect!(fails, g == 14, "genus: want 14, got {g}");
    expect!(fails, e == 13, "torsion order: want 13, got {e}");
    let lk = k.rr_dim(2 * g - 2, 0).unwrap();
    expect!(fails, lk == g, "canonical witness: l(26P) = {lk}, want {g}");
    let qc = k.curve.qc as i64;
    let weight_genus: i64 = k.weights.iter().map(|w| w / qc).sum();
    expect!(fails, weight_genus == g, "Apéry weights: sum w/{qc} = {weight_genus}, want {g}");
    // Riemann–Roch functional equation l(A) − l(K−A) = deg A − g + 1 and
    // the closed forms it implies, on the full default window (every A with
    // both A and K − A inside the window).
    let mut rr = true;
    for a in (2 * g - 2 - w)..=w {
        for b in -w..=w {
            let l = k.rr_dim(a, b).unwrap();
            let dual = k.rr_dim(2 * g - 2 - a, -b).unwrap();
            let deg = a + b;
            rr &= l - dual == deg - g + 1;
            rr &= if deg < 0 { l == 0 } else { l >= deg + 1 - g && l <= deg.max(0) + 1 };
            if deg > 2 * g - 2 {
                rr &= l == deg + 1 - g;
            }
        }
    }
    expect!(fails, rr, "Riemann–Roch functional equation fails on the window");
    finish(1, "suzuki8 kernel validity on the full default window", started, fails);
}

#[test]
fn criterion_02_hermitian_oracle() {
    let started = Instant::now();
    let mut fails = Vec::new();
    for (id, q0) in [
        (CurveId::Hermitian2, 2),
        (CurveId::Hermitian3, 3),
        (CurveId::Hermitian4, 4),
    ] {
        let k = Kernel::with_window(id, 60);
        let mut bad = 0usize;
        for a in -60..=60 {
            for b in -60..=60 {
                if k.rr_dim(a, b).unwrap() != hermitian_closed_form_dim(q0, a, b) {
                    bad += 1;
                }
            }
        }
        expect!(fails, bad == 0, "{}: {bad} cells disagree with the closed form", id.as_str());
    }
    finish(2, "Hermitian closed form = kernel on |a|,|b| <= 60, q0 in {2,3,4}", started, fails);
}

#[test]
fn criterion_03_worked_examples() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let t = table();

    // Constant line A_i = iP against C = −3P+6Q: Δ and Δ′ as degree sets.
    let c = d2(-3, 6);
    let out = mts_evaluate(t, c, d2(-1, 0), &[Pt::P; 32], PointSet::ONLY_P, PointSet::ONLY_P);
    let degs = |v: &[usize]| v.iter().map(|&i| i as i64).collect::<Vec<_>>();
    expect!(fails, degs(&out.delta) == [0, 8, 12, 13, 16, 24], "Δ = {:?}", out.delta);
    expect!(fails, degs(&out.delta_prime) == [17, 19, 27], "Δ′ = {:?}", out.delta_prime);

    // γ(−3P+6Q; P, P) = 7 needs the translated line; the origin line gives 6.
    let best = gamma_line(t, c, Pt::P, PointSet::ONLY_P, PointSet::ONLY_P, false);
    let origin = gamma_line(t, c, Pt::P, PointSet::ONLY_P, PointSet::ONLY_P, true);
    expect!(fails, best >= 7, "γ(−3P+6Q;P,P) = {best}, want >= 7");
    expect!(fails, origin == 6, "origin line gives {origin}, want 6");

    // γ(2P+2Q; {P,Q}, P) = 8 via the combined 16P, 2Q, 14P path.
    let c = d2(2, 2);
    let mut steps = vec![Pt::P; 16];
    steps.extend([Pt::Q, Pt::Q]);
    steps.extend(vec![Pt::P; 14]);
    let combined = mts_evaluate(t, c, d2(-1, 0), &steps, PointSet::BOTH, PointSet::ONLY_P);
    expect!(fails, combined.bound == 8, "combined path certifies {}, want 8", combined.bound);
    let free = gamma_free(t, c, PointSet::BOTH, PointSet::ONLY_P);
    expect!(fails, free == 8, "γ(2P+2Q;{{P,Q}},P) = {free}, want 8");

    // γ_DK(−5P+8Q; {P,Q}, {P,Q}) = 7 beats γ_DP = 6.
    let c = d2(-5, 8);
    let dk = dk_bound(t, c, PointSet::BOTH);
    let dp = dp_bound(t, c, PointSet::BOTH);
    expect!(fails, dk == 7, "γ_DK(−5P+8Q) = {dk}, want 7");
    expect!(fails, dp == 6, "γ_DP(−5P+8Q) = {dp}, want 6");

    // The eight per-edge γ_B labels of the Beelen example and the aggregate.
    let line = |c: TwoPointDivisor, pt: Pt| {
        gamma_line(t, c, pt, PointSet::of(pt), PointSet::of(pt), false)
    };
    let labels = [
        line(d2(9, 1), Pt::P),
        line(d2(10, 1), Pt::Q),
        line(d2(10, 2), Pt::Q),
        line(d2(10, 1), Pt::P),
        line(d2(11, 1), Pt::P),
        line(d2(9, 1), Pt::Q),
        line(d2(9, 2), Pt::Q),
        line(d2(9, 3), Pt::Q),
    ];
    expect!(
        fails,
        labels == [13, 13, 14, 11, 14, 12, 13, 13],
        "γ_B labels = {labels:?}, want [13, 13, 14, 11, 14, 12, 13, 13]"
    );
    let agg = beelen_bound(t, d2(9, 1), PointSet::BOTH);
    expect!(fails, agg == 13, "d_B(9P+Q) = {agg}, want 13");

    finish(3, "worked Δ/Δ′, γ and γ_B examples exact", started, fails);
}

#[test]
fn criterion_04_section_examples() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let t = table();

    let c = d2(4, 1);
    let (lm, gst, abz) = (lm_bound(t, c).value, gst_bound(t, c).value, abz_bound(t, c).value);
    expect!(fails, lm == 7, "C = 4P+Q: d_LM = {lm}, want 7");
    expect!(fails, gst == 7, "C = 4P+Q: d_GST = {gst}, want 7");
    expect!(fails, abz == 8, "C = 4P+Q: d_ABZ = {abz}, want 8");

    let c = d2(3, 1);
    let gst = gst_bound(t, c).value;
    let gst2 = abz_plus_bound(t, c, MixedMode::Gst2).value;
    let abz = abz_bound(t, c).value;
    let plus = abz_plus_bound(t, c, MixedMode::Full).value;
    expect!(fails, gst == 6, "C = 3P+Q: d_GST = {gst}, want 6");
    expect!(fails, gst2 == 6, "C = 3P+Q: d_GST2 = {gst2}, want 6");
    expect!(fails, abz == 6, "C = 3P+Q: d_ABZ = {abz}, want 6");
    expect!(fails, plus == 8, "C = 3P+Q: d_ABZ+ = {plus}, want 8");

    finish(4, "section examples for C = 4P+Q and C = 3P+Q exact", started, fails);
}

#[test]
fn criterion_05_tables_1_to_4() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let cfg = cfg();
    for table_id in [1u8, 2, 3, 4] {
        let report = cmd_reproduce(&cfg, table_id, false).expect("reproduce runs");
        for note in report.notes.iter().filter(|n| n.starts_with("mismatch")) {
            fails.push(format!("table {table_id}: {note}"));
        }
        expect!(
            fails,
            report.mismatches == 0,
            "table {table_id}: {} mismatched cells",
            report.mismatches
        );
    }
    finish(5, "four-code, decomposition, witness and three-code tables cell-exact", started, fails);
}

/// Known honest failure. Six of the 270 compared cells do not match the
/// published thirty-row table:
///
/// * d_GST2 at G = 24P+3Q, 24P+4Q, 24P+5Q, 24P+6Q — the published cell is
///   d_LM + 1, but exhaustive search over two-point decompositions finds no
///   witness satisfying the stated hypotheses above d_LM; every alternative
///   reading tried overshoots some other published cell. The engine reports
///   published − 1.
/// * d_ABZ+ at G = 25P+1Q (4 vs 3) and G = 28P+1Q (8 vs 6) — the engine
///   value exceeds the published one and is certified by witnesses valid
///   under the lemma behind the mixed bound (condition 2 charged only at the
///   stepped directions), the same reading the published 27P+2Q cell
///   requires; the column appears to have been generated under the stricter
///   every-point-of-Z reading, which is inconsistent with that cell.
///
/// The criterion demands cell-exactness, so this test states the analysis
/// and fails instead of special-casing the six cells.
#[test]
fn criterion_06_table_5() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let report = cmd_reproduce(&cfg(), 5, false).expect("reproduce runs");
    for note in report.notes.iter().filter(|n| n.starts_with("mismatch")) {
        fails.push(note.clone());
    }
    if !fails.is_empty() {
        fails.push(
            "analysis: the four d_GST2 cells (G = 24P+bQ) admit no two-point witness above \
             d_LM under the stated hypotheses; the two d_ABZ+ cells are exceeded by sound \
             lemma-reading witnesses the published column's stricter reading rejects \
             (that reading would in turn miss the published 27P+2Q cell)"
                .into(),
        );
    }
    finish(6, "thirty-row table cell-exact (all columns except d̃)", started, fails);
}

#[test]
fn criterion_07_table_6_f8() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let sweep = improvement_sweep(&cfg(), table());
    expect!(fails, sweep.classes == 364, "classes: want 364, got {}", sweep.classes);
    expect!(fails, sweep.degenerate == 1, "degenerate: want 1, got {}", sweep.degenerate);
    for i in 0..4 {
        for j in 0..4 {
            expect!(
                fails,
                sweep.count[i][j] == goldens::TABLE6_F8_COUNT[i][j],
                "count[{} -> {}]: want {}, got {}",
                goldens::TABLE6_ROWS[i],
                goldens::TABLE6_COLS[j],
                goldens::TABLE6_F8_COUNT[i][j],
                sweep.count[i][j]
            );
            expect!(
                fails,
                sweep.max[i][j] == goldens::TABLE6_F8_MAX[i][j],
                "max[{} -> {}]: want {}, got {}",
                goldens::TABLE6_ROWS[i],
                goldens::TABLE6_COLS[j],
                goldens::TABLE6_F8_MAX[i][j],
                sweep.max[i][j]
            );
        }
    }
    finish(7, "364-code improvement matrices exact (degenerate class excluded)", started, fails);
}

#[test]
fn criterion_08_codelab_audit() {
    let started = Instant::now();
    let mut fails = Vec::new();
    // hermitian(2): every nonzero two-point code (n = 7 on the two-point
    // support, so deg C <= 6), full brute force.
    let k2 = Kernel::with_window(CurveId::Hermitian2, 60);
    let t2 = DimensionTable::build_with_deg_cap(&k2, 8);
    let audit2 = audit_bounds(&k2, &t2, 6);
    expect!(fails, !audit2.rows.is_empty(), "hermitian2: no rows audited");
    expect!(fails, audit2.violations == 0, "hermitian2: {} violations", audit2.violations);
    expect!(fails, audit2.skipped == 0, "hermitian2: {} rows skipped", audit2.skipped);
    expect!(
        fails,
        audit2.beelen_misses == 0,
        "hermitian2: d_B misses the exact distance on {} codes",
        audit2.beelen_misses
    );
    // hermitian(3): n = 26, brute force where k fits the enumeration budget.
    let k3 = Kernel::with_window(CurveId::Hermitian3, 60);
    let t3 = DimensionTable::build_with_deg_cap(&k3, 26);
    let audit3 = audit_bounds(&k3, &t3, 4);
    expect!(
        fails,
        audit3.rows.iter().any(|r| r.exact.is_some()),
        "hermitian3: nothing within budget"
    );
    expect!(fails, audit3.violations == 0, "hermitian3: {} violations", audit3.violations);
    expect!(
        fails,
        audit3.beelen_misses == 0,
        "hermitian3: d_B misses the exact distance on {} codes",
        audit3.beelen_misses
    );
    finish(8, "audits clean: no bound exceeds the exact distance, d_B exact", started, fails);
}

#[test]
fn criterion_09_property_suites() {
    let started = Instant::now();
    let mut fails = Vec::new();
    let t = table();
    let g = t.genus;

    // Bound chains on every nondegenerate class in the 364-code range.
    let mut degenerate = 0usize;
    for deg in 0..=(2 * g - 1) {
        for r in 0..t.e {
            let c = d2(deg - r, r);
            let Some(p) = bound_profile(t, c) else {
                degenerate += 1;
                continue;
            };
            let chain = p.goppa <= p.lm
                && p.lm <= p.gst
                && p.gst <= p.abz
                && p.abz <= p.abz_plus
                && p.abz_plus <= p.abz_prime
                && p.abz_prime <= p.dp
                && p.dp <= p.dk
                && p.beelen <= p.abz_prime
                && p.lm <= p.gst2
                && p.gst2 <= p.abz_plus;
            expect!(fails, chain, "bound chain broken at C = {c}: {p:?}");
        }
    }
    expect!(fails, degenerate == 1, "degenerate classes: want 1, got {degenerate}");

    let samples = [d2(4, 1), d2(3, 1), d2(-4, 6), d2(2, 2), d2(-5, 8), d2(9, 1), d2(14, 0)];

    // Z = 0 degenerations: any plain decomposition evaluates to the Goppa
    // value, and the bent-line estimate without its bend is the straight line.
    for c in [d2(4, 1), d2(-4, 6), d2(2, 2)] {
        let kc = t.canonical() + c;
        for w in [d2(0, 0), d2(13, 0), d2(5, 3), d2(20, 6)] {
            let wit = Witness {
                a: kc - w,
                b: w,
                z: TwoPointDivisor::ZERO,
                aprime: None,
                bprime: None,
            };
            let v = evaluate_decomposition(t, c, &wit);
            expect!(
                fails,
                v == goppa_bound(c),
                "Z = 0 at C = {c}, B = {w}: {v} != Goppa {}",
                goppa_bound(c)
            );
        }
    }
    for c in samples {
        for pt in [Pt::P, Pt::Q] {
            let s = PointSet::of(pt);
            let bent = gamma_bent(t, c, pt, s, s, false);
            let line = gamma_line(t, c, pt, s, s, false);
            expect!(fails, bent == line, "bendless γ at C = {c}, {pt:?}: {bent} != {line}");
        }
    }

    // Sequence/semigroup agreement and greedy optimality.
    for c in samples {
        for est in [EdgeEstimator::Line, EdgeEstimator::BentLine, EdgeEstimator::Free] {
            let semi = semigroup_bound(t, c, PointSet::BOTH, est);
            let greedy = greedy_sequence_bound(t, c, PointSet::BOTH, est);
            expect!(
                fails,
                semi == greedy,
                "sequence/semigroup disagree at C = {c}, {est:?}: {greedy} != {semi}"
            );
        }
    }

    // Duality |Δ| − |Δ′| = deg C on window-spanning staircases.
    for c in samples {
        let dlo = c.deg().min(0) - 2 * g;
        let dhi = c.deg().max(0) + 4 * g;
        let n = (dhi - dlo) as usize;
        for (pa, pb) in [(Pt::P, Pt::Q), (Pt::Q, Pt::P)] {
            let steps: Vec<Pt> =
                (0..n).map(|i| if i % 3 == 0 { pa } else { pb }).collect();
            let out = mts_evaluate(t, c, d2(dlo, 0), &steps, PointSet::EMPTY, PointSet::BOTH);
            let defect = out.delta.len() as i64 - out.delta_prime.len() as i64;
            expect!(fails, defect == c.deg(), "duality defect {defect} at C = {c}");
        }
    }

    // Base-point lemma: for effective C, the free-walk γ with S restricted
    // to the base points of C equals the value with S = {P, Q}.
    for a in 0..=(2 * g - 1) {
        for b in 0..=(2 * g - 1 - a) {
            let c = d2(a, b);
            if a + b == 0 {
                continue;
            }
            let mut base = PointSet::EMPTY;
            for pt in [Pt::P, Pt::Q] {
                if !t.gamma_membership(c, pt) {
                    base = base.insert(pt);
                }
            }
            let restricted = gamma_free(t, c, base, PointSet::BOTH);
            let full = gamma_free(t, c, PointSet::BOTH, PointSet::BOTH);
            expect!(
                fails,
                restricted == full,
                "base-point S-insensitivity at C = {c}: {restricted} != {full}"
            );
        }
    }

    finish(9, "chains, degenerations, agreement, duality, base-point lemma", started, fails);
}

#[test]
fn criterion_10_suzuki_f32_stretch() {
    // The F32 sweep (10168 codes) is implemented behind the hidden
    // `--stretch` flag of `reproduce --table 6` but its runtime/memory sit
    // outside the CI budget; it is explicitly not acceptance-blocking.
    println!(
        "ACCEPTANCE criterion 10: SKIP — Suzuki-F32 sweep is a stretch goal \
         (available via `reproduce --table 6 --stretch`), not run in CI"
    );
}
