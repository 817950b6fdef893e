//! Command implementations. They live in the library (rather than the
//! binary) so integration tests and the acceptance gate can drive them
//! directly and inspect structured reports instead of scraping stdout.

use std::path::PathBuf;

use agcb_core::codelab::{self, BoundProfile};
use agcb_core::floorbounds::{
    abz_bound, abz_plus_bound, base_point_bound, evaluate_decomposition, goppa_bound, gst_bound,
    lm_bound, BoundReport, MixedMode, Witness,
};
use agcb_core::orderbounds::{order_bound_suite, semigroup_bound, EdgeEstimator};
use agcb_core::tables::hermitian_closed_form_dim;
use agcb_core::{d2, CurveId, DimensionTable, Kernel, PointSet, TwoPointDivisor};
use rayon::prelude::*;

use crate::goldens;

/// Environment variable naming the dimension-table cache directory;
/// `--cache-dir` takes precedence.
pub const CACHE_ENV: &str = "AGCB_CACHE";

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation (unknown curve, unparsable divisor, bad table id);
    /// exit code 2.
    Usage(String),
    /// Environment failure (I/O); exit code 1.
    Failure(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Md,
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Format, CliError> {
        match s {
            "md" => Ok(Format::Md),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Usage(format!("unknown format '{other}' (md|csv|json)"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Md => "md",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Everything that influences an output, echoed into every report header so
/// runs are reproducible from their own artifacts.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub curve: CurveId,
    /// Kernel window override; `None` picks 6g + e (widened automatically
    /// when a command needs deeper tables).
    pub window: Option<i64>,
    /// Dimension-table degree cap override; `None` picks per command.
    pub deg_cap: Option<i64>,
    pub format: Format,
    /// Worker threads for the sweep commands; 0 = all cores. Outputs are
    /// assembled in canonical order, so the value never changes bytes.
    pub threads: usize,
    pub cache_dir: Option<PathBuf>,
    /// Widen the per-edge S of the Beelen estimator from {edge point} to all
    /// avoided points. Off for golden-table runs.
    pub beelen_full_s: bool,
}

impl RunConfig {
    pub fn new(curve: CurveId) -> RunConfig {
        RunConfig {
            curve,
            window: None,
            deg_cap: None,
            format: Format::Md,
            threads: 0,
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
            beelen_full_s: false,
        }
    }

    fn echo(&self, command: &str) -> String {
        format!(
            "command={command} curve={} window={} deg_cap={} format={} threads={} cache={} beelen_s={}",
            self.curve.as_str(),
            self.window.map_or("default".into(), |w| w.to_string()),
            self.deg_cap.map_or("default".into(), |c| c.to_string()),
            self.format.as_str(),
            if self.threads == 0 { "auto".into() } else { self.threads.to_string() },
            self.cache_dir.as_deref().map_or("-".into(), |p| p.display().to_string()),
            if self.beelen_full_s { "full" } else { "edge" },
        )
    }
}

/// A rendered-format-agnostic report: a header echo, one table, free-form
/// notes, and the number of failed cells/checks (nonzero ⇒ exit code 1).
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub config: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub mismatches: usize,
}

impl Report {
    fn new(cfg: &RunConfig, command: &str, columns: &[&str]) -> Report {
        Report {
            command: command.to_string(),
            config: cfg.echo(command),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
            mismatches: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Md => self.render_md(),
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_md(&self) -> String {
        let mut out = format!("# agcb {}\n\n{}\n\n", self.command, self.config);
        out.push_str(&format!("| {} |\n", self.columns.join(" | ")));
        out.push_str(&format!(
            "|{}\n",
            self.columns.iter().map(|_| " --- |").collect::<String>()
        ));
        for row in &self.rows {
            out.push_str(&format!("| {} |\n", row.join(" | ")));
        }
        for note in &self.notes {
            out.push_str(&format!("\n{note}"));
        }
        if !self.notes.is_empty() {
            out.push('\n');
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut out = format!("# {}\n{}\n", self.config, self.columns.join(","));
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        for note in &self.notes {
            out.push_str(&format!("# {note}\n"));
        }
        out
    }

    fn render_json(&self) -> String {
        let value = serde_json::json!({
            "command": self.command,
            "config": self.config,
            "columns": self.columns,
            "rows": self.rows,
            "notes": self.notes,
            "mismatches": self.mismatches,
        });
        let mut s = serde_json::to_string_pretty(&value).expect("report serialization");
        s.push('\n');
        s
    }
}

/// Divisor strings: `[-]<int>P[+[-]<int>Q]`, whitespace-insensitive; each
/// letter at most once, at least one term.
pub fn parse_divisor(s: &str) -> Result<TwoPointDivisor, CliError> {
    let bad = || CliError::Usage(format!("cannot parse divisor '{s}' (expected e.g. 28P+2Q)"));
    let compact: Vec<u8> =
        s.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
    let (mut i, mut a, mut b) = (0usize, None, None);
    while i < compact.len() {
        if i > 0 {
            if compact[i] != b'+' && compact[i] != b'-' {
                return Err(bad());
            }
            if compact[i] == b'+' {
                i += 1;
            }
        }
        let start = i;
        if i < compact.len() && compact[i] == b'-' {
            i += 1;
        }
        let digits = i;
        while i < compact.len() && compact[i].is_ascii_digit() {
            i += 1;
        }
        if i == compact.len() {
            return Err(bad());
        }
        // A bare letter (possibly signed) means coefficient 1, as in "30P+Q".
        let coeff: i64 = if i == digits {
            if compact[start] == b'-' { -1 } else { 1 }
        } else {
            std::str::from_utf8(&compact[start..i]).unwrap().parse().map_err(|_| bad())?
        };
        let slot = match compact[i] {
            b'P' => &mut a,
            b'Q' => &mut b,
            _ => return Err(bad()),
        };
        if slot.replace(coeff).is_some() {
            return Err(bad());
        }
        i += 1;
    }
    if a.is_none() && b.is_none() {
        return Err(bad());
    }
    Ok(d2(a.unwrap_or(0), b.unwrap_or(0)))
}

/// Kernel wide enough for a dimension table with designed-class degrees up
/// to `deg_cap`.
fn kernel_for_cap(cfg: &RunConfig, deg_cap: Option<i64>) -> Kernel {
    let kernel = match cfg.window {
        Some(w) => Kernel::with_window(cfg.curve, w),
        None => Kernel::new(cfg.curve),
    };
    let cap = deg_cap.unwrap_or(2 * kernel.genus - 1).max(2 * kernel.genus - 1);
    let need = cap + 2 * kernel.genus + kernel.e;
    if kernel.window < need {
        Kernel::with_window(cfg.curve, need)
    } else {
        kernel
    }
}

/// Cache-aware table: loads `<cache>/<curve>-<cap>.json` when present,
/// otherwise builds from the kernel (and saves only via `table build`).
fn table_for(cfg: &RunConfig, deg_cap: Option<i64>) -> DimensionTable {
    if let Some(path) = cache_path(cfg, deg_cap) {
        if let Ok(t) = DimensionTable::load(&path, cfg.curve.as_str()) {
            return t;
        }
    }
    let kernel = kernel_for_cap(cfg, deg_cap);
    DimensionTable::build_with_deg_cap(&kernel, deg_cap.unwrap_or(2 * kernel.genus - 1))
}

fn cache_path(cfg: &RunConfig, deg_cap: Option<i64>) -> Option<PathBuf> {
    let dir = cfg.cache_dir.as_ref()?;
    let cap = deg_cap.map_or("default".to_string(), |c| format!("cap{c}"));
    Some(dir.join(format!("{}-{cap}.json", cfg.curve.as_str())))
}

fn pool(cfg: &RunConfig) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .expect("thread pool")
}

// ----- selftest -----

pub fn cmd_selftest(cfg: &RunConfig) -> Result<Report, CliError> {
    let kernel = kernel_for_cap(cfg, None);
    let (g, e, w) = (kernel.genus, kernel.e, kernel.window);
    let mut report = Report::new(cfg, "selftest", &["check", "result", "detail"]);
    let check = |name: &str, ok: bool, detail: String, report: &mut Report| {
        if !ok {
            report.mismatches += 1;
        }
        report.rows.push(vec![
            name.to_string(),
            if ok { "ok" } else { "FAIL" }.to_string(),
            detail,
        ]);
    };

    let qc = kernel.curve.qc as i64;
    let weight_genus: i64 = kernel.weights.iter().map(|w| w / qc).sum();
    check("reduced-basis genus", weight_genus == g, format!("sum w/{qc} = {weight_genus}"), &mut report);

    let lk = kernel.rr_dim(2 * g - 2, 0).unwrap();
    check("canonical witness", lk == g, format!("l({}P) = {lk}", 2 * g - 2), &mut report);

    let torsion_ok = (1..e).all(|k| kernel.rr_dim(k, -k).unwrap() == 0)
        && kernel.rr_dim(e, -e).unwrap() == 1;
    check("torsion order", torsion_ok, format!("e = {e} minimal with l(eP-eQ) = 1"), &mut report);

    let mut rr_ok = true;
    for a in -5..=(2 * g + 5).min(w - e) {
        for b in -e..=e {
            let deg = a + b;
            let l = kernel.rr_dim(a, b).unwrap();
            let lk = kernel.rr_dim(2 * g - 2 - a, -b).unwrap();
            rr_ok &= l - lk == deg - g + 1;
        }
    }
    check("riemann-roch symmetry", rr_ok, "l(A) - l(K-A) = deg A - g + 1".into(), &mut report);

    let q0 = match cfg.curve {
        CurveId::Hermitian2 => Some(2),
        CurveId::Hermitian3 => Some(3),
        CurveId::Hermitian4 => Some(4),
        _ => None,
    };
    if let Some(q0) = q0 {
        let m = w.min(20);
        let mut ok = true;
        for a in -m..=m {
            for b in -m..=m {
                ok &= kernel.rr_dim(a, b).unwrap() == hermitian_closed_form_dim(q0, a, b);
            }
        }
        check("closed-form cross-check", ok, format!("coefficients up to {m}"), &mut report);
    }

    report.notes.push(format!(
        "curve={} g={g} e={e} K={}P",
        cfg.curve.as_str(),
        2 * g - 2
    ));
    report.notes.push(if report.passed() { "PASS".into() } else { "FAIL".into() });
    Ok(report)
}

// ----- table build -----

pub fn cmd_table_build(
    cfg: &RunConfig,
    csv_out: Option<&PathBuf>,
) -> Result<Report, CliError> {
    let kernel = kernel_for_cap(cfg, cfg.deg_cap);
    let table =
        DimensionTable::build_with_deg_cap(&kernel, cfg.deg_cap.unwrap_or(2 * kernel.genus - 1));
    let mut report = Report::new(cfg, "table build", &["curve", "g", "e", "a", "b", "saved"]);
    let saved = match cache_path(cfg, cfg.deg_cap) {
        Some(path) => {
            if let Some(dir) = path.parent() {
                std::fs::create_dir_all(dir)
                    .map_err(|e| CliError::Failure(format!("cache dir: {e}")))?;
            }
            table.save(&path).map_err(|e| CliError::Failure(format!("cache write: {e}")))?;
            path.display().to_string()
        }
        None => "-".into(),
    };
    report.rows.push(vec![
        table.curve.clone(),
        table.genus.to_string(),
        table.e.to_string(),
        format!("{}..{}", table.a_lo, table.a_hi),
        format!("{}..{}", table.b_lo, table.b_hi),
        saved,
    ]);
    if let Some(path) = csv_out {
        let mut f = std::fs::File::create(path)
            .map_err(|e| CliError::Failure(format!("csv out: {e}")))?;
        table.export_csv(&mut f).map_err(|e| CliError::Failure(format!("csv out: {e}")))?;
        report.notes.push(format!("csv={}", path.display()));
    }
    Ok(report)
}

// ----- bounds -----

const ALL_BOUNDS: [&str; 13] = [
    "d_GOP", "d_BPT", "d_LM", "d_GST", "d_GST2", "d_ABZ", "d_ABZ+", "d_FR", "d_CMST", "d_B",
    "d_ABZ'", "d_DP", "d_DK",
];

fn witness_string(w: &Option<Witness>) -> String {
    match w {
        None => "-".into(),
        Some(w) => {
            let mut s = format!("A={} B={} Z={}", w.a, w.b, w.z);
            if let Some(a) = w.aprime {
                s.push_str(&format!(" A'={a}"));
            }
            if let Some(b) = w.bprime {
                s.push_str(&format!(" B'={b}"));
            }
            s
        }
    }
}

fn floor_row(r: &BoundReport) -> Vec<String> {
    vec![r.name.clone(), r.value.to_string(), r.avoid_set.to_string(), witness_string(&r.witness)]
}

pub fn cmd_bounds(cfg: &RunConfig, g_str: &str, selection: &str) -> Result<Report, CliError> {
    let g_div = parse_divisor(g_str)?;
    let wanted: Vec<String> = if selection == "all" {
        ALL_BOUNDS.iter().map(|s| s.to_string()).collect()
    } else {
        let mut v = Vec::new();
        for name in selection.split(',') {
            let canon = ALL_BOUNDS
                .iter()
                .find(|b| b.eq_ignore_ascii_case(name) || b[2..].eq_ignore_ascii_case(name));
            match canon {
                Some(b) => v.push(b.to_string()),
                None => return Err(CliError::Usage(format!("unknown bound '{name}'"))),
            }
        }
        v
    };

    let preset_genus = agcb_core::CurvePreset::load(cfg.curve).genus;
    let k_div = d2(2 * preset_genus - 2, 0);
    let c = g_div - k_div;
    let cap = cfg.deg_cap.or(Some(c.deg().max(2 * preset_genus - 1)));
    let t = table_for(cfg, cap);

    let mut report = Report::new(cfg, "bounds", &["bound", "value", "avoid", "witness"]);
    report.notes.push(format!("G={g_div} C=G-K={c}"));
    if t.dim(TwoPointDivisor::ZERO - c) > 0 {
        report.notes.push("n/a (class C has l(-C) > 0; Γ* refinement out of scope)".into());
        return Ok(report);
    }

    let suite = order_bound_suite(&t, c, PointSet::BOTH).expect("nondegenerate class");
    let beelen = if cfg.beelen_full_s {
        semigroup_bound(&t, c, PointSet::BOTH, EdgeEstimator::LineFullS)
    } else {
        suite.d_b
    };
    let order_row = |name: &str, value: i64| {
        vec![name.to_string(), value.to_string(), "{P,Q}".to_string(), "-".to_string()]
    };
    for name in &wanted {
        let row = match name.as_str() {
            "d_GOP" => vec![name.clone(), goppa_bound(c).to_string(), "{}".into(), "-".into()],
            "d_BPT" => {
                let v = base_point_bound(&t, c).expect("nondegenerate class");
                vec![name.clone(), v.to_string(), "{}".into(), "-".into()]
            }
            "d_LM" => floor_row(&lm_bound(&t, c)),
            "d_GST" => floor_row(&gst_bound(&t, c)),
            "d_GST2" => floor_row(&abz_plus_bound(&t, c, MixedMode::Gst2)),
            "d_ABZ" => floor_row(&abz_bound(&t, c)),
            "d_ABZ+" => floor_row(&abz_plus_bound(&t, c, MixedMode::Full)),
            "d_FR" => order_row(name, suite.d_fr),
            "d_CMST" => order_row(name, suite.d_cmst),
            "d_B" => order_row(name, beelen),
            "d_ABZ'" => order_row(name, suite.d_abz_prime),
            "d_DP" => order_row(name, suite.d_dp),
            "d_DK" => order_row(name, suite.d_dk),
            _ => unreachable!(),
        };
        report.rows.push(row);
    }
    Ok(report)
}

// ----- reproduce -----

fn profile_value(p: &BoundProfile, column: &str) -> i64 {
    match column {
        "d_GOP" => p.goppa,
        "d_LM" => p.lm,
        "d_GST" => p.gst,
        "d_GST2" => p.gst2,
        "d_ABZ" => p.abz,
        "d_ABZ+" => p.abz_plus,
        "d_B" => p.beelen,
        "d_ABZ'" => p.abz_prime,
        "d_DP" => p.dp,
        "d_DK" => p.dk,
        other => panic!("no bound column {other}"),
    }
}

fn diff_cell(
    report: &mut Report,
    row_name: &str,
    column: &str,
    expected: i64,
    got: i64,
) {
    if expected != got {
        report.mismatches += 1;
        report
            .notes
            .push(format!("mismatch at ({row_name}, {column}): expected {expected}, got {got}"));
    }
}

/// Index of speciality i(X) = l(X) − deg X + g − 1.
fn speciality(t: &DimensionTable, x: TwoPointDivisor) -> i64 {
    t.dim(x) - x.deg() + t.genus - 1
}

fn reproduce_profiles(
    cfg: &RunConfig,
    t: &DimensionTable,
    table_name: &str,
    columns: &[&str],
    rows: &[(&str, [i64; 6])],
) -> Result<Report, CliError> {
    let k_div = t.canonical();
    let mut report = Report::new(cfg, table_name, &[["G"].as_slice(), columns].concat());
    for (g_str, expected) in rows {
        let c = parse_divisor(g_str)? - k_div;
        let p = codelab::bound_profile(t, c).expect("golden rows are nondegenerate");
        let mut cells = vec![g_str.to_string()];
        for (column, &want) in columns.iter().zip(expected) {
            let got = profile_value(&p, column);
            cells.push(got.to_string());
            diff_cell(&mut report, g_str, column, want, got);
        }
        report.rows.push(cells);
    }
    Ok(report)
}

fn reproduce_decompositions(cfg: &RunConfig, t: &DimensionTable) -> Report {
    let k_div = t.canonical();
    let mut report =
        Report::new(cfg, "reproduce 2", &["G", "A", "B", "Z", "value", "condition"]);
    for row in &goldens::TABLE2 {
        let c = row.g - k_div;
        let w = Witness { a: row.a, b: row.b, z: row.z, aprime: None, bprime: None };
        let got = evaluate_decomposition(t, c, &w);
        let condition = {
            let pts: Vec<String> = row.z.support().iter().map(|p| p.to_string()).collect();
            format!("{} not in supp D", pts.join(","))
        };
        report.rows.push(vec![
            row.g.to_string(),
            row.a.to_string(),
            row.b.to_string(),
            row.z.to_string(),
            got.to_string(),
            condition.clone(),
        ]);
        diff_cell(&mut report, &row.g.to_string(), "value", row.value, got);
        if condition != row.condition {
            report.mismatches += 1;
            report.notes.push(format!(
                "mismatch at ({}, condition): expected '{}', got '{condition}'",
                row.g, row.condition
            ));
        }
    }
    // Caption checks: ⌊14P⌋ = 13P explains the second row, and the ABZ
    // search recovers the same value.
    let floor14 = t.two_point_floor(d2(14, 0)).expect("l(14P) > 0");
    if floor14 != d2(13, 0) {
        report.mismatches += 1;
        report.notes.push(format!("mismatch at floor(14P): expected 13P, got {floor14}"));
    }
    let c = goldens::TABLE2[0].g - k_div;
    diff_cell(&mut report, "d_ABZ", "value", 6, abz_bound(t, c).value);
    report
}

fn reproduce_gst_witnesses(cfg: &RunConfig, t: &DimensionTable) -> Report {
    let k_div = t.canonical();
    let mut report = Report::new(
        cfg,
        "reproduce 3",
        &["G", "Abar", "B", "Z", "C'", "d_LM", "d_GST"],
    );
    for row in &goldens::TABLE3 {
        let c = row.g - k_div;
        let label = format!("{} ({})", row.g, row.abar);
        let hypotheses = row.abar + row.b == row.g
            && row.z.is_effective()
            && t.dim(row.abar) == t.dim(row.abar - row.z)
            && t.dim(row.b) == t.dim(row.b + row.z)
            && row.cprime.leq(&row.b)
            && t.dim(row.cprime) == t.dim(row.b);
        if !hypotheses {
            report.mismatches += 1;
            report.notes.push(format!("witness hypotheses fail at {label}"));
        }
        let lm = c.deg() + row.z.deg();
        let gst = lm + speciality(t, row.abar) - speciality(t, row.g - row.cprime);
        report.rows.push(vec![
            row.g.to_string(),
            row.abar.to_string(),
            row.b.to_string(),
            row.z.to_string(),
            row.cprime.to_string(),
            lm.to_string(),
            gst.to_string(),
        ]);
        diff_cell(&mut report, &label, "d_LM", row.lm, lm);
        diff_cell(&mut report, &label, "d_GST", row.gst, gst);
    }
    // The search engine attains the better of the two rows.
    let c = goldens::TABLE3[0].g - k_div;
    diff_cell(&mut report, "d_GST search", "value", 6, gst_bound(t, c).value);
    report
}

fn reproduce_table5(cfg: &RunConfig, t: &DimensionTable) -> Report {
    let k_div = t.canonical();
    let mut report =
        Report::new(cfg, "reproduce 5", &[["G"].as_slice(), &goldens::TABLE5_COLS].concat());
    let profiles: Vec<(usize, Option<BoundProfile>)> = pool(cfg).install(|| {
        goldens::TABLE5
            .par_iter()
            .enumerate()
            .map(|(i, &((a, b), _))| (i, codelab::bound_profile(t, d2(a, b) - k_div)))
            .collect()
    });
    for (i, profile) in profiles {
        let ((a, b), expected) = goldens::TABLE5[i];
        let g_str = format!("{}", d2(a, b));
        let p = profile.expect("golden rows are nondegenerate");
        let mut cells = vec![g_str.clone()];
        for (column, &want) in goldens::TABLE5_COLS.iter().zip(&expected) {
            let got = profile_value(&p, column);
            cells.push(got.to_string());
            diff_cell(&mut report, &g_str, column, want, got);
        }
        report.rows.push(cells);
    }
    if report.mismatches > 0 {
        let cells = |rows: &[(i64, i64)]| {
            rows.iter().map(|&(a, b)| format!("{}", d2(a, b))).collect::<Vec<_>>().join(", ")
        };
        report.notes.push(format!(
            "known open cells (published d_GST2 = d_LM + 1, no two-point witness \
             satisfies the corollary hypotheses above d_LM): {}",
            cells(&goldens::TABLE5_GST2_OPEN)
        ));
        report.notes.push(format!(
            "known open cells (computed d_ABZ+ exceeds the published value; the \
             witnesses are valid under the mixed-bound lemma and consistent with \
             the known distances): {}",
            cells(&goldens::TABLE5_ABZ_PLUS_OPEN)
        ));
    }
    report
}

/// Improvement statistics over all designed classes with deg C in
/// [0, 2g−1] and Q-coefficient in [0, e−1].
pub struct Sweep {
    pub classes: usize,
    pub degenerate: usize,
    pub count: [[i64; 4]; 4],
    pub max: [[i64; 4]; 4],
}

pub fn improvement_sweep(cfg: &RunConfig, t: &DimensionTable) -> Sweep {
    let reps: Vec<TwoPointDivisor> = (0..=(2 * t.genus - 1))
        .flat_map(|deg| (0..t.e).map(move |r| d2(deg - r, r)))
        .collect();
    let profiles: Vec<Option<BoundProfile>> =
        pool(cfg).install(|| reps.par_iter().map(|&c| codelab::bound_profile(t, c)).collect());
    let mut sweep = Sweep {
        classes: reps.len(),
        degenerate: 0,
        count: [[0; 4]; 4],
        max: [[0; 4]; 4],
    };
    for p in &profiles {
        let Some(p) = p else {
            sweep.degenerate += 1;
            continue;
        };
        let rows = [p.goppa, p.lm, p.abz, p.beelen];
        let cols = [p.lm, p.abz, p.beelen, p.dk];
        for (i, &x) in rows.iter().enumerate() {
            for (j, &y) in cols.iter().enumerate() {
                if y > x {
                    sweep.count[i][j] += 1;
                    sweep.max[i][j] = sweep.max[i][j].max(y - x);
                }
            }
        }
    }
    sweep
}

fn diff_sweep(
    report: &mut Report,
    block: &str,
    sweep: &Sweep,
    count_golden: &[[i64; 4]; 4],
    max_golden: &[[i64; 4]; 4],
) {
    for (i, row_name) in goldens::TABLE6_ROWS.iter().enumerate() {
        let mut count_cells = vec![format!("count {row_name}")];
        let mut max_cells = vec![format!("max {row_name}")];
        for (j, col_name) in goldens::TABLE6_COLS.iter().enumerate() {
            count_cells.push(sweep.count[i][j].to_string());
            max_cells.push(sweep.max[i][j].to_string());
            diff_cell(
                report,
                &format!("{block} count {row_name}"),
                col_name,
                count_golden[i][j],
                sweep.count[i][j],
            );
            diff_cell(
                report,
                &format!("{block} max {row_name}"),
                col_name,
                max_golden[i][j],
                sweep.max[i][j],
            );
        }
        report.rows.push(count_cells);
        report.rows.push(max_cells);
    }
    report.notes.push(format!(
        "{block}: {} classes, {} degenerate (C ~ 0, reported n/a and excluded)",
        sweep.classes, sweep.degenerate
    ));
}

fn reproduce_table6(cfg: &RunConfig, t: &DimensionTable, stretch: bool) -> Report {
    let mut report =
        Report::new(cfg, "reproduce 6", &[["statistic"].as_slice(), &goldens::TABLE6_COLS].concat());
    let sweep = improvement_sweep(cfg, t);
    diff_sweep(&mut report, "F8", &sweep, &goldens::TABLE6_F8_COUNT, &goldens::TABLE6_F8_MAX);
    if stretch {
        let cfg32 = RunConfig { curve: CurveId::Suzuki32, ..cfg.clone() };
        let t32 = table_for(&cfg32, None);
        let sweep32 = improvement_sweep(&cfg32, &t32);
        diff_sweep(
            &mut report,
            "F32",
            &sweep32,
            &goldens::TABLE6_F32_COUNT,
            &goldens::TABLE6_F32_MAX,
        );
    }
    report
}

pub fn cmd_reproduce(cfg: &RunConfig, table_id: u8, stretch: bool) -> Result<Report, CliError> {
    if cfg.curve != CurveId::Suzuki8 {
        return Err(CliError::Usage(format!(
            "the published tables are for suzuki8, not {}",
            cfg.curve.as_str()
        )));
    }
    let t = table_for(cfg, cfg.deg_cap);
    let mut report = match table_id {
        1 => reproduce_profiles(cfg, &t, "reproduce 1", &goldens::TABLE1_COLS, &goldens::TABLE1)?,
        2 => reproduce_decompositions(cfg, &t),
        3 => reproduce_gst_witnesses(cfg, &t),
        4 => reproduce_profiles(cfg, &t, "reproduce 4", &goldens::TABLE4_COLS, &goldens::TABLE4)?,
        5 => reproduce_table5(cfg, &t),
        6 => reproduce_table6(cfg, &t, stretch),
        other => return Err(CliError::Usage(format!("no table {other} (1..6)"))),
    };
    report.notes.push(if report.passed() {
        "PASS".into()
    } else {
        format!("{} mismatched cells", report.mismatches)
    });
    Ok(report)
}

// ----- audit -----

pub fn cmd_audit(
    cfg: &RunConfig,
    max_degc: i64,
    out: Option<&PathBuf>,
) -> Result<Report, CliError> {
    let kernel = kernel_for_cap(
        cfg,
        Some(cfg.deg_cap.unwrap_or(kernel_audit_cap(cfg.curve))),
    );
    let cap = cfg.deg_cap.unwrap_or(kernel_audit_cap(cfg.curve));
    let t = DimensionTable::build_with_deg_cap(&kernel, cap);
    let audit = codelab::audit_bounds(&kernel, &t, max_degc);

    let mut report = Report::new(
        cfg,
        "audit",
        &["kind", "G", "n", "k", "d_exact", "d_DK", "d_B_code", "safety"],
    );
    // Distances are clamped at 1 for display here (a bound of 0 carries no
    // information about a nonzero code); CSV keeps raw values.
    for row in &audit.rows {
        report.rows.push(vec![
            row.kind.name().to_string(),
            row.g.to_string(),
            row.n.to_string(),
            row.k.to_string(),
            row.exact.map_or("skipped(budget)".into(), |d| d.to_string()),
            row.bounds.max().max(1).to_string(),
            row.beelen_code.max(1).to_string(),
            if row.safety_ok { "ok".into() } else { "VIOLATION".to_string() },
        ]);
    }
    report.mismatches = audit.violations;
    report.notes.push(format!(
        "{} rows, {} violations, {} beelen misses, {} skipped(budget)",
        audit.rows.len(),
        audit.violations,
        audit.beelen_misses,
        audit.skipped
    ));
    if let Some(path) = out {
        let mut f = std::fs::File::create(path)
            .map_err(|e| CliError::Failure(format!("audit out: {e}")))?;
        codelab::write_audit_csv(&audit, &mut f)
            .map_err(|e| CliError::Failure(format!("audit out: {e}")))?;
        report.notes.push(format!("csv={}", path.display()));
    }
    Ok(report)
}

/// Audits brute-force actual codes, so tables must reach the designed
/// classes of the longest evaluation codes: degree up to n = #points − 1.
fn kernel_audit_cap(curve: CurveId) -> i64 {
    agcb_core::CurvePreset::load(curve).rational_point_count as i64 - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_grammar() {
        assert_eq!(parse_divisor("28P+2Q").unwrap(), d2(28, 2));
        assert_eq!(parse_divisor(" -3P + 6Q ").unwrap(), d2(-3, 6));
        assert_eq!(parse_divisor("30P").unwrap(), d2(30, 0));
        assert_eq!(parse_divisor("0P").unwrap(), d2(0, 0));
        assert_eq!(parse_divisor("7Q").unwrap(), d2(0, 7));
        assert_eq!(parse_divisor("30P+Q").unwrap(), d2(30, 1));
        assert_eq!(parse_divisor("30P-Q").unwrap(), d2(30, -1));
        assert_eq!(parse_divisor("30P+-2Q").unwrap(), d2(30, -2));
        assert_eq!(parse_divisor("30P-2Q").unwrap(), d2(30, -2));
        for bad in ["", "3P+4P", "3X", "3P4Q", "3P+", "+3P"] {
            assert!(parse_divisor(bad).is_err(), "{bad} should not parse");
        }
    }

    #[test]
    fn config_echo_is_deterministic() {
        let cfg = RunConfig { cache_dir: None, ..RunConfig::new(CurveId::Suzuki8) };
        assert_eq!(
            cfg.echo("bounds"),
            "command=bounds curve=suzuki8 window=default deg_cap=default format=md \
             threads=auto cache=- beelen_s=edge"
        );
    }

    #[test]
    fn report_renders_all_formats() {
        let cfg = RunConfig { cache_dir: None, ..RunConfig::new(CurveId::Suzuki8) };
        let mut r = Report::new(&cfg, "demo", &["x", "y"]);
        r.rows.push(vec!["1".into(), "2".into()]);
        r.notes.push("PASS".into());
        assert!(r.render(Format::Md).contains("| 1 | 2 |"));
        assert!(r.render(Format::Csv).contains("1,2"));
        let json: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(json["mismatches"], 0);
        assert_eq!(json["rows"][0][1], "2");
    }
}
