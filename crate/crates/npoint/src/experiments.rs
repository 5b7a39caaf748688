//! Reproducible experiment tables: growth of n-point norms of z^m on the
//! Dirichlet space, two-point blow-up for disc automorphisms, Blaschke
//! power growth, coefficient asymptotics and the exact scan suite.

use npoint_core::embeddings::{blaschke_power_norms, boundary_decomposition, coefficient_asymptotics_report};
use npoint_core::kernels::KernelSpec;
use npoint_core::poly::Poly;
use npoint_core::shifts::{ScanConfig, ScanReport};
use npoint_core::C64;
use serde_json::{json, Value};

use crate::config::{theta, Complex, ExperimentConfig, ExperimentName, KernelConfig, Rational, ScanSettings};
use crate::error::CliError;
use crate::output::{Cell, Report, Table};
use crate::parallel;

/// Tolerance factor applied to fitted envelopes whose constant is unknown.
pub const ENVELOPE_FACTOR: f64 = 1.5;
/// Two-point norm that a θ_r must exceed somewhere on the grid.
pub const BLOWUP_THRESHOLD: f64 = 1.2;
/// Slack for the nondecreasing tail of the blow-up column.
pub const TREND_SLACK: f64 = 1e-9;
/// Power at which the Blaschke lower bound must exceed `POWER_THRESHOLD`.
pub const POWER_CHECKPOINT: usize = 64;
pub const POWER_THRESHOLD: f64 = 3.0;
/// Sample count on the circle for sup norms.
pub const CIRCLE_GRID: usize = 4096;

/// A failed assertion of an experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub check: String,
    pub message: String,
    pub detail: Value,
}

impl Failure {
    pub fn new(check: &str, message: impl Into<String>, detail: Value) -> Self {
        Failure { check: check.into(), message: message.into(), detail }
    }

    pub fn json(&self) -> Value {
        json!({"check": self.check, "message": self.message, "detail": self.detail})
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub failures: Vec<Failure>,
}

impl Outcome {
    pub fn new(mut report: Report, failures: Vec<Failure>) -> Self {
        report.meta("status", if failures.is_empty() { "pass" } else { "fail" });
        Outcome { report, failures }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn nonempty<T>(name: &str, v: &[T]) -> Result<(), CliError> {
    if v.is_empty() {
        Err(CliError::Usage(format!("range {name} is empty")))
    } else {
        Ok(())
    }
}

/// Fills every unset field with the default of `name`.
pub fn resolve(name: ExperimentName, cfg: &ExperimentConfig) -> Result<ExperimentConfig, CliError> {
    if let Some(given) = cfg.experiment {
        if given != name {
            return Err(CliError::Usage(format!("config is for {}, not {}", given.as_str(), name.as_str())));
        }
    }
    let mut r = cfg.clone();
    r.experiment = Some(name);
    r.out = None;
    r.format = None;
    match name {
        ExperimentName::DirichletGrowth => {
            r.kernel.get_or_insert(KernelConfig::default());
            r.degrees.get_or_insert_with(|| vec![3, 15, 63, 255]);
            r.points.get_or_insert_with(|| vec![2, 3]);
            nonempty("degrees", r.degrees.as_deref().unwrap_or_default())?;
            nonempty("points", r.points.as_deref().unwrap_or_default())?;
        }
        ExperimentName::TwoPointBlowup => {
            r.kernel.get_or_insert(KernelConfig::default());
            r.radii.get_or_insert_with(|| vec![0.0, 0.5, 0.9, 0.99, 0.999]);
            nonempty("radii", r.radii.as_deref().unwrap_or_default())?;
            if r.radii.iter().flatten().any(|x| !(0.0..1.0).contains(x)) {
                return Err(CliError::Usage("radii must lie in [0, 1)".into()));
            }
        }
        ExperimentName::BlaschkePowers => {
            r.params.get_or_insert_with(|| vec![0.0, 0.5]);
            r.zero.get_or_insert(Complex::Real(0.5));
            r.max_power.get_or_insert(POWER_CHECKPOINT);
            r.degree.get_or_insert(4096);
            nonempty("params", r.params.as_deref().unwrap_or_default())?;
            if r.max_power == Some(0) {
                return Err(CliError::Usage("max_power must be positive".into()));
            }
        }
        ExperimentName::Asymptotics => {
            r.dims.get_or_insert_with(|| vec![2, 3, 4, 5]);
            r.nmax.get_or_insert(10_000);
            nonempty("dims", r.dims.as_deref().unwrap_or_default())?;
        }
        ExperimentName::ScanSuite => {
            r.scan.get_or_insert_with(ScanSettings::default);
            r.dims.get_or_insert_with(|| vec![1, 2, 3, 4]);
            r.cap.get_or_insert(10);
            r.nmax.get_or_insert(10_000);
            let scan = r.scan.as_ref().expect("set above");
            nonempty("scan.dims", &scan.dims)?;
            nonempty("scan.s", &scan.s)?;
            nonempty("dims", r.dims.as_deref().unwrap_or_default())?;
        }
        ExperimentName::All => {}
    }
    Ok(r)
}

pub fn run(name: ExperimentName, cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    match name {
        ExperimentName::DirichletGrowth => dirichlet_growth(cfg),
        ExperimentName::TwoPointBlowup => two_point_blowup(cfg),
        ExperimentName::BlaschkePowers => blaschke_powers(cfg),
        ExperimentName::Asymptotics => asymptotics(cfg),
        ExperimentName::ScanSuite => scan_suite(cfg),
        ExperimentName::All => all(cfg),
    }
}

fn disc_kernel(k: &KernelConfig) -> Result<KernelSpec, CliError> {
    let k = k.spec()?;
    if k.dim() != 1 {
        return Err(CliError::Usage("this experiment needs a kernel on the disc".into()));
    }
    Ok(k)
}

/// log(2m), the growth shape of the Dirichlet automorphism multiplier bound.
fn log_shape(m: u32) -> f64 {
    (2.0 * m as f64).ln()
}

pub fn dirichlet_growth(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let cfg = resolve(ExperimentName::DirichletGrowth, cfg)?;
    let k = disc_kernel(cfg.kernel.as_ref().expect("resolved"))?;
    let degrees = cfg.degrees.clone().expect("resolved");
    let points = cfg.points.clone().expect("resolved");
    let mut report = Report::new("experiment dirichlet-growth", &cfg);
    report.meta("seed", cfg.seed);
    report.meta("envelope_factor", ENVELOPE_FACTOR);

    // searched[i][j]: n = points[j] at m = degrees[i]
    let mut exact = Vec::with_capacity(degrees.len());
    let mut searched = Vec::with_capacity(degrees.len());
    for &m in &degrees {
        let phi = Poly::monomial(vec![m], C64::new(1.0, 0.0));
        exact.push(k.monomial_norm_sq(&[m])?.sqrt());
        let mut row = Vec::with_capacity(points.len());
        for &n in &points {
            let sc = cfg.search.config(n, cfg.seed)?;
            row.push(parallel::search(&k, &phi, &sc)?.value);
        }
        searched.push(row);
    }

    // c_n fitted on the first quartile of the rows with m ≥ 1
    let quartile = degrees.len().div_ceil(4);
    let shape = |m: u32, n: usize| log_shape(m).powf((n as f64 - 1.0) / 2.0);
    let fit: Vec<f64> = (0..points.len())
        .map(|j| {
            (0..quartile)
                .filter(|&i| degrees[i] >= 1)
                .map(|i| searched[i][j] / shape(degrees[i], points[j]))
                .fold(f64::NAN, f64::max)
        })
        .map(|c| if c.is_nan() { 1.0 } else { c })
        .collect();
    for (j, &n) in points.iter().enumerate() {
        report.meta(&format!("c_{n}"), fit[j]);
    }
    report.meta("fit_rows", quartile);

    let mut cols: Vec<String> = vec!["m".into(), "norm".into()];
    for &n in &points {
        cols.push(format!("searched_{n}"));
        cols.push(format!("envelope_{n}"));
        cols.push(format!("ratio_{n}"));
    }
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut table = Table::new("growth", &col_refs);
    let mut failures = Vec::new();
    let mut ratios = vec![Vec::new(); points.len()];
    for (i, &m) in degrees.iter().enumerate() {
        let mut row: Vec<Cell> = vec![m.into(), exact[i].into()];
        for (j, &n) in points.iter().enumerate() {
            let s = searched[i][j];
            let envelope = if m == 0 { 1.0 } else { fit[j] * shape(m, n) };
            let ratio = exact[i] / s;
            ratios[j].push(ratio);
            row.extend([s.into(), envelope.into(), ratio.into()]);
            if s > ENVELOPE_FACTOR * envelope {
                failures.push(Failure::new(
                    "envelope",
                    format!("searched {n}-point norm of z^{m} exceeds {ENVELOPE_FACTOR} x envelope"),
                    json!({"m": m, "n": n, "searched": s, "envelope": envelope}),
                ));
            }
        }
        table.push(row);
    }
    for (j, &n) in points.iter().enumerate() {
        if let Some(i) = (1..degrees.len()).find(|&i| ratios[j][i] <= ratios[j][i - 1]) {
            failures.push(Failure::new(
                "trend",
                format!("ratio norm/searched_{n} is not increasing"),
                json!({"n": n, "m_prev": degrees[i - 1], "m": degrees[i], "ratio_prev": ratios[j][i - 1], "ratio": ratios[j][i]}),
            ));
        }
    }
    report.tables.push(table);
    Ok(Outcome::new(report, failures))
}

pub fn two_point_blowup(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let cfg = resolve(ExperimentName::TwoPointBlowup, cfg)?;
    let k = disc_kernel(cfg.kernel.as_ref().expect("resolved"))?;
    let radii = cfg.radii.clone().expect("resolved");
    let mut report = Report::new("experiment two-point-blowup", &cfg);
    report.meta("seed", cfg.seed);
    report.meta("threshold", BLOWUP_THRESHOLD);
    report.meta("trend_slack", TREND_SLACK);
    let sc = cfg.search.config(2, cfg.seed)?;
    let mut table = Table::new("blowup", &["r", "sup_norm", "two_point", "z_re", "z_im", "w_re", "w_im"]);
    let mut values = Vec::with_capacity(radii.len());
    for &r in &radii {
        let th = theta(C64::new(r, 0.0));
        let sup = (0..CIRCLE_GRID)
            .map(|i| th.eval(C64::from_polar(1.0, 2.0 * std::f64::consts::PI * i as f64 / CIRCLE_GRID as f64)).norm())
            .fold(0.0, f64::max);
        let res = parallel::search(&k, &th, &sc)?;
        let (z, w) = (res.witness.points[0][0], res.witness.points.get(1).map_or(res.witness.points[0][0], |p| p[0]));
        values.push(res.value);
        table.push(vec![r.into(), sup.into(), res.value.into(), z.re.into(), z.im.into(), w.re.into(), w.im.into()]);
    }
    let mut failures = Vec::new();
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(best > BLOWUP_THRESHOLD) {
        failures.push(Failure::new(
            "threshold",
            format!("no two-point norm above {BLOWUP_THRESHOLD}"),
            json!({"best": best}),
        ));
    }
    let tail = values.len() / 2;
    if let Some(i) = (tail.max(1)..values.len()).find(|&i| values[i] < values[i - 1] - TREND_SLACK) {
        failures.push(Failure::new(
            "trend",
            "two-point column decreases on the tail of the grid",
            json!({"r_prev": radii[i - 1], "r": radii[i], "prev": values[i - 1], "value": values[i]}),
        ));
    }
    report.tables.push(table);
    Ok(Outcome::new(report, failures))
}

pub fn blaschke_powers(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let cfg = resolve(ExperimentName::BlaschkePowers, cfg)?;
    let zero = cfg.zero.expect("resolved").value();
    let nmax = cfg.max_power.expect("resolved");
    let degree = cfg.degree.expect("resolved");
    let mut report = Report::new("experiment blaschke-powers", &cfg);
    report.meta("checkpoint", POWER_CHECKPOINT);
    report.meta("threshold", POWER_THRESHOLD);
    let mut table = Table::new("powers", &["a", "n", "norm_lower", "norm_sq_lower", "last_coeff"]);
    let mut failures = Vec::new();
    for &a in cfg.params.as_deref().expect("resolved") {
        let k = KernelSpec::dirichlet(a, 1)?;
        let rows = blaschke_power_norms(&k, zero, nmax, degree)?;
        for r in &rows {
            table.push(vec![a.into(), r.n.into(), r.norm_lower.into(), r.norm_sq_lower.into(), r.last_coeff.into()]);
        }
        if let Some(w) = rows.windows(2).find(|w| w[1].norm_lower <= w[0].norm_lower) {
            failures.push(Failure::new(
                "increasing",
                format!("norm lower bound does not increase at n = {} for a = {a}", w[1].n),
                json!({"a": a, "n": w[1].n, "prev": w[0].norm_lower, "value": w[1].norm_lower}),
            ));
        }
        if let Some(r) = rows.iter().find(|r| r.n == POWER_CHECKPOINT) {
            if !(r.norm_lower > POWER_THRESHOLD) {
                failures.push(Failure::new(
                    "threshold",
                    format!("lower bound at n = {POWER_CHECKPOINT} is not above {POWER_THRESHOLD} for a = {a}"),
                    json!({"a": a, "value": r.norm_lower}),
                ));
            }
        }
    }
    report.tables.push(table);
    Ok(Outcome::new(report, failures))
}

fn asymptotics_tables(dims: &[usize], nmax: usize) -> Result<(Table, Table, Vec<Failure>), CliError> {
    let mut rows = Table::new("asymptotics", &["d", "n", "a_n", "normalized", "normalized_sqrt_d"]);
    let mut summary =
        Table::new("asymptotics_summary", &["d", "nmax", "deviation", "deviation_sqrt_d", "tolerance", "passed"]);
    let mut failures = Vec::new();
    for &d in dims {
        match coefficient_asymptotics_report(d, nmax) {
            Ok(rep) => {
                for r in &rep.rows {
                    rows.push(vec![d.into(), r.n.into(), r.a_n.into(), r.normalized.into(), r.normalized_sqrt_d.into()]);
                }
                summary.push(vec![
                    d.into(),
                    nmax.into(),
                    rep.deviation.into(),
                    rep.deviation_sqrt_d.into(),
                    rep.tolerance.into(),
                    true.into(),
                ]);
            }
            Err(npoint_core::Error::Violation(m)) => {
                failures.push(Failure::new("asymptotics", m, json!({"d": d, "nmax": nmax})));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok((rows, summary, failures))
}

pub fn asymptotics(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let cfg = resolve(ExperimentName::Asymptotics, cfg)?;
    let mut report = Report::new("experiment asymptotics", &cfg);
    report.meta("tolerance", npoint_core::embeddings::ASYMPTOTICS_TOL);
    let (rows, summary, failures) = asymptotics_tables(cfg.dims.as_deref().expect("resolved"), cfg.nmax.expect("resolved"))?;
    report.tables.push(rows);
    report.tables.push(summary);
    Ok(Outcome::new(report, failures))
}

/// Runs every weight check of the settings; returns reports in
/// (d, s, check) order.
pub fn run_scans(settings: &ScanSettings) -> Result<Vec<ScanReport>, CliError> {
    let corrupt = settings.corrupt.as_ref().map(Rational::exact).transpose()?;
    let mut out = Vec::new();
    for &d in &settings.dims {
        if d == 0 {
            return Err(CliError::Usage("scan dimensions must be positive".into()));
        }
        for s in &settings.s {
            let mut sc = ScanConfig::new(d, s.exact()?, settings.k_max, settings.a_max);
            sc.corrupt = corrupt;
            sc.max_witnesses = settings.max_witnesses;
            out.extend(parallel::scan_all(&sc)?);
        }
    }
    Ok(out)
}

fn ratio_text(s: num_rational::Ratio<i64>) -> String {
    s.to_string()
}

/// Summary and witness tables of a list of scans, plus one failure per
/// scan with violations.
pub fn scan_tables(reports: &[ScanReport]) -> (Table, Table, Vec<Failure>) {
    let mut summary = Table::new(
        "scans",
        &["check", "d", "s", "k_lo", "k_hi", "a_max", "checked", "violations", "worst_margin"],
    );
    let mut witnesses = Table::new("witnesses", &["check", "d", "s", "k", "index", "margin"]);
    let mut failures = Vec::new();
    for r in reports {
        summary.push(vec![
            r.check.name().into(),
            r.d.into(),
            Cell::Exact(ratio_text(r.s)),
            r.k_range.0.into(),
            r.k_range.1.into(),
            r.a_max.into(),
            r.checked.into(),
            r.violation_count.into(),
            r.worst_margin.into(),
        ]);
        for v in &r.violations {
            let index = v.index.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
            witnesses.push(vec![
                r.check.name().into(),
                r.d.into(),
                Cell::Exact(ratio_text(r.s)),
                v.k.into(),
                index.into(),
                v.margin.into(),
            ]);
        }
        if !r.passed() {
            let first = r.violations.first().map(|v| json!({"k": v.k, "index": v.index, "margin": v.margin}));
            failures.push(Failure::new(
                r.check.name(),
                format!("{} violations (d = {}, s = {})", r.violation_count, r.d, r.s),
                json!({"d": r.d, "s": ratio_text(r.s), "witness": first}),
            ));
        }
    }
    (summary, witnesses, failures)
}

pub fn scan_suite(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    let cfg = resolve(ExperimentName::ScanSuite, cfg)?;
    let settings = cfg.scan.clone().expect("resolved");
    let mut report = Report::new("experiment scan-suite", &cfg);
    if let Some(c) = &settings.corrupt {
        report.meta("corrupt", c.exact()?);
    }
    let (summary, witnesses, mut failures) = scan_tables(&run_scans(&settings)?);
    report.tables.push(summary);
    report.tables.push(witnesses);

    let cap = cfg.cap.expect("resolved");
    let mut boundary = Table::new("boundary", &["d", "cap", "alphas", "passed"]);
    for &d in cfg.dims.as_deref().expect("resolved") {
        match boundary_decomposition(d, cap) {
            Ok(set) => boundary.push(vec![d.into(), cap.into(), set.alphas.len().into(), true.into()]),
            Err(npoint_core::Error::Violation(m)) => {
                boundary.push(vec![d.into(), cap.into(), 0usize.into(), false.into()]);
                failures.push(Failure::new("boundary", m, json!({"d": d, "cap": cap})));
            }
            Err(e) => return Err(e.into()),
        }
    }
    report.tables.push(boundary);

    let asym_dims: Vec<usize> = cfg.dims.iter().flatten().copied().filter(|&d| d >= 2).collect();
    let (_, asym, asym_failures) = asymptotics_tables(&asym_dims, cfg.nmax.expect("resolved"))?;
    failures.extend(asym_failures);
    report.tables.push(asym);
    Ok(Outcome::new(report, failures))
}

/// Every experiment in turn; tables are prefixed by experiment name.
pub fn all(cfg: &ExperimentConfig) -> Result<Outcome, CliError> {
    if let Some(given) = cfg.experiment {
        if given != ExperimentName::All {
            return Err(CliError::Usage(format!("config is for {}, not all", given.as_str())));
        }
    }
    let mut base = cfg.clone();
    base.experiment = None;
    base.out = None;
    base.format = None;
    let mut hashed = base.clone();
    hashed.experiment = Some(ExperimentName::All);
    let mut report = Report::new("experiment all", &hashed);
    let mut failures = Vec::new();
    for name in ExperimentName::EACH {
        let out = run(name, &base)?;
        report.meta(&format!("{}.config_sha256", name.as_str()), &out.report.config_hash);
        for (k, v) in out.report.meta {
            report.meta.push((format!("{}.{k}", name.as_str()), v));
        }
        for mut t in out.report.tables {
            t.name = format!("{}.{}", name.as_str(), t.name);
            report.tables.push(t);
        }
        failures.extend(out.failures.into_iter().map(|mut f| {
            f.check = format!("{}.{}", name.as_str(), f.check);
            f
        }));
    }
    Ok(Outcome::new(report, failures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{parse, SearchSettings};

    fn quick() -> SearchSettings {
        SearchSettings { restarts: 4, max_iters: 40, rho: 0.999 }
    }

    #[test]
    fn growth_zero_degree_row_is_all_ones() {
        let cfg = ExperimentConfig { degrees: Some(vec![0, 2]), points: Some(vec![2]), search: quick(), ..Default::default() };
        let out = dirichlet_growth(&cfg).unwrap();
        let t = out.report.table("growth").unwrap();
        for col in ["norm", "searched_2", "envelope_2", "ratio_2"] {
            assert!((t.floats(col)[0] - 1.0).abs() < 1e-8, "{col} {}", t.floats(col)[0]);
        }
    }

    #[test]
    fn growth_first_column_is_exact_norm() {
        let cfg = ExperimentConfig { degrees: Some(vec![255]), points: Some(vec![1]), search: quick(), ..Default::default() };
        let out = dirichlet_growth(&cfg).unwrap();
        assert_eq!(out.report.table("growth").unwrap().floats("norm")[0], 16.0);
    }

    #[test]
    fn blowup_sup_column_is_one() {
        let cfg = ExperimentConfig { radii: Some(vec![0.0, 0.5]), search: quick(), ..Default::default() };
        let out = two_point_blowup(&cfg).unwrap();
        for s in out.report.table("blowup").unwrap().floats("sup_norm") {
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn blowup_at_zero_is_at_least_one() {
        let cfg = ExperimentConfig { radii: Some(vec![0.0]), ..Default::default() };
        let out = two_point_blowup(&cfg).unwrap();
        let v = out.report.table("blowup").unwrap().floats("two_point")[0];
        assert!(v >= 1.0 - 1e-9, "{v}");
    }

    #[test]
    fn empty_ranges_are_usage_errors() {
        let cfg = ExperimentConfig { degrees: Some(vec![]), ..Default::default() };
        assert!(matches!(dirichlet_growth(&cfg), Err(CliError::Usage(_))));
        let cfg = ExperimentConfig { radii: Some(vec![1.0]), ..Default::default() };
        assert!(matches!(two_point_blowup(&cfg), Err(CliError::Usage(_))));
        let cfg = ExperimentConfig { experiment: Some(ExperimentName::Asymptotics), ..Default::default() };
        assert!(matches!(two_point_blowup(&cfg), Err(CliError::Usage(_))));
    }

    #[test]
    fn degenerate_scan_suite_passes() {
        let cfg: ExperimentConfig =
            parse(r#"{"dims": [1], "scan": {"dims": [1], "s": [0, "-1/2"], "k_max": 20, "a_max": 20}}"#).unwrap();
        let out = scan_suite(&cfg).unwrap();
        assert!(out.passed(), "{:?}", out.failures);
        assert!(out.report.table("asymptotics_summary").unwrap().rows.is_empty());
    }

    #[test]
    fn corrupted_scan_reports_witness() {
        let cfg: ExperimentConfig = parse(
            r#"{"dims": [2], "scan": {"dims": [2], "s": ["-1/2"], "k_max": 10, "a_max": 10, "corrupt": "11/10"}}"#,
        )
        .unwrap();
        let out = scan_suite(&cfg).unwrap();
        assert!(!out.passed());
        assert!(!out.report.table("witnesses").unwrap().rows.is_empty());
        assert!(out.failures[0].detail["witness"].is_object());
    }

    #[test]
    fn hash_ignores_output_settings() {
        let a = ExperimentConfig { radii: Some(vec![0.5]), search: quick(), ..Default::default() };
        let mut b = a.clone();
        b.out = Some("x.csv".into());
        b.format = Some(crate::config::Format::Json);
        let ha = two_point_blowup(&a).unwrap().report.config_hash;
        assert_eq!(ha, two_point_blowup(&b).unwrap().report.config_hash);
        let mut c = a.clone();
        c.seed = 1;
        assert_ne!(ha, two_point_blowup(&c).unwrap().report.config_hash);
    }
}
