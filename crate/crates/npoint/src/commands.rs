//! Handlers for the non-experiment subcommands.

use npoint_core::embeddings::{
    blaschke_power_norms, boundary_decomposition, coefficient_asymptotics_report, h2_dhalf_identity,
    hs_window_report, sarason_function, tau_isometry_exact,
};
use npoint_core::exact::from_int;
use npoint_core::interpolation::{pick_solve, sarason_solve_with, BlaschkeProduct, ModelSpaceProblem, SarasonOptions};
use npoint_core::picknorm::{n_point_norm_at, PickData};
use npoint_core::shifts::shift_weights;
use npoint_core::C64;
use serde_json::json;

use crate::config::{
    EmbedCommand, InterpCommand, KernelCommand, PicknormCommand, SarasonCommand, SearchCommand, ShiftsCommand,
};
use crate::error::CliError;
use crate::experiments::{run_scans, scan_tables, Failure, Outcome};
use crate::output::{Cell, Report, Table};
use crate::parallel;

fn ok(report: Report) -> Outcome {
    Outcome::new(report, Vec::new())
}

pub fn kernel(cmd: &KernelCommand) -> Result<Outcome, CliError> {
    let k = cmd.kernel.spec()?;
    let mut report = Report::new("kernel", cmd);
    report.meta("family", k.family());
    report.meta("dim", k.dim());
    let mut coeffs = Table::new("coefficients", &["n", "a_n", "a_n_exact"]);
    for n in 0..cmd.terms {
        let exact = k.coeff_exact(n).map(|r| r.to_string()).unwrap_or_default();
        coeffs.push(vec![n.into(), k.coeff(n).into(), Cell::Exact(exact)]);
    }
    report.tables.push(coeffs);
    if !cmd.points.is_empty() {
        let pts: Vec<Vec<C64>> = cmd.points.iter().map(|p| p.iter().map(|c| c.value()).collect()).collect();
        let mut gram = Table::new("gram", &["i", "j", "re", "im", "delta"]);
        for (i, z) in pts.iter().enumerate() {
            for (j, w) in pts.iter().enumerate() {
                let v = k.eval(z, w)?;
                let delta = k.delta_metric(z, w)?;
                gram.push(vec![i.into(), j.into(), v.re.into(), v.im.into(), delta.into()]);
            }
        }
        report.tables.push(gram);
    }
    Ok(ok(report))
}

pub fn picknorm(cmd: &PicknormCommand) -> Result<Outcome, CliError> {
    let data = PickData::new(cmd.kernel.spec()?, cmd.points(), cmd.values()?)?;
    let value = n_point_norm_at(&data)?;
    let mut report = Report::new("picknorm", cmd);
    report.meta("points", data.len());
    report.meta("level", data.level());
    let mut t = Table::new("norm", &["norm"]);
    t.push(vec![value.into()]);
    report.tables.push(t);
    Ok(ok(report))
}

pub fn search(cmd: &SearchCommand) -> Result<Outcome, CliError> {
    let k = cmd.kernel.spec()?;
    let phi = cmd.symbol.symbol()?;
    let cfg = cmd.search.config(cmd.n, cmd.seed)?;
    let res = parallel::search(&k, &phi, &cfg)?;
    let mut report = Report::new("search", cmd);
    report.meta("seed", cmd.seed);
    let mut t = Table::new("result", &["n", "lower_bound", "restart"]);
    t.push(vec![cmd.n.into(), res.value.into(), res.restart.into()]);
    report.tables.push(t);
    let mut w = Table::new("witness", &["i", "coord", "re", "im", "value_re", "value_im"]);
    for (i, (p, v)) in res.witness.points.iter().zip(&res.witness.values).enumerate() {
        let v = v[(0, 0)];
        for (j, c) in p.iter().enumerate() {
            w.push(vec![i.into(), j.into(), c.re.into(), c.im.into(), v.re.into(), v.im.into()]);
        }
    }
    report.tables.push(w);
    Ok(ok(report))
}

fn zeros_table(b: &BlaschkeProduct) -> Table {
    let mut t = Table::new("zeros", &["i", "re", "im"]);
    for (i, z) in b.zeros.iter().enumerate() {
        t.push(vec![i.into(), z.re.into(), z.im.into()]);
    }
    t
}

pub fn interp(cmd: &InterpCommand) -> Result<Outcome, CliError> {
    let (z, w) = cmd.data();
    let sol = pick_solve(&z, &w)?;
    let mut report = Report::new("interp", cmd);
    let lam = sol.product.scale;
    let scaled = sol.scaled_lambda();
    let mut t = Table::new(
        "solution",
        &["rho", "lambda_re", "lambda_im", "scaled_re", "scaled_im", "degree", "residual", "boundary_deviation"],
    );
    t.push(vec![
        sol.rho.into(),
        lam.re.into(),
        lam.im.into(),
        scaled.re.into(),
        scaled.im.into(),
        sol.product.degree().into(),
        sol.residual.into(),
        sol.product.boundary_deviation(4096).into(),
    ]);
    report.tables.push(t);
    report.tables.push(zeros_table(&sol.product));
    Ok(ok(report))
}

pub fn sarason(cmd: &SarasonCommand) -> Result<Outcome, CliError> {
    let problem = ModelSpaceProblem::new(cmd.matrix()?, cmd.symbol())?;
    let mut opts = SarasonOptions::default();
    if let Some(m) = cmd.margin {
        opts.margin = m;
    }
    if let Some(g) = cmd.grid {
        opts.grid = g;
    }
    let sol = sarason_solve_with(&problem, &opts)?;
    let mut report = Report::new("sarason", cmd);
    if let Some(w) = &sol.warning {
        report.meta("warning", w);
    }
    let lam = sol.lambda();
    let mut t = Table::new("solution", &["norm", "lambda_re", "lambda_im", "degree", "residual"]);
    t.push(vec![sol.norm.into(), lam.re.into(), lam.im.into(), sol.product.degree().into(), sol.residual.into()]);
    report.tables.push(t);
    report.tables.push(zeros_table(&sol.product));
    let mut nodes = Table::new("nodes", &["re", "im", "multiplicity"]);
    for (c, m) in &sol.nodes {
        nodes.push(vec![c.re.into(), c.im.into(), (*m).into()]);
    }
    report.tables.push(nodes);
    Ok(ok(report))
}

pub fn shifts(cmd: &ShiftsCommand) -> Result<Outcome, CliError> {
    if cmd.spec.is_none() && cmd.scan.is_none() {
        return Err(CliError::Usage("shifts config needs `spec` or `scan`".into()));
    }
    let mut report = Report::new("shifts", cmd);
    let mut failures = Vec::new();
    if let Some(sc) = &cmd.spec {
        let spec = sc.spec()?;
        report.meta("family", spec.family());
        let w = shift_weights(&spec, cmd.truncation)?;
        let mut t = Table::new("weights", &["k", "weight", "weight_sq_exact"]);
        for (k, x) in w.iter().enumerate() {
            let exact = spec.weight_sq_exact(k as u64).map(|ws| {
                if *ws.s.numer() == 0 {
                    (ws.base).to_string()
                } else {
                    format!("({})*({})^({})", ws.base, ws.factor, -ws.s)
                }
            });
            t.push(vec![k.into(), (*x).into(), Cell::Exact(exact.unwrap_or_default())]);
        }
        report.tables.push(t);
    }
    if let Some(settings) = &cmd.scan {
        let (summary, witnesses, f) = scan_tables(&run_scans(settings)?);
        report.tables.push(summary);
        report.tables.push(witnesses);
        failures = f;
    }
    Ok(Outcome::new(report, failures))
}

pub fn embed(cmd: &EmbedCommand) -> Result<Outcome, CliError> {
    let mut report = Report::new("embed", cmd);
    let mut failures = Vec::new();
    match cmd {
        EmbedCommand::Asymptotics { d, nmax } => match coefficient_asymptotics_report(*d, *nmax) {
            Ok(rep) => {
                report.meta("deviation", rep.deviation);
                report.meta("deviation_sqrt_d", rep.deviation_sqrt_d);
                report.meta("tolerance", rep.tolerance);
                let mut t = Table::new("asymptotics", &["n", "a_n", "normalized", "normalized_sqrt_d"]);
                for r in &rep.rows {
                    t.push(vec![r.n.into(), r.a_n.into(), r.normalized.into(), r.normalized_sqrt_d.into()]);
                }
                report.tables.push(t);
            }
            Err(npoint_core::Error::Violation(m)) => {
                failures.push(Failure::new("asymptotics", m, json!({"d": d, "nmax": nmax})))
            }
            Err(e) => return Err(e.into()),
        },
        EmbedCommand::Window { d, s, fit_max, nmax, factor } => {
            let rep = hs_window_report(*d, *s, *fit_max, *nmax, *factor)?;
            report.meta("window_lo", rep.window.0);
            report.meta("window_hi", rep.window.1);
            report.meta("observed_lo", rep.observed.0);
            report.meta("observed_hi", rep.observed.1);
            report.meta("factor", rep.factor);
            let mut t = Table::new("window", &["n", "norm_sq", "ratio"]);
            for r in &rep.rows {
                t.push(vec![r.n.into(), r.norm_sq.into(), r.ratio.into()]);
            }
            report.tables.push(t);
            if !rep.passed {
                failures.push(Failure::new(
                    "window",
                    "ratio left the fitted window",
                    json!({"window": [rep.window.0, rep.window.1], "observed": [rep.observed.0, rep.observed.1]}),
                ));
            }
        }
        EmbedCommand::Boundary { d, cap } => {
            let set = boundary_decomposition(*d, *cap)?;
            let mut t = Table::new("boundary", &["alpha"]);
            for a in &set.alphas {
                t.push(vec![a.iter().map(u32::to_string).collect::<Vec<_>>().join(" ").into()]);
            }
            report.tables.push(t);
        }
        EmbedCommand::TauIsometry { coeffs, d } => {
            let c: Vec<_> = coeffs.iter().map(|&x| from_int(x)).collect();
            let (lhs, rhs) = tau_isometry_exact(&c, *d)?;
            let mut t = Table::new("isometry", &["pullback_norm_sq", "norm_sq", "equal"]);
            t.push(vec![Cell::Exact(lhs.to_string()), Cell::Exact(rhs.to_string()), (lhs == rhs).into()]);
            report.tables.push(t);
            if lhs != rhs {
                failures.push(Failure::new("isometry", "norms differ", json!({"lhs": lhs.to_string(), "rhs": rhs.to_string()})));
            }
        }
        EmbedCommand::H2Identity { nmax } => {
            let mut t = Table::new("identity", &["n", "holds"]);
            for n in 0..=*nmax {
                let holds = h2_dhalf_identity(n);
                t.push(vec![n.into(), holds.into()]);
                if !holds {
                    failures.push(Failure::new("h2_identity", format!("fails at n = {n}"), json!({"n": n})));
                }
            }
            report.tables.push(t);
        }
        EmbedCommand::SarasonFunction { kernel, f, z } => {
            let v = sarason_function(&EmbedCommand::sarason_input(kernel, f, z)?)?;
            let mut t = Table::new("sarason_function", &["re", "im"]);
            t.push(vec![v.re.into(), v.im.into()]);
            report.tables.push(t);
        }
        EmbedCommand::BlaschkePowers { kernel, zero, nmax, degree } => {
            let rows = blaschke_power_norms(&kernel.spec()?, zero.value(), *nmax, *degree)?;
            let mut t = Table::new("powers", &["n", "norm_lower", "norm_sq_lower", "last_coeff"]);
            for r in &rows {
                t.push(vec![r.n.into(), r.norm_lower.into(), r.norm_sq_lower.into(), r.last_coeff.into()]);
            }
            report.tables.push(t);
        }
    }
    Ok(Outcome::new(report, failures))
}
