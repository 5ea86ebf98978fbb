use serde::Serialize;
use serde_json::json;
use squeezelab::analysis::{convergence_trace, squeeze_trace, SqueezeOptions, DEFAULT_TOL};
use squeezelab::domains::DomainSpec;
use squeezelab::error::Error;
use squeezelab::psh::{hext_margin, psh_check, PshFlag, SampleGrid};
use squeezelab::repro::{reproduce, ReproOptions, ReproReport, ReproTarget};
use squeezelab::scaling::{build_pipeline, coefficient_limit, extract_limit_model, Pipeline};
use squeezelab::sequences::{classify_sequence, default_js, parse_js, ApproachSequence, ModeHint};
use squeezelab::specfile::{resolve_domain, resolve_sequence};

use crate::report::{emit, num, opt, render, Table};
use crate::{Command, Common, Failure, Format, Reproduce};

/// Fully resolved settings, embedded in every report.
#[derive(Serialize)]
struct RunConfig {
    command: &'static str,
    domain: Option<String>,
    seq: Option<String>,
    js: Vec<u64>,
    pipeline: Option<Pipeline>,
    grid_n: usize,
    directions: usize,
    samples: usize,
    tol: f64,
    timing: bool,
    format: Format,
}

struct Resolved {
    cfg: RunConfig,
    domain: Option<DomainSpec>,
    seq: Option<ApproachSequence>,
}

impl Resolved {
    fn domain(&self) -> Result<&DomainSpec, Failure> {
        self.domain.as_ref().ok_or_else(|| Failure::Input(Error::Schema { field: "domain".into(), detail: "--domain or --seq is required".into() }))
    }

    fn seq(&self) -> Result<&ApproachSequence, Failure> {
        self.seq.as_ref().ok_or_else(|| Failure::Input(Error::Schema { field: "seq".into(), detail: "--seq is required".into() }))
    }

    fn lambda(&self) -> Result<squeezelab::weights::MultiWeight, Failure> {
        let d = self.domain()?;
        d.lambda.clone().ok_or_else(|| Failure::Input(Error::InvariantViolation(format!("{} has no multiweight", d.name))))
    }
}

const PSH_GRID_N: usize = 64;
const CONVERGE_GRID_N: usize = 17;

fn resolve(command: &'static str, a: &Common, default_js: &str, default_tol: f64, default_grid: usize) -> Result<Resolved, Failure> {
    let seq = a.seq.as_deref().map(resolve_sequence).transpose()?;
    let domain = match (&a.domain, &seq) {
        (Some(d), _) => Some(resolve_domain(d)?),
        (None, Some(s)) => Some(resolve_domain(&s.domain_id)?),
        (None, None) => None,
    };
    let js = parse_js(a.js.as_deref().unwrap_or(default_js))?;
    let tol = a.tol.unwrap_or(default_tol);
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(Error::InvariantViolation(format!("tol must lie in (0, 1e-2], got {tol}")).into());
    }
    let pipeline = match (&a.pipeline, &seq) {
        (Some(p), _) => Some(Pipeline::parse(p)?),
        (None, Some(s)) => Some(Pipeline::for_sequence(a.seq.as_deref().unwrap_or(&s.name))),
        (None, None) => None,
    };
    let cfg = RunConfig {
        command,
        domain: domain.as_ref().map(|d| d.name.clone()),
        seq: a.seq.clone(),
        js,
        pipeline,
        grid_n: a.grid_n.unwrap_or(default_grid),
        directions: a.directions,
        samples: a.samples.unwrap_or(4 * a.directions),
        tol,
        timing: a.timing,
        format: a.format,
    };
    Ok(Resolved { cfg, domain, seq })
}

/// Log-spaced polar grid; coarser per axis in higher dimension so the
/// product grid stays near `grid_n²` points per plane.
fn psh_grid(n: usize, grid_n: usize) -> SampleGrid {
    if n == 1 {
        SampleGrid::polar(1, 0.01, 2.0, grid_n, grid_n)
    } else {
        SampleGrid::polar(n, 0.01, 2.0, (grid_n / 8).max(4), (grid_n / 4).max(8))
    }
}

fn write(command: &str, cfg: &impl Serialize, result: &impl Serialize, table: impl FnOnce() -> Table, format: Format, out: Option<&std::path::Path>) -> Result<(), Failure> {
    let bytes = render(command, cfg, result, table, format)?;
    emit(&bytes, out)?;
    Ok(())
}

pub fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::CheckPsh(a) => check_psh(&a),
        Command::CheckHext(a) => check_hext(&a),
        Command::Classify(a) => classify(&a),
        Command::Scale(a) => scale(&a),
        Command::Converge(a) => converge(&a),
        Command::Squeeze(a) => squeeze(&a),
        Command::Reproduce(a) => run_reproduce(&a),
    }
}

fn check_psh(a: &Common) -> Result<(), Failure> {
    let r = resolve("check-psh", a, "2:1024:geom", squeezelab::psh::DEFAULT_TOL, PSH_GRID_N)?;
    let d = r.domain()?;
    let grid = psh_grid(d.n, r.cfg.grid_n);
    let m = psh_check(d, &grid, r.cfg.tol)?;
    let result = json!({ "domain": d.name, "psh": true, "min_eigenvalue": m.min_eigenvalue, "grid_points": grid.len() });
    write("check-psh", &r.cfg, &result, || {
        let mut t = Table::new(&["domain", "psh", "min_eigenvalue", "grid_points"]);
        t.push(vec![d.name.clone(), "true".into(), num(m.min_eigenvalue), grid.len().to_string()]);
        t
    }, a.format, a.out.as_deref())
}

fn check_hext(a: &Common) -> Result<(), Failure> {
    let r = resolve("check-hext", a, "2:1024:geom", squeezelab::psh::DEFAULT_TOL, PSH_GRID_N)?;
    let d = r.domain()?;
    let grid = psh_grid(d.n, r.cfg.grid_n);
    let m = hext_margin(d, &grid, r.cfg.tol)?;
    let result = json!({ "domain": d.name, "margin": m, "grid_points": grid.len() });
    write("check-hext", &r.cfg, &result, || {
        let mut t = Table::new(&["domain", "delta", "flag", "min_eigenvalue", "grid_points"]);
        let flag = if m.flag == PshFlag::Margin { "margin" } else { "psh-only" };
        t.push(vec![d.name.clone(), num(m.delta), flag.into(), num(m.min_eigenvalue), grid.len().to_string()]);
        t
    }, a.format, a.out.as_deref())?;
    if m.flag == PshFlag::PshOnly {
        return Err(Failure::Verdict(format!("{} is not strongly h-extendible on the grid", d.name)));
    }
    Ok(())
}

fn classify(a: &Common) -> Result<(), Failure> {
    let r = resolve("classify", a, "2:1024:geom", DEFAULT_TOL, 0)?;
    let (d, s, l) = (r.domain()?, r.seq()?, r.lambda()?);
    let report = classify_sequence(s, d, &l, ModeHint::Auto, &r.cfg.js)?;
    write("classify", &r.cfg, &report, || {
        let mut t = Table::new(&["condition", "holds", "slope", "ci_low", "ci_high", "mode"]);
        for v in &report.verdicts {
            let fit = v.fit.as_ref();
            t.push(vec![
                v.condition.clone(),
                v.holds.to_string(),
                opt(fit.map(|f| f.slope)),
                opt(fit.map(|f| f.ci_low)),
                opt(fit.map(|f| f.ci_high)),
                report.mode.name().into(),
            ]);
        }
        t
    }, a.format, a.out.as_deref())
}

fn scale(a: &Common) -> Result<(), Failure> {
    let r = resolve("scale", a, "64:4096:geom", DEFAULT_TOL, 0)?;
    let (d, s, l) = (r.domain()?, r.seq()?, r.lambda()?);
    let pipeline = r.cfg.pipeline.unwrap_or(Pipeline::HExtendible);
    let sp = build_pipeline(pipeline, d, s, &l)?;
    let lm = extract_limit_model(d, s, &l, &r.cfg.js, pipeline)?;
    let exact = coefficient_limit(&sp.rescaled).ok().map(|p| p.to_string());
    let result = json!({ "limit": lm, "map": sp.map.to_json(), "rescaled": sp.rescaled.to_string(), "exact_limit": exact });
    write("scale", &r.cfg, &result, || {
        let n = lm.n;
        let mut header = vec!["j".to_string()];
        for k in 1..=n {
            for m in 1..=n {
                header.push(format!("h{k}{m}_re"));
                header.push(format!("h{k}{m}_im"));
            }
        }
        let mut t = Table { header, rows: Vec::new() };
        for p in &lm.per_j {
            let mut row = vec![p.j.to_string()];
            for &(re, im) in &p.entries {
                row.push(num(re));
                row.push(num(im));
            }
            t.push(row);
        }
        t
    }, a.format, a.out.as_deref())?;
    if !lm.positive_definite && pipeline != Pipeline::Example53 {
        return Err(Failure::Verdict(format!("limit Hermitian form is not positive definite (eigenvalues {:?})", lm.eigenvalues)));
    }
    Ok(())
}

fn converge(a: &Common) -> Result<(), Failure> {
    let r = resolve("converge", a, "2:1024:geom", DEFAULT_TOL, CONVERGE_GRID_N)?;
    let (d, s, l) = (r.domain()?, r.seq()?, r.lambda()?);
    let pipeline = r.cfg.pipeline.unwrap_or(Pipeline::HExtendible);
    let sp = build_pipeline(pipeline, d, s, &l)?;
    let lim = coefficient_limit(&sp.rescaled)?;
    let tr = convergence_trace(&sp, &lim.specialize(0.0), &r.cfg.js, r.cfg.grid_n);
    let result = json!({ "limit": lim.to_string(), "trace": tr });
    write("converge", &r.cfg, &result, || {
        let mut t = Table::new(&["j", "sup_dev", "fitted_order"]);
        let order = opt(tr.fitted_order.as_ref().map(|f| f.slope));
        for (j, v) in tr.js.iter().zip(&tr.sup_devs) {
            t.push(vec![j.to_string(), num(*v), order.clone()]);
        }
        t
    }, a.format, a.out.as_deref())
}

fn squeeze(a: &Common) -> Result<(), Failure> {
    let r = resolve("squeeze", a, "16:1024:geom", DEFAULT_TOL, 0)?;
    let (d, s, l) = (r.domain()?, r.seq()?, r.lambda()?);
    let pipeline = r.cfg.pipeline.unwrap_or(Pipeline::HExtendible);
    let opts = SqueezeOptions { directions: r.cfg.directions, boundary_samples: r.cfg.samples, tol: r.cfg.tol, timing: r.cfg.timing };
    let tr = squeeze_trace(d, s, &l, pipeline, &r.cfg.js, &default_js(), &opts)?;
    write("squeeze", &r.cfg, &tr, || {
        let n = d.n;
        let mut header: Vec<String> = vec!["j".into(), "eps".into()];
        header.extend((1..=n).map(|k| format!("tau_{k}")));
        header.extend(["r_inner", "r_outer", "lower_bound", "directions", "wall_time"].map(String::from));
        let mut t = Table { header, rows: Vec::new() };
        for e in &tr.estimates {
            let mut row = vec![e.j.to_string(), num(e.eps)];
            row.extend(e.tau.iter().map(|x| num(*x)));
            row.extend([num(e.r_inner), num(e.r_outer), num(e.lower_bound), e.directions.to_string(), opt(e.wall_time)]);
            t.push(row);
        }
        t
    }, a.format, a.out.as_deref())
}

fn run_reproduce(a: &Reproduce) -> Result<(), Failure> {
    let targets: Vec<ReproTarget> = if a.target == "all" { ReproTarget::ALL.to_vec() } else { vec![ReproTarget::parse(&a.target)?] };
    let mut opts = ReproOptions::default();
    opts.squeeze = (!a.no_squeeze).then(|| SqueezeOptions { directions: a.directions, boundary_samples: 4 * a.directions, ..SqueezeOptions::default() });
    let reports: Vec<ReproReport> = targets.iter().map(|t| reproduce(*t, &opts)).collect::<Result<_, _>>()?;
    let cfg = json!({ "command": "reproduce", "target": a.target, "options": opts, "format": a.format });
    write("reproduce", &cfg, &reports, || {
        let mut t = Table::new(&["target", "constant", "computed", "expected", "tol", "pass"]);
        for r in &reports {
            for c in &r.checks {
                t.push(vec![r.target.id().into(), c.constant.clone(), c.computed.clone(), c.expected.clone(), opt(c.tol), c.pass.to_string()]);
            }
        }
        t
    }, a.format, a.out.as_deref())?;
    match reports.iter().find_map(|r| r.mismatch()) {
        Some(e) => Err(e.into()),
        None => Ok(()),
    }
}
