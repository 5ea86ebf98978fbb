//! End-to-end reproductions of the worked examples, each comparing computed
//! constants against expected values with explicit tolerances.

use serde::Serialize;

use crate::analysis::{convergence_trace, prop41_floor, squeeze_trace, SqueezeOptions, SqueezeTrace};
use crate::domains::{catalog, DomainSpec};
use crate::error::{Error, Result};
use crate::psh::{hext_margin, SampleGrid, DEFAULT_TOL};
use crate::scalar::{GaussJ, Ring};
use crate::scaling::{build_pipeline, coefficient_limit, extract_limit_model, LimitModel, Pipeline};
use crate::sequences::{catalog_sequence, classify_sequence, default_js, fit_asymptotic_exponent, laplacian_along, ApproachSequence, ModeHint};
use crate::jexpr::parse_gauss;
use crate::weights::MultiWeight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReproTarget {
    Ex41,
    Ex42Prop41,
    Ex51,
    Ex52,
    Ex53,
}

impl ReproTarget {
    pub const ALL: [ReproTarget; 5] =
        [ReproTarget::Ex41, ReproTarget::Ex42Prop41, ReproTarget::Ex51, ReproTarget::Ex52, ReproTarget::Ex53];

    pub fn id(self) -> &'static str {
        match self {
            ReproTarget::Ex41 => "ex-4-1",
            ReproTarget::Ex42Prop41 => "ex-4-2-prop-4-1",
            ReproTarget::Ex51 => "ex-5-1",
            ReproTarget::Ex52 => "ex-5-2",
            ReproTarget::Ex53 => "ex-5-3",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|t| t.id() == s).ok_or_else(|| Error::Parse(format!("unknown reproduction target {s:?}")))
    }

    fn sequence_id(self) -> &'static str {
        match self {
            ReproTarget::Ex42Prop41 => "prop-4-1",
            other => other.id(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproCheck {
    pub constant: String,
    pub computed: String,
    pub expected: String,
    pub tol: Option<f64>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproReport {
    pub target: ReproTarget,
    pub checks: Vec<ReproCheck>,
    /// Exact limit models emitted symbolically.
    pub models: Vec<(String, String)>,
    pub squeeze: Option<SqueezeTrace>,
    pub pass: bool,
}

impl ReproReport {
    pub fn mismatch(&self) -> Option<Error> {
        self.checks.iter().find(|c| !c.pass).map(|c| Error::ReproMismatch {
            constant: c.constant.clone(),
            computed: c.computed.clone(),
            expected: c.expected.clone(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproOptions {
    pub classify_js: Vec<u64>,
    pub limit_js: Vec<u64>,
    pub squeeze_js: Vec<u64>,
    pub grid_n: usize,
    pub squeeze: Option<SqueezeOptions>,
}

/// Boundary samples for the distance and diameter estimates of the floor.
const FLOOR_SAMPLES: usize = 2000;

fn powers(a: u32, b: u32) -> Vec<u64> {
    (a..=b).map(|k| 1u64 << k).collect()
}

impl Default for ReproOptions {
    fn default() -> Self {
        ReproOptions {
            classify_js: default_js(),
            limit_js: powers(6, 12),
            squeeze_js: powers(4, 10),
            grid_n: 17,
            squeeze: Some(SqueezeOptions::default()),
        }
    }
}

struct Checks(Vec<ReproCheck>);

impl Checks {
    fn near(&mut self, constant: &str, computed: f64, expected: f64, tol: f64) {
        self.0.push(ReproCheck {
            constant: constant.into(),
            computed: format!("{computed:.9}"),
            expected: format!("{expected}"),
            tol: Some(tol),
            pass: (computed - expected).abs() <= tol,
        });
    }

    fn exact(&mut self, constant: &str, computed: impl ToString, expected: impl ToString) {
        let (c, e) = (computed.to_string(), expected.to_string());
        self.0.push(ReproCheck { constant: constant.into(), pass: c == e, computed: c, expected: e, tol: None });
    }

    fn at_least(&mut self, constant: &str, computed: f64, floor: f64) {
        self.0.push(ReproCheck {
            constant: constant.into(),
            computed: format!("{computed:.9}"),
            expected: format!(">= {floor}"),
            tol: None,
            pass: computed >= floor,
        });
    }

    fn positive(&mut self, constant: &str, computed: f64) {
        self.0.push(ReproCheck {
            constant: constant.into(),
            computed: format!("{computed:.9}"),
            expected: "> 0".into(),
            tol: None,
            pass: computed > 0.0,
        });
    }

    fn flag(&mut self, constant: &str, computed: &str, expected: &str, pass: bool) {
        self.0.push(ReproCheck { constant: constant.into(), computed: computed.into(), expected: expected.into(), tol: None, pass });
    }
}

fn setup(target: ReproTarget) -> Result<(ApproachSequence, DomainSpec, MultiWeight)> {
    let s = catalog_sequence(target.sequence_id())?;
    let d = catalog(&s.domain_id)?;
    let l = d.lambda.clone().ok_or_else(|| Error::InvariantViolation(format!("{} has no multiweight", d.name)))?;
    Ok((s, d, l))
}

/// `ρ(η_j) = −j⁻²` as an identity in `j`.
fn eps_identity(ch: &mut Checks, s: &ApproachSequence, d: &DomainSpec) -> Result<()> {
    let v = d.value_exact::<GaussJ>(&s.eta())?;
    let expected = parse_gauss("-j^(-2)")?;
    ch.exact("rho(eta_j)", &v, &expected);
    Ok(())
}

fn tau_slopes(ch: &mut Checks, pipeline: Pipeline, s: &ApproachSequence, d: &DomainSpec, l: &MultiWeight, js: &[u64], expected: &[f64]) -> Result<()> {
    let sp = build_pipeline(pipeline, d, s, l)?;
    for (k, e) in expected.iter().enumerate() {
        let vals: Vec<f64> = js.iter().map(|&j| sp.tau_at(j)[k]).collect();
        let fit = fit_asymptotic_exponent(&vals, js)?;
        ch.near(&format!("tau_{} exponent", k + 1), fit.slope, *e, 0.02);
    }
    Ok(())
}

fn squeeze_checks(ch: &mut Checks, s: &ApproachSequence, d: &DomainSpec, l: &MultiWeight, opts: &ReproOptions) -> Result<Option<SqueezeTrace>> {
    let Some(sq) = &opts.squeeze else { return Ok(None) };
    let tr = squeeze_trace(d, s, l, Pipeline::HExtendible, &opts.squeeze_js, &opts.classify_js, sq)?;
    if let Some(last) = tr.estimates.last() {
        ch.at_least(&format!("squeeze lower bound at j={}", last.j), last.lower_bound, 0.9);
    }
    Ok(Some(tr))
}

fn limit(ch: &mut Checks, s: &ApproachSequence, d: &DomainSpec, l: &MultiWeight, js: &[u64], p: Pipeline) -> Result<LimitModel> {
    let lm = extract_limit_model(d, s, l, js, p)?;
    ch.flag("limit positive definite", &lm.positive_definite.to_string(), "true", lm.positive_definite);
    Ok(lm)
}

pub fn reproduce(target: ReproTarget, opts: &ReproOptions) -> Result<ReproReport> {
    let (s, d, l) = setup(target)?;
    let mut ch = Checks(Vec::new());
    let mut models = Vec::new();
    let mut squeeze = None;
    let mode = classify_sequence(&s, &d, &l, ModeHint::Auto, &opts.classify_js)?;
    match target {
        ReproTarget::Ex41 => {
            eps_identity(&mut ch, &s, &d)?;
            ch.exact("convergence mode", mode.mode.name(), "uniformly-lambda-tangential");
            let lm = limit(&mut ch, &s, &d, &l, &opts.limit_js, Pipeline::HExtendible)?;
            let half = lm.halved();
            ch.near("a_11", half.get(0, 0).re, 2.0, 1e-3);
            ch.near("a_22", half.get(1, 1).re, 4.5, 1e-3);
            ch.near("a_12", half.get(0, 1).norm(), 0.0, 1e-3);
            tau_slopes(&mut ch, Pipeline::HExtendible, &s, &d, &l, &opts.classify_js, &[-0.75, -2.0 / 3.0])?;
            if let Some(p) = &lm.polynomial {
                models.push(("M_H".into(), p.to_string()));
            }
            squeeze = squeeze_checks(&mut ch, &s, &d, &l, opts)?;
        }
        ReproTarget::Ex42Prop41 => {
            ch.exact("convergence mode", mode.mode.name(), "lambda-tangential-nonuniform");
            let refused = matches!(
                extract_limit_model(&d, &s, &l, &opts.classify_js, Pipeline::HExtendible),
                Err(Error::NotConverged { .. })
            );
            ch.flag("h-extendible limit extraction", if refused { "not converged" } else { "converged" }, "not converged", refused);
            let sp = build_pipeline(Pipeline::Prop41, &d, &s, &l)?;
            let lim = coefficient_limit(&sp.rescaled)?;
            let m12 = catalog("m12")?;
            ch.exact("alternative limit model", &lim, &m12.defining);
            models.push(("M_{1,2}".into(), lim.to_string()));
            tau_slopes(&mut ch, Pipeline::Prop41, &s, &d, &l, &opts.classify_js, &[-0.75, -0.375])?;
            let floor = prop41_floor(FLOOR_SAMPLES, &opts.classify_js)?;
            let probe = SqueezeOptions { directions: 8, boundary_samples: 8, ..SqueezeOptions::default() };
            let refused = matches!(
                squeeze_trace(&d, &s, &l, Pipeline::HExtendible, &opts.squeeze_js, &opts.classify_js, &probe),
                Err(Error::PipelineMismatch(_))
            );
            ch.flag("uniform squeeze pipeline", if refused { "refused" } else { "accepted" }, "refused", refused);
            ch.positive("floor at computed image point", floor.computed.bound);
            ch.positive("floor at quoted image point", floor.quoted.bound);
        }
        ReproTarget::Ex51 => {
            let a = mode.verdict("a").map(|v| v.holds).unwrap_or(true);
            ch.flag("condition (a) |b_j| <~ eps_j", if a { "holds" } else { "fails" }, "fails", !a);
            for p in [Pipeline::Example51, Pipeline::Example51Literal] {
                let lm = extract_limit_model(&d, &s, &l, &opts.limit_js, p)?;
                ch.near(&format!("{} coefficient", p.name()), lm.hermitian[0].0, 5.0, 1e-3);
            }
            tau_slopes(&mut ch, Pipeline::Example51, &s, &d, &l, &opts.classify_js, &[-0.75])?;
            let sp = build_pipeline(Pipeline::Example51, &d, &s, &l)?;
            let lim = coefficient_limit(&sp.rescaled)?;
            models.push(("F".into(), lim.to_string()));
            let tr = convergence_trace(&sp, &lim.specialize(0.0), &opts.classify_js, opts.grid_n);
            ch.near("sup-deviation order", tr.fitted_order.map_or(f64::NAN, |f| f.slope), -0.5, 0.1);
        }
        ReproTarget::Ex52 => {
            eps_identity(&mut ch, &s, &d)?;
            ch.exact("convergence mode", mode.mode.name(), "spherical");
            let lm = limit(&mut ch, &s, &d, &l, &opts.limit_js, Pipeline::HExtendible)?;
            ch.near("limit coefficient", lm.hermitian[0].0, 31.0, 1e-3);
            tau_slopes(&mut ch, Pipeline::HExtendible, &s, &d, &l, &opts.classify_js, &[-0.625])?;
            let m = hext_margin(&d, &SampleGrid::polar(1, 0.1, 2.0, 64, 64), DEFAULT_TOL)?;
            ch.near("h-extendibility margin", m.delta, 1.0 / 16.0, 0.1 / 16.0);
            let sp = build_pipeline(Pipeline::HExtendible, &d, &s, &l)?;
            let lim = coefficient_limit(&sp.rescaled)?;
            models.push(("H".into(), lim.to_string()));
            let tr = convergence_trace(&sp, &lim.specialize(0.0), &opts.classify_js, opts.grid_n);
            ch.near("sup-deviation order", tr.fitted_order.map_or(f64::NAN, |f| f.slope), -0.5, 0.1);
            squeeze = squeeze_checks(&mut ch, &s, &d, &l, opts)?;
        }
        ReproTarget::Ex53 => {
            eps_identity(&mut ch, &s, &d)?;
            ch.exact("convergence mode", mode.mode.name(), "non-spherical");
            let lap = laplacian_along(&d, &s);
            ch.exact("Laplacian of P along alpha_j", lap.is_zero(), true);
            let degenerate = match extract_limit_model(&d, &s, &l, &opts.classify_js, Pipeline::HExtendible) {
                Ok(lm) => !lm.positive_definite,
                Err(Error::NotConverged { .. }) => true,
                Err(e) => return Err(e),
            };
            ch.flag("h-extendible limit", if degenerate { "degenerate" } else { "ball" }, "degenerate", degenerate);
            let sp = build_pipeline(Pipeline::Example53, &d, &s, &l)?;
            let lim = coefficient_limit(&sp.rescaled)?;
            ch.exact("limit model A", &lim, &catalog("a-model")?.defining);
            models.push(("A".into(), lim.to_string()));
        }
    }
    let pass = ch.0.iter().all(|c| c.pass);
    Ok(ReproReport { target, checks: ch.0, models, squeeze, pass })
}
