//! Acceptance criteria; prints one PASS/FAIL line per criterion and exits
//! nonzero when any fails.

mod common;

use std::time::{Duration, Instant};

use common::{c, SUITES};
use num_complex::Complex64;
use squeezelab::analysis::{convergence_trace, prop41_floor, squeeze_trace, SqueezeOptions};
use squeezelab::domains::{catalog, DomainSpec};
use squeezelab::error::Error;
use squeezelab::jexpr::parse_gauss;
use squeezelab::psh::{hext_margin, SampleGrid, DEFAULT_TOL};
use squeezelab::scalar::{GaussJ, Ring, Scalar};
use squeezelab::scaling::{build_pipeline, coefficient_limit, extract_limit_model, Pipeline};
use squeezelab::sequences::{catalog_sequence, classify_sequence, default_js, fit_asymptotic_exponent, laplacian_along, ApproachSequence, ModeHint};
use squeezelab::weights::MultiWeight;

type Outcome = Result<Vec<String>, Vec<String>>;

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn setup(seq: &str) -> (ApproachSequence, DomainSpec, MultiWeight) {
    let s = catalog_sequence(seq).unwrap();
    let d = catalog(&s.domain_id).unwrap();
    let l = d.lambda.clone().unwrap();
    (s, d, l)
}

fn powers(a: u32, b: u32) -> Vec<u64> {
    (a..=b).map(|k| 1u64 << k).collect()
}

/// Collects notes and failures for one criterion.
#[derive(Default)]
struct Log {
    notes: Vec<String>,
    failed: bool,
}

impl Log {
    fn check(&mut self, ok: bool, note: String) {
        self.notes.push(format!("{} {note}", if ok { "ok  " } else { "FAIL" }));
        self.failed |= !ok;
    }

    fn finish(self) -> Outcome {
        if self.failed {
            Err(self.notes)
        } else {
            Ok(self.notes)
        }
    }
}

fn exact_identities() -> Outcome {
    let mut log = Log::default();
    let expected = parse_gauss("-j^(-2)").unwrap();
    for seq in ["ex-4-1", "ex-5-2", "ex-5-3"] {
        let (s, d, _) = setup(seq);
        let v = d.value_exact::<GaussJ>(&s.eta()).unwrap();
        log.check(v == expected, format!("{seq} on {}: rho(eta_j) = {v}", d.name));
        let worst = (2..=1024u32).map(|j| (v.at(j as f64).re * (j as f64).powi(2) + 1.0).abs()).fold(0.0, f64::max);
        log.check(worst < 1e-12, format!("{seq}: numeric check over j = 2..1024, worst relative residual {worst:e}"));
    }
    log.finish()
}

/// `∂²g/∂Z_k∂Z̄_l(0)` for `g(Z) = ε⁻¹ P(α + τ·Z)`, by central differences.
fn brute_force_hessian(p: &squeezelab::wpoly::CompiledPoly, alpha: &[Complex64], tau: &[f64], eps: f64) -> Vec<Complex64> {
    let n = alpha.len();
    let h = 1e-3;
    let g = |dz: &[Complex64]| {
        let z: Vec<Complex64> = (0..n).map(|k| alpha[k] + dz[k] * tau[k]).collect();
        p.eval(&z, c(0.0, 0.0)) / eps
    };
    let second = |a: (usize, Complex64), b: (usize, Complex64)| {
        let at = |sa: f64, sb: f64| {
            let mut dz = vec![c(0.0, 0.0); n];
            dz[a.0] += a.1 * sa * h;
            dz[b.0] += b.1 * sb * h;
            g(&dz)
        };
        (at(1.0, 1.0) - at(1.0, -1.0) - at(-1.0, 1.0) + at(-1.0, -1.0)) / (4.0 * h * h)
    };
    let (x, y) = (c(1.0, 0.0), c(0.0, 1.0));
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            let re = second((k, x), (l, x)) + second((k, y), (l, y));
            let im = second((k, x), (l, y)) - second((k, y), (l, x));
            out.push(c(re, im) / 4.0);
        }
    }
    out
}

fn limit_constants() -> Outcome {
    let mut log = Log::default();
    let js = powers(6, 12);
    let (s, d, l) = setup("ex-5-2");
    let kn = extract_limit_model(&d, &s, &l, &js, Pipeline::HExtendible).unwrap();
    log.check((kn.hermitian[0].0 - 31.0).abs() <= 1e-3, format!("ex-5-2 coefficient {:.9}", kn.hermitian[0].0));
    let (s, d, l) = setup("ex-5-1");
    let g = extract_limit_model(&d, &s, &l, &js, Pipeline::Example51).unwrap();
    log.check((g.hermitian[0].0 - 5.0).abs() <= 1e-3, format!("ex-5-1 coefficient {:.9}", g.hermitian[0].0));

    let (s, d, l) = setup("ex-4-1");
    let lm = extract_limit_model(&d, &s, &l, &js, Pipeline::HExtendible).unwrap();
    let half = lm.halved();
    let target = [c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(4.5, 0.0)];
    let err = half.entries().iter().zip(&target).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    log.check(err <= 1e-3, format!("ex-4-1 halved form {:?}, max error {err:e}", half.entries()));

    let sp = build_pipeline(Pipeline::HExtendible, &d, &s, &l).unwrap();
    let p = d.defining.pure_z_part().specialize(0.0).compile();
    let mut worst: f64 = 0.0;
    for per in &lm.per_j {
        let j = per.j as f64;
        let oracle = brute_force_hessian(&p, &s.point(j)[..d.n], &sp.tau_at(per.j), s.eps(&d, j).unwrap());
        for (a, &(re, im)) in oracle.iter().zip(&per.entries) {
            worst = worst.max((a - c(re, im)).norm() / (1.0 + a.norm()));
        }
    }
    log.check(worst <= 1e-5, format!("per-j brute-force oracle agrees to {worst:e} over j = 2^6..2^12"));
    log.finish()
}

fn margins() -> Outcome {
    let mut log = Log::default();
    let e123 = catalog("e123").unwrap();
    let m = hext_margin(&e123, &SampleGrid::polar(2, 0.1, 2.0, 8, 16), DEFAULT_TOL).unwrap();
    log.check(m.delta >= 1.0 - 1e-6, format!("e123 margin {:.9}", m.delta));
    let kn = catalog("kn").unwrap();
    let m = hext_margin(&kn, &SampleGrid::polar(1, 0.1, 2.0, 64, 64), DEFAULT_TOL).unwrap();
    log.check((m.delta - 1.0 / 16.0).abs() <= 0.1 / 16.0, format!("kn margin {:.9} (1/16 = 0.0625)", m.delta));
    let (s, d, l) = setup("ex-5-3");
    let lap = laplacian_along(&d, &s);
    log.check(lap.is_zero(), format!("kn-tilde Laplacian along alpha_j = {lap}"));
    let report = classify_sequence(&s, &d, &l, ModeHint::Auto, &default_js()).unwrap();
    log.check(report.mode.name() == "non-spherical", format!("kn-tilde verdict {}", report.mode.name()));
    log.finish()
}

fn tau_laws() -> Outcome {
    let mut log = Log::default();
    let js = default_js();
    for (seq, pipeline, expected) in [
        ("ex-4-1", Pipeline::HExtendible, vec![-0.75, -2.0 / 3.0]),
        ("prop-4-1", Pipeline::Prop41, vec![-0.75, -0.375]),
        ("ex-5-2", Pipeline::HExtendible, vec![-0.625]),
        ("ex-5-1", Pipeline::Example51, vec![-0.75]),
    ] {
        let (s, d, l) = setup(seq);
        let sp = build_pipeline(pipeline, &d, &s, &l).unwrap();
        for (k, e) in expected.iter().enumerate() {
            let vals: Vec<f64> = js.iter().map(|&j| sp.tau_at(j)[k]).collect();
            let slope = fit_asymptotic_exponent(&vals, &js).unwrap().slope;
            log.check((slope - e).abs() <= 0.02, format!("{seq} tau_{} slope {slope:.5}, expected {e:.5}", k + 1));
        }
    }
    log.finish()
}

fn convergence_order() -> Outcome {
    let mut log = Log::default();
    for (seq, pipeline) in [("ex-5-1", Pipeline::Example51), ("ex-5-2", Pipeline::HExtendible)] {
        let (s, d, l) = setup(seq);
        let sp = build_pipeline(pipeline, &d, &s, &l).unwrap();
        let lim = coefficient_limit(&sp.rescaled).unwrap().specialize(0.0);
        let tr = convergence_trace(&sp, &lim, &default_js(), 17);
        let slope = tr.fitted_order.as_ref().map_or(f64::NAN, |f| f.slope);
        log.check((slope + 0.5).abs() <= 0.1, format!("{seq} sup-deviation slope {slope:.4} on {}", tr.grid));
    }
    log.finish()
}

fn squeezing() -> Outcome {
    let mut log = Log::default();
    let js = powers(4, 10);
    for seq in ["ex-4-1", "ex-5-2"] {
        let (s, d, l) = setup(seq);
        let tr = squeeze_trace(&d, &s, &l, Pipeline::HExtendible, &js, &default_js(), &SqueezeOptions::default()).unwrap();
        let bounds: Vec<f64> = tr.estimates.iter().map(|e| e.lower_bound).collect();
        let shown: Vec<String> = tr.estimates.iter().map(|e| format!("{}:{:.4}", e.j, e.lower_bound)).collect();
        log.check(tr.monotone_from == Some(16), format!("{} nondecreasing from j=16 (monotone from {:?}): {}", d.name, tr.monotone_from, shown.join(" ")));
        let last = *bounds.last().unwrap();
        log.check(last >= 0.9, format!("{} bound at j=1024 is {last:.4}", d.name));
    }
    log.finish()
}

fn negative_control() -> Outcome {
    let mut log = Log::default();
    let (s, d, l) = setup("prop-4-1");
    let js = default_js();
    let report = classify_sequence(&s, &d, &l, ModeHint::Auto, &js).unwrap();
    log.check(report.mode.name() == "lambda-tangential-nonuniform", format!("verdict {}", report.mode.name()));
    let refused = squeeze_trace(&d, &s, &l, Pipeline::HExtendible, &powers(4, 6), &js, &SqueezeOptions::default());
    log.check(matches!(refused, Err(Error::PipelineMismatch(_))), "uniform-tangential squeeze pipeline refuses".into());
    let sp = build_pipeline(Pipeline::Prop41, &d, &s, &l).unwrap();
    let lim = coefficient_limit(&sp.rescaled).unwrap();
    log.check(lim == catalog("m12").unwrap().defining, format!("alternative limit {lim}"));
    let floor = prop41_floor(2000, &js).unwrap();
    for (label, dd) in [("quoted", &floor.quoted), ("computed", &floor.computed)] {
        log.check(dd.bound > 0.0, format!("{label} image point {:?}: floor {:.6}", dd.point, dd.bound));
    }
    log.finish()
}

fn property_suites() -> Outcome {
    let mut log = Log::default();
    for (name, suite) in SUITES {
        match suite() {
            Ok(()) => log.check(true, name.into()),
            Err(e) => log.check(false, format!("{name}: {e}")),
        }
    }
    log.finish()
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "exact identities", budget: Duration::from_secs(1), run: exact_identities },
        Criterion { id: 2, title: "limit-model constants", budget: Duration::from_secs(10), run: limit_constants },
        Criterion { id: 3, title: "h-extendibility margins", budget: Duration::from_secs(5), run: margins },
        Criterion { id: 4, title: "tau laws", budget: Duration::from_secs(1), run: tau_laws },
        Criterion { id: 5, title: "convergence order", budget: Duration::from_secs(30), run: convergence_order },
        Criterion { id: 6, title: "squeezing traces", budget: Duration::from_secs(300), run: squeezing },
        Criterion { id: 7, title: "negative control", budget: Duration::from_secs(30), run: negative_control },
        Criterion { id: 8, title: "property suites", budget: Duration::from_secs(60), run: property_suites },
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failures = 0;
    for cr in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (cr.run)();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= cr.budget;
        let (ok, notes) = match outcome {
            Ok(n) => (in_budget, n),
            Err(n) => (false, n),
        };
        failures += usize::from(!ok);
        println!(
            "criterion {} ({}): {} in {:.2}s (budget {}s)",
            cr.id,
            cr.title,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            cr.budget.as_secs()
        );
        for n in notes {
            println!("    {n}");
        }
        if !in_budget {
            println!("    FAIL runtime over budget");
        }
    }
    println!("acceptance: {} of {} criteria failed", failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
