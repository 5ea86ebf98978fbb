//! Normal-convergence diagnostics for rescaled domains and numerical
//! squeezing-function lower bounds.
//!
//! Outer radii come from boundary sampling and are heuristic; no report
//! claims a certified enclosure.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;

use crate::domains::{DomainSpec, DistanceMode};
use crate::error::{Error, Result};
use crate::maps::{cayley, ScalingMap};
use crate::par;
use crate::scaling::{build_pipeline, limit_from_pipeline, theta_step, Pipeline, ScaledPipeline};
use crate::scalar::Scalar;
use crate::sequences::{classify_sequence, fit_asymptotic_exponent, ApproachSequence, ExponentFit, Mode, ModeHint};
use crate::sphere::{self, halton};
use crate::weights::MultiWeight;
use crate::wpoly::{CompiledPoly, WPolynomial};

pub const DEFAULT_DIRECTIONS: usize = 2000;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const ENCLOSURE_NOTE: &str = "r_outer is estimated from boundary samples; no certified enclosure is claimed";

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Area-preserving-ish map of `[−1, 1]²` onto the closed unit disc.
fn square_to_disc(x: f64, y: f64) -> Complex64 {
    c(x * (1.0 - y * y / 2.0).sqrt(), y * (1.0 - x * x / 2.0).sqrt())
}

/// Product grid on the closed polydisc `|z_k| ≤ 1`, `Re w ∈ [−1, 1]`,
/// `Im w = 0`, with `grid_n` nodes per real axis.
pub fn polydisc_grid(n: usize, grid_n: usize) -> Vec<Vec<Complex64>> {
    let nodes: Vec<f64> =
        (0..grid_n).map(|i| if grid_n == 1 { 0.0 } else { -1.0 + 2.0 * i as f64 / (grid_n - 1) as f64 }).collect();
    let disc: Vec<Complex64> = nodes.iter().flat_map(|&x| nodes.iter().map(move |&y| square_to_disc(x, y))).collect();
    let mut pts: Vec<Vec<Complex64>> = vec![Vec::new()];
    for _ in 0..n {
        pts = pts.into_iter().flat_map(|p| disc.iter().map(move |d| [p.as_slice(), &[*d]].concat())).collect();
    }
    pts.into_iter().flat_map(|p| nodes.iter().map(move |&u| [p.as_slice(), &[c(u, 0.0)]].concat())).collect()
}

/// `max |a − b|` over the grid.
pub fn sup_deviation(a: &CompiledPoly, b: &CompiledPoly, grid: &[Vec<Complex64>]) -> f64 {
    let n = a.dim();
    par::map(grid, |p| (a.eval(&p[..n], p[n]) - b.eval(&p[..n], p[n])).abs()).into_iter().fold(0.0, f64::max)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceTrace {
    pub js: Vec<u64>,
    pub sup_devs: Vec<f64>,
    pub grid: String,
    pub fitted_order: Option<ExponentFit>,
}

/// Number of largest `j` values used to fit the convergence order.
pub const ORDER_FIT_TAIL: usize = 6;

/// `sup |ρ_j − ρ̂|` on the polydisc grid for each `j`.
pub fn convergence_trace(sp: &ScaledPipeline, limit: &WPolynomial<Complex64>, js: &[u64], grid_n: usize) -> ConvergenceTrace {
    let n = limit.dim();
    let grid = polydisc_grid(n, grid_n);
    let lim = limit.compile();
    let sup_devs: Vec<f64> = js.iter().map(|&j| sup_deviation(&sp.rescaled_at(j).compile(), &lim, &grid)).collect();
    let tail = js.len().saturating_sub(ORDER_FIT_TAIL);
    let fitted_order = fit_asymptotic_exponent(&sup_devs[tail..], &js[tail..]).ok();
    ConvergenceTrace {
        js: js.to_vec(),
        sup_devs,
        grid: format!("polydisc |z_k| <= 1, Re w in [-1, 1], Im w = 0; {grid_n} nodes per axis, {} points", grid.len()),
        fitted_order,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    /// Per interior sample, the first `j` from which it stays inside `D_j`.
    pub inner_thresholds: Vec<Option<u64>>,
    /// Per exterior sample, the first `j` from which it stays outside `D_j`.
    pub outer_thresholds: Vec<Option<u64>>,
    /// Samples dropped because they are not on the expected side of the limit.
    pub discarded: usize,
    pub pass: bool,
    pub verdict: String,
}

fn threshold(js: &[u64], ok: &[bool]) -> Option<u64> {
    let last_bad = ok.iter().rposition(|b| !b);
    match last_bad {
        None => js.first().copied(),
        Some(i) if i + 1 < js.len() => Some(js[i + 1]),
        _ => None,
    }
}

/// Sampled check of both containments of normal convergence `D_j → D`.
pub fn normal_convergence_probe(
    domains: &[(u64, CompiledPoly)],
    limit: &CompiledPoly,
    k_in: &[Vec<Complex64>],
    k_out: &[Vec<Complex64>],
) -> ProbeReport {
    let n = limit.dim();
    let js: Vec<u64> = domains.iter().map(|d| d.0).collect();
    let value = |p: &CompiledPoly, x: &[Complex64]| p.eval(&x[..n], x[n]);
    let mut discarded = 0;
    let mut scan = |pts: &[Vec<Complex64>], inside: bool| -> Vec<Option<u64>> {
        pts.iter()
            .filter(|x| {
                let keep = (value(limit, x) < 0.0) == inside;
                if !keep {
                    discarded += 1;
                }
                keep
            })
            .map(|x| {
                let ok: Vec<bool> = domains.iter().map(|(_, p)| (value(p, x) < 0.0) == inside).collect();
                threshold(&js, &ok)
            })
            .collect()
    };
    let inner_thresholds = scan(k_in, true);
    let outer_thresholds = scan(k_out, false);
    let pass = inner_thresholds.iter().chain(&outer_thresholds).all(Option::is_some);
    let verdict = if pass { "pass (sampled)" } else { "fail" }.to_string();
    ProbeReport { inner_thresholds, outer_thresholds, discarded, pass, verdict }
}

/// Points of the closed ball `|x − center| ≤ radius`.
pub fn ball_sample(center: &[Complex64], radius: f64, count: usize) -> Vec<Vec<Complex64>> {
    sphere::ball_points(center.len(), count)
        .into_iter()
        .map(|p| p.iter().zip(center).map(|(a, b)| b + a * radius).collect())
        .collect()
}

/// Points of the spherical shell `r0 ≤ |x − center| ≤ r1`.
pub fn shell_sample(center: &[Complex64], r0: f64, r1: f64, count: usize) -> Vec<Vec<Complex64>> {
    sphere::directions(center.len(), count)
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            let t = halton(i as u64 + 1, 1)[0];
            let r = r0 + (r1 - r0) * t;
            d.iter().zip(center).map(|(a, b)| b + a * r).collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct InnerRadius {
    pub r_inner: f64,
    /// Exit radius per direction.
    pub radii: Vec<f64>,
    pub directions: usize,
    pub tol: f64,
}

impl InnerRadius {
    pub fn max_radius(&self) -> f64 {
        self.radii.iter().cloned().fold(0.0, f64::max)
    }
}

const MARCH_STEP: f64 = 1.0 / 128.0;

/// Half-width of the rescaled compact whose boundary samples give `ε̂`.
pub const NEAR_RADIUS: f64 = 4.0;

/// Minimum over low-discrepancy directions `u` of the first exit radius of
/// `r ↦ r·u` from the set described by `inside`, marched in steps of
/// `1/128` up to `r_max` and refined by bisection to `tol`.
pub fn inner_radius_rays(
    inside: impl Fn(&[Complex64]) -> bool + Sync,
    dim: usize,
    directions: usize,
    tol: f64,
    r_max: f64,
) -> InnerRadius {
    let dirs = sphere::directions(dim, directions);
    let radii = par::map(&dirs, |u| {
        let at = |r: f64| {
            let x: Vec<Complex64> = u.iter().map(|v| v * r).collect();
            inside(&x)
        };
        let mut lo = 0.0;
        let mut hi = MARCH_STEP;
        while at(hi) {
            lo = hi;
            hi += MARCH_STEP;
            if hi > r_max {
                return r_max;
            }
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if at(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    });
    let r_inner = radii.iter().cloned().fold(f64::INFINITY, f64::min);
    InnerRadius { r_inner, radii, directions: dirs.len(), tol }
}

/// Inner radius of `f(Ω)` around `f(p)`, with membership through `f⁻¹`;
/// points outside the chart of `f⁻¹` count as outside.
pub fn inner_radius_via_rays(
    d: &DomainSpec,
    f: &ScalingMap<Complex64>,
    p: &[Complex64],
    directions: usize,
    tol: f64,
) -> Result<InnerRadius> {
    let center = f.apply(p)?;
    let off = norm(&center);
    if off > 1e-10 {
        return Err(Error::CenterNotMapped { norm: off });
    }
    let rho = d.defining.specialize(0.0).compile();
    let n = d.n;
    let inside = |x: &[Complex64]| match f.invert(x) {
        Ok(y) => rho.eval(&y[..n], y[n]) < 0.0,
        Err(_) => false,
    };
    Ok(inner_radius_rays(inside, n + 1, directions, tol, 4.0))
}

/// Boundary points of `{ρ < 0}` above sampled `(z, Im w)`, solving for
/// `Re w`. The `z_k` are spread log-uniformly in `[10⁻⁴, 1]·z_scales[k]`
/// and `Im w` likewise in `±[10⁻⁴, 1]·v_scale` (a quarter of the samples
/// take `Im w = 0`).
pub fn boundary_samples_over_zv(
    rho: &WPolynomial<Complex64>,
    z_center: &[Complex64],
    z_scales: &[f64],
    v_scale: f64,
    count: usize,
) -> Vec<Vec<Complex64>> {
    let n = rho.dim();
    let compiled = rho.compile();
    let du = rho.d_u();
    let u_linear = du.terms().all(|(e, _)| e.total_degree() == 0);
    let a = du.coefficient(&crate::wpoly::Exps::zero(n)).re;
    let idx: Vec<u64> = (1..=count as u64).collect();
    let pts = par::map(&idx, |&i| {
        let h = halton(i, 2 * n + 3);
        let mut z = Vec::with_capacity(n);
        for k in 0..n {
            let r = (-2.0 * (1.0 - h[2 * k]).max(1e-300).ln()).sqrt();
            z.push(Complex64::from_polar(r, 2.0 * PI * h[2 * k + 1]));
        }
        let zn = norm(&z).max(1e-300);
        let s = 10f64.powf(-4.0 * h[2 * n]);
        for k in 0..n {
            z[k] = z_center[k] + z[k] / zn * s * z_scales[k];
        }
        let hv = h[2 * n + 1];
        let v = if hv < 0.25 {
            0.0
        } else {
            let mag = v_scale * 10f64.powf(-4.0 * (hv - 0.25) / 0.75);
            if h[2 * n + 2] < 0.5 {
                -mag
            } else {
                mag
            }
        };
        let f = |u: f64| compiled.eval(&z, c(u, v));
        let u = if u_linear && a != 0.0 { Some(-f(0.0) / a) } else { solve_u(&f) };
        u.map(|u| [z.as_slice(), &[c(u, v)]].concat())
    });
    pts.into_iter().flatten().collect()
}

fn solve_u(f: &impl Fn(f64) -> f64) -> Option<f64> {
    let mut lo = -1.0;
    let mut hi = 1.0;
    let mut k = 0;
    while f(lo) >= 0.0 {
        lo *= 2.0;
        k += 1;
        if k > 80 {
            return None;
        }
    }
    k = 0;
    while f(hi) <= 0.0 {
        hi *= 2.0;
        k += 1;
        if k > 80 {
            return None;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * lo.abs().max(hi.abs()).max(1.0) {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

#[derive(Clone, Debug, Serialize)]
pub struct OuterRadius {
    /// `max |F(b)|` over samples in the neighbourhood `U₀` of the base point.
    pub r_outer: f64,
    /// `max |F(b)|` over all samples.
    pub r_outer_global: f64,
    pub samples: usize,
    /// Samples at which the forward map was undefined.
    pub chart_violations: usize,
    /// Largest `|F(b) − (0′, −1)|` over samples outside `U₀`.
    pub far_cluster: Option<f64>,
}

/// Image radii of boundary samples; `is_far` flags samples outside `U₀`.
pub fn outer_radius(
    samples: &[Vec<Complex64>],
    forward: impl Fn(&[Complex64]) -> Result<Vec<Complex64>> + Sync,
    is_far: impl Fn(&[Complex64]) -> bool + Sync,
) -> OuterRadius {
    let images = par::map(samples, |b| forward(b).ok().map(|y| (norm(&y), is_far(b), y)));
    let mut r_outer: f64 = 0.0;
    let mut r_global: f64 = 0.0;
    let mut far: Option<f64> = None;
    let mut violations = 0;
    for im in images {
        match im {
            Some((r, is_far, y)) => {
                r_global = r_global.max(r);
                if is_far {
                    let n = y.len() - 1;
                    let mut pole = vec![c(0.0, 0.0); n + 1];
                    pole[n] = c(-1.0, 0.0);
                    let d = norm(&y.iter().zip(&pole).map(|(a, b)| a - b).collect::<Vec<_>>());
                    far = Some(far.map_or(d, |m: f64| m.max(d)));
                } else {
                    r_outer = r_outer.max(r);
                }
            }
            None => violations += 1,
        }
    }
    if violations > 0 {
        r_global = f64::INFINITY;
    }
    OuterRadius { r_outer, r_outer_global: r_global, samples: samples.len(), chart_violations: violations, far_cluster: far }
}

/// `r_inner / r_outer`.
pub fn lower_bound(r_inner: f64, r_outer: f64) -> f64 {
    r_inner / r_outer
}

#[derive(Clone, Debug, Serialize)]
pub struct SqueezeEstimate {
    pub j: u64,
    pub eps: f64,
    pub tau: Vec<f64>,
    pub r_inner: f64,
    /// `1 + ε̂` from boundary samples near the base point.
    pub r_outer: f64,
    pub lower_bound: f64,
    /// Enclosing radius over every boundary sample, infinite when the map
    /// has a pole on the sampled boundary.
    pub r_outer_global: f64,
    pub lower_bound_global: f64,
    pub far_cluster: Option<f64>,
    pub directions: usize,
    pub boundary_samples: usize,
    /// Radial bisection tolerance.
    pub refinement: f64,
    pub wall_time: Option<f64>,
}

impl SqueezeEstimate {
    /// Builds an estimate, raising both outer radii to the largest ray exit
    /// so that `r_inner ≤ r_outer`.
    pub fn from_radii(j: u64, eps: f64, tau: Vec<f64>, inner: &InnerRadius, outer: &OuterRadius, boundary_samples: usize) -> Self {
        let r_outer = outer.r_outer.max(inner.max_radius());
        let r_outer_global = outer.r_outer_global.max(r_outer);
        SqueezeEstimate {
            j,
            eps,
            tau,
            r_inner: inner.r_inner,
            r_outer,
            lower_bound: lower_bound(inner.r_inner, r_outer),
            r_outer_global,
            lower_bound_global: lower_bound(inner.r_inner, r_outer_global),
            far_cluster: outer.far_cluster,
            directions: inner.directions,
            boundary_samples,
            refinement: inner.tol,
            wall_time: None,
        }
    }
}

pub fn squeeze_lower_bound(est: &SqueezeEstimate) -> f64 {
    lower_bound(est.r_inner, est.r_outer)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SqueezeOptions {
    pub directions: usize,
    pub boundary_samples: usize,
    pub tol: f64,
    /// Record wall time per `j`; off for byte-reproducible reports.
    pub timing: bool,
}

impl Default for SqueezeOptions {
    fn default() -> Self {
        SqueezeOptions { directions: DEFAULT_DIRECTIONS, boundary_samples: 4 * DEFAULT_DIRECTIONS, tol: DEFAULT_TOL, timing: false }
    }
}

/// Squeezing estimate for `F(Ω)` around `F(p) = 0` for an explicit map `F`.
/// Bounded domains are sampled along rays from their witness point; others
/// must have `ρ` solvable for `Re w`, sampled over `|z|, |Im w| ≤ 10³`.
pub fn squeeze_estimate(d: &DomainSpec, f: &ScalingMap<Complex64>, p: &[Complex64], opts: &SqueezeOptions) -> Result<SqueezeEstimate> {
    let start = opts.timing.then(Instant::now);
    let inner = inner_radius_via_rays(d, f, p, opts.directions, opts.tol)?;
    let samples = if d.is_bounded() {
        d.boundary_samples(opts.boundary_samples)?
    } else {
        let rho = d.defining.specialize(0.0);
        boundary_samples_over_zv(&rho, &vec![c(0.0, 0.0); d.n], &vec![1e3; d.n], 1e3, opts.boundary_samples)
    };
    let outer = outer_radius(&samples, |b| f.apply(b), |_| false);
    let mut est = SqueezeEstimate::from_radii(0, 0.0, Vec::new(), &inner, &outer, samples.len());
    est.wall_time = start.map(|t| t.elapsed().as_secs_f64());
    Ok(est)
}

#[derive(Clone, Debug, Serialize)]
pub struct SqueezeTrace {
    pub domain: String,
    pub sequence: String,
    pub pipeline: Pipeline,
    pub mode: Mode,
    pub estimates: Vec<SqueezeEstimate>,
    /// First `j` from which the lower bounds are nondecreasing.
    pub monotone_from: Option<u64>,
    pub note: String,
}

fn compatible(pipeline: Pipeline, mode: Mode) -> bool {
    match pipeline {
        Pipeline::HExtendible => matches!(mode, Mode::UniformlyLambdaTangential | Mode::Spherical),
        Pipeline::Example51 | Pipeline::Example51Literal => mode == Mode::Spherical,
        Pipeline::Prop41 | Pipeline::Example53 => false,
    }
}

/// First `j` after which the values never decrease.
pub fn monotone_from(js: &[u64], values: &[f64]) -> Option<u64> {
    let last_drop = (1..values.len()).rev().find(|&i| values[i] < values[i - 1]);
    match last_drop {
        None => js.first().copied(),
        Some(i) => js.get(i).copied(),
    }
}

/// Per-`j` squeezing estimates for `F_j = Ψ ∘ Θ ∘ T_j`, which sends `η_j`
/// to the origin and `Ω` close to the unit ball.
pub fn squeeze_trace(
    d: &DomainSpec,
    seq: &ApproachSequence,
    lambda: &MultiWeight,
    pipeline: Pipeline,
    js: &[u64],
    classify_js: &[u64],
    opts: &SqueezeOptions,
) -> Result<SqueezeTrace> {
    let mode = classify_sequence(seq, d, lambda, ModeHint::Auto, classify_js)?.mode;
    if !compatible(pipeline, mode) {
        return Err(Error::PipelineMismatch(format!(
            "sequence {} is {} and the {} pipeline needs a ball limit",
            seq.name,
            mode.name(),
            pipeline.name()
        )));
    }
    let sp = build_pipeline(pipeline, d, seq, lambda)?;
    let limit = limit_from_pipeline(d, seq, &sp, mode, classify_js)?;
    let theta = theta_step(&limit.hermitian_form())?;
    let n = d.n;
    let outer_map = ScalingMap::identity(n).then(theta).followed_by(&cayley(n));
    let mut estimates = Vec::with_capacity(js.len());
    for &j in js {
        let start = opts.timing.then(Instant::now);
        let tj = sp.map_at(j);
        let rho_j = sp.rescaled_at(j);
        let rho_c = rho_j.compile();
        let eta = seq.point(j as f64);
        let center = outer_map.apply(&tj.apply(&eta)?)?;
        let off = norm(&center);
        if off > 1e-10 {
            return Err(Error::CenterNotMapped { norm: off });
        }
        let inside = |x: &[Complex64]| match outer_map.invert(x) {
            Ok(y) => rho_c.eval(&y[..n], y[n]) < 0.0,
            Err(_) => false,
        };
        let inner = inner_radius_rays(inside, n + 1, opts.directions, opts.tol, 4.0);
        let tau = sp.tau_at(j);
        let eps = sp.eps.at(j as f64).re;
        let z_scales: Vec<f64> = tau.iter().map(|t| 4.0 / t).collect();
        let samples = boundary_samples_over_zv(&rho_j, &vec![c(0.0, 0.0); n], &z_scales, 4.0 / eps, opts.boundary_samples);
        // U₀ = T_j⁻¹(K) for the fixed compact K = {|Z_k|, |W| ≤ NEAR_RADIUS}
        // of the rescaled coordinates, where normal convergence applies
        let is_far = |b: &[Complex64]| b.iter().any(|x| x.norm() > NEAR_RADIUS);
        let outer = outer_radius(&samples, |b| outer_map.apply(b), is_far);
        let mut est = SqueezeEstimate::from_radii(j, eps, tau, &inner, &outer, samples.len());
        est.wall_time = start.map(|t| t.elapsed().as_secs_f64());
        estimates.push(est);
    }
    let bounds: Vec<f64> = estimates.iter().map(|e| e.lower_bound).collect();
    Ok(SqueezeTrace {
        domain: d.name.clone(),
        sequence: seq.name.clone(),
        pipeline,
        mode,
        monotone_from: monotone_from(js, &bounds),
        estimates,
        note: ENCLOSURE_NOTE.into(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DistDiam {
    pub point: Vec<(f64, f64)>,
    pub distance: f64,
    pub diameter: f64,
    pub bound: f64,
}

/// `½·dist(q, ∂D)/diam(D)` for a bounded domain.
pub fn dist_diam_bound(d: &DomainSpec, q: &[Complex64], samples: usize) -> Result<DistDiam> {
    if !d.is_bounded() {
        return Err(Error::Unbounded(d.name.clone()));
    }
    let (value, inside) = d.contains(q)?;
    if !inside {
        return Err(Error::NotInterior { value });
    }
    let distance = d.boundary_distance(q, DistanceMode::Euclidean)?.distance;
    let diameter = d.diameter_estimate(samples)?;
    Ok(DistDiam { point: q.iter().map(|v| (v.re, v.im)).collect(), distance, diameter, bound: 0.5 * distance / diameter })
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop41Floor {
    /// Image of `(0, 0, −1)` under the weighted Cayley realization.
    pub computed: DistDiam,
    /// The point `(0, √(2/3), −1/2)` quoted for the same image.
    pub quoted: DistDiam,
    pub refused: String,
}

/// Positive floor for the non-uniform `E_{1,2,4}` sequence: the alternative
/// scaling converges to `M_{1,2}`, whose bounded realization bounds the
/// squeezing function below by `½·dist/diam` at the image of the center.
pub fn prop41_floor(samples: usize, classify_js: &[u64]) -> Result<Prop41Floor> {
    let seq = crate::sequences::catalog_sequence("prop-4-1")?;
    let d = crate::domains::catalog(&seq.domain_id)?;
    let lambda = d.lambda.clone().ok_or_else(|| Error::InvariantViolation("e124 has no multiweight".into()))?;
    let refused = match squeeze_trace(&d, &seq, &lambda, Pipeline::HExtendible, &[], classify_js, &SqueezeOptions::default()) {
        Err(Error::PipelineMismatch(msg)) => msg,
        Err(e) => return Err(e),
        Ok(_) => return Err(Error::InvariantViolation("non-uniform sequence accepted by the uniform pipeline".into())),
    };
    let m12 = crate::domains::catalog("m12")?;
    let (map, bounded) = crate::domains::model_to_bounded(&m12)?;
    let image = map.apply(&[c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])?;
    let computed = dist_diam_bound(&bounded, &image, samples)?;
    let quoted = dist_diam_bound(&bounded, &[c(0.0, 0.0), c((2.0f64 / 3.0).sqrt(), 0.0), c(-0.5, 0.0)], samples)?;
    Ok(Prop41Floor { computed, quoted, refused })
}
