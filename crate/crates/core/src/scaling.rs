//! Scaling pipelines: symbolic-in-`j` maps `T_j`, rescaled defining
//! functions, limit-model extraction and the strongly pseudoconvex normal
//! form.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::hermitian::{hessian_polys, HermitianForm};
use crate::jexpr::{parse_gauss, JExpr};
use crate::maps::{ScalingMap, ScalingStep};
use crate::scalar::{Exponent, GaussJ, GaussQ, Ring, Scalar};
use crate::sequences::{
    catalog_sequence, classify_sequence, fit_asymptotic_exponent, tau_h_extendible_exact, ApproachSequence, ExponentFit,
    Mode, ModeHint,
};
use crate::weights::MultiWeight;
use crate::wpoly::{Exps, WPolynomial};

/// Number of trailing `j` values used for extrapolation.
pub const RICHARDSON_WINDOW: usize = 4;
pub const CAUCHY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pipeline {
    /// Translation, degree-2 shear and `(τ, ε)` dilation with the
    /// h-extendible `τ`; in `ℂ²` this is also the finite-type scaling.
    HExtendible,
    /// Scripted alternative scaling of the non-uniform `E_{1,2,4}` sequence.
    #[serde(rename = "prop-4-1")]
    Prop41,
    /// Scripted `𝒢`-domain map with unit `w`-scale.
    #[serde(rename = "ex-5-1-literal")]
    Example51Literal,
    /// `𝒢`-domain map with the `w`-scale `1 + ic` cancelling the `Im w` drift.
    #[serde(rename = "ex-5-1")]
    Example51,
    /// Kohn–Nirenberg variant with `τ = j^{-3/8}` and a full pluriharmonic shear.
    #[serde(rename = "ex-5-3")]
    Example53,
}

impl Pipeline {
    pub const ALL: [Pipeline; 5] =
        [Pipeline::HExtendible, Pipeline::Prop41, Pipeline::Example51Literal, Pipeline::Example51, Pipeline::Example53];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::HExtendible => "h-extendible",
            Pipeline::Prop41 => "prop-4-1",
            Pipeline::Example51Literal => "ex-5-1-literal",
            Pipeline::Example51 => "ex-5-1",
            Pipeline::Example53 => "ex-5-3",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| Error::Parse(format!("unknown pipeline {s:?}")))
    }

    /// Default pipeline for a catalog sequence id.
    pub fn for_sequence(id: &str) -> Self {
        match id {
            "prop-4-1" => Pipeline::Prop41,
            "ex-5-1" => Pipeline::Example51,
            "ex-5-3" => Pipeline::Example53,
            _ => Pipeline::HExtendible,
        }
    }
}

/// A scaling pipeline with `j` left symbolic.
#[derive(Clone, Debug)]
pub struct ScaledPipeline {
    pub pipeline: Pipeline,
    /// `T_j`, sending `η′_j ↦ 0` and `η_j ↦ (0′, −1)`.
    pub map: ScalingMap<GaussJ>,
    pub eps: GaussJ,
    pub tau: Vec<GaussJ>,
    /// `ρ_j = ε⁻¹ ρ ∘ T_j⁻¹`.
    pub rescaled: WPolynomial<GaussJ>,
}

impl ScaledPipeline {
    pub fn map_at(&self, j: u64) -> ScalingMap<Complex64> {
        self.map.specialize(j as f64)
    }

    pub fn rescaled_at(&self, j: u64) -> WPolynomial<Complex64> {
        self.rescaled.specialize(j as f64)
    }

    pub fn tau_at(&self, j: u64) -> Vec<f64> {
        self.tau.iter().map(|t| t.at(j as f64).re).collect()
    }

    /// `∂²ρ_j/∂z_k∂z̄_l (0)`, exact in `j`.
    pub fn hermitian_exact(&self) -> HermitianForm<GaussJ> {
        let n = self.rescaled.dim();
        let polys = hessian_polys(&self.rescaled);
        let zero = vec![GaussJ::zero(); n];
        HermitianForm::from_fn(n, |k, l| polys[k][l].eval(&zero, &GaussJ::zero()))
    }
}

/// `P` with `ρ = Re w + P(z)`.
pub fn rigid_part(d: &DomainSpec) -> Result<WPolynomial> {
    let p = d.defining.sub(&WPolynomial::u(d.n));
    if !p.depends_only_on_z() {
        return Err(Error::PipelineMismatch(format!("{} is not rigid: defining function is not Re w + P(z)", d.name)));
    }
    Ok(p)
}

/// Holomorphic Taylor terms of `P(α + z)` of degree `1..=max_degree`.
pub fn holomorphic_jet<C: Scalar>(p: &WPolynomial<C>, alpha: &[C], max_degree: u32) -> WPolynomial<C> {
    let n = p.dim();
    let zs: Vec<WPolynomial<C>> =
        (0..n).map(|k| WPolynomial::constant(n, alpha[k].clone()).add(&WPolynomial::z(n, k))).collect();
    let centered = p.substitute(&zs, &WPolynomial::u(n), &WPolynomial::v(n));
    centered.filter(|e| e.u == 0 && e.v == 0 && e.zb.iter().all(|&b| b == 0) && (1..=max_degree).contains(&e.z_degree()))
}

/// `L` (translation by `−η′`), shear `w ↦ w + 2·jet(P)` and dilation
/// `(z, w) ↦ (z/τ, w/ε)` for `ρ = Re w + P(z)`.
pub fn build_rigid<C: Scalar>(
    p: &WPolynomial<C>,
    eta_prime: &[C],
    eps: &C,
    tau: &[C],
    shear_degree: u32,
) -> ScalingMap<C> {
    let n = p.dim();
    let jet = holomorphic_jet(p, &eta_prime[..n], shear_degree);
    let mut factors = tau.to_vec();
    factors.push(eps.clone());
    ScalingMap::identity(n)
        .then(ScalingStep::translation(eta_prime.iter().map(Ring::neg).collect()))
        .then(ScalingStep::Shear { scale: C::one(), q: jet.scale(&C::from_i64(-2)) })
        .then(ScalingStep::Dilation { inverse_factors: factors })
}

/// `ε⁻¹ ρ ∘ m⁻¹`, exact when every step of `m` is polynomial.
pub fn rescaled_defining<C: Scalar>(d: &DomainSpec, m: &ScalingMap<C>, eps: &C) -> Result<WPolynomial<C>> {
    let inv = eps.try_inv().ok_or_else(|| Error::NotRepresentable("1/ε".into()))?;
    Ok(m.pullback(&d.defining.lift::<C>())?.scale(&inv))
}

/// The §4.2 map `T_j = Δ_j ∘ Q_j ∘ L_{η′_j}` with the h-extendible `τ`.
pub fn build_scaling_h_extendible(d: &DomainSpec, seq: &ApproachSequence, lambda: &MultiWeight) -> Result<ScalingMap<GaussJ>> {
    let p = rigid_part(d)?.lift::<GaussJ>();
    let tau = tau_h_extendible_exact(seq, d, lambda)?;
    let eps = seq.eps_exact(d)?;
    let eta_prime = seq.boundary_point_exact(d)?;
    Ok(build_rigid(&p, &eta_prime, &eps, &tau, 2))
}

fn gj(src: &str) -> GaussJ {
    parse_gauss(src).expect("valid literal")
}

fn require_catalog(seq: &ApproachSequence, d: &DomainSpec, id: &str, pipeline: Pipeline) -> Result<()> {
    let expected = catalog_sequence(id)?;
    if seq.alpha != expected.alpha || seq.beta != expected.beta || d.name != expected.domain_id {
        return Err(Error::PipelineMismatch(format!(
            "the {} pipeline is scripted for sequence {id} on {}",
            pipeline.name(),
            expected.domain_id
        )));
    }
    Ok(())
}

fn scripted(
    n: usize,
    eta_prime: &[GaussJ],
    scale: GaussJ,
    q: WPolynomial<GaussJ>,
    tau: &[GaussJ],
    eps: &GaussJ,
) -> ScalingMap<GaussJ> {
    let mut factors = tau.to_vec();
    factors.push(eps.clone());
    ScalingMap::identity(n)
        .then(ScalingStep::translation(eta_prime.iter().map(Ring::neg).collect()))
        .then(ScalingStep::Shear { scale, q })
        .then(ScalingStep::Dilation { inverse_factors: factors })
}

/// `c·z_k^e` with `c` a literal in `j`.
fn zterm(n: usize, k: usize, e: u32, c: &str) -> WPolynomial<GaussJ> {
    let mut z = vec![0; n];
    z[k] = e;
    WPolynomial::monomial(gj(c), z, vec![0; n], 0, 0)
}

pub fn build_pipeline(pipeline: Pipeline, d: &DomainSpec, seq: &ApproachSequence, lambda: &MultiWeight) -> Result<ScaledPipeline> {
    let eps = seq.eps_exact(d)?;
    let eta_prime = seq.boundary_point_exact(d)?;
    let (map, tau) = match pipeline {
        Pipeline::HExtendible => {
            let tau = tau_h_extendible_exact(seq, d, lambda)?;
            let p = rigid_part(d)?.lift::<GaussJ>();
            (build_rigid(&p, &eta_prime, &eps, &tau, 2), tau)
        }
        Pipeline::Prop41 => {
            require_catalog(seq, d, "prop-4-1", pipeline)?;
            let tau = vec![gj("1/2*j^(-3/4)"), gj("j^(-3/8)")];
            let q = zterm(2, 0, 1, "-4*j^(-3/4)").add(&zterm(2, 0, 2, "-2*j^(-1/2)"));
            (scripted(2, &eta_prime, GaussJ::one(), q, &tau, &eps), tau)
        }
        Pipeline::Example51Literal | Pipeline::Example51 => {
            require_catalog(seq, d, "ex-5-1", pipeline)?;
            let tau = vec![gj("j^(-3/4)")];
            let q = zterm(1, 0, 1, "-6*j^(-3/4)").add(&zterm(1, 0, 2, "-2*j^(-1/2)"));
            let scale = if pipeline == Pipeline::Example51 {
                // ∂ρ/∂v at η′ is 2·Im β·|α|² = 2j^{-3/4}
                GaussJ::one().add(&gj("i*2*j^(-3/4)"))
            } else {
                GaussJ::one()
            };
            let q = q.scale(&scale);
            (scripted(1, &eta_prime, scale, q, &tau, &eps), tau)
        }
        Pipeline::Example53 => {
            require_catalog(seq, d, "ex-5-3", pipeline)?;
            let tau = vec![gj("j^(-3/8)")];
            let p = rigid_part(d)?.lift::<GaussJ>();
            (build_rigid(&p, &eta_prime, &eps, &tau, p.max_z_degree()), tau)
        }
    };
    let rescaled = rescaled_defining(d, &map, &eps)?;
    Ok(ScaledPipeline { pipeline, map, eps, tau, rescaled })
}

/// Coefficientwise `j → ∞` limit of a polynomial with coefficients in
/// `ℚ[i][j^p]`; fails when some coefficient grows.
pub fn coefficient_limit(p: &WPolynomial<GaussJ>) -> Result<WPolynomial<GaussQ>> {
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        for part in [&c.re, &c.im] {
            if let Some(lead) = part.leading_exponent() {
                if lead > Exponent::from_integer(0) {
                    return Err(Error::NotConverged { oscillation: f64::INFINITY });
                }
            }
        }
        let lim = GaussQ::new(c.re.constant_part(), c.im.constant_part());
        if !lim.is_zero() {
            terms.push((e.clone(), lim));
        }
    }
    Ok(WPolynomial::from_terms(p.dim(), terms))
}

/// Limit `L` and exponent `p` of `h(j) ≈ L + C·j^{−p}` from three values at
/// doubling `j`; `None` when the differences do not contract.
pub fn richardson3(h: [f64; 3]) -> Option<(f64, f64)> {
    let d1 = h[1] - h[0];
    let d2 = h[2] - h[1];
    let scale = h.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if d2.abs() <= 1e-15 * scale {
        return Some((h[2], f64::INFINITY));
    }
    let r = d2 / d1;
    if !(r.abs() < 1.0) || !r.is_finite() {
        return None;
    }
    Some((h[2] + d2 * r / (1.0 - r), -r.abs().log2()))
}

#[derive(Clone, Debug, Serialize)]
pub struct PerJHermitian {
    pub j: u64,
    pub entries: Vec<(f64, f64)>,
}

fn form_to_pairs(h: &HermitianForm) -> Vec<(f64, f64)> {
    h.entries().iter().map(|c| (c.re, c.im)).collect()
}

fn pairs_to_form(n: usize, e: &[(f64, f64)]) -> HermitianForm {
    HermitianForm::from_fn(n, |k, l| Complex64::new(e[k * n + l].0, e[k * n + l].1))
}

/// Limit of the rescaled defining functions.
#[derive(Clone, Debug, Serialize)]
pub struct LimitModel {
    pub domain: String,
    pub sequence: String,
    pub pipeline: Pipeline,
    pub mode: Mode,
    pub n: usize,
    /// Extrapolated `∂²ρ_j/∂z_k∂z̄_l(0)`, row-major.
    pub hermitian: Vec<(f64, f64)>,
    pub eigenvalues: Vec<f64>,
    pub positive_definite: bool,
    /// Largest disagreement between the two extrapolation windows.
    pub oscillation: f64,
    pub per_j: Vec<PerJHermitian>,
    /// Exact coefficientwise limit of `ρ_j`, when it exists.
    #[serde(skip)]
    pub polynomial: Option<WPolynomial<GaussQ>>,
    #[serde(rename = "polynomial")]
    pub polynomial_text: Option<String>,
    /// Decay order of `max |H_j − H|`.
    pub residual_order: Option<ExponentFit>,
}

impl LimitModel {
    pub fn hermitian_form(&self) -> HermitianForm {
        pairs_to_form(self.n, &self.hermitian)
    }

    /// The form with the factor `1/2` of the `a_{kl}` convention.
    pub fn halved(&self) -> HermitianForm {
        self.hermitian_form().scale(&Complex64::new(0.5, 0.0))
    }

    /// `Θ` sending `Re w + H(z) < 0` onto the Siegel half-space.
    pub fn theta(&self) -> Result<ScalingStep<Complex64>> {
        theta_step(&self.hermitian_form())
    }
}

/// Extrapolates the per-`j` Hermitian forms of a pipeline over `js`
/// (doubling), checking convergence on the last [`RICHARDSON_WINDOW`] values.
pub fn extract_limit_model(
    d: &DomainSpec,
    seq: &ApproachSequence,
    lambda: &MultiWeight,
    js: &[u64],
    pipeline: Pipeline,
) -> Result<LimitModel> {
    if js.len() < RICHARDSON_WINDOW {
        return Err(Error::InvariantViolation(format!("need at least {RICHARDSON_WINDOW} j values")));
    }
    let mode = classify_sequence(seq, d, lambda, ModeHint::Auto, js)?.mode;
    let sp = build_pipeline(pipeline, d, seq, lambda)?;
    limit_from_pipeline(d, seq, &sp, mode, js)
}

pub fn limit_from_pipeline(d: &DomainSpec, seq: &ApproachSequence, sp: &ScaledPipeline, mode: Mode, js: &[u64]) -> Result<LimitModel> {
    let n = d.n;
    let exact = sp.hermitian_exact();
    let per_j: Vec<HermitianForm> = js.iter().map(|&j| exact.at(j as f64)).collect();
    let tail = &per_j[per_j.len() - RICHARDSON_WINDOW..];
    let mut limit = vec![Complex64::new(0.0, 0.0); n * n];
    let mut oscillation: f64 = 0.0;
    for i in 0..n * n {
        let mut parts = [0.0; 2];
        for (part, slot) in parts.iter_mut().enumerate() {
            let vals: Vec<f64> = tail.iter().map(|h| if part == 0 { h.entries()[i].re } else { h.entries()[i].im }).collect();
            let a = richardson3([vals[0], vals[1], vals[2]]);
            let b = richardson3([vals[1], vals[2], vals[3]]);
            match (a, b) {
                (Some((la, _)), Some((lb, _))) => {
                    oscillation = oscillation.max((la - lb).abs());
                    *slot = lb;
                }
                _ => {
                    let spread = vals.iter().fold(f64::NEG_INFINITY, |m, v| m.max((v - vals[0]).abs()));
                    return Err(Error::NotConverged { oscillation: spread });
                }
            }
        }
        limit[i] = Complex64::new(parts[0], parts[1]);
    }
    let scale = limit.iter().fold(1.0f64, |m, c| m.max(c.norm()));
    if oscillation > CAUCHY_TOL * scale {
        return Err(Error::NotConverged { oscillation });
    }
    let h = HermitianForm::from_fn(n, |k, l| limit[k * n + l]);
    let eigenvalues = h.eigenvalues();
    let positive_definite = eigenvalues[0] > CAUCHY_TOL * scale;
    let residuals: Vec<f64> = per_j.iter().map(|m| m.max_abs_diff(&h)).collect();
    let residual_order = fit_asymptotic_exponent(&residuals, js).ok();
    let polynomial = coefficient_limit(&sp.rescaled).ok();
    Ok(LimitModel {
        domain: d.name.clone(),
        sequence: seq.name.clone(),
        pipeline: sp.pipeline,
        mode,
        n,
        hermitian: form_to_pairs(&h),
        eigenvalues,
        positive_definite,
        oscillation,
        per_j: js.iter().zip(&per_j).map(|(&j, m)| PerJHermitian { j, entries: form_to_pairs(m) }).collect(),
        polynomial_text: polynomial.as_ref().map(|p| p.to_string()),
        polynomial,
        residual_order,
    })
}

/// Eigenvectors (descending eigenvalues) with the largest-modulus entry of
/// each column made real and positive.
pub fn phase_fixed_eigen(h: &HermitianForm) -> (Vec<f64>, DMatrix<Complex64>) {
    let (values, mut vectors) = h.eigen_decomposition();
    for c in 0..vectors.ncols() {
        let mut best = (0, 0.0);
        for r in 0..vectors.nrows() {
            let m = vectors[(r, c)].norm();
            if m > best.1 + 1e-12 {
                best = (r, m);
            }
        }
        let phase = vectors[(best.0, c)] / best.1;
        for r in 0..vectors.nrows() {
            vectors[(r, c)] /= phase;
        }
    }
    (values, vectors)
}

/// `z ↦ D^{1/2} Vᵀ z` with `H = V D V*`, so that `Σ h_kl z_k z̄_l = |Θz|²`.
pub fn theta_step(h: &HermitianForm) -> Result<ScalingStep<Complex64>> {
    let n = h.dim();
    let (values, v) = phase_fixed_eigen(h);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min > 0.0) {
        return Err(Error::NotStronglyPseudoconvex { min_eigenvalue: min });
    }
    let matrix: Vec<Vec<Complex64>> = (0..n).map(|r| (0..n).map(|c| v[(c, r)] * values[r].sqrt()).collect()).collect();
    let inverse: Vec<Vec<Complex64>> = (0..n).map(|r| (0..n).map(|c| v[(r, c)].conj() / values[c].sqrt()).collect()).collect();
    let unitary = values.iter().all(|x| (x - 1.0).abs() < 1e-14);
    Ok(ScalingStep::z_linear(matrix, inverse, unitary))
}

/// A biholomorphic chart with the pulled-back defining function.
#[derive(Clone, Debug)]
pub struct NormalizedChart {
    pub map: ScalingMap<Complex64>,
    pub rho: WPolynomial<Complex64>,
}

fn linear_coeff(p: &WPolynomial<Complex64>, f: impl Fn(&mut Exps)) -> Complex64 {
    let mut e = Exps::zero(p.dim());
    f(&mut e);
    p.coefficient(&e)
}

/// Four-stage normal form at a strongly pseudoconvex boundary point:
/// shift and unitary straightening of the complex tangent, normalization
/// of the linear part to `Re w`, reduction of the tangential Hessian to the
/// identity and a shear removing holomorphic quadratic terms.
pub fn normalize_strongly_psc(d: &DomainSpec, eta_prime: &[Complex64]) -> Result<NormalizedChart> {
    let n = d.n;
    if eta_prime.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, got: eta_prime.len() });
    }
    let (v0, _) = d.contains(eta_prime)?;
    if v0.abs() > 1e-10 {
        return Err(Error::InvariantViolation(format!("point is not on the boundary (ρ = {v0:e})")));
    }
    let rho = d.defining.specialize(0.0);
    let mut map = ScalingMap::identity(n).then(ScalingStep::translation(eta_prime.iter().map(|c| -c).collect()));
    let r1 = map.pullback(&rho)?;

    // linear part is 2 Re ℓ with ℓ = Σ a_k z_k + γ w
    let mut ell: Vec<Complex64> = (0..n).map(|k| linear_coeff(&r1, |e| e.z[k] = 1)).collect();
    let cu = linear_coeff(&r1, |e| e.u = 1).re;
    let cv = linear_coeff(&r1, |e| e.v = 1).re;
    ell.push(Complex64::new(cu, -cv) / 2.0);
    let norm = ell.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-14 {
        return Err(Error::InvariantViolation("defining function has vanishing gradient".into()));
    }
    let normal: Vec<Complex64> = ell.iter().map(|c| c.conj() / norm).collect();
    let basis = unitary_completion(&normal);
    // rows: tangential coordinates, then the normal one
    let u_rows: Vec<Vec<Complex64>> = basis.iter().map(|b| b.iter().map(|c| c.conj()).collect()).collect();
    let u_inv: Vec<Vec<Complex64>> = (0..=n).map(|r| (0..=n).map(|c| basis[c][r]).collect()).collect();
    map = map.then(ScalingStep::Linear { matrix: u_rows, inverse: u_inv, unitary: true });
    let mut factors = vec![Complex64::new(1.0, 0.0); n];
    factors.push(Complex64::new(1.0 / (2.0 * norm), 0.0));
    map = map.then(ScalingStep::Dilation { inverse_factors: factors });
    let r2 = map.pullback(&rho)?;

    let h = HermitianForm::from_fn(n, |k, l| {
        linear_coeff(&r2, |e| {
            e.z[k] += 1;
            e.zb[l] += 1;
        })
    });
    let min = h.min_eigenvalue();
    if !(min > 1e-12) {
        return Err(Error::NotStronglyPseudoconvex { min_eigenvalue: min });
    }
    map = map.then(theta_step(&h)?);
    let r3 = map.pullback(&rho)?;

    let mut q = WPolynomial::zero(n);
    for (e, c) in r3.terms() {
        if e.u == 0 && e.v == 0 && e.zb.iter().all(|&b| b == 0) && e.z_degree() == 2 {
            q.add_term(e.clone(), -2.0 * c);
        }
    }
    map = map.then(ScalingStep::Shear { scale: Complex64::new(1.0, 0.0), q });
    map.chart = "C^{n+1}".into();
    let r4 = map.pullback(&rho)?.prune(1e-13);
    check_normal_form(&r4, 1e-9)?;
    Ok(NormalizedChart { map, rho: r4 })
}

/// Orthonormal basis whose last vector is `normal`: tangential vectors first.
fn unitary_completion(normal: &[Complex64]) -> Vec<Vec<Complex64>> {
    let d = normal.len();
    let mut basis: Vec<Vec<Complex64>> = vec![normal.to_vec()];
    let mut candidates: Vec<usize> = (0..d).collect();
    // start from the axes least aligned with the normal
    candidates.sort_by(|&a, &b| normal[a].norm().total_cmp(&normal[b].norm()));
    for k in candidates {
        if basis.len() == d {
            break;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); d];
        v[k] = Complex64::new(1.0, 0.0);
        for b in &basis {
            let ip: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= ip * bi;
            }
        }
        let nv = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if nv > 1e-8 {
            basis.push(v.into_iter().map(|c| c / nv).collect());
        }
    }
    let first = basis.remove(0);
    let mut tangential = basis;
    tangential.sort_by_key(|v| v.iter().position(|c| c.norm() > 1e-12).unwrap_or(d));
    tangential.push(first);
    tangential
}

/// `Re w + |z|² + E` with `E = O(|w||z| + |z|³ + |w|²)`, coefficientwise.
pub fn check_normal_form(rho: &WPolynomial<Complex64>, tol: f64) -> Result<()> {
    let n = rho.dim();
    for (e, c) in rho.terms() {
        let zdeg = e.z_degree();
        let wdeg = e.u + e.v;
        let expected = if wdeg == 1 && zdeg == 0 && e.u == 1 {
            Complex64::new(1.0, 0.0)
        } else if wdeg == 0 && zdeg == 2 && (0..n).any(|k| e.z[k] == 1 && e.zb[k] == 1) {
            Complex64::new(1.0, 0.0)
        } else if zdeg >= 3 || wdeg >= 2 || (wdeg >= 1 && zdeg >= 1) {
            continue;
        } else {
            Complex64::new(0.0, 0.0)
        };
        if (c - expected).norm() > tol {
            return Err(Error::InvariantViolation(format!("normal form violated at {e:?}: coefficient {c}")));
        }
    }
    for k in 0..n {
        let mut e = Exps::zero(n);
        e.z[k] = 1;
        e.zb[k] = 1;
        if (rho.coefficient(&e) - 1.0).norm() > tol {
            return Err(Error::InvariantViolation(format!("|z_{k}|² coefficient is not 1")));
        }
    }
    Ok(())
}

/// Exact `j`-expression `c·j^p` as a convenience for callers.
pub fn j_monomial(c: i64, p: Exponent) -> GaussJ {
    GaussJ::real(JExpr::term(crate::scalar::rat(c, 1), p))
}
