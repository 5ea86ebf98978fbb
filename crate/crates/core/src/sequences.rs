//! Closed-form approach sequences, scaling-parameter recipes and
//! log-log exponent fits deciding the convergence modes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::jexpr::parse_gauss;
use crate::scalar::{Exponent, GaussJ, GaussQ, Ring, Scalar};
use crate::weights::MultiWeight;
use crate::wpoly::WPolynomial;

/// Slope threshold separating "grows", "bounded" and "decays".
pub const THETA: f64 = 0.05;

/// `j ↦ η_j = (α_j, β_j)` with entries in `ℚ[i]`-combinations of `j^p`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApproachSequence {
    pub name: String,
    pub domain_id: String,
    pub target: Vec<GaussQ>,
    pub alpha: Vec<GaussJ>,
    pub beta: GaussJ,
}

/// On-disk form of a sequence.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceFile {
    #[serde(default)]
    pub name: Option<String>,
    pub domain_id: String,
    pub target: Vec<String>,
    pub alpha: Vec<String>,
    pub beta: String,
}

fn constant_gauss(src: &str) -> Result<GaussQ> {
    let g = parse_gauss(src)?;
    match (g.re.as_constant(), g.im.as_constant()) {
        (Some(re), Some(im)) => Ok(GaussQ::new(re, im)),
        _ => Err(Error::Parse(format!("target coordinate must be constant: {src}"))),
    }
}

fn fmt_gauss(g: &GaussJ) -> String {
    match (g.re.is_zero(), g.im.is_zero()) {
        (_, true) => g.re.to_string(),
        (true, false) => format!("i*({})", g.im),
        _ => format!("{} + i*({})", g.re, g.im),
    }
}

impl ApproachSequence {
    pub fn from_exprs(name: &str, domain_id: &str, target: &[&str], alpha: &[&str], beta: &str) -> Result<Self> {
        let file = SequenceFile {
            name: Some(name.into()),
            domain_id: domain_id.into(),
            target: target.iter().map(|s| s.to_string()).collect(),
            alpha: alpha.iter().map(|s| s.to_string()).collect(),
            beta: beta.into(),
        };
        Self::from_file(&file)
    }

    pub fn from_file(f: &SequenceFile) -> Result<Self> {
        let alpha = f.alpha.iter().map(|s| parse_gauss(s)).collect::<Result<Vec<_>>>()?;
        let target = f.target.iter().map(|s| constant_gauss(s)).collect::<Result<Vec<_>>>()?;
        if target.len() != alpha.len() + 1 {
            return Err(Error::Schema {
                field: "target".into(),
                detail: format!("expected {} coordinates, got {}", alpha.len() + 1, target.len()),
            });
        }
        Ok(Self {
            name: f.name.clone().unwrap_or_else(|| "sequence".into()),
            domain_id: f.domain_id.clone(),
            target,
            alpha,
            beta: parse_gauss(&f.beta)?,
        })
    }

    pub fn to_file(&self) -> SequenceFile {
        SequenceFile {
            name: Some(self.name.clone()),
            domain_id: self.domain_id.clone(),
            target: self.target.iter().map(|g| g.to_string()).collect(),
            alpha: self.alpha.iter().map(fmt_gauss).collect(),
            beta: fmt_gauss(&self.beta),
        }
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    /// `(α_1, …, α_n, β)`.
    pub fn eta(&self) -> Vec<GaussJ> {
        let mut p = self.alpha.clone();
        p.push(self.beta.clone());
        p
    }

    pub fn point(&self, j: f64) -> Vec<Complex64> {
        self.eta().iter().map(|c| c.at(j)).collect()
    }

    /// Exact `ε = −ρ(η)` for domains linear in `Re w`.
    pub fn eps_exact(&self, d: &DomainSpec) -> Result<GaussJ> {
        d.re_w_gap_exact(&self.eta())
    }

    pub fn eps(&self, d: &DomainSpec, j: f64) -> Result<f64> {
        match self.eps_exact(d) {
            Ok(e) => Ok(e.at(j).re),
            Err(Error::NotRepresentable(_)) => d.re_w_gap(&self.point(j)),
            Err(e) => Err(e),
        }
    }

    /// `η′ = (α, β + ε)`.
    pub fn boundary_point_exact(&self, d: &DomainSpec) -> Result<Vec<GaussJ>> {
        let mut p = self.eta();
        let eps = self.eps_exact(d)?;
        p[self.dim()] = p[self.dim()].add(&eps);
        Ok(p)
    }

    pub fn boundary_point(&self, d: &DomainSpec, j: f64) -> Result<Vec<Complex64>> {
        let mut p = self.point(j);
        p[self.dim()] += self.eps(d, j)?;
        Ok(p)
    }

    /// Interior at every `j` and strictly approaching the target.
    pub fn validate(&self, d: &DomainSpec, js: &[u64]) -> Result<()> {
        if d.n != self.dim() {
            return Err(Error::DimensionMismatch { expected: d.n, got: self.dim() });
        }
        let target: Vec<Complex64> = self.target.iter().map(|c| c.at(0.0)).collect();
        if d.contains(&target)?.0.abs() > 1e-12 {
            return Err(Error::InvariantViolation(format!("{}: target is not a boundary point", self.name)));
        }
        let mut last = f64::INFINITY;
        for &j in js {
            let p = self.point(j as f64);
            let (v, inside) = d.contains(&p)?;
            if !inside {
                return Err(Error::InvariantViolation(format!("{}: η_{j} is not interior (ρ = {v:e})", self.name)));
            }
            let dist = p.iter().zip(&target).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
            if dist >= last {
                return Err(Error::InvariantViolation(format!("{}: |η_j − ξ₀| not decreasing at j = {j}", self.name)));
            }
            last = dist;
        }
        Ok(())
    }
}

/// Sequences shipped with the catalog, keyed by reproduction id.
pub fn catalog_sequence(id: &str) -> Result<ApproachSequence> {
    let s = |domain: &str, target: &[&str], alpha: &[&str], beta: &str| ApproachSequence::from_exprs(id, domain, target, alpha, beta);
    match id {
        "ex-4-1" => s("e123", &["0", "0", "0"], &["j^(-1/4)", "j^(-1/6)"], "-2/j - j^-2"),
        "prop-4-1" => s("e124", &["0", "0", "0"], &["j^(-1/4)", "j^(-3/8)"], "-1/j - 2*j^-2 - j^-3"),
        "ex-5-1" => s("g-domain", &["0", "0"], &["j^(-1/4)"], "-2/j - j^-2 + i*j^(-1/4)"),
        "ex-5-2" => s("kn", &["0", "0"], &["j^(-1/8)"], "-22/(7*j) - j^-2"),
        "ex-5-3" => s("kn-tilde", &["0", "0"], &["j^(-1/8)"], "9/(7*j) - j^-2"),
        _ => Err(Error::Parse(format!("unknown sequence id {id:?}"))),
    }
}

pub const SEQUENCE_IDS: [&str; 5] = ["ex-4-1", "prop-4-1", "ex-5-1", "ex-5-2", "ex-5-3"];

/// `j = 2, 4, …, 2¹⁰`.
pub fn default_js() -> Vec<u64> {
    (1..=10).map(|k| 1u64 << k).collect()
}

/// `start:end:geom` (doubling), `start:end:lin`, or a comma list.
pub fn parse_js(src: &str) -> Result<Vec<u64>> {
    let bad = || Error::Parse(format!("bad j-list {src:?}"));
    let js: Vec<u64> = if let [a, b, mode] = src.split(':').collect::<Vec<_>>()[..] {
        let a: u64 = a.trim().parse().map_err(|_| bad())?;
        let b: u64 = b.trim().parse().map_err(|_| bad())?;
        if a == 0 {
            return Err(bad());
        }
        match mode.trim() {
            "geom" => std::iter::successors(Some(a), |x| x.checked_mul(2)).take_while(|x| *x <= b).collect(),
            "lin" => (a..=b).collect(),
            _ => return Err(bad()),
        }
    } else {
        src.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if js.is_empty() || js[0] == 0 || js.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvariantViolation(format!("j-list must be strictly increasing positive integers: {src:?}")));
    }
    Ok(js)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TauRecipe {
    SqrtEps,
    HExtendible,
    FiniteTypeC2,
    Scripted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauWeights {
    pub j: u64,
    pub tau: Vec<f64>,
    pub recipe: TauRecipe,
    pub eps: f64,
}

/// Exact `τ_k = |α_k|·(ε/|α_k|^{2m_k})^{1/2}` for every coordinate.
pub fn tau_h_extendible_exact(seq: &ApproachSequence, d: &DomainSpec, lambda: &MultiWeight) -> Result<Vec<GaussJ>> {
    let eps = seq.eps_exact(d)?;
    let half = Exponent::new(1, 2);
    seq.alpha
        .iter()
        .enumerate()
        .map(|(k, a)| {
            if a.is_zero() {
                return Err(Error::ZeroCoordinate { k });
            }
            let two_m = Exponent::from_integer(lambda.two_m(k) as i64);
            let nr = || Error::NotRepresentable(format!("τ_{k} of {}", seq.name));
            let abs = a.try_abs_pow(Exponent::from_integer(1)).ok_or_else(nr)?;
            let abs_2m = a.try_abs_pow(two_m).ok_or_else(nr)?;
            let ratio = eps.mul(&abs_2m.try_inv().ok_or_else(nr)?);
            let root = GaussJ::real(ratio.re.try_pow(half).ok_or_else(nr)?);
            Ok(abs.mul(&root))
        })
        .collect()
}

/// Numeric `τ_k` at one `j`, with the residual of
/// `τ_k^{2m_k} = ε·(ε/|α_k|^{2m_k})^{m_k−1}`.
pub fn tau_h_extendible(seq: &ApproachSequence, d: &DomainSpec, lambda: &MultiWeight, j: u64) -> Result<(TauWeights, f64)> {
    let jf = j as f64;
    let eps = seq.eps(d, jf)?;
    let mut tau = Vec::with_capacity(seq.dim());
    let mut residual: f64 = 0.0;
    for (k, a) in seq.alpha.iter().enumerate() {
        let r = a.at(jf).norm();
        if r == 0.0 {
            return Err(Error::ZeroCoordinate { k });
        }
        let m = 1.0 / (2.0 * lambda.lambda_f64(k));
        let ratio = eps / r.powf(2.0 * m);
        let t = r * ratio.sqrt();
        let lhs = t.powf(2.0 * m);
        let rhs = eps * ratio.powf(m - 1.0);
        residual = residual.max((lhs - rhs).abs() / rhs.abs().max(f64::MIN_POSITIVE));
        tau.push(t);
    }
    Ok((TauWeights { j, tau, recipe: TauRecipe::HExtendible, eps }, residual))
}

pub fn tau_sqrt_eps(seq: &ApproachSequence, d: &DomainSpec, j: u64) -> Result<TauWeights> {
    let eps = seq.eps(d, j as f64)?;
    Ok(TauWeights { j, tau: vec![eps.sqrt(); seq.dim()], recipe: TauRecipe::SqrtEps, eps })
}

/// Normal-form coefficients `a_{p,q}` (`p, q > 0`, `p + q ≤ 2m`) of the
/// `z`-expansion of a rigid defining function around `η′`.
pub fn normal_form_coefficients(d: &DomainSpec, eta_prime: &[Complex64], two_m: u32) -> Result<Vec<((u32, u32), Complex64)>> {
    if d.n != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: d.n });
    }
    if eta_prime.len() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: eta_prime.len() });
    }
    let rho = d.defining.specialize(0.0);
    let c = |x: f64| WPolynomial::constant(1, Complex64::new(x, 0.0));
    let z = WPolynomial::constant(1, eta_prime[0]).add(&WPolynomial::z(1, 0));
    let u = c(eta_prime[1].re).add(&WPolynomial::u(1));
    let v = c(eta_prime[1].im).add(&WPolynomial::v(1));
    let centered = rho.substitute(&[z], &u, &v);
    let mut out: Vec<((u32, u32), Complex64)> = centered
        .terms()
        .filter(|(e, _)| e.u == 0 && e.v == 0 && e.z[0] > 0 && e.zb[0] > 0 && e.z[0] + e.zb[0] <= two_m)
        .map(|(e, c)| ((e.z[0], e.zb[0]), *c))
        .collect();
    out.sort_by_key(|((a, b), _)| (a + b, *a));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiniteTypeTau {
    /// `A_l` for `l = 2, …, 2m`.
    pub a: Vec<f64>,
    pub tau: f64,
    /// The `l` attaining the minimum.
    pub l: u32,
}

/// `τ = min_l (ε/A_l)^{1/l}` with `A_l = max_{p+q=l} |a_{p,q}(η′)|`.
pub fn tau_finite_type_c2(d: &DomainSpec, eta_prime: &[Complex64], eps: f64, two_m: u32) -> Result<FiniteTypeTau> {
    let coeffs = normal_form_coefficients(d, eta_prime, two_m)?;
    let mut a = vec![0.0f64; (two_m.max(2) - 1) as usize];
    for ((p, q), c) in coeffs {
        let l = (p + q) as usize;
        a[l - 2] = a[l - 2].max(c.norm());
    }
    let mut best: Option<(f64, u32)> = None;
    for (i, &al) in a.iter().enumerate() {
        if al <= 1e-300 {
            continue;
        }
        let l = i as u32 + 2;
        let t = (eps / al).powf(1.0 / l as f64);
        if best.is_none_or(|(b, _)| t < b) {
            best = Some((t, l));
        }
    }
    let (tau, l) = best.ok_or(Error::AllCoefficientsZero)?;
    Ok(FiniteTypeTau { a, tau, l })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n: usize,
}

/// Least-squares slope of `log value` against `log j`, with a `±2·SE`
/// interval.
pub fn fit_asymptotic_exponent(values: &[f64], js: &[u64]) -> Result<ExponentFit> {
    if values.len() != js.len() {
        return Err(Error::DimensionMismatch { expected: js.len(), got: values.len() });
    }
    if values.len() < 6 {
        return Err(Error::InvariantViolation(format!("need at least 6 samples, got {}", values.len())));
    }
    if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::NonPositiveValue { index, value });
    }
    let xs: Vec<f64> = js.iter().map(|&j| (j as f64).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let stderr = (sse / (n - 2.0) / sxx).sqrt();
    Ok(ExponentFit { slope, intercept, stderr, ci_low: slope - 2.0 * stderr, ci_high: slope + 2.0 * stderr, n: xs.len() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    LambdaNontangential,
    UniformlyLambdaTangential,
    LambdaTangentialNonuniform,
    Spherical,
    NonSpherical,
    Unclassified,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::LambdaNontangential => "lambda-nontangential",
            Mode::UniformlyLambdaTangential => "uniformly-lambda-tangential",
            Mode::LambdaTangentialNonuniform => "lambda-tangential-nonuniform",
            Mode::Spherical => "spherical",
            Mode::NonSpherical => "non-spherical",
            Mode::Unclassified => "unclassified",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ModeHint {
    #[default]
    Auto,
    Uniform,
    Spherical,
}

/// One asymptotic relation decided from a slope fit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub condition: String,
    pub quantity: String,
    pub rule: String,
    pub threshold: f64,
    /// Absent when the quantity vanishes identically on the range.
    pub fit: Option<ExponentFit>,
    pub max_value: f64,
    pub min_value: f64,
    pub holds: bool,
}

impl Verdict {
    fn from_values(condition: &str, quantity: &str, rule: Rule, values: &[f64], js: &[u64]) -> Self {
        let max_value = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min_value = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let fit = fit_asymptotic_exponent(values, js).ok();
        let holds = match (rule, &fit) {
            (Rule::Bounded, Some(f)) => f.slope <= THETA,
            (Rule::Decays, Some(f)) => f.slope < -THETA,
            (Rule::Flat, Some(f)) => f.slope.abs() <= THETA,
            (Rule::BoundedBelow, Some(f)) => f.slope >= -THETA,
            // identically zero quantities are bounded and decaying, never bounded below
            (Rule::Bounded | Rule::Decays, None) => max_value == 0.0,
            (Rule::Flat | Rule::BoundedBelow, None) => false,
        };
        Self {
            condition: condition.into(),
            quantity: quantity.into(),
            rule: rule.describe().into(),
            threshold: THETA,
            fit,
            max_value,
            min_value,
            holds,
        }
    }
}

#[derive(Clone, Copy)]
enum Rule {
    Bounded,
    Decays,
    Flat,
    BoundedBelow,
}

impl Rule {
    fn describe(self) -> &'static str {
        match self {
            Rule::Bounded => "slope <= theta",
            Rule::Decays => "slope < -theta",
            Rule::Flat => "|slope| <= theta",
            Rule::BoundedBelow => "slope >= -theta and values > 0",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub sequence: String,
    pub domain: String,
    pub mode: Mode,
    pub js: Vec<u64>,
    pub verdicts: Vec<Verdict>,
}

impl ClassificationReport {
    pub fn verdict(&self, condition: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.condition == condition)
    }
}

/// The `z`-part of the defining function without pluriharmonic terms.
pub fn homogeneous_part(d: &DomainSpec) -> WPolynomial {
    d.defining.pure_z_part().pluriharmonic_part().1
}

/// `ΔH(α_j)` exactly, as a function of `j`.
pub fn laplacian_along(d: &DomainSpec, seq: &ApproachSequence) -> GaussJ {
    let lap = homogeneous_part(d).laplacian().lift::<GaussJ>();
    lap.eval(&seq.alpha, &GaussJ::zero())
}

fn abs_pow_f64(c: Complex64, p: f64) -> f64 {
    c.norm().powf(p)
}

/// Decides conditions (a), (b), (c) of the uniform and spherical modes.
pub fn classify_sequence(
    seq: &ApproachSequence,
    d: &DomainSpec,
    lambda: &MultiWeight,
    hint: ModeHint,
    js: &[u64],
) -> Result<ClassificationReport> {
    seq.validate(d, js)?;
    if lambda.dim() != d.n {
        return Err(Error::DimensionMismatch { expected: d.n, got: lambda.dim() });
    }
    let n = d.n;
    let eps: Vec<f64> = js.iter().map(|&j| seq.eps(d, j as f64)).collect::<Result<_>>()?;
    let pts: Vec<Vec<Complex64>> = js.iter().map(|&j| seq.point(j as f64)).collect();
    let powk = |k: usize| -> Vec<f64> { pts.iter().map(|p| abs_pow_f64(p[k], 1.0 / lambda.lambda_f64(k))).collect() };
    let mut verdicts = Vec::new();

    let b_over_eps: Vec<f64> = pts.iter().zip(&eps).map(|(p, e)| p[n].im.abs() / e).collect();
    let a = Verdict::from_values("a", "|Im beta_j| / eps_j", Rule::Bounded, &b_over_eps, js);
    let a_holds = a.holds;
    verdicts.push(a);

    let mut b_all = true;
    let mut nontangential = true;
    for k in 0..n {
        let pk = powk(k);
        let ratio: Vec<f64> = eps.iter().zip(&pk).map(|(e, p)| e / p).collect();
        let v = Verdict::from_values(&format!("b{}", k + 1), &format!("eps_j / |alpha_j{}|^(2m_{})", k + 1, k + 1), Rule::Decays, &ratio, js);
        b_all &= v.holds;
        verdicts.push(v);
        let inv: Vec<f64> = ratio.iter().map(|r| 1.0 / r).collect();
        let nt = Verdict::from_values(&format!("nt{}", k + 1), &format!("|alpha_j{}|^(2m_{}) / eps_j", k + 1, k + 1), Rule::Bounded, &inv, js);
        nontangential &= nt.holds;
        verdicts.push(nt);
    }

    let spherical_route = match hint {
        ModeHint::Spherical => true,
        ModeHint::Uniform => false,
        ModeHint::Auto => n == 1,
    };
    let mode = if spherical_route {
        if n != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: n });
        }
        let two_m = lambda.two_m(0) as i32;
        let lap = laplacian_along(d, seq);
        let vals: Vec<f64> = js
            .iter()
            .zip(&pts)
            .map(|(&j, p)| lap.at(j as f64).re / p[0].norm().powi(two_m - 2))
            .collect();
        let mut c = Verdict::from_values("c", "Laplacian(H)(alpha_j) / |alpha_j|^(2m-2)", Rule::BoundedBelow, &vals, js);
        c.holds &= c.min_value > 0.0;
        let c_holds = c.holds;
        verdicts.push(c);
        if a_holds && nontangential {
            Mode::LambdaNontangential
        } else if !(a_holds && b_all) {
            Mode::Unclassified
        } else if c_holds {
            Mode::Spherical
        } else {
            Mode::NonSpherical
        }
    } else {
        let p1 = powk(0);
        let mut c_all = true;
        for k in 1..n {
            let ratio: Vec<f64> = powk(k).iter().zip(&p1).map(|(a, b)| a / b).collect();
            let v = Verdict::from_values(&format!("c{}", k + 1), &format!("|alpha_j{}|^(2m_{}) / |alpha_j1|^(2m_1)", k + 1, k + 1), Rule::Flat, &ratio, js);
            c_all &= v.holds;
            verdicts.push(v);
        }
        let any_tangential = verdicts.iter().any(|v| v.condition.starts_with('b') && v.holds);
        if !a_holds {
            Mode::Unclassified
        } else if nontangential {
            Mode::LambdaNontangential
        } else if b_all && c_all {
            Mode::UniformlyLambdaTangential
        } else if any_tangential {
            Mode::LambdaTangentialNonuniform
        } else {
            Mode::Unclassified
        }
    };
    Ok(ClassificationReport { sequence: seq.name.clone(), domain: d.name.clone(), mode, js: js.to_vec(), verdicts })
}

/// Confirms `ε^{1/2} ≲ τ_k ≲ ε^{1/(2m_k)}` by slope fits of the two ratios.
pub fn tau_bracketing(taus: &[TauWeights], lambda: &MultiWeight) -> Result<Vec<Verdict>> {
    let js: Vec<u64> = taus.iter().map(|t| t.j).collect();
    let mut out = Vec::new();
    for k in 0..lambda.dim() {
        let lower: Vec<f64> = taus.iter().map(|t| t.tau[k] / t.eps.sqrt()).collect();
        let upper: Vec<f64> = taus.iter().map(|t| t.tau[k] / t.eps.powf(lambda.lambda_f64(k))).collect();
        out.push(Verdict::from_values(&format!("lower{}", k + 1), &format!("tau_{} / eps^(1/2)", k + 1), Rule::BoundedBelow, &lower, &js));
        out.push(Verdict::from_values(&format!("upper{}", k + 1), &format!("tau_{} / eps^(1/(2m_{}))", k + 1, k + 1), Rule::Bounded, &upper, &js));
    }
    Ok(out)
}

/// `(g(θ), g''(θ))` for `g(θ) = H(e^{iθ})`, `H` a polynomial in `z, z̄`.
pub fn polar_profile(h: &WPolynomial, theta: f64) -> (f64, f64) {
    let mut g = Complex64::new(0.0, 0.0);
    let mut g2 = Complex64::new(0.0, 0.0);
    for (e, c) in h.terms() {
        let k = e.z[0] as f64 - e.zb[0] as f64;
        let t = c.at(0.0) * Complex64::from_polar(1.0, k * theta);
        g += t;
        g2 -= t * k * k;
    }
    (g.re, g2.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::catalog;
    use crate::scalar::rat;

    fn setup(id: &str) -> (ApproachSequence, DomainSpec, MultiWeight) {
        let s = catalog_sequence(id).unwrap();
        let d = catalog(&s.domain_id).unwrap();
        let l = d.lambda.clone().unwrap();
        (s, d, l)
    }

    #[test]
    fn exact_eps() {
        for id in ["ex-4-1", "prop-4-1", "ex-5-1", "ex-5-2", "ex-5-3"] {
            let (s, d, _) = setup(id);
            assert_eq!(s.eps_exact(&d).unwrap(), parse_gauss("j^-2").unwrap(), "{id}");
        }
    }

    #[test]
    fn sequence_files_round_trip() {
        for id in SEQUENCE_IDS {
            let s = catalog_sequence(id).unwrap();
            let back = ApproachSequence::from_file(&s.to_file()).unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn js_parsing() {
        assert_eq!(parse_js("2:1024:geom").unwrap(), default_js());
        assert_eq!(parse_js("3:5:lin").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_js("1, 5, 9").unwrap(), vec![1, 5, 9]);
        assert!(parse_js("4,2").is_err());
        assert!(parse_js("0:4:geom").is_err());
    }

    #[test]
    fn tau_example_4_1() {
        let (s, d, l) = setup("ex-4-1");
        let t = tau_h_extendible_exact(&s, &d, &l).unwrap();
        assert_eq!(t[0], parse_gauss("j^(-3/4)").unwrap());
        assert_eq!(t[1], parse_gauss("j^(-2/3)").unwrap());
        let (w, res) = tau_h_extendible(&s, &d, &l, 16).unwrap();
        assert!((w.tau[0] - 0.125).abs() < 1e-15);
        assert!((w.tau[1] - 16f64.powf(-2.0 / 3.0)).abs() < 1e-15);
        assert!(res < 1e-12);
    }

    #[test]
    fn tau_borderline_is_modulus() {
        // |α|⁴ = ε makes the ratio 1
        let s = ApproachSequence::from_exprs("b", "e123", &["0", "0", "0"], &["j^(-1/2)", "j^(-1/3)"], "-3*j^-2").unwrap();
        let d = catalog("e123").unwrap();
        let t = tau_h_extendible_exact(&s, &d, d.lambda.as_ref().unwrap()).unwrap();
        assert_eq!(t[0], parse_gauss("j^(-1/2)").unwrap());
    }

    #[test]
    fn zero_coordinate() {
        let s = ApproachSequence::from_exprs("z", "e123", &["0", "0", "0"], &["0", "j^(-1/6)"], "-2/j").unwrap();
        let d = catalog("e123").unwrap();
        let l = d.lambda.clone().unwrap();
        assert!(matches!(tau_h_extendible_exact(&s, &d, &l), Err(Error::ZeroCoordinate { k: 0 })));
        assert!(matches!(tau_h_extendible(&s, &d, &l, 4), Err(Error::ZeroCoordinate { k: 0 })));
    }

    #[test]
    fn finite_type_tau_kn() {
        let (s, d, _) = setup("ex-5-2");
        let js = default_js();
        let taus: Vec<f64> = js
            .iter()
            .map(|&j| {
                let bp = s.boundary_point(&d, j as f64).unwrap();
                let r = tau_finite_type_c2(&d, &bp, s.eps(&d, j as f64).unwrap(), 8).unwrap();
                assert_eq!(r.l, 2);
                r.tau
            })
            .collect();
        let f = fit_asymptotic_exponent(&taus, &js).unwrap();
        assert!((f.slope + 5.0 / 8.0).abs() < 0.02, "{f:?}");
        let bp = s.boundary_point(&d, 256.0).unwrap();
        let r = tau_finite_type_c2(&d, &bp, 1.0 / 65536.0, 8).unwrap();
        assert!((r.tau - 256f64.powf(-5.0 / 8.0) / 31f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn finite_type_tau_g_domain() {
        let (s, d, _) = setup("ex-5-1");
        let js = default_js();
        let taus: Vec<f64> = js
            .iter()
            .map(|&j| {
                let bp = s.boundary_point(&d, j as f64).unwrap();
                tau_finite_type_c2(&d, &bp, s.eps(&d, j as f64).unwrap(), 4).unwrap().tau
            })
            .collect();
        let f = fit_asymptotic_exponent(&taus, &js).unwrap();
        assert!((f.slope + 0.75).abs() < 0.02, "{f:?}");
    }

    #[test]
    fn finite_type_tau_strongly_psc() {
        let d = catalog("siegel").unwrap();
        let r = tau_finite_type_c2(&d, &[Complex64::new(0.0, 0.0); 2], 1e-4, 2).unwrap();
        assert!((r.tau - 1e-2).abs() < 1e-15);
        let flat = DomainSpec::new(
            "flat",
            WPolynomial::u(1),
            None,
            crate::domains::DomainKind::Generic,
            vec![GaussQ::zero(), GaussQ::real(rat(-1, 1))],
        )
        .unwrap();
        assert!(matches!(tau_finite_type_c2(&flat, &[Complex64::new(0.0, 0.0); 2], 1e-4, 4), Err(Error::AllCoefficientsZero)));
    }

    #[test]
    fn fit_exact_power() {
        let js = default_js();
        let v: Vec<f64> = js.iter().map(|&j| (j as f64).powi(-2)).collect();
        let f = fit_asymptotic_exponent(&v, &js).unwrap();
        assert!((f.slope + 2.0).abs() < 1e-12 && f.stderr < 1e-12);
        assert!(matches!(fit_asymptotic_exponent(&v[..5], &js[..5]), Err(Error::InvariantViolation(_))));
        let mut bad = v.clone();
        bad[3] = 0.0;
        assert!(matches!(fit_asymptotic_exponent(&bad, &js), Err(Error::NonPositiveValue { index: 3, .. })));
    }

    #[test]
    fn classify_examples() {
        let js = default_js();
        let cases = [
            ("ex-4-1", Mode::UniformlyLambdaTangential),
            ("prop-4-1", Mode::LambdaTangentialNonuniform),
            ("ex-5-2", Mode::Spherical),
            ("ex-5-3", Mode::NonSpherical),
            ("ex-5-1", Mode::Unclassified),
        ];
        for (id, mode) in cases {
            let (s, d, l) = setup(id);
            let r = classify_sequence(&s, &d, &l, ModeHint::Auto, &js).unwrap();
            assert_eq!(r.mode, mode, "{id}: {r:#?}");
        }
    }

    #[test]
    fn condition_b_slope_example_4_1() {
        let (s, d, l) = setup("ex-4-1");
        let r = classify_sequence(&s, &d, &l, ModeHint::Auto, &default_js()).unwrap();
        let b1 = r.verdict("b1").unwrap().fit.unwrap();
        assert!((b1.slope + 1.0).abs() < 1e-12);
    }

    #[test]
    fn g_domain_fails_a() {
        let (s, d, l) = setup("ex-5-1");
        let r = classify_sequence(&s, &d, &l, ModeHint::Auto, &default_js()).unwrap();
        let a = r.verdict("a").unwrap();
        assert!(!a.holds);
        assert!((a.fit.unwrap().slope - 1.75).abs() < 1e-9);
    }

    #[test]
    fn tilde_laplacian_vanishes_exactly() {
        let (s, d, _) = setup("ex-5-3");
        assert!(laplacian_along(&d, &s).is_zero());
        let (s, d, _) = setup("ex-5-2");
        assert_eq!(laplacian_along(&d, &s), parse_gauss("124*j^(-3/4)").unwrap());
    }

    #[test]
    fn polar_identity_kn() {
        let (s, d, l) = setup("ex-5-2");
        let h = homogeneous_part(&d);
        let hzz = h.d_z(0).d_zbar(0);
        for &j in &default_js() {
            let (t, _) = tau_h_extendible(&s, &d, &l, j).unwrap();
            let a = s.alpha[0].at(j as f64);
            let lhs = 4.0 * hzz.specialize(0.0).eval_f64(&[a], Complex64::new(0.0, 0.0)) / t.eps * t.tau[0].powi(2);
            let (g, g2) = polar_profile(&h, a.arg());
            assert!((lhs - (64.0 * g + g2)).abs() < 1e-8, "{lhs} vs {}", 64.0 * g + g2);
        }
    }

    #[test]
    fn bracketing_h_extendible() {
        let (s, d, l) = setup("ex-4-1");
        let taus: Vec<TauWeights> = default_js().iter().map(|&j| tau_h_extendible(&s, &d, &l, j).unwrap().0).collect();
        assert!(tau_bracketing(&taus, &l).unwrap().iter().all(|v| v.holds));
    }

    #[test]
    fn validation_rejects_exterior() {
        let s = ApproachSequence::from_exprs("x", "e123", &["0", "0", "0"], &["j^(-1/4)", "j^(-1/6)"], "1/j").unwrap();
        assert!(s.validate(&catalog("e123").unwrap(), &default_js()).is_err());
    }
}
