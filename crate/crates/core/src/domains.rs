//! Catalog of model and bounded domains, membership, boundary distances,
//! and the explicit maps between models and bounded realizations.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{cayley, weighted_cayley, ScalingMap, ScalingStep};
use crate::par;
use crate::realfn::{point_to_real, real_to_point, RealFunction};
use crate::scalar::{Exponent, GaussQ, Ring, Scalar};
use crate::sphere;
use crate::weights::MultiWeight;
use crate::wpoly::build::{abs_monomial, abs_pow, q, re_term};
use crate::wpoly::WPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainKind {
    RigidModel,
    BoundedWeightedBall,
    Siegel,
    Generic,
}

#[derive(Clone, Debug)]
pub struct DomainSpec {
    pub name: String,
    pub n: usize,
    /// `ρ < 0` inside.
    pub defining: WPolynomial,
    pub lambda: Option<MultiWeight>,
    pub kind: DomainKind,
    /// Interior point `(z_1, …, z_n, w)`.
    pub witness: Vec<GaussQ>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceMode {
    Euclidean,
    ReWGap,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryDistanceResult {
    pub distance: f64,
    pub nearest: Vec<(f64, f64)>,
    pub mode: DistanceMode,
    pub iterations: usize,
}

impl BoundaryDistanceResult {
    pub fn nearest_point(&self) -> Vec<Complex64> {
        self.nearest.iter().map(|&(re, im)| Complex64::new(re, im)).collect()
    }
}

pub const CATALOG_IDS: [&str; 16] = [
    "siegel", "ball", "e123", "d123", "e124", "d124", "kn", "kn-tilde", "g-domain", "m12", "e112", "d112", "f-model",
    "h-model", "a-model", "b-domain",
];

impl DomainSpec {
    pub fn new(
        name: &str,
        defining: WPolynomial,
        lambda: Option<MultiWeight>,
        kind: DomainKind,
        witness: Vec<GaussQ>,
    ) -> Result<Self> {
        let n = defining.dim();
        if !defining.is_real_valued() {
            return Err(Error::InvariantViolation(format!("{name}: defining function is not real-valued")));
        }
        if let Some(l) = &lambda {
            if l.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: l.dim() });
            }
        }
        if witness.len() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, got: witness.len() });
        }
        let d = Self { name: name.into(), n, defining, lambda, kind, witness };
        let v = d.value_exact(&d.witness)?;
        if !(v.im.is_zero() && v.re < Ring::zero()) {
            return Err(Error::InvariantViolation(format!("{name}: witness point is not interior")));
        }
        if kind == DomainKind::RigidModel && !d.is_u_linear() {
            return Err(Error::InvariantViolation(format!("{name}: rigid model must be Re w + P(z) + remainder")));
        }
        Ok(d)
    }

    /// Defining value in any scalar ring.
    pub fn value_exact<C: Scalar>(&self, p: &[C]) -> Result<C> {
        self.check_dim(p.len())?;
        Ok(self.defining.lift::<C>().eval(&p[..self.n], &p[self.n]))
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.n + 1 {
            return Err(Error::DimensionMismatch { expected: self.n + 1, got: len });
        }
        Ok(())
    }

    pub fn witness_point(&self) -> Vec<Complex64> {
        self.witness.iter().map(|c| c.at(0.0)).collect()
    }

    pub fn real_function(&self) -> RealFunction {
        RealFunction::new(&self.defining.specialize(0.0))
    }

    /// `u = Re w` enters only through the single term `Re w`.
    pub fn is_u_linear(&self) -> bool {
        let n = self.n;
        self.defining.terms().all(|(e, c)| e.u == 0 || (e.u == 1 && e.v == 0 && e.z_degree() == 0 && *c == GaussQ::one()))
            && self.defining.coefficient(&crate::wpoly::Exps::new(vec![0; n], vec![0; n], 1, 0)) == GaussQ::one()
    }

    pub fn is_bounded(&self) -> bool {
        self.kind == DomainKind::BoundedWeightedBall
    }

    /// `(ρ(p), ρ(p) < 0)`.
    pub fn contains(&self, p: &[Complex64]) -> Result<(f64, bool)> {
        self.check_dim(p.len())?;
        let v = self.defining.specialize(0.0).eval_f64(&p[..self.n], p[self.n]);
        Ok((v, v < 0.0))
    }

    /// Exact `ε = −ρ(p)` for domains linear in `Re w`.
    pub fn re_w_gap_exact<C: Scalar>(&self, p: &[C]) -> Result<C> {
        if !self.is_u_linear() {
            return Err(Error::NotRepresentable(format!("{}: Re w gap needs a root solve", self.name)));
        }
        let eps = self.value_exact(p)?.neg();
        if eps.at(2.0).re <= 0.0 {
            return Err(Error::NotInterior { value: -eps.at(2.0).re });
        }
        Ok(eps)
    }

    /// The `ε > 0` with `(α, β + ε) ∈ ∂D`.
    pub fn re_w_gap(&self, p: &[Complex64]) -> Result<f64> {
        let (v, inside) = self.contains(p)?;
        if !inside {
            return Err(Error::NotInterior { value: v });
        }
        if self.is_u_linear() {
            return Ok(-v);
        }
        let rho = self.defining.specialize(0.0).compile();
        let n = self.n;
        let at = |t: f64| rho.eval(&p[..n], p[n] + t);
        let mut lo = 0.0;
        let mut hi = 1e-9;
        while at(hi) < 0.0 {
            lo = hi;
            hi *= 2.0;
            if hi > 1e6 {
                return Err(Error::NoBoundaryHit);
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if at(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-16 * hi {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Euclidean-nearest boundary point: projected gradient from the
    /// `Re w`-gap seed, then Newton on the Lagrange system.
    pub fn nearest_boundary_point(&self, p: &[Complex64]) -> Result<BoundaryDistanceResult> {
        let gap = self.re_w_gap(p)?;
        let f = self.real_function();
        let x0 = point_to_real(p);
        let dim = x0.len();
        let mut seed = x0.clone();
        seed[dim - 2] += gap;
        let seed_dist = gap;

        // tangential kick to leave saddle configurations of the seed
        let g = f.gradient(&seed);
        let mut kick = vec![0.0; dim];
        for (k, kv) in kick.iter_mut().enumerate().take(dim - 2) {
            *kv = 1e-2 * gap * (1.0 + 0.37 * k as f64).sin();
        }
        let gg: f64 = g.iter().map(|v| v * v).sum();
        let kg: f64 = kick.iter().zip(&g).map(|(a, b)| a * b).sum();
        let mut x: Vec<f64> = seed.iter().zip(&kick).zip(&g).map(|((s, k), gi)| s + k - kg / gg * gi).collect();
        x = retract(&f, &x).unwrap_or_else(|| seed.clone());

        let sq = |y: &[f64]| y.iter().zip(&x0).map(|(a, b)| (a - b) * (a - b)).sum::<f64>();
        let max_iter = 20_000;
        let mut iterations = 0;
        for it in 0..max_iter {
            iterations = it + 1;
            let g = f.gradient(&x);
            let gg: f64 = g.iter().map(|v| v * v).sum();
            let r: Vec<f64> = x.iter().zip(&x0).map(|(a, b)| a - b).collect();
            let rg: f64 = r.iter().zip(&g).map(|(a, b)| a * b).sum();
            let d: Vec<f64> = r.iter().zip(&g).map(|(ri, gi)| ri - rg / gg * gi).collect();
            let dn = d.iter().map(|v| v * v).sum::<f64>().sqrt();
            let rn = r.iter().map(|v| v * v).sum::<f64>().sqrt();
            if dn <= 1e-9 * rn.max(1e-300) {
                break;
            }
            let current = sq(&x);
            let mut t = 1.0;
            let mut moved = false;
            while t > 1e-12 {
                let trial: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a - t * b).collect();
                if let Some(y) = retract(&f, &trial) {
                    if sq(&y) < current - 1e-4 * t * dn * dn {
                        x = y;
                        moved = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if !moved {
                break;
            }
        }
        if let Some(y) = lagrange_polish(&f, &x0, &x) {
            if sq(&y) <= sq(&x) * (1.0 + 1e-9) {
                x = y;
            }
        }
        if f.value(&x).abs() > 1e-10 {
            return Err(Error::NoConvergence { iterations });
        }
        let mut distance = sq(&x).sqrt();
        if distance > seed_dist {
            x = seed;
            distance = seed_dist;
        }
        let nearest = real_to_point(&x).iter().map(|c| (c.re, c.im)).collect();
        Ok(BoundaryDistanceResult { distance, nearest, mode: DistanceMode::Euclidean, iterations })
    }

    /// `dist(p, ∂D)` in the requested mode.
    pub fn boundary_distance(&self, p: &[Complex64], mode: DistanceMode) -> Result<BoundaryDistanceResult> {
        match mode {
            DistanceMode::Euclidean => self.nearest_boundary_point(p),
            DistanceMode::ReWGap => {
                let eps = self.re_w_gap(p)?;
                let mut nearest: Vec<(f64, f64)> = p.iter().map(|c| (c.re, c.im)).collect();
                nearest[self.n].0 += eps;
                Ok(BoundaryDistanceResult { distance: eps, nearest, mode, iterations: 0 })
            }
        }
    }

    /// First boundary crossing along `center + r·dir`.
    pub fn radial_boundary(&self, rho: &crate::wpoly::CompiledPoly, center: &[Complex64], dir: &[Complex64], r_max: f64) -> Result<f64> {
        let n = self.n;
        let at = |r: f64| {
            let x: Vec<Complex64> = center.iter().zip(dir).map(|(c, d)| c + d * r).collect();
            rho.eval(&x[..n], x[n])
        };
        let step = 0.01;
        let mut lo = 0.0;
        let mut hi = step;
        while at(hi) < 0.0 {
            lo = hi;
            hi += step;
            if hi > r_max {
                return Err(Error::NoBoundaryHit);
            }
        }
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if at(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Boundary samples of a bounded domain along symmetrized
    /// low-discrepancy rays from the witness point.
    pub fn boundary_samples(&self, samples: usize) -> Result<Vec<Vec<Complex64>>> {
        if !self.is_bounded() {
            return Err(Error::Unbounded(self.name.clone()));
        }
        let center = self.witness_point();
        let rho = self.defining.specialize(0.0).compile();
        let dirs = sphere::directions(self.n + 1, samples);
        let radii = par::map(&dirs, |d| self.radial_boundary(&rho, &center, d, 100.0));
        dirs.iter()
            .zip(radii)
            .map(|(d, r)| {
                let r = r?;
                Ok(center.iter().zip(d).map(|(c, u)| c + u * r).collect())
            })
            .collect()
    }

    /// Lower estimate of the diameter: max pairwise distance of boundary
    /// samples.
    pub fn diameter_estimate(&self, samples: usize) -> Result<f64> {
        let pts = self.boundary_samples(samples)?;
        let flat: Vec<Vec<f64>> = pts.iter().map(|p| point_to_real(p)).collect();
        let best = par::map(&flat, |a| {
            flat.iter().map(|b| a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>()).fold(0.0, f64::max)
        });
        Ok(best.into_iter().fold(0.0, f64::max).sqrt())
    }
}

/// Newton retraction onto `f = 0` along the gradient.
fn retract(f: &RealFunction, x: &[f64]) -> Option<Vec<f64>> {
    let mut y = x.to_vec();
    for _ in 0..60 {
        let v = f.value(&y);
        if v.abs() <= 1e-15 {
            return Some(y);
        }
        let g = f.gradient(&y);
        let gg: f64 = g.iter().map(|a| a * a).sum();
        if gg == 0.0 || !gg.is_finite() {
            return None;
        }
        for (yi, gi) in y.iter_mut().zip(&g) {
            *yi -= v / gg * gi;
        }
    }
    (f.value(&y).abs() <= 1e-12).then_some(y)
}

/// Newton on `x − p + λ∇f = 0, f = 0` with least-squares steps (the
/// Jacobian is singular when minimizers are not isolated).
fn lagrange_polish(f: &RealFunction, p: &[f64], x_start: &[f64]) -> Option<Vec<f64>> {
    let d = p.len();
    let mut x = x_start.to_vec();
    let g = f.gradient(&x);
    let gg: f64 = g.iter().map(|a| a * a).sum();
    let mut lambda = -x.iter().zip(p).zip(&g).map(|((a, b), gi)| (a - b) * gi).sum::<f64>() / gg;
    for _ in 0..30 {
        let g = f.gradient(&x);
        let mut res = DVector::zeros(d + 1);
        for k in 0..d {
            res[k] = x[k] - p[k] + lambda * g[k];
        }
        res[d] = f.value(&x);
        if res.norm() < 1e-15 {
            break;
        }
        let h = f.hessian(&x);
        let mut jac = DMatrix::zeros(d + 1, d + 1);
        for i in 0..d {
            for k in 0..d {
                jac[(i, k)] = if i == k { 1.0 } else { 0.0 } + lambda * h[i][k];
            }
            jac[(i, d)] = g[i];
            jac[(d, i)] = g[i];
        }
        let step = jac.svd(true, true).solve(&res, 1e-12).ok()?;
        for k in 0..d {
            x[k] -= step[k];
        }
        lambda -= step[d];
        if step.norm() < 1e-16 {
            break;
        }
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}

fn one(n: i64) -> GaussQ {
    q(n, 1)
}

fn zero_point(n: usize) -> Vec<GaussQ> {
    vec![GaussQ::zero(); n + 1]
}

fn model_point(n: usize) -> Vec<GaussQ> {
    let mut p = zero_point(n);
    p[n] = one(-1);
    p
}

fn weights(two_m: &[u32]) -> Option<MultiWeight> {
    Some(MultiWeight::from_multitype(two_m).expect("catalog multitype"))
}

fn abs_w_sq(n: usize) -> WPolynomial {
    WPolynomial::u(n).pow(2).add(&WPolynomial::v(n).pow(2))
}

fn kn_part(c: GaussQ) -> WPolynomial {
    abs_pow(1, 0, 8, one(1)).add(&abs_monomial(&[2], one(1)).mul(&re_term(1, 0, 6, 0, c)))
}

fn p123() -> WPolynomial {
    abs_pow(2, 0, 4, one(1)).add(&abs_pow(2, 1, 6, one(1)))
}

fn p124() -> WPolynomial {
    abs_pow(2, 0, 4, one(1)).add(&abs_monomial(&[2, 4], one(1))).add(&abs_pow(2, 1, 8, one(1)))
}

fn p112() -> WPolynomial {
    abs_pow(2, 0, 2, one(1)).add(&abs_pow(2, 1, 4, one(1)))
}

fn pa() -> WPolynomial {
    abs_pow(1, 0, 4, one(36)).add(&abs_monomial(&[2], one(1)).mul(&re_term(1, 0, 2, 0, one(-48))))
}

fn sum_sq(n: usize) -> WPolynomial {
    (0..n).fold(WPolynomial::zero(n), |acc, k| acc.add(&abs_pow(n, k, 2, one(1))))
}

fn rigid(name: &str, p: WPolynomial, lambda: Option<MultiWeight>) -> Result<DomainSpec> {
    let n = p.dim();
    DomainSpec::new(name, WPolynomial::u(n).add(&p), lambda, DomainKind::RigidModel, model_point(n))
}

fn bounded(name: &str, p: WPolynomial, lambda: Option<MultiWeight>) -> Result<DomainSpec> {
    let n = p.dim();
    let rho = abs_w_sq(n).add(&p).sub(&WPolynomial::constant(n, one(1)));
    DomainSpec::new(name, rho, lambda, DomainKind::BoundedWeightedBall, zero_point(n))
}

/// Catalog lookup; `siegel` and `ball` accept a `:dim` suffix giving the
/// total complex dimension `n + 1` (default 2).
pub fn catalog(id: &str) -> Result<DomainSpec> {
    let (base, dim) = match id.split_once(':') {
        Some((b, d)) => {
            let d: usize = d.parse().map_err(|_| Error::Parse(format!("bad dimension in domain id {id:?}")))?;
            if d < 2 {
                return Err(Error::Parse(format!("dimension must be at least 2 in {id:?}")));
            }
            (b, Some(d))
        }
        None => (id, None),
    };
    if dim.is_some() && !matches!(base, "siegel" | "ball") {
        return Err(Error::Parse(format!("domain {base:?} has a fixed dimension")));
    }
    let n = dim.unwrap_or(2) - 1;
    match base {
        "siegel" => DomainSpec::new(
            "siegel",
            WPolynomial::u(n).add(&sum_sq(n)),
            weights(&vec![2; n]),
            DomainKind::Siegel,
            model_point(n),
        ),
        "ball" => bounded("ball", sum_sq(n), weights(&vec![2; n])),
        "e123" => rigid("e123", p123(), weights(&[4, 6])),
        "d123" => bounded("d123", p123(), weights(&[4, 6])),
        "e124" => rigid("e124", p124(), weights(&[4, 8])),
        "d124" => bounded("d124", p124(), weights(&[4, 8])),
        "kn" => rigid("kn", kn_part(q(15, 7)), weights(&[8])),
        "kn-tilde" => rigid("kn-tilde", kn_part(q(-16, 7)), weights(&[8])),
        "g-domain" => {
            let rho = WPolynomial::u(1).add(&abs_pow(1, 0, 4, one(1))).add(&WPolynomial::v(1).pow(2).mul(&abs_pow(1, 0, 2, one(1))));
            DomainSpec::new("g-domain", rho, weights(&[4]), DomainKind::Generic, model_point(1))
        }
        "m12" => {
            // Re w + |z1|² + |z2 + 1|⁴ − 1
            let z2p1 = WPolynomial::z(2, 1).add(&WPolynomial::constant(2, one(1)));
            let abs_sq = z2p1.mul(&z2p1.conj());
            let rho = WPolynomial::u(2)
                .add(&abs_pow(2, 0, 2, one(1)))
                .add(&abs_sq.pow(2))
                .sub(&WPolynomial::constant(2, one(1)));
            DomainSpec::new("m12", rho, None, DomainKind::Generic, model_point(2))
        }
        "e112" => rigid("e112", p112(), weights(&[2, 4])),
        "d112" => bounded("d112", p112(), weights(&[2, 4])),
        "f-model" => rigid("f-model", abs_pow(1, 0, 2, one(5)), weights(&[2])),
        "h-model" => rigid("h-model", abs_pow(1, 0, 2, one(31)), weights(&[2])),
        "a-model" => rigid("a-model", pa(), weights(&[4])),
        "b-domain" => {
            let rho = abs_w_sq(1).add(&pa()).sub(&WPolynomial::constant(1, one(1)));
            DomainSpec::new("b-domain", rho, None, DomainKind::Generic, zero_point(1))
        }
        _ => Err(Error::Parse(format!("unknown domain id {id:?}"))),
    }
}

/// `Ψ(z, w) = (2z/(1−w), (w+1)/(1−w))`, Siegel half-space onto the ball.
pub fn cayley_to_ball(n: usize) -> ScalingMap<Complex64> {
    cayley(n)
}

/// Exponent vector `2λ_k` of the weighted Cayley map.
fn cayley_exponents(l: &MultiWeight) -> Vec<Exponent> {
    l.lambdas().iter().map(|x| *x * Exponent::from_integer(2)).collect()
}

/// Weighted Cayley realization of a rigid model as `{|w|² + P(z) < 1}`.
/// Valid when `P` depends on each `|z_k|` only, so that the complex
/// factor `(2/(1−w))^{2λ_k}` rescales `P` by `|2/(1−w)|²`.
pub fn model_to_bounded(d: &DomainSpec) -> Result<(ScalingMap<Complex64>, DomainSpec)> {
    let n = d.n;
    match d.name.as_str() {
        "siegel" => return Ok((cayley_to_ball(n), catalog(&format!("ball:{}", n + 1))?)),
        "m12" => {
            let mut offset = vec![Complex64::new(0.0, 0.0); 3];
            offset[1] = Complex64::new(1.0, 0.0);
            offset[2] = Complex64::new(-1.0, 0.0);
            let e112 = catalog("e112")?;
            let (tail, target) = model_to_bounded(&e112)?;
            let map = ScalingMap::identity(2).then(ScalingStep::translation(offset)).followed_by(&tail);
            return Ok((map, target));
        }
        _ => {}
    }
    let lambda = match (&d.kind, &d.lambda) {
        (DomainKind::RigidModel, Some(l)) => l,
        _ => return Err(Error::UnsupportedModel(d.name.clone())),
    };
    let p = d.defining.sub(&WPolynomial::u(n));
    if !p.depends_only_on_z() || p.terms().any(|(e, _)| e.z != e.zb) {
        return Err(Error::UnsupportedModel(d.name.clone()));
    }
    let name = match d.name.as_str() {
        "e123" => "d123".to_string(),
        "e124" => "d124".to_string(),
        "e112" => "d112".to_string(),
        other => format!("{other}-bounded"),
    };
    let target = bounded(&name, p, Some(lambda.clone()))?;
    let map = weighted_cayley(cayley_exponents(lambda));
    Ok((map, target))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jexpr::parse_gauss;
    use crate::scalar::{rat, GaussJ};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn catalog_loads() {
        for id in CATALOG_IDS {
            catalog(id).unwrap_or_else(|e| panic!("{id}: {e}"));
        }
        assert_eq!(catalog("ball:3").unwrap().n, 2);
        assert!(catalog("nope").is_err());
    }

    #[test]
    fn membership_examples() {
        let u = catalog("siegel").unwrap();
        assert_eq!(u.contains(&[c(0.0, 0.0), c(-1.0, 0.0)]).unwrap(), (-1.0, true));
        let b = catalog("ball").unwrap();
        assert_eq!(b.contains(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap(), (0.0, false));
        let e = catalog("e123").unwrap();
        let eta: Vec<GaussQ> = vec![GaussQ::real(rat(1, 2)), GaussQ::real(rat(1, 4).pow(1)), GaussQ::zero()];
        // j = 4: (4^{-1/4}, 4^{-1/6}, -2/4 - 1/16) is irrational; check numerically
        let p = [c(4f64.powf(-0.25), 0.0), c(4f64.powf(-1.0 / 6.0), 0.0), c(-0.5 - 1.0 / 16.0, 0.0)];
        let (v, inside) = e.contains(&p).unwrap();
        assert!((v + 1.0 / 16.0).abs() < 1e-15 && inside);
        assert!(e.value_exact(&eta).is_ok());
        assert!(matches!(e.contains(&[c(0.0, 0.0)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn exact_gap_on_tilde_kn() {
        let d = catalog("kn-tilde").unwrap();
        let eta: Vec<GaussJ> = vec![parse_gauss("j^(-1/8)").unwrap(), parse_gauss("9/(7*j) - j^-2").unwrap()];
        let eps = d.re_w_gap_exact(&eta).unwrap();
        assert_eq!(eps, parse_gauss("j^-2").unwrap());
        assert!((eps.at(5.0).re - 1.0 / 25.0).abs() < 1e-16);
    }

    #[test]
    fn gap_by_bisection_on_ball() {
        let b = catalog("ball").unwrap();
        let eps = b.re_w_gap(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((eps - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nearest_point_on_siegel() {
        let d = catalog("siegel").unwrap();
        let r = d.nearest_boundary_point(&[c(0.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!((r.distance - 3f64.sqrt() / 2.0).abs() < 1e-9, "{r:?}");
        let p = r.nearest_point();
        assert!((p[0].norm_sqr() - 0.5).abs() < 1e-8);
        assert!((p[1] - c(-0.5, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn nearest_point_ball_center() {
        let b = catalog("ball:3").unwrap();
        let r = b.nearest_boundary_point(&b.witness_point()).unwrap();
        assert!((r.distance - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diameters() {
        let b = catalog("ball:3").unwrap();
        assert!((b.diameter_estimate(400).unwrap() - 2.0).abs() < 1e-3);
        let d = catalog("d123").unwrap();
        let diam = d.diameter_estimate(400).unwrap();
        assert!((2.0..=2.0 * 3f64.sqrt()).contains(&diam), "{diam}");
        assert!(matches!(catalog("e123").unwrap().diameter_estimate(10), Err(Error::Unbounded(_))));
    }

    #[test]
    fn bounded_realizations() {
        let (m, t) = model_to_bounded(&catalog("e112").unwrap()).unwrap();
        assert_eq!(t.name, "d112");
        let y = m.apply(&[c(0.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)]).unwrap();
        assert!((y[1].re - (2.0f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!((y[2].re + 1.0 / 3.0).abs() < 1e-14);
        assert!(matches!(model_to_bounded(&catalog("kn").unwrap()), Err(Error::UnsupportedModel(_))));
        assert!(matches!(model_to_bounded(&catalog("a-model").unwrap()), Err(Error::UnsupportedModel(_))));
        let (_, t) = model_to_bounded(&catalog("e124").unwrap()).unwrap();
        assert_eq!(t.name, "d124");
    }
}
