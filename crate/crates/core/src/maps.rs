//! Invertible holomorphic self-maps of `ℂ^{n+1}` built from elementary steps.
//!
//! Points are `Vec<C>` of length `n + 1` laid out as `(z_1, …, z_n, w)`.
//! Every polynomial step also has a polynomial inverse, so a defining
//! function can be pulled back symbolically through any pipeline that
//! avoids the Cayley-type steps.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{Exponent, Scalar};
use crate::wpoly::WPolynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    Translation,
    Linear,
    Unitary,
    PolynomialShear,
    DiagonalDilation,
    Cayley,
    WeightedCayley,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Translation => "translation",
            Self::Linear => "linear",
            Self::Unitary => "unitary",
            Self::PolynomialShear => "polynomial-shear",
            Self::DiagonalDilation => "diagonal-dilation",
            Self::Cayley => "cayley",
            Self::WeightedCayley => "weighted-cayley",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ScalingStep<C> {
    /// `x ↦ x + offset`.
    Translation { offset: Vec<C> },
    /// `x ↦ M x` with the inverse stored alongside.
    Linear { matrix: Vec<Vec<C>>, inverse: Vec<Vec<C>>, unitary: bool },
    /// Inverse form `z = z′`, `w = scale·w′ + q(z′)`; `q` holomorphic in `z`
    /// with `q(0) = 0`.
    Shear { scale: C, q: WPolynomial<C> },
    /// `x_k ↦ x_k / s_k`; stores the inverse factors `s_k`.
    Dilation { inverse_factors: Vec<C> },
    /// `(z, w) ↦ (2z/(1−w), (w+1)/(1−w))`.
    Cayley,
    /// `z_k ↦ (2/(1−w))^{e_k} z_k`, `w ↦ (w+1)/(1−w)`, principal branch.
    WeightedCayley { exponents: Vec<Exponent> },
}

fn mat_vec<C: Scalar>(m: &[Vec<C>], x: &[C]) -> Vec<C> {
    m.iter().map(|row| row.iter().zip(x).fold(C::zero(), |acc, (a, b)| acc.add(&a.mul(b)))).collect()
}

fn inv_or<C: Scalar>(x: &C, what: &str) -> Result<C> {
    if x.is_zero() {
        return Err(Error::PoleHit);
    }
    x.try_inv().ok_or_else(|| Error::NotRepresentable(format!("inverse of {what}")))
}

fn powc<C: Scalar>(x: &C, p: Exponent) -> Result<C> {
    x.try_powc(p).ok_or_else(|| Error::NotRepresentable(format!("fractional power {p}")))
}

impl<C: Scalar> ScalingStep<C> {
    pub fn kind(&self) -> StepKind {
        match self {
            Self::Translation { .. } => StepKind::Translation,
            Self::Linear { unitary: true, .. } => StepKind::Unitary,
            Self::Linear { .. } => StepKind::Linear,
            Self::Shear { .. } => StepKind::PolynomialShear,
            Self::Dilation { .. } => StepKind::DiagonalDilation,
            Self::Cayley => StepKind::Cayley,
            Self::WeightedCayley { .. } => StepKind::WeightedCayley,
        }
    }

    pub fn translation(offset: Vec<C>) -> Self {
        Self::Translation { offset }
    }

    /// Acts on the `z` block only.
    pub fn z_linear(matrix: Vec<Vec<C>>, inverse: Vec<Vec<C>>, unitary: bool) -> Self {
        let n = matrix.len();
        let embed = |m: Vec<Vec<C>>| {
            let mut out: Vec<Vec<C>> = m
                .into_iter()
                .map(|mut row| {
                    row.push(C::zero());
                    row
                })
                .collect();
            let mut last = vec![C::zero(); n];
            last.push(C::one());
            out.push(last);
            out
        };
        Self::Linear { matrix: embed(matrix), inverse: embed(inverse), unitary }
    }

    pub fn apply(&self, x: &[C]) -> Result<Vec<C>> {
        let n = x.len() - 1;
        match self {
            Self::Translation { offset } => Ok(x.iter().zip(offset).map(|(a, b)| a.add(b)).collect()),
            Self::Linear { matrix, .. } => Ok(mat_vec(matrix, x)),
            Self::Shear { scale, q } => {
                let qz = q.eval(&x[..n], &C::zero());
                let mut y = x.to_vec();
                y[n] = x[n].sub(&qz).mul(&inv_or(scale, "shear scale")?);
                Ok(y)
            }
            Self::Dilation { inverse_factors } => {
                x.iter().zip(inverse_factors).map(|(a, s)| Ok(a.mul(&inv_or(s, "dilation factor")?))).collect()
            }
            Self::Cayley => {
                let w = &x[n];
                let r = inv_or(&C::one().sub(w), "1 - w")?;
                let two = C::from_i64(2);
                let mut y: Vec<C> = x[..n].iter().map(|z| two.mul(z).mul(&r)).collect();
                y.push(w.add(&C::one()).mul(&r));
                Ok(y)
            }
            Self::WeightedCayley { exponents } => {
                let w = &x[n];
                let r = inv_or(&C::one().sub(w), "1 - w")?;
                let base = C::from_i64(2).mul(&r);
                let mut y = Vec::with_capacity(n + 1);
                for (z, e) in x[..n].iter().zip(exponents) {
                    y.push(powc(&base, *e)?.mul(z));
                }
                y.push(w.add(&C::one()).mul(&r));
                Ok(y)
            }
        }
    }

    pub fn invert(&self, y: &[C]) -> Result<Vec<C>> {
        let n = y.len() - 1;
        match self {
            Self::Translation { offset } => Ok(y.iter().zip(offset).map(|(a, b)| a.sub(b)).collect()),
            Self::Linear { inverse, .. } => Ok(mat_vec(inverse, y)),
            Self::Shear { scale, q } => {
                let qz = q.eval(&y[..n], &C::zero());
                let mut x = y.to_vec();
                x[n] = scale.mul(&y[n]).add(&qz);
                Ok(x)
            }
            Self::Dilation { inverse_factors } => Ok(y.iter().zip(inverse_factors).map(|(a, s)| a.mul(s)).collect()),
            Self::Cayley => {
                let om = &y[n];
                let r = inv_or(&om.add(&C::one()), "1 + w")?;
                let mut x: Vec<C> = y[..n].iter().map(|z| z.mul(&r)).collect();
                x.push(om.sub(&C::one()).mul(&r));
                Ok(x)
            }
            Self::WeightedCayley { exponents } => {
                let om = &y[n];
                let base = om.add(&C::one());
                let r = inv_or(&base, "1 + w")?;
                let mut x = Vec::with_capacity(n + 1);
                for (z, e) in y[..n].iter().zip(exponents) {
                    x.push(z.mul(&powc(&base, -*e)?));
                }
                x.push(om.sub(&C::one()).mul(&r));
                Ok(x)
            }
        }
    }

    /// Components of the inverse step as polynomials in the new
    /// coordinates: `(z_1, …, z_n, w)` of the old point.
    fn inverse_polys(&self, n: usize) -> Result<(Vec<WPolynomial<C>>, WPolynomial<C>)> {
        let zs: Vec<WPolynomial<C>> = (0..n).map(|k| WPolynomial::z(n, k)).collect();
        let w = WPolynomial::w(n);
        let mut vars = zs.clone();
        vars.push(w.clone());
        match self {
            Self::Translation { offset } => {
                let mut out: Vec<WPolynomial<C>> =
                    vars.iter().zip(offset).map(|(v, o)| v.sub(&WPolynomial::constant(n, o.clone()))).collect();
                let w_old = out.pop().unwrap();
                Ok((out, w_old))
            }
            Self::Linear { inverse, .. } => {
                let mut out: Vec<WPolynomial<C>> = inverse
                    .iter()
                    .map(|row| row.iter().zip(&vars).fold(WPolynomial::zero(n), |acc, (a, v)| acc.add(&v.scale(a))))
                    .collect();
                let w_old = out.pop().unwrap();
                Ok((out, w_old))
            }
            Self::Shear { scale, q } => Ok((zs, w.scale(scale).add(q))),
            Self::Dilation { inverse_factors } => {
                let mut out: Vec<WPolynomial<C>> = vars.iter().zip(inverse_factors).map(|(v, s)| v.scale(s)).collect();
                let w_old = out.pop().unwrap();
                Ok((out, w_old))
            }
            Self::Cayley | Self::WeightedCayley { .. } => {
                Err(Error::NotRepresentable("Cayley-type steps have no polynomial inverse".into()))
            }
        }
    }

    /// `p ∘ step⁻¹`.
    pub fn pullback(&self, p: &WPolynomial<C>) -> Result<WPolynomial<C>> {
        let (zs, w) = self.inverse_polys(p.dim())?;
        Ok(p.compose_holomorphic(&zs, &w))
    }

    pub fn map_coeffs<D: Scalar>(&self, f: &impl Fn(&C) -> D) -> ScalingStep<D> {
        let vec = |v: &[C]| v.iter().map(f).collect::<Vec<D>>();
        let mat = |m: &[Vec<C>]| m.iter().map(|r| vec(r)).collect::<Vec<_>>();
        match self {
            Self::Translation { offset } => ScalingStep::Translation { offset: vec(offset) },
            Self::Linear { matrix, inverse, unitary } => {
                ScalingStep::Linear { matrix: mat(matrix), inverse: mat(inverse), unitary: *unitary }
            }
            Self::Shear { scale, q } => ScalingStep::Shear { scale: f(scale), q: q.map_coeffs(f) },
            Self::Dilation { inverse_factors } => ScalingStep::Dilation { inverse_factors: vec(inverse_factors) },
            Self::Cayley => ScalingStep::Cayley,
            Self::WeightedCayley { exponents } => ScalingStep::WeightedCayley { exponents: exponents.clone() },
        }
    }
}

impl<C: Scalar + fmt::Display> ScalingStep<C> {
    pub fn to_json(&self) -> Value {
        let s = |c: &C| c.to_string();
        let vec = |v: &[C]| v.iter().map(s).collect::<Vec<_>>();
        let mat = |m: &[Vec<C>]| m.iter().map(|r| vec(r)).collect::<Vec<_>>();
        let kind = self.kind().name();
        match self {
            Self::Translation { offset } => json!({"kind": kind, "offset": vec(offset)}),
            Self::Linear { matrix, inverse, .. } => json!({"kind": kind, "matrix": mat(matrix), "inverse": mat(inverse)}),
            Self::Shear { scale, q } => json!({"kind": kind, "w_scale": s(scale), "q": q.to_string()}),
            Self::Dilation { inverse_factors } => json!({"kind": kind, "inverse_factors": vec(inverse_factors)}),
            Self::Cayley => json!({"kind": kind}),
            Self::WeightedCayley { exponents } => {
                json!({"kind": kind, "exponents": exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>()})
            }
        }
    }
}

/// Ordered composition: `steps[0]` is applied first.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingMap<C> {
    n: usize,
    steps: Vec<ScalingStep<C>>,
    /// Human-readable domain of validity.
    pub chart: String,
}

impl<C: Scalar> ScalingMap<C> {
    pub fn identity(n: usize) -> Self {
        Self { n, steps: Vec::new(), chart: "C^{n+1}".into() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[ScalingStep<C>] {
        &self.steps
    }

    pub fn then(mut self, step: ScalingStep<C>) -> Self {
        if matches!(step, ScalingStep::Cayley | ScalingStep::WeightedCayley { .. }) {
            self.chart = "w != 1 before the Cayley step".into();
        }
        self.steps.push(step);
        self
    }

    /// `other ∘ self`.
    pub fn followed_by(mut self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        for s in &other.steps {
            self = self.then(s.clone());
        }
        self
    }

    fn check_dim(&self, x: &[C]) -> Result<()> {
        if x.len() != self.n + 1 {
            return Err(Error::DimensionMismatch { expected: self.n + 1, got: x.len() });
        }
        Ok(())
    }

    pub fn apply(&self, x: &[C]) -> Result<Vec<C>> {
        self.check_dim(x)?;
        let mut y = x.to_vec();
        for s in &self.steps {
            y = s.apply(&y).map_err(chart_error)?;
        }
        Ok(y)
    }

    pub fn invert(&self, y: &[C]) -> Result<Vec<C>> {
        self.check_dim(y)?;
        let mut x = y.to_vec();
        for s in self.steps.iter().rev() {
            x = s.invert(&x).map_err(chart_error)?;
        }
        Ok(x)
    }

    /// `p ∘ F⁻¹`, exact when every step is polynomial.
    pub fn pullback(&self, p: &WPolynomial<C>) -> Result<WPolynomial<C>> {
        let mut q = p.clone();
        for s in &self.steps {
            q = s.pullback(&q)?;
        }
        Ok(q)
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> ScalingMap<D> {
        ScalingMap { n: self.n, steps: self.steps.iter().map(|s| s.map_coeffs(&f)).collect(), chart: self.chart.clone() }
    }

    pub fn specialize(&self, j: f64) -> ScalingMap<num_complex::Complex64> {
        self.map_coeffs(|c| c.at(j))
    }
}

fn chart_error(e: Error) -> Error {
    match e {
        Error::PoleHit => Error::ChartViolation("pole of a Cayley-type step".into()),
        other => other,
    }
}

impl<C: Scalar + fmt::Display> ScalingMap<C> {
    pub fn to_json(&self) -> Value {
        Value::Array(self.steps.iter().map(ScalingStep::to_json).collect())
    }
}

/// `Ψ` from the Siegel half-space onto the unit ball.
pub fn cayley<C: Scalar>(n: usize) -> ScalingMap<C> {
    ScalingMap::identity(n).then(ScalingStep::Cayley)
}

/// Weighted Cayley map with per-coordinate exponents `2λ_k`.
pub fn weighted_cayley<C: Scalar>(exponents: Vec<Exponent>) -> ScalingMap<C> {
    let n = exponents.len();
    ScalingMap::identity(n).then(ScalingStep::WeightedCayley { exponents })
}
