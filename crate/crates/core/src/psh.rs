//! Sampled plurisubharmonicity margins.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::{HermitianForm, HessianField};
use crate::par;
use crate::scalar::Scalar;
use crate::wpoly::WPolynomial;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Margins below this are reported as zero with [`PshFlag::PshOnly`].
pub const MARGIN_FLOOR: f64 = 1e-7;

/// Finite set of `z` sample points (the `w` slot is evaluated at 0).
#[derive(Clone, Debug)]
pub struct SampleGrid {
    pub points: Vec<Vec<Complex64>>,
}

impl SampleGrid {
    /// Log-spaced radii in `[r_min, r_max]` times equispaced angles, per
    /// coordinate; for `n > 1` the product of `{0} ∪` the per-coordinate
    /// samples (the all-zero point excluded).
    pub fn polar(n: usize, r_min: f64, r_max: f64, n_r: usize, n_theta: usize) -> Self {
        let mut one: Vec<Complex64> = Vec::with_capacity(n_r * n_theta);
        for a in 0..n_r {
            let t = if n_r == 1 { 0.0 } else { a as f64 / (n_r - 1) as f64 };
            let r = r_min * (r_max / r_min).powf(t);
            for b in 0..n_theta {
                one.push(Complex64::from_polar(r, 2.0 * PI * b as f64 / n_theta as f64));
            }
        }
        if n == 1 {
            return Self { points: one.into_iter().map(|z| vec![z]).collect() };
        }
        let mut axis = vec![Complex64::new(0.0, 0.0)];
        axis.extend(one);
        let mut points: Vec<Vec<Complex64>> = vec![vec![]];
        for _ in 0..n {
            points = points
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |z| {
                        let mut q = p.clone();
                        q.push(*z);
                        q
                    })
                })
                .collect();
        }
        points.retain(|p| p.iter().any(|z| z.norm() > 0.0));
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PshFlag {
    Margin,
    PshOnly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PshMargin {
    pub delta: f64,
    pub flag: PshFlag,
    /// Smallest eigenvalue of `ddᶜp` over the grid.
    pub min_eigenvalue: f64,
}

fn grid_hessians<C: Scalar>(p: &WPolynomial<C>, grid: &SampleGrid) -> Vec<HermitianForm> {
    let field = HessianField::new(p, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    par::map(&grid.points, |z| field.eval(z, zero))
}

/// Largest `δ ≥ 0` with `ddᶜp − δ·ddᶜcomparison ⪰ −tol` on the grid.
pub fn psh_margin_on_grid<C: Scalar>(
    p: &WPolynomial<C>,
    comparison: &WPolynomial<C>,
    grid: &SampleGrid,
    tol: f64,
) -> Result<PshMargin> {
    if grid.is_empty() {
        return Err(Error::InvariantViolation("empty sample grid".into()));
    }
    if p.dim() != comparison.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: comparison.dim() });
    }
    let hp = grid_hessians(p, grid);
    let hs = grid_hessians(comparison, grid);

    let (mut worst, mut at) = (f64::INFINITY, 0);
    for (i, h) in hp.iter().enumerate() {
        let m = h.min_eigenvalue();
        if m < worst {
            worst = m;
            at = i;
        }
    }
    if worst < -tol {
        let point = grid.points[at].iter().map(|z| (z.re, z.im)).collect();
        return Err(Error::NotPsh { point, eigenvalue: worst });
    }

    let feasible = |delta: f64| {
        hp.iter().zip(&hs).all(|(a, b)| a.sub(&b.scale(&Complex64::new(delta, 0.0))).min_eigenvalue() >= -tol)
    };
    let mut lo = 0.0;
    let mut hi = 1.0;
    while feasible(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Ok(PshMargin { delta: f64::INFINITY, flag: PshFlag::Margin, min_eigenvalue: worst });
        }
    }
    for _ in 0..200 {
        if hi - lo <= 1e-12 * hi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo < MARGIN_FLOOR {
        Ok(PshMargin { delta: 0.0, flag: PshFlag::PshOnly, min_eigenvalue: worst })
    } else {
        Ok(PshMargin { delta: lo, flag: PshFlag::Margin, min_eigenvalue: worst })
    }
}

/// Strong h-extendibility margin of a rigid model `Re w + P(z)`: the
/// largest `δ` with `P − δσ_Λ` plurisubharmonic on the grid.
pub fn hext_margin(d: &crate::domains::DomainSpec, grid: &SampleGrid, tol: f64) -> Result<PshMargin> {
    let p = crate::scaling::rigid_part(d)?;
    let lambda = d.lambda.as_ref().ok_or_else(|| Error::InvariantViolation(format!("{} has no multiweight", d.name)))?;
    psh_margin_on_grid(&p, &lambda.sigma()?, grid, tol)
}

/// Plurisubharmonicity of the `z`-part of the defining function on the grid.
pub fn psh_check(d: &crate::domains::DomainSpec, grid: &SampleGrid, tol: f64) -> Result<PshMargin> {
    let p = d.defining.pure_z_part();
    psh_margin_on_grid(&p, &p, grid, tol)
}
