//! A real-valued polynomial viewed as a function on `ℝ^{2n+2}` with
//! analytic gradient, for the optimization and root-finding routines.
//!
//! Real coordinates are ordered `(x_1, y_1, …, x_n, y_n, u, v)`.

use num_complex::Complex64;

use crate::wpoly::{CompiledPoly, WPolynomial};

#[derive(Clone, Debug)]
pub struct RealFunction {
    n: usize,
    f: CompiledPoly,
    dz: Vec<CompiledPoly>,
    du: CompiledPoly,
    dv: CompiledPoly,
}

pub fn to_real(z: &[Complex64], w: Complex64) -> Vec<f64> {
    let mut x: Vec<f64> = z.iter().flat_map(|c| [c.re, c.im]).collect();
    x.push(w.re);
    x.push(w.im);
    x
}

pub fn to_complex(x: &[f64]) -> (Vec<Complex64>, Complex64) {
    let n = (x.len() - 2) / 2;
    let z = (0..n).map(|k| Complex64::new(x[2 * k], x[2 * k + 1])).collect();
    (z, Complex64::new(x[2 * n], x[2 * n + 1]))
}

pub fn point_to_real(p: &[Complex64]) -> Vec<f64> {
    let n = p.len() - 1;
    to_real(&p[..n], p[n])
}

pub fn real_to_point(x: &[f64]) -> Vec<Complex64> {
    let (mut z, w) = to_complex(x);
    z.push(w);
    z
}

impl RealFunction {
    pub fn new(p: &WPolynomial<Complex64>) -> Self {
        let n = p.dim();
        Self {
            n,
            f: p.compile(),
            dz: (0..n).map(|k| p.d_z(k).compile()).collect(),
            du: p.d_u().compile(),
            dv: p.d_v().compile(),
        }
    }

    pub fn real_dim(&self) -> usize {
        2 * self.n + 2
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let (z, w) = to_complex(x);
        self.f.eval(&z, w)
    }

    pub fn value_at(&self, p: &[Complex64]) -> f64 {
        self.f.eval(&p[..self.n], p[self.n])
    }

    /// `∂f/∂x_k = 2 Re ∂_z f` and `∂f/∂y_k = −2 Im ∂_z f` for real `f`.
    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let (z, w) = to_complex(x);
        let mut g = Vec::with_capacity(self.real_dim());
        for d in &self.dz {
            let c = d.eval_complex(&z, w);
            g.push(2.0 * c.re);
            g.push(-2.0 * c.im);
        }
        g.push(self.du.eval(&z, w));
        g.push(self.dv.eval(&z, w));
        g
    }

    /// Central-difference Hessian of the analytic gradient.
    pub fn hessian(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let d = self.real_dim();
        let scale = x.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let h = 1e-6 * scale;
        let mut out = vec![vec![0.0; d]; d];
        let mut xp = x.to_vec();
        for k in 0..d {
            xp[k] = x[k] + h;
            let gp = self.gradient(&xp);
            xp[k] = x[k] - h;
            let gm = self.gradient(&xp);
            xp[k] = x[k];
            for (i, row) in out.iter_mut().enumerate() {
                row[k] = (gp[i] - gm[i]) / (2.0 * h);
            }
        }
        for i in 0..d {
            for k in 0..i {
                let m = 0.5 * (out[i][k] + out[k][i]);
                out[i][k] = m;
                out[k][i] = m;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wpoly::build::*;

    #[test]
    fn gradient_matches_finite_differences() {
        let p = re_w(2).add(&abs_pow(2, 0, 4, q(1, 1))).add(&re_term(2, 1, 3, 1, q(2, 3))).add(&WPolynomial::v(2).pow(2));
        let f = RealFunction::new(&p.specialize(1.0));
        let x = [0.3, -0.2, 0.5, 0.1, -0.4, 0.7];
        let g = f.gradient(&x);
        for k in 0..6 {
            let mut a = x;
            let mut b = x;
            a[k] += 1e-6;
            b[k] -= 1e-6;
            let fd = (f.value(&a) - f.value(&b)) / 2e-6;
            assert!((fd - g[k]).abs() < 1e-7, "{k}: {fd} vs {}", g[k]);
        }
    }
}
