//! Complex Hessians `∂²p/∂z_k∂z̄_l` and their spectra.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::scalar::Scalar;
use crate::wpoly::{CompiledPoly, WPolynomial};

/// `n × n` Hermitian matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianForm<C = Complex64> {
    n: usize,
    entries: Vec<C>,
}

impl<C: Scalar> HermitianForm<C> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for k in 0..n {
            for l in 0..n {
                entries.push(f(k, l));
            }
        }
        Self { n, entries }
    }

    pub fn diagonal(d: &[C]) -> Self {
        Self::from_fn(d.len(), |k, l| if k == l { d[k].clone() } else { C::zero() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, k: usize, l: usize) -> &C {
        &self.entries[k * self.n + l]
    }

    pub fn entries(&self) -> &[C] {
        &self.entries
    }

    /// Exact check that the matrix equals its conjugate transpose.
    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|k| (0..self.n).all(|l| *self.get(k, l) == self.get(l, k).conj()))
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> HermitianForm<D> {
        HermitianForm { n: self.n, entries: self.entries.iter().map(f).collect() }
    }

    pub fn at(&self, j: f64) -> HermitianForm<Complex64> {
        self.map(|c| c.at(j))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(self.n, |k, l| self.get(k, l).sub(o.get(k, l)))
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map(|c| c.mul(s))
    }

    /// `D · H · D` for a diagonal `D`.
    pub fn congruence_diag(&self, d: &[C]) -> Self {
        Self::from_fn(self.n, |k, l| d[k].mul(self.get(k, l)).mul(&d[l]))
    }
}

impl HermitianForm<Complex64> {
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(self.n, self.n, &self.entries)
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut m: f64 = 0.0;
        for k in 0..self.n {
            for l in 0..self.n {
                m = m.max((self.get(k, l) - self.get(l, k).conj()).norm());
            }
        }
        m
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.entries[0].re];
        }
        let mut ev: Vec<f64> = SymmetricEigen::new(self.to_matrix()).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Eigenvalues (descending) with unit eigenvectors as columns.
    pub fn eigen_decomposition(&self) -> (Vec<f64>, DMatrix<Complex64>) {
        let eig = SymmetricEigen::new(self.to_matrix());
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = DMatrix::from_fn(self.n, self.n, |r, c| eig.eigenvectors[(r, order[c])]);
        (values, vectors)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        if self.n == 2 {
            // closed form avoids the iterative solver in hot loops
            let a = self.entries[0].re;
            let d = self.entries[3].re;
            let b = self.entries[1].norm();
            let mean = 0.5 * (a + d);
            let rad = (0.25 * (a - d) * (a - d) + b * b).sqrt();
            return mean - rad;
        }
        self.eigenvalues()[0]
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.entries.iter().zip(&o.entries).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// Symbolic matrix of second derivatives `∂²p/∂z_k∂z̄_l`.
pub fn hessian_polys<C: Scalar>(p: &WPolynomial<C>) -> Vec<Vec<WPolynomial<C>>> {
    let n = p.dim();
    (0..n).map(|k| (0..n).map(|l| p.d_z(k).d_zbar(l)).collect()).collect()
}

/// `∂²p/∂z_k∂z̄_l` evaluated at `(z, w)` in the coefficient ring.
pub fn complex_hessian<C: Scalar>(p: &WPolynomial<C>, z: &[C], w: &C) -> HermitianForm<C> {
    let polys = hessian_polys(p);
    HermitianForm::from_fn(p.dim(), |k, l| polys[k][l].eval(z, w))
}

/// Precompiled floating-point Hessian evaluator.
#[derive(Clone, Debug)]
pub struct HessianField {
    n: usize,
    entries: Vec<CompiledPoly>,
}

impl HessianField {
    pub fn new<C: Scalar>(p: &WPolynomial<C>, j: f64) -> Self {
        let n = p.dim();
        let entries = hessian_polys(p).into_iter().flatten().map(|q| q.specialize(j).compile()).collect();
        Self { n, entries }
    }

    pub fn eval(&self, z: &[Complex64], w: Complex64) -> HermitianForm {
        HermitianForm::from_fn(self.n, |k, l| self.entries[k * self.n + l].eval_complex(z, w))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{GaussQ, Ring};
    use crate::wpoly::build::*;

    fn r(n: i64) -> GaussQ {
        q(n, 1)
    }

    #[test]
    fn diagonal_model_hessian() {
        let p = abs_pow(2, 0, 4, r(1)).add(&abs_pow(2, 1, 6, r(1)));
        let h = complex_hessian(&p, &[r(1), r(1)], &GaussQ::zero());
        assert_eq!(h, HermitianForm::diagonal(&[r(4), r(9)]));
        assert!(h.is_hermitian());
    }

    #[test]
    fn coupled_model_hessian() {
        let p = abs_pow(2, 0, 4, r(1)).add(&abs_monomial(&[2, 4], r(1))).add(&abs_pow(2, 1, 8, r(1)));
        let h = complex_hessian(&p, &[r(1), r(1)], &GaussQ::zero());
        assert_eq!(h, HermitianForm::from_fn(2, |k, l| [[r(5), r(2)], [r(2), r(20)]][k][l].clone()));
    }

    #[test]
    fn high_degree_vanishes_at_origin() {
        let p = abs_pow(2, 0, 4, r(1)).add(&re_term(2, 1, 2, 1, r(3)));
        let h = complex_hessian(&p, &[r(0), r(0)], &GaussQ::zero());
        assert!(h.entries().iter().all(Ring::is_zero));
    }

    #[test]
    fn closed_form_min_eigenvalue_matches_solver() {
        let h = HermitianForm::from_fn(2, |k, l| {
            [[Complex64::new(3.0, 0.0), Complex64::new(1.0, -2.0)], [Complex64::new(1.0, 2.0), Complex64::new(-1.0, 0.0)]][k][l]
        });
        assert!((h.min_eigenvalue() - h.eigenvalues()[0]).abs() < 1e-12);
    }
}
