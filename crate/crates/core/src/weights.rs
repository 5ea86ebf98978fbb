//! Multiweights, weighted degrees and order-class tests on polynomial data.

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Exponent, Scalar};
use crate::wpoly::{Exps, WPolynomial};

/// `Λ = (λ_1, …, λ_n)`, optionally tied to a multitype `(2m_1, …, 2m_n, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiWeight {
    lambdas: Vec<Exponent>,
    multitype: Option<Vec<u32>>,
}

impl MultiWeight {
    /// From a declared multitype; each entry must be even and positive,
    /// ordered so that the weights are nonincreasing.
    pub fn from_multitype(two_m: &[u32]) -> Result<Self> {
        if two_m.iter().any(|&m| m == 0 || m % 2 == 1) {
            return Err(Error::InvariantViolation(format!("multitype entries must be positive even integers: {two_m:?}")));
        }
        let lambdas = two_m.iter().map(|&m| Exponent::new(1, m as i64)).collect();
        let w = Self { lambdas, multitype: Some(two_m.to_vec()) };
        w.validate()?;
        Ok(w)
    }

    /// General rational weights (no multitype).
    pub fn general(lambdas: Vec<Exponent>) -> Result<Self> {
        let w = Self { lambdas, multitype: None };
        w.validate()?;
        Ok(w)
    }

    fn validate(&self) -> Result<()> {
        if self.lambdas.is_empty() {
            return Err(Error::InvariantViolation("empty multiweight".into()));
        }
        if self.lambdas.iter().any(|l| !l.is_positive() || *l > Exponent::one()) {
            return Err(Error::InvariantViolation(format!("weights must lie in (0, 1]: {:?}", self.lambdas)));
        }
        if self.lambdas.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::InvariantViolation(format!("weights must be nonincreasing: {:?}", self.lambdas)));
        }
        if let Some(mt) = &self.multitype {
            for (l, &m) in self.lambdas.iter().zip(mt) {
                if *l * Exponent::from_integer(m as i64) != Exponent::one() {
                    return Err(Error::InvariantViolation("weight and multitype disagree".into()));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[Exponent] {
        &self.lambdas
    }

    pub fn multitype(&self) -> Option<&[u32]> {
        self.multitype.as_deref()
    }

    /// `2m_k`, falling back to `1/λ_k` rounded for general weights.
    pub fn two_m(&self, k: usize) -> u32 {
        match &self.multitype {
            Some(mt) => mt[k],
            None => (Exponent::one() / self.lambdas[k]).to_integer() as u32,
        }
    }

    pub fn lambda_f64(&self, k: usize) -> f64 {
        let l = self.lambdas[k];
        *l.numer() as f64 / *l.denom() as f64
    }

    /// `π_t(z) = (t^{λ_1} z_1, …, t^{λ_n} z_n)`.
    pub fn dilate(&self, t: f64, z: &[Complex64]) -> Vec<Complex64> {
        z.iter().enumerate().map(|(k, zk)| zk * t.powf(self.lambda_f64(k))).collect()
    }

    /// `σ_Λ(z) = Σ |z_k|^{1/λ_k}`, requiring integer-even exponents.
    pub fn sigma<C: Scalar>(&self) -> Result<WPolynomial<C>> {
        let n = self.dim();
        let mut s = WPolynomial::zero(n);
        for k in 0..n {
            let inv = Exponent::one() / self.lambdas[k];
            if !inv.is_integer() || inv.to_integer() % 2 != 0 {
                return Err(Error::NotRepresentable(format!("|z_{}|^{inv} is not a polynomial", k + 1)));
            }
            s = s.add(&WPolynomial::abs_pow(n, k, inv.to_integer() as u32));
        }
        Ok(s)
    }
}

/// `wt(K) = Σ k_j λ_j`.
pub fn monomial_weight(k: &[u32], weights: &MultiWeight) -> Exponent {
    k.iter().zip(weights.lambdas()).map(|(&kj, l)| *l * Exponent::from_integer(kj as i64)).sum()
}

/// Weighted degree of a `z, z̄` monomial.
pub fn exps_weight(e: &Exps, weights: &MultiWeight) -> Exponent {
    monomial_weight(&e.z, weights) + monomial_weight(&e.zb, weights)
}

fn require_pure_z<C: Scalar>(p: &WPolynomial<C>, op: &str) -> Result<()> {
    if p.depends_only_on_z() {
        Ok(())
    } else {
        Err(Error::InvariantViolation(format!("{op}: polynomial depends on w")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Homogeneity {
    pub homogeneous: bool,
    /// A monomial of the wrong weight, when not homogeneous.
    pub witness: Option<Exps>,
}

pub fn check_homogeneous<C: Scalar>(p: &WPolynomial<C>, weights: &MultiWeight, weight: Exponent) -> Result<Homogeneity> {
    require_pure_z(p, "check_homogeneous")?;
    let witness = p.terms().map(|(e, _)| e).find(|e| exps_weight(e, weights) != weight).cloned();
    Ok(Homogeneity { homogeneous: witness.is_none(), witness })
}

/// Membership in `𝒪(μ, Λ)`: every monomial has weighted degree `> μ`.
pub fn order_class_check<C: Scalar>(p: &WPolynomial<C>, weights: &MultiWeight, mu: Exponent) -> Result<bool> {
    require_pure_z(p, "order_class_check")?;
    Ok(p.terms().all(|(e, _)| exps_weight(e, weights) > mu))
}

/// Membership in `𝒪(μ)` for a polynomial in `v = Im w` alone: vanishing
/// to order at least `μ`.
pub fn order_class_check_v<C: Scalar>(p: &WPolynomial<C>, mu: Exponent) -> Result<bool> {
    if p.terms().any(|(e, _)| e.u > 0 || e.z_degree() > 0) {
        return Err(Error::InvariantViolation("order_class_check_v: polynomial depends on z or Re w".into()));
    }
    Ok(p.terms().all(|(e, _)| Exponent::from_integer(e.v as i64) >= mu))
}

/// No monomial of the pure-`z` part has `Σ (a_i + b_i)/μ_i < 1`.
pub fn distinguished_weight_check<C: Scalar>(rho_z: &WPolynomial<C>, mu: &[Exponent]) -> Result<bool> {
    require_pure_z(rho_z, "distinguished_weight_check")?;
    if mu.len() != rho_z.dim() {
        return Err(Error::DimensionMismatch { expected: rho_z.dim(), got: mu.len() });
    }
    if mu.iter().any(|m| !m.is_positive()) {
        return Err(Error::InvariantViolation("distinguished weights must be positive".into()));
    }
    Ok(rho_z.terms().all(|(e, _)| {
        let s: Exponent = (0..mu.len())
            .map(|i| Exponent::from_integer((e.z[i] + e.zb[i]) as i64) / mu[i])
            .sum();
        s >= Exponent::one()
    }))
}

pub fn exponent_to_f64(e: Exponent) -> f64 {
    e.numer().to_f64().unwrap_or(f64::NAN) / e.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussQ;
    use crate::wpoly::build::*;

    fn e(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    #[test]
    fn weights_of_tuples() {
        let w = MultiWeight::from_multitype(&[4, 8]).unwrap();
        assert_eq!(monomial_weight(&[4, 0], &w), e(1, 1));
        assert_eq!(monomial_weight(&[1, 1], &w), e(3, 8));
        assert_eq!(monomial_weight(&[0, 0], &w), e(0, 1));
    }

    #[test]
    fn invariants_enforced() {
        assert!(MultiWeight::from_multitype(&[6, 4]).is_err());
        assert!(MultiWeight::from_multitype(&[3]).is_err());
        assert!(MultiWeight::general(vec![e(3, 2)]).is_err());
    }

    #[test]
    fn homogeneity() {
        let w = MultiWeight::from_multitype(&[4, 6]).unwrap();
        let p = abs_pow(2, 0, 4, q(1, 1)).add(&abs_pow(2, 1, 6, q(1, 1)));
        assert!(check_homogeneous(&p, &w, e(1, 1)).unwrap().homogeneous);
        assert_eq!(w.sigma::<GaussQ>().unwrap(), p);
        let mixed = abs_pow(1, 0, 2, q(1, 1)).add(&abs_pow(1, 0, 4, q(1, 1)));
        for t in [2, 4] {
            let w1 = MultiWeight::from_multitype(&[t]).unwrap();
            let h = check_homogeneous(&mixed, &w1, e(1, 1)).unwrap();
            assert!(!h.homogeneous);
            let wit = h.witness.unwrap();
            assert!(wit.z[0] == 1 || wit.z[0] == 2);
        }
    }

    #[test]
    fn order_classes() {
        let w = MultiWeight::from_multitype(&[4, 8]).unwrap();
        let p = abs_monomial(&[2, 8], q(1, 1));
        assert!(order_class_check(&p, &w, e(1, 1)).unwrap());
        assert!(!order_class_check(&abs_pow(2, 0, 2, q(1, 1)), &w, e(1, 1)).unwrap());
        assert!(order_class_check(&WPolynomial::<GaussQ>::zero(2), &w, e(5, 1)).unwrap());
        let v2 = WPolynomial::<GaussQ>::v(1).pow(2);
        assert!(order_class_check_v(&v2, e(2, 1)).unwrap());
        assert!(!order_class_check_v(&v2, e(3, 1)).unwrap());
    }

    #[test]
    fn distinguished() {
        let p = abs_pow(2, 0, 4, q(1, 1)).add(&abs_pow(2, 1, 6, q(1, 1)));
        assert!(distinguished_weight_check(&p, &[e(4, 1), e(6, 1)]).unwrap());
        assert!(!distinguished_weight_check(&p, &[e(6, 1), e(6, 1)]).unwrap());
        assert!(distinguished_weight_check(&WPolynomial::<GaussQ>::zero(2), &[e(4, 1), e(6, 1)]).unwrap());
    }
}
