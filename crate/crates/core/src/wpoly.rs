//! Polynomials in `z_1..z_n`, `z̄_1..z̄_n`, `u = Re w`, `v = Im w`.
//!
//! Every defining function, model polynomial, remainder, and rescaled
//! defining function is a [`WPolynomial`]. Wirtinger derivatives act on the
//! `z`/`z̄` exponents and leave `u`, `v` untouched as real parameters.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rat, GaussQ, Rat, Ring, Scalar};

/// Exponent tuple of one monomial `z^z · z̄^zb · u^u · v^v`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exps {
    pub z: Vec<u32>,
    pub zb: Vec<u32>,
    pub u: u32,
    pub v: u32,
}

impl Exps {
    pub fn zero(n: usize) -> Self {
        Self { z: vec![0; n], zb: vec![0; n], u: 0, v: 0 }
    }

    pub fn new(z: Vec<u32>, zb: Vec<u32>, u: u32, v: u32) -> Self {
        debug_assert_eq!(z.len(), zb.len());
        Self { z, zb, u, v }
    }

    pub fn total_degree(&self) -> u32 {
        self.z.iter().sum::<u32>() + self.zb.iter().sum::<u32>() + self.u + self.v
    }

    /// Degree in `z` and `z̄` only.
    pub fn z_degree(&self) -> u32 {
        self.z.iter().sum::<u32>() + self.zb.iter().sum::<u32>()
    }

    pub fn is_pure_z(&self) -> bool {
        self.u == 0 && self.v == 0
    }

    /// Holomorphic or antiholomorphic in `z` (includes constants).
    pub fn is_pluriharmonic(&self) -> bool {
        self.z.iter().all(|&a| a == 0) || self.zb.iter().all(|&b| b == 0)
    }

    fn conj(&self) -> Self {
        Self { z: self.zb.clone(), zb: self.z.clone(), u: self.u, v: self.v }
    }

    fn add(&self, o: &Self) -> Self {
        Self {
            z: self.z.iter().zip(&o.z).map(|(a, b)| a + b).collect(),
            zb: self.zb.iter().zip(&o.zb).map(|(a, b)| a + b).collect(),
            u: self.u + o.u,
            v: self.v + o.v,
        }
    }
}

impl Ord for Exps {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.z.cmp(&other.z))
            .then_with(|| self.zb.cmp(&other.zb))
            .then_with(|| self.u.cmp(&other.u))
            .then_with(|| self.v.cmp(&other.v))
    }
}

impl PartialOrd for Exps {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// One stored term; `coeff` is never zero.
#[derive(Clone, Debug, PartialEq)]
pub struct WMonomial<C> {
    pub coeff: C,
    pub exps: Exps,
}

/// Sparse polynomial in `(z, z̄, Re w, Im w)` over the scalar ring `C`.
///
/// Defining functions are real-valued, which [`WPolynomial::is_real_valued`]
/// checks; intermediate results (derivatives, holomorphic map components)
/// need not be.
#[derive(Clone, PartialEq)]
pub struct WPolynomial<C = GaussQ> {
    n: usize,
    terms: BTreeMap<Exps, C>,
}

impl<C: Scalar> WPolynomial<C> {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: C) -> Self {
        Self::from_terms(n, [(Exps::zero(n), c)])
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Exps, C)>) -> Self {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn monomial(c: C, z: Vec<u32>, zb: Vec<u32>, u: u32, v: u32) -> Self {
        let n = z.len();
        Self::from_terms(n, [(Exps::new(z, zb, u, v), c)])
    }

    fn unit(n: usize, f: impl FnOnce(&mut Exps)) -> Self {
        let mut e = Exps::zero(n);
        f(&mut e);
        Self::from_terms(n, [(e, C::one())])
    }

    pub fn z(n: usize, k: usize) -> Self {
        Self::unit(n, |e| e.z[k] = 1)
    }

    pub fn zbar(n: usize, k: usize) -> Self {
        Self::unit(n, |e| e.zb[k] = 1)
    }

    pub fn u(n: usize) -> Self {
        Self::unit(n, |e| e.u = 1)
    }

    pub fn v(n: usize) -> Self {
        Self::unit(n, |e| e.v = 1)
    }

    /// `w = u + i v` as a polynomial.
    pub fn w(n: usize) -> Self {
        Self::u(n).add(&Self::v(n).scale(&C::i()))
    }

    /// `|z_k|^{2m}`.
    pub fn abs_pow(n: usize, k: usize, two_m: u32) -> Self {
        assert!(two_m % 2 == 0, "exponent of |z|^p must be even");
        Self::unit(n, |e| {
            e.z[k] = two_m / 2;
            e.zb[k] = two_m / 2;
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order (total degree, then lexicographic exponents).
    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &C)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = WMonomial<C>> + '_ {
        self.terms.iter().map(|(e, c)| WMonomial { coeff: c.clone(), exps: e.clone() })
    }

    pub fn coefficient(&self, e: &Exps) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of `z^z z̄^zb` (no `u`, `v`).
    pub fn coeff_z(&self, z: &[u32], zb: &[u32]) -> C {
        self.coefficient(&Exps::new(z.to_vec(), zb.to_vec(), 0, 0))
    }

    pub fn add_term(&mut self, e: Exps, c: C) {
        assert_eq!(e.z.len(), self.n, "monomial dimension mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| c.neg())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero(self.n);
        }
        let mut r = Self::zero(self.n);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), c.mul(s));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut r = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1.add(e2), c1.mul(c2));
            }
        }
        r
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.n, C::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn map_terms(&self, f: impl Fn(&C) -> C) -> Self {
        let mut r = Self::zero(self.n);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> WPolynomial<D> {
        let mut r = WPolynomial::zero(self.n);
        for (e, c) in &self.terms {
            r.add_term(e.clone(), f(c));
        }
        r
    }

    /// Floating-point copy with every coefficient evaluated at index `j`.
    pub fn specialize(&self, j: f64) -> WPolynomial<Complex64> {
        self.map_coeffs(|c| c.at(j))
    }

    /// Complex conjugate polynomial (`u`, `v` are real).
    pub fn conj(&self) -> Self {
        let mut r = Self::zero(self.n);
        for (e, c) in &self.terms {
            r.add_term(e.conj(), c.conj());
        }
        r
    }

    pub fn is_real_valued(&self) -> bool {
        *self == self.conj()
    }

    /// `(p + p̄)/2`.
    pub fn real_part(&self) -> Self {
        self.add(&self.conj()).scale(&C::from_rat(&rat(1, 2)))
    }

    /// `(p - p̄)/(2i)`.
    pub fn imag_part(&self) -> Self {
        let half_over_i = C::i().neg().mul(&C::from_rat(&rat(1, 2)));
        self.sub(&self.conj()).scale(&half_over_i)
    }

    pub fn depends_only_on_z(&self) -> bool {
        self.terms.keys().all(Exps::is_pure_z)
    }

    /// Terms with no `u`, `v` factor.
    pub fn pure_z_part(&self) -> Self {
        self.filter(|e| e.is_pure_z())
    }

    pub fn filter(&self, keep: impl Fn(&Exps) -> bool) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Split into (terms holomorphic or antiholomorphic in `z`, the rest).
    pub fn pluriharmonic_part(&self) -> (Self, Self) {
        (self.filter(Exps::is_pluriharmonic), self.filter(|e| !e.is_pluriharmonic()))
    }

    pub fn max_z_degree(&self) -> u32 {
        self.terms.keys().map(Exps::z_degree).max().unwrap_or(0)
    }

    /// `∂/∂z_k`.
    pub fn d_z(&self, k: usize) -> Self {
        let mut r = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e.z[k] > 0 {
                let mut e2 = e.clone();
                e2.z[k] -= 1;
                r.add_term(e2, c.scale_i64(e.z[k] as i64));
            }
        }
        r
    }

    /// `∂/∂z̄_k`.
    pub fn d_zbar(&self, k: usize) -> Self {
        let mut r = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e.zb[k] > 0 {
                let mut e2 = e.clone();
                e2.zb[k] -= 1;
                r.add_term(e2, c.scale_i64(e.zb[k] as i64));
            }
        }
        r
    }

    /// `∂/∂u` (u = Re w as a real variable).
    pub fn d_u(&self) -> Self {
        let mut r = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e.u > 0 {
                let mut e2 = e.clone();
                e2.u -= 1;
                r.add_term(e2, c.scale_i64(e.u as i64));
            }
        }
        r
    }

    /// `∂/∂v` (v = Im w as a real variable).
    pub fn d_v(&self) -> Self {
        let mut r = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e.v > 0 {
                let mut e2 = e.clone();
                e2.v -= 1;
                r.add_term(e2, c.scale_i64(e.v as i64));
            }
        }
        r
    }

    /// `D^dz D̄^dzbar p`.
    pub fn wirtinger_derivative(&self, dz: &[u32], dzbar: &[u32]) -> Self {
        let mut r = self.clone();
        for k in 0..self.n {
            for _ in 0..dz[k] {
                r = r.d_z(k);
            }
            for _ in 0..dzbar[k] {
                r = r.d_zbar(k);
            }
        }
        r
    }

    /// `Σ_k 4 ∂²/∂z_k∂z̄_k`.
    pub fn laplacian(&self) -> Self {
        let mut r = Self::zero(self.n);
        for k in 0..self.n {
            r = r.add(&self.d_z(k).d_zbar(k));
        }
        r.scale(&C::from_i64(4))
    }

    /// Evaluates at `(z, w)` inside the ring: `z̄ = conj(z)`, `u = Re w`, `v = Im w`.
    pub fn eval(&self, z: &[C], w: &C) -> C {
        assert_eq!(z.len(), self.n);
        let zb: Vec<C> = z.iter().map(Scalar::conj).collect();
        let (u, v) = (w.re(), w.im());
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..self.n {
                if e.z[k] > 0 {
                    t = t.mul(&z[k].pow(e.z[k]));
                }
                if e.zb[k] > 0 {
                    t = t.mul(&zb[k].pow(e.zb[k]));
                }
            }
            if e.u > 0 {
                t = t.mul(&u.pow(e.u));
            }
            if e.v > 0 {
                t = t.mul(&v.pow(e.v));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes `z_k ↦ zs[k]`, `z̄_k ↦ conj(zs[k])`, `u ↦ us`, `v ↦ vs`.
    /// The substitutes live in a (possibly different) dimension `m`.
    pub fn substitute(&self, zs: &[Self], us: &Self, vs: &Self) -> Self {
        assert_eq!(zs.len(), self.n);
        let m = us.n;
        let zbs: Vec<Self> = zs.iter().map(Self::conj).collect();
        let mut cache_z: Vec<Vec<Self>> = zs.iter().map(|p| vec![Self::constant(m, C::one()), p.clone()]).collect();
        let mut cache_zb: Vec<Vec<Self>> = zbs.iter().map(|p| vec![Self::constant(m, C::one()), p.clone()]).collect();
        let mut cache_u = vec![Self::constant(m, C::one()), us.clone()];
        let mut cache_v = vec![Self::constant(m, C::one()), vs.clone()];
        fn power<C: Scalar>(cache: &mut Vec<WPolynomial<C>>, k: u32) -> WPolynomial<C> {
            while cache.len() <= k as usize {
                let next = cache.last().unwrap().mul(&cache[1]);
                cache.push(next);
            }
            cache[k as usize].clone()
        }
        let mut acc = Self::zero(m);
        for (e, c) in &self.terms {
            let mut t = Self::constant(m, c.clone());
            for k in 0..self.n {
                if e.z[k] > 0 {
                    t = t.mul(&power(&mut cache_z[k], e.z[k]));
                }
                if e.zb[k] > 0 {
                    t = t.mul(&power(&mut cache_zb[k], e.zb[k]));
                }
            }
            if e.u > 0 {
                t = t.mul(&power(&mut cache_u, e.u));
            }
            if e.v > 0 {
                t = t.mul(&power(&mut cache_v, e.v));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Pullback `p ∘ F` under a holomorphic polynomial map with components
    /// `z_k = zs[k]`, `w = ws` (each given as a polynomial in the new
    /// variables, with `w` written as `u + i v`).
    pub fn compose_holomorphic(&self, zs: &[Self], ws: &Self) -> Self {
        self.substitute(zs, &ws.real_part(), &ws.imag_part())
    }
}

impl WPolynomial<Complex64> {
    /// Real part of the value at a floating-point point.
    pub fn eval_f64(&self, z: &[Complex64], w: Complex64) -> f64 {
        self.eval(z, &w).re
    }

    /// Drops coefficients with modulus below `tol`.
    pub fn prune(&self, tol: f64) -> Self {
        self.filter_coeffs(|c| c.norm() >= tol)
    }

    fn filter_coeffs(&self, keep: impl Fn(&Complex64) -> bool) -> Self {
        let mut r = Self::zero(self.n);
        for (e, c) in &self.terms {
            if keep(c) {
                r.add_term(e.clone(), *c);
            }
        }
        r
    }

    /// Largest coefficient modulus.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly::new(self)
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for WPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for i in 0..self.n {
                if e.z[i] > 0 {
                    write!(f, "*z{}^{}", i + 1, e.z[i])?;
                }
                if e.zb[i] > 0 {
                    write!(f, "*zb{}^{}", i + 1, e.zb[i])?;
                }
            }
            if e.u > 0 {
                write!(f, "*u^{}", e.u)?;
            }
            if e.v > 0 {
                write!(f, "*v^{}", e.v)?;
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for WPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WPolynomial[n={}]", self.n)?;
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// Precomputed floating-point evaluator for hot loops (ray searches, grids).
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    n: usize,
    terms: Vec<(Complex64, Vec<u32>, Vec<u32>, u32, u32)>,
    max_z: Vec<u32>,
    max_zb: Vec<u32>,
    max_u: u32,
    max_v: u32,
}

impl CompiledPoly {
    fn new(p: &WPolynomial<Complex64>) -> Self {
        let n = p.n;
        let mut max_z = vec![0; n];
        let mut max_zb = vec![0; n];
        let (mut max_u, mut max_v) = (0, 0);
        let terms = p
            .terms
            .iter()
            .map(|(e, c)| {
                for k in 0..n {
                    max_z[k] = max_z[k].max(e.z[k]);
                    max_zb[k] = max_zb[k].max(e.zb[k]);
                }
                max_u = max_u.max(e.u);
                max_v = max_v.max(e.v);
                (*c, e.z.clone(), e.zb.clone(), e.u, e.v)
            })
            .collect();
        Self { n, terms, max_z, max_zb, max_u, max_v }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn powers(x: Complex64, k: u32) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(k as usize + 1);
        let mut acc = Complex64::new(1.0, 0.0);
        out.push(acc);
        for _ in 0..k {
            acc *= x;
            out.push(acc);
        }
        out
    }

    /// Complex value (real for real-valued polynomials, up to rounding).
    pub fn eval_complex(&self, z: &[Complex64], w: Complex64) -> Complex64 {
        let pz: Vec<Vec<Complex64>> = (0..self.n).map(|k| Self::powers(z[k], self.max_z[k])).collect();
        let pzb: Vec<Vec<Complex64>> = (0..self.n).map(|k| Self::powers(z[k].conj(), self.max_zb[k])).collect();
        let pu = Self::powers(Complex64::new(w.re, 0.0), self.max_u);
        let pv = Self::powers(Complex64::new(w.im, 0.0), self.max_v);
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, ez, ezb, eu, ev) in &self.terms {
            let mut t = *c * pu[*eu as usize] * pv[*ev as usize];
            for k in 0..self.n {
                t *= pz[k][ez[k] as usize] * pzb[k][ezb[k] as usize];
            }
            acc += t;
        }
        acc
    }

    pub fn eval(&self, z: &[Complex64], w: Complex64) -> f64 {
        self.eval_complex(z, w).re
    }
}

/// One term of the JSON polynomial literal.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermLiteral {
    /// `[re, im]` as rational strings such as `"15/7"`.
    pub c: [String; 2],
    pub z: Vec<u32>,
    pub zb: Vec<u32>,
    #[serde(default)]
    pub u: u32,
    #[serde(default)]
    pub v: u32,
}

fn parse_rat(s: &str, field: &str) -> Result<Rat> {
    s.trim().parse::<Rat>().map_err(|e| Error::Schema { field: field.into(), detail: format!("{s:?}: {e}") })
}

impl WPolynomial<GaussQ> {
    pub fn from_literal(n: usize, terms: &[TermLiteral]) -> Result<Self> {
        let mut p = Self::zero(n);
        for (i, t) in terms.iter().enumerate() {
            if t.z.len() != n || t.zb.len() != n {
                return Err(Error::Schema {
                    field: format!("defining[{i}]"),
                    detail: format!("exponent vectors must have length {n}"),
                });
            }
            let re = parse_rat(&t.c[0], "c")?;
            let im = parse_rat(&t.c[1], "c")?;
            p.add_term(Exps::new(t.z.clone(), t.zb.clone(), t.u, t.v), GaussQ::new(re, im));
        }
        Ok(p)
    }

    /// Canonically ordered literal.
    pub fn to_literal(&self) -> Vec<TermLiteral> {
        self.terms
            .iter()
            .map(|(e, c)| TermLiteral {
                c: [c.re.to_string(), c.im.to_string()],
                z: e.z.clone(),
                zb: e.zb.clone(),
                u: e.u,
                v: e.v,
            })
            .collect()
    }

    /// Coefficients embedded into any scalar ring.
    pub fn lift<C: Scalar>(&self) -> WPolynomial<C> {
        self.map_coeffs(|c| C::from_parts(&C::from_rat(&c.re), &C::from_rat(&c.im)))
    }

    /// Exact rational coefficients lifted into the formal-`j` ring.
    pub fn to_gauss_j(&self) -> WPolynomial<crate::scalar::GaussJ> {
        self.map_coeffs(|c| {
            crate::scalar::Gaussian::new(
                crate::jexpr::JExpr::constant(c.re.clone()),
                crate::jexpr::JExpr::constant(c.im.clone()),
            )
        })
    }
}

/// Shorthand constructors for exact real-valued polynomials.
pub mod build {
    use super::*;

    pub fn q(num: i64, den: i64) -> GaussQ {
        GaussQ::real(rat(num, den))
    }

    /// `c·|z_k|^{2m}`.
    pub fn abs_pow(n: usize, k: usize, two_m: u32, c: GaussQ) -> WPolynomial {
        WPolynomial::abs_pow(n, k, two_m).scale(&c)
    }

    /// `c · Π_k |z_k|^{e_k}` for even exponents.
    pub fn abs_monomial(exps: &[u32], c: GaussQ) -> WPolynomial {
        let half: Vec<u32> = exps.iter().map(|e| e / 2).collect();
        WPolynomial::monomial(c, half.clone(), half, 0, 0)
    }

    /// `c · Re(z_k^a z̄_k^b)`-style term: `(c/2)(z^a z̄^b + z^b z̄^a)`.
    pub fn re_term(n: usize, k: usize, a: u32, b: u32, c: GaussQ) -> WPolynomial {
        let mut za = vec![0; n];
        let mut zb = vec![0; n];
        za[k] = a;
        zb[k] = b;
        let m1 = WPolynomial::monomial(GaussQ::one(), za.clone(), zb.clone(), 0, 0);
        let m2 = WPolynomial::monomial(GaussQ::one(), zb, za, 0, 0);
        m1.add(&m2).scale(&c.mul(&q(1, 2)))
    }

    /// `Re w`.
    pub fn re_w(n: usize) -> WPolynomial {
        WPolynomial::u(n)
    }
}
