//! Coefficient rings used throughout the crate.
//!
//! Polynomials and maps are generic over a [`Scalar`]: exact Gaussian
//! rationals, Gaussian elements over the formal-`j` ring [`JExpr`], or plain
//! `Complex64`. Fallible operations (inverse, real powers) return `None`
//! when the result leaves the ring, so callers can fall back to floating
//! point.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::jexpr::JExpr;

/// Exact rational number.
pub type Rat = BigRational;

/// Small exact rational, used for exponents and weights.
pub type Exponent = num_rational::Ratio<i64>;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Commutative ring with unit.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn from_rat(r: &Rat) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(BigInt::from(n)))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn scale_i64(&self, n: i64) -> Self {
        self.mul(&Self::from_i64(n))
    }
}

/// Ring with a conjugation, real/imaginary projections and partial
/// field/real-power structure.
pub trait Scalar: Ring {
    fn conj(&self) -> Self;
    /// Real part, embedded back into the ring.
    fn re(&self) -> Self;
    /// Imaginary part, embedded back into the ring.
    fn im(&self) -> Self;
    fn i() -> Self;
    fn try_inv(&self) -> Option<Self>;
    /// `|self|^p` for rational `p`, when representable.
    fn try_abs_pow(&self, p: Exponent) -> Option<Self>;
    /// Numeric value at a concrete sequence index `j`.
    fn at(&self, j: f64) -> Complex64;

    /// Principal-branch `self^p`; exact rings support only integer `p`.
    fn try_powc(&self, p: Exponent) -> Option<Self> {
        if !p.is_integer() {
            return None;
        }
        let k = p.to_integer();
        let base = if k < 0 { self.try_inv()? } else { self.clone() };
        Some(base.pow(k.unsigned_abs() as u32))
    }

    fn mul_i(&self) -> Self {
        self.mul(&Self::i())
    }

    fn from_parts(re: &Self, im: &Self) -> Self {
        re.add(&im.mul_i())
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rat(r: &Rat) -> Self {
        rat_to_f64(r)
    }
}

/// `re + i·im` over a real ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gaussian<R> {
    pub re: R,
    pub im: R,
}

impl<R: Ring> Gaussian<R> {
    pub fn new(re: R, im: R) -> Self {
        Self { re, im }
    }

    pub fn real(re: R) -> Self {
        Self { re, im: R::zero() }
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Gaussian<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "i*({})", self.im)
        } else {
            write!(f, "({}) + i*({})", self.re, self.im)
        }
    }
}

impl<R: Ring> fmt::Debug for Gaussian<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + i*({:?})", self.re, self.im)
    }
}

impl<R: Ring> Ring for Gaussian<R> {
    fn zero() -> Self {
        Self::real(R::zero())
    }
    fn one() -> Self {
        Self::real(R::one())
    }
    fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re), self.im.add(&o.im))
    }
    fn sub(&self, o: &Self) -> Self {
        Self::new(self.re.sub(&o.re), self.im.sub(&o.im))
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(self.re.mul(&o.re));
        }
        Self::new(
            self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        )
    }
    fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_rat(r: &Rat) -> Self {
        Self::real(R::from_rat(r))
    }
}

/// Exact Gaussian rational.
pub type GaussQ = Gaussian<Rat>;

/// Gaussian element over the formal sequence index ring.
pub type GaussJ = Gaussian<JExpr>;

impl Scalar for GaussQ {
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }
    fn re(&self) -> Self {
        Self::real(self.re.clone())
    }
    fn im(&self) -> Self {
        Self::real(self.im.clone())
    }
    fn i() -> Self {
        Self::new(<Rat as Zero>::zero(), <Rat as One>::one())
    }
    fn try_inv(&self) -> Option<Self> {
        let n2 = &self.re * &self.re + &self.im * &self.im;
        if Zero::is_zero(&n2) {
            return None;
        }
        Some(Self::new(&self.re / &n2, -&self.im / &n2))
    }
    fn try_abs_pow(&self, p: Exponent) -> Option<Self> {
        let n2 = &self.re * &self.re + &self.im * &self.im;
        // |x|^p = (|x|^2)^(p/2)
        rat_pow(&n2, p / 2).map(Self::real)
    }
    fn at(&self, _j: f64) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl Scalar for GaussJ {
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.neg())
    }
    fn re(&self) -> Self {
        Self::real(self.re.clone())
    }
    fn im(&self) -> Self {
        Self::real(self.im.clone())
    }
    fn i() -> Self {
        Self::new(JExpr::zero(), JExpr::one())
    }
    fn try_inv(&self) -> Option<Self> {
        if self.im.is_zero() {
            return self.re.try_inv().map(Self::real);
        }
        if self.re.is_zero() {
            return self.im.try_inv().map(|r| Self::new(JExpr::zero(), r.neg()));
        }
        None
    }
    fn try_abs_pow(&self, p: Exponent) -> Option<Self> {
        let modulus_sq = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        modulus_sq.try_pow(p / 2).map(Self::real)
    }
    fn at(&self, j: f64) -> Complex64 {
        Complex64::new(self.re.eval(j), self.im.eval(j))
    }
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_rat(r: &Rat) -> Self {
        Complex64::new(rat_to_f64(r), 0.0)
    }
}

impl Scalar for Complex64 {
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn re(&self) -> Self {
        Complex64::new(self.re, 0.0)
    }
    fn im(&self) -> Self {
        Complex64::new(self.im, 0.0)
    }
    fn i() -> Self {
        Complex64::new(0.0, 1.0)
    }
    fn try_inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn try_abs_pow(&self, p: Exponent) -> Option<Self> {
        let e = *p.numer() as f64 / *p.denom() as f64;
        Some(Complex64::new(self.norm().powf(e), 0.0))
    }
    fn at(&self, _j: f64) -> Complex64 {
        *self
    }
    fn try_powc(&self, p: Exponent) -> Option<Self> {
        if Ring::is_zero(self) {
            return if *p.numer() > 0 { Some(*self) } else { None };
        }
        Some(self.powf(*p.numer() as f64 / *p.denom() as f64))
    }
}

/// Exact `x^p` for a positive rational `x` when every root involved is
/// rational.
pub fn rat_pow(x: &Rat, p: Exponent) -> Option<Rat> {
    if Zero::is_zero(x) {
        return if *p.numer() > 0 { Some(<Rat as Zero>::zero()) } else { None };
    }
    let (num, den) = (*p.numer(), *p.denom());
    let base = if num < 0 { x.recip() } else { x.clone() };
    let k = num.unsigned_abs() as u32;
    let q = den as u32;
    if q > 1 && base.is_negative() {
        return None;
    }
    let root_n = exact_root(base.numer(), q)?;
    let root_d = exact_root(base.denom(), q)?;
    let r = Rat::new(root_n, root_d);
    Some(num_traits::pow(r, k as usize))
}

fn exact_root(n: &BigInt, q: u32) -> Option<BigInt> {
    if q == 1 {
        return Some(n.clone());
    }
    let r = n.nth_root(q);
    if num_traits::pow(r.clone(), q as usize) == *n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots() {
        assert_eq!(rat_pow(&rat(1, 16), Exponent::new(3, 4)), Some(rat(1, 8)));
        assert_eq!(rat_pow(&rat(4, 9), Exponent::new(-1, 2)), Some(rat(3, 2)));
        assert_eq!(rat_pow(&rat(2, 1), Exponent::new(1, 2)), None);
    }

    #[test]
    fn gaussian_arith() {
        let a = GaussQ::new(rat(1, 2), rat(3, 1));
        let inv = a.try_inv().unwrap();
        assert_eq!(a.mul(&inv), GaussQ::one());
        assert_eq!(a.conj().mul(&a).im, <Rat as Zero>::zero());
        assert_eq!(GaussQ::i().pow(4), GaussQ::one());
    }
}
