//! Complex arithmetic over [`Real`] with principal branch conventions:
//! Arg ∈ (−π, π], the negative real axis taking +π.

use super::real::{atan2, Real};
use num_rational::BigRational;

#[derive(Debug, Clone)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(bits: usize) -> Self {
        Complex { re: Real::zero(bits), im: Real::zero(bits) }
    }

    pub fn one(bits: usize) -> Self {
        Complex::from_i64(1, 0, bits)
    }

    pub fn i(bits: usize) -> Self {
        Complex::from_i64(0, 1, bits)
    }

    pub fn from_i64(re: i64, im: i64, bits: usize) -> Self {
        Complex { re: Real::from_i64(re, bits), im: Real::from_i64(im, bits) }
    }

    pub fn from_f64(re: f64, im: f64, bits: usize) -> Self {
        Complex { re: Real::from_f64(re, bits), im: Real::from_f64(im, bits) }
    }

    pub fn from_real(re: Real) -> Self {
        let bits = re.bits();
        Complex { re, im: Real::zero(bits) }
    }

    pub fn from_rational(q: &BigRational, bits: usize) -> Self {
        Complex::from_real(Real::from_rational(q, bits))
    }

    /// r·e^{iθ}.
    pub fn from_polar(r: &Real, theta: &Real) -> Self {
        Complex { re: r.mul(&theta.cos()), im: r.mul(&theta.sin()) }
    }

    pub fn bits(&self) -> usize {
        self.re.bits().max(self.im.bits())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Complex {
        Complex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> Complex {
        Complex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, other: &Complex) -> Complex {
        Complex { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &Complex) -> Complex {
        Complex { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn mul(&self, other: &Complex) -> Complex {
        Complex {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn mul_real(&self, r: &Real) -> Complex {
        Complex { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn div(&self, other: &Complex) -> Complex {
        let d = other.abs2();
        let n = self.mul(&other.conj());
        Complex { re: n.re.div(&d), im: n.im.div(&d) }
    }

    pub fn recip(&self) -> Complex {
        let d = self.abs2();
        Complex { re: self.re.div(&d), im: self.im.div(&d).neg() }
    }

    /// |z|².
    pub fn abs2(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> Real {
        self.abs2().sqrt()
    }

    /// Principal argument; zero input maps to zero.
    pub fn arg(&self) -> Real {
        atan2(&self.im, &self.re, self.bits())
    }

    /// log|z| computed as ln(|z|²)/2.
    pub fn ln_abs(&self) -> Real {
        self.abs2().ln().div(&Real::from_i64(2, self.bits()))
    }

    /// Principal logarithm: ln|z| + i·Arg z, cut along (−∞, 0].
    pub fn ln(&self) -> Complex {
        Complex { re: self.ln_abs(), im: self.arg() }
    }

    pub fn powi(&self, n: usize) -> Complex {
        let mut acc = Complex::one(self.bits());
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Euclidean distance to another point.
    pub fn dist(&self, other: &Complex) -> Real {
        self.sub(other).abs()
    }

    /// Rendered as a pair of decimal strings.
    pub fn decimal(&self, digits: usize) -> (String, String) {
        (self.re.decimal(digits), self.im.decimal(digits))
    }
}
