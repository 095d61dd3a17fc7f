//! Arbitrary-precision real numbers: a thin wrapper that pins a binary
//! working precision to every value, rounds to even, and shares one
//! constants cache per thread.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::cell::RefCell;
use std::cmp::Ordering;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Debug, Clone)]
pub struct Real {
    v: BigFloat,
    bits: usize,
}

impl Real {
    pub fn zero(bits: usize) -> Self {
        Real { v: BigFloat::new(bits), bits }
    }

    pub fn from_i64(n: i64, bits: usize) -> Self {
        Real { v: BigFloat::from_i64(n, bits), bits }
    }

    pub fn from_f64(x: f64, bits: usize) -> Self {
        Real { v: BigFloat::from_f64(x, bits), bits }
    }

    pub fn from_bigint(n: &BigInt, bits: usize) -> Self {
        let s = n.to_string();
        let v = with_consts(|cc| BigFloat::parse(&s, Radix::Dec, bits + 64, RM, cc));
        Real { v, bits }
    }

    pub fn from_rational(q: &BigRational, bits: usize) -> Self {
        let num = Real::from_bigint(q.numer(), bits + 64);
        let den = Real::from_bigint(q.denom(), bits + 64);
        let mut out = num.div(&den);
        out.bits = bits;
        out
    }

    /// Parses a decimal string such as "-1.25e-3"; NaN and infinities are
    /// rejected.
    pub fn from_decimal_str(s: &str, bits: usize) -> Option<Self> {
        let v = with_consts(|cc| BigFloat::parse(s.trim(), Radix::Dec, bits, RM, cc));
        if v.is_nan() || v.is_inf() {
            return None;
        }
        Some(Real { v, bits })
    }

    /// Exact power of ten, e.g. tolerances.
    pub fn pow10(exp: i64, bits: usize) -> Self {
        Real::from_decimal_str(&format!("1e{exp}"), bits).expect("power of ten")
    }

    pub fn pi(bits: usize) -> Self {
        Real { v: with_consts(|cc| cc.pi(bits, RM)), bits }
    }

    pub fn ln2(bits: usize) -> Self {
        Real { v: with_consts(|cc| cc.ln_2(bits, RM)), bits }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    fn join(&self, other: &Real) -> usize {
        self.bits.max(other.bits)
    }

    pub fn add(&self, other: &Real) -> Real {
        let p = self.join(other);
        Real { v: self.v.add(&other.v, p, RM), bits: p }
    }

    pub fn sub(&self, other: &Real) -> Real {
        let p = self.join(other);
        Real { v: self.v.sub(&other.v, p, RM), bits: p }
    }

    pub fn mul(&self, other: &Real) -> Real {
        let p = self.join(other);
        Real { v: self.v.mul(&other.v, p, RM), bits: p }
    }

    pub fn div(&self, other: &Real) -> Real {
        let p = self.join(other);
        Real { v: self.v.div(&other.v, p, RM), bits: p }
    }

    pub fn neg(&self) -> Real {
        Real { v: self.v.neg(), bits: self.bits }
    }

    pub fn abs(&self) -> Real {
        Real { v: self.v.abs(), bits: self.bits }
    }

    pub fn recip(&self) -> Real {
        Real { v: self.v.reciprocal(self.bits, RM), bits: self.bits }
    }

    pub fn powi(&self, n: usize) -> Real {
        if n == 0 {
            return Real::from_i64(1, self.bits);
        }
        Real { v: self.v.powi(n, self.bits, RM), bits: self.bits }
    }

    pub fn sqrt(&self) -> Real {
        Real { v: self.v.sqrt(self.bits, RM), bits: self.bits }
    }

    pub fn ln(&self) -> Real {
        Real { v: with_consts(|cc| self.v.ln(self.bits, RM, cc)), bits: self.bits }
    }

    pub fn exp(&self) -> Real {
        Real { v: with_consts(|cc| self.v.exp(self.bits, RM, cc)), bits: self.bits }
    }

    pub fn sin(&self) -> Real {
        Real { v: with_consts(|cc| self.v.sin(self.bits, RM, cc)), bits: self.bits }
    }

    pub fn cos(&self) -> Real {
        Real { v: with_consts(|cc| self.v.cos(self.bits, RM, cc)), bits: self.bits }
    }

    pub fn atan(&self) -> Real {
        Real { v: with_consts(|cc| self.v.atan(self.bits, RM, cc)), bits: self.bits }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.v.is_positive() && !self.v.is_zero() && !self.v.is_nan()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn cmp_real(&self, other: &Real) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|s| s.cmp(&0))
    }

    pub fn lt(&self, other: &Real) -> bool {
        matches!(self.cmp_real(other), Some(Ordering::Less))
    }

    pub fn le(&self, other: &Real) -> bool {
        matches!(self.cmp_real(other), Some(Ordering::Less | Ordering::Equal))
    }

    pub fn gt(&self, other: &Real) -> bool {
        matches!(self.cmp_real(other), Some(Ordering::Greater))
    }

    pub fn ge(&self, other: &Real) -> bool {
        matches!(self.cmp_real(other), Some(Ordering::Greater | Ordering::Equal))
    }

    pub fn max_real(&self, other: &Real) -> Real {
        if self.ge(other) {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Deterministic normalized scientific notation with `digits`
    /// significant digits, e.g. "-3.1415926536e0". Rounds half away from
    /// zero on the last kept digit.
    pub fn decimal(&self, digits: usize) -> String {
        assert!(digits > 0);
        if self.v.is_nan() {
            return "NaN".into();
        }
        if self.v.is_inf() {
            return if self.v.is_inf_neg() { "-Inf".into() } else { "Inf".into() };
        }
        if self.v.is_zero() {
            return "0".into();
        }
        let (sign, mantissa, exp) =
            with_consts(|cc| self.v.convert_to_radix(Radix::Dec, RM, cc)).expect("finite value");
        // Value = 0.m × 10^exp with the most significant digit first. Strip
        // leading zeros defensively, then round to the requested length.
        let first_nonzero = mantissa.iter().position(|&d| d != 0);
        let Some(start) = first_nonzero else {
            return "0".into();
        };
        let digits_all = &mantissa[start..];
        let mut exp10 = i64::from(exp) - start as i64 - 1;
        let mut kept: Vec<u8> = digits_all.iter().copied().take(digits).collect();
        while kept.len() < digits {
            kept.push(0);
        }
        let round_up = digits_all.get(digits).is_some_and(|&d| d >= 5);
        if round_up {
            let mut i = kept.len();
            loop {
                if i == 0 {
                    kept.insert(0, 1);
                    kept.pop();
                    exp10 += 1;
                    break;
                }
                i -= 1;
                if kept[i] == 9 {
                    kept[i] = 0;
                } else {
                    kept[i] += 1;
                    break;
                }
            }
        }
        let mut out = String::new();
        if sign == Sign::Neg {
            out.push('-');
        }
        out.push((b'0' + kept[0]) as char);
        if kept.len() > 1 {
            out.push('.');
            for &d in &kept[1..] {
                out.push((b'0' + d) as char);
            }
        }
        out.push('e');
        out.push_str(&exp10.to_string());
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quadrant {
    PosX,
    NegXUpper,
    NegXLower,
}

/// Principal angle of the point (x, y): Arg ∈ (−π, π], with the negative
/// real axis mapped to +π.
pub fn atan2(y: &Real, x: &Real, bits: usize) -> Real {
    if x.is_zero() && y.is_zero() {
        return Real::zero(bits);
    }
    let pi = Real::pi(bits);
    if x.is_zero() {
        let half = pi.div(&Real::from_i64(2, bits));
        return if y.is_negative() { half.neg() } else { half };
    }
    if y.is_zero() {
        return if x.is_negative() { pi } else { Real::zero(bits) };
    }
    let quadrant = if !x.is_negative() {
        Quadrant::PosX
    } else if y.is_negative() {
        Quadrant::NegXLower
    } else {
        Quadrant::NegXUpper
    };
    let base = y.div(x).atan();
    match quadrant {
        Quadrant::PosX => base,
        Quadrant::NegXUpper => base.add(&pi),
        Quadrant::NegXLower => base.sub(&pi),
    }
}
