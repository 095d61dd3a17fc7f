//! Arbitrary-precision numerics: real and complex arithmetic wrappers,
//! classical polylogarithms, and the single-valued functions built on them.

pub mod complex;
pub mod polylog;
pub mod real;

pub use complex::Complex;
pub use real::Real;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum NumericError {
    #[error("precision must be at least 20 decimal digits, got {0}")]
    PrecisionTooLow(u32),
    #[error("guard digits {guard} must stay below the precision {prec}")]
    GuardTooLarge { prec: u32, guard: u32 },
    #[error("Li_1 has a pole at z = 1")]
    LiPole,
    #[error("polylogarithm order must be at least 1")]
    OrderZero,
    #[error("{0} is undefined at zero")]
    ZeroArgument(&'static str),
    #[error("unsupported discriminant {0}: the demo ships -3 and -4")]
    InvalidDiscriminant(i64),
    #[error("{0} did not produce a finite value")]
    NotFinite(&'static str),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

/// Working precision in decimal digits plus guard digits; the reporting
/// tolerance is τ = 10^{−(prec − guard)}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    prec: u32,
    guard: u32,
}

pub const DEFAULT_GUARD_DIGITS: u32 = 10;

impl PrecisionPolicy {
    pub fn new(prec: u32) -> Result<Self, NumericError> {
        Self::with_guard(prec, DEFAULT_GUARD_DIGITS)
    }

    pub fn with_guard(prec: u32, guard: u32) -> Result<Self, NumericError> {
        if prec < 20 {
            return Err(NumericError::PrecisionTooLow(prec));
        }
        if guard >= prec {
            return Err(NumericError::GuardTooLarge { prec, guard });
        }
        Ok(PrecisionPolicy { prec, guard })
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Binary working precision: the requested digits plus guard, converted
    /// to bits with slack so intermediate cancellation stays invisible.
    pub fn working_bits(&self) -> usize {
        let digits = (self.prec + self.guard) as f64;
        (digits * std::f64::consts::LOG2_10).ceil() as usize + 32
    }

    /// τ = 10^{−(prec − guard)} at working precision.
    pub fn tolerance(&self) -> Real {
        Real::pow10(-i64::from(self.prec - self.guard), self.working_bits())
    }

    /// The tolerance's decimal-string form, e.g. "1e-40".
    pub fn tolerance_string(&self) -> String {
        format!("1e-{}", self.prec - self.guard)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_validates_and_derives_tolerance() {
        let policy = PrecisionPolicy::new(50).unwrap();
        assert_eq!(policy.prec(), 50);
        assert_eq!(policy.guard(), 10);
        assert!(policy.working_bits() > 199);
        assert_eq!(policy.tolerance_string(), "1e-40");
        assert!(matches!(PrecisionPolicy::new(19), Err(NumericError::PrecisionTooLow(19))));
        assert!(matches!(
            PrecisionPolicy::with_guard(25, 25),
            Err(NumericError::GuardTooLarge { prec: 25, guard: 25 })
        ));

        let tau = policy.tolerance();
        let expect = Real::from_i64(10, policy.working_bits()).powi(40).recip();
        assert!(tau.sub(&expect).abs().le(&Real::pow10(-60, policy.working_bits())));
    }
}
