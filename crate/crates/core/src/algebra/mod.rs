//! Exact rational arithmetic and sparse Laurent polynomials.

mod laurent;
mod monomial;
mod var;

pub use laurent::LaurentPoly;
pub use monomial::Monomial;
pub use var::VarId;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational number; always stored in lowest terms with positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("quotient is not a Laurent polynomial")]
    NotDivisible,
    #[error("division by zero")]
    DivideByZero,
    #[error("no value assigned to {0}")]
    MissingVariable(VarId),
    #[error("{0} is zero but occurs with a negative exponent")]
    ZeroToNegativePower(VarId),
    #[error("parse error: {0}")]
    Parse(String),
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num/den` text form used in every serialized artifact.
pub fn rat_to_text(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_from_text(s: &str) -> Result<Rat, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// `base^e` for a possibly negative exponent.
pub fn rat_pow(base: &Rat, e: i32) -> Result<Rat, AlgebraError> {
    if e >= 0 {
        Ok(num_traits::pow(base.clone(), e as usize))
    } else if base.is_zero() {
        Err(AlgebraError::DivideByZero)
    } else {
        Ok(num_traits::pow(base.recip(), (-e) as usize))
    }
}

pub fn rat_one() -> Rat {
    Rat::one()
}
