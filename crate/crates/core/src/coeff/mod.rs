//! Exact coefficient arithmetic.
//!
//! Everything in the crate is computed over [`Rat`] (arbitrary precision
//! rationals) or over [`ParamRat`], the field of rational functions in one
//! parameter. The parameter stands for a value that is "generic": the
//! deformation parameter `t` of `P + tQ`, or the fibre value `c` of `P - cQ`.

mod param;
mod unipoly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use param::{param_specialize, ParamRat};
pub use unipoly::{uni_gcd, UniPoly};

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("operation is undefined on the zero polynomial")]
    ZeroInput,
    #[error("parameter value {0} is a pole of the rational function")]
    PoleAtValue(Rat),
}

/// Builds the rational `num/den`. Panics if `den` is zero.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// A field of exact coefficients usable by [`crate::multipoly::MPoly`].
///
/// The arithmetic is by value through the std operator traits; `inv` returns
/// `None` only for zero.
pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn inv(&self) -> Option<Self>;

    fn from_rat(r: Rat) -> Self;

    /// Rational parameter values at which this coefficient vanishes or has a
    /// pole. Always empty for constants.
    fn critical_values(&self) -> Vec<Rat>;

    /// Polynomial in the parameter vanishing exactly at the zeros and poles;
    /// one for constants.
    fn critical_polynomial(&self) -> UniPoly;

    /// `Some(r)` when the coefficient is a plain rational.
    fn as_rat(&self) -> Option<Rat>;
}

impl Coeff for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rat(r: Rat) -> Self {
        r
    }

    fn critical_values(&self) -> Vec<Rat> {
        Vec::new()
    }

    fn critical_polynomial(&self) -> UniPoly {
        UniPoly::one()
    }

    fn as_rat(&self) -> Option<Rat> {
        Some(self.clone())
    }
}

/// Formats a rational the way the expression parser reads it back: `p` or
/// `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q` into a rational.
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 64, rng_seed: proptest::test_runner::RngSeed::Fixed(11), ..ProptestConfig::default() })]

        #[test]
        fn rat_field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            if !a.is_zero() {
                prop_assert!((&a * a.inv().unwrap()).is_one());
            }
            // lowest terms with positive denominator
            prop_assert!(num_integer::Integer::gcd(a.numer(), a.denom()).is_one());
            prop_assert!(a.denom() > &BigInt::zero());
        }
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = rat(0, 7);
        assert_eq!(z.denom(), &BigInt::one());
    }

    #[test]
    fn rat_text_round_trip() {
        for r in [rat(3, 4), rat(-7, 2), rat_int(5), rat_int(0)] {
            assert_eq!(parse_rat(&format_rat(&r)), Some(r));
        }
        assert_eq!(parse_rat("1/0"), None);
    }
}
