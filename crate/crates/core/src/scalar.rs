//! Scalar fields the algebra is generic over.
//!
//! Everything in this crate is a rational function of the Boltzmann weights,
//! so any field works. The default backend is the Gaussian rationals
//! `Q(i)`, exact and closed under every operation used here.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Zero};
use rand::Rng;

/// A field with exact equality.
pub trait Field:
    Num + Neg<Output = Self> + FromPrimitive + Clone + PartialEq + fmt::Debug + fmt::Display
{
    /// `num / den` embedded in the field.
    ///
    /// # Panics
    /// If `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let n = Self::from_i64(num).expect("i64 embeds into the field");
        let d = Self::from_i64(den).expect("i64 embeds into the field");
        n / d
    }

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// Checked division; `None` when the divisor vanishes.
    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self.clone() / rhs.clone())
        }
    }
}

impl<T> Field for T where
    T: Num + Neg<Output = T> + FromPrimitive + Clone + PartialEq + fmt::Debug + fmt::Display
{
}

/// Gaussian rational: exact complex number with rational parts.
pub type Gaussian = Complex<BigRational>;

/// Fields with a seeded generator of nonzero test values.
pub trait SampleScalar: Field {
    /// Draws a nonzero element of small height.
    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let num: i64 = rng.random_range(1..=9) * if rng.random_bool(0.5) { 1 } else { -1 };
    let den: i64 = rng.random_range(1..=5);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl SampleScalar for BigRational {
    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        small_rational(rng)
    }
}

impl SampleScalar for Gaussian {
    // One draw in five carries an imaginary part so the complex arithmetic is
    // exercised without making every sample a full Gaussian rational.
    fn sample_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let re = small_rational(rng);
        let im = if rng.random_ratio(1, 5) {
            small_rational(rng)
        } else {
            BigRational::zero()
        };
        Complex::new(re, im)
    }
}

/// Canonical `p/q` text for a rational, always with an explicit denominator.
pub fn rational_to_text(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or `p` into a reduced rational.
pub fn rational_from_text(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}
