//! Exact rational tolerance used by every regularity test.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A rational number strictly between 0 and 1.
///
/// Parsed from `"p/q"` or from a terminating decimal such as `"0.1"`, which is
/// read exactly as `1/10`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Epsilon(Ratio<u64>);

impl Epsilon {
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 || numer == 0 || numer >= denom {
            return Err(Error::InvalidEpsilon(format!("{numer}/{denom}")));
        }
        Ok(Epsilon(Ratio::new(numer, denom)))
    }

    /// `1/t`.
    pub fn unit(t: u64) -> Result<Self> {
        Self::new(1, t)
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(self.numer()), BigInt::from(self.denom()))
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `⌊ε·n⌋`
    pub fn floor_mul(&self, n: usize) -> usize {
        ((self.numer() as u128 * n as u128) / self.denom() as u128) as usize
    }

    /// `⌈ε·n⌉`
    pub fn ceil_mul(&self, n: usize) -> usize {
        let p = self.numer() as u128 * n as u128;
        let q = self.denom() as u128;
        p.div_ceil(q) as usize
    }

    /// `⌊1/ε⌋`
    pub fn inverse_floor(&self) -> usize {
        (self.denom() / self.numer()) as usize
    }

    /// `⌈1/ε⌉`
    pub fn inverse_ceil(&self) -> usize {
        self.denom().div_ceil(self.numer()) as usize
    }

    /// Whether `mass ≤ ε·n`.
    pub fn admits_mass(&self, mass: usize, n: usize) -> bool {
        mass as u128 * self.denom() as u128 <= self.numer() as u128 * n as u128
    }

    /// `ε^p` as an exact rational.
    pub fn pow(&self, p: i32) -> BigRational {
        let e = self.to_big();
        let mut out = BigRational::one();
        for _ in 0..p {
            out *= &e;
        }
        out
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidEpsilon(s.to_string());
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let q: u64 = q.trim().parse().map_err(|_| bad())?;
            return Epsilon::new(p, q).map_err(|_| bad());
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if !int.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || frac.len() > 18
            || (int.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        if int != 0 {
            return Err(bad());
        }
        let denom = 10u64.pow(frac.len() as u32);
        let numer: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        Epsilon::new(numer, denom).map_err(|_| bad())
    }
}

/// Formats a rational as `"p/q"` (or `"p"` when the denominator is one).
pub fn format_ratio(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else if r.is_zero() {
        "0".to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
