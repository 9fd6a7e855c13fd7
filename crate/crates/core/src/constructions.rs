//! Extremal and random words, and first-moment bounds on `f(n, k, ℓ)`.
//!
//! The expected number of ordered k-tuples of pairwise disjoint supports of
//! length `m` spelling the same word, in a uniform random word of length `n`
//! over `ℓ` letters, is at most
//!
//! ```text
//! E(n, m, k, ℓ) = ℓ^{(1−k)m} · ∏_{i<k} C(n − im, m).
//! ```
//!
//! When `E < 1` some word has `f(S, k) < m`. Writing `m = αn`,
//! `ln E ≈ n·h(α)` with `h(α) = −(k−1)α ln ℓ − kα ln α + (kα−1) ln(1−kα)`, so
//! the root of `h` is the asymptotic first-moment bound on `f(n, k, ℓ)/n`.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statrs::function::factorial::ln_binomial;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

const MAX_BLOCK_WORD_LEN: usize = 1 << 28;

/// The word `S_K … S_1 S_0` with `|S_i| = 3^i`, where `S_i` is all 1s for
/// even `i` and all 0s for odd `i`. Its length is `(3^{K+1} − 1)/2`.
///
/// ```
/// use twinword::constructions::block_word;
/// assert_eq!(block_word(2).unwrap().encode(), "1111111110001");
/// ```
pub fn block_word(levels: u32) -> Result<Word> {
    let len = 3usize
        .checked_pow(levels + 1)
        .map(|p| (p - 1) / 2)
        .filter(|&l| l <= MAX_BLOCK_WORD_LEN)
        .ok_or_else(|| Error::Size(format!("block word with {levels} levels is too long")))?;
    let mut letters = Vec::with_capacity(len);
    for i in (0..=levels).rev() {
        let letter: Letter = if i % 2 == 0 { 1 } else { 0 };
        letters.extend(std::iter::repeat_n(letter, 3usize.pow(i)));
    }
    Ok(Word::from_parts_unchecked(letters, Alphabet::binary()))
}

/// `n` independent uniform letters from `0..ℓ`, drawn from a ChaCha8 stream
/// seeded with `seed` (`rand_chacha::ChaCha8Rng::seed_from_u64`).
///
/// ```
/// use twinword::constructions::random_word;
/// assert_eq!(random_word(50, 3, 7).unwrap(), random_word(50, 3, 7).unwrap());
/// ```
pub fn random_word(n: usize, ell: u32, seed: u64) -> Result<Word> {
    let alphabet = Alphabet::new(ell)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = (0..n).map(|_| rng.gen_range(0..ell)).collect();
    Ok(Word::from_parts_unchecked(letters, alphabet))
}

/// Whether the expectation counts ordered k-tuples of supports or sets of
/// `k` supports (dividing by `k!`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Count {
    #[default]
    Ordered,
    Unordered,
}

fn check_count(n: usize, m: usize, k: usize, ell: u32) -> Result<()> {
    if k < 2 || ell < 1 {
        return Err(Error::InvalidParams(format!("need k >= 2 and ell >= 1, got k = {k}, ell = {ell}")));
    }
    if k.checked_mul(m).is_none_or(|km| km > n) {
        return Err(Error::Infeasible(format!("{k} disjoint supports of length {m} do not fit in {n} letters")));
    }
    Ok(())
}

fn ln_factorial_k(k: usize) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// `ln E(n, m, k, ℓ)` via log-gamma.
///
/// ```
/// use twinword::constructions::{expected_count, Count};
/// let e = expected_count(6, 3, 2, 2, Count::Ordered).unwrap();
/// assert!((e - (20.0f64 / 8.0).ln()).abs() < 1e-12);
/// ```
pub fn expected_count(n: usize, m: usize, k: usize, ell: u32, count: Count) -> Result<f64> {
    check_count(n, m, k, ell)?;
    let mut ln = (1.0 - k as f64) * m as f64 * (ell as f64).ln();
    for i in 0..k {
        ln += ln_binomial((n - i * m) as u64, m as u64);
    }
    if count == Count::Unordered {
        ln -= ln_factorial_k(k);
    }
    Ok(ln)
}

fn binomial(n: usize, r: usize) -> BigUint {
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// `E(n, m, k, ℓ)` as an exact rational.
pub fn expected_count_exact(n: usize, m: usize, k: usize, ell: u32, count: Count) -> Result<BigRational> {
    check_count(n, m, k, ell)?;
    let mut num = BigUint::one();
    for i in 0..k {
        num *= binomial(n - i * m, m);
    }
    let mut den = BigUint::from(ell).pow(((k - 1) * m) as u32);
    if count == Count::Unordered {
        den *= (2..=k).fold(BigUint::one(), |a, i| a * BigUint::from(i));
    }
    Ok(BigRational::new(num.into(), den.into()))
}

/// Largest `n` for which [`existence_bound`] compares exactly.
pub const EXACT_BOUND_LIMIT: usize = 2000;

fn below_one(n: usize, m: usize, k: usize, ell: u32) -> Result<bool> {
    if n <= EXACT_BOUND_LIMIT {
        Ok(expected_count_exact(n, m, k, ell, Count::Ordered)? < BigRational::one())
    } else {
        Ok(expected_count(n, m, k, ell, Count::Ordered)? < 0.0)
    }
}

/// The smallest `m ≥ 1` with `E(n, m, k, ℓ) < 1`, so `f(n, k, ℓ) ≤ m − 1`.
/// Returns `⌊n/k⌋ + 1` when no `m ≤ ⌊n/k⌋` qualifies.
///
/// `ln E` is concave in `m` and zero at `m = 0`, so it is non-negative up to
/// some `m` and negative after; the search is a bisection. Comparisons are
/// exact for `n ≤ EXACT_BOUND_LIMIT` and use log-gamma above.
///
/// ```
/// use twinword::constructions::existence_bound;
/// assert_eq!(existence_bound(100, 2, 2).unwrap(), 51);
/// ```
pub fn existence_bound(n: usize, k: usize, ell: u32) -> Result<usize> {
    if k < 2 || n < k {
        return Err(Error::InvalidParams(format!("need k >= 2 and n >= k, got n = {n}, k = {k}")));
    }
    let top = n / k;
    if !below_one(n, top, k, ell)? {
        return Ok(top + 1);
    }
    // invariant: E(lo) >= 1 (or lo = 0), E(hi) < 1
    let (mut lo, mut hi) = (0usize, top);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if below_one(n, mid, k, ell)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `h(α) = −(k−1)α ln ℓ − kα ln α + (kα−1) ln(1−kα)` on `(0, 1/k)`.
pub fn alpha_h(alpha: f64, k: usize, ell: u32) -> f64 {
    let k = k as f64;
    let one_minus = 1.0 - k * alpha;
    let tail = if one_minus > 0.0 { (k * alpha - 1.0) * one_minus.ln() } else { 0.0 };
    -(k - 1.0) * alpha * (ell as f64).ln() - k * alpha * alpha.ln() + tail
}

/// Root of `ℓ^{−(k−1)α} α^{−kα} (1−kα)^{kα−1} = 1` in `(0, 1/k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaSolution {
    pub k: usize,
    pub ell: u32,
    /// The root, or 0 when there is none.
    pub alpha: f64,
    /// `h(alpha)`.
    #[serde(rename = "h_residual")]
    pub residual: f64,
    pub exists: bool,
    /// Final bisection interval, `h > 0` at the left end and `h ≤ 0` at the right.
    pub bracket: (f64, f64),
}

/// Grid points scanned by [`alpha_root`] before bisecting.
pub const ALPHA_GRID: usize = 100_000;

/// Finds the smallest interior root of `h` by a grid scan of `(0, 1/k)` and
/// bisection down to `tol`.
///
/// ```
/// use twinword::constructions::alpha_root;
/// let s = alpha_root(2, 5, 1e-9).unwrap();
/// assert!(s.exists && s.alpha > 0.45 && s.alpha < 0.49);
/// assert!(!alpha_root(2, 2, 1e-9).unwrap().exists);
/// ```
pub fn alpha_root(k: usize, ell: u32, tol: f64) -> Result<AlphaSolution> {
    if k < 2 || ell < 2 {
        return Err(Error::InvalidParams(format!("need k >= 2 and ell >= 2, got k = {k}, ell = {ell}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParams(format!("tolerance {tol} must be positive")));
    }
    let h = |a: f64| alpha_h(a, k, ell);
    let step = 1.0 / (k as f64 * (ALPHA_GRID + 1) as f64);
    let mut prev = step;
    let mut bracket = None;
    for i in 2..=ALPHA_GRID {
        let x = i as f64 * step;
        if h(prev) > 0.0 && h(x) <= 0.0 {
            bracket = Some((prev, x));
            break;
        }
        prev = x;
    }
    let Some((mut a, mut b)) = bracket else {
        return Ok(AlphaSolution {
            k,
            ell,
            alpha: 0.0,
            residual: 0.0,
            exists: false,
            bracket: (0.0, 0.0),
        });
    };
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if h(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let alpha = 0.5 * (a + b);
    Ok(AlphaSolution {
        k,
        ell,
        alpha,
        residual: h(alpha),
        exists: true,
        bracket: (a, b),
    })
}
