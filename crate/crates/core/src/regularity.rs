//! ε-regular words and the density-increment partitioner.
//!
//! A word of length `n` is ε-regular when every window of width `w = ⌊εn⌋`
//! starting at an admissible position `⌈εn⌉+1 ≤ i ≤ ⌊n−2εn⌋+1` has every
//! letter density within (strictly less than) ε of the whole word's. An
//! irregular word comes with a [`RefinementWitness`]; cutting the word at the
//! witness window into `(A, B, C)` raises the partition index by at least
//! ε³, which is what bounds the number of refinement rounds.
//!
//! All comparisons against ε and all index values are exact rationals.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::epsilon::{format_ratio, Epsilon};
use crate::error::{Error, Result};
use crate::word::{DensityVector, Letter, Word};

/// Tolerance and initial factor count for [`regularity_partition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularityParams {
    pub epsilon: Epsilon,
    pub t0: usize,
}

impl RegularityParams {
    /// `t0 = ⌈1/ε⌉`, the smallest initial split the partitioner accepts.
    pub fn for_epsilon(epsilon: Epsilon) -> Self {
        RegularityParams {
            epsilon,
            t0: epsilon.inverse_ceil(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let min = self.epsilon.inverse_ceil();
        if self.t0 < min {
            return Err(Error::InvalidParams(format!(
                "t0 = {} is below ceil(1/epsilon) = {min}",
                self.t0
            )));
        }
        Ok(())
    }
}

/// Certificate that a word is not ε-regular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementWitness {
    /// 1-based start `i` of the offending window.
    pub window_start: usize,
    pub letter: Letter,
    /// `γ = d_q(S) − d_q(S[i, i+w−1])`, with `|γ| ≥ ε`.
    pub deviation: Ratio<i64>,
    pub window_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    Irregular(RefinementWitness),
}

impl Verdict {
    pub fn is_regular(&self) -> bool {
        matches!(self, Verdict::Regular)
    }
}

/// Window width and admissible start range `(w, lo, hi)` for length `n`.
/// `lo > hi` means there is nothing to test.
fn window_geometry(n: usize, eps: Epsilon) -> Result<(usize, usize, usize)> {
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let w = eps.floor_mul(n);
    if w == 0 {
        return Err(Error::EpsilonTooSmall {
            len: n,
            min_epsilon: format!("1/{n}"),
        });
    }
    let lo = eps.ceil_mul(n) + 1;
    let two = eps.numer() as u128 * 2 * n as u128;
    let two_ceil = two.div_ceil(eps.denom() as u128) as usize;
    let hi = (n + 1).saturating_sub(two_ceil);
    Ok((w, lo, hi))
}

pub(crate) fn scan(letters: &[Letter], ell: usize, eps: Epsilon) -> Result<Option<RefinementWitness>> {
    let n = letters.len();
    let (w, lo, hi) = window_geometry(n, eps)?;
    if lo > hi {
        return Ok(None);
    }
    let mut total = vec![0i64; ell];
    for &l in letters {
        total[l as usize] += 1;
    }
    let mut window = vec![0i64; ell];
    for &l in &letters[lo - 1..lo - 1 + w] {
        window[l as usize] += 1;
    }
    let (p, q) = (eps.numer() as i128, eps.denom() as i128);
    let (n_, w_) = (n as i128, w as i128);
    let rhs = p * n_ * w_;
    for i in lo..=hi {
        if i > lo {
            window[letters[i - 2] as usize] -= 1;
            window[letters[i + w - 2] as usize] += 1;
        }
        for letter in 0..ell {
            // |C/n − c/w| ≥ p/q  ⇔  |C·w − c·n|·q ≥ p·n·w
            let diff = total[letter] as i128 * w_ - window[letter] as i128 * n_;
            if diff.abs() * q >= rhs {
                return Ok(Some(RefinementWitness {
                    window_start: i,
                    letter: letter as Letter,
                    deviation: Ratio::new(diff as i64, (n * w) as i64),
                    window_len: w,
                }));
            }
        }
    }
    Ok(None)
}

/// Tests ε-regularity; an irregular verdict carries the first violation
/// (smallest window start, then smallest letter).
pub fn check_regular(word: &Word, epsilon: Epsilon) -> Result<Verdict> {
    Ok(
        match scan(word.letters(), word.alphabet().size() as usize, epsilon)? {
            None => Verdict::Regular,
            Some(w) => Verdict::Irregular(w),
        },
    )
}

/// Factor lengths `⌊n/t⌋` or `⌈n/t⌉`, longer ones first.
pub fn equal_split(n: usize, t: usize) -> Result<Vec<usize>> {
    if t == 0 || n < t {
        return Err(Error::TooShort { len: n, parts: t });
    }
    let (base, extra) = (n / t, n % t);
    Ok((0..t).map(|i| base + usize::from(i < extra)).collect())
}

/// `Σ_q Σ_i d_q(S_i)² |S_i|/n` for a partition given by consecutive factor lengths.
pub fn index_of_lengths(word: &Word, lengths: &[usize]) -> Result<BigRational> {
    let ell = word.alphabet().size() as usize;
    let mut start = 0;
    let mut pieces = Vec::with_capacity(lengths.len());
    for &len in lengths {
        if len == 0 {
            return Err(Error::InvalidPartition("empty factor".into()));
        }
        let end = start + len;
        if end > word.len() {
            return Err(Error::InvalidPartition("factors overrun the host".into()));
        }
        pieces.push(&word.letters()[start..end]);
        start = end;
    }
    if start != word.len() {
        return Err(Error::InvalidPartition("factors do not cover the host".into()));
    }
    Ok(index_of_pieces(pieces.into_iter(), ell, word.len()))
}

fn index_of_pieces<'a>(pieces: impl Iterator<Item = &'a [Letter]>, ell: usize, n: usize) -> BigRational {
    // Σ_i (Σ_q c_iq²)/m_i, grouped by m_i to keep the rational arithmetic small.
    let mut by_len: BTreeMap<usize, u128> = BTreeMap::new();
    let mut counts = vec![0u64; ell];
    for piece in pieces {
        counts.iter_mut().for_each(|c| *c = 0);
        for &l in piece {
            counts[l as usize] += 1;
        }
        let sq: u128 = counts.iter().map(|&c| c as u128 * c as u128).sum();
        *by_len.entry(piece.len()).or_default() += sq;
    }
    let mut sum = BigRational::zero();
    for (len, sq) in by_len {
        sum += BigRational::new(BigInt::from(sq), BigInt::from(len));
    }
    sum / BigRational::from_integer(BigInt::from(n))
}

/// One factor `S[start, end]` of a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub start: usize,
    pub end: usize,
    pub regular: bool,
    pub density: DensityVector,
}

impl Factor {
    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A partition of a host word into consecutive factors, each with its
/// ε-regularity verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPartition {
    pub host: Word,
    pub epsilon: Epsilon,
    pub factors: Vec<Factor>,
}

impl FactorPartition {
    /// Builds a partition from factor lengths, checking every factor.
    ///
    /// Factors too short for a window of width ≥ 1 are marked irregular.
    pub fn from_lengths(host: &Word, epsilon: Epsilon, lengths: &[usize]) -> Result<Self> {
        if lengths.contains(&0) || lengths.iter().sum::<usize>() != host.len() {
            return Err(Error::InvalidPartition(
                "lengths must be positive and sum to the host length".into(),
            ));
        }
        let ell = host.alphabet().size() as usize;
        let mut bounds = Vec::with_capacity(lengths.len());
        let mut start = 1;
        for &len in lengths {
            bounds.push((start, start + len - 1));
            start += len;
        }
        let factors = bounds
            .par_iter()
            .map(|&(s, e)| make_factor(host.letters(), ell, epsilon, s, e))
            .collect();
        Ok(FactorPartition {
            host: host.clone(),
            epsilon,
            factors,
        })
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.factors.iter().map(Factor::len).collect()
    }

    /// Total length of ε-irregular factors.
    pub fn irregular_mass(&self) -> usize {
        self.factors.iter().filter(|f| !f.regular).map(Factor::len).sum()
    }

    /// Whether the irregular factors have total length at most `εn`.
    pub fn is_regular_partition(&self) -> bool {
        self.epsilon.admits_mass(self.irregular_mass(), self.host.len())
    }

    pub fn factor_word(&self, i: usize) -> Word {
        let f = &self.factors[i];
        Word::from_parts_unchecked(
            self.host.letters()[f.start - 1..f.end].to_vec(),
            self.host.alphabet(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        let mut next = 1;
        for f in &self.factors {
            if f.start != next || f.end < f.start {
                return Err(Error::InvalidPartition(format!(
                    "factor {}..{} is not consecutive",
                    f.start, f.end
                )));
            }
            next = f.end + 1;
        }
        if next != self.host.len() + 1 {
            return Err(Error::InvalidPartition("factors do not cover the host".into()));
        }
        Ok(())
    }
}

fn make_factor(letters: &[Letter], ell: usize, eps: Epsilon, start: usize, end: usize) -> Factor {
    let slice = &letters[start - 1..end];
    let regular = matches!(scan(slice, ell, eps), Ok(None));
    let mut counts = vec![0u64; ell];
    for &l in slice {
        counts[l as usize] += 1;
    }
    Factor {
        start,
        end,
        regular,
        density: DensityVector::from_counts(counts, slice.len() as u64),
    }
}

/// Exact index of a partition; always in `(0, 1]`.
pub fn partition_index(partition: &FactorPartition) -> Result<BigRational> {
    partition.validate()?;
    let letters = partition.host.letters();
    Ok(index_of_pieces(
        partition.factors.iter().map(|f| &letters[f.start - 1..f.end]),
        partition.host.alphabet().size() as usize,
        partition.host.len(),
    ))
}

/// Lengths `(|A|, |B|, |C|)` of the refinement at a witness plus its exact
/// index gain over the one-piece partition.
fn refinement_split(
    letters: &[Letter],
    ell: usize,
    eps: Epsilon,
    witness: &RefinementWitness,
) -> Result<((usize, usize, usize), BigRational)> {
    let m = letters.len();
    let (w, lo, hi) = window_geometry(m, eps)?;
    let i = witness.window_start;
    if witness.window_len != w || i < lo || i > hi || witness.letter as usize >= ell {
        return Err(Error::WitnessMismatch(format!(
            "window {i}+{} is not admissible for length {m}",
            witness.window_len
        )));
    }
    let q = witness.letter as usize;
    let total = letters.iter().filter(|&&l| l as usize == q).count() as i64;
    let inside = letters[i - 1..i - 1 + w].iter().filter(|&&l| l as usize == q).count() as i64;
    let gamma = Ratio::new(total * w as i64 - inside * m as i64, (m * w) as i64);
    if gamma != witness.deviation {
        return Err(Error::WitnessMismatch(format!(
            "deviation is {gamma}, witness claims {}",
            witness.deviation
        )));
    }
    let eps_big = eps.to_big();
    let gamma_big = BigRational::new(BigInt::from(*gamma.numer()), BigInt::from(*gamma.denom()));
    if gamma_big.abs() < eps_big {
        return Err(Error::WitnessMismatch(format!("|{gamma}| < {eps}")));
    }
    let lens = (i - 1, w, m - (i - 1) - w);
    let pieces = [
        &letters[..lens.0],
        &letters[lens.0..lens.0 + lens.1],
        &letters[lens.0 + lens.1..],
    ];
    let refined = index_of_pieces(pieces.into_iter(), ell, m);
    let whole = index_of_pieces(std::iter::once(letters), ell, m);
    Ok((lens, refined - whole))
}

/// Splits an irregular word at its witness into `(A, B, C)` with
/// `A = S[1, i−1]`, `B = S[i, i+w−1]`, `C = S[i+w, m]`.
///
/// Fails with [`Error::InsufficientIncrement`] when integer rounding leaves
/// the index gain below ε³.
pub fn refine_irregular(
    word: &Word,
    epsilon: Epsilon,
    witness: &RefinementWitness,
) -> Result<(Word, Word, Word)> {
    let ell = word.alphabet().size() as usize;
    let ((a, b, _), gain) = refinement_split(word.letters(), ell, epsilon, witness)?;
    let required = epsilon.pow(3);
    if gain < required {
        return Err(Error::InsufficientIncrement {
            gain: format_ratio(&gain),
            required: format_ratio(&required),
        });
    }
    let l = word.letters();
    let alpha = word.alphabet();
    Ok((
        Word::from_parts_unchecked(l[..a].to_vec(), alpha),
        Word::from_parts_unchecked(l[a..a + b].to_vec(), alpha),
        Word::from_parts_unchecked(l[a + b..].to_vec(), alpha),
    ))
}

/// One refinement round as recorded in a [`PartitionTrace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRound {
    /// Partition index before the round.
    pub index_before: BigRational,
    /// Irregular mass fraction `α_j` before the round.
    pub alpha: BigRational,
    pub factors_split: usize,
    /// Total length of the factors that were split.
    pub refined_mass: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTrace {
    pub rounds: Vec<TraceRound>,
    pub final_index: BigRational,
    pub final_alpha: BigRational,
    /// False when refinement stalled before the irregular mass fell to `εn`.
    pub converged: bool,
}

/// The output of [`regularity_partition`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularization {
    pub partition: FactorPartition,
    pub trace: PartitionTrace,
}

/// Factors shorter than this are never split.
pub fn min_refinable_len(epsilon: Epsilon) -> usize {
    epsilon.inverse_ceil().max(3)
}

/// Partitions a word into consecutive factors by repeated density-increment
/// refinement.
///
/// Starts from the equal split into `t0` factors. Each round splits every
/// irregular factor at its witness, provided the split raises that factor's
/// index by at least ε³ and the factor is not below [`min_refinable_len`].
/// A round runs only while the irregular mass exceeds `εn` and the splittable
/// mass is at least `εn`, so every recorded round raises the global index by
/// at least ε⁴. When the splittable mass runs out first the returned trace has
/// `converged == false`; this happens on inputs far shorter than the regime
/// the increment argument needs.
pub fn regularity_partition(word: &Word, params: RegularityParams) -> Result<Regularization> {
    params.validate()?;
    let eps = params.epsilon;
    let n = word.len();
    let ell = word.alphabet().size() as usize;
    let letters = word.letters();
    let guard = min_refinable_len(eps);
    let lengths = equal_split(n, params.t0)?;

    let mut factors = FactorPartition::from_lengths(word, eps, &lengths)?.factors;
    let mut rounds = Vec::new();
    let n_big = BigRational::from_integer(BigInt::from(n));
    let converged = loop {
        let irregular: usize = factors.iter().filter(|f| !f.regular).map(Factor::len).sum();
        if eps.admits_mass(irregular, n) {
            break true;
        }
        let splits: Vec<Option<(usize, usize, usize)>> = factors
            .par_iter()
            .map(|f| {
                if f.regular || f.len() < guard {
                    return None;
                }
                let slice = &letters[f.start - 1..f.end];
                let witness = scan(slice, ell, eps).ok().flatten()?;
                let (lens, gain) = refinement_split(slice, ell, eps, &witness).ok()?;
                (gain >= eps.pow(3)).then_some(lens)
            })
            .collect();
        let refined_mass: usize = factors
            .iter()
            .zip(&splits)
            .filter(|(_, s)| s.is_some())
            .map(|(f, _)| f.len())
            .sum();
        if refined_mass == 0 || !eps_reaches(eps, refined_mass, n) {
            break false;
        }
        let index_before = index_of_pieces(
            factors.iter().map(|f| &letters[f.start - 1..f.end]),
            ell,
            n,
        );
        rounds.push(TraceRound {
            index_before,
            alpha: BigRational::from_integer(BigInt::from(irregular)) / &n_big,
            factors_split: splits.iter().flatten().count(),
            refined_mass,
        });
        let mut pieces: Vec<Result<Factor, (usize, usize)>> = Vec::with_capacity(factors.len() + 2 * splits.len());
        for (f, split) in factors.into_iter().zip(splits) {
            match split {
                None => pieces.push(Ok(f)),
                Some((a, b, c)) => {
                    let mut s = f.start;
                    for len in [a, b, c] {
                        pieces.push(Err((s, s + len - 1)));
                        s += len;
                    }
                }
            }
        }
        factors = pieces
            .into_par_iter()
            .map(|p| p.unwrap_or_else(|(s, e)| make_factor(letters, ell, eps, s, e)))
            .collect();
    };
    let final_index = index_of_pieces(
        factors.iter().map(|f| &letters[f.start - 1..f.end]),
        ell,
        n,
    );
    let irregular: usize = factors.iter().filter(|f| !f.regular).map(Factor::len).sum();
    Ok(Regularization {
        partition: FactorPartition {
            host: word.clone(),
            epsilon: eps,
            factors,
        },
        trace: PartitionTrace {
            rounds,
            final_index,
            final_alpha: BigRational::from_integer(BigInt::from(irregular)) / n_big,
            converged,
        },
    })
}

/// Whether `mass ≥ εn`.
fn eps_reaches(eps: Epsilon, mass: usize, n: usize) -> bool {
    mass as u128 * eps.denom() as u128 >= eps.numer() as u128 * n as u128
}

/// Wire form of a regularization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub n: usize,
    pub epsilon: String,
    pub factors: Vec<FactorJson>,
    pub trace: Vec<TraceJson>,
    pub final_index: String,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub start: usize,
    pub end: usize,
    pub regular: bool,
    pub densities: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub index: String,
    pub alpha: String,
}

impl Regularization {
    pub fn to_json(&self) -> PartitionJson {
        PartitionJson {
            n: self.partition.host.len(),
            epsilon: self.partition.epsilon.to_string(),
            factors: self
                .partition
                .factors
                .iter()
                .map(|f| FactorJson {
                    start: f.start,
                    end: f.end,
                    regular: f.regular,
                    densities: f.density.to_strings(),
                })
                .collect(),
            trace: self
                .trace
                .rounds
                .iter()
                .map(|r| TraceJson {
                    index: format_ratio(&r.index_before),
                    alpha: format_ratio(&r.alpha),
                })
                .collect(),
            final_index: format_ratio(&self.trace.final_index),
            converged: self.trace.converged,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{parse_word, Alphabet};

    fn eps(t: u64) -> Epsilon {
        Epsilon::unit(t).unwrap()
    }

    fn bin(s: &str) -> Word {
        parse_word(s, Alphabet::binary()).unwrap()
    }

    fn half_half() -> Word {
        bin(&format!("{}{}", "0".repeat(50), "1".repeat(50)))
    }

    #[test]
    fn regular_examples() {
        assert!(check_regular(&bin(&"0".repeat(100)), eps(10)).unwrap().is_regular());
        assert!(check_regular(&bin(&"01".repeat(500)), eps(10)).unwrap().is_regular());
        assert!(matches!(
            check_regular(&bin("0101"), eps(10)),
            Err(Error::EpsilonTooSmall { len: 4, .. })
        ));
    }

    #[test]
    fn first_witness_of_split_word() {
        let Verdict::Irregular(w) = check_regular(&half_half(), eps(10)).unwrap() else {
            panic!("expected irregular");
        };
        assert_eq!((w.window_start, w.letter, w.window_len), (11, 0, 10));
        assert_eq!(w.deviation, Ratio::new(-1, 2));
    }

    #[test]
    fn refinement_of_split_word() {
        let s = half_half();
        let Verdict::Irregular(w) = check_regular(&s, eps(10)).unwrap() else {
            panic!("expected irregular");
        };
        let (a, b, c) = refine_irregular(&s, eps(10), &w).unwrap();
        assert_eq!(a.encode(), "0".repeat(10));
        assert_eq!(b.encode(), "0".repeat(10));
        assert_eq!(c.encode(), format!("{}{}", "0".repeat(30), "1".repeat(50)));
        let gain = index_of_lengths(&s, &[10, 10, 80]).unwrap() - index_of_lengths(&s, &[100]).unwrap();
        assert!(gain >= eps(10).pow(3));
        let mut forged = w.clone();
        forged.deviation = Ratio::new(1, 2);
        assert!(matches!(refine_irregular(&s, eps(10), &forged), Err(Error::WitnessMismatch(_))));
    }

    #[test]
    fn index_examples() {
        let s = bin("00001111");
        let one = |i: BigRational| i == BigRational::from_integer(1.into());
        assert!(one(index_of_lengths(&bin("00000000"), &[8]).unwrap()));
        assert!(one(index_of_lengths(&s, &[4, 4]).unwrap()));
        assert_eq!(
            index_of_lengths(&s, &[8]).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        let p = FactorPartition::from_lengths(&s, eps(2), &[4, 4]).unwrap();
        assert!(one(partition_index(&p).unwrap()));
    }

    #[test]
    fn constant_word_needs_no_rounds() {
        let s = bin(&"1".repeat(1000));
        let r = regularity_partition(&s, RegularityParams::for_epsilon(eps(10))).unwrap();
        assert!(r.trace.rounds.is_empty() && r.trace.converged);
        assert_eq!(r.partition.factors.len(), 10);
    }

    #[test]
    fn split_word_initial_partition_is_regular() {
        let s = bin(&format!("{}{}", "0".repeat(5000), "1".repeat(5000)));
        let r = regularity_partition(&s, RegularityParams { epsilon: eps(5), t0: 5 }).unwrap();
        assert!(r.partition.is_regular_partition());
        assert!(r.trace.converged);
        assert!(eps(5).admits_mass(r.partition.irregular_mass(), s.len()));
    }

    #[test]
    fn t0_below_inverse_epsilon_is_rejected() {
        let s = bin(&"01".repeat(100));
        let p = RegularityParams { epsilon: eps(10), t0: 5 };
        assert!(matches!(regularity_partition(&s, p), Err(Error::InvalidParams(_))));
    }
}
