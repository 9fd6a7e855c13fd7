//! Block constructions on a single ε-regular word.
//!
//! The word of length `m` is cut into `t = ⌊1/ε⌋` consecutive factors of
//! almost equal length. A member of the tuplet is a sequence of blocks, each
//! made of `b_q` copies of a letter `q` drawn from one factor, where
//! `b_q = max(0, ⌊(d_q − ε)·εm⌋)`. Regularity keeps every factor supplied with
//! about `d_q·|factor|` copies of `q`, so the blocks fit; members read the
//! same letter and size sequence from disjoint factor/letter pools, so they
//! spell the same word.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::regularity::{check_regular, equal_split, Verdict};
use crate::word::{Construction, Letter, Support, TupletResult, Word};

/// `b_q` letters `q` taken from factor `factor` (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Block {
    pub factor: usize,
    pub letter: Letter,
    pub size: usize,
}

/// Blocks of every member, plus the factor boundaries they refer to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockPlan {
    pub members: Vec<Vec<Block>>,
    /// Length of each factor, in order.
    pub factor_lengths: Vec<usize>,
}

impl BlockPlan {
    /// Number of blocks per member.
    pub fn blocks_per_member(&self) -> usize {
        self.members.first().map_or(0, Vec::len)
    }

    /// Letters per member.
    pub fn member_len(&self) -> usize {
        self.members.first().map_or(0, |m| m.iter().map(|b| b.size).sum())
    }

    /// Checks the shape: identical letter/size sequences and strictly
    /// increasing factors in every member.
    pub fn validate(&self) -> Result<()> {
        let t = self.factor_lengths.len();
        let Some(first) = self.members.first() else {
            return Err(Error::InvalidParams("plan has no members".into()));
        };
        for m in &self.members {
            if m.len() != first.len()
                || m.iter().zip(first).any(|(a, b)| (a.letter, a.size) != (b.letter, b.size))
            {
                return Err(Error::InvalidParams("members have different block shapes".into()));
            }
            if m.windows(2).any(|w| w[0].factor >= w[1].factor)
                || m.iter().any(|b| b.factor == 0 || b.factor > t)
            {
                return Err(Error::InvalidParams("block factors must increase within 1..=t".into()));
            }
        }
        Ok(())
    }

    /// Turns the plan into supports of `word`, filling each block with the
    /// earliest unused occurrences of its letter in its factor.
    pub fn realize(&self, word: &Word) -> Result<Vec<Support>> {
        self.validate()?;
        if self.factor_lengths.iter().sum::<usize>() != word.len() {
            return Err(Error::InvalidParams("plan does not match the word length".into()));
        }
        let ell = word.alphabet().size() as usize;
        let t = self.factor_lengths.len();
        // occurrences[f][q]: 1-based positions of q in factor f.
        let mut occurrences = vec![vec![Vec::new(); ell]; t];
        let mut start = 0;
        for (f, &len) in self.factor_lengths.iter().enumerate() {
            for i in start..start + len {
                occurrences[f][word.letters()[i] as usize].push(i + 1);
            }
            start += len;
        }
        let mut cursor = vec![vec![0usize; ell]; t];
        let mut out = Vec::with_capacity(self.members.len());
        for member in &self.members {
            let mut positions = Vec::with_capacity(self.member_len());
            for b in member {
                let (f, q) = (b.factor - 1, b.letter as usize);
                if q >= ell {
                    return Err(Error::InvalidParams(format!(
                        "block letter {} is outside the alphabet",
                        b.letter
                    )));
                }
                let pool = &occurrences[f][q];
                let c = &mut cursor[f][q];
                if *c + b.size > pool.len() {
                    return Err(Error::Infeasible(format!(
                        "factor {} has {} unused copies of letter {}, block needs {}",
                        b.factor,
                        pool.len() - *c,
                        b.letter,
                        b.size
                    )));
                }
                positions.extend_from_slice(&pool[*c..*c + b.size]);
                *c += b.size;
            }
            out.push(Support::from_sorted_unchecked(positions));
        }
        Ok(out)
    }
}

/// `max(0, ⌊(c/m − ε)·εm⌋) = max(0, ⌊εc − ε²m⌋)` for a letter with `c` copies.
fn block_size(count: u64, m: usize, eps: Epsilon) -> usize {
    let (p, q) = (BigInt::from(eps.numer()), BigInt::from(eps.denom()));
    let num = &p * &q * BigInt::from(count) - &p * &p * BigInt::from(m);
    if num <= BigInt::from(0) {
        return 0;
    }
    let v: BigInt = num.div_floor(&(&q * &q));
    usize::try_from(v).unwrap_or(usize::MAX)
}

fn require_regular(word: &Word, eps: Epsilon) -> Result<()> {
    match check_regular(word, eps)? {
        Verdict::Regular => Ok(()),
        Verdict::Irregular(w) => Err(Error::NotRegular(format!(
            "letter {} deviates by {} in the window starting at {}",
            w.letter, w.deviation, w.window_start
        ))),
    }
}

/// Builds a plan from a layout `(member, block) -> (factor, letter)`, sizing
/// blocks by `b_q` capped at the smallest supply of `q` among the factors
/// that provide `q`-blocks.
fn plan_from_layout(
    word: &Word,
    eps: Epsilon,
    t: usize,
    k: usize,
    blocks: usize,
    layout: impl Fn(usize, usize) -> (usize, Letter),
) -> Result<BlockPlan> {
    let m = word.len();
    let ell = word.alphabet().size() as usize;
    let factor_lengths = equal_split(m, t)?;
    let mut factor_counts = Vec::with_capacity(t);
    let mut start = 0;
    for &len in &factor_lengths {
        let mut c = vec![0usize; ell];
        for &l in &word.letters()[start..start + len] {
            c[l as usize] += 1;
        }
        factor_counts.push(c);
        start += len;
    }
    let counts = word.counts();
    let mut size: Vec<usize> = (0..ell).map(|q| block_size(counts[q], m, eps)).collect();
    for j in 0..k {
        for b in 0..blocks {
            let (f, q) = layout(j, b);
            let q = q as usize;
            size[q] = size[q].min(factor_counts[f - 1][q]);
        }
    }
    let members = (0..k)
        .map(|j| {
            (0..blocks)
                .map(|b| {
                    let (factor, letter) = layout(j, b);
                    Block {
                        factor,
                        letter,
                        size: size[letter as usize],
                    }
                })
                .collect()
        })
        .collect();
    Ok(BlockPlan {
        members,
        factor_lengths,
    })
}

/// The twin plan for a binary word: with `t = ⌊1/ε⌋` factors, the first twin
/// takes blocks of 1, 0, 1, … from factors `2..=t−2` and the second twin the
/// same letters from factors `3..=t−1`.
pub fn twins_plan(word: &Word, epsilon: Epsilon) -> Result<BlockPlan> {
    if word.alphabet().size() != 2 {
        return Err(Error::UnsupportedAlphabet(
            "the twin construction needs a binary word".into(),
        ));
    }
    let t = epsilon.inverse_floor();
    if t < 5 {
        return Err(Error::EpsilonTooLarge(format!(
            "the twin construction needs floor(1/epsilon) >= 5, got {t}"
        )));
    }
    plan_from_layout(word, epsilon, t, 2, t - 3, |j, b| {
        (2 + j + b, if b % 2 == 0 { 1 } else { 0 })
    })
}

/// Twins in a binary ε-regular word of length `m`, of combined length at
/// least `(1 − 5ε)m` up to rounding of the block sizes.
///
/// ```
/// use twinword::{parse_word, Alphabet, Epsilon};
/// use twinword::extraction::extract_twins_regular;
/// let s = parse_word(&"01".repeat(500), Alphabet::binary()).unwrap();
/// let t = extract_twins_regular(&s, Epsilon::unit(10).unwrap()).unwrap();
/// assert!(t.combined_len() >= 500);
/// ```
pub fn extract_twins_regular(word: &Word, epsilon: Epsilon) -> Result<TupletResult> {
    let plan = twins_plan(word, epsilon)?;
    require_regular(word, epsilon)?;
    let supports = plan.realize(word)?;
    TupletResult::from_supports(word, supports, Construction::Claim1)
}

/// The k-tuplet plan for an alphabet of `ℓ ≤ k` letters: member `j` (from 1)
/// takes its `b`-th block, of letter `b mod ℓ`, from factor
/// `j + 1 + k⌊b/ℓ⌋ + (b mod ℓ)`. Each member has as many blocks as fit below
/// factor `t`.
pub fn ktuplets_plan(word: &Word, epsilon: Epsilon, k: usize) -> Result<BlockPlan> {
    let ell = word.alphabet().size() as usize;
    if k < 2 {
        return Err(Error::InvalidParams(format!("k = {k} must be at least 2")));
    }
    if ell > k {
        return Err(Error::WrongRegime(format!(
            "the k-tuplet construction needs at most k = {k} letters, got {ell}; restrict to the most frequent letters first"
        )));
    }
    let t = epsilon.inverse_floor();
    if t < 2 * ell + k {
        return Err(Error::EpsilonTooLarge(format!(
            "the k-tuplet construction needs floor(1/epsilon) >= 2*ell + k = {}, got {t}",
            2 * ell + k
        )));
    }
    let factor = move |j: usize, b: usize| j + 2 + k * (b / ell) + b % ell;
    let blocks = (0..).take_while(|&b| factor(k - 1, b) < t).count();
    plan_from_layout(word, epsilon, t, k, blocks, move |j, b| {
        (factor(j, b), (b % ell) as Letter)
    })
}

/// A k-tuplet in an ε-regular word of length `m` over at most `k` letters.
///
/// When `ℓ = k` the members cover `k·|member| ≥ m − 3ℓεm` letters up to
/// rounding of the block sizes. With fewer letters than members the layout
/// leaves more factor pools idle near both ends.
///
/// ```
/// use twinword::{parse_word, Alphabet, Epsilon};
/// use twinword::extraction::extract_ktuplets_regular;
/// let s = parse_word(&"0".repeat(600), Alphabet::new(3).unwrap()).unwrap();
/// let t = extract_ktuplets_regular(&s, Epsilon::unit(10).unwrap(), 3).unwrap();
/// assert_eq!(t.common_word.encode(), "0".repeat(t.len()));
/// ```
pub fn extract_ktuplets_regular(word: &Word, epsilon: Epsilon, k: usize) -> Result<TupletResult> {
    let plan = ktuplets_plan(word, epsilon, k)?;
    require_regular(word, epsilon)?;
    let supports = plan.realize(word)?;
    TupletResult::from_supports(word, supports, Construction::Thm2)
}
