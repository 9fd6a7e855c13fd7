//! Words, supports and densities.
//!
//! Positions are 1-based everywhere in the public surface: `factor(3, 5)` is
//! the third through fifth letters and a [`Support`] lists 1-based indices.
//! Letters are plain integer codes `0..ℓ`; alphabets of up to 36 letters print
//! as `0-9a-z`, larger ones as whitespace-separated decimals.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Largest alphabet that uses the one-character-per-letter encoding.
pub const MAX_CHAR_ALPHABET: u32 = 36;

/// An alphabet `{0, …, ℓ-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Alphabet(u32);

impl Alphabet {
    pub fn new(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidAlphabet(size));
        }
        Ok(Alphabet(size))
    }

    pub const fn binary() -> Self {
        Alphabet(2)
    }

    pub fn size(&self) -> u32 {
        self.0
    }

    pub fn uses_chars(&self) -> bool {
        self.0 <= MAX_CHAR_ALPHABET
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter < self.0
    }
}

/// A finite word over an [`Alphabet`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(letters: Vec<Letter>, alphabet: Alphabet) -> Result<Self> {
        if let Some((i, &l)) = letters.iter().enumerate().find(|(_, &l)| !alphabet.contains(l)) {
            return Err(Error::LetterOutOfRange {
                position: i + 1,
                letter: l,
                alphabet: alphabet.size(),
            });
        }
        Ok(Word { letters, alphabet })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            letters: Vec::new(),
            alphabet,
        }
    }

    /// A word over the smallest alphabet (at least binary) containing its letters.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        let size = letters.iter().max().map_or(2, |&m| (m + 1).max(2));
        Word {
            letters,
            alphabet: Alphabet(size),
        }
    }

    pub(crate) fn from_parts_unchecked(letters: Vec<Letter>, alphabet: Alphabet) -> Self {
        debug_assert!(letters.iter().all(|&l| alphabet.contains(l)));
        Word { letters, alphabet }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The same letters viewed over a different (large enough) alphabet.
    pub fn with_alphabet(&self, alphabet: Alphabet) -> Result<Word> {
        Word::new(self.letters.clone(), alphabet)
    }

    /// Letter at 1-based position `i`.
    pub fn at(&self, i: usize) -> Result<Letter> {
        if i == 0 || i > self.len() {
            return Err(Error::OutOfBounds {
                index: i,
                len: self.len(),
            });
        }
        Ok(self.letters[i - 1])
    }

    /// The factor `S[i, j]`, both ends inclusive and 1-based.
    pub fn factor(&self, i: usize, j: usize) -> Result<Word> {
        if i == 0 || i > j || j > self.len() {
            let index = if i == 0 || i > self.len() { i } else { j };
            return Err(Error::OutOfBounds {
                index,
                len: self.len(),
            });
        }
        Ok(Word::from_parts_unchecked(
            self.letters[i - 1..j].to_vec(),
            self.alphabet,
        ))
    }

    /// The scattered subword `S[I]` read off a support.
    pub fn extract(&self, support: &Support) -> Result<Word> {
        if let Some(&last) = support.indices().last() {
            if last > self.len() {
                return Err(Error::OutOfBounds {
                    index: last,
                    len: self.len(),
                });
            }
        }
        let letters = support.indices().iter().map(|&i| self.letters[i - 1]).collect();
        Ok(Word::from_parts_unchecked(letters, self.alphabet))
    }

    /// Letter counts `|S|_q` for every `q` in the alphabet.
    pub fn counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.alphabet.size() as usize];
        for &l in &self.letters {
            counts[l as usize] += 1;
        }
        counts
    }

    pub fn density(&self) -> Result<DensityVector> {
        if self.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(DensityVector {
            counts: self.counts(),
            total: self.len() as u64,
        })
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word::from_parts_unchecked(letters, self.alphabet)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word::from_parts_unchecked(letters, self.alphabet.max(other.alphabet))
    }

    /// Encodes the word in the text format accepted by [`parse_word`].
    pub fn encode(&self) -> String {
        if self.alphabet.uses_chars() {
            self.letters.iter().map(|&l| DIGITS[l as usize] as char).collect()
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            parts.join(" ")
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?}, l={})", self.encode(), self.alphabet.size())
    }
}

fn decode_char(c: char) -> Option<Letter> {
    match c {
        '0'..='9' => Some(c as u32 - '0' as u32),
        'a'..='z' => Some(c as u32 - 'a' as u32 + 10),
        _ => None,
    }
}

/// Decodes a word written in the alphabet's text encoding.
///
/// ```
/// use twinword::{parse_word, Alphabet};
/// let w = parse_word("001011", Alphabet::binary()).unwrap();
/// assert_eq!(w.letters(), &[0, 0, 1, 0, 1, 1]);
/// assert!(parse_word("012", Alphabet::binary()).is_err());
/// ```
pub fn parse_word(text: &str, alphabet: Alphabet) -> Result<Word> {
    let size = alphabet.size();
    let mut letters = Vec::with_capacity(text.len());
    if alphabet.uses_chars() {
        for (i, c) in text.trim_end_matches(['\n', '\r']).chars().enumerate() {
            match decode_char(c) {
                Some(l) if l < size => letters.push(l),
                _ => {
                    return Err(Error::Decode {
                        position: i + 1,
                        found: c.to_string(),
                        alphabet: size,
                    })
                }
            }
        }
    } else {
        for (i, tok) in text.split_whitespace().enumerate() {
            match tok.parse::<Letter>() {
                Ok(l) if l < size => letters.push(l),
                _ => {
                    return Err(Error::Decode {
                        position: i + 1,
                        found: tok.to_string(),
                        alphabet: size,
                    })
                }
            }
        }
    }
    Ok(Word::from_parts_unchecked(letters, alphabet))
}

/// Reads a word file: one word per line, `#` comment lines and blank lines skipped.
pub fn parse_word_file(text: &str, alphabet: Alphabet) -> Result<Vec<Word>> {
    text.lines()
        .map(|l| l.trim_end_matches('\r'))
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| parse_word(l.trim(), alphabet))
        .collect()
}

/// Smallest alphabet size (≥ 2) able to decode every character-encoded line.
pub fn infer_alphabet(text: &str) -> Alphabet {
    let max = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .flat_map(|l| l.chars())
        .filter_map(decode_char)
        .max()
        .unwrap_or(1);
    Alphabet((max + 1).max(2))
}

/// Strictly increasing 1-based positions into a host word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Support(Vec<usize>);

impl Support {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.first() == Some(&0) {
            return Err(Error::InvalidSupport("positions are 1-based".into()));
        }
        if let Some(w) = indices.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSupport(format!(
                "positions must be strictly increasing, found {} then {}",
                w[0], w[1]
            )));
        }
        Ok(Support(indices))
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(indices.first() != Some(&0));
        Support(indices)
    }

    /// The full support `1..=n`.
    pub fn full(n: usize) -> Self {
        Support((1..=n).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Maps every position through `map` (a support of the host inside a larger word).
    pub fn compose(&self, map: &Support) -> Result<Support> {
        let out = self
            .0
            .iter()
            .map(|&i| {
                map.0.get(i.wrapping_sub(1)).copied().ok_or(Error::OutOfBounds {
                    index: i,
                    len: map.len(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Support(out))
    }

    pub(crate) fn shifted(&self, offset: usize) -> Support {
        Support(self.0.iter().map(|&i| i + offset).collect())
    }

    pub(crate) fn extend(&mut self, other: &Support) {
        debug_assert!(match (self.0.last(), other.0.first()) {
            (Some(a), Some(b)) => a < b,
            _ => true,
        });
        self.0.extend_from_slice(&other.0);
    }
}

impl TryFrom<Vec<usize>> for Support {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Support::new(v)
    }
}

impl From<Support> for Vec<usize> {
    fn from(s: Support) -> Self {
        s.0
    }
}

/// Per-letter densities `d_q(S) = |S|_q / |S|`, kept as exact counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DensityVector {
    counts: Vec<u64>,
    total: u64,
}

impl DensityVector {
    pub(crate) fn from_counts(counts: Vec<u64>, total: u64) -> Self {
        debug_assert_eq!(counts.iter().sum::<u64>(), total);
        DensityVector { counts, total }
    }

    pub fn get(&self, q: Letter) -> Ratio<u64> {
        Ratio::new(self.counts[q as usize], self.total)
    }

    pub fn count(&self, q: Letter) -> u64 {
        self.counts[q as usize]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn ratios(&self) -> Vec<Ratio<u64>> {
        (0..self.counts.len() as Letter).map(|q| self.get(q)).collect()
    }

    /// Floating point view, for display only.
    pub fn to_f64(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.total as f64).collect()
    }

    /// `"p/q"` strings in reduced form.
    pub fn to_strings(&self) -> Vec<String> {
        self.ratios()
            .iter()
            .map(|r| {
                if *r.denom() == 1 {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            })
            .collect()
    }
}

/// The name of the procedure that produced a tuplet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    Greedy,
    Claim1,
    Thm2,
    Pipeline,
    Exact,
}

impl Construction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Construction::Greedy => "greedy",
            Construction::Claim1 => "claim1",
            Construction::Thm2 => "thm2",
            Construction::Pipeline => "pipeline",
            Construction::Exact => "exact",
        }
    }
}

/// `k` pairwise disjoint supports in a host word that all spell `common_word`.
///
/// Only [`crate::exact::verify_tuplet`]-checked values are built by the
/// library; use [`TupletResult::validate`] before trusting one built by hand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupletResult {
    pub k: usize,
    pub supports: Vec<Support>,
    pub common_word: Word,
    pub host_length: usize,
    pub construction: Construction,
}

impl TupletResult {
    /// Common length of each member.
    pub fn len(&self) -> usize {
        self.common_word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.common_word.is_empty()
    }

    /// Total number of host letters used, `k · len`.
    pub fn combined_len(&self) -> usize {
        self.k * self.len()
    }

    /// Builds and verifies a tuplet against `host`.
    pub fn from_supports(
        host: &Word,
        supports: Vec<Support>,
        construction: Construction,
    ) -> Result<Self> {
        let k = supports.len();
        match crate::exact::verify_tuplet(host, &supports)? {
            crate::exact::Verification::Valid { common_word } => Ok(TupletResult {
                k,
                supports,
                common_word,
                host_length: host.len(),
                construction,
            }),
            crate::exact::Verification::Invalid(why) => {
                Err(Error::InvalidSupport(why.to_string()))
            }
        }
    }

    /// Re-checks the defining property against the host.
    pub fn validate(&self, host: &Word) -> Result<()> {
        if host.len() != self.host_length || self.supports.len() != self.k {
            return Err(Error::InvalidSupport("tuplet does not match host".into()));
        }
        match crate::exact::verify_tuplet(host, &self.supports)? {
            crate::exact::Verification::Valid { common_word } if common_word == self.common_word => {
                Ok(())
            }
            crate::exact::Verification::Valid { .. } => {
                Err(Error::InvalidSupport("common word differs from extraction".into()))
            }
            crate::exact::Verification::Invalid(why) => Err(Error::InvalidSupport(why.to_string())),
        }
    }

    pub fn to_json(&self) -> TupletJson {
        TupletJson {
            k: self.k,
            length: self.len(),
            common_word: self.common_word.encode(),
            supports: self.supports.iter().map(|s| s.indices().to_vec()).collect(),
            construction: self.construction.as_str().to_string(),
        }
    }
}

/// Wire form of a tuplet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupletJson {
    pub k: usize,
    pub length: usize,
    pub common_word: String,
    pub supports: Vec<Vec<usize>>,
    pub construction: String,
}
