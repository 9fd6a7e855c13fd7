use std::fmt;

use crate::error::{Error, Result};
use crate::word::{Support, Word};

/// Why a family of supports is not a tuplet. Member numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    TooFewMembers(usize),
    Overlap { first: usize, second: usize, position: usize },
    LengthMismatch { first: usize, second: usize },
    WordMismatch { first: usize, second: usize, at: usize },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::TooFewMembers(k) => write!(f, "a tuplet needs at least 2 members, got {k}"),
            Failure::Overlap { first, second, position } => {
                write!(f, "members {first} and {second} both use position {position}")
            }
            Failure::LengthMismatch { first, second } => {
                write!(f, "members {first} and {second} have different lengths")
            }
            Failure::WordMismatch { first, second, at } => {
                write!(f, "members {first} and {second} differ at letter {at}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verification {
    Valid { common_word: Word },
    Invalid(Failure),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid { .. })
    }
}

/// Checks that `supports` are pairwise disjoint, equally long and spell the
/// same subword of `word`.
///
/// ```
/// use twinword::{parse_word, Alphabet, Support};
/// use twinword::exact::verify_tuplet;
/// let s = parse_word("001011", Alphabet::binary()).unwrap();
/// let twins = [Support::new(vec![1, 5]).unwrap(), Support::new(vec![4, 6]).unwrap()];
/// assert!(verify_tuplet(&s, &twins).unwrap().is_valid());
/// ```
pub fn verify_tuplet(word: &Word, supports: &[Support]) -> Result<Verification> {
    for s in supports {
        if let Some(&last) = s.indices().last() {
            if last > word.len() {
                return Err(Error::OutOfBounds {
                    index: last,
                    len: word.len(),
                });
            }
        }
    }
    if supports.len() < 2 {
        return Ok(Verification::Invalid(Failure::TooFewMembers(supports.len())));
    }
    let mut owner = vec![0usize; word.len() + 1];
    for (j, s) in supports.iter().enumerate() {
        for &i in s.indices() {
            if owner[i] != 0 {
                return Ok(Verification::Invalid(Failure::Overlap {
                    first: owner[i],
                    second: j + 1,
                    position: i,
                }));
            }
            owner[i] = j + 1;
        }
    }
    let first = word.extract(&supports[0])?;
    for (j, s) in supports.iter().enumerate().skip(1) {
        if s.len() != first.len() {
            return Ok(Verification::Invalid(Failure::LengthMismatch {
                first: 1,
                second: j + 1,
            }));
        }
        let other = word.extract(s)?;
        if let Some(at) = first.letters().iter().zip(other.letters()).position(|(a, b)| a != b) {
            return Ok(Verification::Invalid(Failure::WordMismatch {
                first: 1,
                second: j + 1,
                at: at + 1,
            }));
        }
    }
    Ok(Verification::Valid { common_word: first })
}
