//! Twins and k-tuplets of scattered subwords.
//!
//! A *k-tuplet* of length `m` in a word `S` is a family of `k` pairwise
//! disjoint supports that all spell the same subword of length `m`; twins are
//! the case `k = 2`. This crate provides
//!
//! * [`word`]: words, supports and letter densities;
//! * [`regularity`]: ε-regular words and the density-increment partitioner;
//! * [`extraction`]: constructive twins and k-tuplets, from the greedy
//!   triple argument up to the regularize-then-extract pipeline;
//! * [`exact`]: a tuplet verifier, an exact solver for `f(S, k)` and the
//!   exhaustive search for `f(n, k, ℓ)`;
//! * [`constructions`]: the block word, seeded random words and first-moment
//!   bounds.
//!
//! The guide in `book/` walks through each of these with runnable examples.

pub mod constructions;
pub mod epsilon;
pub mod error;
pub mod exact;
pub mod extraction;
pub mod regularity;
pub mod word;

pub use epsilon::Epsilon;
pub use error::{Error, Result};
pub use word::{
    parse_word, parse_word_file, Alphabet, Construction, DensityVector, Letter, Support,
    TupletJson, TupletResult, Word,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/regularity.md")]
    mod regularity {}
    #[doc = include_str!("../../../book/src/extraction.md")]
    mod extraction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
