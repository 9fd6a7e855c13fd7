//! Constructive twins and k-tuplets.
//!
//! [`greedy_triples`] is the baseline `⌊n/3⌋` argument for binary words. The
//! block constructions [`extract_twins_regular`] and
//! [`extract_ktuplets_regular`] work on a single ε-regular word, and
//! [`pipeline`] combines them with [`crate::regularity::regularity_partition`]
//! and [`restrict_frequent`] to handle arbitrary words.

mod blocks;
mod frequent;
mod greedy;
mod pipeline;

pub use blocks::{
    extract_ktuplets_regular, extract_twins_regular, ktuplets_plan, twins_plan, Block, BlockPlan,
};
pub use frequent::restrict_frequent;
pub use greedy::greedy_triples;
pub use pipeline::{pipeline, ExtractionParams, Extractor, PipelineOutput};
