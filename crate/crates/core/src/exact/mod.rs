//! Ground truth: tuplet verification, exact `f(S, k)` and exhaustive
//! `f(n, k, ℓ)` tables.

mod frontier;
mod search;
mod solve;
mod table;
mod verify;

pub use solve::{f_exact, ExactValue};
pub use table::{
    audit, f_min_over_words, generate_table, pigeonhole_bound, table_csv, Provenance,
    SearchOptions, TableEntry, TableEntryJson, Violation,
};
pub use verify::{verify_tuplet, Failure, Verification};
