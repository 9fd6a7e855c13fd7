//! Exhaustive search for a word of length `n` with no k-tuplet of a given
//! length.
//!
//! Words are generated as a prefix tree in lexicographic order, restricted to
//! first-occurrence-canonical words (letter `a` appears only after `0..a`).
//! Each node carries the frontier of its prefix; a prefix that already holds a
//! tuplet of the target length is cut together with its whole subtree, since
//! extending a word never destroys a tuplet. The tree is sharded by prefix and
//! the shards run on a rayon pool; the reported witness is always the
//! lexicographically first one, whatever the number of jobs.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::frontier::{Frontier, Step};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum SearchOutcome {
    /// A canonical word avoiding the target. `first` is false when an earlier
    /// shard was interrupted, so a smaller witness may exist.
    Witness { word: Vec<u8>, first: bool },
    Exhausted,
    Interrupted,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct SearchQuery {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    /// Tuplet length to avoid.
    pub target: usize,
    pub deadline: Option<Instant>,
    pub jobs: usize,
}

enum ShardResult {
    Witness(Vec<u8>),
    Exhausted,
    Skipped,
    Interrupted,
}

struct Shard {
    prefix: Vec<u8>,
    used: u8,
    frontier: Frontier,
}

/// Whether `w` is no larger than the first-occurrence relabelling of its reversal.
pub(crate) fn is_reversal_canonical(w: &[u8]) -> bool {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    for (a, &b) in w.iter().zip(w.iter().rev()) {
        let b = {
            let slot = &mut map[b as usize];
            if *slot == u8::MAX {
                *slot = next;
                next += 1;
            }
            *slot
        };
        match a.cmp(&b) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    true
}

/// Relabels letters in order of first occurrence.
pub(crate) fn canonical_letters(w: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 256];
    let mut next = 0u8;
    w.iter()
        .map(|&l| {
            let slot = &mut map[l as usize];
            if *slot == u8::MAX {
                *slot = next;
                next += 1;
            }
            *slot
        })
        .collect()
}

struct Ctx<'a> {
    query: SearchQuery,
    index: usize,
    winner: &'a AtomicUsize,
    timed_out: &'a AtomicBool,
    ticks: u32,
}

impl Ctx<'_> {
    fn should_stop(&mut self) -> Option<ShardResult> {
        self.ticks += 1;
        if self.ticks % 64 != 0 {
            return None;
        }
        if self.winner.load(Ordering::Relaxed) < self.index {
            return Some(ShardResult::Skipped);
        }
        if self.timed_out.load(Ordering::Relaxed)
            || self.query.deadline.is_some_and(|d| Instant::now() > d)
        {
            self.timed_out.store(true, Ordering::Relaxed);
            return Some(ShardResult::Interrupted);
        }
        None
    }
}

fn complete_freely(prefix: &mut Vec<u8>, used: u8, n: usize, ell: usize) -> bool {
    if prefix.len() == n {
        return is_reversal_canonical(prefix);
    }
    let top = (used as usize + 1).min(ell);
    for a in 0..top as u8 {
        prefix.push(a);
        if complete_freely(prefix, used.max(a + 1), n, ell) {
            return true;
        }
        prefix.pop();
    }
    false
}

fn dfs(ctx: &mut Ctx<'_>, prefix: &mut Vec<u8>, used: u8, frontier: &Frontier) -> ShardResult {
    let SearchQuery { n, k, ell, target, .. } = ctx.query;
    if let Some(stop) = ctx.should_stop() {
        return stop;
    }
    if prefix.len() == n {
        return if is_reversal_canonical(prefix) {
            ShardResult::Witness(prefix.clone())
        } else {
            ShardResult::Exhausted
        };
    }
    if frontier.is_empty() {
        let mut w = prefix.clone();
        return if complete_freely(&mut w, used, n, ell) {
            ShardResult::Witness(w)
        } else {
            ShardResult::Exhausted
        };
    }
    let remaining = n - prefix.len() - 1;
    let top = (used as usize + 1).min(ell);
    for a in 0..top as u8 {
        if let Step::Next(next) = frontier.step(k, a, remaining, target) {
            prefix.push(a);
            let r = dfs(ctx, prefix, used.max(a + 1), &next);
            prefix.pop();
            match r {
                ShardResult::Exhausted => {}
                other => return other,
            }
        }
    }
    ShardResult::Exhausted
}

fn make_shards(query: &SearchQuery) -> Vec<Shard> {
    let Step::Next(root) = Frontier::initial(query.k, query.n, query.target) else {
        return Vec::new();
    };
    let mut layer = vec![Shard {
        prefix: Vec::new(),
        used: 0,
        frontier: root,
    }];
    let wanted = 32 * query.jobs.max(1);
    while layer.len() < wanted {
        let mut grew = false;
        let mut next = Vec::with_capacity(layer.len() * query.ell);
        for shard in layer {
            let depth = shard.prefix.len();
            if shard.frontier.is_empty() || depth + 1 >= query.n {
                next.push(shard);
                continue;
            }
            grew = true;
            let top = (shard.used as usize + 1).min(query.ell);
            for a in 0..top as u8 {
                if let Step::Next(f) = shard.frontier.step(query.k, a, query.n - depth - 1, query.target) {
                    let mut prefix = shard.prefix.clone();
                    prefix.push(a);
                    next.push(Shard {
                        prefix,
                        used: shard.used.max(a + 1),
                        frontier: f,
                    });
                }
            }
        }
        layer = next;
        if !grew {
            break;
        }
    }
    layer
}

/// Looks for a length-`n` word with no k-tuplet of length `target`.
pub(crate) fn find_avoiding_word(query: SearchQuery) -> SearchOutcome {
    let shards = make_shards(&query);
    let winner = AtomicUsize::new(usize::MAX);
    let timed_out = AtomicBool::new(false);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(query.jobs.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<ShardResult> = pool.install(|| {
        shards
            .par_iter()
            .enumerate()
            .map(|(index, shard)| {
                if winner.load(Ordering::Relaxed) < index {
                    return ShardResult::Skipped;
                }
                let mut ctx = Ctx {
                    query,
                    index,
                    winner: &winner,
                    timed_out: &timed_out,
                    ticks: 0,
                };
                let mut prefix = shard.prefix.clone();
                let r = dfs(&mut ctx, &mut prefix, shard.used, &shard.frontier);
                if matches!(r, ShardResult::Witness(_)) {
                    winner.fetch_min(index, Ordering::Relaxed);
                }
                r
            })
            .collect()
    });
    let mut clean = true;
    for r in results {
        match r {
            ShardResult::Witness(word) => return SearchOutcome::Witness { word, first: clean },
            ShardResult::Exhausted => {}
            ShardResult::Interrupted => clean = false,
            ShardResult::Skipped => unreachable!("shards before the winner are never skipped"),
        }
    }
    if clean {
        SearchOutcome::Exhausted
    } else {
        SearchOutcome::Interrupted
    }
}
