//! `f(S, k)`: the longest k-tuplet of a single word.

use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;

use super::frontier::{gain_bound, initial_key, successors, Action, Key};
use crate::error::{Error, Result};
use crate::word::{Construction, Support, TupletResult, Word};

/// Result of [`f_exact`]. When the budget ran out, `lo < hi` and the witness
/// has length `lo`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactValue {
    pub lo: usize,
    pub hi: usize,
    pub witness: TupletResult,
    pub elapsed: Duration,
    pub states: u64,
}

impl ExactValue {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.lo)
    }
}

struct Node {
    c: u16,
    parent: u32,
    action: Action,
}

pub(crate) fn check_query(word: &Word, k: usize) -> Result<()> {
    if k < 2 || k > 64 {
        return Err(Error::InvalidParams(format!("k = {k} must be in 2..=64")));
    }
    if word.alphabet().size() > 255 {
        return Err(Error::UnsupportedAlphabet(
            "exact search supports at most 255 letters".into(),
        ));
    }
    Ok(())
}

/// Computes `f(S, k)` exactly by a pruned dynamic program over canonical
/// frontier states.
///
/// States whose optimistic completion cannot beat the best tuplet seen so far
/// are discarded, and states with equal frontiers keep only the larger count,
/// so the search is complete: the witness has length `f(S, k)` and no state
/// able to reach `f(S, k) + 1` was dropped. With a `budget`, the scan stops
/// at the first position past the deadline and reports an interval.
///
/// ```
/// use twinword::{parse_word, Alphabet};
/// use twinword::exact::f_exact;
/// let s = parse_word("001011", Alphabet::binary()).unwrap();
/// assert_eq!(f_exact(&s, 2, None).unwrap().value(), Some(2));
/// ```
pub fn f_exact(word: &Word, k: usize, budget: Option<Duration>) -> Result<ExactValue> {
    check_query(word, k)?;
    let start = Instant::now();
    let deadline = budget.map(|b| start + b);
    let n = word.len();
    let letters: Vec<u8> = word.letters().iter().map(|&l| l as u8).collect();

    // layers[p] holds the states after the first p letters, keys[.] those of the last layer
    let mut layers: Vec<Vec<Node>> = Vec::with_capacity(n + 1);
    layers.push(vec![Node {
        c: 0,
        parent: u32::MAX,
        action: Action::Skip,
    }]);
    let mut keys: Vec<Key> = vec![initial_key(k)];
    // (value, layer, slot) of the best state seen so far
    let mut best = (0usize, 0usize, 0u32);
    let mut states = 1u64;
    let mut interrupted_hi = None;

    for (pos, &letter) in letters.iter().enumerate() {
        if deadline.is_some_and(|d| Instant::now() > d) {
            let r = n - pos;
            let hi = keys
                .iter()
                .zip(&layers[pos])
                .map(|(key, node)| node.c as usize + gain_bound(&key[..k], r))
                .max()
                .unwrap_or(0)
                .clamp(best.0, n / k);
            interrupted_hi = Some(hi);
            break;
        }
        let remaining = n - pos - 1;
        let floor = best.0;
        let mut index: FxHashMap<Key, u32> = FxHashMap::default();
        let mut nodes: Vec<Node> = Vec::new();
        let mut next_keys: Vec<Key> = Vec::new();
        let prev = &layers[pos];
        for (idx, key) in keys.iter().enumerate() {
            let c = prev[idx].c;
            successors(key, k, letter, |nk, gain, action| {
                let nc = c + gain as u16;
                if nc as usize + gain_bound(&nk[..k], remaining) <= floor {
                    return;
                }
                let node = Node { c: nc, parent: idx as u32, action };
                match index.get(&nk) {
                    Some(&slot) => {
                        if nodes[slot as usize].c < nc {
                            nodes[slot as usize] = node;
                        }
                    }
                    None => {
                        index.insert(nk.clone(), nodes.len() as u32);
                        nodes.push(node);
                        next_keys.push(nk);
                    }
                }
            });
        }
        if let Some((slot, node)) = nodes.iter().enumerate().max_by_key(|(i, nd)| (nd.c, std::cmp::Reverse(*i))) {
            if node.c as usize > best.0 {
                best = (node.c as usize, pos + 1, slot as u32);
            }
        }
        states += nodes.len() as u64;
        layers.push(nodes);
        keys = next_keys;
    }

    let witness = reconstruct(word, k, &layers, best)?;
    let (lo, hi) = (best.0, interrupted_hi.unwrap_or(best.0));
    Ok(ExactValue {
        lo,
        hi,
        witness,
        elapsed: start.elapsed(),
        states,
    })
}

fn reconstruct(word: &Word, k: usize, layers: &[Vec<Node>], best: (usize, usize, u32)) -> Result<TupletResult> {
    let (value, layer, slot) = best;
    let mut actions = Vec::with_capacity(layer);
    let (mut l, mut s) = (layer, slot);
    while l > 0 {
        let node = &layers[l][s as usize];
        actions.push(node.action);
        s = node.parent;
        l -= 1;
    }
    actions.reverse();
    let mut matched = vec![0usize; k];
    let mut supports: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (pos, action) in actions.into_iter().enumerate() {
        if let Action::Assign(v) = action {
            let low = *matched.iter().min().unwrap();
            let j = matched
                .iter()
                .position(|&m| m - low == v as usize)
                .expect("replayed offset exists");
            matched[j] += 1;
            supports[j].push(pos + 1);
        }
    }
    let supports = supports
        .into_iter()
        .map(|mut s| {
            s.truncate(value);
            Support::from_sorted_unchecked(s)
        })
        .collect();
    TupletResult::from_supports(word, supports, Construction::Exact)
}
