//! Canonical states of a left-to-right k-tuplet construction.
//!
//! While scanning a word, each of the `k` members has matched a prefix of the
//! common word `W`. Only the part of `W` beyond the slowest member matters for
//! the future, together with each member's offset into it. Members are
//! interchangeable, so offsets are kept sorted. A state is packed into a byte
//! string: `k` sorted offsets (the first is always 0) followed by the pending
//! letters, whose count equals the largest offset. The number of letters
//! already matched by every member, `c`, is stored next to the key.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

pub(crate) type Key = SmallVec<[u8; 32]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Action {
    Skip,
    /// The letter went to a member whose offset was this value.
    Assign(u8),
}

pub(crate) fn initial_key(k: usize) -> Key {
    SmallVec::from_elem(0, k)
}

/// Largest `x` with `Σ_j max(0, x − d_j) ≤ r`: an upper bound on how much
/// `c` can still grow with `r` letters left.
pub(crate) fn gain_bound(offsets: &[u8], r: usize) -> usize {
    let k = offsets.len();
    let mut prefix = 0usize;
    for j in 1..=k {
        prefix += offsets[j - 1] as usize;
        let x = (r + prefix) / j;
        if j == k || x <= offsets[j] as usize {
            return x;
        }
    }
    unreachable!()
}

/// Calls `emit(next_key, c_gain, action)` for every way to use `letter`.
#[inline]
pub(crate) fn successors(key: &Key, k: usize, letter: u8, mut emit: impl FnMut(Key, u8, Action)) {
    emit(key.clone(), 0, Action::Skip);
    let pending_len = key[k - 1] as usize;
    let mut j = 0;
    while j < k {
        let v = key[j];
        let mut last = j;
        while last + 1 < k && key[last + 1] == v {
            last += 1;
        }
        j = last + 1;
        let appends = v as usize == pending_len;
        if !appends && key[k + v as usize] != letter {
            continue;
        }
        if appends && pending_len >= u8::MAX as usize - 1 {
            continue;
        }
        let mut next = key.clone();
        if appends {
            next.push(letter);
        }
        next[last] = v + 1;
        let shift = next[0];
        if shift > 0 {
            for o in &mut next[..k] {
                *o -= shift;
            }
            next.drain(k..k + shift as usize);
        }
        emit(next, shift, Action::Assign(v));
    }
}

/// A set of states with the best `c` for each, pruned against a target.
#[derive(Debug, Clone, Default)]
pub(crate) struct Frontier {
    pub(crate) states: FxHashMap<Key, u8>,
}

pub(crate) enum Step {
    /// Some state already holds a tuplet of the target length.
    Found,
    Next(Frontier),
}

impl Frontier {
    pub(crate) fn initial(k: usize, remaining: usize, target: usize) -> Step {
        let mut f = Frontier::default();
        if target == 0 {
            return Step::Found;
        }
        let key = initial_key(k);
        if gain_bound(&key[..k], remaining) >= target {
            f.states.insert(key, 0);
        }
        Step::Next(f)
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Advances by one letter. `remaining` counts the letters after this one.
    pub(crate) fn step(&self, k: usize, letter: u8, remaining: usize, target: usize) -> Step {
        let mut next: FxHashMap<Key, u8> = FxHashMap::default();
        next.reserve(self.states.len() * 2);
        let mut found = false;
        for (key, &c) in &self.states {
            if found {
                break;
            }
            successors(key, k, letter, |nk, gain, _| {
                if found {
                    return;
                }
                let nc = c + gain;
                if nc as usize >= target {
                    found = true;
                    return;
                }
                if nc as usize + gain_bound(&nk[..k], remaining) < target {
                    return;
                }
                let slot = next.entry(nk).or_insert(nc);
                if *slot < nc {
                    *slot = nc;
                }
            });
        }
        if found {
            Step::Found
        } else {
            Step::Next(Frontier { states: next })
        }
    }
}
