//! Independent reference implementations used as oracles.
#![allow(dead_code)]

/// Longest k-tuplet by trying every assignment of positions to members
/// (or to none).
pub fn naive_f(word: &[u32], k: usize) -> usize {
    let n = word.len();
    let mut assign = vec![0usize; n];
    let mut best = 0;
    loop {
        let mut members: Vec<Vec<u32>> = vec![Vec::new(); k];
        for (i, &a) in assign.iter().enumerate() {
            if a > 0 {
                members[a - 1].push(word[i]);
            }
        }
        if members.iter().all(|m| *m == members[0]) {
            best = best.max(members[0].len());
        }
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            assign[i] += 1;
            if assign[i] <= k {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// All words of length `n` over `ell` letters, in lexicographic order.
pub fn all_words(n: usize, ell: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..ell).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

/// Minimum of [`naive_f`] over all words.
pub fn naive_f_min(n: usize, k: usize, ell: u32) -> usize {
    all_words(n, ell).iter().map(|w| naive_f(w, k)).min().unwrap_or(0)
}
