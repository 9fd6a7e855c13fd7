//! `f(n, k, ℓ)`: the minimum of `f(S, k)` over all words of length `n`.

use std::time::{Duration, Instant};

use serde::Serialize;

use super::search::{canonical_letters, find_avoiding_word, SearchOutcome, SearchQuery};
use super::solve::f_exact;
use crate::error::{Error, Result};
use crate::word::{Alphabet, TupletJson, TupletResult, Word};

/// How the bounds of a [`TableEntry`] were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// The search ran to completion; `lo == hi`.
    Exhaustive,
    /// The budget ran out. `hi` is `f(W, k)` for the witness word `W` (or
    /// `⌊n/k⌋`), `lo` is the best certified lower bound.
    Interrupted,
}

/// One cell of an `f(n, k, ℓ)` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub lo: usize,
    pub hi: usize,
    /// A word attaining `hi`, together with a longest tuplet in it.
    pub witness: Option<(Word, TupletResult)>,
    pub elapsed: Duration,
    pub provenance: Provenance,
}

impl TableEntry {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<usize> {
        self.is_exact().then_some(self.lo)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// `elapsed_ms` is reported as 0 when `timing` is false.
    pub fn to_json(&self, timing: bool) -> TableEntryJson {
        TableEntryJson {
            n: self.n,
            k: self.k,
            ell: self.ell,
            lo: self.lo,
            hi: self.hi,
            exact: self.is_exact(),
            witness: self.witness.as_ref().map(|(w, _)| w.encode()),
            tuplet: self.witness.as_ref().map(|(_, t)| t.to_json()),
            elapsed_ms: if timing { self.elapsed.as_millis() as u64 } else { 0 },
            provenance: self.provenance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableEntryJson {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub lo: usize,
    pub hi: usize,
    pub exact: bool,
    pub witness: Option<String>,
    pub tuplet: Option<TupletJson>,
    pub elapsed_ms: u64,
    pub provenance: Provenance,
}

/// Options for [`f_min_over_words`] and [`generate_table`].
#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Wall-clock budget per table cell.
    pub budget: Option<Duration>,
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            jobs: rayon::current_num_threads(),
        }
    }
}

fn check_params(n: usize, k: usize, ell: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    if !(2..=64).contains(&k) {
        return Err(Error::InvalidParams(format!("k = {k} must be in 2..=64")));
    }
    if !(2..=255).contains(&ell) {
        return Err(Error::InvalidParams(format!("ell = {ell} must be in 2..=255")));
    }
    if n > 255 {
        return Err(Error::Size(format!("n = {n} exceeds the exhaustive search limit 255")));
    }
    Ok(())
}

/// Every word has a letter occurring `⌈n/ℓ⌉` times, and a constant word of
/// length `c` holds a k-tuplet of length `⌊c/k⌋`.
pub fn pigeonhole_bound(n: usize, k: usize, ell: usize) -> usize {
    n.div_ceil(ell) / k
}

struct Known {
    lo: usize,
    upper: Option<(Word, TupletResult)>,
}

fn to_word(letters: &[u8], ell: usize) -> Result<Word> {
    Word::new(
        letters.iter().map(|&l| l as u32).collect(),
        Alphabet::new(ell as u32)?,
    )
}

fn evaluate(word: Word, k: usize) -> Result<(Word, TupletResult)> {
    let v = f_exact(&word, k, None)?;
    Ok((word, v.witness))
}

fn solve_cell(n: usize, k: usize, ell: usize, known: Known, opts: SearchOptions) -> Result<TableEntry> {
    let start = Instant::now();
    let deadline = opts.budget.map(|b| start + b);
    let mut lo = known.lo.max(pigeonhole_bound(n, k, ell));
    let mut upper = known.upper;
    let hi_of = |u: &Option<(Word, TupletResult)>| u.as_ref().map_or(n / k, |(_, t)| t.len());
    let mut interrupted = false;
    // Walk down from the best known upper bound: each round either finds a
    // word with a shorter longest tuplet or proves the current one optimal.
    while lo < hi_of(&upper) {
        let target = hi_of(&upper);
        let query = SearchQuery {
            n,
            k,
            ell,
            target,
            deadline,
            jobs: opts.jobs,
        };
        match find_avoiding_word(query) {
            SearchOutcome::Witness { word, .. } => {
                upper = Some(evaluate(to_word(&word, ell)?, k)?);
            }
            SearchOutcome::Exhausted => {
                lo = target;
            }
            SearchOutcome::Interrupted => {
                interrupted = true;
                break;
            }
        }
    }
    let hi = hi_of(&upper);
    if upper.is_none() && !interrupted {
        // lo reached ⌊n/k⌋ and no word is on record yet: any word attains it.
        let query = SearchQuery {
            n,
            k,
            ell,
            target: hi + 1,
            deadline: None,
            jobs: opts.jobs,
        };
        if let SearchOutcome::Witness { word, .. } = find_avoiding_word(query) {
            upper = Some(evaluate(to_word(&word, ell)?, k)?);
        }
    }
    Ok(TableEntry {
        n,
        k,
        ell,
        lo,
        hi,
        witness: upper,
        elapsed: start.elapsed(),
        provenance: if interrupted {
            Provenance::Interrupted
        } else {
            Provenance::Exhaustive
        },
    })
}

/// Computes `f(n, k, ℓ)` by exhaustive search over canonical words.
///
/// Words are taken up to renaming of letters and reversal. The reported
/// witness word is first-occurrence canonical; when the search completes it is
/// the same for every number of jobs. With a budget the entry may be an
/// interval, flagged [`Provenance::Interrupted`].
///
/// ```
/// use twinword::exact::{f_min_over_words, SearchOptions};
/// let e = f_min_over_words(6, 2, 2, SearchOptions::default()).unwrap();
/// assert_eq!(e.value(), Some(2));
/// ```
pub fn f_min_over_words(n: usize, k: usize, ell: usize, opts: SearchOptions) -> Result<TableEntry> {
    check_params(n, k, ell)?;
    solve_cell(n, k, ell, Known { lo: 0, upper: None }, opts)
}

/// Builds the table `f(n, k, ℓ)` for `n` in `ns`, in increasing order.
///
/// Each cell starts from certified bounds carried over from the previous one,
/// a lower bound of `f(n - 1)` and the best one-letter extension of the
/// previous witness word as an upper bound, so only the final search step is
/// repeated per row.
pub fn generate_table(
    ns: std::ops::RangeInclusive<usize>,
    k: usize,
    ell: usize,
    opts: SearchOptions,
) -> Result<Vec<TableEntry>> {
    let mut out: Vec<TableEntry> = Vec::new();
    for n in ns {
        check_params(n, k, ell)?;
        let mut known = Known { lo: 0, upper: None };
        if let Some(prev) = out.last().filter(|p| p.n + 1 == n) {
            known.lo = prev.lo;
            if let Some((w, _)) = &prev.witness {
                for a in 0..ell as u32 {
                    let mut letters = w.letters().to_vec();
                    letters.push(a);
                    let cand = evaluate(Word::new(letters, w.alphabet())?, k)?;
                    if known.upper.as_ref().is_none_or(|(_, t)| cand.1.len() < t.len()) {
                        known.upper = Some(cand);
                    }
                }
            }
        }
        let mut entry = solve_cell(n, k, ell, known, opts)?;
        if let Some((w, t)) = entry.witness.take() {
            entry.witness = Some(canonical_witness(w, t, k)?);
        }
        out.push(entry);
    }
    Ok(out)
}

fn canonical_witness(w: Word, t: TupletResult, k: usize) -> Result<(Word, TupletResult)> {
    let letters: Vec<u8> = w.letters().iter().map(|&l| l as u8).collect();
    let canon = canonical_letters(&letters);
    if canon == letters {
        return Ok((w, t));
    }
    evaluate(to_word(&canon, w.alphabet().size() as usize)?, k)
}

/// A cross-check failure found by [`audit`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// `f(n) < ⌊n/m⌋ · f(m)`.
    Superadditivity { n: usize, m: usize },
    /// `f(n + 1) < f(n)`.
    Monotonicity { n: usize },
}

/// Checks superadditivity `f(n) ≥ ⌊n/m⌋ f(m)` and monotonicity in `n` on a
/// table with a single `k` and `ℓ`. For interval cells only certain
/// violations are reported, i.e. those that hold for every value in the
/// intervals.
pub fn audit(table: &[TableEntry]) -> Vec<Violation> {
    let mut out = Vec::new();
    for e in table {
        for m in table.iter().filter(|m| m.n <= e.n) {
            if e.hi < (e.n / m.n) * m.lo {
                out.push(Violation::Superadditivity { n: e.n, m: m.n });
            }
        }
        if let Some(next) = table.iter().find(|x| x.n == e.n + 1) {
            if next.hi < e.lo {
                out.push(Violation::Monotonicity { n: e.n });
            }
        }
    }
    out
}

/// Renders a table as CSV with columns
/// `n,k,ell,lo,hi,exact,witness,elapsed_ms`.
pub fn table_csv(table: &[TableEntry], timing: bool) -> String {
    let mut s = String::from("n,k,ell,lo,hi,exact,witness,elapsed_ms\n");
    for e in table {
        let j = e.to_json(timing);
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            j.n,
            j.k,
            j.ell,
            j.lo,
            j.hi,
            j.exact,
            j.witness.unwrap_or_default(),
            j.elapsed_ms
        ));
    }
    s
}
