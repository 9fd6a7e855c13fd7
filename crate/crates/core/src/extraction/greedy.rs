use crate::error::{Error, Result};
use crate::word::{Construction, Support, TupletResult, Word};

/// Twins of length `⌊n/3⌋` in a binary word.
///
/// Every block of three consecutive letters contains two equal letters; the
/// first goes to one twin and the second to the other.
///
/// ```
/// use twinword::{parse_word, Alphabet};
/// use twinword::extraction::greedy_triples;
/// let s = parse_word("001101111010", Alphabet::binary()).unwrap();
/// let t = greedy_triples(&s).unwrap();
/// assert_eq!(t.common_word.encode(), "0110");
/// ```
pub fn greedy_triples(word: &Word) -> Result<TupletResult> {
    if word.alphabet().size() != 2 {
        return Err(Error::UnsupportedAlphabet(format!(
            "greedy triples need a binary word, got {} letters",
            word.alphabet().size()
        )));
    }
    let s = word.letters();
    let mut a = Vec::with_capacity(s.len() / 3);
    let mut b = Vec::with_capacity(s.len() / 3);
    for (t, triple) in s.chunks_exact(3).enumerate() {
        let base = 3 * t + 1;
        let (i, j) = if triple[0] == triple[1] {
            (0, 1)
        } else if triple[0] == triple[2] {
            (0, 2)
        } else {
            (1, 2)
        };
        a.push(base + i);
        b.push(base + j);
    }
    TupletResult::from_supports(
        word,
        vec![Support::from_sorted_unchecked(a), Support::from_sorted_unchecked(b)],
        Construction::Greedy,
    )
}
