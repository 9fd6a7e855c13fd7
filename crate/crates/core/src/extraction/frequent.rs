use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Support, Word};

/// Keeps the positions holding one of the `k` most frequent letters.
///
/// Ties in frequency go to the smaller letter code. The kept letters are
/// recoded `0..k` by decreasing frequency, and `back_map` lists the host
/// position of each kept letter, so `support.compose(&back_map)` carries a
/// support of the filtered word back to the host.
///
/// ```
/// use twinword::{parse_word, Alphabet};
/// use twinword::extraction::restrict_frequent;
/// let s = parse_word("0123401234", Alphabet::new(5).unwrap()).unwrap();
/// let (w, back) = restrict_frequent(&s, 2).unwrap();
/// assert_eq!(w.encode(), "0101");
/// assert_eq!(back.indices(), &[1, 2, 6, 7]);
/// ```
pub fn restrict_frequent(word: &Word, k: usize) -> Result<(Word, Support)> {
    let ell = word.alphabet().size() as usize;
    if k < 2 || ell <= k {
        return Err(Error::WrongRegime(format!(
            "restricting to the {k} most frequent letters needs an alphabet larger than {k}, got {ell}"
        )));
    }
    let counts = word.counts();
    let mut order: Vec<usize> = (0..ell).collect();
    order.sort_by_key(|&q| (std::cmp::Reverse(counts[q]), q));
    let mut code = vec![None; ell];
    for (rank, &q) in order.iter().take(k).enumerate() {
        code[q] = Some(rank as Letter);
    }
    let mut letters = Vec::new();
    let mut back = Vec::new();
    for (i, &q) in word.letters().iter().enumerate() {
        if let Some(c) = code[q as usize] {
            letters.push(c);
            back.push(i + 1);
        }
    }
    Ok((
        Word::from_parts_unchecked(letters, Alphabet::new(k as u32)?),
        Support::from_sorted_unchecked(back),
    ))
}
