mod common;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use twinword::constructions::{expected_count_exact, Count};
use twinword::exact::{f_exact, verify_tuplet, Verification};
use twinword::extraction::{greedy_triples, pipeline, restrict_frequent, ExtractionParams};
use twinword::regularity::index_of_lengths;
use twinword::{parse_word, Alphabet, Epsilon, Support, Word};

fn word_strategy(max_len: usize, ell: u32) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..ell, 0..=max_len)
        .prop_map(move |v| Word::new(v, Alphabet::new(ell).unwrap()).unwrap())
}

/// A word together with a composition of its length into positive parts.
fn partitioned(max_len: usize, ell: u32) -> impl Strategy<Value = (Word, Vec<usize>)> {
    (1..=max_len).prop_flat_map(move |n| {
        (
            prop::collection::vec(0..ell, n),
            prop::collection::vec(any::<bool>(), n - 1),
        )
            .prop_map(move |(letters, cuts)| {
                let mut parts = vec![1usize];
                for c in cuts {
                    if c {
                        parts.push(1);
                    } else {
                        *parts.last_mut().unwrap() += 1;
                    }
                }
                (Word::new(letters, Alphabet::new(ell).unwrap()).unwrap(), parts)
            })
    })
}

fn is_valid(word: &Word, supports: &[Support]) -> bool {
    matches!(verify_tuplet(word, supports), Ok(Verification::Valid { .. }))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn encoding_round_trip(w in word_strategy(60, 5)) {
        prop_assert_eq!(parse_word(&w.encode(), w.alphabet()).unwrap(), w.clone());
        prop_assert_eq!(w.extract(&Support::full(w.len())).unwrap(), w);
    }

    #[test]
    fn densities_sum_to_one(w in word_strategy(60, 4).prop_filter("non-empty", |w| !w.is_empty())) {
        let d = w.density().unwrap();
        let sum = d.ratios().into_iter().fold(num_rational::Ratio::<u64>::zero(), |a, b| a + b);
        prop_assert_eq!(sum, num_rational::Ratio::one());
    }

    #[test]
    fn refinement_never_lowers_index((w, parts) in partitioned(40, 3), merges in prop::collection::vec(any::<bool>(), 40)) {
        // coarsen by merging neighbours, then compare with the finer partition
        let mut coarse = vec![parts[0]];
        for (p, m) in parts[1..].iter().zip(&merges) {
            if *m { *coarse.last_mut().unwrap() += p } else { coarse.push(*p) }
        }
        let fine = index_of_lengths(&w, &parts).unwrap();
        let rough = index_of_lengths(&w, &coarse).unwrap();
        prop_assert!(fine >= rough);
        prop_assert!(fine <= BigRational::one() && rough > BigRational::zero());
    }

    #[test]
    fn f_is_invariant_under_renaming_and_reversal(w in word_strategy(12, 3), k in 2usize..=3) {
        let f = f_exact(&w, k, None).unwrap().value().unwrap();
        let renamed = Word::new(w.letters().iter().map(|&l| (l + 1) % 3).collect(), w.alphabet()).unwrap();
        prop_assert_eq!(f_exact(&renamed, k, None).unwrap().value().unwrap(), f);
        prop_assert_eq!(f_exact(&w.reversed(), k, None).unwrap().value().unwrap(), f);
        prop_assert!(f <= w.len() / k);
    }

    #[test]
    fn exact_solver_matches_oracle(w in word_strategy(9, 2), k in 2usize..=3) {
        prop_assert_eq!(f_exact(&w, k, None).unwrap().value().unwrap(), common::naive_f(w.letters(), k));
    }

    #[test]
    fn binary_twins_beat_greedy(w in word_strategy(40, 2)) {
        let g = greedy_triples(&w).unwrap();
        prop_assert_eq!(g.len(), w.len() / 3);
        prop_assert!(is_valid(&w, &g.supports));
        let f = f_exact(&w, 2, None).unwrap();
        prop_assert!(f.value().unwrap() >= w.len() / 3);
        prop_assert!(is_valid(&w, &f.witness.supports));
    }

    #[test]
    fn restriction_composes_back(w in word_strategy(200, 5)) {
        let (filtered, back) = restrict_frequent(&w, 2).unwrap();
        prop_assert!(5 * filtered.len() >= 2 * w.len());
        let g = twinword::extraction::greedy_triples(&filtered).unwrap();
        let lifted: Vec<Support> = g.supports.iter().map(|s| s.compose(&back).unwrap()).collect();
        prop_assert!(is_valid(&w, &lifted));
    }

    #[test]
    fn ln_expectation_is_concave(n in 6usize..30, k in 2usize..=3, ell in 2u32..=4) {
        let ln: Vec<f64> = (0..=n / k)
            .map(|m| {
                let e = expected_count_exact(n, m, k, ell, Count::Ordered).unwrap();
                let (num, den) = (e.numer().to_string(), e.denom().to_string());
                ln_big(&num) - ln_big(&den)
            })
            .collect();
        for t in ln.windows(3) {
            prop_assert!(t[0] + t[2] <= 2.0 * t[1] + 1e-9);
        }
    }
}

fn ln_big(digits: &str) -> f64 {
    let head: f64 = digits[..digits.len().min(15)].parse().unwrap();
    head.ln() + (digits.len().saturating_sub(15)) as f64 * std::f64::consts::LN_10
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn pipeline_output_is_valid(seed in any::<u64>(), ell in 2u32..=4, k in 2usize..=3) {
        let w = twinword::constructions::random_word(3000, ell, seed).unwrap();
        let t = (2 * (ell as usize).min(k) + k) as u64;
        let out = pipeline(&w, ExtractionParams::new(Epsilon::unit(t).unwrap(), k)).unwrap();
        prop_assert!(is_valid(&w, &out.tuplet.supports));
        prop_assert_eq!(out.tuplet.k, k);
    }
}
