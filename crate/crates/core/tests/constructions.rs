mod common;

use twinword::constructions::{
    alpha_h, alpha_root, block_word, existence_bound, expected_count, random_word, Count,
};
use twinword::exact::f_exact;

#[test]
fn pinned_random_word() {
    assert_eq!(random_word(10, 2, 20_231_014).unwrap().encode(), GOLDEN);
}

const GOLDEN: &str = "1011110010";

#[test]
fn random_letters_are_balanced() {
    let n = 1_000_000;
    let w = random_word(n, 4, 1).unwrap();
    let sd = (n as f64 * 0.25 * 0.75).sqrt();
    for c in w.counts() {
        assert!((c as f64 - n as f64 / 4.0).abs() <= 3.0 * sd, "{c}");
    }
}

#[test]
fn block_words_against_oracle() {
    for k in 0..=2 {
        let w = block_word(k).unwrap();
        assert_eq!(f_exact(&w, 2, None).unwrap().value(), Some(common::naive_f(w.letters(), 2)));
    }
    let w = block_word(3).unwrap();
    let f = f_exact(&w, 2, None).unwrap().value().unwrap();
    let n = w.len() as f64;
    assert!(2.0 * f as f64 <= n - n.ln());
}

#[test]
fn expectation_decreases_with_alphabet() {
    for ell in 2..6 {
        assert!(expected_count(40, 10, 2, ell + 1, Count::Ordered).unwrap() < expected_count(40, 10, 2, ell, Count::Ordered).unwrap());
    }
}

#[test]
fn existence_bound_tracks_alpha() {
    let s = alpha_root(2, 5, 1e-12).unwrap();
    let n = 10_000;
    let m = existence_bound(n, 2, 5).unwrap();
    let ratio = m as f64 / (s.alpha * n as f64);
    assert!((ratio - 1.0).abs() <= 0.02, "{ratio}");
    assert!(alpha_h(s.bracket.0, 2, 5) > 0.0 && alpha_h(s.bracket.1, 2, 5) <= 0.0);
}

#[test]
fn binary_twins_have_no_first_moment_bound() {
    assert_eq!(existence_bound(100, 2, 2).unwrap(), 51);
    assert!(!alpha_root(2, 2, 1e-9).unwrap().exists);
}
