use twinword::constructions::random_word;
use twinword::exact::{verify_tuplet, Verification};
use twinword::extraction::{
    extract_ktuplets_regular, extract_twins_regular, greedy_triples, pipeline, restrict_frequent, ExtractionParams,
};
use twinword::{parse_word, Alphabet, Epsilon, Error, Support, Word};

fn eps(t: u64) -> Epsilon {
    Epsilon::unit(t).unwrap()
}

fn valid(w: &Word, s: &[Support]) -> bool {
    matches!(verify_tuplet(w, s), Ok(Verification::Valid { .. }))
}

#[test]
fn greedy_example() {
    let w = parse_word("001101111010", Alphabet::binary()).unwrap();
    let t = greedy_triples(&w).unwrap();
    assert_eq!(t.len(), 4);
    assert!(valid(&w, &t.supports));
}

#[test]
fn twins_on_random_regular_words() {
    for seed in 0..20 {
        let w = random_word(5000, 2, seed).unwrap();
        let e = eps(8);
        if !twinword::regularity::check_regular(&w, e).unwrap().is_regular() {
            continue;
        }
        let t = extract_twins_regular(&w, e).unwrap();
        assert!(valid(&w, &t.supports));
        assert!(t.combined_len() as f64 >= 5000.0 * (1.0 - 5.0 / 8.0) - 2.0 * 5.0);
    }
}

#[test]
fn constant_word_with_full_alphabet() {
    let m = 1200;
    let w = Word::new(vec![0; m], Alphabet::new(3).unwrap()).unwrap();
    let t = extract_ktuplets_regular(&w, eps(10), 3).unwrap();
    assert!(valid(&w, &t.supports));
    assert!(t.common_word.letters().iter().all(|&l| l == 0));
    let bound = (m as f64 - 9.0 * 0.1 * m as f64) / 3.0;
    assert!(t.len() as f64 >= bound);
}

#[test]
fn binary_k_tuplets_with_two_members() {
    let w = random_word(6000, 2, 9).unwrap();
    let t = extract_ktuplets_regular(&w, eps(10), 2).unwrap();
    assert!(valid(&w, &t.supports));
    assert!(t.combined_len() as f64 >= 6000.0 * (1.0 - 0.6) - 2.0 * 5.0);
}

#[test]
fn restriction_examples() {
    let w = parse_word("0123401234", Alphabet::new(5).unwrap()).unwrap();
    let (f, back) = restrict_frequent(&w, 2).unwrap();
    assert_eq!(f.len(), 4);
    assert_eq!(w.extract(&back).unwrap().encode(), "0101");
    let skew = parse_word("0000000001234", Alphabet::new(5).unwrap()).unwrap();
    let (f, _) = restrict_frequent(&skew, 3).unwrap();
    assert!(f.len() >= (3 * skew.len()).div_ceil(5));
}

#[test]
fn pipeline_on_long_random_word() {
    let n = 100_000;
    let w = random_word(n, 2, 4).unwrap();
    let out = pipeline(&w, ExtractionParams::new(eps(10), 2)).unwrap();
    assert!(valid(&w, &out.tuplet.supports));
    assert!(out.regularization.partition.is_regular_partition());
    assert!(out.tuplet.combined_len() as f64 >= (1.0 - 0.6) * n as f64);
    assert!(out.tuplet.combined_len() as f64 >= out.guaranteed_len() - 2.0 * 7.0 * 10.0);
}

#[test]
fn pipeline_on_constant_word() {
    let n = 30_000;
    let w = Word::new(vec![0; n], Alphabet::binary()).unwrap();
    let out = pipeline(&w, ExtractionParams::new(eps(10), 2)).unwrap();
    assert!(out.tuplet.common_word.letters().iter().all(|&l| l == 0));
    assert!(out.tuplet.combined_len() as f64 >= 0.4 * n as f64);
}

#[test]
fn pipeline_with_large_alphabet_and_auto_epsilon() {
    let w = random_word(40_000, 5, 2).unwrap();
    let params = ExtractionParams {
        epsilon: eps(10),
        k: 3,
        auto_epsilon: Some(1.0),
    };
    let out = pipeline(&w, params).unwrap();
    assert!(out.back_map.is_some());
    assert!(out.epsilon.inverse_floor() >= 9);
    assert!(valid(&w, &out.tuplet.supports));
}

#[test]
fn pipeline_guards() {
    let w = random_word(8, 2, 0).unwrap();
    assert!(matches!(
        pipeline(&w, ExtractionParams::new(eps(10), 2)),
        Err(Error::EpsilonTooLarge(_))
    ));
    let w = random_word(1000, 3, 0).unwrap();
    assert!(matches!(
        pipeline(&w, ExtractionParams::new(eps(5), 3)),
        Err(Error::EpsilonTooLarge(_))
    ));
}
