use twinword::constructions::random_word;
use twinword::regularity::{
    check_regular, partition_index, regularity_partition, FactorPartition, RegularityParams, Verdict,
};
use twinword::{parse_word, Alphabet, Epsilon, Error, Word};

fn eps(t: u64) -> Epsilon {
    Epsilon::unit(t).unwrap()
}

/// Brute-force reading of the definition with floating point kept out.
fn naive_regular(w: &Word, eps: Epsilon) -> bool {
    let n = w.len();
    let (p, q) = (eps.numer() as usize, eps.denom() as usize);
    let width = p * n / q;
    let lo = (p * n).div_ceil(q) + 1;
    let hi = (n + 1).saturating_sub((2 * p * n).div_ceil(q));
    let counts = w.counts();
    for i in lo..=hi {
        let win = w.factor(i, i + width - 1).unwrap().counts();
        for (c, wc) in counts.iter().zip(&win) {
            // |c/n - wc/width| < p/q
            let lhs = (*c as i128 * width as i128 - *wc as i128 * n as i128).abs() * q as i128;
            if lhs >= (p * n * width) as i128 {
                return false;
            }
        }
    }
    true
}

#[test]
fn checker_agrees_with_definition() {
    for seed in 0..200 {
        let ell = 2 + (seed % 3) as u32;
        let n = 20 + (seed as usize * 7) % 180;
        let w = random_word(n, ell, seed).unwrap();
        for t in [3u64, 5, 10] {
            if n < t as usize {
                continue;
            }
            let v = check_regular(&w, eps(t)).unwrap();
            assert_eq!(v.is_regular(), naive_regular(&w, eps(t)), "seed {seed} t {t}");
        }
    }
}

#[test]
fn witness_is_first_violation() {
    let w = parse_word("0000011111", Alphabet::binary()).unwrap();
    let Verdict::Irregular(x) = check_regular(&w, Epsilon::new(1, 5).unwrap()).unwrap() else {
        panic!("expected a violation");
    };
    assert_eq!((x.window_start, x.letter, x.window_len), (3, 0, 2));
}

#[test]
fn random_binary_partition_is_regular() {
    let w = random_word(10_000, 2, 11).unwrap();
    let r = regularity_partition(&w, RegularityParams { epsilon: eps(5), t0: 5 }).unwrap();
    let irregular: usize = r
        .partition
        .factors
        .iter()
        .filter(|f| !check_regular(&w.factor(f.start, f.end).unwrap(), eps(5)).is_ok_and(|v| v.is_regular()))
        .map(|f| f.len())
        .sum();
    assert!(irregular <= 2000);
    r.partition.validate().unwrap();
}

#[test]
fn trace_increments_and_json() {
    let w = random_word(20_000, 3, 5).unwrap();
    let r = regularity_partition(&w, RegularityParams::for_epsilon(eps(6))).unwrap();
    let mut idx: Vec<_> = r.trace.rounds.iter().map(|x| x.index_before.clone()).collect();
    idx.push(r.trace.final_index.clone());
    for p in idx.windows(2) {
        assert!(p[1] >= &p[0] + eps(6).pow(4));
    }
    assert_eq!(r.trace.final_index, partition_index(&r.partition).unwrap());
    let j = serde_json::to_value(r.to_json()).unwrap();
    assert_eq!(j["n"], 20_000);
    assert_eq!(j["epsilon"], "1/6");
    assert!(j["factors"][0]["densities"].as_array().unwrap().len() == 3);
}

#[test]
fn partition_rejects_bad_input() {
    let w = parse_word("0101", Alphabet::binary()).unwrap();
    assert!(matches!(
        regularity_partition(&w, RegularityParams::for_epsilon(eps(5))),
        Err(Error::TooShort { .. })
    ));
    assert!(FactorPartition::from_lengths(&w, eps(2), &[2, 1]).is_err());
    assert!(FactorPartition::from_lengths(&w, eps(2), &[2, 0, 2]).is_err());
}
