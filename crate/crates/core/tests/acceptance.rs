//! End-to-end acceptance checks, one line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use twinword::constructions::{alpha_h, alpha_root, block_word, random_word};
use twinword::exact::{audit, f_exact, generate_table, verify_tuplet, SearchOptions, TableEntry, Verification};
use twinword::extraction::{extract_ktuplets_regular, extract_twins_regular, greedy_triples, BlockPlan};
use twinword::regularity::{check_regular, regularity_partition, RegularityParams};
use twinword::{Epsilon, Word};

type Outcome = (bool, String);

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn table_matches(table: &[TableEntry], expected: &[usize], exact_upto: usize) -> (bool, String) {
    let mut ok = table.len() == expected.len();
    let mut cells = Vec::new();
    for (e, &v) in table.iter().zip(expected) {
        let good = if e.n <= exact_upto { e.value() == Some(v) } else { e.contains(v) };
        ok &= good;
        cells.push(if e.is_exact() {
            format!("{}", e.lo)
        } else {
            format!("[{},{}]", e.lo, e.hi)
        });
    }
    (ok, cells.join(","))
}

fn verified(word: &Word, supports: &[twinword::Support]) -> bool {
    matches!(verify_tuplet(word, supports), Ok(Verification::Valid { .. }))
}

struct Tables {
    binary: Vec<TableEntry>,
    ternary: Vec<TableEntry>,
    extended: Vec<TableEntry>,
}

fn criterion_1(t: &Tables, elapsed: Duration) -> Outcome {
    let (ok, cells) = table_matches(&t.binary, &[2, 2, 2, 3, 3, 4, 4, 5, 5, 5, 6, 6], 14);
    let fast: Duration = t.binary.iter().filter(|e| e.n <= 14).map(|e| e.elapsed).sum();
    (
        ok && fast < Duration::from_secs(600),
        format!("f(6..17,2,2) = {cells}; n<=14 in {fast:?}, whole row in {elapsed:?}"),
    )
}

fn criterion_2(t: &Tables) -> Outcome {
    let (ok, cells) = table_matches(&t.ternary, &[1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4, 4], 11);
    (ok, format!("f(6..17,2,3) = {cells}"))
}

fn criterion_3(t: &Tables) -> Outcome {
    let ext: Vec<&TableEntry> = t.extended.iter().filter(|e| e.n >= 18).collect();
    let owned: Vec<TableEntry> = ext.into_iter().cloned().collect();
    let (ok, cells) = table_matches(&owned, &[7, 7, 8], 0);
    (ok, format!("f(18..20,2,2) = {cells}"))
}

fn criterion_4() -> Outcome {
    let mut fails = 0;
    let mut total = 0;
    for n in [30usize, 300, 3000] {
        for seed in 0..1000u64 {
            let w = random_word(n, 2, seed).unwrap();
            let t = greedy_triples(&w).unwrap();
            total += 1;
            if t.len() != n / 3 || !verified(&w, &t.supports) {
                fails += 1;
            }
        }
    }
    (fails == 0, format!("{} of {total} words give floor(n/3) verified twins", total - fails))
}

const CORPUS_N: usize = 10_000;
const CORPUS_SIZE: u64 = 100;

/// The seeded corpus: word `s` has `ℓ = 2 + s mod 3` letters.
fn corpus() -> Vec<Word> {
    (0..CORPUS_SIZE)
        .map(|s| random_word(CORPUS_N, 2 + (s % 3) as u32, 1_000 + s).unwrap())
        .collect()
}

fn criterion_5(corpus: &[Word]) -> Outcome {
    let mut report = Vec::new();
    let mut all = true;
    for t in [5u64, 10] {
        let eps = Epsilon::unit(t).unwrap();
        let (mut mass_ok, mut trace_ok, mut rounds_ok) = (0, 0, 0);
        let mut worst = 0usize;
        for w in corpus {
            let r = regularity_partition(w, RegularityParams::for_epsilon(eps)).unwrap();
            // independent re-check of every factor
            let irregular: usize = r
                .partition
                .factors
                .iter()
                .filter(|f| {
                    let fw = w.factor(f.start, f.end).unwrap();
                    !matches!(check_regular(&fw, eps), Ok(v) if v.is_regular())
                })
                .map(|f| f.len())
                .sum();
            worst = worst.max(irregular);
            if eps.admits_mass(irregular, w.len()) {
                mass_ok += 1;
            }
            let eps4 = eps.pow(4);
            let mut idx: Vec<_> = r.trace.rounds.iter().map(|x| x.index_before.clone()).collect();
            idx.push(r.trace.final_index.clone());
            if idx.windows(2).all(|p| p[1] >= &p[0] + &eps4) {
                trace_ok += 1;
            }
            let e = 1.0 / t as f64;
            let cap = (e.powi(-4)).min(2.0 * (t as f64).log2() / e.powi(3));
            if (r.trace.rounds.len() as f64) <= cap {
                rounds_ok += 1;
            }
        }
        let n = corpus.len();
        all &= mass_ok == n && trace_ok == n && rounds_ok == n;
        report.push(format!(
            "eps=1/{t}: mass ok {mass_ok}/{n} (worst {:.1}%), gain ok {trace_ok}/{n}, rounds ok {rounds_ok}/{n}",
            100.0 * worst as f64 / CORPUS_N as f64
        ));
    }
    (all, report.join("; "))
}

fn criterion_6(corpus: &[Word]) -> Outcome {
    let eps = Epsilon::unit(10).unwrap();
    let (mut tried, mut ok) = (0, 0);
    for w in corpus.iter().filter(|w| w.alphabet().size() == 2) {
        if !check_regular(w, eps).unwrap().is_regular() {
            continue;
        }
        tried += 1;
        let m = w.len() as f64;
        let blocks = eps.inverse_floor() - 3;
        let Ok(t) = extract_twins_regular(w, eps) else { continue };
        if verified(w, &t.supports) && t.combined_len() as f64 >= (1.0 - 5.0 * eps.to_f64()) * m - 2.0 * blocks as f64 {
            ok += 1;
        }
    }
    (tried > 0 && ok == tried, format!("{ok} of {tried} regular binary words meet the twin bound"))
}

fn criterion_7(corpus: &[Word]) -> Outcome {
    let mut lines = Vec::new();
    let mut all = true;
    for k in 2..=4usize {
        for ell in 2..=k {
            let t = 10.max(2 * ell + k) as u64;
            let eps = Epsilon::unit(t).unwrap();
            let (mut tried, mut ok) = (0, 0);
            for w in corpus.iter().filter(|w| w.alphabet().size() as usize == ell) {
                if !check_regular(w, eps).unwrap().is_regular() {
                    continue;
                }
                tried += 1;
                let Ok(tup) = extract_ktuplets_regular(w, eps, k) else { continue };
                let blocks = tup_blocks(w, eps, k);
                let m = w.len() as f64;
                let bound = m - 3.0 * ell as f64 * eps.to_f64() * m - (k * blocks) as f64;
                if verified(w, &tup.supports) && (k * tup.len()) as f64 >= bound {
                    ok += 1;
                }
            }
            all &= tried > 0 && ok == tried;
            lines.push(format!("(k={k},l={ell},eps=1/{t}) {ok}/{tried}"));
        }
    }
    (all, lines.join(", "))
}

fn tup_blocks(w: &Word, eps: Epsilon, k: usize) -> usize {
    let plan: BlockPlan = twinword::extraction::ktuplets_plan(w, eps, k).unwrap();
    plan.blocks_per_member()
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let w = block_word(2).unwrap();
    let v = f_exact(&w, 2, None).unwrap();
    let oracle = common::naive_f(w.letters(), 2);
    let n = w.len() as f64;
    let ok = v.value() == Some(oracle) && 2.0 * oracle as f64 <= n - n.log2();
    let el = start.elapsed();
    (
        ok && el < Duration::from_secs(1),
        format!(
            "f(1^9 0^3 1, 2) = {:?}, oracle {oracle}, 2V = {}, n - log2 n = {:.3}, n - ln n = {:.3}, {el:?}",
            v.value(),
            2 * oracle,
            n - n.log2(),
            n - n.ln()
        ),
    )
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let s = alpha_root(2, 5, 1e-9).unwrap();
    let el = start.elapsed();
    let ok = s.exists && s.alpha > 0.45 && s.alpha < 0.49 && alpha_h(0.45, 2, 5) > 0.0;
    (
        ok && el < Duration::from_secs(1),
        format!("alpha(2,5) = {:.9}, h(0.45) = {:.4}, {el:?}", s.alpha, alpha_h(0.45, 2, 5)),
    )
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut bad = 0;
    for (ell, max_n) in [(2u32, 8usize), (3, 6)] {
        for n in 1..=max_n {
            for letters in common::all_words(n, ell) {
                let w = Word::new(letters.clone(), twinword::Alphabet::new(ell).unwrap()).unwrap();
                for k in [2, 3] {
                    total += 1;
                    if f_exact(&w, k, None).unwrap().value() != Some(common::naive_f(&letters, k)) {
                        bad += 1;
                    }
                }
            }
        }
    }
    let el = start.elapsed();
    (
        bad == 0 && el < Duration::from_secs(300),
        format!("{} of {total} (word, k) pairs agree, {el:?}", total - bad),
    )
}

fn criterion_11(t: &Tables) -> Outcome {
    let mut v = 0;
    for table in [&t.binary, &t.ternary, &t.extended] {
        v += audit(table).len();
    }
    (v == 0, format!("{v} violations over {} cells", t.binary.len() + t.ternary.len() + t.extended.len()))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let (ok, detail) = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        (false, format!("panicked: {msg}"))
    });
    println!(
        "{name}: {} ({detail}) [{:.1}s]",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    ok
}

fn main() -> ExitCode {
    let start = Instant::now();
    let binary = generate_table(6..=17, 2, 2, opts()).unwrap();
    let binary_elapsed = start.elapsed();
    let tables = Tables {
        binary,
        ternary: generate_table(6..=17, 2, 3, opts()).unwrap(),
        extended: generate_table(6..=20, 2, 2, opts()).unwrap(),
    };
    let corpus = corpus();
    let results = [
        run("criterion 1 (binary table)", || criterion_1(&tables, binary_elapsed)),
        run("criterion 2 (ternary table)", || criterion_2(&tables)),
        run("criterion 3 (extended binary cells)", || criterion_3(&tables)),
        run("criterion 4 (greedy baseline)", criterion_4),
        run("criterion 5 (regularity partition)", || criterion_5(&corpus)),
        run("criterion 6 (twin extraction)", || criterion_6(&corpus)),
        run("criterion 7 (k-tuplet extraction)", || criterion_7(&corpus)),
        run("criterion 8 (block word)", criterion_8),
        run("criterion 9 (alpha root)", criterion_9),
        run("criterion 10 (oracle equivalence)", criterion_10),
        run("criterion 11 (superadditivity audit)", || criterion_11(&tables)),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
