use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use twinword::constructions::{alpha_root, block_word, existence_bound, random_word, EXACT_BOUND_LIMIT};
use twinword::exact::{audit, f_exact, generate_table, table_csv, SearchOptions, TableEntryJson};
use twinword::extraction::{
    extract_ktuplets_regular, extract_twins_regular, greedy_triples, pipeline, ExtractionParams, Extractor,
};
use twinword::regularity::{regularity_partition, RegularityParams};
use twinword::word::infer_alphabet;
use twinword::{parse_word_file, Alphabet, Epsilon, TupletResult, Word};

use crate::args::{Construct, EpsilonArgs, ExactArgs, Format, Global, Input, TupletMethod, TwinMethod};
use crate::failure::Failure;
use crate::output::json;

/// A finished report and whether it contains interval results.
pub struct Report {
    pub text: String,
    pub has_intervals: bool,
}

impl From<String> for Report {
    fn from(text: String) -> Self {
        Report {
            text,
            has_intervals: false,
        }
    }
}

fn read_words(input: &Input) -> Result<Vec<Word>, Failure> {
    let text = match (&input.input, &input.word) {
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| Failure::new(1, format!("cannot read {}: {e}", path.display())))?,
        (None, Some(w)) => w.clone(),
        (None, None) => return Err(Failure::new(2, "give --input or --word")),
    };
    let alphabet = match input.ell {
        Some(ell) => Alphabet::new(ell)?,
        None => infer_alphabet(&text),
    };
    let words = parse_word_file(&text, alphabet)?;
    if words.is_empty() && input.word.is_some() {
        return Ok(vec![Word::empty(alphabet)]);
    }
    if words.is_empty() {
        return Err(Failure::new(4, "the input contains no words"));
    }
    Ok(words)
}

/// One JSON value per word, or an array when there are several.
fn json_list<T: Serialize>(items: &[T]) -> Result<String, Failure> {
    match items {
        [one] => json(one),
        many => json(&many),
    }
}

fn checked(t: TupletResult, host: &Word) -> Result<TupletResult, Failure> {
    t.validate(host)?;
    Ok(t)
}

fn tuplet_text(t: &TupletResult) -> String {
    let mut s = format!(
        "k = {}, length = {}, construction = {}\ncommon word: {}\n",
        t.k,
        t.len(),
        t.construction.as_str(),
        t.common_word
    );
    for (i, sup) in t.supports.iter().enumerate() {
        let pos: Vec<String> = sup.indices().iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "member {}: {}", i + 1, pos.join(" "));
    }
    s
}

fn tuplet_csv(ts: &[TupletResult]) -> String {
    let mut s = String::from("word,member,positions\n");
    for (w, t) in ts.iter().enumerate() {
        for (i, sup) in t.supports.iter().enumerate() {
            let pos: Vec<String> = sup.indices().iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "{},{},{}", w + 1, i + 1, pos.join(" "));
        }
    }
    s
}

fn tuplets_report(ts: &[TupletResult], format: Format) -> Result<Report, Failure> {
    Ok(match format {
        Format::Json => json_list(&ts.iter().map(TupletResult::to_json).collect::<Vec<_>>())?,
        Format::Csv => tuplet_csv(ts),
        Format::Text => ts.iter().map(tuplet_text).collect::<Vec<_>>().join("\n"),
    }
    .into())
}

pub fn regularize(input: &Input, epsilon: Epsilon, t0: Option<usize>, g: &Global) -> Result<Report, Failure> {
    let words = read_words(input)?;
    let params = RegularityParams {
        epsilon,
        t0: t0.unwrap_or_else(|| epsilon.inverse_ceil()),
    };
    let regs = words
        .iter()
        .map(|w| regularity_partition(w, params))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match g.format {
        Format::Json => json_list(&regs.iter().map(|r| r.to_json()).collect::<Vec<_>>())?,
        Format::Csv => {
            let mut s = String::from("word,start,end,regular,densities\n");
            for (i, r) in regs.iter().enumerate() {
                for f in &r.partition.factors {
                    let _ = writeln!(s, "{},{},{},{},{}", i + 1, f.start, f.end, f.regular, f.density.to_strings().join(" "));
                }
            }
            s
        }
        Format::Text => regs
            .iter()
            .map(|r| {
                let p = &r.partition;
                let mut s = format!(
                    "n = {}, epsilon = {}, factors = {}, irregular mass = {}, rounds = {}, converged = {}\nfinal index = {}\n",
                    p.host.len(),
                    p.epsilon,
                    p.factors.len(),
                    p.irregular_mass(),
                    r.trace.rounds.len(),
                    r.trace.converged,
                    twinword::epsilon::format_ratio(&r.trace.final_index)
                );
                for f in &p.factors {
                    let _ = writeln!(
                        s,
                        "{}..{} {} [{}]",
                        f.start,
                        f.end,
                        if f.regular { "regular" } else { "irregular" },
                        f.density.to_strings().join(" ")
                    );
                }
                s
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
    .into())
}

fn params(eps: &EpsilonArgs, k: usize) -> ExtractionParams {
    ExtractionParams {
        epsilon: eps.epsilon,
        k,
        auto_epsilon: eps.auto_epsilon,
    }
}

pub fn twins(input: &Input, eps: &EpsilonArgs, method: TwinMethod, g: &Global) -> Result<Report, Failure> {
    let words = read_words(input)?;
    let p = params(eps, 2);
    let ts = words
        .iter()
        .map(|w| {
            let t = match method {
                TwinMethod::Greedy => greedy_triples(w)?,
                TwinMethod::Regular => {
                    let e = p.resolve_epsilon(w.len(), 2, Extractor::Claim1)?;
                    extract_twins_regular(w, e)?
                }
                TwinMethod::Pipeline => pipeline(w, p)?.tuplet,
            };
            checked(t, w)
        })
        .collect::<Result<Vec<_>, _>>()?;
    tuplets_report(&ts, g.format)
}

pub fn ktuplets(input: &Input, eps: &EpsilonArgs, k: usize, method: TupletMethod, g: &Global) -> Result<Report, Failure> {
    let words = read_words(input)?;
    let p = params(eps, k);
    let ts = words
        .iter()
        .map(|w| {
            let t = match method {
                TupletMethod::Regular => {
                    let ell = w.alphabet().size() as usize;
                    let e = p.resolve_epsilon(w.len(), ell, Extractor::Thm2)?;
                    extract_ktuplets_regular(w, e, k)?
                }
                TupletMethod::Pipeline => pipeline(w, p)?.tuplet,
            };
            checked(t, w)
        })
        .collect::<Result<Vec<_>, _>>()?;
    tuplets_report(&ts, g.format)
}

#[derive(Serialize)]
struct ExactJson {
    word: String,
    k: usize,
    lo: usize,
    hi: usize,
    exact: bool,
    tuplet: twinword::TupletJson,
    elapsed_ms: u64,
}

fn budget(a: &ExactArgs) -> Result<Option<Duration>, Failure> {
    a.budget
        .map(|b| Duration::try_from_secs_f64(b).map_err(|e| Failure::new(2, format!("bad --budget: {e}"))))
        .transpose()
}

pub fn exact(a: &ExactArgs, g: &Global) -> Result<Report, Failure> {
    let budget = budget(a)?;
    if a.table {
        return exact_table(a, budget, g);
    }
    let input = Input {
        input: a.input.clone(),
        word: a.word.clone(),
        ell: a.ell,
    };
    let words = read_words(&input)?;
    let mut has_intervals = false;
    let mut rows = Vec::new();
    for w in &words {
        let v = f_exact(w, a.k, budget)?;
        let t = checked(v.witness.clone(), w)?;
        has_intervals |= !v.is_exact();
        rows.push(ExactJson {
            word: w.encode(),
            k: a.k,
            lo: v.lo,
            hi: v.hi,
            exact: v.is_exact(),
            tuplet: t.to_json(),
            elapsed_ms: if g.timing { v.elapsed.as_millis() as u64 } else { 0 },
        });
    }
    let text = match g.format {
        Format::Json => json_list(&rows)?,
        Format::Csv => {
            let mut s = String::from("word,k,lo,hi,exact,common_word,elapsed_ms\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{},{},{},{}", r.word, r.k, r.lo, r.hi, r.exact, r.tuplet.common_word, r.elapsed_ms);
            }
            s
        }
        Format::Text => rows
            .iter()
            .map(|r| {
                let value = if r.exact { r.lo.to_string() } else { format!("[{}, {}]", r.lo, r.hi) };
                format!("f({}, {}) = {}\ncommon word: {}\n", r.word, r.k, value, r.tuplet.common_word)
            })
            .collect::<Vec<_>>()
            .join(""),
    };
    Ok(Report { text, has_intervals })
}

fn exact_table(a: &ExactArgs, budget: Option<Duration>, g: &Global) -> Result<Report, Failure> {
    let (lo, hi) = a.n.ok_or_else(|| Failure::new(2, "--table needs --n"))?;
    let ell = a.ell.unwrap_or(2) as usize;
    let opts = SearchOptions {
        budget,
        jobs: g.jobs.unwrap_or_else(rayon_threads),
    };
    let table = generate_table(lo..=hi, a.k, ell, opts)?;
    let violations = audit(&table);
    let has_intervals = table.iter().any(|e| !e.is_exact());
    let text = match g.format {
        Format::Csv => table_csv(&table, g.timing),
        Format::Json => json(&table.iter().map(|e| e.to_json(g.timing)).collect::<Vec<TableEntryJson>>())?,
        Format::Text => {
            let mut s = String::new();
            for e in &table {
                let value = if e.is_exact() { e.lo.to_string() } else { format!("[{}, {}]", e.lo, e.hi) };
                let w = e.witness.as_ref().map(|(w, _)| w.encode()).unwrap_or_default();
                let _ = writeln!(s, "f({}, {}, {}) = {value}  {w}", e.n, e.k, e.ell);
            }
            s
        }
    };
    if !violations.is_empty() {
        return Err(Failure::new(1, format!("table failed its cross-checks: {violations:?}\n{text}")));
    }
    Ok(Report { text, has_intervals })
}

fn rayon_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

#[derive(Serialize)]
struct WordJson {
    word: String,
    length: usize,
    ell: u32,
}

pub fn construct(kind: &Construct, g: &Global) -> Result<Report, Failure> {
    let w = match kind {
        Construct::Block { levels } => block_word(*levels)?,
        Construct::Random { n, ell, seed } => random_word(*n, *ell, *seed)?,
    };
    let j = WordJson {
        word: w.encode(),
        length: w.len(),
        ell: w.alphabet().size(),
    };
    Ok(match g.format {
        Format::Json => json(&j)?,
        Format::Csv => format!("word,length,ell\n{},{},{}\n", j.word, j.length, j.ell),
        Format::Text => format!("{}\n", j.word),
    }
    .into())
}

pub fn alpha(k: usize, ell: u32, tol: f64, g: &Global) -> Result<Report, Failure> {
    let s = alpha_root(k, ell, tol)?;
    Ok(match g.format {
        Format::Json => json(&s)?,
        Format::Csv => format!(
            "k,ell,alpha,exists,h_residual,bracket_lo,bracket_hi\n{},{},{},{},{},{},{}\n",
            s.k, s.ell, s.alpha, s.exists, s.residual, s.bracket.0, s.bracket.1
        ),
        Format::Text if s.exists => format!("alpha({k}, {ell}) = {:.12} (h = {:e})\n", s.alpha, s.residual),
        Format::Text => format!("alpha({k}, {ell}): no root in (0, 1/{k})\n"),
    }
    .into())
}

#[derive(Serialize)]
struct BoundJson {
    n: usize,
    k: usize,
    ell: u32,
    m_star: usize,
    /// `m* − 1`, or null when the first-moment bound gives nothing.
    upper_bound: Option<usize>,
    method: &'static str,
}

pub fn bound(n: usize, k: usize, ell: u32, g: &Global) -> Result<Report, Failure> {
    let m = existence_bound(n, k, ell)?;
    let b = BoundJson {
        n,
        k,
        ell,
        m_star: m,
        upper_bound: (m <= n / k).then(|| m - 1),
        method: if n <= EXACT_BOUND_LIMIT { "exact" } else { "log-gamma" },
    };
    Ok(match g.format {
        Format::Json => json(&b)?,
        Format::Csv => format!(
            "n,k,ell,m_star,upper_bound,method\n{},{},{},{},{},{}\n",
            n,
            k,
            ell,
            m,
            b.upper_bound.map(|u| u.to_string()).unwrap_or_default(),
            b.method
        ),
        Format::Text => match b.upper_bound {
            Some(u) => format!("f({n}, {k}, {ell}) <= {u} (expected count below 1 at m = {m})\n"),
            None => format!("f({n}, {k}, {ell}): no first-moment bound below floor(n/k) = {}\n", n / k),
        },
    }
    .into())
}
