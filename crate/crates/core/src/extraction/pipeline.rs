use rayon::prelude::*;
use serde::Serialize;

use super::blocks::{extract_ktuplets_regular, extract_twins_regular};
use super::frequent::restrict_frequent;
use crate::epsilon::Epsilon;
use crate::error::{Error, Result};
use crate::regularity::{regularity_partition, PartitionJson, RegularityParams, Regularization};
use crate::word::{Construction, Support, TupletJson, TupletResult, Word};

/// Which per-factor construction the pipeline uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extractor {
    /// Binary twins.
    Claim1,
    /// General k-tuplets over at most `k` letters.
    Thm2,
}

impl Extractor {
    /// Smallest `⌊1/ε⌋` the construction accepts.
    pub fn min_inverse_epsilon(self, ell: usize, k: usize) -> usize {
        match self {
            Extractor::Claim1 => 5,
            Extractor::Thm2 => 2 * ell + k,
        }
    }

    /// Waste constant `c` in the per-factor bound `|S_i| − cε|S_i|`.
    pub fn waste_constant(self, ell: usize) -> usize {
        match self {
            Extractor::Claim1 => 5,
            Extractor::Thm2 => 3 * ell,
        }
    }

    fn choose(ell: usize, k: usize) -> Self {
        if k == 2 && ell == 2 {
            Extractor::Claim1
        } else {
            Extractor::Thm2
        }
    }
}

/// Parameters for [`pipeline`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractionParams {
    pub epsilon: Epsilon,
    pub k: usize,
    /// When set, ε is derived from `n` as `C·(ln n / ln ln n)^(-1/4)` with
    /// this `C`, overriding `epsilon`.
    pub auto_epsilon: Option<f64>,
}

impl ExtractionParams {
    pub fn new(epsilon: Epsilon, k: usize) -> Self {
        ExtractionParams {
            epsilon,
            k,
            auto_epsilon: None,
        }
    }

    /// ε for a word of length `n` that will be handled by `extractor`.
    ///
    /// The automatic schedule is clamped to `[0.02, 0.25]`, rounded to the
    /// unit fraction `1/⌈1/ε⌉` and then lowered to the largest unit fraction
    /// the extractor accepts.
    pub fn resolve_epsilon(&self, n: usize, ell: usize, extractor: Extractor) -> Result<Epsilon> {
        let Some(c) = self.auto_epsilon else {
            return Ok(self.epsilon);
        };
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidEpsilon(format!("auto-epsilon constant {c} must be positive")));
        }
        let ln = (n as f64).ln();
        let raw = c * (ln / ln.ln()).powf(-0.25);
        let eps = if raw.is_finite() { raw.clamp(0.02, 0.25) } else { 0.25 };
        let t = ((1.0 / eps).ceil() as usize).max(extractor.min_inverse_epsilon(ell, self.k));
        Epsilon::unit(t as u64)
    }
}

/// Output of [`pipeline`].
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub tuplet: TupletResult,
    pub regularization: Regularization,
    pub epsilon: Epsilon,
    pub extractor: Extractor,
    /// Positions kept by [`restrict_frequent`], when the alphabet was larger
    /// than `k`.
    pub back_map: Option<Support>,
}

impl PipelineOutput {
    /// `Σ (|S_i| − cε|S_i|)` over the regular factors, the main term of the
    /// combined length guarantee. Negative terms count as zero. Floors in
    /// the block sizes can cost up to one letter per block, which dominates
    /// on short factors.
    pub fn guaranteed_len(&self) -> f64 {
        let ell = self.regularization.partition.host.alphabet().size() as usize;
        let c = self.extractor.waste_constant(ell) as f64 * self.epsilon.to_f64();
        self.regularization
            .partition
            .factors
            .iter()
            .filter(|f| f.regular)
            .map(|f| (f.len() as f64 * (1.0 - c)).max(0.0))
            .sum()
    }

    pub fn to_json(&self) -> PipelineJson {
        PipelineJson {
            epsilon: self.epsilon.to_string(),
            extractor: self.extractor,
            tuplet: self.tuplet.to_json(),
            partition: self.regularization.to_json(),
            guaranteed_len: self.guaranteed_len(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PipelineJson {
    pub epsilon: String,
    pub extractor: Extractor,
    pub tuplet: TupletJson,
    pub partition: PartitionJson,
    pub guaranteed_len: f64,
}

/// Regularize, then extract from every regular factor.
///
/// Words over more than `k` letters are first restricted to their `k` most
/// frequent letters. Irregular factors contribute nothing. Factors are
/// consecutive, so member supports from successive factors concatenate into
/// increasing supports of the whole word.
///
/// ```
/// use twinword::{parse_word, Alphabet, Epsilon};
/// use twinword::extraction::{pipeline, ExtractionParams};
/// let s = parse_word(&"0".repeat(2000), Alphabet::binary()).unwrap();
/// let out = pipeline(&s, ExtractionParams::new(Epsilon::unit(10).unwrap(), 2)).unwrap();
/// assert!(out.tuplet.combined_len() as f64 >= 0.4 * 2000.0);
/// ```
pub fn pipeline(word: &Word, params: ExtractionParams) -> Result<PipelineOutput> {
    let k = params.k;
    if k < 2 {
        return Err(Error::InvalidParams(format!("k = {k} must be at least 2")));
    }
    let (work, back_map) = if word.alphabet().size() as usize > k {
        let (w, back) = restrict_frequent(word, k)?;
        (w, Some(back))
    } else {
        (word.clone(), None)
    };
    let ell = work.alphabet().size() as usize;
    let extractor = Extractor::choose(ell, k);
    let epsilon = params.resolve_epsilon(work.len(), ell, extractor)?;
    let t = epsilon.inverse_floor();
    if t < extractor.min_inverse_epsilon(ell, k) {
        return Err(Error::EpsilonTooLarge(format!(
            "epsilon = {epsilon} is too large for the {} construction",
            Construction::from(extractor).as_str()
        )));
    }
    let reg_params = RegularityParams::for_epsilon(epsilon);
    if work.len() < reg_params.t0 {
        return Err(Error::EpsilonTooLarge(format!(
            "a word of length {} cannot be split into 1/epsilon = {} factors",
            work.len(),
            reg_params.t0
        )));
    }
    let regularization = regularity_partition(&work, reg_params)?;
    let pieces: Vec<Option<Vec<Support>>> = regularization
        .partition
        .factors
        .par_iter()
        .enumerate()
        .map(|(i, f)| {
            if !f.regular {
                return Ok(None);
            }
            let factor = regularization.partition.factor_word(i);
            let t = match extractor {
                Extractor::Claim1 => extract_twins_regular(&factor, epsilon)?,
                Extractor::Thm2 => extract_ktuplets_regular(&factor, epsilon, k)?,
            };
            Ok(Some(t.supports.iter().map(|s| s.shifted(f.start - 1)).collect()))
        })
        .collect::<Result<_>>()?;
    let mut supports = vec![Support::from_sorted_unchecked(Vec::new()); k];
    for piece in pieces.into_iter().flatten() {
        for (acc, s) in supports.iter_mut().zip(&piece) {
            acc.extend(s);
        }
    }
    if let Some(back) = &back_map {
        supports = supports.iter().map(|s| s.compose(back)).collect::<Result<_>>()?;
    }
    let tuplet = TupletResult::from_supports(word, supports, Construction::Pipeline)?;
    Ok(PipelineOutput {
        tuplet,
        regularization,
        epsilon,
        extractor,
        back_map,
    })
}

impl From<Extractor> for Construction {
    fn from(e: Extractor) -> Self {
        match e {
            Extractor::Claim1 => Construction::Claim1,
            Extractor::Thm2 => Construction::Thm2,
        }
    }
}
