use rayon::prelude::*;
use serde::Serialize;

use super::ensemble::{build_wishart_model, EnsembleSpec};
use super::rng::{stream_rng, WORD_STREAM};
use super::words::{commutation_check, random_words, BiMatrixWord, WordEvaluator};
use crate::cumulants::{kappa_from_moments, CumulantTable, MomentFunctional, Word};
use crate::error::{Error, Result};
use crate::stats::{jackknife_means, jackknife_standard_error};

/// Words swept by the per-size commutation check (on trial 0).
const COMMUTATION_WORDS: usize = 20;
const COMMUTATION_MAX_LEN: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulantRow {
    pub n: usize,
    pub word: String,
    pub empirical: f64,
    pub target: f64,
    pub abs_err: f64,
    pub std_err: f64,
    /// Same target evaluated on the finite diagonal blocks rather than on the
    /// limit law.
    pub finite_target: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeReport {
    pub n: usize,
    pub rows: Vec<CumulantRow>,
    /// Largest `|Im tr(word)|` over single samples.
    pub max_sample_imag: f64,
    /// Largest `|Im|` of a trial-averaged moment.
    pub max_mean_imag: f64,
    pub commutation_deviation: f64,
    #[serde(skip)]
    pub moments: MomentFunctional,
    #[serde(skip)]
    pub cumulants: CumulantTable,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub lambda: f64,
    pub trials: usize,
    pub seed: u64,
    pub sizes: Vec<SizeReport>,
}

struct TrialResult {
    moments: Vec<f64>,
    mean_imag: Vec<f64>,
    max_imag: f64,
    commutation: Option<f64>,
    finite: Option<Vec<f64>>,
}

/// Runs the model over every size, averages word moments over trials,
/// inverts them to bi-free cumulants and compares with `lambda phi(word)`.
/// Standard errors are jackknife estimates over trials. `workers = 0` uses
/// the global thread pool.
pub fn estimate_empirical_cumulants(spec: &EnsembleSpec, workers: usize) -> Result<EnsembleReport> {
    spec.validate()?;
    let alphabet = spec.law.alphabet().clone();
    let jump = spec.law.moments(spec.max_word_len)?;
    let words: Vec<Word> = (1..=spec.max_word_len)
        .flat_map(|len| jump.table().words_of_len(len).collect::<Vec<_>>())
        .collect();
    let bi_words: Vec<BiMatrixWord> = words
        .iter()
        .map(|w| BiMatrixWord::new(w.letters().iter().map(|&v| (v, alphabet.side(v))).collect()))
        .collect();
    let sides: Vec<_> = (0..alphabet.len()).map(|v| alphabet.side(v)).collect();

    let run = || -> Result<Vec<SizeReport>> {
        spec.sizes
            .iter()
            .map(|&n| {
                let trials: Vec<TrialResult> = (0..spec.trials)
                    .into_par_iter()
                    .map(|t| {
                        let ens = build_wishart_model(spec, n, t);
                        let mut ev = WordEvaluator::new(&ens.models);
                        let values: Vec<_> = bi_words.iter().map(|w| ev.evaluate(w)).collect();
                        let commutation = (t == 0)
                            .then(|| {
                                let mut rng = stream_rng(spec.seed, n, t, WORD_STREAM);
                                let sample = random_words(&mut rng, &sides, COMMUTATION_WORDS, COMMUTATION_MAX_LEN);
                                commutation_check(&ens.models, &sample)
                            })
                            .transpose()?;
                        let finite = (t == 0).then(|| words.iter().map(|w| ens.diagonal_trace(w.letters())).collect());
                        Ok(TrialResult {
                            moments: values.iter().map(|z| z.re).collect(),
                            mean_imag: values.iter().map(|z| z.im).collect(),
                            max_imag: values.iter().map(|z| z.im.abs()).fold(0.0, f64::max),
                            commutation,
                            finite,
                        })
                    })
                    .collect::<Result<_>>()?;
                summarize(spec, n, &jump, &words, &trials)
            })
            .collect()
    };
    let sizes = if workers == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?
            .install(run)?
    };
    Ok(EnsembleReport {
        lambda: spec.lambda,
        trials: spec.trials,
        seed: spec.seed,
        sizes,
    })
}

fn mean_rows(rows: &[Vec<f64>]) -> Vec<f64> {
    let mut acc = vec![0.0; rows[0].len()];
    for r in rows {
        for (a, x) in acc.iter_mut().zip(r) {
            *a += x;
        }
    }
    acc.iter().map(|a| a / rows.len() as f64).collect()
}

fn cumulants_of(jump: &MomentFunctional, words: &[Word], values: &[f64]) -> Result<CumulantTable> {
    let m = MomentFunctional::from_entries(
        jump.alphabet().clone(),
        jump.degree_cap(),
        words.iter().cloned().zip(values.iter().copied()),
    )?;
    kappa_from_moments(&m)
}

fn summarize(
    spec: &EnsembleSpec,
    n: usize,
    jump: &MomentFunctional,
    words: &[Word],
    trials: &[TrialResult],
) -> Result<SizeReport> {
    let samples: Vec<Vec<f64>> = trials.iter().map(|t| t.moments.clone()).collect();
    let mean = mean_rows(&samples);
    let moments = MomentFunctional::from_entries(
        jump.alphabet().clone(),
        jump.degree_cap(),
        words.iter().cloned().zip(mean.iter().copied()),
    )?;
    let cumulants = kappa_from_moments(&moments)?;
    let replicates: Vec<CumulantTable> = jackknife_means(&samples)
        .iter()
        .map(|loo| cumulants_of(jump, words, loo))
        .collect::<Result<_>>()?;
    let imag: Vec<Vec<f64>> = trials.iter().map(|t| t.mean_imag.clone()).collect();
    let finite = trials[0].finite.as_ref().expect("trial 0 records finite traces");

    let rows = words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let empirical = cumulants.get(w).unwrap();
            let target = spec.lambda * jump.get(w).unwrap();
            let reps: Vec<f64> = replicates.iter().map(|k| k.get(w).unwrap()).collect();
            CumulantRow {
                n,
                word: jump.alphabet().render(w),
                empirical,
                target,
                abs_err: (empirical - target).abs(),
                std_err: jackknife_standard_error(&reps),
                finite_target: finite[i],
            }
        })
        .collect();
    Ok(SizeReport {
        n,
        rows,
        max_sample_imag: trials.iter().map(|t| t.max_imag).fold(0.0, f64::max),
        max_mean_imag: mean_rows(&imag).iter().map(|x| x.abs()).fold(0.0, f64::max),
        commutation_deviation: trials[0].commutation.unwrap_or(0.0),
        moments,
        cumulants,
    })
}
