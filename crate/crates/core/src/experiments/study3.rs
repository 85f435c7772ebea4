use std::fmt;

use serde_json::json;

use crate::analysis::{contour_study, ContourSummary};
use crate::corpus::{random_3words, Corpus};
use crate::encoding::{ActVector, Encoding, IntervalWord};
use crate::error::Result;
use crate::nets::{Hyperparams, Model, ModelKind};
use crate::rng::named;
use crate::row;

use super::{Corpora, CsvTable, ExperimentReport, StudyConfig};

pub const CONTOUR_WORDS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContourModel {
    Trained(ModelKind),
    /// Fresh TRACX2 weights, no training.
    Untrained,
}

impl fmt::Display for ContourModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContourModel::Trained(k) => write!(f, "{k}"),
            ContourModel::Untrained => f.write_str("untrained"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ContourResult {
    pub model: ContourModel,
    pub summary: ContourSummary,
}

/// Compare representation distances of same- and different-contour random
/// words at every controlled interval distance.
pub fn study3_contour(
    corpus: &Corpus,
    model: ContourModel,
    words: &[IntervalWord],
    encoding: Encoding,
    hyper: Hyperparams,
    epochs: usize,
    seed: u64,
) -> Result<ContourResult> {
    let mut rng = named(seed, &format!("st3/train/{model}"), 0);
    let net = match model {
        ContourModel::Trained(kind) => Model::trained(kind, encoding, hyper, corpus, epochs, &mut rng)?,
        ContourModel::Untrained => Model::new(ModelKind::Tracx2, encoding, hyper, &mut rng),
    };
    let reps: Vec<ActVector> = words.iter().map(|w| net.hidden_rep(w)).collect::<Result<_>>()?;
    Ok(ContourResult {
        model,
        summary: contour_study(words, &reps)?,
    })
}

/// The shared random word sample.
pub fn contour_words(seed: u64) -> Result<Vec<IntervalWord>> {
    random_3words(CONTOUR_WORDS, &mut named(seed, "st3/words", 0))
}

pub(super) fn contour_report(corpora: &Corpora, cfg: &StudyConfig) -> Result<ExperimentReport> {
    let epochs = cfg.epochs_or(30);
    let words = contour_words(cfg.seed)?;
    let mut report = ExperimentReport::new(
        "st3",
        json!({"corpus": corpora.primary_name, "epochs": epochs, "words": CONTOUR_WORDS, "cfg": cfg}),
    );
    let mut table = CsvTable::new(&[
        "model",
        "mdist",
        "same_pairs",
        "diff_pairs",
        "same_mean",
        "diff_mean",
        "f",
        "p",
        "p_bonferroni",
    ]);
    let mut models: Vec<ContourModel> = cfg.models.iter().map(|&k| ContourModel::Trained(k)).collect();
    models.push(ContourModel::Untrained);
    for m in models {
        let r = study3_contour(&corpora.primary, m, &words, cfg.encoding, cfg.hyper, epochs, cfg.seed)?;
        let name = m.to_string();
        for t in &r.summary.triplets {
            let key = format!("{}-{}-{}", t.mdist[0], t.mdist[1], t.mdist[2]);
            table.push(row![
                name.as_str(),
                key,
                t.same_pairs,
                t.diff_pairs,
                t.same_mean,
                t.diff_mean,
                t.f,
                t.p,
                t.p_bonferroni
            ]);
        }
        report.stat(format!("{name}.scored"), r.summary.triplets.len() as f64);
        report.stat(format!("{name}.skipped"), r.summary.skipped.len() as f64);
        report.stat(format!("{name}.expected_share"), r.summary.expected_share());
        report.stat(format!("{name}.significant_share"), r.summary.significant_share());
        report.stat(format!("{name}.significant_expected_share"), r.summary.significant_expected_share());
    }
    let mut wt = CsvTable::new(&["word"]);
    for w in &words {
        wt.push(row![w.labels()]);
    }
    report.table("contour_triplets.csv", table);
    report.table("contour_words.csv", wt);
    Ok(report)
}
