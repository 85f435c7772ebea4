//! The four study families, each producing an [`ExperimentReport`].

mod report;
mod study1;
mod study2;
mod study3;
mod study4;
mod svg;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::corpus::{builtin, Corpus, Song};
use crate::encoding::{Encoding, IntervalWord};
use crate::error::{Error, Result};
use crate::nets::{Hyperparams, Model, ModelKind};

pub use report::{fmt_num, write_atomic, Cell, CsvTable, ExperimentReport};
pub use study1::{
    study1_clusters, study1_fit, study1_primacy, study1_trace, ClusterPoint, ClusterResult, FitResult, PrimacyResult,
    TraceRow,
};
pub use study2::{CATEGORIES, study2_prior_learning, study2_unheard_categories, PriorCell, PriorResult, Regime, UnheardResult};
pub use study3::{contour_words, study3_contour, ContourModel, ContourResult, CONTOUR_WORDS};
pub use study4::{
    study4_internal_reps, study4_saffran, InternalRepResult, PartWordOutcome, PartWordTest, SaffranResult, SaffranVariant,
    STREAM_BLOCKS, STREAM_EPOCHS, WORDS_PER_BLOCK,
};
pub use svg::{scatter_svg, ScatterPoint};

/// Settings shared by every study.
#[derive(Clone, Debug, Serialize)]
pub struct StudyConfig {
    pub seed: u64,
    /// Independent replications where a study averages over runs.
    pub runs: usize,
    /// Overrides the study's own epoch count (30, or 100 for the stream
    /// studies).
    pub epochs: Option<usize>,
    pub encoding: Encoding,
    pub models: Vec<ModelKind>,
    pub hyper: Hyperparams,
}

impl StudyConfig {
    pub fn new(seed: u64) -> Self {
        StudyConfig {
            seed,
            runs: 20,
            epochs: None,
            encoding: Encoding::Ordinal,
            models: ModelKind::ALL.to_vec(),
            hyper: Hyperparams::default(),
        }
    }

    pub fn epochs_or(&self, default: usize) -> usize {
        self.epochs.unwrap_or(default)
    }

    fn check(&self) -> Result<()> {
        if self.runs < 2 {
            return Err(Error::Config("at least two runs are needed for the replicated studies".into()));
        }
        if self.models.is_empty() {
            return Err(Error::Config("no models selected".into()));
        }
        Ok(())
    }
}

/// The melodies the studies draw on.
#[derive(Clone, Debug)]
pub struct Corpora {
    pub primary_name: String,
    pub primary: Corpus,
    /// Verification set, used by the trace table when present.
    pub secondary: Option<(String, Corpus)>,
    /// Held-out melody for the prior-learning study.
    pub test_melody: Song,
}

impl Corpora {
    pub fn builtin() -> Self {
        Corpora {
            primary_name: "set1".into(),
            primary: builtin::set1(),
            secondary: Some(("set2".into(), builtin::set2())),
            test_melody: builtin::test_melody(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StudyId {
    Clusters,
    Trace,
    Primacy,
    Prior,
    Unheard,
    Contour,
    SaffranOriginal,
    SaffranRepaired,
    InternalReps,
}

impl StudyId {
    pub const ALL: [StudyId; 9] = [
        StudyId::Clusters,
        StudyId::Trace,
        StudyId::Primacy,
        StudyId::Prior,
        StudyId::Unheard,
        StudyId::Contour,
        StudyId::SaffranOriginal,
        StudyId::SaffranRepaired,
        StudyId::InternalReps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StudyId::Clusters => "st1.1",
            StudyId::Trace => "st1.2",
            StudyId::Primacy => "st1.3",
            StudyId::Prior => "st2.prior",
            StudyId::Unheard => "st2.unheard",
            StudyId::Contour => "st3",
            StudyId::SaffranOriginal => "st4.original",
            StudyId::SaffranRepaired => "st4.repaired",
            StudyId::InternalReps => "st4.reps",
        }
    }
}

impl fmt::Display for StudyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StudyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StudyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown study {s:?}")))
    }
}

pub fn run_study(id: StudyId, corpora: &Corpora, cfg: &StudyConfig) -> Result<ExperimentReport> {
    if corpora.primary.songs.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    cfg.check()?;
    match id {
        StudyId::Clusters => study1::clusters_report(corpora, cfg),
        StudyId::Trace => study1::trace_report(corpora, cfg),
        StudyId::Primacy => study1::primacy_report(corpora, cfg),
        StudyId::Prior => study2::prior_report(corpora, cfg),
        StudyId::Unheard => study2::unheard_report(corpora, cfg),
        StudyId::Contour => study3::contour_report(corpora, cfg),
        StudyId::SaffranOriginal => study4::saffran_report(SaffranVariant::Original, cfg),
        StudyId::SaffranRepaired => study4::saffran_report(SaffranVariant::Repaired, cfg),
        StudyId::InternalReps => study4::internal_reps_report(corpora, cfg),
    }
}

/// Per-word errors of one model.
pub fn word_errors(model: &Model, words: &[IntervalWord]) -> Result<Vec<f64>> {
    words.iter().map(|w| model.word_error(w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn study_ids_round_trip() {
        for id in StudyId::ALL {
            assert_eq!(id.name().parse::<StudyId>().unwrap(), id);
        }
        assert!("st9".parse::<StudyId>().is_err());
    }
}
