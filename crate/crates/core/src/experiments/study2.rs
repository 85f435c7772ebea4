use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde_json::json;

use crate::analysis::{bonferroni, mean, oneway_anova, sem, unpaired_t, AnovaResult, TestResult};
use crate::corpus::{
    full_random, permute_global, permute_within_song, unheard_word_sets, Corpus, Song, UnheardSets, UNHEARD_SET_SIZE,
};
use crate::encoding::{Encoding, IntervalWord};
use crate::error::{Error, Result};
use crate::nets::{Hyperparams, Model, ModelKind};
use crate::rng::named;
use crate::row;

use super::{word_errors, Corpora, CsvTable, ExperimentReport, StudyConfig};

/// What the network saw before being tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Songs,
    WithinSongPermute,
    GlobalPermute,
    FullRandom,
    Untrained,
}

impl Regime {
    pub const ALL: [Regime; 5] = [
        Regime::Songs,
        Regime::WithinSongPermute,
        Regime::GlobalPermute,
        Regime::FullRandom,
        Regime::Untrained,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::Songs => "songs",
            Regime::WithinSongPermute => "within_song_permute",
            Regime::GlobalPermute => "global_permute",
            Regime::FullRandom => "full_random",
            Regime::Untrained => "untrained",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct PriorCell {
    pub model: ModelKind,
    pub regime: Regime,
    /// Mean test-word error of each run.
    pub run_errors: Vec<f64>,
}

impl PriorCell {
    pub fn mean(&self) -> f64 {
        mean(&self.run_errors)
    }

    pub fn sem(&self) -> f64 {
        sem(&self.run_errors)
    }
}

#[derive(Clone, Debug)]
pub struct PriorResult {
    /// 3-interval words of the held-out melody absent from every training
    /// variant of every run.
    pub test_words: Vec<IntervalWord>,
    pub cells: Vec<PriorCell>,
}

impl PriorResult {
    pub fn cell(&self, model: ModelKind, regime: Regime) -> Option<&PriorCell> {
        self.cells.iter().find(|c| c.model == model && c.regime == regime)
    }
}

/// Train on the songs, on three scrambled versions of them, or not at all,
/// then score 3-interval words from a melody none of them contain.
#[allow(clippy::too_many_arguments)]
pub fn study2_prior_learning(
    corpus: &Corpus,
    test_melody: &Song,
    models: &[ModelKind],
    encoding: Encoding,
    hyper: Hyperparams,
    epochs: usize,
    runs: usize,
    seed: u64,
) -> Result<PriorResult> {
    let mut variants: Vec<Vec<Corpus>> = Vec::with_capacity(runs);
    for run in 0..runs as u64 {
        variants.push(vec![
            permute_within_song(corpus, &mut named(seed, "st2.prior/within", run)),
            permute_global(corpus, &mut named(seed, "st2.prior/global", run)),
            full_random(corpus, &mut named(seed, "st2.prior/random", run)),
        ]);
    }
    let mut seen: BTreeSet<IntervalWord> = corpus.inventory(3).words().cloned().collect();
    for v in variants.iter().flatten() {
        seen.extend(v.inventory(3).words().cloned());
    }
    let test_words: Vec<IntervalWord> = Corpus::new(vec![test_melody.clone()])
        .inventory(3)
        .words()
        .filter(|w| !seen.contains(*w))
        .cloned()
        .collect();
    if test_words.is_empty() {
        return Err(Error::Degenerate(
            "every 3-interval word of the test melody occurs in some training variant".into(),
        ));
    }

    let mut cells = Vec::new();
    for &kind in models {
        for regime in Regime::ALL {
            let mut run_errors = Vec::with_capacity(runs);
            for run in 0..runs {
                let mut init = named(seed, &format!("st2.prior/init/{kind}"), run as u64);
                let mut model = Model::new(kind, encoding, hyper, &mut init);
                let training = match regime {
                    Regime::Songs => Some(corpus),
                    Regime::WithinSongPermute => Some(&variants[run][0]),
                    Regime::GlobalPermute => Some(&variants[run][1]),
                    Regime::FullRandom => Some(&variants[run][2]),
                    Regime::Untrained => None,
                };
                if let Some(c) = training {
                    let mut order = named(seed, &format!("st2.prior/order/{kind}/{regime}"), run as u64);
                    model.train(c, epochs, &mut order)?;
                }
                run_errors.push(mean(&word_errors(&model, &test_words)?));
            }
            cells.push(PriorCell {
                model: kind,
                regime,
                run_errors,
            });
        }
    }
    Ok(PriorResult { test_words, cells })
}

pub(super) fn prior_report(corpora: &Corpora, cfg: &StudyConfig) -> Result<ExperimentReport> {
    let epochs = cfg.epochs_or(30);
    let r = study2_prior_learning(
        &corpora.primary,
        &corpora.test_melody,
        &cfg.models,
        cfg.encoding,
        cfg.hyper,
        epochs,
        cfg.runs,
        cfg.seed,
    )?;
    let mut report = ExperimentReport::new(
        "st2.prior",
        json!({"corpus": corpora.primary_name, "test_melody": corpora.test_melody.name, "epochs": epochs, "cfg": cfg}),
    );
    let mut runs = CsvTable::new(&["model", "regime", "run", "mean_error"]);
    let mut summary = CsvTable::new(&["model", "regime", "mean_error", "sem", "runs"]);
    for c in &r.cells {
        for (i, e) in c.run_errors.iter().enumerate() {
            runs.push(row![c.model.name(), c.regime.name(), i, *e]);
        }
        summary.push(row![c.model.name(), c.regime.name(), c.mean(), c.sem(), c.run_errors.len()]);
        report.stat(format!("{}.{}.mean", c.model, c.regime), c.mean());
        report.stat(format!("{}.{}.sem", c.model, c.regime), c.sem());
    }
    let mut words = CsvTable::new(&["word"]);
    for w in &r.test_words {
        words.push(row![w.labels()]);
    }
    report.stat("test_words", r.test_words.len() as f64);
    report.table("prior_runs.csv", runs);
    report.table("prior_summary.csv", summary);
    report.table("test_words.csv", words);
    Ok(report)
}

pub const CATEGORIES: [&str; 3] = ["far", "near_unfamiliar", "near_familiar"];

#[derive(Clone, Debug)]
pub struct UnheardResult {
    pub model: ModelKind,
    pub sets: UnheardSets,
    /// Errors of the far, near-unfamiliar and near-familiar words.
    pub errors: [Vec<f64>; 3],
    pub anova: AnovaResult,
    /// Unpaired t tests between categories with Bonferroni-adjusted p.
    pub pairwise: Vec<(usize, usize, TestResult, f64)>,
}

impl UnheardResult {
    pub fn means(&self) -> [f64; 3] {
        [mean(&self.errors[0]), mean(&self.errors[1]), mean(&self.errors[2])]
    }
}

/// Train one model on the songs, build the three unheard-word categories
/// from its errors on the corpus 3-interval words, and compare them.
pub fn study2_unheard_categories(
    corpus: &Corpus,
    kind: ModelKind,
    encoding: Encoding,
    hyper: Hyperparams,
    epochs: usize,
    seed: u64,
) -> Result<UnheardResult> {
    let mut rng = named(seed, &format!("st2.unheard/train/{kind}"), 0);
    let model = Model::trained(kind, encoding, hyper, corpus, epochs, &mut rng)?;
    let inv = corpus.inventory(3);
    let known: Vec<IntervalWord> = inv.words().cloned().collect();
    let errs: HashMap<IntervalWord, f64> = known.iter().cloned().zip(word_errors(&model, &known)?).collect();
    let sets = unheard_word_sets(
        &inv,
        &errs,
        UNHEARD_SET_SIZE,
        &mut named(seed, &format!("st2.unheard/sample/{kind}"), 0),
    )?;
    let errors = [
        word_errors(&model, &sets.far)?,
        word_errors(&model, &sets.near_unfamiliar)?,
        word_errors(&model, &sets.near_familiar)?,
    ];
    let anova = oneway_anova(&[&errors[0], &errors[1], &errors[2]])?;
    let mut pairwise = Vec::new();
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let t = unpaired_t(&errors[a], &errors[b])?;
        pairwise.push((a, b, t, bonferroni(t.p, 3)));
    }
    Ok(UnheardResult {
        model: kind,
        sets,
        errors,
        anova,
        pairwise,
    })
}

pub(super) fn unheard_report(corpora: &Corpora, cfg: &StudyConfig) -> Result<ExperimentReport> {
    let epochs = cfg.epochs_or(30);
    let mut report = ExperimentReport::new(
        "st2.unheard",
        json!({"corpus": corpora.primary_name, "epochs": epochs, "cfg": cfg}),
    );
    let mut words = CsvTable::new(&["model", "category", "word", "error"]);
    let mut tests = CsvTable::new(&["model", "test", "a", "b", "statistic", "df1", "df2", "p", "p_bonferroni", "effect"]);
    for &kind in &cfg.models {
        let r = study2_unheard_categories(&corpora.primary, kind, cfg.encoding, cfg.hyper, epochs, cfg.seed)?;
        let lists = [&r.sets.far, &r.sets.near_unfamiliar, &r.sets.near_familiar];
        for (k, (list, errs)) in lists.iter().zip(&r.errors).enumerate() {
            for (w, e) in list.iter().zip(errs) {
                words.push(row![kind.name(), CATEGORIES[k], w.labels(), *e]);
            }
            report.stat(format!("{kind}.{}.mean", CATEGORIES[k]), mean(errs));
            report.stat(format!("{kind}.{}.pool", CATEGORIES[k]), r.sets.pool_sizes[k] as f64);
        }
        let a = &r.anova;
        tests.push(row![kind.name(), "anova", "all", "all", a.f, a.df_between, a.df_within, a.p, Option::<f64>::None, a.partial_eta_sq]);
        report.stat(format!("{kind}.anova.f"), a.f);
        report.stat(format!("{kind}.anova.p"), a.p);
        report.stat(format!("{kind}.anova.eta_sq"), a.partial_eta_sq);
        for (i, j, t, pb) in &r.pairwise {
            tests.push(row![kind.name(), "t", CATEGORIES[*i], CATEGORIES[*j], t.statistic, t.df, Option::<f64>::None, t.p, *pb, t.effect]);
            report.stat(format!("{kind}.{}_vs_{}.p_bonferroni", CATEGORIES[*i], CATEGORIES[*j]), *pb);
        }
        report.stat(format!("{kind}.familiar_below"), r.sets.familiar_below);
        report.stat(format!("{kind}.unfamiliar_above"), r.sets.unfamiliar_above);
    }
    report.table("unheard_words.csv", words);
    report.table("unheard_tests.csv", tests);
    Ok(report)
}
