use std::fmt;

use serde_json::json;

use crate::analysis::{mean, paired_t, TestResult};
use crate::corpus::{saffran_stream, Corpus};
use crate::encoding::{word_from_labels, Encoding, IntervalWord};
use crate::error::Result;
use crate::nets::{Hyperparams, Model, ModelKind};
use crate::rng::named;
use crate::row;

use super::{word_errors, Corpora, CsvTable, ExperimentReport, StudyConfig};

pub const STREAM_BLOCKS: usize = 6;
pub const WORDS_PER_BLOCK: usize = 18;
pub const STREAM_EPOCHS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaffranVariant {
    /// The original tone words, where `pn` is both a word ending and the
    /// start of another word.
    Original,
    /// A word set without that confound.
    Repaired,
}

impl fmt::Display for SaffranVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SaffranVariant::Original => "original",
            SaffranVariant::Repaired => "repaired",
        })
    }
}

/// One split of the part-words into end-of-word (Xb) and
/// beginning-of-word (aX) items.
#[derive(Clone, Debug)]
pub struct PartWordTest {
    pub name: &'static str,
    pub xb: Vec<IntervalWord>,
    pub ax: Vec<IntervalWord>,
}

fn words(labels: &[&str]) -> Vec<IntervalWord> {
    labels.iter().map(|l| word_from_labels(l).expect("valid letters")).collect()
}

impl SaffranVariant {
    pub fn words(self) -> Vec<IntervalWord> {
        match self {
            SaffranVariant::Original => words(&["fv", "un", "hs", "nl", "nn", "pl"]),
            SaffranVariant::Repaired => words(&["fv", "un", "hs", "dy", "mt", "pl"]),
        }
    }

    pub fn tests(self) -> Vec<PartWordTest> {
        match self {
            SaffranVariant::Original => vec![
                PartWordTest {
                    name: "pn_as_xb",
                    xb: words(&["gv", "pn", "ls"]),
                    ax: words(&["nq", "nw"]),
                },
                PartWordTest {
                    name: "pn_as_ax",
                    xb: words(&["gv", "ls"]),
                    ax: words(&["pn", "nq", "nw"]),
                },
            ],
            SaffranVariant::Repaired => vec![PartWordTest {
                name: "repaired",
                xb: words(&["gv", "wn", "rs"]),
                ax: words(&["db", "mo", "pq"]),
            }],
        }
    }
}

#[derive(Clone, Debug)]
pub struct PartWordOutcome {
    pub name: &'static str,
    /// Per-run mean error over the Xb and aX words.
    pub xb_means: Vec<f64>,
    pub ax_means: Vec<f64>,
    /// Paired over runs, Xb minus aX.
    pub t: TestResult,
    /// Share of runs with the lower mean error on Xb.
    pub run_share: f64,
    /// Share of (run, Xb word, aX word) comparisons won by the Xb word.
    pub comparison_share: f64,
}

#[derive(Clone, Debug)]
pub struct SaffranResult {
    pub variant: SaffranVariant,
    pub model: ModelKind,
    /// Every part-word's error in every run.
    pub word_errors: Vec<(usize, IntervalWord, f64)>,
    pub outcomes: Vec<PartWordOutcome>,
}

/// Train on a fresh repetition-free word stream per run and compare errors
/// on part-words spanning word boundaries.
pub fn study4_saffran(
    variant: SaffranVariant,
    kind: ModelKind,
    encoding: Encoding,
    hyper: Hyperparams,
    epochs: usize,
    runs: usize,
    seed: u64,
) -> Result<SaffranResult> {
    let vocab = variant.words();
    let tests = variant.tests();
    let mut part_words: Vec<IntervalWord> = tests.iter().flat_map(|t| t.xb.iter().chain(&t.ax).cloned()).collect();
    part_words.sort();
    part_words.dedup();
    let mut per_run: Vec<Vec<f64>> = Vec::with_capacity(runs);
    for run in 0..runs as u64 {
        let stream = saffran_stream(
            &vocab,
            STREAM_BLOCKS,
            WORDS_PER_BLOCK,
            &mut named(seed, &format!("st4.{variant}/stream"), run),
        )?;
        let corpus = Corpus::new(vec![stream]);
        let mut rng = named(seed, &format!("st4.{variant}/train/{kind}"), run);
        let model = Model::trained(kind, encoding, hyper, &corpus, epochs, &mut rng)?;
        per_run.push(word_errors(&model, &part_words)?);
    }
    let error_of = |run: usize, w: &IntervalWord| {
        let i = part_words.iter().position(|p| p == w).expect("part-word listed");
        per_run[run][i]
    };
    let mut outcomes = Vec::new();
    for test in &tests {
        let xb_means: Vec<f64> = (0..runs).map(|r| mean(&test.xb.iter().map(|w| error_of(r, w)).collect::<Vec<_>>())).collect();
        let ax_means: Vec<f64> = (0..runs).map(|r| mean(&test.ax.iter().map(|w| error_of(r, w)).collect::<Vec<_>>())).collect();
        let t = paired_t(&xb_means, &ax_means)?;
        let run_share = xb_means.iter().zip(&ax_means).filter(|(x, a)| x < a).count() as f64 / runs as f64;
        let (mut won, mut total) = (0usize, 0usize);
        for r in 0..runs {
            for x in &test.xb {
                for a in &test.ax {
                    total += 1;
                    if error_of(r, x) < error_of(r, a) {
                        won += 1;
                    }
                }
            }
        }
        outcomes.push(PartWordOutcome {
            name: test.name,
            xb_means,
            ax_means,
            t,
            run_share,
            comparison_share: won as f64 / total as f64,
        });
    }
    let word_errors = per_run
        .iter()
        .enumerate()
        .flat_map(|(r, errs)| part_words.iter().zip(errs).map(move |(w, e)| (r, w.clone(), *e)))
        .collect();
    Ok(SaffranResult {
        variant,
        model: kind,
        word_errors,
        outcomes,
    })
}

pub(super) fn saffran_report(variant: SaffranVariant, cfg: &StudyConfig) -> Result<ExperimentReport> {
    let epochs = cfg.epochs_or(STREAM_EPOCHS);
    let mut report = ExperimentReport::new(
        &format!("st4.{variant}"),
        json!({
            "words": variant.words().iter().map(|w| w.labels()).collect::<Vec<_>>(),
            "blocks": STREAM_BLOCKS,
            "words_per_block": WORDS_PER_BLOCK,
            "epochs": epochs,
            "cfg": cfg,
        }),
    );
    let mut words = CsvTable::new(&["model", "run", "word", "error"]);
    let mut runs = CsvTable::new(&["model", "test", "run", "xb_mean", "ax_mean"]);
    let mut tests = CsvTable::new(&["model", "test", "t", "df", "p", "cohen_d", "run_share", "comparison_share"]);
    for &kind in &cfg.models {
        let r = study4_saffran(variant, kind, cfg.encoding, cfg.hyper, epochs, cfg.runs, cfg.seed)?;
        for (run, w, e) in &r.word_errors {
            words.push(row![kind.name(), *run, w.labels(), *e]);
        }
        for o in &r.outcomes {
            for (i, (x, a)) in o.xb_means.iter().zip(&o.ax_means).enumerate() {
                runs.push(row![kind.name(), o.name, i, *x, *a]);
            }
            tests.push(row![kind.name(), o.name, o.t.statistic, o.t.df, o.t.p, o.t.effect, o.run_share, o.comparison_share]);
            let key = format!("{kind}.{}", o.name);
            report.stat(format!("{key}.xb_mean"), mean(&o.xb_means));
            report.stat(format!("{key}.ax_mean"), mean(&o.ax_means));
            report.stat(format!("{key}.t"), o.t.statistic);
            report.stat(format!("{key}.p"), o.t.p);
            report.stat(format!("{key}.d"), o.t.effect);
            report.stat(format!("{key}.run_share"), o.run_share);
            report.stat(format!("{key}.comparison_share"), o.comparison_share);
        }
    }
    report.table("partword_errors.csv", words);
    report.table("partword_runs.csv", runs);
    report.table("partword_tests.csv", tests);
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct InternalRepResult {
    pub model: ModelKind,
    /// Word `abc`, distance of `H(abc)` to `H(ab)` and to `H(bc)`.
    pub rows: Vec<(IntervalWord, f64, f64)>,
}

impl InternalRepResult {
    pub fn mean_begin(&self) -> f64 {
        mean(&self.rows.iter().map(|r| r.1).collect::<Vec<_>>())
    }

    pub fn mean_end(&self) -> f64 {
        mean(&self.rows.iter().map(|r| r.2).collect::<Vec<_>>())
    }

    /// Share of words whose representation is closer to its ending.
    pub fn end_closer_share(&self) -> f64 {
        self.rows.iter().filter(|r| r.2 < r.1).count() as f64 / self.rows.len() as f64
    }
}

/// Compare each 3-interval word's representation with those of its first
/// and last two intervals.
pub fn study4_internal_reps(
    corpus: &Corpus,
    kind: ModelKind,
    encoding: Encoding,
    hyper: Hyperparams,
    epochs: usize,
    seed: u64,
) -> Result<InternalRepResult> {
    let mut rng = named(seed, &format!("st4.reps/train/{kind}"), 0);
    let model = Model::trained(kind, encoding, hyper, corpus, epochs, &mut rng)?;
    let mut rows = Vec::new();
    for w in corpus.inventory(3).words() {
        let whole = model.hidden_rep(w)?;
        let begin = model.hidden_rep(&w.slice(0, 2))?;
        let end = model.hidden_rep(&w.slice(1, 3))?;
        rows.push((w.clone(), whole.cityblock(&begin), whole.cityblock(&end)));
    }
    Ok(InternalRepResult { model: kind, rows })
}

pub(super) fn internal_reps_report(corpora: &Corpora, cfg: &StudyConfig) -> Result<ExperimentReport> {
    let epochs = cfg.epochs_or(30);
    let mut report = ExperimentReport::new(
        "st4.reps",
        json!({"corpus": corpora.primary_name, "epochs": epochs, "cfg": cfg}),
    );
    let mut t = CsvTable::new(&["model", "word", "dist_begin", "dist_end"]);
    for &kind in &cfg.models {
        let r = study4_internal_reps(&corpora.primary, kind, cfg.encoding, cfg.hyper, epochs, cfg.seed)?;
        for (w, b, e) in &r.rows {
            t.push(row![kind.name(), w.labels(), *b, *e]);
        }
        report.stat(format!("{kind}.mean_begin"), r.mean_begin());
        report.stat(format!("{kind}.mean_end"), r.mean_end());
        report.stat(format!("{kind}.end_closer_share"), r.end_closer_share());
    }
    report.table("internal_reps.csv", t);
    Ok(report)
}
