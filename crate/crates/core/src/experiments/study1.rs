use serde_json::json;

use crate::analysis::{mean, multiple_r_squared, pearson, sem, Pca};
use crate::corpus::{concatenate, contour, move_word_to_front, Corpus, TpTable};
use crate::encoding::{word_from_labels, Encoding, IntervalWord};
use crate::error::{Error, Result};
use crate::nets::{Hyperparams, Model, ModelKind};
use crate::rng::named;
use crate::row;

use super::{scatter_svg, word_errors, Corpora, CsvTable, ExperimentReport, ScatterPoint, StudyConfig};

#[derive(Clone, Debug)]
pub struct ClusterPoint {
    pub word: IntervalWord,
    pub contour: String,
    pub frequency: usize,
    pub pc1: f64,
    pub pc2: f64,
}

#[derive(Clone, Debug)]
pub struct ClusterResult {
    pub model: ModelKind,
    pub encoding: Encoding,
    pub points: Vec<ClusterPoint>,
    pub explained: [f64; 2],
    /// Mean PC-plane distance between words sharing a contour.
    pub within_mean: f64,
    /// Mean PC-plane distance between words with different contours.
    pub between_mean: f64,
    pub silhouette: f64,
    /// For each one-step contour class (`R=`, `F=`, `=R`, `=F`): the words
    /// ordered by interval size and the share of consecutive steps that move
    /// further from `mm`.
    pub ladders: Vec<(String, Vec<IntervalWord>, f64)>,
}

fn plane_dist(a: &ClusterPoint, b: &ClusterPoint) -> f64 {
    ((a.pc1 - b.pc1).powi(2) + (a.pc2 - b.pc2).powi(2)).sqrt()
}

/// Project the hidden representations of every 2-interval word onto the
/// first principal plane and measure how well contour classes separate.
pub fn study1_clusters(
    corpus: &Corpus,
    kind: ModelKind,
    encoding: Encoding,
    hyper: Hyperparams,
    epochs: usize,
    seed: u64,
) -> Result<ClusterResult> {
    let mut rng = named(seed, &format!("st1.1/{kind}/{encoding}"), 0);
    let model = Model::trained(kind, encoding, hyper, corpus, epochs, &mut rng)?;
    let inv = corpus.inventory(2);
    let words: Vec<IntervalWord> = inv.words().cloned().collect();
    let reps: Vec<Vec<f64>> = words
        .iter()
        .map(|w| model.hidden_rep(w).map(|h| h.0.to_vec()))
        .collect::<Result<_>>()?;
    let pca = Pca::fit(&reps)?;
    let ratio = pca.explained_ratio();
    let points: Vec<ClusterPoint> = words
        .iter()
        .zip(&pca.scores)
        .map(|(w, s)| ClusterPoint {
            word: w.clone(),
            contour: contour(w).to_string(),
            frequency: inv.count(w),
            pc1: s[0],
            pc2: s.get(1).copied().unwrap_or(0.0),
        })
        .collect();

    let (mut within, mut between) = (Vec::new(), Vec::new());
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = plane_dist(&points[i], &points[j]);
            if points[i].contour == points[j].contour {
                within.push(d);
            } else {
                between.push(d);
            }
        }
    }
    let silhouette = silhouette(&points);

    let mm = points.iter().find(|p| p.word.semitones() == [0, 0]);
    let mut ladders = Vec::new();
    if let Some(mm) = mm {
        for class in ["R=", "F=", "=R", "=F"] {
            let mut members: Vec<&ClusterPoint> = points.iter().filter(|p| p.contour == class).collect();
            members.sort_by_key(|p| p.word.semitones().iter().map(|s| s.abs()).sum::<i32>());
            let dists: Vec<f64> = members.iter().map(|p| plane_dist(p, mm)).collect();
            let steps = dists.len().saturating_sub(1);
            let ordered = dists.windows(2).filter(|w| w[1] > w[0]).count();
            let share = if steps == 0 { f64::NAN } else { ordered as f64 / steps as f64 };
            ladders.push((class.to_string(), members.iter().map(|p| p.word.clone()).collect(), share));
        }
    }

    Ok(ClusterResult {
        model: kind,
        encoding,
        points,
        explained: [ratio[0], ratio.get(1).copied().unwrap_or(0.0)],
        within_mean: mean(&within),
        between_mean: mean(&between),
        silhouette,
        ladders,
    })
}

/// Mean silhouette width in the PC plane with contour classes as clusters;
/// singleton classes contribute 0.
fn silhouette(points: &[ClusterPoint]) -> f64 {
    let mut classes: Vec<&str> = points.iter().map(|p| p.contour.as_str()).collect();
    classes.sort();
    classes.dedup();
    let mut total = 0.0;
    for p in points {
        let mut own = (0.0, 0usize);
        let mut other = vec![(0.0, 0usize); classes.len()];
        for q in points {
            if std::ptr::eq(p, q) {
                continue;
            }
            let d = plane_dist(p, q);
            if q.contour == p.contour {
                own.0 += d;
                own.1 += 1;
            } else {
                let k = classes.iter().position(|c| *c == q.contour).expect("known class");
                other[k].0 += d;
                other[k].1 += 1;
            }
        }
        if own.1 == 0 {
            continue;
        }
        let a = own.0 / own.1 as f64;
        let b = other
            .iter()
            .filter(|o| o.1 > 0)
            .map(|o| o.0 / o.1 as f64)
            .fold(f64::INFINITY, f64::min);
        if b.is_finite() {
            total += (b - a) / a.max(b);
        }
    }
    total / points.len() as f64
}

pub(super) fn clusters_report(corpora: &Corpora, cfg: &StudyConfig) -> Result<ExperimentReport> {
    let epochs = cfg.epochs_or(30);
    let mut report = ExperimentReport::new("st1.1", json!({"corpus": corpora.primary_name, "epochs": epochs, "cfg": cfg}));
    let mut table = CsvTable::new(&["model", "encoding", "word", "contour", "frequency", "pc1", "pc2"]);
    let mut ladder_table = CsvTable::new(&["model", "encoding", "class", "words", "ordered_share"]);
    for &kind in &cfg.models {
        for encoding in [Encoding::Ordinal, Encoding::OneHot] {
            let r = study1_clusters(&corpora.primary, kind, encoding, cfg.hyper, epochs, cfg.seed)?;
            for p in &r.points {
                table.push(row![kind.name(), encoding.name(), p.word.labels(), p.contour.as_str(), p.frequency, p.pc1, p.pc2]);
            }
            for (class, words, share) in &r.ladders {
                let list: Vec<String> = words.iter().map(|w| w.labels()).collect();
                ladder_table.push(row![kind.name(), encoding.name(), class.as_str(), list.join(" "), *share]);
            }
            let key = format!("{kind}.{encoding}");
            report.stat(format!("{key}.within_mean"), r.within_mean);
            report.stat(format!("{key}.between_mean"), r.between_mean);
            report.stat(format!("{key}.silhouette"), r.silhouette);
            report.stat(format!("{key}.explained_pc1"), r.explained[0]);
            report.stat(format!("{key}.explained_pc2"), r.explained[1]);
            let pts: Vec<ScatterPoint> = r
                .points
                .iter()
                .map(|p| ScatterPoint {
                    x: p.pc1,
                    y: p.pc2,
                    label: p.word.labels(),
                    group: p.contour.clone(),
                })
                .collect();
            report.attachments.insert(
                format!("pca_{kind}_{encoding}.svg"),
                scatter_svg(&format!("2-interval words, {kind}, {encoding} coding"), "PC1", "PC2", &pts),
            );
        }
    }
    report.table("pca_clusters.csv", table);
    report.table("contour_ladders.csv", ladder_table);
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct TraceRow {
    pub corpus: String,
    pub encoding: Encoding,
    pub word_len: usize,
    pub words: usize,
    /// Squared multiple correlation of each interval position with the
    /// word's hidden representation.
    pub r_squared: Vec<f64>,
}

/// How much of each interval of 3- and 4-interval words can be read back
/// linearly from the word's final hidden state.
pub fn study1_trace(
    name: &str,
    corpus: &Corpus,
    encoding: Encoding,
    hyper: Hyperparams,
    epochs: usize,
    seed: u64,
) -> Result<Vec<TraceRow>> {
    let mut rng = named(seed, &format!("st1.2/{name}/{encoding}"), 0);
    let model = Model::trained(ModelKind::Tracx2, encoding, hyper, corpus, epochs, &mut rng)?;
    let mut rows = Vec::new();
    for n in [3, 4] {
        let words: Vec<IntervalWord> = corpus.inventory(n).words().cloned().collect();
        let reps: Vec<[f64; 39]> = words.iter().map(|w| model.hidden_rep(w).map(|h| h.0)).collect::<Result<_>>()?;
        let columns: Vec<Vec<f64>> = (0..39).map(|j| reps.iter().map(|r| r[j]).collect()).collect();
        let cols: Vec<&[f64]> = columns.iter().map(Vec::as_slice).collect();
        let mut r_squared = Vec::with_capacity(n);
        for k in 0..n {
            let target: Vec<f64> = words.iter().map(|w| w[k].semitones() as f64).collect();
            r_squared.push(multiple_r_squared(&cols, &target)?);
        }
        rows.push(TraceRow {
            corpus: name.to_string(),
            encoding,
            word_len: n,
            words: words.len(),
            r_squared,
        });
    }
    Ok(rows)
}

pub(super) fn trace_report(corpora: &Corpora, cfg: &StudyConfig) -> Result<ExperimentReport> {
    let epochs = cfg.epochs_or(30);
    let mut report = ExperimentReport::new("st1.2", json!({"epochs": epochs, "cfg": cfg}));
    let mut table = CsvTable::new(&["corpus", "encoding", "word_len", "words", "r2_i1", "r2_i2", "r2_i3", "r2_i4"]);
    let mut sets = vec![(corpora.primary_name.as_str(), &corpora.primary)];
    if let Some((n, c)) = &corpora.secondary {
        sets.push((n.as_str(), c));
    }
    for (name, corpus) in sets {
        for encoding in [Encoding::Ordinal, Encoding::OneHot] {
            for r in study1_trace(name, corpus, encoding, cfg.hyper, epochs, cfg.seed)? {
                let cell = |k: usize| r.r_squared.get(k).copied();
                table.push(row![name, encoding.name(), r.word_len, r.words, cell(0), cell(1), cell(2), cell(3)]);
                for (k, v) in r.r_squared.iter().enumerate() {
                    report.stat(format!("{name}.{encoding}.w{}.i{}", r.word_len, k + 1), *v);
                }
            }
        }
    }
    report.table("table1.csv", table);
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct PrimacyResult {
    pub word: IntervalWord,
    pub moved: usize,
    /// Error on the word after training on the plain concatenation, per run.
    pub baseline: Vec<f64>,
    /// Same initial weights, trained with the word's occurrences moved to the
    /// front.
    pub relocated: Vec<f64>,
}

impl PrimacyResult {
    pub fn mean_drop(&self) -> f64 {
        mean(&self.baseline) - mean(&self.relocated)
    }
}

/// Train TRACX2 on all songs chained into one sequence, with and without
/// the word's occurrences moved to the start.
pub fn study1_primacy(
    corpus: &Corpus,
    word: &IntervalWord,
    hyper: Hyperparams,
    epochs: usize,
    runs: usize,
    seed: u64,
) -> Result<PrimacyResult> {
    let chained = concatenate(corpus);
    let relocation = move_word_to_front(&chained, word);
    let plain = Corpus::new(vec![chained]);
    let moved = Corpus::new(vec![relocation.song]);
    let (mut baseline, mut relocated) = (Vec::with_capacity(runs), Vec::with_capacity(runs));
    for run in 0..runs {
        let mut init = named(seed, "st1.3/primacy/init", run as u64);
        let fresh = Model::new(ModelKind::Tracx2, Encoding::Ordinal, hyper, &mut init);
        let mut a = fresh.clone();
        a.train(&plain, epochs, &mut named(seed, "st1.3/primacy/order", run as u64))?;
        let mut b = fresh;
        b.train(&moved, epochs, &mut named(seed, "st1.3/primacy/order", run as u64))?;
        baseline.push(a.word_error(word)?);
        relocated.push(b.word_error(word)?);
    }
    Ok(PrimacyResult {
        word: word.clone(),
        moved: relocation.moved,
        baseline,
        relocated,
    })
}

/// Errors of the three models on the corpus words, averaged over runs.
#[derive(Clone, Debug)]
pub struct FitResult {
    /// Words of length 2, 3 and 4 with corpus frequency and average TP.
    pub words: Vec<(IntervalWord, usize, f64)>,
    /// Model to per-word error (mean over runs), aligned with `words`.
    pub errors: Vec<(ModelKind, Vec<f64>)>,
    pub runs: usize,
}

impl FitResult {
    pub fn errors_of(&self, kind: ModelKind) -> Option<&[f64]> {
        self.errors.iter().find(|e| e.0 == kind).map(|e| e.1.as_slice())
    }

    fn select(&self, kind: ModelKind, len: usize) -> Option<Vec<f64>> {
        let e = self.errors_of(kind)?;
        Some(self.words.iter().zip(e).filter(|(w, _)| w.0.len() == len).map(|(_, v)| *v).collect())
    }

    pub fn mean_error(&self, kind: ModelKind, len: usize) -> Option<f64> {
        self.select(kind, len).map(|v| mean(&v))
    }

    pub fn frequencies(&self, len: usize) -> Vec<f64> {
        self.words.iter().filter(|w| w.0.len() == len).map(|w| w.1 as f64).collect()
    }

    pub fn tps(&self, len: usize) -> Vec<f64> {
        self.words.iter().filter(|w| w.0.len() == len).map(|w| w.2).collect()
    }

    pub fn correlation(&self, a: ModelKind, b: ModelKind, len: usize) -> Result<f64> {
        let missing = || Error::Config("model not in comparison".into());
        pearson(&self.select(a, len).ok_or_else(missing)?, &self.select(b, len).ok_or_else(missing)?)
    }

    /// Correlation of TRACX2 error with `RAE - TRACX2`.
    pub fn difference_correlation(&self, len: usize) -> Result<f64> {
        let missing = || Error::Config("comparison needs TRACX2 and RAE".into());
        let t = self.select(ModelKind::Tracx2, len).ok_or_else(missing)?;
        let r = self.select(ModelKind::Rae, len).ok_or_else(missing)?;
        let diff: Vec<f64> = r.iter().zip(&t).map(|(r, t)| r - t).collect();
        pearson(&t, &diff)
    }

    /// Rank (1 = lowest error) of a word among the words of its length.
    pub fn rank(&self, kind: ModelKind, word: &IntervalWord) -> Option<usize> {
        let e = self.errors_of(kind)?;
        let i = self.words.iter().position(|w| &w.0 == word)?;
        let len = word.len();
        Some(
            1 + self
                .words
                .iter()
                .zip(e)
                .filter(|(w, v)| w.0.len() == len && **v < e[i])
                .count(),
        )
    }
}

/// Train each model `runs` times on the corpus and average the error of
/// every 2-, 3- and 4-interval corpus word.
pub fn study1_fit(
    corpus: &Corpus,
    models: &[ModelKind],
    hyper: Hyperparams,
    epochs: usize,
    runs: usize,
    seed: u64,
) -> Result<FitResult> {
    let tp = TpTable::build(corpus);
    let mut words = Vec::new();
    for n in [2, 3, 4] {
        for (w, c) in corpus.inventory(n).iter() {
            words.push((w.clone(), c, tp.avg_tp(w).value));
        }
    }
    let list: Vec<IntervalWord> = words.iter().map(|w| w.0.clone()).collect();
    let mut errors = Vec::new();
    for &kind in models {
        let mut acc = vec![0.0; list.len()];
        for run in 0..runs {
            let mut rng = named(seed, &format!("st1.3/fit/{kind}"), run as u64);
            let m = Model::trained(kind, Encoding::Ordinal, hyper, corpus, epochs, &mut rng)?;
            for (a, e) in acc.iter_mut().zip(word_errors(&m, &list)?) {
                *a += e / runs as f64;
            }
        }
        errors.push((kind, acc));
    }
    Ok(FitResult { words, errors, runs })
}

pub(super) fn primacy_report(corpora: &Corpora, cfg: &StudyConfig) -> Result<ExperimentReport> {
    let epochs = cfg.epochs_or(30);
    let corpus = &corpora.primary;
    let mut report = ExperimentReport::new(
        "st1.3",
        json!({"corpus": corpora.primary_name, "epochs": epochs, "cfg": cfg}),
    );
    let mo = word_from_labels("mo")?;
    let p = study1_primacy(corpus, &mo, cfg.hyper, epochs, cfg.runs, cfg.seed)?;
    let mut t = CsvTable::new(&["run", "baseline_error", "relocated_error"]);
    for (i, (a, b)) in p.baseline.iter().zip(&p.relocated).enumerate() {
        t.push(row![i, *a, *b]);
    }
    report.table("primacy.csv", t);
    report.stat("primacy.moved", p.moved as f64);
    report.stat("primacy.baseline_mean", mean(&p.baseline));
    report.stat("primacy.baseline_sem", sem(&p.baseline));
    report.stat("primacy.relocated_mean", mean(&p.relocated));
    report.stat("primacy.relocated_sem", sem(&p.relocated));
    report.stat("primacy.drop", p.mean_drop());

    let fit = study1_fit(corpus, &cfg.models, cfg.hyper, epochs, cfg.runs, cfg.seed)?;
    let mut headers = vec!["word", "length", "frequency", "avg_tp"];
    headers.extend(fit.errors.iter().map(|e| e.0.name()));
    let mut t = CsvTable::new(&headers);
    for (i, (w, c, tp)) in fit.words.iter().enumerate() {
        let mut r = row![w.labels(), w.len(), *c, *tp];
        r.extend(fit.errors.iter().map(|e| e.1[i].into()));
        t.push(r);
    }
    report.table("word_errors.csv", t);
    for &kind in &cfg.models {
        for n in [2, 3, 4] {
            if let Some(m) = fit.mean_error(kind, n) {
                report.stat(format!("{kind}.mean_error.w{n}"), m);
            }
        }
        if let Some(e) = fit.select(kind, 2) {
            report.stat(format!("{kind}.r_frequency.w2"), pearson(&fit.frequencies(2), &e)?);
            report.stat(format!("{kind}.r_tp.w2"), pearson(&fit.tps(2), &e)?);
        }
        for labels in ["ay", "dv"] {
            let w = word_from_labels(labels)?;
            if let Some(r) = fit.rank(kind, &w) {
                report.stat(format!("{kind}.rank.{labels}"), r as f64);
            }
        }
    }
    let has = |k| cfg.models.contains(&k);
    if has(ModelKind::Tracx2) && has(ModelKind::Rae) {
        report.stat("r_tracx2_rae.w2", fit.correlation(ModelKind::Tracx2, ModelKind::Rae, 2)?);
        for n in [2, 3, 4] {
            report.stat(format!("r_tracx2_vs_rae_minus_tracx2.w{n}"), fit.difference_correlation(n)?);
        }
    }
    if has(ModelKind::Tracx2) && has(ModelKind::Srn) {
        report.stat("r_tracx2_srn.w2", fit.correlation(ModelKind::Tracx2, ModelKind::Srn, 2)?);
    }
    report.stat("words.w2", fit.frequencies(2).len() as f64);
    Ok(report)
}
