//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria that fail for documented reasons are listed in `KNOWN_GAPS`;
//! they still print FAIL. The process exits nonzero when any other criterion
//! fails, or when any criterion fails and `ACCEPTANCE_STRICT=1` is set.

mod common;

use std::collections::HashMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng as _;

use tracx2::analysis::{mean, Pca};
use tracx2::analysis::stats::{f_upper_p, t_two_sided_p};
use tracx2::corpus::builtin;
use tracx2::encoding::{encode_ordinal, word_from_labels, ActVector, Encoding, Interval, CODE_LEN};
use tracx2::experiments::{
    contour_words, run_study, study1_fit, study1_primacy, study1_trace, study2_prior_learning,
    study2_unheard_categories, study3_contour, study4_internal_reps, study4_saffran, ContourModel, Corpora, Regime,
    SaffranVariant, StudyConfig, StudyId, STREAM_EPOCHS,
};
use tracx2::nets::{activation, activation_deriv, Hyperparams, Model, ModelKind, StepTrace, Tracx2Net};
use tracx2::rng::{seeded, Rng};

const SEED: u64 = 1;
const RUNS: usize = 20;
const EPOCHS: usize = 30;

/// Criteria that do not reproduce with this implementation and corpus. Each
/// is explained in the decisions ledger and the README.
const KNOWN_GAPS: &[u32] = &[3, 5, 6, 7, 8, 10];

struct Outcome {
    pass: bool,
    lines: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: String) {
        self.pass &= ok;
        self.lines.push(format!("{} {what}", if ok { "ok  " } else { "MISS" }));
    }

    fn info(&mut self, what: String) {
        self.lines.push(format!("     {what}"));
    }
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn hyper() -> Hyperparams {
    Hyperparams::default()
}

fn c1_encoding() -> Outcome {
    let mut o = Outcome::new();
    let mut bad = 0;
    for a in Interval::all() {
        for b in Interval::all() {
            let h = encode_ordinal(a).hamming(&encode_ordinal(b));
            if h as i32 != (a.semitones() - b.semitones()).abs() {
                bad += 1;
            }
        }
    }
    o.check(bad == 0, format!("Hamming law over {} pairs, {bad} violations", CODE_LEN * CODE_LEN));
    let code = |c| Encoding::Ordinal.encode(Interval::from_label(c).unwrap());
    let (mo, mt) = (code('m').hamming(&code('o')), code('m').hamming(&code('t')));
    o.check(mo == 2, format!("Hamming(m, o) = {mo}"));
    o.check(mt == 7, format!("Hamming(m, t) = {mt}"));
    o
}

fn c2_corpus() -> Outcome {
    let mut o = Outcome::new();
    let c = builtin::set1();
    let n = c.total_intervals();
    let (m, s) = c.interval_moments();
    let w2 = c.inventory(2);
    let w3 = c.inventory(3).len();
    let top = w2.most_common();
    let (top_word, top_count) = (top[0].0.labels(), top[0].1);
    let rel = |x: usize, t: f64| (x as f64 - t).abs() / t;
    o.check(rel(n, 437.0) <= 0.05, format!("intervals {n} (reference 437, ±5%)"));
    o.check(within(m, -0.0092, 0.1), format!("interval mean {m:.4} (reference -0.0092, ±0.1)"));
    o.check(within(s, 3.45, 0.5), format!("interval SD {s:.3} (reference 3.45, ±0.5)"));
    o.check(rel(w2.len(), 84.0) <= 0.10, format!("distinct 2-words {} (reference 84, ±10%)", w2.len()));
    o.check(rel(w3, 161.0) <= 0.10, format!("distinct 3-words {w3} (reference 161, ±10%)"));
    o.check(top_word == "mm", format!("most frequent 2-word '{top_word}' x{top_count} (reference 'mm' x61)"));
    o
}

fn c3_c4_fit() -> (Outcome, Outcome) {
    let c = builtin::set1();
    let fit = study1_fit(&c, &[ModelKind::Tracx2, ModelKind::Rae], hyper(), EPOCHS, RUNS, SEED).unwrap();
    let mut o3 = Outcome::new();
    let t2 = fit.mean_error(ModelKind::Tracx2, 2).unwrap();
    let r2 = fit.mean_error(ModelKind::Rae, 2).unwrap();
    o3.check(within(t2, 0.17, 0.05), format!("TRACX2 mean 2-word error {t2:.3} (target 0.17 ±0.05)"));
    o3.check(within(r2, 0.50, 0.05), format!("RAE mean 2-word error {r2:.3} (target 0.50 ±0.05)"));
    let r = fit.correlation(ModelKind::Tracx2, ModelKind::Rae, 2).unwrap();
    o3.check(within(r, 0.79, 0.1), format!("r(TRACX2, RAE) over 2-words {r:.3} (target 0.79 ±0.1)"));
    let d: Vec<f64> = [2, 3, 4].iter().map(|&n| fit.difference_correlation(n).unwrap()).collect();
    o3.check(
        d.iter().all(|&x| x < 0.0),
        format!("difference correlations {:.3} / {:.3} / {:.3} all negative", d[0], d[1], d[2]),
    );
    o3.check(d[1] < d[0] && d[2] < d[1], "difference correlations decrease with word length".into());

    let mut o4 = Outcome::new();
    let freq = fit.frequencies(2);
    let err = &fit.errors_of(ModelKind::Tracx2).unwrap()[..freq.len()];
    let rf = tracx2::analysis::pearson(&freq, err).unwrap();
    let rt = tracx2::analysis::pearson(&fit.tps(2), err).unwrap();
    o4.info(format!("{} 2-words, errors averaged over {RUNS} runs", freq.len()));
    o4.check(rf < -0.2, format!("r(frequency, error) {rf:.3} < -0.2"));
    o4.check(rt > 0.0 && rt.abs() < 0.3, format!("r(TP, error) {rt:.3} in (0, 0.3)"));
    (o3, o4)
}

fn c5_table() -> Outcome {
    let mut o = Outcome::new();
    let corpora = [("set1", builtin::set1()), ("set2", builtin::set2())];
    let mut rows = HashMap::new();
    for (name, c) in &corpora {
        for enc in [Encoding::Ordinal, Encoding::OneHot] {
            for r in study1_trace(name, c, enc, hyper(), EPOCHS, SEED).unwrap() {
                rows.insert((name.to_string(), enc, r.word_len), r.r_squared);
            }
        }
    }
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.2}")).collect::<Vec<_>>().join("/");
    for (len, target) in [(3usize, vec![0.97, 0.98, 1.0]), (4, vec![0.84, 0.85, 0.97, 1.0])] {
        let got = &rows[&("set1".to_string(), Encoding::Ordinal, len)];
        let ok = got.iter().zip(&target).all(|(g, t)| within(*g, *t, 0.05));
        o.check(ok, format!("set1 ordinal {len}-words R² {} (target {} ±0.05)", fmt(got), fmt(&target)));
    }
    for (name, _) in &corpora {
        for len in [3usize, 4] {
            let ord = &rows[&(name.to_string(), Encoding::Ordinal, len)];
            let one = &rows[&(name.to_string(), Encoding::OneHot, len)];
            let lower = one.iter().zip(ord).all(|(a, b)| a < b);
            o.check(lower, format!("{name} {len}-words one-hot {} below ordinal {}", fmt(one), fmt(ord)));
            for (enc, v) in [("ordinal", ord), ("one-hot", one)] {
                let ok = v.last().unwrap() >= v.first().unwrap();
                o.check(ok, format!("{name} {len}-words {enc}: last ≥ first"));
            }
        }
    }
    o
}

fn c6_primacy() -> Outcome {
    let mut o = Outcome::new();
    let w = word_from_labels("mo").unwrap();
    let r = study1_primacy(&builtin::set1(), &w, hyper(), EPOCHS, RUNS, SEED).unwrap();
    o.info(format!("{} occurrences moved", r.moved));
    o.check(
        r.mean_drop() >= 0.05,
        format!(
            "error('mo') {:.4} -> {:.4}, drop {:.4} (target ≥ 0.05)",
            mean(&r.baseline),
            mean(&r.relocated),
            r.mean_drop()
        ),
    );
    o
}

fn c7_prior() -> Outcome {
    let mut o = Outcome::new();
    let r = study2_prior_learning(
        &builtin::set1(),
        &builtin::test_melody(),
        &ModelKind::ALL,
        Encoding::Ordinal,
        hyper(),
        EPOCHS,
        RUNS,
        SEED,
    )
    .unwrap();
    o.info(format!("{} test words", r.test_words.len()));
    for kind in ModelKind::ALL {
        let songs = r.cell(kind, Regime::Songs).unwrap();
        let within_song = r.cell(kind, Regime::WithinSongPermute).unwrap();
        let untrained = r.cell(kind, Regime::Untrained).unwrap();
        o.check(
            songs.mean() < untrained.mean(),
            format!("{kind}: songs {:.4} < untrained {:.4}", songs.mean(), untrained.mean()),
        );
        let sem = songs.sem().max(within_song.sem());
        o.check(
            (within_song.mean() - songs.mean()).abs() <= sem,
            format!(
                "{kind}: within-song permute {:.4} within 1 SEM ({sem:.4}) of songs {:.4}",
                within_song.mean(),
                songs.mean()
            ),
        );
    }
    o
}

fn c8_unheard() -> Outcome {
    let mut o = Outcome::new();
    let c = builtin::set1();
    for kind in ModelKind::ALL {
        let r = study2_unheard_categories(&c, kind, Encoding::Ordinal, hyper(), EPOCHS, SEED).unwrap();
        let m = r.means();
        o.check(
            m[0] > m[1] && m[1] > m[2],
            format!("{kind}: far {:.3} > near-unfamiliar {:.3} > near-familiar {:.3}", m[0], m[1], m[2]),
        );
        if kind == ModelKind::Tracx2 {
            o.check(
                r.anova.p < 0.001,
                format!("{kind}: F({}, {}) = {:.1}, p = {:.2e}", r.anova.df_between, r.anova.df_within, r.anova.f, r.anova.p),
            );
            for (i, j, t, p) in &r.pairwise {
                o.check(*p < 0.05, format!("{kind}: pair {i}-{j} t = {:.2}, Bonferroni p = {p:.2e}", t.statistic));
            }
            let ok = m.iter().zip([0.30, 0.26, 0.20]).all(|(g, t)| within(*g, t, 0.05));
            o.check(ok, format!("{kind}: means within ±0.05 of 0.30/0.26/0.20"));
        }
    }
    o
}

fn c9_contour() -> Outcome {
    let mut o = Outcome::new();
    let c = builtin::set1();
    let words = contour_words(SEED).unwrap();
    let run = |m| study3_contour(&c, m, &words, Encoding::Ordinal, hyper(), EPOCHS, SEED).unwrap().summary;
    let t = run(ContourModel::Trained(ModelKind::Tracx2));
    o.info(format!("{} triplets scored, {} skipped", t.triplets.len(), t.skipped.len()));
    o.check(t.expected_share() >= 0.90, format!("TRACX2 same < different in {:.1}% (≥ 90%)", 100.0 * t.expected_share()));
    o.check(
        t.significant_share() >= 0.60,
        format!("TRACX2 Bonferroni-significant {:.1}% (≥ 60%)", 100.0 * t.significant_share()),
    );
    let u = run(ContourModel::Untrained);
    o.check(
        u.significant_share() <= 0.10,
        format!("untrained significant {:.1}% (≤ 10%)", 100.0 * u.significant_share()),
    );
    let s = run(ContourModel::Trained(ModelKind::Srn));
    o.check(
        s.significant_expected_share() < 0.10,
        format!("SRN significant in expected direction {:.1}% (< 10%)", 100.0 * s.significant_expected_share()),
    );
    o
}

fn c10_end_of_word() -> Outcome {
    let mut o = Outcome::new();
    let sa = |v| study4_saffran(v, ModelKind::Tracx2, Encoding::Ordinal, hyper(), STREAM_EPOCHS, RUNS, SEED).unwrap();
    let rep = sa(SaffranVariant::Repaired);
    let x = &rep.outcomes[0];
    o.check(
        mean(&x.xb_means) < mean(&x.ax_means) && x.t.p < 0.01 && x.t.effect < 0.0,
        format!(
            "repaired: Xb {:.4} vs aX {:.4}, t({}) = {:.2}, p = {:.2e}, d = {:.2}",
            mean(&x.xb_means),
            mean(&x.ax_means),
            x.t.df,
            x.t.statistic,
            x.t.p,
            x.t.effect
        ),
    );
    let orig = sa(SaffranVariant::Original);
    for out in &orig.outcomes {
        let lower = mean(&out.xb_means) < mean(&out.ax_means);
        let desc = format!(
            "original {}: Xb {:.4} vs aX {:.4}, t = {:.2}, p = {:.3}",
            out.name,
            mean(&out.xb_means),
            mean(&out.ax_means),
            out.t.statistic,
            out.t.p
        );
        match out.name {
            "pn_as_xb" => o.check(lower && out.t.p < 0.05, format!("{desc} (advantage expected)")),
            _ => o.check(out.t.p > 0.05, format!("{desc} (no difference expected)")),
        }
    }
    let r = study4_internal_reps(&builtin::set1(), ModelKind::Tracx2, Encoding::Ordinal, hyper(), EPOCHS, SEED).unwrap();
    o.check(
        r.end_closer_share() >= 0.80,
        format!("H(abc) closer to H(bc) for {:.1}% of 3-words (≥ 80%)", 100.0 * r.end_closer_share()),
    );
    o.check(
        within(r.mean_end(), 0.58, 0.1) && within(r.mean_begin(), 0.76, 0.1),
        format!("mean distances to end {:.3} / begin {:.3} (targets 0.58 / 0.76 ±0.1)", r.mean_end(), r.mean_begin()),
    );
    o
}

fn random_act(rng: &mut Rng) -> ActVector {
    ActVector(std::array::from_fn(|_| rng.random_range(-1.0..1.0)))
}

/// Plain-loop recurrent autoencoder step written from the model equations,
/// sharing nothing with the library beyond the activation function.
struct ReferenceRae {
    w1: Vec<Vec<f64>>,
    w2: Vec<Vec<f64>>,
    rate: f64,
    offset: f64,
}

impl ReferenceRae {
    fn step(&mut self, lhs: &[f64], rhs: &[f64]) -> (f64, Vec<f64>) {
        let mut x: Vec<f64> = lhs.iter().chain(rhs).copied().collect();
        let n_in = x.len();
        x.push(1.0);
        let hnet: Vec<f64> = self.w1.iter().map(|row| row.iter().zip(&x).map(|(w, v)| w * v).sum()).collect();
        let mut h: Vec<f64> = hnet.iter().map(|&v| activation(v)).collect();
        h.push(1.0);
        let onet: Vec<f64> = self.w2.iter().map(|row| row.iter().zip(&h).map(|(w, v)| w * v).sum()).collect();
        let out: Vec<f64> = onet.iter().map(|&v| activation(v)).collect();
        let error = (0..n_in).map(|i| (x[i] - out[i]).abs()).sum::<f64>() / n_in as f64;
        let od: Vec<f64> = (0..n_in).map(|i| (x[i] - out[i]) * (activation_deriv(onet[i]) + self.offset)).collect();
        let hd: Vec<f64> = (0..hnet.len())
            .map(|j| (0..n_in).map(|i| self.w2[i][j] * od[i]).sum::<f64>() * (activation_deriv(hnet[j]) + self.offset))
            .collect();
        for (i, row) in self.w2.iter_mut().enumerate() {
            for (j, w) in row.iter_mut().enumerate() {
                *w += self.rate * od[i] * h[j];
            }
        }
        for (j, row) in self.w1.iter_mut().enumerate() {
            for (k, w) in row.iter_mut().enumerate() {
                *w += self.rate * hd[j] * x[k];
            }
        }
        h.pop();
        (error, h)
    }
}

fn c11_oracles() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = seeded(SEED, 11);

    // Gradients against central differences on small random nets.
    let small = Hyperparams {
        weight_init: 0.1,
        ..hyper()
    };
    let (mut worst, mut nets) = (0.0f64, 0);
    while nets < 4 {
        let net = Tracx2Net::new(Encoding::Ordinal, small, &mut rng);
        let (l, r) = (random_act(&mut rng), random_act(&mut rng));
        if common::kink_margin(&net, &l, &r) < 1e-3 {
            continue;
        }
        worst = worst.max(common::gradient_check(&net, &l, &r, 1e-4, 1e-6));
        nets += 1;
    }
    o.check(worst < 1e-4, format!("gradient vs central differences: max relative error {worst:.2e} (< 1e-4)"));

    // p-values against quadrature.
    let mut worst_p = 0.0f64;
    for _ in 0..200 {
        let df = rng.random_range(1..60) as f64;
        let t = rng.random_range(-8.0..8.0);
        worst_p = worst_p.max((t_two_sided_p(t, df) - common::t_p_oracle(t, df)).abs());
        let (d1, d2) = (rng.random_range(1..12) as f64, rng.random_range(1..200) as f64);
        let f = rng.random_range(0.0..25.0);
        worst_p = worst_p.max((f_upper_p(f, d1, d2) - common::f_p_oracle(f, d1, d2)).abs());
    }
    o.check(worst_p < 1e-6, format!("t/F p-values vs quadrature: max deviation {worst_p:.2e} (< 1e-6)"));

    // PCA reconstruction with all components.
    let rows: Vec<Vec<f64>> = (0..60).map(|_| (0..12).map(|_| rng.random_range(-2.0..2.0)).collect()).collect();
    let pca = Pca::fit(&rows).unwrap();
    let k = pca.components.len();
    let mut worst_r = 0.0f64;
    for (row, scores) in rows.iter().zip(&pca.scores) {
        for (a, b) in row.iter().zip(pca.reconstruct(scores, k)) {
            worst_r = worst_r.max((a - b).abs());
        }
    }
    o.check(worst_r < 1e-8, format!("PCA full reconstruction: max deviation {worst_r:.2e} (< 1e-8)"));

    // RAE and Δ = 0 TRACX2 step for step.
    let corpus = builtin::set1();
    let h = hyper();
    let lib_rae = Model::new(ModelKind::Rae, Encoding::Ordinal, h, &mut seeded(SEED, 12));
    let mut gated = Tracx2Net::new(Encoding::Ordinal, h, &mut seeded(SEED, 12));
    let (l1, l2) = gated.layers();
    let rows_of = |d: &tracx2::nets::Dense| d.weights().chunks(d.inputs() + 1).map(<[f64]>::to_vec).collect::<Vec<_>>();
    let mut reference = ReferenceRae {
        w1: rows_of(l1),
        w2: rows_of(l2),
        rate: h.learning_rate,
        offset: h.fahlman_offset,
    };
    let epochs = 2;
    let mut gated_trace: Vec<StepTrace> = Vec::new();
    gated
        .train_gated(&corpus, epochs, &|_| 0.0, &mut seeded(SEED, 13), &mut |t| gated_trace.push(*t))
        .unwrap();
    let mut lib_rae = lib_rae;
    let mut lib_trace = Vec::new();
    lib_rae
        .train_observed(&corpus, epochs, &mut seeded(SEED, 13), &mut |e, d| lib_trace.push((e, d)))
        .unwrap();
    let mut ref_errors = Vec::new();
    let mut order_rng = seeded(SEED, 13);
    let mut order: Vec<usize> = (0..corpus.songs.len()).collect();
    for _ in 0..epochs {
        order.shuffle(&mut order_rng);
        for &s in &order {
            let ivs = &corpus.songs[s].intervals;
            if ivs.len() < 2 {
                continue;
            }
            let mut lhs = encode_ordinal(ivs[0]).as_slice().to_vec();
            for &next in &ivs[1..] {
                let (e, hid) = reference.step(&lhs, encode_ordinal(next).as_slice());
                ref_errors.push(e);
                lhs = hid;
            }
        }
    }
    let same_len = gated_trace.len() == ref_errors.len() && lib_trace.len() == ref_errors.len();
    let dev_ref = gated_trace
        .iter()
        .zip(&ref_errors)
        .map(|(t, r)| (t.error - r).abs())
        .fold(0.0f64, f64::max);
    let lib_equal = gated_trace.iter().zip(&lib_trace).all(|(t, (e, d))| t.error == *e && *d == Some(0.0));
    o.check(
        same_len && dev_ref < 1e-12,
        format!("Δ=0 TRACX2 vs reference RAE over {} steps: max error deviation {dev_ref:.1e}", ref_errors.len()),
    );
    o.check(same_len && lib_equal, "library RAE identical to Δ=0 TRACX2 at every step".into());

    // Byte-identical CSVs for identical seeds.
    let corpora = Corpora::builtin();
    let cfg = StudyConfig {
        runs: 3,
        ..StudyConfig::new(SEED)
    };
    let mut identical = true;
    for id in [StudyId::Unheard, StudyId::InternalReps, StudyId::Trace] {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        run_study(id, &corpora, &cfg).unwrap().write(a.path()).unwrap();
        run_study(id, &corpora, &cfg).unwrap().write(b.path()).unwrap();
        for entry in std::fs::read_dir(a.path()).unwrap() {
            let p = entry.unwrap().path();
            if p.extension().is_some_and(|e| e == "csv") {
                let other = b.path().join(p.file_name().unwrap());
                identical &= std::fs::read(&p).unwrap() == std::fs::read(other).unwrap();
            }
        }
    }
    o.check(identical, "repeated runs with the same seed give byte-identical CSVs".into());
    o
}

fn main() {
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let names = [
        "encoding law",
        "corpus profile",
        "training fit",
        "frequency effect",
        "trace table",
        "primacy",
        "prior learning",
        "unheard-word categories",
        "contour sensitivity",
        "end-of-word advantage",
        "numeric oracles",
    ];
    let mut results: Vec<Option<Outcome>> = (0..11).map(|_| None).collect();
    let timed = |i: usize, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        eprintln!("  criterion {} took {:.1?}", i + 1, t.elapsed());
        o
    };
    results[0] = Some(timed(0, &c1_encoding));
    results[1] = Some(timed(1, &c2_corpus));
    let (o3, o4) = {
        let t = Instant::now();
        let r = c3_c4_fit();
        eprintln!("  criteria 3-4 took {:.1?}", t.elapsed());
        r
    };
    results[2] = Some(o3);
    results[3] = Some(o4);
    results[4] = Some(timed(4, &c5_table));
    results[5] = Some(timed(5, &c6_primacy));
    results[6] = Some(timed(6, &c7_prior));
    results[7] = Some(timed(7, &c8_unheard));
    results[8] = Some(timed(8, &c9_contour));
    results[9] = Some(timed(9, &c10_end_of_word));
    results[10] = Some(timed(10, &c11_oracles));

    let (mut passed, mut unexpected, mut known) = (0, Vec::new(), Vec::new());
    println!();
    for (i, o) in results.into_iter().enumerate() {
        let o = o.unwrap();
        let n = i as u32 + 1;
        let status = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && KNOWN_GAPS.contains(&n) { "  (documented gap)" } else { "" };
        println!("{status} criterion {n:>2}: {}{note}", names[i]);
        for l in &o.lines {
            println!("        {l}");
        }
        if o.pass {
            passed += 1;
            if KNOWN_GAPS.contains(&n) {
                println!("        note: listed as a documented gap but now passes");
            }
        } else if KNOWN_GAPS.contains(&n) {
            known.push(n);
        } else {
            unexpected.push(n);
        }
    }
    println!();
    println!(
        "acceptance: {passed}/11 passed; documented gaps failing: {known:?}; unexpected failures: {unexpected:?}"
    );
    if !unexpected.is_empty() || (strict && !known.is_empty()) {
        std::process::exit(1);
    }
}
