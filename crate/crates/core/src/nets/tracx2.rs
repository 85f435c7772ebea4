use rand::seq::SliceRandom;

use crate::corpus::Corpus;
use crate::encoding::{ActVector, Encoding, Interval, IntervalWord, CODE_LEN};
use crate::error::{Error, Result};
use crate::rng::Rng;

use super::{activation, activation_deriv, Dense, Hyperparams, Mode};

const INPUT_LEN: usize = 2 * CODE_LEN;

/// Squash an autoencoder error `E` in `[0, 2]` into the gate `Δ` in `[0, 1]`.
pub fn delta_from_error(error: f64, temperature: f64) -> f64 {
    (temperature * error).tanh()
}

/// Next left-hand input: `(1 - Δ) H + Δ S`.
pub fn next_lhs(delta: f64, hidden: &ActVector, prev_rhs: &ActVector) -> ActVector {
    let mut out = [0.0; CODE_LEN];
    for ((o, h), s) in out.iter_mut().zip(&hidden.0).zip(&prev_rhs.0) {
        *o = (1.0 - delta) * h + delta * s;
    }
    ActVector(out)
}

/// What one presentation of an input pair produced, measured before the
/// weight change.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepTrace {
    /// Mean absolute input/output difference.
    pub error: f64,
    /// Gate value used to build `lhs_next`.
    pub delta: f64,
    pub hidden: ActVector,
    pub lhs_next: ActVector,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TrainSummary {
    pub steps: usize,
    /// Songs too short to form a pair.
    pub skipped_songs: usize,
    pub mean_error_last_epoch: f64,
}

/// Activations of one forward pass.
#[derive(Clone, Debug)]
pub struct Forward {
    pub input: [f64; INPUT_LEN],
    pub hidden_net: [f64; CODE_LEN],
    pub hidden: ActVector,
    pub output_net: [f64; INPUT_LEN],
    pub output: [f64; INPUT_LEN],
    pub error: f64,
}

/// A 78-39-78 autoencoder whose left input half is recycled from its own
/// hidden layer.
#[derive(Clone, Debug, PartialEq)]
pub struct Tracx2Net {
    encoding: Encoding,
    hyper: Hyperparams,
    pub(crate) input_hidden: Dense,
    pub(crate) hidden_output: Dense,
}

impl Tracx2Net {
    pub fn new(encoding: Encoding, hyper: Hyperparams, rng: &mut Rng) -> Self {
        let input_hidden = Dense::random(CODE_LEN, INPUT_LEN, hyper.weight_init, rng);
        let hidden_output = Dense::random(INPUT_LEN, CODE_LEN, hyper.weight_init, rng);
        Tracx2Net {
            encoding,
            hyper,
            input_hidden,
            hidden_output,
        }
    }

    pub fn from_layers(
        encoding: Encoding,
        hyper: Hyperparams,
        input_hidden: Dense,
        hidden_output: Dense,
    ) -> Result<Self> {
        let ok = input_hidden.outputs() == CODE_LEN
            && input_hidden.inputs() == INPUT_LEN
            && hidden_output.outputs() == INPUT_LEN
            && hidden_output.inputs() == CODE_LEN;
        if !ok {
            return Err(Error::Config("autoencoder layers must be 78+1 -> 39 and 39+1 -> 78".into()));
        }
        Ok(Tracx2Net {
            encoding,
            hyper,
            input_hidden,
            hidden_output,
        })
    }

    pub fn encoding(&self) -> Encoding {
        self.encoding
    }

    pub fn hyper(&self) -> &Hyperparams {
        &self.hyper
    }

    pub fn set_hyper(&mut self, hyper: Hyperparams) {
        self.hyper = hyper;
    }

    pub fn layers(&self) -> (&Dense, &Dense) {
        (&self.input_hidden, &self.hidden_output)
    }

    pub fn layers_mut(&mut self) -> (&mut Dense, &mut Dense) {
        (&mut self.input_hidden, &mut self.hidden_output)
    }

    pub fn code(&self, interval: Interval) -> ActVector {
        self.encoding.encode(interval).activations()
    }

    pub fn forward(&self, lhs: &ActVector, rhs: &ActVector) -> Forward {
        let mut input = [0.0; INPUT_LEN];
        input[..CODE_LEN].copy_from_slice(&lhs.0);
        input[CODE_LEN..].copy_from_slice(&rhs.0);
        let mut hidden_net = [0.0; CODE_LEN];
        self.input_hidden.forward(&input, &mut hidden_net);
        let hidden = ActVector(hidden_net.map(activation));
        let mut output_net = [0.0; INPUT_LEN];
        self.hidden_output.forward(&hidden.0, &mut output_net);
        let output = output_net.map(activation);
        let error = input
            .iter()
            .zip(&output)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            / INPUT_LEN as f64;
        Forward {
            input,
            hidden_net,
            hidden,
            output_net,
            output,
            error,
        }
    }

    /// Squared-error loss `½ Σ (out - in)²` of one pair.
    pub fn loss(&self, lhs: &ActVector, rhs: &ActVector) -> f64 {
        let f = self.forward(lhs, rhs);
        0.5 * f
            .input
            .iter()
            .zip(&f.output)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
    }

    fn deltas(&self, f: &Forward, offset: f64) -> ([f64; INPUT_LEN], [f64; CODE_LEN]) {
        let mut out_delta = [0.0; INPUT_LEN];
        for i in 0..INPUT_LEN {
            out_delta[i] = (f.input[i] - f.output[i]) * (activation_deriv(f.output_net[i]) + offset);
        }
        let mut back = [0.0; CODE_LEN];
        self.hidden_output.backward(&out_delta, &mut back);
        let mut hid_delta = [0.0; CODE_LEN];
        for j in 0..CODE_LEN {
            hid_delta[j] = back[j] * (activation_deriv(f.hidden_net[j]) + offset);
        }
        (out_delta, hid_delta)
    }

    /// Gradients of [`loss`](Self::loss) with respect to both weight
    /// matrices, laid out like [`Dense::weights`]. `offset` is added to the
    /// activation derivative; pass 0 for the exact gradient.
    pub fn loss_gradients(&self, lhs: &ActVector, rhs: &ActVector, offset: f64) -> (Vec<f64>, Vec<f64>) {
        let f = self.forward(lhs, rhs);
        let (out_delta, hid_delta) = self.deltas(&f, offset);
        let outer = |delta: &[f64], x: &[f64]| -> Vec<f64> {
            delta
                .iter()
                .flat_map(|d| x.iter().map(move |xi| -d * xi).chain(std::iter::once(-d)))
                .collect()
        };
        (outer(&hid_delta, &f.input), outer(&out_delta, &f.hidden.0))
    }

    fn step(&mut self, lhs: &ActVector, rhs: &ActVector, gate: &dyn Fn(f64) -> f64) -> Result<StepTrace> {
        let f = self.forward(lhs, rhs);
        if !f.error.is_finite() {
            return Err(Error::NonFinite("autoencoder output"));
        }
        let (out_delta, hid_delta) = self.deltas(&f, self.hyper.fahlman_offset);
        let rate = self.hyper.learning_rate;
        self.hidden_output.update(rate, &out_delta, &f.hidden.0);
        self.input_hidden.update(rate, &hid_delta, &f.input);
        let delta = gate(f.error);
        debug_assert!((0.0..=2.0).contains(&f.error));
        debug_assert!((0.0..=1.0).contains(&delta));
        Ok(StepTrace {
            error: f.error,
            delta,
            hidden: f.hidden,
            lhs_next: next_lhs(delta, &f.hidden, rhs),
        })
    }

    /// One gradient step on the pair; the trace's `lhs_next` uses the
    /// TRACX2 gate.
    pub fn backprop_step(&mut self, lhs: &ActVector, rhs: &ActVector) -> Result<StepTrace> {
        let t = self.hyper.temperature;
        self.step(lhs, rhs, &|e| delta_from_error(e, t))
    }

    pub fn train_corpus(&mut self, corpus: &Corpus, epochs: usize, mode: Mode, rng: &mut Rng) -> Result<TrainSummary> {
        let t = self.hyper.temperature;
        match mode {
            Mode::Tracx2 => self.train_gated(corpus, epochs, &|e| delta_from_error(e, t), rng, &mut |_| {}),
            Mode::Rae => self.train_gated(corpus, epochs, &|_| 0.0, rng, &mut |_| {}),
        }
    }

    /// Training with an arbitrary gate and a per-step observer. Each epoch
    /// visits the songs in a fresh random order; every song starts from pure
    /// codes on both sides.
    pub fn train_gated(
        &mut self,
        corpus: &Corpus,
        epochs: usize,
        gate: &dyn Fn(f64) -> f64,
        rng: &mut Rng,
        observer: &mut dyn FnMut(&StepTrace),
    ) -> Result<TrainSummary> {
        let mut summary = TrainSummary::default();
        let mut order: Vec<usize> = (0..corpus.songs.len()).collect();
        for epoch in 0..epochs {
            order.shuffle(rng);
            let (mut sum, mut n) = (0.0, 0usize);
            for &s in &order {
                let ivs = &corpus.songs[s].intervals;
                if ivs.len() < 2 {
                    if epoch == 0 {
                        summary.skipped_songs += 1;
                    }
                    continue;
                }
                let mut lhs = self.code(ivs[0]);
                for &next in &ivs[1..] {
                    let rhs = self.code(next);
                    let trace = self.step(&lhs, &rhs, gate)?;
                    observer(&trace);
                    sum += trace.error;
                    n += 1;
                    lhs = trace.lhs_next;
                }
            }
            summary.steps += n;
            summary.mean_error_last_epoch = if n > 0 { sum / n as f64 } else { 0.0 };
        }
        Ok(summary)
    }

    /// Per-pair errors and hidden states of a word on frozen weights.
    pub fn score_pairs(&self, word: &IntervalWord, mode: Mode) -> Result<Vec<(f64, ActVector)>> {
        if word.len() < 2 {
            return Err(Error::WordTooShort(word.labels()));
        }
        let ivs = word.intervals();
        let mut lhs = self.code(ivs[0]);
        let mut out = Vec::with_capacity(ivs.len() - 1);
        for &next in &ivs[1..] {
            let rhs = self.code(next);
            let f = self.forward(&lhs, &rhs);
            let delta = match mode {
                Mode::Tracx2 => delta_from_error(f.error, self.hyper.temperature),
                Mode::Rae => 0.0,
            };
            lhs = next_lhs(delta, &f.hidden, &rhs);
            out.push((f.error, f.hidden));
        }
        Ok(out)
    }

    /// Mean pair error along the word.
    pub fn word_error(&self, word: &IntervalWord, mode: Mode) -> Result<f64> {
        let pairs = self.score_pairs(word, mode)?;
        Ok(pairs.iter().map(|p| p.0).sum::<f64>() / pairs.len() as f64)
    }

    /// Hidden state after the word's last pair.
    pub fn hidden_rep(&self, word: &IntervalWord, mode: Mode) -> Result<ActVector> {
        Ok(self.score_pairs(word, mode)?.last().expect("at least one pair").1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Song;
    use crate::encoding::word_from_labels;
    use crate::rng::seeded;

    fn net(seed: u64) -> Tracx2Net {
        Tracx2Net::new(Encoding::Ordinal, Hyperparams::default(), &mut seeded(seed, 0))
    }

    fn code(c: char) -> ActVector {
        Encoding::Ordinal.encode(Interval::from_label(c).unwrap()).activations()
    }

    #[test]
    fn zero_weights_give_unit_error() {
        let mut n = net(0);
        n.input_hidden = Dense::zeros(CODE_LEN, INPUT_LEN);
        n.hidden_output = Dense::zeros(INPUT_LEN, CODE_LEN);
        let f = n.forward(&code('m'), &code('t'));
        assert!(f.output.iter().all(|&o| o == 0.0));
        assert_eq!(f.error, 1.0);
    }

    #[test]
    fn error_bounds() {
        let n = net(1);
        for (a, b) in [('a', 'y'), ('m', 'm'), ('A', 'Z')] {
            let f = n.forward(&code(a), &code(b));
            assert!((0.0..=2.0).contains(&f.error));
            assert!(f.hidden.in_range());
        }
    }

    #[test]
    fn weights_start_in_range() {
        let n = net(2);
        let (a, b) = n.layers();
        assert!(a.weights().iter().chain(b.weights()).all(|w| (-0.5..0.5).contains(w)));
        assert_eq!((a.outputs(), a.inputs()), (39, 78));
        assert_eq!((b.outputs(), b.inputs()), (78, 39));
    }

    #[test]
    fn delta_shape() {
        assert_eq!(delta_from_error(0.0, 5.0), 0.0);
        assert!(delta_from_error(2.0, 5.0) >= 0.9999);
        let grid: Vec<f64> = (0..=200).map(|i| delta_from_error(i as f64 / 100.0, 5.0)).collect();
        assert!(grid.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn lhs_blending() {
        let h = ActVector([0.25; CODE_LEN]);
        let s = code('t');
        assert_eq!(next_lhs(1.0, &h, &s), s);
        assert_eq!(next_lhs(0.0, &h, &s), h);
        let mid = next_lhs(0.5, &h, &s);
        for i in 0..CODE_LEN {
            assert_eq!(mid.0[i], 0.5 * (h.0[i] + s.0[i]));
        }
    }

    #[test]
    fn repeated_pair_is_learned() {
        let mut n = net(3);
        let (l, r) = (code('k'), code('o'));
        let first = n.forward(&l, &r).error;
        for _ in 0..500 {
            n.backprop_step(&l, &r).unwrap();
        }
        assert!(n.forward(&l, &r).error < first);
    }

    #[test]
    fn zero_rate_freezes_weights() {
        let mut n = net(4);
        n.hyper.learning_rate = 0.0;
        let before = n.clone();
        n.backprop_step(&code('m'), &code('o')).unwrap();
        assert_eq!(n, before);
    }

    #[test]
    fn zero_epochs_is_identity() {
        let mut n = net(5);
        let before = n.clone();
        let c = Corpus::new(vec![Song::from_word("s", &word_from_labels("mmo").unwrap())]);
        n.train_corpus(&c, 0, Mode::Tracx2, &mut seeded(5, 1)).unwrap();
        assert_eq!(n, before);
    }

    #[test]
    fn short_songs_are_skipped() {
        let mut n = net(6);
        let c = Corpus::new(vec![
            Song::from_word("short", &word_from_labels("m").unwrap()),
            Song::from_word("ok", &word_from_labels("mmo").unwrap()),
        ]);
        let s = n.train_corpus(&c, 2, Mode::Tracx2, &mut seeded(6, 1)).unwrap();
        assert_eq!(s.skipped_songs, 1);
        assert_eq!(s.steps, 4);
    }

    #[test]
    fn word_scoring() {
        let n = net(7);
        let w = word_from_labels("kmm").unwrap();
        let pairs = n.score_pairs(&w, Mode::Tracx2).unwrap();
        assert_eq!(pairs.len(), 2);
        let e = n.word_error(&w, Mode::Tracx2).unwrap();
        assert_eq!(e, (pairs[0].0 + pairs[1].0) / 2.0);
        // The first pair is the same in both modes.
        let two = word_from_labels("km").unwrap();
        assert_eq!(n.word_error(&two, Mode::Tracx2).unwrap(), n.word_error(&two, Mode::Rae).unwrap());
        assert_eq!(n.hidden_rep(&w, Mode::Tracx2).unwrap(), pairs[1].1);
        assert!(matches!(
            n.word_error(&word_from_labels("m").unwrap(), Mode::Tracx2),
            Err(Error::WordTooShort(_))
        ));
    }
}
