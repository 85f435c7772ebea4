use rand::seq::SliceRandom;

use crate::corpus::Corpus;
use crate::encoding::{ActVector, Encoding, Interval, IntervalWord, CODE_LEN};
use crate::error::{Error, Result};
use crate::rng::Rng;

use super::{activation, activation_deriv, Dense, Hyperparams, TrainSummary};

const INPUT_LEN: usize = 2 * CODE_LEN;

/// Elman network: current code plus context in, next code out. The context
/// is a copy of the previous hidden state.
#[derive(Clone, Debug, PartialEq)]
pub struct SrnNet {
    encoding: Encoding,
    hyper: Hyperparams,
    pub(crate) input_hidden: Dense,
    pub(crate) hidden_output: Dense,
}

struct SrnForward {
    input: [f64; INPUT_LEN],
    hidden_net: [f64; CODE_LEN],
    hidden: ActVector,
    output_net: [f64; CODE_LEN],
    output: [f64; CODE_LEN],
}

impl SrnNet {
    pub fn new(encoding: Encoding, hyper: Hyperparams, rng: &mut Rng) -> Self {
        let input_hidden = Dense::random(CODE_LEN, INPUT_LEN, hyper.weight_init, rng);
        let hidden_output = Dense::random(CODE_LEN, CODE_LEN, hyper.weight_init, rng);
        SrnNet {
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
            && hidden_output.outputs() == CODE_LEN
            && hidden_output.inputs() == CODE_LEN;
        if !ok {
            return Err(Error::Config("recurrent layers must be 78+1 -> 39 and 39+1 -> 39".into()));
        }
        Ok(SrnNet {
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

    pub fn layers(&self) -> (&Dense, &Dense) {
        (&self.input_hidden, &self.hidden_output)
    }

    fn code(&self, interval: Interval) -> ActVector {
        self.encoding.encode(interval).activations()
    }

    fn forward(&self, item: &ActVector, context: &ActVector) -> SrnForward {
        let mut input = [0.0; INPUT_LEN];
        input[..CODE_LEN].copy_from_slice(&item.0);
        input[CODE_LEN..].copy_from_slice(&context.0);
        let mut hidden_net = [0.0; CODE_LEN];
        self.input_hidden.forward(&input, &mut hidden_net);
        let hidden = ActVector(hidden_net.map(activation));
        let mut output_net = [0.0; CODE_LEN];
        self.hidden_output.forward(&hidden.0, &mut output_net);
        let output = output_net.map(activation);
        SrnForward {
            input,
            hidden_net,
            hidden,
            output_net,
            output,
        }
    }

    fn prediction_error(output: &[f64; CODE_LEN], target: &ActVector) -> f64 {
        output.iter().zip(&target.0).map(|(o, t)| (o - t).abs()).sum::<f64>() / CODE_LEN as f64
    }

    /// One prediction step with a weight change; returns the pre-update
    /// error and the new context.
    fn step(&mut self, item: &ActVector, context: &ActVector, target: &ActVector) -> Result<(f64, ActVector)> {
        let f = self.forward(item, context);
        let error = Self::prediction_error(&f.output, target);
        if !error.is_finite() {
            return Err(Error::NonFinite("recurrent network output"));
        }
        let offset = self.hyper.fahlman_offset;
        let mut out_delta = [0.0; CODE_LEN];
        for i in 0..CODE_LEN {
            out_delta[i] = (target.0[i] - f.output[i]) * (activation_deriv(f.output_net[i]) + offset);
        }
        let mut back = [0.0; CODE_LEN];
        self.hidden_output.backward(&out_delta, &mut back);
        let mut hid_delta = [0.0; CODE_LEN];
        for j in 0..CODE_LEN {
            hid_delta[j] = back[j] * (activation_deriv(f.hidden_net[j]) + offset);
        }
        let rate = self.hyper.learning_rate;
        self.hidden_output.update(rate, &out_delta, &f.hidden.0);
        self.input_hidden.update(rate, &hid_delta, &f.input);
        Ok((error, f.hidden))
    }

    /// Next-item prediction over each song, songs in a fresh random order
    /// every epoch and the context cleared at each song start.
    pub fn train_corpus(&mut self, corpus: &Corpus, epochs: usize, rng: &mut Rng) -> Result<TrainSummary> {
        self.train_observed(corpus, epochs, rng, &mut |_| {})
    }

    /// [`train_corpus`](Self::train_corpus) reporting each step's
    /// prediction error.
    pub fn train_observed(
        &mut self,
        corpus: &Corpus,
        epochs: usize,
        rng: &mut Rng,
        observer: &mut dyn FnMut(f64),
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
                let mut context = ActVector::zeros();
                for pair in ivs.windows(2) {
                    let item = self.code(pair[0]);
                    let target = self.code(pair[1]);
                    let (error, hidden) = self.step(&item, &context, &target)?;
                    observer(error);
                    sum += error;
                    n += 1;
                    context = hidden;
                }
            }
            summary.steps += n;
            summary.mean_error_last_epoch = if n > 0 { sum / n as f64 } else { 0.0 };
        }
        Ok(summary)
    }

    /// Prediction errors along the word and the hidden state after its last
    /// item, from a cleared context on frozen weights.
    fn run(&self, word: &IntervalWord) -> Result<(Vec<f64>, ActVector)> {
        if word.len() < 2 {
            return Err(Error::WordTooShort(word.labels()));
        }
        let ivs = word.intervals();
        let mut context = ActVector::zeros();
        let mut errors = Vec::with_capacity(ivs.len() - 1);
        for (i, &iv) in ivs.iter().enumerate() {
            let f = self.forward(&self.code(iv), &context);
            if let Some(&next) = ivs.get(i + 1) {
                errors.push(Self::prediction_error(&f.output, &self.code(next)));
            }
            context = f.hidden;
        }
        Ok((errors, context))
    }

    /// Mean prediction error over the word's `n - 1` transitions.
    pub fn word_error(&self, word: &IntervalWord) -> Result<f64> {
        let (errors, _) = self.run(word)?;
        Ok(errors.iter().sum::<f64>() / errors.len() as f64)
    }

    pub fn hidden_rep(&self, word: &IntervalWord) -> Result<ActVector> {
        Ok(self.run(word)?.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Song;
    use crate::encoding::word_from_labels;
    use crate::rng::seeded;

    fn net(seed: u64) -> SrnNet {
        SrnNet::new(Encoding::Ordinal, Hyperparams::default(), &mut seeded(seed, 0))
    }

    #[test]
    fn shapes() {
        let n = net(0);
        let (a, b) = n.layers();
        assert_eq!((a.outputs(), a.inputs()), (39, 78));
        assert_eq!((b.outputs(), b.inputs()), (39, 39));
    }

    #[test]
    fn learns_a_repeated_transition() {
        let mut n = net(1);
        let w = word_from_labels("kokokoko").unwrap();
        let before = n.word_error(&w).unwrap();
        let c = Corpus::new(vec![Song::from_word("s", &w)]);
        n.train_corpus(&c, 200, &mut seeded(1, 1)).unwrap();
        assert!(n.word_error(&w).unwrap() < before);
    }

    #[test]
    fn scoring_is_pure_and_bounded() {
        let n = net(2);
        let w = word_from_labels("amy").unwrap();
        let e = n.word_error(&w).unwrap();
        assert_eq!(e, n.word_error(&w).unwrap());
        assert!((0.0..=2.0).contains(&e));
        assert!(n.hidden_rep(&w).unwrap().in_range());
        assert!(n.word_error(&word_from_labels("a").unwrap()).is_err());
    }
}
