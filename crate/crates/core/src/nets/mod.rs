//! The networks: a Δ-gated recursive autoencoder (TRACX2), its RAE special
//! case, and an Elman simple recurrent network.
//!
//! All layers share one squashing function, `f(x) = clamp(x / 5, -1, 1)`,
//! trained by plain gradient descent on the squared error with a Fahlman
//! offset added to the derivative.

mod layer;
mod snapshot;
mod srn;
mod tracx2;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::encoding::{ActVector, Encoding, IntervalWord};
use crate::error::{Error, Result};
use crate::rng::Rng;

pub use layer::Dense;
pub use snapshot::{read_snapshot, snapshot_from_str, snapshot_to_string, write_snapshot, SNAPSHOT_HEADER};
pub use srn::SrnNet;
pub use tracx2::{delta_from_error, next_lhs, Forward, StepTrace, Tracx2Net, TrainSummary};

/// Width of the linear region of the activation: `f(±SATURATION) = ±1`.
pub const SATURATION: f64 = 5.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperparams {
    pub learning_rate: f64,
    pub fahlman_offset: f64,
    pub temperature: f64,
    /// Initial weights are uniform in `[-weight_init, weight_init)`.
    pub weight_init: f64,
    pub epochs: usize,
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            learning_rate: 0.01,
            fahlman_offset: 0.1,
            temperature: 5.0,
            weight_init: 0.5,
            epochs: 30,
        }
    }
}

pub fn activation(x: f64) -> f64 {
    (x / SATURATION).clamp(-1.0, 1.0)
}

pub fn activation_deriv(x: f64) -> f64 {
    if x.abs() < SATURATION {
        1.0 / SATURATION
    } else {
        0.0
    }
}

/// How the left half of the autoencoder input is refilled between steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Blend of hidden state and previous item, weighted by Δ.
    Tracx2,
    /// Always the hidden state (Δ forced to 0).
    Rae,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Tracx2,
    Rae,
    Srn,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Tracx2, ModelKind::Rae, ModelKind::Srn];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Tracx2 => "tracx2",
            ModelKind::Rae => "rae",
            ModelKind::Srn => "srn",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tracx2" => Ok(ModelKind::Tracx2),
            "rae" => Ok(ModelKind::Rae),
            "srn" => Ok(ModelKind::Srn),
            other => Err(Error::Config(format!("unknown model {other:?}"))),
        }
    }
}

/// Any of the three trainable models behind one interface.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Autoencoder { net: Tracx2Net, mode: Mode },
    Srn(SrnNet),
}

impl Model {
    pub fn new(kind: ModelKind, encoding: Encoding, hyper: Hyperparams, rng: &mut Rng) -> Self {
        match kind {
            ModelKind::Tracx2 => Model::Autoencoder {
                net: Tracx2Net::new(encoding, hyper, rng),
                mode: Mode::Tracx2,
            },
            ModelKind::Rae => Model::Autoencoder {
                net: Tracx2Net::new(encoding, hyper, rng),
                mode: Mode::Rae,
            },
            ModelKind::Srn => Model::Srn(SrnNet::new(encoding, hyper, rng)),
        }
    }

    /// Fresh weights from `rng`, then `epochs` of training on `corpus`
    /// drawing song order from the same generator.
    pub fn trained(
        kind: ModelKind,
        encoding: Encoding,
        hyper: Hyperparams,
        corpus: &Corpus,
        epochs: usize,
        rng: &mut Rng,
    ) -> Result<Self> {
        let mut model = Model::new(kind, encoding, hyper, rng);
        model.train(corpus, epochs, rng)?;
        Ok(model)
    }

    pub fn kind(&self) -> ModelKind {
        match self {
            Model::Autoencoder { mode: Mode::Tracx2, .. } => ModelKind::Tracx2,
            Model::Autoencoder { mode: Mode::Rae, .. } => ModelKind::Rae,
            Model::Srn(_) => ModelKind::Srn,
        }
    }

    pub fn encoding(&self) -> Encoding {
        match self {
            Model::Autoencoder { net, .. } => net.encoding(),
            Model::Srn(net) => net.encoding(),
        }
    }

    pub fn hyper(&self) -> &Hyperparams {
        match self {
            Model::Autoencoder { net, .. } => net.hyper(),
            Model::Srn(net) => net.hyper(),
        }
    }

    pub fn train(&mut self, corpus: &Corpus, epochs: usize, rng: &mut Rng) -> Result<TrainSummary> {
        match self {
            Model::Autoencoder { net, mode } => net.train_corpus(corpus, epochs, *mode, rng),
            Model::Srn(net) => net.train_corpus(corpus, epochs, rng),
        }
    }

    /// Training that reports every step's error and, for the autoencoders,
    /// the gate value.
    pub fn train_observed(
        &mut self,
        corpus: &Corpus,
        epochs: usize,
        rng: &mut Rng,
        observer: &mut dyn FnMut(f64, Option<f64>),
    ) -> Result<TrainSummary> {
        match self {
            Model::Autoencoder { net, mode } => {
                let t = net.hyper().temperature;
                let gate: Box<dyn Fn(f64) -> f64> = match mode {
                    Mode::Tracx2 => Box::new(move |e| delta_from_error(e, t)),
                    Mode::Rae => Box::new(|_| 0.0),
                };
                net.train_gated(corpus, epochs, &*gate, rng, &mut |s| observer(s.error, Some(s.delta)))
            }
            Model::Srn(net) => net.train_observed(corpus, epochs, rng, &mut |e| observer(e, None)),
        }
    }

    pub fn word_error(&self, word: &IntervalWord) -> Result<f64> {
        match self {
            Model::Autoencoder { net, mode } => net.word_error(word, *mode),
            Model::Srn(net) => net.word_error(word),
        }
    }

    pub fn hidden_rep(&self, word: &IntervalWord) -> Result<ActVector> {
        match self {
            Model::Autoencoder { net, mode } => net.hidden_rep(word, *mode),
            Model::Srn(net) => net.hidden_rep(word),
        }
    }
}
