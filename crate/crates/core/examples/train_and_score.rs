//! Train each network on the first song set and score a few words.
//!
//! `cargo run --release --example train_and_score`

use tracx2::corpus::builtin;
use tracx2::encoding::{word_from_labels, Encoding};
use tracx2::nets::{Hyperparams, Model, ModelKind};
use tracx2::rng::named;

fn main() -> tracx2::Result<()> {
    let corpus = builtin::set1();
    let inv = corpus.inventory(2);
    let words = ["mm", "mo", "kk", "tt", "ay"];
    for kind in ModelKind::ALL {
        let mut rng = named(42, "example/train", 0);
        let mut model = Model::new(kind, Encoding::Ordinal, Hyperparams::default(), &mut rng);
        let summary = model.train(&corpus, 30, &mut rng)?;
        println!("{kind}: {} steps, last-epoch error {:.4}", summary.steps, summary.mean_error_last_epoch);
        for w in words {
            let word = word_from_labels(w)?;
            println!("  {w}  seen x{:<3} error {:.4}", inv.count(&word), model.word_error(&word)?);
        }
    }
    Ok(())
}
