//! Train on the songs and on scrambled versions of them, then score the
//! unseen words of a held-out melody.
//!
//! `cargo run --release --example prior_learning -- [runs]`

use tracx2::corpus::builtin;
use tracx2::encoding::Encoding;
use tracx2::experiments::{study2_prior_learning, Regime};
use tracx2::nets::{Hyperparams, ModelKind};

fn main() -> tracx2::Result<()> {
    let runs: usize = std::env::args().nth(1).and_then(|r| r.parse().ok()).unwrap_or(5);
    let r = study2_prior_learning(
        &builtin::set1(),
        &builtin::test_melody(),
        &ModelKind::ALL,
        Encoding::Ordinal,
        Hyperparams::default(),
        30,
        runs,
        1,
    )?;
    println!("{} test words, {runs} runs", r.test_words.len());
    for kind in ModelKind::ALL {
        println!("{kind}");
        for regime in Regime::ALL {
            let c = r.cell(kind, regime).expect("every cell is run");
            println!("  {:<20} {:.4} ± {:.4}", regime.name(), c.mean(), c.sem());
        }
    }
    Ok(())
}
