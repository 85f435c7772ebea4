//! Train on a continuous stream of tone words and compare part-words that
//! end a word (Xb) with part-words that begin one (aX).
//!
//! `cargo run --release --example saffran -- [runs]`

use tracx2::analysis::mean;
use tracx2::encoding::Encoding;
use tracx2::experiments::{study4_saffran, SaffranVariant, STREAM_EPOCHS};
use tracx2::nets::{Hyperparams, ModelKind};

fn main() -> tracx2::Result<()> {
    let runs: usize = std::env::args().nth(1).and_then(|r| r.parse().ok()).unwrap_or(20);
    for variant in [SaffranVariant::Repaired, SaffranVariant::Original] {
        let r = study4_saffran(variant, ModelKind::Tracx2, Encoding::Ordinal, Hyperparams::default(), STREAM_EPOCHS, runs, 1)?;
        for o in &r.outcomes {
            println!(
                "{variant}/{}: Xb {:.4} vs aX {:.4}, t({}) = {:.2}, p = {:.3e}, d = {:.2}, Xb lower in {:.0}% of runs",
                o.name,
                mean(&o.xb_means),
                mean(&o.ax_means),
                o.t.df,
                o.t.statistic,
                o.t.p,
                o.t.effect,
                100.0 * o.run_share
            );
        }
    }
    Ok(())
}
