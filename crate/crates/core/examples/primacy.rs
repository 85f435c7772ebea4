//! Move every occurrence of a word to the start of the training sequence and
//! compare its error with the unchanged order.
//!
//! `cargo run --release --example primacy -- [word] [runs]`

use tracx2::analysis::{mean, paired_t};
use tracx2::corpus::builtin;
use tracx2::encoding::word_from_labels;
use tracx2::nets::Hyperparams;
use tracx2::experiments::study1_primacy;

fn main() -> tracx2::Result<()> {
    let mut args = std::env::args().skip(1);
    let word = word_from_labels(&args.next().unwrap_or_else(|| "mo".into()))?;
    let runs: usize = args.next().and_then(|r| r.parse().ok()).unwrap_or(20);
    let r = study1_primacy(&builtin::set1(), &word, Hyperparams::default(), 30, runs, 1)?;
    let t = paired_t(&r.baseline, &r.relocated)?;
    println!("word {word}: {} occurrences moved to the front", r.moved);
    println!("error {:.4} in song order, {:.4} after moving", mean(&r.baseline), mean(&r.relocated));
    println!("paired t({}) = {:.2}, p = {:.3e}", t.df, t.statistic, t.p);
    Ok(())
}
