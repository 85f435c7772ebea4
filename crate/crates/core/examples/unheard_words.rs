//! Errors on never-heard 3-words that are far from, near rare, or near
//! frequent corpus words.
//!
//! `cargo run --release --example unheard_words`

use tracx2::corpus::builtin;
use tracx2::encoding::Encoding;
use tracx2::experiments::{study2_unheard_categories, CATEGORIES};
use tracx2::nets::{Hyperparams, ModelKind};

fn main() -> tracx2::Result<()> {
    for kind in ModelKind::ALL {
        let r = study2_unheard_categories(&builtin::set1(), kind, Encoding::Ordinal, Hyperparams::default(), 30, 1)?;
        let means = r.means();
        println!(
            "{kind}: F({}, {}) = {:.1}, p = {:.2e}",
            r.anova.df_between, r.anova.df_within, r.anova.f, r.anova.p
        );
        for (name, m) in CATEGORIES.iter().zip(means) {
            println!("  {name:<16} {m:.4}");
        }
        for (i, j, t, p) in &r.pairwise {
            println!("  {} vs {}: t = {:.2}, corrected p = {p:.2e}", CATEGORIES[*i], CATEGORIES[*j], t.statistic);
        }
    }
    Ok(())
}
