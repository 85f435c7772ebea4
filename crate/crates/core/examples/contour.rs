//! Are words sharing a rise/fall pattern represented closer together than
//! words that differ in contour, at matched interval distance?
//!
//! `cargo run --release --example contour`

use tracx2::corpus::builtin;
use tracx2::encoding::Encoding;
use tracx2::experiments::{contour_words, study3_contour, ContourModel};
use tracx2::nets::{Hyperparams, ModelKind};

fn main() -> tracx2::Result<()> {
    let corpus = builtin::set1();
    let words = contour_words(1)?;
    for m in [
        ContourModel::Trained(ModelKind::Tracx2),
        ContourModel::Trained(ModelKind::Rae),
        ContourModel::Trained(ModelKind::Srn),
        ContourModel::Untrained,
    ] {
        let s = study3_contour(&corpus, m, &words, Encoding::Ordinal, Hyperparams::default(), 30, 1)?.summary;
        println!(
            "{:<10} {} triplets: same < different {:5.1}%, significant {:5.1}%, significant and expected {:5.1}%",
            m.to_string(),
            s.triplets.len(),
            100.0 * s.expected_share(),
            100.0 * s.significant_share(),
            100.0 * s.significant_expected_share()
        );
    }
    Ok(())
}
