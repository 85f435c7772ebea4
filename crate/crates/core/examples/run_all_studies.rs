//! Run every study with one seed and write each report to its own folder.
//!
//! `cargo run --release --example run_all_studies -- [out dir] [seed]`

use std::path::PathBuf;

use tracx2::experiments::{run_study, Corpora, StudyConfig, StudyId};

fn main() -> tracx2::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "results".into()));
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let corpora = Corpora::builtin();
    let cfg = StudyConfig::new(seed);
    for id in StudyId::ALL {
        let report = run_study(id, &corpora, &cfg)?;
        let files = report.write(&out.join(id.name()))?;
        println!("{id}: {} files", files.len());
        for (k, v) in &report.summary {
            println!("  {k} = {v:.4}");
        }
    }
    Ok(())
}
