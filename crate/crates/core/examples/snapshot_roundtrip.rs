//! Save a trained network as a text snapshot and load it back.
//!
//! `cargo run --release --example snapshot_roundtrip`

use tracx2::corpus::builtin;
use tracx2::encoding::{word_from_labels, Encoding};
use tracx2::nets::{read_snapshot, write_snapshot, Hyperparams, Model, ModelKind};
use tracx2::rng::named;

fn main() -> tracx2::Result<()> {
    let mut rng = named(7, "example/snapshot", 0);
    let model = Model::trained(ModelKind::Tracx2, Encoding::Ordinal, Hyperparams::default(), &builtin::set1(), 10, &mut rng)?;
    let dir = std::env::temp_dir().join("tracx2-snapshot-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("model.snapshot");
    write_snapshot(&model, &path)?;
    let back = read_snapshot(&path)?;
    let w = word_from_labels("mo")?;
    println!("wrote {}", path.display());
    println!("identical weights: {}", back == model);
    println!("error('mo'): {:.6} before, {:.6} after", model.word_error(&w)?, back.word_error(&w)?);
    Ok(())
}
