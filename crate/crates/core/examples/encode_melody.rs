//! Turn a melody into interval letters and thermometer codes.
//!
//! `cargo run --example encode_melody -- [melody file]`

use tracx2::encoding::{parse_melody, Encoding};

fn main() -> tracx2::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(p) => std::fs::read_to_string(p)?,
        None => "C4 E4 G4 C5 G4 E4 C4".to_string(),
    };
    let intervals = parse_melody(&text)?;
    for iv in &intervals {
        let code: String = Encoding::Ordinal
            .encode(*iv)
            .as_slice()
            .iter()
            .map(|&x| if x > 0.0 { '+' } else { '-' })
            .collect();
        println!("{} {:>+3}  {code}", iv.label(), iv.semitones());
    }
    Ok(())
}
