//! How much of each interval's identity survives in a chunk's hidden
//! representation, by position, for both encodings.
//!
//! `cargo run --release --example trace_table`

use tracx2::corpus::builtin;
use tracx2::encoding::Encoding;
use tracx2::experiments::study1_trace;
use tracx2::nets::Hyperparams;

fn main() -> tracx2::Result<()> {
    for (name, corpus) in [("set1", builtin::set1()), ("set2", builtin::set2())] {
        for enc in [Encoding::Ordinal, Encoding::OneHot] {
            for row in study1_trace(name, &corpus, enc, Hyperparams::default(), 30, 1)? {
                let r2: Vec<String> = row.r_squared.iter().map(|x| format!("{x:.2}")).collect();
                println!("{name} {enc:<7} {}-words (n={:>3}): R² by position {}", row.word_len, row.words, r2.join(" "));
            }
        }
    }
    Ok(())
}
