//! Is a 3-word's hidden representation closer to that of its last two
//! intervals or its first two?
//!
//! `cargo run --release --example internal_reps`

use tracx2::corpus::builtin;
use tracx2::encoding::Encoding;
use tracx2::experiments::study4_internal_reps;
use tracx2::nets::{Hyperparams, ModelKind};

fn main() -> tracx2::Result<()> {
    for kind in ModelKind::ALL {
        let r = study4_internal_reps(&builtin::set1(), kind, Encoding::Ordinal, Hyperparams::default(), 30, 1)?;
        println!(
            "{kind}: distance to ending {:.3}, to beginning {:.3}, closer to ending for {:.1}% of {} words",
            r.mean_end(),
            r.mean_begin(),
            100.0 * r.end_closer_share(),
            r.rows.len()
        );
    }
    Ok(())
}
