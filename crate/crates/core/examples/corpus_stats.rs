//! Profile the built-in song sets: sizes, interval moments, frequent words.
//!
//! `cargo run --example corpus_stats`

use tracx2::corpus::{builtin, TpTable};

fn main() {
    for (name, corpus) in [("set1", builtin::set1()), ("set2", builtin::set2())] {
        let (mean, sd) = corpus.interval_moments();
        println!("{name}: {} songs, {} intervals, mean {mean:.3}, SD {sd:.3}", corpus.songs.len(), corpus.total_intervals());
        for n in [2, 3, 4] {
            println!("  distinct {n}-words: {}", corpus.inventory(n).len());
        }
        let tp = TpTable::build(&corpus);
        let inv = corpus.inventory(2);
        println!("  most frequent 2-words:");
        for (w, count) in inv.most_common().into_iter().take(5) {
            println!("    {w} x{count}  avg TP {:.3}", tp.avg_tp(w).value);
        }
    }
}
