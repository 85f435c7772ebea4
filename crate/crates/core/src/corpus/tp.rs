use std::collections::HashMap;

use crate::encoding::{Interval, IntervalWord};

use super::Corpus;

/// First-order transitional probabilities between intervals, counted within
/// songs: `TP(b | a) = count(ab) / count(a followed by anything)`.
#[derive(Clone, Debug, Default)]
pub struct TpTable {
    antecedents: HashMap<Interval, usize>,
    bigrams: HashMap<(Interval, Interval), usize>,
}

/// Mean TP along a word. `unseen_antecedent` marks words whose first interval
/// is never followed by anything in the corpus; their value is 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AvgTp {
    pub value: f64,
    pub unseen_antecedent: bool,
}

impl TpTable {
    pub fn build(corpus: &Corpus) -> Self {
        let mut table = TpTable::default();
        for song in &corpus.songs {
            for w in song.intervals.windows(2) {
                *table.antecedents.entry(w[0]).or_insert(0) += 1;
                *table.bigrams.entry((w[0], w[1])).or_insert(0) += 1;
            }
        }
        table
    }

    pub fn tp(&self, a: Interval, b: Interval) -> f64 {
        match self.antecedents.get(&a) {
            Some(&n) if n > 0 => self.bigrams.get(&(a, b)).copied().unwrap_or(0) as f64 / n as f64,
            _ => 0.0,
        }
    }

    pub fn successors_of(&self, a: Interval) -> Vec<(Interval, f64)> {
        let mut v: Vec<_> = Interval::all()
            .filter(|&b| self.bigrams.contains_key(&(a, b)))
            .map(|b| (b, self.tp(a, b)))
            .collect();
        v.sort_by_key(|(b, _)| *b);
        v
    }

    pub fn antecedents(&self) -> impl Iterator<Item = Interval> + '_ {
        self.antecedents.keys().copied()
    }

    /// Mean of the `n - 1` consecutive TPs of an `n`-interval word.
    pub fn avg_tp(&self, word: &IntervalWord) -> AvgTp {
        let ivs = word.intervals();
        let unseen_antecedent = !self.antecedents.contains_key(&ivs[0]);
        if ivs.len() < 2 || unseen_antecedent {
            return AvgTp {
                value: 0.0,
                unseen_antecedent,
            };
        }
        let sum: f64 = ivs.windows(2).map(|w| self.tp(w[0], w[1])).sum();
        AvgTp {
            value: sum / (ivs.len() - 1) as f64,
            unseen_antecedent,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{builtin, Song};
    use crate::encoding::word_from_labels;

    fn iv(c: char) -> Interval {
        Interval::from_label(c).unwrap()
    }

    #[test]
    fn deterministic_chain() {
        let song = Song::from_word("s", &word_from_labels("ababababab").unwrap());
        let t = TpTable::build(&Corpus::new(vec![song]));
        assert_eq!(t.tp(iv('a'), iv('b')), 1.0);
        assert_eq!(t.tp(iv('b'), iv('a')), 1.0);
        assert_eq!(t.tp(iv('a'), iv('a')), 0.0);
    }

    #[test]
    fn average_of_half_and_quarter() {
        let c = Corpus::new(vec![
            Song::from_word("1", &word_from_labels("abc").unwrap()),
            Song::from_word("2", &word_from_labels("ak").unwrap()),
            Song::from_word("3", &word_from_labels("bkkk").unwrap()),
            Song::from_word("4", &word_from_labels("bk").unwrap()),
            Song::from_word("5", &word_from_labels("bk").unwrap()),
        ]);
        let t = TpTable::build(&c);
        assert_eq!(t.tp(iv('a'), iv('b')), 0.5);
        assert_eq!(t.tp(iv('b'), iv('c')), 0.25);
        let avg = t.avg_tp(&word_from_labels("abc").unwrap());
        assert_eq!(avg.value, 0.375);
    }

    #[test]
    fn unseen_antecedent_is_flagged() {
        let t = TpTable::build(&builtin::set1());
        let avg = t.avg_tp(&word_from_labels("Am").unwrap());
        assert_eq!(avg.value, 0.0);
        assert!(avg.unseen_antecedent);
    }

    #[test]
    fn normalized_per_antecedent() {
        for corpus in [builtin::set1(), builtin::set2()] {
            let t = TpTable::build(&corpus);
            for a in t.antecedents() {
                let s: f64 = t.successors_of(a).iter().map(|(_, p)| p).sum();
                assert!((s - 1.0).abs() < 1e-12);
            }
        }
    }
}
