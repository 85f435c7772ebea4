use std::collections::BTreeMap;

use crate::encoding::IntervalWord;

use super::Corpus;

/// Occurrence counts of every length-`n` window, counted inside songs only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordInventory {
    n: usize,
    counts: BTreeMap<IntervalWord, usize>,
}

impl WordInventory {
    pub fn build(corpus: &Corpus, n: usize) -> Self {
        assert!(n >= 1, "word length must be at least 1");
        let mut counts = BTreeMap::new();
        for song in &corpus.songs {
            for w in song.intervals.windows(n) {
                let word = IntervalWord::new(w.to_vec()).expect("non-empty window");
                *counts.entry(word).or_insert(0) += 1;
            }
        }
        WordInventory { n, counts }
    }

    pub fn word_len(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn count(&self, word: &IntervalWord) -> usize {
        self.counts.get(word).copied().unwrap_or(0)
    }

    pub fn contains(&self, word: &IntervalWord) -> bool {
        self.counts.contains_key(word)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn words(&self) -> impl Iterator<Item = &IntervalWord> {
        self.counts.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntervalWord, usize)> {
        self.counts.iter().map(|(w, &c)| (w, c))
    }

    /// Words sorted by descending count, ties in word order.
    pub fn most_common(&self) -> Vec<(&IntervalWord, usize)> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        v
    }
}
