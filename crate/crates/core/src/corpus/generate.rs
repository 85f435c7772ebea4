use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::encoding::{Interval, IntervalWord, MAX_STEP};
use crate::error::{Error, Result};

use super::{Corpus, Song};

/// Shuffle each song's intervals in place of the original order.
pub fn permute_within_song<R: Rng + ?Sized>(corpus: &Corpus, rng: &mut R) -> Corpus {
    let songs = corpus
        .songs
        .iter()
        .map(|s| {
            let mut ivs = s.intervals.clone();
            ivs.shuffle(rng);
            Song::new(s.name.clone(), ivs)
        })
        .collect();
    Corpus::new(songs)
}

/// Pool every interval, shuffle, and deal them back out with each song's
/// original length.
pub fn permute_global<R: Rng + ?Sized>(corpus: &Corpus, rng: &mut R) -> Corpus {
    let mut pool: Vec<Interval> = corpus.intervals().collect();
    pool.shuffle(rng);
    redistribute(corpus, pool)
}

/// Replace every position by an interval drawn uniformly from all 39.
pub fn full_random<R: Rng + ?Sized>(corpus: &Corpus, rng: &mut R) -> Corpus {
    let pool: Vec<Interval> = (0..corpus.total_intervals())
        .map(|_| Interval::new(rng.random_range(-MAX_STEP..=MAX_STEP)).unwrap())
        .collect();
    redistribute(corpus, pool)
}

fn redistribute(corpus: &Corpus, pool: Vec<Interval>) -> Corpus {
    let mut rest = pool.as_slice();
    let songs = corpus
        .songs
        .iter()
        .map(|s| {
            let (head, tail) = rest.split_at(s.len());
            rest = tail;
            Song::new(s.name.clone(), head.to_vec())
        })
        .collect();
    Corpus::new(songs)
}

/// All songs chained into one sequence with no break between them.
pub fn concatenate(corpus: &Corpus) -> Song {
    Song::new("concatenated", corpus.intervals().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relocation {
    pub song: Song,
    /// Occurrences moved; zero means the word was absent and the song is
    /// unchanged.
    pub moved: usize,
}

/// Remove every non-overlapping occurrence of `word` (scanning left to
/// right) and put them, back to back, at the front of the sequence.
pub fn move_word_to_front(seq: &Song, word: &IntervalWord) -> Relocation {
    let pat = word.intervals();
    let ivs = &seq.intervals;
    let mut rest = Vec::with_capacity(ivs.len());
    let mut moved = 0;
    let mut i = 0;
    while i < ivs.len() {
        if ivs[i..].starts_with(pat) {
            moved += 1;
            i += pat.len();
        } else {
            rest.push(ivs[i]);
            i += 1;
        }
    }
    let mut out = Vec::with_capacity(ivs.len());
    for _ in 0..moved {
        out.extend_from_slice(pat);
    }
    out.extend(rest);
    Relocation {
        song: Song::new(seq.name.clone(), out),
        moved,
    }
}

const SHUFFLE_ATTEMPTS: usize = 1_000_000;

/// A continuous stream of `blocks * words_per_block` word tokens with no word
/// immediately repeated, block boundaries included. Each block holds every
/// word equally often (remainders go to randomly chosen words).
pub fn saffran_stream<R: Rng + ?Sized>(
    words: &[IntervalWord],
    blocks: usize,
    words_per_block: usize,
    rng: &mut R,
) -> Result<Song> {
    let distinct: HashSet<&IntervalWord> = words.iter().collect();
    if distinct.len() < 2 || distinct.len() != words.len() {
        return Err(Error::TooFewWords);
    }
    let k = words.len();
    let mut tokens: Vec<usize> = Vec::with_capacity(blocks * words_per_block);
    for _ in 0..blocks {
        let mut block: Vec<usize> = (0..words_per_block / k).flat_map(|_| 0..k).collect();
        let mut extra: Vec<usize> = (0..k).collect();
        extra.shuffle(rng);
        block.extend_from_slice(&extra[..words_per_block % k]);
        let prev = tokens.last().copied();
        let mut ok = false;
        for _ in 0..SHUFFLE_ATTEMPTS {
            block.shuffle(rng);
            let clash_at_start = prev.is_some() && block.first().copied() == prev;
            if !clash_at_start && block.windows(2).all(|w| w[0] != w[1]) {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::SamplingExhausted(
                "no repetition-free ordering found for a block".into(),
            ));
        }
        tokens.extend(block);
    }
    let intervals = tokens
        .iter()
        .flat_map(|&t| words[t].intervals().iter().copied())
        .collect();
    Ok(Song::new("stream", intervals))
}

/// Within `[-12, 12]`, and no two adjacent same-sign intervals adding up to
/// more than an octave either way.
pub fn is_singable(word: &IntervalWord) -> bool {
    let s = word.semitones();
    s.iter().all(|x| x.abs() <= 12)
        && s.windows(2).all(|w| {
            let same_sign = (w[0] > 0 && w[1] > 0) || (w[0] < 0 && w[1] < 0);
            !same_sign || (w[0] + w[1]).abs() <= 12
        })
}

/// `count` distinct random singable 3-interval words, by rejection sampling
/// over `[-12, 12]^3`.
pub fn random_3words<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Result<Vec<IntervalWord>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(count);
    let budget = count.max(1) * 10_000;
    for _ in 0..budget {
        if out.len() == count {
            break;
        }
        let steps: Vec<i32> = (0..3).map(|_| rng.random_range(-12..=12)).collect();
        let word = IntervalWord::from_semitones(&steps)?;
        if is_singable(&word) && seen.insert(word.clone()) {
            out.push(word);
        }
    }
    if out.len() < count {
        return Err(Error::SamplingExhausted(format!(
            "only {} of {count} distinct singable words drawn",
            out.len()
        )));
    }
    Ok(out)
}
