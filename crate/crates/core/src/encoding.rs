//! Intervals, their letter labels, and the bipolar input codes fed to the
//! networks.
//!
//! An interval is a signed semitone step in `[-19, 19]`. Lowercase `a..=y`
//! label the steps `-12..=12` (so `m` is a repeated note), `A..=G` label
//! `-19..=-13` and `T..=Z` label `13..=19`.

use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of distinct intervals, and the length of every code vector.
pub const CODE_LEN: usize = 39;
pub const MAX_STEP: i32 = 19;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval(i8);

impl Interval {
    pub fn new(semitones: i32) -> Result<Self> {
        if (-MAX_STEP..=MAX_STEP).contains(&semitones) {
            Ok(Interval(semitones as i8))
        } else {
            Err(Error::SemitonesOutOfRange(semitones))
        }
    }

    pub fn semitones(self) -> i32 {
        i32::from(self.0)
    }

    /// Position in the alphabet, `0` for -19 through `38` for +19.
    pub fn index(self) -> usize {
        (self.semitones() + MAX_STEP) as usize
    }

    pub fn from_index(index: usize) -> Result<Self> {
        Interval::new(index as i32 - MAX_STEP)
    }

    pub fn label(self) -> char {
        let s = self.semitones();
        let c = match s {
            -12..=12 => b'a' + (s + 12) as u8,
            -19..=-13 => b'A' + (s + 19) as u8,
            _ => b'T' + (s - 13) as u8,
        };
        c as char
    }

    pub fn from_label(label: char) -> Result<Self> {
        let s = match label {
            'a'..='y' => label as i32 - 'a' as i32 - 12,
            'A'..='G' => label as i32 - 'A' as i32 - 19,
            'T'..='Z' => label as i32 - 'T' as i32 + 13,
            _ => return Err(Error::UnknownLetter(label)),
        };
        Interval::new(s)
    }

    pub fn direction(self) -> Direction {
        match self.semitones() {
            0 => Direction::Flat,
            s if s > 0 => Direction::Rising,
            _ => Direction::Falling,
        }
    }

    /// All 39 intervals in ascending order.
    pub fn all() -> impl Iterator<Item = Interval> {
        (-MAX_STEP..=MAX_STEP).map(|s| Interval(s as i8))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

pub fn label_of(semitones: i32) -> Result<char> {
    Interval::new(semitones).map(Interval::label)
}

pub fn semitones_of(label: char) -> Result<i32> {
    Interval::from_label(label).map(Interval::semitones)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Rising,
    Falling,
    Flat,
}

impl Direction {
    pub fn symbol(self) -> char {
        match self {
            Direction::Rising => 'R',
            Direction::Falling => 'F',
            Direction::Flat => '=',
        }
    }
}

/// An ordered run of intervals, written as its letter string (`"kmo"`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalWord(Vec<Interval>);

impl IntervalWord {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(IntervalWord(intervals))
    }

    pub fn from_semitones(steps: &[i32]) -> Result<Self> {
        let intervals = steps
            .iter()
            .map(|&s| Interval::new(s))
            .collect::<Result<Vec<_>>>()?;
        IntervalWord::new(intervals)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.0
    }

    pub fn semitones(&self) -> Vec<i32> {
        self.0.iter().map(|i| i.semitones()).collect()
    }

    pub fn labels(&self) -> String {
        self.0.iter().map(|i| i.label()).collect()
    }

    /// Sub-word `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> IntervalWord {
        IntervalWord(self.0[start..end].to_vec())
    }
}

impl Index<usize> for IntervalWord {
    type Output = Interval;

    fn index(&self, i: usize) -> &Interval {
        &self.0[i]
    }
}

impl fmt::Display for IntervalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels())
    }
}

impl FromStr for IntervalWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        word_from_labels(s)
    }
}

pub fn word_from_labels(labels: &str) -> Result<IntervalWord> {
    let intervals = labels
        .trim()
        .chars()
        .map(Interval::from_label)
        .collect::<Result<Vec<_>>>()?;
    IntervalWord::new(intervals)
}

/// How an interval is turned into a bipolar input vector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    /// Thermometer code: the first `index + 1` units are +1.
    #[default]
    Ordinal,
    /// A single +1 at the interval's index.
    OneHot,
}

impl Encoding {
    pub fn encode(self, interval: Interval) -> Code {
        match self {
            Encoding::Ordinal => encode_ordinal(interval),
            Encoding::OneHot => encode_onehot(interval),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Encoding::Ordinal => "ordinal",
            Encoding::OneHot => "onehot",
        }
    }
}

impl FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ordinal" | "thermometer" => Ok(Encoding::Ordinal),
            "onehot" | "one-hot" => Ok(Encoding::OneHot),
            other => Err(Error::Config(format!("unknown encoding {other:?}"))),
        }
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A pure bipolar code, every element -1 or +1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Code([f64; CODE_LEN]);

impl Code {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn hamming(&self, other: &Code) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn activations(&self) -> ActVector {
        ActVector(self.0)
    }
}

pub fn encode_ordinal(interval: Interval) -> Code {
    let k = interval.index();
    let mut v = [-1.0; CODE_LEN];
    v[..=k].fill(1.0);
    Code(v)
}

pub fn encode_onehot(interval: Interval) -> Code {
    let mut v = [-1.0; CODE_LEN];
    v[interval.index()] = 1.0;
    Code(v)
}

/// Real activations in `[-1, 1]`: hidden states and blended inputs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ActVector(pub [f64; CODE_LEN]);

impl ActVector {
    pub fn zeros() -> Self {
        ActVector([0.0; CODE_LEN])
    }

    pub fn from_slice(values: &[f64]) -> Result<Self> {
        let arr: [f64; CODE_LEN] = values
            .try_into()
            .map_err(|_| Error::LengthMismatch(values.len(), CODE_LEN))?;
        Ok(ActVector(arr))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn cityblock(&self, other: &ActVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a - b).abs()).sum()
    }

    pub fn in_range(&self) -> bool {
        self.0.iter().all(|v| (-1.0..=1.0).contains(v))
    }
}

impl From<Code> for ActVector {
    fn from(c: Code) -> Self {
        c.activations()
    }
}

/// Parse a melody: whitespace-separated note names (`C4`, `F#3`, `Bb4`) or
/// integer pitch numbers (60 = C4). Lines starting with `#` are comments.
/// Returns the successive pitch differences.
pub fn parse_melody(text: &str) -> Result<Vec<Interval>> {
    let notes = parse_notes(text)?;
    if notes.len() < 2 {
        return Err(Error::EmptyMelody);
    }
    notes
        .windows(2)
        .map(|w| {
            let (a, b) = (&w[0], &w[1]);
            let step = b.pitch - a.pitch;
            Interval::new(step).map_err(|_| Error::IntervalOutOfRange {
                line: b.line,
                from: a.token.clone(),
                to: b.token.clone(),
                semitones: step,
            })
        })
        .collect()
}

/// The `# song: <name>` header, if present.
pub fn melody_name(text: &str) -> Option<String> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('#'))
        .find_map(|c| c.trim().strip_prefix("song:"))
        .map(|n| n.trim().to_string())
}

struct Note {
    pitch: i32,
    token: String,
    line: usize,
}

fn parse_notes(text: &str) -> Result<Vec<Note>> {
    let mut notes = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut offset = 0;
        for token in line.split_whitespace() {
            let column = line[offset..].find(token).unwrap() + offset;
            offset = column + token.len();
            let pitch = parse_pitch(token).ok_or_else(|| Error::MalformedToken {
                line: ln + 1,
                column: column + 1,
                token: token.to_string(),
            })?;
            notes.push(Note {
                pitch,
                token: token.to_string(),
                line: ln + 1,
            });
        }
    }
    Ok(notes)
}

/// MIDI-style pitch number of a note name or integer token.
pub fn parse_pitch(token: &str) -> Option<i32> {
    if let Ok(n) = token.parse::<i32>() {
        return Some(n);
    }
    let mut chars = token.chars();
    let base = match chars.next()? {
        'C' => 0,
        'D' => 2,
        'E' => 4,
        'F' => 5,
        'G' => 7,
        'A' => 9,
        'B' => 11,
        _ => return None,
    };
    let rest = chars.as_str();
    let (accidental, octave) = match rest.chars().next()? {
        '#' => (1, &rest[1..]),
        'b' => (-1, &rest[1..]),
        _ => (0, rest),
    };
    let octave: i32 = octave.parse().ok()?;
    Some(base + accidental + 12 * (octave + 1))
}
