use std::fmt;

use crate::encoding::{Direction, IntervalWord};
use crate::error::{Error, Result};

fn check_lengths(a: &IntervalWord, b: &IntervalWord) -> Result<()> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(Error::LengthMismatch(a.len(), b.len()))
    }
}

/// Largest per-position semitone difference.
pub fn chebyshev(a: &IntervalWord, b: &IntervalWord) -> Result<u32> {
    Ok(mdist(a, b)?.into_iter().max().unwrap_or(0))
}

/// Per-position absolute semitone differences.
pub fn mdist(a: &IntervalWord, b: &IntervalWord) -> Result<Vec<u32>> {
    check_lengths(a, b)?;
    Ok(a.intervals()
        .iter()
        .zip(b.intervals())
        .map(|(x, y)| (x.semitones() - y.semitones()).unsigned_abs())
        .collect())
}

/// Rise/fall/flat pattern of a word, written with `R`, `F` and `=`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Contour(pub Vec<Direction>);

impl fmt::Display for Contour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{}", d.symbol())?;
        }
        Ok(())
    }
}

pub fn contour(word: &IntervalWord) -> Contour {
    Contour(word.intervals().iter().map(|i| i.direction()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::word_from_labels;

    fn w(s: &str) -> IntervalWord {
        word_from_labels(s).unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(chebyshev(&w("caf"), &w("jim")).unwrap(), 8);
        assert_eq!(mdist(&w("sgm"), &w("okm")).unwrap(), vec![4, 4, 0]);
        assert_eq!(mdist(&w("kom"), &w("okm")).unwrap(), vec![4, 4, 0]);
        assert_eq!(chebyshev(&w("osf"), &w("orf")).unwrap(), 1);
        assert_eq!(chebyshev(&w("llm"), &w("lmm")).unwrap(), 1);
        assert_eq!(chebyshev(&w("llm"), &w("mlm")).unwrap(), 1);
        assert_eq!(contour(&w("kmo")).to_string(), "F=R");
        assert_eq!(contour(&w("sgm")), contour(&w("okm")));
        assert_ne!(contour(&w("kom")), contour(&w("okm")));
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(chebyshev(&w("mm"), &w("mmm")), Err(Error::LengthMismatch(2, 3))));
    }
}
