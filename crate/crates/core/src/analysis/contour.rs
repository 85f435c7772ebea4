use std::collections::BTreeMap;

use serde::Serialize;

use crate::corpus::{contour, mdist};
use crate::encoding::{ActVector, IntervalWord};
use crate::error::{Error, Result};

use super::stats::{bonferroni, mean, oneway_anova};

/// Largest per-position difference considered.
pub const MDIST_CEILING: u32 = 6;

#[derive(Clone, Debug, Serialize)]
pub struct TripletResult {
    pub mdist: [u32; 3],
    pub same_pairs: usize,
    pub diff_pairs: usize,
    pub same_mean: f64,
    pub diff_mean: f64,
    pub f: f64,
    pub p: f64,
    pub p_bonferroni: f64,
}

impl TripletResult {
    pub fn expected_direction(&self) -> bool {
        self.same_mean < self.diff_mean
    }

    pub fn significant(&self) -> bool {
        self.p_bonferroni < 0.05
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContourSummary {
    pub triplets: Vec<TripletResult>,
    /// Triplets with fewer than two pairs on one side, or no spread.
    pub skipped: Vec<[u32; 3]>,
}

impl ContourSummary {
    fn share(&self, pred: impl Fn(&TripletResult) -> bool) -> f64 {
        if self.triplets.is_empty() {
            return 0.0;
        }
        self.triplets.iter().filter(|t| pred(t)).count() as f64 / self.triplets.len() as f64
    }

    /// Share of scored triplets where same-contour pairs are closer.
    pub fn expected_share(&self) -> f64 {
        self.share(TripletResult::expected_direction)
    }

    /// Share significant after correction, either direction.
    pub fn significant_share(&self) -> f64 {
        self.share(TripletResult::significant)
    }

    /// Share significant and in the expected direction.
    pub fn significant_expected_share(&self) -> f64 {
        self.share(|t| t.significant() && t.expected_direction())
    }
}

/// Group all word pairs by exact mdist up to the ceiling, split each group by
/// whether the two words share a contour, and compare representation
/// distances between the two sides.
pub fn contour_study(words: &[IntervalWord], reps: &[ActVector]) -> Result<ContourSummary> {
    if words.len() != reps.len() {
        return Err(Error::LengthMismatch(words.len(), reps.len()));
    }
    if words.iter().any(|w| w.len() != 3) {
        return Err(Error::Config("contour study needs 3-interval words".into()));
    }
    let contours: Vec<_> = words.iter().map(contour).collect();
    let mut groups: BTreeMap<[u32; 3], (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let d = mdist(&words[i], &words[j])?;
            if d.iter().any(|&x| x > MDIST_CEILING) {
                continue;
            }
            let key = [d[0], d[1], d[2]];
            let dist = reps[i].cityblock(&reps[j]);
            let entry = groups.entry(key).or_default();
            if contours[i] == contours[j] {
                entry.0.push(dist);
            } else {
                entry.1.push(dist);
            }
        }
    }
    let mut scored = Vec::new();
    let mut skipped = Vec::new();
    for a in 0..=MDIST_CEILING {
        for b in 0..=MDIST_CEILING {
            for c in 0..=MDIST_CEILING {
                let key = [a, b, c];
                let Some((same, diff)) = groups.get(&key) else {
                    skipped.push(key);
                    continue;
                };
                if same.len() < 2 || diff.len() < 2 {
                    skipped.push(key);
                    continue;
                }
                match oneway_anova(&[same, diff]) {
                    Ok(r) => scored.push(TripletResult {
                        mdist: key,
                        same_pairs: same.len(),
                        diff_pairs: diff.len(),
                        same_mean: mean(same),
                        diff_mean: mean(diff),
                        f: r.f,
                        p: r.p,
                        p_bonferroni: 1.0,
                    }),
                    Err(Error::Degenerate(_)) => skipped.push(key),
                    Err(e) => return Err(e),
                }
            }
        }
    }
    let m = scored.len();
    for t in &mut scored {
        t.p_bonferroni = bonferroni(t.p, m);
    }
    Ok(ContourSummary {
        triplets: scored,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::random_3words;
    use crate::rng::seeded;

    /// Representations that encode contour directly separate the two sides.
    #[test]
    fn contour_coded_reps_are_detected() {
        let words = random_3words(300, &mut seeded(1, 0)).unwrap();
        let reps: Vec<ActVector> = words
            .iter()
            .map(|w| {
                let mut v = [0.0; 39];
                for (k, s) in w.semitones().iter().enumerate() {
                    v[k] = s.signum() as f64;
                    v[3 + k] = *s as f64 / 24.0;
                }
                ActVector(v)
            })
            .collect();
        let s = contour_study(&words, &reps).unwrap();
        assert!(!s.triplets.is_empty());
        assert!(s.expected_share() > 0.95);
        assert!(s.skipped.contains(&[0, 0, 0]));
        assert_eq!(s.triplets.len() + s.skipped.len(), 343);
    }

    #[test]
    fn rejects_mismatch() {
        let words = random_3words(3, &mut seeded(1, 0)).unwrap();
        assert!(contour_study(&words, &[]).is_err());
    }
}
