use std::collections::HashMap;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::encoding::IntervalWord;
use crate::error::{Error, Result};

use super::{chebyshev, WordInventory};

pub const UNHEARD_SET_SIZE: usize = 50;

/// Three samples of words absent from the training inventory.
#[derive(Clone, Debug)]
pub struct UnheardSets {
    /// Chebyshev distance above 5 from every inventory word.
    pub far: Vec<IntervalWord>,
    /// At distance 1 from a poorly learned word and not within 1 of any well
    /// learned one.
    pub near_unfamiliar: Vec<IntervalWord>,
    /// At distance 1 from a well learned word.
    pub near_familiar: Vec<IntervalWord>,
    /// Error thresholds used: `mean - sd/2` and `mean + sd/2`.
    pub familiar_below: f64,
    pub unfamiliar_above: f64,
    /// Size of each candidate pool before sampling.
    pub pool_sizes: [usize; 3],
}

/// Build the three unheard-word categories for a 3-interval inventory and the
/// model's errors on its words. Candidates range over every word with
/// intervals in `[-12, 12]`; each category is sampled uniformly without
/// replacement from its full candidate pool.
pub fn unheard_word_sets<R: Rng + ?Sized>(
    inventory: &WordInventory,
    word_errors: &HashMap<IntervalWord, f64>,
    count: usize,
    rng: &mut R,
) -> Result<UnheardSets> {
    let errors: Vec<f64> = inventory
        .words()
        .map(|w| {
            word_errors
                .get(w)
                .copied()
                .ok_or_else(|| Error::Config(format!("no error given for inventory word {w}")))
        })
        .collect::<Result<_>>()?;
    if errors.len() < 2 {
        return Err(Error::Degenerate("inventory needs at least two words".into()));
    }
    let n = errors.len() as f64;
    let mean = errors.iter().sum::<f64>() / n;
    let sd = (errors.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    let familiar_below = mean - 0.5 * sd;
    let unfamiliar_above = mean + 0.5 * sd;

    let known: Vec<(&IntervalWord, f64)> = inventory.words().zip(errors.iter().copied()).collect();
    let len = inventory.word_len();

    let mut far = Vec::new();
    let mut near_unfamiliar = Vec::new();
    let mut near_familiar = Vec::new();
    for candidate in all_words(len) {
        if inventory.contains(&candidate) {
            continue;
        }
        let mut min_dist = u32::MAX;
        let mut near_unfam = false;
        let mut near_fam = false;
        let mut fam_within_one = false;
        for (word, err) in &known {
            let d = chebyshev(&candidate, word)?;
            min_dist = min_dist.min(d);
            let familiar = *err < familiar_below;
            if d == 1 && *err > unfamiliar_above {
                near_unfam = true;
            }
            if d == 1 && familiar {
                near_fam = true;
            }
            if d <= 1 && familiar {
                fam_within_one = true;
            }
        }
        if min_dist > 5 {
            far.push(candidate);
        } else if near_fam {
            near_familiar.push(candidate);
        } else if near_unfam && !fam_within_one {
            near_unfamiliar.push(candidate);
        }
    }
    let pool_sizes = [far.len(), near_unfamiliar.len(), near_familiar.len()];
    let mut pick = |pool: Vec<IntervalWord>, name: &str| -> Result<Vec<IntervalWord>> {
        if pool.len() < count {
            return Err(Error::SamplingExhausted(format!(
                "{name}: {} candidates for {count} words",
                pool.len()
            )));
        }
        Ok(pool.choose_multiple(rng, count).cloned().collect())
    };
    Ok(UnheardSets {
        far: pick(far, "far")?,
        near_unfamiliar: pick(near_unfamiliar, "near-unfamiliar")?,
        near_familiar: pick(near_familiar, "near-familiar")?,
        familiar_below,
        unfamiliar_above,
        pool_sizes,
    })
}

fn all_words(len: usize) -> impl Iterator<Item = IntervalWord> {
    let total = 25usize.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut steps = vec![0; len];
        for s in steps.iter_mut().rev() {
            *s = (code % 25) as i32 - 12;
            code /= 25;
        }
        IntervalWord::from_semitones(&steps).unwrap()
    })
}
