//! Song corpora and the word-level statistics computed over them.

mod distance;
mod generate;
mod inventory;
mod tp;
mod unheard;

use std::fs;
use std::path::Path;

use crate::encoding::{melody_name, parse_melody, Interval, IntervalWord};
use crate::error::{Error, Result};

pub use distance::{chebyshev, contour, mdist, Contour};
pub use generate::{
    concatenate, full_random, is_singable, move_word_to_front, permute_global,
    permute_within_song, random_3words, saffran_stream, Relocation,
};
pub use inventory::WordInventory;
pub use tp::{AvgTp, TpTable};
pub use unheard::{unheard_word_sets, UnheardSets, UNHEARD_SET_SIZE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Song {
    pub name: String,
    pub intervals: Vec<Interval>,
}

impl Song {
    pub fn new(name: impl Into<String>, intervals: Vec<Interval>) -> Self {
        Song {
            name: name.into(),
            intervals,
        }
    }

    /// Parse a melody file's text; `fallback` names the song when the text
    /// carries no `# song:` header.
    pub fn parse(text: &str, fallback: &str) -> Result<Self> {
        let intervals = parse_melody(text)?;
        let name = melody_name(text).unwrap_or_else(|| fallback.to_string());
        Ok(Song { name, intervals })
    }

    pub fn from_word(name: impl Into<String>, word: &IntervalWord) -> Self {
        Song::new(name, word.intervals().to_vec())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Song::parse(&text, &stem).map_err(|e| e.in_file(path))
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Corpus {
    pub songs: Vec<Song>,
}

impl Corpus {
    pub fn new(songs: Vec<Song>) -> Self {
        Corpus { songs }
    }

    /// Load a manifest: one melody path per line, relative to the manifest's
    /// directory. Blank lines and `#` comments are skipped.
    pub fn from_manifest(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::from(e).in_file(path))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        let songs = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| Song::load(&base.join(l)))
            .collect::<Result<Vec<_>>>()?;
        if songs.is_empty() {
            return Err(Error::EmptyCorpus.in_file(path));
        }
        Ok(Corpus { songs })
    }

    pub fn total_intervals(&self) -> usize {
        self.songs.iter().map(Song::len).sum()
    }

    pub fn intervals(&self) -> impl Iterator<Item = Interval> + '_ {
        self.songs.iter().flat_map(|s| s.intervals.iter().copied())
    }

    pub fn song_lengths(&self) -> Vec<usize> {
        self.songs.iter().map(Song::len).collect()
    }

    pub fn inventory(&self, n: usize) -> WordInventory {
        WordInventory::build(self, n)
    }

    /// Mean and sample standard deviation of the interval sizes.
    pub fn interval_moments(&self) -> (f64, f64) {
        let xs: Vec<f64> = self.intervals().map(|i| f64::from(i.semitones())).collect();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, var.sqrt())
    }
}

/// The melody files shipped in `data/`, compiled in so examples and tests
/// need no paths.
pub mod builtin {
    use super::{Corpus, Song};

    macro_rules! songs {
        ($($file:literal),* $(,)?) => {
            vec![$(Song::parse(include_str!(concat!("../../data/", $file)), $file)
                .expect(concat!("bundled melody ", $file))),*]
        };
    }

    /// Ten children's songs, the primary training corpus.
    pub fn set1() -> Corpus {
        Corpus::new(songs![
            "set1/ah_les_crocodiles.txt",
            "set1/bateau_sur_l_eau.txt",
            "set1/fais_dodo.txt",
            "set1/au_clair_de_la_lune.txt",
            "set1/ainsi_font.txt",
            "set1/une_souris_verte.txt",
            "set1/ah_vous_dirai_je_maman.txt",
            "set1/pomme_de_reinette.txt",
            "set1/sur_le_pont_d_avignon.txt",
            "set1/frappe_frappe_petite_main.txt",
        ])
    }

    /// Ten further children's songs used to check that results carry over.
    pub fn set2() -> Corpus {
        Corpus::new(songs![
            "set2/alouette.txt",
            "set2/biquette.txt",
            "set2/dans_la_foret_lointaine.txt",
            "set2/je_te_tiens.txt",
            "set2/le_bon_roi_dagobert.txt",
            "set2/il_etait_une_bergere.txt",
            "set2/j_ai_du_bon_tabac.txt",
            "set2/j_ai_perdu_le_do.txt",
            "set2/frere_jacques.txt",
            "set2/il_court_le_furet.txt",
        ])
    }

    /// Held-out violin melody: no repeated notes, leaps beyond the octave.
    pub fn test_melody() -> Song {
        songs!["test/bach_test.txt"].remove(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_sets_load() {
        let s1 = builtin::set1();
        assert_eq!(s1.songs.len(), 10);
        assert_eq!(s1.songs[3].name, "Au clair de la lune");
        assert_eq!(builtin::set2().songs.len(), 10);
        let bach = builtin::test_melody();
        assert!(bach.intervals.iter().all(|i| i.semitones() != 0));
        assert!(bach.intervals.iter().any(|i| i.semitones().abs() > 12));
    }

    #[test]
    fn manifest_matches_builtin() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
        assert_eq!(Corpus::from_manifest(&dir.join("set1.manifest")).unwrap(), builtin::set1());
        assert_eq!(Corpus::from_manifest(&dir.join("set2.manifest")).unwrap(), builtin::set2());
    }

    #[test]
    fn children_songs_stay_within_octave() {
        for corpus in [builtin::set1(), builtin::set2()] {
            assert!(corpus.intervals().all(|i| i.semitones().abs() <= 12));
        }
    }
}
