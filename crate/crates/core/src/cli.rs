//! Batch front end: encode melodies, train and score networks, run studies.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::corpus::{builtin, Corpus, Song};
use crate::encoding::{parse_melody, word_from_labels, Encoding};
use crate::error::{Error, Result};
use crate::experiments::{run_study, write_atomic, Corpora, CsvTable, StudyConfig, StudyId};
use crate::nets::{read_snapshot, write_snapshot, Hyperparams, Model, ModelKind};
use crate::rng::named;
use crate::row;

#[derive(Debug, Parser)]
#[command(name = "tracx2", version, about = "Chunking of melodic intervals with recursive autoencoders")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a melody file's intervals as letters and semitone steps.
    Encode {
        /// Melody file: note names or pitch numbers.
        file: PathBuf,
    },
    /// Train one network and write its snapshot and training trace.
    Train {
        /// `set1`, `set2`, or a manifest listing melody files.
        #[arg(long, default_value = "set1")]
        corpus: String,
        #[arg(long, default_value = "tracx2")]
        model: ModelKind,
        #[arg(long, default_value = "ordinal")]
        encoding: Encoding,
        #[arg(long, default_value_t = 30)]
        epochs: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score words from a file (one letter string per line) with a snapshot.
    Score {
        #[arg(long)]
        snapshot: PathBuf,
        #[arg(long)]
        words: PathBuf,
        /// Adds each word's frequency in this corpus.
        #[arg(long)]
        corpus: Option<String>,
        /// CSV destination; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a study and write its tables into the output directory.
    Experiment {
        #[arg(long)]
        study: StudyId,
        #[arg(long)]
        seed: u64,
        /// Number of replications.
        #[arg(long, default_value_t = 20)]
        seeds: usize,
        #[arg(long, default_value = "set1")]
        corpus: String,
        /// Held-out melody for the prior-learning study.
        #[arg(long)]
        test_melody: Option<PathBuf>,
        /// Comma-separated model list.
        #[arg(long, value_delimiter = ',', default_value = "tracx2,rae,srn")]
        model: Vec<ModelKind>,
        #[arg(long, default_value = "ordinal")]
        encoding: Encoding,
        /// Overrides the study's default epoch count.
        #[arg(long)]
        epochs: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Resolve a corpus argument: a built-in set name or a manifest path.
pub fn load_corpus(name: &str) -> Result<Corpus> {
    match name {
        "set1" => Ok(builtin::set1()),
        "set2" => Ok(builtin::set2()),
        path => Corpus::from_manifest(Path::new(path)),
    }
}

pub fn run_command(command: Command, stdout: &mut dyn Write) -> Result<()> {
    match command {
        Command::Encode { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Error::from(e).in_file(&file))?;
            let ivs = parse_melody(&text).map_err(|e| e.in_file(&file))?;
            let labels: Vec<String> = ivs.iter().map(|i| i.label().to_string()).collect();
            let steps: Vec<String> = ivs
                .iter()
                .map(|i| match i.semitones() {
                    0 => "0".to_string(),
                    s => format!("{s:+}"),
                })
                .collect();
            writeln!(stdout, "{}", labels.join(" "))?;
            writeln!(stdout, "{}", steps.join(" "))?;
        }
        Command::Train {
            corpus,
            model,
            encoding,
            epochs,
            seed,
            out,
        } => {
            let c = load_corpus(&corpus)?;
            let hyper = Hyperparams {
                epochs,
                ..Hyperparams::default()
            };
            let mut rng = named(seed, "train", 0);
            let mut net = Model::new(model, encoding, hyper, &mut rng);
            let mut trace = CsvTable::new(&["step", "error", "delta"]);
            let mut step = 0usize;
            let summary = net.train_observed(&c, epochs, &mut rng, &mut |e, d| {
                trace.push(row![step, e, d]);
                step += 1;
            })?;
            std::fs::create_dir_all(&out).map_err(|e| Error::from(e).in_file(&out))?;
            write_snapshot(&net, &out.join("model.snapshot"))?;
            let p = out.join("trace.csv");
            write_atomic(&p, trace.to_csv().as_bytes()).map_err(|e| e.in_file(&p))?;
            if summary.skipped_songs > 0 {
                eprintln!("warning: skipped {} songs with fewer than two intervals", summary.skipped_songs);
            }
            writeln!(
                stdout,
                "trained {model} ({encoding}) for {epochs} epochs, {} steps, last-epoch mean error {:.4}",
                summary.steps, summary.mean_error_last_epoch
            )?;
        }
        Command::Score {
            snapshot,
            words,
            corpus,
            out,
        } => {
            let net = read_snapshot(&snapshot)?;
            let text = std::fs::read_to_string(&words).map_err(|e| Error::from(e).in_file(&words))?;
            let corpus = corpus.map(|c| load_corpus(&c)).transpose()?;
            let mut t = CsvTable::new(&["word", "length", "error", "frequency", "status"]);
            for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                match word_from_labels(line) {
                    Ok(w) => {
                        let freq = corpus.as_ref().map(|c| c.inventory(w.len()).count(&w));
                        match net.word_error(&w) {
                            Ok(e) => t.push(row![line, w.len(), e, freq, "ok"]),
                            Err(Error::WordTooShort(_)) => t.push(row![line, w.len(), Option::<f64>::None, freq, "too_short"]),
                            Err(e) => return Err(e),
                        }
                    }
                    Err(e) => {
                        eprintln!("{}: {line:?}: {e}", words.display());
                        t.push(row![line, Option::<usize>::None, Option::<f64>::None, Option::<usize>::None, "bad_letter"]);
                    }
                }
            }
            match out {
                Some(p) => write_atomic(&p, t.to_csv().as_bytes()).map_err(|e| e.in_file(&p))?,
                None => stdout.write_all(t.to_csv().as_bytes())?,
            }
        }
        Command::Experiment {
            study,
            seed,
            seeds,
            corpus,
            test_melody,
            model,
            encoding,
            epochs,
            out,
        } => {
            let mut corpora = Corpora::builtin();
            if corpus != "set1" {
                corpora.primary = load_corpus(&corpus)?;
                corpora.primary_name = corpus.clone();
                corpora.secondary = None;
            }
            if let Some(p) = test_melody {
                corpora.test_melody = Song::load(&p)?;
            }
            let cfg = StudyConfig {
                seed,
                runs: seeds,
                epochs,
                encoding,
                models: model,
                hyper: Hyperparams::default(),
            };
            let report = run_study(study, &corpora, &cfg)?;
            let files = report.write(&out)?;
            for f in files {
                writeln!(stdout, "{}", f.display())?;
            }
        }
    }
    Ok(())
}

/// Parse arguments, run, and map the outcome to an exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_command(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    run(std::env::args_os(), &mut std::io::stdout().lock())
}
