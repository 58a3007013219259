//! Command-line front end of the sarcnn toolkit.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 data error,
//! 3 numeric failure.

pub mod commands;
pub mod config;
pub mod features;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use sarcnn::ErrorKind;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// An error on its way to becoming an exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    pub fn data(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<sarcnn::Error> for Failure {
    fn from(e: sarcnn::Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Config => 1,
            ErrorKind::Data => 2,
            ErrorKind::Numeric => 3,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        sarcnn::Error::from(e).into()
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sarcnn",
    version,
    about = "Sarcasm detection with fused CNN features"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Global {
    /// Overrides every seed the command uses.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Sectioned configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file or directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Suppress summaries and tables on the terminal.
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Clean and tokenise a labelled corpus.
    Prep {
        #[arg(long)]
        input: PathBuf,
    },
    /// Train one network preset; writes a checkpoint and its manifest.
    Train {
        /// sentiment, emotion, baseline or personality:<trait>
        #[arg(long)]
        model: String,
        #[arg(long)]
        data: PathBuf,
    },
    /// Export fully-connected activations of a corpus.
    Extract {
        /// One checkpoint, or the five personality checkpoints in O, C, E, A, N order.
        #[arg(long = "checkpoint", required = true)]
        checkpoints: Vec<PathBuf>,
        #[arg(long)]
        data: PathBuf,
    },
    /// Concatenate feature files in B, S, E, P order.
    Fuse {
        #[arg(long = "features", required = true)]
        features: Vec<PathBuf>,
    },
    /// Train the SVM on a feature file.
    SvmTrain {
        #[arg(long)]
        features: PathBuf,
        /// linear, rbf or rbf:<gamma>
        #[arg(long)]
        kernel: Option<String>,
        #[arg(long)]
        c: Option<f64>,
        #[arg(long)]
        no_standardize: bool,
        /// Held-out feature file to score.
        #[arg(long)]
        eval: Option<PathBuf>,
    },
    /// Cross-validated feature-combination grid, plus the optional cross-corpus row.
    Experiment {
        /// Re-run the experiment recorded in a manifest and compare results.
        #[arg(long)]
        from_manifest: Option<PathBuf>,
    },
    /// Train on one corpus, score another.
    CrossDataset {
        #[arg(long)]
        train: Option<PathBuf>,
        #[arg(long)]
        test: Option<PathBuf>,
        /// Comma-separated fusion specs.
        #[arg(long)]
        fusion: Option<String>,
        /// Directory of pre-trained checkpoints.
        #[arg(long)]
        models: Option<PathBuf>,
    },
    /// Spearman correlations between per-tweet model scores.
    Correlate {
        #[arg(long)]
        models: PathBuf,
        #[arg(long)]
        data: PathBuf,
        /// model:class pairs, e.g. emotion:joy; defaults to the five families of the reference table.
        #[arg(long = "score")]
        scores: Vec<String>,
    },
    /// Two-component PCA projection of a feature file.
    Pca {
        #[arg(long)]
        features: PathBuf,
        #[arg(long, default_value_t = 2)]
        dims: usize,
    },
    /// Generate a synthetic corpus.
    Synth {
        #[arg(long, default_value_t = 1000)]
        size: usize,
        /// sarcasm, sentiment, emotion or personality:<trait>
        #[arg(long, default_value = "sarcasm")]
        kind: String,
        /// sentiment-shift or lexical-marker
        #[arg(long, default_value = "sentiment-shift")]
        mechanism: String,
        #[arg(long, default_value_t = 0.5)]
        balance: f64,
        /// Comma-separated topic names.
        #[arg(long)]
        topics: Option<String>,
        #[arg(long)]
        lexicon_share: Option<f64>,
        #[arg(long)]
        negation_share: Option<f64>,
        #[arg(long)]
        skew: Option<f64>,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match commands::dispatch(&cli) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {f}");
            f.code
        }
    }
}
