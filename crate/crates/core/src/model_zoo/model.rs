use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::config::{ModelConfig, ModelName, Trait, OCEAN};
use super::dataset::LabeledDataset;
use crate::error::{Error, Result};
use crate::manifest::Manifest;
use crate::neural::{Network, Sgd, SgdConfig, Tensor, Trace};
use crate::text::{
    build_vocab, encode, load_pretrained_embeddings, window_size, EmbeddingMatrix, TokenizedTweet,
    Vocabulary, PAD,
};

/// Everything besides the architecture that determines a training run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainOptions {
    pub sgd: SgdConfig,
    pub embedding_dim: usize,
    pub min_count: usize,
    /// Fixed sentence window; derived from the corpus when `None`.
    pub window: Option<usize>,
    /// Binary vector file used to initialise covered tokens.
    pub pretrained: Option<PathBuf>,
    /// Non-static (trainable) embedding channel.
    pub trainable_embeddings: bool,
    pub oov_seed: u64,
}

impl Default for TrainOptions {
    fn default() -> Self {
        Self {
            sgd: SgdConfig::default(),
            embedding_dim: crate::text::embeddings::DEFAULT_DIM,
            min_count: 1,
            window: None,
            pretrained: None,
            trainable_embeddings: true,
            oov_seed: 0x5eed,
        }
    }
}

/// Record of how a model was trained.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingReport {
    pub epochs_run: usize,
    pub final_loss: f64,
    pub loss_history: Vec<f64>,
    pub train_examples: usize,
}

/// A frozen network together with the vocabulary and embeddings it reads.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub config: ModelConfig,
    pub network: Network,
    pub vocab: Vocabulary,
    pub embeddings: EmbeddingMatrix,
    pub options: TrainOptions,
    pub report: TrainingReport,
}

/// Activations of a model's fully-connected layer, after its ReLU.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub source: FeatureSource,
}

/// Feature block families, listed in fusion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FeatureSource {
    Baseline,
    Sentiment,
    Emotion,
    Personality,
}

impl FeatureSource {
    pub const ALL: [FeatureSource; 4] = [
        FeatureSource::Baseline,
        FeatureSource::Sentiment,
        FeatureSource::Emotion,
        FeatureSource::Personality,
    ];

    /// Contracted feature width of each block.
    pub fn dim(self) -> usize {
        match self {
            FeatureSource::Baseline | FeatureSource::Sentiment => 100,
            FeatureSource::Emotion => 150,
            FeatureSource::Personality => 750,
        }
    }

    pub fn letter(self) -> char {
        match self {
            FeatureSource::Baseline => 'B',
            FeatureSource::Sentiment => 'S',
            FeatureSource::Emotion => 'E',
            FeatureSource::Personality => 'P',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|s| s.letter() == c.to_ascii_uppercase())
    }

    pub fn of_model(name: ModelName) -> Self {
        match name {
            ModelName::Baseline => FeatureSource::Baseline,
            ModelName::Sentiment => FeatureSource::Sentiment,
            ModelName::Emotion => FeatureSource::Emotion,
            ModelName::Personality(_) => FeatureSource::Personality,
        }
    }
}

/// Materialises the network of `config` for `window` positions of
/// `embedding_dim`-dimensional vectors, with `static_width` constant feature
/// slots before the softmax.
pub fn build_model(
    config: &ModelConfig,
    window: usize,
    embedding_dim: usize,
    static_width: usize,
    seed: u64,
) -> Result<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Network::new(
        &config.layer_specs(),
        window,
        embedding_dim,
        static_width,
        &mut rng,
    )
    .map_err(|e| {
        Error::config(format!(
            "{} preset does not fit a window of {window}: {e}",
            config.name
        ))
    })
}

/// Trains `config` on `dataset` with minibatch SGD.
pub fn train_model(
    config: &ModelConfig,
    dataset: &LabeledDataset,
    options: &TrainOptions,
) -> Result<TrainedModel> {
    train_model_with_statics(config, dataset, None, options)
}

/// As [`train_model`], with per-example constant features fed into the
/// softmax layer alongside the learned hidden features.
pub fn train_model_with_statics(
    config: &ModelConfig,
    dataset: &LabeledDataset,
    statics: Option<&[Vec<f64>]>,
    options: &TrainOptions,
) -> Result<TrainedModel> {
    options.sgd.validate()?;
    dataset.check_classes(config.softmax_classes)?;
    if dataset.is_empty() {
        return Err(Error::Data("cannot train on an empty dataset".into()));
    }
    let static_width = match statics {
        Some(s) => {
            if s.len() != dataset.len() {
                return Err(Error::shape(format!(
                    "{} static feature rows for {} examples",
                    s.len(),
                    dataset.len()
                )));
            }
            s.first().map_or(0, Vec::len)
        }
        None => 0,
    };

    let token_lists: Vec<&Vec<String>> = dataset.examples.iter().map(|e| &e.tokens).collect();
    let vocab = build_vocab(&token_lists, options.min_count)?;
    let window = match options.window {
        Some(w) => w,
        None => window_size(&token_lists).max(config.min_window()),
    };
    let mut network = build_model(
        config,
        window,
        options.embedding_dim,
        static_width,
        options.sgd.seed,
    )?;
    let mut embeddings = match &options.pretrained {
        Some(path) => {
            let (emb, _) = load_pretrained_embeddings(path, &vocab, options.oov_seed)?;
            if emb.dim() != options.embedding_dim {
                return Err(Error::config(format!(
                    "pretrained vectors have dimension {}, configuration asks for {}",
                    emb.dim(),
                    options.embedding_dim
                )));
            }
            emb
        }
        None => EmbeddingMatrix::random(&vocab, options.embedding_dim, options.oov_seed, true)?,
    };
    embeddings.trainable = options.trainable_embeddings;

    let encoded: Vec<Vec<usize>> = dataset
        .examples
        .iter()
        .map(|e| encode(&e.tokens, &vocab, window))
        .collect();
    let no_statics: Vec<f64> = Vec::new();

    let sgd = &options.sgd;
    let mut optimiser = Sgd::new(sgd.learning_rate, sgd.momentum)?;
    let mut order: Vec<usize> = (0..dataset.len()).collect();
    let mut shuffle_rng = ChaCha8Rng::seed_from_u64(sgd.seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut history = Vec::new();

    for _epoch in 0..sgd.max_epochs {
        order.shuffle(&mut shuffle_rng);
        let mut epoch_loss = 0.0;
        for batch in order.chunks(sgd.batch_size) {
            let mut sum: Option<Vec<Tensor>> = None;
            let mut emb_grad = embeddings
                .trainable
                .then(|| Tensor::zeros(embeddings.matrix.shape()));
            for &i in batch {
                let input = embeddings.lookup(&encoded[i]);
                let st = statics.map_or(&no_statics, |s| &s[i]);
                let trace = network.forward(&input, st)?;
                let grads = network.backward(&trace, dataset.examples[i].label)?;
                if !grads.loss.is_finite() {
                    return Err(Error::Numeric(format!(
                        "non-finite loss on example at line {}",
                        dataset.examples[i].line
                    )));
                }
                epoch_loss += grads.loss;
                match &mut sum {
                    None => sum = Some(grads.params),
                    Some(acc) => {
                        for (a, g) in acc.iter_mut().zip(&grads.params) {
                            a.axpy(1.0, g);
                        }
                    }
                }
                if let Some(eg) = &mut emb_grad {
                    for (pos, &token) in encoded[i].iter().enumerate() {
                        if token != PAD {
                            crate::neural::tensor::axpy(
                                1.0,
                                grads.input.row(pos),
                                eg.row_mut(token),
                            );
                        }
                    }
                }
            }
            let scale = 1.0 / batch.len() as f64;
            let mut grads = sum.expect("non-empty batch");
            grads
                .iter_mut()
                .for_each(|g| g.data_mut().iter_mut().for_each(|v| *v *= scale));
            let mut params = network.params_mut();
            if let Some(mut eg) = emb_grad {
                eg.data_mut().iter_mut().for_each(|v| *v *= scale);
                grads.push(eg);
                params.push(&mut embeddings.matrix);
            }
            optimiser.step(&mut params, &grads)?;
        }
        let mean = epoch_loss / dataset.len() as f64;
        if !mean.is_finite() {
            return Err(Error::Numeric("training loss diverged".into()));
        }
        history.push(mean);
        let e = history.len();
        if e > sgd.patience && history[e - 1 - sgd.patience] - mean < sgd.plateau_tolerance {
            break;
        }
    }
    debug_assert!(embeddings.matrix.row(PAD).iter().all(|&v| v == 0.0));

    Ok(TrainedModel {
        config: config.clone(),
        network,
        vocab,
        embeddings,
        options: options.clone(),
        report: TrainingReport {
            epochs_run: history.len(),
            final_loss: *history.last().expect("at least one epoch"),
            loss_history: history,
            train_examples: dataset.len(),
        },
    })
}

impl TrainedModel {
    pub fn name(&self) -> ModelName {
        self.config.name
    }

    pub fn window(&self) -> usize {
        self.network.input_width()
    }

    pub fn feature_dim(&self) -> usize {
        self.network.hidden_width()
    }

    pub fn forward_tokens(&self, tokens: &[String], statics: &[f64]) -> Result<Trace> {
        let idx = encode(tokens, &self.vocab, self.window());
        self.network.forward(&self.embeddings.lookup(&idx), statics)
    }

    /// Feature vector of a model trained without static slots.
    pub fn features(&self, tokens: &[String]) -> Result<Vec<f64>> {
        let zeros = vec![0.0; self.network.static_width()];
        Ok(self.forward_tokens(tokens, &zeros)?.hidden())
    }

    /// Class probabilities; ties in the argmax go to the lowest class index.
    pub fn predict(&self, tokens: &[String], statics: &[f64]) -> Result<(usize, Vec<f64>)> {
        let probs = self
            .forward_tokens(tokens, statics)?
            .probs()
            .data()
            .to_vec();
        Ok((argmax(&probs), probs))
    }

    pub fn manifest(&self) -> Manifest {
        let mut m = self.config.to_manifest();
        let o = &self.options;
        m.set("window", self.window())
            .set("embedding_dim", o.embedding_dim)
            .set("static_width", self.network.static_width())
            .set("trainable_embeddings", o.trainable_embeddings)
            .set("min_count", o.min_count)
            .set("oov_seed", o.oov_seed)
            .set(
                "pretrained",
                o.pretrained
                    .as_ref()
                    .map_or("none".to_string(), |p| p.display().to_string()),
            )
            .set("seed", o.sgd.seed)
            .set("learning_rate", o.sgd.learning_rate)
            .set("momentum", o.sgd.momentum)
            .set("batch_size", o.sgd.batch_size)
            .set("max_epochs", o.sgd.max_epochs)
            .set("plateau_tolerance", o.sgd.plateau_tolerance)
            .set("patience", o.sgd.patience)
            .set("epochs_run", self.report.epochs_run)
            .set("final_loss", self.report.final_loss)
            .set("train_examples", self.report.train_examples)
            .set("vocab_size", self.vocab.len())
            .set("param_count", self.network.param_count());
        m
    }
}

pub fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &v)| {
            if v > best.1 {
                (i, v)
            } else {
                best
            }
        })
        .0
}

/// Fully-connected activations of `model` for `tweet`.
pub fn extract_features(model: &TrainedModel, tweet: &TokenizedTweet) -> Result<FeatureVector> {
    Ok(FeatureVector {
        values: model.features(&tweet.tokens)?,
        source: FeatureSource::of_model(model.name()),
    })
}

/// Predicted class index and probability vector.
pub fn classify(model: &TrainedModel, tweet: &TokenizedTweet) -> Result<(usize, Vec<f64>)> {
    model.predict(&tweet.tokens, &vec![0.0; model.network.static_width()])
}

/// The five trait networks, held in O, C, E, A, N order.
#[derive(Debug, Clone, PartialEq)]
pub struct PersonalityModels {
    models: Vec<TrainedModel>,
}

impl PersonalityModels {
    pub fn new(models: Vec<TrainedModel>) -> Result<Self> {
        if models.len() != OCEAN.len() {
            return Err(Error::config(format!(
                "personality features need {} trait models, got {}",
                OCEAN.len(),
                models.len()
            )));
        }
        for (m, expected) in models.iter().zip(OCEAN) {
            if m.name() != ModelName::Personality(expected) {
                return Err(Error::config(format!(
                    "expected the {} model at this position, found {}",
                    ModelName::Personality(expected),
                    m.name()
                )));
            }
        }
        Ok(Self { models })
    }

    pub fn get(&self, t: Trait) -> &TrainedModel {
        &self.models[OCEAN
            .iter()
            .position(|&x| x == t)
            .expect("all traits present")]
    }

    pub fn models(&self) -> &[TrainedModel] {
        &self.models
    }

    pub fn features(&self, tokens: &[String]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(FeatureSource::Personality.dim());
        for m in &self.models {
            out.extend(m.features(tokens)?);
        }
        Ok(out)
    }
}

/// Concatenated trait features in O, C, E, A, N order.
pub fn extract_personality_features(
    models: &PersonalityModels,
    tweet: &TokenizedTweet,
) -> Result<FeatureVector> {
    Ok(FeatureVector {
        values: models.features(&tweet.tokens)?,
        source: FeatureSource::Personality,
    })
}
