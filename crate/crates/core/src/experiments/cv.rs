use std::collections::BTreeMap;

use super::folds::{kfold_split, FoldPlan};
use super::fusion::{concat_features, FusionMode, FusionSpec};
use super::metrics::{ClassScores, ConfusionMatrix};
use crate::error::{Error, Result};
use crate::manifest::Manifest;
use crate::model_zoo::{
    train_model, train_model_with_statics, Example, FeatureSource, FeatureVector, LabeledDataset,
    ModelConfig, ModelName, PersonalityModels, TrainOptions, TrainedModel,
};
use crate::svm::{svm_predict, svm_train, Standardizer, SvmParams};

/// Frozen auxiliary models whose features can be fused.
#[derive(Debug, Clone, Default)]
pub struct PretrainedModels {
    pub sentiment: Option<TrainedModel>,
    pub emotion: Option<TrainedModel>,
    pub personality: Option<PersonalityModels>,
}

impl PretrainedModels {
    pub fn block(&self, source: FeatureSource, tokens: &[String]) -> Result<FeatureVector> {
        let missing = |what: &str| {
            Error::config(format!(
                "fusion uses {what} features but no {what} model was given"
            ))
        };
        let values = match source {
            FeatureSource::Sentiment => self
                .sentiment
                .as_ref()
                .ok_or_else(|| missing("sentiment"))?
                .features(tokens)?,
            FeatureSource::Emotion => self
                .emotion
                .as_ref()
                .ok_or_else(|| missing("emotion"))?
                .features(tokens)?,
            FeatureSource::Personality => self
                .personality
                .as_ref()
                .ok_or_else(|| missing("personality"))?
                .features(tokens)?,
            FeatureSource::Baseline => {
                return Err(Error::config(
                    "the baseline is trained per split, not pre-trained",
                ));
            }
        };
        Ok(FeatureVector { values, source })
    }
}

/// Hyper-parameters shared by every fold.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentHyper {
    /// Architecture of the per-fold baseline network.
    pub baseline_config: ModelConfig,
    pub baseline: TrainOptions,
    pub svm: SvmParams,
    /// Z-score SVM inputs with training-split statistics.
    pub standardize: bool,
}

impl Default for ExperimentHyper {
    fn default() -> Self {
        Self {
            baseline_config: ModelConfig::preset(ModelName::Baseline),
            baseline: TrainOptions::default(),
            svm: SvmParams::default(),
            standardize: true,
        }
    }
}

impl ExperimentHyper {
    pub fn to_manifest(&self) -> Manifest {
        let mut m = Manifest::new();
        for (k, v) in self.baseline_config.to_manifest().entries() {
            m.set(&format!("baseline.{k}"), v);
        }
        let o = &self.baseline;
        m.set("baseline.embedding_dim", o.embedding_dim)
            .set("baseline.min_count", o.min_count)
            .set(
                "baseline.window",
                o.window.map_or("auto".to_string(), |w| w.to_string()),
            )
            .set("baseline.trainable_embeddings", o.trainable_embeddings)
            .set("baseline.oov_seed", o.oov_seed)
            .set(
                "baseline.pretrained",
                o.pretrained
                    .as_ref()
                    .map_or("none".to_string(), |p| p.display().to_string()),
            )
            .set("baseline.seed", o.sgd.seed)
            .set("baseline.learning_rate", o.sgd.learning_rate)
            .set("baseline.momentum", o.sgd.momentum)
            .set("baseline.batch_size", o.sgd.batch_size)
            .set("baseline.max_epochs", o.sgd.max_epochs)
            .set("baseline.plateau_tolerance", o.sgd.plateau_tolerance)
            .set("baseline.patience", o.sgd.patience)
            .set("svm.kernel", self.svm.kernel)
            .set("svm.c", self.svm.c)
            .set("svm.tolerance", self.svm.tolerance)
            .set("svm.standardize", self.standardize);
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldScore {
    pub fold: usize,
    pub macro_f1: f64,
    pub precision: f64,
    pub recall: f64,
}

/// Dataset indices that touched each trainable stage of one fold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldAudit {
    pub fold: usize,
    pub test: Vec<usize>,
    /// Examples that contributed to a gradient step.
    pub gradient: Vec<usize>,
    /// Examples that contributed to standardisation statistics.
    pub scaler: Vec<usize>,
    /// Examples the SVM was fitted on.
    pub svm: Vec<usize>,
}

impl FoldAudit {
    /// True when no test example fed any training stage.
    pub fn is_clean(&self) -> bool {
        let test: std::collections::HashSet<usize> = self.test.iter().copied().collect();
        self.gradient
            .iter()
            .chain(&self.scaler)
            .chain(&self.svm)
            .all(|i| !test.contains(i))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub fusion: FusionSpec,
    pub folds: Vec<FoldScore>,
    pub mean_macro_f1: f64,
    /// Summed over folds.
    pub confusion: ConfusionMatrix,
    pub per_class: Vec<ClassScores>,
    pub audits: Vec<FoldAudit>,
    pub manifest: Manifest,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossResult {
    pub fusion: FusionSpec,
    pub macro_f1: f64,
    pub confusion: ConfusionMatrix,
}

type BlockCache = BTreeMap<FeatureSource, Vec<FeatureVector>>;

fn pretrained_cache(
    specs: &[FusionSpec],
    examples: &[Example],
    pretrained: &PretrainedModels,
) -> Result<BlockCache> {
    let mut cache = BlockCache::new();
    for spec in specs {
        for source in spec.pretrained() {
            if !cache.contains_key(&source) {
                let rows = examples
                    .iter()
                    .map(|e| pretrained.block(source, &e.tokens))
                    .collect::<Result<Vec<_>>>()?;
                cache.insert(source, rows);
            }
        }
    }
    Ok(cache)
}

fn select(cache: &BlockCache, idx: &[usize]) -> BlockCache {
    cache
        .iter()
        .map(|(&s, rows)| (s, idx.iter().map(|&i| rows[i].clone()).collect()))
        .collect()
}

/// Row positions of the training split that reached each stage.
#[derive(Debug, Default)]
struct Usage {
    gradient: Vec<usize>,
    scaler: Vec<usize>,
    svm: Vec<usize>,
}

fn fused_rows(cache: &BlockCache, n: usize, sources: &[FeatureSource]) -> Result<Vec<Vec<f64>>> {
    (0..n)
        .map(|i| {
            let blocks: Vec<FeatureVector> = sources.iter().map(|s| cache[s][i].clone()).collect();
            concat_features(&blocks)
        })
        .collect()
}

fn with_baseline(
    cache: &BlockCache,
    model: &TrainedModel,
    examples: &[Example],
) -> Result<BlockCache> {
    let mut out = cache.clone();
    let rows = examples
        .iter()
        .map(|e| {
            Ok(FeatureVector {
                values: model.features(&e.tokens)?,
                source: FeatureSource::Baseline,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    out.insert(FeatureSource::Baseline, rows);
    Ok(out)
}

/// Trains every spec on `train` and predicts `test`.
fn fit_predict(
    train: &LabeledDataset,
    train_cache: &BlockCache,
    test: &LabeledDataset,
    test_cache: &BlockCache,
    specs: &[FusionSpec],
    hyper: &ExperimentHyper,
    seed: u64,
) -> Result<Vec<(Vec<usize>, Usage)>> {
    let b_config = &hyper.baseline_config;
    let mut options = hyper.baseline.clone();
    options.sgd.seed = seed;
    let all: Vec<usize> = (0..train.len()).collect();

    let needs_plain = specs
        .iter()
        .any(|s| s.mode == FusionMode::ConcatThenSvm && s.includes(FeatureSource::Baseline));
    let (train_cache, test_cache) = if needs_plain {
        let plain = train_model(b_config, train, &options)?;
        (
            with_baseline(train_cache, &plain, &train.examples)?,
            with_baseline(test_cache, &plain, &test.examples)?,
        )
    } else {
        (train_cache.clone(), test_cache.clone())
    };

    let mut out = Vec::with_capacity(specs.len());
    for spec in specs {
        let mut usage = Usage::default();
        let predictions = match spec.mode {
            FusionMode::ConcatThenSvm => {
                if spec.includes(FeatureSource::Baseline) {
                    usage.gradient = all.clone();
                }
                let mut train_x = fused_rows(&train_cache, train.len(), &spec.include)?;
                let mut test_x = fused_rows(&test_cache, test.len(), &spec.include)?;
                if hyper.standardize {
                    let scaler = Standardizer::fit(&train_x)?;
                    usage.scaler = all.clone();
                    train_x = scaler.transform_all(&train_x)?;
                    test_x = scaler.transform_all(&test_x)?;
                }
                let model = svm_train(&train_x, &train.labels(), &train.alphabet, &hyper.svm)?;
                usage.svm = all.clone();
                test_x
                    .iter()
                    .map(|x| svm_predict(&model, x))
                    .collect::<Result<Vec<_>>>()?
            }
            FusionMode::StaticChannelIntoBaseline => {
                let sources: Vec<FeatureSource> = spec.pretrained().collect();
                let train_s = fused_rows(&train_cache, train.len(), &sources)?;
                let test_s = fused_rows(&test_cache, test.len(), &sources)?;
                let model = train_model_with_statics(b_config, train, Some(&train_s), &options)?;
                usage.gradient = all.clone();
                test.examples
                    .iter()
                    .zip(&test_s)
                    .map(|(e, s)| Ok(model.predict(&e.tokens, s)?.0))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        out.push((predictions, usage));
    }
    Ok(out)
}

fn fold_seed(seed: u64, fold: usize) -> u64 {
    seed ^ (fold as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Cross-validates several fusion specs on one fold plan. The plain
/// baseline of each fold is trained once and shared by the specs that
/// include it.
pub fn run_cv_grid(
    dataset: &LabeledDataset,
    specs: &[FusionSpec],
    pretrained: &PretrainedModels,
    hyper: &ExperimentHyper,
    k: usize,
    seed: u64,
) -> Result<Vec<ExperimentResult>> {
    if specs.is_empty() {
        return Err(Error::config("no fusion spec to evaluate"));
    }
    let plan: FoldPlan = kfold_split(&dataset.labels(), k, seed)?;
    let cache = pretrained_cache(specs, &dataset.examples, pretrained)?;
    let classes = dataset.alphabet.len();
    let mut per_spec: Vec<(Vec<FoldScore>, ConfusionMatrix, Vec<FoldAudit>)> = specs
        .iter()
        .map(|_| (Vec::new(), ConfusionMatrix::new(classes), Vec::new()))
        .collect();

    for fold in 0..k {
        let train_idx = plan.train(fold);
        let test_idx = plan.test(fold).to_vec();
        let train = dataset.subset(&train_idx);
        let test = dataset.subset(&test_idx);
        let outcomes = fit_predict(
            &train,
            &select(&cache, &train_idx),
            &test,
            &select(&cache, &test_idx),
            specs,
            hyper,
            fold_seed(hyper.baseline.sgd.seed, fold),
        )?;
        for ((preds, usage), (scores, confusion, audits)) in
            outcomes.into_iter().zip(per_spec.iter_mut())
        {
            let m = ConfusionMatrix::from_predictions(&preds, &test.labels(), classes)?;
            let s = m.macro_scores();
            scores.push(FoldScore {
                fold,
                macro_f1: s.f1,
                precision: s.precision,
                recall: s.recall,
            });
            confusion.add(&m);
            let to_dataset = |pos: &[usize]| pos.iter().map(|&p| train_idx[p]).collect();
            audits.push(FoldAudit {
                fold,
                test: test_idx.clone(),
                gradient: to_dataset(&usage.gradient),
                scaler: to_dataset(&usage.scaler),
                svm: to_dataset(&usage.svm),
            });
        }
    }

    Ok(specs
        .iter()
        .zip(per_spec)
        .map(|(spec, (folds, confusion, audits))| {
            let mean = folds.iter().map(|f| f.macro_f1).sum::<f64>() / folds.len() as f64;
            let mut manifest = hyper.to_manifest();
            manifest
                .set("fusion", spec)
                .set("k", k)
                .set("fold_seed", seed)
                .set("examples", dataset.len());
            ExperimentResult {
                fusion: spec.clone(),
                folds,
                mean_macro_f1: mean,
                per_class: confusion.per_class(),
                confusion,
                audits,
                manifest,
            }
        })
        .collect())
}

/// Stratified `k`-fold CV of one fusion spec.
pub fn run_cv_experiment(
    dataset: &LabeledDataset,
    fusion: &FusionSpec,
    pretrained: &PretrainedModels,
    hyper: &ExperimentHyper,
    k: usize,
    seed: u64,
) -> Result<ExperimentResult> {
    Ok(run_cv_grid(
        dataset,
        std::slice::from_ref(fusion),
        pretrained,
        hyper,
        k,
        seed,
    )?
    .remove(0))
}

/// Trains on all of `train` and scores all of `test`.
pub fn cross_dataset_eval(
    train: &LabeledDataset,
    test: &LabeledDataset,
    fusion: &FusionSpec,
    pretrained: &PretrainedModels,
    hyper: &ExperimentHyper,
) -> Result<CrossResult> {
    if train.alphabet != test.alphabet {
        return Err(Error::Data(format!(
            "label alphabets differ: {:?} vs {:?}",
            train.alphabet, test.alphabet
        )));
    }
    let specs = std::slice::from_ref(fusion);
    let train_cache = pretrained_cache(specs, &train.examples, pretrained)?;
    let test_cache = pretrained_cache(specs, &test.examples, pretrained)?;
    let (preds, _) = fit_predict(
        train,
        &train_cache,
        test,
        &test_cache,
        specs,
        hyper,
        hyper.baseline.sgd.seed,
    )?
    .remove(0);
    let confusion = ConfusionMatrix::from_predictions(&preds, &test.labels(), test.alphabet.len())?;
    Ok(CrossResult {
        fusion: fusion.clone(),
        macro_f1: confusion.macro_scores().f1,
        confusion,
    })
}

/// Probability `model` assigns to `class` for each example.
pub fn class_scores(model: &TrainedModel, class: usize, examples: &[Example]) -> Result<Vec<f64>> {
    let classes = model.network.classes();
    if class >= classes {
        return Err(Error::Label(format!(
            "class {class} outside the {classes}-way softmax of {}",
            model.name()
        )));
    }
    let zeros = vec![0.0; model.network.static_width()];
    examples
        .iter()
        .map(|e| Ok(model.predict(&e.tokens, &zeros)?.1[class]))
        .collect()
}
