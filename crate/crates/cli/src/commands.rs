use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sarcnn::experiments::{
    class_scores, cross_dataset_eval, format_grid_table, macro_f1, pca_project, results_tsv,
    run_cv_grid, spearman, CrossResult, ExperimentHyper, FusionSpec, PretrainedModels,
};
use sarcnn::manifest::Manifest;
use sarcnn::model_zoo::config::SARCASM_CLASSES;
use sarcnn::model_zoo::registry::{checkpoint_path, write_atomic};
use sarcnn::model_zoo::{
    load_model, load_named, save_model, train_model, Example, FeatureSource, LabeledDataset,
    ModelName, PersonalityModels, TrainedModel, OCEAN,
};
use sarcnn::neural::Container;
use sarcnn::svm::{svm_predict, svm_train, Kernel, Standardizer};
use sarcnn::synth::{generate, CorpusKind, SynthSpec};
use sarcnn::text::corpus::format_corpus;
use sarcnn::text::{clean_tweet, read_corpus, tokenize, Record, TokenizedTweet};
use sarcnn::Error;
use sha2::{Digest, Sha256};

use crate::config::{Config, CrossPlan, ExperimentPlan};
use crate::features::{fuse, FeatureTable};
use crate::{Cli, Command, Failure, Global, VERSION};

type Outcome = Result<(), Failure>;

pub fn dispatch(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Prep { input } => prep(g, input),
        Command::Train { model, data } => train(g, model, data),
        Command::Extract { checkpoints, data } => extract(g, checkpoints, data),
        Command::Fuse { features } => fuse_files(g, features),
        Command::SvmTrain {
            features,
            kernel,
            c,
            no_standardize,
            eval,
        } => svm_command(
            g,
            features,
            kernel.as_deref(),
            *c,
            *no_standardize,
            eval.as_deref(),
        ),
        Command::Experiment { from_manifest } => match from_manifest {
            Some(m) => rerun_experiment(g, m),
            None => experiment(g),
        },
        Command::CrossDataset {
            train,
            test,
            fusion,
            models,
        } => cross_dataset(
            g,
            train.as_deref(),
            test.as_deref(),
            fusion.as_deref(),
            models.as_deref(),
        ),
        Command::Correlate {
            models,
            data,
            scores,
        } => correlate(g, models, data, scores),
        Command::Pca { features, dims } => pca(g, features, *dims),
        Command::Synth {
            size,
            kind,
            mechanism,
            balance,
            topics,
            lexicon_share,
            negation_share,
            skew,
        } => {
            let kind = match kind.as_str() {
                "sarcasm" => CorpusKind::Sarcasm(mechanism.parse()?),
                other => CorpusKind::Auxiliary(other.parse()?),
            };
            let mut spec = match kind {
                CorpusKind::Sarcasm(m) => SynthSpec::sarcasm(*size, m, g.seed.unwrap_or(1)),
                CorpusKind::Auxiliary(m) => SynthSpec::auxiliary(*size, m, g.seed.unwrap_or(1)),
            };
            spec.balance = *balance;
            if let Some(t) = topics {
                spec.topics = t
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
            }
            spec.lexicon_share = lexicon_share.unwrap_or(spec.lexicon_share);
            spec.negation_share = negation_share.unwrap_or(spec.negation_share);
            spec.skew = skew.unwrap_or(spec.skew);
            synth(g, &spec)
        }
    }
}

fn say(g: &Global, msg: impl AsRef<str>) {
    if !g.quiet {
        eprintln!("{}", msg.as_ref());
    }
}

fn show(g: &Global, text: &str) {
    if !g.quiet {
        print!("{text}");
    }
}

fn required_out(g: &Global) -> Result<&Path, Failure> {
    g.out
        .as_deref()
        .ok_or_else(|| Failure::usage("this command needs --out"))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            write!(s, "{b:02x}").unwrap();
            s
        })
}

fn fingerprint(path: &Path) -> Result<String, Failure> {
    let bytes = fs::read(path)
        .map_err(|e| Failure::data(format!("cannot read {}: {e}", path.display())))?;
    Ok(sha256_hex(&bytes))
}

fn manifest_path_for(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".manifest");
    PathBuf::from(s)
}

fn absolute(p: &Path) -> PathBuf {
    fs::canonicalize(p).unwrap_or_else(|_| p.to_path_buf())
}

fn base_manifest(command: &str, cfg: &Config) -> Manifest {
    let mut m = Manifest::new();
    m.set("command", command).set("toolkit_version", VERSION);
    match &cfg.path {
        Some(p) => m
            .set("config", absolute(p).display())
            .set("config_sha256", sha256_hex(cfg.text.as_bytes())),
        None => m.set("config", "none"),
    };
    m
}

/// Writes `bytes` and `<path>.manifest`, both atomically.
fn write_artifact(path: &Path, bytes: &[u8], mut manifest: Manifest) -> Outcome {
    write_atomic(path, bytes)?;
    manifest.set("output_sha256", sha256_hex(bytes));
    write_atomic(&manifest_path_for(path), manifest.to_string().as_bytes())?;
    Ok(())
}

fn load_dataset(path: &Path, alphabet: &[&str]) -> Result<LabeledDataset, Failure> {
    let records = read_corpus(path).map_err(|e| match e {
        Error::Io(io) => Failure::data(format!("cannot read {}: {io}", path.display())),
        other => Failure::from(other),
    })?;
    Ok(LabeledDataset::from_records(&records, alphabet)?)
}

fn read_records(path: &Path) -> Result<Vec<Record>, Failure> {
    read_corpus(path).map_err(|e| match e {
        Error::Io(io) => Failure::data(format!("cannot read {}: {io}", path.display())),
        other => Failure::from(other),
    })
}

fn prep(g: &Global, input: &Path) -> Outcome {
    let out = required_out(g)?;
    let records = read_records(input)?;
    let mut empty = 0;
    let cleaned: Vec<Record> = records
        .iter()
        .map(|r| {
            let text = tokenize(&clean_tweet(&r.text)).join(" ");
            if text.is_empty() {
                empty += 1;
            }
            Record { text, ..r.clone() }
        })
        .collect();
    let mut m = base_manifest("prep", &Config::default());
    m.set("input", absolute(input).display())
        .set("input_sha256", fingerprint(input)?);
    write_artifact(out, format_corpus(&cleaned).as_bytes(), m)?;
    say(
        g,
        format!(
            "prep: {} records, {empty} empty after cleaning",
            cleaned.len()
        ),
    );
    Ok(())
}

fn train(g: &Global, model: &str, data: &Path) -> Outcome {
    let name: ModelName = model.parse()?;
    let cfg = Config::optional(g.config.as_deref())?;
    let preset = cfg.preset(name)?;
    let mut options = cfg.training()?;
    if let Some(s) = g.seed {
        options.sgd.seed = s;
    }
    let dataset = load_dataset(data, name.classes())?;
    let trained = train_model(&preset, &dataset, &options)?;
    let dir = g.out.clone().unwrap_or_else(|| PathBuf::from("models"));
    let mut extra = base_manifest("train", &cfg);
    extra
        .set("data", absolute(data).display())
        .set("data_sha256", fingerprint(data)?);
    let path = save_model(&dir, &trained, &extra)?;
    say(
        g,
        format!(
            "{name}: {} epochs, final loss {:.6}, {} parameters -> {}",
            trained.report.epochs_run,
            trained.report.final_loss,
            trained.network.param_count(),
            path.display()
        ),
    );
    Ok(())
}

enum Extractor {
    Single(TrainedModel),
    Personality(PersonalityModels),
}

impl Extractor {
    fn source(&self) -> FeatureSource {
        match self {
            Extractor::Single(m) => FeatureSource::of_model(m.name()),
            Extractor::Personality(_) => FeatureSource::Personality,
        }
    }

    fn features(&self, tokens: &[String]) -> sarcnn::Result<Vec<f64>> {
        match self {
            Extractor::Single(m) => m.features(tokens),
            Extractor::Personality(p) => p.features(tokens),
        }
    }
}

fn extract(g: &Global, checkpoints: &[PathBuf], data: &Path) -> Outcome {
    let out = required_out(g)?;
    let models = checkpoints
        .iter()
        .map(|p| Ok(load_model(p)?))
        .collect::<Result<Vec<_>, Failure>>()?;
    let extractor = match models.len() {
        1 => {
            let m = models.into_iter().next().expect("one model");
            if matches!(m.name(), ModelName::Personality(_)) {
                return Err(Failure::usage(
                    "personality features need all five trait checkpoints",
                ));
            }
            Extractor::Single(m)
        }
        _ => Extractor::Personality(PersonalityModels::new(models)?),
    };
    let records = read_records(data)?;
    let mut table = FeatureTable {
        blocks: Vec::new(),
        labels: Vec::new(),
        rows: Vec::new(),
    };
    for r in &records {
        table.labels.push(r.label.clone());
        table
            .rows
            .push(extractor.features(&TokenizedTweet::new(&r.text).tokens)?);
    }
    let width = table
        .rows
        .first()
        .map_or(extractor.source().dim(), Vec::len);
    table.blocks.push((extractor.source(), width));
    let mut m = base_manifest("extract", &Config::default());
    m.set("data", absolute(data).display())
        .set("data_sha256", fingerprint(data)?);
    for (i, p) in checkpoints.iter().enumerate() {
        m.set(&format!("checkpoint.{i}"), absolute(p).display())
            .set(&format!("checkpoint.{i}.sha256"), fingerprint(p)?);
    }
    write_artifact(out, table.to_text().as_bytes(), m)?;
    say(
        g,
        format!(
            "extract: {} rows of {} features ({})",
            table.rows.len(),
            width,
            table.header()
        ),
    );
    Ok(())
}

fn read_features(path: &Path) -> Result<FeatureTable, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::data(format!("cannot read {}: {e}", path.display())))?;
    Ok(FeatureTable::parse(&text)?)
}

fn fuse_files(g: &Global, files: &[PathBuf]) -> Outcome {
    let out = required_out(g)?;
    let tables = files
        .iter()
        .map(|p| read_features(p))
        .collect::<Result<Vec<_>, _>>()?;
    let fused = fuse(&tables)?;
    let mut m = base_manifest("fuse", &Config::default());
    for (i, p) in files.iter().enumerate() {
        m.set(&format!("features.{i}"), absolute(p).display())
            .set(&format!("features.{i}.sha256"), fingerprint(p)?);
    }
    write_artifact(out, fused.to_text().as_bytes(), m)?;
    say(
        g,
        format!(
            "fuse: {} rows, blocks {} ({} features)",
            fused.rows.len(),
            fused.header(),
            fused.width()
        ),
    );
    Ok(())
}

fn sarcasm_labels(table: &FeatureTable) -> Result<Vec<usize>, Failure> {
    table
        .labels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            SARCASM_CLASSES
                .iter()
                .position(|c| c.eq_ignore_ascii_case(l))
                .or_else(|| l.parse::<usize>().ok().filter(|&x| x < 2))
                .ok_or_else(|| {
                    Failure::from(Error::DataLine {
                        line: i + 2,
                        message: format!("label {l:?} is not one of {SARCASM_CLASSES:?}"),
                    })
                })
        })
        .collect()
}

fn svm_command(
    g: &Global,
    features: &Path,
    kernel: Option<&str>,
    c: Option<f64>,
    no_standardize: bool,
    eval: Option<&Path>,
) -> Outcome {
    let out = required_out(g)?;
    let cfg = Config::optional(g.config.as_deref())?;
    let (mut params, mut standardize) = cfg.svm()?;
    if let Some(k) = kernel {
        params.kernel = k.parse::<Kernel>()?;
    }
    if let Some(c) = c {
        params.c = c;
    }
    standardize &= !no_standardize;
    let table = read_features(features)?;
    let labels = sarcasm_labels(&table)?;
    let scaler = standardize
        .then(|| Standardizer::fit(&table.rows))
        .transpose()?;
    let x = match &scaler {
        Some(s) => s.transform_all(&table.rows)?,
        None => table.rows.clone(),
    };
    let alphabet: Vec<String> = SARCASM_CLASSES.iter().map(|s| s.to_string()).collect();
    let model = svm_train(&x, &labels, &alphabet, &params)?;
    let preds = x
        .iter()
        .map(|r| svm_predict(&model, r))
        .collect::<sarcnn::Result<Vec<_>>>()?;
    let train_f1 = macro_f1(&preds, &labels, 2)?;

    let mut m = base_manifest("svm-train", &cfg);
    m.set("features", absolute(features).display())
        .set("features_sha256", fingerprint(features)?)
        .set("blocks", table.header())
        .set("kernel", params.kernel)
        .set("c", params.c)
        .set("standardize", standardize)
        .set("support_vectors", model.support_count())
        .set("converged", model.report.converged)
        .set("train_macro_f1", train_f1);
    let container = Container {
        config: m.to_string(),
        tensors: Vec::new(),
        sections: vec![model.to_section(scaler.as_ref())],
    };
    let mut report = format!(
        "svm-train: {} rows, {} support vectors, training macro-F1 {:.4}",
        x.len(),
        model.support_count(),
        train_f1
    );
    if let Some(path) = eval {
        let test = read_features(path)?;
        if test.width() != table.width() {
            return Err(Failure::data(format!(
                "evaluation features have {} columns, training features {}",
                test.width(),
                table.width()
            )));
        }
        let gold = sarcasm_labels(&test)?;
        let preds = test
            .rows
            .iter()
            .map(|r| {
                let r = match &scaler {
                    Some(s) => s.transform(r)?,
                    None => r.clone(),
                };
                svm_predict(&model, &r)
            })
            .collect::<sarcnn::Result<Vec<_>>>()?;
        let f1 = macro_f1(&preds, &gold, 2)?;
        m.set("eval", absolute(path).display())
            .set("eval_macro_f1", f1);
        write!(report, ", held-out macro-F1 {f1:.4}").unwrap();
    }
    write_artifact(out, &container.to_bytes(), m)?;
    say(g, report);
    Ok(())
}

fn load_pretrained(
    dir: Option<&Path>,
    specs: &[FusionSpec],
    m: &mut Manifest,
) -> Result<PretrainedModels, Failure> {
    let mut sources: Vec<FeatureSource> = specs.iter().flat_map(|s| s.pretrained()).collect();
    sources.sort();
    sources.dedup();
    let mut pre = PretrainedModels::default();
    if sources.is_empty() {
        return Ok(pre);
    }
    let dir = dir.ok_or_else(|| {
        Failure::usage("fusion uses pre-trained blocks; set experiment.models or --models")
    })?;
    let mut load = |name: ModelName| -> Result<TrainedModel, Failure> {
        let path = checkpoint_path(dir, name);
        m.set(
            &format!("model.{}.sha256", name.file_stem()),
            fingerprint(&path)?,
        );
        Ok(load_named(dir, name)?)
    };
    for s in sources {
        match s {
            FeatureSource::Sentiment => pre.sentiment = Some(load(ModelName::Sentiment)?),
            FeatureSource::Emotion => pre.emotion = Some(load(ModelName::Emotion)?),
            FeatureSource::Personality => {
                let models = OCEAN
                    .iter()
                    .map(|&t| load(ModelName::Personality(t)))
                    .collect::<Result<Vec<_>, _>>()?;
                pre.personality = Some(PersonalityModels::new(models)?);
            }
            FeatureSource::Baseline => {}
        }
    }
    Ok(pre)
}

fn cross_tsv(rows: &[(String, CrossResult)]) -> String {
    let mut out = String::new();
    for (label, c) in rows {
        let s = c.confusion.macro_scores();
        writeln!(
            out,
            "{}\t{label}\t{}\t{}\t{}",
            c.fusion, c.macro_f1, s.precision, s.recall
        )
        .unwrap();
    }
    out
}

fn run_cross(
    plan: &CrossPlan,
    pretrained: &PretrainedModels,
    hyper: &ExperimentHyper,
    m: &mut Manifest,
) -> Result<Vec<(String, CrossResult)>, Failure> {
    let train = load_dataset(&plan.train, &SARCASM_CLASSES)?;
    let test = load_dataset(&plan.test, &SARCASM_CLASSES)?;
    m.set("cross.train", absolute(&plan.train).display())
        .set("cross.train_sha256", fingerprint(&plan.train)?)
        .set("cross.test", absolute(&plan.test).display())
        .set("cross.test_sha256", fingerprint(&plan.test)?)
        .set("cross.label", &plan.label);
    plan.fusion
        .iter()
        .map(|f| {
            Ok((
                plan.label.clone(),
                cross_dataset_eval(&train, &test, f, pretrained, hyper)?,
            ))
        })
        .collect()
}

struct Seeds {
    folds: u64,
    baseline: u64,
}

/// Runs the grid and returns the manifest, the results file and the table.
fn run_experiment(
    cfg: &Config,
    plan: &ExperimentPlan,
    seeds: &Seeds,
) -> Result<(Manifest, String, String), Failure> {
    let mut hyper = cfg.hyper()?;
    hyper.baseline.sgd.seed = seeds.baseline;
    let mut m = base_manifest("experiment", cfg);
    m.set("dataset", absolute(&plan.dataset).display())
        .set("dataset_sha256", fingerprint(&plan.dataset)?)
        .set("dataset_name", &plan.name)
        .set(
            "fusion",
            plan.fusion
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(","),
        )
        .set("k", plan.k)
        .set("seed.folds", seeds.folds)
        .set("seed.baseline", seeds.baseline);
    let mut all_specs = plan.fusion.clone();
    if let Some(c) = &plan.cross {
        all_specs.extend(c.fusion.iter().cloned());
    }
    let pretrained = load_pretrained(plan.models.as_deref(), &all_specs, &mut m)?;
    let dataset = load_dataset(&plan.dataset, &SARCASM_CLASSES)?;
    let results = run_cv_grid(
        &dataset,
        &plan.fusion,
        &pretrained,
        &hyper,
        plan.k,
        seeds.folds,
    )?;
    let cross = match &plan.cross {
        Some(c) => run_cross(c, &pretrained, &hyper, &mut m)?,
        None => Vec::new(),
    };
    m.extend(&hyper.to_manifest());
    let tsv = results_tsv(&results) + &cross_tsv(&cross);
    let table = format_grid_table(&plan.name, &results, &cross);
    m.set("results_sha256", sha256_hex(tsv.as_bytes()));
    Ok((m, tsv, table))
}

fn write_experiment(g: &Global, dir: &Path, m: &Manifest, tsv: &str, table: &str) -> Outcome {
    write_atomic(&dir.join("results.tsv"), tsv.as_bytes())?;
    write_atomic(&dir.join("grid.txt"), table.as_bytes())?;
    write_atomic(&dir.join("experiment.manifest"), m.to_string().as_bytes())?;
    show(g, table);
    say(g, format!("experiment: results in {}", dir.display()));
    Ok(())
}

fn experiment(g: &Global) -> Outcome {
    let path = g
        .config
        .as_deref()
        .ok_or_else(|| Failure::usage("experiment needs --config or --from-manifest"))?;
    let cfg = Config::load(path)?;
    let plan = cfg.experiment()?;
    let training = cfg.training()?;
    let seeds = Seeds {
        folds: g.seed.unwrap_or(plan.seed),
        baseline: g.seed.unwrap_or(training.sgd.seed),
    };
    let (m, tsv, table) = run_experiment(&cfg, &plan, &seeds)?;
    let dir = g.out.clone().unwrap_or_else(|| PathBuf::from("results"));
    write_experiment(g, &dir, &m, &tsv, &table)
}

fn rerun_experiment(g: &Global, manifest_path: &Path) -> Outcome {
    let text = fs::read_to_string(manifest_path)
        .map_err(|e| Failure::data(format!("cannot read {}: {e}", manifest_path.display())))?;
    let recorded = Manifest::parse(&text)?;
    if recorded.get("command") != Some("experiment") {
        return Err(Failure::data(format!(
            "{} is not an experiment manifest",
            manifest_path.display()
        )));
    }
    let cfg = Config::load(Path::new(recorded.require("config")?))?;
    if Some(sha256_hex(cfg.text.as_bytes()).as_str()) != recorded.get("config_sha256") {
        return Err(Failure::data(
            "the configuration file changed since the manifest was written",
        ));
    }
    let plan = cfg.experiment()?;
    let seeds = Seeds {
        folds: recorded.parse_value("seed.folds")?,
        baseline: recorded.parse_value("seed.baseline")?,
    };
    for (key, value) in recorded.entries() {
        let Some(file_key) = key
            .strip_suffix("_sha256")
            .filter(|k| *k == "dataset" || k.starts_with("cross."))
        else {
            continue;
        };
        let path = recorded.require(file_key)?;
        if fingerprint(Path::new(path))? != *value {
            return Err(Failure::data(format!(
                "{path} changed since the manifest was written"
            )));
        }
    }
    let (m, tsv, table) = run_experiment(&cfg, &plan, &seeds)?;
    for (key, value) in recorded
        .entries()
        .iter()
        .filter(|(k, _)| k.starts_with("model."))
    {
        if m.get(key) != Some(value.as_str()) {
            return Err(Failure::data(format!(
                "checkpoint fingerprint {key} differs from the manifest"
            )));
        }
    }
    let dir = g.out.clone().unwrap_or_else(|| {
        manifest_path
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_default()
    });
    write_experiment(g, &dir, &m, &tsv, &table)?;
    let want = recorded.require("results_sha256")?;
    if m.get("results_sha256") != Some(want) {
        return Err(Failure::data(format!(
            "re-run results differ from the manifest (sha256 {} vs {want})",
            m.get("results_sha256").unwrap_or_default()
        )));
    }
    say(g, format!("experiment: reproduced results {want}"));
    Ok(())
}

fn cross_dataset(
    g: &Global,
    train: Option<&Path>,
    test: Option<&Path>,
    fusion: Option<&str>,
    models: Option<&Path>,
) -> Outcome {
    let cfg = Config::optional(g.config.as_deref())?;
    let mut hyper = cfg.hyper()?;
    if let Some(s) = g.seed {
        hyper.baseline.sgd.seed = s;
    }
    let from_cfg = if cfg.table.contains_key("experiment") {
        let p = cfg.experiment()?;
        Some((p.cross, p.models))
    } else {
        None
    };
    let (cfg_cross, cfg_models) = from_cfg.unwrap_or((None, None));
    let plan = match (train, test) {
        (Some(tr), Some(te)) => {
            let fusion = match fusion {
                Some(f) => f
                    .split(',')
                    .map(|s| Ok(FusionSpec::parse(s.trim())?))
                    .collect::<Result<Vec<_>, Failure>>()?,
                None => cfg_cross.as_ref().map_or_else(
                    || vec![FusionSpec::parse("B").expect("valid")],
                    |c| c.fusion.clone(),
                ),
            };
            let stem = |p: &Path| {
                p.file_stem()
                    .map_or_else(String::new, |s| s.to_string_lossy().into_owned())
            };
            CrossPlan {
                train: tr.to_path_buf(),
                test: te.to_path_buf(),
                label: format!("{}\u{21d2}{}", stem(tr), stem(te)),
                fusion,
            }
        }
        (None, None) => cfg_cross.ok_or_else(|| {
            Failure::usage("give --train and --test, or a config with a [cross] section")
        })?,
        _ => return Err(Failure::usage("--train and --test go together")),
    };
    let mut m = base_manifest("cross-dataset", &cfg);
    m.set("seed.baseline", hyper.baseline.sgd.seed);
    let models = models.map(Path::to_path_buf).or(cfg_models);
    let pretrained = load_pretrained(models.as_deref(), &plan.fusion, &mut m)?;
    let rows = run_cross(&plan, &pretrained, &hyper, &mut m)?;
    m.extend(&hyper.to_manifest());
    let table = format_grid_table("macro-F1", &[], &rows);
    if let Some(out) = &g.out {
        write_artifact(out, cross_tsv(&rows).as_bytes(), m)?;
    }
    show(g, &table);
    Ok(())
}

/// Scores of the reference correlation table: sentiment, happiness, fear,
/// openness and conscientiousness.
const DEFAULT_SCORES: [&str; 5] = [
    "sentiment:positive",
    "emotion:joy",
    "emotion:fear",
    "personality:openness:present",
    "personality:conscientiousness:present",
];

fn parse_score(s: &str) -> Result<(ModelName, usize), Failure> {
    let (model, class) = s
        .rsplit_once(':')
        .ok_or_else(|| Failure::usage(format!("score {s:?} must look like model:class")))?;
    let name: ModelName = model.parse()?;
    let idx = name
        .classes()
        .iter()
        .position(|c| c.eq_ignore_ascii_case(class))
        .ok_or_else(|| {
            Failure::usage(format!(
                "{name} has no class {class:?}; classes are {:?}",
                name.classes()
            ))
        })?;
    Ok((name, idx))
}

fn correlate(g: &Global, models: &Path, data: &Path, scores: &[String]) -> Outcome {
    let names: Vec<String> = if scores.is_empty() {
        DEFAULT_SCORES.iter().map(|s| s.to_string()).collect()
    } else {
        scores.to_vec()
    };
    if names.len() < 2 {
        return Err(Failure::usage("correlation needs at least two scores"));
    }
    let parsed = names
        .iter()
        .map(|s| parse_score(s))
        .collect::<Result<Vec<_>, _>>()?;
    let records = read_records(data)?;
    let examples: Vec<Example> = records
        .iter()
        .map(|r| Example {
            label: 0,
            tokens: TokenizedTweet::new(&r.text).tokens,
            line: r.line,
        })
        .collect();
    let mut m = base_manifest("correlate", &Config::default());
    m.set("data", absolute(data).display())
        .set("data_sha256", fingerprint(data)?);
    let mut loaded: BTreeMap<String, TrainedModel> = BTreeMap::new();
    let mut columns = Vec::new();
    for &(name, class) in &parsed {
        let key = name.file_stem();
        if !loaded.contains_key(&key) {
            m.set(
                &format!("model.{key}.sha256"),
                fingerprint(&checkpoint_path(models, name))?,
            );
            loaded.insert(key.clone(), load_named(models, name)?);
        }
        columns.push(class_scores(&loaded[&key], class, &examples)?);
    }
    let mut out = String::from("score");
    for n in &names {
        write!(out, "\t{n}").unwrap();
    }
    out.push('\n');
    for (i, a) in columns.iter().enumerate() {
        out.push_str(&names[i]);
        for b in &columns {
            let cell = match spearman(a, b) {
                Ok(r) => format!("{:.4}{}", r.rho, if r.significant { "*" } else { "" }),
                Err(Error::Degenerate(_)) => "NA".to_string(),
                Err(e) => return Err(e.into()),
            };
            write!(out, "\t{cell}").unwrap();
        }
        out.push('\n');
    }
    if let Some(path) = &g.out {
        write_artifact(path, out.as_bytes(), m)?;
    }
    show(g, &out);
    Ok(())
}

fn pca(g: &Global, features: &Path, dims: usize) -> Outcome {
    if !(1..=2).contains(&dims) {
        return Err(Failure::usage(format!(
            "PCA export writes one or two components, not {dims}"
        )));
    }
    let out = required_out(g)?;
    let table = read_features(features)?;
    let p = pca_project(&table.rows, dims)?;
    let ids: Vec<String> = (1..=table.rows.len()).map(|i| i.to_string()).collect();
    let text = sarcnn::experiments::pca_tsv(&ids, &p.coordinates, &table.labels);
    let mut m = base_manifest("pca", &Config::default());
    m.set("features", absolute(features).display())
        .set("features_sha256", fingerprint(features)?)
        .set("dims", dims)
        .set("explained_variance_ratio", p.explained_ratio());
    write_artifact(out, text.as_bytes(), m)?;
    say(
        g,
        format!(
            "pca: {} points, {:.2}% of variance in {dims} component(s)",
            ids.len(),
            100.0 * p.explained_ratio()
        ),
    );
    Ok(())
}

fn synth(g: &Global, spec: &SynthSpec) -> Outcome {
    let out = required_out(g)?;
    let records = generate(spec)?;
    let kind = match spec.kind {
        CorpusKind::Sarcasm(mech) => format!("sarcasm/{mech}"),
        CorpusKind::Auxiliary(name) => name.to_string(),
    };
    let mut m = base_manifest("synth", &Config::default());
    m.set("kind", &kind)
        .set("size", spec.size)
        .set("seed", spec.topic_seed)
        .set("balance", spec.balance)
        .set(
            "topics",
            if spec.topics.is_empty() {
                "all".to_string()
            } else {
                spec.topics.join(",")
            },
        )
        .set("lexicon_share", spec.lexicon_share)
        .set("negation_share", spec.negation_share)
        .set("skew", spec.skew);
    write_artifact(out, format_corpus(&records).as_bytes(), m)?;
    let positive = records.iter().filter(|r| r.label == "sarcastic").count();
    let summary = if matches!(spec.kind, CorpusKind::Sarcasm(_)) {
        format!(
            "synth: {} tweets ({kind}), {positive} sarcastic",
            records.len()
        )
    } else {
        format!("synth: {} tweets ({kind})", records.len())
    };
    say(g, summary);
    Ok(())
}
