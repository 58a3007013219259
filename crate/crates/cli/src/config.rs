//! Sectioned configuration files (TOML syntax).
//!
//! ```toml
//! [training]
//! embedding_dim = 300
//! max_epochs = 30
//!
//! [svm]
//! kernel = "rbf:0.01"
//! c = 8.0
//!
//! [experiment]
//! dataset = "d1.tsv"
//! fusion = ["B", "B+S", "B+S+E+P"]
//!
//! [cross]
//! train = "d3.tsv"
//! test = "d1.tsv"
//!
//! [model.sentiment]
//! fc_units = 100
//! ```
//!
//! Relative paths are resolved against the directory holding the file.

use std::path::{Path, PathBuf};

use sarcnn::experiments::{ExperimentHyper, FusionSpec};
use sarcnn::model_zoo::{ModelConfig, ModelName, TrainOptions};
use sarcnn::svm::SvmParams;
use sarcnn::Error;
use toml::{Table, Value};

use crate::Failure;

const SECTIONS: [&str; 5] = ["training", "svm", "experiment", "cross", "model"];
const FAMILIES: [&str; 4] = ["sentiment", "emotion", "personality", "baseline"];

#[derive(Debug, Clone, Default)]
pub struct Config {
    pub table: Table,
    /// Directory relative paths are resolved against.
    pub base: PathBuf,
    pub path: Option<PathBuf>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub dataset: PathBuf,
    pub name: String,
    pub fusion: Vec<FusionSpec>,
    pub k: usize,
    pub seed: u64,
    pub models: Option<PathBuf>,
    pub cross: Option<CrossPlan>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossPlan {
    pub train: PathBuf,
    pub test: PathBuf,
    pub label: String,
    pub fusion: Vec<FusionSpec>,
}

fn config_err(msg: impl Into<String>) -> Failure {
    Failure::from(Error::Config(msg.into()))
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_err(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = Self::parse(&text)?;
        cfg.base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        cfg.path = Some(path.to_path_buf());
        Ok(cfg)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let table: Table = text
            .parse()
            .map_err(|e: toml::de::Error| config_err(e.message().to_string()))?;
        for key in table.keys() {
            if !SECTIONS.contains(&key.as_str()) {
                return Err(config_err(format!("unknown config section [{key}]")));
            }
        }
        if let Some(models) = table.get("model").and_then(Value::as_table) {
            if let Some(k) = models.keys().find(|k| !FAMILIES.contains(&k.as_str())) {
                return Err(config_err(format!("unknown model family [model.{k}]")));
            }
        }
        Ok(Self {
            table,
            base: PathBuf::new(),
            path: None,
            text: text.to_string(),
        })
    }

    pub fn optional(path: Option<&Path>) -> Result<Self, Failure> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }

    fn section(&self, name: &str) -> Option<&Table> {
        self.table.get(name).and_then(Value::as_table)
    }

    pub fn resolve(&self, p: &str) -> PathBuf {
        let p = Path::new(p);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base.join(p)
        }
    }

    pub fn training(&self) -> Result<TrainOptions, Failure> {
        let mut o = TrainOptions::default();
        let Some(s) = self.section("training") else {
            return Ok(o);
        };
        let mut r = Reader::new("training", s);
        r.usize("embedding_dim", &mut o.embedding_dim)?;
        r.usize("min_count", &mut o.min_count)?;
        if let Some(w) = r.take("window") {
            o.window = match w {
                Value::String(s) if s == "auto" => None,
                Value::Integer(i) if *i > 0 => Some(*i as usize),
                other => {
                    return Err(config_err(format!(
                        "training.window must be a positive integer or \"auto\", got {other}"
                    )))
                }
            };
        }
        let mut vectors = String::new();
        r.string("pretrained_vectors", &mut vectors)?;
        if !vectors.is_empty() {
            o.pretrained = Some(self.resolve(&vectors));
        }
        r.bool("trainable_embeddings", &mut o.trainable_embeddings)?;
        r.u64("oov_seed", &mut o.oov_seed)?;
        r.f64("learning_rate", &mut o.sgd.learning_rate)?;
        r.f64("momentum", &mut o.sgd.momentum)?;
        r.usize("batch_size", &mut o.sgd.batch_size)?;
        r.usize("max_epochs", &mut o.sgd.max_epochs)?;
        r.usize("patience", &mut o.sgd.patience)?;
        r.f64("plateau_tolerance", &mut o.sgd.plateau_tolerance)?;
        r.u64("seed", &mut o.sgd.seed)?;
        r.finish()?;
        Ok(o)
    }

    pub fn svm(&self) -> Result<(SvmParams, bool), Failure> {
        let mut p = SvmParams::default();
        let mut standardize = true;
        let Some(s) = self.section("svm") else {
            return Ok((p, standardize));
        };
        let mut r = Reader::new("svm", s);
        let mut kernel = String::new();
        r.string("kernel", &mut kernel)?;
        if !kernel.is_empty() {
            p.kernel = kernel.parse()?;
        }
        r.f64("c", &mut p.c)?;
        r.f64("tolerance", &mut p.tolerance)?;
        r.u64("max_kernel_evals", &mut p.max_kernel_evals)?;
        r.bool("standardize", &mut standardize)?;
        r.finish()?;
        Ok((p, standardize))
    }

    pub fn hyper(&self) -> Result<ExperimentHyper, Failure> {
        let (svm, standardize) = self.svm()?;
        Ok(ExperimentHyper {
            baseline_config: self.preset(ModelName::Baseline)?,
            baseline: self.training()?,
            svm,
            standardize,
        })
    }

    /// Standard preset of `name` with any `[model.<family>]` overrides.
    pub fn preset(&self, name: ModelName) -> Result<ModelConfig, Failure> {
        let mut cfg = ModelConfig::preset(name);
        let family = match name {
            ModelName::Personality(_) => "personality".to_string(),
            other => other.to_string(),
        };
        let Some(s) = self
            .section("model")
            .and_then(|m| m.get(&family))
            .and_then(Value::as_table)
        else {
            return Ok(cfg);
        };
        let section = format!("model.{family}");
        let mut r = Reader::new(&section, s);
        if let Some(v) = r.take("conv1_widths") {
            cfg.conv1_widths = v
                .as_array()
                .and_then(|a| {
                    a.iter()
                        .map(|w| w.as_integer().filter(|&w| w > 0).map(|w| w as usize))
                        .collect()
                })
                .ok_or_else(|| {
                    config_err(format!(
                        "{section}.conv1_widths must be a list of positive integers"
                    ))
                })?;
        }
        r.usize("conv1_maps", &mut cfg.conv1_maps)?;
        r.usize("pool1_width", &mut cfg.pool1_width)?;
        r.usize("conv2_width", &mut cfg.conv2_width)?;
        r.usize("conv2_maps", &mut cfg.conv2_maps)?;
        r.usize("pool2_width", &mut cfg.pool2_width)?;
        r.usize("fc_units", &mut cfg.fc_units)?;
        r.finish()?;
        Ok(cfg)
    }

    pub fn experiment(&self) -> Result<ExperimentPlan, Failure> {
        let s = self
            .section("experiment")
            .ok_or_else(|| config_err("config has no [experiment] section"))?;
        let mut r = Reader::new("experiment", s);
        let mut dataset = String::new();
        r.string("dataset", &mut dataset)?;
        if dataset.is_empty() {
            return Err(config_err("experiment.dataset is required"));
        }
        let dataset = self.resolve(&dataset);
        let mut name = stem(&dataset);
        r.string("name", &mut name)?;
        let fusion = match r.take("fusion") {
            Some(v) => fusion_list("experiment.fusion", v)?,
            None => return Err(config_err("experiment.fusion is required")),
        };
        let mut k = 5;
        r.usize("k", &mut k)?;
        let mut seed = 1;
        r.u64("seed", &mut seed)?;
        let mut models = String::new();
        r.string("models", &mut models)?;
        r.finish()?;

        let cross = match self.section("cross") {
            None => None,
            Some(c) => {
                let mut r = Reader::new("cross", c);
                let (mut train, mut test) = (String::new(), String::new());
                r.string("train", &mut train)?;
                r.string("test", &mut test)?;
                if train.is_empty() || test.is_empty() {
                    return Err(config_err("[cross] needs both train and test"));
                }
                let (train, test) = (self.resolve(&train), self.resolve(&test));
                let mut label = format!("{}\u{21d2}{}", stem(&train), stem(&test));
                r.string("label", &mut label)?;
                let fusion = match r.take("fusion") {
                    Some(v) => fusion_list("cross.fusion", v)?,
                    None => fusion.clone(),
                };
                r.finish()?;
                Some(CrossPlan {
                    train,
                    test,
                    label,
                    fusion,
                })
            }
        };
        Ok(ExperimentPlan {
            dataset,
            name,
            fusion,
            k,
            seed,
            models: (!models.is_empty()).then(|| self.resolve(&models)),
            cross,
        })
    }
}

fn stem(p: &Path) -> String {
    p.file_stem().map_or_else(
        || p.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}

fn fusion_list(key: &str, v: &Value) -> Result<Vec<FusionSpec>, Failure> {
    let items: Vec<&str> = match v {
        Value::String(s) => s.split(',').collect(),
        Value::Array(a) => a
            .iter()
            .map(|x| {
                x.as_str()
                    .ok_or_else(|| config_err(format!("{key} entries must be strings")))
            })
            .collect::<Result<_, _>>()?,
        _ => return Err(config_err(format!("{key} must be a list of fusion specs"))),
    };
    if items.is_empty() {
        return Err(config_err(format!("{key} is empty")));
    }
    items
        .iter()
        .map(|s| Ok(FusionSpec::parse(s.trim())?))
        .collect()
}

/// Typed access to one section that rejects unknown keys.
struct Reader<'a> {
    section: String,
    table: &'a Table,
    used: Vec<&'a str>,
}

impl<'a> Reader<'a> {
    fn new(section: &str, table: &'a Table) -> Self {
        Self {
            section: section.to_string(),
            table,
            used: Vec::new(),
        }
    }

    fn take(&mut self, key: &'a str) -> Option<&'a Value> {
        self.used.push(key);
        self.table.get(key)
    }

    fn bad(&self, key: &str, want: &str) -> Failure {
        config_err(format!("{}.{key} must be {want}", self.section))
    }

    fn usize(&mut self, key: &'a str, out: &mut usize) -> Result<(), Failure> {
        if let Some(v) = self.take(key) {
            *out = v
                .as_integer()
                .filter(|&i| i >= 0)
                .ok_or_else(|| self.bad(key, "a non-negative integer"))?
                as usize;
        }
        Ok(())
    }

    fn u64(&mut self, key: &'a str, out: &mut u64) -> Result<(), Failure> {
        if let Some(v) = self.take(key) {
            *out = v
                .as_integer()
                .filter(|&i| i >= 0)
                .ok_or_else(|| self.bad(key, "a non-negative integer"))? as u64;
        }
        Ok(())
    }

    fn f64(&mut self, key: &'a str, out: &mut f64) -> Result<(), Failure> {
        if let Some(v) = self.take(key) {
            *out = match v {
                Value::Float(f) => *f,
                Value::Integer(i) => *i as f64,
                _ => return Err(self.bad(key, "a number")),
            };
        }
        Ok(())
    }

    fn bool(&mut self, key: &'a str, out: &mut bool) -> Result<(), Failure> {
        if let Some(v) = self.take(key) {
            *out = v.as_bool().ok_or_else(|| self.bad(key, "true or false"))?;
        }
        Ok(())
    }

    fn string(&mut self, key: &'a str, out: &mut String) -> Result<(), Failure> {
        if let Some(v) = self.take(key) {
            *out = v
                .as_str()
                .ok_or_else(|| self.bad(key, "a string"))?
                .to_string();
        }
        Ok(())
    }

    fn finish(self) -> Result<(), Failure> {
        match self.table.keys().find(|k| !self.used.contains(&k.as_str())) {
            Some(k) => Err(config_err(format!("unknown key {}.{k}", self.section))),
            None => Ok(()),
        }
    }
}
