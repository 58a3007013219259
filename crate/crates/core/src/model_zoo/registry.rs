//! On-disk model registry: `<dir>/<stem>.scnn` holds the parameters,
//! `<dir>/<stem>.manifest` the human-readable training record.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::config::{ModelConfig, ModelName};
use super::model::{TrainOptions, TrainedModel, TrainingReport};
use crate::error::{Error, Result};
use crate::manifest::Manifest;
use crate::neural::{Container, Network, Section, SgdConfig};
use crate::text::{EmbeddingMatrix, Vocabulary};

pub const VOCAB_TAG: [u8; 4] = *b"VOCB";

pub fn to_container(model: &TrainedModel) -> Container {
    let mut tensors = vec![model.embeddings.matrix.clone()];
    tensors.extend(model.network.params().into_iter().cloned());
    Container {
        config: model.manifest().to_string(),
        tensors,
        sections: vec![Section {
            tag: VOCAB_TAG,
            payload: model.vocab.to_text().into_bytes(),
        }],
    }
}

pub fn from_container(c: &Container) -> Result<TrainedModel> {
    let m = Manifest::parse(&c.config)?;
    let config = ModelConfig::from_manifest(&m)?;
    let vocab_bytes = c
        .section(&VOCAB_TAG)
        .ok_or_else(|| Error::Data("checkpoint has no vocabulary section".into()))?;
    let vocab = Vocabulary::from_text(
        std::str::from_utf8(vocab_bytes)
            .map_err(|_| Error::Data("vocabulary is not UTF-8".into()))?,
    )?;
    let (matrix, params) = c
        .tensors
        .split_first()
        .ok_or_else(|| Error::Data("checkpoint holds no tensors".into()))?;
    let window: usize = m.parse_value("window")?;
    let embedding_dim: usize = m.parse_value("embedding_dim")?;
    let static_width: usize = m.parse_value("static_width")?;
    if matrix.shape() != [vocab.len(), embedding_dim] {
        return Err(Error::shape(format!(
            "embedding table {:?} does not match vocabulary of {} x {embedding_dim}",
            matrix.shape(),
            vocab.len()
        )));
    }
    let network = Network::from_parts(
        &config.layer_specs(),
        window,
        embedding_dim,
        static_width,
        params.to_vec(),
    )?;
    let pretrained = match m.require("pretrained")? {
        "none" => None,
        p => Some(PathBuf::from(p)),
    };
    let options = TrainOptions {
        sgd: SgdConfig {
            learning_rate: m.parse_value("learning_rate")?,
            momentum: m.parse_value("momentum")?,
            batch_size: m.parse_value("batch_size")?,
            max_epochs: m.parse_value("max_epochs")?,
            plateau_tolerance: m.parse_value("plateau_tolerance")?,
            patience: m.parse_value("patience")?,
            seed: m.parse_value("seed")?,
        },
        embedding_dim,
        min_count: m.parse_value("min_count")?,
        window: Some(window),
        pretrained,
        trainable_embeddings: m.parse_value("trainable_embeddings")?,
        oov_seed: m.parse_value("oov_seed")?,
    };
    let report = TrainingReport {
        epochs_run: m.parse_value("epochs_run")?,
        final_loss: m.parse_value("final_loss")?,
        loss_history: Vec::new(),
        train_examples: m.parse_value("train_examples")?,
    };
    Ok(TrainedModel {
        config,
        network,
        vocab,
        embeddings: EmbeddingMatrix {
            matrix: matrix.clone(),
            trainable: options.trainable_embeddings,
            oov_seed: options.oov_seed,
        },
        options,
        report,
    })
}

/// Writes `bytes` to `path` through a temporary sibling and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .ok_or_else(|| Error::config(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

pub fn checkpoint_path(dir: &Path, name: ModelName) -> PathBuf {
    dir.join(format!("{}.scnn", name.file_stem()))
}

pub fn manifest_path(dir: &Path, name: ModelName) -> PathBuf {
    dir.join(format!("{}.manifest", name.file_stem()))
}

/// Saves the checkpoint and its manifest; `extra` entries are appended to
/// the manifest (fingerprints, command line, ...).
pub fn save_model(dir: &Path, model: &TrainedModel, extra: &Manifest) -> Result<PathBuf> {
    let path = checkpoint_path(dir, model.name());
    write_atomic(&path, &to_container(model).to_bytes())?;
    let mut manifest = model.manifest();
    manifest.extend(extra);
    write_atomic(
        &manifest_path(dir, model.name()),
        manifest.to_string().as_bytes(),
    )?;
    Ok(path)
}

pub fn load_model(path: &Path) -> Result<TrainedModel> {
    let bytes = fs::read(path)?;
    from_container(&Container::from_bytes(&bytes)?)
}

pub fn load_named(dir: &Path, name: ModelName) -> Result<TrainedModel> {
    let model = load_model(&checkpoint_path(dir, name))?;
    if model.name() != name {
        return Err(Error::Data(format!(
            "checkpoint for {name} contains the {} model",
            model.name()
        )));
    }
    Ok(model)
}
