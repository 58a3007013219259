//! The four sentence-CNN families (sentiment, emotion, five personality
//! traits, sarcasm baseline), their training, and feature extraction.

pub mod config;
pub mod dataset;
pub mod model;
pub mod registry;

pub use config::{ModelConfig, ModelName, Trait, OCEAN};
pub use dataset::{Example, LabeledDataset};
pub use model::{
    argmax, build_model, classify, extract_features, extract_personality_features, train_model,
    train_model_with_statics, FeatureSource, FeatureVector, PersonalityModels, TrainOptions,
    TrainedModel, TrainingReport,
};
pub use registry::{load_model, load_named, save_model};
