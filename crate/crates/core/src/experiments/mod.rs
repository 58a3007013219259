//! Feature fusion, stratified cross-validation, metrics, cross-corpus
//! evaluation, rank correlation and PCA export.

pub mod cv;
pub mod folds;
pub mod fusion;
pub mod metrics;
pub mod report;
pub mod stats;

pub use cv::{
    class_scores, cross_dataset_eval, run_cv_experiment, run_cv_grid, CrossResult, ExperimentHyper,
    ExperimentResult, FoldAudit, FoldScore, PretrainedModels,
};
pub use folds::{kfold_split, FoldPlan};
pub use fusion::{append_static_channel, concat_features, FusionMode, FusionSpec};
pub use metrics::{macro_f1, ClassScores, ConfusionMatrix};
pub use report::{format_grid_table, pca_tsv, results_tsv};
pub use stats::{pca_project, spearman, Pca, SpearmanResult};
