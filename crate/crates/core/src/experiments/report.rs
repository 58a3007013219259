use std::fmt::Write;

use super::cv::{CrossResult, ExperimentResult};
use super::fusion::FusionMode;

fn method(mode: FusionMode) -> &'static str {
    match mode {
        FusionMode::ConcatThenSvm => "CNN-SVM",
        FusionMode::StaticChannelIntoBaseline => "CNN",
    }
}

/// Aligned feature-combination grid: one row per fusion spec (mean
/// macro-F1 in percent), then one `train => test` row per cross-corpus run.
pub fn format_grid_table(
    dataset: &str,
    results: &[ExperimentResult],
    cross: &[(String, CrossResult)],
) -> String {
    let mut rows: Vec<[String; 3]> =
        vec![["Features".into(), "Method".into(), dataset.to_string()]];
    for r in results {
        rows.push([
            r.fusion.blocks(),
            method(r.fusion.mode).into(),
            format!("{:.2}", 100.0 * r.mean_macro_f1),
        ]);
    }
    for (label, c) in cross {
        rows.push([
            c.fusion.blocks(),
            method(c.fusion.mode).into(),
            format!("{:.2} ({label})", 100.0 * c.macro_f1),
        ]);
    }
    let widths: Vec<usize> = (0..3)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (i, r) in rows.iter().enumerate() {
        let line = format!(
            "{:<w0$}  {:<w1$}  {:>w2$}",
            r[0],
            r[1],
            r[2],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2]
        );
        out.push_str(line.trim_end());
        out.push('\n');
        if i == 0 {
            out.push_str(&"-".repeat(widths.iter().sum::<usize>() + 4));
            out.push('\n');
        }
    }
    out
}

/// `fusion_spec, fold, macro_f1, precision, recall`, one line per fold plus
/// a `mean` line per spec. Values are written in shortest round-trip form.
pub fn results_tsv(results: &[ExperimentResult]) -> String {
    let mut out = String::from("fusion_spec\tfold\tmacro_f1\tprecision\trecall\n");
    for r in results {
        for f in &r.folds {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                r.fusion, f.fold, f.macro_f1, f.precision, f.recall
            )
            .unwrap();
        }
        let n = r.folds.len() as f64;
        let p = r.folds.iter().map(|f| f.precision).sum::<f64>() / n;
        let rec = r.folds.iter().map(|f| f.recall).sum::<f64>() / n;
        writeln!(
            out,
            "{}\tmean\t{}\t{}\t{}",
            r.fusion, r.mean_macro_f1, p, rec
        )
        .unwrap();
    }
    out
}

/// `id, x, y, label` rows of a two-component projection.
pub fn pca_tsv(ids: &[String], coordinates: &[Vec<f64>], labels: &[String]) -> String {
    let mut out = String::from("id\tx\ty\tlabel\n");
    for ((id, c), l) in ids.iter().zip(coordinates).zip(labels) {
        let y = c.get(1).copied().unwrap_or(0.0);
        writeln!(out, "{id}\t{}\t{y}\t{l}", c[0]).unwrap();
    }
    out
}
