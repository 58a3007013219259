use crate::error::{Error, Result};

/// Counts indexed `[gold][predicted]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub counts: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassScores {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl ConfusionMatrix {
    pub fn new(classes: usize) -> Self {
        Self {
            counts: vec![vec![0; classes]; classes],
        }
    }

    pub fn from_predictions(
        predictions: &[usize],
        golds: &[usize],
        classes: usize,
    ) -> Result<Self> {
        if predictions.len() != golds.len() {
            return Err(Error::shape(format!(
                "{} predictions for {} gold labels",
                predictions.len(),
                golds.len()
            )));
        }
        if predictions.is_empty() {
            return Err(Error::Precondition("no predictions to score".into()));
        }
        let mut m = Self::new(classes);
        for (&p, &g) in predictions.iter().zip(golds) {
            if p >= classes || g >= classes {
                return Err(Error::Label(format!(
                    "label {} outside {classes} classes",
                    p.max(g)
                )));
            }
            m.counts[g][p] += 1;
        }
        Ok(m)
    }

    pub fn classes(&self) -> usize {
        self.counts.len()
    }

    pub fn add(&mut self, other: &ConfusionMatrix) {
        for (row, o) in self.counts.iter_mut().zip(&other.counts) {
            for (a, b) in row.iter_mut().zip(o) {
                *a += b;
            }
        }
    }

    /// Precision, recall and F1 per class; empty ratios count as 0.
    pub fn per_class(&self) -> Vec<ClassScores> {
        (0..self.classes())
            .map(|c| {
                let tp = self.counts[c][c] as f64;
                let gold: usize = self.counts[c].iter().sum();
                let predicted: usize = self.counts.iter().map(|r| r[c]).sum();
                let precision = if predicted == 0 {
                    0.0
                } else {
                    tp / predicted as f64
                };
                let recall = if gold == 0 { 0.0 } else { tp / gold as f64 };
                // 2PR/(P+R) written over counts: one rounding instead of three.
                let f1 = if tp == 0.0 {
                    0.0
                } else {
                    2.0 * tp / (predicted + gold) as f64
                };
                ClassScores {
                    precision,
                    recall,
                    f1,
                }
            })
            .collect()
    }

    pub fn macro_scores(&self) -> ClassScores {
        let per = self.per_class();
        let n = per.len() as f64;
        ClassScores {
            precision: per.iter().map(|s| s.precision).sum::<f64>() / n,
            recall: per.iter().map(|s| s.recall).sum::<f64>() / n,
            f1: per.iter().map(|s| s.f1).sum::<f64>() / n,
        }
    }
}

/// Unweighted mean of per-class F1 over `classes` classes.
pub fn macro_f1(predictions: &[usize], golds: &[usize], classes: usize) -> Result<f64> {
    Ok(
        ConfusionMatrix::from_predictions(predictions, golds, classes)?
            .macro_scores()
            .f1,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_and_degenerate() {
        assert_eq!(macro_f1(&[0, 1, 1, 0], &[0, 1, 1, 0], 2).unwrap(), 1.0);
        let m = macro_f1(&[0, 0, 0, 0], &[0, 0, 1, 1], 2).unwrap();
        assert!((m - (2.0 / 3.0) / 2.0).abs() < 1e-15);
        assert!(macro_f1(&[0], &[0, 1], 2).is_err());
        assert!(macro_f1(&[], &[], 2).is_err());
    }

    #[test]
    fn absent_class_contributes_zero() {
        assert_eq!(macro_f1(&[0, 0], &[0, 0], 2).unwrap(), 0.5);
    }

    #[test]
    fn exhaustive_six_items() {
        let golds = [0, 1, 1, 0, 1, 0];
        for mask in 0u32..64 {
            let preds: Vec<usize> = (0..6).map(|i| ((mask >> i) & 1) as usize).collect();
            let mut expected = 0.0;
            for c in 0..2 {
                let tp = (0..6).filter(|&i| preds[i] == c && golds[i] == c).count() as f64;
                let fp = (0..6).filter(|&i| preds[i] == c && golds[i] != c).count() as f64;
                let fn_ = (0..6).filter(|&i| preds[i] != c && golds[i] == c).count() as f64;
                let denom = 2.0 * tp + fp + fn_;
                expected += if tp == 0.0 { 0.0 } else { 2.0 * tp / denom };
            }
            let got = macro_f1(&preds, &golds, 2).unwrap();
            assert_eq!(got, expected / 2.0, "mask {mask}");
        }
    }

    #[test]
    fn confusion_rows_sum_to_gold_counts() {
        let m = ConfusionMatrix::from_predictions(&[0, 2, 1, 1, 0], &[0, 1, 1, 2, 2], 3).unwrap();
        assert_eq!(
            m.counts
                .iter()
                .map(|r| r.iter().sum::<usize>())
                .collect::<Vec<_>>(),
            [1, 2, 2]
        );
    }
}
