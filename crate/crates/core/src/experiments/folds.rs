use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Stratified partition of `0..n` into `k` folds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    pub k: usize,
    pub seed: u64,
    /// Sorted test indices of each fold.
    pub folds: Vec<Vec<usize>>,
}

impl FoldPlan {
    pub fn test(&self, fold: usize) -> &[usize] {
        &self.folds[fold]
    }

    /// Every index outside `fold`, ascending.
    pub fn train(&self, fold: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .folds
            .iter()
            .enumerate()
            .filter(|&(f, _)| f != fold)
            .flat_map(|(_, idx)| idx.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// Shuffles each class with a seeded RNG, then deals the classes in turn
/// onto the folds with one running counter, so fold sizes differ by at
/// most one overall and per class.
pub fn kfold_split(labels: &[usize], k: usize, seed: u64) -> Result<FoldPlan> {
    if k < 2 {
        return Err(Error::config(format!("k-fold needs k >= 2, got {k}")));
    }
    let classes = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for (i, &l) in labels.iter().enumerate() {
        by_class[l].push(i);
    }
    for (c, members) in by_class.iter().enumerate() {
        if !members.is_empty() && members.len() < k {
            return Err(Error::Data(format!(
                "cannot stratify: class {c} has {} examples for {k} folds",
                members.len()
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for members in &mut by_class {
        members.shuffle(&mut rng);
        for &i in members.iter() {
            folds[next % k].push(i);
            next += 1;
        }
    }
    folds.iter_mut().for_each(|f| f.sort_unstable());
    Ok(FoldPlan { k, seed, folds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hundred_into_five() {
        let labels: Vec<usize> = (0..100).map(|i| i % 2).collect();
        let plan = kfold_split(&labels, 5, 3).unwrap();
        assert!(plan.folds.iter().all(|f| f.len() == 20));
        assert_eq!(plan, kfold_split(&labels, 5, 3).unwrap());
        assert_ne!(plan, kfold_split(&labels, 5, 4).unwrap());
    }

    #[test]
    fn guards() {
        assert!(matches!(
            kfold_split(&[0, 1, 0, 1], 1, 0),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            kfold_split(&[0, 0, 0, 1], 2, 0),
            Err(Error::Data(_))
        ));
    }

    proptest! {
        #[test]
        fn partition_and_stratification(labels in proptest::collection::vec(0usize..3, 30..120), k in 2usize..6, seed: u64) {
            let counts: Vec<usize> = (0..3).map(|c| labels.iter().filter(|&&l| l == c).count()).collect();
            prop_assume!(counts.iter().all(|&c| c == 0 || c >= k));
            let plan = kfold_split(&labels, k, seed).unwrap();
            let mut all: Vec<usize> = plan.folds.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..labels.len()).collect::<Vec<_>>());
            let sizes: Vec<usize> = plan.folds.iter().map(Vec::len).collect();
            prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
            for c in 0..3 {
                let per: Vec<usize> = plan.folds.iter().map(|f| f.iter().filter(|&&i| labels[i] == c).count()).collect();
                prop_assert!(per.iter().max().unwrap() - per.iter().min().unwrap() <= 1);
            }
            for f in 0..k {
                let train = plan.train(f);
                prop_assert!(train.iter().all(|i| !plan.test(f).contains(i)));
                prop_assert_eq!(train.len() + plan.test(f).len(), labels.len());
            }
        }
    }
}
