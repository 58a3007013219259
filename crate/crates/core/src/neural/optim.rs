use super::tensor::Tensor;
use crate::error::{Error, Result};

/// Optimiser and schedule settings.
#[derive(Debug, Clone, PartialEq)]
pub struct SgdConfig {
    pub learning_rate: f64,
    pub momentum: f64,
    pub batch_size: usize,
    pub max_epochs: usize,
    /// Stop once training loss improved by less than this over `patience` epochs.
    pub plateau_tolerance: f64,
    pub patience: usize,
    pub seed: u64,
}

impl Default for SgdConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.01,
            momentum: 0.9,
            batch_size: 50,
            max_epochs: 30,
            plateau_tolerance: 1e-4,
            patience: 3,
            seed: 1,
        }
    }
}

impl SgdConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::config(format!(
                "learning rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return Err(Error::config(format!(
                "momentum must lie in [0, 1), got {}",
                self.momentum
            )));
        }
        if self.batch_size == 0 || self.max_epochs == 0 {
            return Err(Error::config(
                "batch size and epoch budget must be positive",
            ));
        }
        Ok(())
    }
}

/// Heavy-ball SGD: `v <- momentum * v + g`, `p <- p - lr * v`.
#[derive(Debug, Clone)]
pub struct Sgd {
    learning_rate: f64,
    momentum: f64,
    velocity: Vec<Tensor>,
}

impl Sgd {
    pub fn new(learning_rate: f64, momentum: f64) -> Result<Self> {
        if !(learning_rate > 0.0) {
            return Err(Error::config(format!(
                "learning rate must be positive, got {learning_rate}"
            )));
        }
        Ok(Self {
            learning_rate,
            momentum,
            velocity: Vec::new(),
        })
    }

    pub fn step(&mut self, params: &mut [&mut Tensor], grads: &[Tensor]) -> Result<()> {
        if params.len() != grads.len() {
            return Err(Error::shape(format!(
                "{} parameter tensors but {} gradients",
                params.len(),
                grads.len()
            )));
        }
        for (p, g) in params.iter().zip(grads) {
            if !p.same_shape(g) {
                return Err(Error::shape(format!(
                    "parameter {:?} vs gradient {:?}",
                    p.shape(),
                    g.shape()
                )));
            }
        }
        if self.velocity.is_empty() {
            self.velocity = grads.iter().map(|g| Tensor::zeros(g.shape())).collect();
        }
        for ((p, g), v) in params.iter_mut().zip(grads).zip(&mut self.velocity) {
            for ((pv, &gv), vv) in p.data_mut().iter_mut().zip(g.data()).zip(v.data_mut()) {
                *vv = self.momentum * *vv + gv;
                *pv -= self.learning_rate * *vv;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_is_fixed_point() {
        let mut p = Tensor::from_vec(vec![1.0, -2.0]);
        let before = p.clone();
        let mut opt = Sgd::new(0.1, 0.9).unwrap();
        for _ in 0..5 {
            opt.step(&mut [&mut p], &[Tensor::zeros(&[2])]).unwrap();
        }
        assert_eq!(p, before);
    }

    #[test]
    fn no_momentum_is_vanilla_update() {
        let mut p = Tensor::from_vec(vec![1.0, 3.0]);
        let g = Tensor::from_vec(vec![0.5, -1.0]);
        let mut opt = Sgd::new(0.1, 0.0).unwrap();
        opt.step(&mut [&mut p], &[g.clone()]).unwrap();
        opt.step(&mut [&mut p], &[g]).unwrap();
        assert!((p.data()[0] - 0.9).abs() < 1e-15);
        assert!((p.data()[1] - 3.2).abs() < 1e-15);
    }

    #[test]
    fn quadratic_loss_decreases_monotonically() {
        // loss = 0.5 * a * (p - c)^2
        let (a, c) = (3.0, 2.5);
        let loss = |p: f64| 0.5 * a * (p - c) * (p - c);
        let mut p = Tensor::from_vec(vec![-4.0]);
        let mut opt = Sgd::new(0.01, 0.5).unwrap();
        let mut prev = loss(p.data()[0]);
        for _ in 0..100 {
            let g = Tensor::from_vec(vec![a * (p.data()[0] - c)]);
            opt.step(&mut [&mut p], &[g]).unwrap();
            let cur = loss(p.data()[0]);
            assert!(cur < prev, "{cur} !< {prev}");
            prev = cur;
        }
    }

    #[test]
    fn shape_mismatch_rejected() {
        let mut p = Tensor::from_vec(vec![1.0, 3.0]);
        let mut opt = Sgd::new(0.1, 0.0).unwrap();
        assert!(opt.step(&mut [&mut p], &[Tensor::zeros(&[3])]).is_err());
        assert!(Sgd::new(0.0, 0.0).is_err());
    }
}
