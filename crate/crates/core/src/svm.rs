//! Binary soft-margin SVM trained with SMO on the dual.
//!
//! Working pairs are chosen by maximal KKT violation. Internally class index
//! 1 of the alphabet is `+1` and class index 0 is `-1`; a decision value of
//! exactly zero goes to the positive class.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::manifest::Manifest;
use crate::neural::{Container, Section, Tensor};

pub const SVM_TAG: [u8; 4] = *b"SSVM";
pub const DEFAULT_TOLERANCE: f64 = 1e-3;
pub const MAX_KERNEL_EVALS: u64 = 10_000_000;
const TAU: f64 = 1e-12;
/// Column cache budget in f64 entries (256 MiB).
const CACHE_ENTRIES: usize = 1 << 25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    Linear,
    Rbf { gamma: f64 },
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kernel::Linear => f.write_str("linear"),
            Kernel::Rbf { gamma } => write!(f, "rbf:{gamma}"),
        }
    }
}

impl FromStr for Kernel {
    type Err = Error;

    /// `linear`, `rbf` (gamma 0.01) or `rbf:<gamma>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "linear" => Ok(Kernel::Linear),
            "rbf" => Ok(Kernel::Rbf { gamma: 0.01 }),
            other => {
                let g = other
                    .strip_prefix("rbf:")
                    .and_then(|g| g.parse::<f64>().ok())
                    .ok_or_else(|| Error::config(format!("unknown kernel {other:?}")))?;
                Ok(Kernel::Rbf { gamma: g })
            }
        }
    }
}

pub fn kernel_eval(kernel: Kernel, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::shape(format!(
            "kernel on vectors of length {} and {}",
            x.len(),
            y.len()
        )));
    }
    Ok(kernel_unchecked(kernel, x, y))
}

fn kernel_unchecked(kernel: Kernel, x: &[f64], y: &[f64]) -> f64 {
    match kernel {
        Kernel::Linear => crate::neural::tensor::dot(x, y),
        Kernel::Rbf { gamma } => {
            let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
            (-gamma * d2).exp()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    pub kernel: Kernel,
    pub c: f64,
    /// Stopping threshold on the maximal KKT violation.
    pub tolerance: f64,
    pub max_kernel_evals: u64,
}

impl SvmParams {
    pub fn new(kernel: Kernel, c: f64) -> Self {
        Self {
            kernel,
            c,
            tolerance: DEFAULT_TOLERANCE,
            max_kernel_evals: MAX_KERNEL_EVALS,
        }
    }
}

impl Default for SvmParams {
    fn default() -> Self {
        Self::new(Kernel::Linear, 1.0)
    }
}

/// Solver diagnostics.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SvmReport {
    pub iterations: usize,
    pub kernel_evals: u64,
    pub converged: bool,
    /// Dual objective `½αᵀQα − Σα` after every update.
    pub objective: Vec<f64>,
    /// Final dual variables, one per training example.
    pub alphas: Vec<f64>,
    /// Training labels as ±1.
    pub signs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvmModel {
    pub kernel: Kernel,
    pub c: f64,
    pub alphabet: Vec<String>,
    pub dim: usize,
    /// Primal weights (linear kernel only).
    pub weights: Option<Vec<f64>>,
    /// Support vectors and their `αᵢyᵢ` (RBF kernel only).
    pub support: Vec<Vec<f64>>,
    pub coef: Vec<f64>,
    pub bias: f64,
    pub report: SvmReport,
}

struct Columns<'a> {
    xs: &'a [Vec<f64>],
    signs: &'a [f64],
    kernel: Kernel,
    cache: Vec<Option<Vec<f64>>>,
    cached: usize,
    evals: u64,
}

impl Columns<'_> {
    /// Column `i` of `Q`, where `Q_ij = y_i y_j K(x_i, x_j)`.
    fn get(&mut self, i: usize) -> Vec<f64> {
        if let Some(c) = &self.cache[i] {
            return c.clone();
        }
        let xi = &self.xs[i];
        let col: Vec<f64> = self
            .xs
            .iter()
            .zip(self.signs)
            .map(|(xj, &yj)| self.signs[i] * yj * kernel_unchecked(self.kernel, xi, xj))
            .collect();
        self.evals += col.len() as u64;
        if self.cached + col.len() <= CACHE_ENTRIES {
            self.cached += col.len();
            self.cache[i] = Some(col.clone());
        }
        col
    }
}

/// Trains a binary SVM. `labels` index into `alphabet`, which must have
/// exactly two entries.
pub fn svm_train(
    features: &[Vec<f64>],
    labels: &[usize],
    alphabet: &[String],
    params: &SvmParams,
) -> Result<SvmModel> {
    if alphabet.len() != 2 {
        return Err(Error::config(format!(
            "the SVM is binary; got an alphabet of {} classes",
            alphabet.len()
        )));
    }
    if !(params.c > 0.0 && params.c.is_finite()) {
        return Err(Error::config(format!(
            "C must be positive, got {}",
            params.c
        )));
    }
    if let Kernel::Rbf { gamma } = params.kernel {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::config(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
    }
    if params.tolerance <= 0.0 {
        return Err(Error::config("tolerance must be positive"));
    }
    if features.len() != labels.len() {
        return Err(Error::shape(format!(
            "{} feature rows for {} labels",
            features.len(),
            labels.len()
        )));
    }
    let dim = features.first().map_or(0, Vec::len);
    if dim == 0 {
        return Err(Error::shape(
            "feature vectors must have at least one dimension",
        ));
    }
    if let Some((i, f)) = features.iter().enumerate().find(|(_, f)| f.len() != dim) {
        return Err(Error::shape(format!(
            "row {i} has {} features, row 0 has {dim}",
            f.len()
        )));
    }
    if let Some(&bad) = labels.iter().find(|&&l| l > 1) {
        return Err(Error::Label(format!(
            "label {bad} outside the binary alphabet"
        )));
    }
    for class in 0..2 {
        if !labels.contains(&class) {
            return Err(Error::Training(format!(
                "no training example of class {:?}; the SVM needs both classes",
                alphabet[class]
            )));
        }
    }
    if features.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("non-finite feature value".into()));
    }

    let n = features.len();
    let c = params.c;
    let y: Vec<f64> = labels
        .iter()
        .map(|&l| if l == 1 { 1.0 } else { -1.0 })
        .collect();
    let diag: Vec<f64> = features
        .iter()
        .map(|x| kernel_unchecked(params.kernel, x, x))
        .collect();
    let mut cols = Columns {
        xs: features,
        signs: &y,
        kernel: params.kernel,
        cache: vec![None; n],
        cached: 0,
        evals: n as u64,
    };
    let mut alpha = vec![0.0; n];
    let mut grad = vec![-1.0; n];
    let mut objective = Vec::new();
    let mut iterations = 0;
    let mut converged = false;

    let up = |a: f64, s: f64| (s > 0.0 && a < c) || (s < 0.0 && a > 0.0);
    let low = |a: f64, s: f64| (s > 0.0 && a > 0.0) || (s < 0.0 && a < c);

    loop {
        let mut i = usize::MAX;
        let mut g_max = f64::NEG_INFINITY;
        let mut j = usize::MAX;
        let mut g_min = f64::INFINITY;
        for t in 0..n {
            let v = -y[t] * grad[t];
            if up(alpha[t], y[t]) && v > g_max {
                g_max = v;
                i = t;
            }
            if low(alpha[t], y[t]) && v < g_min {
                g_min = v;
                j = t;
            }
        }
        if i == usize::MAX || j == usize::MAX || g_max - g_min < params.tolerance {
            converged = true;
            break;
        }
        if cols.evals >= params.max_kernel_evals {
            break;
        }
        let qi = cols.get(i);
        let qj = cols.get(j);
        let (old_i, old_j) = (alpha[i], alpha[j]);
        if y[i] != y[j] {
            let quad = (diag[i] + diag[j] + 2.0 * qi[j]).max(TAU);
            let delta = (-grad[i] - grad[j]) / quad;
            let diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if diff > 0.0 {
                if alpha[j] < 0.0 {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if diff > 0.0 {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if alpha[j] > c {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            let quad = (diag[i] + diag[j] - 2.0 * qi[j]).max(TAU);
            let delta = (grad[i] - grad[j]) / quad;
            let sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if sum > c {
                if alpha[i] > c {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if alpha[j] < 0.0 {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if sum > c {
                if alpha[j] > c {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if alpha[i] < 0.0 {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        let (di, dj) = (alpha[i] - old_i, alpha[j] - old_j);
        for t in 0..n {
            grad[t] += qi[t] * di + qj[t] * dj;
        }
        iterations += 1;
        objective.push(
            0.5 * alpha
                .iter()
                .zip(&grad)
                .map(|(a, g)| a * (g - 1.0))
                .sum::<f64>(),
        );
    }

    // Bias from free vectors, or the midpoint of the feasible interval.
    let mut free_sum = 0.0;
    let mut free = 0usize;
    let (mut ub, mut lb) = (f64::INFINITY, f64::NEG_INFINITY);
    for t in 0..n {
        let yg = y[t] * grad[t];
        if alpha[t] > 0.0 && alpha[t] < c {
            free_sum += yg;
            free += 1;
        } else if (alpha[t] >= c && y[t] < 0.0) || (alpha[t] <= 0.0 && y[t] > 0.0) {
            ub = ub.min(yg);
        } else {
            lb = lb.max(yg);
        }
    }
    let rho = if free > 0 {
        free_sum / free as f64
    } else if ub.is_finite() && lb.is_finite() {
        (ub + lb) / 2.0
    } else if ub.is_finite() {
        ub
    } else {
        lb
    };

    let mut support = Vec::new();
    let mut coef = Vec::new();
    for t in 0..n {
        if alpha[t] > 0.0 {
            support.push(features[t].clone());
            coef.push(alpha[t] * y[t]);
        }
    }
    let weights = (params.kernel == Kernel::Linear).then(|| {
        let mut w = vec![0.0; dim];
        for (sv, &a) in support.iter().zip(&coef) {
            crate::neural::tensor::axpy(a, sv, &mut w);
        }
        w
    });
    if weights.is_some() {
        support.clear();
        coef.clear();
    }
    Ok(SvmModel {
        kernel: params.kernel,
        c,
        alphabet: alphabet.to_vec(),
        dim,
        weights,
        support,
        coef,
        bias: -rho,
        report: SvmReport {
            iterations,
            kernel_evals: cols.evals,
            converged,
            objective,
            alphas: alpha,
            signs: y,
        },
    })
}

impl SvmModel {
    pub fn decision(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::shape(format!(
                "model expects {} features, got {}",
                self.dim,
                x.len()
            )));
        }
        let raw = match &self.weights {
            Some(w) => crate::neural::tensor::dot(w, x),
            None => self
                .support
                .iter()
                .zip(&self.coef)
                .map(|(sv, a)| a * kernel_unchecked(self.kernel, sv, x))
                .sum(),
        };
        Ok(raw + self.bias)
    }

    /// Number of support vectors kept (zero for the primal linear form).
    pub fn support_count(&self) -> usize {
        self.support.len()
    }

    pub fn to_section(&self, scaler: Option<&Standardizer>) -> Section {
        let mut m = Manifest::new();
        m.set("kernel", self.kernel)
            .set("c", self.c)
            .set("bias", f64_bits(self.bias))
            .set("dim", self.dim)
            .set("alphabet", self.alphabet.join("\u{1f}"))
            .set("standardized", scaler.is_some());
        let mut tensors = Vec::new();
        match &self.weights {
            Some(w) => tensors.push(vector_tensor(w)),
            None => {
                tensors.push(vector_tensor(&self.coef));
                tensors.push(vector_tensor(&self.support.concat()));
            }
        }
        if let Some(s) = scaler {
            tensors.push(vector_tensor(&s.mean));
            tensors.push(vector_tensor(&s.scale));
        }
        Section {
            tag: SVM_TAG,
            payload: Container {
                config: m.to_string(),
                tensors,
                sections: Vec::new(),
            }
            .to_bytes(),
        }
    }

    pub fn from_section(payload: &[u8]) -> Result<(Self, Option<Standardizer>)> {
        let inner = Container::from_bytes(payload)?;
        let m = Manifest::parse(&inner.config)?;
        let kernel: Kernel = m.require("kernel")?.parse()?;
        let dim: usize = m.parse_value("dim")?;
        let bias = f64::from_bits(
            u64::from_str_radix(m.require("bias")?, 16)
                .map_err(|_| Error::Data("bad bias encoding".into()))?,
        );
        let alphabet = m
            .require("alphabet")?
            .split('\u{1f}')
            .map(str::to_string)
            .collect();
        let standardized: bool = m.parse_value("standardized")?;
        let mut it = inner.tensors.into_iter().map(Tensor::into_data);
        let mut next = || {
            it.next()
                .ok_or_else(|| Error::Data("SVM section is missing tensors".into()))
        };
        let (weights, coef, support) = if kernel == Kernel::Linear {
            (Some(next()?), Vec::new(), Vec::new())
        } else {
            let coef = next()?;
            let flat = next()?;
            let support = flat.chunks(dim).map(<[f64]>::to_vec).collect();
            (None, coef, support)
        };
        let scaler = if standardized {
            Some(Standardizer {
                mean: next()?,
                scale: next()?,
            })
        } else {
            None
        };
        Ok((
            SvmModel {
                kernel,
                c: m.parse_value("c")?,
                alphabet,
                dim,
                weights,
                support,
                coef,
                bias,
                report: SvmReport::default(),
            },
            scaler,
        ))
    }
}

fn f64_bits(v: f64) -> String {
    format!("{:016x}", v.to_bits())
}

fn vector_tensor(v: &[f64]) -> Tensor {
    Tensor::from_vec(v.to_vec())
}

/// Class index for `x`; `f(x) = 0` goes to the positive class.
pub fn svm_predict(model: &SvmModel, x: &[f64]) -> Result<usize> {
    Ok(usize::from(model.decision(x)? >= 0.0))
}

/// Per-dimension z-score transform. Constant dimensions are centred only.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
}

impl Standardizer {
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::Precondition("cannot standardise zero rows".into()))?;
        let dim = first.len();
        let n = rows.len() as f64;
        let mut mean = vec![0.0; dim];
        for r in rows {
            if r.len() != dim {
                return Err(Error::shape(format!(
                    "row of {} features among rows of {dim}",
                    r.len()
                )));
            }
            for (m, v) in mean.iter_mut().zip(r) {
                *m += v;
            }
        }
        mean.iter_mut().for_each(|m| *m /= n);
        let mut var = vec![0.0; dim];
        for r in rows {
            for ((s, v), m) in var.iter_mut().zip(r).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let scale = var
            .into_iter()
            .map(|s| {
                let sd = (s / n).sqrt();
                if sd > 1e-12 {
                    sd
                } else {
                    1.0
                }
            })
            .collect();
        Ok(Self { mean, scale })
    }

    pub fn transform(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.mean.len() {
            return Err(Error::shape(format!(
                "scaler fitted on {} features, got {}",
                self.mean.len(),
                x.len()
            )));
        }
        Ok(x.iter()
            .zip(&self.mean)
            .zip(&self.scale)
            .map(|((v, m), s)| (v - m) / s)
            .collect())
    }

    pub fn transform_all(&self, rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        rows.iter().map(|r| self.transform(r)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alphabet() -> Vec<String> {
        vec!["neg".into(), "pos".into()]
    }

    #[test]
    fn kernel_values() {
        assert_eq!(
            kernel_eval(Kernel::Linear, &[1.0, 2.0], &[3.0, 4.0]).unwrap(),
            11.0
        );
        let k = Kernel::Rbf { gamma: 0.5 };
        assert_eq!(kernel_eval(k, &[0.3, -2.0], &[0.3, -2.0]).unwrap(), 1.0);
        assert_eq!(
            kernel_eval(k, &[1.0, 0.0], &[0.0, 2.0]).unwrap(),
            (-2.5f64).exp()
        );
        assert!(kernel_eval(k, &[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn kernel_names() {
        assert_eq!(
            "rbf:0.01".parse::<Kernel>().unwrap(),
            Kernel::Rbf { gamma: 0.01 }
        );
        assert_eq!(
            Kernel::Rbf { gamma: 8.5 }
                .to_string()
                .parse::<Kernel>()
                .unwrap(),
            Kernel::Rbf { gamma: 8.5 }
        );
        assert!("poly".parse::<Kernel>().is_err());
    }

    #[test]
    fn guards() {
        let x = vec![vec![0.0], vec![1.0]];
        let p = SvmParams::default();
        assert!(matches!(
            svm_train(&x, &[1, 1], &alphabet(), &p),
            Err(Error::Training(_))
        ));
        assert!(matches!(
            svm_train(&[vec![0.0], vec![1.0, 2.0]], &[0, 1], &alphabet(), &p),
            Err(Error::Shape(_))
        ));
        let three: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        assert!(matches!(
            svm_train(&x, &[0, 1], &three, &p),
            Err(Error::Config(_))
        ));
        assert!(svm_train(
            &x,
            &[0, 1],
            &alphabet(),
            &SvmParams::new(Kernel::Linear, 0.0)
        )
        .is_err());
        assert!(svm_train(
            &x,
            &[0, 1],
            &alphabet(),
            &SvmParams::new(Kernel::Rbf { gamma: 0.0 }, 1.0)
        )
        .is_err());
        let m = svm_train(&x, &[0, 1], &alphabet(), &p).unwrap();
        assert!(matches!(svm_predict(&m, &[1.0, 2.0]), Err(Error::Shape(_))));
    }

    #[test]
    fn one_dimensional_margin() {
        // Hard-margin optimum for {-1 -> neg, +1 -> pos} is w = 1, b = 0.
        let x = vec![vec![-1.0], vec![1.0], vec![-3.0], vec![2.5]];
        let m = svm_train(
            &x,
            &[0, 1, 0, 1],
            &alphabet(),
            &SvmParams::new(Kernel::Linear, 100.0),
        )
        .unwrap();
        let w = m.weights.as_ref().unwrap()[0];
        assert!((w - 1.0).abs() < 1e-3, "w = {w}");
        assert!(m.bias.abs() < 1e-3, "b = {}", m.bias);
        assert_eq!(svm_predict(&m, &[0.0]).unwrap(), 1, "tie goes positive");
        assert_eq!(svm_predict(&m, &[1e6]).unwrap(), 1);
    }

    #[test]
    fn constant_zero_columns_do_not_change_predictions() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x: Vec<Vec<f64>> = (0..40)
            .map(|_| vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
            .collect();
        let y: Vec<usize> = x
            .iter()
            .map(|v| usize::from(v[0] + 0.5 * v[1] > 0.1))
            .collect();
        let p = SvmParams::new(Kernel::Linear, 1.0);
        let a = svm_train(&x, &y, &alphabet(), &p).unwrap();
        let padded: Vec<Vec<f64>> = x.iter().map(|v| vec![v[0], v[1], 0.0, 0.0]).collect();
        let b = svm_train(&padded, &y, &alphabet(), &p).unwrap();
        for (u, v) in x.iter().zip(&padded) {
            assert_eq!(svm_predict(&a, u).unwrap(), svm_predict(&b, v).unwrap());
        }
    }

    #[test]
    fn section_round_trip() {
        let x = vec![vec![0.0, 1.0], vec![1.0, 0.0], vec![2.0, 2.0]];
        for kernel in [Kernel::Linear, Kernel::Rbf { gamma: 0.7 }] {
            let m = svm_train(&x, &[0, 1, 1], &alphabet(), &SvmParams::new(kernel, 3.0)).unwrap();
            let scaler = Standardizer::fit(&x).unwrap();
            let section = m.to_section(Some(&scaler));
            let (back, s) = SvmModel::from_section(&section.payload).unwrap();
            assert_eq!(s.as_ref(), Some(&scaler));
            assert_eq!(back.bias.to_bits(), m.bias.to_bits());
            assert_eq!(back.weights, m.weights);
            assert_eq!(back.coef, m.coef);
            assert_eq!(back.support, m.support);
            for v in &x {
                assert_eq!(
                    back.decision(v).unwrap().to_bits(),
                    m.decision(v).unwrap().to_bits()
                );
            }
        }
    }

    #[test]
    fn standardizer_zero_mean_unit_variance() {
        let rows = vec![vec![1.0, 5.0], vec![3.0, 5.0], vec![5.0, 5.0]];
        let s = Standardizer::fit(&rows).unwrap();
        let t = s.transform_all(&rows).unwrap();
        let col: Vec<f64> = t.iter().map(|r| r[0]).collect();
        assert!(col.iter().sum::<f64>().abs() < 1e-12);
        assert!((col.iter().map(|v| v * v).sum::<f64>() / 3.0 - 1.0).abs() < 1e-12);
        assert!(t.iter().all(|r| r[1] == 0.0));
    }

    proptest! {
        #[test]
        fn rbf_gram_is_symmetric_unit_diagonal(
            pts in proptest::collection::vec(proptest::collection::vec(-3.0f64..3.0, 3), 2..8),
            gamma in 0.01f64..2.0,
        ) {
            let k = Kernel::Rbf { gamma };
            for a in &pts {
                prop_assert_eq!(kernel_eval(k, a, a).unwrap(), 1.0);
                for b in &pts {
                    let v = kernel_eval(k, a, b).unwrap();
                    prop_assert_eq!(v, kernel_eval(k, b, a).unwrap());
                    prop_assert!(v > 0.0 && v <= 1.0);
                }
            }
        }

        #[test]
        fn dual_feasible_and_objective_monotone(seed in 0u64..200, c in 0.1f64..20.0) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x: Vec<Vec<f64>> = (0..30).map(|_| vec![rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect();
            let y: Vec<usize> = (0..30).map(|i| i % 2).collect();
            let m = svm_train(&x, &y, &alphabet(), &SvmParams::new(Kernel::Rbf { gamma: 1.0 }, c)).unwrap();
            let r = &m.report;
            prop_assert!(r.converged);
            prop_assert!(r.alphas.iter().all(|&a| (0.0..=c).contains(&a)));
            let balance: f64 = r.alphas.iter().zip(&r.signs).map(|(a, s)| a * s).sum();
            prop_assert!(balance.abs() < 1e-6);
            for w in r.objective.windows(2) {
                prop_assert!(w[1] <= w[0] + 1e-9 * w[0].abs().max(1.0));
            }
        }
    }
}
