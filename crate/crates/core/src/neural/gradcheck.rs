use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::network::Network;
use super::ops::softmax_cross_entropy;
use super::tensor::Tensor;
use crate::error::{Error, Result};

/// Minimum number of parameter entries compared (or all, if fewer exist).
pub const MIN_SAMPLED_PARAMS: usize = 200;
/// Every parameter tensor contributes at least this many entries.
const PER_TENSOR_FLOOR: usize = 4;
const INPUT_SAMPLES: usize = 16;

/// Outcome of comparing analytic gradients with central differences.
#[derive(Debug, Clone)]
pub struct GradientReport {
    /// Largest relative error over every compared entry (parameters and input).
    pub max_relative_error: f64,
    /// Largest relative error per parameter tensor, in [`Network::params`] order.
    pub per_parameter: Vec<f64>,
    /// Largest relative error over the sampled input entries.
    pub input_relative_error: f64,
    pub epsilon: f64,
    pub entries_checked: usize,
    /// Sampled entries whose `±epsilon` probes changed a ReLU state or a
    /// pooling argmax. The loss is not differentiable between the probes, so
    /// these are left out of the error figures.
    pub kinks_skipped: usize,
}

/// Loss at a probe point, or `None` if the probe left the linear piece
/// described by `pattern`.
fn probe_loss(
    network: &Network,
    input: &Tensor,
    statics: &[f64],
    gold: usize,
    pattern: &[usize],
) -> Result<Option<f64>> {
    let trace = network.forward(input, statics)?;
    if network.activation_pattern(&trace) != pattern {
        return Ok(None);
    }
    Ok(Some(softmax_cross_entropy(trace.logits(), gold)?.1))
}

pub fn relative_error(analytic: f64, numeric: f64) -> f64 {
    (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1e-8)
}

/// Compares backpropagated gradients with central finite differences on a
/// deterministic sample of parameter entries and input entries.
pub fn gradient_check(
    network: &Network,
    input: &Tensor,
    statics: &[f64],
    gold: usize,
    epsilon: f64,
    seed: u64,
) -> Result<GradientReport> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::Precondition(format!(
            "finite-difference epsilon must be positive, got {epsilon}"
        )));
    }
    let trace = network.forward(input, statics)?;
    let grads = network.backward(&trace, gold)?;
    let pattern = network.activation_pattern(&trace);
    let mut kinks = 0;

    let sizes: Vec<usize> = network.params().iter().map(|t| t.len()).collect();
    let total: usize = sizes.iter().sum();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks: Vec<Vec<usize>> = sizes
        .iter()
        .map(|&len| sample_indices(len, PER_TENSOR_FLOOR.min(len), &mut rng))
        .collect();
    let floor_count: usize = picks.iter().map(Vec::len).sum();
    if total <= MIN_SAMPLED_PARAMS.max(floor_count) {
        picks = sizes.iter().map(|&len| (0..len).collect()).collect();
    } else {
        for _ in 0..MIN_SAMPLED_PARAMS {
            let mut g = rng.gen_range(0..total);
            let mut t = 0;
            while g >= sizes[t] {
                g -= sizes[t];
                t += 1;
            }
            picks[t].push(g);
        }
        for p in &mut picks {
            p.sort_unstable();
            p.dedup();
        }
    }

    let mut probe = network.clone();
    let mut per_parameter = vec![0.0f64; sizes.len()];
    let mut checked = 0;
    for (t, idxs) in picks.iter().enumerate() {
        for &i in idxs {
            let original = probe.params()[t].data()[i];
            probe.params_mut()[t].data_mut()[i] = original + epsilon;
            let plus = probe_loss(&probe, input, statics, gold, &pattern)?;
            probe.params_mut()[t].data_mut()[i] = original - epsilon;
            let minus = probe_loss(&probe, input, statics, gold, &pattern)?;
            probe.params_mut()[t].data_mut()[i] = original;
            let (Some(plus), Some(minus)) = (plus, minus) else {
                kinks += 1;
                continue;
            };
            let numeric = (plus - minus) / (2.0 * epsilon);
            let err = relative_error(grads.params[t].data()[i], numeric);
            per_parameter[t] = per_parameter[t].max(err);
            checked += 1;
        }
    }

    let mut input_err = 0.0f64;
    let mut x = input.clone();
    for i in sample_indices(x.len(), INPUT_SAMPLES.min(x.len()), &mut rng) {
        let original = x.data()[i];
        x.data_mut()[i] = original + epsilon;
        let plus = probe_loss(network, &x, statics, gold, &pattern)?;
        x.data_mut()[i] = original - epsilon;
        let minus = probe_loss(network, &x, statics, gold, &pattern)?;
        x.data_mut()[i] = original;
        let (Some(plus), Some(minus)) = (plus, minus) else {
            kinks += 1;
            continue;
        };
        let numeric = (plus - minus) / (2.0 * epsilon);
        input_err = input_err.max(relative_error(grads.input.data()[i], numeric));
        checked += 1;
    }

    let max_relative_error = per_parameter.iter().copied().fold(input_err, f64::max);
    Ok(GradientReport {
        max_relative_error,
        per_parameter,
        input_relative_error: input_err,
        epsilon,
        entries_checked: checked,
        kinks_skipped: kinks,
    })
}

fn sample_indices<R: Rng>(len: usize, count: usize, rng: &mut R) -> Vec<usize> {
    rand::seq::index::sample(rng, len, count).into_vec()
}
