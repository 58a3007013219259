//! Layer stacks with materialised parameters, forward traces and exact
//! backpropagation.
//!
//! Activations between layers are either a list of sequence matrices
//! ("branches", one per kernel width of the last convolution) or a flat
//! vector. A convolution with several kernel widths fans the sequence out
//! into parallel branches; ReLU and max pooling act on every branch
//! independently; the next convolution or dense layer merges the branches
//! by truncating them to the shortest length and concatenating along the
//! feature axis.

use rand::Rng;

use super::ops;
use super::tensor::Tensor;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerKind {
    Convolution1D,
    MaxPool1D,
    ReLU,
    FullyConnected,
    Softmax,
}

/// Architecture description of one layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LayerSpec {
    Convolution1D {
        kernel_widths: Vec<usize>,
        feature_maps: usize,
    },
    MaxPool1D {
        pool_width: usize,
    },
    ReLU,
    FullyConnected {
        output_units: usize,
    },
    /// Affine map to `output_units` logits followed by a softmax. Must be the
    /// last layer; static feature slots are appended to its input.
    Softmax {
        output_units: usize,
    },
}

impl LayerSpec {
    pub fn kind(&self) -> LayerKind {
        match self {
            LayerSpec::Convolution1D { .. } => LayerKind::Convolution1D,
            LayerSpec::MaxPool1D { .. } => LayerKind::MaxPool1D,
            LayerSpec::ReLU => LayerKind::ReLU,
            LayerSpec::FullyConnected { .. } => LayerKind::FullyConnected,
            LayerSpec::Softmax { .. } => LayerKind::Softmax,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self {
            LayerSpec::Convolution1D {
                kernel_widths,
                feature_maps,
            } => {
                !kernel_widths.is_empty()
                    && kernel_widths.iter().all(|&k| k >= 1)
                    && *feature_maps >= 1
            }
            LayerSpec::MaxPool1D { pool_width } => *pool_width >= 1,
            LayerSpec::ReLU => true,
            LayerSpec::FullyConnected { output_units } | LayerSpec::Softmax { output_units } => {
                *output_units >= 1
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::config(format!(
                "invalid layer specification {self:?}"
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Layer {
    spec: LayerSpec,
    /// Conv: (kernel, bias) per width. Dense/Softmax: weights then bias.
    params: Vec<Tensor>,
}

/// Shape of an activation flowing between layers.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Geometry {
    Branches(Vec<(usize, usize)>),
    Flat(usize),
}

impl Geometry {
    fn merged(&self) -> (usize, usize) {
        match self {
            Geometry::Branches(b) => (
                b.iter().map(|&(r, _)| r).min().unwrap_or(0),
                b.iter().map(|&(_, c)| c).sum(),
            ),
            Geometry::Flat(n) => (1, *n),
        }
    }

    fn flat_len(&self) -> usize {
        let (r, c) = self.merged();
        r * c
    }
}

#[derive(Debug, Clone)]
enum Activation {
    Branches(Vec<Tensor>),
    Flat(Tensor),
}

/// Cached intermediate values of one forward pass.
#[derive(Debug, Clone)]
pub struct Trace {
    /// Input to every layer.
    inputs: Vec<Activation>,
    /// Merged input matrix of every convolution layer.
    merged: Vec<Option<Tensor>>,
    /// Argmax rows of every pooling layer, per branch.
    argmax: Vec<Option<Vec<Vec<usize>>>>,
    statics: Vec<f64>,
    logits: Tensor,
    probs: Tensor,
}

impl Trace {
    pub fn logits(&self) -> &Tensor {
        &self.logits
    }

    pub fn probs(&self) -> &Tensor {
        &self.probs
    }

    /// Input of the softmax layer excluding static slots: the activations of
    /// the last hidden layer.
    pub fn hidden(&self) -> Vec<f64> {
        flatten(self.inputs.last().expect("network has layers")).into_data()
    }
}

/// Gradients of the loss with respect to every parameter (in
/// [`Network::params`] order) and the input matrix.
#[derive(Debug, Clone)]
pub struct Gradients {
    pub params: Vec<Tensor>,
    pub input: Tensor,
    pub loss: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    layers: Vec<Layer>,
    input_width: usize,
    embedding_dim: usize,
    static_width: usize,
}

impl Network {
    /// Materialises `specs` for inputs of `input_width` rows by
    /// `embedding_dim` columns, with `static_width` constant feature slots
    /// appended to the softmax input. Weights are Glorot-uniform, biases zero.
    pub fn new<R: Rng>(
        specs: &[LayerSpec],
        input_width: usize,
        embedding_dim: usize,
        static_width: usize,
        rng: &mut R,
    ) -> Result<Self> {
        let geometry = Self::plan(specs, input_width, embedding_dim, static_width)?;
        let mut layers = Vec::with_capacity(specs.len());
        for (spec, input) in specs.iter().zip(&geometry) {
            let params = match spec {
                LayerSpec::Convolution1D {
                    kernel_widths,
                    feature_maps,
                } => {
                    let d_in = input.merged().1;
                    let mut p = Vec::new();
                    for &k in kernel_widths {
                        p.push(glorot(
                            &[*feature_maps, k, d_in],
                            k * d_in,
                            k * feature_maps,
                            rng,
                        ));
                        p.push(Tensor::zeros(&[*feature_maps]));
                    }
                    p
                }
                LayerSpec::FullyConnected { output_units } => {
                    let m = input.flat_len();
                    vec![
                        glorot(&[*output_units, m], m, *output_units, rng),
                        Tensor::zeros(&[*output_units]),
                    ]
                }
                LayerSpec::Softmax { output_units } => {
                    let m = input.flat_len() + static_width;
                    vec![
                        glorot(&[*output_units, m], m, *output_units, rng),
                        Tensor::zeros(&[*output_units]),
                    ]
                }
                LayerSpec::MaxPool1D { .. } | LayerSpec::ReLU => Vec::new(),
            };
            layers.push(Layer {
                spec: spec.clone(),
                params,
            });
        }
        Ok(Self {
            layers,
            input_width,
            embedding_dim,
            static_width,
        })
    }

    /// Rebuilds a network from its specification and a parameter list in
    /// [`Network::params`] order.
    pub fn from_parts(
        specs: &[LayerSpec],
        input_width: usize,
        embedding_dim: usize,
        static_width: usize,
        params: Vec<Tensor>,
    ) -> Result<Self> {
        let mut rng = rand::rngs::mock::StepRng::new(0, 0);
        let mut net = Self::new(specs, input_width, embedding_dim, static_width, &mut rng)?;
        let expected: Vec<Vec<usize>> = net.params().iter().map(|t| t.shape().to_vec()).collect();
        if expected.len() != params.len()
            || expected
                .iter()
                .zip(&params)
                .any(|(s, p)| s.as_slice() != p.shape())
        {
            return Err(Error::shape(format!(
                "parameter list does not match architecture: expected {expected:?}"
            )));
        }
        let mut it = params.into_iter();
        for layer in &mut net.layers {
            for p in &mut layer.params {
                *p = it.next().expect("counted above");
            }
        }
        Ok(net)
    }

    /// Input geometry of every layer; validates the stack.
    fn plan(
        specs: &[LayerSpec],
        input_width: usize,
        embedding_dim: usize,
        static_width: usize,
    ) -> Result<Vec<Geometry>> {
        if input_width == 0 || embedding_dim == 0 {
            return Err(Error::config(
                "input width and embedding dimension must be positive",
            ));
        }
        if specs.is_empty() {
            return Err(Error::config("network needs at least one layer"));
        }
        let mut geom = Geometry::Branches(vec![(input_width, embedding_dim)]);
        let mut plan = Vec::with_capacity(specs.len());
        for (i, spec) in specs.iter().enumerate() {
            spec.validate()?;
            let is_last = i + 1 == specs.len();
            if matches!(spec, LayerSpec::Softmax { .. }) != is_last {
                return Err(Error::config(format!(
                    "layer {i} ({:?}): the softmax layer must be last and unique",
                    spec.kind()
                )));
            }
            plan.push(geom.clone());
            geom = match spec {
                LayerSpec::Convolution1D {
                    kernel_widths,
                    feature_maps,
                } => {
                    let Geometry::Branches(_) = geom else {
                        return Err(Error::config(format!(
                            "layer {i} (Convolution1D) cannot follow a dense layer"
                        )));
                    };
                    let (rows, _) = geom.merged();
                    let mut out = Vec::new();
                    for &k in kernel_widths {
                        if rows < k {
                            return Err(Error::config(format!(
                                "layer {i} (Convolution1D, kernel width {k}) receives only {rows} positions"
                            )));
                        }
                        out.push((rows - k + 1, *feature_maps));
                    }
                    Geometry::Branches(out)
                }
                LayerSpec::MaxPool1D { pool_width } => match geom {
                    Geometry::Branches(b) => Geometry::Branches(
                        b.iter()
                            .map(|&(r, c)| (r.div_ceil(*pool_width), c))
                            .collect(),
                    ),
                    Geometry::Flat(_) => {
                        return Err(Error::config(format!(
                            "layer {i} (MaxPool1D) cannot follow a dense layer"
                        )))
                    }
                },
                LayerSpec::ReLU => geom,
                LayerSpec::FullyConnected { output_units }
                | LayerSpec::Softmax { output_units } => Geometry::Flat(*output_units),
            };
        }
        let _ = static_width;
        Ok(plan)
    }

    pub fn specs(&self) -> Vec<LayerSpec> {
        self.layers.iter().map(|l| l.spec.clone()).collect()
    }

    pub fn input_width(&self) -> usize {
        self.input_width
    }

    pub fn embedding_dim(&self) -> usize {
        self.embedding_dim
    }

    pub fn static_width(&self) -> usize {
        self.static_width
    }

    pub fn classes(&self) -> usize {
        match self.layers.last().map(|l| &l.spec) {
            Some(LayerSpec::Softmax { output_units }) => *output_units,
            _ => unreachable!("validated at construction"),
        }
    }

    /// Width of the activations feeding the softmax layer (without static slots).
    pub fn hidden_width(&self) -> usize {
        let last = self.layers.last().expect("non-empty");
        last.params[0].cols() - self.static_width
    }

    pub fn params(&self) -> Vec<&Tensor> {
        self.layers.iter().flat_map(|l| l.params.iter()).collect()
    }

    pub fn params_mut(&mut self) -> Vec<&mut Tensor> {
        self.layers
            .iter_mut()
            .flat_map(|l| l.params.iter_mut())
            .collect()
    }

    pub fn param_count(&self) -> usize {
        self.params().iter().map(|t| t.len()).sum()
    }

    /// Runs the network on an `input_width x embedding_dim` matrix.
    pub fn forward(&self, input: &Tensor, statics: &[f64]) -> Result<Trace> {
        if input.shape() != [self.input_width, self.embedding_dim] {
            return Err(Error::shape(format!(
                "network expects input {:?}, got {:?}",
                [self.input_width, self.embedding_dim],
                input.shape()
            )));
        }
        if statics.len() != self.static_width {
            return Err(Error::shape(format!(
                "network expects {} static features, got {}",
                self.static_width,
                statics.len()
            )));
        }
        let n = self.layers.len();
        let mut inputs = Vec::with_capacity(n);
        let mut merged_cache = Vec::with_capacity(n);
        let mut argmax_cache = Vec::with_capacity(n);
        let mut act = Activation::Branches(vec![input.clone()]);
        let mut logits = None;
        for layer in &self.layers {
            let mut merged_here = None;
            let mut argmax_here = None;
            let next = match (&layer.spec, &act) {
                (LayerSpec::Convolution1D { kernel_widths, .. }, Activation::Branches(b)) => {
                    let x = merge(b)?;
                    let outs = (0..kernel_widths.len())
                        .map(|w| {
                            ops::conv1d_forward(&x, &layer.params[2 * w], &layer.params[2 * w + 1])
                        })
                        .collect::<Result<Vec<_>>>()?;
                    merged_here = Some(x);
                    Activation::Branches(outs)
                }
                (LayerSpec::MaxPool1D { pool_width }, Activation::Branches(b)) => {
                    let mut outs = Vec::with_capacity(b.len());
                    let mut args = Vec::with_capacity(b.len());
                    for t in b {
                        let (o, a) = ops::maxpool1d(t, *pool_width)?;
                        outs.push(o);
                        args.push(a);
                    }
                    argmax_here = Some(args);
                    Activation::Branches(outs)
                }
                (LayerSpec::ReLU, Activation::Branches(b)) => {
                    Activation::Branches(b.iter().map(ops::relu).collect())
                }
                (LayerSpec::ReLU, Activation::Flat(t)) => Activation::Flat(ops::relu(t)),
                (LayerSpec::FullyConnected { .. }, a) => Activation::Flat(
                    ops::fully_connected_forward(&flatten(a), &layer.params[0], &layer.params[1])?,
                ),
                (LayerSpec::Softmax { .. }, a) => {
                    let mut x = flatten(a).into_data();
                    x.extend_from_slice(statics);
                    let z = ops::fully_connected_forward(
                        &Tensor::from_vec(x),
                        &layer.params[0],
                        &layer.params[1],
                    )?;
                    logits = Some(z.clone());
                    Activation::Flat(z)
                }
                (spec, _) => {
                    return Err(Error::shape(format!(
                        "{:?} received a flat activation",
                        spec.kind()
                    )))
                }
            };
            inputs.push(std::mem::replace(&mut act, next));
            merged_cache.push(merged_here);
            argmax_cache.push(argmax_here);
        }
        let logits = logits.expect("softmax layer is last");
        let probs = ops::softmax(&logits);
        Ok(Trace {
            inputs,
            merged: merged_cache,
            argmax: argmax_cache,
            statics: statics.to_vec(),
            logits,
            probs,
        })
    }

    /// Exact gradients of the cross-entropy loss for class `gold`.
    pub fn backward(&self, trace: &Trace, gold: usize) -> Result<Gradients> {
        let (probs, loss) = ops::softmax_cross_entropy(&trace.logits, gold)?;
        let mut d_logits = probs;
        d_logits.data_mut()[gold] -= 1.0;

        let mut layer_grads: Vec<Vec<Tensor>> = vec![Vec::new(); self.layers.len()];
        let mut grad = Activation::Flat(d_logits);
        for (i, layer) in self.layers.iter().enumerate().rev() {
            let input = &trace.inputs[i];
            grad = match (&layer.spec, grad) {
                (LayerSpec::Softmax { .. }, Activation::Flat(g)) => {
                    let mut x = flatten(input).into_data();
                    x.extend_from_slice(&trace.statics);
                    let (dx, dw, db) =
                        ops::fully_connected_backward(&Tensor::from_vec(x), &layer.params[0], &g);
                    layer_grads[i] = vec![dw, db];
                    let hidden = dx.len() - self.static_width;
                    unflatten(input, &dx.data()[..hidden])
                }
                (LayerSpec::FullyConnected { .. }, Activation::Flat(g)) => {
                    let x = flatten(input);
                    let (dx, dw, db) = ops::fully_connected_backward(&x, &layer.params[0], &g);
                    layer_grads[i] = vec![dw, db];
                    unflatten(input, dx.data())
                }
                (LayerSpec::ReLU, Activation::Flat(g)) => match input {
                    Activation::Flat(x) => Activation::Flat(ops::relu_backward(x, &g)),
                    Activation::Branches(_) => unreachable!("relu preserves geometry"),
                },
                (LayerSpec::ReLU, Activation::Branches(gs)) => match input {
                    Activation::Branches(xs) => Activation::Branches(
                        xs.iter()
                            .zip(&gs)
                            .map(|(x, g)| ops::relu_backward(x, g))
                            .collect(),
                    ),
                    Activation::Flat(_) => unreachable!("relu preserves geometry"),
                },
                (LayerSpec::MaxPool1D { .. }, Activation::Branches(gs)) => {
                    let Activation::Branches(xs) = input else {
                        unreachable!("pool input is sequential")
                    };
                    let args = trace.argmax[i].as_ref().expect("pool argmax cached");
                    Activation::Branches(
                        gs.iter()
                            .zip(args)
                            .zip(xs)
                            .map(|((g, a), x)| ops::maxpool1d_backward(g, a, x.rows()))
                            .collect(),
                    )
                }
                (LayerSpec::Convolution1D { kernel_widths, .. }, Activation::Branches(gs)) => {
                    let x = trace.merged[i].as_ref().expect("conv input cached");
                    let mut dx = Tensor::zeros(x.shape());
                    let mut grads = Vec::with_capacity(2 * kernel_widths.len());
                    for (w, g) in gs.iter().enumerate() {
                        let (gx, gk, gb) = ops::conv1d_backward(x, &layer.params[2 * w], g)?;
                        dx.axpy(1.0, &gx);
                        grads.push(gk);
                        grads.push(gb);
                    }
                    layer_grads[i] = grads;
                    let Activation::Branches(xs) = input else {
                        unreachable!("conv input is sequential")
                    };
                    Activation::Branches(split(&dx, xs))
                }
                (spec, _) => {
                    return Err(Error::shape(format!(
                        "gradient geometry mismatch at {:?}",
                        spec.kind()
                    )))
                }
            };
        }
        let input = match grad {
            Activation::Branches(mut b) if b.len() == 1 => b.pop().expect("one branch"),
            _ => unreachable!("network input is a single sequence"),
        };
        Ok(Gradients {
            params: layer_grads.into_iter().flatten().collect(),
            input,
            loss,
        })
    }

    /// ReLU on/off states and pooling argmax rows of a forward pass. Two
    /// passes with equal patterns lie on the same linear piece of the network.
    pub fn activation_pattern(&self, trace: &Trace) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, layer) in self.layers.iter().enumerate() {
            match (&layer.spec, &trace.inputs[i]) {
                (LayerSpec::ReLU, Activation::Branches(b)) => {
                    for t in b {
                        out.extend(t.data().iter().map(|&v| usize::from(v > 0.0)));
                    }
                }
                (LayerSpec::ReLU, Activation::Flat(t)) => {
                    out.extend(t.data().iter().map(|&v| usize::from(v > 0.0)))
                }
                (LayerSpec::MaxPool1D { .. }, _) => {
                    for rows in trace.argmax[i].iter().flatten() {
                        out.extend(rows);
                    }
                }
                _ => {}
            }
        }
        out
    }

    /// Loss for class `gold`; used by finite-difference checks.
    pub fn loss(&self, input: &Tensor, statics: &[f64], gold: usize) -> Result<f64> {
        let trace = self.forward(input, statics)?;
        Ok(ops::softmax_cross_entropy(&trace.logits, gold)?.1)
    }
}

fn glorot<R: Rng>(shape: &[usize], fan_in: usize, fan_out: usize, rng: &mut R) -> Tensor {
    let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
    let mut t = Tensor::zeros(shape);
    t.data_mut()
        .iter_mut()
        .for_each(|v| *v = rng.gen_range(-limit..=limit));
    t
}

/// Truncates branches to the shortest one and concatenates their columns.
fn merge(branches: &[Tensor]) -> Result<Tensor> {
    if branches.len() == 1 {
        return Ok(branches[0].clone());
    }
    let rows = branches.iter().map(Tensor::rows).min().unwrap_or(0);
    let cols: usize = branches.iter().map(Tensor::cols).sum();
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for b in branches {
            data.extend_from_slice(b.row(r));
        }
    }
    Tensor::new(vec![rows, cols], data)
}

/// Adjoint of [`merge`]: routes column blocks back to their branches and
/// zero-fills the truncated rows.
fn split(grad: &Tensor, branches: &[Tensor]) -> Vec<Tensor> {
    if branches.len() == 1 {
        return vec![grad.clone()];
    }
    let mut out: Vec<Tensor> = branches.iter().map(|b| Tensor::zeros(b.shape())).collect();
    for r in 0..grad.rows() {
        let row = grad.row(r);
        let mut offset = 0;
        for o in &mut out {
            let c = o.cols();
            o.row_mut(r).copy_from_slice(&row[offset..offset + c]);
            offset += c;
        }
    }
    out
}

fn flatten(a: &Activation) -> Tensor {
    match a {
        Activation::Flat(t) => t.clone(),
        Activation::Branches(b) => {
            let m = merge(b).expect("branch shapes are consistent");
            let len = m.len();
            m.reshape(vec![len]).expect("same length")
        }
    }
}

fn unflatten(like: &Activation, grad: &[f64]) -> Activation {
    match like {
        Activation::Flat(_) => Activation::Flat(Tensor::from_vec(grad.to_vec())),
        Activation::Branches(b) => {
            let rows = b.iter().map(Tensor::rows).min().unwrap_or(0);
            let cols: usize = b.iter().map(Tensor::cols).sum();
            let g = Tensor::new(vec![rows, cols], grad.to_vec()).expect("flattened merge shape");
            Activation::Branches(split(&g, b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn small_specs() -> Vec<LayerSpec> {
        vec![
            LayerSpec::Convolution1D {
                kernel_widths: vec![2, 3],
                feature_maps: 3,
            },
            LayerSpec::ReLU,
            LayerSpec::MaxPool1D { pool_width: 2 },
            LayerSpec::FullyConnected { output_units: 4 },
            LayerSpec::ReLU,
            LayerSpec::Softmax { output_units: 2 },
        ]
    }

    #[test]
    fn merge_truncates_and_concatenates() {
        let a = Tensor::from_rows(&[vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        let b = Tensor::from_rows(&[vec![4.0, 5.0], vec![6.0, 7.0]]).unwrap();
        let m = merge(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(m.shape(), &[2, 3]);
        assert_eq!(m.data(), &[1.0, 4.0, 5.0, 2.0, 6.0, 7.0]);
        let parts = split(&m, &[a, b]);
        assert_eq!(parts[0].data(), &[1.0, 2.0, 0.0]);
        assert_eq!(parts[1].data(), &[4.0, 5.0, 6.0, 7.0]);
    }

    #[test]
    fn plan_rejects_short_inputs_naming_layer() {
        let err =
            Network::new(&small_specs(), 2, 4, 0, &mut ChaCha8Rng::seed_from_u64(0)).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("layer 0") && msg.contains("kernel width 3"),
            "{msg}"
        );
    }

    #[test]
    fn softmax_must_be_last() {
        let specs = vec![LayerSpec::Softmax { output_units: 2 }, LayerSpec::ReLU];
        assert!(Network::new(&specs, 4, 2, 0, &mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn parameter_count_is_architectural() {
        let a = Network::new(&small_specs(), 7, 4, 0, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let b = Network::new(&small_specs(), 7, 4, 0, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(a.param_count(), b.param_count());
        // widths 2,3 on 7 rows -> 6,5 -> pooled 3,3 -> 3x6 = 18 -> FC 4 -> 2
        let expected = (3 * 2 * 4 + 3) + (3 * 3 * 4 + 3) + (4 * 18 + 4) + (2 * 4 + 2);
        assert_eq!(a.param_count(), expected);
        assert_eq!(a.hidden_width(), 4);
    }

    #[test]
    fn forward_probs_on_simplex() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let net = Network::new(&small_specs(), 7, 4, 0, &mut rng).unwrap();
        let x = glorot(&[7, 4], 1, 1, &mut rng);
        let trace = net.forward(&x, &[]).unwrap();
        let p = trace.probs().data();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(p.iter().all(|&v| (0.0..=1.0).contains(&v)));
        assert_eq!(trace.hidden().len(), 4);
    }

    #[test]
    fn from_parts_round_trips() {
        let net = Network::new(&small_specs(), 7, 4, 1, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let params = net.params().into_iter().cloned().collect();
        let rebuilt = Network::from_parts(&small_specs(), 7, 4, 1, params).unwrap();
        assert_eq!(net, rebuilt);
        assert!(Network::from_parts(&small_specs(), 7, 4, 1, vec![]).is_err());
    }
}
