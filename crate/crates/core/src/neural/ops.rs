//! Forward and backward kernels for the five layer kinds.
//!
//! Matrices are row-major with sequence positions as rows and feature
//! channels as columns.

use super::tensor::{axpy, dot, Tensor};
use crate::error::{Error, Result};

/// Valid (unpadded) 1-D convolution over the row axis.
///
/// `input` is `L x d_in`, `kernels` is `n_h x k x d_in`, `bias` is `n_h`.
/// Output is `(L - k + 1) x n_h`.
pub fn conv1d_forward(input: &Tensor, kernels: &Tensor, bias: &Tensor) -> Result<Tensor> {
    let (len, d_in) = matrix_dims(input, "conv1d input")?;
    let (n_h, k) = conv_kernel_dims(kernels, d_in)?;
    if bias.len() != n_h {
        return Err(Error::shape(format!(
            "conv1d bias has {} entries for {n_h} feature maps",
            bias.len()
        )));
    }
    if len < k {
        return Err(Error::Degenerate(format!(
            "sequence length L={len} is shorter than kernel width k={k}"
        )));
    }
    let out_len = len - k + 1;
    let window = k * d_in;
    let x = input.data();
    let w = kernels.data();
    let b = bias.data();
    let mut out = vec![0.0; out_len * n_h];
    for j in 0..out_len {
        let slice = &x[j * d_in..j * d_in + window];
        let row = &mut out[j * n_h..(j + 1) * n_h];
        for (h, o) in row.iter_mut().enumerate() {
            *o = b[h] + dot(&w[h * window..(h + 1) * window], slice);
        }
    }
    Tensor::new(vec![out_len, n_h], out)
}

/// Gradients of a convolution: `(d_input, d_kernels, d_bias)`.
pub fn conv1d_backward(
    input: &Tensor,
    kernels: &Tensor,
    grad_out: &Tensor,
) -> Result<(Tensor, Tensor, Tensor)> {
    let (_, d_in) = matrix_dims(input, "conv1d input")?;
    let (n_h, k) = conv_kernel_dims(kernels, d_in)?;
    let (out_len, g_cols) = matrix_dims(grad_out, "conv1d output gradient")?;
    if g_cols != n_h || out_len + k - 1 != input.rows() {
        return Err(Error::shape(format!(
            "conv1d output gradient {:?} does not match input {:?} and kernels {:?}",
            grad_out.shape(),
            input.shape(),
            kernels.shape()
        )));
    }
    let window = k * d_in;
    let x = input.data();
    let w = kernels.data();
    let g = grad_out.data();
    let mut d_x = vec![0.0; x.len()];
    let mut d_w = vec![0.0; w.len()];
    let mut d_b = vec![0.0; n_h];
    for j in 0..out_len {
        let slice = &x[j * d_in..j * d_in + window];
        for h in 0..n_h {
            let gh = g[j * n_h + h];
            if gh == 0.0 {
                continue;
            }
            d_b[h] += gh;
            axpy(gh, slice, &mut d_w[h * window..(h + 1) * window]);
            axpy(
                gh,
                &w[h * window..(h + 1) * window],
                &mut d_x[j * d_in..j * d_in + window],
            );
        }
    }
    Ok((
        Tensor::new(input.shape().to_vec(), d_x)?,
        Tensor::new(kernels.shape().to_vec(), d_w)?,
        Tensor::new(vec![n_h], d_b)?,
    ))
}

/// Non-overlapping max pooling along rows; the last window may be short.
///
/// Returns the pooled map and, for every output cell, the source row that
/// produced it. Ties resolve to the lowest row.
pub fn maxpool1d(map: &Tensor, pool_width: usize) -> Result<(Tensor, Vec<usize>)> {
    if pool_width == 0 {
        return Err(Error::Precondition("pool width must be at least 1".into()));
    }
    if map.is_empty() || map.rank() != 2 {
        return Err(Error::Degenerate("cannot pool an empty map".into()));
    }
    let (len, feats) = (map.rows(), map.cols());
    let out_len = len.div_ceil(pool_width);
    let x = map.data();
    let mut out = vec![0.0; out_len * feats];
    let mut arg = vec![0usize; out_len * feats];
    for p in 0..out_len {
        let start = p * pool_width;
        let end = (start + pool_width).min(len);
        for f in 0..feats {
            let mut best_row = start;
            let mut best = x[start * feats + f];
            for r in start + 1..end {
                let v = x[r * feats + f];
                if v > best {
                    best = v;
                    best_row = r;
                }
            }
            out[p * feats + f] = best;
            arg[p * feats + f] = best_row;
        }
    }
    Ok((Tensor::new(vec![out_len, feats], out)?, arg))
}

pub fn maxpool1d_backward(grad_out: &Tensor, argmax: &[usize], input_rows: usize) -> Tensor {
    let feats = grad_out.cols();
    let mut d_x = Tensor::zeros(&[input_rows, feats]);
    let dx = d_x.data_mut();
    for (cell, (&g, &row)) in grad_out.data().iter().zip(argmax).enumerate() {
        dx[row * feats + cell % feats] += g;
    }
    d_x
}

pub fn relu(x: &Tensor) -> Tensor {
    let mut out = x.clone();
    out.data_mut().iter_mut().for_each(|v| *v = v.max(0.0));
    out
}

/// Subgradient at zero is taken as zero.
pub fn relu_backward(input: &Tensor, grad_out: &Tensor) -> Tensor {
    let mut d = grad_out.clone();
    for (g, &x) in d.data_mut().iter_mut().zip(input.data()) {
        if x <= 0.0 {
            *g = 0.0;
        }
    }
    d
}

/// `weights · input + bias` with `weights` of shape `u x m`.
pub fn fully_connected_forward(input: &Tensor, weights: &Tensor, bias: &Tensor) -> Result<Tensor> {
    let (units, inner) = matrix_dims(weights, "fully-connected weights")?;
    if inner != input.len() || bias.len() != units {
        return Err(Error::shape(format!(
            "fully-connected weights {:?} and bias {:?} incompatible with input {:?}",
            weights.shape(),
            bias.shape(),
            input.shape()
        )));
    }
    let x = input.data();
    let out = (0..units)
        .map(|u| bias.data()[u] + dot(weights.row(u), x))
        .collect();
    Ok(Tensor::from_vec(out))
}

/// Gradients of an affine layer: `(d_input, d_weights, d_bias)`.
pub fn fully_connected_backward(
    input: &Tensor,
    weights: &Tensor,
    grad_out: &Tensor,
) -> (Tensor, Tensor, Tensor) {
    let inner = weights.cols();
    let x = input.data();
    let mut d_x = vec![0.0; inner];
    let mut d_w = Tensor::zeros(weights.shape());
    for (u, &g) in grad_out.data().iter().enumerate() {
        if g == 0.0 {
            continue;
        }
        axpy(g, x, d_w.row_mut(u));
        axpy(g, weights.row(u), &mut d_x);
    }
    (
        Tensor::from_vec(d_x)
            .reshape(input.shape().to_vec())
            .expect("input shape preserved"),
        d_w,
        grad_out.clone(),
    )
}

/// Numerically stable softmax followed by the negative log-likelihood of `gold`.
pub fn softmax_cross_entropy(logits: &Tensor, gold: usize) -> Result<(Tensor, f64)> {
    let classes = logits.len();
    if gold >= classes {
        return Err(Error::Label(format!(
            "gold class {gold} outside 0..{classes}"
        )));
    }
    let z = logits.data();
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = z.iter().map(|v| (v - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    let probs: Vec<f64> = exps.iter().map(|e| e / sum).collect();
    let loss = sum.ln() - (z[gold] - max);
    Ok((Tensor::from_vec(probs), loss))
}

pub fn softmax(logits: &Tensor) -> Tensor {
    let z = logits.data();
    let max = z.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = z.iter().map(|v| (v - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    Tensor::from_vec(exps.into_iter().map(|e| e / sum).collect())
}

fn matrix_dims(t: &Tensor, what: &str) -> Result<(usize, usize)> {
    if t.rank() != 2 {
        return Err(Error::shape(format!(
            "{what} must be a matrix, got shape {:?}",
            t.shape()
        )));
    }
    Ok((t.shape()[0], t.shape()[1]))
}

fn conv_kernel_dims(kernels: &Tensor, d_in: usize) -> Result<(usize, usize)> {
    match kernels.shape() {
        &[n_h, k, d] if d == d_in => Ok((n_h, k)),
        other => Err(Error::shape(format!(
            "conv1d kernels {other:?} incompatible with input width {d_in}"
        ))),
    }
}
