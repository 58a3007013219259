//! Minimal double-precision network engine: 1-D convolution, max pooling,
//! ReLU, dense and softmax layers with exact backpropagation.

pub mod checkpoint;
pub mod gradcheck;
pub mod network;
pub mod ops;
pub mod optim;
pub mod tensor;

pub use checkpoint::{Container, Section};
pub use gradcheck::{gradient_check, GradientReport};
pub use network::{Gradients, LayerKind, LayerSpec, Network, Trace};
pub use optim::{Sgd, SgdConfig};
pub use tensor::Tensor;
