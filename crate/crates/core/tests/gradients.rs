use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sarcnn::model_zoo::{build_model, ModelConfig, ModelName, Trait, OCEAN};
use sarcnn::neural::{gradient_check, LayerKind, LayerSpec, Network, Sgd, Tensor};

const EPS: f64 = 1e-5;

/// Entries with magnitude in [0.1, 1] and random sign, so no input sits on
/// a ReLU kink.
fn input(rows: usize, cols: usize, seed: u64) -> Tensor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows * cols)
        .map(|_| {
            let v: f64 = rng.gen_range(0.1..1.0);
            if rng.gen_bool(0.5) {
                v
            } else {
                -v
            }
        })
        .collect();
    Tensor::new(vec![rows, cols], data).unwrap()
}

fn check(specs: &[LayerSpec], rows: usize, cols: usize, statics: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let net = Network::new(specs, rows, cols, statics, &mut rng).unwrap();
    let x = input(rows, cols, seed + 100);
    let st: Vec<f64> = (0..statics).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let classes = net.classes();
    let mut worst = 0.0f64;
    for gold in 0..classes {
        let r = gradient_check(&net, &x, &st, gold, EPS, seed).unwrap();
        worst = worst.max(r.max_relative_error);
    }
    worst
}

#[test]
fn each_layer_kind_in_isolation() {
    let softmax = LayerSpec::Softmax { output_units: 3 };
    let cases = [
        (LayerKind::Softmax, vec![softmax.clone()]),
        (
            LayerKind::FullyConnected,
            vec![
                LayerSpec::FullyConnected { output_units: 5 },
                softmax.clone(),
            ],
        ),
        (LayerKind::ReLU, vec![LayerSpec::ReLU, softmax.clone()]),
        (
            LayerKind::MaxPool1D,
            vec![LayerSpec::MaxPool1D { pool_width: 3 }, softmax.clone()],
        ),
        (
            LayerKind::Convolution1D,
            vec![
                LayerSpec::Convolution1D {
                    kernel_widths: vec![2, 3],
                    feature_maps: 4,
                },
                softmax.clone(),
            ],
        ),
    ];
    for (kind, specs) in cases {
        let err = check(&specs, 7, 5, 0, 11);
        assert!(err < 1e-4, "{kind:?}: {err:e}");
    }
}

#[test]
fn full_presets() {
    let mut names = vec![
        ModelName::Sentiment,
        ModelName::Emotion,
        ModelName::Baseline,
    ];
    names.extend(OCEAN.map(ModelName::Personality));
    for (i, name) in names.into_iter().enumerate() {
        let cfg = ModelConfig::preset(name);
        let err = check(&cfg.layer_specs(), 20, 300, 0, 40 + i as u64);
        assert!(err < 1e-4, "{name}: {err:e}");
    }
}

#[test]
fn augmented_baseline_with_static_slots() {
    let cfg = ModelConfig::preset(ModelName::Baseline);
    let err = check(&cfg.layer_specs(), 12, 16, 1000, 5);
    assert!(err < 1e-4, "{err:e}");
}

#[test]
fn affine_softmax_is_near_exact() {
    let specs = [LayerSpec::Softmax { output_units: 2 }];
    let err = check(&specs, 1, 4, 0, 3);
    assert!(err < 1e-8, "{err:e}");
    let specs = [
        LayerSpec::FullyConnected { output_units: 3 },
        LayerSpec::Softmax { output_units: 2 },
    ];
    let err = check(&specs, 2, 3, 0, 4);
    assert!(err < 1e-6, "{err:e}");
}

#[test]
fn confident_prediction_has_vanishing_gradients() {
    let specs = [LayerSpec::Softmax { output_units: 2 }];
    let params = vec![
        Tensor::new(vec![2, 2], vec![100.0, 0.0, -100.0, 0.0]).unwrap(),
        Tensor::zeros(&[2]),
    ];
    let net = Network::from_parts(&specs, 1, 2, 0, params).unwrap();
    let x = Tensor::new(vec![1, 2], vec![1.0, 0.5]).unwrap();
    let g = net.backward(&net.forward(&x, &[]).unwrap(), 0).unwrap();
    assert!(g.loss < 1e-80);
    assert!(g.params.iter().all(|t| t.max_abs() < 1e-80));
}

#[test]
fn separable_toy_set_trains_below_loss_threshold() {
    let specs = [
        LayerSpec::FullyConnected { output_units: 8 },
        LayerSpec::ReLU,
        LayerSpec::Softmax { output_units: 2 },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let data: Vec<(Tensor, usize)> = (0..20)
        .map(|i| {
            let label = i % 2;
            let centre = if label == 1 { 1.0 } else { -1.0 };
            let x: Vec<f64> = (0..4).map(|_| centre + rng.gen_range(-0.5..0.5)).collect();
            (Tensor::new(vec![1, 4], x).unwrap(), label)
        })
        .collect();
    let mut net = Network::new(&specs, 1, 4, 0, &mut rng).unwrap();
    let mut sgd = Sgd::new(0.05, 0.9).unwrap();
    for _ in 0..200 {
        for (x, y) in &data {
            let g = net.backward(&net.forward(x, &[]).unwrap(), *y).unwrap();
            sgd.step(&mut net.params_mut(), &g.params).unwrap();
        }
    }
    let loss: f64 = data
        .iter()
        .map(|(x, y)| net.loss(x, &[], *y).unwrap())
        .sum::<f64>()
        / 20.0;
    assert!(loss < 0.05, "{loss}");
}

#[test]
fn same_seed_same_parameters() {
    let cfg = ModelConfig::preset(ModelName::Personality(Trait::Neuroticism));
    let a = build_model(&cfg, 10, 8, 0, 77).unwrap();
    let b = build_model(&cfg, 10, 8, 0, 77).unwrap();
    let c = build_model(&cfg, 10, 8, 0, 78).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}
