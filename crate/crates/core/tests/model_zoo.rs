use sarcnn::model_zoo::registry::{from_container, to_container};
use sarcnn::model_zoo::*;
use sarcnn::text::{parse_corpus, TokenizedTweet};
use sarcnn::Error;

fn options(dim: usize, epochs: usize) -> TrainOptions {
    let mut o = TrainOptions::default();
    o.embedding_dim = dim;
    o.sgd.max_epochs = epochs;
    o.sgd.batch_size = 10;
    o
}

fn toy_sentiment() -> LabeledDataset {
    let words = [
        ["awful", "terrible", "horrid", "dreadful", "bleak"],
        ["table", "chair", "window", "lamp", "corner"],
        ["lovely", "superb", "great", "wonderful", "sunny"],
    ];
    let mut text = String::new();
    for i in 0..30 {
        let class = i % 3;
        let w = &words[class];
        let line = format!(
            "{}\tthe {} day was {} and {} today\n",
            class,
            w[i % 5],
            w[(i + 2) % 5],
            w[(i / 3) % 5]
        );
        text.push_str(&line);
    }
    LabeledDataset::from_records(
        &parse_corpus(&text).unwrap(),
        &ModelName::Sentiment.classes(),
    )
    .unwrap()
}

fn personality_models(dim: usize) -> Vec<TrainedModel> {
    let recs = parse_corpus("present\tcurious bold ideas\nabsent\tsame old routine\npresent\tnew art every day\nabsent\tno change please\n").unwrap();
    OCEAN
        .iter()
        .map(|&t| {
            let name = ModelName::Personality(t);
            let ds = LabeledDataset::from_records(&recs, &name.classes()).unwrap();
            train_model(&ModelConfig::preset(name), &ds, &options(dim, 2)).unwrap()
        })
        .collect()
}

#[test]
fn preset_widths() {
    let s = build_model(&ModelConfig::preset(ModelName::Sentiment), 50, 300, 0, 1).unwrap();
    assert_eq!(s.hidden_width(), 100);
    assert_eq!(s.classes(), 3);
    let e = build_model(&ModelConfig::preset(ModelName::Emotion), 20, 8, 0, 1).unwrap();
    assert_eq!((e.hidden_width(), e.classes()), (150, 6));
    let p = build_model(
        &ModelConfig::preset(ModelName::Personality(Trait::Openness)),
        20,
        8,
        0,
        1,
    )
    .unwrap();
    assert_eq!((p.hidden_width(), p.classes()), (150, 2));
    let b = build_model(&ModelConfig::preset(ModelName::Baseline), 20, 8, 0, 1).unwrap();
    assert_eq!((b.hidden_width(), b.classes()), (100, 2));
}

#[test]
fn too_short_window_is_config_error() {
    let err = build_model(&ModelConfig::preset(ModelName::Sentiment), 2, 8, 0, 1).unwrap_err();
    assert!(matches!(err, Error::Config(_)), "{err}");
}

#[test]
fn toy_corpus_overfits_and_classifies() {
    let ds = toy_sentiment();
    let model = train_model(
        &ModelConfig::preset(ModelName::Sentiment),
        &ds,
        &options(16, 200),
    )
    .unwrap();
    let correct = ds
        .examples
        .iter()
        .filter(|e| model.predict(&e.tokens, &[]).unwrap().0 == e.label)
        .count();
    assert!(correct as f64 / ds.len() as f64 >= 0.95, "{correct}/30");
    for e in &ds.examples {
        let (_, probs) = classify(
            &model,
            &TokenizedTweet {
                tokens: e.tokens.clone(),
                ..TokenizedTweet::new("")
            },
        )
        .unwrap();
        assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(probs.iter().all(|p| (0.0..=1.0).contains(p)));
    }
}

#[test]
fn seven_labels_do_not_fit_emotion() {
    let recs = parse_corpus("a\tx\nb\tx\nc\tx\nd\tx\ne\tx\nf\tx\ng\tx\n").unwrap();
    let ds = LabeledDataset::from_records(&recs, &["a", "b", "c", "d", "e", "f", "g"]).unwrap();
    let err = train_model(
        &ModelConfig::preset(ModelName::Emotion),
        &ds,
        &options(4, 1),
    )
    .unwrap_err();
    assert!(
        matches!(err, Error::Data(_) | Error::DataLine { .. }),
        "{err}"
    );
}

#[test]
fn unknown_label_reports_line() {
    let recs = parse_corpus("positive\tok\nelated\tyay\n").unwrap();
    let err = LabeledDataset::from_records(&recs, &ModelName::Sentiment.classes()).unwrap_err();
    assert!(matches!(err, Error::DataLine { line: 2, .. }), "{err}");
}

#[test]
fn same_seed_gives_identical_checkpoints() {
    let ds = toy_sentiment();
    let cfg = ModelConfig::preset(ModelName::Sentiment);
    let a = train_model(&cfg, &ds, &options(8, 3)).unwrap();
    let b = train_model(&cfg, &ds, &options(8, 3)).unwrap();
    assert_eq!(to_container(&a).to_bytes(), to_container(&b).to_bytes());
    let mut other = options(8, 3);
    other.sgd.seed = 2;
    let c = train_model(&cfg, &ds, &other).unwrap();
    assert_ne!(to_container(&a).to_bytes(), to_container(&c).to_bytes());
}

#[test]
fn extraction_dims_and_purity() {
    let ds = toy_sentiment();
    let s = train_model(
        &ModelConfig::preset(ModelName::Sentiment),
        &ds,
        &options(8, 1),
    )
    .unwrap();
    let tweet = TokenizedTweet::new("what a lovely day");
    let f = extract_features(&s, &tweet).unwrap();
    assert_eq!((f.values.len(), f.source), (100, FeatureSource::Sentiment));
    assert_eq!(f, extract_features(&s, &tweet).unwrap());
    let empty = extract_features(&s, &TokenizedTweet::new("")).unwrap();
    assert!(empty.values.iter().all(|v| v.is_finite()));

    let recs = parse_corpus(
        "joy\tyay\nfear\teek\nanger\tgrr\ndisgust\tew\nsadness\tsigh\nsurprise\twow\n",
    )
    .unwrap();
    let eds = LabeledDataset::from_records(&recs, &ModelName::Emotion.classes()).unwrap();
    let e = train_model(
        &ModelConfig::preset(ModelName::Emotion),
        &eds,
        &options(8, 1),
    )
    .unwrap();
    assert_eq!(extract_features(&e, &tweet).unwrap().values.len(), 150);
}

#[test]
fn personality_block_is_ordered_concatenation() {
    let models = personality_models(6);
    let tweet = TokenizedTweet::new("bold new ideas");
    let p = PersonalityModels::new(models.clone()).unwrap();
    let f = extract_personality_features(&p, &tweet).unwrap();
    assert_eq!(f.values.len(), 750);
    assert_eq!(f, extract_personality_features(&p, &tweet).unwrap());
    for (i, m) in models.iter().enumerate() {
        assert_eq!(
            &f.values[150 * i..150 * (i + 1)],
            m.features(&tweet.tokens).unwrap().as_slice()
        );
    }
    let mut permuted = models.clone();
    permuted.swap(0, 3);
    assert!(matches!(
        PersonalityModels::new(permuted),
        Err(Error::Config(_))
    ));
    assert!(matches!(
        PersonalityModels::new(models[..4].to_vec()),
        Err(Error::Config(_))
    ));
}

#[test]
fn checkpoint_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let ds = toy_sentiment();
    let model = train_model(
        &ModelConfig::preset(ModelName::Sentiment),
        &ds,
        &options(8, 2),
    )
    .unwrap();
    let path = save_model(dir.path(), &model, &Default::default()).unwrap();
    let loaded = load_model(&path).unwrap();
    assert_eq!(
        std::fs::read(&path).unwrap(),
        to_container(&loaded).to_bytes()
    );
    assert_eq!(loaded.network, model.network);
    assert_eq!(loaded.embeddings.matrix, model.embeddings.matrix);
    assert_eq!(loaded.vocab, model.vocab);
    let back = from_container(&to_container(&model)).unwrap();
    let tokens = ["lovely".to_string(), "day".to_string()];
    assert_eq!(
        back.predict(&tokens, &[]).unwrap(),
        model.predict(&tokens, &[]).unwrap()
    );
    assert!(load_named(dir.path(), ModelName::Emotion).is_err());
}
