use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sarcnn::model_zoo::load_model;

fn sarcnn(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sarcnn"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = sarcnn(dir, args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

const SMALL: &str = "[training]\nembedding_dim = 8\nmax_epochs = 2\n";

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&sarcnn(d, &["frobnicate"])), 1);
    assert_eq!(code(&sarcnn(d, &["train", "--model", "sentiment"])), 1);
    assert_eq!(code(&sarcnn(d, &["--help"])), 0);
    assert_eq!(
        code(&sarcnn(
            d,
            &["prep", "--input", "missing.tsv", "--out", "x"]
        )),
        2
    );
    fs::write(d.join("c.toml"), "[trainin]\n").unwrap();
    assert_eq!(
        code(&sarcnn(
            d,
            &[
                "--config",
                "c.toml",
                "train",
                "--model",
                "sentiment",
                "--data",
                "x"
            ]
        )),
        1
    );
    fs::write(d.join("bad.tsv"), "positive\tok\nno tab here\n").unwrap();
    assert_eq!(
        code(&sarcnn(
            d,
            &["train", "--model", "sentiment", "--data", "bad.tsv"]
        )),
        2
    );
    fs::write(d.join("labels.tsv"), "positive\tok\nthrilled\tfine\n").unwrap();
    let out = sarcnn(
        d,
        &["train", "--model", "sentiment", "--data", "labels.tsv"],
    );
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    fs::write(
        d.join("good.tsv"),
        "positive\tok\nnegative\tbad\nneutral\tmeh\n",
    )
    .unwrap();
    fs::write(d.join("lr.toml"), "[training]\nlearning_rate = -1.0\n").unwrap();
    assert_eq!(
        code(&sarcnn(
            d,
            &[
                "--config",
                "lr.toml",
                "train",
                "--model",
                "sentiment",
                "--data",
                "good.tsv"
            ]
        )),
        1
    );
}

#[test]
fn prep_keeps_empties_reports_and_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(
        d.join("raw.tsv"),
        "sarcastic\tOh GREAT, another Monday @boss http://t.co/x #sarcasm :P\nnon-sarcastic\t@someone http://a.b\n",
    )
    .unwrap();
    let out = ok(d, &["prep", "--input", "raw.tsv", "--out", "once.tsv"]);
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(
        summary.contains("2 records") && summary.contains("1 empty"),
        "{summary}"
    );
    let once = fs::read_to_string(d.join("once.tsv")).unwrap();
    assert_eq!(once.lines().count(), 2);
    assert_eq!(once.lines().nth(1), Some("non-sarcastic\t"));
    assert!(!once.contains('@') && !once.contains("http") && !once.contains("#sarcasm"));
    ok(
        d,
        &[
            "prep",
            "--quiet",
            "--input",
            "once.tsv",
            "--out",
            "twice.tsv",
        ],
    );
    assert_eq!(once, fs::read_to_string(d.join("twice.tsv")).unwrap());
    let manifest = fs::read_to_string(d.join("once.tsv.manifest")).unwrap();
    assert!(manifest.contains("input_sha256") && manifest.contains("toolkit_version"));

    fs::write(
        d.join("broken.tsv"),
        "sarcastic\tfine\nsarcastic\tfine\njust words\n",
    )
    .unwrap();
    let out = sarcnn(d, &["prep", "--input", "broken.tsv", "--out", "b.tsv"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert!(!d.join("b.tsv").exists());
}

#[test]
fn train_presets() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("small.toml"), SMALL).unwrap();
    ok(
        d,
        &[
            "synth",
            "--quiet",
            "--kind",
            "sentiment",
            "--size",
            "60",
            "--out",
            "sent.tsv",
        ],
    );
    ok(
        d,
        &[
            "synth",
            "--quiet",
            "--kind",
            "personality:openness",
            "--size",
            "40",
            "--out",
            "open.tsv",
        ],
    );
    ok(
        d,
        &[
            "--config",
            "small.toml",
            "--quiet",
            "train",
            "--model",
            "sentiment",
            "--data",
            "sent.tsv",
            "--out",
            "m",
        ],
    );
    ok(
        d,
        &[
            "--config",
            "small.toml",
            "--quiet",
            "train",
            "--model",
            "personality:openness",
            "--data",
            "open.tsv",
            "--out",
            "m",
        ],
    );
    let s = load_model(&d.join("m/sentiment.scnn")).unwrap();
    assert_eq!((s.network.hidden_width(), s.network.classes()), (100, 3));
    let o = load_model(&d.join("m/personality-openness.scnn")).unwrap();
    assert_eq!(o.network.classes(), 2);
    let manifest = fs::read_to_string(d.join("m/sentiment.manifest")).unwrap();
    assert!(manifest.contains("data_sha256") && manifest.contains("config_sha256"));
}

#[test]
fn synth_is_balanced_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        d,
        &[
            "synth",
            "--quiet",
            "--size",
            "1000",
            "--balance",
            "0.5",
            "--seed",
            "3",
            "--out",
            "a.tsv",
        ],
    );
    ok(
        d,
        &[
            "synth",
            "--quiet",
            "--size",
            "1000",
            "--balance",
            "0.5",
            "--seed",
            "3",
            "--out",
            "b.tsv",
        ],
    );
    let a = fs::read_to_string(d.join("a.tsv")).unwrap();
    assert_eq!(a, fs::read_to_string(d.join("b.tsv")).unwrap());
    let sarcastic = a.lines().filter(|l| l.starts_with("sarcastic\t")).count();
    let plain = a
        .lines()
        .filter(|l| l.starts_with("non-sarcastic\t"))
        .count();
    assert_eq!((sarcastic, plain), (500, 500));
    ok(
        d,
        &[
            "synth", "--quiet", "--size", "1000", "--seed", "4", "--out", "c.tsv",
        ],
    );
    assert_ne!(a, fs::read_to_string(d.join("c.tsv")).unwrap());
    assert_eq!(
        code(&sarcnn(
            d,
            &["synth", "--mechanism", "telepathy", "--out", "x.tsv"]
        )),
        1
    );
}

fn write_experiment(d: &Path, fusion: &str, cross: bool) {
    let mut text = format!(
        "{SMALL}seed = 2\n\n[experiment]\ndataset = \"sarc.tsv\"\nname = \"toy\"\nfusion = [{fusion}]\nk = 3\nmodels = \"models\"\n"
    );
    if cross {
        text.push_str("\n[cross]\ntrain = \"sarc.tsv\"\ntest = \"other.tsv\"\nfusion = [\"B\"]\n");
    }
    fs::write(d.join("exp.toml"), text).unwrap();
}

#[test]
fn experiment_grid_rows_and_cross_row() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(
        d,
        &["synth", "--quiet", "--size", "90", "--out", "sarc.tsv"],
    );
    ok(
        d,
        &[
            "synth",
            "--quiet",
            "--size",
            "60",
            "--seed",
            "5",
            "--out",
            "other.tsv",
        ],
    );
    fs::write(d.join("small.toml"), SMALL).unwrap();
    let aux = [
        "sentiment",
        "emotion",
        "personality:openness",
        "personality:conscientiousness",
        "personality:extraversion",
        "personality:agreeableness",
        "personality:neuroticism",
    ];
    for (i, model) in aux.iter().enumerate() {
        let file = format!("aux{i}.tsv");
        ok(
            d,
            &[
                "synth", "--quiet", "--kind", model, "--size", "60", "--out", &file,
            ],
        );
        ok(
            d,
            &[
                "--config",
                "small.toml",
                "--quiet",
                "train",
                "--model",
                model,
                "--data",
                &file,
                "--out",
                "models",
            ],
        );
    }

    write_experiment(d, "\"B\", \"B+S+E+P\"", true);
    let out = ok(d, &["--config", "exp.toml", "experiment", "--out", "res"]);
    let table = String::from_utf8_lossy(&out.stdout).into_owned();
    let rows: Vec<&str> = table.lines().filter(|l| l.contains("CNN-SVM")).collect();
    assert_eq!(rows.len(), 3, "{table}");
    assert!(rows[0].starts_with("B "));
    assert!(rows[1].starts_with("B+S+E+P"));
    assert!(rows[2].contains("sarc\u{21d2}other"), "{}", rows[2]);
    let tsv = fs::read_to_string(d.join("res/results.tsv")).unwrap();
    assert!(tsv.lines().any(|l| l.starts_with("B\tsarc\u{21d2}other\t")));
    assert_eq!(fs::read_to_string(d.join("res/grid.txt")).unwrap(), table);

    let manifest = fs::read_to_string(d.join("res/experiment.manifest")).unwrap();
    for key in [
        "config_sha256",
        "dataset_sha256",
        "seed.folds",
        "seed.baseline",
        "toolkit_version",
        "model.sentiment.sha256",
    ] {
        assert!(manifest.contains(key), "{key} missing from manifest");
    }
    ok(
        d,
        &[
            "--quiet",
            "experiment",
            "--from-manifest",
            "res/experiment.manifest",
            "--out",
            "again",
        ],
    );
    assert_eq!(
        tsv,
        fs::read_to_string(d.join("again/results.tsv")).unwrap()
    );

    fs::write(
        d.join("sarc.tsv"),
        "sarcastic\tchanged\nnon-sarcastic\tdata\n",
    )
    .unwrap();
    assert_eq!(
        code(&sarcnn(
            d,
            &[
                "--quiet",
                "experiment",
                "--from-manifest",
                "res/experiment.manifest"
            ]
        )),
        2
    );

    write_experiment(d, "\"X\"", false);
    assert_eq!(
        code(&sarcnn(
            d,
            &["--config", "exp.toml", "experiment", "--out", "bad"]
        )),
        1
    );
}

#[test]
fn feature_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("small.toml"), SMALL).unwrap();
    ok(
        d,
        &["synth", "--quiet", "--size", "40", "--out", "sarc.tsv"],
    );
    ok(
        d,
        &[
            "synth",
            "--quiet",
            "--kind",
            "sentiment",
            "--size",
            "60",
            "--out",
            "sent.tsv",
        ],
    );
    ok(
        d,
        &[
            "synth", "--quiet", "--kind", "emotion", "--size", "60", "--out", "emo.tsv",
        ],
    );
    for (model, data) in [("sentiment", "sent.tsv"), ("emotion", "emo.tsv")] {
        ok(
            d,
            &[
                "--config",
                "small.toml",
                "--quiet",
                "train",
                "--model",
                model,
                "--data",
                data,
                "--out",
                "m",
            ],
        );
    }
    ok(
        d,
        &[
            "--quiet",
            "extract",
            "--checkpoint",
            "m/sentiment.scnn",
            "--data",
            "sarc.tsv",
            "--out",
            "s.feat",
        ],
    );
    ok(
        d,
        &[
            "--quiet",
            "extract",
            "--checkpoint",
            "m/emotion.scnn",
            "--data",
            "sarc.tsv",
            "--out",
            "e.feat",
        ],
    );
    ok(
        d,
        &[
            "--quiet",
            "fuse",
            "--features",
            "e.feat",
            "--features",
            "s.feat",
            "--out",
            "se.feat",
        ],
    );
    let fused = fs::read_to_string(d.join("se.feat")).unwrap();
    assert!(fused.starts_with("#blocks=S:100+E:150\n"));
    assert_eq!(fused.lines().nth(1).unwrap().split('\t').count(), 251);

    let out = ok(
        d,
        &[
            "svm-train",
            "--features",
            "se.feat",
            "--kernel",
            "linear",
            "--eval",
            "se.feat",
            "--out",
            "svm.scnn",
        ],
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("held-out macro-F1"));
    ok(
        d,
        &[
            "--quiet",
            "pca",
            "--features",
            "se.feat",
            "--out",
            "pca.tsv",
        ],
    );
    let pca = fs::read_to_string(d.join("pca.tsv")).unwrap();
    assert_eq!(pca.lines().count(), 41);
    assert_eq!(
        code(&sarcnn(
            d,
            &[
                "pca",
                "--features",
                "se.feat",
                "--dims",
                "3",
                "--out",
                "p3.tsv"
            ]
        )),
        1
    );

    let out = ok(
        d,
        &[
            "correlate",
            "--models",
            "m",
            "--data",
            "sarc.tsv",
            "--score",
            "sentiment:positive",
            "--score",
            "emotion:joy",
        ],
    );
    let table = String::from_utf8_lossy(&out.stdout).into_owned();
    assert_eq!(table.lines().count(), 3, "{table}");
    assert!(table.lines().nth(1).unwrap().contains("1.0000*"));
}
