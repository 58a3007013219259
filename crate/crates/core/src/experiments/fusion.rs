use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model_zoo::{build_model, FeatureSource, FeatureVector, ModelConfig, ModelName};
use crate::neural::Network;

/// How pre-trained features reach the classifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FusionMode {
    /// Concatenate feature blocks and classify with the SVM.
    ConcatThenSvm,
    /// Feed the pre-trained blocks as constant inputs next to the baseline's
    /// hidden layer and classify with the baseline's own softmax.
    StaticChannelIntoBaseline,
}

impl fmt::Display for FusionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FusionMode::ConcatThenSvm => "svm",
            FusionMode::StaticChannelIntoBaseline => "static",
        })
    }
}

impl FromStr for FusionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "svm" | "concat" => Ok(FusionMode::ConcatThenSvm),
            "static" | "cnn" => Ok(FusionMode::StaticChannelIntoBaseline),
            other => Err(Error::config(format!("unknown fusion mode {other:?}"))),
        }
    }
}

/// Feature blocks to combine, kept in B, S, E, P order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FusionSpec {
    pub include: Vec<FeatureSource>,
    pub mode: FusionMode,
}

impl FusionSpec {
    pub fn new(include: &[FeatureSource], mode: FusionMode) -> Result<Self> {
        if include.is_empty() {
            return Err(Error::config("fusion spec includes no feature block"));
        }
        let mut sorted = include.to_vec();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::config(format!(
                "duplicate feature block in {include:?}"
            )));
        }
        if mode == FusionMode::StaticChannelIntoBaseline
            && !sorted.contains(&FeatureSource::Baseline)
        {
            return Err(Error::config(
                "static-channel fusion needs the baseline block B",
            ));
        }
        Ok(Self {
            include: sorted,
            mode,
        })
    }

    /// `B+S+E+P` style list, optionally followed by `@svm` or `@static`.
    pub fn parse(text: &str) -> Result<Self> {
        let (blocks, mode) = match text.split_once('@') {
            Some((b, m)) => (b, m.parse()?),
            None => (text, FusionMode::ConcatThenSvm),
        };
        let include = blocks
            .split('+')
            .map(|t| {
                let t = t.trim();
                let mut chars = t.chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => FeatureSource::from_letter(c),
                    _ => None,
                }
                .ok_or_else(|| Error::config(format!("unknown feature block {t:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&include, mode)
    }

    pub fn dim(&self) -> usize {
        self.include.iter().map(|s| s.dim()).sum()
    }

    pub fn includes(&self, source: FeatureSource) -> bool {
        self.include.contains(&source)
    }

    /// Pre-trained blocks, i.e. everything except the baseline.
    pub fn pretrained(&self) -> impl Iterator<Item = FeatureSource> + '_ {
        self.include
            .iter()
            .copied()
            .filter(|&s| s != FeatureSource::Baseline)
    }

    pub fn blocks(&self) -> String {
        self.include
            .iter()
            .map(|s| s.letter().to_string())
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for FusionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            FusionMode::ConcatThenSvm => f.write_str(&self.blocks()),
            mode => write!(f, "{}@{mode}", self.blocks()),
        }
    }
}

impl FromStr for FusionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Concatenates blocks given in B, S, E, P order.
pub fn concat_features(blocks: &[FeatureVector]) -> Result<Vec<f64>> {
    for w in blocks.windows(2) {
        if w[0].source == w[1].source {
            return Err(Error::config(format!(
                "feature block {} given twice",
                w[0].source.letter()
            )));
        }
        if w[0].source > w[1].source {
            return Err(Error::config(format!(
                "feature block {} must precede {}",
                w[1].source.letter(),
                w[0].source.letter()
            )));
        }
    }
    Ok(blocks
        .iter()
        .flat_map(|b| b.values.iter().copied())
        .collect())
}

/// Baseline network whose softmax also reads `pretrained_dims` constant
/// slots after its own fully-connected features.
pub fn append_static_channel(
    baseline: &ModelConfig,
    pretrained_dims: &[usize],
    window: usize,
    embedding_dim: usize,
    seed: u64,
) -> Result<Network> {
    if baseline.name != ModelName::Baseline {
        return Err(Error::config(format!(
            "static channels attach to the baseline, not {}",
            baseline.name
        )));
    }
    build_model(
        baseline,
        window,
        embedding_dim,
        pretrained_dims.iter().sum(),
        seed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use FeatureSource::*;

    fn block(source: FeatureSource, fill: f64) -> FeatureVector {
        FeatureVector {
            values: vec![fill; source.dim()],
            source,
        }
    }

    #[test]
    fn dimension_identities() {
        assert_eq!(FusionSpec::parse("B+S+E+P").unwrap().dim(), 1100);
        assert_eq!(FusionSpec::parse("S+E+P").unwrap().dim(), 1000);
        let all = [
            block(Baseline, 1.0),
            block(Sentiment, 2.0),
            block(Emotion, 3.0),
            block(Personality, 4.0),
        ];
        assert_eq!(concat_features(&all).unwrap().len(), 1100);
        assert_eq!(concat_features(&all[1..]).unwrap().len(), 1000);
    }

    #[test]
    fn single_block_is_identity() {
        let b = FeatureVector {
            values: (0..100).map(f64::from).collect(),
            source: Sentiment,
        };
        assert_eq!(concat_features(std::slice::from_ref(&b)).unwrap(), b.values);
    }

    #[test]
    fn order_and_duplicates_rejected() {
        assert!(concat_features(&[block(Sentiment, 0.0), block(Sentiment, 0.0)]).is_err());
        assert!(concat_features(&[block(Emotion, 0.0), block(Baseline, 0.0)]).is_err());
        assert!(FusionSpec::parse("B+B").is_err());
    }

    #[test]
    fn spec_parsing() {
        let s = FusionSpec::parse("P+b").unwrap();
        assert_eq!(s.include, [Baseline, Personality]);
        assert_eq!(s.to_string(), "B+P");
        assert_eq!(
            FusionSpec::parse("B+S@static").unwrap().to_string(),
            "B+S@static"
        );
        assert!(matches!(FusionSpec::parse("X"), Err(Error::Config(_))));
        assert!(matches!(FusionSpec::parse(""), Err(Error::Config(_))));
        assert!(matches!(
            FusionSpec::new(&[], FusionMode::ConcatThenSvm),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            FusionSpec::parse("S+E@static"),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn static_channel_widths() {
        let cfg = ModelConfig::preset(ModelName::Baseline);
        let net = append_static_channel(&cfg, &[100, 150, 750], 12, 8, 1).unwrap();
        assert_eq!(net.hidden_width() + net.static_width(), 1100);
        let plain = append_static_channel(&cfg, &[], 12, 8, 1).unwrap();
        assert_eq!(plain, build_model(&cfg, 12, 8, 0, 1).unwrap());
        assert!(
            append_static_channel(&ModelConfig::preset(ModelName::Sentiment), &[], 12, 8, 1)
                .is_err()
        );
    }
}
