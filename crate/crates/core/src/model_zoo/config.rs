use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::manifest::Manifest;
use crate::neural::LayerSpec;

/// The five personality traits, in the fixed concatenation order O, C, E, A, N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Trait {
    Openness,
    Conscientiousness,
    Extraversion,
    Agreeableness,
    Neuroticism,
}

/// Single source of truth for personality block ordering.
pub const OCEAN: [Trait; 5] = [
    Trait::Openness,
    Trait::Conscientiousness,
    Trait::Extraversion,
    Trait::Agreeableness,
    Trait::Neuroticism,
];

impl Trait {
    pub fn as_str(self) -> &'static str {
        match self {
            Trait::Openness => "openness",
            Trait::Conscientiousness => "conscientiousness",
            Trait::Extraversion => "extraversion",
            Trait::Agreeableness => "agreeableness",
            Trait::Neuroticism => "neuroticism",
        }
    }
}

impl FromStr for Trait {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OCEAN
            .into_iter()
            .find(|t| {
                t.as_str() == s.to_ascii_lowercase() || t.as_str()[..1] == s.to_ascii_lowercase()
            })
            .ok_or_else(|| Error::config(format!("unknown personality trait {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelName {
    Sentiment,
    Emotion,
    Personality(Trait),
    Baseline,
}

pub const SENTIMENT_CLASSES: [&str; 3] = ["negative", "neutral", "positive"];
pub const EMOTION_CLASSES: [&str; 6] = ["anger", "disgust", "surprise", "sadness", "joy", "fear"];
pub const PERSONALITY_CLASSES: [&str; 2] = ["absent", "present"];
pub const SARCASM_CLASSES: [&str; 2] = ["non-sarcastic", "sarcastic"];

impl ModelName {
    /// Stable class alphabet of the model's softmax.
    pub fn classes(self) -> &'static [&'static str] {
        match self {
            ModelName::Sentiment => &SENTIMENT_CLASSES,
            ModelName::Emotion => &EMOTION_CLASSES,
            ModelName::Personality(_) => &PERSONALITY_CLASSES,
            ModelName::Baseline => &SARCASM_CLASSES,
        }
    }

    /// File-system friendly identifier, e.g. `personality-openness`.
    pub fn file_stem(self) -> String {
        match self {
            ModelName::Personality(t) => format!("personality-{}", t.as_str()),
            other => other.to_string(),
        }
    }
}

impl fmt::Display for ModelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelName::Sentiment => f.write_str("sentiment"),
            ModelName::Emotion => f.write_str("emotion"),
            ModelName::Personality(t) => write!(f, "personality:{}", t.as_str()),
            ModelName::Baseline => f.write_str("baseline"),
        }
    }
}

impl FromStr for ModelName {
    type Err = Error;

    /// Accepts `sentiment`, `emotion`, `baseline`, `personality:<trait>` and
    /// `personality-<trait>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "sentiment" | "s" => Ok(ModelName::Sentiment),
            "emotion" | "e" => Ok(ModelName::Emotion),
            "baseline" | "b" => Ok(ModelName::Baseline),
            other => {
                let rest = other
                    .strip_prefix("personality:")
                    .or_else(|| other.strip_prefix("personality-"))
                    .ok_or_else(|| Error::config(format!("unknown model {s:?}")))?;
                Ok(ModelName::Personality(rest.parse()?))
            }
        }
    }
}

/// Architecture of one sentence CNN: two convolution/pooling stages, a
/// fully-connected feature layer and a softmax output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelConfig {
    pub name: ModelName,
    pub conv1_widths: Vec<usize>,
    pub conv1_maps: usize,
    pub pool1_width: usize,
    pub conv2_width: usize,
    pub conv2_maps: usize,
    pub pool2_width: usize,
    pub fc_units: usize,
    pub softmax_classes: usize,
}

impl ModelConfig {
    pub fn preset(name: ModelName) -> Self {
        match name {
            ModelName::Sentiment => Self {
                name,
                conv1_widths: vec![4, 5],
                conv1_maps: 50,
                pool1_width: 2,
                conv2_width: 3,
                conv2_maps: 100,
                pool2_width: 2,
                fc_units: 100,
                softmax_classes: 3,
            },
            ModelName::Emotion | ModelName::Personality(_) => Self {
                name,
                conv1_widths: vec![3, 4, 5],
                conv1_maps: 50,
                pool1_width: 2,
                conv2_width: 2,
                conv2_maps: 100,
                pool2_width: 2,
                fc_units: 150,
                softmax_classes: if name == ModelName::Emotion { 6 } else { 2 },
            },
            ModelName::Baseline => Self {
                name,
                conv1_widths: vec![4, 5],
                conv1_maps: 50,
                pool1_width: 2,
                conv2_width: 3,
                conv2_maps: 100,
                pool2_width: 2,
                fc_units: 100,
                softmax_classes: 2,
            },
        }
    }

    pub fn layer_specs(&self) -> Vec<LayerSpec> {
        vec![
            LayerSpec::Convolution1D {
                kernel_widths: self.conv1_widths.clone(),
                feature_maps: self.conv1_maps,
            },
            LayerSpec::ReLU,
            LayerSpec::MaxPool1D {
                pool_width: self.pool1_width,
            },
            LayerSpec::Convolution1D {
                kernel_widths: vec![self.conv2_width],
                feature_maps: self.conv2_maps,
            },
            LayerSpec::ReLU,
            LayerSpec::MaxPool1D {
                pool_width: self.pool2_width,
            },
            LayerSpec::FullyConnected {
                output_units: self.fc_units,
            },
            LayerSpec::ReLU,
            LayerSpec::Softmax {
                output_units: self.softmax_classes,
            },
        ]
    }

    /// Smallest sentence window for which every convolution has at least
    /// one valid position.
    pub fn min_window(&self) -> usize {
        let widest = self.conv1_widths.iter().copied().max().unwrap_or(1);
        (widest..)
            .find(|&n| {
                let pooled = n + 1 - widest;
                pooled.div_ceil(self.pool1_width.max(1)) >= self.conv2_width
            })
            .expect("some window always fits")
    }

    pub fn to_manifest(&self) -> Manifest {
        let mut m = Manifest::new();
        m.set("name", self.name)
            .set("conv1_widths", join(&self.conv1_widths))
            .set("conv1_maps", self.conv1_maps)
            .set("pool1_width", self.pool1_width)
            .set("conv2_width", self.conv2_width)
            .set("conv2_maps", self.conv2_maps)
            .set("pool2_width", self.pool2_width)
            .set("fc_units", self.fc_units)
            .set("softmax_classes", self.softmax_classes);
        m
    }

    pub fn from_manifest(m: &Manifest) -> Result<Self> {
        let widths = m
            .require("conv1_widths")?
            .split(',')
            .map(|w| {
                w.trim()
                    .parse()
                    .map_err(|_| Error::Data(format!("bad kernel width {w:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(Self {
            name: m.require("name")?.parse()?,
            conv1_widths: widths,
            conv1_maps: m.parse_value("conv1_maps")?,
            pool1_width: m.parse_value("pool1_width")?,
            conv2_width: m.parse_value("conv2_width")?,
            conv2_maps: m.parse_value("conv2_maps")?,
            pool2_width: m.parse_value("pool2_width")?,
            fc_units: m.parse_value("fc_units")?,
            softmax_classes: m.parse_value("softmax_classes")?,
        })
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}
