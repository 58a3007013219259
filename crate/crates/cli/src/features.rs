//! Feature files: a `#blocks=` header naming each block and its width, then
//! one `label<TAB>v1<TAB>v2...` line per tweet. Values are written in
//! shortest round-trip form, so reading a file back is exact.

use std::fmt::Write;

use sarcnn::experiments::concat_features;
use sarcnn::model_zoo::{FeatureSource, FeatureVector};
use sarcnn::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    pub blocks: Vec<(FeatureSource, usize)>,
    pub labels: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FeatureTable {
    pub fn width(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }

    pub fn header(&self) -> String {
        self.blocks
            .iter()
            .map(|(s, d)| format!("{}:{d}", s.letter()))
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("#blocks={}\n", self.header());
        for (label, row) in self.labels.iter().zip(&self.rows) {
            out.push_str(label);
            for v in row {
                write!(out, "\t{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let header = lines
            .next()
            .and_then(|(_, l)| l.strip_prefix("#blocks="))
            .ok_or_else(|| Error::DataLine {
                line: 1,
                message: "feature file must start with #blocks=".into(),
            })?;
        let blocks = header
            .split('+')
            .map(|b| {
                let (letter, dim) = b.split_once(':').unwrap_or((b, ""));
                let mut chars = letter.chars();
                let source = match (chars.next(), chars.next()) {
                    (Some(c), None) => FeatureSource::from_letter(c),
                    _ => None,
                };
                match (source, dim.parse::<usize>()) {
                    (Some(s), Ok(d)) if d > 0 => Ok((s, d)),
                    _ => Err(Error::DataLine {
                        line: 1,
                        message: format!("bad block descriptor {b:?}"),
                    }),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let width: usize = blocks.iter().map(|b| b.1).sum();
        let mut labels = Vec::new();
        let mut rows = Vec::new();
        for (i, line) in lines {
            let mut fields = line.split('\t');
            let label = fields.next().unwrap_or_default().to_string();
            let row = fields
                .map(|v| {
                    v.parse::<f64>().map_err(|_| Error::DataLine {
                        line: i + 1,
                        message: format!("not a number: {v:?}"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != width {
                return Err(Error::DataLine {
                    line: i + 1,
                    message: format!("{} values, header declares {width}", row.len()),
                });
            }
            labels.push(label);
            rows.push(row);
        }
        Ok(Self {
            blocks,
            labels,
            rows,
        })
    }

    /// Splits row `i` into its feature blocks.
    fn vectors(&self, i: usize) -> Vec<FeatureVector> {
        let mut offset = 0;
        self.blocks
            .iter()
            .map(|&(source, d)| {
                let values = self.rows[i][offset..offset + d].to_vec();
                offset += d;
                FeatureVector { values, source }
            })
            .collect()
    }
}

/// Row-wise concatenation of feature tables in B, S, E, P block order.
/// Every table must describe the same tweets with the same labels.
pub fn fuse(tables: &[FeatureTable]) -> Result<FeatureTable> {
    let first = tables
        .first()
        .ok_or_else(|| Error::Config("nothing to fuse".into()))?;
    for t in &tables[1..] {
        if t.labels != first.labels {
            return Err(Error::Data(format!(
                "feature files disagree on their tweets ({} vs {} rows or differing labels)",
                first.labels.len(),
                t.labels.len()
            )));
        }
    }
    let mut blocks: Vec<(FeatureSource, usize)> = tables
        .iter()
        .flat_map(|t| t.blocks.iter().copied())
        .collect();
    blocks.sort_by_key(|b| b.0);
    let rows = (0..first.labels.len())
        .map(|i| {
            let mut parts: Vec<FeatureVector> = tables.iter().flat_map(|t| t.vectors(i)).collect();
            parts.sort_by_key(|p| p.source);
            concat_features(&parts)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FeatureTable {
        blocks,
        labels: first.labels.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(source: FeatureSource, values: &[f64]) -> FeatureTable {
        FeatureTable {
            blocks: vec![(source, 1)],
            labels: vec!["sarcastic".into(), "non-sarcastic".into()],
            rows: values.iter().map(|&v| vec![v]).collect(),
        }
    }

    #[test]
    fn text_round_trip_is_exact() {
        let t = FeatureTable {
            blocks: vec![(FeatureSource::Baseline, 2), (FeatureSource::Emotion, 1)],
            labels: vec!["1".into(), "0".into()],
            rows: vec![
                vec![0.1, 1.0 / 3.0, -2e-300],
                vec![f64::MIN_POSITIVE, 7.0, 0.0],
            ],
        };
        let text = t.to_text();
        assert!(text.starts_with("#blocks=B:2+E:1\n"));
        assert_eq!(FeatureTable::parse(&text).unwrap(), t);
    }

    #[test]
    fn fuse_orders_blocks() {
        let f = fuse(&[
            table(FeatureSource::Sentiment, &[1.0, 2.0]),
            table(FeatureSource::Baseline, &[3.0, 4.0]),
        ])
        .unwrap();
        assert_eq!(f.header(), "B:1+S:1");
        assert_eq!(f.rows, vec![vec![3.0, 1.0], vec![4.0, 2.0]]);
        assert!(fuse(&[
            table(FeatureSource::Sentiment, &[1.0, 2.0]),
            table(FeatureSource::Sentiment, &[1.0, 2.0])
        ])
        .is_err());
        let mut short = table(FeatureSource::Emotion, &[1.0]);
        short.labels.truncate(1);
        assert!(fuse(&[table(FeatureSource::Baseline, &[1.0, 2.0]), short]).is_err());
    }

    #[test]
    fn malformed_files() {
        assert!(FeatureTable::parse("x\t1\n").is_err());
        assert!(FeatureTable::parse("#blocks=Q:2\n").is_err());
        let err = FeatureTable::parse("#blocks=S:2\na\t1\t2\nb\t1\n").unwrap_err();
        assert!(matches!(err, Error::DataLine { line: 3, .. }), "{err}");
    }
}
