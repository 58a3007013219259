use crate::error::{Error, Result};
use crate::text::{Record, TokenizedTweet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example {
    pub label: usize,
    pub tokens: Vec<String>,
    /// Source line (1-based), kept for error reporting.
    pub line: usize,
}

/// Ordered labelled sentences plus their class alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDataset {
    pub alphabet: Vec<String>,
    pub examples: Vec<Example>,
}

impl LabeledDataset {
    /// Cleans and tokenises `records`, mapping labels onto `alphabet`.
    ///
    /// A label may be given by name or by its decimal index in the alphabet.
    pub fn from_records(records: &[Record], alphabet: &[&str]) -> Result<Self> {
        let examples = records
            .iter()
            .map(|r| {
                Ok(Example {
                    label: resolve_label(&r.label, alphabet).ok_or_else(|| Error::DataLine {
                        line: r.line,
                        message: format!("label {:?} is not one of {alphabet:?}", r.label),
                    })?,
                    tokens: TokenizedTweet::new(&r.text).tokens,
                    line: r.line,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            alphabet: alphabet.iter().map(|s| s.to_string()).collect(),
            examples,
        })
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn labels(&self) -> Vec<usize> {
        self.examples.iter().map(|e| e.label).collect()
    }

    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            examples: indices.iter().map(|&i| self.examples[i].clone()).collect(),
        }
    }

    /// Ensures every label fits a softmax with `classes` outputs.
    pub fn check_classes(&self, classes: usize) -> Result<()> {
        if self.alphabet.len() > classes {
            return Err(Error::Data(format!(
                "dataset has {} labels but the model has {classes} outputs",
                self.alphabet.len()
            )));
        }
        match self.examples.iter().find(|e| e.label >= classes) {
            Some(e) => Err(Error::DataLine {
                line: e.line,
                message: format!(
                    "label index {} outside the {classes}-class alphabet",
                    e.label
                ),
            }),
            None => Ok(()),
        }
    }
}

fn resolve_label(label: &str, alphabet: &[&str]) -> Option<usize> {
    alphabet
        .iter()
        .position(|a| a.eq_ignore_ascii_case(label))
        .or_else(|| label.parse::<usize>().ok().filter(|&i| i < alphabet.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_corpus;

    #[test]
    fn labels_by_name_or_index() {
        let recs = parse_corpus("sarcastic\tOh great :P\n0\tnice day\n").unwrap();
        let ds = LabeledDataset::from_records(&recs, &["non-sarcastic", "sarcastic"]).unwrap();
        assert_eq!(ds.labels(), vec![1, 0]);
        assert_eq!(ds.examples[0].tokens, ["oh", "great", ":P"]);
    }

    #[test]
    fn unknown_label_names_line() {
        let recs = parse_corpus("joy\tyay\nboredom\tmeh\n").unwrap();
        let err = LabeledDataset::from_records(&recs, &["joy", "fear"]).unwrap_err();
        assert!(matches!(err, Error::DataLine { line: 2, .. }), "{err}");
    }
}
