use std::fs;
use std::path::Path;

use super::clean::clean_tweet;
use super::tokenize::tokenize;
use super::vocab::{encode, Vocabulary};
use crate::error::{Error, Result};

/// Upper bound on the sentence window `n`.
pub const MAX_WINDOW: usize = 100;

/// One `<label>\t<text>` line of a corpus file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    /// 1-based line number in the source file.
    pub line: usize,
    pub label: String,
    pub text: String,
}

pub fn parse_corpus(content: &str) -> Result<Vec<Record>> {
    content
        .lines()
        .enumerate()
        .map(|(i, line)| {
            let line_no = i + 1;
            let line = line.strip_suffix('\r').unwrap_or(line);
            let (label, text) = line.split_once('\t').ok_or_else(|| Error::DataLine {
                line: line_no,
                message: "missing tab between label and text".into(),
            })?;
            if label.trim().is_empty() {
                return Err(Error::DataLine {
                    line: line_no,
                    message: "empty label".into(),
                });
            }
            Ok(Record {
                line: line_no,
                label: label.trim().to_string(),
                text: text.to_string(),
            })
        })
        .collect()
}

pub fn read_corpus(path: &Path) -> Result<Vec<Record>> {
    let content = fs::read_to_string(path)?;
    parse_corpus(&content)
}

pub fn format_corpus(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.label);
        out.push('\t');
        out.push_str(&r.text);
        out.push('\n');
    }
    out
}

/// A tweet after cleaning and tokenisation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedTweet {
    pub raw: String,
    pub tokens: Vec<String>,
}

impl TokenizedTweet {
    pub fn new(raw: &str) -> Self {
        Self {
            raw: raw.to_string(),
            tokens: tokenize(&clean_tweet(raw)),
        }
    }

    /// Index sequence of exactly `n` positions.
    pub fn indices(&self, vocab: &Vocabulary, n: usize) -> Vec<usize> {
        encode(&self.tokens, vocab, n)
    }
}

/// Longest tokenised sentence, capped at [`MAX_WINDOW`] and at least 1.
pub fn window_size<S: AsRef<[T]>, T>(corpus: &[S]) -> usize {
    corpus
        .iter()
        .map(|s| s.as_ref().len())
        .max()
        .unwrap_or(0)
        .clamp(1, MAX_WINDOW)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_records_with_line_numbers() {
        let recs = parse_corpus("sarcastic\tI love pain :P\nnon-sarcastic\t\n").unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[1].line, 2);
        assert_eq!(recs[1].text, "");
        assert_eq!(
            format_corpus(&recs),
            "sarcastic\tI love pain :P\nnon-sarcastic\t\n"
        );
    }

    #[test]
    fn missing_tab_names_line() {
        let err = parse_corpus("a\tok\nbroken line\n").unwrap_err();
        assert!(matches!(err, Error::DataLine { line: 2, .. }), "{err}");
    }

    #[test]
    fn tweet_pipeline() {
        let t = TokenizedTweet::new("I LOVE it @bob #fun :P");
        assert_eq!(t.tokens, ["i", "love", "it", ":P"]);
    }

    #[test]
    fn window_is_capped() {
        assert_eq!(window_size(&[vec![0; 3], vec![0; 7]]), 7);
        assert_eq!(window_size(&[vec![0; 300]]), MAX_WINDOW);
        assert_eq!(window_size::<Vec<u8>, u8>(&[]), 1);
    }
}
