use std::collections::HashMap;

use crate::error::{Error, Result};

pub const PAD: usize = 0;
pub const UNK: usize = 1;
pub const PAD_TOKEN: &str = "<pad>";
pub const UNK_TOKEN: &str = "<unk>";

/// Token/index bijection with `PAD` at 0 and `UNK` at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    tokens: Vec<String>,
    index: HashMap<String, usize>,
}

impl Default for Vocabulary {
    fn default() -> Self {
        Self::from_tokens(Vec::<String>::new()).expect("reserved-only vocabulary")
    }
}

impl Vocabulary {
    /// Builds a vocabulary from non-reserved tokens in index order (starting at 2).
    pub fn from_tokens<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut all = vec![PAD_TOKEN.to_string(), UNK_TOKEN.to_string()];
        all.extend(tokens.into_iter().map(Into::into));
        let mut index = HashMap::with_capacity(all.len());
        for (i, t) in all.iter().enumerate() {
            if index.insert(t.clone(), i).is_some() {
                return Err(Error::Data(format!("duplicate vocabulary entry {t:?}")));
            }
        }
        Ok(Self { tokens: all, index })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.len() <= 2
    }

    pub fn index_of(&self, token: &str) -> usize {
        self.index.get(token).copied().unwrap_or(UNK)
    }

    pub fn get(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn token_of(&self, index: usize) -> Option<&str> {
        self.tokens.get(index).map(String::as_str)
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// One token per line, reserved entries excluded.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for t in &self.tokens[2..] {
            s.push_str(t);
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        Self::from_tokens(text.lines())
    }
}

/// Tokens with frequency `>= min_count`, ordered by descending frequency
/// then lexicographically.
pub fn build_vocab<S: AsRef<[T]>, T: AsRef<str>>(
    corpus: &[S],
    min_count: usize,
) -> Result<Vocabulary> {
    if min_count == 0 {
        return Err(Error::Precondition("min_count must be at least 1".into()));
    }
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for sentence in corpus {
        for t in sentence.as_ref() {
            let t = t.as_ref();
            if t != PAD_TOKEN && t != UNK_TOKEN {
                *counts.entry(t).or_default() += 1;
            }
        }
    }
    let mut entries: Vec<(&str, usize)> = counts
        .into_iter()
        .filter(|&(_, c)| c >= min_count)
        .collect();
    entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    Vocabulary::from_tokens(entries.into_iter().map(|(t, _)| t.to_string()))
}

/// Maps tokens to indices (UNK for unknown), right-pads with PAD and
/// truncates to exactly `n` positions.
pub fn encode<T: AsRef<str>>(tokens: &[T], vocab: &Vocabulary, n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = tokens
        .iter()
        .take(n)
        .map(|t| vocab.index_of(t.as_ref()))
        .collect();
    out.resize(n, PAD);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn corpus() -> Vec<Vec<&'static str>> {
        vec![vec!["a", "b", "a"]]
    }

    #[test]
    fn counting_order() {
        let v = build_vocab(&corpus(), 1).unwrap();
        assert_eq!(v.tokens(), ["<pad>", "<unk>", "a", "b"]);
        let v2 = build_vocab(&corpus(), 2).unwrap();
        assert_eq!(v2.tokens(), ["<pad>", "<unk>", "a"]);
    }

    #[test]
    fn frequency_ties_break_lexicographically() {
        let v = build_vocab(&[vec!["z", "y", "x", "x"]], 1).unwrap();
        assert_eq!(&v.tokens()[2..], ["x", "y", "z"]);
    }

    #[test]
    fn empty_corpus_is_reserved_only() {
        let v = build_vocab::<Vec<&str>, &str>(&[], 1).unwrap();
        assert_eq!(v.len(), 2);
        assert!(build_vocab::<Vec<&str>, &str>(&[], 0).is_err());
    }

    #[test]
    fn encode_pads_truncates_and_unks() {
        let v = build_vocab(&corpus(), 1).unwrap();
        assert_eq!(encode::<&str>(&[], &v, 5), vec![0; 5]);
        assert_eq!(encode(&["a", "b"], &v, 2), vec![2, 3]);
        assert_eq!(encode(&["a", "zzz", "b"], &v, 2), vec![2, 1]);
        assert_eq!(encode(&["b"], &v, 3), vec![3, 0, 0]);
    }

    #[test]
    fn text_round_trip() {
        let v = build_vocab(&[vec!["b", "a", ":P", "a"]], 1).unwrap();
        assert_eq!(Vocabulary::from_text(&v.to_text()).unwrap(), v);
    }

    proptest! {
        #[test]
        fn index_token_bijection(words in proptest::collection::vec("[a-e]{1,3}", 0..40)) {
            let v = build_vocab(&[words], 1).unwrap();
            for i in 0..v.len() {
                prop_assert_eq!(v.index_of(v.token_of(i).unwrap()), i);
            }
        }

        #[test]
        fn encode_length_is_exact(words in proptest::collection::vec("[a-c]{1,2}", 0..30), n in 1usize..20) {
            let v = build_vocab(&[words.clone()], 1).unwrap();
            prop_assert_eq!(encode(&words, &v, n).len(), n);
        }
    }
}
