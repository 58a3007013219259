//! Tweet cleaning, tokenisation, vocabularies and word vectors.

pub mod clean;
pub mod corpus;
pub mod embeddings;
pub mod tokenize;
pub mod vocab;

pub use clean::clean_tweet;
pub use corpus::{parse_corpus, read_corpus, window_size, Record, TokenizedTweet, MAX_WINDOW};
pub use embeddings::{
    load_pretrained_embeddings, oov_row, write_embeddings, Coverage, EmbeddingMatrix,
};
pub use tokenize::tokenize;
pub use vocab::{build_vocab, encode, Vocabulary, PAD, UNK};
