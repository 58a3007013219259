//! Word-vector tables and the binary vector file format.
//!
//! The file starts with an ASCII header `"<count> <dim>\n"`; each entry is
//! the token's bytes, one space, then `dim` little-endian `f32` values,
//! optionally followed by a newline byte.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::vocab::{Vocabulary, PAD};
use crate::error::{Error, Result};
use crate::neural::Tensor;

/// Out-of-vocabulary rows are drawn from `U(-OOV_RANGE, OOV_RANGE)`.
pub const OOV_RANGE: f64 = 0.25;
pub const DEFAULT_DIM: usize = 300;

/// Per-token vectors aligned with a [`Vocabulary`]. Row `PAD` is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    pub matrix: Tensor,
    /// Non-static embeddings are updated during training.
    pub trainable: bool,
    pub oov_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coverage {
    pub covered: usize,
    pub oov: usize,
}

impl EmbeddingMatrix {
    /// Every non-reserved row initialised as out-of-vocabulary.
    pub fn random(vocab: &Vocabulary, dim: usize, oov_seed: u64, trainable: bool) -> Result<Self> {
        if dim == 0 {
            return Err(Error::config("embedding dimension must be positive"));
        }
        let mut matrix = Tensor::zeros(&[vocab.len(), dim]);
        for (i, token) in vocab.tokens().iter().enumerate().skip(1) {
            matrix
                .row_mut(i)
                .copy_from_slice(&oov_row(token, oov_seed, dim));
        }
        Ok(Self {
            matrix,
            trainable,
            oov_seed,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    /// Stacks the rows for `indices` into an `indices.len() x dim` matrix.
    pub fn lookup(&self, indices: &[usize]) -> Tensor {
        let d = self.dim();
        let mut data = Vec::with_capacity(indices.len() * d);
        for &i in indices {
            data.extend_from_slice(self.matrix.row(i));
        }
        Tensor::new(vec![indices.len(), d], data).expect("lookup shape")
    }
}

/// Deterministic random vector for an unseen token: a pure function of
/// `(token, seed)`.
pub fn oov_row(token: &str, seed: u64, dim: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(fnv1a(token.as_bytes()) ^ seed.rotate_left(32));
    (0..dim)
        .map(|_| rng.gen_range(-OOV_RANGE..OOV_RANGE))
        .collect()
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325u64, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Builds the embedding table for `vocab`: rows of tokens found in the file
/// are copied, the rest are initialised with [`oov_row`].
pub fn load_pretrained_embeddings(
    path: &Path,
    vocab: &Vocabulary,
    oov_seed: u64,
) -> Result<(EmbeddingMatrix, Coverage)> {
    let mut reader = BufReader::new(File::open(path)?);
    load_pretrained_from(&mut reader, vocab, oov_seed)
}

pub fn load_pretrained_from<R: Read>(
    reader: &mut R,
    vocab: &Vocabulary,
    oov_seed: u64,
) -> Result<(EmbeddingMatrix, Coverage)> {
    let mut found: Vec<Option<Vec<f32>>> = vec![None; vocab.len()];
    let dim = read_vectors(reader, |token, values| {
        if let Some(i) = vocab.get(token) {
            if i != PAD && found[i].is_none() {
                found[i] = Some(values.to_vec());
            }
        }
    })?;
    if dim == 0 {
        return Err(Error::Parse {
            offset: 0,
            message: "vector dimension must be positive".into(),
        });
    }
    let mut matrix = Tensor::zeros(&[vocab.len(), dim]);
    let mut covered = 0;
    for (i, token) in vocab.tokens().iter().enumerate().skip(1) {
        let row = match &found[i] {
            Some(v) => {
                covered += 1;
                v.iter().map(|&x| f64::from(x)).collect()
            }
            None => oov_row(token, oov_seed, dim),
        };
        matrix.row_mut(i).copy_from_slice(&row);
    }
    let total = vocab.len() - 1;
    Ok((
        EmbeddingMatrix {
            matrix,
            trainable: true,
            oov_seed,
        },
        Coverage {
            covered,
            oov: total - covered,
        },
    ))
}

/// Streams every entry of a binary vector file to `visit`; returns the
/// dimension from the header.
pub fn read_vectors<R: Read, F: FnMut(&str, &[f32])>(
    reader: &mut R,
    mut visit: F,
) -> Result<usize> {
    let mut src = ByteReader {
        inner: reader,
        offset: 0,
        peeked: None,
    };
    let header = src.read_until(b'\n', "header")?;
    let header = std::str::from_utf8(&header).map_err(|_| src.err(0, "header is not ASCII"))?;
    let mut parts = header.split_ascii_whitespace();
    let (count, dim) = match (parts.next(), parts.next(), parts.next()) {
        (Some(c), Some(d), None) => (
            c.parse::<usize>()
                .map_err(|_| src.err(0, "bad entry count in header"))?,
            d.parse::<usize>()
                .map_err(|_| src.err(0, "bad dimension in header"))?,
        ),
        _ => return Err(src.err(0, "header must be \"<count> <dim>\"")),
    };
    let mut values = vec![0f32; dim];
    let mut raw = vec![0u8; dim * 4];
    for _ in 0..count {
        if src.peek()? == Some(b'\n') {
            src.next_byte()?;
        }
        let start = src.offset;
        let token = src.read_until(b' ', "token")?;
        if token.is_empty() {
            return Err(src.err(start, "empty token"));
        }
        let token = String::from_utf8(token).map_err(|_| src.err(start, "token is not UTF-8"))?;
        src.read_exact(&mut raw, "vector")?;
        for (v, c) in values.iter_mut().zip(raw.chunks_exact(4)) {
            *v = f32::from_le_bytes(c.try_into().expect("4 bytes"));
        }
        visit(&token, &values);
    }
    Ok(dim)
}

/// Writes entries in the binary vector format, each followed by a newline.
pub fn write_vectors<W: Write, S: AsRef<str>>(
    writer: &mut W,
    dim: usize,
    entries: &[(S, Vec<f32>)],
) -> Result<()> {
    write!(writer, "{} {}\n", entries.len(), dim)?;
    for (token, values) in entries {
        let token = token.as_ref();
        if token.is_empty() || token.contains(' ') {
            return Err(Error::Data(format!(
                "token {token:?} cannot be stored in a vector file"
            )));
        }
        if values.len() != dim {
            return Err(Error::shape(format!(
                "vector for {token:?} has {} values, header says {dim}",
                values.len()
            )));
        }
        writer.write_all(token.as_bytes())?;
        writer.write_all(b" ")?;
        for v in values {
            writer.write_all(&v.to_le_bytes())?;
        }
        writer.write_all(b"\n")?;
    }
    Ok(())
}

/// Writes every non-reserved row of `embeddings`, narrowed to `f32`.
pub fn write_embeddings(
    path: &Path,
    vocab: &Vocabulary,
    embeddings: &EmbeddingMatrix,
) -> Result<()> {
    let entries: Vec<(&str, Vec<f32>)> = vocab
        .tokens()
        .iter()
        .enumerate()
        .skip(2)
        .map(|(i, t)| {
            (
                t.as_str(),
                embeddings.matrix.row(i).iter().map(|&v| v as f32).collect(),
            )
        })
        .collect();
    let mut w = BufWriter::new(File::create(path)?);
    write_vectors(&mut w, embeddings.dim(), &entries)?;
    w.flush()?;
    Ok(())
}

struct ByteReader<'a, R: Read> {
    inner: &'a mut R,
    offset: u64,
    peeked: Option<u8>,
}

impl<R: Read> ByteReader<'_, R> {
    fn err(&self, offset: u64, message: &str) -> Error {
        Error::Parse {
            offset,
            message: message.to_string(),
        }
    }

    fn peek(&mut self) -> Result<Option<u8>> {
        if self.peeked.is_none() {
            let mut b = [0u8; 1];
            match self.inner.read(&mut b)? {
                0 => return Ok(None),
                _ => self.peeked = Some(b[0]),
            }
        }
        Ok(self.peeked)
    }

    fn next_byte(&mut self) -> Result<Option<u8>> {
        let b = self.peek()?;
        if b.is_some() {
            self.peeked = None;
            self.offset += 1;
        }
        Ok(b)
    }

    fn read_until(&mut self, stop: u8, what: &str) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        loop {
            match self.next_byte()? {
                Some(b) if b == stop => return Ok(out),
                Some(b) => out.push(b),
                None => return Err(self.err(self.offset, &format!("truncated {what}"))),
            }
        }
    }

    fn read_exact(&mut self, buf: &mut [u8], what: &str) -> Result<()> {
        let mut filled = 0;
        if let Some(b) = self.peeked.take() {
            if let Some(first) = buf.first_mut() {
                *first = b;
                filled = 1;
                self.offset += 1;
            } else {
                self.peeked = Some(b);
            }
        }
        while filled < buf.len() {
            let n = self.inner.read(&mut buf[filled..])?;
            if n == 0 {
                return Err(self.err(self.offset, &format!("truncated {what}")));
            }
            filled += n;
            self.offset += n as u64;
        }
        Ok(())
    }
}
