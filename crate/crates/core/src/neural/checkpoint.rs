//! Versioned binary container for trained parameters.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! "SCNN" | version u32 | config_len u32 | config (UTF-8)
//! tensor_count u32 | per tensor: rank u32, dims u32 x rank, values f64 x prod(dims)
//! section_count u32 | per section: tag [u8; 4], payload_len u64, payload
//! ```
//!
//! Sections carry auxiliary payloads such as the vocabulary (`VOCB`) or a
//! trained SVM (`SSVM`).

use std::io::{Read, Write};

use super::tensor::Tensor;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"SCNN";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Section {
    pub tag: [u8; 4],
    pub payload: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Container {
    pub config: String,
    pub tensors: Vec<Tensor>,
    pub sections: Vec<Section>,
}

impl Container {
    pub fn section(&self, tag: &[u8; 4]) -> Option<&[u8]> {
        self.sections
            .iter()
            .find(|s| &s.tag == tag)
            .map(|s| s.payload.as_slice())
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        write_len32(w, self.config.len())?;
        w.write_all(self.config.as_bytes())?;
        write_len32(w, self.tensors.len())?;
        for t in &self.tensors {
            write_len32(w, t.rank())?;
            for &d in t.shape() {
                write_len32(w, d)?;
            }
            let mut buf = Vec::with_capacity(t.len() * 8);
            for v in t.data() {
                buf.extend_from_slice(&v.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        write_len32(w, self.sections.len())?;
        for s in &self.sections {
            w.write_all(&s.tag)?;
            w.write_all(&(s.payload.len() as u64).to_le_bytes())?;
            w.write_all(&s.payload)?;
        }
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        buf
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        Self::from_bytes(&bytes)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut cur = Cursor { bytes, pos: 0 };
        if cur.take(4)? != MAGIC {
            return Err(cur.error(0, "missing SCNN magic"));
        }
        let version = cur.u32()?;
        if version != FORMAT_VERSION {
            return Err(cur.error(4, &format!("unsupported checkpoint version {version}")));
        }
        let len = cur.u32()? as usize;
        let at = cur.pos;
        let config = String::from_utf8(cur.take(len)?.to_vec())
            .map_err(|_| cur.error(at as u64, "configuration is not UTF-8"))?;
        let count = cur.u32()? as usize;
        let mut tensors = Vec::with_capacity(count.min(1024));
        for _ in 0..count {
            let at = cur.pos as u64;
            let rank = cur.u32()? as usize;
            let dims = (0..rank)
                .map(|_| cur.u32().map(|d| d as usize))
                .collect::<Result<Vec<_>>>()?;
            let n = dims
                .iter()
                .try_fold(1usize, |acc, &d| acc.checked_mul(d))
                .ok_or_else(|| cur.error(at, "tensor size overflows"))?;
            let raw = cur.take(
                n.checked_mul(8)
                    .ok_or_else(|| cur.error(at, "tensor too large"))?,
            )?;
            let data = raw
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
                .collect();
            tensors.push(Tensor::new(dims, data).map_err(|e| cur.error(at, &e.to_string()))?);
        }
        let count = cur.u32()? as usize;
        let mut sections = Vec::with_capacity(count.min(64));
        for _ in 0..count {
            let tag: [u8; 4] = cur.take(4)?.try_into().expect("4 bytes");
            let len = cur.u64()?;
            let payload = cur.take(len as usize)?.to_vec();
            sections.push(Section { tag, payload });
        }
        if cur.pos != bytes.len() {
            return Err(cur.error(cur.pos as u64, "trailing bytes after last section"));
        }
        Ok(Self {
            config,
            tensors,
            sections,
        })
    }
}

fn write_len32<W: Write>(w: &mut W, n: usize) -> Result<()> {
    let v = u32::try_from(n).map_err(|_| Error::Data(format!("length {n} exceeds u32")))?;
    w.write_all(&v.to_le_bytes())?;
    Ok(())
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.bytes.len() - self.pos < n {
            return Err(self.error(
                self.pos as u64,
                &format!("truncated: needed {n} more bytes"),
            ));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(
            self.take(4)?.try_into().expect("4 bytes"),
        ))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(
            self.take(8)?.try_into().expect("8 bytes"),
        ))
    }

    fn error(&self, offset: u64, message: &str) -> Error {
        Error::Parse {
            offset,
            message: message.to_string(),
        }
    }
}
