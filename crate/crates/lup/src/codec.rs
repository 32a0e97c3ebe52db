//! Bit-stream and varint primitives shared by the compressor and the
//! packed advice-tape format. Bits are packed MSB-first; integers use
//! LEB128.

use crate::error::{Error, Result};

#[derive(Default)]
pub struct BitWriter {
    bytes: Vec<u8>,
    bits: u64,
}

impl BitWriter {
    pub fn new() -> Self {
        BitWriter::default()
    }

    pub fn push(&mut self, bit: bool) {
        let offset = (self.bits % 8) as u8;
        if offset == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().expect("byte was just pushed") |= 0x80 >> offset;
        }
        self.bits += 1;
    }

    pub fn bit_len(&self) -> u64 {
        self.bits
    }

    /// Pad the final partial byte with `pad` bits and return the bytes.
    pub fn finish(mut self, pad: bool) -> Vec<u8> {
        while self.bits % 8 != 0 {
            self.push(pad);
        }
        self.bytes
    }
}

#[derive(Clone)]
pub struct BitReader<'a> {
    data: &'a [u8],
    pos: u64,
    limit: u64,
}

impl<'a> BitReader<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        BitReader {
            data,
            pos: 0,
            limit: data.len() as u64 * 8,
        }
    }

    /// A reader that stops after `limit` bits even if more bytes follow.
    pub fn with_limit(data: &'a [u8], limit: u64) -> Result<Self> {
        if limit > data.len() as u64 * 8 {
            return Err(Error::Format(format!(
                "bit length {limit} exceeds the {} available bits",
                data.len() * 8
            )));
        }
        Ok(BitReader {
            data,
            pos: 0,
            limit,
        })
    }

    pub fn remaining(&self) -> u64 {
        self.limit - self.pos
    }

    pub fn read(&mut self) -> Option<bool> {
        if self.pos >= self.limit {
            return None;
        }
        let byte = self.data[(self.pos / 8) as usize];
        let bit = byte & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        Some(bit)
    }
}

pub fn write_varint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let mut byte = (v & 0x7f) as u8;
        v >>= 7;
        if v != 0 {
            byte |= 0x80;
        }
        out.push(byte);
        if v == 0 {
            break;
        }
    }
}

pub fn read_varint(data: &[u8], pos: &mut usize) -> Result<u64> {
    let mut value = 0u64;
    let mut shift = 0u32;
    loop {
        let byte = *data
            .get(*pos)
            .ok_or_else(|| Error::Format("truncated varint".to_string()))?;
        *pos += 1;
        if shift == 63 && byte > 1 {
            return Err(Error::Format("varint overflows 64 bits".to_string()));
        }
        value |= u64::from(byte & 0x7f) << shift;
        if byte & 0x80 == 0 {
            return Ok(value);
        }
        shift += 7;
        if shift > 63 {
            return Err(Error::Format("varint overflows 64 bits".to_string()));
        }
    }
}
