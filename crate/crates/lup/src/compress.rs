//! Self-organizing-list text compression: each input byte is encoded as
//! the unary code of its current list position (position `i` takes `i`
//! bits: `i − 1` ones and a zero), so the encoded payload is exactly as
//! long as the chosen algorithm's full-model access cost. The decoder
//! mirrors the deterministic list updates to invert the stream.
//!
//! File layout: magic `LUP1`, one algorithm byte, one coder byte (0 =
//! unary), the alphabet size as a varint, the alphabet bytes in initial
//! list order, a one-byte chosen-algorithm field when the algorithm is
//! `best3`, then the packed code bits padded to a byte boundary with up
//! to seven one bits. The padding can never be read as a code because
//! every code ends in a zero.

use crate::advice::{best3_oracle, AlgorithmSelector};
use crate::algorithms::AlgorithmId;
use crate::codec::{read_varint, write_varint, BitReader, BitWriter};
use crate::error::{Error, Result};
use crate::list::{CostModel, Item, ListState, RequestSequence};

const MAGIC: &[u8; 4] = b"LUP1";
const CODER_UNARY: u8 = 0;

/// Algorithms the file format can name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompressorAlg {
    Mtf = 0,
    Ts = 1,
    MtfOdd = 2,
    MtfEven = 3,
    /// Pick the cheapest of ts, mtfo, and mtfe and record the choice in
    /// the header.
    Best3 = 4,
}

impl CompressorAlg {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "mtf" => Ok(CompressorAlg::Mtf),
            "ts" => Ok(CompressorAlg::Ts),
            "mtfo" => Ok(CompressorAlg::MtfOdd),
            "mtfe" => Ok(CompressorAlg::MtfEven),
            "best3" => Ok(CompressorAlg::Best3),
            other => Err(Error::UnknownAlgorithm(other.to_string())),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            CompressorAlg::Mtf => "mtf",
            CompressorAlg::Ts => "ts",
            CompressorAlg::MtfOdd => "mtfo",
            CompressorAlg::MtfEven => "mtfe",
            CompressorAlg::Best3 => "best3",
        }
    }

    fn from_byte(byte: u8) -> Result<Self> {
        match byte {
            0 => Ok(CompressorAlg::Mtf),
            1 => Ok(CompressorAlg::Ts),
            2 => Ok(CompressorAlg::MtfOdd),
            3 => Ok(CompressorAlg::MtfEven),
            4 => Ok(CompressorAlg::Best3),
            other => Err(Error::Format(format!("unknown algorithm byte {other}"))),
        }
    }

    fn fixed_id(self) -> Option<AlgorithmId> {
        match self {
            CompressorAlg::Mtf => Some(AlgorithmId::Mtf),
            CompressorAlg::Ts => Some(AlgorithmId::Ts),
            CompressorAlg::MtfOdd => Some(AlgorithmId::MtfOdd),
            CompressorAlg::MtfEven => Some(AlgorithmId::MtfEven),
            CompressorAlg::Best3 => None,
        }
    }
}

fn selector_byte(selector: AlgorithmSelector) -> u8 {
    let [first, second] = selector.bits();
    (u8::from(first) << 1) | u8::from(second)
}

fn selector_from_byte(byte: u8) -> Result<AlgorithmSelector> {
    if byte > 3 {
        return Err(Error::Format(format!("invalid chosen-algorithm byte {byte}")));
    }
    AlgorithmSelector::from_bits(byte & 2 != 0, byte & 1 != 0)
}

/// A compressed file plus the measurements reports care about.
#[derive(Clone, Debug)]
pub struct Compressed {
    pub bytes: Vec<u8>,
    /// Code bits before padding; equals the coding algorithm's full-model
    /// access cost on the text.
    pub payload_bits: u64,
    /// The recorded choice when the algorithm was `best3`.
    pub selector: Option<AlgorithmSelector>,
}

fn first_appearance_alphabet(text: &[u8]) -> Vec<u8> {
    let mut seen = [false; 256];
    let mut alphabet = Vec::new();
    for &b in text {
        if !seen[b as usize] {
            seen[b as usize] = true;
            alphabet.push(b);
        }
    }
    alphabet
}

fn text_as_sequence(text: &[u8], alphabet: &[u8]) -> Result<RequestSequence> {
    let mut index = [usize::MAX; 256];
    for (i, &b) in alphabet.iter().enumerate() {
        if index[b as usize] != usize::MAX {
            return Err(Error::Format(format!(
                "alphabet repeats symbol 0x{b:02x}"
            )));
        }
        index[b as usize] = i;
    }
    let mut reqs = Vec::with_capacity(text.len());
    for &b in text {
        let id = index[b as usize];
        if id == usize::MAX {
            return Err(Error::Format(format!(
                "symbol 0x{b:02x} is not in the alphabet"
            )));
        }
        reqs.push(Item(id as u32));
    }
    RequestSequence::new(ListState::identity(alphabet.len()), reqs)
}

/// Compress with the alphabet in first-appearance order.
pub fn compress(text: &[u8], alg: CompressorAlg) -> Result<Compressed> {
    compress_with_alphabet(text, &first_appearance_alphabet(text), alg)
}

/// Compress against an explicit initial alphabet order.
pub fn compress_with_alphabet(
    text: &[u8],
    alphabet: &[u8],
    alg: CompressorAlg,
) -> Result<Compressed> {
    let seq = text_as_sequence(text, alphabet)?;
    let (id, selector) = match alg.fixed_id() {
        Some(id) => (id, None),
        None => {
            let choice = best3_oracle(&seq, CostModel::Full)?;
            (choice.selector.algorithm(), Some(choice.selector))
        }
    };

    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.push(alg as u8);
    out.push(CODER_UNARY);
    write_varint(&mut out, alphabet.len() as u64);
    out.extend_from_slice(alphabet);
    if let Some(selector) = selector {
        out.push(selector_byte(selector));
    }

    let mut coder = id.instantiate(seq.initial())?;
    let mut writer = BitWriter::new();
    for &x in seq.requests() {
        let position = coder.serve(x, CostModel::Full)?;
        for _ in 1..position {
            writer.push(true);
        }
        writer.push(false);
    }
    let payload_bits = writer.bit_len();
    out.extend_from_slice(&writer.finish(true));
    Ok(Compressed {
        bytes: out,
        payload_bits,
        selector,
    })
}

/// The parsed header of a compressed file.
#[derive(Clone, Debug)]
pub struct Header {
    pub alg: CompressorAlg,
    pub alphabet: Vec<u8>,
    pub selector: Option<AlgorithmSelector>,
    /// Offset of the first payload byte.
    pub payload_start: usize,
}

pub fn read_header(data: &[u8]) -> Result<Header> {
    if data.len() < MAGIC.len() || &data[..MAGIC.len()] != MAGIC {
        return Err(Error::Format("missing LUP1 magic".to_string()));
    }
    let mut pos = MAGIC.len();
    let take = |pos: &mut usize| -> Result<u8> {
        let byte = *data
            .get(*pos)
            .ok_or_else(|| Error::Format("truncated header".to_string()))?;
        *pos += 1;
        Ok(byte)
    };
    let alg = CompressorAlg::from_byte(take(&mut pos)?)?;
    let coder = take(&mut pos)?;
    if coder != CODER_UNARY {
        return Err(Error::Format(format!("unknown coder byte {coder}")));
    }
    let alphabet_len = read_varint(data, &mut pos)? as usize;
    if data.len() < pos + alphabet_len {
        return Err(Error::Format("truncated alphabet".to_string()));
    }
    let alphabet = data[pos..pos + alphabet_len].to_vec();
    pos += alphabet_len;
    let selector = if alg == CompressorAlg::Best3 {
        Some(selector_from_byte(take(&mut pos)?)?)
    } else {
        None
    };
    Ok(Header {
        alg,
        alphabet,
        selector,
        payload_start: pos,
    })
}

pub fn decompress(data: &[u8]) -> Result<Vec<u8>> {
    let header = read_header(data)?;
    let id = match header.selector {
        Some(selector) => selector.algorithm(),
        None => header
            .alg
            .fixed_id()
            .expect("non-best3 algorithms are fixed"),
    };

    let l = header.alphabet.len();
    let initial = ListState::identity(l);
    let mut coder = id.instantiate(&initial)?;
    let mut reader = BitReader::new(&data[header.payload_start..]);
    let mut text = Vec::new();
    loop {
        if reader.remaining() < 8 {
            let mut probe = reader.clone();
            let mut all_ones = true;
            while let Some(bit) = probe.read() {
                if !bit {
                    all_ones = false;
                    break;
                }
            }
            if all_ones {
                break;
            }
        }
        let mut position = 1usize;
        loop {
            match reader.read() {
                Some(true) => position += 1,
                Some(false) => break,
                None => return Err(Error::Format("truncated unary code".to_string())),
            }
            if position > l {
                return Err(Error::Format(format!(
                    "unary code names position {position} in a {l}-item list"
                )));
            }
        }
        let item = coder
            .list()
            .item_at(position)
            .ok_or_else(|| Error::Format(format!("no item at position {position}")))?;
        coder.serve(item, CostModel::Full)?;
        text.push(header.alphabet[item.0 as usize]);
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms;
    use crate::rng::SplitMix64;

    const ALL: [CompressorAlg; 5] = [
        CompressorAlg::Mtf,
        CompressorAlg::Ts,
        CompressorAlg::MtfOdd,
        CompressorAlg::MtfEven,
        CompressorAlg::Best3,
    ];

    #[test]
    fn aaab_under_mtf_takes_five_bits() {
        let out = compress(b"aaab", CompressorAlg::Mtf).unwrap();
        assert_eq!(out.payload_bits, 5);
        assert_eq!(decompress(&out.bytes).unwrap(), b"aaab");
    }

    #[test]
    fn payload_matches_full_model_access_cost() {
        let text = b"the quick brown fox jumps over the lazy dog";
        for alg in [
            CompressorAlg::Mtf,
            CompressorAlg::Ts,
            CompressorAlg::MtfOdd,
            CompressorAlg::MtfEven,
        ] {
            let out = compress(text, alg).unwrap();
            let alphabet = first_appearance_alphabet(text);
            let seq = text_as_sequence(text, &alphabet).unwrap();
            let ledger =
                algorithms::run(&alg.fixed_id().unwrap(), &seq, CostModel::Full).unwrap();
            assert_eq!(out.payload_bits, ledger.access, "{}", alg.label());
        }
    }

    #[test]
    fn round_trips_every_algorithm() {
        let mut rng = SplitMix64::new(2024);
        for alg in ALL {
            for &alphabet_size in &[1u64, 2, 5, 26] {
                let text: Vec<u8> =
                    (0..200).map(|_| b'a' + rng.next_below(alphabet_size) as u8).collect();
                let out = compress(&text, alg).unwrap();
                assert_eq!(decompress(&out.bytes).unwrap(), text, "{}", alg.label());
            }
        }
    }

    #[test]
    fn round_trips_empty_text() {
        for alg in ALL {
            let out = compress(b"", alg).unwrap();
            assert_eq!(out.payload_bits, 0);
            assert_eq!(decompress(&out.bytes).unwrap(), b"");
        }
    }

    #[test]
    fn best3_records_its_choice() {
        let mut doubled = Vec::new();
        for _ in 0..40 {
            doubled.extend_from_slice(b"yyxx");
        }
        let out = compress(&doubled, CompressorAlg::Best3).unwrap();
        let selector = out.selector.unwrap();
        let header = read_header(&out.bytes).unwrap();
        assert_eq!(header.selector, Some(selector));

        let mut best = u64::MAX;
        for alg in [CompressorAlg::Ts, CompressorAlg::MtfOdd, CompressorAlg::MtfEven] {
            best = best.min(compress(&doubled, alg).unwrap().payload_bits);
        }
        assert_eq!(out.payload_bits, best);
        assert_eq!(decompress(&out.bytes).unwrap(), doubled);
    }

    #[test]
    fn doubled_pairs_favor_the_odd_variant() {
        let mut text = Vec::new();
        for _ in 0..50 {
            text.extend_from_slice(b"yyxx");
        }
        let ts = compress(&text, CompressorAlg::Ts).unwrap().payload_bits;
        let odd = compress(&text, CompressorAlg::MtfOdd).unwrap().payload_bits;
        let even = compress(&text, CompressorAlg::MtfEven).unwrap().payload_bits;
        let best = compress(&text, CompressorAlg::Best3).unwrap();
        assert!(odd < ts);
        assert!(odd < even);
        assert_eq!(best.payload_bits, odd);
        assert_eq!(best.selector, Some(AlgorithmSelector::MtfOdd));
    }

    #[test]
    fn explicit_alphabet_controls_initial_positions() {
        let out = compress_with_alphabet(b"ba", b"ab", CompressorAlg::Mtf).unwrap();
        assert_eq!(out.payload_bits, 2 + 2);
        assert_eq!(decompress(&out.bytes).unwrap(), b"ba");
        assert!(compress_with_alphabet(b"abc", b"ab", CompressorAlg::Mtf).is_err());
        assert!(compress_with_alphabet(b"a", b"aa", CompressorAlg::Mtf).is_err());
    }

    #[test]
    fn rejects_corrupt_files() {
        assert!(decompress(b"").is_err());
        assert!(decompress(b"LUP2aaaa").is_err());
        let good = compress(b"abcabc", CompressorAlg::Mtf).unwrap().bytes;
        let mut bad_alg = good.clone();
        bad_alg[4] = 9;
        assert!(decompress(&bad_alg).is_err());
        let mut bad_coder = good.clone();
        bad_coder[5] = 1;
        assert!(decompress(&bad_coder).is_err());
        assert!(decompress(&good[..8]).is_err(), "alphabet cut short");
    }

    #[test]
    fn rejects_runaway_unary_codes() {
        let mut file = compress(b"ab", CompressorAlg::Mtf).unwrap().bytes;
        let header = read_header(&file).unwrap();
        file.truncate(header.payload_start);
        file.extend_from_slice(&[0xff, 0xff]);
        assert!(decompress(&file).is_err());
    }

    #[test]
    fn single_symbol_text_is_all_zero_bits() {
        let out = compress(b"aaaaaaaaa", CompressorAlg::Ts).unwrap();
        assert_eq!(out.payload_bits, 9);
        assert_eq!(decompress(&out.bytes).unwrap(), b"aaaaaaaaa");
    }
}
