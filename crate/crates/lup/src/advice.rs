//! Advice tapes, the offline oracles that write them, and the online
//! followers that consume them.
//!
//! A tape is a bit sequence read strictly left to right; the advice
//! complexity of a run is the length of the consumed prefix. Two oracles
//! are provided: `best3_oracle` writes a 2-bit selector naming the cheapest
//! of three candidate algorithms, and `subset_oracle` writes, for each
//! request at position `i`, the `i - 1` bits describing which preceding
//! items an optimal schedule slides behind the requested item.

use crate::algorithms::{run, AlgorithmId};
use crate::codec;
use crate::error::{Error, Result};
use crate::list::{CostLedger, CostModel, Item, RequestSequence};
use crate::offline::{opt_subset_transfer_dp_with_limit, DEFAULT_MAX_L};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdviceTape {
    bits: Vec<bool>,
    cursor: usize,
}

impl AdviceTape {
    pub fn new(bits: Vec<bool>) -> Self {
        AdviceTape { bits, cursor: 0 }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of bits read so far — the advice complexity of the run that
    /// consumed them.
    pub fn consumed(&self) -> usize {
        self.cursor
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.cursor
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn read(&mut self) -> Result<bool> {
        let bit = self
            .bits
            .get(self.cursor)
            .copied()
            .ok_or_else(|| Error::InvalidAdvice("tape exhausted".to_string()))?;
        self.cursor += 1;
        Ok(bit)
    }

    pub fn rewind(&mut self) {
        self.cursor = 0;
    }

    /// Parse the ASCII form: a string of `0` and `1` characters.
    /// Whitespace (including newlines) is ignored.
    pub fn parse_ascii(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => {
                    return Err(Error::Parse(format!(
                        "advice tapes hold only 0 and 1, found {c:?}"
                    )))
                }
            }
        }
        Ok(AdviceTape::new(bits))
    }

    pub fn to_ascii(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Packed binary form: varint bit count, then the bits MSB-first.
    pub fn to_packed(&self) -> Vec<u8> {
        let mut out = Vec::new();
        codec::write_varint(&mut out, self.bits.len() as u64);
        let mut w = codec::BitWriter::new();
        for &b in &self.bits {
            w.push(b);
        }
        out.extend_from_slice(&w.finish(false));
        out
    }

    pub fn from_packed(data: &[u8]) -> Result<Self> {
        let mut pos = 0;
        let count = codec::read_varint(data, &mut pos)?;
        let mut reader = codec::BitReader::with_limit(&data[pos..], count)?;
        let mut bits = Vec::with_capacity(count as usize);
        while let Some(b) = reader.read() {
            bits.push(b);
        }
        Ok(AdviceTape::new(bits))
    }
}

/// Which of the three candidate algorithms a 2-bit selector names:
/// `00` = ts, `01` = mtfo, `10` = mtfe. `11` is invalid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgorithmSelector {
    Ts,
    MtfOdd,
    MtfEven,
}

impl AlgorithmSelector {
    pub fn from_bits(first: bool, second: bool) -> Result<Self> {
        match (first, second) {
            (false, false) => Ok(AlgorithmSelector::Ts),
            (false, true) => Ok(AlgorithmSelector::MtfOdd),
            (true, false) => Ok(AlgorithmSelector::MtfEven),
            (true, true) => Err(Error::InvalidAdvice(
                "selector 11 names no algorithm".to_string(),
            )),
        }
    }

    pub fn bits(self) -> [bool; 2] {
        match self {
            AlgorithmSelector::Ts => [false, false],
            AlgorithmSelector::MtfOdd => [false, true],
            AlgorithmSelector::MtfEven => [true, false],
        }
    }

    pub fn algorithm(self) -> AlgorithmId {
        match self {
            AlgorithmSelector::Ts => AlgorithmId::Ts,
            AlgorithmSelector::MtfOdd => AlgorithmId::MtfOdd,
            AlgorithmSelector::MtfEven => AlgorithmId::MtfEven,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            AlgorithmSelector::Ts => "ts",
            AlgorithmSelector::MtfOdd => "mtfo",
            AlgorithmSelector::MtfEven => "mtfe",
        }
    }
}

/// The selector the oracle chose together with the three simulated costs
/// it chose from, in selector-code order (ts, mtfo, mtfe).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Best3Choice {
    pub selector: AlgorithmSelector,
    pub costs: [u64; 3],
}

/// Simulate ts, mtfo, and mtfe and pick the cheapest; ties go to the
/// smallest selector code.
pub fn best3_oracle(seq: &RequestSequence, model: CostModel) -> Result<Best3Choice> {
    let candidates = [
        AlgorithmSelector::Ts,
        AlgorithmSelector::MtfOdd,
        AlgorithmSelector::MtfEven,
    ];
    let mut costs = [0u64; 3];
    for (slot, sel) in candidates.iter().enumerate() {
        costs[slot] = run(&sel.algorithm(), seq, model)?.total();
    }
    let mut best = 0;
    for slot in 1..3 {
        if costs[slot] < costs[best] {
            best = slot;
        }
    }
    Ok(Best3Choice {
        selector: candidates[best],
        costs,
    })
}

/// The oracle's output as a tape: exactly the 2 selector bits.
pub fn best3_tape(seq: &RequestSequence, model: CostModel) -> Result<AdviceTape> {
    let choice = best3_oracle(seq, model)?;
    Ok(AdviceTape::new(choice.selector.bits().to_vec()))
}

/// Read 2 bits, then serve the whole sequence with the selected algorithm.
pub fn best3_follower(
    tape: &mut AdviceTape,
    seq: &RequestSequence,
    model: CostModel,
) -> Result<CostLedger> {
    let first = tape.read()?;
    let second = tape.read()?;
    let selector = AlgorithmSelector::from_bits(first, second)?;
    run(&selector.algorithm(), seq, model)
}

/// Concatenated per-request subset bits from the optimal subset-transfer
/// schedule. Under the full cost model the tape is at most `OPT - n` bits
/// long: each request at position `i` contributes `i - 1` bits and at
/// least `i` cost.
pub fn subset_oracle_with_limit(
    seq: &RequestSequence,
    model: CostModel,
    max_l: usize,
) -> Result<AdviceTape> {
    let sol = opt_subset_transfer_dp_with_limit(seq, model, max_l)?;
    Ok(AdviceTape::new(sol.tape_bits()))
}

pub fn subset_oracle(seq: &RequestSequence, model: CostModel) -> Result<AdviceTape> {
    subset_oracle_with_limit(seq, model, DEFAULT_MAX_L)
}

/// Before each request to `x` at current position `i`, read `i - 1` bits
/// (front to back, 1 = transfer), slide the marked predecessors to just
/// after `x` at paid-exchange cost, then access `x`. On a tape written by
/// `subset_oracle` for this sequence, the total equals the optimal cost.
pub fn subset_follower(
    tape: &mut AdviceTape,
    seq: &RequestSequence,
    model: CostModel,
) -> Result<CostLedger> {
    let mut list = seq.initial().clone();
    let mut ledger = CostLedger::default();
    for &x in seq.requests() {
        let i = list.position(x)?;
        let mut transfer = Vec::with_capacity(i - 1);
        for _ in 0..i - 1 {
            transfer.push(tape.read()?);
        }
        let mut target: Vec<Item> = Vec::with_capacity(list.len());
        for p in 0..i - 1 {
            if !transfer[p] {
                target.push(list.item_at(p + 1).expect("position within list"));
            }
        }
        target.push(x);
        for (p, &moved) in transfer.iter().enumerate() {
            if moved {
                target.push(list.item_at(p + 1).expect("position within list"));
            }
        }
        for p in i + 1..=list.len() {
            target.push(list.item_at(p).expect("position within list"));
        }
        ledger.paid_exchanges += list.paid_rearrange(&target)?;
        ledger.access += list.access(x, model)?;
    }
    Ok(ledger)
}

/// Minimum advice bits any online algorithm needs to stay within a factor
/// `gamma` of optimal on every length-`n` sequence, for `gamma` in
/// `(1, 15/14]`:
/// `(1 + (7g-7)·log2(7g-7) + (8-7g)·log2(8-7g)) / 5 · n`.
pub fn advice_lower_bound(gamma: f64, n: u64) -> Result<f64> {
    if !(gamma > 1.0 && gamma <= 15.0 / 14.0) {
        return Err(Error::OutOfRange(format!(
            "gamma must lie in (1, 15/14], got {gamma}"
        )));
    }
    let a = 7.0 * gamma - 7.0;
    let b = 8.0 - 7.0 * gamma;
    let per_request = (1.0 + a * a.log2() + b * b.log2()) / 5.0;
    Ok(per_request * n as f64)
}
