//! Constructors for the adversarial request-sequence families used by the
//! ratio reports and lower-bound experiments, plus seeded random sequences
//! for property tests.
//!
//! Two-item families run over the list `[x, y]` with `x` initially at the
//! front; families over `l` items use tokens `a1..al` with the identity
//! initial order.

use crate::error::{Error, Result};
use crate::list::Item;
use crate::rng::SplitMix64;
use crate::seqfile::NamedSequence;
use std::fmt;

/// A sequence family together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// One five-request round per bit: `yyyxx` for a 0 bit, `yxxxx` for a 1.
    Bitstring { bits: Vec<bool> },
    /// `x (yxxxyxxx)^k` on two items.
    Alpha { k: usize },
    /// `(yyxx)^k` on two items.
    Beta2 { k: usize },
    /// `(a_1..a_l, a_1 a_1..a_l a_l, a_l..a_1, a_l a_l..a_1 a_1)^m`:
    /// ascending singles and doubles, then the same descending.
    BetaL { l: u32, m: usize },
    /// `(a_l a_l a_l, ..., a_1 a_1 a_1)^{2s}`: descending triples.
    Gamma { l: u32, s: usize },
    /// `(a_1..a_l, a_1^3..a_l^3, a_l..a_1, a_l^3..a_1^3)^m`: ascending
    /// singles and triples, then the same descending.
    Delta { l: u32, m: usize },
    /// `n` uniform independent requests over `l` items.
    Random { l: u32, n: usize, seed: u64 },
}

impl FamilySpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::Bitstring { .. } => "bitstring",
            FamilySpec::Alpha { .. } => "alpha",
            FamilySpec::Beta2 { .. } => "beta2",
            FamilySpec::BetaL { .. } => "beta",
            FamilySpec::Gamma { .. } => "gamma",
            FamilySpec::Delta { .. } => "delta",
            FamilySpec::Random { .. } => "random",
        }
    }

    /// Parameters in `key=value` form, comma separated.
    pub fn params(&self) -> String {
        match self {
            FamilySpec::Bitstring { bits } => {
                let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
                format!("bits={s}")
            }
            FamilySpec::Alpha { k } | FamilySpec::Beta2 { k } => format!("k={k}"),
            FamilySpec::BetaL { l, m } | FamilySpec::Delta { l, m } => format!("l={l},m={m}"),
            FamilySpec::Gamma { l, s } => format!("l={l},s={s}"),
            FamilySpec::Random { l, n, seed } => format!("l={l},n={n},seed={seed}"),
        }
    }

    /// Closed-form length of the generated sequence.
    pub fn expected_len(&self) -> usize {
        match self {
            FamilySpec::Bitstring { bits } => 5 * bits.len(),
            FamilySpec::Alpha { k } => 8 * k + 1,
            FamilySpec::Beta2 { k } => 4 * k,
            FamilySpec::BetaL { l, m } => 6 * (*l as usize) * m,
            FamilySpec::Gamma { l, s } => 6 * (*l as usize) * s,
            FamilySpec::Delta { l, m } => 8 * (*l as usize) * m,
            FamilySpec::Random { n, .. } => *n,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::OutOfRange(msg));
        match *self {
            FamilySpec::Bitstring { .. } | FamilySpec::Alpha { .. } | FamilySpec::Beta2 { .. } => {
                Ok(())
            }
            FamilySpec::BetaL { l, m } => {
                if l < 2 {
                    bad(format!("beta needs l >= 2, got l={l}"))
                } else if m < 1 {
                    bad(format!("beta needs m >= 1, got m={m}"))
                } else {
                    Ok(())
                }
            }
            FamilySpec::Gamma { l, s } => {
                if l < 2 {
                    bad(format!("gamma needs l >= 2, got l={l}"))
                } else if s < 1 {
                    bad(format!("gamma needs s >= 1, got s={s}"))
                } else {
                    Ok(())
                }
            }
            FamilySpec::Delta { l, m } => {
                if l < 2 {
                    bad(format!("delta needs l >= 2, got l={l}"))
                } else if m < 1 {
                    bad(format!("delta needs m >= 1, got m={m}"))
                } else {
                    Ok(())
                }
            }
            FamilySpec::Random { l, .. } => {
                if l < 1 {
                    bad(format!("random needs l >= 1, got l={l}"))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn generate(&self) -> Result<NamedSequence> {
        self.validate()?;
        let x = Item(0);
        let y = Item(1);
        match *self {
            FamilySpec::Bitstring { ref bits } => {
                let mut reqs = Vec::with_capacity(self.expected_len());
                for &b in bits {
                    if b {
                        reqs.extend_from_slice(&[y, x, x, x, x]);
                    } else {
                        reqs.extend_from_slice(&[y, y, y, x, x]);
                    }
                }
                two_item_sequence(reqs)
            }
            FamilySpec::Alpha { k } => {
                let mut reqs = Vec::with_capacity(self.expected_len());
                reqs.push(x);
                for _ in 0..k {
                    reqs.extend_from_slice(&[y, x, x, x, y, x, x, x]);
                }
                two_item_sequence(reqs)
            }
            FamilySpec::Beta2 { k } => {
                let mut reqs = Vec::with_capacity(self.expected_len());
                for _ in 0..k {
                    reqs.extend_from_slice(&[y, y, x, x]);
                }
                two_item_sequence(reqs)
            }
            FamilySpec::BetaL { l, m } => {
                let mut reqs = Vec::with_capacity(self.expected_len());
                for _ in 0..m {
                    push_run(&mut reqs, ascending(l), 1);
                    push_run(&mut reqs, ascending(l), 2);
                    push_run(&mut reqs, descending(l), 1);
                    push_run(&mut reqs, descending(l), 2);
                }
                item_sequence(l, reqs)
            }
            FamilySpec::Gamma { l, s } => {
                let mut reqs = Vec::with_capacity(self.expected_len());
                for _ in 0..2 * s {
                    push_run(&mut reqs, descending(l), 3);
                }
                item_sequence(l, reqs)
            }
            FamilySpec::Delta { l, m } => {
                let mut reqs = Vec::with_capacity(self.expected_len());
                for _ in 0..m {
                    push_run(&mut reqs, ascending(l), 1);
                    push_run(&mut reqs, ascending(l), 3);
                    push_run(&mut reqs, descending(l), 1);
                    push_run(&mut reqs, descending(l), 3);
                }
                item_sequence(l, reqs)
            }
            FamilySpec::Random { l, n, seed } => {
                let mut rng = SplitMix64::new(seed);
                let reqs = (0..n).map(|_| Item(rng.next_below(l as u64) as u32)).collect();
                item_sequence(l, reqs)
            }
        }
    }

    /// Parse the compact `family:args` form, e.g. `alpha:3`, `beta:40,5`,
    /// `bitstring:0110`, `random:3,8,7`.
    pub fn parse_compact(text: &str) -> Result<FamilySpec> {
        let (name, args) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected family:args, got {text:?}")))?;
        let nums = || -> Result<Vec<usize>> {
            args.split(',')
                .map(|a| {
                    a.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad number {a:?} in {text:?}")))
                })
                .collect()
        };
        let arity = |want: usize, got: &[usize]| -> Result<()> {
            if got.len() == want {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "{name} takes {want} parameter(s), got {}",
                    got.len()
                )))
            }
        };
        let spec = match name {
            "bitstring" => {
                let mut bits = Vec::with_capacity(args.len());
                for c in args.chars() {
                    match c {
                        '0' => bits.push(false),
                        '1' => bits.push(true),
                        _ => {
                            return Err(Error::Parse(format!(
                                "bitstring accepts only 0/1, got {c:?}"
                            )))
                        }
                    }
                }
                FamilySpec::Bitstring { bits }
            }
            "alpha" => {
                let v = nums()?;
                arity(1, &v)?;
                FamilySpec::Alpha { k: v[0] }
            }
            "beta2" => {
                let v = nums()?;
                arity(1, &v)?;
                FamilySpec::Beta2 { k: v[0] }
            }
            "beta" => {
                let v = nums()?;
                arity(2, &v)?;
                FamilySpec::BetaL { l: v[0] as u32, m: v[1] }
            }
            "gamma" => {
                let v = nums()?;
                arity(2, &v)?;
                FamilySpec::Gamma { l: v[0] as u32, s: v[1] }
            }
            "delta" => {
                let v = nums()?;
                arity(2, &v)?;
                FamilySpec::Delta { l: v[0] as u32, m: v[1] }
            }
            "random" => {
                let v = nums()?;
                arity(3, &v)?;
                FamilySpec::Random { l: v[0] as u32, n: v[1], seed: v[2] as u64 }
            }
            _ => return Err(Error::Parse(format!("unknown family {name:?}"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args = match self {
            FamilySpec::Bitstring { bits } => {
                bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
            }
            FamilySpec::Alpha { k } | FamilySpec::Beta2 { k } => k.to_string(),
            FamilySpec::BetaL { l, m } | FamilySpec::Delta { l, m } => format!("{l},{m}"),
            FamilySpec::Gamma { l, s } => format!("{l},{s}"),
            FamilySpec::Random { l, n, seed } => format!("{l},{n},{seed}"),
        };
        write!(f, "{}:{}", self.family_name(), args)
    }
}

fn ascending(l: u32) -> impl Iterator<Item = u32> {
    0..l
}

fn descending(l: u32) -> impl Iterator<Item = u32> {
    (0..l).rev()
}

fn push_run(reqs: &mut Vec<Item>, ids: impl Iterator<Item = u32>, times: usize) {
    for id in ids {
        for _ in 0..times {
            reqs.push(Item(id));
        }
    }
}

fn two_item_sequence(reqs: Vec<Item>) -> Result<NamedSequence> {
    NamedSequence::from_ids(vec!["x".into(), "y".into()], reqs)
}

fn item_sequence(l: u32, reqs: Vec<Item>) -> Result<NamedSequence> {
    let tokens = (1..=l).map(|i| format!("a{i}")).collect();
    NamedSequence::from_ids(tokens, reqs)
}
