//! Plain-text sequence files.
//!
//! A file is an optional header line `#list: <tok> <tok> ...` fixing the
//! initial list order, followed by whitespace-separated request tokens.
//! Without a header, the initial order is the first-appearance order of
//! the body tokens. Tokens map to dense item ids in initial-order
//! position, so item `i` is the token at position `i + 1` of the starting
//! list.

use crate::error::{Error, Result};
use crate::list::{Item, ListState, RequestSequence};

const HEADER_PREFIX: &str = "#list:";

/// A request sequence together with the token naming each item.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSequence {
    tokens: Vec<String>,
    seq: RequestSequence,
}

impl NamedSequence {
    /// `tokens[i]` names item `i`; the initial order is the token order.
    pub fn from_ids(tokens: Vec<String>, requests: Vec<Item>) -> Result<Self> {
        for (i, t) in tokens.iter().enumerate() {
            if t.is_empty() || t.contains(char::is_whitespace) || t.starts_with('#') {
                return Err(Error::Parse(format!("invalid item token {t:?}")));
            }
            if tokens[i + 1..].contains(t) {
                return Err(Error::Parse(format!("duplicate item token {t:?}")));
            }
        }
        let seq = RequestSequence::new(ListState::identity(tokens.len()), requests)?;
        Ok(NamedSequence { tokens, seq })
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn seq(&self) -> &RequestSequence {
        &self.seq
    }

    pub fn token_of(&self, item: Item) -> Result<&str> {
        self.tokens
            .get(item.0 as usize)
            .map(String::as_str)
            .ok_or(Error::UnknownItem { id: item.0 })
    }

    pub fn item_of(&self, token: &str) -> Option<Item> {
        self.tokens
            .iter()
            .position(|t| t == token)
            .map(|i| Item(i as u32))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (header, body) = match text.strip_prefix(HEADER_PREFIX) {
            Some(rest) => {
                let (line, tail) = rest.split_once('\n').unwrap_or((rest, ""));
                (Some(line), tail)
            }
            None => (None, text),
        };

        let mut tokens: Vec<String> = Vec::new();
        if let Some(line) = header {
            for tok in line.split_whitespace() {
                if tokens.iter().any(|t| t == tok) {
                    return Err(Error::Parse(format!(
                        "duplicate token {tok:?} in #list header"
                    )));
                }
                tokens.push(tok.to_string());
            }
        }

        let mut requests = Vec::new();
        for tok in body.split_whitespace() {
            if tok.starts_with('#') {
                return Err(Error::Parse(format!(
                    "item tokens may not start with '#', found {tok:?}"
                )));
            }
            let id = match tokens.iter().position(|t| t == tok) {
                Some(i) => i,
                None if header.is_some() => {
                    return Err(Error::Parse(format!(
                        "request token {tok:?} is not in the #list header"
                    )));
                }
                None => {
                    tokens.push(tok.to_string());
                    tokens.len() - 1
                }
            };
            requests.push(Item(id as u32));
        }
        NamedSequence::from_ids(tokens, requests)
    }

    /// Render with an explicit header so the initial order survives a
    /// round-trip even for items that are never requested.
    pub fn render(&self) -> String {
        let mut out = String::from(HEADER_PREFIX);
        for t in &self.tokens {
            out.push(' ');
            out.push_str(t);
        }
        out.push('\n');
        for (i, &x) in self.seq.requests().iter().enumerate() {
            if i > 0 {
                out.push(if i % 20 == 0 { '\n' } else { ' ' });
            }
            out.push_str(&self.tokens[x.0 as usize]);
        }
        if !self.seq.requests().is_empty() {
            out.push('\n');
        }
        out
    }
}
