//! Lists, cost models, and the exchange primitives every algorithm shares.
//!
//! A list is a permutation of distinct items; the front is position 1.
//! Serving a request touches the requested item at its current position,
//! then the serving algorithm may apply exchanges: a *free* exchange moves
//! the just-accessed item any number of positions toward the front at no
//! cost, while *paid* exchanges swap adjacent items at unit cost each.
//! Rearranging the whole list therefore costs the Kendall tau distance
//! between the old and the new permutation.

use crate::error::{Error, Result};
use std::fmt;

/// An item of the list, identified by a small dense id.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item(pub u32);

impl fmt::Debug for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Whether an access to position `i` costs `i` (full) or `i - 1` (partial).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum CostModel {
    Full,
    Partial,
}

impl CostModel {
    pub fn access_cost(self, position: usize) -> u64 {
        debug_assert!(position >= 1);
        match self {
            CostModel::Full => position as u64,
            CostModel::Partial => position as u64 - 1,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(CostModel::Full),
            "partial" => Ok(CostModel::Partial),
            other => Err(Error::Parse(format!(
                "unknown cost model {other:?}, expected \"full\" or \"partial\""
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CostModel::Full => "full",
            CostModel::Partial => "partial",
        }
    }
}

/// Access cost and paid-exchange cost accumulated by a run.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub struct CostLedger {
    pub access: u64,
    pub paid_exchanges: u64,
}

impl CostLedger {
    pub fn total(&self) -> u64 {
        self.access + self.paid_exchanges
    }

    pub fn add(&mut self, other: CostLedger) {
        self.access += other.access;
        self.paid_exchanges += other.paid_exchanges;
    }
}

/// A permutation of distinct items with 1-based positions.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct ListState {
    order: Vec<Item>,
}

impl ListState {
    pub fn new(order: Vec<Item>) -> Result<Self> {
        for (i, a) in order.iter().enumerate() {
            if order[i + 1..].contains(a) {
                return Err(Error::Parse(format!("duplicate item {a} in list")));
            }
        }
        Ok(ListState { order })
    }

    /// The list `0, 1, .., l-1`.
    pub fn identity(l: usize) -> Self {
        ListState {
            order: (0..l as u32).map(Item).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[Item] {
        &self.order
    }

    /// 1-based position of `item`.
    pub fn position(&self, item: Item) -> Result<usize> {
        self.order
            .iter()
            .position(|&x| x == item)
            .map(|i| i + 1)
            .ok_or(Error::UnknownItem { id: item.0 })
    }

    /// Item at 1-based position `pos`.
    pub fn item_at(&self, pos: usize) -> Option<Item> {
        if pos >= 1 {
            self.order.get(pos - 1).copied()
        } else {
            None
        }
    }

    /// Cost of touching `item` where it currently stands.
    pub fn access(&self, item: Item, model: CostModel) -> Result<u64> {
        Ok(model.access_cost(self.position(item)?))
    }

    /// Move `item` to `target_pos`, which must not be behind its current
    /// position. This is the free exchange granted after an access.
    pub fn free_move(&mut self, item: Item, target_pos: usize) -> Result<()> {
        let from = self.position(item)?;
        if target_pos < 1 || target_pos > from {
            return Err(Error::BackwardFreeMove {
                id: item.0,
                from,
                to: target_pos,
            });
        }
        let it = self.order.remove(from - 1);
        self.order.insert(target_pos - 1, it);
        Ok(())
    }

    pub fn move_to_front(&mut self, item: Item) -> Result<()> {
        self.free_move(item, 1)
    }

    /// Rearrange the whole list into `target` using paid exchanges and
    /// return their count: the Kendall tau distance to `target`.
    pub fn paid_rearrange(&mut self, target: &[Item]) -> Result<u64> {
        let cost = kendall_tau(&self.order, target)?;
        self.order.clear();
        self.order.extend_from_slice(target);
        Ok(cost)
    }

    pub fn same_items(&self, other: &[Item]) -> bool {
        if self.order.len() != other.len() {
            return false;
        }
        let mut a: Vec<Item> = self.order.clone();
        let mut b: Vec<Item> = other.to_vec();
        a.sort();
        b.sort();
        a == b
    }
}

impl fmt::Display for ListState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.order.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Number of unordered item pairs on which `a` and `b` disagree — the
/// minimum number of adjacent transpositions turning `a` into `b`.
pub fn kendall_tau(a: &[Item], b: &[Item]) -> Result<u64> {
    if a.len() != b.len() {
        return Err(Error::ItemSetMismatch);
    }
    let max_id = a.iter().map(|x| x.0).max().map_or(0, |m| m as usize + 1);
    let mut pos_b = vec![usize::MAX; max_id];
    for (i, x) in b.iter().enumerate() {
        if (x.0 as usize) >= max_id || pos_b[x.0 as usize] != usize::MAX {
            return Err(Error::ItemSetMismatch);
        }
        pos_b[x.0 as usize] = i;
    }
    let mut mapped = Vec::with_capacity(a.len());
    for x in a {
        let p = pos_b[x.0 as usize];
        if p == usize::MAX {
            return Err(Error::ItemSetMismatch);
        }
        mapped.push(p);
    }
    let mut inversions = 0u64;
    for i in 0..mapped.len() {
        for j in i + 1..mapped.len() {
            if mapped[i] > mapped[j] {
                inversions += 1;
            }
        }
    }
    Ok(inversions)
}

/// An initial list together with the requests served against it. Item ids
/// are required to be dense (`0..l`) so that per-item state can live in
/// plain vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RequestSequence {
    initial: ListState,
    requests: Vec<Item>,
}

impl RequestSequence {
    pub fn new(initial: ListState, requests: Vec<Item>) -> Result<Self> {
        let l = initial.len();
        let mut seen = vec![false; l];
        for &x in initial.order() {
            if (x.0 as usize) >= l {
                return Err(Error::Parse(format!(
                    "item ids must be dense 0..{l}, found {x}"
                )));
            }
            seen[x.0 as usize] = true;
        }
        debug_assert!(seen.iter().all(|&s| s));
        for &x in &requests {
            if (x.0 as usize) >= l {
                return Err(Error::UnknownItem { id: x.0 });
            }
        }
        Ok(RequestSequence { initial, requests })
    }

    pub fn initial(&self) -> &ListState {
        &self.initial
    }

    pub fn requests(&self) -> &[Item] {
        &self.requests
    }

    /// Number of requests.
    pub fn n(&self) -> usize {
        self.requests.len()
    }

    /// Number of items.
    pub fn l(&self) -> usize {
        self.initial.len()
    }

    /// The same initial list, followed by this sequence's requests and then
    /// the other's. Both sequences must be over the same item set.
    pub fn concat(&self, other: &RequestSequence) -> Result<RequestSequence> {
        if !self.initial.same_items(other.initial.order()) {
            return Err(Error::ItemSetMismatch);
        }
        let mut requests = self.requests.clone();
        requests.extend_from_slice(other.requests());
        RequestSequence::new(self.initial.clone(), requests)
    }
}
