//! Online list-update algorithms behind one serve-one-request interface.
//!
//! All algorithms here use free exchanges only: after touching the
//! requested item they may pull it toward the front, and nothing else ever
//! moves. `Mtf` always moves to the front. `Mtf2` keeps one bit per item,
//! flips it on every access, and moves to the front exactly when the bit
//! lands on 0 — so all-ones initialization moves on the 1st, 3rd, …
//! accesses (`mtfo`) and all-zeros on the 2nd, 4th, … (`mtfe`); a seeded
//! random initialization gives the randomized variant (`bit`). `Ts` inserts
//! the accessed item `x` in front of the first item from the front that
//! precedes `x` and was accessed at most once since the previous access to
//! `x`, and never moves an item on its first-ever access.

use crate::error::{Error, Result};
use crate::list::{CostLedger, CostModel, Item, ListState, RequestSequence};
use crate::rng::SplitMix64;

pub trait OnlineAlgorithm {
    fn list(&self) -> &ListState;
    fn serve(&mut self, item: Item, model: CostModel) -> Result<u64>;
}

/// Serve every request in order, accumulating access costs. Free-exchange
/// algorithms never pay for exchanges, so the ledger's paid component stays
/// zero.
pub fn serve_all(
    alg: &mut dyn OnlineAlgorithm,
    requests: &[Item],
    model: CostModel,
) -> Result<CostLedger> {
    let mut ledger = CostLedger::default();
    for &x in requests {
        ledger.access += alg.serve(x, model)?;
    }
    Ok(ledger)
}

pub struct Mtf {
    list: ListState,
}

impl Mtf {
    pub fn new(initial: &ListState) -> Self {
        Mtf {
            list: initial.clone(),
        }
    }
}

impl OnlineAlgorithm for Mtf {
    fn list(&self) -> &ListState {
        &self.list
    }

    fn serve(&mut self, item: Item, model: CostModel) -> Result<u64> {
        let cost = self.list.access(item, model)?;
        self.list.move_to_front(item)?;
        Ok(cost)
    }
}

pub struct Mtf2 {
    list: ListState,
    bits: Vec<bool>,
}

impl Mtf2 {
    /// `bits` is indexed by item id; every id in the list must be covered.
    pub fn with_bits(initial: &ListState, bits: Vec<bool>) -> Result<Self> {
        for &x in initial.order() {
            if (x.0 as usize) >= bits.len() {
                return Err(Error::UnknownItem { id: x.0 });
            }
        }
        Ok(Mtf2 {
            list: initial.clone(),
            bits,
        })
    }

    /// All bits start at 1: items move on their odd-numbered accesses.
    pub fn odd(initial: &ListState) -> Self {
        Mtf2 {
            list: initial.clone(),
            bits: vec![true; max_id_plus_one(initial)],
        }
    }

    /// All bits start at 0: items move on their even-numbered accesses.
    pub fn even(initial: &ListState) -> Self {
        Mtf2 {
            list: initial.clone(),
            bits: vec![false; max_id_plus_one(initial)],
        }
    }

    /// Bits drawn independently per item from a seeded generator.
    pub fn seeded(initial: &ListState, seed: u64) -> Self {
        Mtf2 {
            list: initial.clone(),
            bits: seeded_bits(seed, max_id_plus_one(initial)),
        }
    }

    pub fn bit(&self, item: Item) -> Result<bool> {
        self.bits
            .get(item.0 as usize)
            .copied()
            .ok_or(Error::UnknownItem { id: item.0 })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl OnlineAlgorithm for Mtf2 {
    fn list(&self) -> &ListState {
        &self.list
    }

    fn serve(&mut self, item: Item, model: CostModel) -> Result<u64> {
        let cost = self.list.access(item, model)?;
        let idx = item.0 as usize;
        self.bits[idx] = !self.bits[idx];
        if !self.bits[idx] {
            self.list.move_to_front(item)?;
        }
        Ok(cost)
    }
}

pub struct Ts {
    list: ListState,
    /// Last two access times per item id; 0 means "never".
    last_two: Vec<[u64; 2]>,
    clock: u64,
}

impl Ts {
    pub fn new(initial: &ListState) -> Self {
        Ts {
            list: initial.clone(),
            last_two: vec![[0, 0]; max_id_plus_one(initial)],
            clock: 0,
        }
    }
}

impl OnlineAlgorithm for Ts {
    fn list(&self) -> &ListState {
        &self.list
    }

    fn serve(&mut self, item: Item, model: CostModel) -> Result<u64> {
        let pos = self.list.position(item)?;
        let cost = model.access_cost(pos);
        let idx = item.0 as usize;
        let [_, last] = self.last_two[idx];
        if last != 0 {
            let mut dest = None;
            for p in 1..pos {
                let y = self.list.item_at(p).expect("prefix position is occupied");
                let [y_prev, y_last] = self.last_two[y.0 as usize];
                let accesses_since = u8::from(y_last > last) + u8::from(y_prev > last);
                if accesses_since <= 1 {
                    dest = Some(p);
                    break;
                }
            }
            if let Some(p) = dest {
                self.list.free_move(item, p)?;
            }
        }
        self.clock += 1;
        self.last_two[idx] = [last, self.clock];
        Ok(cost)
    }
}

/// One bit per item id, drawn from a splitmix64 stream in id order.
pub(crate) fn seeded_bits(seed: u64, count: usize) -> Vec<bool> {
    let mut rng = SplitMix64::new(seed);
    (0..count).map(|_| rng.next_bool()).collect()
}

fn max_id_plus_one(list: &ListState) -> usize {
    list.order().iter().map(|x| x.0 as usize + 1).max().unwrap_or(0)
}

/// Name of an algorithm as accepted on the command line and stored in
/// compressed streams: `mtf`, `ts`, `mtfo`, `mtfe`, `mtf2:<bits>`,
/// `bit:<seed>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgorithmId {
    Mtf,
    Ts,
    MtfOdd,
    MtfEven,
    Mtf2(Vec<bool>),
    Bit(u64),
}

impl AlgorithmId {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "mtf" => return Ok(AlgorithmId::Mtf),
            "ts" => return Ok(AlgorithmId::Ts),
            "mtfo" => return Ok(AlgorithmId::MtfOdd),
            "mtfe" => return Ok(AlgorithmId::MtfEven),
            _ => {}
        }
        if let Some(bits) = s.strip_prefix("mtf2:") {
            if bits.is_empty() {
                return Err(Error::UnknownAlgorithm(s.to_string()));
            }
            let mut v = Vec::with_capacity(bits.len());
            for c in bits.chars() {
                match c {
                    '0' => v.push(false),
                    '1' => v.push(true),
                    _ => return Err(Error::UnknownAlgorithm(s.to_string())),
                }
            }
            return Ok(AlgorithmId::Mtf2(v));
        }
        if let Some(seed) = s.strip_prefix("bit:") {
            return seed
                .parse::<u64>()
                .map(AlgorithmId::Bit)
                .map_err(|_| Error::UnknownAlgorithm(s.to_string()));
        }
        Err(Error::UnknownAlgorithm(s.to_string()))
    }

    pub fn label(&self) -> String {
        match self {
            AlgorithmId::Mtf => "mtf".to_string(),
            AlgorithmId::Ts => "ts".to_string(),
            AlgorithmId::MtfOdd => "mtfo".to_string(),
            AlgorithmId::MtfEven => "mtfe".to_string(),
            AlgorithmId::Mtf2(bits) => {
                let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
                format!("mtf2:{s}")
            }
            AlgorithmId::Bit(seed) => format!("bit:{seed}"),
        }
    }

    pub fn instantiate(&self, initial: &ListState) -> Result<Box<dyn OnlineAlgorithm>> {
        Ok(match self {
            AlgorithmId::Mtf => Box::new(Mtf::new(initial)),
            AlgorithmId::Ts => Box::new(Ts::new(initial)),
            AlgorithmId::MtfOdd => Box::new(Mtf2::odd(initial)),
            AlgorithmId::MtfEven => Box::new(Mtf2::even(initial)),
            AlgorithmId::Mtf2(bits) => Box::new(Mtf2::with_bits(initial, bits.clone())?),
            AlgorithmId::Bit(seed) => Box::new(Mtf2::seeded(initial, *seed)),
        })
    }

    /// The per-item bits this id would start from, for ids that carry bits.
    pub(crate) fn initial_bits(&self, count: usize) -> Option<Vec<bool>> {
        match self {
            AlgorithmId::MtfOdd => Some(vec![true; count]),
            AlgorithmId::MtfEven => Some(vec![false; count]),
            AlgorithmId::Mtf2(bits) => Some(bits.clone()),
            AlgorithmId::Bit(seed) => Some(seeded_bits(*seed, count)),
            AlgorithmId::Mtf | AlgorithmId::Ts => None,
        }
    }
}

/// Instantiate `id` on the sequence's initial list and serve the whole
/// sequence.
pub fn run(id: &AlgorithmId, seq: &RequestSequence, model: CostModel) -> Result<CostLedger> {
    let mut alg = id.instantiate(seq.initial())?;
    serve_all(alg.as_mut(), seq.requests(), model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn items(ids: &[u32]) -> Vec<Item> {
        ids.iter().copied().map(Item).collect()
    }

    fn list(ids: &[u32]) -> ListState {
        ListState::new(items(ids)).unwrap()
    }

    #[test]
    fn mtf_moves_to_front_and_charges_the_position() {
        let mut alg = Mtf::new(&list(&[0, 1, 2]));
        assert_eq!(alg.serve(Item(2), CostModel::Full).unwrap(), 3);
        assert_eq!(alg.list().order(), &items(&[2, 0, 1])[..]);
    }

    #[test]
    fn mtf_front_access_is_free_under_partial() {
        let mut alg = Mtf::new(&list(&[0, 1]));
        assert_eq!(alg.serve(Item(0), CostModel::Partial).unwrap(), 0);
        assert_eq!(alg.list().order(), &items(&[0, 1])[..]);
    }

    // Two items a=0, b=1 from [a,b], serving <b,a,b,a> under the partial
    // model: every bit assignment totals 3.
    #[test]
    fn mtf2_two_item_alternation_totals_three_for_every_bit_pair() {
        let seq = items(&[1, 0, 1, 0]);
        let expected_final: [&[u32]; 4] = [&[0, 1], &[0, 1], &[1, 0], &[0, 1]];
        for (row, (a_bit, b_bit)) in [(false, false), (false, true), (true, false), (true, true)]
            .into_iter()
            .enumerate()
        {
            let mut alg = Mtf2::with_bits(&list(&[0, 1]), vec![a_bit, b_bit]).unwrap();
            let ledger = serve_all(&mut alg, &seq, CostModel::Partial).unwrap();
            assert_eq!(ledger.total(), 3, "bits ({a_bit},{b_bit})");
            assert_eq!(
                alg.list().order(),
                &items(expected_final[row])[..],
                "bits ({a_bit},{b_bit})"
            );
        }
    }

    #[test]
    fn mtf2_per_request_costs_for_all_zero_bits() {
        let mut alg = Mtf2::with_bits(&list(&[0, 1]), vec![false, false]).unwrap();
        let costs: Vec<u64> = items(&[1, 0, 1, 0])
            .iter()
            .map(|&x| alg.serve(x, CostModel::Partial).unwrap())
            .collect();
        assert_eq!(costs, vec![1, 0, 1, 1]);
    }

    #[test]
    fn mtf2_three_request_rows() {
        let seq = items(&[1, 0, 0]);
        let mut alg = Mtf2::with_bits(&list(&[0, 1]), vec![true, false]).unwrap();
        assert_eq!(
            serve_all(&mut alg, &seq, CostModel::Partial).unwrap().total(),
            1
        );
        let mut alg = Mtf2::with_bits(&list(&[0, 1]), vec![false, true]).unwrap();
        assert_eq!(
            serve_all(&mut alg, &seq, CostModel::Partial).unwrap().total(),
            3
        );
    }

    #[test]
    fn complementary_bit_pairs_on_three_requests_sum_to_at_most_four() {
        let seq = items(&[1, 0, 0]);
        for initial in [[0u32, 1], [1, 0]] {
            for bits in [[false, false], [false, true], [true, false], [true, true]] {
                let mut one = Mtf2::with_bits(&list(&initial), bits.to_vec()).unwrap();
                let mut other =
                    Mtf2::with_bits(&list(&initial), bits.iter().map(|&b| !b).collect()).unwrap();
                let sum = serve_all(&mut one, &seq, CostModel::Partial).unwrap().total()
                    + serve_all(&mut other, &seq, CostModel::Partial)
                        .unwrap()
                        .total();
                assert!(sum <= 4, "initial {initial:?} bits {bits:?} sum {sum}");
            }
        }
    }

    #[test]
    fn ts_moves_on_the_second_of_two_consecutive_requests() {
        let mut alg = Ts::new(&list(&[0, 1]));
        let costs: Vec<u64> = items(&[0, 1, 1])
            .iter()
            .map(|&x| alg.serve(x, CostModel::Partial).unwrap())
            .collect();
        assert_eq!(costs, vec![0, 1, 1]);
        assert_eq!(alg.list().order(), &items(&[1, 0])[..]);
    }

    #[test]
    fn ts_steady_state_round_costs_four() {
        let mut alg = Ts::new(&list(&[0, 1]));
        let round = items(&[1, 1, 0, 0]);
        for round_no in 0..4 {
            let cost = serve_all(&mut alg, &round, CostModel::Partial)
                .unwrap()
                .total();
            assert_eq!(cost, 4, "round {round_no}");
            assert_eq!(alg.list().order(), &items(&[0, 1])[..]);
        }
    }

    #[test]
    fn ts_never_moves_the_rare_item() {
        // x(yxxxyxxx)^k: the lone y between runs of x stays in place, so
        // each 8-request round costs 2 under the partial model.
        let k = 3;
        let mut requests = items(&[0]);
        for _ in 0..k {
            requests.extend_from_slice(&items(&[1, 0, 0, 0, 1, 0, 0, 0]));
        }
        let seq = RequestSequence::new(list(&[0, 1]), requests).unwrap();
        let ledger = run(&AlgorithmId::Ts, &seq, CostModel::Partial).unwrap();
        assert_eq!(ledger.total(), 2 * k as u64);
    }

    #[test]
    fn seeded_bits_reproduce_and_match_explicit_bits() {
        let initial = list(&[0, 1, 2, 3]);
        let bits = seeded_bits(99, 4);
        let seq = items(&[3, 1, 3, 0, 2, 2, 1, 3]);
        let mut by_seed = Mtf2::seeded(&initial, 99);
        let mut by_bits = Mtf2::with_bits(&initial, bits).unwrap();
        for &x in &seq {
            assert_eq!(
                by_seed.serve(x, CostModel::Full).unwrap(),
                by_bits.serve(x, CostModel::Full).unwrap()
            );
            assert_eq!(by_seed.list().order(), by_bits.list().order());
        }
    }

    #[test]
    fn all_ones_seeding_is_mtf_odd() {
        let initial = list(&[0, 1, 2]);
        let seq = items(&[2, 1, 2, 2, 0, 1]);
        let mut explicit = Mtf2::with_bits(&initial, vec![true; 3]).unwrap();
        let mut odd = Mtf2::odd(&initial);
        for &x in &seq {
            assert_eq!(
                explicit.serve(x, CostModel::Partial).unwrap(),
                odd.serve(x, CostModel::Partial).unwrap()
            );
            assert_eq!(explicit.list().order(), odd.list().order());
        }
    }

    #[test]
    fn odd_and_even_bits_stay_complementary() {
        let initial = list(&[0, 1, 2]);
        let seq = items(&[2, 0, 2, 1, 1, 2, 0, 0, 2, 1]);
        let mut odd = Mtf2::odd(&initial);
        let mut even = Mtf2::even(&initial);
        for &x in &seq {
            odd.serve(x, CostModel::Full).unwrap();
            even.serve(x, CostModel::Full).unwrap();
            for id in 0..3 {
                assert_ne!(odd.bit(Item(id)).unwrap(), even.bit(Item(id)).unwrap());
            }
        }
    }

    #[test]
    fn algorithm_ids_round_trip_through_labels() {
        for name in ["mtf", "ts", "mtfo", "mtfe", "mtf2:0110", "bit:42"] {
            let id = AlgorithmId::parse(name).unwrap();
            assert_eq!(id.label(), name);
        }
        assert!(AlgorithmId::parse("mtf3").is_err());
        assert!(AlgorithmId::parse("mtf2:012").is_err());
        assert!(AlgorithmId::parse("mtf2:").is_err());
        assert!(AlgorithmId::parse("bit:x").is_err());
    }

    #[test]
    fn mtf2_requires_bits_for_every_item() {
        assert!(Mtf2::with_bits(&list(&[0, 1, 2]), vec![true, false]).is_err());
    }

    fn arb_requests(l: u32, max_len: usize) -> impl Strategy<Value = Vec<Item>> {
        prop::collection::vec((0..l).prop_map(Item), 0..max_len)
    }

    proptest! {
        #[test]
        fn twice_requested_item_sits_at_the_front(
            requests in arb_requests(4, 24),
            x in 0u32..4,
        ) {
            let initial = list(&[0, 1, 2, 3]);
            for id in [AlgorithmId::Mtf, AlgorithmId::Ts, AlgorithmId::MtfOdd, AlgorithmId::MtfEven] {
                let mut alg = id.instantiate(&initial).unwrap();
                for &r in &requests {
                    alg.serve(r, CostModel::Full).unwrap();
                }
                alg.serve(Item(x), CostModel::Full).unwrap();
                alg.serve(Item(x), CostModel::Full).unwrap();
                prop_assert_eq!(alg.list().item_at(1).unwrap(), Item(x));
            }
        }

        #[test]
        fn serving_permutes_but_never_changes_membership(
            requests in arb_requests(5, 32),
        ) {
            let initial = ListState::identity(5);
            for id in [AlgorithmId::Mtf, AlgorithmId::Ts, AlgorithmId::MtfOdd, AlgorithmId::Bit(7)] {
                let mut alg = id.instantiate(&initial).unwrap();
                for &r in &requests {
                    alg.serve(r, CostModel::Partial).unwrap();
                }
                prop_assert!(alg.list().same_items(initial.order()));
            }
        }
    }
}
