//! Experiment runner and verification machinery: single-run reports with
//! optimal baselines, two-item projections and the pairwise factoring
//! check, the inversion-potential audit of the two complementary-bit
//! algorithms against an optimal trace, and per-phase cost tables.

use crate::algorithms::{self, AlgorithmId, Mtf2, OnlineAlgorithm};
use crate::error::{Error, Result};
use crate::list::{kendall_tau, CostLedger, CostModel, Item, ListState, RequestSequence};
use crate::offline::{
    lookahead_strategy, opt_dp_with_limit, opt_subset_transfer_dp_with_limit, pair_opt,
    partition_phases, DpSolution, Phase, PhaseForm,
};
use serde_json::json;
use std::fmt;

/// How a run's optimal baseline is obtained. `Dp` and `Subset` are exact
/// but capacity-limited; `Pair` is exact on two items; `Strategy` costs the
/// one-request-lookahead schedule, an upper bound on the true optimum, so
/// ratios against it are lower bounds on the competitive ratio.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OptMode {
    None,
    Dp,
    Subset,
    Pair,
    Strategy,
}

impl OptMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(OptMode::None),
            "dp" => Ok(OptMode::Dp),
            "subset" => Ok(OptMode::Subset),
            "pair" => Ok(OptMode::Pair),
            "strategy" => Ok(OptMode::Strategy),
            other => Err(Error::Parse(format!(
                "unknown opt mode {other:?} (expected none, dp, subset, pair, or strategy)"
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            OptMode::None => "none",
            OptMode::Dp => "dp",
            OptMode::Subset => "subset",
            OptMode::Pair => "pair",
            OptMode::Strategy => "strategy",
        }
    }

    /// True when the baseline overestimates nothing: the reported ratio is
    /// the exact cost ratio rather than a lower bound.
    pub fn is_exact(self) -> bool {
        !matches!(self, OptMode::Strategy)
    }
}

/// A reduced cost ratio, kept as integers so reports stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "ratio denominator must be positive");
        let g = gcd(num, den).max(1);
        Ratio { num: num / g, den: den / g }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Decimal rendering to six places.
    pub fn decimal(self) -> String {
        format!("{:.6}", self.as_f64())
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Outcome of one simulation, with an optional optimal baseline.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub family: String,
    pub params: String,
    pub algorithm: String,
    pub model: CostModel,
    pub n: usize,
    pub l: usize,
    pub ledger: CostLedger,
    pub opt: Option<u64>,
    pub opt_mode: OptMode,
}

impl RunReport {
    pub fn ratio(&self) -> Option<Ratio> {
        match self.opt {
            Some(opt) if opt > 0 => Some(Ratio::new(self.ledger.total(), opt)),
            _ => None,
        }
    }

    /// The ratio is only a lower bound on the competitive ratio when the
    /// baseline itself is an upper bound on the optimum.
    pub fn ratio_is_lower_bound(&self) -> bool {
        !self.opt_mode.is_exact()
    }

    pub fn csv_header() -> &'static str {
        "family,params,algorithm,model,n,l,access,exchanges,total,opt,ratio"
    }

    pub fn csv_row(&self) -> String {
        let opt = self.opt.map(|o| o.to_string()).unwrap_or_default();
        let ratio = self.ratio().map(|r| r.decimal()).unwrap_or_default();
        [
            csv_field(&self.family),
            csv_field(&self.params),
            csv_field(&self.algorithm),
            self.model.name().to_string(),
            self.n.to_string(),
            self.l.to_string(),
            self.ledger.access.to_string(),
            self.ledger.paid_exchanges.to_string(),
            self.ledger.total().to_string(),
            opt,
            ratio,
        ]
        .join(",")
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": self.family,
            "params": self.params,
            "algorithm": self.algorithm,
            "model": self.model.name(),
            "n": self.n,
            "l": self.l,
            "access": self.ledger.access,
            "exchanges": self.ledger.paid_exchanges,
            "total": self.ledger.total(),
            "opt": self.opt,
            "ratio": self.ratio().map(|r| round6(r.as_f64())),
        })
    }
}

fn round6(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Simulate `id` on `seq` and attach the baseline selected by `opt_mode`.
/// The `family` and `params` fields start empty; callers that know the
/// sequence's origin fill them in.
pub fn run(
    id: &AlgorithmId,
    seq: &RequestSequence,
    model: CostModel,
    opt_mode: OptMode,
    max_l: usize,
) -> Result<RunReport> {
    let ledger = algorithms::run(id, seq, model)?;
    let opt = match opt_mode {
        OptMode::None => None,
        OptMode::Dp => Some(opt_dp_with_limit(seq, model, max_l)?.cost),
        OptMode::Subset => Some(opt_subset_transfer_dp_with_limit(seq, model, max_l)?.cost),
        OptMode::Pair => Some(pair_opt(seq, model)?),
        OptMode::Strategy => Some(lookahead_strategy(seq, model)?.total()),
    };
    Ok(RunReport {
        family: String::new(),
        params: String::new(),
        algorithm: id.label(),
        model,
        n: seq.n(),
        l: seq.l(),
        ledger,
        opt,
        opt_mode,
    })
}

/// A sequence restricted to two of its items. `pair` lists the original
/// items in their initial relative order; in the projected sequence the
/// front one becomes item 0 and the other item 1.
#[derive(Clone, Debug)]
pub struct Projection {
    pub pair: [Item; 2],
    pub seq: RequestSequence,
}

pub fn project(seq: &RequestSequence, a: Item, b: Item) -> Result<Projection> {
    if a == b {
        return Err(Error::OutOfRange(format!(
            "cannot project onto a pair of identical items ({a}, {b})"
        )));
    }
    let pa = seq.initial().position(a)?;
    let pb = seq.initial().position(b)?;
    let (front, back) = if pa < pb { (a, b) } else { (b, a) };
    let reqs = seq
        .requests()
        .iter()
        .filter(|&&x| x == a || x == b)
        .map(|&x| if x == front { Item(0) } else { Item(1) })
        .collect();
    Ok(Projection {
        pair: [front, back],
        seq: RequestSequence::new(ListState::identity(2), reqs)?,
    })
}

/// Both sides of the pairwise cost decomposition: the partial-model cost
/// on the whole list, and the sum of partial-model costs over all
/// two-item projections. They agree for every algorithm this crate
/// implements, because each one reorders a pair based only on the
/// requests to that pair (bit-carrying algorithms project by restricting
/// their initial bit assignment to the pair).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactoringReport {
    pub whole: u64,
    pub pair_sum: u64,
    pub pairs: usize,
}

impl FactoringReport {
    pub fn holds(&self) -> bool {
        self.whole == self.pair_sum
    }
}

pub fn factoring_check(id: &AlgorithmId, seq: &RequestSequence) -> Result<FactoringReport> {
    let l = seq.l();
    let whole = algorithms::run(id, seq, CostModel::Partial)?.total();
    let full_bits = id.initial_bits(l);
    let mut pair_sum = 0;
    let mut pairs = 0;
    for a in 0..l {
        for b in a + 1..l {
            let proj = project(seq, Item(a as u32), Item(b as u32))?;
            let proj_id = match (id, &full_bits) {
                (AlgorithmId::Mtf, _) => AlgorithmId::Mtf,
                (AlgorithmId::Ts, _) => AlgorithmId::Ts,
                (_, Some(bits)) => AlgorithmId::Mtf2(vec![
                    bits[proj.pair[0].0 as usize],
                    bits[proj.pair[1].0 as usize],
                ]),
                _ => unreachable!("bitless ids are matched above"),
            };
            pair_sum += algorithms::run(&proj_id, &proj.seq, CostModel::Partial)?.total();
            pairs += 1;
        }
    }
    Ok(FactoringReport { whole, pair_sum, pairs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuditEventKind {
    /// Both online algorithms serve one request.
    Online,
    /// The optimal schedule performs one paid exchange.
    Offline,
}

/// One event of the amortized audit. The amortized cost is the online
/// cost plus the change in potential; the audit checks it never exceeds
/// four times what the optimal schedule pays for the same event.
#[derive(Clone, Copy, Debug)]
pub struct AuditEvent {
    pub kind: AuditEventKind,
    pub request_index: usize,
    pub online_cost: u64,
    pub opt_cost: u64,
    pub phi_before: u64,
    pub phi_after: u64,
}

impl AuditEvent {
    pub fn amortized(&self) -> i64 {
        self.online_cost as i64 + self.phi_after as i64 - self.phi_before as i64
    }

    pub fn within_bound(&self) -> bool {
        self.amortized() <= 4 * self.opt_cost as i64
    }
}

#[derive(Clone, Debug)]
pub struct AuditReport {
    pub events: Vec<AuditEvent>,
    pub mtfo_total: u64,
    pub mtfe_total: u64,
    pub opt_total: u64,
    pub phi_start: u64,
    pub phi_end: u64,
    pub violations: usize,
}

impl AuditReport {
    pub fn passes(&self) -> bool {
        self.violations == 0 && self.mtfo_total + self.mtfe_total <= 4 * self.opt_total
    }
}

/// Decompose a permutation change into single adjacent swaps, returning
/// the order after each swap. The path length equals the Kendall tau
/// distance: each swap removes exactly one disagreement.
pub fn adjacent_swap_path(from: &[Item], to: &[Item]) -> Result<Vec<Vec<Item>>> {
    kendall_tau(from, to)?;
    let mut cur = from.to_vec();
    let mut states = Vec::new();
    for i in 0..to.len() {
        let p = i + cur[i..]
            .iter()
            .position(|&x| x == to[i])
            .expect("item sets match");
        for q in (i + 1..=p).rev() {
            cur.swap(q - 1, q);
            states.push(cur.clone());
        }
    }
    Ok(states)
}

/// Audit an optimal full-model trace against the odd and even bit
/// algorithms using the weighted-inversion potential: a pair (a, b)
/// counts when an algorithm has `a` before `b` but the optimal list has
/// `b` before `a`, with weight 1 if the algorithm's bit for `b` is set
/// and 2 otherwise — the number of accesses to `b` still needed before it
/// moves to the front. Every paid exchange of the trace is replayed as
/// its own event with optimal cost 1; each request is one online event
/// with optimal cost equal to the traced access position.
pub fn potential_audit(seq: &RequestSequence, trace: &DpSolution) -> Result<AuditReport> {
    if trace.model != CostModel::Full {
        return Err(Error::Format(format!(
            "the potential audit accounts costs in the full model, got a {} trace",
            trace.model.name()
        )));
    }
    if trace.steps.len() != seq.n() {
        return Err(Error::Format(format!(
            "trace has {} steps for {} requests",
            trace.steps.len(),
            seq.n()
        )));
    }

    let mut mtfo = Mtf2::odd(seq.initial());
    let mut mtfe = Mtf2::even(seq.initial());
    let mut opt_order: Vec<Item> = seq.initial().order().to_vec();

    let phi_start = potential(&mtfo, &mtfe, &opt_order)?;
    let mut phi = phi_start;
    let mut events = Vec::new();
    let mut mtfo_total = 0;
    let mut mtfe_total = 0;
    let mut opt_total = 0;

    for (t, (&x, step)) in seq.requests().iter().zip(&trace.steps).enumerate() {
        let path = adjacent_swap_path(&opt_order, &step.target)?;
        if path.len() as u64 != step.exchange {
            return Err(Error::Format(format!(
                "request {t}: trace records {} paid exchanges, rearrangement needs {}",
                step.exchange,
                path.len()
            )));
        }
        for order in path {
            opt_order = order;
            let phi_after = potential(&mtfo, &mtfe, &opt_order)?;
            events.push(AuditEvent {
                kind: AuditEventKind::Offline,
                request_index: t,
                online_cost: 0,
                opt_cost: 1,
                phi_before: phi,
                phi_after,
            });
            phi = phi_after;
            opt_total += 1;
        }

        let pos = opt_order.iter().position(|&i| i == x).ok_or(Error::UnknownItem { id: x.0 })?;
        if (pos + 1) as u64 != step.access {
            return Err(Error::Format(format!(
                "request {t}: trace records access cost {}, item sits at position {}",
                step.access,
                pos + 1
            )));
        }
        let odd_cost = mtfo.serve(x, CostModel::Full)?;
        let even_cost = mtfe.serve(x, CostModel::Full)?;
        let phi_after = potential(&mtfo, &mtfe, &opt_order)?;
        events.push(AuditEvent {
            kind: AuditEventKind::Online,
            request_index: t,
            online_cost: odd_cost + even_cost,
            opt_cost: step.access,
            phi_before: phi,
            phi_after,
        });
        phi = phi_after;
        mtfo_total += odd_cost;
        mtfe_total += even_cost;
        opt_total += step.access;
    }

    let violations = events.iter().filter(|e| !e.within_bound()).count();
    Ok(AuditReport {
        events,
        mtfo_total,
        mtfe_total,
        opt_total,
        phi_start,
        phi_end: phi,
        violations,
    })
}

fn potential(mtfo: &Mtf2, mtfe: &Mtf2, opt_order: &[Item]) -> Result<u64> {
    Ok(weighted_inversions(mtfo, opt_order)? + weighted_inversions(mtfe, opt_order)?)
}

fn weighted_inversions(alg: &Mtf2, opt_order: &[Item]) -> Result<u64> {
    let mut opt_pos = vec![usize::MAX; opt_order.len()];
    for (p, &item) in opt_order.iter().enumerate() {
        opt_pos[item.0 as usize] = p;
    }
    let order = alg.list().order();
    let mut total = 0;
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            if opt_pos[b.0 as usize] < opt_pos[a.0 as usize] {
                total += if alg.bit(b)? { 1 } else { 2 };
            }
        }
    }
    Ok(total)
}

/// Costs of one phase, each obtained by simulating the phase in
/// isolation from the order it starts with: the canonical odd and even
/// bit algorithms, the timestamp rule, the worst single bit algorithm
/// over all initial bit assignments, the worst complementary pair sum,
/// and the optimal pair cost. All costs are partial-model.
#[derive(Clone, Debug)]
pub struct PhaseCostRow {
    pub phase: Phase,
    pub form: String,
    pub mtfo: u64,
    pub mtfe: u64,
    pub ts: u64,
    pub mtf2_worst: u64,
    pub pair_sum_worst: u64,
    pub opt: u64,
}

impl PhaseCostRow {
    pub fn sum(&self) -> u64 {
        self.mtfo + self.mtfe + self.ts
    }

    /// The one phase shape where a single bit algorithm can pay three
    /// times the optimum: a lone alternation closed by the front item.
    pub fn critical(&self) -> bool {
        self.phase.form == PhaseForm::C && self.phase.k == 1
    }
}

#[derive(Clone, Debug, Default)]
pub struct PhaseCostTotals {
    pub mtfo: u64,
    pub mtfe: u64,
    pub ts: u64,
    pub mtf2_worst: u64,
    pub pair_sum_worst: u64,
    pub opt: u64,
}

#[derive(Clone, Debug)]
pub struct PhaseCostTable {
    pub rows: Vec<PhaseCostRow>,
    pub totals: PhaseCostTotals,
    pub residual_len: usize,
}

fn render_form(phase: &Phase) -> String {
    let j = phase.j;
    let k = phase.k;
    match phase.form {
        PhaseForm::A => format!("x^{j}yy"),
        PhaseForm::B => format!("x^{j}(yx)^{k}yy"),
        PhaseForm::C => format!("x^{j}(yx)^{k}x"),
    }
}

pub fn phase_cost_table(seq: &RequestSequence) -> Result<PhaseCostTable> {
    let decomposition = partition_phases(seq)?;
    let first = seq.initial().item_at(1).expect("two-item list");
    let second = seq.initial().item_at(2).expect("two-item list");

    let mut rows = Vec::with_capacity(decomposition.phases.len());
    let mut totals = PhaseCostTotals::default();
    for phase in &decomposition.phases {
        let x_item = if phase.phase_type == 1 { first } else { second };
        let reqs = seq.requests()[phase.start..phase.start + phase.len]
            .iter()
            .map(|&r| if r == x_item { Item(0) } else { Item(1) })
            .collect();
        let standalone = RequestSequence::new(ListState::identity(2), reqs)?;

        let cost = |id: &AlgorithmId| -> Result<u64> {
            Ok(algorithms::run(id, &standalone, CostModel::Partial)?.total())
        };
        let mtfo = cost(&AlgorithmId::MtfOdd)?;
        let mtfe = cost(&AlgorithmId::MtfEven)?;
        let ts = cost(&AlgorithmId::Ts)?;
        let mut mtf2_worst = 0;
        let mut pair_sum_worst = 0;
        for assignment in 0..4u8 {
            let bits = vec![assignment & 1 == 1, assignment & 2 == 2];
            let complement: Vec<bool> = bits.iter().map(|&b| !b).collect();
            let one = cost(&AlgorithmId::Mtf2(bits))?;
            let other = cost(&AlgorithmId::Mtf2(complement))?;
            mtf2_worst = mtf2_worst.max(one);
            pair_sum_worst = pair_sum_worst.max(one + other);
        }
        let opt = pair_opt(&standalone, CostModel::Partial)?;

        totals.mtfo += mtfo;
        totals.mtfe += mtfe;
        totals.ts += ts;
        totals.mtf2_worst += mtf2_worst;
        totals.pair_sum_worst += pair_sum_worst;
        totals.opt += opt;
        rows.push(PhaseCostRow {
            phase: *phase,
            form: render_form(phase),
            mtfo,
            mtfe,
            ts,
            mtf2_worst,
            pair_sum_worst,
            opt,
        });
    }
    Ok(PhaseCostTable {
        rows,
        totals,
        residual_len: decomposition.residual_len(),
    })
}
