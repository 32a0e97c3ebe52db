//! Prebuilt verification suites.
//!
//! Each suite recomputes a small table of costs from scratch and checks the
//! cells against the closed forms they are supposed to satisfy. A suite
//! passes only if every check holds, so a suite is a self-contained
//! regression over the algorithms, the offline baselines, and the phase
//! analysis. The CLI renders the table and exits nonzero if a check fails.

use crate::advice::advice_lower_bound;
use crate::algorithms::{self, AlgorithmId, Mtf2, OnlineAlgorithm};
use crate::analysis::{self, phase_cost_table, Ratio};
use crate::error::{Error, Result};
use crate::generators::FamilySpec;
use crate::list::{CostModel, Item, ListState, RequestSequence};
use crate::offline::{lookahead_strategy, pair_opt};

/// Identifies one of the prebuilt suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Bit-pair variants serving `b a b a` from `[a b]`.
    Table1,
    /// Complementary bit pairs serving `b a a`.
    Table2,
    /// Per-phase costs of the two-item phase forms.
    Table3,
    /// Per-phase worst case of a single bit-driven list.
    Table4,
    /// Partial-model ratios on the doubled-pair families.
    RatioPartial,
    /// Full-model ratio of the best bit variant against the lookahead schedule.
    RatioFull,
    /// Growth of the bit-variant ratio on the triple-block family.
    Mtf2Ratio,
    /// Advice bits needed per request for a given competitiveness target.
    AdviceBound,
}

impl Suite {
    /// Parses a suite identifier as accepted by the CLI.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "table1" => Ok(Suite::Table1),
            "table2" => Ok(Suite::Table2),
            "table3" => Ok(Suite::Table3),
            "table4" => Ok(Suite::Table4),
            "ratio-partial" => Ok(Suite::RatioPartial),
            "ratio-full" => Ok(Suite::RatioFull),
            "mtf2-2.5" => Ok(Suite::Mtf2Ratio),
            "advice-bound" => Ok(Suite::AdviceBound),
            other => Err(Error::Parse(format!("unknown suite: {other}"))),
        }
    }

    /// The identifier understood by [`Suite::parse`].
    pub fn id(&self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Table2 => "table2",
            Suite::Table3 => "table3",
            Suite::Table4 => "table4",
            Suite::RatioPartial => "ratio-partial",
            Suite::RatioFull => "ratio-full",
            Suite::Mtf2Ratio => "mtf2-2.5",
            Suite::AdviceBound => "advice-bound",
        }
    }

    /// All suites, in the order the CLI lists them.
    pub fn all() -> [Suite; 8] {
        [
            Suite::Table1,
            Suite::Table2,
            Suite::Table3,
            Suite::Table4,
            Suite::RatioPartial,
            Suite::RatioFull,
            Suite::Mtf2Ratio,
            Suite::AdviceBound,
        ]
    }
}

/// One verified property of a suite's table.
#[derive(Clone, Debug)]
pub struct Check {
    /// Short name of the property.
    pub label: String,
    /// Whether the recomputed cells satisfy it.
    pub pass: bool,
    /// Measured values backing the verdict.
    pub detail: String,
}

/// A rendered suite: column headers, formatted rows, and the checks run
/// against the underlying numbers.
#[derive(Clone, Debug)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub checks: Vec<Check>,
}

impl Table {
    /// True if every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// CSV rendering: header line, then one line per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&join_csv(&self.columns));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&join_csv(row));
            out.push('\n');
        }
        out
    }

    /// Aligned plain-text rendering with the check list appended.
    pub fn to_pretty(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if cell.len() > widths[i] {
                    widths[i] = cell.len();
                }
            }
        }
        let mut out = String::new();
        out.push_str(&self.title);
        out.push('\n');
        let render_line = |cells: &[String], widths: &[usize]| {
            let mut line = String::new();
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                if i + 1 < cells.len() {
                    for _ in cell.len()..widths[i] {
                        line.push(' ');
                    }
                }
            }
            line
        };
        out.push_str(&render_line(&self.columns, &widths));
        out.push('\n');
        let total: usize = widths.iter().sum::<usize>() + 2 * (widths.len().saturating_sub(1));
        for _ in 0..total {
            out.push('-');
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&render_line(row, &widths));
            out.push('\n');
        }
        out.push('\n');
        for check in &self.checks {
            let mark = if check.pass { "ok " } else { "FAIL" };
            out.push_str(&format!("[{mark}] {}: {}\n", check.label, check.detail));
        }
        out
    }

    /// JSON rendering of the table and its checks.
    pub fn to_json(&self) -> String {
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "label": c.label,
                    "pass": c.pass,
                    "detail": c.detail,
                })
            })
            .collect();
        serde_json::json!({
            "title": self.title,
            "columns": self.columns,
            "rows": self.rows,
            "checks": checks,
            "passed": self.passed(),
        })
        .to_string()
    }
}

fn join_csv(cells: &[String]) -> String {
    cells
        .iter()
        .map(|c| analysis::csv_field(c))
        .collect::<Vec<_>>()
        .join(",")
}

/// Runs a suite. `gamma` overrides the competitiveness targets of the
/// advice suite and is ignored by the others.
pub fn run_suite(suite: Suite, gamma: Option<f64>) -> Result<Table> {
    match suite {
        Suite::Table1 => suite_table1(),
        Suite::Table2 => suite_table2(),
        Suite::Table3 => suite_table3(),
        Suite::Table4 => suite_table4(),
        Suite::RatioPartial => suite_ratio_partial(),
        Suite::RatioFull => suite_ratio_full(),
        Suite::Mtf2Ratio => suite_mtf2_ratio(),
        Suite::AdviceBound => suite_advice_bound(gamma),
    }
}

fn two_items() -> (Item, Item) {
    (Item(0), Item(1))
}

fn order_letters(order: &[Item]) -> String {
    order
        .iter()
        .map(|item| (b'a' + item.0 as u8) as char)
        .collect()
}

fn bits_label(bits: &[bool]) -> String {
    let cells: Vec<&str> = bits.iter().map(|&b| if b { "1" } else { "0" }).collect();
    format!("({})", cells.join(","))
}

/// Serves `requests` on a fresh bit-driven list and returns the per-request
/// partial costs together with the final order.
fn serve_bit_pair(
    initial: &[Item],
    bits: Vec<bool>,
    requests: &[Item],
) -> Result<(Vec<u64>, String)> {
    let start = ListState::new(initial.to_vec())?;
    let mut alg = Mtf2::with_bits(&start, bits)?;
    let mut costs = Vec::with_capacity(requests.len());
    for &req in requests {
        costs.push(alg.serve(req, CostModel::Partial)?);
    }
    Ok((costs, order_letters(alg.list().order())))
}

fn cost_breakdown(costs: &[u64]) -> String {
    let total: u64 = costs.iter().sum();
    let parts: Vec<String> = costs.iter().map(|c| c.to_string()).collect();
    format!("{}={}", parts.join("+"), total)
}

fn suite_table1() -> Result<Table> {
    let (a, b) = two_items();
    let initial = [a, b];
    let requests = [b, a, b, a];
    let assignments = [
        [false, false],
        [false, true],
        [true, false],
        [true, true],
    ];
    let expected_finals = ["ab", "ab", "ba", "ab"];

    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut totals = Vec::new();
    let mut finals = Vec::new();
    for bits in &assignments {
        let (costs, final_order) = serve_bit_pair(&initial, bits.to_vec(), &requests)?;
        let total: u64 = costs.iter().sum();
        rows.push(vec![
            bits_label(bits),
            cost_breakdown(&costs),
            total.to_string(),
            final_order.clone(),
        ]);
        totals.push(total);
        finals.push(final_order);
    }
    checks.push(Check {
        label: "every assignment pays 3".to_string(),
        pass: totals.iter().all(|&t| t == 3),
        detail: format!("totals {totals:?}"),
    });
    checks.push(Check {
        label: "final orders".to_string(),
        pass: finals == expected_finals,
        detail: format!("measured {finals:?}, expected {expected_finals:?}"),
    });
    Ok(Table {
        title: "bit-pair variants serving b a b a from [a b] (partial costs)".to_string(),
        columns: vec![
            "bits (a,b)".to_string(),
            "per-request cost".to_string(),
            "total".to_string(),
            "final order".to_string(),
        ],
        rows,
        checks,
    })
}

fn suite_table2() -> Result<Table> {
    let (a, b) = two_items();
    let requests = [b, a, a];
    let assignments = [
        [false, false],
        [false, true],
        [true, false],
        [true, true],
    ];

    let mut rows = Vec::new();
    let mut totals = Vec::new();
    let mut max_pair_sum = 0u64;
    for bits in &assignments {
        let complement = [!bits[0], !bits[1]];
        let (costs, _) = serve_bit_pair(&[a, b], bits.to_vec(), &requests)?;
        let (other_costs, _) = serve_bit_pair(&[a, b], complement.to_vec(), &requests)?;
        let cost: u64 = costs.iter().sum();
        let other: u64 = other_costs.iter().sum();
        let total = cost + other;
        max_pair_sum = max_pair_sum.max(total);
        rows.push(vec![
            "ab".to_string(),
            bits_label(bits),
            cost_breakdown(&costs),
            format!("{} -> {}", bits_label(&complement), other),
            total.to_string(),
        ]);
        totals.push(total);
    }

    // From the flipped start order every assignment serves the sequence for
    // at most the worst single cost, so the complementary pair is bounded by
    // twice that worst case.
    let mut worst_single = 0u64;
    let mut flipped_pair_sums = Vec::new();
    for bits in &assignments {
        let complement = [!bits[0], !bits[1]];
        let (costs, _) = serve_bit_pair(&[b, a], bits.to_vec(), &requests)?;
        let (other_costs, _) = serve_bit_pair(&[b, a], complement.to_vec(), &requests)?;
        let cost: u64 = costs.iter().sum();
        let other: u64 = other_costs.iter().sum();
        worst_single = worst_single.max(cost);
        flipped_pair_sums.push(cost + other);
        max_pair_sum = max_pair_sum.max(cost + other);
    }
    let bound_total = worst_single * 2;
    rows.push(vec![
        "ba".to_string(),
        "any".to_string(),
        format!("<= {worst_single} each"),
        format!("<= {worst_single}"),
        bound_total.to_string(),
    ]);
    totals.push(bound_total);

    let expected_totals = [3u64, 4, 4, 3, 4];
    let mut checks = Vec::new();
    checks.push(Check {
        label: "row totals".to_string(),
        pass: totals == expected_totals,
        detail: format!("measured {totals:?}, expected {expected_totals:?}"),
    });
    checks.push(Check {
        label: "every complementary pair pays at most 4".to_string(),
        pass: max_pair_sum <= 4,
        detail: format!(
            "worst pair sum {max_pair_sum} (flipped-start sums {flipped_pair_sums:?})"
        ),
    });
    Ok(Table {
        title: "complementary bit pairs serving b a a (partial costs)".to_string(),
        columns: vec![
            "start".to_string(),
            "bits (a,b)".to_string(),
            "cost".to_string(),
            "complement cost".to_string(),
            "pair total".to_string(),
        ],
        rows,
        checks,
    })
}

/// The two-item phases checked by the phase suites: `x^j y y`,
/// `x^j (y x)^k y y`, and `x^j (y x)^k x`, all with `j = 1`.
struct PhaseCase {
    label: String,
    k: u64,
    closes_with_x: bool,
}

fn phase_cases() -> Vec<PhaseCase> {
    let mut cases = vec![PhaseCase {
        label: "x yy".to_string(),
        k: 0,
        closes_with_x: false,
    }];
    for k in 1..=6 {
        cases.push(PhaseCase {
            label: format!("x (yx)^{k} yy"),
            k,
            closes_with_x: false,
        });
    }
    for k in 1..=6 {
        cases.push(PhaseCase {
            label: format!("x (yx)^{k} x"),
            k,
            closes_with_x: true,
        });
    }
    cases
}

fn phase_requests(case: &PhaseCase) -> RequestSequence {
    let mut ids = vec![Item(0)];
    for _ in 0..case.k {
        ids.push(Item(1));
        ids.push(Item(0));
    }
    if case.closes_with_x {
        ids.push(Item(0));
    } else {
        ids.push(Item(1));
        ids.push(Item(1));
    }
    RequestSequence::new(ListState::identity(2), ids).expect("two-item phase ids are dense")
}

fn suite_table3() -> Result<Table> {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut all_pass = true;
    let mut details = Vec::new();
    for case in phase_cases() {
        let seq = phase_requests(&case);
        let table = phase_cost_table(&seq)?;
        if table.rows.len() != 1 || table.residual_len != 0 {
            return Err(Error::Format(format!(
                "phase {} did not parse as a single phase",
                case.label
            )));
        }
        let row = &table.rows[0];
        let pair = row.pair_sum_worst;
        let ts = row.ts;
        let sum = pair + ts;
        let opt = row.opt;
        let (ts_expect, opt_expect, pair_bound, sum_bound) = if case.closes_with_x {
            (2 * case.k - 1, case.k, 3 * case.k + 1, 5 * case.k)
        } else if case.k == 0 {
            (2, 1, 3, 5)
        } else {
            (2 * case.k, case.k + 1, 3 * case.k + 3, 5 * case.k + 3)
        };
        let ok = ts == ts_expect
            && opt == opt_expect
            && pair <= pair_bound
            && sum <= sum_bound
            && sum <= 5 * opt;
        if !ok {
            all_pass = false;
            details.push(format!(
                "{}: pair {pair} (bound {pair_bound}), ts {ts} (expected {ts_expect}), \
                 opt {opt} (expected {opt_expect})",
                case.label
            ));
        }
        rows.push(vec![
            case.label.clone(),
            format!("{pair} <= {pair_bound}"),
            ts.to_string(),
            format!("{sum} <= {sum_bound}"),
            opt.to_string(),
            Ratio::new(sum, opt).decimal(),
        ]);
    }
    checks.push(Check {
        label: "pair bound, exact ts and opt, and sum <= 5*opt on every phase".to_string(),
        pass: all_pass,
        detail: if details.is_empty() {
            format!("{} phases verified", rows.len())
        } else {
            details.join("; ")
        },
    });
    Ok(Table {
        title: "per-phase costs of the complementary pair and the timestamp rule (partial)"
            .to_string(),
        columns: vec![
            "phase".to_string(),
            "pair worst".to_string(),
            "ts".to_string(),
            "pair + ts".to_string(),
            "opt".to_string(),
            "(pair+ts)/opt".to_string(),
        ],
        rows,
        checks,
    })
}

fn suite_table4() -> Result<Table> {
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut all_pass = true;
    let mut details = Vec::new();
    let mut critical_seen = false;
    for case in phase_cases() {
        let seq = phase_requests(&case);
        let table = phase_cost_table(&seq)?;
        let row = &table.rows[0];
        let worst = row.mtf2_worst;
        let opt = row.opt;
        let critical = case.closes_with_x && case.k == 1;
        let (bound, opt_expect) = if case.closes_with_x {
            let bound = if case.k == 1 {
                3
            } else if case.k % 2 == 0 {
                (3 * case.k + 2) / 2
            } else {
                (3 * case.k + 3) / 2
            };
            (bound, case.k)
        } else if case.k == 0 {
            (2, 1)
        } else {
            ((3 * case.k + 4 + case.k % 2) / 2, case.k + 1)
        };
        let ratio_ok = if critical {
            critical_seen = true;
            worst == 3 && opt == 1
        } else {
            worst <= 2 * opt
        };
        let ok = worst <= bound && opt == opt_expect && ratio_ok;
        if !ok {
            all_pass = false;
            details.push(format!(
                "{}: worst {worst} (bound {bound}), opt {opt} (expected {opt_expect})",
                case.label
            ));
        }
        rows.push(vec![
            case.label.clone(),
            format!("{worst} <= {bound}"),
            opt.to_string(),
            Ratio::new(worst, opt).decimal(),
            if critical { "critical".to_string() } else { String::new() },
        ]);
    }
    checks.push(Check {
        label: "worst assignment within bound, ratio <= 2 except the critical phase".to_string(),
        pass: all_pass,
        detail: if details.is_empty() {
            format!("{} phases verified", rows.len())
        } else {
            details.join("; ")
        },
    });
    checks.push(Check {
        label: "critical phase x yx x reaches ratio 3".to_string(),
        pass: critical_seen,
        detail: "worst bit assignment pays 3 against opt 1".to_string(),
    });
    Ok(Table {
        title: "per-phase worst case of a single bit-driven list (partial)".to_string(),
        columns: vec![
            "phase".to_string(),
            "worst assignment".to_string(),
            "opt".to_string(),
            "worst/opt".to_string(),
            "note".to_string(),
        ],
        rows,
        checks,
    })
}

fn partial_cost(id: &AlgorithmId, seq: &RequestSequence) -> Result<u64> {
    Ok(algorithms::run(id, seq, CostModel::Partial)?.total())
}

fn suite_ratio_partial() -> Result<Table> {
    let alpha = FamilySpec::Alpha { k: 1000 }.generate()?;
    let beta2 = FamilySpec::Beta2 { k: 2000 }.generate()?;
    let joined = alpha.seq().concat(beta2.seq())?;

    let mut rows = Vec::new();
    let mut checks = Vec::new();

    let alpha_opt = pair_opt(alpha.seq(), CostModel::Partial)?;
    let mut alpha_costs = Vec::new();
    for id in [AlgorithmId::MtfOdd, AlgorithmId::MtfEven] {
        let total = partial_cost(&id, alpha.seq())?;
        rows.push(vec![
            "alpha k=1000".to_string(),
            id.label(),
            total.to_string(),
            alpha_opt.to_string(),
            Ratio::new(total, alpha_opt).decimal(),
        ]);
        alpha_costs.push(total);
    }
    checks.push(Check {
        label: "single-exchange family forces ratio 2 on both bit variants".to_string(),
        pass: alpha_costs.iter().all(|&c| c == 2 * alpha_opt) && alpha_opt == 2000,
        detail: format!("costs {alpha_costs:?} against opt {alpha_opt}"),
    });

    let joined_opt = pair_opt(&joined, CostModel::Partial)?;
    let mut joined_costs = Vec::new();
    for id in [AlgorithmId::Ts, AlgorithmId::MtfOdd, AlgorithmId::MtfEven] {
        let total = partial_cost(&id, &joined)?;
        rows.push(vec![
            "alpha k=1000 + beta2 k=2000".to_string(),
            id.label(),
            total.to_string(),
            joined_opt.to_string(),
            Ratio::new(total, joined_opt).decimal(),
        ]);
        joined_costs.push(total);
    }
    let ratio = Ratio::new(joined_costs[0], joined_opt);
    checks.push(Check {
        label: "doubled-pair tail drags all three algorithms to 5/3".to_string(),
        pass: joined_costs.iter().all(|&c| c == 10000)
            && joined_opt == 6000
            && ratio.to_string() == "5/3",
        detail: format!(
            "costs {joined_costs:?} against opt {joined_opt}, ratio {}",
            ratio.decimal()
        ),
    });
    Ok(Table {
        title: "partial-model ratios on the doubled-pair families".to_string(),
        columns: vec![
            "sequence".to_string(),
            "algorithm".to_string(),
            "cost".to_string(),
            "opt".to_string(),
            "ratio".to_string(),
        ],
        rows,
        checks,
    })
}

fn suite_ratio_full() -> Result<Table> {
    let beta = FamilySpec::BetaL { l: 40, m: 4 }.generate()?;
    let gamma = FamilySpec::Gamma { l: 40, s: 6 }.generate()?;
    let joined = beta.seq().concat(gamma.seq())?;
    let strategy = lookahead_strategy(&joined, CostModel::Full)?.total();

    let mut rows = Vec::new();
    let mut totals = Vec::new();
    for id in [AlgorithmId::Ts, AlgorithmId::MtfOdd, AlgorithmId::MtfEven] {
        let total = algorithms::run(&id, &joined, CostModel::Full)?.total();
        rows.push(vec![
            id.label(),
            total.to_string(),
            strategy.to_string(),
            Ratio::new(total, strategy).decimal(),
        ]);
        totals.push(total);
    }
    let min_total = *totals.iter().min().expect("three totals");
    let min_ratio = Ratio::new(min_total, strategy);
    rows.push(vec![
        "best of the three".to_string(),
        min_total.to_string(),
        strategy.to_string(),
        min_ratio.decimal(),
    ]);
    let checks = vec![Check {
        label: "best variant stays at least 1.55 times the lookahead schedule".to_string(),
        pass: min_total * 100 >= 155 * strategy && strategy > 0,
        detail: format!(
            "min cost {min_total} against schedule {strategy}, ratio {}",
            min_ratio.decimal()
        ),
    }];
    Ok(Table {
        title: "full-model costs on the block family followed by the triple family (l=40)"
            .to_string(),
        columns: vec![
            "algorithm".to_string(),
            "cost".to_string(),
            "schedule".to_string(),
            "ratio".to_string(),
        ],
        rows,
        checks,
    })
}

fn suite_mtf2_ratio() -> Result<Table> {
    let m = 4usize;
    let lengths = [10u32, 20, 40, 80, 160];
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    let mut closed_ok = true;
    let mut closed_details = Vec::new();
    let mut ratios = Vec::new();
    let mut l40 = None;
    for &l in &lengths {
        let seq = FamilySpec::Delta { l, m }.generate()?;
        let total = algorithms::run(&AlgorithmId::MtfOdd, seq.seq(), CostModel::Full)?.total();
        let strategy = lookahead_strategy(seq.seq(), CostModel::Full)?.total();
        let lu = l as u64;
        let mu = m as u64;
        let total_closed = mu * (5 * lu * lu + 3 * lu);
        let strategy_closed = mu * (2 * lu * lu + 6 * lu);
        if total != total_closed || strategy != strategy_closed {
            closed_ok = false;
            closed_details.push(format!(
                "l={l}: measured {total}/{strategy}, closed {total_closed}/{strategy_closed}"
            ));
        }
        let ratio = Ratio::new(total, strategy);
        ratios.push((total as f64) / (strategy as f64));
        if l == 40 {
            l40 = Some((total, strategy, ratio.decimal()));
        }
        rows.push(vec![
            l.to_string(),
            total.to_string(),
            strategy.to_string(),
            ratio.decimal(),
        ]);
    }
    checks.push(Check {
        label: "costs match m(5l^2+3l) and schedule m(2l^2+6l)".to_string(),
        pass: closed_ok,
        detail: if closed_ok {
            format!("{} list lengths verified", lengths.len())
        } else {
            closed_details.join("; ")
        },
    });
    checks.push(Check {
        label: "ratio grows with the list length toward 5/2".to_string(),
        pass: ratios.windows(2).all(|w| w[0] < w[1]) && *ratios.last().unwrap() > 2.4,
        detail: format!(
            "ratios {:?}",
            ratios.iter().map(|r| format!("{r:.6}")).collect::<Vec<_>>()
        ),
    });
    let (t40, s40, r40) = l40.expect("l=40 is in the length list");
    checks.push(Check {
        label: "l=40 reference point".to_string(),
        pass: t40 == 32480 && s40 == 13760 && r40 == "2.360465",
        detail: format!("cost {t40}, schedule {s40}, ratio {r40}"),
    });
    Ok(Table {
        title: "bit-variant cost against the lookahead schedule on the triple-block family (m=4)"
            .to_string(),
        columns: vec![
            "l".to_string(),
            "cost".to_string(),
            "schedule".to_string(),
            "ratio".to_string(),
        ],
        rows,
        checks,
    })
}

fn suite_advice_bound(gamma: Option<f64>) -> Result<Table> {
    let gammas: Vec<f64> = match gamma {
        Some(g) => vec![g],
        None => vec![1.01, 1.02, 1.05, 15.0 / 14.0],
    };
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for &g in &gammas {
        let per_request = advice_lower_bound(g, 1)?;
        rows.push(vec![format!("{g:.6}"), format!("{per_request:.6}")]);
        values.push(per_request);
    }
    let mut checks = Vec::new();
    if let Some(idx) = gammas.iter().position(|&g| (g - 1.01).abs() < 1e-12) {
        let v = values[idx];
        checks.push(Check {
            label: "gamma 1.01 needs about 0.1268 bits per request".to_string(),
            pass: (v - 0.1268).abs() <= 0.0005,
            detail: format!("measured {v:.6}"),
        });
    }
    if values.len() > 1 {
        checks.push(Check {
            label: "the bound shrinks as the target ratio loosens".to_string(),
            pass: values.windows(2).all(|w| w[0] > w[1]),
            detail: format!(
                "values {:?}",
                values.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>()
            ),
        });
        let last = *values.last().unwrap();
        checks.push(Check {
            label: "the bound vanishes at ratio 15/14".to_string(),
            pass: last.abs() < 1e-9,
            detail: format!("value at 15/14 is {last:.9}"),
        });
    }
    checks.push(Check {
        label: "all values are nonnegative".to_string(),
        pass: values.iter().all(|&v| v >= 0.0),
        detail: format!("{} targets evaluated", values.len()),
    });
    Ok(Table {
        title: "advice bits required per request for a target ratio".to_string(),
        columns: vec!["gamma".to_string(), "bits per request".to_string()],
        rows,
        checks,
    })
}
