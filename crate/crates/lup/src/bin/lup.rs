//! Command-line front end: sequence generators, algorithm runs, offline
//! baselines, advice tapes, phase analysis, verification suites, and the
//! unary compressor. Every command is deterministic given its flags; seeds
//! are always explicit.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 capacity guard
//! exceeded, 3 verification failure.

use clap::{Args, Parser, Subcommand};
use lup::advice::{best3_follower, best3_oracle, subset_follower, subset_oracle_with_limit, AdviceTape};
use lup::algorithms::{self, AlgorithmId};
use lup::analysis::{self, OptMode, RunReport};
use lup::compress::{self, CompressorAlg};
use lup::error::Error;
use lup::generators::FamilySpec;
use lup::list::{CostLedger, CostModel, Item, RequestSequence};
use lup::offline::{
    self, lookahead_strategy, opt_dp_with_limit, opt_subset_transfer_dp_with_limit, pair_opt,
    DEFAULT_MAX_L,
};
use lup::report::{run_suite, Suite};
use lup::seqfile::NamedSequence;
use lup::Result;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lup",
    version,
    about = "List-update algorithms, offline oracles, advice tapes, and reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a request sequence from one of the built-in families.
    Gen(GenArgs),
    /// Simulate algorithms on a sequence and report their costs.
    Run(RunArgs),
    /// Compute an offline baseline for a sequence.
    Opt(OptArgs),
    /// Write or replay advice tapes.
    Advice(AdviceArgs),
    /// Restrict a sequence to two of its items.
    Project(ProjectArgs),
    /// Decompose a two-item sequence into phases.
    Phases(PhasesArgs),
    /// Run a verification suite and render its table.
    Report(ReportArgs),
    /// Compress a text by coding list positions in unary.
    Compress(CompressArgs),
    /// Decode a compressed file.
    Decompress(DecompressArgs),
}

#[derive(Args)]
struct GenArgs {
    /// bitstring | alpha | beta2 | beta | gamma | delta | random
    #[arg(long)]
    family: String,
    /// Defining bits for the bitstring family, e.g. 0110.
    #[arg(long)]
    bits: Option<String>,
    /// Round count for alpha and beta2.
    #[arg(long)]
    k: Option<usize>,
    /// List length for beta, gamma, delta, and random.
    #[arg(long)]
    l: Option<u32>,
    /// Round count for beta and delta.
    #[arg(long)]
    m: Option<usize>,
    /// Round count for gamma.
    #[arg(long)]
    s: Option<usize>,
    /// Request count for random.
    #[arg(long)]
    n: Option<usize>,
    /// Generator seed for random.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Sequence file to read.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline family spec instead of a file, e.g. alpha:1000 or beta:40,5.
    #[arg(long)]
    family: Option<String>,
    /// Algorithm id; repeatable. mtf | ts | mtfo | mtfe | mtf2:<bits> |
    /// bit:<seed> | best3 (best3 reads its selector from --advice).
    #[arg(long = "alg", required = true)]
    algs: Vec<String>,
    /// full | partial
    #[arg(long, default_value = "full")]
    model: String,
    /// Baseline for the opt column: none | dp | subset | pair | strategy.
    #[arg(long, default_value = "none")]
    opt: String,
    /// Advice tape consumed by best3.
    #[arg(long)]
    advice: Option<PathBuf>,
    /// Tape encoding: ascii | packed.
    #[arg(long, default_value = "ascii")]
    tape_format: String,
    /// Emit JSON lines instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct OptArgs {
    /// Sequence file to read.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline family spec instead of a file.
    #[arg(long)]
    family: Option<String>,
    /// opt:dp | opt:subset | opt:pair
    #[arg(long)]
    mode: String,
    /// full | partial
    #[arg(long, default_value = "full")]
    model: String,
    /// Also print the per-request schedule.
    #[arg(long)]
    trace: bool,
    /// Emit JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AdviceArgs {
    #[command(subcommand)]
    action: AdviceAction,
}

#[derive(Subcommand)]
enum AdviceAction {
    /// Run an offline oracle and write its tape.
    Write(AdviceWriteArgs),
    /// Replay a sequence through the follower that consumes a tape.
    Read(AdviceReadArgs),
}

#[derive(Args)]
struct AdviceWriteArgs {
    /// Sequence file to read.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline family spec instead of a file.
    #[arg(long)]
    family: Option<String>,
    /// subset | best3
    #[arg(long)]
    oracle: String,
    /// full | partial
    #[arg(long, default_value = "full")]
    model: String,
    /// Tape encoding: ascii | packed.
    #[arg(long, default_value = "ascii")]
    tape_format: String,
    /// Tape file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AdviceReadArgs {
    /// Sequence file to read.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline family spec instead of a file.
    #[arg(long)]
    family: Option<String>,
    /// subset | best3
    #[arg(long)]
    oracle: String,
    /// Advice tape to consume.
    #[arg(long)]
    advice: PathBuf,
    /// full | partial
    #[arg(long, default_value = "full")]
    model: String,
    /// Tape encoding: ascii | packed.
    #[arg(long, default_value = "ascii")]
    tape_format: String,
    /// Baseline for the opt column: none | dp | subset | pair | strategy.
    #[arg(long, default_value = "none")]
    opt: String,
    /// Emit a JSON line instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ProjectArgs {
    /// Sequence file to read.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline family spec instead of a file.
    #[arg(long)]
    family: Option<String>,
    /// The two item tokens, comma separated, e.g. --pair a1,a3.
    #[arg(long)]
    pair: String,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PhasesArgs {
    /// Sequence file to read.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline family spec instead of a file.
    #[arg(long)]
    family: Option<String>,
    /// Report per-phase simulated costs instead of the raw parse.
    #[arg(long)]
    costs: bool,
    /// Emit JSON instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReportArgs {
    /// table1 | table2 | table3 | table4 | ratio-partial | ratio-full |
    /// mtf2-2.5 | advice-bound
    suite: String,
    /// Competitiveness target for the advice-bound suite.
    #[arg(long)]
    gamma: Option<f64>,
    /// Emit the table and checks as JSON.
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Render an aligned plain-text table with the check list.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct CompressArgs {
    /// Text file to compress.
    #[arg(long)]
    input: PathBuf,
    /// mtf | ts | mtfo | mtfe | best3
    #[arg(long)]
    alg: String,
    /// Explicit alphabet order; first-appearance order if omitted.
    #[arg(long)]
    alphabet: Option<String>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecompressArgs {
    /// Compressed file to decode.
    #[arg(long)]
    input: PathBuf,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::CapacityExceeded { .. } => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn dispatch(command: Command) -> Result<u8> {
    match command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Opt(args) => cmd_opt(args),
        Command::Advice(args) => match args.action {
            AdviceAction::Write(w) => cmd_advice_write(w),
            AdviceAction::Read(r) => cmd_advice_read(r),
        },
        Command::Project(args) => cmd_project(args),
        Command::Phases(args) => cmd_phases(args),
        Command::Report(args) => cmd_report(args),
        Command::Compress(args) => cmd_compress(args),
        Command::Decompress(args) => cmd_decompress(args),
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// Write `content` to `out`, or to standard output when no file is given.
/// The `info` line goes to standard output when the content went to a
/// file, otherwise to standard error, so piped output stays clean.
fn emit(out: &Option<PathBuf>, content: &[u8], info: &str) -> Result<()> {
    match out {
        Some(path) => {
            write_bytes(path, content)?;
            println!("{info}");
        }
        None => {
            std::io::stdout()
                .write_all(content)
                .map_err(|e| Error::Format(format!("stdout: {e}")))?;
            eprintln!("{info}");
        }
    }
    Ok(())
}

fn max_l_from_env() -> Result<usize> {
    match std::env::var("LUP_MAX_L") {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_L),
        Err(e) => Err(Error::Parse(format!("LUP_MAX_L: {e}"))),
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("LUP_MAX_L must be an integer, got {v:?}"))),
    }
}

fn parse_opt_mode(s: &str) -> Result<OptMode> {
    OptMode::parse(s.strip_prefix("opt:").unwrap_or(s))
}

/// A sequence plus the origin labels reported in CSV rows.
struct Source {
    named: NamedSequence,
    family: String,
    params: String,
}

fn load_source(input: &Option<PathBuf>, family: &Option<String>) -> Result<Source> {
    match (input, family) {
        (Some(path), None) => Ok(Source {
            named: NamedSequence::parse(&read_text(path)?)?,
            family: "file".to_string(),
            params: path.display().to_string(),
        }),
        (None, Some(compact)) => {
            let spec = FamilySpec::parse_compact(compact)?;
            Ok(Source {
                named: spec.generate()?,
                family: spec.family_name().to_string(),
                params: spec.params(),
            })
        }
        _ => Err(Error::Parse(
            "exactly one of --input or --family is required".to_string(),
        )),
    }
}

fn load_tape(path: &Path, format: &str) -> Result<AdviceTape> {
    match format {
        "ascii" => AdviceTape::parse_ascii(read_text(path)?.trim()),
        "packed" => AdviceTape::from_packed(&read_bytes(path)?),
        other => Err(Error::Parse(format!(
            "unknown tape format {other:?} (expected ascii or packed)"
        ))),
    }
}

fn tape_bytes(tape: &AdviceTape, format: &str) -> Result<Vec<u8>> {
    match format {
        "ascii" => {
            let mut s = tape.to_ascii();
            s.push('\n');
            Ok(s.into_bytes())
        }
        "packed" => Ok(tape.to_packed()),
        other => Err(Error::Parse(format!(
            "unknown tape format {other:?} (expected ascii or packed)"
        ))),
    }
}

fn baseline(
    seq: &RequestSequence,
    model: CostModel,
    mode: OptMode,
    max_l: usize,
) -> Result<Option<u64>> {
    Ok(match mode {
        OptMode::None => None,
        OptMode::Dp => Some(opt_dp_with_limit(seq, model, max_l)?.cost),
        OptMode::Subset => Some(opt_subset_transfer_dp_with_limit(seq, model, max_l)?.cost),
        OptMode::Pair => Some(pair_opt(seq, model)?),
        OptMode::Strategy => Some(lookahead_strategy(seq, model)?.total()),
    })
}

fn print_report_rows(rows: &[RunReport], json: bool) {
    if json {
        for row in rows {
            println!("{}", row.to_json());
        }
    } else {
        println!("{}", RunReport::csv_header());
        for row in rows {
            println!("{}", row.csv_row());
        }
    }
}

fn cmd_gen(args: GenArgs) -> Result<u8> {
    let require_usize = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Error::Parse(format!("family {} requires {flag}", args.family)))
    };
    let require_u32 = |v: Option<u32>, flag: &str| {
        v.ok_or_else(|| Error::Parse(format!("family {} requires {flag}", args.family)))
    };
    let spec = match args.family.as_str() {
        "bitstring" => {
            let s = args
                .bits
                .as_ref()
                .ok_or_else(|| Error::Parse("family bitstring requires --bits".to_string()))?;
            let mut bits = Vec::with_capacity(s.len());
            for c in s.chars() {
                match c {
                    '0' => bits.push(false),
                    '1' => bits.push(true),
                    other => {
                        return Err(Error::Parse(format!(
                            "--bits must be a string of 0s and 1s, found {other:?}"
                        )))
                    }
                }
            }
            FamilySpec::Bitstring { bits }
        }
        "alpha" => FamilySpec::Alpha {
            k: require_usize(args.k, "--k")?,
        },
        "beta2" => FamilySpec::Beta2 {
            k: require_usize(args.k, "--k")?,
        },
        "beta" => FamilySpec::BetaL {
            l: require_u32(args.l, "--l")?,
            m: require_usize(args.m, "--m")?,
        },
        "gamma" => FamilySpec::Gamma {
            l: require_u32(args.l, "--l")?,
            s: require_usize(args.s, "--s")?,
        },
        "delta" => FamilySpec::Delta {
            l: require_u32(args.l, "--l")?,
            m: require_usize(args.m, "--m")?,
        },
        "random" => FamilySpec::Random {
            l: require_u32(args.l, "--l")?,
            n: require_usize(args.n, "--n")?,
            seed: args
                .seed
                .ok_or_else(|| Error::Parse("family random requires --seed".to_string()))?,
        },
        other => {
            return Err(Error::Parse(format!(
                "unknown family {other:?} (expected bitstring, alpha, beta2, beta, gamma, delta, or random)"
            )))
        }
    };
    let named = spec.generate()?;
    let n = named.seq().n();
    let expected = spec.expected_len();
    let ok = n == expected;
    let info = format!(
        "family={} params={} n={n} expected={expected} check={}",
        spec.family_name(),
        spec.params(),
        if ok { "ok" } else { "MISMATCH" }
    );
    emit(&args.out, named.render().as_bytes(), &info)?;
    Ok(if ok { 0 } else { 3 })
}

fn cmd_run(args: RunArgs) -> Result<u8> {
    let src = load_source(&args.input, &args.family)?;
    let model = CostModel::parse(&args.model)?;
    let opt_mode = parse_opt_mode(&args.opt)?;
    let max_l = max_l_from_env()?;
    let opt = baseline(src.named.seq(), model, opt_mode, max_l)?;

    let mut rows = Vec::with_capacity(args.algs.len());
    for alg_name in &args.algs {
        let (label, ledger) = if alg_name == "best3" {
            let path = args.advice.as_ref().ok_or_else(|| {
                Error::Parse("--alg best3 requires --advice <tape file>".to_string())
            })?;
            let mut tape = load_tape(path, &args.tape_format)?;
            let ledger = best3_follower(&mut tape, src.named.seq(), model)?;
            ("best3".to_string(), ledger)
        } else {
            let id = AlgorithmId::parse(alg_name)?;
            (id.label(), algorithms::run(&id, src.named.seq(), model)?)
        };
        rows.push(RunReport {
            family: src.family.clone(),
            params: src.params.clone(),
            algorithm: label,
            model,
            n: src.named.seq().n(),
            l: src.named.seq().l(),
            ledger,
            opt,
            opt_mode,
        });
    }
    print_report_rows(&rows, args.json);
    Ok(0)
}

fn cmd_opt(args: OptArgs) -> Result<u8> {
    let src = load_source(&args.input, &args.family)?;
    let model = CostModel::parse(&args.model)?;
    let mode = parse_opt_mode(&args.mode)?;
    let max_l = max_l_from_env()?;
    let seq = src.named.seq();

    let render_target = |target: &[Item]| -> Result<String> {
        let toks: Result<Vec<&str>> = target.iter().map(|&x| src.named.token_of(x)).collect();
        Ok(toks?.join(" "))
    };

    struct TraceRow {
        bits: Option<String>,
        target: String,
        access: u64,
        exchange: u64,
    }

    let (label, ledger, trace_rows) = match mode {
        OptMode::Dp => {
            let sol = opt_dp_with_limit(seq, model, max_l)?;
            let ledger = CostLedger {
                access: sol.steps.iter().map(|s| s.access).sum(),
                paid_exchanges: sol.steps.iter().map(|s| s.exchange).sum(),
            };
            let mut trace = Vec::new();
            if args.trace {
                for step in &sol.steps {
                    trace.push(TraceRow {
                        bits: None,
                        target: render_target(&step.target)?,
                        access: step.access,
                        exchange: step.exchange,
                    });
                }
            }
            ("opt:dp", ledger, trace)
        }
        OptMode::Subset => {
            let sol = opt_subset_transfer_dp_with_limit(seq, model, max_l)?;
            let ledger = CostLedger {
                access: sol.steps.iter().map(|s| s.access).sum(),
                paid_exchanges: sol.steps.iter().map(|s| s.exchange).sum(),
            };
            let mut trace = Vec::new();
            if args.trace {
                for step in &sol.steps {
                    let bits: String =
                        step.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
                    trace.push(TraceRow {
                        bits: Some(bits),
                        target: render_target(&step.target)?,
                        access: step.access,
                        exchange: step.exchange,
                    });
                }
            }
            ("opt:subset", ledger, trace)
        }
        OptMode::Pair => {
            let cost = pair_opt(seq, model)?;
            let ledger = CostLedger {
                access: cost,
                paid_exchanges: 0,
            };
            ("opt:pair", ledger, Vec::new())
        }
        _ => {
            return Err(Error::Parse(
                "opt mode must be one of opt:dp, opt:subset, opt:pair".to_string(),
            ))
        }
    };

    let report = RunReport {
        family: src.family.clone(),
        params: src.params.clone(),
        algorithm: label.to_string(),
        model,
        n: seq.n(),
        l: seq.l(),
        ledger,
        opt: None,
        opt_mode: OptMode::None,
    };

    if args.json {
        let mut obj = report.to_json();
        if args.trace {
            let steps: Vec<serde_json::Value> = trace_rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "bits": r.bits,
                        "target": r.target,
                        "access": r.access,
                        "exchange": r.exchange,
                    })
                })
                .collect();
            obj["steps"] = serde_json::Value::Array(steps);
        }
        println!("{obj}");
    } else {
        print_report_rows(std::slice::from_ref(&report), false);
        if args.trace {
            if mode == OptMode::Subset {
                println!("step,bits,target,access,exchange");
                for (i, r) in trace_rows.iter().enumerate() {
                    println!(
                        "{i},{},{},{},{}",
                        r.bits.as_deref().unwrap_or(""),
                        r.target,
                        r.access,
                        r.exchange
                    );
                }
            } else {
                println!("step,target,access,exchange");
                for (i, r) in trace_rows.iter().enumerate() {
                    println!("{i},{},{},{}", r.target, r.access, r.exchange);
                }
            }
        }
    }
    Ok(0)
}

fn cmd_advice_write(args: AdviceWriteArgs) -> Result<u8> {
    let src = load_source(&args.input, &args.family)?;
    let model = CostModel::parse(&args.model)?;
    let max_l = max_l_from_env()?;
    let (tape, extra) = match args.oracle.as_str() {
        "best3" => {
            let choice = best3_oracle(src.named.seq(), model)?;
            let tape = AdviceTape::new(choice.selector.bits().to_vec());
            (tape, format!(" selector={}", choice.selector.label()))
        }
        "subset" => {
            let tape = subset_oracle_with_limit(src.named.seq(), model, max_l)?;
            (tape, String::new())
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown oracle {other:?} (expected subset or best3)"
            )))
        }
    };
    let bytes = tape_bytes(&tape, &args.tape_format)?;
    let info = format!(
        "oracle={} bits={} format={}{extra}",
        args.oracle,
        tape.len(),
        args.tape_format
    );
    emit(&args.out, &bytes, &info)?;
    Ok(0)
}

fn cmd_advice_read(args: AdviceReadArgs) -> Result<u8> {
    let src = load_source(&args.input, &args.family)?;
    let model = CostModel::parse(&args.model)?;
    let opt_mode = parse_opt_mode(&args.opt)?;
    let max_l = max_l_from_env()?;
    let mut tape = load_tape(&args.advice, &args.tape_format)?;
    let ledger = match args.oracle.as_str() {
        "best3" => best3_follower(&mut tape, src.named.seq(), model)?,
        "subset" => subset_follower(&mut tape, src.named.seq(), model)?,
        other => {
            return Err(Error::Parse(format!(
                "unknown oracle {other:?} (expected subset or best3)"
            )))
        }
    };
    let report = RunReport {
        family: src.family,
        params: src.params,
        algorithm: args.oracle.clone(),
        model,
        n: src.named.seq().n(),
        l: src.named.seq().l(),
        ledger,
        opt: baseline(src.named.seq(), model, opt_mode, max_l)?,
        opt_mode,
    };
    print_report_rows(std::slice::from_ref(&report), args.json);
    Ok(0)
}

fn cmd_project(args: ProjectArgs) -> Result<u8> {
    let src = load_source(&args.input, &args.family)?;
    let (ta, tb) = args.pair.split_once(',').ok_or_else(|| {
        Error::Parse("--pair takes two comma-separated tokens, e.g. --pair a1,a3".to_string())
    })?;
    let (ta, tb) = (ta.trim(), tb.trim());
    let find = |tok: &str| {
        src.named
            .item_of(tok)
            .ok_or_else(|| Error::Parse(format!("token {tok:?} is not in the sequence")))
    };
    let proj = analysis::project(src.named.seq(), find(ta)?, find(tb)?)?;
    let front = src.named.token_of(proj.pair[0])?.to_string();
    let back = src.named.token_of(proj.pair[1])?.to_string();
    let out_seq =
        NamedSequence::from_ids(vec![front.clone(), back.clone()], proj.seq.requests().to_vec())?;
    let info = format!("pair={front},{back} n={}", proj.seq.n());
    emit(&args.out, out_seq.render().as_bytes(), &info)?;
    Ok(0)
}

fn cmd_phases(args: PhasesArgs) -> Result<u8> {
    let src = load_source(&args.input, &args.family)?;
    let seq = src.named.seq();
    if args.costs {
        let table = analysis::phase_cost_table(seq)?;
        if args.json {
            let rows: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "form": r.form,
                        "mtfo": r.mtfo,
                        "mtfe": r.mtfe,
                        "ts": r.ts,
                        "mtf2_worst": r.mtf2_worst,
                        "pair_sum_worst": r.pair_sum_worst,
                        "opt": r.opt,
                    })
                })
                .collect();
            let obj = serde_json::json!({
                "rows": rows,
                "totals": {
                    "mtfo": table.totals.mtfo,
                    "mtfe": table.totals.mtfe,
                    "ts": table.totals.ts,
                    "mtf2_worst": table.totals.mtf2_worst,
                    "pair_sum_worst": table.totals.pair_sum_worst,
                    "opt": table.totals.opt,
                },
                "residual_len": table.residual_len,
            });
            println!("{obj}");
        } else {
            println!("index,form,mtfo,mtfe,ts,mtf2_worst,pair_sum_worst,opt");
            for (i, r) in table.rows.iter().enumerate() {
                println!(
                    "{i},{},{},{},{},{},{},{}",
                    r.form, r.mtfo, r.mtfe, r.ts, r.mtf2_worst, r.pair_sum_worst, r.opt
                );
            }
            let t = &table.totals;
            println!(
                "total,,{},{},{},{},{},{}",
                t.mtfo, t.mtfe, t.ts, t.mtf2_worst, t.pair_sum_worst, t.opt
            );
            if table.residual_len > 0 {
                eprintln!("residual tail of {} requests not covered", table.residual_len);
            }
        }
    } else {
        let decomp = offline::partition_phases(seq)?;
        if args.json {
            let phases: Vec<serde_json::Value> = decomp
                .phases
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "type": p.phase_type,
                        "form": p.form.letter().to_string(),
                        "j": p.j,
                        "k": p.k,
                        "start": p.start,
                        "len": p.len,
                    })
                })
                .collect();
            let obj = serde_json::json!({
                "phases": phases,
                "residual_start": decomp.residual_start,
                "residual_len": decomp.residual_len(),
                "n": decomp.n,
            });
            println!("{obj}");
        } else {
            println!("index,type,form,j,k,start,len");
            for (i, p) in decomp.phases.iter().enumerate() {
                println!(
                    "{i},{},{},{},{},{},{}",
                    p.phase_type,
                    p.form.letter(),
                    p.j,
                    p.k,
                    p.start,
                    p.len
                );
            }
            if decomp.residual_len() > 0 {
                println!(
                    "residual,,,,,{},{}",
                    decomp.residual_start,
                    decomp.residual_len()
                );
            }
        }
    }
    Ok(0)
}

fn cmd_report(args: ReportArgs) -> Result<u8> {
    let suite = Suite::parse(&args.suite)?;
    let table = run_suite(suite, args.gamma)?;
    if args.json {
        println!("{}", table.to_json());
    } else if args.pretty {
        print!("{}", table.to_pretty());
    } else {
        print!("{}", table.to_csv());
        for check in &table.checks {
            let mark = if check.pass { "ok" } else { "FAIL" };
            eprintln!("[{mark}] {}: {}", check.label, check.detail);
        }
    }
    Ok(if table.passed() { 0 } else { 3 })
}

fn cmd_compress(args: CompressArgs) -> Result<u8> {
    let alg = CompressorAlg::parse(&args.alg)?;
    let text = read_bytes(&args.input)?;
    let compressed = match &args.alphabet {
        Some(alphabet) => compress::compress_with_alphabet(&text, alphabet.as_bytes(), alg)?,
        None => compress::compress(&text, alg)?,
    };
    let selector = compressed
        .selector
        .map(|s| format!(" selector={}", s.label()))
        .unwrap_or_default();
    let info = format!(
        "alg={} symbols={} payload_bits={} bytes={}{selector}",
        alg.label(),
        text.len(),
        compressed.payload_bits,
        compressed.bytes.len()
    );
    emit(&args.out, &compressed.bytes, &info)?;
    Ok(0)
}

fn cmd_decompress(args: DecompressArgs) -> Result<u8> {
    let data = read_bytes(&args.input)?;
    let header = compress::read_header(&data)?;
    let text = compress::decompress(&data)?;
    let selector = header
        .selector
        .map(|s| format!(" selector={}", s.label()))
        .unwrap_or_default();
    let info = format!(
        "alg={} symbols={} bytes={}{selector}",
        header.alg.label(),
        text.len(),
        data.len()
    );
    emit(&args.out, &text, &info)?;
    Ok(0)
}
