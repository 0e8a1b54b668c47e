//! `slidewin` — command-line driver for sliding-window aggregation runs,
//! operation-count verification, and addition-chain exponentiation tables.
//!
//! Exit codes: 0 success; 2 input parse error; 3 algorithm/operator
//! mismatch; 4 count verification mismatch.

use algebra_core::{op_fn, CompositionRep, WindowOp};
use clap::{Args, Parser, Subcommand, ValueEnum};
use exponentiation::{binary_count, brauer_best_k, brauer_count, thurber_best_k, thurber_count};
use gallery::{
    compose_op, op_coalesce, op_concat, op_max_total_order, op_min_total_order, op_product,
    op_sum, rep_cusum, rep_linear_recurrence, rep_sum_missing, LinearRecParams,
};
use opcount::{count_dew, count_two_stacks, instrument, DewVariant, TwoStacksVariant};
use sequential::{
    daba_lite, dew, difference_of_prefix_sums, naive_window, slick_deque, subtract_on_evict,
    two_stacks, WindowAggregator,
};
use serde::Serialize;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "slidewin",
    about = "Sliding-window aggregation toolkit",
    long_about = "Runs window aggregations over CSV streams, verifies operation-count \
                  formulas, and tabulates addition-chain exponentiation costs. The \
                  SLIDEWIN_SEED environment variable seeds randomized property runs \
                  in the test harness."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a window aggregation over an input CSV (one value per line;
    /// paired representations use two comma-separated columns; "NA" is the
    /// undefined value).
    Run(RunArgs),
    /// Verify instrumented operation counts against the closed-form count
    /// formulas; exits 4 on any mismatch.
    Counts(CountsArgs),
    /// Tabulate exponentiation operation counts and best-k statistics.
    Expo(ExpoArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Algorithm: naive | soe | dops | twostacks:{cie,ie,ei,v3,v4} |
    /// dew1 | dew2 | daba | slick
    #[arg(long)]
    algo: String,
    /// Operator or representation registry name: sum | product | max | min |
    /// concat | coalesce | linrec | summissing | cusum
    #[arg(long)]
    op: String,
    /// Window length
    #[arg(long)]
    n: usize,
    /// Input path (defaults to stdin)
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output path (defaults to stdout)
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct CountsArgs {
    /// Algorithms to verify (default: all Two Stacks and DEW variants)
    #[arg(long, value_delimiter = ',')]
    algo: Vec<String>,
    /// Largest window length; cells cover n in 1..=n, N in 1..=4n
    #[arg(long, default_value_t = 16)]
    n: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExpoArgs {
    /// Largest exponent (rows cover n in 1..=n)
    #[arg(long, default_value_t = 1000)]
    n: u64,
    /// Methods to tabulate (default: binary, brauer, thurber)
    #[arg(long, value_delimiter = ',')]
    method: Vec<String>,
    /// Largest window parameter k for Brauer/Thurber rows
    #[arg(long, default_value_t = 4)]
    k: u32,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Run(args) => cmd_run(&args),
        Cmd::Counts(args) => cmd_counts(&args),
        Cmd::Expo(args) => cmd_expo(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("slidewin: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CmdError {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> CmdError {
    CmdError { code, message: message.into() }
}

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
enum AlgoKind {
    Naive,
    Soe,
    Dops,
    TwoStacks(TwoStacksVariant),
    Dew(DewVariant),
    Daba,
    Slick,
}

fn parse_algo(name: &str) -> Result<AlgoKind, CmdError> {
    use TwoStacksVariant::*;
    Ok(match name {
        "naive" => AlgoKind::Naive,
        "soe" => AlgoKind::Soe,
        "dops" => AlgoKind::Dops,
        "twostacks:cie" => AlgoKind::TwoStacks(CombinedInsertEvict),
        "twostacks:ie" => AlgoKind::TwoStacks(InsertEvict),
        "twostacks:ei" => AlgoKind::TwoStacks(EvictInsert),
        "twostacks:v3" => AlgoKind::TwoStacks(Variant3),
        "twostacks:v4" => AlgoKind::TwoStacks(Variant4),
        "dew1" => AlgoKind::Dew(DewVariant::V1),
        "dew2" => AlgoKind::Dew(DewVariant::V2),
        "daba" => AlgoKind::Daba,
        "slick" => AlgoKind::Slick,
        _ => return Err(fail(2, format!("unknown algorithm {name:?}"))),
    })
}

/// Output value: a number (NaN prints as "NA") or a raw string.
enum OutVal {
    Num(f64),
    Str(String),
}

impl OutVal {
    fn to_csv(&self) -> String {
        match self {
            OutVal::Num(v) if v.is_nan() => "NA".into(),
            OutVal::Num(v) => format!("{v}"),
            OutVal::Str(s) => s.clone(),
        }
    }
    fn to_json(&self) -> serde_json::Value {
        match self {
            OutVal::Num(v) if v.is_nan() => "NA".into(),
            OutVal::Num(v) => serde_json::json!(v),
            OutVal::Str(s) => s.clone().into(),
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CmdError> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| fail(2, format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| fail(2, format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

/// Non-blank lines with their 1-based positions in the raw input.
fn data_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_f64(token: &str, line: usize) -> Result<f64, CmdError> {
    if token.eq_ignore_ascii_case("na") {
        return Ok(f64::NAN);
    }
    token
        .parse::<f64>()
        .map_err(|_| fail(2, format!("parse error at line {line}: invalid number {token:?}")))
}

fn parse_opt_f64(token: &str, line: usize) -> Result<Option<f64>, CmdError> {
    if token.eq_ignore_ascii_case("na") {
        return Ok(None);
    }
    parse_f64(token, line).map(Some)
}

fn parse_pair(lineno: usize, line: &str) -> Result<(f64, f64), CmdError> {
    let mut cols = line.split(',').map(str::trim);
    let (a, b) = (cols.next(), cols.next());
    match (a, b, cols.next()) {
        (Some(a), Some(b), None) => Ok((parse_f64(a, lineno)?, parse_f64(b, lineno)?)),
        _ => Err(fail(2, format!("parse error at line {lineno}: expected two columns"))),
    }
}

fn mismatch(algo: &str, op: &str) -> CmdError {
    fail(3, format!("algorithm {algo:?} cannot run operator {op:?}"))
}

/// Streams a batch through an insert/evict/query aggregator with a
/// fixed-capacity window.
fn slide<T: Clone>(mut agg: impl WindowAggregator<T>, data: &[T], n: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(data.len());
    for v in data {
        agg.insert(v.clone());
        if agg.len() > n {
            agg.evict().expect("window is non-empty");
        }
        out.push(agg.query().expect("window is non-empty"));
    }
    out
}

/// Dispatches the algorithms available to every associative operator;
/// `None` means the algorithm needs extra structure (inverses, selection).
fn batch_assoc<T: Clone>(
    algo: AlgoKind,
    op: &mut impl WindowOp<T>,
    data: &[T],
    n: usize,
) -> Option<Vec<T>> {
    Some(match algo {
        AlgoKind::Naive => naive_window(op, data, n),
        AlgoKind::TwoStacks(v) => two_stacks(op, v, data, n),
        AlgoKind::Dew(v) => dew(op, v, data, n),
        AlgoKind::Daba => slide(daba_lite(op), data, n),
        AlgoKind::Soe | AlgoKind::Dops | AlgoKind::Slick => return None,
    })
}

fn cmd_run(args: &RunArgs) -> Result<(), CmdError> {
    if args.n == 0 {
        return Err(fail(2, "window length must be at least 1"));
    }
    let algo = parse_algo(&args.algo)?;
    let text = read_input(&args.input)?;
    let lines = data_lines(&text);
    let n = args.n;

    let out: Vec<OutVal> = match args.op.as_str() {
        "sum" | "product" | "max" | "min" => {
            let data: Vec<f64> = lines
                .iter()
                .map(|&(no, l)| parse_f64(l, no))
                .collect::<Result<_, _>>()?;
            let ys = match (algo, args.op.as_str()) {
                (AlgoKind::Slick, "max") => slide(slick_deque(&mut op_max_total_order()), &data, n),
                (AlgoKind::Slick, "min") => slide(slick_deque(&mut op_min_total_order()), &data, n),
                (AlgoKind::Soe, "sum") => {
                    subtract_on_evict(&mut op_sum(), &mut op_fn(|a, b| a - b), &data, n)
                }
                (AlgoKind::Soe, "product") => {
                    subtract_on_evict(&mut op_product(), &mut op_fn(|a, b| a / b), &data, n)
                }
                (AlgoKind::Dops, "sum") => {
                    difference_of_prefix_sums(&mut op_sum(), &mut op_fn(|a, b| a - b), &data, n)
                }
                (AlgoKind::Dops, "product") => {
                    difference_of_prefix_sums(&mut op_product(), &mut op_fn(|a, b| a / b), &data, n)
                }
                _ => {
                    let mut op: Box<dyn FnMut(&f64, &f64) -> f64> = match args.op.as_str() {
                        "sum" => Box::new(|a: &f64, b: &f64| a + b),
                        "product" => Box::new(|a: &f64, b: &f64| a * b),
                        "max" => Box::new(|a: &f64, b: &f64| if a <= b { *b } else { *a }),
                        _ => Box::new(|a: &f64, b: &f64| if a >= b { *b } else { *a }),
                    };
                    batch_assoc(algo, &mut op_fn(&mut op), &data, n)
                        .ok_or_else(|| mismatch(&args.algo, &args.op))?
                }
            };
            ys.into_iter().map(OutVal::Num).collect()
        }
        "concat" => {
            let data: Vec<String> = lines.iter().map(|&(_, l)| l.to_string()).collect();
            let ys = batch_assoc(algo, &mut op_concat(), &data, n)
                .ok_or_else(|| mismatch(&args.algo, &args.op))?;
            ys.into_iter().map(OutVal::Str).collect()
        }
        "coalesce" => {
            let data: Vec<Option<f64>> = lines
                .iter()
                .map(|&(no, l)| parse_opt_f64(l, no))
                .collect::<Result<_, _>>()?;
            let ys = match algo {
                // Coalesce is a selection operator, so the deque applies.
                AlgoKind::Slick => slide(slick_deque(&mut op_coalesce()), &data, n),
                _ => batch_assoc(algo, &mut op_coalesce(), &data, n)
                    .ok_or_else(|| mismatch(&args.algo, &args.op))?,
            };
            ys.into_iter()
                .map(|v| OutVal::Num(v.unwrap_or(f64::NAN)))
                .collect()
        }
        "summissing" => {
            let data: Vec<Option<f64>> = lines
                .iter()
                .map(|&(no, l)| parse_opt_f64(l, no))
                .collect::<Result<_, _>>()?;
            run_rep(&rep_sum_missing(), algo, &data, n)
                .ok_or_else(|| mismatch(&args.algo, &args.op))?
                .into_iter()
                .map(OutVal::Num)
                .collect()
        }
        "linrec" => {
            let data: Vec<LinearRecParams> = lines
                .iter()
                .map(|&(no, l)| parse_pair(no, l).map(|(m, a)| LinearRecParams::new(m, a)))
                .collect::<Result<_, _>>()?;
            run_rep(&rep_linear_recurrence(), algo, &data, n)
                .ok_or_else(|| mismatch(&args.algo, &args.op))?
                .into_iter()
                .map(OutVal::Num)
                .collect()
        }
        "cusum" => {
            let data: Vec<(f64, f64)> = lines
                .iter()
                .map(|&(no, l)| parse_pair(no, l))
                .collect::<Result<_, _>>()?;
            run_rep(&rep_cusum(), algo, &data, n)
                .ok_or_else(|| mismatch(&args.algo, &args.op))?
                .into_iter()
                .map(OutVal::Num)
                .collect()
        }
        other => return Err(fail(2, format!("unknown operator {other:?}"))),
    };

    let rendered = match args.format {
        Format::Csv => {
            let mut s: String = out.iter().map(|v| v.to_csv() + "\n").collect();
            if s.is_empty() {
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let ys: Vec<serde_json::Value> = out.iter().map(OutVal::to_json).collect();
            serde_json::to_string_pretty(&serde_json::json!({ "y": ys })).unwrap() + "\n"
        }
    };
    write_output(&args.output, &rendered)
}

/// Windowed recurrence via the meta-algorithm: window the lifted functions
/// with the chosen associative algorithm, then apply each fold to the zero
/// incoming state.
fn run_rep<R: CompositionRep>(
    rep: &R,
    algo: AlgoKind,
    data: &[R::Elem],
    n: usize,
) -> Option<Vec<R::State>>
where
    R::State: Default,
{
    let lifted: Vec<R::Lifted> = data.iter().map(|a| rep.lift(a)).collect();
    let folds = batch_assoc(algo, &mut compose_op(rep), &lifted, n)?;
    Some(folds.iter().map(|f| rep.apply(f, &R::State::default())).collect())
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<(), CmdError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| fail(2, format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// counts
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct CountCell {
    algo: String,
    n: u64,
    #[serde(rename = "N")]
    big_n: u64,
    instrumented: u64,
    formula: u64,
    #[serde(rename = "match")]
    matches: bool,
    max_increment: u64,
}

#[derive(Serialize)]
struct CountReport {
    cells: Vec<CountCell>,
}

const COUNT_ALGOS: &[&str] = &[
    "twostacks:cie",
    "twostacks:ie",
    "twostacks:ei",
    "twostacks:v3",
    "twostacks:v4",
    "dew1",
    "dew2",
];

fn count_cell(algo: &str, n: u64, big_n: u64) -> Result<CountCell, CmdError> {
    let data: Vec<f64> = (0..big_n).map(|i| i as f64).collect();
    let mut iop = instrument(|a: &f64, b: &f64| a + b);
    let formula = match parse_algo(algo)? {
        AlgoKind::TwoStacks(v) => {
            two_stacks(&mut iop, v, &data, n as usize);
            count_two_stacks(v, n, big_n)
        }
        AlgoKind::Dew(v) => {
            dew(&mut iop, v, &data, n as usize);
            count_dew(v, n, big_n)
        }
        _ => return Err(fail(2, format!("no count formula for algorithm {algo:?}"))),
    };
    let instrumented = iop.total();
    Ok(CountCell {
        algo: algo.to_string(),
        n,
        big_n,
        instrumented,
        formula,
        matches: instrumented == formula,
        max_increment: iop.increments().into_iter().max().unwrap_or(0),
    })
}

fn cmd_counts(args: &CountsArgs) -> Result<(), CmdError> {
    let algos: Vec<String> = if args.algo.is_empty() {
        COUNT_ALGOS.iter().map(|s| s.to_string()).collect()
    } else {
        args.algo.clone()
    };
    let mut cells = Vec::new();
    for algo in &algos {
        for n in 1..=args.n {
            for big_n in 1..=4 * n {
                cells.push(count_cell(algo, n, big_n)?);
            }
        }
    }
    let any_mismatch = cells.iter().any(|c| !c.matches);
    let text = serde_json::to_string_pretty(&CountReport { cells }).unwrap() + "\n";
    write_output(&args.output, &text)?;
    if any_mismatch {
        return Err(fail(4, "operation count mismatch"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// expo
// ---------------------------------------------------------------------------

fn cmd_expo(args: &ExpoArgs) -> Result<(), CmdError> {
    let methods: Vec<String> = if args.method.is_empty() {
        vec!["binary".into(), "brauer".into(), "thurber".into()]
    } else {
        args.method.clone()
    };
    for m in &methods {
        if !matches!(m.as_str(), "binary" | "brauer" | "thurber") {
            return Err(fail(2, format!("unknown method {m:?}")));
        }
    }
    let mut out = String::from("kind,n,method,k,count,best_k\n");
    for n in 1..=args.n {
        for m in &methods {
            match m.as_str() {
                "binary" => {
                    out.push_str(&format!("count,{n},binary,,{},\n", binary_count(n)));
                }
                "brauer" => {
                    let best = brauer_best_k(n);
                    for k in 1..=args.k {
                        out.push_str(&format!(
                            "count,{n},brauer,{k},{},{}\n",
                            brauer_count(n, k),
                            k == best
                        ));
                    }
                }
                "thurber" => {
                    let best = thurber_best_k(n);
                    for k in 1..=args.k {
                        out.push_str(&format!(
                            "count,{n},thurber,{k},{},{}\n",
                            thurber_count(n, k),
                            k == best
                        ));
                    }
                }
                _ => unreachable!(),
            }
        }
    }
    // Summary rows: first exponent where each k is best, and the share of
    // exponents in 1..=n for which it is best.
    for m in &methods {
        let best: fn(u64) -> u32 = match m.as_str() {
            "brauer" => brauer_best_k,
            "thurber" => thurber_best_k,
            _ => continue,
        };
        let best_ks: Vec<u32> = (1..=args.n).map(best).collect();
        let max_k = best_ks.iter().copied().max().unwrap_or(1);
        for k in 1..=max_k {
            if let Some(pos) = best_ks.iter().position(|&b| b == k) {
                out.push_str(&format!("first_best_k,{},{m},{k},,\n", pos as u64 + 1));
            }
            let share = best_ks.iter().filter(|&&b| b == k).count() as f64
                / best_ks.len() as f64
                * 100.0;
            out.push_str(&format!("percent_best_k,,{m},{k},{share:.1},\n"));
        }
    }
    write_output(&args.output, &out)
}
