//! Command-line front end. Every run is fully determined by its flags;
//! all randomness flows from `--seed`, and JSON reports embed the
//! configuration that produced them.
//!
//! Exit statuses: 0 all checks passed, 1 a check failed or an operation
//! could not be carried out, 2 usage error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{BitValue, ProductString, Superposition, DEFAULT_EXPANSION_CAP};
use crate::error::Error;
use crate::gates::{
    not_gate_report, reference_table, single_bit_gate_report, truth_table, SingleBitGate,
    TABLE_ORDER,
};
use crate::measure::{measure_coefficient, orthogonality_matrix, Threshold};
use crate::rns::{ClockIndex, Rail, Rns, RtwId};
use crate::signals::{compile_superposition, eval_window, expand_expr, SignalExpr};
use crate::universes::{expand_universe, universe_stats, AmplitudeStats, UniverseKind};

#[derive(Debug, Parser)]
#[command(
    name = "tinbl",
    version,
    about = "Ternary instantaneous noise-based logic simulator",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Debug, Args)]
struct ConfigArgs {
    /// Number of noise-bits M.
    #[arg(short, long, global = true, default_value_t = 3)]
    m: u32,

    /// Seed for the reference noise system.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Clock periods to sample.
    #[arg(long, global = true, default_value_t = 10_000)]
    ticks: u64,

    /// Sigma multiplier for statistical pass bands (decimal).
    #[arg(long, global = true, default_value = "5")]
    threshold: String,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dump reference rail waveforms.
    Rns {
        #[command(subcommand)]
        command: RnsCommand,
    },
    /// Evaluate a universe over a tick window and report amplitude
    /// statistics, or expand it symbolically.
    Universe {
        /// Universe kind: binary, ternary-nv or total.
        kind: String,
        /// Expand symbolically instead of sampling (small M only).
        #[arg(long)]
        expand: bool,
    },
    /// Apply a gate symbolically and cross-check it instantaneously.
    Gate {
        #[command(subcommand)]
        command: GateCommand,
    },
    /// Render a single-bit gate truth table.
    TruthTable {
        /// Gate: xor or xnor.
        gate: String,
        /// Exit nonzero unless the computed table matches the reference.
        #[arg(long)]
        check: bool,
    },
    /// Correlation measurements over the noise streams.
    Measure {
        #[command(subcommand)]
        command: MeasureCommand,
    },
    /// Expand a universe kind or a serialized expression into the
    /// canonical superposition it denotes.
    Expand {
        /// Universe kind (binary, ternary-nv, total) ...
        kind: Option<String>,
        /// ... or a JSON expression file.
        #[arg(long, conflicts_with = "kind")]
        expr: Option<PathBuf>,
    },
    /// Evaluate a state or expression tick by tick (waveform output).
    Eval {
        /// JSON expression file.
        #[arg(long)]
        expr: Option<PathBuf>,
        /// JSON superposition file.
        #[arg(long, conflicts_with = "expr")]
        state: Option<PathBuf>,
        /// Inline product string (single-term state).
        #[arg(long, conflicts_with_all = ["expr", "state"])]
        string: Option<String>,
        /// First clock period of the window.
        #[arg(long, default_value_t = 0)]
        t0: u64,
    },
}

#[derive(Debug, Subcommand)]
enum RnsCommand {
    /// CSV of rail amplitudes, one row per clock period.
    Dump {
        /// Comma-separated rail filter, e.g. `1:0,2:1`. Default: all.
        #[arg(long)]
        rails: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
enum GateCommand {
    /// NOT at a bit position, applied to a serialized state.
    Not {
        /// 1-based bit index.
        bit: u32,
        /// JSON superposition file.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Inline product string (single-term state).
        #[arg(long, conflicts_with = "state")]
        string: Option<String>,
    },
    /// Single-bit XOR of two bit values (L, H, X or V).
    Xor { a: String, b: String },
    /// Single-bit XNOR of two bit values (L, H, X or V).
    Xnor { a: String, b: String },
}

#[derive(Debug, Subcommand)]
enum MeasureCommand {
    /// Full rail-pair correlation matrix against the 5-sigma band.
    Ortho,
    /// Measure one product-string coefficient of a state.
    Coeff {
        /// JSON superposition file.
        #[arg(long)]
        state: PathBuf,
        /// Product string to probe, e.g. `LHH`.
        #[arg(long)]
        string: String,
    },
}

/// Run configuration embedded in every JSON report.
#[derive(Debug, Clone, Serialize)]
struct RunConfig {
    m: u32,
    seed: u64,
    ticks: u64,
    threshold: String,
    format: String,
}

enum CmdError {
    Usage(String),
    Failed(String),
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidBitCount
            | Error::BitIndexOutOfRange { .. }
            | Error::LengthMismatch { .. }
            | Error::NumberOutOfRange { .. }
            | Error::Parse(_) => CmdError::Usage(e.to_string()),
            Error::ExpansionCapExceeded { .. } => CmdError::Failed(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Failed(format!("i/o error: {e}"))
    }
}

struct Ctx {
    rns: Rns,
    config: RunConfig,
    threshold: Threshold,
    format: Format,
    out: Option<PathBuf>,
}

impl Ctx {
    fn new(args: &ConfigArgs) -> Result<Self, CmdError> {
        if args.ticks == 0 {
            return Err(CmdError::Usage("--ticks must be at least 1".into()));
        }
        let threshold: Threshold = args.threshold.parse()?;
        let rns = Rns::new(args.m, args.seed)?;
        Ok(Self {
            rns,
            config: RunConfig {
                m: args.m,
                seed: args.seed,
                ticks: args.ticks,
                threshold: threshold.to_string(),
                format: format!("{:?}", args.format).to_lowercase(),
            },
            threshold,
            format: args.format,
            out: args.out.clone(),
        })
    }

    fn m(&self) -> u32 {
        self.config.m
    }

    fn ticks(&self) -> u64 {
        self.config.ticks
    }

    fn emit(&self, text: String) -> Result<(), CmdError> {
        match &self.out {
            None => {
                print!("{text}");
                Ok(())
            }
            Some(path) => {
                std::fs::write(path, text)?;
                Ok(())
            }
        }
    }

    fn emit_json(&self, value: serde_json::Value) -> Result<(), CmdError> {
        let mut text = serde_json::to_string_pretty(&value).expect("serializable report");
        text.push('\n');
        self.emit(text)
    }
}

/// Parses the command line and runs it. Returns the process exit code.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    run_parsed(cli)
}

fn run_parsed(cli: Cli) -> ExitCode {
    let ctx = match Ctx::new(&cli.config) {
        Ok(ctx) => ctx,
        Err(e) => return report_error(e),
    };
    let outcome = match cli.command {
        Command::Rns { command } => match command {
            RnsCommand::Dump { rails } => cmd_rns_dump(&ctx, rails.as_deref()),
        },
        Command::Universe { kind, expand } => cmd_universe(&ctx, &kind, expand),
        Command::Gate { command } => cmd_gate(&ctx, command),
        Command::TruthTable { gate, check } => cmd_truth_table(&ctx, &gate, check),
        Command::Measure { command } => cmd_measure(&ctx, command),
        Command::Expand { kind, expr } => cmd_expand(&ctx, kind.as_deref(), expr.as_deref()),
        Command::Eval { expr, state, string, t0 } => {
            cmd_eval(&ctx, expr.as_deref(), state.as_deref(), string.as_deref(), t0)
        }
    };
    match outcome {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(e) => report_error(e),
    }
}

fn report_error(e: CmdError) -> ExitCode {
    match e {
        CmdError::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        CmdError::Failed(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn parse_rail_filter(filter: &str, m: u32) -> Result<Vec<RtwId>, CmdError> {
    let mut out = Vec::new();
    for part in filter.split(',') {
        let (bit, rail) = part
            .split_once(':')
            .ok_or_else(|| CmdError::Usage(format!("bad rail '{part}', expected bit:rail")))?;
        let bit: u32 = bit
            .trim()
            .parse()
            .map_err(|_| CmdError::Usage(format!("bad bit index '{bit}'")))?;
        let rail: u8 = rail
            .trim()
            .parse()
            .map_err(|_| CmdError::Usage(format!("bad rail index '{rail}'")))?;
        if bit == 0 || bit > m {
            return Err(CmdError::Usage(format!("bit index {bit} out of range 1..={m}")));
        }
        out.push(RtwId::new(bit, Rail::from_index(rail)?));
    }
    Ok(out)
}

fn cmd_rns_dump(ctx: &Ctx, rails: Option<&str>) -> Result<bool, CmdError> {
    let ids = match rails {
        Some(filter) => parse_rail_filter(filter, ctx.m())?,
        None => (1..=ctx.m())
            .flat_map(|i| [RtwId::new(i, Rail::Low), RtwId::new(i, Rail::High)])
            .collect(),
    };
    let columns: Vec<String> = ids
        .iter()
        .map(|id| format!("rail_{}_{}", id.bit_index, id.rail.index()))
        .collect();
    match ctx.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = (0..ctx.ticks())
                .map(|t| {
                    let mut row = vec![json!(t)];
                    row.extend(ids.iter().map(|&id| {
                        json!(ctx.rns.sign_unchecked(id, ClockIndex(t)).value())
                    }));
                    json!(row)
                })
                .collect();
            ctx.emit_json(json!({
                "config": ctx.config,
                "columns": std::iter::once("t".to_string()).chain(columns).collect::<Vec<_>>(),
                "rows": rows,
            }))?;
        }
        Format::Csv | Format::Text => {
            let mut text = String::new();
            writeln!(text, "t,{}", columns.join(",")).unwrap();
            for t in 0..ctx.ticks() {
                write!(text, "{t}").unwrap();
                for &id in &ids {
                    write!(text, ",{}", ctx.rns.sign_unchecked(id, ClockIndex(t)).value()).unwrap();
                }
                text.push('\n');
            }
            ctx.emit(text)?;
        }
    }
    Ok(true)
}

fn stats_invariants_hold(stats: &AmplitudeStats) -> bool {
    use num_bigint::BigUint;
    let expected_nonzero_key = |base: u32| BigUint::from(base).pow(stats.m);
    match stats.kind {
        // The headline property: never zero, magnitudes powers of 3.
        UniverseKind::TernaryNoVacuum => {
            stats.zero_count == 0
                && stats.histogram.keys().all(|k| {
                    let mut v = k.clone();
                    while &v % 3u32 == BigUint::ZERO {
                        v /= 3u32;
                    }
                    v == BigUint::from(1u32)
                })
        }
        UniverseKind::Binary => stats
            .histogram
            .keys()
            .all(|k| *k == expected_nonzero_key(2)),
        UniverseKind::Total => stats
            .histogram
            .keys()
            .all(|k| *k == expected_nonzero_key(4)),
    }
}

fn cmd_universe(ctx: &Ctx, kind: &str, expand: bool) -> Result<bool, CmdError> {
    let kind: UniverseKind = kind.parse()?;
    if expand {
        let state = expand_universe(kind, ctx.m())?;
        emit_state(ctx, json!({
            "config": ctx.config,
            "kind": kind.name(),
            "m": ctx.m(),
            "term_count": state.term_count(),
        }), &state)?;
        return Ok(true);
    }
    let stats = universe_stats(kind, ctx.m(), ctx.ticks(), &ctx.rns)?;
    let pass = stats_invariants_hold(&stats);
    let histogram: Vec<(String, u64)> = stats
        .histogram
        .iter()
        .map(|(k, c)| (k.to_string(), *c))
        .collect();
    match ctx.format {
        Format::Json => ctx.emit_json(json!({
            "config": ctx.config,
            "kind": kind.name(),
            "m": stats.m,
            "ticks": stats.ticks,
            "zero_count": stats.zero_count,
            "histogram": histogram,
            "pass": pass,
        }))?,
        Format::Csv => {
            let mut text = String::from("amplitude,count\n");
            writeln!(text, "0,{}", stats.zero_count).unwrap();
            for (k, c) in &histogram {
                writeln!(text, "{k},{c}").unwrap();
            }
            ctx.emit(text)?;
        }
        Format::Text => {
            let mut text = String::new();
            writeln!(
                text,
                "{} universe, m={}, {} ticks (seed {})",
                kind.name(),
                stats.m,
                stats.ticks,
                ctx.config.seed
            )
            .unwrap();
            writeln!(text, "zero amplitude: {} ticks", stats.zero_count).unwrap();
            for (k, c) in &histogram {
                writeln!(text, "|amplitude| {k}: {c} ticks").unwrap();
            }
            writeln!(text, "invariants: {}", if pass { "ok" } else { "VIOLATED" }).unwrap();
            ctx.emit(text)?;
        }
    }
    Ok(pass)
}

fn load_state(path: &std::path::Path) -> Result<Superposition, CmdError> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CmdError::Usage(format!("bad state file {}: {e}", path.display())))
}

fn state_from_args(
    ctx: &Ctx,
    state: Option<&std::path::Path>,
    string: Option<&str>,
) -> Result<Superposition, CmdError> {
    let state = match (state, string) {
        (Some(path), None) => load_state(path)?,
        (None, Some(s)) => {
            let w: ProductString = s.parse()?;
            Superposition::term(w, 1)
        }
        _ => {
            return Err(CmdError::Usage(
                "provide exactly one of --state <file> or --string <product-string>".into(),
            ))
        }
    };
    if state.m() != ctx.m() as usize {
        return Err(CmdError::Usage(format!(
            "state is {}-bit but -m is {}",
            state.m(),
            ctx.m()
        )));
    }
    Ok(state)
}

fn emit_state(ctx: &Ctx, mut report: serde_json::Value, state: &Superposition) -> Result<(), CmdError> {
    match ctx.format {
        Format::Json => {
            report
                .as_object_mut()
                .expect("report is an object")
                .insert("state".into(), serde_json::to_value(state).unwrap());
            ctx.emit_json(report)
        }
        Format::Csv => {
            let mut text = String::from("string,coefficient\n");
            for (w, c) in state.terms() {
                writeln!(text, "{w},{c}").unwrap();
            }
            ctx.emit(text)
        }
        Format::Text => {
            let mut text = String::new();
            for (w, c) in state.terms() {
                writeln!(text, "{c:>4} * {w}").unwrap();
            }
            if state.is_zero() {
                text.push_str("(zero state)\n");
            }
            ctx.emit(text)
        }
    }
}

fn parse_bit_value(s: &str) -> Result<BitValue, CmdError> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(BitValue::from_char(c)?),
        _ => Err(CmdError::Usage(format!(
            "bit value must be one of L, H, X, V; got '{s}'"
        ))),
    }
}

fn parse_single_bit_gate(s: &str) -> Result<SingleBitGate, CmdError> {
    match s {
        "xor" => Ok(SingleBitGate::Xor),
        "xnor" => Ok(SingleBitGate::Xnor),
        _ => Err(CmdError::Usage(format!(
            "unknown gate '{s}', expected xor or xnor"
        ))),
    }
}

fn cmd_gate(ctx: &Ctx, command: GateCommand) -> Result<bool, CmdError> {
    match command {
        GateCommand::Not { bit, state, string } => {
            let input = state_from_args(ctx, state.as_deref(), string.as_deref())?;
            let (output, report) = not_gate_report(bit, &input, &ctx.rns, ctx.ticks())?;
            match ctx.format {
                Format::Json => emit_state(
                    ctx,
                    json!({
                        "config": ctx.config,
                        "gate": report.gate,
                        "ticks": report.ticks,
                        "consistent": report.consistent,
                    }),
                    &output,
                )?,
                _ => {
                    let mut text = String::new();
                    writeln!(text, "not {bit} applied over {} ticks", report.ticks).unwrap();
                    for (w, c) in output.terms() {
                        writeln!(text, "{c:>4} * {w}").unwrap();
                    }
                    writeln!(
                        text,
                        "instantaneous consistency: {}",
                        if report.consistent { "ok" } else { "FAILED" }
                    )
                    .unwrap();
                    ctx.emit(text)?;
                }
            }
            Ok(report.consistent)
        }
        GateCommand::Xor { a, b } => run_single_bit_gate(ctx, SingleBitGate::Xor, &a, &b),
        GateCommand::Xnor { a, b } => run_single_bit_gate(ctx, SingleBitGate::Xnor, &a, &b),
    }
}

fn run_single_bit_gate(ctx: &Ctx, gate: SingleBitGate, a: &str, b: &str) -> Result<bool, CmdError> {
    let a = parse_bit_value(a)?;
    let b = parse_bit_value(b)?;
    let (out, report) = single_bit_gate_report(gate, a, b, &ctx.rns, ctx.ticks())?;
    match ctx.format {
        Format::Json => ctx.emit_json(json!({
            "config": ctx.config,
            "gate": report.gate,
            "input": report.input,
            "output": out.to_string(),
            "ticks": report.ticks,
            "consistent": report.consistent,
        }))?,
        _ => {
            let mut text = String::new();
            writeln!(
                text,
                "{}[{a}, {b}] = {out} (instantaneous consistency over {} ticks: {})",
                gate.name().to_uppercase(),
                report.ticks,
                if report.consistent { "ok" } else { "FAILED" }
            )
            .unwrap();
            ctx.emit(text)?;
        }
    }
    Ok(report.consistent)
}

fn cmd_truth_table(ctx: &Ctx, gate: &str, check: bool) -> Result<bool, CmdError> {
    let gate = parse_single_bit_gate(gate)?;
    let computed = truth_table(gate);
    let reference = reference_table(gate);
    let matches = computed == reference;
    let labels: Vec<String> = TABLE_ORDER.iter().map(|v| v.to_string()).collect();
    match ctx.format {
        Format::Json => {
            let rows: Vec<Vec<String>> = computed
                .iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect())
                .collect();
            ctx.emit_json(json!({
                "config": ctx.config,
                "gate": gate.name(),
                "labels": labels,
                "rows": rows,
                "check": if check { Some(matches) } else { None },
            }))?;
        }
        Format::Csv => {
            let mut text = String::new();
            writeln!(text, ",{}", labels.join(",")).unwrap();
            for (label, row) in labels.iter().zip(computed.iter()) {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(text, "{label},{}", cells.join(",")).unwrap();
            }
            ctx.emit(text)?;
        }
        Format::Text => {
            let mut text = String::new();
            writeln!(text, "{}  {}", gate.name().to_uppercase(), labels.join("  ")).unwrap();
            let pad = gate.name().len();
            for (label, row) in labels.iter().zip(computed.iter()) {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                writeln!(text, "{label:>pad$}  {}", cells.join("  ")).unwrap();
            }
            if check {
                writeln!(text, "reference check: {}", if matches { "ok" } else { "MISMATCH" })
                    .unwrap();
            }
            ctx.emit(text)?;
        }
    }
    Ok(!check || matches)
}

fn cmd_measure(ctx: &Ctx, command: MeasureCommand) -> Result<bool, CmdError> {
    match command {
        MeasureCommand::Ortho => {
            let matrix = orthogonality_matrix(&ctx.rns, ctx.ticks(), ctx.threshold);
            let pass = matrix.pass();
            match ctx.format {
                Format::Json => {
                    let estimates: Vec<serde_json::Value> = matrix
                        .estimates
                        .iter()
                        .enumerate()
                        .flat_map(|(i, row)| {
                            row.iter().enumerate().map(move |(j, e)| {
                                json!({
                                    "i": i,
                                    "j": j,
                                    "mean": e.mean_decimal(9),
                                    "pass": e.pass(),
                                })
                            })
                        })
                        .collect();
                    ctx.emit_json(json!({
                        "config": ctx.config,
                        "rails": 2 * matrix.m,
                        "n": matrix.n,
                        "diagonal_exact": matrix.diagonal_exact(),
                        "failures": matrix.failures(),
                        "pass": pass,
                        "estimates": estimates,
                    }))?;
                }
                Format::Csv => {
                    let mut text = String::from("i,j,mean,pass\n");
                    for (i, row) in matrix.estimates.iter().enumerate() {
                        for (j, e) in row.iter().enumerate() {
                            writeln!(text, "{i},{j},{},{}", e.mean_decimal(9), e.pass()).unwrap();
                        }
                    }
                    ctx.emit(text)?;
                }
                Format::Text => {
                    let mut text = String::new();
                    writeln!(
                        text,
                        "rail correlation matrix: {} rails, {} ticks, threshold {}",
                        2 * matrix.m,
                        matrix.n,
                        ctx.threshold
                    )
                    .unwrap();
                    for row in &matrix.estimates {
                        let cells: Vec<String> =
                            row.iter().map(|e| format!("{:>12}", e.mean_decimal(6))).collect();
                        writeln!(text, "{}", cells.join(" ")).unwrap();
                    }
                    writeln!(
                        text,
                        "diagonal exact: {}; off-diagonal failures: {:?}",
                        matrix.diagonal_exact(),
                        matrix.failures()
                    )
                    .unwrap();
                    ctx.emit(text)?;
                }
            }
            Ok(pass)
        }
        MeasureCommand::Coeff { state, string } => {
            let y = load_state(&state)?;
            if y.m() != ctx.m() as usize {
                return Err(CmdError::Usage(format!(
                    "state is {}-bit but -m is {}",
                    y.m(),
                    ctx.m()
                )));
            }
            let w: ProductString = string.parse()?;
            if w.len() != y.m() {
                return Err(CmdError::Usage(format!(
                    "product string has {} positions, state is {}-bit",
                    w.len(),
                    y.m()
                )));
            }
            let est = measure_coefficient(&y, &w, ctx.ticks(), &ctx.rns, ctx.threshold)?;
            let pass = est.pass();
            match ctx.format {
                Format::Json => ctx.emit_json(json!({
                    "config": ctx.config,
                    "string": w.to_string(),
                    "estimate": est.to_report(),
                }))?,
                _ => {
                    let mut text = String::new();
                    writeln!(
                        text,
                        "coefficient of {w}: mean {} (exact {}), band +-{:.6}: {}",
                        est.mean_decimal(9),
                        est.target,
                        est.bound(),
                        if pass { "ok" } else { "FAILED" }
                    )
                    .unwrap();
                    ctx.emit(text)?;
                }
            }
            Ok(pass)
        }
    }
}

fn cmd_expand(ctx: &Ctx, kind: Option<&str>, expr: Option<&std::path::Path>) -> Result<bool, CmdError> {
    let (state, label) = match (kind, expr) {
        (Some(kind), None) => {
            let kind: UniverseKind = kind.parse()?;
            (expand_universe(kind, ctx.m())?, kind.name().to_string())
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            let expr: SignalExpr = serde_json::from_str(&text)
                .map_err(|e| CmdError::Usage(format!("bad expression file {}: {e}", path.display())))?;
            (
                expand_expr(&expr, ctx.m() as usize, DEFAULT_EXPANSION_CAP)?,
                path.display().to_string(),
            )
        }
        _ => {
            return Err(CmdError::Usage(
                "provide a universe kind or --expr <file>".into(),
            ))
        }
    };
    emit_state(
        ctx,
        json!({
            "config": ctx.config,
            "source": label,
            "term_count": state.term_count(),
        }),
        &state,
    )?;
    Ok(true)
}

fn cmd_eval(
    ctx: &Ctx,
    expr: Option<&std::path::Path>,
    state: Option<&std::path::Path>,
    string: Option<&str>,
    t0: u64,
) -> Result<bool, CmdError> {
    let expr = match (expr, state, string) {
        (Some(path), None, None) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)
                .map_err(|e| CmdError::Usage(format!("bad expression file {}: {e}", path.display())))?
        }
        (None, Some(path), None) => {
            let y = load_state(path)?;
            if y.m() != ctx.m() as usize {
                return Err(CmdError::Usage(format!(
                    "state is {}-bit but -m is {}",
                    y.m(),
                    ctx.m()
                )));
            }
            compile_superposition(&y)
        }
        (None, None, Some(s)) => {
            let w: ProductString = s.parse()?;
            compile_superposition(&Superposition::term(w, 1))
        }
        _ => {
            return Err(CmdError::Usage(
                "provide exactly one of --expr, --state or --string".into(),
            ))
        }
    };
    let window = eval_window(&expr, ClockIndex(t0), ctx.ticks(), &ctx.rns)?;
    match ctx.format {
        Format::Json => {
            let rows: Vec<(u64, String)> = window
                .iter()
                .enumerate()
                .map(|(k, v)| (t0 + k as u64, v.to_string()))
                .collect();
            ctx.emit_json(json!({
                "config": ctx.config,
                "t0": t0,
                "rows": rows,
            }))?;
        }
        Format::Csv | Format::Text => {
            let mut text = String::from("t,amplitude\n");
            for (k, v) in window.iter().enumerate() {
                writeln!(text, "{},{v}", t0 + k as u64).unwrap();
            }
            ctx.emit(text)?;
        }
    }
    Ok(true)
}
