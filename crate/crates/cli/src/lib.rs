//! Command-line front end for `upn-core`.
//!
//! Exit codes: 0 success, 1 failed verification or nothing found, 2 usage.

pub mod bounds;
pub mod suite;

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use upn_core::dot;
use upn_core::perm::parse_list;
use upn_core::standard::{
    audit_completeness, extract_call_sequence, synthesize_baseline, synthesize_routed,
    verify_circuit, OracleKind, PermSelection, StandardCircuit,
};
use upn_core::superseq::{
    check_completeness, construct, find_missing, search_shortest, CheckMode, CompleteSequence,
    SearchOutcome, Strategy, EXHAUSTIVE_LIMIT,
};
use upn_core::switchnet::{self, build, round_trip, Topology};
use upn_core::{Error, Execution, Permutation};

#[derive(Debug, Parser)]
#[command(name = "upn", version, about = "Unknown-permutation oracle circuits and switch networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Complete sequences
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Standard-model circuits
    #[command(subcommand)]
    Circ(CircCommand),
    /// Quantum-switch networks
    #[command(subcommand)]
    Switch(SwitchCommand),
    /// Call and switch bounds table
    Bounds(BoundsArgs),
    /// Run the built-in verification suite
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqStrategy {
    Repeat,
    Zigzag,
    Lookup,
}

impl From<SeqStrategy> for Strategy {
    fn from(s: SeqStrategy) -> Self {
        match s {
            SeqStrategy::Repeat => Strategy::Repeat,
            SeqStrategy::Zigzag => Strategy::Zigzag,
            SeqStrategy::Lookup => Strategy::Lookup,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CircStrategy {
    Routed,
    Baseline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TopologyArg {
    Benes,
    Triangular,
}

impl From<TopologyArg> for Topology {
    fn from(t: TopologyArg) -> Self {
        match t {
            TopologyArg::Benes => Topology::Benes,
            TopologyArg::Triangular => Topology::Triangular,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Perms {
    All,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Symbolic,
    Phase,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum SeqCommand {
    /// Build a complete sequence
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "zigzag")]
        strategy: SeqStrategy,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check a word for completeness
    Check {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
        /// Sample this many permutations instead of checking all of them
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest n checked exhaustively
        #[arg(long, default_value_t = EXHAUSTIVE_LIMIT)]
        exhaustive_limit: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Search for a complete word of a given length
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        length: usize,
        /// Node expansions before giving up
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct CircuitArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "routed")]
    pub strategy: CircStrategy,
    /// Routed only: a word like 1,2,1 or one of repeat, zigzag, lookup
    #[arg(long, default_value = "zigzag")]
    pub word: String,
}

#[derive(Debug, Subcommand)]
pub enum CircCommand {
    /// Describe a circuit
    Synth {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the circuit against an oracle for many permutations
    Verify {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long, value_enum, default_value = "all")]
        perms: Perms,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "symbolic")]
        oracle: OracleArg,
        /// Invert routing layer i before verifying
        #[arg(long)]
        mutate_layer: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check that the circuit's call word is complete
    Audit {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long)]
        mutate_layer: Option<usize>,
        /// Drop the last call from the audited word
        #[arg(long)]
        truncate: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct NetworkArgs {
    #[arg(long, value_enum, default_value = "benes")]
    pub topology: TopologyArg,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum SwitchCommand {
    /// Describe a network
    Build {
        #[command(flatten)]
        network: NetworkArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Control program realizing a permutation
    Route {
        #[command(flatten)]
        network: NetworkArgs,
        #[arg(long)]
        perm: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Route and propagate many permutations
    Verify {
        #[command(flatten)]
        network: NetworkArgs,
        #[arg(long, value_enum, default_value = "all")]
        perms: Perms,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Count distinct orderings over every control program
    Enumerate {
        #[command(flatten)]
        network: NetworkArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 1)]
    pub n_min: usize,
    #[arg(long, default_value_t = 20)]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "quick")]
    pub level: LevelArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub mutate_layer: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    Failure,
}

impl Status {
    fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Success
        } else {
            Status::Failure
        }
    }

    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Failure => 1,
        }
    }
}

/// A problem with the request itself; reported with exit code 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub const USAGE_EXIT: i32 = 2;

type Outcome = Result<Status, CliError>;

fn unsupported(format: Format, what: &str) -> CliError {
    let name = format!("{format:?}").to_lowercase();
    CliError::Usage(format!("--format {name} is not available for {what}"))
}

fn emit_json(out: &mut dyn Write, value: serde_json::Value) -> io::Result<()> {
    writeln!(out, "{value}")
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn main_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            USAGE_EXIT
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Seq(c) => seq(c, out),
        Command::Circ(c) => circ(c, out),
        Command::Switch(c) => switch(c, out),
        Command::Bounds(a) => bounds_cmd(a, out),
        Command::Verify(a) => verify_cmd(a, out),
    }
}

fn seq(cmd: &SeqCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        SeqCommand::Gen { n, strategy, format } => {
            let w = construct(*n, (*strategy).into())?;
            match format {
                Format::Text => writeln!(out, "{w}")?,
                Format::Json => writeln!(out, "{}", w.to_json())?,
                f => return Err(unsupported(*f, "seq gen")),
            }
            Ok(Status::Success)
        }
        SeqCommand::Check {
            n,
            word,
            trials,
            seed,
            exhaustive_limit,
            format,
        } => {
            let w = CompleteSequence::parse(*n, word)?;
            let mode = match trials {
                Some(trials) => CheckMode::Sampled {
                    trials: *trials,
                    seed: *seed,
                },
                None => CheckMode::Exhaustive,
            };
            let missing = find_missing(&w, mode, *exhaustive_limit, Execution::default())?;
            let verdict = if missing.is_none() { "complete" } else { "incomplete" };
            match format {
                Format::Text => match &missing {
                    None => writeln!(out, "{verdict}")?,
                    Some(p) => writeln!(out, "{verdict} (missing {p})")?,
                },
                Format::Json => emit_json(
                    out,
                    json!({
                        "n": n,
                        "length": w.len(),
                        "mode": if trials.is_some() { "sampled" } else { "exhaustive" },
                        "complete": missing.is_none(),
                        "missing": missing.as_ref().map(|p| p.images().to_vec()),
                    }),
                )?,
                f => return Err(unsupported(*f, "seq check")),
            }
            Ok(Status::from_ok(missing.is_none()))
        }
        SeqCommand::Search {
            n,
            length,
            budget,
            format,
        } => {
            let report = search_shortest(*n, *length, *budget)?;
            let (label, word) = match &report.outcome {
                SearchOutcome::Found(w) => ("found", Some(w)),
                SearchOutcome::NotFound => ("not_found", None),
                SearchOutcome::BudgetExhausted => ("budget_exhausted", None),
            };
            match format {
                Format::Text => match word {
                    Some(w) => writeln!(out, "{w}")?,
                    None => writeln!(out, "{label}")?,
                },
                Format::Json => emit_json(
                    out,
                    json!({
                        "outcome": label,
                        "expansions": report.expansions,
                        "word": word.map(|w| w.symbols().to_vec()),
                    }),
                )?,
                f => return Err(unsupported(*f, "seq search")),
            }
            Ok(Status::from_ok(word.is_some()))
        }
    }
}

fn word_arg(n: usize, word: &str) -> upn_core::Result<CompleteSequence> {
    match word.parse::<Strategy>() {
        Ok(s) => construct(n, s),
        Err(_) => CompleteSequence::parse(n, word),
    }
}

fn circuit(args: &CircuitArgs, mutate_layer: Option<usize>) -> Result<StandardCircuit, CliError> {
    let c = match args.strategy {
        CircStrategy::Routed => synthesize_routed(word_arg(args.n, &args.word)?)?,
        CircStrategy::Baseline => synthesize_baseline(args.n)?,
    };
    match mutate_layer {
        Some(i) => {
            if i >= c.layers().len() {
                return Err(CliError::Usage(format!(
                    "layer {i} out of range; the circuit has {} layers",
                    c.layers().len()
                )));
            }
            Ok(c.with_inverted_layer(i)?)
        }
        None => Ok(c),
    }
}

fn selection(n: usize, perms: Perms, samples: usize, seed: u64) -> PermSelection {
    match perms {
        Perms::All if n <= upn_core::standard::VERIFY_ALL_LIMIT => PermSelection::All,
        Perms::All => PermSelection::Sample {
            count: samples,
            seed,
        },
        Perms::Sample => PermSelection::Sample {
            count: samples,
            seed,
        },
    }
}

fn circ(cmd: &CircCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        CircCommand::Synth { circuit: args, format } => {
            let c = circuit(args, None)?;
            match format {
                Format::Text => {
                    let s = c.summary();
                    writeln!(
                        out,
                        "{} circuit, n={}, {} wires, {} layers, {} calls",
                        s.strategy,
                        s.n,
                        c.wire_count(),
                        s.layers,
                        s.calls
                    )?;
                    writeln!(out, "calls: {}", upn_core::perm::format_list(&extract_call_sequence(&c)))?;
                }
                Format::Json => writeln!(out, "{}", c.to_json())?,
                Format::Dot => write!(out, "{}", dot::circuit_to_dot(&c))?,
                f => return Err(unsupported(*f, "circ synth")),
            }
            Ok(Status::Success)
        }
        CircCommand::Verify {
            circuit: args,
            perms,
            samples,
            seed,
            oracle,
            mutate_layer,
            format,
        } => {
            let c = circuit(args, *mutate_layer)?;
            let oracle = match oracle {
                OracleArg::Symbolic => OracleKind::Symbolic,
                OracleArg::Phase => OracleKind::Phase,
                OracleArg::Numeric => OracleKind::Numeric { seed: *seed },
            };
            let report = verify_circuit(&c, selection(args.n, *perms, *samples, *seed), oracle)?;
            match format {
                Format::Text => {
                    writeln!(out, "{report}")?;
                    for f in &report.failures {
                        writeln!(out, "FAIL sigma={}: {}", f.sigma, f.detail)?;
                    }
                }
                Format::Json => emit_json(
                    out,
                    json!({
                        "oracle": report.oracle,
                        "total": report.total,
                        "passed": report.passed,
                        "failures": report.failures.iter().map(|f| json!({
                            "sigma": f.sigma.images(),
                            "detail": f.detail,
                        })).collect::<Vec<_>>(),
                    }),
                )?,
                f => return Err(unsupported(*f, "circ verify")),
            }
            Ok(Status::from_ok(report.all_passed()))
        }
        CircCommand::Audit {
            circuit: args,
            mutate_layer,
            truncate,
            format,
        } => {
            let c = circuit(args, *mutate_layer)?;
            let ok = if *truncate {
                let mut calls = extract_call_sequence(&c);
                calls.pop();
                if calls.is_empty() {
                    false
                } else {
                    let w = CompleteSequence::new(args.n, calls)?;
                    check_completeness(&w, CheckMode::Exhaustive, EXHAUSTIVE_LIMIT, Execution::default())?
                }
            } else {
                audit_completeness(&c)?
            };
            let verdict = if ok { "complete" } else { "incomplete" };
            match format {
                Format::Text => writeln!(out, "{verdict}")?,
                Format::Json => emit_json(out, json!({ "n": args.n, "complete": ok }))?,
                f => return Err(unsupported(*f, "circ audit")),
            }
            Ok(Status::from_ok(ok))
        }
    }
}

fn switch(cmd: &SwitchCommand, out: &mut dyn Write) -> Outcome {
    match cmd {
        SwitchCommand::Build { network, format } => {
            let net = build(network.topology.into(), network.n)?;
            match format {
                Format::Text => writeln!(
                    out,
                    "{} network, n={}, {} switches",
                    net.topology(),
                    net.n(),
                    net.switch_count()
                )?,
                Format::Json => writeln!(out, "{}", net.to_json())?,
                Format::Dot => write!(out, "{}", dot::network_to_dot(&net))?,
                f => return Err(unsupported(*f, "switch build")),
            }
            Ok(Status::Success)
        }
        SwitchCommand::Route {
            network,
            perm,
            format,
        } => {
            let net = build(network.topology.into(), network.n)?;
            let sigma = Permutation::new(parse_list(perm)?)?;
            let program = switchnet::route(&net, &sigma)?;
            let ordering = switchnet::propagate(&net, &program)?;
            let ok = ordering == sigma.images();
            match format {
                Format::Text => writeln!(out, "{program}")?,
                Format::Json => emit_json(
                    out,
                    json!({ "program": program.to_string(), "ordering": ordering }),
                )?,
                f => return Err(unsupported(*f, "switch route")),
            }
            Ok(Status::from_ok(ok))
        }
        SwitchCommand::Verify {
            network,
            perms,
            samples,
            seed,
            format,
        } => {
            let net = build(network.topology.into(), network.n)?;
            let sigmas = match selection(network.n, *perms, *samples, *seed) {
                PermSelection::All => Permutation::all(network.n),
                PermSelection::Sample { count, seed } => {
                    if count == 0 {
                        return Err(Error::NoTrials.into());
                    }
                    Permutation::sample(network.n, count, seed)
                }
            };
            let report = round_trip(&net, &sigmas, Execution::default())?;
            let passed = report.total - report.failures.len();
            match format {
                Format::Text => {
                    writeln!(out, "{passed}/{} pass", report.total)?;
                    for s in &report.failures {
                        writeln!(out, "FAIL sigma={s}")?;
                    }
                }
                Format::Json => emit_json(
                    out,
                    json!({
                        "total": report.total,
                        "passed": passed,
                        "failures": report.failures.iter().map(|s| s.images()).collect::<Vec<_>>(),
                    }),
                )?,
                f => return Err(unsupported(*f, "switch verify")),
            }
            Ok(Status::from_ok(report.all_passed()))
        }
        SwitchCommand::Enumerate { network, format } => {
            let net = build(network.topology.into(), network.n)?;
            let count = switchnet::enumerate_orderings(&net)?;
            let k = net.switch_count();
            match format {
                Format::Text => writeln!(out, "{count} orderings from {k} switches ({} programs)", 1u64 << k)?,
                Format::Json => emit_json(
                    out,
                    json!({ "switches": k, "programs": 1u64 << k, "orderings": count }),
                )?,
                f => return Err(unsupported(*f, "switch enumerate")),
            }
            Ok(Status::Success)
        }
    }
}

fn bounds_cmd(args: &BoundsArgs, out: &mut dyn Write) -> Outcome {
    let format = match args.format {
        Format::Text => bounds::Format::Text,
        Format::Json => bounds::Format::Json,
        Format::Csv => bounds::Format::Csv,
        f => return Err(unsupported(f, "bounds")),
    };
    let rows = bounds::rows(args.n_min, args.n_max).map_err(|e| CliError::Usage(e.0))?;
    write!(out, "{}", bounds::render(&rows, format))?;
    Ok(Status::Success)
}

fn verify_cmd(args: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let level = match args.level {
        LevelArg::Quick => suite::Level::Quick,
        LevelArg::Full => suite::Level::Full,
    };
    let report = suite::run(suite::SuiteConfig {
        level,
        seed: args.seed,
        mutate_layer: args.mutate_layer,
    });
    match args.format {
        Format::Text => writeln!(out, "{report}")?,
        Format::Json => emit_json(
            out,
            json!({
                "ok": report.ok(),
                "checks": report.checks.iter().map(|c| json!({
                    "name": c.name,
                    "passed": c.passed,
                    "total": c.total,
                    "detail": c.detail,
                })).collect::<Vec<_>>(),
            }),
        )?,
        f => return Err(unsupported(f, "verify")),
    }
    Ok(Status::from_ok(report.ok()))
}
