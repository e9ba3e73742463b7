//! Command-line front end: loads instance files, runs merge/split
//! iterations, sweeps reachable outcomes, checks stability, and scans order
//! axioms. All results go to stdout as JSON (one object per line); warnings
//! and timing notes go to stderr.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use coalition_core::axioms::{check_order_properties, expected_axioms, expected_axioms_hold};
use coalition_core::engine::{
    all_terminal_outcomes, find_stable, is_dc_stable_direct, is_dc_stable_lemma, is_dp_stable,
    iterate, StabilityWitness,
};
use coalition_core::games::{build_relation, load_instance, Basis};
use coalition_core::orders::OrderError;
use coalition_core::partition::bell;
use coalition_core::{
    Coalition, ComparisonRelation, EngineError, GameError, GameInstance, Method, OrderKind,
    Partition, Rat, Schedule,
};

/// Exit codes: 0 success, 1 expected-property failure, 2 input error,
/// 3 inadmissible order, 4 internal invariant breach.
struct Failure {
    code: u8,
    message: String,
}

fn input(message: String) -> Failure {
    Failure { code: 2, message }
}

fn from_game_error(e: GameError) -> Failure {
    let code = match &e {
        GameError::Order(OrderError::InadmissibleOrder { .. }) => 3,
        _ => 2,
    };
    Failure { code, message: e.to_string() }
}

fn from_engine_error(e: EngineError) -> Failure {
    let code = match &e {
        EngineError::Inadmissible { .. } => 3,
        EngineError::TooManyPlayers { .. } => 2,
        // broken descent, a repeated partition, or two stable partitions:
        // the library's own invariants failed, not the input
        _ => 4,
    };
    Failure { code, message: e.to_string() }
}

#[derive(Parser)]
#[command(name = "coalition", about = "Coalition formation by merge/split rules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GameArgs {
    /// Game instance file (JSON)
    #[arg(long)]
    game: PathBuf,
    /// Comparison order (utilitarian, nash, leximin, pareto, ...); worth-table
    /// kinds require one, generators embed theirs, fixed relations refuse it
    #[arg(long)]
    order: Option<String>,
    /// What the order compares: whole-block worths (v) or equal splits (phi)
    #[arg(long)]
    basis: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the rewrite system until no move applies, printing each step
    Iterate {
        #[command(flatten)]
        game: GameArgs,
        /// Starting partition literal, e.g. "1,2|3"; defaults to singletons
        #[arg(long)]
        start: Option<String>,
        /// Move selection: "first" applicable or a seeded "random" draw
        #[arg(long, default_value = "first")]
        schedule: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every terminal partition reachable from the start
    Outcomes {
        #[command(flatten)]
        game: GameArgs,
        /// Starting partition literal; defaults to singletons
        #[arg(long)]
        start: Option<String>,
    },
    /// Check one partition for stability, or scan for the unique stable one
    Stable {
        #[command(flatten)]
        game: GameArgs,
        /// Partition under test
        #[arg(long, conflicts_with = "scan")]
        start: Option<String>,
        /// Checker: dp, dc-direct, or dc-lemma
        #[arg(long, default_value = "dc-lemma")]
        mode: String,
        /// Scan all partitions instead of checking one
        #[arg(long)]
        scan: bool,
    },
    /// Scan all partitions for the unique stable one (stable --scan)
    Scan {
        #[command(flatten)]
        game: GameArgs,
        /// Checker: dp, dc-direct, or dc-lemma
        #[arg(long, default_value = "dc-lemma")]
        mode: String,
    },
    /// Check order axioms exhaustively over a rational grid
    Properties {
        /// Order kind to check
        #[arg(long)]
        order: String,
        /// Echoed in the report; the order kind fixes its own domain
        #[arg(long)]
        basis: Option<String>,
        /// Comma-separated rationals the domain draws from
        #[arg(long, default_value = "0,1/2,1,2,3")]
        grid: String,
        /// Largest multiset size or vector length (at most 4)
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
}

struct Loaded {
    instance: GameInstance,
    relation: Box<dyn ComparisonRelation>,
    digest: String,
}

fn load(args: &GameArgs) -> Result<Loaded, Failure> {
    let bytes = fs::read(&args.game)
        .map_err(|e| input(format!("cannot read {}: {e}", args.game.display())))?;
    let digest = hex_digest(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| input(format!("{} is not UTF-8", args.game.display())))?;
    let (instance, warnings) = load_instance(&text).map_err(from_game_error)?;
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let order = match &args.order {
        Some(s) => Some(s.parse::<OrderKind>().map_err(|e| input(e.to_string()))?),
        None => None,
    };
    let basis = match &args.basis {
        Some(s) => Some(s.parse::<Basis>().map_err(from_game_error)?),
        None => None,
    };
    let relation = build_relation(&instance, order, basis).map_err(from_game_error)?;
    Ok(Loaded { instance, relation, digest })
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn parse_start(literal: Option<&str>, n: u32) -> Result<Partition, Failure> {
    match literal {
        Some(s) => Partition::parse(s, Coalition::full(n))
            .map_err(|e| input(format!("bad start partition {s:?}: {e}"))),
        None => Ok(Partition::singletons(n)),
    }
}

fn parse_mode(mode: &str) -> Result<Method, Failure> {
    match mode {
        "dp" => Ok(Method::Dp),
        "dc-direct" => Ok(Method::DcDirect),
        "dc-lemma" => Ok(Method::DcLemma),
        other => Err(input(format!("unknown mode {other:?}; use dp, dc-direct, or dc-lemma"))),
    }
}

fn base_report(command: &str, loaded: &Loaded) -> Value {
    json!({
        "command": command,
        "digest": loaded.digest,
        "kind": loaded.instance.kind_name(),
        "n": loaded.instance.n(),
        "relation": loaded.relation.describe(),
    })
}

fn cmd_iterate(
    game: &GameArgs,
    start: Option<&str>,
    schedule: &str,
    seed: u64,
) -> Result<u8, Failure> {
    let loaded = load(game)?;
    let n = loaded.instance.n();
    let start = parse_start(start, n)?;
    let schedule = match schedule {
        "first" => Schedule::First,
        "random" => Schedule::Random { seed },
        other => return Err(input(format!("unknown schedule {other:?}; use first or random"))),
    };
    // strict descent keeps any trace below the partition count; past that
    // (or past a flat million for large n) something upstream is broken
    let cap = bell(n).min(1_000_000) as usize;
    let trace =
        iterate(&start, loaded.relation.as_ref(), schedule, cap).map_err(from_engine_error)?;
    let mut report = base_report("iterate", &loaded);
    report["schedule"] = json!(match schedule {
        Schedule::First => "first",
        Schedule::Random { .. } => "random",
    });
    report["seed"] = json!(seed);
    println!("{report}");
    for line in trace.json_lines() {
        println!("{line}");
    }
    Ok(0)
}

fn cmd_outcomes(game: &GameArgs, start: Option<&str>) -> Result<u8, Failure> {
    let loaded = load(game)?;
    let start = parse_start(start, loaded.instance.n())?;
    let outcomes =
        all_terminal_outcomes(&start, loaded.relation.as_ref()).map_err(from_engine_error)?;
    let mut report = base_report("outcomes", &loaded);
    report["start"] = json!(start.to_string());
    report["outcomes"] = json!(outcomes.iter().map(Partition::to_string).collect::<Vec<_>>());
    report["count"] = json!(outcomes.len());
    println!("{report}");
    Ok(0)
}

fn cmd_stable(
    game: &GameArgs,
    start: Option<&str>,
    mode: &str,
    scan: bool,
    command: &str,
) -> Result<u8, Failure> {
    let loaded = load(game)?;
    let n = loaded.instance.n();
    let method = parse_mode(mode)?;
    let rel = loaded.relation.as_ref();
    let mut report = base_report(command, &loaded);
    report["mode"] = json!(method.name());
    if scan {
        let found = find_stable(rel, n, method).map_err(from_engine_error)?;
        report["stable-partition"] = match &found {
            Some(p) => json!(p.to_string()),
            None => Value::Null,
        };
    } else {
        let literal = start
            .ok_or_else(|| input("stable needs --start PARTITION or --scan".to_string()))?;
        let p = parse_start(Some(literal), n)?;
        let verdict = match method {
            Method::Dp => is_dp_stable(&p, rel),
            Method::DcDirect => is_dc_stable_direct(&p, rel),
            Method::DcLemma => is_dc_stable_lemma(&p, rel),
        }
        .map_err(from_engine_error)?;
        report["partition"] = json!(p.to_string());
        report["stable"] = json!(verdict.stable);
        report["witness"] = match &verdict.witness {
            Some(w) => json!(w.literal()),
            None => Value::Null,
        };
        report["witness-kind"] = match &verdict.witness {
            Some(StabilityWitness::Partition(_)) => json!("partition"),
            Some(StabilityWitness::Collection(_)) => json!("collection"),
            None => Value::Null,
        };
    }
    println!("{report}");
    Ok(0)
}

fn cmd_properties(
    order: &str,
    basis: Option<&str>,
    grid: &str,
    max_size: usize,
) -> Result<u8, Failure> {
    let kind: OrderKind = order.parse().map_err(|e: OrderError| input(e.to_string()))?;
    let basis = match basis {
        Some(s) => Some(s.parse::<Basis>().map_err(from_game_error)?),
        None => None,
    };
    let values: Vec<Rat> = grid
        .split(',')
        .map(|s| s.trim().parse::<Rat>().map_err(|e| input(format!("bad grid value: {e}"))))
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err(input("the grid needs at least one value".to_string()));
    }
    if !(1..=4).contains(&max_size) {
        return Err(input(format!("max-size {max_size} out of range 1..=4")));
    }
    let reports =
        check_order_properties(kind, &values, max_size).map_err(|e| input(e.to_string()))?;
    let pass = expected_axioms_hold(kind, &reports);
    let report = json!({
        "command": "properties",
        "order": kind.name(),
        "basis": basis.map(|b| json!(b.name())).unwrap_or(Value::Null),
        "grid": values.iter().map(Rat::to_string).collect::<Vec<_>>(),
        "max-size": max_size,
        "expected": expected_axioms(kind).iter().map(|a| a.name()).collect::<Vec<_>>(),
        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        "pass": pass,
    });
    println!("{report}");
    Ok(if pass { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Iterate { game, start, schedule, seed } => {
            cmd_iterate(game, start.as_deref(), schedule, *seed)
        }
        Command::Outcomes { game, start } => cmd_outcomes(game, start.as_deref()),
        Command::Stable { game, start, mode, scan } => {
            cmd_stable(game, start.as_deref(), mode, *scan, "stable")
        }
        Command::Scan { game, mode } => cmd_stable(game, None, mode, true, "scan"),
        Command::Properties { order, basis, grid, max_size } => {
            cmd_properties(order, basis.as_deref(), grid, *max_size)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(code) => {
            eprintln!("note: finished in {:.1?}", started.elapsed());
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
