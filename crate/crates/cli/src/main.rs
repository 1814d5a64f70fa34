//! Command-line front end: parse a group recipe, run classification, search,
//! or witness construction, and emit one JSON document on standard output.
//!
//! Exit codes: 0 when the command reached a decision, 2 when a search ended
//! undecided within its budget, 3 on any input error.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde::Serialize;

use filled_groups::witnesses::{
    central_c4_witness, d44_witness, dihedral_witness, extraspecial_witness,
};
use filled_groups::{
    build_group, classify_filled, exhaustive_filled_check, known_filled_members,
    random_nonfilling_lmpfs, verify_witness, Built, ClassifierFlags, ElemSet, FilledStatus,
    FiniteGroup, GroupSpec, SearchConfig, Verdict, WitnessReport,
};

const SCHEMA: u32 = 1;
const EXIT_DECIDED: i32 = 0;
const EXIT_UNDECIDED: i32 = 2;
const EXIT_INPUT: i32 = 3;

#[derive(Parser)]
#[command(name = "filled-groups", version, about = "Decide filledness of finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for the randomized search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Restart budget for the randomized search.
    #[arg(long, global = true)]
    max_restarts: Option<u64>,

    /// Time budget in seconds for the randomized search.
    #[arg(long, global = true)]
    time_budget: Option<u64>,

    /// Keep groups of order 2^k * p away from the closed-form shortcut.
    #[arg(long = "no-2kp-shortcut", global = true)]
    no_2kp_shortcut: bool,

    /// Scan all product-free triples instead of orbit representatives.
    #[arg(long, global = true)]
    no_orbit_reduction: bool,

    /// Worker count for the exhaustive scan.
    #[arg(long, global = true)]
    parallel: Option<usize>,

    /// Allow exhaustive search on groups of order 64 and above.
    #[arg(long, global = true)]
    exhaustive_opt_in: bool,

    /// Append a JSONL verdict record here (default: $FILLED_GROUPS_LEDGER).
    #[arg(long, global = true)]
    ledger: Option<PathBuf>,

    /// Indented JSON instead of a single line.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the group is filled.
    Classify { spec: String },
    /// Search for a non-filling locally maximal product-free set.
    FindNfs { spec: String },
    /// Decide by enumerating every locally maximal product-free set.
    Exhaustive { spec: String },
    /// Construct a recorded witness family member.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Check one candidate set: product-free, locally maximal, filling.
    Verify {
        spec: String,
        /// JSON array of element labels or indices, e.g. ["x","x^4"].
        #[arg(long)]
        set: String,
    },
    /// List the known filled groups of one order.
    Table { order: usize },
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Closed-form witness for the dihedral group of order 2n, odd n >= 13.
    Dihedral { n: usize },
    /// The recorded witness for the dihedral group of order 44.
    D44,
    /// Involution witness for an ESP/ESM group of order at least 512.
    Extraspecial { spec: String },
    /// Greedy witness for an ESC4 group, seeded by --seed.
    Esc4 { spec: String },
}

#[derive(Serialize)]
struct VerdictRecord {
    schema: u32,
    spec_string: String,
    order: usize,
    filled: FilledField,
    rule_chain: Vec<String>,
    witness: Option<Vec<String>>,
    seed: u64,
    elapsed_ms: u128,
    tool_version: String,
    timestamp: String,
}

enum FilledField {
    Decided(bool),
    Undecided,
}

impl Serialize for FilledField {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            FilledField::Decided(b) => ser.serialize_bool(*b),
            FilledField::Undecided => ser.serialize_str("undecided"),
        }
    }
}

#[derive(Serialize)]
struct ChecksJson {
    product_free: bool,
    locally_maximal: Option<bool>,
    fills: Option<bool>,
}

#[derive(Serialize)]
struct WitnessJson {
    schema: u32,
    group_spec: String,
    set: Vec<String>,
    checks: ChecksJson,
    excluded_element: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

#[derive(Serialize)]
struct VerifyJson {
    schema: u32,
    group_spec: String,
    set: Vec<String>,
    checks: ChecksJson,
}

#[derive(Serialize)]
struct TableJson {
    schema: u32,
    order: usize,
    members: Vec<String>,
}

#[derive(Serialize)]
struct ErrorJson {
    schema: u32,
    error: String,
}

fn main() {
    // clap's own usage errors exit with 2, which this tool reserves for
    // undecided verdicts; remap them to the input-error code.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_DECIDED };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let code = match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            emit(cli.pretty, &ErrorJson { schema: SCHEMA, error: msg });
            EXIT_INPUT
        }
    };
    std::process::exit(code);
}

fn emit<T: Serialize>(pretty: bool, value: &T) {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    }
    .expect("output serializes");
    println!("{text}");
}

fn run(cli: &Cli) -> Result<i32, String> {
    match &cli.command {
        Command::Classify { spec } => {
            let g = parse_and_build(spec)?.into_group();
            let flags = ClassifierFlags {
                use_2kp_shortcut: !cli.no_2kp_shortcut,
                bypass_table: false,
                budgets: search_config(cli),
            };
            let v = classify_filled(&g, &flags);
            finish_verdict(cli, &g, v)
        }
        Command::FindNfs { spec } => {
            let g = parse_and_build(spec)?.into_group();
            let out = random_nonfilling_lmpfs(&g, &search_config(cli));
            let v = Verdict {
                filled: if out.witness.is_some() {
                    FilledStatus::NotFilled
                } else {
                    FilledStatus::Undecided
                },
                witness: out.witness,
                rule_chain: vec!["random-search".to_string()],
                stats: out.stats,
            };
            finish_verdict(cli, &g, v)
        }
        Command::Exhaustive { spec } => {
            let g = parse_and_build(spec)?.into_group();
            let v = exhaustive_filled_check(&g, &search_config(cli)).map_err(|e| e.to_string())?;
            finish_verdict(cli, &g, v)
        }
        Command::Witness(w) => run_witness(cli, w),
        Command::Verify { spec, set } => {
            let g = parse_and_build(spec)?.into_group();
            let s = parse_set_literal(&g, set)?;
            let report = verify_witness(&g, &s).map_err(|e| e.to_string())?;
            emit(
                cli.pretty,
                &VerifyJson {
                    schema: SCHEMA,
                    group_spec: g.spec_string().to_string(),
                    set: labels_of(&g, &s),
                    checks: checks_json(&report),
                },
            );
            Ok(EXIT_DECIDED)
        }
        Command::Table { order } => {
            let members = known_filled_members(*order).map_err(|e| e.to_string())?;
            emit(
                cli.pretty,
                &TableJson {
                    schema: SCHEMA,
                    order: *order,
                    members: members.iter().map(|m| m.to_string()).collect(),
                },
            );
            Ok(EXIT_DECIDED)
        }
    }
}

fn run_witness(cli: &Cli, w: &WitnessCommand) -> Result<i32, String> {
    let no_frame = |spec: &str| format!("{spec}: not an extraspecial-family construction");
    let (g, set, excluded, family, k, seed): (FiniteGroup, ElemSet, usize, _, _, _) = match w {
        WitnessCommand::Dihedral { n } => {
            let w = dihedral_witness(*n).map_err(|e| e.to_string())?;
            let fam = w.plan.family.describe().to_string();
            (w.group, w.set, w.excluded, Some(fam), Some(w.plan.k), None)
        }
        WitnessCommand::D44 => {
            let w = d44_witness();
            (w.group, w.set, w.excluded, None, None, None)
        }
        WitnessCommand::Extraspecial { spec } => {
            let built = parse_and_build(spec)?;
            let frame = built.frame().ok_or_else(|| no_frame(spec))?;
            let w = extraspecial_witness(frame).map_err(|e| e.to_string())?;
            (built.into_group(), w.set, w.excluded, None, None, None)
        }
        WitnessCommand::Esc4 { spec } => {
            let built = parse_and_build(spec)?;
            let frame = built.frame().ok_or_else(|| no_frame(spec))?;
            let w = central_c4_witness(frame, cli.seed).map_err(|e| e.to_string())?;
            (built.into_group(), w.set, w.excluded, None, None, Some(cli.seed))
        }
    };

    let report = verify_witness(&g, &set).map_err(|e| e.to_string())?;
    emit(
        cli.pretty,
        &WitnessJson {
            schema: SCHEMA,
            group_spec: g.spec_string().to_string(),
            set: labels_of(&g, &set),
            checks: checks_json(&report),
            excluded_element: g.label(excluded).to_string(),
            family,
            k,
            seed,
        },
    );
    Ok(EXIT_DECIDED)
}

fn finish_verdict(cli: &Cli, g: &FiniteGroup, v: Verdict) -> Result<i32, String> {
    let record = VerdictRecord {
        schema: SCHEMA,
        spec_string: g.spec_string().to_string(),
        order: g.order(),
        filled: match v.filled {
            FilledStatus::Filled => FilledField::Decided(true),
            FilledStatus::NotFilled => FilledField::Decided(false),
            FilledStatus::Undecided => FilledField::Undecided,
        },
        rule_chain: v.rule_chain,
        witness: v.witness.map(|w| labels_of(g, &w)),
        seed: cli.seed,
        elapsed_ms: v.stats.elapsed.as_millis(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: chrono::Utc::now().to_rfc3339(),
    };
    emit(cli.pretty, &record);
    append_ledger(cli, &record)?;
    Ok(match v.filled {
        FilledStatus::Undecided => EXIT_UNDECIDED,
        _ => EXIT_DECIDED,
    })
}

fn append_ledger(cli: &Cli, record: &VerdictRecord) -> Result<(), String> {
    let path = match &cli.ledger {
        Some(p) => p.clone(),
        None => match std::env::var_os("FILLED_GROUPS_LEDGER") {
            Some(p) => PathBuf::from(p),
            None => return Ok(()),
        },
    };
    let line = serde_json::to_string(record).expect("record serializes");
    let mut contents = line;
    contents.push('\n');
    use std::io::Write;
    std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .and_then(|mut f| f.write_all(contents.as_bytes()))
        .map_err(|e| format!("ledger {}: {e}", path.display()))
}

fn parse_and_build(spec: &str) -> Result<Built, String> {
    let parsed: GroupSpec = spec.parse().map_err(|e| format!("{e}"))?;
    build_group(&parsed).map_err(|e| e.to_string())
}

/// A set literal is a JSON array whose items are element labels or indices.
fn parse_set_literal(g: &FiniteGroup, text: &str) -> Result<ElemSet, String> {
    let items: Vec<serde_json::Value> =
        serde_json::from_str(text).map_err(|e| format!("set literal: {e}"))?;
    let mut s = g.empty_set();
    for item in items {
        let e = match &item {
            serde_json::Value::String(label) => g
                .index_of_label(label)
                .ok_or_else(|| format!("set literal: no element labeled {label:?}"))?,
            serde_json::Value::Number(n) => {
                let i = n
                    .as_u64()
                    .ok_or_else(|| format!("set literal: bad index {n}"))?;
                if i as usize >= g.order() {
                    return Err(format!("set literal: index {i} out of range"));
                }
                i as usize
            }
            other => return Err(format!("set literal: unsupported item {other}")),
        };
        s.insert(e);
    }
    Ok(s)
}

fn labels_of(g: &FiniteGroup, s: &ElemSet) -> Vec<String> {
    s.iter().map(|e| g.label(e).to_string()).collect()
}

fn checks_json(report: &WitnessReport) -> ChecksJson {
    ChecksJson {
        product_free: report.product_free,
        locally_maximal: report.locally_maximal,
        fills: report.fills,
    }
}

fn search_config(cli: &Cli) -> SearchConfig {
    let mut cfg = SearchConfig { rng_seed: cli.seed, ..SearchConfig::default() };
    if let Some(r) = cli.max_restarts {
        cfg.max_restarts = r;
    }
    if let Some(s) = cli.time_budget {
        cfg.time_budget = Duration::from_secs(s);
    }
    if let Some(w) = cli.parallel {
        cfg.parallel_width = w.max(1);
    }
    cfg.orbit_reduction = !cli.no_orbit_reduction;
    cfg.exhaustive_opt_in = cli.exhaustive_opt_in;
    cfg
}
