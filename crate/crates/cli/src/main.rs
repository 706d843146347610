//! `distinguo`: distinguishing numbers of finite group actions.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification negative,
//! 3 budget exceeded, 4 requested structure not found.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use distinguo::catalog;
use distinguo::coloring::{self, Coloring};
use distinguo::constructive::{self, NormalSeries};
use distinguo::enumeration;
use distinguo::error::Error;
use distinguo::formats::{ActionFile, ColoringFile, SeriesFile};
use distinguo::gl::{self, FiniteField, GlVerification};
use distinguo::search::{self, SearchBudget};
use distinguo::GroupAction;

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
const BUDGET_ENV: &str = "DISTINGUO_BUDGET";

const EXIT_USAGE: u8 = 1;
const EXIT_NOT_DISTINGUISHING: u8 = 2;
const EXIT_EXCEEDED: u8 = 3;
const EXIT_NOT_FOUND: u8 = 4;

#[derive(Parser)]
#[command(name = "distinguo", version, about = "Distinguishing numbers of finite group actions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where the action comes from: a JSON file or a catalog spec.
#[derive(Args)]
struct ActionSource {
    /// JSON action file: {"degree": m, "generators": [[...], "(1 2)"]}
    #[arg(long, value_name = "FILE", conflicts_with = "catalog")]
    action: Option<PathBuf>,
    /// Catalog spec such as "dihedral:4" or "direct_product(cyclic:2,cyclic:3)"
    #[arg(long, value_name = "SPEC")]
    catalog: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the exact distinguishing number of a faithful action
    Compute {
        #[command(flatten)]
        source: ActionSource,
        /// Cap on the number of colors tried
        #[arg(long)]
        max_colors: Option<usize>,
        /// Cap on the number of points
        #[arg(long)]
        max_points: Option<usize>,
        /// Cap on the group order
        #[arg(long)]
        max_group: Option<usize>,
        /// Cross-check the result against the independent enumeration oracle
        #[arg(long)]
        oracle: bool,
        /// Replace a nonfaithful action by its faithful quotient first
        #[arg(long)]
        quotient: bool,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
    /// Check whether a coloring is distinguishing for an action
    Verify {
        #[command(flatten)]
        source: ActionSource,
        /// JSON coloring file: {"num_colors": r, "colors": [...]}
        #[arg(long, value_name = "FILE")]
        coloring: PathBuf,
    },
    /// Build a distinguishing coloring from a structural certificate
    Construct {
        #[command(subcommand)]
        mode: ConstructMode,
    },
    /// Distinguishing numbers of all transitive subgroups of S_n (2 ≤ n ≤ 6)
    Tn {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Catalog inspection
    Catalog {
        #[command(subcommand)]
        mode: CatalogMode,
    },
}

#[derive(Args)]
struct ConstructCommon {
    #[command(flatten)]
    source: ActionSource,
    /// Write the coloring JSON to this file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Emit the full report as JSON
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum ConstructMode {
    /// Coloring from the upper central series (nilpotent groups; ≤ class+1 colors)
    Nilpotent(ConstructCommon),
    /// Coloring from a cyclic-normal/cyclic-quotient decomposition (≤ 3 colors)
    Metacyclic(ConstructCommon),
    /// Coloring from a normal series supplied as a JSON file
    Series {
        #[command(flatten)]
        common: ConstructCommon,
        /// JSON series file: {"terms": [[...generators]], "kinds": ["cyclic", ...]}
        #[arg(long, value_name = "FILE")]
        series: PathBuf,
    },
    /// Orbit-block coloring within ⌈M/(p-1)⌉ colors, p the least prime divisor
    Prime(ConstructCommon),
    /// The 2-coloring of F_q^n distinguishing GL_n(F_q), streamed verification
    Gln {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Verification threads (deterministic result regardless)
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

#[derive(Subcommand)]
enum CatalogMode {
    /// List all catalog entries
    List,
}

#[derive(Serialize)]
struct Report {
    value: Option<usize>,
    status: &'static str,
    witness: Option<ColoringFile>,
    stats: ReportStats,
    tool_version: &'static str,
}

#[derive(Serialize, Default)]
struct ReportStats {
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    colorings_tested: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
}

#[derive(Serialize)]
struct ConstructReport {
    colors_used: usize,
    certified_bound: usize,
    bound_kind: &'static str,
    verified: bool,
    coloring: ColoringFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    series: Option<SeriesFile>,
    tool_version: &'static str,
}

#[derive(Serialize)]
struct TnReport {
    n: usize,
    values: Vec<TnValue>,
    tool_version: &'static str,
}

#[derive(Serialize)]
struct TnValue {
    value: usize,
    witnesses: Vec<TnWitness>,
}

#[derive(Serialize)]
struct TnWitness {
    order: usize,
    generators: Vec<String>,
}

fn main() -> ExitCode {
    // Die quietly on closed pipes (e.g. `distinguo ... | head`) like other
    // line-oriented tools instead of panicking on EPIPE.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(EXIT_USAGE)
                }
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_exceeded() { EXIT_EXCEEDED } else { EXIT_USAGE })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Compute {
            source,
            max_colors,
            max_points,
            max_group,
            oracle,
            quotient,
            json,
        } => cmd_compute(source, max_colors, max_points, max_group, oracle, quotient, json),
        Command::Verify { source, coloring } => cmd_verify(source, &coloring),
        Command::Construct { mode } => cmd_construct(mode),
        Command::Tn { n, json } => cmd_tn(n, json),
        Command::Catalog { mode: CatalogMode::List } => {
            for entry in catalog::entries() {
                println!("{:<24} {:<32} {}", entry.name, entry.signature, entry.note);
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn load_action(source: &ActionSource) -> Result<GroupAction, Error> {
    match (&source.action, &source.catalog) {
        (Some(path), None) => {
            let file: ActionFile = read_json(path)?;
            Ok(GroupAction::natural(file.to_group()?))
        }
        (None, Some(spec)) => catalog::build(spec),
        _ => Err(Error::InvalidInput(
            "exactly one of --action FILE or --catalog SPEC is required".into(),
        )),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("cannot parse {}: {e}", path.display())))
}

/// Budget resolution: defaults, then DISTINGUO_BUDGET overrides, then flags.
fn resolve_budget(
    max_colors: Option<usize>,
    max_points: Option<usize>,
    max_group: Option<usize>,
) -> Result<SearchBudget, Error> {
    let mut budget = SearchBudget::default();
    if let Ok(spec) = std::env::var(BUDGET_ENV) {
        for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part.split_once('=').ok_or_else(|| {
                Error::InvalidInput(format!(
                    "{BUDGET_ENV} entries look like key=value, got {part:?}"
                ))
            })?;
            let value: usize = value.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("bad value in {BUDGET_ENV}: {part:?}"))
            })?;
            match key.trim() {
                "max_colors" => budget.max_colors = value,
                "max_points" => budget.max_points = value,
                "max_group" => budget.max_group = value,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "unknown {BUDGET_ENV} key {other:?}"
                    )))
                }
            }
        }
    }
    if let Some(v) = max_colors {
        budget.max_colors = v;
    }
    if let Some(v) = max_points {
        budget.max_points = v;
    }
    if let Some(v) = max_group {
        budget.max_group = v;
    }
    Ok(budget)
}

fn emit_report(report: &Report, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(report).expect("serializable"));
    } else {
        match report.value {
            Some(v) => println!("distinguishing number: {v}"),
            None => println!("status: {}", report.status),
        }
        if let Some(witness) = &report.witness {
            let colors: Vec<String> = witness.colors.iter().map(|c| c.to_string()).collect();
            println!("witness ({} colors): {}", witness.num_colors, colors.join(" "));
        }
        if let (Some(nodes), Some(tested)) = (report.stats.nodes, report.stats.colorings_tested) {
            println!("search nodes: {nodes}, colorings tested: {tested}");
        }
        if let Some(oracle) = report.stats.oracle_value {
            println!("oracle value: {oracle} (agrees)");
        }
        if let Some(message) = &report.stats.message {
            println!("note: {message}");
        }
    }
}

fn cmd_compute(
    source: ActionSource,
    max_colors: Option<usize>,
    max_points: Option<usize>,
    max_group: Option<usize>,
    oracle: bool,
    quotient: bool,
    json: bool,
) -> Result<ExitCode, Error> {
    let budget = resolve_budget(max_colors, max_points, max_group)?;
    let mut action = load_action(&source)?;
    if quotient {
        action = action.faithful_quotient();
    }
    if !action.is_faithful() {
        return Err(Error::InvalidInput(format!(
            "the action is not faithful (kernel order {}); rerun with --quotient",
            action.kernel().order()
        )));
    }
    let result = match search::distinguishing_number(&action, &budget) {
        Ok(result) => result,
        Err(Error::Exceeded(message)) => {
            let report = Report {
                value: None,
                status: "exceeded",
                witness: None,
                stats: ReportStats {
                    message: Some(message.clone()),
                    ..ReportStats::default()
                },
                tool_version: TOOL_VERSION,
            };
            emit_report(&report, json);
            eprintln!("budget exceeded: {message}");
            return Ok(ExitCode::from(EXIT_EXCEEDED));
        }
        Err(e) => return Err(e),
    };
    if !coloring::is_distinguishing(&action, &result.witness)? {
        return Err(Error::Internal("witness failed re-verification".into()));
    }
    let mut stats = ReportStats {
        nodes: Some(result.stats.nodes),
        colorings_tested: Some(result.stats.colorings_tested),
        ..ReportStats::default()
    };
    if oracle {
        let oracle_value = search::oracle_distinguishing_number(&action, result.value)?;
        if oracle_value != Some(result.value) {
            let report = Report {
                value: None,
                status: "error",
                witness: None,
                stats: ReportStats {
                    message: Some(format!(
                        "oracle disagreement: search {} vs oracle {oracle_value:?}",
                        result.value
                    )),
                    ..ReportStats::default()
                },
                tool_version: TOOL_VERSION,
            };
            emit_report(&report, json);
            eprintln!("internal error: oracle disagreement");
            return Ok(ExitCode::from(EXIT_USAGE));
        }
        stats.oracle_value = Some(result.value);
    }
    let report = Report {
        value: Some(result.value),
        status: "exact",
        witness: Some(ColoringFile::from_coloring(&result.witness)),
        stats,
        tool_version: TOOL_VERSION,
    };
    emit_report(&report, json);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(source: ActionSource, coloring_path: &Path) -> Result<ExitCode, Error> {
    let action = load_action(&source)?;
    let file: ColoringFile = read_json(coloring_path)?;
    let coloring = file.to_coloring()?;
    let preservers = coloring::preserver_subgroup(&action, &coloring)?;
    println!("preserver subgroup order: {}", preservers.order());
    if preservers.is_trivial() && action.is_faithful() {
        println!("distinguishing: yes");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("distinguishing: no");
        if !preservers.is_trivial() {
            println!(
                "nonidentity preserver: {}",
                preservers.elements()[1].to_cycle_string()
            );
        } else {
            println!("action is not faithful");
        }
        Ok(ExitCode::from(EXIT_NOT_DISTINGUISHING))
    }
}

struct Constructed {
    coloring: Coloring,
    bound: usize,
    bound_kind: &'static str,
    series: Option<NormalSeries>,
}

fn cmd_construct(mode: ConstructMode) -> Result<ExitCode, Error> {
    match mode {
        ConstructMode::Nilpotent(common) => {
            let action = load_action(&common.source)?;
            let Some(series) = constructive::upper_central_series(action.group()) else {
                eprintln!("structure not found: the group is not nilpotent");
                return Ok(ExitCode::from(EXIT_NOT_FOUND));
            };
            let coloring = constructive::series_coloring(&action, &series)?;
            let bound = series.length() + 1;
            finish_construct(
                &common,
                Constructed { coloring, bound, bound_kind: "nilpotent", series: Some(series) },
            )
        }
        ConstructMode::Metacyclic(common) => {
            let action = load_action(&common.source)?;
            let Some(series) = constructive::metacyclic_series(action.group())? else {
                eprintln!("structure not found: the group is not metacyclic");
                return Ok(ExitCode::from(EXIT_NOT_FOUND));
            };
            let coloring = constructive::series_coloring(&action, &series)?;
            finish_construct(
                &common,
                Constructed { coloring, bound: 3, bound_kind: "metacyclic", series: Some(series) },
            )
        }
        ConstructMode::Series { common, series } => {
            let action = load_action(&common.source)?;
            let file: SeriesFile = read_json(&series)?;
            let series = file.to_series(action.group().degree())?;
            let coloring = constructive::series_coloring(&action, &series)?;
            let bound = series.length() + 1;
            finish_construct(
                &common,
                Constructed { coloring, bound, bound_kind: "series", series: Some(series) },
            )
        }
        ConstructMode::Prime(common) => {
            let action = load_action(&common.source)?;
            let (coloring, bound) = constructive::prime_bound_coloring(&action)?;
            finish_construct(
                &common,
                Constructed { coloring, bound, bound_kind: "prime", series: None },
            )
        }
        ConstructMode::Gln { n, q, out, json, threads } => {
            let (p, k) = gl::prime_power_decompose(q)
                .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
            let field = FiniteField::new(p, k)?;
            let coloring = gl::gl_distinguishing_coloring(n, &field)?;
            match gl::verify_gl_coloring(n, &field, &coloring, threads)? {
                GlVerification::Distinguishing => {}
                GlVerification::Preserver(m) => {
                    return Err(Error::Internal(format!(
                        "construction admitted a preserver {m}"
                    )))
                }
            }
            let common = ConstructCommon {
                source: ActionSource { action: None, catalog: None },
                out,
                json,
            };
            finish_construct(
                &common,
                Constructed { coloring, bound: 2, bound_kind: "gl", series: None },
            )
        }
    }
}

fn finish_construct(common: &ConstructCommon, built: Constructed) -> Result<ExitCode, Error> {
    let coloring_file = ColoringFile::from_coloring(&built.coloring);
    if let Some(path) = &common.out {
        let text = serde_json::to_string_pretty(&coloring_file).expect("serializable");
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))?;
    }
    let report = ConstructReport {
        colors_used: built.coloring.num_colors(),
        certified_bound: built.bound,
        bound_kind: built.bound_kind,
        verified: true,
        coloring: coloring_file,
        series: built.series.as_ref().map(SeriesFile::from_series),
        tool_version: TOOL_VERSION,
    };
    if common.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        println!("colors used: {}", report.colors_used);
        println!("certified bound: {} ({})", report.certified_bound, report.bound_kind);
        println!("verified distinguishing: yes");
        match &common.out {
            Some(path) => println!("coloring written to {}", path.display()),
            None => println!(
                "coloring: {}",
                serde_json::to_string(&report.coloring).expect("serializable")
            ),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_tn(n: usize, json: bool) -> Result<ExitCode, Error> {
    let budget = resolve_budget(None, None, None)?;
    let entries = match enumeration::t_n(n, &budget) {
        Ok(entries) => entries,
        Err(Error::Exceeded(message)) => {
            eprintln!("budget exceeded: {message}");
            return Ok(ExitCode::from(EXIT_EXCEEDED));
        }
        Err(e) => return Err(e),
    };
    let report = TnReport {
        n,
        values: entries
            .iter()
            .map(|entry| TnValue {
                value: entry.value,
                witnesses: entry
                    .witnesses
                    .iter()
                    .map(|g| TnWitness {
                        order: g.order(),
                        generators: g
                            .generators()
                            .iter()
                            .map(|p| p.to_cycle_string())
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
        tool_version: TOOL_VERSION,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        let values: Vec<String> = report.values.iter().map(|v| v.value.to_string()).collect();
        println!("T_{n} = {{{}}}", values.join(", "));
        for value in &report.values {
            for witness in &value.witnesses {
                println!(
                    "  {} <- order {} group <{}>",
                    value.value,
                    witness.order,
                    witness.generators.join(", ")
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
