//! `rdlab`: solve, check, recognize, generate, enumerate and verify from the
//! command line.
//!
//! Exit codes: 0 success, 1 a check or claim failed, 2 unreadable input or bad
//! arguments, 3 input is not a tree where one is required, 4 a size cap was
//! exceeded. Every flag can also be set through an `RDLAB_*` environment
//! variable.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rdlab::certificates::{is_dominating, is_italian, is_packing, is_rds, is_ridf, Check};
use rdlab::enumerate::all_trees;
use rdlab::families::{recognize_f, recognize_h, replay, sample_trace, HVerdict};
use rdlab::io::{parse_edge_list, parse_graph6, to_graph6, write_edge_list_line};
use rdlab::oracle::{InvariantReport, Oracle};
use rdlab::treedp::{gamma_r_tree, gamma_ri_tree};
use rdlab::verify::{
    verify_bound_sandwich, verify_lemmas_on_traces, verify_oracle_dp, verify_theorem_f,
    verify_theorem_h, Claim, SweepConfig, SweepReport, TraceConfig,
};
use rdlab::{Assignment, Family, Graph, Tree, VertexSet};

#[derive(Parser)]
#[command(name = "rdlab", version, about = "Restrained and restrained Italian domination on trees")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text, env = "RDLAB_OUTPUT")]
    output: Output,
    /// Worker threads for sweeps (0 = one per CPU).
    #[arg(long, global = true, default_value_t = 0, env = "RDLAB_WORKERS")]
    workers: usize,
    /// Seed for every randomized choice.
    #[arg(long, global = true, env = "RDLAB_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute gamma_r and gamma_rI with a witness for each.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Method::Dp, env = "RDLAB_METHOD")]
        method: Method,
    },
    /// Check a vertex set or a labelling against a domination condition.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        property: Property,
        /// Comma- or space-separated vertex ids (set properties).
        #[arg(long, conflicts_with = "labels")]
        set: Option<String>,
        /// Comma- or space-separated labels from {0,1,2} (labelling properties).
        #[arg(long)]
        labels: Option<String>,
    },
    /// Decide membership in H and/or F and print a construction.
    Recognize {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = FamilyArg::Both, env = "RDLAB_FAMILY")]
        family: FamilyArg,
    },
    /// Sample random constructions.
    Generate {
        #[arg(long, value_enum, env = "RDLAB_FAMILY")]
        family: FamilyArg,
        /// Maximum order of a generated tree.
        #[arg(long, env = "RDLAB_BUDGET")]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Print the construction or the tree it builds.
        #[arg(long, value_enum, default_value_t = Emit::Trace)]
        emit: Emit,
        #[arg(long, value_enum, default_value_t = Format::Edgelist, env = "RDLAB_FORMAT")]
        format: Format,
    },
    /// List every tree of the given order, one per line.
    Enumerate {
        #[arg(long, short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Graph6, env = "RDLAB_FORMAT")]
        format: Format,
        /// Print only the number of trees.
        #[arg(long)]
        count_only: bool,
    },
    /// Run claim sweeps and write reports.
    Verify {
        #[arg(long, value_enum, ignore_case = true, default_value_t = ClaimArg::All, env = "RDLAB_CLAIM")]
        claim: ClaimArg,
        #[arg(long, default_value_t = 1, env = "RDLAB_N_MIN")]
        n_min: usize,
        #[arg(long, default_value_t = 12, env = "RDLAB_N_MAX")]
        n_max: usize,
        /// Largest order for the brute-force gamma_rI comparison.
        #[arg(long, default_value_t = 11)]
        ri_n_max: usize,
        /// Random traces per family for the lemma claims.
        #[arg(long, default_value_t = 1000, env = "RDLAB_COUNT")]
        count: usize,
        /// Order cap of random traces.
        #[arg(long, default_value_t = 16, env = "RDLAB_BUDGET")]
        budget: usize,
        /// Directory for `<claim>.json` reports.
        #[arg(long, env = "RDLAB_REPORT_DIR")]
        report_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Graph file (`-` for stdin).
    #[arg(long, short, env = "RDLAB_INPUT", conflicts_with = "inline")]
    input: Option<PathBuf>,
    /// Graph given directly on the command line.
    #[arg(long)]
    inline: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Edgelist, env = "RDLAB_FORMAT")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Dp,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Dominating,
    Rds,
    Packing,
    Italian,
    Ridf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "F", alias = "f")]
    F,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Trace,
    Tree,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimArg {
    #[value(name = "oracle-dp")]
    OracleDp,
    Sandwich,
    #[value(name = "theorem-H")]
    TheoremH,
    #[value(name = "theorem-F")]
    TheoremF,
    #[value(name = "lemmas-H")]
    LemmasH,
    #[value(name = "lemmas-F")]
    LemmasF,
    All,
}

impl ClaimArg {
    fn claims(self) -> Vec<Claim> {
        match self {
            ClaimArg::OracleDp => vec![Claim::OracleDp],
            ClaimArg::Sandwich => vec![Claim::Sandwich],
            ClaimArg::TheoremH => vec![Claim::TheoremH],
            ClaimArg::TheoremF => vec![Claim::TheoremF],
            ClaimArg::LemmasH => vec![Claim::LemmasH],
            ClaimArg::LemmasF => vec![Claim::LemmasF],
            ClaimArg::All => Claim::ALL.to_vec(),
        }
    }
}

/// Maps library errors onto the documented exit codes.
fn exit_code(err: &anyhow::Error) -> u8 {
    use rdlab::Error as E;
    if let Some(e) = err.downcast_ref::<E>() {
        return match e {
            E::NotATree(_) => 3,
            E::CapExceeded { .. } => 4,
            E::Parse(_)
            | E::EmptyGraph
            | E::SelfLoop(..)
            | E::DuplicateEdge(..)
            | E::VertexOutOfRange { .. }
            | E::InvalidLabel { .. }
            | E::BudgetTooSmall { .. } => 2,
            _ => 1,
        };
    }
    if err.downcast_ref::<std::io::Error>().is_some() || err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    1
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Solve { input, method } => solve(cli, input, *method),
        Command::Check {
            input,
            property,
            set,
            labels,
        } => check(cli, input, *property, set.as_deref(), labels.as_deref()),
        Command::Recognize { input, family } => recognize(cli, input, *family),
        Command::Generate {
            family,
            budget,
            count,
            emit,
            format,
        } => generate(cli, *family, *budget, *count, *emit, *format),
        Command::Enumerate { n, format, count_only } => enumerate(cli, *n, *format, *count_only),
        Command::Verify {
            claim,
            n_min,
            n_max,
            ri_n_max,
            count,
            budget,
            report_dir,
        } => verify(cli, *claim, *n_min, *n_max, *ri_n_max, *count, *budget, report_dir.as_deref()),
    }
}

fn read_graph(input: &InputArgs) -> anyhow::Result<Graph> {
    let text = match (&input.input, &input.inline) {
        (_, Some(text)) => text.clone(),
        (Some(path), None) if path.as_os_str() == "-" => {
            let mut text = String::new();
            std::io::stdin().read_to_string(&mut text)?;
            text
        }
        (Some(path), None) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?,
        (None, None) => return Err(usage("give a graph with --input or --inline")),
    };
    let graph = match input.format {
        Format::Edgelist => parse_edge_list(&text)?,
        Format::Graph6 => parse_graph6(text.trim())?,
    };
    Ok(graph)
}

fn read_tree(input: &InputArgs) -> anyhow::Result<Tree> {
    Ok(Tree::new(read_graph(input)?)?)
}

fn numbers(text: &str) -> anyhow::Result<Vec<usize>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| anyhow::Error::new(rdlab::Error::Parse(format!("bad number {t:?}"))))
        })
        .collect()
}

fn solve(cli: &Cli, input: &InputArgs, method: Method) -> anyhow::Result<ExitCode> {
    let graph = read_graph(input)?;
    let n = graph.order();
    let (r, ri) = match method {
        Method::Dp => {
            let tree = Tree::new(graph)?;
            (gamma_r_tree(&tree).report(n), gamma_ri_tree(&tree).report(n))
        }
        Method::Brute => {
            let oracle = Oracle::default();
            (
                InvariantReport::from_sets(n, "gamma_r", oracle.gamma_r(&graph)?).with_method("brute"),
                InvariantReport::from_assignments(n, oracle.gamma_ri(&graph)?).with_method("brute"),
            )
        }
    };
    match cli.output {
        Output::Json => println!("{}", json!({ "gamma_r": r, "gamma_ri": ri })),
        Output::Csv => {
            println!("n,method,gamma_r,gamma_ri");
            println!("{n},{},{},{}", r.method.unwrap_or(""), r.value, ri.value);
        }
        Output::Text => {
            for report in [&r, &ri] {
                let witness = serde_json::to_value(&report.witnesses)?;
                let first = witness.get(0).cloned().unwrap_or_default();
                println!("{} = {}  witness {}", report.invariant, report.value, first);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check(
    cli: &Cli,
    input: &InputArgs,
    property: Property,
    set: Option<&str>,
    labels: Option<&str>,
) -> anyhow::Result<ExitCode> {
    let graph = read_graph(input)?;
    let as_set = || -> anyhow::Result<VertexSet> {
        let text = set.ok_or_else(|| usage("this property takes --set"))?;
        Ok(VertexSet::from_members(graph.order(), numbers(text)?))
    };
    let as_labels = || -> anyhow::Result<Assignment> {
        let text = labels.ok_or_else(|| usage("this property takes --labels"))?;
        let labels = numbers(text)?
            .into_iter()
            .map(|l| u8::try_from(l).unwrap_or(u8::MAX))
            .collect();
        Ok(Assignment::new(labels)?)
    };
    let verdict: Check = match property {
        Property::Dominating => is_dominating(&graph, &as_set()?),
        Property::Rds => is_rds(&graph, &as_set()?),
        Property::Packing => is_packing(&graph, &as_set()?),
        Property::Italian => is_italian(&graph, &as_labels()?),
        Property::Ridf => is_ridf(&graph, &as_labels()?),
    };
    let name = property.to_possible_value().unwrap().get_name().to_string();
    match cli.output {
        Output::Json => println!(
            "{}",
            json!({ "property": name, "valid": verdict.is_ok(), "violation": verdict.err() })
        ),
        Output::Csv => {
            println!("property,valid,violation");
            println!(
                "{name},{},{}",
                verdict.is_ok(),
                verdict.err().map(|v| v.to_string()).unwrap_or_default()
            );
        }
        Output::Text => match verdict {
            Ok(()) => println!("{name}: valid"),
            Err(v) => println!("{name}: invalid, {v}"),
        },
    }
    Ok(if verdict.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn recognize(cli: &Cli, input: &InputArgs, family: FamilyArg) -> anyhow::Result<ExitCode> {
    let tree = read_tree(input)?;
    let mut rows = Vec::new();
    if family != FamilyArg::F {
        rows.push(match recognize_h(&tree) {
            HVerdict::Member(rec) => ("H", "member".to_string(), Some(rec.trace)),
            HVerdict::StarException { t } => ("H", format!("star-exception K_1,{t}"), None),
            HVerdict::NonMember => ("H", "none".to_string(), None),
        });
    }
    if family != FamilyArg::H {
        rows.push(match recognize_f(&tree) {
            Some(rec) => ("F", "member".to_string(), Some(rec.trace)),
            None => ("F", "none".to_string(), None),
        });
    }
    for (family, verdict, trace) in rows {
        match cli.output {
            Output::Json => {
                let mut value = json!({ "family": family, "verdict": verdict });
                if let Some(trace) = &trace {
                    value["trace"] = serde_json::to_value(trace)?;
                }
                println!("{value}");
            }
            Output::Csv => println!(
                "{family},{verdict},{}",
                trace.map(|t| t.steps.len().to_string()).unwrap_or_default()
            ),
            Output::Text => {
                println!("{family}: {verdict}");
                if let Some(trace) = trace {
                    println!("{}", trace.to_json_line());
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(
    cli: &Cli,
    family: FamilyArg,
    budget: usize,
    count: usize,
    emit: Emit,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let seed = cli.seed.ok_or_else(|| usage("generate needs --seed"))?;
    let family = match family {
        FamilyArg::H => Family::H,
        FamilyArg::F => Family::F,
        FamilyArg::Both => return Err(usage("generate needs --family H or --family F")),
    };
    for i in 0..count {
        let trace = sample_trace(family, budget, seed.wrapping_add(i as u64))?;
        match emit {
            Emit::Trace => println!("{}", trace.to_json_line()),
            Emit::Tree => {
                let (tree, _) = replay(&trace)?;
                println!("{}", format_tree(&tree, format));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn format_tree(tree: &Tree, format: Format) -> String {
    match format {
        Format::Edgelist => write_edge_list_line(tree),
        Format::Graph6 => to_graph6(tree),
    }
}

fn enumerate(cli: &Cli, n: usize, format: Format, count_only: bool) -> anyhow::Result<ExitCode> {
    let trees = all_trees(n)?;
    if count_only {
        match cli.output {
            Output::Json => println!("{}", json!({ "n": n, "count": trees.len() })),
            Output::Csv => println!("n,count\n{n},{}", trees.len()),
            Output::Text => println!("{}", trees.len()),
        }
        return Ok(ExitCode::SUCCESS);
    }
    for tree in trees {
        println!("{}", format_tree(&tree, format));
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    cli: &Cli,
    claim: ClaimArg,
    n_min: usize,
    n_max: usize,
    ri_n_max: usize,
    count: usize,
    budget: usize,
    report_dir: Option<&std::path::Path>,
) -> anyhow::Result<ExitCode> {
    let claims = claim.claims();
    let needs_seed = claims.iter().any(|c| matches!(c, Claim::LemmasH | Claim::LemmasF));
    let seed = match cli.seed {
        Some(seed) => seed,
        None if needs_seed => return Err(usage("the lemma claims need --seed")),
        None => 0,
    };
    let sweep = SweepConfig::new(n_min, n_max).workers(cli.workers).seed(seed);
    let traces = |family| TraceConfig {
        workers: cli.workers,
        ..TraceConfig::new(family, count, budget, seed)
    };
    let mut reports: Vec<SweepReport> = Vec::new();
    for claim in claims {
        reports.push(match claim {
            Claim::OracleDp => verify_oracle_dp(&sweep, ri_n_max)?,
            Claim::Sandwich => verify_bound_sandwich(&sweep)?,
            Claim::TheoremH => verify_theorem_h(&sweep)?,
            Claim::TheoremF => verify_theorem_f(&sweep)?,
            Claim::LemmasH => verify_lemmas_on_traces(&traces(Family::H))?,
            Claim::LemmasF => verify_lemmas_on_traces(&traces(Family::F))?,
        });
    }
    if cli.output == Output::Csv {
        println!("claim,pass,n_min,n_max,trees_checked,witnesses_checked,failures");
    }
    for report in &reports {
        match cli.output {
            Output::Json => print!("{}", report.to_json()),
            Output::Csv => println!(
                "{},{},{},{},{},{},{}",
                report.claim,
                report.pass,
                report.n_min,
                report.n_max,
                report.trees_checked,
                report.witnesses_checked,
                report.failures.len()
            ),
            Output::Text => {
                println!(
                    "{}: {} ({} trees, n {}..={}, {} failures)",
                    report.claim,
                    if report.pass { "pass" } else { "FAIL" },
                    report.trees_checked,
                    report.n_min,
                    report.n_max,
                    report.failures.len()
                );
                for f in report.failures.iter().take(3) {
                    println!("  [{}] expected {}, got {}", f.edge_list, f.expected, f.got);
                }
            }
        }
        if let Some(dir) = report_dir {
            report.write_to(dir).with_context(|| format!("writing report to {}", dir.display()))?;
        }
    }
    if reports.iter().all(|r| r.pass) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
