//! Command-line front end: every subcommand parses input, calls one library
//! entry point, and prints the result (JSON except for `gen`, `fixtures`,
//! and `dot`). Exit code 0 on success, 1 when an `--expect` check fails or
//! a hunt finds failures, 2 on any usage or input error.

use std::collections::BTreeMap;
use std::fs;
use std::io::Read;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use graceful_lab::families::{filter_family, generate_trees, FamilyFilter, Parity};
use graceful_lab::fixtures::Fixture;
use graceful_lab::labeling::{bipartite_critical, edge_weights, is_alpha, is_graceful, Labeling};
use graceful_lab::probes::{hunt, run_probe, ProbeId};
use graceful_lab::search::{search_with_threads, ConstraintSet, Mode, Status};
use graceful_lab::tree::Tree;
use graceful_lab::{export_dot, ProbeReport, SearchCertificate};
use serde_json::json;

/// Tree arguments name a file or `-` for stdin; stdin is the default, so
/// subcommands compose as pipes (`fixtures T | search --zero-on 3`).
const TREE_ARG_HELP: &str = "Tree edge-list file, or - for stdin";

#[derive(Parser)]
#[command(
    name = "graceful-lab",
    version,
    about = "Search and classify graceful and alpha labelings of small trees"
)]
struct Cli {
    /// Worker threads for searches and hunts (env GRACEFUL_LAB_THREADS,
    /// default 1). Results never depend on this.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one labeling: edge weights, gracefulness, separation, alpha.
    Verify {
        #[arg(help = TREE_ARG_HELP)]
        tree: String,
        /// Labeling as a JSON array, e.g. '[1,3,2,5,0,4]'.
        labeling: String,
    },
    /// Exhaustively search for labelings under constraints.
    Search {
        #[arg(help = TREE_ARG_HELP, default_value = "-")]
        tree: String,
        /// Restrict to alpha labelings.
        #[arg(long)]
        alpha: bool,
        /// Pin the label L on vertex V; repeatable.
        #[arg(long = "fix", value_name = "V=L", value_parser = parse_fix)]
        fix: Vec<(usize, usize)>,
        /// Vertex that must carry the critical value (implies --alpha).
        #[arg(long, value_name = "V")]
        critical_on: Option<usize>,
        /// Vertex that must carry the label n-1.
        #[arg(long, value_name = "V")]
        max_on: Option<usize>,
        /// Vertex that must carry the label 0.
        #[arg(long, value_name = "V")]
        zero_on: Option<usize>,
        #[arg(long, value_enum, default_value_t = ModeArg::First)]
        mode: ModeArg,
        /// Exit 1 unless the status matches.
        #[arg(long, value_enum)]
        expect: Option<ExpectArg>,
    },
    /// Run one probe on one tree.
    Probe {
        #[arg(value_enum)]
        probe: ProbeArg,
        #[arg(help = TREE_ARG_HELP, default_value = "-")]
        tree: String,
        /// Exit 1 unless the probe verdict matches (sat = passed).
        #[arg(long, value_enum)]
        expect: Option<ExpectArg>,
    },
    /// Run one probe over every tree class up to a vertex count; exits 1
    /// when any applicable tree fails.
    Hunt {
        #[arg(long, value_name = "N")]
        n_max: usize,
        #[arg(long, value_enum)]
        probe: ProbeArg,
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Print every tree class on N vertices, one edge list per line.
    Gen {
        #[arg(long, value_name = "N")]
        n: usize,
        #[command(flatten)]
        filter: FilterArgs,
    },
    /// Print a built-in tree as an edge list.
    Fixtures {
        #[arg(value_enum)]
        fixture: FixtureArg,
    },
    /// Render a tree as Graphviz DOT, annotated when a labeling is given.
    Dot {
        #[arg(help = TREE_ARG_HELP, default_value = "-")]
        tree: String,
        /// Labeling as a JSON array.
        #[arg(long, value_name = "JSON")]
        labeling: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    First,
    All,
    Count,
}

impl From<ModeArg> for Mode {
    fn from(mode: ModeArg) -> Mode {
        match mode {
            ModeArg::First => Mode::First,
            ModeArg::All => Mode::All,
            ModeArg::Count => Mode::Count,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeArg {
    Q1,
    Q2,
    Q3,
    Zero,
}

impl From<ProbeArg> for ProbeId {
    fn from(probe: ProbeArg) -> ProbeId {
        match probe {
            ProbeArg::Q1 => ProbeId::Q1,
            ProbeArg::Q2 => ProbeId::Q2,
            ProbeArg::Q3 => ProbeId::Q3,
            ProbeArg::Zero => ProbeId::Zero,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExpectArg {
    Sat,
    Unsat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FixtureArg {
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "S", alias = "s")]
    S,
    #[value(name = "P6", alias = "p6")]
    P6,
}

#[derive(Args)]
struct FilterArgs {
    /// Keep trees with at least this diameter.
    #[arg(long, value_name = "D")]
    diameter_min: Option<usize>,
    /// Keep trees with at most this diameter.
    #[arg(long, value_name = "D")]
    diameter_max: Option<usize>,
    /// Keep trees with k-distance at most this (0 paths, 1 caterpillars,
    /// 2 lobsters).
    #[arg(long = "max-k", value_name = "K")]
    max_k: Option<usize>,
    /// Require every center degree to have this parity.
    #[arg(long, value_enum, value_name = "PARITY")]
    center_parity: Option<ParityArg>,
    /// Require exactly this many centers.
    #[arg(long, value_name = "C")]
    centers: Option<usize>,
}

impl FilterArgs {
    fn to_filter(&self) -> FamilyFilter {
        FamilyFilter {
            diameter_min: self.diameter_min,
            diameter_max: self.diameter_max,
            max_k_distance: self.max_k,
            center_degree_parity: self.center_parity.map(|p| match p {
                ParityArg::Even => Parity::Even,
                ParityArg::Odd => Parity::Odd,
            }),
            center_count: self.centers,
        }
    }
}

fn parse_fix(s: &str) -> Result<(usize, usize), String> {
    let (v, l) = s
        .split_once('=')
        .ok_or_else(|| format!("expected V=L, got {s:?}"))?;
    let v = v.trim().parse().map_err(|_| format!("bad vertex in {s:?}"))?;
    let l = l.trim().parse().map_err(|_| format!("bad label in {s:?}"))?;
    Ok((v, l))
}

fn load_tree(arg: &str) -> Result<Tree> {
    let text = if arg == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .context("reading tree from stdin")?;
        buffer
    } else {
        fs::read_to_string(arg).with_context(|| format!("cannot read {arg}"))?
    };
    Ok(Tree::parse(&text)?)
}

fn parse_labeling(arg: &str) -> Result<Labeling> {
    let value: serde_json::Value =
        serde_json::from_str(arg).context("labeling must be JSON")?;
    let array = match value {
        serde_json::Value::Array(_) => value,
        serde_json::Value::Object(ref map) => map
            .get("labels")
            .cloned()
            .ok_or_else(|| anyhow!("labeling object needs a \"labels\" array"))?,
        _ => bail!("labeling must be a JSON array of labels"),
    };
    Ok(serde_json::from_value(array)?)
}

fn emit<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn expect_exit(matched: bool) -> ExitCode {
    if matched {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let threads = match cli.threads {
        Some(t) => t,
        None => match std::env::var("GRACEFUL_LAB_THREADS") {
            Ok(value) => value
                .parse()
                .context("GRACEFUL_LAB_THREADS must be a thread count")?,
            Err(_) => 1,
        },
    };

    match cli.command {
        Command::Verify { tree, labeling } => {
            let tree = load_tree(&tree)?;
            let labeling = parse_labeling(&labeling)?;
            let weights = edge_weights(&tree, &labeling)?;
            let separation = bipartite_critical(&tree, &labeling)?;
            let report = json!({
                "tree": tree.canonical_code(),
                "n": tree.n(),
                "labels": labeling,
                "edge_weights": weights,
                "graceful": is_graceful(&tree, &labeling)?,
                "is_bipartite_labeling": separation.is_bipartite_labeling,
                "critical": separation.critical,
                "low_side": separation.low_side,
                "alpha": is_alpha(&tree, &labeling)?,
            });
            emit(&report)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            tree,
            alpha,
            fix,
            critical_on,
            max_on,
            zero_on,
            mode,
            expect,
        } => {
            let tree = load_tree(&tree)?;
            let mut fixed = BTreeMap::new();
            for (v, l) in fix {
                if fixed.insert(v, l).is_some() {
                    bail!("--fix given twice for vertex {v}");
                }
            }
            let cs = ConstraintSet {
                fixed,
                require_alpha: alpha || critical_on.is_some(),
                critical_on,
                max_on,
                zero_on,
            };
            let certificate: SearchCertificate =
                search_with_threads(&tree, &cs, mode.into(), threads)?;
            emit(&certificate)?;
            Ok(match expect {
                None => ExitCode::SUCCESS,
                Some(ExpectArg::Sat) => expect_exit(certificate.status == Status::Sat),
                Some(ExpectArg::Unsat) => expect_exit(certificate.status == Status::Unsat),
            })
        }
        Command::Probe {
            probe,
            tree,
            expect,
        } => {
            let tree = load_tree(&tree)?;
            let report: ProbeReport = run_probe(probe.into(), &tree);
            emit(&report)?;
            Ok(match expect {
                None => ExitCode::SUCCESS,
                Some(ExpectArg::Sat) => expect_exit(report.passed == Some(true)),
                Some(ExpectArg::Unsat) => expect_exit(report.passed == Some(false)),
            })
        }
        Command::Hunt {
            n_max,
            probe,
            filter,
        } => {
            let report = hunt(n_max, &filter.to_filter(), probe.into(), threads)?;
            emit(&report)?;
            Ok(expect_exit(report.failures.is_empty()))
        }
        Command::Gen { n, filter } => {
            let trees = filter_family(&generate_trees(n)?, &filter.to_filter());
            for tree in &trees {
                println!("{}", tree.to_edge_list_line());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fixtures { fixture } => {
            let fixture = match fixture {
                FixtureArg::T => Fixture::T,
                FixtureArg::S => Fixture::S,
                FixtureArg::P6 => Fixture::P6,
            };
            print!("{}", fixture.edge_list());
            Ok(ExitCode::SUCCESS)
        }
        Command::Dot { tree, labeling } => {
            let tree = load_tree(&tree)?;
            let labeling = labeling.as_deref().map(parse_labeling).transpose()?;
            print!("{}", export_dot(&tree, labeling.as_ref())?);
            Ok(ExitCode::SUCCESS)
        }
    }
}
