//! Command-line front end: argument parsing, input loading, output
//! formatting, and the mapping from outcomes to exit codes.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::census::{
    builtin_expected_table, census_report, parse_expected_table, CensusReport, ExpectedTable,
};
use crate::embedding::RotationSystem;
use crate::error::{Error, Result};
use crate::flows::alon_tarsi_certificate;
use crate::graphs::{Multigraph, Orientation};
use crate::identities::{
    check_decompletion, check_dual, check_four_edge_cut, check_orientation_identity,
    check_special_vertex, check_three_cut, check_twist, check_two_cut, IdentityReport,
};
use crate::invariant::graph_permanent_with;
use crate::io::{parse_graph, Format};

/// Everything ran and every checked statement held.
pub const EXIT_OK: i32 = 0;
/// Input could not be read or parsed.
pub const EXIT_INPUT: i32 = 1;
/// Input parsed but violates a precondition of the request.
pub const EXIT_PRECONDITION: i32 = 2;
/// A checked statement failed, or the program contradicted itself.
pub const EXIT_FAILED: i32 = 3;
/// An exhaustive search proved the requested object does not exist.
pub const EXIT_ABSENT: i32 = 4;
/// The computation exceeded a resource bound before reaching an answer.
pub const EXIT_INCONCLUSIVE: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Io(_) | Error::Fixture { .. } => EXIT_INPUT,
        Error::SideTooLarge { .. } | Error::SearchBound { .. } | Error::Overflow => {
            EXIT_INCONCLUSIVE
        }
        Error::Internal { .. } => EXIT_FAILED,
        _ => EXIT_PRECONDITION,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gperm",
    version,
    about = "Permanent-based graph invariant: compute it, check its \
             invariance identities, classify 4-regular graphs, and emit \
             orientation certificates."
)]
pub struct Cli {
    /// Worker threads for parallel sections (0 keeps the default).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,

    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the invariant of one graph.
    Compute(ComputeArgs),
    /// Check an invariance identity on one graph.
    Verify(VerifyArgs),
    /// Catalogue connected 4-regular graphs and compare against the
    /// expected table.
    Census(CensusArgs),
    /// Search for a spanning subgraph certifying a balanced orientation.
    Flows(FlowsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// Decide from the file name and content.
    Auto,
    Edgelist,
    Graph6,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// Graph file, or - for standard input.
    pub input: String,

    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,

    /// Vertex whose incidence row is deleted.
    #[arg(long, default_value_t = 0)]
    pub special: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityKind {
    /// The invariant does not depend on the deleted row or the
    /// orientation.
    SpecialVertex,
    /// All connected vertex deletions of a regular graph agree.
    Decompletion,
    /// A sphere embedding and its dual agree.
    Dual,
    /// Rewiring one side of a 4-vertex cut preserves the completed
    /// residue.
    Twist,
    /// Splitting at a 2-vertex cut turns the permanent into a product.
    TwoCut,
    /// Splitting a 4-regular graph at a 3-vertex cut after decompletion.
    ThreeCut,
    /// Splitting at a 4-edge cut turns the permanent into a product.
    FourEdgeCut,
    /// Signed orientation counts reproduce the permanent.
    OrientationIdentity,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub identity: IdentityKind,

    /// Graph file, or - for standard input.
    pub input: String,

    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,

    /// Rotation system file (dual).
    #[arg(long)]
    pub rotation: Option<PathBuf>,

    /// Cut vertices, comma separated (twist: 4, two-cut: 2, three-cut: 3).
    #[arg(long, value_delimiter = ',')]
    pub cut: Vec<usize>,

    /// Vertices of the side to operate on, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub side: Vec<usize>,

    /// Cut edge ids, comma separated (four-edge-cut: 4).
    #[arg(long, value_delimiter = ',')]
    pub cut_edges: Vec<usize>,

    /// Source vertex (orientation-identity).
    #[arg(long)]
    pub source: Option<usize>,

    /// Sink vertex (orientation-identity).
    #[arg(long)]
    pub sink: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Graph orders to classify, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![5, 6, 7, 8, 9, 10])]
    pub orders: Vec<usize>,

    /// Expected-table JSON file; overrides GPERM_FIXTURES and the
    /// builtin table.
    #[arg(long)]
    pub fixture: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FlowsArgs {
    /// Graph file, or - for standard input.
    pub input: String,

    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,

    /// Modulus of the orientation condition.
    #[arg(long, default_value_t = 3)]
    pub modulus: u64,
}

/// Run a parsed invocation and return the process exit code.
pub fn run(cli: Cli) -> i32 {
    if cli.jobs > 0 {
        // a second initialization in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    let json = cli.json;
    let outcome = match cli.command {
        Command::Compute(args) => run_compute(args, json),
        Command::Verify(args) => run_verify(args, json),
        Command::Census(args) => run_census(args, json),
        Command::Flows(args) => run_flows(args, json),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_graph(path: &str, format: InputFormat) -> Result<Multigraph> {
    let text = read_input(path)?;
    let format = match format {
        InputFormat::Edgelist => Format::Edgelist,
        InputFormat::Graph6 => Format::Graph6,
        InputFormat::Auto => {
            if path.ends_with(".g6") || path.ends_with(".graph6") {
                Format::Graph6
            } else {
                // edge lists open with a digit header or a # comment
                match text.trim_start().chars().next() {
                    Some(c) if c.is_ascii_digit() || c == '#' => Format::Edgelist,
                    _ => Format::Graph6,
                }
            }
        }
    };
    parse_graph(&text, format)
}

fn run_compute(args: ComputeArgs, json: bool) -> Result<i32> {
    let g = load_graph(&args.input, args.format)?;
    let o = Orientation::forward_all(g.edge_count());
    let gp = graph_permanent_with(&g, &o, args.special)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&gp)?);
    } else {
        println!(
            "k={} modulus={} gp={}",
            gp.k, gp.modulus, gp.canonical_residue
        );
    }
    Ok(EXIT_OK)
}

fn fixed<const N: usize>(kind: &str, values: &[usize]) -> Result<[usize; N]> {
    <[usize; N]>::try_from(values).map_err(|_| {
        Error::invalid(format!(
            "--{kind} needs exactly {N} comma-separated vertices, got {}",
            values.len()
        ))
    })
}

fn run_verify(args: VerifyArgs, json: bool) -> Result<i32> {
    let g = load_graph(&args.input, args.format)?;
    let report = match args.identity {
        IdentityKind::SpecialVertex => check_special_vertex(&g)?,
        IdentityKind::Decompletion => check_decompletion(&g)?,
        IdentityKind::Dual => {
            let path = args
                .rotation
                .as_ref()
                .ok_or_else(|| Error::invalid("dual checks need --rotation FILE"))?;
            let rot = RotationSystem::parse(&std::fs::read_to_string(path)?)?;
            check_dual(&g, &rot)?
        }
        IdentityKind::Twist => {
            let cut = fixed::<4>("cut", &args.cut)?;
            check_twist(&g, cut, &args.side)?
        }
        IdentityKind::TwoCut => {
            let [v1, v2] = fixed::<2>("cut", &args.cut)?;
            check_two_cut(&g, v1, v2, &args.side)?
        }
        IdentityKind::ThreeCut => {
            let cut = fixed::<3>("cut", &args.cut)?;
            check_three_cut(&g, cut, &args.side)?
        }
        IdentityKind::FourEdgeCut => {
            let cut = fixed::<4>("cut-edges", &args.cut_edges)?;
            check_four_edge_cut(&g, cut)?
        }
        IdentityKind::OrientationIdentity => {
            let s = args
                .source
                .ok_or_else(|| Error::invalid("orientation checks need --source"))?;
            let t = args
                .sink
                .ok_or_else(|| Error::invalid("orientation checks need --sink"))?;
            check_orientation_identity(&g, s, t)?
        }
    };
    print_report(&report, json)?;
    Ok(if report.holds { EXIT_OK } else { EXIT_FAILED })
}

fn print_report(report: &IdentityReport, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
        return Ok(());
    }
    println!("identity={} holds={}", report.identity, report.holds);
    for v in &report.left {
        println!("  left  {} = {}", v.label, v.value);
    }
    for v in &report.right {
        println!("  right {} = {}", v.label, v.value);
    }
    for w in &report.witnesses {
        println!("  note  {w}");
    }
    Ok(())
}

fn load_expected_table(fixture: Option<&Path>) -> Result<ExpectedTable> {
    let path = match fixture {
        Some(p) => Some(p.to_path_buf()),
        None => match std::env::var_os("GPERM_FIXTURES") {
            Some(dir) => {
                let p = PathBuf::from(dir);
                Some(if p.is_dir() {
                    p.join("census_expected.json")
                } else {
                    p
                })
            }
            None => None,
        },
    };
    match path {
        Some(p) => {
            parse_expected_table(&std::fs::read_to_string(&p).map_err(|e| Error::Fixture {
                msg: format!("{}: {e}", p.display()),
            })?)
        }
        None => Ok(builtin_expected_table()),
    }
}

fn residue_histogram(residues: &[u64]) -> String {
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for &r in residues {
        *counts.entry(r).or_insert(0) += 1;
    }
    let parts: Vec<String> = counts.iter().map(|(r, c)| format!("{r}:{c}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn print_census(report: &CensusReport, json: bool) -> Result<()> {
    if json {
        println!("{}", serde_json::to_string_pretty(report)?);
        return Ok(());
    }
    println!("order\tindex\tgraph6\tprimitive\tresidue");
    for r in &report.rows {
        println!(
            "{}\t{}\t{}\t{}\t{}",
            r.order, r.index, r.graph6, r.primitive, r.residue
        );
    }
    for s in &report.summaries {
        println!(
            "order {}: {} classes, {} primitive, residues {} {}",
            s.order,
            s.classes,
            s.primitive,
            residue_histogram(&s.residues),
            if s.pass { "PASS" } else { "FAIL" }
        );
    }
    Ok(())
}

fn run_census(args: CensusArgs, json: bool) -> Result<i32> {
    let table = load_expected_table(args.fixture.as_deref())?;
    let report = census_report(&args.orders, &table)?;
    print_census(&report, json)?;
    Ok(if report.pass { EXIT_OK } else { EXIT_FAILED })
}

fn run_flows(args: FlowsArgs, json: bool) -> Result<i32> {
    let g = load_graph(&args.input, args.format)?;
    match alon_tarsi_certificate(&g, args.modulus)? {
        Some(cert) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&cert)?);
            } else {
                let edges: Vec<String> =
                    cert.subgraph_edges.iter().map(|e| e.to_string()).collect();
                let orientation = cert
                    .orientation
                    .as_ref()
                    .map(|o| {
                        o.iter()
                            .map(|&f| if f { '>' } else { '<' })
                            .collect::<String>()
                    })
                    .unwrap_or_default();
                println!(
                    "modulus={} residue={} subgraph={} orientation={orientation}",
                    cert.modulus,
                    cert.residue,
                    edges.join(",")
                );
            }
            Ok(EXIT_OK)
        }
        None => {
            if json {
                println!("null");
            } else {
                println!(
                    "no certificate: every spanning balanced subgraph has residue 0 \
                     mod {}",
                    args.modulus
                );
            }
            Ok(EXIT_ABSENT)
        }
    }
}
