use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cluster_groups::braid::BraidGraph;
use cluster_groups::presentation::group_order;
use cluster_groups::quiver::{mutation_class_to_depth, mutation_type_a};
use cluster_groups::theorems::{self, Caps, Verdict};
use cluster_groups::triangulation::triangulation_of_quiver;
use cluster_groups::{Error, MultiTriangulation, Presentation, Quiver, VerificationReport};

const EXIT_FAILURE: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Cluster groups of type A: quivers, triangulations, braid graphs and
/// their presentations.
#[derive(Parser, Debug)]
#[command(name = "clustergroups", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Maximum number of live cosets in coset enumeration.
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    cap_cosets: u64,
    /// Maximum size of a mutation class.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    cap_class: u64,
    /// Maximum order of a generated permutation group.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    cap_elements: u64,
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "dot")]
    json: bool,
    /// Emit Graphviz DOT (quivers and braid graphs).
    #[arg(long, global = true)]
    dot: bool,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mutate a quiver at each listed vertex in turn.
    Mutate {
        quiver: PathBuf,
        vertices: Vec<usize>,
    },
    /// List the mutation class up to isomorphism.
    MutationClass {
        quiver: PathBuf,
        /// Stop after this many rounds of mutation.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Decide whether a quiver is of mutation type A_{n_1} + ... + A_{n_r}.
    Type { quiver: PathBuf },
    /// The quiver of a labelled triangulation.
    QuiverOf { triangulation: PathBuf },
    /// A labelled triangulation whose quiver is the given one.
    TriangulationOf { quiver: PathBuf },
    /// The braid graph of a type-A quiver.
    BraidGraph { quiver: PathBuf },
    /// The cluster group presentation of a quiver.
    Presentation { quiver: PathBuf },
    /// The order of the cluster group, by coset enumeration.
    Order { quiver: PathBuf },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    FlipMutation,
    BraidGraph,
    GroupIso,
    Lattice,
    LatticeIso,
    GeneratorIntersection,
    Parabolic,
    Order,
    DirectProduct,
    RoundTrip,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite: Suite,
    /// Polygon size.
    #[arg(long)]
    m: Option<usize>,
    /// Rank; suites taking a quiver run over every type-A_n class instead.
    #[arg(long)]
    n: Option<usize>,
    /// Quiver file.
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Generator subset for the parabolic suite, e.g. 1,3.
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<usize>>,
    /// Mutation depth for the order suite.
    #[arg(long)]
    depth: Option<usize>,
    /// Rank of the first factor for the direct-product suite.
    #[arg(long)]
    a: Option<usize>,
    /// Rank of the second factor for the direct-product suite.
    #[arg(long)]
    b: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

enum Failure {
    Usage(String),
    Library(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Library(e)
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_quiver(path: &Path) -> Result<Quiver, Failure> {
    Ok(Quiver::parse(&read_input(path)?)?)
}

fn pretty(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serialisable") + "\n"
}

fn quiver_output(q: &Quiver, format: Format) -> String {
    match format {
        Format::Json => pretty(q),
        Format::Dot => q.to_dot(),
        Format::Text => q.to_text(),
    }
}

fn report_output(report: &VerificationReport, format: Format) -> Output {
    let code = match report.verdict() {
        Verdict::Pass => 0,
        Verdict::Fail => EXIT_FAILURE,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let text = match format {
        Format::Json => pretty(report),
        _ => report.to_string(),
    };
    Output { text, code }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let caps = Caps {
        class: cli.cap_class as usize,
        cosets: cli.cap_cosets as usize,
        elements: cli.cap_elements as usize,
    };
    let format = if cli.json {
        Format::Json
    } else if cli.dot {
        Format::Dot
    } else {
        Format::Text
    };
    match &cli.command {
        Command::Mutate { quiver, vertices } => {
            let q = read_quiver(quiver)?.mutate_sequence(vertices)?;
            Ok(Output::ok(quiver_output(&q, format)))
        }
        Command::MutationClass { quiver, depth } => {
            let class = mutation_class_to_depth(&read_quiver(quiver)?, caps.class, *depth)?;
            let text = match format {
                Format::Json => pretty(&class),
                _ => {
                    let mut s = format!("# {} quivers up to isomorphism\n", class.len());
                    for q in &class {
                        s.push_str(&format!("{q}\n"));
                    }
                    s
                }
            };
            Ok(Output::ok(text))
        }
        Command::Type { quiver } => {
            let kind = mutation_type_a(&read_quiver(quiver)?, caps.class)?;
            let text = match (format, &kind) {
                (Format::Json, Some(k)) => pretty(&json!({ "type_a": true, "parts": k.parts, "type": k.to_string() })),
                (Format::Json, None) => pretty(&json!({ "type_a": false })),
                (_, Some(k)) => format!("{k}\n"),
                (_, None) => "not of mutation type A\n".to_string(),
            };
            Ok(Output::ok(text))
        }
        Command::QuiverOf { triangulation } => {
            let mt = MultiTriangulation::parse(&read_input(triangulation)?)?;
            Ok(Output::ok(quiver_output(&mt.quiver_of(), format)))
        }
        Command::TriangulationOf { quiver } => {
            let mt = triangulation_of_quiver(&read_quiver(quiver)?, caps.class)?;
            Ok(Output::ok(pretty(&mt)))
        }
        Command::BraidGraph { quiver } => {
            let mt = triangulation_of_quiver(&read_quiver(quiver)?, caps.class)?;
            let g = BraidGraph::of(&mt);
            let text = match format {
                Format::Dot => g.to_dot(),
                _ => pretty(&g),
            };
            Ok(Output::ok(text))
        }
        Command::Presentation { quiver } => {
            let p = Presentation::from_quiver(&read_quiver(quiver)?);
            let text = match format {
                Format::Json => pretty(&p),
                _ => format!(
                    "# {} generators, {} relators\n{}\n{}",
                    p.generator_count(),
                    p.relators().len(),
                    p.to_text(),
                    p
                ),
            };
            Ok(Output::ok(text))
        }
        Command::Order { quiver } => {
            let order = group_order(&Presentation::from_quiver(&read_quiver(quiver)?), caps.cosets)?;
            let text = match format {
                Format::Json => pretty(&json!({ "order": order })),
                _ => format!("{order}\n"),
            };
            Ok(Output::ok(text))
        }
        Command::Verify(args) => Ok(report_output(&verify(args, caps)?, format)),
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str, suite: Suite) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("suite {suite:?} needs --{flag}")))
}

/// Runs a quiver suite on `--quiver`, or on every type-A_n class with `--n`.
fn quiver_or_rank(
    args: &VerifyArgs,
    on_quiver: impl FnOnce(&Quiver) -> Result<VerificationReport, Error>,
    on_rank: impl FnOnce(usize) -> VerificationReport,
) -> Result<VerificationReport, Failure> {
    match (&args.quiver, args.n) {
        (Some(path), None) => Ok(on_quiver(&read_quiver(path)?)?),
        (None, Some(n)) => Ok(on_rank(n)),
        _ => Err(Failure::Usage(format!(
            "suite {:?} needs exactly one of --quiver and --n",
            args.suite
        ))),
    }
}

fn verify(args: &VerifyArgs, caps: Caps) -> Result<VerificationReport, Failure> {
    let suite = args.suite;
    match suite {
        Suite::FlipMutation => {
            let m = need(args.m, "m", suite)?;
            if m < 4 {
                return Err(Failure::Usage("--m must be at least 4".into()));
            }
            Ok(theorems::verify_flip_mutation(m))
        }
        Suite::BraidGraph => {
            let n = need(args.n, "n", suite)?;
            if n < 2 {
                return Err(Failure::Usage("--n must be at least 2".into()));
            }
            Ok(theorems::verify_braid_graph_well_defined(n))
        }
        Suite::GroupIso => quiver_or_rank(
            args,
            |q| theorems::verify_group_iso(q, caps),
            |n| theorems::verify_group_iso_all(n, caps),
        ),
        Suite::Lattice => quiver_or_rank(
            args,
            |q| theorems::verify_partition_lattice(q, caps),
            theorems::verify_partition_lattice_all,
        ),
        Suite::LatticeIso => quiver_or_rank(
            args,
            |q| theorems::verify_lattice_isomorphism(q, caps),
            |n| theorems::verify_lattice_isomorphism_all(n, caps),
        ),
        Suite::GeneratorIntersection => quiver_or_rank(
            args,
            |q| theorems::verify_generator_intersection(q, caps),
            theorems::verify_generator_intersection_all,
        ),
        Suite::Parabolic => {
            if let (Some(path), Some(set)) = (&args.quiver, &args.subset) {
                return Ok(theorems::verify_parabolic_presentation(&read_quiver(path)?, set, caps)?);
            }
            quiver_or_rank(
                args,
                |q| theorems::verify_parabolic_all_subsets(q, caps),
                |n| theorems::verify_parabolic_all(n, caps),
            )
        }
        Suite::Order => match (&args.quiver, args.n) {
            (Some(path), None) => Ok(theorems::verify_mutation_invariance(&read_quiver(path)?, args.depth, caps)?),
            (None, Some(n)) => Ok(theorems::verify_mutation_invariance(&Quiver::linear_a(n), args.depth, caps)?),
            _ => Err(Failure::Usage("suite Order needs exactly one of --quiver and --n".into())),
        },
        Suite::DirectProduct => {
            let a = need(args.a, "a", suite)?;
            let b = need(args.b, "b", suite)?;
            Ok(theorems::verify_direct_product(&Quiver::linear_a(a), &Quiver::linear_a(b), caps)?)
        }
        Suite::RoundTrip => quiver_or_rank(
            args,
            |q| theorems::verify_word_round_trip(q, caps),
            theorems::verify_word_round_trip_all,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let output = match run(&cli) {
        Ok(output) => output,
        Err(failure) => {
            let (message, code) = match failure {
                Failure::Usage(m) => (m, EXIT_USAGE),
                Failure::Io(m) => (m, EXIT_USAGE),
                Failure::Library(e @ Error::CapExceeded { .. }) => (e.to_string(), EXIT_INCONCLUSIVE),
                Failure::Library(e) => (e.to_string(), EXIT_USAGE),
            };
            eprintln!("clustergroups: {message}");
            return ExitCode::from(code);
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &output.text).map_err(|e| format!("{}: {e}", path.display())),
        None => io::stdout()
            .write_all(output.text.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(message) = written {
        eprintln!("clustergroups: {message}");
        return ExitCode::from(EXIT_USAGE);
    }
    ExitCode::from(output.code)
}
