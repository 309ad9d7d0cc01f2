mod render;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use p3decomp::decomposition::check_tournament_with;
use p3decomp::euler::line_hamilton_cycle;
use p3decomp::format::{parse_digraph, write_digraph, ParsedDigraph};
use p3decomp::generate::{generate, GraphKind};
use p3decomp::linegraph::{component_analysis, line_graph_connected};
use p3decomp::oracle::{run_suite, InstanceFamily, Suite};
use p3decomp::{
    build_line_graph, check_bipartite, check_fractional, decompose, Certificate, Decision,
    Digraph, Error, P3Decomposition, P3Policy,
};
use serde::Serialize;
use serde_json::json;

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "p3dec", version, about = "Directed P3-decomposition toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a digraph in the text format.
    Gen(GenArgs),
    /// Build the line graph L(D).
    Linegraph(InputArgs),
    /// Decide decomposability, choosing the strongest certificate available.
    Check(CheckArgs),
    /// Decide decomposability via the line-graph matching only.
    Decompose(InputArgs),
    /// Fractional perfect matching of L(D) and its partition certificate.
    Fractional(InputArgs),
    /// Connectivity and component count of L(D).
    Connectivity(InputArgs),
    /// Hamilton cycle of L(D) from an Euler tour of D.
    #[command(name = "euler-ham")]
    EulerHam(InputArgs),
    /// Run an engine-versus-brute-force agreement suite (JSON lines).
    Oracle(OracleArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Strict,
    Closed,
}

impl From<PolicyArg> for P3Policy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Strict => P3Policy::StrictPath,
            PolicyArg::Closed => P3Policy::AllowClosed,
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Dot,
    Text,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file in the text format, or `-` for stdin.
    input: PathBuf,
    #[arg(long, value_enum)]
    policy: Option<PolicyArg>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Skip exponential certificate fallbacks; a cheaper certificate is
    /// still emitted.
    #[arg(long)]
    no_certificate: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    TransitiveTournament,
    RandomTournament,
    CompleteBipartite,
    RandomBipartite,
    RandomStrict,
    RandomEulerian,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    /// Allow digons in `random-strict`.
    #[arg(long)]
    digons: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Write to a file instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Decompose,
    Tournament,
    Fractional,
    Bipartite,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    /// Tournament order (decompose over tournaments, tournament suite).
    #[arg(long)]
    n: Option<usize>,
    /// Bipartite side sizes (decompose over bipartite digraphs, bipartite suite).
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    /// Corpus size for the fractional suite.
    #[arg(long, default_value_t = 500)]
    count: usize,
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    policy: Option<PolicyArg>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// Fixed JSON shape for `check` and `decompose`.
#[derive(Serialize)]
struct DecisionJson<'a> {
    decomposable: bool,
    decomposition: Option<&'a P3Decomposition>,
    certificate: Option<&'a Certificate>,
    policy: P3Policy,
}

#[derive(Serialize)]
struct LineGraphJson<'a> {
    vertices: usize,
    edges: &'a [(usize, usize)],
    policy: P3Policy,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_exhaustion() { EXIT_EXHAUSTED } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = std::result::Result<u8, Failure>;

fn read_input(path: &PathBuf) -> std::result::Result<ParsedDigraph, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?
    };
    Ok(parse_digraph(&text)?)
}

fn emit(out: &mut impl Write, text: &str) -> std::result::Result<(), Failure> {
    writeln!(out, "{}", text.trim_end()).map_err(|e| usage(format!("write: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

fn need<T>(value: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    value.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn emit_decision(
    out: &mut impl Write,
    d: &Digraph,
    format: Format,
    policy: P3Policy,
    decomposition: Option<&P3Decomposition>,
    certificate: Option<&Certificate>,
) -> Outcome {
    let body = DecisionJson {
        decomposable: decomposition.is_some(),
        decomposition,
        certificate,
        policy,
    };
    let text = match format {
        Format::Json => to_json(&body),
        Format::Text => render::decision_text(decomposition, certificate, policy),
        Format::Dot => render::decomposition_dot(d, decomposition),
    };
    emit(out, &text)?;
    Ok(if decomposition.is_some() { EXIT_YES } else { EXIT_NO })
}

fn run_gen(args: &GenArgs, out: &mut impl Write) -> Outcome {
    let kind = match args.kind {
        KindArg::TransitiveTournament => GraphKind::TransitiveTournament { n: need(args.n, "n")? },
        KindArg::RandomTournament => GraphKind::RandomTournament { n: need(args.n, "n")? },
        KindArg::CompleteBipartite => GraphKind::CompleteBipartiteOrientation {
            a: need(args.a, "a")?,
            b: need(args.b, "b")?,
        },
        KindArg::RandomBipartite => GraphKind::RandomBipartite {
            a: need(args.a, "a")?,
            b: need(args.b, "b")?,
            p: need(args.p, "p")?,
        },
        KindArg::RandomStrict => GraphKind::RandomStrict {
            n: need(args.n, "n")?,
            p: need(args.p, "p")?,
            asymmetric: !args.digons,
        },
        KindArg::RandomEulerian => GraphKind::RandomEulerian {
            n: need(args.n, "n")?,
            m: need(args.m, "m")?,
        },
    };
    let seed = match (kind.is_randomized(), args.seed) {
        (true, None) => return Err(usage("randomized generators require --seed")),
        (_, seed) => seed.unwrap_or(0),
    };
    let d = generate(&kind, seed)?;
    let text = write_digraph(&d, kind.bipartition());
    match &args.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_YES)
}

fn run_linegraph(args: &InputArgs, out: &mut impl Write) -> Outcome {
    let parsed = read_input(&args.input)?;
    let d = &parsed.digraph;
    let policy = args.policy.map_or(P3Policy::default(), Into::into);
    let l = build_line_graph(d, policy);
    let text = match args.format {
        Format::Json => to_json(&LineGraphJson {
            vertices: l.vertex_count(),
            edges: l.edges(),
            policy,
        }),
        Format::Dot => render::line_graph_dot(d, &l, &[]),
        Format::Text => render::line_graph_text(&l),
    };
    emit(out, &text)?;
    Ok(EXIT_YES)
}

fn run_decompose(args: &InputArgs, out: &mut impl Write) -> Outcome {
    let parsed = read_input(&args.input)?;
    let d = &parsed.digraph;
    let policy = args.policy.map_or(P3Policy::default(), Into::into);
    match decompose(d, policy) {
        Decision::Decomposable(dec) => emit_decision(out, d, args.format, policy, Some(&dec), None),
        Decision::Refuted(c) => emit_decision(out, d, args.format, policy, None, Some(&c)),
    }
}

fn run_check(args: &CheckArgs, out: &mut impl Write) -> Outcome {
    let input = &args.input;
    let parsed = read_input(&input.input)?;
    let d = &parsed.digraph;
    let certify = !args.no_certificate;

    if let Some(x) = &parsed.bipartition {
        if input.policy == Some(PolicyArg::Strict) {
            return Err(usage("bipartite inputs are checked with --policy closed"));
        }
        let r = check_bipartite(d, x)?;
        let policy = P3Policy::AllowClosed;
        return emit_decision(out, d, input.format, policy, r.decomposition.as_ref(), r.certificate.as_ref());
    }

    let policy = input.policy.map_or(P3Policy::default(), Into::into);
    if policy == P3Policy::StrictPath && d.is_tournament() && d.size() % 2 == 0 {
        let r = check_tournament_with(d, certify)?;
        if r.decomposable || r.certificate.is_some() {
            return emit_decision(out, d, input.format, policy, r.decomposition.as_ref(), r.certificate.as_ref());
        }
    }

    match decompose(d, policy) {
        Decision::Decomposable(dec) => emit_decision(out, d, input.format, policy, Some(&dec), None),
        Decision::Refuted(fallback) => {
            // a violated partition reads better than a Tutte set when one exists
            let partition = if certify {
                check_fractional(d, policy).ok().and_then(|r| r.certificate)
            } else {
                None
            };
            let c = partition.unwrap_or(fallback);
            emit_decision(out, d, input.format, policy, None, Some(&c))
        }
    }
}

fn run_fractional(args: &InputArgs, out: &mut impl Write) -> Outcome {
    let parsed = read_input(&args.input)?;
    let d = &parsed.digraph;
    let policy = args.policy.map_or(P3Policy::default(), Into::into);
    let r = check_fractional(d, policy)?;
    let text = match args.format {
        Format::Json | Format::Dot => to_json(&json!({
            "exists": r.exists,
            "certificate": r.certificate,
            "witness_source": r.witness_source,
            "policy": policy,
        })),
        Format::Text => render::fractional_text(&r),
    };
    emit(out, &text)?;
    Ok(if r.exists { EXIT_YES } else { EXIT_NO })
}

fn run_connectivity(args: &InputArgs, out: &mut impl Write) -> Outcome {
    let parsed = read_input(&args.input)?;
    let d = &parsed.digraph;
    let policy = args.policy.map_or(P3Policy::default(), Into::into);
    let c = line_graph_connected(d, policy)?;
    let components = component_analysis(d, policy)?;
    let text = match args.format {
        Format::Json | Format::Dot => to_json(&json!({
            "connected": c.connected,
            "method_agreement": c.method_agreement,
            "components": components,
            "policy": policy,
        })),
        Format::Text => format!(
            "connected: {}\nmethod agreement: {}\ncomponents: {} (bound {})",
            c.connected, c.method_agreement, components.num_components, components.f_n
        ),
    };
    emit(out, &text)?;
    Ok(if c.connected { EXIT_YES } else { EXIT_NO })
}

fn run_euler_ham(args: &InputArgs, out: &mut impl Write) -> Outcome {
    let parsed = read_input(&args.input)?;
    let d = &parsed.digraph;
    let policy = args.policy.map_or(P3Policy::default(), Into::into);
    let cycle = line_hamilton_cycle(d, policy)?;
    let l = build_line_graph(d, policy);
    let dot = render::line_graph_dot(d, &l, &cycle.vertices);
    let text = match args.format {
        Format::Json => to_json(&json!({ "cycle": cycle, "dot": dot, "policy": policy })),
        Format::Dot => dot,
        Format::Text => cycle.vertices.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" "),
    };
    emit(out, &text)?;
    Ok(EXIT_YES)
}

fn run_oracle(args: &OracleArgs, out: &mut impl Write) -> Outcome {
    let policy = args.policy.map_or(P3Policy::default(), Into::into);
    let suite = match args.suite {
        SuiteArg::Decompose => {
            let family = match (args.n, args.a, args.b) {
                (Some(n), None, None) => InstanceFamily::Tournaments { n },
                (None, Some(a), Some(b)) => InstanceFamily::BipartiteDigraphs { a, b },
                _ => return Err(usage("decompose suite takes --n, or --a and --b")),
            };
            Suite::Decompose { family, policy }
        }
        SuiteArg::Tournament => Suite::Tournament { n: need(args.n, "n")? },
        SuiteArg::Fractional => Suite::Fractional {
            count: args.count,
            max_n: args.max_n,
            seed: need(args.seed, "seed")?,
        },
        SuiteArg::Bipartite => Suite::Bipartite {
            a: need(args.a, "a")?,
            b: need(args.b, "b")?,
        },
    };
    let reports = run_suite(suite, args.jobs)?;
    for r in &reports {
        emit(out, &serde_json::to_string(r).expect("reports serialize"))?;
    }
    Ok(if reports.iter().all(|r| r.agreement) { EXIT_YES } else { EXIT_NO })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let outcome = match &cli.command {
        Command::Gen(a) => run_gen(a, &mut out),
        Command::Linegraph(a) => run_linegraph(a, &mut out),
        Command::Check(a) => run_check(a, &mut out),
        Command::Decompose(a) => run_decompose(a, &mut out),
        Command::Fractional(a) => run_fractional(a, &mut out),
        Command::Connectivity(a) => run_connectivity(a, &mut out),
        Command::EulerHam(a) => run_euler_ham(a, &mut out),
        Command::Oracle(a) => run_oracle(a, &mut out),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("p3dec: {}", f.message.replace('\n', " "));
            ExitCode::from(f.code)
        }
    }
}
