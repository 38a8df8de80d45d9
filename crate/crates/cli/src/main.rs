//! `tcmg`: solve, decompose, verify and cross-check threshold cardinality
//! matching games from the command line.
//!
//! Exit codes: 0 success, 1 rejected imputation or oracle mismatch, 2 bad
//! input, 3 cap exceeded, 4 threshold out of range, 5 not an imputation,
//! 70 internal self-check failure.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed};
use serde::Serialize;

use tcmg_core::oracle::{brute_force_least_core, brute_force_nucleolus, DEFAULT_ORACLE_CAP};
use tcmg_core::{
    gallai_edmonds, least_core_with, mig_equilibrium_with, nucleolus_with, verify_least_core_membership, Graph,
    GraphFormat, Imputation, LeastCoreMethod, NucleolusMethod, Rational, SolverConfig, TcmGame, TcmgError,
};
use tcmg_lp::parse_rational;

use report::*;

#[derive(Parser)]
#[command(name = "tcmg", version, about = "Exact solvers for threshold cardinality matching games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Output {
    /// Indent the JSON report.
    #[arg(long)]
    pretty: bool,
    /// Emit `"time_ms": null` so reports are byte-identical across runs.
    #[arg(long)]
    no_time: bool,
}

#[derive(clap::Args)]
struct GameArgs {
    /// Graph file: JSON when the name ends in `.json`, edge list otherwise.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    threshold: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a solution concept.
    Solve {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[command(flatten)]
        output: Output,
    },
    /// Print the Gallai-Edmonds decomposition.
    Decompose {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Check that an imputation lies in the epsilon-core.
    Verify {
        #[command(flatten)]
        game: GameArgs,
        /// JSON array of "p/q" payoffs.
        #[arg(long)]
        imputation: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        epsilon: String,
        #[command(flatten)]
        output: Output,
    },
    /// Solve by exhaustive enumeration of all coalitions.
    Oracle {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum)]
        what: What,
        /// Also run the default solver and diff the two exactly.
        #[arg(long)]
        compare: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Core,
    LeastCore,
    Nucleolus,
    Mig,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    ClosedForm,
    ConstraintGen,
    Essential,
    BruteForce,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::ClosedForm => "closed-form",
            Method::ConstraintGen => "constraint-gen",
            Method::Essential => "essential",
            Method::BruteForce => "brute-force",
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }
}

impl From<TcmgError> for Failure {
    fn from(e: TcmgError) -> Failure {
        let code = match &e {
            TcmgError::Graph(_) => 2,
            TcmgError::CapExceeded { .. } => 3,
            TcmgError::ThresholdOutOfRange { .. } | TcmgError::NoMatchingOfSize { .. } => 4,
            TcmgError::Imputation(_) => 5,
            TcmgError::NotBipartite | TcmgError::ThresholdNotOne(_) | TcmgError::NoClosedForm(_) => 2,
            TcmgError::NegativeCost(_) | TcmgError::CostLength { .. } => 2,
            TcmgError::Lp(_) | TcmgError::SelfCheck(_) => 70,
        };
        Failure { code, message: e.to_string() }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((json, code)) => {
            // A closed reader (e.g. `| head`) is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{json}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Solve { game, what, method, output } => solve(&game, what, method, &output),
        Command::Decompose { graph, output } => decompose(&graph, &output),
        Command::Verify { game, imputation, epsilon, output } => verify(&game, &imputation, &epsilon, &output),
        Command::Oracle { game, what, compare, output } => oracle(&game, what, compare, &output),
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let format = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => GraphFormat::Json,
        _ => GraphFormat::EdgeList,
    };
    Graph::parse(&text, format).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_game(args: &GameArgs) -> Result<TcmGame, Failure> {
    Ok(TcmGame::new(read_graph(&args.graph)?, args.threshold)?)
}

fn config() -> Result<SolverConfig, Failure> {
    let mut config = SolverConfig::default();
    if let Ok(raw) = std::env::var("TCMG_ORACLE_CAP") {
        config.oracle_cap = raw
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("TCMG_ORACLE_CAP must be a vertex count, got {raw:?}")))?;
    } else {
        config.oracle_cap = DEFAULT_ORACLE_CAP;
    }
    Ok(config)
}

fn input(g: &Graph, t: Option<usize>) -> Input {
    Input {
        n: g.vertex_count(),
        m: g.edge_count(),
        threshold: t,
    }
}

fn render<R: Serialize>(report: &Report<R>, output: &Output) -> Result<String, Failure> {
    let json = if output.pretty {
        serde_json::to_string_pretty(report)
    } else {
        serde_json::to_string(report)
    };
    json.map_err(|e| Failure { code: 70, message: e.to_string() })
}

fn elapsed(start: Instant, output: &Output) -> Option<u64> {
    (!output.no_time).then(|| start.elapsed().as_millis() as u64)
}

struct Solved<R> {
    method: String,
    result: R,
    rounds: Vec<Round>,
    certificate: Vec<tcmg_core::Matching>,
}

fn emit<R: Serialize>(game: &TcmGame, solved: Solved<R>, start: Instant, output: &Output, code: u8) -> Outcome {
    let report = Report {
        schema: SCHEMA,
        input: input(game.graph(), Some(game.threshold())),
        method: solved.method,
        result: solved.result,
        rounds: solved.rounds,
        certificate: solved.certificate,
        time_ms: elapsed(start, output),
    };
    Ok((render(&report, output)?, code))
}

fn unsupported(what: &str, method: Method) -> Failure {
    Failure::usage(format!("--method {} does not apply to --what {what}", method.name()))
}

fn solve(args: &GameArgs, what: What, method: Method, output: &Output) -> Outcome {
    let game = load_game(args)?;
    let config = config()?;
    let start = Instant::now();
    match what {
        What::Core => {
            if method != Method::Auto {
                return Err(unsupported("core", method));
            }
            let core = game.core();
            let solved = Solved {
                method: "veto_players".into(),
                result: CorePayload::from(core),
                rounds: Vec::new(),
                certificate: Vec::new(),
            };
            emit(&game, solved, start, output, 0)
        }
        What::LeastCore => {
            let m = match method {
                Method::Auto => LeastCoreMethod::Auto,
                Method::ClosedForm => LeastCoreMethod::ClosedForm,
                Method::ConstraintGen => LeastCoreMethod::ConstraintGeneration,
                Method::BruteForce => LeastCoreMethod::BruteForce,
                Method::Essential => return Err(unsupported("least-core", method)),
            };
            let r = least_core_with(&game, m, &config)?;
            let solved = Solved {
                method: r.method.as_str().into(),
                result: LeastCorePayload::from(&r),
                rounds: Vec::new(),
                certificate: r.certificate,
            };
            emit(&game, solved, start, output, 0)
        }
        What::Nucleolus => {
            let m = match method {
                Method::Auto => NucleolusMethod::Auto,
                Method::ClosedForm => NucleolusMethod::Specialized,
                Method::Essential => NucleolusMethod::Essential,
                Method::BruteForce => NucleolusMethod::BruteForce,
                Method::ConstraintGen => return Err(unsupported("nucleolus", method)),
            };
            let r = nucleolus_with(&game, m, &config)?;
            let solved = Solved {
                method: r.method.as_str().into(),
                result: NucleolusPayload::from(&r),
                rounds: r.rounds.iter().map(Round::from).collect(),
                certificate: Vec::new(),
            };
            emit(&game, solved, start, output, 0)
        }
        What::Mig => {
            if method != Method::Auto {
                return Err(unsupported("mig", method));
            }
            let r = mig_equilibrium_with(&game, &config)?;
            let solved = Solved {
                method: "dual_lp".into(),
                result: MigPayload::from(r),
                rounds: Vec::new(),
                certificate: Vec::new(),
            };
            emit(&game, solved, start, output, 0)
        }
    }
}

fn decompose(path: &Path, output: &Output) -> Outcome {
    let g = read_graph(path)?;
    let start = Instant::now();
    let d = gallai_edmonds(&g);
    let report = Report {
        schema: SCHEMA,
        input: input(&g, None),
        method: "gallai_edmonds".into(),
        result: &d,
        rounds: Vec::new(),
        certificate: Vec::new(),
        time_ms: elapsed(start, output),
    };
    Ok((render(&report, output)?, 0))
}

fn read_imputation(path: &Path, n: usize) -> Result<Imputation, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let raw: Vec<String> = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: expected a JSON array of \"p/q\" strings: {e}", path.display())))?;
    let payoffs = raw
        .iter()
        .map(|s| parse_rational(s).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))))
        .collect::<Result<Vec<Rational>, Failure>>()?;
    Imputation::for_players(n, payoffs).map_err(|e| Failure {
        code: 5,
        message: format!("{}: not an imputation: {e}", path.display()),
    })
}

fn verify(args: &GameArgs, imputation: &Path, epsilon: &str, output: &Output) -> Outcome {
    let game = load_game(args)?;
    let eps = parse_rational(epsilon).map_err(|e| Failure::usage(format!("--epsilon: {e}")))?;
    let x = read_imputation(imputation, game.player_count())?;
    let start = Instant::now();
    let v = verify_least_core_membership(&game, &x, &eps)?;
    let solved = Solved {
        method: "min_cost_matching".into(),
        result: VerifyPayload::new(&v, &eps),
        rounds: Vec::new(),
        certificate: v.violating.clone().into_iter().collect(),
    };
    emit(&game, solved, start, output, if v.accepted { 0 } else { 1 })
}

#[derive(Serialize)]
struct OracleNucleolus {
    #[serde(flatten)]
    nucleolus: NucleolusPayload,
    excess_profile: Vec<ExcessEntry>,
}

#[derive(Serialize)]
struct OracleCore {
    nonempty: bool,
    #[serde(serialize_with = "q_field")]
    least_core_value: Rational,
}

fn diff(field: &'static str, oracle: serde_json::Value, fast: serde_json::Value, equal: bool) -> FieldDiff {
    FieldDiff { field, oracle, fast, equal }
}

fn compared<O: Serialize, F: Serialize>(
    game: &TcmGame,
    oracle: Solved<O>,
    fast: F,
    fast_method: String,
    fields: Vec<FieldDiff>,
    start: Instant,
    output: &Output,
) -> Outcome {
    let identical = fields.iter().all(|f| f.equal);
    let solved = Solved {
        method: oracle.method,
        result: Comparison {
            identical,
            fast_method,
            oracle: oracle.result,
            fast,
            diff: fields,
        },
        rounds: oracle.rounds,
        certificate: oracle.certificate,
    };
    emit(game, solved, start, output, if identical { 0 } else { 1 })
}

fn oracle(args: &GameArgs, what: What, compare: bool, output: &Output) -> Outcome {
    let game = load_game(args)?;
    let config = config()?;
    let cap = config.oracle_cap;
    let start = Instant::now();
    match what {
        What::LeastCore | What::Core | What::Mig => {
            let lc = brute_force_least_core(&game, cap)?;
            let eps = lc.epsilon.clone();
            match what {
                What::LeastCore => {
                    let solved = Solved {
                        method: lc.method.as_str().into(),
                        result: LeastCorePayload::from(&lc),
                        rounds: Vec::new(),
                        certificate: lc.certificate.clone(),
                    };
                    if !compare {
                        return emit(&game, solved, start, output, 0);
                    }
                    let fast = least_core_with(&game, LeastCoreMethod::Auto, &config)?;
                    // Least-core points need not be unique: both must pass at the oracle value.
                    let oracle_ok = verify_least_core_membership(&game, &lc.point, &eps)?.accepted;
                    let fast_ok = verify_least_core_membership(&game, &fast.point, &eps)?.accepted;
                    let fields = vec![
                        diff("epsilon", rational_value(&eps), rational_value(&fast.epsilon), eps == fast.epsilon),
                        diff("point", point_value(&lc.point), point_value(&fast.point), oracle_ok && fast_ok),
                    ];
                    compared(&game, solved, LeastCorePayload::from(&fast), fast.method.as_str().into(), fields, start, output)
                }
                What::Core => {
                    let nonempty = !eps.is_negative();
                    let solved = Solved {
                        method: "brute_force".into(),
                        result: OracleCore { nonempty, least_core_value: eps },
                        rounds: Vec::new(),
                        certificate: Vec::new(),
                    };
                    if !compare {
                        return emit(&game, solved, start, output, 0);
                    }
                    let core = game.core();
                    let fields = vec![diff(
                        "nonempty",
                        serde_json::Value::Bool(nonempty),
                        serde_json::Value::Bool(core.nonempty),
                        nonempty == core.nonempty,
                    )];
                    compared(&game, solved, CorePayload::from(core), "veto_players".into(), fields, start, output)
                }
                _ => {
                    let alpha = Rational::one() + &eps;
                    let solved = Solved {
                        method: "brute_force".into(),
                        result: LeastCorePayload::from(&lc),
                        rounds: Vec::new(),
                        certificate: lc.certificate.clone(),
                    };
                    if !compare {
                        return emit(&game, solved, start, output, 0);
                    }
                    let fast = mig_equilibrium_with(&game, &config)?;
                    let fields = vec![diff("alpha", rational_value(&alpha), rational_value(&fast.alpha), alpha == fast.alpha)];
                    compared(&game, solved, MigPayload::from(fast), "dual_lp".into(), fields, start, output)
                }
            }
        }
        What::Nucleolus => {
            let (r, profile) = brute_force_nucleolus(&game, cap)?;
            let solved = Solved {
                method: r.method.as_str().into(),
                result: OracleNucleolus {
                    nucleolus: NucleolusPayload::from(&r),
                    excess_profile: excess_entries(&profile),
                },
                rounds: r.rounds.iter().map(Round::from).collect(),
                certificate: Vec::new(),
            };
            if !compare {
                return emit(&game, solved, start, output, 0);
            }
            let fast = nucleolus_with(&game, NucleolusMethod::Auto, &config)?;
            let fields = vec![diff("point", point_value(&r.point), point_value(&fast.point), r.point == fast.point)];
            compared(&game, solved, NucleolusPayload::from(&fast), fast.method.as_str().into(), fields, start, output)
        }
    }
}
