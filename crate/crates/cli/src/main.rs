use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use freebraid::coxeter::{equal_elements_checked, reduce};
use freebraid::geomrep::ReflectionRep;
use freebraid::oracle::{ball, oracle_equal, BallBackend};
use freebraid::suite::{run_suite, Profile};
use freebraid::{
    canonical_form, co_inverse, co_rewrite, equal_elements, is_pure, parse_word_as, trace, Error, Family,
    StrandCount, Word, DEFAULT_BUDGET,
};

const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_SELFTEST: u8 = 4;

/// Word problem engine for the free braid groups G_n^2.
#[derive(Debug, Parser)]
#[command(name = "freebraid", version)]
struct Cli {
    /// Number of strands.
    #[arg(short = 'n', global = true)]
    n: Option<usize>,
    /// Emit a single JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Node limit for orbit and class searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget_nodes: usize,
    /// Length cap for the brute-force oracle (defaults to the longer input plus 4).
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rewrite a G-word (`a` letters) into its C-word image with the σ chain.
    Rewrite { word: String },
    /// Recover the G-word whose image is the given C-word.
    Unrewrite { word: String },
    /// Decide whether two words of one family are equal.
    Eq {
        left: String,
        right: String,
        #[arg(long, value_enum, default_value_t = EqBackend::Matrix)]
        backend: EqBackend,
    },
    /// Reduce a word by length-non-increasing moves.
    Reduce { word: String },
    /// Canonical form of a C-word.
    Canon {
        word: String,
        /// Include the full matrix in the output.
        #[arg(long)]
        dump_matrix: bool,
    },
    /// Sphere sizes of the Cayley graph up to a radius.
    Ball {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        radius: usize,
        #[arg(long, value_enum, default_value_t = BallBackendArg::Exact)]
        backend: BallBackendArg,
    },
    /// Run the randomized invariant suite.
    Selftest {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = ProfileArg::Quick)]
        profile: ProfileArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EqBackend {
    /// Reflection matrices (plus strand traces for G-words).
    Matrix,
    /// Matrices cross-checked against reduced-word orbits.
    Canon,
    /// Brute-force relator closure bounded by --max-len.
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "a", alias = "g")]
    A,
    #[value(name = "b", alias = "c")]
    B,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BallBackendArg {
    Exact,
    Oracle,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

struct Outcome {
    payload: Value,
    diagnostics: Option<Value>,
    text: Vec<String>,
    exit: u8,
}

impl Outcome {
    fn ok(payload: Value, text: Vec<String>) -> Outcome {
        Outcome { payload, diagnostics: None, text, exit: 0 }
    }

    fn with_diagnostics(mut self, diagnostics: Value) -> Outcome {
        self.diagnostics = Some(diagnostics);
        self
    }
}

fn strands(cli: &Cli) -> Result<StrandCount, Error> {
    let n = cli.n.ok_or(Error::InvalidStrandCount { got: 0, max: freebraid::words::MAX_STRANDS })?;
    StrandCount::new(n)
}

fn perm_json(p: &freebraid::Permutation) -> Value {
    json!(p.one_line())
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Rewrite { word } => {
            let n = strands(cli)?;
            let w = parse_word_as(word, n, Family::G)?;
            let t = co_rewrite(&w)?;
            let tr = trace(&w);
            let sigmas: Vec<Value> = t.sigmas.iter().map(perm_json).collect();
            let mut text = vec![format!("target: {}", t.target)];
            for (p, s) in t.sigmas.iter().enumerate() {
                text.push(format!("sigma_{p}: {s} {}", s.cycle_string()));
            }
            text.push(format!("trace: {tr} {}", tr.cycle_string()));
            Ok(Outcome::ok(
                json!({
                    "source": w.to_string(),
                    "target": t.target.to_string(),
                    "sigmas": sigmas,
                    "trace": perm_json(&tr),
                    "pure": is_pure(&w),
                }),
                text,
            ))
        }
        Command::Unrewrite { word } => {
            let n = strands(cli)?;
            let v = parse_word_as(word, n, Family::C)?;
            let w = co_inverse(&v)?;
            let tr = trace(&w);
            Ok(Outcome::ok(
                json!({ "source": v.to_string(), "word": w.to_string(), "trace": perm_json(&tr) }),
                vec![format!("word: {w}"), format!("trace: {tr} {}", tr.cycle_string())],
            ))
        }
        Command::Eq { left, right, backend } => {
            let n = strands(cli)?;
            let (u, v) = parse_pair(left, right, n)?;
            let (equal, backend_used, witness) = match backend {
                EqBackend::Matrix => {
                    let rep = ReflectionRep::new(n);
                    let ku = freebraid::coxeter::element_key(&rep, &u)?;
                    let kv = freebraid::coxeter::element_key(&rep, &v)?;
                    let witness = json!({
                        "left_matrix_hash": format!("{:016x}", ku.matrix.fingerprint()),
                        "right_matrix_hash": format!("{:016x}", kv.matrix.fingerprint()),
                        "left_trace": ku.trace.as_ref().map(perm_json),
                        "right_trace": kv.trace.as_ref().map(perm_json),
                    });
                    (equal_elements(&u, &v)?, "matrix", witness)
                }
                EqBackend::Canon => {
                    let equal = equal_elements_checked(&u, &v, cli.budget_nodes)?;
                    let ru = reduce(&u, cli.budget_nodes)?.word;
                    let rv = reduce(&v, cli.budget_nodes)?.word;
                    (equal, "canon", json!({ "left_reduced": ru.to_string(), "right_reduced": rv.to_string() }))
                }
                EqBackend::Oracle => {
                    let max_len = cli.max_len.unwrap_or(u.len().max(v.len()) + 4);
                    let equal = oracle_equal(&u, &v, max_len, cli.budget_nodes)?;
                    (equal, "oracle", json!({ "max_len": max_len }))
                }
            };
            Ok(Outcome::ok(
                json!({ "equal": equal, "backend_used": backend_used, "witness": witness }),
                vec![format!("equal: {equal}"), format!("backend: {backend_used}")],
            ))
        }
        Command::Reduce { word } => {
            let n = strands(cli)?;
            let w = parse_word_as(word, n, Family::G)?;
            let r = reduce(&w, cli.budget_nodes)?;
            Ok(Outcome::ok(
                json!({
                    "reduced": r.word.to_string(),
                    "length": r.word.len(),
                    "moves_applied": r.moves_applied,
                    "cancellations": r.cancellations,
                }),
                vec![
                    format!("reduced: {}", r.word),
                    format!("length: {}", r.word.len()),
                    format!("moves_applied: {}", r.moves_applied),
                ],
            )
            .with_diagnostics(json!({ "nodes_visited": r.nodes_visited, "budget_nodes": cli.budget_nodes })))
        }
        Command::Canon { word, dump_matrix } => {
            let n = strands(cli)?;
            let w = parse_word_as(word, n, Family::C)?;
            let e = canonical_form(&w, cli.budget_nodes)?;
            let hash = format!("{:016x}", e.matrix.fingerprint());
            let mut payload = json!({
                "canonical": e.canonical.to_string(),
                "length": e.canonical.len(),
                "matrix_hash": hash,
            });
            let mut text = vec![format!("canonical: {}", e.canonical), format!("matrix_hash: {hash}")];
            if *dump_matrix {
                payload["matrix"] = json!(e.matrix.rows());
                text.extend(e.matrix.rows().iter().map(|r| r.join(" ")));
            }
            Ok(Outcome::ok(payload, text))
        }
        Command::Ball { family, radius, backend } => {
            let n = strands(cli)?;
            let family = match family {
                FamilyArg::A => Family::G,
                FamilyArg::B => Family::C,
            };
            let backend = match backend {
                BallBackendArg::Exact => BallBackend::Exact,
                BallBackendArg::Oracle => BallBackend::Oracle { slack: cli.max_len.unwrap_or(2) },
            };
            let counts = ball(n, family, *radius, backend, cli.budget_nodes)?;
            let cumulative: Vec<u64> = counts
                .iter()
                .scan(0u64, |acc, &c| {
                    *acc += c;
                    Some(*acc)
                })
                .collect();
            Ok(Outcome::ok(
                json!({ "family": family.prefix().to_string(), "radius": radius, "counts": counts, "cumulative": cumulative }),
                vec![format!("counts: {counts:?}"), format!("cumulative: {cumulative:?}")],
            ))
        }
        Command::Selftest { trials, profile } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            let report = run_suite(*trials, cli.seed, profile);
            let mut text: Vec<String> = report.warnings.iter().map(|w| format!("warning: {w}")).collect();
            for r in &report.results {
                let verdict = if r.passed() { "PASS" } else { "FAIL" };
                let mut line = format!("{verdict} {} ({} trials)", r.name, r.trials);
                if let Some(c) = &r.counterexample {
                    line.push_str(&format!(": {c}"));
                }
                text.push(line);
            }
            let passed = report.passed();
            text.push(if passed { "all invariants pass".into() } else { "invariant failures".into() });
            let mut outcome = Outcome::ok(serde_json::to_value(&report).expect("report serializes"), text);
            outcome.payload["passed"] = json!(passed);
            if !passed {
                outcome.exit = EXIT_SELFTEST;
            }
            Ok(outcome)
        }
    }
}

/// Parses two words of one family; an empty side takes the other's family.
fn parse_pair(left: &str, right: &str, n: StrandCount) -> Result<(Word, Word), Error> {
    let hint = |text: &str| if text.trim_start().starts_with('b') { Family::C } else { Family::G };
    let family = if left.trim().is_empty() { hint(right) } else { hint(left) };
    let u = parse_word_as(left, n, family)?;
    let v = parse_word_as(right, n, u.family())?;
    Ok((u, v))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Rewrite { .. } => "rewrite",
        Command::Unrewrite { .. } => "unrewrite",
        Command::Eq { .. } => "eq",
        Command::Reduce { .. } => "reduce",
        Command::Canon { .. } => "canon",
        Command::Ball { .. } => "ball",
        Command::Selftest { .. } => "selftest",
    }
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Syntax { .. } => "syntax",
        Error::MixedFamily { .. } => "mixed_family",
        Error::IndexOutOfRange { .. } => "index_out_of_range",
        Error::DegeneratePair { .. } => "degenerate_pair",
        Error::CompactOverflow { .. } => "compact_overflow",
        Error::InvalidStrandCount { .. } => "invalid_strand_count",
        Error::InvalidPermutation(_) => "invalid_permutation",
        Error::NotApplicable(_) => "not_applicable",
        Error::SizeMismatch { .. } => "size_mismatch",
        Error::FamilyMismatch { .. } => "family_mismatch",
        Error::WrongFamily { .. } => "wrong_family",
        Error::NotReduced => "not_reduced",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::BackendDisagreement { .. } => "backend_disagreement",
    };
    let mut v = json!({ "kind": kind, "message": e.to_string() });
    match e {
        Error::Syntax { column, .. }
        | Error::MixedFamily { column }
        | Error::IndexOutOfRange { column, .. }
        | Error::DegeneratePair { column, .. } => v["column"] = json!(column),
        Error::BudgetExceeded { best: Some(best), .. } => v["best"] = json!(best.to_string()),
        _ => {}
    }
    v
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                let mut record = json!({ "status": "ok", "command": name, "payload": outcome.payload });
                if let Some(d) = outcome.diagnostics {
                    record["diagnostics"] = d;
                }
                println!("{record}");
            } else {
                for line in &outcome.text {
                    println!("{line}");
                }
            }
            ExitCode::from(outcome.exit)
        }
        Err(e) => {
            let code = match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_INPUT,
            };
            if cli.json {
                println!("{}", json!({ "status": "error", "command": name, "error": error_json(&e) }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(code)
        }
    }
}
