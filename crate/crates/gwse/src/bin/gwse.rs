//! Command-line driver: synthesis, verification, zero-sum solving, trace
//! inspection, and Graphviz export over the JSON game format.
//!
//! Exit codes are a total function of the result kind, so scripts never have
//! to parse text to learn a verdict:
//!
//! * `0` — success (profile found, verification passed, report produced);
//! * `1` — a legitimate negative verdict (no profile exists, verification
//!   failed);
//! * `2` — unusable input: I/O failures, malformed documents, invalid games,
//!   violated preconditions;
//! * `3` — the verifier refused the instance because an enumeration bound
//!   was exceeded; the message names the bound.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gwse::dot::export_dot;
use gwse::engine::{coalition_game, o_compute_ge, with_environment, Outcome};
use gwse::error::{Error, Result};
use gwse::game::{parse_game, Game, Player};
use gwse::oracle::{verify_gwse, GwseReport, OracleBounds};
use gwse::solver::{solve_zielonka, TwoPlayerView};
use gwse::templates::AssumptionProfile;

#[derive(Parser)]
#[command(
    name = "gwse",
    version,
    about = "Synthesize and verify most general winning secure equilibria \
             for k-player parity games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a per-player contract profile for the game.
    Synth(CommonArgs),
    /// Verify a contract profile against the game with the brute-force
    /// oracle: generality, realizability, and security.
    Verify {
        #[command(flatten)]
        args: CommonArgs,
        /// Profile document: the output of `synth`, or a bare JSON array of
        /// per-player templates.
        profile: PathBuf,
    },
    /// Report each player's zero-sum winning region for its bare objective.
    Solve(CommonArgs),
    /// Run synthesis and report the full iteration history.
    Trace(CommonArgs),
    /// Render the game (and optionally a profile's templates) as Graphviz.
    #[command(name = "export-dot")]
    ExportDot {
        #[command(flatten)]
        args: CommonArgs,
        /// Optional profile document; its template edges are styled.
        profile: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Game description (JSON).
    #[arg(short, long)]
    input: PathBuf,

    /// Write the result here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,

    /// Keep only these players' objectives; everyone else's becomes
    /// trivially true.
    #[arg(long, value_delimiter = ',', value_name = "p1,p2")]
    coalition: Option<Vec<u32>>,

    /// Reassign these vertices to a fresh environment player with a
    /// trivially true objective.
    #[arg(long, value_delimiter = ',', value_name = "v,w")]
    env: Option<Vec<String>>,

    /// Strategy memory for the verifier's enumerations.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    bound: u32,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Machine-readable JSON documents.
    Json,
    /// Compact human-readable summaries.
    Text,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("gwse: {e}");
            match e {
                Error::Refused(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Synth(args) => run_synth(&args),
        Command::Verify { args, profile } => run_verify(&args, &profile),
        Command::Solve(args) => run_solve(&args),
        Command::Trace(args) => run_trace(&args),
        Command::ExportDot { args, profile } => run_export_dot(&args, profile.as_deref()),
    }
}

/// Loads the game and applies the shared transformations: environment
/// reassignment first (it appends a player), then coalition trivialization.
fn load_game(args: &CommonArgs) -> Result<Game> {
    let text = fs::read_to_string(&args.input)?;
    let mut game = parse_game(&text)?;
    if let Some(env_names) = &args.env {
        let vertices = env_names
            .iter()
            .map(|name| {
                game.vertex(name)
                    .ok_or_else(|| Error::contract(format!("unknown vertex '{name}' in --env")))
            })
            .collect::<Result<Vec<_>>>()?;
        game = with_environment(&game, &vertices)?;
    }
    if let Some(numbers) = &args.coalition {
        let members: BTreeSet<Player> = numbers.iter().map(|&n| Player::new(n)).collect();
        game = coalition_game(&game, &members)?;
    }
    Ok(game)
}

/// Reads a profile document: either `synth` output (templates under a
/// `templates` key) or a bare JSON array of templates.
fn load_profile(game: &Game, path: &Path) -> Result<AssumptionProfile> {
    let text = fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)?;
    let templates = match &doc {
        Value::Array(_) => &doc,
        Value::Object(map) => map
            .get("templates")
            .ok_or_else(|| Error::contract("profile document has no 'templates' field"))?,
        _ => return Err(Error::contract("profile document must be an object or an array")),
    };
    AssumptionProfile::from_doc(game, templates)
}

fn emit(args: &CommonArgs, text: &str) -> Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &args.output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_doc(args: &CommonArgs, doc: &Value) -> Result<()> {
    emit(args, &serde_json::to_string_pretty(doc).expect("report serialization cannot fail"))
}

fn run_synth(args: &CommonArgs) -> Result<ExitCode> {
    let game = load_game(args)?;
    let (outcome, _) = o_compute_ge(&game)?;
    match outcome {
        Outcome::Profile(profile) => {
            match args.format {
                Format::Json => emit_doc(args, &profile.to_doc(&game))?,
                Format::Text => {
                    let mut lines = Vec::new();
                    for t in profile.assumptions().templates() {
                        lines.push(format!("{}: {}", t.player(), t.to_ltl_string(&game)));
                    }
                    emit(args, &lines.join("\n"))?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Outcome::Unrealizable(reason) => {
            match args.format {
                Format::Json => {
                    emit_doc(args, &json!({ "result": "false", "reason": reason.to_string() }))?
                }
                Format::Text => emit(args, &format!("no profile exists: {reason}"))?,
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn run_verify(args: &CommonArgs, profile_path: &Path) -> Result<ExitCode> {
    let game = load_game(args)?;
    let assumptions = load_profile(&game, profile_path)?;
    let bounds = OracleBounds::default().with_memory(args.bound);
    let report = verify_gwse(&game, &assumptions, &bounds)?;
    match args.format {
        Format::Json => emit_doc(args, &report.to_doc(&game))?,
        Format::Text => emit(args, &verify_summary(&game, &report))?,
    }
    Ok(if report.passes() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn verify_summary(game: &Game, report: &GwseReport) -> String {
    let mut lines = Vec::new();
    lines.push(format!("general: {}", if report.generality.equivalent { "yes" } else { "no" }));
    if let Some(play) = &report.generality.only_first {
        lines.push(format!("  admitted by contracts only: {}", play.display(game)));
    }
    if let Some(play) = &report.generality.only_second {
        lines.push(format!("  admitted by objectives only: {}", play.display(game)));
    }
    let realizable: Vec<String> = game
        .players()
        .zip(&report.realizable)
        .map(|(p, &ok)| format!("{p} {}", if ok { "yes" } else { "no" }))
        .collect();
    lines.push(format!("realizable: {}", realizable.join(", ")));
    lines.push(format!("secure: {}", if report.secure { "yes" } else { "no" }));
    if let Some(violation) = &report.security_violation {
        use gwse::oracle::WseVerdict;
        match &violation.verdict {
            WseVerdict::Holds => {}
            WseVerdict::NotWinning { player, play } => lines.push(format!(
                "  winners' induced play fails {player}: {}",
                play.display(game)
            )),
            WseVerdict::Insecure { deviator, harmed, play } => lines.push(format!(
                "  {deviator} can harm {harmed} at no cost: {}",
                play.display(game)
            )),
        }
    }
    lines.push(format!(
        "verdict: {} (memory {}, {} winner combinations checked)",
        if report.passes() { "pass" } else { "fail" },
        report.memory,
        report.profiles_checked
    ));
    lines.join("\n")
}

fn run_solve(args: &CommonArgs) -> Result<ExitCode> {
    let game = load_game(args)?;
    let mut regions = serde_json::Map::new();
    let mut lines = Vec::new();
    for p in game.players() {
        let view = TwoPlayerView::of_game(&game, game.spec(p), p);
        let solved = solve_zielonka(&view)?;
        let names: Vec<&str> = game
            .vertices()
            .filter(|v| solved.win_protagonist.contains(v.0))
            .map(|v| game.name(v))
            .collect();
        lines.push(format!("{p} wins from: {}", if names.is_empty() {
            "(nowhere)".to_string()
        } else {
            names.join(" ")
        }));
        regions.insert(p.number().to_string(), json!(names));
    }
    match args.format {
        Format::Json => emit_doc(args, &Value::Object(regions))?,
        Format::Text => emit(args, &lines.join("\n"))?,
    }
    Ok(ExitCode::SUCCESS)
}

fn run_trace(args: &CommonArgs) -> Result<ExitCode> {
    let game = load_game(args)?;
    let (outcome, trace) = o_compute_ge(&game)?;
    match args.format {
        Format::Json => emit_doc(args, &trace.to_doc(&game, &outcome))?,
        Format::Text => {
            let mut lines = Vec::new();
            for (i, record) in trace.iterations.iter().enumerate() {
                lines.push(format!("iteration {}:", i + 1));
                for t in record.assumptions.templates() {
                    lines.push(format!("  {}: {}", t.player(), t.to_ltl_string(&game)));
                }
                let verdicts: Vec<String> = game
                    .players()
                    .zip(&record.winning)
                    .map(|(p, &w)| format!("{p} {}", if w { "wins" } else { "loses" }))
                    .collect();
                lines.push(format!("  contract checks: {}", verdicts.join(", ")));
            }
            match &outcome {
                Outcome::Profile(_) => lines.push("result: profile".to_string()),
                Outcome::Unrealizable(reason) => lines.push(format!("result: false ({reason})")),
            }
            emit(args, &lines.join("\n"))?;
        }
    }
    Ok(match outcome {
        Outcome::Profile(_) => ExitCode::SUCCESS,
        Outcome::Unrealizable(_) => ExitCode::from(1),
    })
}

fn run_export_dot(args: &CommonArgs, profile_path: Option<&Path>) -> Result<ExitCode> {
    let game = load_game(args)?;
    let assumptions = profile_path.map(|path| load_profile(&game, path)).transpose()?;
    emit(args, &export_dot(&game, assumptions.as_ref()))?;
    Ok(ExitCode::SUCCESS)
}
