//! Black-box tests for the `gwse` binary: every subcommand, both output
//! formats, the game transformations, and the full exit-code contract
//! (0 = positive verdict, 1 = negative verdict, 2 = unusable input,
//! 3 = refused instance).

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

const SETTLE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/settle.json");
const MUTUAL_VISIT: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/mutual-visit.json");

fn gwse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gwse")).args(args).output().expect("binary runs")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("no signal")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&output.stdout))
    })
}

/// A per-test scratch path under the system temp directory.
fn scratch(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("gwse-cli-{}-{}", tag, std::process::id()))
}

#[test]
fn synth_reports_the_settle_templates() {
    let output = gwse(&["synth", "--input", SETTLE]);
    assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let doc = stdout_json(&output);
    assert_eq!(doc["players"], json!(2));
    assert_eq!(doc["templates"][0]["player"], json!(1));
    assert_eq!(doc["templates"][0]["unsafe"], json!([["v1", "v2"], ["v3", "v4"]]));
    assert_eq!(doc["templates"][0]["colive"], json!([["v1", "v0"]]));
    assert_eq!(doc["templates"][1]["player"], json!(2));
    assert_eq!(doc["templates"][1]["unsafe"], json!([]));
    assert_eq!(doc["templates"][1]["colive"], json!([["v0", "v0"], ["v0", "v3"]]));
    assert_eq!(doc["strategies"].as_array().map(Vec::len), Some(2));
}

#[test]
fn synth_writes_the_profile_to_a_file() {
    let path = scratch("synth-output");
    let output =
        gwse(&["synth", "--input", SETTLE, "--output", path.to_str().unwrap()]);
    assert_eq!(code(&output), 0);
    assert!(output.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["templates"].as_array().map(Vec::len), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn synth_in_text_format_lists_one_contract_per_player() {
    let output = gwse(&["synth", "--input", SETTLE, "--format", "text"]);
    assert_eq!(code(&output), 0);
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.starts_with("P1: "), "unexpected text output: {text}");
    assert!(text.contains("\nP2: "));
}

#[test]
fn synth_rejects_malformed_input() {
    let path = scratch("malformed");
    std::fs::write(&path, "this is not a game").unwrap();
    let output = gwse(&["synth", "--input", path.to_str().unwrap()]);
    assert_eq!(code(&output), 2);
    assert!(String::from_utf8_lossy(&output.stderr).starts_with("gwse: "));
    std::fs::remove_file(&path).ok();
}

#[test]
fn a_missing_input_file_is_an_input_error() {
    let output = gwse(&["synth", "--input", "/nonexistent/game.json"]);
    assert_eq!(code(&output), 2);
}

#[test]
fn a_lone_coalition_cannot_secure_the_visit() {
    // With player 2's objective erased, the hub owner owes nothing and can
    // herd the play into the corner; no contract profile can save player 1.
    let output = gwse(&["synth", "--input", MUTUAL_VISIT, "--coalition", "1"]);
    assert_eq!(code(&output), 1, "{}", String::from_utf8_lossy(&output.stderr));
    let doc = stdout_json(&output);
    assert_eq!(doc["result"], json!("false"));
}

#[test]
fn the_full_coalition_is_the_identity() {
    let plain = gwse(&["synth", "--input", SETTLE]);
    let full = gwse(&["synth", "--input", SETTLE, "--coalition", "1,2"]);
    assert_eq!(code(&full), 0);
    assert_eq!(plain.stdout, full.stdout);
}

#[test]
fn reassigning_the_hub_to_the_environment_is_refused() {
    let output = gwse(&["trace", "--input", MUTUAL_VISIT, "--env", "v0"]);
    assert_eq!(code(&output), 1);
    let doc = stdout_json(&output);
    assert_eq!(doc["result"], json!("unrealizable"));
    assert!(!doc["iterations"].as_array().unwrap().is_empty());
}

#[test]
fn an_unknown_environment_vertex_is_an_input_error() {
    let output = gwse(&["synth", "--input", SETTLE, "--env", "nowhere"]);
    assert_eq!(code(&output), 2);
    assert!(String::from_utf8_lossy(&output.stderr).contains("nowhere"));
}

#[test]
fn trace_reports_the_three_settle_iterations() {
    let output = gwse(&["trace", "--input", SETTLE]);
    assert_eq!(code(&output), 0);
    let doc = stdout_json(&output);
    assert_eq!(doc["result"], json!("profile"));
    assert_eq!(doc["reason"], Value::Null);
    let iterations = doc["iterations"].as_array().unwrap();
    assert_eq!(iterations.len(), 3);
    assert_eq!(iterations[0]["winning"], json!([false, false]));
    assert_eq!(iterations[1]["winning"], json!([false, true]));
    assert_eq!(iterations[2]["winning"], json!([true, true]));
}

#[test]
fn verify_accepts_a_synthesized_profile() {
    let path = scratch("roundtrip");
    let synth = gwse(&["synth", "--input", SETTLE, "--output", path.to_str().unwrap()]);
    assert_eq!(code(&synth), 0);
    let output = gwse(&["verify", "--input", SETTLE, path.to_str().unwrap()]);
    assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let doc = stdout_json(&output);
    assert_eq!(doc["passes"], json!(true));
    assert_eq!(doc["general"], json!(true));
    assert_eq!(doc["realizable"], json!([true, true]));
    assert_eq!(doc["secure"], json!(true));
    std::fs::remove_file(&path).ok();
}

/// Removes one `[from, to]` pair from a template's edge list in a profile
/// document, panicking if it was not there.
fn drop_edge(doc: &mut Value, template: usize, key: &str, from: &str, to: &str) {
    let list = doc["templates"][template][key].as_array_mut().unwrap();
    let before = list.len();
    list.retain(|pair| pair != &json!([from, to]));
    assert_eq!(list.len() + 1, before, "edge [{from}, {to}] not present in {key}");
}

#[test]
fn verify_accepts_a_thinned_unsafe_set() {
    // Dropping (v3,v4) from player 1's unsafe set leaves a genuine
    // equilibrium: the objectives are nested, so no deviation through the
    // corner can ever help the deviator. The verifier must say so.
    let synth = gwse(&["synth", "--input", SETTLE]);
    let mut doc = stdout_json(&synth);
    drop_edge(&mut doc, 0, "unsafe", "v3", "v4");
    let path = scratch("thinned");
    std::fs::write(&path, doc.to_string()).unwrap();
    let output = gwse(&["verify", "--input", SETTLE, path.to_str().unwrap()]);
    assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    assert_eq!(stdout_json(&output)["passes"], json!(true));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_flags_a_profile_that_breaks_realizability() {
    // Without player 2's obligation to eventually stop stalling at the hub,
    // player 1 can no longer force settling; the contracts stay general but
    // player 1's is unrealizable.
    let synth = gwse(&["synth", "--input", SETTLE]);
    let mut doc = stdout_json(&synth);
    drop_edge(&mut doc, 1, "colive", "v0", "v0");
    let path = scratch("broken");
    std::fs::write(&path, doc.to_string()).unwrap();
    let output = gwse(&["verify", "--input", SETTLE, path.to_str().unwrap()]);
    assert_eq!(code(&output), 1);
    let report = stdout_json(&output);
    assert_eq!(report["passes"], json!(false));
    assert_eq!(report["general"], json!(true));
    assert_eq!(report["realizable"], json!([false, true]));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_accepts_bare_template_arrays() {
    let path = scratch("bare");
    let profile = json!([
        { "player": 1, "unsafe": [["v3", "v4"]], "colive": [] },
        { "player": 2, "unsafe": [["v2", "v4"]], "colive": [] },
    ]);
    std::fs::write(&path, profile.to_string()).unwrap();
    let output = gwse(&["verify", "--input", MUTUAL_VISIT, path.to_str().unwrap()]);
    assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    assert_eq!(stdout_json(&output)["passes"], json!(true));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_refuses_an_oversized_game() {
    // A single 18-edge cycle: any recurrence analysis must walk more edges
    // than the verifier's enumeration budget allows, so it refuses loudly
    // instead of answering by truncation.
    let n = 18;
    let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
    let game = json!({
        "players": 2,
        "init": "c0",
        "vertices": names
            .iter()
            .enumerate()
            .map(|(i, name)| json!({ "id": name, "owner": 1 + (i as u32 % 2) }))
            .collect::<Vec<_>>(),
        "edges": (0..n).map(|i| json!([names[i], names[(i + 1) % n]])).collect::<Vec<_>>(),
        "sugar": { "1": { "buchi": ["c0"] }, "2": { "buchi": ["c1"] } },
    });
    let game_path = scratch("oversized-game");
    std::fs::write(&game_path, game.to_string()).unwrap();
    let profile_path = scratch("oversized-profile");
    let profile = json!([
        { "player": 1, "unsafe": [], "colive": [] },
        { "player": 2, "unsafe": [], "colive": [] },
    ]);
    std::fs::write(&profile_path, profile.to_string()).unwrap();

    let output = gwse(&[
        "verify",
        "--input",
        game_path.to_str().unwrap(),
        profile_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&output), 3, "{}", String::from_utf8_lossy(&output.stderr));
    assert!(String::from_utf8_lossy(&output.stderr).starts_with("gwse: "));
    std::fs::remove_file(&game_path).ok();
    std::fs::remove_file(&profile_path).ok();
}

#[test]
fn a_verify_bound_of_one_still_passes_settle() {
    // Both settle contracts happen to have memoryless winners, so even the
    // smallest strategy family certifies the profile.
    let path = scratch("bound-one");
    let synth = gwse(&["synth", "--input", SETTLE, "--output", path.to_str().unwrap()]);
    assert_eq!(code(&synth), 0);
    let output =
        gwse(&["verify", "--input", SETTLE, "--bound", "1", path.to_str().unwrap()]);
    assert_eq!(code(&output), 0, "{}", String::from_utf8_lossy(&output.stderr));
    let doc = stdout_json(&output);
    assert_eq!(doc["passes"], json!(true));
    assert_eq!(doc["memory"], json!(1));
    std::fs::remove_file(&path).ok();
}

#[test]
fn solve_reports_each_players_zero_sum_region() {
    // Without contracts, neither player can force anything through the hub:
    // player 1 wins alone only next to its basin, player 2 only inside its
    // targets.
    let output = gwse(&["solve", "--input", SETTLE]);
    assert_eq!(code(&output), 0);
    let doc = stdout_json(&output);
    assert_eq!(doc, json!({ "1": ["v1", "v5"], "2": ["v4", "v5"] }));
}

#[test]
fn solve_text_format_names_the_regions() {
    let output = gwse(&["solve", "--input", SETTLE, "--format", "text"]);
    assert_eq!(code(&output), 0);
    let text = String::from_utf8_lossy(&output.stdout);
    assert!(text.contains("P1 wins from: v1 v5"), "unexpected: {text}");
    assert!(text.contains("P2 wins from: v4 v5"));
}

#[test]
fn export_dot_runs_deterministically() {
    let path = scratch("dot-profile");
    let synth = gwse(&["synth", "--input", SETTLE, "--output", path.to_str().unwrap()]);
    assert_eq!(code(&synth), 0);
    let first =
        gwse(&["export-dot", "--input", SETTLE, path.to_str().unwrap()]);
    let second =
        gwse(&["export-dot", "--input", SETTLE, path.to_str().unwrap()]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let text = String::from_utf8_lossy(&first.stdout);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("v0"));
    std::fs::remove_file(&path).ok();
}
