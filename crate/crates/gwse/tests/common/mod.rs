//! Shared fixtures and generators for the integration suites.
//!
//! Two hand-written games anchor the suites: `mutual-visit`, where each
//! player must see its home vertex infinitely often, and `settle`, where
//! both players want the play to come to rest in a private region. Around
//! them, a seeded generator produces small random games (2–3 players, at
//! most 6 vertices, 10 edges, priorities up to 3) on which the synthesis
//! engine and the brute-force oracle can be played against each other.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gwse::game::{parse_game, EdgeId, Game, Player, VertexId};
use gwse::templates::{AssumptionProfile, UcaTemplate};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Two players racing to visit their own home vertex infinitely often.
pub fn mutual_visit() -> Game {
    parse_game(include_str!("../data/mutual-visit.json")).expect("fixture parses")
}

/// Two players that each want the play to settle in a private region.
pub fn settle() -> Game {
    parse_game(include_str!("../data/settle.json")).expect("fixture parses")
}

/// The edge between two named vertices; panics when absent.
pub fn edge(game: &Game, from: &str, to: &str) -> EdgeId {
    let u = game.vertex(from).unwrap_or_else(|| panic!("no vertex {from}"));
    let v = game.vertex(to).unwrap_or_else(|| panic!("no vertex {to}"));
    game.edge_between(u, v).unwrap_or_else(|| panic!("no edge ({from},{to})"))
}

/// A set of edges given by vertex-name pairs.
pub fn edge_set(game: &Game, pairs: &[(&str, &str)]) -> BTreeSet<EdgeId> {
    pairs.iter().map(|&(u, v)| edge(game, u, v)).collect()
}

/// A named vertex; panics when absent.
pub fn vertex(game: &Game, name: &str) -> VertexId {
    game.vertex(name).unwrap_or_else(|| panic!("no vertex {name}"))
}

/// One random game: 2–3 players, 2–6 vertices, at most 10 edges, every
/// vertex with at least one successor, priorities in 0..=3.
pub fn random_game(rng: &mut ChaCha8Rng) -> Game {
    let players = rng.gen_range(2..=3u32);
    let n = rng.gen_range(2..=6usize);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let owners: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=players)).collect();

    // One outgoing edge per vertex keeps the game deadlock-free; the rest
    // are drawn without replacement from the remaining vertex pairs.
    let mut chosen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for u in 0..n {
        chosen.insert((u, rng.gen_range(0..n)));
    }
    let mut pool: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|p| !chosen.contains(p))
        .collect();
    pool.shuffle(rng);
    let budget = 10usize.saturating_sub(chosen.len());
    let extra = rng.gen_range(0..=budget.min(pool.len()));
    chosen.extend(pool.into_iter().take(extra));

    let vertices: Vec<(&str, u32)> =
        names.iter().map(String::as_str).zip(owners.iter().copied()).collect();
    let edges: Vec<(&str, &str)> =
        chosen.iter().map(|&(u, v)| (names[u].as_str(), names[v].as_str())).collect();
    let specs: Vec<Vec<u32>> =
        (0..players).map(|_| (0..n).map(|_| rng.gen_range(0..=3u32)).collect()).collect();
    let init = names[rng.gen_range(0..n)].as_str();
    Game::from_parts(players, init, &vertices, &edges, &specs).expect("generated game is valid")
}

/// A deterministic corpus of random games.
pub fn corpus(seed: u64, count: usize) -> Vec<Game> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_game(&mut rng)).collect()
}

/// A random template for one player: each of the player's edges becomes
/// unsafe or co-live with small probability.
pub fn random_template(rng: &mut ChaCha8Rng, game: &Game, player: Player) -> UcaTemplate {
    let mut unsafe_edges = Vec::new();
    let mut colive_edges = Vec::new();
    for e in game.edges_of(player) {
        match rng.gen_range(0..100) {
            0..=14 => unsafe_edges.push(e),
            15..=29 => colive_edges.push(e),
            _ => {}
        }
    }
    UcaTemplate::new(game, player, unsafe_edges, colive_edges).expect("edges belong to the player")
}

/// A random assumption profile: one random template per player.
pub fn random_profile(rng: &mut ChaCha8Rng, game: &Game) -> AssumptionProfile {
    let templates = game.players().map(|p| random_template(rng, game, p)).collect();
    AssumptionProfile::new(game, templates).expect("one template per player")
}
