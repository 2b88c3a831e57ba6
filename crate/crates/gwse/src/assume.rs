//! Assumption synthesis: the weakest template obligations on one player's
//! edges under which the others can cooperatively satisfy that player's
//! objective.
//!
//! The computation has two layers:
//!
//! 1. [`build_assumption_arena`] rewrites the game from one player's
//!    perspective under the pooled obligations of the other players: their
//!    unsafe edges disappear, and each of their co-live edges is routed
//!    through a fresh relay vertex carrying a high odd priority. Taking such
//!    an edge infinitely often then spoils the parity objective by itself,
//!    which is exactly the meaning of "at most finitely often".
//! 2. [`ranked_construction`] extracts the template from the arena: outside
//!    the cooperative region `Z` no play can satisfy the objective, so edges
//!    leaving `Z` become unsafe; inside `Z`, every vertex gets its distance
//!    to the recurrent vertices, and edges that fail to decrease the
//!    distance become co-live. Plays complying with the result can always
//!    make progress to the recurrent vertices and settle there, and every
//!    play satisfying the objective already complies (its infinitely-visited
//!    vertices all lie in the recurrent set, so it takes co-live edges only
//!    finitely often and unsafe edges never).
//!
//! The extracted template therefore characterizes cooperative satisfiability
//! without ever excluding a satisfying play.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::game::{EdgeId, Game, ParitySpec, Player, VertexId};
use crate::sets::DenseSet;
use crate::solver::{cooperative_region, recurrent_vertices, TwoPlayerView};
use crate::templates::{AggregateUca, UcaTemplate};

/// The perspective arena for `player` under the pooled obligations of the
/// other players. Original vertices keep their local index; relay vertices
/// for the others' co-live edges are appended after them.
///
/// Errors if the aggregate constrains any edge `player` controls: a player's
/// own obligations are its guarantee, not an assumption it may lean on.
pub fn build_assumption_arena(
    game: &Game,
    others: &AggregateUca,
    spec: &ParitySpec,
    player: Player,
) -> Result<TwoPlayerView> {
    for &e in others.unsafe_edges().iter().chain(others.colive_edges()) {
        if game.edge_owner(e) == player {
            return Err(Error::contract(format!(
                "assumption for {player} constrains its own edge {}",
                game.display_edge(e)
            )));
        }
    }

    let n = game.vertex_count();
    let relay_priority = smallest_odd_at_least(spec.max_priority());
    let mut relay_of: BTreeMap<EdgeId, u32> = BTreeMap::new();
    for &e in others.colive_edges() {
        relay_of.insert(e, (n + relay_of.len()) as u32);
    }

    let total = n + relay_of.len();
    let mut view = TwoPlayerView {
        succ: vec![Vec::new(); total],
        edge_origin: vec![Vec::new(); total],
        priority: Vec::with_capacity(total),
        protagonist: Vec::with_capacity(total),
        vertex_origin: Vec::with_capacity(total),
    };
    for v in game.vertices() {
        view.priority.push(spec.priority(v));
        view.protagonist.push(game.owner(v) == player);
        view.vertex_origin.push(Some(v));
    }
    for _ in 0..relay_of.len() {
        view.priority.push(relay_priority);
        view.protagonist.push(false);
        view.vertex_origin.push(None);
    }

    for e in game.edges() {
        let (u, v) = game.endpoints(e);
        if game.edge_owner(e) == player {
            view.succ[u.index()].push(v.0);
            view.edge_origin[u.index()].push(Some(e));
        } else if let Some(&relay) = relay_of.get(&e) {
            view.succ[u.index()].push(relay);
            view.edge_origin[u.index()].push(Some(e));
            view.succ[relay as usize].push(v.0);
            view.edge_origin[relay as usize].push(None);
        } else if !others.unsafe_edges().contains(&e) {
            view.succ[u.index()].push(v.0);
            view.edge_origin[u.index()].push(Some(e));
        }
    }

    view.assert_consistent();
    Ok(view)
}

/// The template the ranked construction extracts from a perspective view:
/// unsafe = protagonist edges leaving the cooperative region, co-live =
/// protagonist edges inside it that fail to decrease the distance to the
/// recurrent vertices. Returns `None` when no play from `init` can satisfy
/// the objective even with everyone cooperating.
pub fn ranked_construction(
    game: &Game,
    view: &TwoPlayerView,
    init: u32,
    player: Player,
) -> Result<Option<UcaTemplate>> {
    let region = cooperative_region(view);
    if !region.contains(init) {
        return Ok(None);
    }
    let recurrent = recurrent_vertices(view);
    debug_assert!(recurrent.is_subset(&region));
    let dist = distance_to(view, &recurrent, &region);

    let mut unsafe_edges: Vec<EdgeId> = Vec::new();
    let mut colive_edges: Vec<EdgeId> = Vec::new();
    for u in 0..view.len() as u32 {
        if !view.protagonist[u as usize] {
            continue;
        }
        for (slot, &w) in view.succ[u as usize].iter().enumerate() {
            let origin = view.edge_origin[u as usize][slot]
                .ok_or_else(|| Error::contract("protagonist edge without original".to_string()))?;
            if region.contains(u) && !region.contains(w) {
                unsafe_edges.push(origin);
            } else if region.contains(u) && region.contains(w) {
                let du = dist[u as usize].expect("distances are total on the cooperative region");
                let dw = dist[w as usize].expect("distances are total on the cooperative region");
                if du > 0 && dw >= du {
                    colive_edges.push(origin);
                }
            }
        }
    }
    UcaTemplate::new(game, player, unsafe_edges, colive_edges).map(Some)
}

/// The weakest cooperative template for `player`'s objective on the plain
/// game, with no assumptions about the others. `None` when even full
/// cooperation cannot satisfy the objective from `init`.
pub fn approx_apa(
    game: &Game,
    spec: &ParitySpec,
    player: Player,
    init: VertexId,
) -> Result<Option<UcaTemplate>> {
    compute_uca(game, &AggregateUca::trivial(), spec, player, init)
}

/// The weakest cooperative template for `player`'s objective, granted the
/// pooled obligations of the other players: their unsafe edges are treated
/// as absent and their co-live edges as usable only finitely often. `None`
/// when cooperation under those assumptions cannot satisfy the objective
/// from `init`.
pub fn compute_uca(
    game: &Game,
    others: &AggregateUca,
    spec: &ParitySpec,
    player: Player,
    init: VertexId,
) -> Result<Option<UcaTemplate>> {
    let view = build_assumption_arena(game, others, spec, player)?;
    ranked_construction(game, &view, init.0, player)
}

/// Smallest odd number `≥ p`.
fn smallest_odd_at_least(p: u32) -> u32 {
    if p % 2 == 1 {
        p
    } else {
        p + 1
    }
}

/// Breadth-first distance to `target` within `alive`, following edges
/// forward (distance of a vertex = length of its shortest path into the
/// target). Vertices outside `alive` or without a path get `None`.
fn distance_to(view: &TwoPlayerView, target: &DenseSet, alive: &DenseSet) -> Vec<Option<u32>> {
    let mut dist: Vec<Option<u32>> = vec![None; view.len()];
    let mut queue = std::collections::VecDeque::new();
    for v in target.iter() {
        if alive.contains(v) {
            dist[v as usize] = Some(0);
            queue.push_back(v);
        }
    }
    // Walk backward over predecessors so each vertex settles at its shortest
    // forward distance.
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); view.len()];
    for u in alive.iter() {
        for &w in &view.succ[u as usize] {
            if alive.contains(w) {
                preds[w as usize].push(u);
            }
        }
    }
    while let Some(w) = queue.pop_front() {
        let next = dist[w as usize].unwrap() + 1;
        for &u in &preds[w as usize] {
            if dist[u as usize].is_none() {
                dist[u as usize] = Some(next);
                queue.push_back(u);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Game;

    /// A chain with an escape hatch: s → t (good self-loop, priority 0) and
    /// s → bad (odd self-loop). Protagonist owns s.
    fn chain() -> Game {
        Game::from_parts(
            2,
            "s",
            &[("s", 1), ("t", 2), ("bad", 2)],
            &[("s", "t"), ("s", "bad"), ("s", "s"), ("t", "t"), ("bad", "bad")],
            &[vec![1, 0, 1], vec![1, 1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn plain_template_blocks_escape_and_stalling() {
        let game = chain();
        let spec = game.spec(Player::new(1)).clone();
        let template =
            approx_apa(&game, &spec, Player::new(1), game.init()).unwrap().unwrap();
        let e_bad = game
            .edge_between(game.vertex("s").unwrap(), game.vertex("bad").unwrap())
            .unwrap();
        let e_stall =
            game.edge_between(game.vertex("s").unwrap(), game.vertex("s").unwrap()).unwrap();
        // Z = {s, t}; bad is unreachable from the objective's recurrent set.
        assert_eq!(template.unsafe_edges().iter().copied().collect::<Vec<_>>(), vec![e_bad]);
        // s has distance 1; its self-loop keeps distance 1 and is co-live.
        assert_eq!(template.colive_edges().iter().copied().collect::<Vec<_>>(), vec![e_stall]);
    }

    #[test]
    fn unsatisfiable_objective_yields_none() {
        let game = chain();
        // An objective with no even priority anywhere is unsatisfiable.
        let spec = ParitySpec::new(vec![1, 1, 1]);
        assert!(approx_apa(&game, &spec, Player::new(1), game.init()).unwrap().is_none());
    }

    #[test]
    fn arena_rejects_own_edge_assumptions() {
        let game = chain();
        let e_stall =
            game.vertex("s").and_then(|s| game.edge_between(s, s)).unwrap();
        let others = AggregateUca::new([e_stall], []);
        let spec = game.spec(Player::new(1)).clone();
        let err = compute_uca(&game, &others, &spec, Player::new(1), game.init()).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn others_unsafe_edges_disappear_from_the_arena() {
        // Protagonist P1 owns only "t"; P2 owns "s" with two edges, one of
        // which the aggregate forbids. The arena must drop it.
        let game = Game::from_parts(
            2,
            "s",
            &[("s", 2), ("t", 1)],
            &[("s", "t"), ("s", "s"), ("t", "t")],
            &[vec![1, 0], vec![1, 1]],
        )
        .unwrap();
        let e_ss = game.edge_between(game.vertex("s").unwrap(), game.vertex("s").unwrap()).unwrap();
        let others = AggregateUca::new([e_ss], []);
        let spec = game.spec(Player::new(1)).clone();
        let view = build_assumption_arena(&game, &others, &spec, Player::new(1)).unwrap();
        assert_eq!(view.len(), 2);
        assert_eq!(view.succ[0], vec![1]);
    }

    #[test]
    fn others_colive_edges_route_through_odd_relays() {
        let game = Game::from_parts(
            2,
            "s",
            &[("s", 2), ("t", 1)],
            &[("s", "t"), ("s", "s"), ("t", "t")],
            &[vec![1, 0], vec![1, 1]],
        )
        .unwrap();
        let e_ss = game.edge_between(game.vertex("s").unwrap(), game.vertex("s").unwrap()).unwrap();
        let others = AggregateUca::new([], [e_ss]);
        let spec = game.spec(Player::new(1)).clone();
        let view = build_assumption_arena(&game, &others, &spec, Player::new(1)).unwrap();
        // One relay vertex, adversary-owned, odd priority above the maximum.
        assert_eq!(view.len(), 3);
        assert_eq!(view.priority[2], 1);
        assert!(!view.protagonist[2]);
        assert_eq!(view.vertex_origin[2], None);
        // s now reaches itself only through the relay.
        assert_eq!(view.succ[0], vec![1, 2]);
        assert_eq!(view.succ[2], vec![0]);
        // The relay hop keeps the original edge identity on its first leg.
        assert_eq!(view.edge_origin[0][1], Some(e_ss));
        assert_eq!(view.edge_origin[2][0], None);
    }
}
