//! Finite-memory strategies.
//!
//! A [`FiniteMemoryStrategy`] for a player is a Moore-style machine: a
//! finite set of memory states, a move table that picks an outgoing edge for
//! every (memory, owned vertex) pair, and an update table that advances the
//! memory on every edge taken in the play (anyone's edge, not just the
//! player's own — reacting to other players' moves is the whole point of
//! memory). Memoryless strategies are the one-state special case.
//!
//! # Example
//!
//! ```
#![doc = include_str!("../doc/snippets/strategies.rs")]
//! ```

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{EdgeId, Game, Player, VertexId};

/// A deterministic finite-memory strategy for one player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMemoryStrategy {
    player: Player,
    memory_size: u32,
    initial: u32,
    /// Chosen edge per memory state and vertex; `Some` exactly on the
    /// player's own vertices.
    moves: Vec<Vec<Option<EdgeId>>>,
    /// Next memory state per memory state and edge taken.
    updates: Vec<Vec<u32>>,
}

impl FiniteMemoryStrategy {
    /// Builds and validates a strategy. The move table must choose an
    /// outgoing edge of the right source for every (memory, owned vertex)
    /// pair and nothing elsewhere; updates must stay within range.
    pub fn new(
        game: &Game,
        player: Player,
        initial: u32,
        moves: Vec<Vec<Option<EdgeId>>>,
        updates: Vec<Vec<u32>>,
    ) -> Result<Self> {
        let memory_size = moves.len() as u32;
        if memory_size == 0 {
            return Err(Error::contract("strategy needs at least one memory state"));
        }
        if updates.len() != moves.len() {
            return Err(Error::contract("strategy move and update tables disagree on memory size"));
        }
        if initial >= memory_size {
            return Err(Error::contract("initial memory state out of range"));
        }
        for row in &moves {
            if row.len() != game.vertex_count() {
                return Err(Error::contract("strategy move row does not cover the vertices"));
            }
            for v in game.vertices() {
                match row[v.index()] {
                    Some(e) => {
                        if game.owner(v) != player {
                            return Err(Error::contract(format!(
                                "strategy for {player} moves at foreign vertex {}",
                                game.name(v)
                            )));
                        }
                        if e.index() >= game.edge_count() || game.source(e) != v {
                            return Err(Error::contract(format!(
                                "strategy chooses an edge that does not leave {}",
                                game.name(v)
                            )));
                        }
                    }
                    None => {
                        if game.owner(v) == player {
                            return Err(Error::contract(format!(
                                "strategy for {player} is silent at its vertex {}",
                                game.name(v)
                            )));
                        }
                    }
                }
            }
        }
        for row in &updates {
            if row.len() != game.edge_count() {
                return Err(Error::contract("strategy update row does not cover the edges"));
            }
            if row.iter().any(|&m| m >= memory_size) {
                return Err(Error::contract("strategy update leaves the memory range"));
            }
        }
        Ok(FiniteMemoryStrategy { player, memory_size, initial, moves, updates })
    }

    /// A memoryless strategy from one chosen edge per owned vertex.
    pub fn memoryless(
        game: &Game,
        player: Player,
        moves: Vec<Option<EdgeId>>,
    ) -> Result<Self> {
        let updates = vec![vec![0; game.edge_count()]];
        FiniteMemoryStrategy::new(game, player, 0, vec![moves], updates)
    }

    /// The player the strategy moves for.
    pub fn player(&self) -> Player {
        self.player
    }

    /// Number of memory states.
    pub fn memory_size(&self) -> u32 {
        self.memory_size
    }

    /// The initial memory state.
    pub fn initial_memory(&self) -> u32 {
        self.initial
    }

    /// The edge chosen at `vertex` in memory state `memory`; `None` on
    /// foreign vertices.
    pub fn choice(&self, memory: u32, vertex: VertexId) -> Option<EdgeId> {
        self.moves[memory as usize][vertex.index()]
    }

    /// The memory state after observing `edge` in state `memory`.
    pub fn update(&self, memory: u32, edge: EdgeId) -> u32 {
        self.updates[memory as usize][edge.index()]
    }

    /// Whether the strategy ever uses more than its initial state.
    pub fn is_memoryless(&self) -> bool {
        self.memory_size == 1
    }

    /// Renders the strategy as a JSON document: one move object per memory
    /// state mapping owned vertex names to chosen successor names, and one
    /// update object per memory state mapping `"u->v"` edge labels to the
    /// next state, with identity updates omitted.
    pub fn to_doc(&self, game: &Game) -> Value {
        let moves: Vec<Value> = self
            .moves
            .iter()
            .map(|row| {
                let mut entries = BTreeMap::new();
                for v in game.vertices() {
                    if let Some(e) = row[v.index()] {
                        entries.insert(
                            game.name(v).to_string(),
                            Value::String(game.name(game.target(e)).to_string()),
                        );
                    }
                }
                json!(entries)
            })
            .collect();
        let updates: Vec<Value> = self
            .updates
            .iter()
            .enumerate()
            .map(|(m, row)| {
                let mut entries = BTreeMap::new();
                for e in game.edges() {
                    let next = row[e.index()];
                    if next != m as u32 {
                        let (u, v) = game.endpoints(e);
                        entries.insert(
                            format!("{}->{}", game.name(u), game.name(v)),
                            Value::Number(next.into()),
                        );
                    }
                }
                json!(entries)
            })
            .collect();
        json!({
            "player": self.player.number(),
            "memory": self.memory_size,
            "initial": self.initial,
            "moves": moves,
            "updates": updates,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_vertex_game() -> Game {
        Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2)],
            &[("a", "b"), ("a", "a"), ("b", "a")],
            &[vec![1, 2], vec![1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn memoryless_strategy_validates_totality() {
        let game = two_vertex_game();
        let e_ab = game.edge_between(game.vertex("a").unwrap(), game.vertex("b").unwrap()).unwrap();
        let s = FiniteMemoryStrategy::memoryless(&game, Player::new(1), vec![Some(e_ab), None])
            .unwrap();
        assert!(s.is_memoryless());
        assert_eq!(s.choice(0, game.vertex("a").unwrap()), Some(e_ab));
        assert_eq!(s.choice(0, game.vertex("b").unwrap()), None);

        // Silent at the owned vertex: rejected.
        assert!(FiniteMemoryStrategy::memoryless(&game, Player::new(1), vec![None, None]).is_err());
        // Moving at a foreign vertex: rejected.
        let e_ba = game.edge_between(game.vertex("b").unwrap(), game.vertex("a").unwrap()).unwrap();
        assert!(FiniteMemoryStrategy::memoryless(
            &game,
            Player::new(1),
            vec![Some(e_ab), Some(e_ba)]
        )
        .is_err());
        // Choosing an edge with the wrong source: rejected.
        assert!(FiniteMemoryStrategy::memoryless(&game, Player::new(1), vec![Some(e_ba), None])
            .is_err());
    }

    #[test]
    fn memory_updates_advance_on_any_edge() {
        let game = two_vertex_game();
        let e_ab = game.edge_between(game.vertex("a").unwrap(), game.vertex("b").unwrap()).unwrap();
        let e_aa = game.edge_between(game.vertex("a").unwrap(), game.vertex("a").unwrap()).unwrap();
        // Two states: switch to state 1 when e_ab is taken, then stall on e_aa.
        let s = FiniteMemoryStrategy::new(
            &game,
            Player::new(1),
            0,
            vec![vec![Some(e_ab), None], vec![Some(e_aa), None]],
            vec![vec![1, 0, 0], vec![1, 1, 1]],
        )
        .unwrap();
        assert_eq!(s.memory_size(), 2);
        assert_eq!(s.update(0, e_ab), 1);
        assert_eq!(s.update(0, e_aa), 0);
        assert_eq!(s.choice(1, game.vertex("a").unwrap()), Some(e_aa));
    }

    #[test]
    fn json_rendering_is_sparse_and_named() {
        let game = two_vertex_game();
        let e_ab = game.edge_between(game.vertex("a").unwrap(), game.vertex("b").unwrap()).unwrap();
        let e_aa = game.edge_between(game.vertex("a").unwrap(), game.vertex("a").unwrap()).unwrap();
        let s = FiniteMemoryStrategy::new(
            &game,
            Player::new(1),
            0,
            vec![vec![Some(e_ab), None], vec![Some(e_aa), None]],
            vec![vec![1, 0, 0], vec![1, 1, 1]],
        )
        .unwrap();
        let doc = s.to_doc(&game);
        assert_eq!(doc["player"], 1);
        assert_eq!(doc["memory"], 2);
        assert_eq!(doc["moves"][0]["a"], "b");
        assert_eq!(doc["moves"][1]["a"], "a");
        // State 0 switches only on a->b; state 1 never leaves itself.
        assert_eq!(doc["updates"][0], json!({"a->b": 1}));
        assert_eq!(doc["updates"][1], json!({}));
    }
}
