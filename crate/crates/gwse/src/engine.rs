//! The synthesis loop: per-player contracts that together form a winning,
//! secure, and maximally general profile.
//!
//! Each player `i` receives the contract specification
//! `ψ_i ∧ (ψ_others ⇒ φ_i)`: keep your own template obligations, and satisfy
//! your objective whenever everyone else keeps theirs. The loop starts from
//! empty templates and alternates two moves until every player can win its
//! contract from the initial vertex:
//!
//! 1. *check* — for each player, solve the zero-sum game for its contract
//!    ([`compute_win`]);
//! 2. *refine* — for each player, recompute the weakest cooperative template
//!    for its objective under the others' current obligations
//!    ([`crate::assume::compute_uca`]) and conjoin it onto the player's own
//!    template.
//!
//! Refinement is simultaneous: every player's template is recomputed from
//! the profile as it stood at the start of the iteration. Templates only
//! grow, so the loop either reaches a profile winning for everyone, aborts
//! because some objective became cooperatively unsatisfiable, or stalls with
//! nothing left to add — the two failure cases mean no profile of this shape
//! exists. Growth bounds the loop by twice the edge count.
//!
//! # Example
//!
//! ```
#![doc = include_str!("../doc/snippets/synthesis.rs")]
//! ```

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::assume::compute_uca;
use crate::error::{Error, Result};
use crate::game::{EdgeId, Game, ParitySpec, Player, VertexId};
use crate::sets::DenseSet;
use crate::solver::{attractor_within, solve_zielonka_within, SolveResult, TwoPlayerView};
use crate::strategy::FiniteMemoryStrategy;
use crate::templates::{AggregateUca, AssumptionProfile, UcaTemplate};

/// A synthesized contract profile: the per-player templates plus one winning
/// strategy per player for its contract specification.
#[derive(Debug, Clone)]
pub struct SpecProfile {
    assumptions: AssumptionProfile,
    strategies: Vec<FiniteMemoryStrategy>,
}

impl SpecProfile {
    /// The template profile: player `i`'s guarantee `ψ_i`, which doubles as
    /// an assumption for everyone else.
    pub fn assumptions(&self) -> &AssumptionProfile {
        &self.assumptions
    }

    /// One winning strategy per player, in player order. The strategy for
    /// player `i` wins `ψ_i ∧ (ψ_others ⇒ φ_i)` from the initial vertex.
    pub fn strategies(&self) -> &[FiniteMemoryStrategy] {
        &self.strategies
    }

    /// Renders the profile as a JSON document with the templates, their
    /// LTL-style readings, and the strategies.
    pub fn to_doc(&self, game: &Game) -> Value {
        let templates: Vec<Value> =
            self.assumptions.templates().iter().map(|t| t.to_doc(game)).collect();
        let mut ltl = BTreeMap::new();
        for t in self.assumptions.templates() {
            ltl.insert(t.player().number().to_string(), t.to_ltl_string(game));
        }
        let strategies: Vec<Value> = self.strategies.iter().map(|s| s.to_doc(game)).collect();
        json!({
            "players": game.player_count(),
            "templates": templates,
            "ltl": ltl,
            "strategies": strategies,
        })
    }
}

/// Why synthesis concluded that no profile of the template shape exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnrealizableReason {
    /// Some objective cannot be satisfied even with full cooperation under
    /// the others' current obligations.
    CooperativelyUnsatisfiable(Player),
    /// A full refinement round added nothing, yet someone still loses.
    Stagnated,
}

impl std::fmt::Display for UnrealizableReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnrealizableReason::CooperativelyUnsatisfiable(p) => {
                write!(f, "objective of {p} is cooperatively unsatisfiable")
            }
            UnrealizableReason::Stagnated => write!(f, "templates stagnated short of a solution"),
        }
    }
}

/// The result of synthesis: a profile, or evidence that none exists.
#[derive(Debug, Clone)]
pub enum Outcome {
    /// A profile winning for every player.
    Profile(SpecProfile),
    /// No profile of the template shape exists.
    Unrealizable(UnrealizableReason),
}

/// One iteration of the loop: the templates at its start and the per-player
/// verdicts of the contract check under them.
#[derive(Debug, Clone)]
pub struct IterationRecord {
    /// Templates at the start of the iteration.
    pub assumptions: AssumptionProfile,
    /// Whether each player wins its contract from the initial vertex.
    pub winning: Vec<bool>,
}

/// The full iteration history of a synthesis run.
#[derive(Debug, Clone, Default)]
pub struct SynthesisTrace {
    /// One record per iteration, in order.
    pub iterations: Vec<IterationRecord>,
}

impl SynthesisTrace {
    /// Renders the trace plus the final outcome as a JSON document.
    pub fn to_doc(&self, game: &Game, outcome: &Outcome) -> Value {
        let iterations: Vec<Value> = self
            .iterations
            .iter()
            .map(|r| {
                let templates: Vec<Value> =
                    r.assumptions.templates().iter().map(|t| t.to_doc(game)).collect();
                json!({ "templates": templates, "winning": r.winning })
            })
            .collect();
        let (result, reason) = match outcome {
            Outcome::Profile(_) => ("profile", Value::Null),
            Outcome::Unrealizable(r) => ("unrealizable", Value::String(r.to_string())),
        };
        json!({ "iterations": iterations, "result": result, "reason": reason })
    }
}

/// Runs the synthesis loop on a game. Returns the outcome together with the
/// complete iteration trace.
pub fn o_compute_ge(game: &Game) -> Result<(Outcome, SynthesisTrace)> {
    let mut assumptions = AssumptionProfile::trivial(game);
    let mut trace = SynthesisTrace::default();
    // Each non-final iteration adds at least one obligation, and obligations
    // are edges tagged one of two ways, so the loop is hard-bounded.
    let bound = 2 * game.edge_count() * game.player_count() as usize + 2;

    loop {
        assert!(trace.iterations.len() <= bound, "synthesis exceeded its iteration bound");

        let mut winning = Vec::with_capacity(game.player_count() as usize);
        let mut checks = Vec::with_capacity(game.player_count() as usize);
        for player in game.players() {
            let others = assumptions.assumption_of_others(player);
            let check =
                compute_win(game, assumptions.template(player), &others, game.spec(player), player)?;
            winning.push(check.region.contains(game.init().0));
            checks.push(check);
        }
        trace
            .iterations
            .push(IterationRecord { assumptions: assumptions.clone(), winning: winning.clone() });

        if winning.iter().all(|&w| w) {
            let mut strategies = Vec::with_capacity(checks.len());
            for (player, check) in game.players().zip(&checks) {
                strategies.push(extract_strategy(game, player, &assumptions, check)?);
            }
            let profile = SpecProfile { assumptions, strategies };
            return Ok((Outcome::Profile(profile), trace));
        }

        // Simultaneous refinement from the iteration-start profile.
        let mut next = Vec::with_capacity(game.player_count() as usize);
        for player in game.players() {
            let others = assumptions.assumption_of_others(player);
            let uca = match compute_uca(game, &others, game.spec(player), player, game.init())? {
                Some(uca) => uca,
                None => {
                    let outcome = Outcome::Unrealizable(
                        UnrealizableReason::CooperativelyUnsatisfiable(player),
                    );
                    return Ok((outcome, trace));
                }
            };
            next.push(assumptions.template(player).conjoin(game, &uca)?);
        }
        let refined = AssumptionProfile::new(game, next)?;
        if refined == assumptions {
            return Ok((Outcome::Unrealizable(UnrealizableReason::Stagnated), trace));
        }
        debug_assert!(
            obligation_weight(&refined) > obligation_weight(&assumptions),
            "templates must grow monotonically"
        );
        debug_assert!(game
            .players()
            .all(|p| assumptions.template(p).is_subsumed_by(refined.template(p))));
        assumptions = refined;
    }
}

/// Total obligation weight of a profile: co-live edges count once, unsafe
/// edges twice. Any refinement strictly increases the weight — a fresh
/// marking adds its edge's weight, and upgrading a co-live edge to unsafe
/// trades one for two — which is what bounds the iteration count.
fn obligation_weight(profile: &AssumptionProfile) -> usize {
    profile
        .templates()
        .iter()
        .map(|t| 2 * t.unsafe_edges().len() + t.colive_edges().len())
        .sum()
}

/// The zero-sum arena for one player's contract `ψ_own ∧ (ψ_others ⇒ φ)`.
///
/// The arena runs two copies of the game. Plays start in copy 1, where the
/// others' obligations are monitored: their unsafe edges jump to copy 2
/// (the assumption is broken, the implication holds vacuously, and copy 2
/// carries priority 0 everywhere), and their co-live edges pass through
/// relays with a high even priority (taking them forever satisfies the
/// player vacuously too). The player's own obligations bind in both copies:
/// own unsafe edges are absent outright, and own co-live edges pass through
/// relays with a high odd priority (taking them forever loses).
pub struct WinArena {
    /// The assembled two-player view; the contract player is the protagonist.
    pub view: TwoPlayerView,
    vertex_count: usize,
    copy2_base: u32,
}

impl WinArena {
    /// Builds the arena. The aggregate must not constrain the player's own
    /// edges, and the own template must belong to the player.
    pub fn build(
        game: &Game,
        own: &UcaTemplate,
        others: &AggregateUca,
        spec: &ParitySpec,
        player: Player,
    ) -> Result<Self> {
        if own.player() != player {
            return Err(Error::contract(format!(
                "contract arena for {player} got a template for {}",
                own.player()
            )));
        }
        for &e in others.unsafe_edges().iter().chain(others.colive_edges()) {
            if game.edge_owner(e) == player {
                return Err(Error::contract(format!(
                    "contract arena for {player} assumes about its own edge {}",
                    game.display_edge(e)
                )));
            }
        }

        let n = game.vertex_count();
        let even_pad = smallest_even_at_least(spec.max_priority());
        let odd_pad = even_pad + 1;

        let mut relays_copy1: BTreeMap<EdgeId, u32> = BTreeMap::new();
        for e in game.edges() {
            if own.colive_edges().contains(&e)
                || others.unsafe_edges().contains(&e)
                || others.colive_edges().contains(&e)
            {
                relays_copy1.insert(e, (n + relays_copy1.len()) as u32);
            }
        }
        let copy2_base = (n + relays_copy1.len()) as u32;
        let mut relays_copy2: BTreeMap<EdgeId, u32> = BTreeMap::new();
        for &e in own.colive_edges() {
            relays_copy2.insert(e, copy2_base + n as u32 + relays_copy2.len() as u32);
        }

        let total = copy2_base as usize + n + relays_copy2.len();
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
        for (&e, _) in &relays_copy1 {
            let p = if own.colive_edges().contains(&e) {
                odd_pad
            } else if others.colive_edges().contains(&e) {
                even_pad
            } else {
                0
            };
            view.priority.push(p);
            view.protagonist.push(false);
            view.vertex_origin.push(None);
        }
        for v in game.vertices() {
            view.priority.push(0);
            view.protagonist.push(game.owner(v) == player);
            view.vertex_origin.push(Some(v));
        }
        for _ in &relays_copy2 {
            view.priority.push(odd_pad);
            view.protagonist.push(false);
            view.vertex_origin.push(None);
        }

        for e in game.edges() {
            let (u, v) = game.endpoints(e);
            let own_unsafe = own.unsafe_edges().contains(&e);
            let own_colive = own.colive_edges().contains(&e);
            let others_unsafe = others.unsafe_edges().contains(&e);
            let others_colive = others.colive_edges().contains(&e);

            // Copy 1: monitored.
            if own_unsafe {
                // Physically unavailable.
            } else if own_colive || others_colive {
                let relay = relays_copy1[&e];
                push_edge(&mut view, u.0, relay, Some(e));
                push_edge(&mut view, relay, v.0, None);
            } else if others_unsafe {
                let relay = relays_copy1[&e];
                push_edge(&mut view, u.0, relay, Some(e));
                push_edge(&mut view, relay, copy2_base + v.0, None);
            } else {
                push_edge(&mut view, u.0, v.0, Some(e));
            }

            // Copy 2: the assumption is gone, own obligations remain.
            if own_unsafe {
                // Still unavailable.
            } else if own_colive {
                let relay = relays_copy2[&e];
                push_edge(&mut view, copy2_base + u.0, relay, Some(e));
                push_edge(&mut view, relay, copy2_base + v.0, None);
            } else {
                push_edge(&mut view, copy2_base + u.0, copy2_base + v.0, Some(e));
            }
        }
        view.assert_consistent();
        Ok(WinArena { view, vertex_count: n, copy2_base })
    }

    /// Local index of a vertex in the monitored copy.
    pub fn copy1(&self, v: VertexId) -> u32 {
        v.0
    }

    /// Local index of a vertex in the assumption-free copy.
    pub fn copy2(&self, v: VertexId) -> u32 {
        self.copy2_base + v.0
    }

    /// Number of original game vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
}

fn push_edge(view: &mut TwoPlayerView, from: u32, to: u32, origin: Option<EdgeId>) {
    view.succ[from as usize].push(to);
    view.edge_origin[from as usize].push(origin);
}

fn smallest_even_at_least(p: u32) -> u32 {
    if p % 2 == 0 {
        p
    } else {
        p + 1
    }
}

/// The outcome of one contract check: the original-game vertices from which
/// the player wins its contract, plus the solved arena for strategy
/// extraction.
pub struct WinCheck {
    /// Original vertices from which the contract player wins.
    pub region: DenseSet,
    arena: WinArena,
    solve: SolveResult,
}

/// Solves the contract `ψ_own ∧ (ψ_others ⇒ φ)` for `player` as a zero-sum
/// game against everyone else and projects the winning region back onto the
/// game's vertices.
///
/// A player whose own unsafe edges exhaust some vertex's choices is simply
/// stuck there; such vertices (and everything the opposition can steer into
/// them) are conceded before solving, keeping the solver's sink-freedom
/// contract intact.
pub fn compute_win(
    game: &Game,
    own: &UcaTemplate,
    others: &AggregateUca,
    spec: &ParitySpec,
    player: Player,
) -> Result<WinCheck> {
    let arena = WinArena::build(game, own, others, spec, player)?;
    let total = arena.view.len();

    let mut stranded = DenseSet::new(total);
    for v in game.vertices_of(player) {
        if game.outgoing(v).iter().all(|e| own.unsafe_edges().contains(e)) {
            stranded.insert(arena.copy1(v));
            stranded.insert(arena.copy2(v));
        }
    }
    let full = DenseSet::full(total);
    let (conceded, _) = attractor_within(&arena.view, false, &stranded, &full);
    let mut alive = full;
    alive.difference_with(&conceded);

    let solve = solve_zielonka_within(&arena.view, &alive)?;
    let mut region = DenseSet::new(game.vertex_count());
    for v in game.vertices() {
        if solve.win_protagonist.contains(arena.copy1(v)) {
            region.insert(v.0);
        }
    }
    Ok(WinCheck { region, arena, solve })
}

/// Extracts a finite-memory strategy for the player from a solved contract
/// check. Two memory states track which copy the play is in: state 0 until
/// some other player takes one of its unsafe edges, state 1 afterwards.
/// Choices on vertices outside the winning region fall back to the first
/// outgoing edge.
pub fn extract_strategy(
    game: &Game,
    player: Player,
    assumptions: &AssumptionProfile,
    check: &WinCheck,
) -> Result<FiniteMemoryStrategy> {
    let others = assumptions.assumption_of_others(player);
    let mut moves = vec![vec![None; game.vertex_count()]; 2];
    for v in game.vertices() {
        if game.owner(v) != player {
            continue;
        }
        let fallback = game.outgoing(v)[0];
        for (state, local) in [(0usize, check.arena.copy1(v)), (1, check.arena.copy2(v))] {
            let chosen = check.solve.strategy_protagonist[local as usize]
                .map(|w| {
                    let slot = check
                        .arena
                        .view
                        .slot(local, w)
                        .expect("solver strategies follow view edges");
                    check.arena.view.edge_origin[local as usize][slot]
                        .ok_or_else(|| Error::contract("strategy move lost its original edge"))
                })
                .transpose()?;
            moves[state][v.index()] = Some(chosen.unwrap_or(fallback));
        }
    }
    let mut updates = vec![vec![0; game.edge_count()], vec![1; game.edge_count()]];
    for e in game.edges() {
        if others.unsafe_edges().contains(&e) {
            updates[0][e.index()] = 1;
        }
    }
    FiniteMemoryStrategy::new(game, player, 0, moves, updates)
}

/// A copy of the game in which only the given players keep their objectives;
/// everyone else's objective becomes trivially true. Ownership and moves are
/// unchanged, so synthesis on the result yields contracts that protect
/// exactly the chosen coalition.
pub fn coalition_game(game: &Game, members: &BTreeSet<Player>) -> Result<Game> {
    if members.is_empty() {
        return Err(Error::contract("coalition must name at least one player"));
    }
    for &p in members {
        if p.number() > game.player_count() {
            return Err(Error::contract(format!(
                "coalition names {p}, but the game has {} players",
                game.player_count()
            )));
        }
    }
    let specs: Vec<ParitySpec> = game
        .players()
        .map(|p| {
            if members.contains(&p) {
                game.spec(p).clone()
            } else {
                ParitySpec::trivially_true(game.vertex_count())
            }
        })
        .collect();
    rebuild(game, game.player_count(), |v| game.owner(v), &specs)
}

/// A copy of the game with the given vertices reassigned to a fresh
/// environment player with a trivially true objective. The environment
/// participates in synthesis like any player: its contract asks nothing
/// beyond its own synthesized obligations.
pub fn with_environment(game: &Game, env: &[VertexId]) -> Result<Game> {
    if env.is_empty() {
        return Err(Error::contract("environment reassignment needs at least one vertex"));
    }
    let env_set: BTreeSet<VertexId> = env.iter().copied().collect();
    for &v in &env_set {
        if v.index() >= game.vertex_count() {
            return Err(Error::contract("environment reassignment names an unknown vertex"));
        }
    }
    let fresh = Player::new(game.player_count() + 1);
    let mut specs: Vec<ParitySpec> = game.players().map(|p| game.spec(p).clone()).collect();
    specs.push(ParitySpec::trivially_true(game.vertex_count()));
    rebuild(
        game,
        fresh.number(),
        |v| if env_set.contains(&v) { fresh } else { game.owner(v) },
        &specs,
    )
}

/// Rebuilds a game with the same graph but new ownership and objectives.
fn rebuild(
    game: &Game,
    players: u32,
    owner: impl Fn(VertexId) -> Player,
    specs: &[ParitySpec],
) -> Result<Game> {
    let names: Vec<&str> = game.vertices().map(|v| game.name(v)).collect();
    let vertices: Vec<(&str, u32)> =
        game.vertices().map(|v| (names[v.index()], owner(v).number())).collect();
    let edges: Vec<(&str, &str)> = game
        .edges()
        .map(|e| {
            let (u, v) = game.endpoints(e);
            (names[u.index()], names[v.index()])
        })
        .collect();
    let priorities: Vec<Vec<u32>> = specs
        .iter()
        .map(|s| game.vertices().map(|v| s.priority(v)).collect())
        .collect();
    Game::from_parts(players, game.name(game.init()), &vertices, &edges, &priorities)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::templates::uca_equal;

    /// Mutual dependence with a trap: P2 owns the hub `a`, P1 owns `b`, and
    /// both can divert the play into the dead-end `t`. P1 wants to visit `b`
    /// infinitely often, P2 wants `a`. Neither wins unconditionally (the
    /// other can divert to `t`), but templates forbidding the diversions
    /// resolve the standoff.
    fn mutual_trap() -> Game {
        Game::from_parts(
            2,
            "a",
            &[("a", 2), ("b", 1), ("t", 1)],
            &[("a", "b"), ("a", "t"), ("b", "a"), ("b", "t"), ("t", "t")],
            &[vec![1, 2, 1], vec![2, 1, 1]],
        )
        .unwrap()
    }

    fn edge(game: &Game, u: &str, v: &str) -> EdgeId {
        game.edge_between(game.vertex(u).unwrap(), game.vertex(v).unwrap()).unwrap()
    }

    #[test]
    fn synthesis_resolves_mutual_dependence() {
        let game = mutual_trap();
        let (outcome, trace) = o_compute_ge(&game).unwrap();
        let profile = match outcome {
            Outcome::Profile(p) => p,
            Outcome::Unrealizable(r) => panic!("expected a profile, got {r}"),
        };
        assert_eq!(trace.iterations.len(), 2);
        assert!(trace.iterations[0].winning.iter().all(|&w| !w));
        assert!(trace.iterations[1].winning.iter().all(|&w| w));
        // Each player promises not to divert into the trap.
        let t1 = profile.assumptions().template(Player::new(1));
        let t2 = profile.assumptions().template(Player::new(2));
        assert_eq!(t1.unsafe_edges().iter().copied().collect::<Vec<_>>(), vec![edge(&game, "b", "t")]);
        assert_eq!(t2.unsafe_edges().iter().copied().collect::<Vec<_>>(), vec![edge(&game, "a", "t")]);
        assert!(t1.colive_edges().is_empty());
        assert!(t2.colive_edges().is_empty());
    }

    #[test]
    fn trivial_objectives_need_no_obligations() {
        let game = Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2)],
            &[("a", "b"), ("b", "a")],
            &[vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        let (outcome, trace) = o_compute_ge(&game).unwrap();
        match outcome {
            Outcome::Profile(p) => {
                assert!(p.assumptions().templates().iter().all(|t| t.is_trivial()));
            }
            Outcome::Unrealizable(r) => panic!("expected a profile, got {r}"),
        }
        assert_eq!(trace.iterations.len(), 1);
    }

    #[test]
    fn unsatisfiable_objective_reports_unrealizable() {
        // P1 wants a priority that never occurs: cooperatively unsatisfiable.
        let game = Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2)],
            &[("a", "b"), ("b", "a")],
            &[vec![1, 1], vec![0, 0]],
        )
        .unwrap();
        let (outcome, _) = o_compute_ge(&game).unwrap();
        match outcome {
            Outcome::Unrealizable(UnrealizableReason::CooperativelyUnsatisfiable(p)) => {
                assert_eq!(p, Player::new(1));
            }
            other => panic!("expected cooperative unsatisfiability, got {other:?}"),
        }
    }

    #[test]
    fn contract_arena_monitors_both_sides() {
        let game = mutual_trap();
        let e_at = edge(&game, "a", "t");
        let e_ba = edge(&game, "b", "a");
        let own = UcaTemplate::new(&game, Player::new(1), [], [e_ba]).unwrap();
        let others = AggregateUca::new([e_at], []);
        let arena =
            WinArena::build(&game, &own, &others, game.spec(Player::new(1)), Player::new(1))
                .unwrap();
        // 3 originals + 2 copy-1 relays + 3 copy-2 originals + 1 copy-2 relay.
        assert_eq!(arena.view.len(), 9);
        let relay_after = |from: u32, e: EdgeId| -> u32 {
            let slot = arena.view.edge_origin[from as usize]
                .iter()
                .position(|&o| o == Some(e))
                .expect("monitored edge leaves its source");
            arena.view.succ[from as usize][slot]
        };
        let r_at = relay_after(arena.copy1(game.vertex("a").unwrap()), e_at);
        let r_ba = relay_after(arena.copy1(game.vertex("b").unwrap()), e_ba);
        // Own co-live relays carry the odd pad; the foreign unsafe relay
        // carries 0 and jumps into copy 2.
        assert_eq!(arena.view.priority[r_ba as usize], 3);
        assert_eq!(arena.view.priority[r_at as usize], 0);
        let t2 = arena.copy2(game.vertex("t").unwrap());
        assert_eq!(arena.view.succ[r_at as usize], vec![t2]);
        let r2_ba = relay_after(arena.copy2(game.vertex("b").unwrap()), e_ba);
        assert_eq!(arena.view.priority[r2_ba as usize], 3);
        // In copy 2 the foreign unsafe edge is direct again.
        let a2 = arena.copy2(game.vertex("a").unwrap());
        assert!(arena.view.succ[a2 as usize].contains(&t2));
    }

    #[test]
    fn own_unsafe_edges_can_concede_vertices() {
        // P1's only move at "a" is declared unsafe: the contract is lost
        // from "a" but still winnable elsewhere.
        let game = Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2), ("c", 1)],
            &[("a", "b"), ("b", "b"), ("b", "c"), ("c", "c"), ("c", "b")],
            &[vec![0, 0, 0], vec![0, 0, 0]],
        )
        .unwrap();
        let e_ab = edge(&game, "a", "b");
        let own = UcaTemplate::new(&game, Player::new(1), [e_ab], []).unwrap();
        let check = compute_win(
            &game,
            &own,
            &AggregateUca::trivial(),
            game.spec(Player::new(1)),
            Player::new(1),
        )
        .unwrap();
        assert!(!check.region.contains(0));
        assert!(check.region.contains(1));
        assert!(check.region.contains(2));
    }

    #[test]
    fn coalition_blanks_foreign_objectives() {
        let game = mutual_trap();
        let coalition = coalition_game(&game, &BTreeSet::from([Player::new(1)])).unwrap();
        assert_eq!(coalition.spec(Player::new(1)), game.spec(Player::new(1)));
        assert_eq!(coalition.spec(Player::new(2)).max_priority(), 0);
        assert!(coalition_game(&game, &BTreeSet::new()).is_err());
        assert!(coalition_game(&game, &BTreeSet::from([Player::new(7)])).is_err());
    }

    #[test]
    fn environment_reassignment_adds_a_player() {
        let game = mutual_trap();
        let env = with_environment(&game, &[game.vertex("a").unwrap()]).unwrap();
        assert_eq!(env.player_count(), 3);
        assert_eq!(env.owner(env.vertex("a").unwrap()), Player::new(3));
        assert_eq!(env.owner(env.vertex("b").unwrap()), Player::new(1));
        assert_eq!(env.spec(Player::new(3)).max_priority(), 0);
        // Old objectives survive verbatim.
        assert_eq!(env.spec(Player::new(1)), game.spec(Player::new(1)));
        assert!(with_environment(&game, &[]).is_err());
    }

    #[test]
    fn extracted_strategies_flip_memory_on_broken_assumptions() {
        let game = mutual_trap();
        let (outcome, _) = o_compute_ge(&game).unwrap();
        let profile = match outcome {
            Outcome::Profile(p) => p,
            Outcome::Unrealizable(r) => panic!("expected a profile, got {r}"),
        };
        let assumptions = profile.assumptions();
        for strategy in profile.strategies() {
            assert_eq!(strategy.memory_size(), 2);
            let others = assumptions.assumption_of_others(strategy.player());
            for e in game.edges() {
                let flips = strategy.update(0, e) == 1;
                assert_eq!(flips, others.unsafe_edges().contains(&e));
                assert_eq!(strategy.update(1, e), 1);
            }
        }
        // Determinism: a second run reproduces the same templates.
        let (outcome2, _) = o_compute_ge(&game).unwrap();
        if let Outcome::Profile(p2) = outcome2 {
            for (a, b) in profile.assumptions().templates().iter().zip(p2.assumptions().templates())
            {
                assert!(uca_equal(a, b), "synthesis is deterministic");
            }
        }
    }
}
