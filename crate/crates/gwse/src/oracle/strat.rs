//! Bounded strategy enumeration and strategy-product analysis.
//!
//! The verifier quantifies over strategies by brute force, inside a finite,
//! documented family: move tables over (memory state, owned vertex), with the
//! memory fixed to a saturating counter that advances on a trigger set. The
//! two-copy winning construction on the synthesis side produces exactly this
//! shape, so the family is known to contain witnesses whenever a contract is
//! realizable at the checked memory size.
//!
//! Fixing some players' strategies and leaving the rest free yields a finite
//! product graph whose plays are precisely the reachable outcomes — the
//! ground truth that winner checks and deviation checks are read off from.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::game::{EdgeId, Game, Lasso, Player, VertexId};
use crate::sets::DenseSet;
use crate::strategy::FiniteMemoryStrategy;
use crate::templates::AssumptionProfile;

use super::formula::Formula;
use super::graph;
use super::recurrence::{assemble_lasso, enumerate_over};
use super::OracleBounds;

/// A finite family of candidate strategies for one player: every move table
/// over (memory state, owned vertex), with the memory a saturating counter
/// `0..memory` that steps forward on each trigger edge and never resets.
#[derive(Debug, Clone)]
pub struct StrategyClass {
    player: Player,
    memory: u32,
    triggers: BTreeSet<EdgeId>,
}

impl StrategyClass {
    /// A class with the given counter size and trigger set. `memory` must be
    /// at least 1; memoryless behaviour is always included.
    pub fn new(player: Player, memory: u32, triggers: BTreeSet<EdgeId>) -> StrategyClass {
        assert!(memory >= 1, "a strategy class needs at least one memory state");
        StrategyClass { player, memory, triggers }
    }

    /// The class matched to a player's contract under an assumption profile:
    /// the counter advances on the other players' unsafe edges — the moment
    /// the contract's implication turns vacuous and the player may switch to
    /// arbitrary sustained behaviour.
    pub fn for_contract(
        assumptions: &AssumptionProfile,
        player: Player,
        memory: u32,
    ) -> StrategyClass {
        let triggers = assumptions
            .assumption_of_others(player)
            .unsafe_edges()
            .iter()
            .copied()
            .collect();
        StrategyClass::new(player, memory, triggers)
    }

    /// The player the class moves for.
    pub fn player(&self) -> Player {
        self.player
    }

    /// Number of counter states.
    pub fn memory(&self) -> u32 {
        self.memory
    }

    /// The update tables shared by every strategy in the class.
    pub fn counter_updates(&self, game: &Game) -> Vec<Vec<u32>> {
        (0..self.memory)
            .map(|s| {
                game.edges()
                    .map(|e| {
                        if self.triggers.contains(&e) {
                            (s + 1).min(self.memory - 1)
                        } else {
                            s
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// How many strategies the class contains.
    pub fn census(&self, game: &Game) -> u128 {
        let mut count: u128 = 1;
        for _ in 0..self.memory {
            for v in game.vertices_of(self.player) {
                count = count.saturating_mul(game.outgoing(v).len() as u128);
            }
        }
        count
    }

    /// Lists every strategy in the class, or refuses when the class exceeds
    /// `cap` — never a silent truncation.
    pub fn enumerate(&self, game: &Game, cap: u64) -> Result<Vec<FiniteMemoryStrategy>> {
        let census = self.census(game);
        if census > cap as u128 {
            return Err(Error::refused(format!(
                "enumerating {census} candidate strategies for {} exceeds the oracle cap of {cap}",
                self.player
            )));
        }
        let slots: Vec<VertexId> = game.vertices_of(self.player).collect();
        let updates = self.counter_updates(game);
        if slots.is_empty() {
            let moves = vec![vec![None; game.vertex_count()]; self.memory as usize];
            return Ok(vec![FiniteMemoryStrategy::new(
                game,
                self.player,
                0,
                moves,
                updates,
            )?]);
        }
        let radix: Vec<usize> = (0..self.memory)
            .flat_map(|_| slots.iter().map(|&v| game.outgoing(v).len()))
            .collect();
        let mut digits = vec![0usize; radix.len()];
        let mut out = Vec::with_capacity(census as usize);
        loop {
            let moves: Vec<Vec<Option<EdgeId>>> = (0..self.memory as usize)
                .map(|s| {
                    let mut row = vec![None; game.vertex_count()];
                    for (k, &v) in slots.iter().enumerate() {
                        row[v.index()] = Some(game.outgoing(v)[digits[s * slots.len() + k]]);
                    }
                    row
                })
                .collect();
            out.push(FiniteMemoryStrategy::new(
                game,
                self.player,
                0,
                moves,
                updates.clone(),
            )?);
            let mut d = 0;
            loop {
                if d == digits.len() {
                    return Ok(out);
                }
                digits[d] += 1;
                if digits[d] < radix[d] {
                    break;
                }
                digits[d] = 0;
                d += 1;
            }
        }
    }
}

/// The game unfolded against some fixed finite-memory strategies: one node
/// per (vertex, fixed memories) pair, with the remaining players choosing
/// freely. Node `code * n + v` pairs vertex `v` with the mixed-radix memory
/// combination `code`, so the whole (small) state space is materialized and
/// any start vertex can be analysed on the same product.
pub(crate) struct Product {
    pub(crate) succ: Vec<Vec<(u32, EdgeId)>>,
    fixed: Vec<Player>,
    init_code: u32,
    n: usize,
}

pub(crate) fn build_product(
    game: &Game,
    fixed: &[&FiniteMemoryStrategy],
    cap_nodes: usize,
) -> Result<Product> {
    debug_assert!(
        fixed
            .iter()
            .map(|s| s.player())
            .collect::<BTreeSet<_>>()
            .len()
            == fixed.len(),
        "one strategy per fixed player"
    );
    let n = game.vertex_count();
    let radices: Vec<u32> = fixed.iter().map(|s| s.memory_size()).collect();
    let combos: usize = radices.iter().map(|&r| r as usize).product();
    let node_count = combos * n;
    if node_count > cap_nodes {
        return Err(Error::refused(format!(
            "strategy product with {node_count} nodes exceeds the oracle cap of {cap_nodes}"
        )));
    }
    let decode = |mut code: usize| -> Vec<u32> {
        radices
            .iter()
            .map(|&r| {
                let m = (code % r as usize) as u32;
                code /= r as usize;
                m
            })
            .collect()
    };
    let encode = |mems: &[u32]| -> usize {
        let mut code = 0usize;
        for (i, &m) in mems.iter().enumerate().rev() {
            code = code * radices[i] as usize + m as usize;
        }
        code
    };
    let mut succ: Vec<Vec<(u32, EdgeId)>> = vec![Vec::new(); node_count];
    for node in 0..node_count {
        let v = VertexId((node % n) as u32);
        let mems = decode(node / n);
        let owner = game.owner(v);
        let chosen: Vec<EdgeId> = match fixed.iter().position(|s| s.player() == owner) {
            Some(pos) => vec![fixed[pos]
                .choice(mems[pos], v)
                .expect("fixed strategies are total on their own vertices")],
            None => game.outgoing(v).to_vec(),
        };
        for e in chosen {
            let next_mems: Vec<u32> = fixed
                .iter()
                .zip(&mems)
                .map(|(s, &m)| s.update(m, e))
                .collect();
            let to = (encode(&next_mems) * n + game.target(e).index()) as u32;
            succ[node].push((to, e));
        }
    }
    let initial: Vec<u32> = fixed.iter().map(|s| s.initial_memory()).collect();
    let init_code = encode(&initial) as u32;
    Ok(Product { succ, fixed: fixed.iter().map(|s| s.player()).collect(), init_code, n })
}

impl Product {
    pub(crate) fn node_count(&self) -> usize {
        self.succ.len()
    }

    /// The product node where a play starts: the vertex paired with every
    /// fixed strategy's initial memory.
    pub(crate) fn start(&self, v: VertexId) -> u32 {
        self.init_code * self.n as u32 + v.0
    }

    /// The game vertex a node projects to.
    pub(crate) fn vertex_of(&self, node: u32) -> VertexId {
        VertexId(node % self.n as u32)
    }

    /// Adjacency without edge labels, for the graph algorithms.
    pub(crate) fn plain(&self) -> Vec<Vec<u32>> {
        self.succ
            .iter()
            .map(|outs| outs.iter().map(|&(to, _)| to).collect())
            .collect()
    }

    /// The projection table, one game vertex per node.
    pub(crate) fn vertex_table(&self) -> Vec<VertexId> {
        (0..self.node_count() as u32).map(|v| self.vertex_of(v)).collect()
    }

    pub(crate) fn fixed_players(&self) -> &[Player] {
        &self.fixed
    }
}

/// The unique play a full strategy profile induces from the initial vertex.
/// Expects exactly one strategy per player, in player order.
pub fn play_of(game: &Game, profile: &[FiniteMemoryStrategy]) -> Result<Lasso> {
    if profile.len() != game.player_count() as usize {
        return Err(Error::contract(format!(
            "expected one strategy per player, got {} for {} players",
            profile.len(),
            game.player_count()
        )));
    }
    for (i, s) in profile.iter().enumerate() {
        if s.player() != Player::new(i as u32 + 1) {
            return Err(Error::contract(format!(
                "profile position {i} holds a strategy for {}",
                s.player()
            )));
        }
    }
    let mut seen: BTreeMap<(VertexId, Vec<u32>), usize> = BTreeMap::new();
    let mut trail: Vec<VertexId> = Vec::new();
    let mut v = game.init();
    let mut mems: Vec<u32> = profile.iter().map(|s| s.initial_memory()).collect();
    loop {
        if let Some(&j) = seen.get(&(v, mems.clone())) {
            return if j > 0 {
                Lasso::new(game, trail[..j].to_vec(), trail[j..].to_vec())
            } else {
                let mut rotated: Vec<VertexId> = trail[1..].to_vec();
                rotated.push(trail[0]);
                Lasso::new(game, vec![trail[0]], rotated)
            };
        }
        seen.insert((v, mems.clone()), trail.len());
        trail.push(v);
        let owner = game.owner(v);
        let e = profile[owner.index()]
            .choice(mems[owner.index()], v)
            .expect("strategies are total on their own vertices");
        for (m, s) in mems.iter_mut().zip(profile) {
            *m = s.update(*m, e);
        }
        v = game.target(e);
    }
}

/// Whether every play of the strategy-fixed product satisfies the formula.
/// `Ok(None)` means yes; `Ok(Some(play))` is a concrete counterexample play
/// the opponents can steer into. Decided by enumerating the product's play
/// shapes, so the usual edge bound applies to the reachable product.
pub fn strategy_wins(
    game: &Game,
    strategy: &FiniteMemoryStrategy,
    formula: &Formula,
    bounds: &OracleBounds,
) -> Result<Option<Lasso>> {
    let product = build_product(game, &[strategy], bounds.max_product_nodes)?;
    let plain = product.plain();
    let start = product.start(game.init());
    let reach = graph::reachable(&plain, start);
    // Compact the reachable part so the edge bound sees only real steps.
    let mut index: Vec<Option<u32>> = vec![None; product.node_count()];
    let mut vertex = Vec::new();
    for (i, node) in reach.iter().enumerate() {
        index[node as usize] = Some(i as u32);
        vertex.push(product.vertex_of(node));
    }
    let mut succ: Vec<Vec<(u32, EdgeId)>> = vec![Vec::new(); reach.len()];
    for node in reach.iter() {
        let here = index[node as usize].unwrap();
        for &(to, label) in &product.succ[node as usize] {
            succ[here as usize].push((index[to as usize].unwrap(), label));
        }
    }
    let init = index[start as usize].unwrap();
    let cases = enumerate_over(game, &succ, &vertex, init, &formula.watched_edges(), bounds)?;
    for case in &cases {
        if !formula.satisfied_by_case(game, case) {
            debug_assert!(!formula.satisfied_by(game, case.witness()));
            return Ok(Some(case.witness().clone()));
        }
        debug_assert!(formula.satisfied_by(game, case.witness()));
    }
    Ok(None)
}

/// Searches the one-strategy product for a play, starting at `from`, that
/// violates the player's contract ψ_own ∧ (ψ_others ⇒ φ). Polynomial — no
/// play enumeration:
///
/// * a reachable crossing of an own unsafe edge, extended arbitrarily,
///   already violates ψ_own;
/// * an own colive edge on a reachable product cycle supports a play
///   crossing it forever;
/// * otherwise the contract can only fail with ψ_others intact: some
///   recurrent behaviour avoiding the others' template edges (their unsafe
///   edges always, their colive edges eventually) with the player's own
///   parity maximum odd. The recurrent part of any such play is a strongly
///   connected subgraph of the doubly-filtered product, and conversely any
///   such subgraph is realizable — the even-max component search over the
///   shifted priorities decides it exactly.
pub(crate) fn contract_violation(
    game: &Game,
    assumptions: &AssumptionProfile,
    player: Player,
    product: &Product,
    from: VertexId,
) -> Result<Option<Lasso>> {
    debug_assert_eq!(product.fixed_players(), &[player]);
    let start = product.start(from);
    let plain = product.plain();
    let vertex = product.vertex_table();
    let reach = graph::reachable(&plain, start);
    let own = assumptions.template(player);
    let others = assumptions.assumption_of_others(player);

    let confirm = |lasso: Lasso| -> Option<Lasso> {
        debug_assert!(
            !Formula::contract(assumptions, player).satisfied_by(game, &lasso),
            "oracle witness must violate the contract it refutes"
        );
        Some(lasso)
    };

    // Own unsafe edge crossed.
    for node in reach.iter() {
        for &(to, label) in &product.succ[node as usize] {
            if own.unsafe_edges().contains(&label) {
                let mut nodes = graph::shortest_path(&plain, start, node, &reach)
                    .expect("node drawn from the reachable set");
                nodes.push(to);
                let lasso = extend_to_lasso(game, &plain, &vertex, nodes)?;
                return Ok(confirm(lasso));
            }
        }
    }

    // Own colive edge on a cycle.
    let comps = graph::kosaraju(&plain, &reach);
    let mut comp_of = vec![usize::MAX; product.node_count()];
    for (i, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v as usize] = i;
        }
    }
    for node in reach.iter() {
        for &(to, label) in &product.succ[node as usize] {
            if own.colive_edges().contains(&label) && comp_of[node as usize] == comp_of[to as usize]
            {
                let members = DenseSet::from_members(
                    product.node_count(),
                    comps[comp_of[node as usize]].iter().copied(),
                );
                let back = graph::shortest_path(&plain, to, node, &members)
                    .expect("endpoints share a strongly connected component");
                let mut closed = vec![node];
                closed.extend_from_slice(&back);
                let prefix = graph::shortest_path(&plain, start, node, &reach)
                    .expect("node drawn from the reachable set");
                let lasso = assemble_lasso(game, &vertex, &prefix, &closed)?;
                return Ok(confirm(lasso));
            }
        }
    }

    // Everyone else keeps their templates, yet the player's parity fails.
    let others_unsafe = others.unsafe_edges();
    let others_colive = others.colive_edges();
    let filter = |drop_colive: bool| -> Vec<Vec<u32>> {
        product
            .succ
            .iter()
            .map(|outs| {
                outs.iter()
                    .filter(|(_, label)| {
                        !others_unsafe.contains(label)
                            && !(drop_colive && others_colive.contains(label))
                    })
                    .map(|&(to, _)| to)
                    .collect()
            })
            .collect()
    };
    let succ_h = filter(false);
    let succ_settled = filter(true);
    let reach_h = graph::reachable(&succ_h, start);
    let spec = game.spec(player);
    let shifted: Vec<u32> = vertex.iter().map(|&v| spec.priority(v) + 1).collect();
    if let Some(comp) = graph::even_max_component(&succ_settled, &reach_h, &[&shifted]) {
        let prefix = graph::shortest_path(&succ_h, start, comp[0], &reach_h)
            .expect("component found inside the reachable set");
        let closed = graph::covering_cycle(&succ_settled, &comp);
        let lasso = assemble_lasso(game, &vertex, &prefix, &closed)?;
        return Ok(confirm(lasso));
    }
    Ok(None)
}

/// Extends a concrete node path into a lasso by following first successors
/// until the continuation closes on itself.
fn extend_to_lasso(
    game: &Game,
    plain: &[Vec<u32>],
    vertex: &[VertexId],
    mut nodes: Vec<u32>,
) -> Result<Lasso> {
    let mut pos: BTreeMap<u32, usize> = BTreeMap::new();
    let mut cur = *nodes.last().expect("a path has at least one node");
    pos.insert(cur, nodes.len() - 1);
    loop {
        let next = plain[cur as usize][0];
        if let Some(&j) = pos.get(&next) {
            let mut closed = nodes[j..].to_vec();
            closed.push(next);
            let prefix = nodes[..=j].to_vec();
            return assemble_lasso(game, vertex, &prefix, &closed);
        }
        pos.insert(next, nodes.len());
        nodes.push(next);
        cur = next;
    }
}

/// The behaviourally distinct contract winners for one player within the
/// class matched to the profile: strategies whose every play from the
/// initial vertex satisfies the player's contract, deduplicated by their
/// reachable choice function (two candidates that act identically wherever
/// any opponent behaviour can put them induce the same plays in every
/// profile, so one representative suffices).
pub(crate) fn contract_winners(
    game: &Game,
    assumptions: &AssumptionProfile,
    player: Player,
    bounds: &OracleBounds,
) -> Result<Vec<FiniteMemoryStrategy>> {
    let class = StrategyClass::for_contract(assumptions, player, bounds.memory);
    let candidates = class.enumerate(game, bounds.max_candidates)?;
    let mut winners = Vec::new();
    let mut behaviours: BTreeSet<Vec<(u32, EdgeId)>> = BTreeSet::new();
    for candidate in candidates {
        let product = build_product(game, &[&candidate], bounds.max_product_nodes)?;
        if contract_violation(game, assumptions, player, &product, game.init())?.is_some() {
            continue;
        }
        let plain = product.plain();
        let reach = graph::reachable(&plain, product.start(game.init()));
        let mut signature = Vec::new();
        for node in reach.iter() {
            if game.owner(product.vertex_of(node)) == player {
                let &(_, label) = &product.succ[node as usize][0];
                signature.push((node, label));
            }
        }
        if behaviours.insert(signature) {
            winners.push(candidate);
        }
    }
    Ok(winners)
}

/// The vertices from which some strategy in the player's contract class wins
/// the contract: the oracle-side counterpart of the engine's winning region,
/// computed by exhausting the class instead of solving a game.
pub(crate) fn contract_winning_vertices(
    game: &Game,
    assumptions: &AssumptionProfile,
    player: Player,
    bounds: &OracleBounds,
) -> Result<DenseSet> {
    let class = StrategyClass::for_contract(assumptions, player, bounds.memory);
    let candidates = class.enumerate(game, bounds.max_candidates)?;
    let mut wins = DenseSet::new(game.vertex_count());
    for candidate in candidates {
        if wins.len() == game.vertex_count() {
            break;
        }
        let product = build_product(game, &[&candidate], bounds.max_product_nodes)?;
        for v in game.vertices() {
            if !wins.contains(v.0)
                && contract_violation(game, assumptions, player, &product, v)?.is_none()
            {
                wins.insert(v.0);
            }
        }
    }
    Ok(wins)
}

/// Whether the named player, deviating alone against the other players'
/// fixed strategies, can keep its own objective while breaking someone
/// else's. Exact over all deviations of any memory: the product with only
/// the others fixed contains every deviation play, and the even-max search
/// decides existence. Returns the harmed player and a witness deviation play.
pub(crate) fn deviation_break(
    game: &Game,
    others: &[&FiniteMemoryStrategy],
    deviator: Player,
    bounds: &OracleBounds,
) -> Result<Option<(Player, Lasso)>> {
    debug_assert!(others.iter().all(|s| s.player() != deviator));
    let product = build_product(game, others, bounds.max_product_nodes)?;
    let plain = product.plain();
    let vertex = product.vertex_table();
    let start = product.start(game.init());
    let reach = graph::reachable(&plain, start);
    let own_spec = game.spec(deviator);
    let keep: Vec<u32> = vertex.iter().map(|&v| own_spec.priority(v)).collect();
    for harmed in game.players().filter(|&j| j != deviator) {
        let their_spec = game.spec(harmed);
        let harm: Vec<u32> = vertex.iter().map(|&v| their_spec.priority(v) + 1).collect();
        if let Some(comp) = graph::even_max_component(&plain, &reach, &[&keep, &harm]) {
            let prefix = graph::shortest_path(&plain, start, comp[0], &reach)
                .expect("component found inside the reachable set");
            let closed = graph::covering_cycle(&plain, &comp);
            let lasso = assemble_lasso(game, &vertex, &prefix, &closed)?;
            debug_assert!(lasso.satisfies_parity(own_spec));
            debug_assert!(!lasso.satisfies_parity(their_spec));
            return Ok(Some((harmed, lasso)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::templates::UcaTemplate;

    /// P1 steers b (to a or the trap t); P2 steers a (to b or t); t loops.
    fn fork() -> Game {
        Game::from_parts(
            2,
            "a",
            &[("a", 2), ("b", 1), ("t", 1)],
            &[("a", "b"), ("a", "t"), ("b", "a"), ("b", "t"), ("t", "t")],
            &[vec![1, 2, 1], vec![2, 1, 1]],
        )
        .unwrap()
    }

    #[test]
    fn enumeration_covers_every_move_table() {
        let game = fork();
        let class = StrategyClass::new(Player::new(1), 2, BTreeSet::new());
        // P1 owns b and t: degrees 2 and 1, squared across two memory states.
        assert_eq!(class.census(&game), 4);
        let all = class.enumerate(&game, 100).unwrap();
        assert_eq!(all.len(), 4);
        let tight_err = class.enumerate(&game, 3).unwrap_err();
        assert!(matches!(tight_err, Error::Refused(_)));
    }

    #[test]
    fn induced_play_follows_both_strategies() {
        let game = fork();
        let a = game.vertex("a").unwrap();
        let b = game.vertex("b").unwrap();
        let ab = game.edge_between(a, b).unwrap();
        let ba = game.edge_between(b, a).unwrap();
        let p1 = FiniteMemoryStrategy::memoryless(
            &game,
            Player::new(1),
            vec![None, Some(ba), Some(game.edge_between(
                game.vertex("t").unwrap(),
                game.vertex("t").unwrap(),
            ).unwrap())],
        )
        .unwrap();
        let p2 =
            FiniteMemoryStrategy::memoryless(&game, Player::new(2), vec![Some(ab), None, None])
                .unwrap();
        let play = play_of(&game, &[p1, p2]).unwrap();
        assert_eq!(play.display(&game), "a (b a)^ω");
    }

    #[test]
    fn strategy_wins_finds_the_hostile_play() {
        let game = fork();
        let b = game.vertex("b").unwrap();
        let a = game.vertex("a").unwrap();
        let t = game.vertex("t").unwrap();
        let p1 = FiniteMemoryStrategy::memoryless(
            &game,
            Player::new(1),
            vec![
                None,
                Some(game.edge_between(b, a).unwrap()),
                Some(game.edge_between(t, t).unwrap()),
            ],
        )
        .unwrap();
        // P1's recurrence objective on a: P2 can comply (loop a-b) or defect
        // into the trap; the trap play is the counterexample.
        let formula = Formula::ParityWin(Player::new(1));
        let bounds = OracleBounds::default();
        let witness = strategy_wins(&game, &p1, &formula, &bounds).unwrap();
        let lasso = witness.expect("the trap refutes unconditional winning");
        assert!(!formula.satisfied_by(&game, &lasso));
        assert!(lasso.recurring_vertices().contains(&t));
    }

    #[test]
    fn contract_checker_spots_unsafe_crossings_and_vacuous_wins() {
        let game = fork();
        let a = game.vertex("a").unwrap();
        let b = game.vertex("b").unwrap();
        let t = game.vertex("t").unwrap();
        let bt = game.edge_between(b, t).unwrap();
        let at = game.edge_between(a, t).unwrap();
        let assumptions = AssumptionProfile::new(
            &game,
            vec![
                UcaTemplate::new(&game, Player::new(1), BTreeSet::from([bt]), BTreeSet::new())
                    .unwrap(),
                UcaTemplate::new(&game, Player::new(2), BTreeSet::from([at]), BTreeSet::new())
                    .unwrap(),
            ],
        )
        .unwrap();
        let into_trap = FiniteMemoryStrategy::memoryless(
            &game,
            Player::new(1),
            vec![None, Some(bt), Some(game.edge_between(t, t).unwrap())],
        )
        .unwrap();
        let product = build_product(&game, &[&into_trap], 1000).unwrap();
        let violation =
            contract_violation(&game, &assumptions, Player::new(1), &product, game.init())
                .unwrap()
                .expect("crossing b->t breaks the player's own template");
        assert!(violation.edges_ever(&game).contains(&bt));

        let compliant = FiniteMemoryStrategy::memoryless(
            &game,
            Player::new(1),
            vec![
                None,
                Some(game.edge_between(b, a).unwrap()),
                Some(game.edge_between(t, t).unwrap()),
            ],
        )
        .unwrap();
        let product = build_product(&game, &[&compliant], 1000).unwrap();
        assert!(
            contract_violation(&game, &assumptions, Player::new(1), &product, game.init())
                .unwrap()
                .is_none(),
            "looping a-b wins whenever P2 honours its template, and P2 \
             breaking it vacuously satisfies the contract"
        );
    }

    #[test]
    fn winner_dedup_keeps_distinct_behaviours_only() {
        let game = fork();
        let trivial = AssumptionProfile::trivial(&game);
        // P2's objective (recurring a) fails only if P1 leaves b for the trap
        // or P2 does so itself at a; with trivial templates the contract is
        // the bare objective, which P2 cannot force alone.
        let winners = contract_winners(&game, &trivial, Player::new(2), &OracleBounds::default())
            .unwrap();
        assert!(winners.is_empty());
    }

    #[test]
    fn deviation_analysis_is_strategy_free_for_the_deviator() {
        let game = fork();
        let a = game.vertex("a").unwrap();
        let b = game.vertex("b").unwrap();
        let p2 = FiniteMemoryStrategy::memoryless(
            &game,
            Player::new(2),
            vec![Some(game.edge_between(a, b).unwrap()), None, None],
        )
        .unwrap();
        // With P2 pinned to a->b, P1 deviating into the trap kills P2's
        // objective — but its own as well; no secure-break exists.
        let broke = deviation_break(&game, &[&p2], Player::new(1), &OracleBounds::default())
            .unwrap();
        assert!(broke.is_none());

        // Pin P2 instead and let P1's objective be trivially satisfied:
        // then parking in the trap breaks P2 while P1 stays content.
        let lenient = Game::from_parts(
            2,
            "a",
            &[("a", 2), ("b", 1), ("t", 1)],
            &[("a", "b"), ("a", "t"), ("b", "a"), ("b", "t"), ("t", "t")],
            &[vec![0, 0, 0], vec![2, 1, 1]],
        )
        .unwrap();
        let p2 = FiniteMemoryStrategy::memoryless(
            &lenient,
            Player::new(2),
            vec![Some(lenient.edge_between(a, b).unwrap()), None, None],
        )
        .unwrap();
        let (harmed, play) =
            deviation_break(&lenient, &[&p2], Player::new(1), &OracleBounds::default())
                .unwrap()
                .expect("P1 can harm P2 at no cost to itself");
        assert_eq!(harmed, Player::new(2));
        assert!(play.satisfies_parity(lenient.spec(Player::new(1))));
        assert!(!play.satisfies_parity(lenient.spec(Player::new(2))));
    }
}
