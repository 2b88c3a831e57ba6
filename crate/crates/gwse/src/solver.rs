//! Two-player zero-sum parity solving and cooperative recurrence analysis.
//!
//! Everything here runs on a [`TwoPlayerView`]: a graph with one priority per
//! vertex and a protagonist/adversary split. The protagonist wins a play iff
//! the maximum priority seen infinitely often is even. Views are produced
//! from full games ([`TwoPlayerView::of_game`]), from subgraph views
//! ([`TwoPlayerView::of_view`]), or synthesized directly by the arena
//! builders; they may contain sinks, which the region solver rejects but the
//! cooperative analyses tolerate.
//!
//! The module offers two kinds of analysis:
//!
//! - *adversarial*: [`attractor`] and [`solve_zielonka`], the classic
//!   recursive fixpoint solver with memoryless strategies for both sides;
//! - *cooperative*: [`recurrent_vertices`] (where can a play settle while
//!   satisfying the objective), [`cooperative_region`] (from where can some
//!   play satisfy it), and [`edge_can_recur`] (may an edge be taken
//!   infinitely often by a satisfying play) — the ingredients of assumption
//!   synthesis.

use crate::error::{Error, Result};
use crate::game::{Game, GraphView, ParitySpec, Player, VertexId};
use crate::game::EdgeId;
use crate::sets::DenseSet;

/// A two-player parity arena over local indices.
///
/// Parallel arrays describe each vertex: successor list (`succ`), the
/// original game edge behind each successor slot (`edge_origin`, `None` for
/// synthetic arena edges), one priority, the side that moves, and the
/// original vertex identity (`None` for synthetic arena vertices).
#[derive(Debug, Clone)]
pub struct TwoPlayerView {
    /// Successor lists in canonical order.
    pub succ: Vec<Vec<u32>>,
    /// Original edge behind each successor slot, parallel to `succ`.
    pub edge_origin: Vec<Vec<Option<EdgeId>>>,
    /// Priority per vertex.
    pub priority: Vec<u32>,
    /// Whether the protagonist moves at the vertex.
    pub protagonist: Vec<bool>,
    /// Original vertex behind each local index.
    pub vertex_origin: Vec<Option<VertexId>>,
}

impl TwoPlayerView {
    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.succ.len()
    }

    /// Whether the view has no vertices.
    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    /// View of a full game with `protagonist`'s vertices on the protagonist
    /// side and the given objective as the single priority function.
    pub fn of_game(game: &Game, spec: &ParitySpec, protagonist: Player) -> Self {
        let n = game.vertex_count();
        let mut view = TwoPlayerView {
            succ: Vec::with_capacity(n),
            edge_origin: Vec::with_capacity(n),
            priority: Vec::with_capacity(n),
            protagonist: Vec::with_capacity(n),
            vertex_origin: Vec::with_capacity(n),
        };
        for v in game.vertices() {
            let out = game.outgoing(v);
            view.succ.push(out.iter().map(|&e| game.target(e).0).collect());
            view.edge_origin.push(out.iter().map(|&e| Some(e)).collect());
            view.priority.push(spec.priority(v));
            view.protagonist.push(game.owner(v) == protagonist);
            view.vertex_origin.push(Some(v));
        }
        view.assert_consistent();
        view
    }

    /// View of a subgraph restriction, with `protagonist`'s vertices on the
    /// protagonist side. Local indices are the restriction's.
    pub fn of_view(game: &Game, graph: &GraphView, spec: &ParitySpec, protagonist: Player) -> Self {
        let mut view = TwoPlayerView {
            succ: Vec::with_capacity(graph.len()),
            edge_origin: Vec::with_capacity(graph.len()),
            priority: Vec::with_capacity(graph.len()),
            protagonist: Vec::with_capacity(graph.len()),
            vertex_origin: Vec::with_capacity(graph.len()),
        };
        for (local, &v) in graph.vertices.iter().enumerate() {
            view.succ.push(graph.succ[local].iter().map(|&(w, _)| w).collect());
            view.edge_origin.push(graph.succ[local].iter().map(|&(_, e)| Some(e)).collect());
            view.priority.push(spec.priority(v));
            view.protagonist.push(game.owner(v) == protagonist);
            view.vertex_origin.push(Some(v));
        }
        view.assert_consistent();
        view
    }

    /// Checks the parallel-array invariants (debug builds only).
    pub(crate) fn assert_consistent(&self) {
        debug_assert_eq!(self.succ.len(), self.edge_origin.len());
        debug_assert_eq!(self.succ.len(), self.priority.len());
        debug_assert_eq!(self.succ.len(), self.protagonist.len());
        debug_assert_eq!(self.succ.len(), self.vertex_origin.len());
        for (v, out) in self.succ.iter().enumerate() {
            debug_assert_eq!(out.len(), self.edge_origin[v].len());
            let mut seen = std::collections::BTreeSet::new();
            for &w in out {
                debug_assert!((w as usize) < self.succ.len(), "successor out of range");
                debug_assert!(seen.insert(w), "parallel edges in view");
            }
        }
    }

    /// The successor slot index leading from `u` to `w`, if present.
    pub fn slot(&self, u: u32, w: u32) -> Option<usize> {
        self.succ[u as usize].iter().position(|&x| x == w)
    }

    /// Predecessor lists, in canonical order of the sources.
    fn predecessors(&self) -> Vec<Vec<u32>> {
        let mut preds = vec![Vec::new(); self.len()];
        for (u, out) in self.succ.iter().enumerate() {
            for &w in out {
                preds[w as usize].push(u as u32);
            }
        }
        preds
    }
}

/// The outcome of solving a view: winning regions for both sides (a
/// partition of the vertices) and a memoryless strategy for each side on its
/// own region, as a chosen local successor per owned winning vertex.
#[derive(Debug, Clone)]
pub struct SolveResult {
    /// Vertices from which the protagonist wins.
    pub win_protagonist: DenseSet,
    /// Vertices from which the adversary wins.
    pub win_adversary: DenseSet,
    /// Chosen successor for protagonist-owned vertices in `win_protagonist`.
    pub strategy_protagonist: Vec<Option<u32>>,
    /// Chosen successor for adversary-owned vertices in `win_adversary`.
    pub strategy_adversary: Vec<Option<u32>>,
}

/// Computes the protagonist attractor to `target`: the least set containing
/// `target` that also contains every protagonist vertex with some successor
/// in the set and every adversary vertex with all successors in it.
///
/// The returned partial strategy realizes one-step progress toward `target`
/// for the protagonist vertices the attractor added. Deterministic: vertices
/// join in breadth-first rounds, and a joining protagonist vertex records the
/// first qualifying successor in canonical order.
pub fn attractor(view: &TwoPlayerView, target: &DenseSet) -> (DenseSet, Vec<Option<u32>>) {
    let alive = DenseSet::full(view.len());
    attractor_within(view, true, target, &alive)
}

/// Attractor for one side, restricted to the `alive` subgame. Vertices
/// outside `alive` neither join nor count as successors.
pub(crate) fn attractor_within(
    view: &TwoPlayerView,
    protagonist_side: bool,
    target: &DenseSet,
    alive: &DenseSet,
) -> (DenseSet, Vec<Option<u32>>) {
    let n = view.len();
    let preds = view.predecessors();
    let mut attracted = DenseSet::new(n);
    let mut strategy: Vec<Option<u32>> = vec![None; n];
    let mut queue: std::collections::VecDeque<u32> = std::collections::VecDeque::new();

    // Per-vertex count of alive successors not yet attracted, used to decide
    // when an opposing vertex is forced in.
    let mut remaining: Vec<u32> = vec![0; n];
    for u in alive.iter() {
        remaining[u as usize] =
            view.succ[u as usize].iter().filter(|&&w| alive.contains(w)).count() as u32;
    }

    for v in target.iter() {
        if alive.contains(v) && attracted.insert(v) {
            queue.push_back(v);
        }
    }

    while let Some(w) = queue.pop_front() {
        for &u in &preds[w as usize] {
            if !alive.contains(u) || attracted.contains(u) {
                continue;
            }
            let on_side = view.protagonist[u as usize] == protagonist_side;
            if on_side {
                attracted.insert(u);
                strategy[u as usize] = Some(w);
                queue.push_back(u);
            } else {
                remaining[u as usize] -= 1;
                if remaining[u as usize] == 0 {
                    attracted.insert(u);
                    queue.push_back(u);
                }
            }
        }
    }

    (attracted, strategy)
}

/// Solves the parity view: winning regions for both sides plus memoryless
/// strategies, via the classic recursive region decomposition.
///
/// Errors with a contract violation if the view contains a sink (plays must
/// be infinite; callers trim sinks first). Subgames created internally are
/// sink-free by construction, so the check is only needed at the boundary.
pub fn solve_zielonka(view: &TwoPlayerView) -> Result<SolveResult> {
    let alive = DenseSet::full(view.len());
    solve_zielonka_within(view, &alive)
}

/// Solves the restriction of the view to `alive`, which must be sink-free as
/// a subgame (every alive vertex keeps an alive successor).
pub(crate) fn solve_zielonka_within(view: &TwoPlayerView, alive: &DenseSet) -> Result<SolveResult> {
    for v in alive.iter() {
        if !view.succ[v as usize].iter().any(|&w| alive.contains(w)) {
            return Err(Error::contract(format!(
                "parity solving requires a sink-free view, but vertex #{v} has no successor"
            )));
        }
    }
    let n = view.len();
    let mut strategy_protagonist: Vec<Option<u32>> = vec![None; n];
    let mut strategy_adversary: Vec<Option<u32>> = vec![None; n];
    let (win_protagonist, win_adversary) =
        zielonka(view, alive.clone(), &mut strategy_protagonist, &mut strategy_adversary);

    // Recursion may leave stale strategy entries for vertices whose final
    // region changed; keep exactly the entries consistent with the result.
    for v in 0..n as u32 {
        let vp = view.protagonist[v as usize];
        if !vp || !win_protagonist.contains(v) {
            strategy_protagonist[v as usize] = None;
        }
        if vp || !win_adversary.contains(v) {
            strategy_adversary[v as usize] = None;
        }
    }
    debug_assert!(win_protagonist.is_disjoint(&win_adversary));
    debug_assert_eq!(win_protagonist.len() + win_adversary.len(), alive.len());
    for v in 0..n as u32 {
        let expect = alive.contains(v)
            && view.protagonist[v as usize] == win_protagonist.contains(v)
            && (if view.protagonist[v as usize] {
                win_protagonist.contains(v)
            } else {
                win_adversary.contains(v)
            });
        let entry = if view.protagonist[v as usize] {
            strategy_protagonist[v as usize]
        } else {
            strategy_adversary[v as usize]
        };
        debug_assert_eq!(entry.is_some(), expect, "strategy defined exactly on own region");
        if let Some(w) = entry {
            debug_assert!(view.slot(v, w).is_some(), "strategy target must be a successor");
            let own_region =
                if view.protagonist[v as usize] { &win_protagonist } else { &win_adversary };
            debug_assert!(own_region.contains(w), "strategy must stay in the winning region");
        }
    }

    Ok(SolveResult { win_protagonist, win_adversary, strategy_protagonist, strategy_adversary })
}

/// Recursive core. Returns the protagonist/adversary winning partition of
/// `alive` and records strategies for vertices it decides; entries for
/// vertices that later recursion reassigns are cleaned up by the caller.
fn zielonka(
    view: &TwoPlayerView,
    alive: DenseSet,
    strategy_protagonist: &mut Vec<Option<u32>>,
    strategy_adversary: &mut Vec<Option<u32>>,
) -> (DenseSet, DenseSet) {
    let n = view.len();
    if alive.is_empty() {
        return (DenseSet::new(n), DenseSet::new(n));
    }

    let top = alive.iter().map(|v| view.priority[v as usize]).max().unwrap();
    let protagonist_favored = top % 2 == 0;

    let mut tops = DenseSet::new(n);
    for v in alive.iter() {
        if view.priority[v as usize] == top {
            tops.insert(v);
        }
    }

    let (area, area_strategy) = attractor_within(view, protagonist_favored, &tops, &alive);
    let mut rest = alive.clone();
    rest.difference_with(&area);
    let (sub_protagonist, sub_adversary) =
        zielonka(view, rest, strategy_protagonist, strategy_adversary);
    let opposed_sub = if protagonist_favored { sub_adversary } else { sub_protagonist };

    if opposed_sub.is_empty() {
        // The favored side wins all of `alive`: attractor moves toward the
        // top-priority vertices, which themselves continue anywhere inside.
        let favored_strategy: &mut Vec<Option<u32>> = if protagonist_favored {
            strategy_protagonist
        } else {
            strategy_adversary
        };
        for v in area.iter() {
            if view.protagonist[v as usize] == protagonist_favored {
                if tops.contains(v) {
                    let first_alive = view.succ[v as usize]
                        .iter()
                        .copied()
                        .find(|&w| alive.contains(w))
                        .expect("alive subgames are sink-free");
                    favored_strategy[v as usize] = Some(first_alive);
                } else {
                    favored_strategy[v as usize] = area_strategy[v as usize];
                }
            }
        }
        let empty = DenseSet::new(n);
        if protagonist_favored {
            (alive, empty)
        } else {
            (empty, alive)
        }
    } else {
        // The opposed side holds a region; everything it attracts is lost to
        // the favored side. Re-solve the remainder.
        let (basin, basin_strategy) =
            attractor_within(view, !protagonist_favored, &opposed_sub, &alive);
        let opposed_strategy: &mut Vec<Option<u32>> = if protagonist_favored {
            strategy_adversary
        } else {
            strategy_protagonist
        };
        for v in basin.iter() {
            if view.protagonist[v as usize] != protagonist_favored && !opposed_sub.contains(v) {
                opposed_strategy[v as usize] = basin_strategy[v as usize];
            }
        }
        let mut rest = alive;
        rest.difference_with(&basin);
        let (re_protagonist, re_adversary) =
            zielonka(view, rest, strategy_protagonist, strategy_adversary);
        if protagonist_favored {
            let mut adversary = re_adversary;
            adversary.union_with(&basin);
            (re_protagonist, adversary)
        } else {
            let mut protagonist = re_protagonist;
            protagonist.union_with(&basin);
            (protagonist, re_adversary)
        }
    }
}

/// The vertices on which a play can settle while satisfying the objective:
/// for each even priority `p`, the vertices of those strongly connected
/// components of the `≤ p` subgraph that contain a priority-`p` vertex and an
/// internal edge (a single vertex needs a self-loop). A play cycling through
/// such a component forever sees maximum priority `p`, which is even.
pub fn recurrent_vertices(view: &TwoPlayerView) -> DenseSet {
    let mut result = DenseSet::new(view.len());
    for p in even_priorities(view) {
        let (component, count) = components_at_most(view, p);
        let accepted = accepted_components(view, p, &component, count);
        for v in 0..view.len() {
            if let Some(c) = component[v] {
                if accepted[c] {
                    result.insert(v as u32);
                }
            }
        }
    }
    result
}

/// The vertices from which *some* play (all players cooperating) satisfies
/// the objective: backward reachability to the recurrent vertices.
pub fn cooperative_region(view: &TwoPlayerView) -> DenseSet {
    let recurrent = recurrent_vertices(view);
    let preds = view.predecessors();
    let mut region = recurrent.clone();
    let mut queue: Vec<u32> = region.iter().collect();
    while let Some(w) = queue.pop() {
        for &u in &preds[w as usize] {
            if region.insert(u) {
                queue.push(u);
            }
        }
    }
    region
}

/// Whether the edge `u → w` can be taken infinitely often by some play
/// satisfying the objective: both endpoints must share an accepted component
/// of the `≤ p` subgraph for some even `p`.
pub fn edge_can_recur(view: &TwoPlayerView, u: u32, w: u32) -> bool {
    debug_assert!(view.slot(u, w).is_some(), "edge_can_recur expects an existing edge");
    for p in even_priorities(view) {
        let (component, count) = components_at_most(view, p);
        let accepted = accepted_components(view, p, &component, count);
        if let (Some(cu), Some(cw)) = (component[u as usize], component[w as usize]) {
            if cu == cw && accepted[cu] {
                return true;
            }
        }
    }
    false
}

/// The even priorities occurring in the view, ascending.
fn even_priorities(view: &TwoPlayerView) -> Vec<u32> {
    let mut evens: Vec<u32> = view.priority.iter().copied().filter(|p| p % 2 == 0).collect();
    evens.sort_unstable();
    evens.dedup();
    evens
}

/// Strongly connected components of the subgraph induced by priorities `≤ p`.
/// Returns a component id per vertex (`None` if excluded) and the count.
fn components_at_most(view: &TwoPlayerView, p: u32) -> (Vec<Option<usize>>, usize) {
    let included: Vec<bool> = view.priority.iter().map(|&q| q <= p).collect();
    let component = tarjan_components(&view.succ, &included);
    let count = component.iter().flatten().map(|&c| c + 1).max().unwrap_or(0);
    (component, count)
}

/// Marks the accepted components for priority `p`: containing a priority-`p`
/// vertex and at least one internal edge.
fn accepted_components(
    view: &TwoPlayerView,
    p: u32,
    component: &[Option<usize>],
    count: usize,
) -> Vec<bool> {
    let mut has_top = vec![false; count];
    let mut has_edge = vec![false; count];
    for v in 0..view.len() {
        let Some(c) = component[v] else { continue };
        if view.priority[v] == p {
            has_top[c] = true;
        }
        for &w in &view.succ[v] {
            if component[w as usize] == Some(c) {
                has_edge[c] = true;
            }
        }
    }
    has_top.iter().zip(&has_edge).map(|(&t, &e)| t && e).collect()
}

/// Iterative Tarjan over the vertices with `included[v]`, ignoring edges
/// leaving the included set. Component ids are assigned in completion order.
fn tarjan_components(succ: &[Vec<u32>], included: &[bool]) -> Vec<Option<usize>> {
    let n = succ.len();
    let mut component: Vec<Option<usize>> = vec![None; n];
    let mut index: Vec<Option<u32>> = vec![None; n];
    let mut lowlink: Vec<u32> = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut next_index = 0u32;
    let mut components = 0usize;

    // Explicit DFS frames: (vertex, next successor slot to explore).
    let mut frames: Vec<(u32, usize)> = Vec::new();
    for root in 0..n as u32 {
        if !included[root as usize] || index[root as usize].is_some() {
            continue;
        }
        frames.push((root, 0));
        index[root as usize] = Some(next_index);
        lowlink[root as usize] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&mut (v, ref mut slot)) = frames.last_mut() {
            if let Some(&w) = succ[v as usize].get(*slot) {
                *slot += 1;
                if !included[w as usize] {
                    continue;
                }
                match index[w as usize] {
                    None => {
                        index[w as usize] = Some(next_index);
                        lowlink[w as usize] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w as usize] = true;
                        frames.push((w, 0));
                    }
                    Some(wi) => {
                        if on_stack[w as usize] {
                            lowlink[v as usize] = lowlink[v as usize].min(wi);
                        }
                    }
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    lowlink[parent as usize] = lowlink[parent as usize].min(lowlink[v as usize]);
                }
                if lowlink[v as usize] == index[v as usize].unwrap() {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w as usize] = false;
                        component[w as usize] = Some(components);
                        if w == v {
                            break;
                        }
                    }
                    components += 1;
                }
            }
        }
    }
    component
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Game;

    /// Two vertices, protagonist must reach the even-priority self-loop.
    fn reachability_view() -> TwoPlayerView {
        // a (P1, prio 1) → b (P2, prio 2), b → b, b → a, a → a
        let game = Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2)],
            &[("a", "b"), ("a", "a"), ("b", "b"), ("b", "a")],
            &[vec![1, 2], vec![1, 1]],
        )
        .unwrap();
        TwoPlayerView::of_game(&game, game.spec(Player::new(1)), Player::new(1))
    }

    #[test]
    fn attractor_of_empty_target_is_empty() {
        let view = reachability_view();
        let (set, strategy) = attractor(&view, &DenseSet::new(view.len()));
        assert!(set.is_empty());
        assert!(strategy.iter().all(Option::is_none));
    }

    #[test]
    fn attractor_pulls_protagonist_choices() {
        let view = reachability_view();
        let target = DenseSet::from_members(2, [1]);
        let (set, strategy) = attractor(&view, &target);
        assert_eq!(set.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(strategy[0], Some(1));
        assert_eq!(strategy[1], None);
    }

    #[test]
    fn zielonka_solves_simple_recurrence() {
        // Protagonist owns 'a' and wants to visit 'b' (priority 2) infinitely
        // often; the adversary owns 'b' but b→a keeps priority 2 recurring
        // only if protagonist keeps returning. Protagonist wins everywhere:
        // from a, play a→b forever.
        let view = reachability_view();
        let result = solve_zielonka(&view).unwrap();
        assert_eq!(result.win_protagonist.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert!(result.win_adversary.is_empty());
        assert_eq!(result.strategy_protagonist[0], Some(1));
    }

    #[test]
    fn zielonka_rejects_sinks() {
        let mut view = reachability_view();
        view.succ[1].clear();
        view.edge_origin[1].clear();
        let err = solve_zielonka(&view).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn adversary_can_trap_odd_priority() {
        // a (P1, prio 1) ⇄ b (P2, prio 1), both with self-loops: no even
        // priority exists, so the adversary wins everywhere without moving.
        let game = Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2)],
            &[("a", "b"), ("a", "a"), ("b", "b"), ("b", "a")],
            &[vec![1, 1], vec![1, 1]],
        )
        .unwrap();
        let view = TwoPlayerView::of_game(&game, game.spec(Player::new(1)), Player::new(1));
        let result = solve_zielonka(&view).unwrap();
        assert!(result.win_protagonist.is_empty());
        assert_eq!(result.win_adversary.len(), 2);
        assert_eq!(result.strategy_adversary[1], Some(1));
    }

    #[test]
    fn recurrent_vertices_need_internal_edges() {
        // Priorities: a=0 with self-loop, b=0 without, c=2 unreachable at ≤0.
        let game = Game::from_parts(
            1,
            "a",
            &[("a", 1), ("b", 1), ("c", 1)],
            &[("a", "a"), ("b", "a"), ("c", "c"), ("a", "c")],
            &[vec![0, 0, 2]],
        )
        .unwrap();
        let view = TwoPlayerView::of_game(&game, game.spec(Player::new(1)), Player::new(1));
        let recurrent = recurrent_vertices(&view);
        // a: self-loop in the ≤0 subgraph → accepted. b: singleton without
        // self-loop → rejected at p=0, and only a,b qualify there. c: accepted
        // at p=2 via its self-loop.
        assert_eq!(recurrent.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert!(edge_can_recur(&view, 0, 0));
        assert!(!edge_can_recur(&view, 1, 0));
        assert!(edge_can_recur(&view, 2, 2));
        // a→c crosses components and never recurs in a satisfying play.
        assert!(!edge_can_recur(&view, 0, 2));
    }

    #[test]
    fn cooperative_region_reaches_recurrent_set() {
        // b → a(self-loop, prio 0); c isolated odd self-loop.
        let game = Game::from_parts(
            1,
            "a",
            &[("a", 1), ("b", 1), ("c", 1)],
            &[("a", "a"), ("b", "a"), ("c", "c")],
            &[vec![0, 1, 1]],
        )
        .unwrap();
        let view = TwoPlayerView::of_game(&game, game.spec(Player::new(1)), Player::new(1));
        let region = cooperative_region(&view);
        assert_eq!(region.iter().collect::<Vec<_>>(), vec![0, 1]);
    }
}
