//! Exhaustive enumeration of play shapes on small graphs.
//!
//! On an ultimately periodic play, satisfaction of any boolean combination
//! of parity objectives and edge-template atoms depends on two things only:
//! which edges the play crosses forever (a strongly connected set), and which
//! of a fixed collection of watched edges it crosses at least once on the way
//! there. A [`RecurrenceCase`] captures exactly that pair, together with a
//! concrete witness play realizing it; [`enumerate_recurrences`] lists every
//! case some play from the initial vertex realizes. That list is the oracle's
//! finite, exact search space: a formula holds on all plays iff it holds on
//! all cases.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::game::{EdgeId, Game, Lasso, VertexId};
use crate::sets::DenseSet;

use super::graph;
use super::OracleBounds;

/// One achievable play shape: the edges repeated forever, and the watched
/// edges some approach path crosses before settling into them.
#[derive(Debug, Clone)]
pub struct RecurrenceCase {
    loop_edges: BTreeSet<EdgeId>,
    reach_profile: BTreeSet<EdgeId>,
    witness: Lasso,
}

impl RecurrenceCase {
    /// The edges the play crosses infinitely often; strongly connected,
    /// nonempty, reachable from the initial vertex.
    pub fn loop_edges(&self) -> &BTreeSet<EdgeId> {
        &self.loop_edges
    }

    /// The watched edges crossed at least once but only finitely often.
    /// Disjoint from [`loop_edges`](Self::loop_edges); a subset of the
    /// watched set the enumeration ran with.
    pub fn reach_profile(&self) -> &BTreeSet<EdgeId> {
        &self.reach_profile
    }

    /// A concrete play realizing this shape.
    pub fn witness(&self) -> &Lasso {
        &self.witness
    }

    /// Whether the play crosses `e` at least once. Meaningful for loop edges
    /// and for edges in the enumeration's watched set; other edges may be
    /// crossed without being recorded.
    pub fn occurs(&self, e: EdgeId) -> bool {
        self.loop_edges.contains(&e) || self.reach_profile.contains(&e)
    }

    /// The vertices visited infinitely often: the loop edges' endpoints.
    pub fn recurring_vertices(&self, game: &Game) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for &e in &self.loop_edges {
            let (u, v) = game.endpoints(e);
            out.insert(u);
            out.insert(v);
        }
        out
    }
}

/// Enumerates every play shape of the game from its initial vertex, watching
/// the given edges for prefix occurrences. Refuses (never truncates) when the
/// graph exceeds the oracle's edge bound.
pub fn enumerate_recurrences(
    game: &Game,
    watched: &BTreeSet<EdgeId>,
    bounds: &OracleBounds,
) -> Result<Vec<RecurrenceCase>> {
    let mut succ: Vec<Vec<(u32, EdgeId)>> = vec![Vec::new(); game.vertex_count()];
    for v in game.vertices() {
        for &e in game.outgoing(v) {
            succ[v.index()].push((game.target(e).0, e));
        }
    }
    let vertex: Vec<VertexId> = game.vertices().collect();
    enumerate_over(game, &succ, &vertex, game.init().0, watched, bounds)
}

/// The enumeration over an arbitrary node graph whose steps are labeled with
/// game edges — the game itself, or a strategy product unfolding it. Cases
/// are reported at the game level (label sets and projected witnesses) and
/// deduplicated by shape, so verdicts can be read off directly.
pub(crate) fn enumerate_over(
    game: &Game,
    succ: &[Vec<(u32, EdgeId)>],
    vertex: &[VertexId],
    init: u32,
    watched: &BTreeSet<EdgeId>,
    bounds: &OracleBounds,
) -> Result<Vec<RecurrenceCase>> {
    let node_count = succ.len();
    debug_assert_eq!(vertex.len(), node_count);
    let steps: Vec<(u32, u32, EdgeId)> = succ
        .iter()
        .enumerate()
        .flat_map(|(u, outs)| outs.iter().map(move |&(w, e)| (u as u32, w, e)))
        .collect();
    let step_count = steps.len();
    if step_count > bounds.max_edges {
        return Err(Error::refused(format!(
            "recurrence enumeration over {step_count} edges exceeds the oracle bound of {} edges",
            bounds.max_edges
        )));
    }
    let windex: BTreeMap<EdgeId, usize> = watched.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let width = windex.len();
    if node_count << width > 1 << 22 {
        return Err(Error::refused(format!(
            "tracking {width} watched edges over {node_count} nodes exceeds the oracle's state budget"
        )));
    }

    // Breadth-first exploration of (node, watched-edges-crossed-so-far),
    // keeping parent pointers so any reached pair yields an approach path.
    let state_count = node_count << width;
    let state = |node: u32, mask: usize| (mask * node_count) + node as usize;
    let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None; state_count];
    let mut reached = vec![false; state_count];
    let mut masks_at: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    let start = state(init, 0);
    reached[start] = true;
    masks_at[init as usize].push(0);
    let mut queue = VecDeque::new();
    queue.push_back((init, 0usize));
    while let Some((node, mask)) = queue.pop_front() {
        let here = state(node, mask);
        for &(to, label) in &succ[node as usize] {
            let next_mask = match windex.get(&label) {
                Some(&bit) => mask | (1 << bit),
                None => mask,
            };
            let next = state(to, next_mask);
            if reached[next] {
                continue;
            }
            reached[next] = true;
            parent[next] = Some((here, label));
            masks_at[to as usize].push(next_mask);
            queue.push_back((to, next_mask));
        }
    }

    let approach_nodes = |node: u32, mask: usize| -> Vec<u32> {
        let mut path = vec![node];
        let mut cur = state(node, mask);
        while let Some((prev, _)) = parent[cur] {
            path.push((prev % node_count) as u32);
            cur = prev;
        }
        path.reverse();
        path
    };

    let mut cases = Vec::new();
    let mut shapes_seen: BTreeSet<(BTreeSet<EdgeId>, BTreeSet<EdgeId>)> = BTreeSet::new();
    for loop_mask in 1usize..(1 << step_count) {
        let chosen: Vec<usize> = (0..step_count).filter(|i| loop_mask & (1 << i) != 0).collect();
        let pairs: Vec<(u32, u32)> = chosen.iter().map(|&i| (steps[i].0, steps[i].1)).collect();
        if !graph::edge_set_strongly_connected(node_count, &pairs) {
            continue;
        }
        let labels: BTreeSet<EdgeId> = chosen.iter().map(|&i| steps[i].2).collect();
        let mut endpoints: Vec<u32> = pairs.iter().flat_map(|&(u, w)| [u, w]).collect();
        endpoints.sort_unstable();
        endpoints.dedup();
        for &entry in &endpoints {
            for &mask in &masks_at[entry as usize] {
                let profile: BTreeSet<EdgeId> = windex
                    .iter()
                    .filter(|&(e, &bit)| mask & (1 << bit) != 0 && !labels.contains(e))
                    .map(|(&e, _)| e)
                    .collect();
                if !shapes_seen.insert((labels.clone(), profile.clone())) {
                    continue;
                }
                let prefix_nodes = approach_nodes(entry, mask);
                let cycle_nodes = step_covering_cycle(node_count, &steps, &chosen, entry);
                let witness =
                    assemble_lasso(game, vertex, &prefix_nodes, &cycle_nodes)?;
                debug_assert_eq!(witness.recurring_edges(game), labels);
                debug_assert_eq!(
                    witness
                        .edges_ever(game)
                        .intersection(watched)
                        .copied()
                        .collect::<BTreeSet<_>>(),
                    profile
                        .union(&labels.intersection(watched).copied().collect())
                        .copied()
                        .collect::<BTreeSet<_>>()
                );
                cases.push(RecurrenceCase {
                    loop_edges: labels.clone(),
                    reach_profile: profile,
                    witness,
                });
            }
        }
    }
    Ok(cases)
}

/// A closed node walk from `entry` crossing every chosen step at least once
/// and nothing outside the chosen set. First and last node coincide.
fn step_covering_cycle(
    node_count: usize,
    steps: &[(u32, u32, EdgeId)],
    chosen: &[usize],
    entry: u32,
) -> Vec<u32> {
    let mut succ_f: Vec<Vec<u32>> = vec![Vec::new(); node_count];
    let mut members = DenseSet::new(node_count);
    for &i in chosen {
        let (u, w, _) = steps[i];
        succ_f[u as usize].push(w);
        members.insert(u);
        members.insert(w);
    }
    let mut walk = vec![entry];
    let mut cur = entry;
    for &i in chosen {
        let (u, w, _) = steps[i];
        let path = graph::shortest_path(&succ_f, cur, u, &members)
            .expect("chosen steps are strongly connected");
        walk.extend_from_slice(&path[1..]);
        walk.push(w);
        cur = w;
    }
    if cur != entry {
        let path = graph::shortest_path(&succ_f, cur, entry, &members)
            .expect("chosen steps are strongly connected");
        walk.extend_from_slice(&path[1..]);
    }
    debug_assert_eq!(*walk.first().unwrap(), *walk.last().unwrap());
    walk
}

/// Projects an approach path and a closed walk down to game vertices and
/// packages them as a lasso. The path must end where the walk begins; a
/// trivial approach is rotated into the cycle so the prefix stays nonempty.
pub(crate) fn assemble_lasso(
    game: &Game,
    vertex: &[VertexId],
    prefix_nodes: &[u32],
    closed_walk: &[u32],
) -> Result<Lasso> {
    debug_assert_eq!(prefix_nodes.last(), closed_walk.first());
    debug_assert_eq!(closed_walk.first(), closed_walk.last());
    let project = |nodes: &[u32]| -> Vec<VertexId> {
        nodes.iter().map(|&n| vertex[n as usize]).collect()
    };
    let cycle_nodes = &closed_walk[..closed_walk.len() - 1];
    if prefix_nodes.len() > 1 {
        Lasso::new(
            game,
            project(&prefix_nodes[..prefix_nodes.len() - 1]),
            project(cycle_nodes),
        )
    } else {
        // The play starts inside its own loop: peel the entry off as the
        // prefix and rotate the cycle one step.
        let mut rotated: Vec<u32> = cycle_nodes[1..].to_vec();
        rotated.push(cycle_nodes[0]);
        Lasso::new(game, project(&cycle_nodes[..1]), project(&rotated))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn bounds() -> OracleBounds {
        OracleBounds::default()
    }

    #[test]
    fn a_single_self_loop_yields_one_case() {
        let game = Game::from_parts(1, "a", &[("a", 1)], &[("a", "a")], &[vec![0]]).unwrap();
        let cases = enumerate_recurrences(&game, &BTreeSet::new(), &bounds()).unwrap();
        assert_eq!(cases.len(), 1);
        let case = &cases[0];
        assert_eq!(case.loop_edges().len(), 1);
        assert!(case.reach_profile().is_empty());
        assert_eq!(case.witness().display(&game), "a (a)^ω");
    }

    #[test]
    fn unreachable_loops_are_excluded() {
        // b's self-loop is strongly connected but no play from a reaches it.
        let game = Game::from_parts(
            1,
            "a",
            &[("a", 1), ("b", 1)],
            &[("a", "a"), ("b", "b"), ("b", "a")],
            &[vec![0, 0]],
        )
        .unwrap();
        let cases = enumerate_recurrences(&game, &BTreeSet::new(), &bounds()).unwrap();
        assert_eq!(cases.len(), 1);
        let a = game.vertex("a").unwrap();
        let aa = game.edge_between(a, a).unwrap();
        assert_eq!(cases[0].loop_edges(), &BTreeSet::from([aa]));
    }

    #[test]
    fn unions_of_touching_loops_are_their_own_cases() {
        let game = Game::from_parts(
            1,
            "a",
            &[("a", 1), ("b", 1)],
            &[("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")],
            &[vec![0, 0]],
        )
        .unwrap();
        let cases = enumerate_recurrences(&game, &BTreeSet::new(), &bounds()).unwrap();
        // {aa}, {bb}, {ab,ba}, {aa,ab,ba}, {bb,ab,ba}, {aa,bb,ab,ba}.
        assert_eq!(cases.len(), 6);
        let a = game.vertex("a").unwrap();
        let b = game.vertex("b").unwrap();
        let ab = game.edge_between(a, b).unwrap();
        let ba = game.edge_between(b, a).unwrap();
        assert!(cases
            .iter()
            .any(|c| c.loop_edges() == &BTreeSet::from([ab, ba])));
        assert!(cases.iter().all(|c| {
            c.witness().recurring_edges(&game) == *c.loop_edges()
        }));
    }

    #[test]
    fn watched_crossings_split_cases_by_approach() {
        // Reaching b's loop forces the watched edge a->b; staying at a does not.
        let game = Game::from_parts(
            1,
            "a",
            &[("a", 1), ("b", 1)],
            &[("a", "a"), ("a", "b"), ("b", "b")],
            &[vec![0, 0]],
        )
        .unwrap();
        let a = game.vertex("a").unwrap();
        let b = game.vertex("b").unwrap();
        let ab = game.edge_between(a, b).unwrap();
        let bb = game.edge_between(b, b).unwrap();
        let cases = enumerate_recurrences(&game, &BTreeSet::from([ab]), &bounds()).unwrap();
        let bb_case = cases
            .iter()
            .find(|c| c.loop_edges() == &BTreeSet::from([bb]))
            .unwrap();
        assert_eq!(bb_case.reach_profile(), &BTreeSet::from([ab]));
        assert!(bb_case.occurs(ab));
        let aa_case = cases
            .iter()
            .find(|c| c.loop_edges().contains(&game.edge_between(a, a).unwrap()))
            .unwrap();
        assert!(!aa_case.occurs(ab));
    }

    #[test]
    fn oversized_graphs_are_refused_not_truncated() {
        let game = Game::from_parts(
            1,
            "a",
            &[("a", 1), ("b", 1)],
            &[("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")],
            &[vec![0, 0]],
        )
        .unwrap();
        let tight = OracleBounds { max_edges: 3, ..OracleBounds::default() };
        let err = enumerate_recurrences(&game, &BTreeSet::new(), &tight).unwrap_err();
        assert!(matches!(err, Error::Refused(_)));
    }
}
