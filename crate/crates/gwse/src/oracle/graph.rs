//! Small self-contained graph algorithms for the brute-force oracle.
//!
//! The oracle re-implements its reachability and component machinery on
//! purpose: the verifier and the synthesis engine must not be able to agree
//! merely because they share code. Everything here works on plain adjacency
//! lists over `u32` node indices, optionally restricted to a node mask.

use crate::sets::DenseSet;

/// Nodes reachable from `start` by following `succ`, including `start`.
pub(crate) fn reachable(succ: &[Vec<u32>], start: u32) -> DenseSet {
    let mut seen = DenseSet::new(succ.len());
    seen.insert(start);
    let mut queue = vec![start];
    while let Some(v) = queue.pop() {
        for &w in &succ[v as usize] {
            if seen.insert(w) {
                queue.push(w);
            }
        }
    }
    seen
}

/// Strongly connected components of the subgraph induced by `included`,
/// via Kosaraju's two-pass scheme with explicit stacks. Component order and
/// member order are deterministic for a fixed input.
pub(crate) fn kosaraju(succ: &[Vec<u32>], included: &DenseSet) -> Vec<Vec<u32>> {
    let n = succ.len();
    debug_assert_eq!(included.universe(), n);
    // Forward pass: record nodes in order of DFS completion.
    let mut order: Vec<u32> = Vec::with_capacity(included.len());
    let mut seen = vec![false; n];
    for root in included.iter() {
        if seen[root as usize] {
            continue;
        }
        seen[root as usize] = true;
        let mut stack: Vec<(u32, usize)> = vec![(root, 0)];
        while let Some(frame) = stack.last_mut() {
            let (v, i) = *frame;
            if i < succ[v as usize].len() {
                frame.1 += 1;
                let w = succ[v as usize][i];
                if included.contains(w) && !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    // Backward pass: sweep the reverse graph in reverse completion order.
    let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in included.iter() {
        for &w in &succ[v as usize] {
            if included.contains(w) {
                rev[w as usize].push(v);
            }
        }
    }
    let mut component = vec![usize::MAX; n];
    let mut components: Vec<Vec<u32>> = Vec::new();
    for &v in order.iter().rev() {
        if component[v as usize] != usize::MAX {
            continue;
        }
        let id = components.len();
        component[v as usize] = id;
        let mut members = vec![v];
        let mut queue = vec![v];
        while let Some(u) = queue.pop() {
            for &w in &rev[u as usize] {
                if component[w as usize] == usize::MAX {
                    component[w as usize] = id;
                    members.push(w);
                    queue.push(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    components
}

/// Whether a nonempty edge set is strongly connected: every endpoint reaches
/// every other endpoint using only the given edges.
pub(crate) fn edge_set_strongly_connected(node_count: usize, edges: &[(u32, u32)]) -> bool {
    if edges.is_empty() {
        return false;
    }
    let mut succ: Vec<Vec<u32>> = vec![Vec::new(); node_count];
    let mut touched = DenseSet::new(node_count);
    for &(u, w) in edges {
        succ[u as usize].push(w);
        touched.insert(u);
        touched.insert(w);
    }
    kosaraju(&succ, &touched).len() == 1
}

/// Shortest path `from -> to` inside `within`, as an inclusive node sequence.
/// Returns `[from]` when the two coincide.
pub(crate) fn shortest_path(
    succ: &[Vec<u32>],
    from: u32,
    to: u32,
    within: &DenseSet,
) -> Option<Vec<u32>> {
    if !within.contains(from) || !within.contains(to) {
        return None;
    }
    if from == to {
        return Some(vec![from]);
    }
    let mut parent: Vec<Option<u32>> = vec![None; succ.len()];
    let mut seen = DenseSet::new(succ.len());
    seen.insert(from);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        for &w in &succ[v as usize] {
            if !within.contains(w) || !seen.insert(w) {
                continue;
            }
            parent[w as usize] = Some(v);
            if w == to {
                let mut path = vec![to];
                let mut cur = to;
                while let Some(p) = parent[cur as usize] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// Searches `within` for a nonempty strongly connected subgraph, carrying at
/// least one edge, whose maximum priority is even under **every** assignment
/// in `conds`. Returns its sorted node set.
///
/// This decides whether some play whose recurrent part stays in `within` can
/// make all the given parity conditions hold at once: the recurrent nodes of
/// any play form such a subgraph, and conversely a closed walk covering the
/// returned set realizes exactly its maxima. The search peels, from each
/// component, the top-priority nodes of every condition whose maximum is odd
/// — no qualifying subgraph can touch them — and recurses on what is left.
pub(crate) fn even_max_component(
    succ: &[Vec<u32>],
    within: &DenseSet,
    conds: &[&[u32]],
) -> Option<Vec<u32>> {
    let mut work: Vec<DenseSet> = vec![within.clone()];
    while let Some(area) = work.pop() {
        for members in kosaraju(succ, &area) {
            let has_edge = members.len() > 1
                || succ[members[0] as usize]
                    .iter()
                    .any(|&w| w == members[0] && area.contains(w));
            if !has_edge {
                continue;
            }
            let mut all_even = true;
            let mut bad = DenseSet::new(succ.len());
            for prio in conds {
                let top = members.iter().map(|&v| prio[v as usize]).max().unwrap();
                if top % 2 == 1 {
                    all_even = false;
                    for &v in &members {
                        if prio[v as usize] == top {
                            bad.insert(v);
                        }
                    }
                }
            }
            if all_even {
                return Some(members);
            }
            let mut rest = DenseSet::from_members(succ.len(), members.iter().copied());
            rest.difference_with(&bad);
            if !rest.is_empty() {
                work.push(rest);
            }
        }
    }
    None
}

/// A closed walk from `members[0]` visiting every node of `members`, using
/// only edges between members. First and last node coincide. The members must
/// induce a strongly connected subgraph with at least one edge among them.
pub(crate) fn covering_cycle(succ: &[Vec<u32>], members: &[u32]) -> Vec<u32> {
    debug_assert!(!members.is_empty());
    let mask = DenseSet::from_members(succ.len(), members.iter().copied());
    let home = members[0];
    let mut walk = vec![home];
    let mut cur = home;
    for &target in members {
        if target == cur {
            continue;
        }
        let path = shortest_path(succ, cur, target, &mask)
            .expect("covering cycle requires a strongly connected member set");
        walk.extend_from_slice(&path[1..]);
        cur = target;
    }
    if cur != home {
        let path = shortest_path(succ, cur, home, &mask)
            .expect("covering cycle requires a strongly connected member set");
        walk.extend_from_slice(&path[1..]);
    }
    if walk.len() == 1 {
        // A single node: close the walk through its self-loop.
        debug_assert!(succ[home as usize].contains(&home));
        walk.push(home);
    }
    walk
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full(n: usize) -> DenseSet {
        DenseSet::full(n)
    }

    #[test]
    fn kosaraju_splits_a_chain_of_two_loops() {
        // 0 <-> 1 -> 2 <-> 3
        let succ = vec![vec![1], vec![0, 2], vec![3], vec![2]];
        let comps = kosaraju(&succ, &full(4));
        assert_eq!(comps.len(), 2);
        assert!(comps.contains(&vec![0, 1]));
        assert!(comps.contains(&vec![2, 3]));
    }

    #[test]
    fn edge_sets_must_close_back_on_themselves() {
        assert!(edge_set_strongly_connected(3, &[(0, 1), (1, 0)]));
        assert!(edge_set_strongly_connected(3, &[(2, 2)]));
        assert!(!edge_set_strongly_connected(3, &[(0, 1)]));
        assert!(!edge_set_strongly_connected(3, &[(0, 1), (1, 2)]));
        assert!(!edge_set_strongly_connected(3, &[]));
    }

    #[test]
    fn even_max_search_peels_odd_tops() {
        // One component {0,1,2}; priorities give 2 an odd top, but the pair
        // {0,1} still closes a cycle with even maximum.
        let succ = vec![vec![1], vec![0, 2], vec![0]];
        let prio = vec![2u32, 1, 3];
        let found = even_max_component(&succ, &full(3), &[&prio]);
        assert_eq!(found, Some(vec![0, 1]));
    }

    #[test]
    fn even_max_search_respects_every_condition() {
        // The {0,1} loop is even for the first condition but odd for the
        // second; no subgraph satisfies both.
        let succ = vec![vec![1], vec![0]];
        let first = vec![2u32, 0];
        let second = vec![1u32, 0];
        assert_eq!(even_max_component(&succ, &full(2), &[&first, &second]), None);
    }

    #[test]
    fn covering_cycles_touch_every_member_and_close() {
        let succ = vec![vec![1], vec![2], vec![0]];
        let walk = covering_cycle(&succ, &[0, 1, 2]);
        assert_eq!(*walk.first().unwrap(), *walk.last().unwrap());
        for v in 0..3u32 {
            assert!(walk.contains(&v));
        }
    }

    #[test]
    fn self_loop_closes_through_itself() {
        let succ = vec![vec![0]];
        assert_eq!(covering_cycle(&succ, &[0]), vec![0, 0]);
    }
}
