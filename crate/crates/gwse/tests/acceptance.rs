//! The acceptance gate: eight checks that the toolkit does what it claims,
//! each printing one `[PASS] criterion N` line (run with `--nocapture` to
//! see them).
//!
//! Criteria 1, 2, 7, and 8 pin the two hand-written games to their exact
//! synthesis outcomes. Criteria 3–5 sweep a 500-game random corpus and hold
//! synthesis to its three defining properties, to agreement with the
//! brute-force oracle, and to its termination bound. Criterion 6 checks the
//! perspective-arena construction against the original game on sampled
//! plays, in both directions.

mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

use common::{corpus, edge_set, mutual_visit, random_profile, settle, vertex};
use gwse::assume::build_assumption_arena;
use gwse::engine::{compute_win, o_compute_ge, with_environment, Outcome, SynthesisTrace};
use gwse::game::{Game, Lasso, Player, VertexId};
use gwse::oracle::{
    language_equivalent, verify_gwse, winning_vertices, Formula, OracleBounds,
};
use gwse::solver::TwoPlayerView;
use gwse::templates::{uca_equal, AggregateUca, AssumptionProfile, UcaTemplate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 2000;

fn pass(n: u32, what: &str) {
    println!("[PASS] criterion {n}: {what}");
}

fn p(n: u32) -> Player {
    Player::new(n)
}

/// The shared corpus, synthesized once: every test over it sees the same
/// games, outcomes, and iteration traces.
fn synthesized() -> &'static [(Game, Outcome, SynthesisTrace)] {
    static SYNTH: OnceLock<Vec<(Game, Outcome, SynthesisTrace)>> = OnceLock::new();
    SYNTH.get_or_init(|| {
        corpus(CORPUS_SEED, CORPUS_SIZE)
            .into_iter()
            .map(|game| {
                let (outcome, trace) = o_compute_ge(&game).expect("synthesis is total");
                (game, outcome, trace)
            })
            .collect()
    })
}

fn settle_outcome() -> (Outcome, SynthesisTrace) {
    o_compute_ge(&settle()).expect("synthesis is total")
}

#[test]
fn criterion_1_settle_trace_evolution() {
    let started = Instant::now();
    let game = settle();
    let (outcome, trace) = settle_outcome();

    assert_eq!(trace.iterations.len(), 3, "synthesis must take exactly three iterations");
    let [first, second, third] = &trace.iterations[..] else { unreachable!() };

    // The loop starts from empty templates.
    assert!(first.assumptions.templates().iter().all(UcaTemplate::is_trivial));

    // First refinement: player 1 must never cross into the absorbing
    // corners and eventually stop returning home; player 2 must eventually
    // stop stalling at the hub.
    let psi1 = second.assumptions.template(p(1));
    assert_eq!(psi1.unsafe_edges(), &edge_set(&game, &[("v1", "v2"), ("v3", "v4")]));
    assert_eq!(psi1.colive_edges(), &edge_set(&game, &[("v1", "v0")]));
    let psi2 = second.assumptions.template(p(2));
    assert!(psi2.unsafe_edges().is_empty());
    assert_eq!(psi2.colive_edges(), &edge_set(&game, &[("v0", "v0")]));

    // Second refinement: player 2 additionally owes finiteness on the hub's
    // dead-side branch; player 1's template is already enough.
    assert!(uca_equal(third.assumptions.template(p(1)), psi1));
    let psi2 = third.assumptions.template(p(2));
    assert!(psi2.unsafe_edges().is_empty());
    assert_eq!(psi2.colive_edges(), &edge_set(&game, &[("v0", "v0"), ("v0", "v3")]));

    // Third iteration: both players now win their contract from the start.
    assert_eq!(third.winning, vec![true, true]);
    assert!(matches!(outcome, Outcome::Profile(_)));

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 1, "took {elapsed:?}");
    pass(1, &format!("settle trace evolves over exactly 3 iterations ({elapsed:?})"));
}

#[test]
fn criterion_2_mutual_visit_profile() {
    let started = Instant::now();
    let game = mutual_visit();
    let (outcome, _) = o_compute_ge(&game).expect("synthesis is total");
    let profile = match outcome {
        Outcome::Profile(profile) => profile,
        Outcome::Unrealizable(reason) => panic!("synthesis failed: {reason}"),
    };

    let assumptions = profile.assumptions();
    assert_eq!(
        assumptions.template(p(1)).unsafe_edges(),
        &edge_set(&game, &[("v3", "v4")]),
    );
    assert_eq!(
        assumptions.template(p(2)).unsafe_edges(),
        &edge_set(&game, &[("v2", "v4")]),
    );

    let bounds = OracleBounds::default();
    let contracts = Formula::all_contracts(&game, assumptions);
    let objectives = Formula::all_objectives(&game);
    let cmp = language_equivalent(&game, &contracts, &objectives, &bounds).unwrap();
    assert!(cmp.equivalent, "contracts must admit exactly the mutually winning plays");

    let by_hand = AssumptionProfile::new(
        &game,
        vec![
            UcaTemplate::new(&game, p(1), edge_set(&game, &[("v3", "v4")]), []).unwrap(),
            UcaTemplate::new(&game, p(2), edge_set(&game, &[("v2", "v4")]), []).unwrap(),
        ],
    )
    .unwrap();
    let cmp =
        language_equivalent(&game, &contracts, &Formula::all_contracts(&game, &by_hand), &bounds)
            .unwrap();
    assert!(cmp.equivalent, "synthesized contracts must match the hand-written profile");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 1, "took {elapsed:?}");
    pass(2, &format!("mutual-visit profile blocks exactly the two defections ({elapsed:?})"));
}

#[test]
fn criterion_3_synthesized_profiles_verify() {
    let started = Instant::now();
    let bounds = OracleBounds::default();
    let mut successes = 0usize;
    for (game, outcome, _) in synthesized() {
        let Outcome::Profile(profile) = outcome else { continue };
        successes += 1;
        let report = verify_gwse(game, profile.assumptions(), &bounds).unwrap();
        assert!(
            report.passes(),
            "verification rejected a synthesized profile on {game:?}: \
             general={} realizable={:?} secure={}",
            report.generality.equivalent,
            report.realizable,
            report.secure,
        );
    }
    assert!(successes > 0, "the corpus produced no successful synthesis to verify");

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    pass(
        3,
        &format!(
            "all {successes} synthesized profiles among {CORPUS_SIZE} games verify \
             as general, realizable, and secure ({elapsed:?})"
        ),
    );
}

#[test]
fn criterion_4_winning_regions_cross_check() {
    let started = Instant::now();
    let bounds = OracleBounds::default();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0x4c0de);
    let mut vertices_checked = 0usize;
    for (game, _, _) in synthesized() {
        let profile = random_profile(&mut rng, game);
        for player in game.players() {
            let check = compute_win(
                game,
                profile.template(player),
                &profile.assumption_of_others(player),
                game.spec(player),
                player,
            )
            .unwrap();
            let engine: Vec<VertexId> =
                game.vertices().filter(|v| check.region.contains(v.0)).collect();
            let oracle = winning_vertices(game, &profile, player, &bounds).unwrap();
            assert_eq!(
                engine, oracle,
                "winning-region disagreement for player {} on {game:?}",
                player.number()
            );
            vertices_checked += game.vertex_count();
        }
    }

    let elapsed = started.elapsed();
    pass(
        4,
        &format!(
            "engine and oracle agree on all {vertices_checked} contract-winning \
             verdicts across {CORPUS_SIZE} games ({elapsed:?})"
        ),
    );
}

#[test]
fn criterion_5_iteration_bound_and_monotone_growth() {
    for (game, _, trace) in synthesized() {
        let bound = 2 * game.player_count() as usize * game.edge_count();
        assert!(
            trace.iterations.len() <= bound,
            "{} iterations exceed the bound {bound} on {game:?}",
            trace.iterations.len()
        );
        for pair in trace.iterations.windows(2) {
            for player in game.players() {
                assert!(
                    pair[0]
                        .assumptions
                        .template(player)
                        .is_subsumed_by(pair[1].assumptions.template(player)),
                    "template obligations shrank for player {} on {game:?}",
                    player.number()
                );
            }
        }
    }
    pass(
        5,
        &format!(
            "all {CORPUS_SIZE} synthesis runs stay within 2·k·|E| iterations \
             with monotonically growing templates"
        ),
    );
}

#[test]
fn criterion_6_perspective_arena_matches_the_game() {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0x6a7e);
    let games = corpus(CORPUS_SEED ^ 0x6, 100);
    let mut projected = 0usize;
    let mut lifted = 0usize;
    for (i, game) in games.iter().enumerate() {
        let player = p(1 + (i as u32 % game.player_count()));
        let others = random_profile(&mut rng, game).assumption_of_others(player);
        let view = build_assumption_arena(game, &others, game.spec(player), player).unwrap();
        let formula =
            Formula::conj(vec![Formula::ParityWin(player), Formula::of_aggregate(&others)]);

        for _ in 0..6 {
            if let Some((lasso, arena_sat)) = sample_arena_lasso(&mut rng, game, &view) {
                assert_eq!(
                    arena_sat,
                    formula.satisfied_by(game, &lasso),
                    "projection changed the verdict of {} on {game:?}",
                    lasso.display(game)
                );
                projected += 1;
            }
            if let Some(lasso) = sample_game_lasso(&mut rng, game, &others) {
                let arena_sat = lifted_cycle_parity(game, &view, &lasso);
                assert_eq!(
                    arena_sat,
                    formula.satisfied_by(game, &lasso),
                    "lifting changed the verdict of {} on {game:?}",
                    lasso.display(game)
                );
                lifted += 1;
            }
        }
    }
    assert!(projected >= 100, "only {projected} arena plays sampled");
    assert!(lifted >= 100, "only {lifted} game plays sampled");
    pass(
        6,
        &format!(
            "perspective arenas agree with their games on {projected} projected \
             and {lifted} lifted plays"
        ),
    );
}

#[test]
fn criterion_7_environment_player_stays_undemanding() {
    let game = mutual_visit();
    let (outcome, _) = o_compute_ge(&game).expect("synthesis is total");
    let Outcome::Profile(two_player) = outcome else { panic!("two-player synthesis failed") };
    let env = p(3);
    let bounds = OracleBounds::default();

    // Handing the absorbing corner to a fresh environment player changes
    // nothing: the corner grants its owner no leverage, so synthesis finds
    // the same system templates, the environment player never accrues
    // obligations, and the result still verifies as an equilibrium.
    let corner_game = with_environment(&game, &[vertex(&game, "v4")]).unwrap();
    let (outcome, trace) = o_compute_ge(&corner_game).expect("synthesis is total");
    let Outcome::Profile(with_env) = outcome else { panic!("environment synthesis failed") };
    for player in [p(1), p(2)] {
        assert!(
            uca_equal(
                with_env.assumptions().template(player),
                two_player.assumptions().template(player)
            ),
            "system template changed for player {}",
            player.number()
        );
    }
    for record in &trace.iterations {
        assert!(
            record.assumptions.template(env).is_trivial(),
            "the environment player picked up obligations"
        );
    }
    assert!(verify_gwse(&corner_game, with_env.assumptions(), &bounds).unwrap().passes());

    // The hub, by contrast, is load-bearing. An environment player owes
    // nobody anything, so an environment that may route around v2 forever
    // leaves player 2 with no realizable contract; synthesis must refuse
    // rather than return a profile. The environment template still never
    // grows, and the brute-force check confirms the refusal is the truth of
    // the game: the two-player templates extended with a trivial
    // environment template keep full generality but fail realizability for
    // player 2 exactly.
    let hub_game = with_environment(&game, &[vertex(&game, "v0")]).unwrap();
    let (outcome, trace) = o_compute_ge(&hub_game).expect("synthesis is total");
    assert!(matches!(outcome, Outcome::Unrealizable(_)));
    for record in &trace.iterations {
        assert!(record.assumptions.template(env).is_trivial());
    }
    let extended = AssumptionProfile::new(
        &hub_game,
        vec![
            UcaTemplate::new(&hub_game, p(1), edge_set(&hub_game, &[("v3", "v4")]), []).unwrap(),
            UcaTemplate::new(&hub_game, p(2), edge_set(&hub_game, &[("v2", "v4")]), []).unwrap(),
            UcaTemplate::trivial(env),
        ],
    )
    .unwrap();
    let report = verify_gwse(&hub_game, &extended, &bounds).unwrap();
    assert!(report.generality.equivalent);
    assert_eq!(report.realizable, vec![true, false, true]);
    assert!(!report.passes());

    pass(
        7,
        "an environment player stays obligation-free: reassigning the corner \
         preserves both system templates, and reassigning the hub is refused \
         because player 2's contract stops being realizable",
    );
}

#[test]
fn criterion_8_settle_synthesis_succeeds_as_negative_control() {
    let (outcome, trace) = settle_outcome();
    assert!(matches!(outcome, Outcome::Profile(_)));
    assert_eq!(trace.iterations.len(), 3);
    pass(8, "settle synthesis succeeds where admissibility-based reasoning gives up");
}

/// A random walk over the perspective arena from the initial vertex, folded
/// at the first repeated arena node, projected back to game vertices.
/// Returns the projected play and the arena's own parity verdict, or `None`
/// when the walk strands in a vertex the obligations emptied.
fn sample_arena_lasso(
    rng: &mut ChaCha8Rng,
    game: &Game,
    view: &TwoPlayerView,
) -> Option<(Lasso, bool)> {
    let mut walk = vec![game.init().0];
    let mut seen = std::collections::BTreeMap::new();
    seen.insert(game.init().0, 0usize);
    let (prefix, cycle) = loop {
        let here = *walk.last().unwrap() as usize;
        if view.succ[here].is_empty() {
            return None;
        }
        let next = view.succ[here][rng.gen_range(0..view.succ[here].len())];
        if let Some(&j) = seen.get(&next) {
            if j == 0 {
                let mut cycle: Vec<u32> = walk[1..].to_vec();
                cycle.push(walk[0]);
                break (vec![walk[0]], cycle);
            }
            break (walk[..j].to_vec(), walk[j..].to_vec());
        }
        seen.insert(next, walk.len());
        walk.push(next);
    };

    let arena_sat =
        cycle.iter().map(|&n| view.priority[n as usize]).max().unwrap() % 2 == 0;

    // Rotate the cycle onto an original vertex (a relay always hands over to
    // one), then drop the relays on both parts.
    let k = cycle
        .iter()
        .position(|&n| view.vertex_origin[n as usize].is_some())
        .expect("every arena cycle passes through an original vertex");
    let mut prefix = prefix;
    prefix.extend(cycle[..k].iter().copied());
    let cycle = [&cycle[k..], &cycle[..k]].concat();
    let project = |nodes: &[u32]| -> Vec<VertexId> {
        nodes.iter().filter_map(|&n| view.vertex_origin[n as usize]).collect()
    };
    let lasso = Lasso::new(game, project(&prefix), project(&cycle))
        .expect("projected arena plays follow game edges");
    Some((lasso, arena_sat))
}

/// A random walk over the game that respects the others' unsafe edges,
/// folded at the first repeated vertex. `None` when the walk strands.
fn sample_game_lasso(
    rng: &mut ChaCha8Rng,
    game: &Game,
    others: &AggregateUca,
) -> Option<Lasso> {
    let mut walk = vec![game.init()];
    let mut seen = std::collections::BTreeMap::new();
    seen.insert(game.init(), 0usize);
    loop {
        let here = *walk.last().unwrap();
        let allowed: Vec<_> = game
            .outgoing(here)
            .iter()
            .filter(|e| !others.unsafe_edges().contains(e))
            .collect();
        if allowed.is_empty() {
            return None;
        }
        let next = game.target(*allowed[rng.gen_range(0..allowed.len())]);
        if let Some(&j) = seen.get(&next) {
            let (prefix, cycle) = if j == 0 {
                let mut cycle: Vec<VertexId> = walk[1..].to_vec();
                cycle.push(walk[0]);
                (vec![walk[0]], cycle)
            } else {
                (walk[..j].to_vec(), walk[j..].to_vec())
            };
            return Some(Lasso::new(game, prefix, cycle).expect("walk follows edges"));
        }
        seen.insert(next, walk.len());
        walk.push(next);
    }
}

/// The arena parity verdict of a game play lifted into the perspective
/// arena: the recurring arena nodes are the cycle's vertices plus the relays
/// its steps pass through.
fn lifted_cycle_parity(game: &Game, view: &TwoPlayerView, lasso: &Lasso) -> bool {
    let mut nodes: BTreeSet<u32> = lasso.cycle().iter().map(|v| v.0).collect();
    for e in lasso.recurring_edges(game) {
        let u = game.source(e).0 as usize;
        let slot = view.edge_origin[u]
            .iter()
            .position(|&o| o == Some(e))
            .expect("lifted plays avoid the unsafe edges");
        let w = view.succ[u][slot];
        if view.vertex_origin[w as usize].is_none() {
            nodes.insert(w);
        }
    }
    nodes.iter().map(|&n| view.priority[n as usize]).max().unwrap() % 2 == 0
}
