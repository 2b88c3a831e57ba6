//! Randomized law checking across the whole stack.
//!
//! Each property draws small random games from the shared generator and
//! checks a contract that must hold on every instance: the zero-sum solver
//! partitions its arena, abstract play shapes agree with their concrete
//! witnesses, documents survive a round trip, the template algebra behaves
//! like intersection, induced plays are deterministic, and the synthesis
//! engine's winning regions match the brute-force oracle's.

mod common;

use std::collections::BTreeSet;

use common::{random_game, random_profile, random_template};
use gwse::engine::{coalition_game, compute_win, with_environment};
use gwse::game::{parse_game, Game, Lasso, Player, VertexId};
use gwse::oracle::{
    check_wse, enumerate_recurrences, play_of, preference_less, winning_vertices, Formula,
    OracleBounds, PayoffProfile, WseVerdict,
};
use gwse::solver::{solve_zielonka, TwoPlayerView};
use gwse::strategy::FiniteMemoryStrategy;
use gwse::templates::{lasso_satisfies_uca, uca_equal, AssumptionProfile};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn game_from_seed(seed: u64) -> Game {
    random_game(&mut ChaCha8Rng::seed_from_u64(seed))
}

/// A uniformly random memoryless strategy for one player.
fn random_memoryless(rng: &mut ChaCha8Rng, game: &Game, player: Player) -> FiniteMemoryStrategy {
    let moves = game
        .vertices()
        .map(|v| {
            if game.owner(v) == player {
                let out = game.outgoing(v);
                Some(out[rng.gen_range(0..out.len())])
            } else {
                None
            }
        })
        .collect();
    FiniteMemoryStrategy::memoryless(game, player, moves).expect("chosen edges leave their vertex")
}

/// A random walk from the initial vertex, folded into a lasso at the first
/// repeated vertex.
fn random_lasso(rng: &mut ChaCha8Rng, game: &Game) -> Lasso {
    let mut walk = vec![game.init()];
    let mut seen = std::collections::BTreeMap::new();
    seen.insert(game.init(), 0usize);
    loop {
        let here = *walk.last().unwrap();
        let out = game.outgoing(here);
        let next = game.target(out[rng.gen_range(0..out.len())]);
        if let Some(&j) = seen.get(&next) {
            let (prefix, cycle) = if j == 0 {
                let mut cycle: Vec<VertexId> = walk[1..].to_vec();
                cycle.push(walk[0]);
                (vec![walk[0]], cycle)
            } else {
                (walk[..j].to_vec(), walk[j..].to_vec())
            };
            return Lasso::new(game, prefix, cycle).expect("walk follows edges");
        }
        seen.insert(next, walk.len());
        walk.push(next);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// The zero-sum solver assigns every vertex to exactly one side.
    #[test]
    fn parity_solving_partitions_every_view(seed in any::<u64>()) {
        let game = game_from_seed(seed);
        for player in game.players() {
            let view = TwoPlayerView::of_game(&game, game.spec(player), player);
            let solved = solve_zielonka(&view).unwrap();
            prop_assert_eq!(solved.win_protagonist.len() + solved.win_adversary.len(), view.len());
            prop_assert!(solved.win_protagonist.is_disjoint(&solved.win_adversary));
        }
    }

    /// Abstract play shapes and their concrete witness plays give the same
    /// verdict on every formula the oracle can express.
    #[test]
    fn play_shapes_agree_with_their_witnesses(seed in any::<u64>()) {
        let game = game_from_seed(seed);
        let profile = random_profile(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed), &game);
        let formula = Formula::all_contracts(&game, &profile);
        let watched = formula.watched_edges();
        let cases = enumerate_recurrences(&game, &watched, &OracleBounds::default()).unwrap();
        prop_assert!(!cases.is_empty());
        for case in &cases {
            prop_assert_eq!(
                formula.satisfied_by_case(&game, case),
                formula.satisfied_by(&game, case.witness()),
                "shape and witness disagree on {}", case.witness().display(&game)
            );
        }
    }

    /// The deviation preference is a strict partial order, for every player.
    #[test]
    fn preferences_form_a_strict_partial_order(
        len in 2usize..=3,
        raw in prop::collection::vec(any::<bool>(), 9),
    ) {
        let cut: Vec<PayoffProfile> =
            raw.chunks(3).map(|c| PayoffProfile::new(c[..len].to_vec())).collect();
        let (x, y, z) = (&cut[0], &cut[1], &cut[2]);
        for j in 1..=len as u32 {
            let j = Player::new(j);
            prop_assert!(!preference_less(x, x, j));
            if preference_less(x, y, j) {
                prop_assert!(!preference_less(y, x, j));
            }
            if preference_less(x, y, j) && preference_less(y, z, j) {
                prop_assert!(preference_less(x, z, j));
            }
        }
    }

    /// Games and assumption profiles survive their JSON round trips.
    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let game = game_from_seed(seed);
        let text = game.to_json();
        let back = parse_game(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);

        let profile = random_profile(&mut ChaCha8Rng::seed_from_u64(seed ^ 0xd0c5), &game);
        let doc = profile.to_doc(&game);
        let back = AssumptionProfile::from_doc(&game, &doc).unwrap();
        for player in game.players() {
            prop_assert!(uca_equal(profile.template(player), back.template(player)));
        }
    }

    /// Conjoining templates behaves like intersecting their languages.
    #[test]
    fn template_conjunction_is_the_intersection_of_obligations(seed in any::<u64>()) {
        let game = game_from_seed(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa1b2);
        for player in game.players() {
            let t1 = random_template(&mut rng, &game, player);
            let t2 = random_template(&mut rng, &game, player);
            let both = t1.conjoin(&game, &t2).unwrap();
            prop_assert!(uca_equal(&both, &t2.conjoin(&game, &t1).unwrap()));
            prop_assert!(uca_equal(&t1, &t1.conjoin(&game, &t1).unwrap()));
            prop_assert!(t1.is_subsumed_by(&both));
            prop_assert!(t2.is_subsumed_by(&both));
            for _ in 0..5 {
                let lasso = random_lasso(&mut rng, &game);
                prop_assert_eq!(
                    lasso_satisfies_uca(&game, &lasso, &both),
                    lasso_satisfies_uca(&game, &lasso, &t1)
                        && lasso_satisfies_uca(&game, &lasso, &t2)
                );
            }
        }
    }

    /// A full strategy profile induces one deterministic play, and the
    /// equilibrium check judges it exactly by that play's payoff.
    #[test]
    fn induced_plays_are_deterministic_and_judged_consistently(seed in any::<u64>()) {
        let game = game_from_seed(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xbeef);
        let profile: Vec<FiniteMemoryStrategy> =
            game.players().map(|p| random_memoryless(&mut rng, &game, p)).collect();
        let play = play_of(&game, &profile).unwrap();
        prop_assert_eq!(&play, &play_of(&game, &profile).unwrap());

        let payoff = PayoffProfile::of_lasso(&game, &play);
        for player in game.players() {
            prop_assert_eq!(payoff.bit(player), play.satisfies_parity(game.spec(player)));
        }
        match check_wse(&game, &profile, &OracleBounds::default()).unwrap() {
            WseVerdict::Holds => prop_assert!(payoff.all_won()),
            WseVerdict::NotWinning { player, play: witness } => {
                prop_assert!(!payoff.bit(player));
                prop_assert_eq!(witness, play);
            }
            WseVerdict::Insecure { deviator, harmed, play: witness } => {
                prop_assert!(payoff.all_won());
                prop_assert_ne!(deviator, harmed);
                prop_assert!(witness.satisfies_parity(game.spec(deviator)));
                prop_assert!(!witness.satisfies_parity(game.spec(harmed)));
            }
        }
    }

    /// Reassigning vertices to a fresh environment player, or trivializing
    /// everyone outside a coalition, changes objectives exactly as stated.
    #[test]
    fn player_transformations_change_only_the_objectives(seed in any::<u64>()) {
        let game = game_from_seed(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xe5f0);

        let env: Vec<VertexId> =
            game.vertices().filter(|_| rng.gen_bool(0.4)).collect();
        if !env.is_empty() {
            let extended = with_environment(&game, &env).unwrap();
            let fresh = Player::new(game.player_count() + 1);
            prop_assert_eq!(extended.player_count(), game.player_count() + 1);
            prop_assert_eq!(extended.spec(fresh).max_priority(), 0);
            for v in game.vertices() {
                let expect = if env.contains(&v) { fresh } else { game.owner(v) };
                prop_assert_eq!(extended.owner(v), expect);
            }
            for p in game.players() {
                for v in game.vertices() {
                    prop_assert_eq!(extended.spec(p).priority(v), game.spec(p).priority(v));
                }
            }
        }

        let members: BTreeSet<Player> =
            game.players().filter(|_| rng.gen_bool(0.5)).collect();
        if !members.is_empty() {
            let reduced = coalition_game(&game, &members).unwrap();
            prop_assert_eq!(reduced.player_count(), game.player_count());
            for p in reduced.players() {
                for v in reduced.vertices() {
                    let expect =
                        if members.contains(&p) { game.spec(p).priority(v) } else { 0 };
                    prop_assert_eq!(reduced.spec(p).priority(v), expect);
                }
                prop_assert_eq!(
                    reduced.vertices_of(p).collect::<Vec<_>>(),
                    game.vertices_of(p).collect::<Vec<_>>()
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The synthesis engine's contract winning region and the brute-force
    /// strategy sweep name exactly the same vertices.
    #[test]
    fn engine_and_oracle_agree_on_contract_winners(seed in any::<u64>()) {
        let game = game_from_seed(seed);
        let profile = random_profile(&mut ChaCha8Rng::seed_from_u64(seed ^ 0x0bac1e), &game);
        for player in game.players() {
            let check = compute_win(
                &game,
                profile.template(player),
                &profile.assumption_of_others(player),
                game.spec(player),
                player,
            )
            .unwrap();
            let engine: Vec<VertexId> = game.vertices().filter(|v| check.region.contains(v.0)).collect();
            let oracle =
                winning_vertices(&game, &profile, player, &OracleBounds::default()).unwrap();
            prop_assert_eq!(&engine, &oracle, "player {} disagreement", player.number());
        }
    }
}
