//! Pinned behaviour on the two hand-written games.
//!
//! The `settle` game is the richer story: the plain per-player templates,
//! the refinement each player owes the other, and the exact point at which
//! the contract checks flip are all asserted against hand-derived values.
//! The `mutual-visit` game pins the equilibrium everyone expects: each
//! player steers through the other's home vertex, and neither can profit
//! from betrayal.

mod common;

use std::collections::BTreeSet;

use common::{edge, edge_set, mutual_visit, settle, vertex};
use gwse::assume::{approx_apa, compute_uca};
use gwse::engine::{compute_win, o_compute_ge, Outcome};
use gwse::game::{Game, Lasso, ParitySpec, Player, VertexId};
use gwse::oracle::{
    check_wse, enumerate_recurrences, language_equivalent, play_of, strategy_wins, verify_gwse,
    Formula, OracleBounds, PayoffProfile, WseVerdict,
};
use gwse::solver::{cooperative_region, TwoPlayerView};
use gwse::strategy::FiniteMemoryStrategy;
use gwse::templates::{
    lasso_satisfies_uca, uca_equal, AggregateUca, AssumptionProfile, UcaTemplate,
};

fn p(n: u32) -> Player {
    Player::new(n)
}

/// The final settle templates: player 1 never crosses into the absorbing
/// corners and eventually stops returning home; player 2 eventually stops
/// stalling at and branching from the hub.
fn settle_final_profile(game: &Game) -> AssumptionProfile {
    let t1 = UcaTemplate::new(
        game,
        p(1),
        edge_set(game, &[("v1", "v2"), ("v3", "v4")]),
        edge_set(game, &[("v1", "v0")]),
    )
    .unwrap();
    let t2 = UcaTemplate::new(
        game,
        p(2),
        [],
        edge_set(game, &[("v0", "v0"), ("v0", "v3")]),
    )
    .unwrap();
    AssumptionProfile::new(game, vec![t1, t2]).unwrap()
}

#[test]
fn settle_play_shapes_include_every_small_cycle() {
    let game = settle();
    let cases = enumerate_recurrences(&game, &BTreeSet::new(), &OracleBounds::default()).unwrap();
    let loops: Vec<BTreeSet<_>> = cases.iter().map(|c| c.loop_edges().clone()).collect();
    for cycle in [
        vec![("v5", "v5")],
        vec![("v0", "v0")],
        vec![("v0", "v3"), ("v3", "v0")],
        vec![("v0", "v1"), ("v1", "v0")],
    ] {
        let expect = edge_set(&game, &cycle);
        assert!(loops.contains(&expect), "missing play shape looping on {cycle:?}");
    }
}

#[test]
fn stalling_forever_escapes_the_settling_objective_but_not_its_contract() {
    let game = settle();
    let stall = AggregateUca::new([], edge_set(&game, &[("v0", "v0")]));
    let weakened = Formula::implies(Formula::of_aggregate(&stall), Formula::ParityWin(p(1)));
    let plain = Formula::ParityWin(p(1));
    let cmp = language_equivalent(&game, &weakened, &plain, &OracleBounds::default()).unwrap();
    assert!(!cmp.equivalent);
    // The weakened form also admits plays that stall forever; the plain form
    // admits nothing extra.
    assert!(cmp.only_second.is_none());
    let witness = cmp.only_first.expect("a separating play exists");
    assert!(weakened.satisfied_by(&game, &witness));
    assert!(!plain.satisfied_by(&game, &witness));
}

#[test]
fn a_template_following_strategy_wins_its_settle_contract() {
    let game = settle();
    let profile = settle_final_profile(&game);
    let contract = Formula::contract(&profile, p(1));

    let moves = |towards_rest: bool| {
        let mut m: Vec<Option<_>> = vec![None; game.vertex_count()];
        let wire = |m: &mut Vec<Option<_>>, from: &str, to: &str| {
            m[vertex(&game, from).index()] = Some(edge(&game, from, to));
        };
        wire(&mut m, "v1", if towards_rest { "v5" } else { "v0" });
        wire(&mut m, "v2", "v2");
        wire(&mut m, "v3", "v0");
        wire(&mut m, "v5", "v5");
        m
    };

    let winner = FiniteMemoryStrategy::memoryless(&game, p(1), moves(true)).unwrap();
    assert!(
        strategy_wins(&game, &winner, &contract, &OracleBounds::default()).unwrap().is_none(),
        "heading for the resting vertex wins the contract against everything"
    );

    let homesick = FiniteMemoryStrategy::memoryless(&game, p(1), moves(false)).unwrap();
    let losing = strategy_wins(&game, &homesick, &contract, &OracleBounds::default())
        .unwrap()
        .expect("returning home forever breaks the co-live obligation");
    assert!(!contract.satisfied_by(&game, &losing));
}

#[test]
fn mutual_visit_home_strategies_form_a_secure_equilibrium() {
    let game = mutual_visit();
    let mut m1: Vec<Option<_>> = vec![None; game.vertex_count()];
    m1[vertex(&game, "v1").index()] = Some(edge(&game, "v1", "v0"));
    m1[vertex(&game, "v3").index()] = Some(edge(&game, "v3", "v1"));
    m1[vertex(&game, "v4").index()] = Some(edge(&game, "v4", "v4"));
    let mut m2: Vec<Option<_>> = vec![None; game.vertex_count()];
    m2[vertex(&game, "v0").index()] = Some(edge(&game, "v0", "v2"));
    m2[vertex(&game, "v2").index()] = Some(edge(&game, "v2", "v3"));
    let profile = vec![
        FiniteMemoryStrategy::memoryless(&game, p(1), m1).unwrap(),
        FiniteMemoryStrategy::memoryless(&game, p(2), m2).unwrap(),
    ];

    let play = play_of(&game, &profile).unwrap();
    assert!(PayoffProfile::of_lasso(&game, &play).all_won());
    let verdict = check_wse(&game, &profile, &OracleBounds::default()).unwrap();
    assert!(matches!(verdict, WseVerdict::Holds), "unexpected verdict {verdict:?}");
}

#[test]
fn trivial_contracts_on_mutual_visit_are_general_but_unprotectable() {
    let game = mutual_visit();
    let trivial = AssumptionProfile::trivial(&game);
    let report = verify_gwse(&game, &trivial, &OracleBounds::default()).unwrap();
    // With empty templates each contract collapses to the bare objective, so
    // the conjunction is trivially the same language...
    assert!(report.generality.equivalent);
    // ...but neither player can enforce its objective single-handedly.
    assert_eq!(report.realizable, vec![false, false]);
    assert!(report.secure, "security holds vacuously without winners");
    assert_eq!(report.profiles_checked, 0);
    assert!(!report.passes());
}

#[test]
fn cooperative_region_for_the_visit_objective_excludes_the_trap() {
    let game = mutual_visit();
    let view = TwoPlayerView::of_game(&game, game.spec(p(1)), p(1));
    let region = cooperative_region(&view);
    let members: Vec<VertexId> =
        region.iter().map(VertexId).collect();
    let expect: Vec<VertexId> =
        ["v0", "v1", "v2", "v3"].iter().map(|n| vertex(&game, n)).collect();
    assert_eq!(members, expect, "no play from the sink can still visit v1");
}

#[test]
fn plain_templates_for_each_player_match_the_known_shapes() {
    let game = settle();
    let t1 = approx_apa(&game, game.spec(p(1)), p(1), game.init()).unwrap().unwrap();
    assert_eq!(t1.unsafe_edges(), &edge_set(&game, &[("v1", "v2"), ("v3", "v4")]));
    assert_eq!(t1.colive_edges(), &edge_set(&game, &[("v1", "v0")]));

    let t2 = approx_apa(&game, game.spec(p(2)), p(2), game.init()).unwrap().unwrap();
    assert!(t2.unsafe_edges().is_empty());
    assert_eq!(t2.colive_edges(), &edge_set(&game, &[("v0", "v0")]));

    let visit = mutual_visit();
    let v1 = approx_apa(&visit, visit.spec(p(1)), p(1), visit.init()).unwrap().unwrap();
    assert_eq!(v1.unsafe_edges(), &edge_set(&visit, &[("v3", "v4")]));
    assert!(v1.colive_edges().is_empty());

    let v2 = approx_apa(&visit, visit.spec(p(2)), p(2), visit.init()).unwrap().unwrap();
    assert_eq!(v2.unsafe_edges(), &edge_set(&visit, &[("v2", "v4")]));
    assert!(v2.colive_edges().is_empty());
}

#[test]
fn refinement_under_the_partner_template_matches_the_known_shapes() {
    let game = settle();
    let psi1 = UcaTemplate::new(
        &game,
        p(1),
        edge_set(&game, &[("v1", "v2"), ("v3", "v4")]),
        edge_set(&game, &[("v1", "v0")]),
    )
    .unwrap();

    // Player 2, granted player 1's obligations, must additionally stop
    // branching from the hub toward the dead side.
    let under1 = AggregateUca::new(
        psi1.unsafe_edges().iter().copied(),
        psi1.colive_edges().iter().copied(),
    );
    let refined2 = compute_uca(&game, &under1, game.spec(p(2)), p(2), game.init())
        .unwrap()
        .unwrap();
    assert!(refined2.unsafe_edges().is_empty());
    assert_eq!(refined2.colive_edges(), &edge_set(&game, &[("v0", "v0"), ("v0", "v3")]));

    // Player 1, granted only the hub-stalling obligation, needs nothing new.
    let under2 = AggregateUca::new([], edge_set(&game, &[("v0", "v0")]));
    let refined1 = compute_uca(&game, &under2, game.spec(p(1)), p(1), game.init())
        .unwrap()
        .unwrap();
    assert!(uca_equal(&refined1, &psi1));
}

#[test]
fn contract_win_checks_pin_the_settle_turning_point() {
    let game = settle();
    let profile = settle_final_profile(&game);
    let v0 = game.init();

    // Under the full partner obligations, player 1 wins from the start.
    let full = compute_win(
        &game,
        profile.template(p(1)),
        &profile.assumption_of_others(p(1)),
        game.spec(p(1)),
        p(1),
    )
    .unwrap();
    assert!(full.region.contains(v0.0));

    // With only the stalling obligation, the partner may still branch away
    // forever and player 1 cannot win from the start.
    let partial = AggregateUca::new([], edge_set(&game, &[("v0", "v0")]));
    let early = compute_win(&game, profile.template(p(1)), &partial, game.spec(p(1)), p(1))
        .unwrap();
    assert!(!early.region.contains(v0.0));

    // No obligations and an all-even objective: every vertex wins.
    let lax = compute_win(
        &game,
        &UcaTemplate::trivial(p(1)),
        &AggregateUca::trivial(),
        &ParitySpec::trivially_true(game.vertex_count()),
        p(1),
    )
    .unwrap();
    assert_eq!(lax.region.len(), game.vertex_count());
}

#[test]
fn stalling_lasso_breaks_the_colive_template_only_when_recurring() {
    let game = settle();
    let v0 = vertex(&game, "v0");
    let psi2 = UcaTemplate::new(&game, p(2), [], edge_set(&game, &[("v0", "v0")])).unwrap();

    let forever = Lasso::new(&game, vec![v0], vec![v0]).unwrap();
    assert!(!lasso_satisfies_uca(&game, &forever, &psi2));

    let once = Lasso::new(
        &game,
        vec![v0, v0, vertex(&game, "v1")],
        vec![vertex(&game, "v5")],
    )
    .unwrap();
    assert!(lasso_satisfies_uca(&game, &once, &psi2));
}

/// Every template a synthesis iteration produces must keep all plays that
/// satisfy every objective, and likewise all plays on which the player wins
/// under the others' obligations — otherwise the templates would bargain
/// away plays the players still care about.
#[test]
fn every_iteration_template_keeps_all_cooperative_plays() {
    for game in [settle(), mutual_visit()] {
        let (_, trace) = o_compute_ge(&game).unwrap();
        for record in &trace.iterations {
            for player in game.players() {
                let own = Formula::of_template(record.assumptions.template(player));
                let others =
                    Formula::of_aggregate(&record.assumptions.assumption_of_others(player));
                let everyone = Formula::all_objectives(&game);
                let favourable =
                    Formula::conj(vec![others.clone(), Formula::ParityWin(player)]);

                let mut watched = own.watched_edges();
                watched.extend(others.watched_edges());
                let cases =
                    enumerate_recurrences(&game, &watched, &OracleBounds::default()).unwrap();
                for case in &cases {
                    if everyone.satisfied_by_case(&game, case) {
                        assert!(
                            own.satisfied_by_case(&game, case),
                            "template cut a fully winning play: {}",
                            case.witness().display(&game)
                        );
                    }
                    if favourable.satisfied_by_case(&game, case) {
                        assert!(
                            own.satisfied_by_case(&game, case),
                            "template cut a play the player wins: {}",
                            case.witness().display(&game)
                        );
                    }
                }
            }
        }
    }
}

/// The synthesized mutual-visit profile agrees with the hand-written one in
/// language, not just in shape.
#[test]
fn synthesized_visit_contracts_match_the_handwritten_profile() {
    let game = mutual_visit();
    let (outcome, _) = o_compute_ge(&game).unwrap();
    let profile = match outcome {
        Outcome::Profile(p) => p,
        Outcome::Unrealizable(r) => panic!("synthesis failed: {r}"),
    };

    let by_hand = AssumptionProfile::new(
        &game,
        vec![
            UcaTemplate::new(&game, p(1), edge_set(&game, &[("v3", "v4")]), []).unwrap(),
            UcaTemplate::new(&game, p(2), edge_set(&game, &[("v2", "v4")]), []).unwrap(),
        ],
    )
    .unwrap();

    let cmp = language_equivalent(
        &game,
        &Formula::all_contracts(&game, profile.assumptions()),
        &Formula::all_contracts(&game, &by_hand),
        &OracleBounds::default(),
    )
    .unwrap();
    assert!(cmp.equivalent, "synthesized contracts deviate from the hand-written profile");
}
