use gwse::engine::{o_compute_ge, Outcome};
use gwse::game::{parse_game, Player};

// Two players on a five-vertex graph. Each wants to visit its home vertex
// (v1 for player 1, v2 for player 2) infinitely often, and either player
// can wreck both objectives by moving into the absorbing corner v4.
let game = parse_game(
    r#"{
      "players": 2,
      "init": "v0",
      "vertices": [
        {"id": "v0", "owner": 2}, {"id": "v1", "owner": 1},
        {"id": "v2", "owner": 2}, {"id": "v3", "owner": 1},
        {"id": "v4", "owner": 1}
      ],
      "edges": [["v0","v2"], ["v0","v3"], ["v1","v0"], ["v2","v3"],
                ["v2","v4"], ["v3","v1"], ["v3","v2"], ["v3","v4"],
                ["v4","v4"]],
      "sugar": {"1": {"buchi": ["v1"]}, "2": {"buchi": ["v2"]}}
    }"#,
)
.unwrap();

// Synthesis finds one obligation template per player such that each player
// can win its contract alone, and any two strategies that do so form a
// winning secure equilibrium.
let (outcome, _trace) = o_compute_ge(&game).unwrap();
let Outcome::Profile(profile) = outcome else {
    panic!("no contract profile exists for this game");
};
for template in profile.assumptions().templates() {
    println!("{}: {}", template.player(), template.to_ltl_string(&game));
}

// Here the contracts say exactly: don't be the one who enters the corner.
let v3_to_v4 = game
    .edge_between(game.vertex("v3").unwrap(), game.vertex("v4").unwrap())
    .unwrap();
let v2_to_v4 = game
    .edge_between(game.vertex("v2").unwrap(), game.vertex("v4").unwrap())
    .unwrap();
let assumptions = profile.assumptions();
assert!(assumptions.template(Player::new(1)).unsafe_edges().contains(&v3_to_v4));
assert!(assumptions.template(Player::new(2)).unsafe_edges().contains(&v2_to_v4));
