use gwse::engine::{o_compute_ge, Outcome};
use gwse::game::parse_game;

// Player 1 wants the play to settle in v5 forever; player 2 is happy
// settling in v4 or v5. Player 2 owns the hub v0 and can stall there;
// player 1 can leak into the dead ends v2 (through v1) and ruin both
// settling objectives, or move to v4 and ruin its own.
let game = parse_game(
    r#"{
      "players": 2,
      "init": "v0",
      "vertices": [
        {"id": "v0", "owner": 2}, {"id": "v1", "owner": 1},
        {"id": "v2", "owner": 1}, {"id": "v3", "owner": 1},
        {"id": "v4", "owner": 2}, {"id": "v5", "owner": 1}
      ],
      "edges": [["v0","v0"], ["v0","v1"], ["v0","v3"], ["v1","v0"],
                ["v1","v2"], ["v1","v5"], ["v2","v2"], ["v3","v0"],
                ["v3","v4"], ["v4","v4"], ["v5","v5"]],
      "sugar": {"1": {"cobuchi": ["v5"]}, "2": {"cobuchi": ["v4", "v5"]}}
    }"#,
)
.unwrap();

let (outcome, trace) = o_compute_ge(&game).unwrap();

// The trace records every iteration: the templates entering it and which
// players won their contract check under them. Iteration 1 starts from
// empty templates and everyone loses; each refinement round then adds the
// weakest obligations that keep a cooperative solution possible.
for (i, record) in trace.iterations.iter().enumerate() {
    println!("iteration {}:", i + 1);
    for template in record.assumptions.templates() {
        println!("  {}: {}", template.player(), template.to_ltl_string(&game));
    }
    println!("  winners: {:?}", record.winning);
}
assert_eq!(trace.iterations.len(), 3);
assert_eq!(trace.iterations[0].winning, vec![false, false]);
assert_eq!(trace.iterations[1].winning, vec![false, true]);
assert_eq!(trace.iterations[2].winning, vec![true, true]);

// Once every player wins its contract, the profile is final: templates plus
// one winning strategy per player.
let Outcome::Profile(profile) = outcome else { panic!("synthesis failed") };
assert_eq!(profile.strategies().len(), 2);
