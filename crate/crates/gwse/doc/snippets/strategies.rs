use gwse::engine::{o_compute_ge, Outcome};
use gwse::game::parse_game;
use gwse::oracle::{check_wse, play_of, strategy_wins, Formula, OracleBounds, WseVerdict};

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
let (outcome, _) = o_compute_ge(&game).unwrap();
let Outcome::Profile(profile) = outcome else { panic!("synthesis failed") };
let bounds = OracleBounds::default();

// Synthesis hands back one finite-memory strategy per player, each winning
// its own contract against every opponent behavior.
for (slot, strategy) in profile.strategies().iter().enumerate() {
    let contract = Formula::contract(profile.assumptions(), strategy.player());
    let counterexample = strategy_wins(&game, strategy, &contract, &bounds).unwrap();
    assert!(counterexample.is_none(), "strategy {slot} has a losing play");
}

// Played against each other, the strategies induce a single ultimately
// periodic play that wins for everyone — and no single player can deviate
// to hurt an opponent without paying for it.
let play = play_of(&game, profile.strategies()).unwrap();
println!("induced play: {}", play.display(&game));
assert!(game.players().all(|p| play.satisfies_parity(game.spec(p))));
assert!(matches!(
    check_wse(&game, profile.strategies(), &bounds).unwrap(),
    WseVerdict::Holds
));
