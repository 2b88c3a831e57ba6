use gwse::game::{parse_game, Game, Lasso, Player};

// A game can also be built directly from parts: owners are 1-based player
// numbers, and each player gets one priority per vertex. A play satisfies a
// player's objective when the highest priority it sees infinitely often is
// even.
let game = Game::from_parts(
    2,
    "hub",
    &[("hub", 2), ("home", 1), ("trap", 1)],
    &[("hub", "home"), ("home", "hub"), ("home", "trap"), ("trap", "trap")],
    &[
        vec![1, 2, 1], // player 1: seeing "home" infinitely often is winning
        vec![2, 1, 1], // player 2: seeing "hub" infinitely often is winning
    ],
)
.unwrap();
assert_eq!(game.player_count(), 2);

let hub = game.vertex("hub").unwrap();
let home = game.vertex("home").unwrap();
let trap = game.vertex("trap").unwrap();
assert_eq!(game.owner(hub), Player::new(2));
assert_eq!(game.outgoing(home).len(), 2);

// Ultimately periodic plays are first-class values: a finite prefix plus a
// cycle, validated edge by edge. This one bounces between hub and home
// forever, so it satisfies both parity objectives.
let bounce = Lasso::new(&game, vec![hub], vec![home, hub]).unwrap();
assert!(bounce.satisfies_parity(game.spec(Player::new(1))));
assert!(bounce.satisfies_parity(game.spec(Player::new(2))));

// Falling into the trap dooms both objectives: the only priority seen
// infinitely often is odd.
let stuck = Lasso::new(&game, vec![hub, home], vec![trap]).unwrap();
assert!(!stuck.satisfies_parity(game.spec(Player::new(1))));
assert!(!stuck.satisfies_parity(game.spec(Player::new(2))));

// Games serialize to a canonical JSON document and parse back unchanged.
let text = game.to_json();
let reparsed = parse_game(&text).unwrap();
assert_eq!(text, reparsed.to_json());
