use gwse::game::{Game, Lasso, Player};
use gwse::templates::{
    lasso_satisfies_uca, uca_equal, AssumptionProfile, UcaTemplate,
};

// Player 1 owns the vertex "s" and can stall on it forever or hand the play
// to "t". Templates talk about such edges in exactly two tones.
let game = Game::from_parts(
    2,
    "s",
    &[("s", 1), ("t", 2)],
    &[("s", "s"), ("s", "t"), ("t", "s"), ("t", "t")],
    &[vec![1, 0], vec![0, 1]],
)
.unwrap();
let p1 = Player::new(1);
let s = game.vertex("s").unwrap();
let stall = game.edge_between(s, s).unwrap();

// "Take (s,s) at most finitely often" versus "never take (s,s)":
let patient = UcaTemplate::new(&game, p1, [], [stall]).unwrap();
let strict = UcaTemplate::new(&game, p1, [stall], []).unwrap();

// A play that stalls for a while and then settles on "t" keeps the patient
// obligation but has already broken the strict one; a play that stalls
// forever breaks both.
let t = game.vertex("t").unwrap();
let settles = Lasso::new(&game, vec![s, s], vec![t]).unwrap();
let stalls = Lasso::new(&game, vec![s], vec![s]).unwrap();
assert!(lasso_satisfies_uca(&game, &settles, &patient));
assert!(!lasso_satisfies_uca(&game, &settles, &strict));
assert!(!lasso_satisfies_uca(&game, &stalls, &patient));

// The strict form implies the patient one, and conjunction keeps whichever
// form is stronger on each edge.
assert!(patient.is_subsumed_by(&strict));
assert!(!strict.is_subsumed_by(&patient));
let conjoined = patient.conjoin(&game, &strict).unwrap();
assert!(uca_equal(&conjoined, &strict));

// A profile holds one template per player; everyone else's obligations pool
// into the assumption a player may lean on.
let profile = AssumptionProfile::new(
    &game,
    vec![strict.clone(), UcaTemplate::trivial(Player::new(2))],
)
.unwrap();
let assumption = profile.assumption_of_others(Player::new(2));
assert!(assumption.unsafe_edges().contains(&stall));
