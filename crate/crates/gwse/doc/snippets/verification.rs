use gwse::engine::{o_compute_ge, Outcome};
use gwse::game::{parse_game, Player};
use gwse::oracle::{verify_gwse, OracleBounds};
use gwse::templates::{AssumptionProfile, UcaTemplate};

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
let (outcome, _) = o_compute_ge(&game).unwrap();
let Outcome::Profile(profile) = outcome else { panic!("synthesis failed") };

// The verifier shares no code with the synthesizer: it enumerates plays and
// strategies within explicit bounds and checks the three defining
// properties directly.
let bounds = OracleBounds::default();
let report = verify_gwse(&game, profile.assumptions(), &bounds).unwrap();
assert!(report.passes());
assert!(report.generality.equivalent); // contracts admit exactly the mutually winning plays
assert_eq!(report.realizable, vec![true, true]); // each player can win its contract alone
assert!(report.secure); // every pair of contract winners forms an equilibrium

// Weakening player 2's obligation breaks the balance: if nothing stops the
// play at (v2,v4), player 1 can no longer force its contract from v0, and
// the verifier pins the failure on exactly that property.
let thinned = AssumptionProfile::new(
    &game,
    vec![
        profile.assumptions().template(Player::new(1)).clone(),
        UcaTemplate::trivial(Player::new(2)),
    ],
)
.unwrap();
let report = verify_gwse(&game, &thinned, &bounds).unwrap();
assert!(!report.passes());
assert!(report.generality.equivalent);
assert_eq!(report.realizable, vec![false, true]);
