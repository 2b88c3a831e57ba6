//! Independent brute-force verification of equilibrium profiles.
//!
//! Nothing in this module touches the synthesis machinery: verdicts are
//! recomputed from first principles by enumerating the recurrence structure
//! of plays and exhausting bounded-memory strategy families. The two sides
//! agreeing is therefore real evidence, not an echo.
//!
//! Everything here is exact *within stated bounds* and refuses — with
//! [`crate::Error::Refused`] — rather than degrade when an input exceeds
//! them. The one deliberate approximation is the strategy family itself:
//! realizability and security quantify over move tables with a small
//! saturating-counter memory, and every report carries the bound it was
//! checked at. Play-level questions (language comparison, winner checks,
//! deviation analysis) are decided exactly, with no memory bound at all, by
//! working on product graphs instead of strategy tables.
//!
//! # Example
//!
//! ```
#![doc = include_str!("../../doc/snippets/verification.rs")]
//! ```

mod formula;
mod graph;
mod recurrence;
mod strat;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{Game, Lasso, Player, VertexId};
use crate::strategy::FiniteMemoryStrategy;
use crate::templates::AssumptionProfile;

pub use formula::Formula;
pub use recurrence::{enumerate_recurrences, RecurrenceCase};
pub use strat::{play_of, strategy_wins, StrategyClass};

/// Resource limits for the verifier. Exceeding any of them is a refusal,
/// never a silently weakened answer.
#[derive(Debug, Clone)]
pub struct OracleBounds {
    /// Largest edge count (of a game or of a reachable strategy product) the
    /// play-shape enumeration will take on.
    pub max_edges: usize,
    /// Memory states per candidate strategy in realizability and security
    /// checks. The synthesis engine emits two-state strategies, so the
    /// default covers everything it can produce.
    pub memory: u32,
    /// Largest strategy family a single player may be asked to exhaust.
    pub max_candidates: u64,
    /// Largest number of winner combinations the security check will sweep.
    pub max_profiles: u64,
    /// Largest strategy-product state space that may be materialized.
    pub max_product_nodes: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_edges: 16,
            memory: 2,
            max_candidates: 100_000,
            max_profiles: 50_000,
            max_product_nodes: 1 << 16,
        }
    }
}

impl OracleBounds {
    /// The same bounds with a different strategy memory.
    pub fn with_memory(mut self, memory: u32) -> Self {
        assert!(memory >= 1, "strategies need at least one memory state");
        self.memory = memory;
        self
    }
}

/// Which players win on a given play: one bit per player, in player order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffProfile(Vec<bool>);

impl PayoffProfile {
    /// Builds a profile from explicit bits.
    pub fn new(bits: Vec<bool>) -> PayoffProfile {
        PayoffProfile(bits)
    }

    /// Reads each player's objective off a play.
    pub fn of_lasso(game: &Game, lasso: &Lasso) -> PayoffProfile {
        PayoffProfile(game.players().map(|p| lasso.satisfies_parity(game.spec(p))).collect())
    }

    /// Whether the given player wins.
    pub fn bit(&self, p: Player) -> bool {
        self.0[p.index()]
    }

    /// Whether every player wins.
    pub fn all_won(&self) -> bool {
        self.0.iter().all(|&b| b)
    }

    /// Number of players the profile covers.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the profile covers no players at all.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PayoffProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", if b { 1 } else { 0 })?;
        }
        write!(f, ")")
    }
}

/// Player `j`'s strict preference between payoff profiles: `worse ≺ better`
/// when `j` itself gains, or `j` stays even while at least one opponent drops
/// and none rises. The second clause is what makes equilibria *secure*:
/// hurting others at no cost to yourself counts as an improvement.
pub fn preference_less(worse: &PayoffProfile, better: &PayoffProfile, j: Player) -> bool {
    assert_eq!(worse.len(), better.len(), "profiles must cover the same players");
    let (p, q) = (&worse.0, &better.0);
    if !p[j.index()] && q[j.index()] {
        return true;
    }
    if p[j.index()] != q[j.index()] {
        return false;
    }
    let others = (0..p.len()).filter(|&i| i != j.index());
    others.clone().all(|i| p[i] >= q[i]) && others.clone().any(|i| p[i] && !q[i])
}

/// The outcome of comparing two specifications over the plays of a game.
#[derive(Debug, Clone)]
pub struct LanguageComparison {
    /// Whether the two specifications admit exactly the same plays.
    pub equivalent: bool,
    /// A play satisfying only the first specification, if any.
    pub only_first: Option<Lasso>,
    /// A play satisfying only the second specification, if any.
    pub only_second: Option<Lasso>,
}

/// Compares the play languages of two specifications over the game, by one
/// shared enumeration of the game's recurrence structure. Exact: the case
/// abstraction preserves everything either formula can observe.
pub fn language_equivalent(
    game: &Game,
    first: &Formula,
    second: &Formula,
    bounds: &OracleBounds,
) -> Result<LanguageComparison> {
    let mut watched = first.watched_edges();
    watched.extend(second.watched_edges());
    let mut only_first = None;
    let mut only_second = None;
    for case in enumerate_recurrences(game, &watched, bounds)? {
        let a = first.satisfied_by_case(game, &case);
        let b = second.satisfied_by_case(game, &case);
        if a && !b && only_first.is_none() {
            only_first = Some(case.witness().clone());
        }
        if b && !a && only_second.is_none() {
            only_second = Some(case.witness().clone());
        }
    }
    Ok(LanguageComparison {
        equivalent: only_first.is_none() && only_second.is_none(),
        only_first,
        only_second,
    })
}

/// The verdict on one concrete strategy profile.
#[derive(Debug, Clone)]
pub enum WseVerdict {
    /// The profile is a winning secure equilibrium: its play satisfies every
    /// objective, and no lone deviator can break another player's objective
    /// while keeping its own.
    Holds,
    /// The induced play already fails somebody's objective.
    NotWinning {
        /// A player whose objective the induced play misses.
        player: Player,
        /// The induced play.
        play: Lasso,
    },
    /// Some player can deviate, keep its own objective, and break another's.
    Insecure {
        /// The player that profits from deviating.
        deviator: Player,
        /// A player whose objective the deviation breaks.
        harmed: Player,
        /// The deviation play: everyone else follows the profile.
        play: Lasso,
    },
}

impl WseVerdict {
    /// Whether the profile passed.
    pub fn holds(&self) -> bool {
        matches!(self, WseVerdict::Holds)
    }
}

/// Checks whether a full strategy profile is a winning secure equilibrium.
///
/// The induced play decides the winning half. The security half quantifies
/// over **all** deviations of a single player — any memory, not just the
/// profile's — which stays decidable because fixing the other players turns
/// the game into a finite product whose plays are exactly the deviator's
/// options.
pub fn check_wse(
    game: &Game,
    profile: &[FiniteMemoryStrategy],
    bounds: &OracleBounds,
) -> Result<WseVerdict> {
    let play = play_of(game, profile)?;
    let payoff = PayoffProfile::of_lasso(game, &play);
    for p in game.players() {
        if !payoff.bit(p) {
            return Ok(WseVerdict::NotWinning { player: p, play });
        }
    }
    for deviator in game.players() {
        let others: Vec<&FiniteMemoryStrategy> =
            profile.iter().filter(|s| s.player() != deviator).collect();
        if let Some((harmed, play)) = strat::deviation_break(game, &others, deviator, bounds)? {
            return Ok(WseVerdict::Insecure { deviator, harmed, play });
        }
    }
    Ok(WseVerdict::Holds)
}

/// A concrete refutation of the security property: a profile of individually
/// winning strategies that fails to be a winning secure equilibrium.
#[derive(Debug, Clone)]
pub struct SecurityViolation {
    /// One winning strategy per player, in player order.
    pub strategies: Vec<FiniteMemoryStrategy>,
    /// What went wrong for this profile.
    pub verdict: WseVerdict,
}

/// The verifier's full judgement of a specification profile, with witnesses
/// for everything it rejects and the bounds the strategy sweeps ran at.
#[derive(Debug, Clone)]
pub struct GwseReport {
    /// Whether the conjoined contracts admit exactly the plays that satisfy
    /// every original objective, with separating plays when they do not.
    pub generality: LanguageComparison,
    /// Per player: whether some strategy in the checked family wins the
    /// player's contract from the initial vertex.
    pub realizable: Vec<bool>,
    /// Per player: how many behaviourally distinct winning strategies the
    /// checked family contains.
    pub winner_counts: Vec<usize>,
    /// Whether every combination of winning strategies is a winning secure
    /// equilibrium. Vacuously true when some player has no winner.
    pub secure: bool,
    /// The first offending combination, when one exists.
    pub security_violation: Option<SecurityViolation>,
    /// The strategy memory the realizability and security sweeps used.
    pub memory: u32,
    /// How many winner combinations the security sweep examined.
    pub profiles_checked: u64,
}

impl GwseReport {
    /// Whether all three properties hold.
    pub fn passes(&self) -> bool {
        self.generality.equivalent && self.realizable.iter().all(|&b| b) && self.secure
    }

    /// Serializes the report for the command line.
    pub fn to_doc(&self, game: &Game) -> Value {
        let lasso_doc = |l: &Lasso| Value::String(l.display(game));
        let violation = self.security_violation.as_ref().map(|v| {
            let (kind, detail) = match &v.verdict {
                WseVerdict::Holds => ("holds", json!({})),
                WseVerdict::NotWinning { player, play } => (
                    "not-winning",
                    json!({ "player": player.number(), "play": lasso_doc(play) }),
                ),
                WseVerdict::Insecure { deviator, harmed, play } => (
                    "insecure",
                    json!({
                        "deviator": deviator.number(),
                        "harmed": harmed.number(),
                        "play": lasso_doc(play),
                    }),
                ),
            };
            json!({
                "kind": kind,
                "detail": detail,
                "strategies": v.strategies.iter().map(|s| s.to_doc(game)).collect::<Vec<_>>(),
            })
        });
        json!({
            "passes": self.passes(),
            "general": self.generality.equivalent,
            "generality_witnesses": {
                "only_contracts": self.generality.only_first.as_ref().map(lasso_doc),
                "only_objectives": self.generality.only_second.as_ref().map(lasso_doc),
            },
            "realizable": self.realizable,
            "winner_counts": self.winner_counts,
            "secure": self.secure,
            "security_violation": violation,
            "memory": self.memory,
            "profiles_checked": self.profiles_checked,
        })
    }
}

/// Verifies the three defining properties of a most general winning secure
/// equilibrium for the given assumption profile:
///
/// 1. **generality** — the conjoined contracts and the conjoined objectives
///    admit the same plays (decided exactly);
/// 2. **realizability** — each player has a contract-winning strategy in the
///    family matched to its contract (move tables over the checked memory);
/// 3. **security** — every combination of such winners is a winning secure
///    equilibrium (deviations checked exactly, per combination).
///
/// The deviation analysis only depends on who deviates and what the others
/// play, so it is memoized across combinations; the sweep still touches
/// every combination for the induced-play check.
pub fn verify_gwse(
    game: &Game,
    assumptions: &AssumptionProfile,
    bounds: &OracleBounds,
) -> Result<GwseReport> {
    let generality = language_equivalent(
        game,
        &Formula::all_contracts(game, assumptions),
        &Formula::all_objectives(game),
        bounds,
    )?;

    let mut winners = Vec::new();
    for p in game.players() {
        winners.push(strat::contract_winners(game, assumptions, p, bounds)?);
    }
    let realizable: Vec<bool> = winners.iter().map(|w| !w.is_empty()).collect();
    let winner_counts: Vec<usize> = winners.iter().map(|w| w.len()).collect();

    let mut secure = true;
    let mut security_violation = None;
    let mut profiles_checked = 0u64;
    if realizable.iter().all(|&b| b) {
        let total: u128 = winner_counts.iter().map(|&c| c as u128).product();
        if total > bounds.max_profiles as u128 {
            return Err(Error::refused(format!(
                "security sweep over {total} winner combinations exceeds the oracle cap of {}",
                bounds.max_profiles
            )));
        }
        let mut digits = vec![0usize; winners.len()];
        let mut deviations: BTreeMap<(u32, Vec<usize>), Option<(Player, Lasso)>> = BTreeMap::new();
        'sweep: loop {
            let profile: Vec<FiniteMemoryStrategy> = digits
                .iter()
                .zip(&winners)
                .map(|(&d, w)| w[d].clone())
                .collect();
            profiles_checked += 1;

            let play = play_of(game, &profile)?;
            let payoff = PayoffProfile::of_lasso(game, &play);
            let mut verdict = None;
            if let Some(p) = game.players().find(|&p| !payoff.bit(p)) {
                verdict = Some(WseVerdict::NotWinning { player: p, play });
            } else {
                for deviator in game.players() {
                    let key = (
                        deviator.number(),
                        digits
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != deviator.index())
                            .map(|(_, &d)| d)
                            .collect::<Vec<_>>(),
                    );
                    let broke = match deviations.get(&key) {
                        Some(cached) => cached.clone(),
                        None => {
                            let others: Vec<&FiniteMemoryStrategy> = profile
                                .iter()
                                .filter(|s| s.player() != deviator)
                                .collect();
                            let fresh = strat::deviation_break(game, &others, deviator, bounds)?;
                            deviations.insert(key, fresh.clone());
                            fresh
                        }
                    };
                    if let Some((harmed, play)) = broke {
                        verdict = Some(WseVerdict::Insecure { deviator, harmed, play });
                        break;
                    }
                }
            }
            if let Some(verdict) = verdict {
                secure = false;
                security_violation = Some(SecurityViolation { strategies: profile, verdict });
                break 'sweep;
            }

            let mut d = 0;
            loop {
                if d == digits.len() {
                    break 'sweep;
                }
                digits[d] += 1;
                if digits[d] < winners[d].len() {
                    break;
                }
                digits[d] = 0;
                d += 1;
            }
        }
    }

    Ok(GwseReport {
        generality,
        realizable,
        winner_counts,
        secure,
        security_violation,
        memory: bounds.memory,
        profiles_checked,
    })
}

/// The vertices from which the player can win its contract, judged purely by
/// exhausting the checked strategy family — the brute-force counterpart of
/// the synthesis engine's winning region.
pub fn winning_vertices(
    game: &Game,
    assumptions: &AssumptionProfile,
    player: Player,
    bounds: &OracleBounds,
) -> Result<Vec<VertexId>> {
    let set = strat::contract_winning_vertices(game, assumptions, player, bounds)?;
    Ok(set.iter().map(VertexId).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::FiniteMemoryStrategy;

    fn profile(bits: &[bool]) -> PayoffProfile {
        PayoffProfile::new(bits.to_vec())
    }

    #[test]
    fn preference_rewards_own_gain_and_costless_harm() {
        let p1 = Player::new(1);
        assert!(preference_less(&profile(&[false, true]), &profile(&[true, true]), p1));
        assert!(preference_less(&profile(&[true, true]), &profile(&[true, false]), p1));
        assert!(!preference_less(&profile(&[true, true]), &profile(&[true, true]), p1));
        // Losing ground yourself is never an improvement, whatever happens
        // to the others.
        assert!(!preference_less(&profile(&[true, true]), &profile(&[false, false]), p1));
        // A strict partial order: irreflexive and asymmetric on these.
        assert!(!preference_less(&profile(&[true, false]), &profile(&[true, true]), p1));
    }

    #[test]
    fn payoffs_print_as_bit_tuples() {
        assert_eq!(profile(&[true, false]).to_string(), "(1,0)");
        assert_eq!(profile(&[false, true, true]).to_string(), "(0,1,1)");
    }

    /// Two vertices, each player holding one, both objectives asking for the
    /// shared cycle: the only play wins for everyone and neither player can
    /// deviate anywhere else.
    #[test]
    fn a_forced_cycle_is_an_equilibrium() {
        let game = Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2)],
            &[("a", "b"), ("b", "a")],
            &[vec![1, 2], vec![1, 2]],
        )
        .unwrap();
        let a = game.vertex("a").unwrap();
        let b = game.vertex("b").unwrap();
        let s1 = FiniteMemoryStrategy::memoryless(
            &game,
            Player::new(1),
            vec![Some(game.edge_between(a, b).unwrap()), None],
        )
        .unwrap();
        let s2 = FiniteMemoryStrategy::memoryless(
            &game,
            Player::new(2),
            vec![None, Some(game.edge_between(b, a).unwrap())],
        )
        .unwrap();
        let verdict = check_wse(&game, &[s1, s2], &OracleBounds::default()).unwrap();
        assert!(verdict.holds());
    }

    #[test]
    fn every_formula_matches_itself() {
        let game = Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2)],
            &[("a", "b"), ("b", "a"), ("b", "b")],
            &[vec![1, 2], vec![2, 1]],
        )
        .unwrap();
        let spec = Formula::all_objectives(&game);
        let cmp = language_equivalent(&game, &spec, &spec, &OracleBounds::default()).unwrap();
        assert!(cmp.equivalent);
        assert!(cmp.only_first.is_none() && cmp.only_second.is_none());
    }

    #[test]
    fn trivial_templates_cannot_protect_the_dependent_player() {
        // Each player needs its own vertex to recur. With empty templates the
        // contracts are the bare objectives, so generality holds by
        // construction — but only the player holding the initial vertex can
        // enforce anything single-handedly; the other is starved at will.
        let game = Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2)],
            &[("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")],
            &[vec![2, 1], vec![1, 2]],
        )
        .unwrap();
        let report = verify_gwse(
            &game,
            &AssumptionProfile::trivial(&game),
            &OracleBounds::default(),
        )
        .unwrap();
        assert!(report.generality.equivalent);
        assert_eq!(report.realizable, vec![true, false]);
        assert_eq!(report.winner_counts[0], 1, "equivalent winners collapse to one");
        assert!(report.secure, "no full winner combination exists to refute security");
        assert_eq!(report.profiles_checked, 0);
        assert!(!report.passes());
    }
}
