//! Assumption templates: unsafe and co-live edge sets.
//!
//! A [`UcaTemplate`] describes behavioral obligations on one player's own
//! edges in two vocabularies:
//!
//! - *unsafe* edges must never be taken (safety: `G !(u & X v)`);
//! - *co-live* edges may be taken at most finitely often (`F G !(u & X v)`).
//!
//! A play complies with a template iff it takes no unsafe edge and takes each
//! co-live edge only finitely often. Templates conjoin by set union, and the
//! obligations of "everyone except player i" aggregate into an
//! [`AggregateUca`] the same way. The synthesis loop grows templates
//! monotonically, so equality checks ([`uca_equal`]) detect stagnation.
//!
//! # Example
//!
//! ```
#![doc = include_str!("../doc/snippets/templates.rs")]
//! ```

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{EdgeId, Game, Lasso, Player};

/// Obligations on a single player's edges: never take the unsafe ones, stop
/// taking the co-live ones eventually. The two sets are disjoint (an unsafe
/// edge subsumes co-liveness) and contain only edges the player controls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UcaTemplate {
    player: Player,
    unsafe_edges: BTreeSet<EdgeId>,
    colive_edges: BTreeSet<EdgeId>,
}

impl UcaTemplate {
    /// The empty template for a player: no obligations, equivalent to true.
    pub fn trivial(player: Player) -> Self {
        UcaTemplate { player, unsafe_edges: BTreeSet::new(), colive_edges: BTreeSet::new() }
    }

    /// Builds a template, checking that every edge belongs to `player` and
    /// normalizing away co-live edges that are already unsafe.
    pub fn new(
        game: &Game,
        player: Player,
        unsafe_edges: impl IntoIterator<Item = EdgeId>,
        colive_edges: impl IntoIterator<Item = EdgeId>,
    ) -> Result<Self> {
        let unsafe_edges: BTreeSet<EdgeId> = unsafe_edges.into_iter().collect();
        let mut colive_edges: BTreeSet<EdgeId> = colive_edges.into_iter().collect();
        for &e in unsafe_edges.iter().chain(&colive_edges) {
            if e.index() >= game.edge_count() {
                return Err(Error::contract(format!("template references unknown edge #{}", e.0)));
            }
            if game.edge_owner(e) != player {
                return Err(Error::contract(format!(
                    "template for {player} references edge {} owned by {}",
                    game.display_edge(e),
                    game.edge_owner(e)
                )));
            }
        }
        colive_edges.retain(|e| !unsafe_edges.contains(e));
        Ok(UcaTemplate { player, unsafe_edges, colive_edges })
    }

    /// The player whose edges the template constrains.
    pub fn player(&self) -> Player {
        self.player
    }

    /// The edges that must never be taken.
    pub fn unsafe_edges(&self) -> &BTreeSet<EdgeId> {
        &self.unsafe_edges
    }

    /// The edges that may be taken at most finitely often.
    pub fn colive_edges(&self) -> &BTreeSet<EdgeId> {
        &self.colive_edges
    }

    /// Whether the template imposes no obligation.
    pub fn is_trivial(&self) -> bool {
        self.unsafe_edges.is_empty() && self.colive_edges.is_empty()
    }

    /// Total number of constrained edges.
    pub fn obligation_count(&self) -> usize {
        self.unsafe_edges.len() + self.colive_edges.len()
    }

    /// Conjunction: union of obligations, renormalized. Errors if the
    /// templates constrain different players.
    pub fn conjoin(&self, game: &Game, other: &UcaTemplate) -> Result<UcaTemplate> {
        if self.player != other.player {
            return Err(Error::contract(format!(
                "cannot conjoin templates for {} and {}",
                self.player, other.player
            )));
        }
        UcaTemplate::new(
            game,
            self.player,
            self.unsafe_edges.iter().chain(&other.unsafe_edges).copied(),
            self.colive_edges.iter().chain(&other.colive_edges).copied(),
        )
    }

    /// Whether `other` imposes every obligation of `self` (and possibly
    /// more). Marking an edge unsafe is the stronger obligation, so it
    /// subsumes a co-live marking on the same edge.
    pub fn is_subsumed_by(&self, other: &UcaTemplate) -> bool {
        self.player == other.player
            && self.unsafe_edges.is_subset(&other.unsafe_edges)
            && self
                .colive_edges
                .iter()
                .all(|e| other.colive_edges.contains(e) || other.unsafe_edges.contains(e))
    }

    /// Renders the template as a JSON object with the player number and the
    /// unsafe/co-live edges as name pairs in canonical order.
    pub fn to_doc(&self, game: &Game) -> Value {
        let pair = |e: &EdgeId| {
            let (u, v) = game.endpoints(*e);
            json!([game.name(u), game.name(v)])
        };
        json!({
            "player": self.player.number(),
            "unsafe": self.unsafe_edges.iter().map(pair).collect::<Vec<_>>(),
            "colive": self.colive_edges.iter().map(pair).collect::<Vec<_>>(),
        })
    }

    /// Parses a template from the JSON object shape produced by [`Self::to_doc`].
    pub fn from_doc(game: &Game, doc: &Value) -> Result<UcaTemplate> {
        let player = doc
            .get("player")
            .and_then(Value::as_u64)
            .filter(|&p| p >= 1 && p <= game.player_count() as u64)
            .ok_or_else(|| Error::contract("template document needs a valid \"player\""))?;
        let parse_edges = |key: &str| -> Result<Vec<EdgeId>> {
            let entries = doc
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::contract(format!("template document needs \"{key}\"")))?;
            entries
                .iter()
                .map(|entry| {
                    let pair = entry.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                        Error::contract(format!("\"{key}\" entries must be [from, to] pairs"))
                    })?;
                    let resolve = |value: &Value| {
                        value
                            .as_str()
                            .and_then(|name| game.vertex(name))
                            .ok_or_else(|| Error::contract("template names an unknown vertex"))
                    };
                    let (u, v) = (resolve(&pair[0])?, resolve(&pair[1])?);
                    game.edge_between(u, v).ok_or_else(|| {
                        Error::contract(format!(
                            "template names a missing edge ({},{})",
                            game.name(u),
                            game.name(v)
                        ))
                    })
                })
                .collect()
        };
        UcaTemplate::new(
            game,
            Player::new(player as u32),
            parse_edges("unsafe")?,
            parse_edges("colive")?,
        )
    }

    /// Renders the template as an LTL-style formula over edge steps, e.g.
    /// `G !(v3 & X v4) & F G !(v1 & X v0)`. Unsafe conjuncts come first,
    /// then co-live, each in canonical edge order; the empty template is
    /// `True`.
    pub fn to_ltl_string(&self, game: &Game) -> String {
        let mut parts: Vec<String> = Vec::new();
        for &e in &self.unsafe_edges {
            let (u, v) = game.endpoints(e);
            parts.push(format!("G !({} & X {})", game.name(u), game.name(v)));
        }
        for &e in &self.colive_edges {
            let (u, v) = game.endpoints(e);
            parts.push(format!("F G !({} & X {})", game.name(u), game.name(v)));
        }
        if parts.is_empty() {
            "True".to_string()
        } else {
            parts.join(" & ")
        }
    }
}

/// One template per player, indexed by player. This is the object the
/// synthesis loop refines and the verifier consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssumptionProfile {
    templates: Vec<UcaTemplate>,
}

impl AssumptionProfile {
    /// The all-trivial profile for a game's players.
    pub fn trivial(game: &Game) -> Self {
        AssumptionProfile { templates: game.players().map(UcaTemplate::trivial).collect() }
    }

    /// Builds a profile from one template per player, in player order.
    pub fn new(game: &Game, templates: Vec<UcaTemplate>) -> Result<Self> {
        if templates.len() != game.player_count() as usize {
            return Err(Error::contract(format!(
                "profile needs {} templates, got {}",
                game.player_count(),
                templates.len()
            )));
        }
        for (i, t) in templates.iter().enumerate() {
            if t.player().number() != i as u32 + 1 {
                return Err(Error::contract(format!(
                    "template at position {i} constrains {}, expected P{}",
                    t.player(),
                    i + 1
                )));
            }
        }
        Ok(AssumptionProfile { templates })
    }

    /// The template constraining `player`'s edges.
    pub fn template(&self, player: Player) -> &UcaTemplate {
        &self.templates[player.index()]
    }

    /// All templates in player order.
    pub fn templates(&self) -> &[UcaTemplate] {
        &self.templates
    }

    /// Replaces one player's template.
    pub fn with_template(&self, template: UcaTemplate) -> Self {
        let mut templates = self.templates.clone();
        let slot = template.player().index();
        templates[slot] = template;
        AssumptionProfile { templates }
    }

    /// The combined obligations of everyone except `player`: what player
    /// `player` may assume about the rest.
    pub fn assumption_of_others(&self, player: Player) -> AggregateUca {
        let mut unsafe_edges = BTreeSet::new();
        let mut colive_edges = BTreeSet::new();
        for t in &self.templates {
            if t.player() == player {
                continue;
            }
            unsafe_edges.extend(t.unsafe_edges().iter().copied());
            colive_edges.extend(t.colive_edges().iter().copied());
        }
        colive_edges.retain(|e| !unsafe_edges.contains(e));
        AggregateUca { unsafe_edges, colive_edges }
    }

    /// Total obligations across all players, a monotonicity measure for the
    /// synthesis loop.
    pub fn obligation_count(&self) -> usize {
        self.templates.iter().map(UcaTemplate::obligation_count).sum()
    }

    /// Renders the profile as a JSON array of template objects, player order.
    pub fn to_doc(&self, game: &Game) -> Value {
        Value::Array(self.templates.iter().map(|t| t.to_doc(game)).collect())
    }

    /// Parses a profile from a JSON array of template objects. The array
    /// must list every player exactly once, in order.
    pub fn from_doc(game: &Game, doc: &Value) -> Result<AssumptionProfile> {
        let entries = doc
            .as_array()
            .ok_or_else(|| Error::contract("template profile must be a JSON array"))?;
        let templates = entries
            .iter()
            .map(|entry| UcaTemplate::from_doc(game, entry))
            .collect::<Result<Vec<_>>>()?;
        AssumptionProfile::new(game, templates)
    }
}

/// Pooled obligations of a set of players, no longer attributed to owners.
/// The sets stay disjoint; edges may belong to any of the pooled players.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AggregateUca {
    unsafe_edges: BTreeSet<EdgeId>,
    colive_edges: BTreeSet<EdgeId>,
}

impl AggregateUca {
    /// The empty aggregate: no obligations.
    pub fn trivial() -> Self {
        AggregateUca::default()
    }

    /// Builds an aggregate directly from edge sets, normalizing disjointness.
    pub fn new(
        unsafe_edges: impl IntoIterator<Item = EdgeId>,
        colive_edges: impl IntoIterator<Item = EdgeId>,
    ) -> Self {
        let unsafe_edges: BTreeSet<EdgeId> = unsafe_edges.into_iter().collect();
        let mut colive_edges: BTreeSet<EdgeId> = colive_edges.into_iter().collect();
        colive_edges.retain(|e| !unsafe_edges.contains(e));
        AggregateUca { unsafe_edges, colive_edges }
    }

    /// The pooled unsafe edges.
    pub fn unsafe_edges(&self) -> &BTreeSet<EdgeId> {
        &self.unsafe_edges
    }

    /// The pooled co-live edges.
    pub fn colive_edges(&self) -> &BTreeSet<EdgeId> {
        &self.colive_edges
    }

    /// Whether the aggregate imposes no obligation.
    pub fn is_trivial(&self) -> bool {
        self.unsafe_edges.is_empty() && self.colive_edges.is_empty()
    }
}

/// Structural equality of two templates (same player, same edge sets).
/// Templates are normalized on construction, so structural equality is
/// semantic equality for the template fragment.
pub fn uca_equal(a: &UcaTemplate, b: &UcaTemplate) -> bool {
    a == b
}

/// Whether an ultimately periodic play complies with the template: no unsafe
/// edge occurs anywhere, no co-live edge occurs on the cycle.
pub fn lasso_satisfies_uca(game: &Game, lasso: &Lasso, template: &UcaTemplate) -> bool {
    let ever = lasso.edges_ever(game);
    if template.unsafe_edges().iter().any(|e| ever.contains(e)) {
        return false;
    }
    let recurring = lasso.recurring_edges(game);
    !template.colive_edges().iter().any(|e| recurring.contains(e))
}

/// Whether an ultimately periodic play complies with pooled obligations.
pub fn lasso_satisfies_aggregate(game: &Game, lasso: &Lasso, aggregate: &AggregateUca) -> bool {
    let ever = lasso.edges_ever(game);
    if aggregate.unsafe_edges().iter().any(|e| ever.contains(e)) {
        return false;
    }
    let recurring = lasso.recurring_edges(game);
    !aggregate.colive_edges().iter().any(|e| recurring.contains(e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Game;

    fn ring() -> Game {
        // P1 owns a,b; P2 owns c. a→b→c→a plus self-loops on a and c.
        Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 1), ("c", 2)],
            &[("a", "a"), ("a", "b"), ("b", "c"), ("c", "a"), ("c", "c")],
            &[vec![1, 2, 1], vec![1, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn construction_normalizes_and_checks_ownership() {
        let game = ring();
        let e_ab = game.edge_between(game.vertex("a").unwrap(), game.vertex("b").unwrap()).unwrap();
        let e_aa = game.edge_between(game.vertex("a").unwrap(), game.vertex("a").unwrap()).unwrap();
        let t = UcaTemplate::new(&game, Player::new(1), [e_ab], [e_ab, e_aa]).unwrap();
        assert_eq!(t.unsafe_edges().len(), 1);
        // e_ab was demoted from the co-live set: it is already unsafe.
        assert_eq!(t.colive_edges().iter().copied().collect::<Vec<_>>(), vec![e_aa]);

        let e_ca = game.edge_between(game.vertex("c").unwrap(), game.vertex("a").unwrap()).unwrap();
        assert!(UcaTemplate::new(&game, Player::new(1), [e_ca], []).is_err());
    }

    #[test]
    fn conjunction_unions_obligations() {
        let game = ring();
        let e_ab = game.edge_between(game.vertex("a").unwrap(), game.vertex("b").unwrap()).unwrap();
        let e_aa = game.edge_between(game.vertex("a").unwrap(), game.vertex("a").unwrap()).unwrap();
        let t1 = UcaTemplate::new(&game, Player::new(1), [], [e_aa]).unwrap();
        let t2 = UcaTemplate::new(&game, Player::new(1), [e_ab], [e_ab]).unwrap();
        let both = t1.conjoin(&game, &t2).unwrap();
        assert_eq!(both.unsafe_edges().iter().copied().collect::<Vec<_>>(), vec![e_ab]);
        assert_eq!(both.colive_edges().iter().copied().collect::<Vec<_>>(), vec![e_aa]);
        assert!(t1.is_subsumed_by(&both));
        assert!(t2.is_subsumed_by(&both));

        let other = UcaTemplate::trivial(Player::new(2));
        assert!(t1.conjoin(&game, &other).is_err());
    }

    #[test]
    fn upgrading_colive_to_unsafe_still_subsumes() {
        let game = ring();
        let e_aa = game.edge_between(game.vertex("a").unwrap(), game.vertex("a").unwrap()).unwrap();
        let colive = UcaTemplate::new(&game, Player::new(1), [], [e_aa]).unwrap();
        let hardened = UcaTemplate::new(&game, Player::new(1), [e_aa], []).unwrap();
        // Forbidding the edge outright is strictly stronger than forbidding
        // it eventually, even though the co-live set shrank.
        assert!(colive.is_subsumed_by(&hardened));
        assert!(!hardened.is_subsumed_by(&colive));
        let merged = colive.conjoin(&game, &hardened).unwrap();
        assert!(uca_equal(&merged, &hardened));
    }

    #[test]
    fn ltl_rendering_is_canonical() {
        let game = ring();
        let e_ab = game.edge_between(game.vertex("a").unwrap(), game.vertex("b").unwrap()).unwrap();
        let e_aa = game.edge_between(game.vertex("a").unwrap(), game.vertex("a").unwrap()).unwrap();
        let t = UcaTemplate::new(&game, Player::new(1), [e_ab], [e_aa]).unwrap();
        assert_eq!(t.to_ltl_string(&game), "G !(a & X b) & F G !(a & X a)");
        assert_eq!(UcaTemplate::trivial(Player::new(1)).to_ltl_string(&game), "True");
    }

    #[test]
    fn aggregate_pools_other_players() {
        let game = ring();
        let e_ab = game.edge_between(game.vertex("a").unwrap(), game.vertex("b").unwrap()).unwrap();
        let e_cc = game.edge_between(game.vertex("c").unwrap(), game.vertex("c").unwrap()).unwrap();
        let profile = AssumptionProfile::new(
            &game,
            vec![
                UcaTemplate::new(&game, Player::new(1), [e_ab], []).unwrap(),
                UcaTemplate::new(&game, Player::new(2), [], [e_cc]).unwrap(),
            ],
        )
        .unwrap();
        let others_of_1 = profile.assumption_of_others(Player::new(1));
        assert!(others_of_1.unsafe_edges().is_empty());
        assert_eq!(others_of_1.colive_edges().iter().copied().collect::<Vec<_>>(), vec![e_cc]);
        let others_of_2 = profile.assumption_of_others(Player::new(2));
        assert_eq!(others_of_2.unsafe_edges().iter().copied().collect::<Vec<_>>(), vec![e_ab]);
        assert_eq!(profile.obligation_count(), 2);
    }

    #[test]
    fn lasso_compliance_distinguishes_prefix_and_cycle() {
        let game = ring();
        let a = game.vertex("a").unwrap();
        let b = game.vertex("b").unwrap();
        let c = game.vertex("c").unwrap();
        let e_ab = game.edge_between(a, b).unwrap();
        // Lasso a b (c a b)^ω: e_ab occurs in prefix and cycle.
        let lasso = Lasso::new(&game, vec![a, b], vec![c, a, b]).unwrap();
        let unsafe_t = UcaTemplate::new(&game, Player::new(1), [e_ab], []).unwrap();
        assert!(!lasso_satisfies_uca(&game, &lasso, &unsafe_t));
        let colive_t = UcaTemplate::new(&game, Player::new(1), [], [e_ab]).unwrap();
        assert!(!lasso_satisfies_uca(&game, &lasso, &colive_t));
        // Lasso a b c (c)^ω: e_ab only finitely often.
        let settle = Lasso::new(&game, vec![a, b, c], vec![c]).unwrap();
        assert!(!lasso_satisfies_uca(&game, &settle, &unsafe_t));
        assert!(lasso_satisfies_uca(&game, &settle, &colive_t));
        assert!(lasso_satisfies_uca(&game, &settle, &UcaTemplate::trivial(Player::new(1))));
    }
}
