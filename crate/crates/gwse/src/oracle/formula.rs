//! Specification formulas the oracle evaluates: boolean combinations of
//! per-player parity objectives and edge-template atoms.
//!
//! This little language is exactly closed under what the verifier needs:
//! player objectives, template conjuncts (edge never taken / taken finitely
//! often), negation for implication shapes, and conjunction over players.
//! Every formula can be decided both on a concrete [`Lasso`] and on an
//! abstract [`RecurrenceCase`], and the two verdicts agree whenever the case
//! was enumerated with the formula's watched edges.

use std::collections::BTreeSet;

use crate::game::{EdgeId, Game, Lasso, Player};
use crate::templates::{AggregateUca, AssumptionProfile, UcaTemplate};

use super::recurrence::RecurrenceCase;

/// A boolean combination of parity objectives and edge-template atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    /// Satisfied by every play.
    True,
    /// The named player's parity objective holds.
    ParityWin(Player),
    /// The edge is never crossed (template safety atom).
    EdgeNeverTaken(EdgeId),
    /// The edge is crossed at most finitely often (template co-liveness atom).
    EdgeFinitelyTaken(EdgeId),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    /// Conjunction that drops `True` conjuncts and unwraps singletons.
    pub fn conj(parts: Vec<Formula>) -> Formula {
        let mut kept: Vec<Formula> = parts.into_iter().filter(|f| *f != Formula::True).collect();
        match kept.len() {
            0 => Formula::True,
            1 => kept.pop().unwrap(),
            _ => Formula::And(kept),
        }
    }

    /// Negation, collapsing a double negative.
    pub fn negate(f: Formula) -> Formula {
        match f {
            Formula::Not(inner) => *inner,
            other => Formula::Not(Box::new(other)),
        }
    }

    /// Material implication `a ⇒ b`, simplified when `a` is trivial.
    pub fn implies(a: Formula, b: Formula) -> Formula {
        if a == Formula::True {
            b
        } else {
            Formula::Or(vec![Formula::negate(a), b])
        }
    }

    /// The obligations of one player's template, as a conjunction of atoms.
    pub fn of_template(template: &UcaTemplate) -> Formula {
        let mut parts = Vec::new();
        for &e in template.unsafe_edges() {
            parts.push(Formula::EdgeNeverTaken(e));
        }
        for &e in template.colive_edges() {
            parts.push(Formula::EdgeFinitelyTaken(e));
        }
        Formula::conj(parts)
    }

    /// The pooled obligations of several templates.
    pub fn of_aggregate(aggregate: &AggregateUca) -> Formula {
        let mut parts = Vec::new();
        for &e in aggregate.unsafe_edges() {
            parts.push(Formula::EdgeNeverTaken(e));
        }
        for &e in aggregate.colive_edges() {
            parts.push(Formula::EdgeFinitelyTaken(e));
        }
        Formula::conj(parts)
    }

    /// One player's contract under an assumption profile: the player's own
    /// template, plus its objective whenever everyone else honours theirs.
    pub fn contract(assumptions: &AssumptionProfile, player: Player) -> Formula {
        let own = Formula::of_template(assumptions.template(player));
        let others = Formula::of_aggregate(&assumptions.assumption_of_others(player));
        Formula::conj(vec![
            own,
            Formula::implies(others, Formula::ParityWin(player)),
        ])
    }

    /// The conjunction of every player's raw objective.
    pub fn all_objectives(game: &Game) -> Formula {
        Formula::conj(game.players().map(Formula::ParityWin).collect())
    }

    /// The conjunction of every player's contract under `assumptions`.
    pub fn all_contracts(game: &Game, assumptions: &AssumptionProfile) -> Formula {
        Formula::conj(
            game.players()
                .map(|p| Formula::contract(assumptions, p))
                .collect(),
        )
    }

    /// The edges whose one-off occurrence the formula can observe: the
    /// never-taken atoms, at either polarity. Co-liveness and parity atoms
    /// are prefix-independent and need no watching.
    pub fn watched_edges(&self) -> BTreeSet<EdgeId> {
        let mut out = BTreeSet::new();
        self.collect_watched(&mut out);
        out
    }

    fn collect_watched(&self, out: &mut BTreeSet<EdgeId>) {
        match self {
            Formula::True | Formula::ParityWin(_) | Formula::EdgeFinitelyTaken(_) => {}
            Formula::EdgeNeverTaken(e) => {
                out.insert(*e);
            }
            Formula::Not(f) => f.collect_watched(out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_watched(out);
                }
            }
        }
    }

    /// Evaluates the formula on a concrete play.
    pub fn satisfied_by(&self, game: &Game, lasso: &Lasso) -> bool {
        match self {
            Formula::True => true,
            Formula::ParityWin(p) => lasso.satisfies_parity(game.spec(*p)),
            Formula::EdgeNeverTaken(e) => !lasso.edges_ever(game).contains(e),
            Formula::EdgeFinitelyTaken(e) => !lasso.recurring_edges(game).contains(e),
            Formula::Not(f) => !f.satisfied_by(game, lasso),
            Formula::And(fs) => fs.iter().all(|f| f.satisfied_by(game, lasso)),
            Formula::Or(fs) => fs.iter().any(|f| f.satisfied_by(game, lasso)),
        }
    }

    /// Evaluates the formula on an abstract play shape. Exact — provided the
    /// case was enumerated with a watched set covering
    /// [`watched_edges`](Self::watched_edges).
    pub fn satisfied_by_case(&self, game: &Game, case: &RecurrenceCase) -> bool {
        match self {
            Formula::True => true,
            Formula::ParityWin(p) => {
                let spec = game.spec(*p);
                let max = case
                    .recurring_vertices(game)
                    .iter()
                    .map(|&v| spec.priority(v))
                    .max()
                    .expect("a recurrence case repeats at least one edge");
                max % 2 == 0
            }
            Formula::EdgeNeverTaken(e) => !case.occurs(*e),
            Formula::EdgeFinitelyTaken(e) => !case.loop_edges().contains(e),
            Formula::Not(f) => !f.satisfied_by_case(game, case),
            Formula::And(fs) => fs.iter().all(|f| f.satisfied_by_case(game, case)),
            Formula::Or(fs) => fs.iter().any(|f| f.satisfied_by_case(game, case)),
        }
    }

    /// Human-readable rendering with vertex names, e.g.
    /// `(never(v3->v4) & win(P1))`.
    pub fn display(&self, game: &Game) -> String {
        match self {
            Formula::True => "true".to_string(),
            Formula::ParityWin(p) => format!("win({p})"),
            Formula::EdgeNeverTaken(e) => format!("never({})", game.display_edge(*e)),
            Formula::EdgeFinitelyTaken(e) => format!("finitely({})", game.display_edge(*e)),
            Formula::Not(f) => format!("!{}", f.display(game)),
            Formula::And(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.display(game)).collect();
                format!("({})", parts.join(" & "))
            }
            Formula::Or(fs) => {
                let parts: Vec<String> = fs.iter().map(|f| f.display(game)).collect();
                format!("({})", parts.join(" | "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Result;

    fn two_loops() -> Game {
        // a (P1, prio 1) <-> b (P2, prio 2), self-loops on both.
        Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2)],
            &[("a", "b"), ("b", "a"), ("a", "a"), ("b", "b")],
            &[vec![1, 2], vec![1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn lasso_evaluation_reads_the_play() -> Result<()> {
        let game = two_loops();
        let a = game.vertex("a").unwrap();
        let b = game.vertex("b").unwrap();
        let ab = game.edge_between(a, b).unwrap();
        let aa = game.edge_between(a, a).unwrap();
        // a (b)^ω: crosses a->b once, repeats b->b only.
        let lasso = Lasso::new(&game, vec![a], vec![b])?;
        assert!(Formula::ParityWin(Player::new(1)).satisfied_by(&game, &lasso));
        assert!(!Formula::EdgeNeverTaken(ab).satisfied_by(&game, &lasso));
        assert!(Formula::EdgeNeverTaken(aa).satisfied_by(&game, &lasso));
        assert!(Formula::EdgeFinitelyTaken(ab).satisfied_by(&game, &lasso));
        Ok(())
    }

    #[test]
    fn contracts_collapse_to_objectives_under_trivial_templates() {
        let game = two_loops();
        let trivial = AssumptionProfile::trivial(&game);
        let p1 = Player::new(1);
        assert_eq!(Formula::contract(&trivial, p1), Formula::ParityWin(p1));
        assert_eq!(
            Formula::all_contracts(&game, &trivial),
            Formula::all_objectives(&game)
        );
    }

    #[test]
    fn watched_edges_survive_negation() {
        let game = two_loops();
        let a = game.vertex("a").unwrap();
        let b = game.vertex("b").unwrap();
        let ab = game.edge_between(a, b).unwrap();
        let bb = game.edge_between(b, b).unwrap();
        let f = Formula::negate(Formula::And(vec![
            Formula::EdgeNeverTaken(ab),
            Formula::EdgeFinitelyTaken(bb),
        ]));
        let watched = f.watched_edges();
        assert!(watched.contains(&ab));
        assert!(!watched.contains(&bb));
    }

    #[test]
    fn double_negation_collapses() {
        let f = Formula::ParityWin(Player::new(1));
        assert_eq!(Formula::negate(Formula::negate(f.clone())), f);
    }

    #[test]
    fn display_names_the_atoms() {
        let game = two_loops();
        let a = game.vertex("a").unwrap();
        let f = Formula::conj(vec![
            Formula::EdgeNeverTaken(game.edge_between(a, a).unwrap()),
            Formula::ParityWin(Player::new(2)),
        ]);
        let text = f.display(&game);
        assert!(text.contains("never"));
        assert!(text.contains("P2"));
    }
}
