//! Graphviz export of games and template annotations.
//!
//! The output is deterministic: vertices and edges appear in canonical
//! order with a fixed attribute layout, so exports diff cleanly across runs.

use crate::game::Game;
use crate::templates::AssumptionProfile;

/// Node shapes per player, cycling if the game has more players than shapes.
const SHAPES: [&str; 6] = ["circle", "box", "diamond", "hexagon", "ellipse", "octagon"];

/// Renders the game as a Graphviz digraph. Node shapes encode ownership,
/// node labels carry the vertex name plus its priorities in player order,
/// and the initial vertex gets a doubled border. When a template profile is
/// given, unsafe edges render dashed red and co-live edges dotted orange.
pub fn export_dot(game: &Game, assumptions: Option<&AssumptionProfile>) -> String {
    let mut out = String::new();
    out.push_str("digraph game {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [fontsize=11];\n");
    for v in game.vertices() {
        let shape = SHAPES[game.owner(v).index() % SHAPES.len()];
        let priorities: Vec<String> =
            game.players().map(|p| game.spec(p).priority(v).to_string()).collect();
        let peripheries = if v == game.init() { 2 } else { 1 };
        out.push_str(&format!(
            "  \"{}\" [shape={shape}, peripheries={peripheries}, label=\"{}\\n({})\"];\n",
            game.name(v),
            game.name(v),
            priorities.join(",")
        ));
    }
    for e in game.edges() {
        let (u, v) = game.endpoints(e);
        let style = assumptions.and_then(|profile| {
            let t = profile.template(game.edge_owner(e));
            if t.unsafe_edges().contains(&e) {
                Some(" [style=dashed, color=red]")
            } else if t.colive_edges().contains(&e) {
                Some(" [style=dotted, color=orange]")
            } else {
                None
            }
        });
        out.push_str(&format!(
            "  \"{}\" -> \"{}\"{};\n",
            game.name(u),
            game.name(v),
            style.unwrap_or("")
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Player;
    use crate::templates::{AssumptionProfile, UcaTemplate};

    fn sample() -> Game {
        Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2)],
            &[("a", "b"), ("b", "a"), ("b", "b")],
            &[vec![1, 2], vec![2, 1]],
        )
        .unwrap()
    }

    #[test]
    fn export_is_deterministic_and_annotates_templates() {
        let game = sample();
        let plain = export_dot(&game, None);
        assert_eq!(plain, export_dot(&game, None));
        assert!(plain.contains("\"a\" [shape=circle, peripheries=2, label=\"a\\n(1,2)\"];"));
        assert!(plain.contains("\"b\" [shape=box, peripheries=1, label=\"b\\n(2,1)\"];"));
        assert!(plain.contains("\"a\" -> \"b\";"));
        assert!(!plain.contains("dashed"));

        let e_ba = game.edge_between(game.vertex("b").unwrap(), game.vertex("a").unwrap()).unwrap();
        let e_bb = game.edge_between(game.vertex("b").unwrap(), game.vertex("b").unwrap()).unwrap();
        let profile = AssumptionProfile::new(
            &game,
            vec![
                UcaTemplate::trivial(Player::new(1)),
                UcaTemplate::new(&game, Player::new(2), [e_ba], [e_bb]).unwrap(),
            ],
        )
        .unwrap();
        let annotated = export_dot(&game, Some(&profile));
        assert!(annotated.contains("\"b\" -> \"a\" [style=dashed, color=red];"));
        assert!(annotated.contains("\"b\" -> \"b\" [style=dotted, color=orange];"));
        assert!(annotated.contains("\"a\" -> \"b\";"));
    }
}
