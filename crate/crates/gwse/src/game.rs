//! Data model, serialization, and validation for k-player parity games.
//!
//! A game is played on a finite directed graph whose vertices are partitioned
//! among k players; the player owning the current vertex chooses the next
//! edge, forever. Each player carries its own parity specification: a play
//! satisfies it iff the maximum priority seen infinitely often is even.
//!
//! Games are read from a JSON document (see [`parse_game`]) and are always
//! fully validated: every vertex must have an outgoing edge (plays are
//! infinite), edges must connect declared vertices without duplicates, and
//! every player needs a total priority function. The document's vertex and
//! edge order is the *canonical order* used for all deterministic
//! tie-breaking throughout the crate.
//!
//! # Example
//!
//! ```
#![doc = include_str!("../doc/snippets/games.rs")]
//! ```

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::DenseSet;

/// A player, numbered 1 through k.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Player(u32);

impl Player {
    /// Wraps a 1-based player number. Panics on 0.
    pub fn new(number: u32) -> Self {
        assert!(number >= 1, "players are numbered starting at 1");
        Player(number)
    }

    /// The 1-based number of this player.
    pub fn number(self) -> u32 {
        self.0
    }

    /// The 0-based index of this player (for array storage).
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

impl fmt::Debug for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

/// A vertex, addressed by its position in the document's vertex list.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    /// The 0-based index of this vertex.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v#{}", self.0)
    }
}

/// An edge, addressed by its position in the document's edge list.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    /// The 0-based index of this edge.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e#{}", self.0)
    }
}

/// One player's parity objective: a total priority function on the vertices.
///
/// A play satisfies the objective iff the maximum priority occurring
/// infinitely often along it is even.
#[derive(Clone, PartialEq, Eq)]
pub struct ParitySpec {
    priorities: Vec<u32>,
}

impl ParitySpec {
    /// Builds a spec from one priority per vertex, in canonical vertex order.
    pub fn new(priorities: Vec<u32>) -> Self {
        ParitySpec { priorities }
    }

    /// Priorities `{1, 2}` with 2 exactly on `targets`: satisfied iff some
    /// target vertex is visited infinitely often.
    pub fn recurrence(vertex_count: usize, targets: impl IntoIterator<Item = VertexId>) -> Self {
        let mut priorities = vec![1; vertex_count];
        for t in targets {
            priorities[t.index()] = 2;
        }
        ParitySpec { priorities }
    }

    /// Priorities `{1, 0}` with 0 exactly on `targets`: satisfied iff the play
    /// eventually stays inside `targets` forever.
    pub fn settling(vertex_count: usize, targets: impl IntoIterator<Item = VertexId>) -> Self {
        let mut priorities = vec![1; vertex_count];
        for t in targets {
            priorities[t.index()] = 0;
        }
        ParitySpec { priorities }
    }

    /// The all-zero spec, satisfied by every play.
    pub fn trivially_true(vertex_count: usize) -> Self {
        ParitySpec { priorities: vec![0; vertex_count] }
    }

    /// The priority of a vertex.
    pub fn priority(&self, v: VertexId) -> u32 {
        self.priorities[v.index()]
    }

    /// Number of vertices this spec covers.
    pub fn len(&self) -> usize {
        self.priorities.len()
    }

    /// Whether the spec covers no vertices.
    pub fn is_empty(&self) -> bool {
        self.priorities.is_empty()
    }

    /// The largest priority assigned to any vertex (0 for an empty spec).
    pub fn max_priority(&self) -> u32 {
        self.priorities.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Debug for ParitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParitySpec({:?})", self.priorities)
    }
}

/// A structural defect of a game document, reported by [`validate_game`] and
/// by [`parse_game`] (which collects every defect instead of stopping at the
/// first).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    /// The document declares zero players.
    #[error("player count must be at least 1")]
    ZeroPlayers,
    /// The document declares no vertices.
    #[error("a game needs at least one vertex")]
    NoVertices,
    /// A vertex id is the empty string.
    #[error("vertex #{position} has an empty id")]
    EmptyVertexId { position: usize },
    /// Two vertices share an id.
    #[error("duplicate vertex id '{id}'")]
    DuplicateVertexId { id: String },
    /// The initial vertex is not declared.
    #[error("initial vertex '{id}' is not declared")]
    UnknownInit { id: String },
    /// A vertex is owned by a player outside [1;k].
    #[error("vertex '{vertex}' has owner {owner}, but players are 1..={players}")]
    OwnerOutOfRange { vertex: String, owner: u32, players: u32 },
    /// An edge endpoint is not a declared vertex.
    #[error("edge #{position} endpoint '{endpoint}' is not a declared vertex")]
    UnknownEdgeEndpoint { position: usize, endpoint: String },
    /// The same edge is listed twice.
    #[error("duplicate edge ({from},{to})")]
    DuplicateEdge { from: String, to: String },
    /// A vertex has no outgoing edge, so no infinite play can pass through it.
    #[error("vertex '{id}' has no outgoing edge")]
    SinkVertex { id: String },
    /// A vertex lacks a priority for some player.
    #[error("vertex '{vertex}' has no priority for player {player}")]
    MissingPriority { vertex: String, player: u32 },
    /// A vertex gives an explicit priority for a player that also has sugar.
    #[error("vertex '{vertex}' gives a priority for player {player}, which is already specified via sugar")]
    ConflictingPriority { vertex: String, player: u32 },
    /// A priority map uses a key that is not a player number in [1;k].
    #[error("vertex '{vertex}' has priority entry for unknown player '{key}'")]
    UnknownPriorityPlayer { vertex: String, key: String },
    /// A sugar entry names a player outside [1;k].
    #[error("sugar entry for unknown player '{key}'")]
    SugarUnknownPlayer { key: String },
    /// A sugar entry references an undeclared vertex.
    #[error("sugar for player {player} references undeclared vertex '{id}'")]
    SugarUnknownVertex { player: u32, id: String },
    /// A sugar entry specifies both objective forms at once.
    #[error("sugar for player {player} specifies both 'buchi' and 'cobuchi'")]
    SugarBothForms { player: u32 },
    /// A sugar entry specifies neither objective form.
    #[error("sugar for player {player} specifies neither 'buchi' nor 'cobuchi'")]
    SugarEmpty { player: u32 },
}

/// A k-player parity game: graph, ownership, initial vertex, and one parity
/// spec per player. Instances are immutable and always pass [`validate_game`].
#[derive(Clone, PartialEq, Eq)]
pub struct Game {
    players: u32,
    init: VertexId,
    names: Vec<String>,
    owners: Vec<Player>,
    edges: Vec<(VertexId, VertexId)>,
    succ: Vec<Vec<EdgeId>>,
    edge_index: BTreeMap<(u32, u32), EdgeId>,
    specs: Vec<ParitySpec>,
}

impl Game {
    /// Number of players, k.
    pub fn player_count(&self) -> u32 {
        self.players
    }

    /// Iterates over the players `P1..=Pk`.
    pub fn players(&self) -> impl Iterator<Item = Player> {
        (1..=self.players).map(Player::new)
    }

    /// The initial vertex.
    pub fn init(&self) -> VertexId {
        self.init
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// Iterates over all vertices in canonical order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len() as u32).map(VertexId)
    }

    /// The document name of a vertex.
    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    /// Looks a vertex up by its document name.
    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name).map(|i| VertexId(i as u32))
    }

    /// The player owning a vertex.
    pub fn owner(&self, v: VertexId) -> Player {
        self.owners[v.index()]
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Iterates over all edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    /// The endpoints of an edge.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.index()]
    }

    /// The source vertex of an edge.
    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].0
    }

    /// The target vertex of an edge.
    pub fn target(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].1
    }

    /// The edge from `u` to `v`, if declared.
    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(u.0, v.0)).copied()
    }

    /// The outgoing edges of a vertex, in canonical order.
    pub fn outgoing(&self, v: VertexId) -> &[EdgeId] {
        &self.succ[v.index()]
    }

    /// The player moving at an edge's source.
    pub fn edge_owner(&self, e: EdgeId) -> Player {
        self.owner(self.source(e))
    }

    /// Iterates over the vertices owned by a player, in canonical order.
    pub fn vertices_of(&self, p: Player) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices().filter(move |&v| self.owner(v) == p)
    }

    /// Iterates over the edges whose source the player owns.
    pub fn edges_of(&self, p: Player) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().filter(move |&e| self.edge_owner(e) == p)
    }

    /// The parity spec of a player.
    pub fn spec(&self, p: Player) -> &ParitySpec {
        &self.specs[p.index()]
    }

    /// Renders an edge as `(from,to)` using document names.
    pub fn display_edge(&self, e: EdgeId) -> String {
        let (u, v) = self.endpoints(e);
        format!("({},{})", self.name(u), self.name(v))
    }

    /// Builds a game programmatically. `vertices` pairs each name with its
    /// owner; `specs` holds one priority per player per vertex, in canonical
    /// order. Input passes through exactly the same validation as
    /// [`parse_game`].
    pub fn from_parts(
        players: u32,
        init: &str,
        vertices: &[(&str, u32)],
        edges: &[(&str, &str)],
        specs: &[Vec<u32>],
    ) -> Result<Game> {
        let doc = GameDoc {
            players,
            init: init.to_string(),
            vertices: vertices
                .iter()
                .enumerate()
                .map(|(vi, (name, owner))| VertexDoc {
                    id: name.to_string(),
                    owner: *owner,
                    priority: specs
                        .iter()
                        .enumerate()
                        .map(|(pi, per_vertex)| ((pi + 1).to_string(), per_vertex[vi]))
                        .collect(),
                })
                .collect(),
            edges: edges.iter().map(|(u, v)| (u.to_string(), v.to_string())).collect(),
            sugar: BTreeMap::new(),
        };
        resolve(&doc)
    }

    /// Serializes the game back to the JSON document format, with all sugar
    /// expanded to explicit priorities. The output is deterministic and
    /// reparses to a structurally equal game.
    pub fn to_json(&self) -> String {
        let doc = self.to_doc();
        let mut text = serde_json::to_string_pretty(&doc).expect("game serialization cannot fail");
        text.push('\n');
        text
    }

    fn to_doc(&self) -> GameDoc {
        GameDoc {
            players: self.players,
            init: self.names[self.init.index()].clone(),
            vertices: self
                .vertices()
                .map(|v| VertexDoc {
                    id: self.name(v).to_string(),
                    owner: self.owner(v).number(),
                    priority: self
                        .players()
                        .map(|p| (p.number().to_string(), self.spec(p).priority(v)))
                        .collect(),
                })
                .collect(),
            edges: self
                .edges()
                .map(|e| {
                    let (u, v) = self.endpoints(e);
                    (self.name(u).to_string(), self.name(v).to_string())
                })
                .collect(),
            sugar: BTreeMap::new(),
        }
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Game({} players, {} vertices, {} edges, init {})",
            self.players,
            self.vertex_count(),
            self.edge_count(),
            self.name(self.init)
        )
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameDoc {
    players: u32,
    init: String,
    vertices: Vec<VertexDoc>,
    edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    sugar: BTreeMap<String, SugarDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexDoc {
    id: String,
    owner: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    priority: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SugarDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    buchi: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cobuchi: Option<Vec<String>>,
}

/// Parses a JSON game document into a validated [`Game`].
///
/// The document's vertex and edge order becomes the canonical order for all
/// deterministic tie-breaking. Malformed JSON yields [`Error::Malformed`]
/// (with line/column); a well-formed document describing a broken game yields
/// [`Error::InvalidGame`] carrying *every* violated invariant.
pub fn parse_game(text: &str) -> Result<Game> {
    let doc: GameDoc = serde_json::from_str(text)?;
    resolve(&doc)
}

/// Re-checks every structural invariant of a constructed game.
///
/// Total: never errors, returns the (possibly empty) list of violations.
/// Games built by [`parse_game`] or [`Game::from_parts`] always yield an
/// empty list; the operation exists so that other document producers can be
/// linted against the same rules.
pub fn validate_game(game: &Game) -> Vec<Violation> {
    collect_violations(&game.to_doc())
}

/// Checks a document against every invariant, collecting all violations.
fn collect_violations(doc: &GameDoc) -> Vec<Violation> {
    let mut violations = Vec::new();
    if doc.players == 0 {
        violations.push(Violation::ZeroPlayers);
    }
    if doc.vertices.is_empty() {
        violations.push(Violation::NoVertices);
    }

    let mut names: BTreeMap<&str, usize> = BTreeMap::new();
    for (position, v) in doc.vertices.iter().enumerate() {
        if v.id.is_empty() {
            violations.push(Violation::EmptyVertexId { position });
        } else if names.insert(&v.id, position).is_some() {
            violations.push(Violation::DuplicateVertexId { id: v.id.clone() });
        }
    }

    if !doc.vertices.is_empty() && !names.contains_key(doc.init.as_str()) {
        violations.push(Violation::UnknownInit { id: doc.init.clone() });
    }

    for v in &doc.vertices {
        if doc.players > 0 && (v.owner == 0 || v.owner > doc.players) {
            violations.push(Violation::OwnerOutOfRange {
                vertex: v.id.clone(),
                owner: v.owner,
                players: doc.players,
            });
        }
    }

    // Sugar entries: player keys must be numeric and in range, each entry must
    // pick exactly one objective form, and targets must be declared vertices.
    let mut sugared: BTreeSet<u32> = BTreeSet::new();
    for (key, entry) in &doc.sugar {
        let player = match key.parse::<u32>() {
            Ok(p) if p >= 1 && p <= doc.players => p,
            _ => {
                violations.push(Violation::SugarUnknownPlayer { key: key.clone() });
                continue;
            }
        };
        sugared.insert(player);
        let targets = match (&entry.buchi, &entry.cobuchi) {
            (Some(_), Some(_)) => {
                violations.push(Violation::SugarBothForms { player });
                continue;
            }
            (None, None) => {
                violations.push(Violation::SugarEmpty { player });
                continue;
            }
            (Some(t), None) | (None, Some(t)) => t,
        };
        for id in targets {
            if !names.contains_key(id.as_str()) {
                violations.push(Violation::SugarUnknownVertex { player, id: id.clone() });
            }
        }
    }

    // Priorities: every player needs exactly one source per vertex.
    for v in &doc.vertices {
        for key in v.priority.keys() {
            match key.parse::<u32>() {
                Ok(p) if p >= 1 && p <= doc.players => {
                    if sugared.contains(&p) {
                        violations.push(Violation::ConflictingPriority {
                            vertex: v.id.clone(),
                            player: p,
                        });
                    }
                }
                _ => violations.push(Violation::UnknownPriorityPlayer {
                    vertex: v.id.clone(),
                    key: key.clone(),
                }),
            }
        }
        for player in 1..=doc.players {
            if !sugared.contains(&player) && !v.priority.contains_key(&player.to_string()) {
                violations.push(Violation::MissingPriority { vertex: v.id.clone(), player });
            }
        }
    }

    // Edges: endpoints declared, no duplicates, no sinks.
    let mut seen_edges: BTreeSet<(&str, &str)> = BTreeSet::new();
    let mut has_outgoing = vec![false; doc.vertices.len()];
    for (position, (from, to)) in doc.edges.iter().enumerate() {
        let mut known = true;
        for endpoint in [from, to] {
            if !names.contains_key(endpoint.as_str()) {
                violations.push(Violation::UnknownEdgeEndpoint {
                    position,
                    endpoint: endpoint.clone(),
                });
                known = false;
            }
        }
        if known {
            if !seen_edges.insert((from, to)) {
                violations.push(Violation::DuplicateEdge { from: from.clone(), to: to.clone() });
            }
            has_outgoing[names[from.as_str()]] = true;
        }
    }
    for (v, has) in doc.vertices.iter().zip(&has_outgoing) {
        if !has && !v.id.is_empty() {
            violations.push(Violation::SinkVertex { id: v.id.clone() });
        }
    }

    violations
}

/// Builds a [`Game`] from a document, after full validation.
fn resolve(doc: &GameDoc) -> Result<Game> {
    let violations = collect_violations(doc);
    if !violations.is_empty() {
        return Err(Error::InvalidGame(violations));
    }

    let names: Vec<String> = doc.vertices.iter().map(|v| v.id.clone()).collect();
    let index_of: BTreeMap<&str, u32> =
        names.iter().enumerate().map(|(i, n)| (n.as_str(), i as u32)).collect();
    let owners: Vec<Player> = doc.vertices.iter().map(|v| Player::new(v.owner)).collect();
    let init = VertexId(index_of[doc.init.as_str()]);

    let mut edges = Vec::with_capacity(doc.edges.len());
    let mut succ: Vec<Vec<EdgeId>> = vec![Vec::new(); names.len()];
    let mut edge_index = BTreeMap::new();
    for (from, to) in &doc.edges {
        let (u, v) = (VertexId(index_of[from.as_str()]), VertexId(index_of[to.as_str()]));
        let id = EdgeId(edges.len() as u32);
        edges.push((u, v));
        succ[u.index()].push(id);
        edge_index.insert((u.0, v.0), id);
    }

    // Desugared specs: explicit priorities, or the recurrence/settling
    // encodings for sugared players.
    let mut specs = Vec::with_capacity(doc.players as usize);
    for player in 1..=doc.players {
        if let Some(entry) = doc.sugar.get(&player.to_string()) {
            let resolve_targets = |ids: &Vec<String>| {
                ids.iter().map(|id| VertexId(index_of[id.as_str()])).collect::<Vec<_>>()
            };
            if let Some(targets) = &entry.buchi {
                specs.push(ParitySpec::recurrence(names.len(), resolve_targets(targets)));
            } else if let Some(targets) = &entry.cobuchi {
                specs.push(ParitySpec::settling(names.len(), resolve_targets(targets)));
            }
        } else {
            let key = player.to_string();
            specs.push(ParitySpec::new(
                doc.vertices.iter().map(|v| v.priority[&key]).collect(),
            ));
        }
    }

    Ok(Game { players: doc.players, init, names, owners, edges, succ, edge_index, specs })
}

/// A restriction of a game graph to a vertex subset minus some edges.
///
/// Views use their own contiguous local indices (canonical order induced from
/// the game) and remember the original identity of every vertex and edge.
/// Unlike full games, a view may contain vertices with no outgoing edge;
/// callers must handle them.
#[derive(Debug, Clone)]
pub struct GraphView {
    /// Local index → original vertex, ascending in canonical order.
    pub vertices: Vec<VertexId>,
    /// Local successor lists: `(local target, original edge)` per local source.
    pub succ: Vec<Vec<(u32, EdgeId)>>,
    local_of: Vec<Option<u32>>,
}

impl GraphView {
    /// The local index of an original vertex, if kept.
    pub fn local(&self, v: VertexId) -> Option<u32> {
        self.local_of.get(v.index()).copied().flatten()
    }

    /// Number of vertices in the view.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// Whether the view is empty.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Restricts `game` to `keep_vertices`, additionally dropping `drop_edges`.
/// Edges with either endpoint outside `keep_vertices` disappear; the result
/// may contain sinks.
pub fn induced_subgraph(game: &Game, keep_vertices: &DenseSet, drop_edges: &BTreeSet<EdgeId>) -> GraphView {
    let mut vertices = Vec::new();
    let mut local_of = vec![None; game.vertex_count()];
    for v in keep_vertices.iter() {
        local_of[v as usize] = Some(vertices.len() as u32);
        vertices.push(VertexId(v));
    }
    let mut succ = vec![Vec::new(); vertices.len()];
    for (local, &v) in vertices.iter().enumerate() {
        for &e in game.outgoing(v) {
            if drop_edges.contains(&e) {
                continue;
            }
            if let Some(target_local) = local_of[game.target(e).index()] {
                succ[local].push((target_local, e));
            }
        }
    }
    GraphView { vertices, succ, local_of }
}

/// An ultimately periodic play: a finite prefix followed by a cycle repeated
/// forever. `prefix` is nonempty and starts at the play's start vertex; the
/// play is `prefix · cycle^ω`, so the last prefix vertex has an edge to the
/// cycle head and the cycle wraps around to its own head.
///
/// Lassos are the witness format for every language-level check in this
/// crate: two ω-regular properties over a finite graph differ iff some lasso
/// separates them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lasso {
    prefix: Vec<VertexId>,
    cycle: Vec<VertexId>,
}

impl Lasso {
    /// Builds a lasso, checking that every consecutive pair (through the
    /// prefix, into the cycle, along the cycle, and wrapping around) is an
    /// edge of `game`, and that both parts are nonempty.
    pub fn new(game: &Game, prefix: Vec<VertexId>, cycle: Vec<VertexId>) -> Result<Lasso> {
        if prefix.is_empty() || cycle.is_empty() {
            return Err(Error::contract("a lasso needs a nonempty prefix and a nonempty cycle"));
        }
        let lasso = Lasso { prefix, cycle };
        for (u, v) in lasso.steps() {
            if game.edge_between(u, v).is_none() {
                return Err(Error::contract(format!(
                    "lasso step ({},{}) is not an edge",
                    game.name(u),
                    game.name(v)
                )));
            }
        }
        Ok(lasso)
    }

    /// The prefix, starting at the play's start vertex.
    pub fn prefix(&self) -> &[VertexId] {
        &self.prefix
    }

    /// The cycle, repeated forever after the prefix.
    pub fn cycle(&self) -> &[VertexId] {
        &self.cycle
    }

    /// All consecutive steps of the play, each exactly once: prefix steps,
    /// the junction into the cycle head, cycle steps, and the wrap-around.
    fn steps(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        let prefix_steps = self.prefix.windows(2).map(|w| (w[0], w[1]));
        let junction = std::iter::once((*self.prefix.last().unwrap(), self.cycle[0]));
        let cycle_steps = self.cycle.windows(2).map(|w| (w[0], w[1]));
        let wrap = std::iter::once((*self.cycle.last().unwrap(), self.cycle[0]));
        prefix_steps.chain(junction).chain(cycle_steps).chain(wrap)
    }

    /// The edges the play takes at least once.
    pub fn edges_ever(&self, game: &Game) -> BTreeSet<EdgeId> {
        self.steps()
            .map(|(u, v)| game.edge_between(u, v).expect("validated at construction"))
            .collect()
    }

    /// The edges the play takes infinitely often (the cycle's edges,
    /// including the wrap-around).
    pub fn recurring_edges(&self, game: &Game) -> BTreeSet<EdgeId> {
        let cycle_steps = self.cycle.windows(2).map(|w| (w[0], w[1]));
        let wrap = std::iter::once((*self.cycle.last().unwrap(), self.cycle[0]));
        cycle_steps
            .chain(wrap)
            .map(|(u, v)| game.edge_between(u, v).expect("validated at construction"))
            .collect()
    }

    /// The vertices visited infinitely often (the cycle's vertices).
    pub fn recurring_vertices(&self) -> BTreeSet<VertexId> {
        self.cycle.iter().copied().collect()
    }

    /// Whether the play satisfies a parity spec: the maximum priority on the
    /// cycle is even.
    pub fn satisfies_parity(&self, spec: &ParitySpec) -> bool {
        let max = self.cycle.iter().map(|&v| spec.priority(v)).max().unwrap();
        max % 2 == 0
    }

    /// Renders the play as e.g. `v0 v1 (v2 v3)^ω`.
    pub fn display(&self, game: &Game) -> String {
        let part = |vs: &[VertexId]| vs.iter().map(|&v| game.name(v)).collect::<Vec<_>>().join(" ");
        format!("{} ({})^ω", part(&self.prefix), part(&self.cycle))
    }
}

impl fmt::Debug for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lasso({:?} ({:?})^ω)", self.prefix, self.cycle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Game {
        Game::from_parts(
            2,
            "a",
            &[("a", 1), ("b", 2)],
            &[("a", "b"), ("b", "a"), ("b", "b")],
            &[vec![1, 2], vec![0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn smallest_legal_game_parses() {
        let game = parse_game(
            r#"{
                "players": 1,
                "init": "v",
                "vertices": [{"id": "v", "owner": 1, "priority": {"1": 0}}],
                "edges": [["v", "v"]]
            }"#,
        )
        .unwrap();
        assert_eq!(game.player_count(), 1);
        assert_eq!(game.vertex_count(), 1);
        assert_eq!(game.outgoing(game.init()), &[EdgeId(0)]);
        assert!(validate_game(&game).is_empty());
    }

    #[test]
    fn sink_vertex_is_rejected() {
        let err = parse_game(
            r#"{
                "players": 1,
                "init": "a",
                "vertices": [
                    {"id": "a", "owner": 1, "priority": {"1": 0}},
                    {"id": "b", "owner": 1, "priority": {"1": 0}}
                ],
                "edges": [["a", "b"]]
            }"#,
        )
        .unwrap_err();
        match err {
            Error::InvalidGame(violations) => {
                assert_eq!(violations, vec![Violation::SinkVertex { id: "b".into() }]);
            }
            other => panic!("expected InvalidGame, got {other:?}"),
        }
    }

    #[test]
    fn undeclared_endpoint_and_bad_owner_are_single_violations() {
        let err = parse_game(
            r#"{
                "players": 2,
                "init": "a",
                "vertices": [{"id": "a", "owner": 3, "priority": {"1": 0, "2": 0}}],
                "edges": [["a", "a"], ["a", "zz"]]
            }"#,
        )
        .unwrap_err();
        let Error::InvalidGame(violations) = err else { panic!("expected InvalidGame") };
        assert!(violations.contains(&Violation::OwnerOutOfRange {
            vertex: "a".into(),
            owner: 3,
            players: 2
        }));
        assert!(violations
            .contains(&Violation::UnknownEdgeEndpoint { position: 1, endpoint: "zz".into() }));
        assert_eq!(violations.len(), 2);
    }

    #[test]
    fn duplicate_edges_are_rejected() {
        let err = Game::from_parts(
            1,
            "a",
            &[("a", 1)],
            &[("a", "a"), ("a", "a")],
            &[vec![0]],
        )
        .unwrap_err();
        let Error::InvalidGame(violations) = err else { panic!("expected InvalidGame") };
        assert_eq!(violations, vec![Violation::DuplicateEdge { from: "a".into(), to: "a".into() }]);
    }

    #[test]
    fn sugar_desugars_to_recurrence_and_settling_priorities() {
        let game = parse_game(
            r#"{
                "players": 2,
                "init": "a",
                "vertices": [
                    {"id": "a", "owner": 1},
                    {"id": "b", "owner": 2}
                ],
                "edges": [["a", "b"], ["b", "a"]],
                "sugar": {"1": {"buchi": ["b"]}, "2": {"cobuchi": ["a"]}}
            }"#,
        )
        .unwrap();
        let (a, b) = (game.vertex("a").unwrap(), game.vertex("b").unwrap());
        assert_eq!(game.spec(Player::new(1)).priority(a), 1);
        assert_eq!(game.spec(Player::new(1)).priority(b), 2);
        assert_eq!(game.spec(Player::new(2)).priority(a), 0);
        assert_eq!(game.spec(Player::new(2)).priority(b), 1);
    }

    #[test]
    fn sugar_conflicts_are_reported() {
        let err = parse_game(
            r#"{
                "players": 1,
                "init": "a",
                "vertices": [{"id": "a", "owner": 1, "priority": {"1": 0}}],
                "edges": [["a", "a"]],
                "sugar": {"1": {"buchi": ["a"]}}
            }"#,
        )
        .unwrap_err();
        let Error::InvalidGame(violations) = err else { panic!("expected InvalidGame") };
        assert_eq!(
            violations,
            vec![Violation::ConflictingPriority { vertex: "a".into(), player: 1 }]
        );
    }

    #[test]
    fn json_roundtrip_is_structural_identity() {
        let game = tiny();
        let reparsed = parse_game(&game.to_json()).unwrap();
        assert_eq!(game, reparsed);
    }

    #[test]
    fn canonical_order_follows_document() {
        let game = tiny();
        assert_eq!(game.name(VertexId(0)), "a");
        assert_eq!(game.name(VertexId(1)), "b");
        assert_eq!(game.endpoints(EdgeId(0)), (VertexId(0), VertexId(1)));
        assert_eq!(game.endpoints(EdgeId(2)), (VertexId(1), VertexId(1)));
        assert_eq!(game.outgoing(VertexId(1)), &[EdgeId(1), EdgeId(2)]);
    }

    #[test]
    fn induced_subgraph_identity_and_restriction() {
        let game = tiny();
        let all = DenseSet::full(game.vertex_count());
        let identity = induced_subgraph(&game, &all, &BTreeSet::new());
        assert_eq!(identity.len(), 2);
        assert_eq!(identity.succ[0], vec![(1, EdgeId(0))]);

        // Keeping only 'b' and dropping its self-loop leaves a sink view.
        let keep = DenseSet::from_members(2, [1]);
        let dropped: BTreeSet<EdgeId> = [EdgeId(2)].into_iter().collect();
        let view = induced_subgraph(&game, &keep, &dropped);
        assert_eq!(view.vertices, vec![VertexId(1)]);
        assert!(view.succ[0].is_empty());
        assert_eq!(view.local(VertexId(1)), Some(0));
        assert_eq!(view.local(VertexId(0)), None);
    }

    #[test]
    fn lasso_invariants_are_enforced() {
        let game = tiny();
        let (a, b) = (VertexId(0), VertexId(1));
        let lasso = Lasso::new(&game, vec![a], vec![b, a]).unwrap();
        assert_eq!(lasso.display(&game), "a (b a)^ω");
        let ever: Vec<EdgeId> = lasso.edges_ever(&game).into_iter().collect();
        assert_eq!(ever, vec![EdgeId(0), EdgeId(1)]);
        let recurring: Vec<EdgeId> = lasso.recurring_edges(&game).into_iter().collect();
        assert_eq!(recurring, vec![EdgeId(0), EdgeId(1)]);

        // Prefix must be nonempty.
        assert!(Lasso::new(&game, vec![], vec![b, a]).is_err());
        // Steps must be edges: a→a does not exist.
        assert!(Lasso::new(&game, vec![a], vec![a]).is_err());
    }

    #[test]
    fn lasso_parity_uses_cycle_maximum() {
        let game = tiny();
        let (a, b) = (VertexId(0), VertexId(1));
        let settled = Lasso::new(&game, vec![a], vec![b, a]).unwrap();
        // P1 priorities: a=1, b=2 → max on cycle = 2, even.
        assert!(settled.satisfies_parity(game.spec(Player::new(1))));
        // P2 priorities: a=0, b=1 → max on cycle = 1, odd.
        assert!(!settled.satisfies_parity(game.spec(Player::new(2))));
        let stay_b = Lasso::new(&game, vec![a], vec![b]).unwrap();
        assert!(!stay_b.satisfies_parity(game.spec(Player::new(2))));
    }
}
