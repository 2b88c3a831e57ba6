//! Synthesis of most general winning secure equilibria for k-player parity
//! games, with independent brute-force verification.
//!
//! The toolkit revolves around one synthesis question: given a finite
//! turn-based game among k players, each with its own parity objective, find
//! per-player assume-guarantee specifications
//!
//! ```text
//! φ*_i = ψ_i ∧ (ψ_{-i} ⇒ φ_i)
//! ```
//!
//! where each ψ_i is a simple edge template ("never take these edges, stop
//! taking those eventually") constraining player i, and ψ_{-i} is the
//! conjunction of everyone else's templates. A profile of such specifications
//! is a *most general winning secure equilibrium* when it is
//!
//! 1. **general** — conjoined, the φ*_i admit exactly the plays that satisfy
//!    every original objective,
//! 2. **realizable** — every player can enforce its φ*_i on its own, and
//! 3. **secure** — any profile of individually winning strategies is an
//!    equilibrium: no player can break another's objective without breaking
//!    its own.
//!
//! Module map:
//!
//! - [`game`]: the game data model, JSON (de)serialization, validation,
//!   subgraph views, and ultimately periodic plays ([`game::Lasso`]).
//! - [`solver`]: two-player zero-sum parity solving (attractors, a recursive
//!   region solver) plus the cooperative analyses (recurrent vertices,
//!   cooperative region) that assumption synthesis builds on.
//! - [`templates`]: the edge-template algebra — unsafe/colive sets, their
//!   conjunction, aggregation across players, and LTL rendering.
//! - [`assume`]: assumption synthesis — the arena that bakes other players'
//!   templates into the graph, and the ranked construction that extracts a
//!   permissive, implementable template for one player.
//! - [`engine`]: the synthesis loop producing the equilibrium profile, the
//!   two-copy winning arena behind its per-player checks, strategy
//!   extraction, and the environment/coalition game transformations.
//! - [`oracle`]: the independent brute-force verifier. It shares no solver
//!   code with the engine: every verdict is recomputed from first principles
//!   by enumerating recurrence structures and bounded-memory strategies.
//! - [`dot`]: deterministic Graphviz rendering of games and templates.
//!
//! The `gwse` binary exposes synthesis, verification, solving, trace
//! inspection, and DOT export as subcommands over the JSON formats.
//!
//! # Quick start
//!
//! Parse a game, synthesize the contract profile, and read off the
//! obligations (the same example the guide in `book/` walks through):
//!
//! ```
#![doc = include_str!("../doc/snippets/quickstart.rs")]
//! ```

pub mod assume;
pub mod dot;
pub mod engine;
pub mod error;
pub mod game;
pub mod oracle;
pub mod sets;
pub mod solver;
pub mod strategy;
pub mod templates;

pub use error::{Error, Result};
