//! Bounded-distance network creation games.
//!
//! Two games are modelled on `n` selfish players sitting on graph nodes. A
//! strategy of player `v` is a set of edges it buys towards other nodes; the
//! union of all purchases induces an undirected graph. A player pays the
//! number of edges it bought, provided it stays within its distance bound in
//! the induced graph, and an unbounded cost otherwise:
//!
//! * **max** variant: the eccentricity of `v` must stay within `R_v`;
//! * **sum** variant: the broadcast cost (sum of distances) must stay within `B_v`.
//!
//! The crate provides the graph/distance machinery, exact budgeted solvers
//! for set cover and dominating set, exact best responses for both variants,
//! equilibrium verification, best-response dynamics, generators for the known
//! equilibrium constructions, and verifiers for the structural bounds that
//! hold at equilibrium.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature is only a convenience for downstream users.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod cover;
pub mod dynamics;
pub mod game;
pub mod graph;
pub mod instances;

pub use cover::{Budget, CoverError};
pub use game::{
    BestResponse, BrStatus, Cost, EquilibriumReport, GameSpec, StrategyProfile, Variant, Verdict,
};
pub use graph::{BallProfile, DistanceVector, Graph};
