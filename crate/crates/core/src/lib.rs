//! Distinguishing numbers of finite group actions.
//!
//! A coloring of the points of a faithful group action is *distinguishing* if
//! the identity is the only group element that preserves it; the
//! distinguishing number of the action is the least number of colors that
//! admits such a coloring. This crate provides:
//!
//! - fully enumerated permutation groups with quotients, centers, and normal
//!   series ([`perm`], [`constructive`]);
//! - group actions, orbits, stabilizers, and faithful quotients ([`action`]);
//! - colorings, preserver subgroups, and the distinguishing predicate
//!   ([`coloring`]);
//! - an exact pruned search for the distinguishing number plus an independent
//!   brute-force oracle ([`search`]);
//! - constructive colorings: the normal-series recursion, the prime bound,
//!   and the 2-coloring of `GL_n(F_q)` acting on `F_q^n` ([`gl`]);
//! - subgroup-lattice enumeration and the distinguishing numbers realized by
//!   transitive subgroups of `S_n` ([`enumeration`]);
//! - a catalog of named actions and JSON file formats for the CLI
//!   ([`catalog`], [`formats`]).

pub mod action;
pub mod catalog;
pub mod coloring;
pub mod constructive;
pub mod enumeration;
pub mod error;
pub mod formats;
pub mod gl;
pub mod perm;
pub mod search;

pub use action::{GroupAction, OrbitDecomposition, RestrictedAction};
pub use coloring::Coloring;
pub use constructive::{NormalSeries, SeriesStepKind};
pub use error::{Error, Result};
pub use gl::FiniteField;
pub use perm::{CosetGroup, PermGroup, Permutation};
pub use search::{SearchBudget, SearchResult, SearchStats};
