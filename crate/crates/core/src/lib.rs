//! Stylic, Kiselman and Catalan monoids.
//!
//! Presentations of the three families, their enumeration into explicit
//! multiplication tables, and the equational side: checking monoid
//! identities by exhaustive evaluation, by the scattered-subword criterion,
//! and by bounded equational derivation.

pub mod cli;
pub mod engine;
pub mod error;
pub mod identities;
pub mod presentations;
pub mod verify;
pub mod wordcore;

pub use error::{Error, Result};
