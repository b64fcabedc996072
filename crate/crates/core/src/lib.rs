//! Rhythmic trees, the prefix-closed languages they carry, and rational
//! base numeration systems.
//!
//! A rhythm `(r_0, ..., r_{q-1})` gives node `n` exactly `r_{n mod q}`
//! children in breadth-first order. Labelling the arcs cyclically turns the
//! tree into a language; for Christoffel rhythms and their group labelling
//! the language is the set of representations in base `p/q`.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod labelling;
pub mod langops;
pub mod numeration;
pub mod rhythm;
pub mod treegen;

pub use error::{Error, Result};
pub use labelling::{check_labelling, is_valid_labelling, relabel, Labelling, LabellingKind};
pub use langops::{BranchEntry, LabelledTree};
pub use numeration::{arc_digit, evaluate, represent, DigitWord, ExactRational, RationalBase};
pub use rhythm::{christoffel_rhythm, ESequence, PathWord, Rhythm, Step};
pub use treegen::{RhythmicTree, TreeMode};
