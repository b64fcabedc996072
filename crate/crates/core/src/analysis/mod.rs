//! Structural analysis of rhythmic languages: automata for integral growth,
//! bounded iteration checks, conversion to the canonical alphabet, and the
//! drivers that cross-check the library against independent computations.

mod convert;
mod dfa;
mod flip;
mod verify;
mod words;

pub use convert::convert;
pub use dfa::{build_dfa, Dfa, DfaExport};
pub use flip::{flip_check, sample_flip_pairs, FlipOutcome, FlipReport};
pub use verify::{
    verify_arc_identity, verify_christoffel_generation, verify_conversion, verify_dfa_equivalence,
    verify_radix_order, verify_shift_invariance, verify_value_preservation, CheckReport,
};
pub use words::{fibonacci_prefixes, find_power};
