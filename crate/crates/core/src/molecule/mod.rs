//! Binding graphs ("molecule specs"), their text format and generators, and the
//! structured family state that realizes a binding graph as pairwise concurrences.

mod family;
mod generate;
mod parse;
mod spec;

pub use family::{dense_family_state, FamilyState};
pub use generate::{generate, GraphKind, WeightPattern};
pub use parse::{parse_spec, ParseError, ParseErrorKind};
pub use spec::{normalize_weights, MoleculeSpec, Pair, Weight};
