//! Alphabets, words, truncated factorial sets and their extension data.

mod alphabet;
mod extension;
mod factor_set;
mod recurrence;
mod word;

pub use alphabet::Alphabet;
pub use extension::{
    extension_graph, extensions, generalized_extension_graph, is_acyclic_set, is_special, is_tree_set,
    ConditionVerdict, ExtensionGraph, ExtensionRecord, GraphDefect, Specialness,
};
pub(crate) use factor_set::collect_factors;
pub use factor_set::{Completeness, FactorSet, FactorSetJson, Source};
pub use recurrence::{is_recurrent_desk, RecurrenceVerdict};
pub use word::{is_factor, shortlex, Letter, Word};
