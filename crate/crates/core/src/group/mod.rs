//! Finitely presented groups, finite groups, and exact counting probes.

pub mod finite;
pub mod homs;
pub mod presentation;
pub mod probes;
pub mod subgroups;

pub use finite::{all_perms, perm_id, perm_inv, perm_mul, FiniteGroupTable, Perm};
pub use homs::{all_homs, count_homs, eval_word, for_each_hom, FiniteTarget, Symmetric, DEFAULT_BUDGET};
pub use presentation::{
    cyclic_reduce, free_reduce, invert_word, letter, letter_gen, surface_group, Abelianization, GroupPresentation,
    Word,
};
pub use probes::{exact_sequence_probe, profinite_probe, ExactSequenceReport, ProfiniteReport, TargetCounts};
pub use subgroups::{
    based_canonical, class_canonical, is_transitive, low_index_subgroups, subgroups_of_index, SubgroupClass,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("search exceeded its budget of {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("projection has {got} images for {expected} generators")]
    ProjectionArity { expected: usize, got: usize },
}
