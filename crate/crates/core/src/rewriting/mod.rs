//! Terms over a doubled alphabet, their reduced forms and generating derivations.

mod derive;
mod packed;
mod reduce;
mod term;

pub use derive::{
    apply_upsilon_step, derivation_search, replay, upsilon_neighbours, Direction, SearchBounds, UpsilonRule,
    UpsilonStep,
};
pub use packed::{packed_unique_normal_form, PackedTerm};
pub use reduce::{
    all_normal_forms, enumerate_terms, evaluate, is_reduced, one_step_reducts, pair_rule, reduce, reduce_tilde,
    theta_cs_equal, unique_normal_form, Rule,
};
pub use term::{
    parse_term, parse_tilde_word, r0_flatten, tilde_wedge, Alphabet, Item, Letter, Term, TildeSym, TildeWord,
};
