//! Words over the arrows of a derived semigroupoid, their bracketings, and the lifting of
//! derivation steps that keeps the evaluation in the stable part fixed.

mod alphabet;
mod bracketed;
mod lift;
mod steps;
mod verify;

pub use alphabet::{ArrowAlgebra, PrimeRule};
pub use bracketed::{BItem, BracketedWord, WordClass};
pub use lift::Lifted;
pub use steps::{DerivationStep, Side, StepKind};
pub use verify::{DerivationConfig, EmbeddingReport, Transcript, TranscriptEntry};

#[cfg(test)]
mod tests;
