//! File formats, the corpus and run reports.

pub mod corpus;
pub mod format;
pub mod report;

pub use corpus::{bundled_action, corpus, corpus_contexts, write_corpus, CorpusConfig, CorpusEntry, NamedContext};
pub use format::{parse_semigroup_ref, write_semigroup_ref, CayleyFile};
pub use report::{RunReport, Verdict};

/// Environment variable that overrides the seed of randomized commands.
pub const SEED_ENV: &str = "ESLI_SEED";

/// The seed to use: the environment override if set, else `default`.
pub fn resolve_seed(default: u64) -> u64 {
    std::env::var(SEED_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(default)
}
