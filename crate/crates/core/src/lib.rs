pub mod error;
pub mod semigroup;
pub mod subset;

pub use error::{Error, Result};
pub use semigroup::{Embedded, FiniteSemigroup, GreenData};
pub use subset::ElementSubset;
pub mod congruence;
pub mod constructors;
pub mod embedding;
pub mod hom;
pub mod io;
pub mod lsdp;
pub mod rewriting;
pub mod semigroupoid;
