//! Hopf-Galois structures on squarefree-degree extensions, computed by
//! enumerating transitive subgroups of holomorphs.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod exec;
pub mod holomorph;
pub mod oracle;
pub mod perm;
pub mod report;
pub mod sqfree;
pub mod structure;
pub mod transitive;

pub use error::{Error, Result};
pub use exec::{Caps, Exec};
