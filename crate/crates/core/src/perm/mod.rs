//! Permutations, permutation groups and the algorithms on them.

mod coset;
mod group;
pub mod iso;
pub mod lattice;
mod permutation;
pub mod series;
mod table;

pub use coset::coset_action;
pub use group::{closure, PermGroup};
pub use iso::{abstract_isomorphic, aut_pair, aut_pair_order, pair_isomorphism, AutPair, SubgroupPair};
pub use lattice::Subgroup;
pub use permutation::Perm;
pub use series::{core, derived_length, derived_series};
pub use table::{CayleyTable, MAX_TABLE_ORDER};
