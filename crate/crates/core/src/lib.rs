//! Brauer relations, regulator constants and permutation pairings of finite
//! groups, computed in exact arithmetic.

pub mod burnside;
pub mod catalog;
pub mod error;
pub mod gcd_matrix;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod num;
pub mod oracle;
pub mod regulator;
pub mod relations;
pub mod species;

pub use burnside::BurnsideElement;
pub use error::{Error, Result};
pub use group::{BitSet, Group, GroupId, Quotient, Subgroup};
pub use lattice::{HypoStructure, SubgroupLattice};
pub use num::Q;
pub use oracle::{GramForm, IntegralLattice};
pub use regulator::{PairingKind, PairingMatrix};
pub use relations::RelationSpace;
