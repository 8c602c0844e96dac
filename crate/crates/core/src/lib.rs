//! Categories of set partitions, the subgroups of `Z2 * Z2 * ...` they
//! correspond to, and intertwiner checks for concrete representations.

pub mod closure;
pub mod correspondence;
pub mod intertwiner;
pub mod partition;
pub mod quotient;
pub mod subgroup;
pub mod words;

pub use closure::{CategoryApprox, Certificate, Membership, Verdict};
pub use correspondence::{Bounds, MembershipOracle, Seed};
pub use intertwiner::{IntMatrix, RelationKind, Representation};
pub use partition::{Named, Partition};
pub use quotient::{KernelOracle, QuotientTable};
pub use subgroup::SubgroupApprox;
pub use words::{FreeWord, Z2Word};
